use galoisk::classgroups::{key_diagram_check, pullback, GramData};
use galoisk::gaussjacobi::EquivariantValue;
use galoisk::groups::{build_group, induce, irr_table, restrict, GroupRingElt, GroupSpec, IrrTable};
use galoisk::relk::{delta, delta_rel_image, rep_is_trivial, IdeleCharFn, RelKRep};
use galoisk::CycNum;
use num_complex::Complex64;
use proptest::prelude::*;
use std::sync::OnceLock;

fn heis() -> &'static IrrTable {
    static T: OnceLock<IrrTable> = OnceLock::new();
    T.get_or_init(|| irr_table(&build_group(&GroupSpec::parse("heisenberg:3").unwrap()).unwrap()).unwrap())
}

fn c9() -> &'static IrrTable {
    static T: OnceLock<IrrTable> = OnceLock::new();
    T.get_or_init(|| irr_table(&build_group(&GroupSpec::Cyclic(9)).unwrap()).unwrap())
}

fn cyc(order: u64, coeffs: &[i64]) -> CycNum {
    let mut x = CycNum::zero(order);
    for (k, &c) in coeffs.iter().enumerate() {
        x = &x + &CycNum::zeta(order, k as i64).mul_int(c);
    }
    x
}

fn ring_elt(table: &IrrTable, coeffs: &[i64]) -> GroupRingElt {
    let n = table.group().size();
    GroupRingElt::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i % n, CycNum::from_int(c))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cyclotomic_inverse(a in proptest::collection::vec(-5i64..5, 15)) {
        let x = cyc(15, &a);
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn galois_composition(a in proptest::collection::vec(-4i64..4, 21), s in 1i64..21, t in 1i64..21) {
        prop_assume!(num_integer::gcd(s, 21) == 1 && num_integer::gcd(t, 21) == 1);
        let x = cyc(21, &a);
        let lhs = x.galois_apply(t).unwrap().galois_apply(s).unwrap();
        prop_assert_eq!(lhs, x.galois_apply(s * t).unwrap());
    }

    #[test]
    fn galois_is_a_ring_map(a in proptest::collection::vec(-4i64..4, 9), b in proptest::collection::vec(-4i64..4, 9), s in 1i64..9) {
        prop_assume!(s % 3 != 0);
        let (x, y) = (cyc(9, &a), cyc(9, &b));
        prop_assert_eq!((&x * &y).galois_apply(s).unwrap(), &x.galois_apply(s).unwrap() * &y.galois_apply(s).unwrap());
    }

    #[test]
    fn det_is_multiplicative(a in proptest::collection::vec(-2i64..3, 6), b in proptest::collection::vec(-2i64..3, 6), i in 0usize..11) {
        let t = heis();
        let i = i % t.num_chars();
        let (x, y) = (ring_elt(t, &a), ring_elt(t, &b));
        let xy = x.mul(&y, t.group());
        prop_assert_eq!(t.det_of(&xy, i).unwrap(), &t.det_of(&x, i).unwrap() * &t.det_of(&y, i).unwrap());
    }

    #[test]
    fn delta_rel_images_vanish(a in proptest::collection::vec(-3i64..4, 9)) {
        let t = c9();
        let x = ring_elt(t, &a);
        let theta = EquivariantValue::new((0..9).map(|i| t.det_of(&x, i).unwrap()).collect());
        prop_assume!(theta.check_invertible().is_ok());
        prop_assert!(rep_is_trivial(&delta_rel_image(&theta, t).unwrap(), t).unwrap());
    }

    #[test]
    fn delta_is_a_homomorphism(a in proptest::collection::vec(1i64..20, 9), b in proptest::collection::vec(1i64..20, 9)) {
        let al = EquivariantValue::new(a.iter().map(|&v| CycNum::from_int(v)).collect());
        let be = EquivariantValue::new(b.iter().map(|&v| CycNum::from_int(v)).collect());
        let lhs = delta(&al.mul(&be)).unwrap();
        let rhs = delta(&al).unwrap().add(&delta(&be).unwrap());
        prop_assert!(lhs.same_rep(&rhs));
    }

    #[test]
    fn key_diagram_commutes(ps in proptest::collection::vec(2u64..40, 1..4), v in proptest::collection::vec(1i64..30, 11)) {
        let t = heis();
        let n = t.num_chars();
        let mut first = IdeleCharFn::one();
        for p in ps {
            let f = EquivariantValue::new((0..n).map(|i| CycNum::from_int(v[i] + p as i64)).collect());
            first = first.mul(&IdeleCharFn::single(p, f));
        }
        let second = EquivariantValue::new((0..n).map(|i| CycNum::from_int(v[(i + 3) % n])).collect());
        let reps = [RelKRep { first, second }];
        prop_assert!(key_diagram_check(&reps, t));
    }

    #[test]
    fn pullback_is_contravariant(x in proptest::collection::vec(-3.0f64..3.0, 8), y in proptest::collection::vec(-3.0f64..3.0, 8)) {
        let m = |v: &[f64]| -> Vec<Vec<Complex64>> {
            vec![vec![Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])],
                 vec![Complex64::new(v[4], v[5]), Complex64::new(v[6], v[7])]]
        };
        let (xi, eta) = (m(&x), m(&y));
        let det = |a: &Vec<Vec<Complex64>>| (a[0][0] * a[1][1] - a[0][1] * a[1][0]).norm();
        prop_assume!(det(&xi) > 0.1 && det(&eta) > 0.1);
        let prod: Vec<Vec<Complex64>> = (0..2).map(|i| (0..2).map(|j| (0..2).map(|k| xi[i][k] * eta[k][j]).sum()).collect()).collect();
        let h = GramData::new(vec!["a".into(), "b".into()], vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.25)],
            vec![Complex64::new(0.5, -0.25), Complex64::new(1.0, 0.0)],
        ]).unwrap();
        let lhs = pullback(&prod, &h).unwrap();
        let rhs = pullback(&eta, &pullback(&xi, &h).unwrap()).unwrap();
        for i in 0..2 { for j in 0..2 {
            prop_assert!((lhs.gram[i][j] - rhs.gram[i][j]).norm() < 1e-9 * (1.0 + lhs.gram[i][j].norm()));
        }}
    }
}

#[test]
fn frobenius_reciprocity_and_adams_induction() {
    let t = heis();
    let g = t.group();
    for elems in g.all_subgroups() {
        if elems.len() == 1 || elems.len() == g.size() {
            continue;
        }
        let sub = g.subgroup(&elems).unwrap();
        let h = irr_table(&sub.group).unwrap();
        for phi in 0..h.num_chars() {
            let ind = induce(&h, t, &sub, h.values(phi)).unwrap();
            for chi in 0..t.num_chars() {
                let res = restrict(t, &h, &sub, t.values(chi)).unwrap();
                assert_eq!(t.inner_product(&ind, t.values(chi)), h.inner_product(h.values(phi), &res));
            }
            let psi_then_ind = t
                .decompose(&induce(&h, t, &sub, &h.class_fn(&h.adams(&h.unit_vector(phi), 2).unwrap())).unwrap())
                .unwrap();
            let ind_then_psi = t.adams(&t.decompose(&ind).unwrap(), 2).unwrap();
            assert_eq!(psi_then_ind, ind_then_psi);
        }
    }
}

#[test]
fn constant_group_order_is_not_trivial() {
    let t = c9();
    let r = RelKRep { first: IdeleCharFn::one(), second: EquivariantValue::new(vec![CycNum::from_int(3); 9]) };
    assert!(!rep_is_trivial(&r, t).unwrap());
    let a = EquivariantValue::new((1..=9).map(CycNum::from_int).collect());
    let back = delta(&a).unwrap().add(&delta(&a).unwrap().neg().unwrap());
    assert!(rep_is_trivial(&back, t).unwrap());
}
