//! Exact results compared against independent floating-point or closed-form oracles.

use galoisk::classgroups::{betti_closed_form, betti_second_component};
use galoisk::gaussjacobi::{gauss_sum, jacobi_sum, AbelianField, DirichletChar};
use galoisk::groups::{build_group, irr_table, GroupSpec};
use galoisk::weakram::{enumerate_l2p, enumerate_p3};
use num_complex::Complex64;
use std::f64::consts::PI;

fn float_gauss(chi: &DirichletChar) -> Complex64 {
    let m = chi.modulus();
    (0..m)
        .filter(|&a| num_integer::gcd(a, m) == 1)
        .map(|a| chi.value(a as i64).complex_value() * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / m as f64))
        .sum()
}

#[test]
fn gauss_sums_match_direct_summation() {
    for m in [5u64, 7, 9, 13, 15, 21] {
        for chi in DirichletChar::all(m).unwrap() {
            let exact = gauss_sum(&chi).complex_value();
            let prim = chi.primitive();
            assert!((exact - float_gauss(&prim)).norm() < 1e-9, "m={m}");
            if chi.conductor() == m {
                assert!((exact.norm_sqr() - m as f64).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn jacobi_sums_from_gauss_sums() {
    let p = 13u64;
    let chars = DirichletChar::all(p).unwrap();
    for a in &chars {
        for b in &chars {
            let ab = a.mul(b);
            if a.is_trivial() || b.is_trivial() || ab.is_trivial() {
                continue;
            }
            let j = jacobi_sum(a, b).unwrap().complex_value();
            let oracle = float_gauss(a) * float_gauss(b) / float_gauss(&ab);
            assert!((j - oracle).norm() < 1e-9);
        }
    }
}

#[test]
fn order_27_tables() {
    for spec in ["heisenberg:3", "modular:3"] {
        let t = irr_table(&build_group(&GroupSpec::parse(spec).unwrap()).unwrap()).unwrap();
        let mut degs = t.degrees().to_vec();
        degs.sort_unstable();
        assert_eq!(degs, [1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3]);
        for i in 0..t.num_chars() {
            for j in 0..t.num_chars() {
                let ip = t.inner_product(t.values(i), t.values(j));
                assert_eq!(ip.is_one(), i == j);
                assert_eq!(ip.is_zero(), i != j);
            }
        }
    }
}

#[test]
fn betti_battery() {
    for spec in ["cyclic:3", "cyclic:5", "cyclic:7", "cyclic:9", "product:3x3", "heisenberg:3"] {
        let t = irr_table(&build_group(&GroupSpec::parse(spec).unwrap()).unwrap()).unwrap();
        for d in [1usize, 2] {
            for phi in 0..t.num_chars() {
                let v = betti_second_component(&t, d, phi).unwrap();
                let cf = betti_closed_form(t.group().size(), d, t.degree(phi));
                assert!((v / cf - 1.0).abs() < 1e-6, "{spec} d={d} phi={phi}");
            }
        }
    }
}

#[test]
fn discriminant_from_conductors() {
    // Conductor-discriminant formula against the known discriminant 49 of the cubic of conductor 7.
    let f = AbelianField::subfield_of_degree(7, 3).unwrap();
    let prod: u64 = (0..3).map(|i| f.dirichlet(i).conductor()).product();
    assert_eq!(prod, 49);
}

#[test]
fn local_enumeration_counts() {
    for p in [3u64, 5, 7] {
        assert_eq!(enumerate_p3(p).unwrap().len() as u64, p);
    }
    for (l, p) in [(3u64, 7u64), (3, 13), (5, 11)] {
        assert_eq!(enumerate_l2p(l, p).unwrap().len() as u64, l);
    }
}
