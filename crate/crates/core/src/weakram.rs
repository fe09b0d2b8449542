//! Enumeration of weakly ramified local extensions through the finite `Γ`-modules
//! `U_E^{(1)}/U_E^{(2)} ≅ 𝔭_E/𝔭_E^2`, modelled as `F_{p^f}` with explicit action matrices.
//!
//! Two families are covered: non-abelian extensions of `Q_p` of degree `p^3`, and
//! non-abelian extensions of degree `ℓ^2 p` with `ℓ | p − 1`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::error::{Error, Result};

/// Square matrix over `F_p`, acting on column vectors.
pub type FpMatrix = Vec<Vec<u64>>;

fn identity(n: usize) -> FpMatrix {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &FpMatrix, b: &FpMatrix, p: u64) -> FpMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = (out[i][j] + a[i][t] * b[t][j]) % p;
            }
        }
    }
    out
}

fn mat_pow(a: &FpMatrix, mut e: u64, p: u64) -> FpMatrix {
    let mut base = a.clone();
    let mut acc = identity(a.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base, p);
        }
        base = mat_mul(&base, &base, p);
        e >>= 1;
    }
    acc
}

fn mat_sub_identity(a: &FpMatrix, p: u64) -> FpMatrix {
    let mut out = a.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    out
}

/// Row-reduce in place; returns pivot columns.
fn row_reduce(m: &mut FpMatrix, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = arith::inv_mod(m[r][c], p).unwrap_or(0);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

fn rank(m: &FpMatrix, p: u64) -> usize {
    let mut a = m.clone();
    row_reduce(&mut a, p).len()
}

/// Basis of `{y : y A = 0}` (row vectors), i.e. of the functionals vanishing on the
/// column span of `A`.
fn left_null_space(a: &FpMatrix, p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let cols = a.first().map_or(0, Vec::len);
    // y A = 0  ⇔  A^T y^T = 0.
    let mut t: FpMatrix = (0..cols).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    let pivots = row_reduce(&mut t, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut y = vec![0u64; n];
            y[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                y[pc] = (p - t[r][f] % p) % p;
            }
            y
        })
        .collect()
}

fn hcat(blocks: &[FpMatrix]) -> FpMatrix {
    let n = blocks.first().map_or(0, Vec::len);
    (0..n).map(|i| blocks.iter().flat_map(|b| b[i].iter().copied()).collect()).collect()
}

type Poly = Vec<u64>;

fn poly_trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    let mut r = poly_trim(a.clone());
    let dm = m.len() - 1;
    let lead_inv = arith::inv_mod(m[dm], p).unwrap_or(1);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let f = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - f * c % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn poly_mulmod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_powmod(a: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut base = poly_rem(a, m, p);
    let mut acc: Poly = vec![1];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (poly_trim(a.clone()), poly_trim(b.clone()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^{p^k} mod g`.
fn frob_power_of_x(k: u32, g: &Poly, p: u64) -> Poly {
    let mut x: Poly = vec![0, 1];
    for _ in 0..k {
        x = poly_powmod(&x, p, g, p);
    }
    x
}

fn poly_sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    poly_trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

/// Rabin's irreducibility test for a monic `g` of degree `f` over `F_p`.
pub fn is_irreducible(g: &[u64], p: u64) -> bool {
    let g: Poly = g.to_vec();
    let f = g.len() as u32 - 1;
    let x: Poly = vec![0, 1];
    if poly_sub(&frob_power_of_x(f, &g, p), &x, p) != Vec::<u64>::new() {
        return false;
    }
    arith::factor_u64(u64::from(f)).into_iter().all(|(q, _)| {
        let h = poly_sub(&frob_power_of_x(f / q as u32, &g, p), &x, p);
        poly_gcd(&g, &h, p).len() == 1
    })
}

/// The lexicographically first monic irreducible of degree `f` over `F_p`.
pub fn find_irreducible(f: u32, p: u64) -> Poly {
    let total = p.pow(f);
    for code in 0..total {
        let mut g = Vec::with_capacity(f as usize + 1);
        let mut c = code;
        for _ in 0..f {
            g.push(c % p);
            c /= p;
        }
        g.push(1);
        if is_irreducible(&g, p) {
            return g;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Matrix of `x ↦ x^p` on `F_p[x]/(g)` in the basis `1, x, …, x^{f−1}`.
pub fn frobenius_matrix(g: &[u64], p: u64) -> FpMatrix {
    let f = g.len() - 1;
    let g: Poly = g.to_vec();
    let mut m = vec![vec![0u64; f]; f];
    for j in 0..f {
        let mut mono = vec![0u64; j + 1];
        mono[j] = 1;
        let img = poly_powmod(&mono, p, &g, p);
        for (i, &c) in img.iter().enumerate() {
            m[i][j] = c;
        }
    }
    m
}

/// `F_{p^f}` as an `f`-dimensional `F_p`-space with named generator actions.
#[derive(Clone, Debug)]
pub struct ResidueModule {
    pub p: u64,
    pub f: usize,
    pub generators: Vec<(String, FpMatrix)>,
}

impl ResidueModule {
    pub fn new(p: u64, f: usize, generators: Vec<(String, FpMatrix)>) -> Result<ResidueModule> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        for (name, m) in &generators {
            if m.len() != f || m.iter().any(|r| r.len() != f) {
                return Err(Error::InvalidInput(format!("action of {name} has the wrong shape")));
            }
            if rank(m, p) != f {
                return Err(Error::InvalidInput(format!("action of {name} is not invertible")));
            }
        }
        Ok(ResidueModule { p, f, generators })
    }

    /// Residue field of `F_{p^f}` with the `p`-power Frobenius as its only generator.
    pub fn frobenius(p: u64, f: usize) -> Result<ResidueModule> {
        let g = find_irreducible(f as u32, p);
        ResidueModule::new(p, f, vec![("frob".into(), frobenius_matrix(&g, p))])
    }

    pub fn action(&self, name: &str) -> Option<&FpMatrix> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// Whether the listed generators commute and have the given orders, so that they
    /// define an action of the abelian group `Π Z/n_i`.
    pub fn is_abelian_action(&self, orders: &[u64]) -> bool {
        if orders.len() != self.generators.len() {
            return false;
        }
        let p = self.p;
        let id = identity(self.f);
        let orders_ok = self.generators.iter().zip(orders).all(|((_, m), &n)| mat_pow(m, n, p) == id);
        let commute = self
            .generators
            .iter()
            .all(|(_, a)| self.generators.iter().all(|(_, b)| mat_mul(a, b, p) == mat_mul(b, a, p)));
        orders_ok && commute
    }
}

/// Coinvariants `M / Σ_g (g − 1)M` for the subgroup generated by `matrices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coinvariants {
    pub dimension: usize,
    /// Rows are functionals `M → F_p` whose joint kernel is `Σ (g − 1)M`.
    pub projection: Vec<Vec<u64>>,
}

impl Coinvariants {
    pub fn project(&self, v: &[u64], p: u64) -> Vec<u64> {
        self.projection.iter().map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p)).collect()
    }
}

pub fn coinvariants_of(p: u64, f: usize, matrices: &[FpMatrix]) -> Coinvariants {
    if matrices.is_empty() {
        return Coinvariants { dimension: f, projection: identity(f) };
    }
    let blocks: Vec<FpMatrix> = matrices.iter().map(|m| mat_sub_identity(m, p)).collect();
    let aug = hcat(&blocks);
    let projection = left_null_space(&aug, p);
    Coinvariants { dimension: projection.len(), projection }
}

/// Coinvariants under all generators of the module.
pub fn coinvariants(m: &ResidueModule) -> Coinvariants {
    let mats: Vec<FpMatrix> = m.generators.iter().map(|(_, a)| a.clone()).collect();
    coinvariants_of(m.p, m.f, &mats)
}

/// One isomorphism class of local extension produced by an enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    pub label: String,
    pub is_ramified: bool,
    /// Exponent of the Galois group, or `None` where the family does not fix it here.
    pub exponent: Option<u64>,
    pub abelian: bool,
    /// Index `b` of the ramified subfield `F_b = E^{H_b}` (degree `ℓ^2 p` family).
    pub distinguished_subfield: Option<usize>,
}

/// Data of the degree-`p^3` enumeration, exposed for inspection.
#[derive(Clone, Debug)]
pub struct P3Model {
    pub module: ResidueModule,
    pub coinvariants: Coinvariants,
    /// Index of the basis vector chosen as `u`.
    pub u_index: usize,
    /// Order-`p` subgroups of `Q ≅ (Z/p)^2` in coordinates `(π, u)`, as generators.
    pub lines: Vec<(u64, u64)>,
}

/// Build `Q = ⟨π⟩/⟨π^p⟩ × (U^{(1)}/U^{(2)})_Γ` for `E = E_1 E_2` over `Q_p`.
///
/// The residue field of `E` is `F_{p^p}`; `G(E/E_1)` acts through Frobenius and the
/// wild inertia `G(E/E_2)` acts trivially on `𝔭_E/𝔭_E^2`, so only the Frobenius matrix
/// contributes to the augmentation.
pub fn p3_model(p: u64) -> Result<P3Model> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    let f = p as usize;
    let frob = ResidueModule::frobenius(p, f)?.generators.remove(0).1;
    let module = ResidueModule::new(p, f, vec![("frob".into(), frob), ("wild".into(), identity(f))])?;
    let co = coinvariants(&module);
    if co.dimension != 1 {
        return Err(Error::InvalidInput(format!("coinvariants have dimension {}", co.dimension)));
    }
    let u_index = (0..f)
        .find(|&i| {
            let mut e = vec![0u64; f];
            e[i] = 1;
            co.project(&e, p)[0] != 0
        })
        .ok_or_else(|| Error::InvalidInput("no basis vector reaches the coinvariants".into()))?;
    let mut lines = vec![(0, 1)];
    lines.extend((0..p).map(|b| (1, b)));
    Ok(P3Model { module, coinvariants: co, u_index, lines })
}

/// Weakly ramified non-abelian Galois extensions of `Q_p` of degree `p^3`, one per
/// subgroup `⟨π u^b⟩` of `Q`; the line `⟨u⟩` gives an unramified `L/E` and is dropped.
/// The exponent is `p` exactly when `π` lies in the norm group, i.e. `b = 0`.
pub fn enumerate_p3(p: u64) -> Result<Vec<ExtClass>> {
    let model = p3_model(p)?;
    let mut out = Vec::new();
    for &(a, b) in &model.lines {
        let contains_u = a == 0;
        if contains_u {
            continue;
        }
        let pi_in_norm_group = b == 0;
        out.push(ExtClass {
            label: format!("pi*u^{b}"),
            is_ramified: true,
            exponent: Some(if pi_in_norm_group { p } else { p * p }),
            abelian: false,
            distinguished_subfield: None,
        });
    }
    Ok(out)
}

/// A primitive `ℓ`-th root of unity in `F_p`.
fn root_of_unity(l: u64, p: u64) -> u64 {
    let g = arith::primitive_root_prime_power(p, 1);
    arith::pow_mod(g, (p - 1) / l, p)
}

/// `U^{(1)}/U^{(2)}` for `E = E_1 E_2`, `E_1` unramified of degree `ℓ` and
/// `E_2 = Q_p(p^{1/ℓ})`: `φ` (generating `G(E/E_2)`) is Frobenius on `F_{p^ℓ}`,
/// `δ` (generating `Δ = G(E/E_1)`) multiplies by the image of `ζ_ℓ`.
pub fn l2p_module(l: u64, p: u64) -> Result<ResidueModule> {
    if !arith::is_prime(l) || !arith::is_prime(p) || l == 2 || p == 2 {
        return Err(Error::InvalidInput("ℓ and p must be odd primes".into()));
    }
    if (p - 1) % l != 0 {
        return Err(Error::InvalidInput(format!("{l} does not divide {p} - 1")));
    }
    let f = l as usize;
    let frob = ResidueModule::frobenius(p, f)?.generators.remove(0).1;
    let z = root_of_unity(l, p);
    let delta: FpMatrix = (0..f).map(|i| (0..f).map(|j| if i == j { z } else { 0 }).collect()).collect();
    ResidueModule::new(p, f, vec![("phi".into(), frob), ("delta".into(), delta)])
}

/// Action of `φ^i δ^j`.
fn gamma_action(m: &ResidueModule, i: u64, j: u64) -> FpMatrix {
    let p = m.p;
    let phi = &m.generators[0].1;
    let delta = &m.generators[1].1;
    mat_mul(&mat_pow(phi, i, p), &mat_pow(delta, j, p), p)
}

/// The order-`ℓ` subgroups `H_b = ⟨φ δ^b⟩` (`b < ℓ`) and `Δ = ⟨δ⟩`, as exponent pairs.
pub fn order_l_subgroups(l: u64) -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> = (0..l).map(|b| (1, b)).collect();
    v.push((0, 1));
    v
}

/// `E^×/X(H) ≅ M / I_H M`: checks that `I_H M` is `Γ`-stable and of index `p`.
fn x_of_h_is_valid(m: &ResidueModule, h: (u64, u64)) -> bool {
    let p = m.p;
    let g = gamma_action(m, h.0, h.1);
    let img = mat_sub_identity(&g, p);
    let co = coinvariants_of(p, m.f, &[g]);
    if co.dimension != 1 {
        return false;
    }
    let base_rank = rank(&img, p);
    m.generators.iter().all(|(_, a)| {
        let moved = mat_mul(a, &img, p);
        rank(&hcat(&[img.clone(), moved]), p) == base_rank
    })
}

/// Weakly ramified non-abelian Galois extensions of `Q_p` of degree `ℓ^2 p` with
/// `G(E/Q_p) ≅ (Z/ℓ)^2`: one per order-`ℓ` subgroup `H ≠ Δ`, tagged by `F = E^H`.
pub fn enumerate_l2p(l: u64, p: u64) -> Result<Vec<ExtClass>> {
    let m = l2p_module(l, p)?;
    let mut out = Vec::new();
    for (b, h) in order_l_subgroups(l).into_iter().enumerate() {
        if h == (0, 1) {
            continue;
        }
        if !x_of_h_is_valid(&m, h) {
            return Err(Error::InvalidInput(format!("X(H) check failed for H = <phi delta^{}>", h.1)));
        }
        out.push(ExtClass {
            label: format!("H=<phi*delta^{}>", h.1),
            is_ramified: true,
            exponent: None,
            abelian: false,
            distinguished_subfield: Some(b + 1),
        });
    }
    Ok(out)
}

/// Components `e_φ(V)` of `V = M / I_H M` over `F_p` for the `ℓ^2` characters
/// `φ(φ^i δ^j) = z^{ai + bj}`; returns `(a, b, dim e_φ V)` for nonzero components.
fn eigen_components(m: &ResidueModule, l: u64, h: (u64, u64)) -> Vec<(u64, u64, usize)> {
    let p = m.p;
    let g = gamma_action(m, h.0, h.1);
    let co = coinvariants_of(p, m.f, &[g]);
    let z = root_of_unity(l, p);
    let ll_inv = arith::inv_mod(l * l % p, p).unwrap_or(0);
    // Induced action on V in the basis dual to the projection rows:
    // Γ preserves I_H M, so each row composed with γ is a combination of rows.
    let induced = |a: &FpMatrix| -> FpMatrix {
        let rows: Vec<Vec<u64>> = co.projection.iter().map(|r| mat_mul(&vec![r.clone()], a, p).remove(0)).collect();
        let basis: FpMatrix = co.projection.clone();
        rows.iter().map(|r| express_in_rows(r, &basis, p)).collect()
    };
    let mut out = Vec::new();
    for a in 0..l {
        for b in 0..l {
            let d = co.dimension;
            let mut e = vec![vec![0u64; d]; d];
            for i in 0..l {
                for j in 0..l {
                    let act = induced(&gamma_action(m, i, j));
                    let chi_inv = arith::pow_mod(z, (l * l - (a * i + b * j) % l) % l, p);
                    for r in 0..d {
                        for c in 0..d {
                            e[r][c] = (e[r][c] + chi_inv * act[r][c]) % p;
                        }
                    }
                }
            }
            for row in e.iter_mut() {
                for x in row.iter_mut() {
                    *x = *x * ll_inv % p;
                }
            }
            let dim = rank(&e, p);
            if dim > 0 {
                out.push((a, b, dim));
            }
        }
    }
    out
}

/// Coordinates of `v` in the row space of `basis` (assumed to contain it).
fn express_in_rows(v: &[u64], basis: &FpMatrix, p: u64) -> Vec<u64> {
    let k = basis.len();
    let n = v.len();
    // Solve c · basis = v via the transposed system.
    let mut aug: FpMatrix = (0..n)
        .map(|j| {
            let mut row: Vec<u64> = (0..k).map(|i| basis[i][j]).collect();
            row.push(v[j]);
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug, p);
    let mut c = vec![0u64; k];
    for (r, &pc) in pivots.iter().enumerate() {
        if pc < k {
            c[pc] = aug[r][k];
        }
    }
    c
}

/// Kernel of the character `(a, b)` inside `Γ`, as a subgroup tag.
fn kernel_tag(l: u64, a: u64, b: u64) -> Option<(u64, u64)> {
    if a == 0 && b == 0 {
        return None;
    }
    order_l_subgroups(l).into_iter().find(|&(i, j)| (a * i + b * j) % l == 0)
}

/// Checks for a module that exactly one eigen-component of each `E^×/X(H)` is nonzero
/// and that its kernel `H_0` is neither `Δ` nor `Γ`.
pub fn quotient_module_check_for(m: &ResidueModule, l: u64) -> bool {
    if m.generators.len() != 2 || !m.is_abelian_action(&[l, l]) {
        return false;
    }
    order_l_subgroups(l).into_iter().filter(|&h| h != (0, 1)).all(|h| {
        let comps = eigen_components(m, l, h);
        match comps.as_slice() {
            [(a, b, 1)] => match kernel_tag(l, *a, *b) {
                Some(k) => k != (0, 1) && k == h,
                None => false,
            },
            _ => false,
        }
    })
}

pub fn quotient_module_check(l: u64, p: u64) -> Result<bool> {
    let m = l2p_module(l, p)?;
    Ok(quotient_module_check_for(&m, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_polys() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        let g = find_irreducible(3, 3);
        assert_eq!(g.len(), 4);
        assert!(is_irreducible(&g, 3));
    }

    #[test]
    fn frobenius_has_order_f() {
        let m = ResidueModule::frobenius(5, 5).unwrap();
        assert!(m.is_abelian_action(&[5]));
        assert_eq!(coinvariants(&m).dimension, 1);
    }

    #[test]
    fn trivial_action_coinvariants() {
        let m = ResidueModule::new(3, 4, vec![("id".into(), identity(4))]).unwrap();
        assert_eq!(coinvariants(&m).dimension, 4);
    }

    #[test]
    fn p3_counts() {
        for p in [3, 5, 7] {
            let v = enumerate_p3(p).unwrap();
            assert_eq!(v.len() as u64, p);
            assert_eq!(v.iter().filter(|c| c.exponent == Some(p)).count(), 1);
            assert_eq!(v[0].label, "pi*u^0");
            assert_eq!(v[0].exponent, Some(p));
            assert!(v.iter().all(|c| !c.abelian));
        }
        assert_eq!(p3_model(3).unwrap().lines.len(), 4);
    }

    #[test]
    fn l2p_counts_and_check() {
        for (l, p) in [(3, 7), (3, 13), (5, 11)] {
            let v = enumerate_l2p(l, p).unwrap();
            assert_eq!(v.len() as u64, l);
            let mut tags: Vec<usize> = v.iter().filter_map(|c| c.distinguished_subfield).collect();
            tags.sort_unstable();
            assert_eq!(tags, (1..=l as usize).collect::<Vec<_>>());
            assert!(quotient_module_check(l, p).unwrap());
        }
        assert!(enumerate_l2p(3, 11).is_err());
    }

    #[test]
    fn trivial_action_fails_quotient_check() {
        let m = ResidueModule::new(7, 3, vec![("phi".into(), identity(3)), ("delta".into(), identity(3))]).unwrap();
        assert!(!quotient_module_check_for(&m, 3));
    }
}
