//! Gram-matrix machinery for equivariant hermitian forms, the Betti-lattice metric class,
//! pullbacks of forms, discriminant representatives for groups without symplectic
//! characters, and the commutativity check for the projection diagram.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::gaussjacobi::EquivariantValue;
use crate::groups::{FiniteGroup, GroupRingElt, IrrTable};
use crate::relk::{self, HermPair, IdeleCharFn, RelKRep};

pub type CMatrix = Vec<Vec<Complex64>>;

/// Tolerance used when constructing and checking numeric forms.
pub const CONSTRUCTION_TOL: f64 = 1e-9;

/// A finite set with a `Γ`-action, spanning a permutation module.
#[derive(Clone, Debug)]
pub struct PermutationModule {
    group: FiniteGroup,
    /// `action[g][x]` is the image of point `x` under `g`.
    action: Vec<Vec<usize>>,
    points: usize,
}

impl PermutationModule {
    pub fn new(group: &FiniteGroup, points: usize, act: impl Fn(usize, usize) -> usize) -> Result<PermutationModule> {
        let action: Vec<Vec<usize>> = group.elements().map(|g| (0..points).map(|x| act(g, x)).collect()).collect();
        for g in group.elements() {
            for h in group.elements() {
                for x in 0..points {
                    if action[group.mul(g, h)][x] != action[g][action[h][x]] {
                        return Err(Error::InvalidInput("not a group action".into()));
                    }
                }
            }
        }
        Ok(PermutationModule { group: group.clone(), action, points })
    }

    /// The embeddings of `L` for a `G`-extension `L/K`, indexed as `(h, σ)` with
    /// `h ∈ G` and `σ ∈ Σ(K)`; `G` permutes the first coordinate by left translation,
    /// which is free with transversal `{(1, σ)}`.
    pub fn betti(group: &FiniteGroup, base_degree: usize) -> Result<PermutationModule> {
        let n = group.size();
        PermutationModule::new(group, n * base_degree, |g, x| {
            let (h, s) = (x % n, x / n);
            s * n + group.mul(g, h)
        })
    }

    pub fn rank(&self) -> usize {
        self.points
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    /// A transversal of the orbits when the action is free, else `None`.
    pub fn free_basis(&self) -> Option<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut basis = Vec::new();
        for x in 0..self.points {
            if seen[x] {
                continue;
            }
            let orbit: Vec<usize> = self.group.elements().map(|g| self.action[g][x]).collect();
            let mut distinct = orbit.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != self.group.size() {
                return None;
            }
            for y in orbit {
                seen[y] = true;
            }
            basis.push(x);
        }
        Some(basis)
    }
}

/// Labelled Gram matrix of a hermitian form `h(x, y) = x^T G ȳ`.
#[derive(Clone, Debug)]
pub struct GramData {
    pub labels: Vec<String>,
    pub gram: CMatrix,
}

impl GramData {
    pub fn new(labels: Vec<String>, gram: CMatrix) -> Result<GramData> {
        let n = gram.len();
        if labels.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("Gram matrix shape".into()));
        }
        Ok(GramData { labels, gram })
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.gram.len();
        (0..n).all(|i| (0..n).all(|j| (self.gram[i][j] - self.gram[j][i].conj()).norm() <= tol))
    }

    /// Cholesky factor `L` with `G = L L^*`.
    pub fn cholesky(&self) -> Result<CMatrix> {
        if !self.is_hermitian(CONSTRUCTION_TOL * (1.0 + max_abs(&self.gram))) {
            return Err(Error::NotPositiveDefinite);
        }
        let n = self.gram.len();
        let mut l = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for j in 0..n {
            let mut d = self.gram[j][j].re;
            for k in 0..j {
                d -= l[j][k].norm_sqr();
            }
            if d.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater) {
                return Err(Error::NotPositiveDefinite);
            }
            let djj = Float::sqrt(d);
            l[j][j] = Complex64::new(djj, 0.0);
            for i in j + 1..n {
                let mut s = self.gram[i][j];
                for k in 0..j {
                    s -= l[i][k] * l[j][k].conj();
                }
                l[i][j] = s / djj;
            }
        }
        Ok(l)
    }

    /// `det(G)^{1/2}` via the Cholesky factor.
    pub fn sqrt_det(&self) -> Result<f64> {
        let l = self.cholesky()?;
        Ok((0..l.len()).map(|i| l[i][i].re).product())
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

/// Orthonormal basis (for the standard form `μ(g, h) = δ_{g,h}` on `C[G]`) of the
/// isotypic component of character `i`, given by normalised matrix coefficients of
/// the unitary monomial representation: `w_{r,s} = √(φ(1)/|G|) Σ_g conj(ρ_{rs}(g)) g`.
pub fn isotypic_orthonormal_basis(table: &IrrTable, i: usize) -> Vec<Vec<Complex64>> {
    let g = table.group();
    let rep = table.monomial_rep(i);
    let deg = rep.degree();
    let e = table.exponent();
    let scale = Float::sqrt(deg as f64 / g.size() as f64);
    let mut out = Vec::with_capacity(deg * deg);
    for r in 0..deg {
        for s in 0..deg {
            let mut v = vec![Complex64::new(0.0, 0.0); g.size()];
            for x in g.elements() {
                let (j, k) = rep.entry(x, r);
                if j == s {
                    let ang = 2.0 * core::f64::consts::PI * k as f64 / e as f64;
                    v[x] = Complex64::new(Float::cos(ang), -Float::sin(ang)) * scale;
                }
            }
            out.push(v);
        }
    }
    out
}

/// Left multiplication by `g` on a vector of `C[G]`.
fn left_translate(group: &FiniteGroup, g: usize, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for h in group.elements() {
        out[group.mul(g, h)] = v[h];
    }
    out
}

/// Gram matrix of the vectors `r(w_σ)(1 ⊗ w_{φ,k}) = Σ_g g(w_σ) ⊗ g(w_{φ,k})` under
/// `μ_L ⊗ μ_{C[G]}`, indexed by `(σ, k)` with `σ` running over a free basis of the
/// Betti module.
pub fn betti_gram(table: &IrrTable, base_degree: usize, phi: usize) -> Result<GramData> {
    if base_degree == 0 {
        return Err(Error::InvalidInput("base degree must be positive".into()));
    }
    let g = table.group();
    let n = g.size();
    let module = PermutationModule::betti(g, base_degree)?;
    let basis = module.free_basis().ok_or_else(|| Error::InvalidInput("Betti module is not free".into()))?;
    let ws = isotypic_orthonormal_basis(table, phi);
    let dim = module.rank() * n;
    let mut vectors = Vec::new();
    let mut labels = Vec::new();
    for &sigma in &basis {
        for (k, w) in ws.iter().enumerate() {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            for x in g.elements() {
                let point = module.apply(x, sigma);
                let gw = left_translate(g, x, w);
                for (h, c) in gw.into_iter().enumerate() {
                    v[point * n + h] += c;
                }
            }
            vectors.push(v);
            labels.push(format!("({sigma},{k})"));
        }
    }
    let gram = vectors.iter().map(|a| vectors.iter().map(|b| dot(a, b)).collect()).collect();
    GramData::new(labels, gram)
}

/// Second component of the Betti-lattice metric class at `φ`: the `φ(1)`-th root of
/// `det(Gram)^{1/2}`.
pub fn betti_second_component(table: &IrrTable, base_degree: usize, phi: usize) -> Result<f64> {
    let gram = betti_gram(table, base_degree, phi)?;
    let d = gram.sqrt_det()?;
    Ok(Float::powf(d, 1.0 / table.degree(phi) as f64))
}

/// `|G|^{d·φ(1)/2}`.
pub fn betti_closed_form(group_order: usize, base_degree: usize, phi_degree: u64) -> f64 {
    Float::powf(group_order as f64, (base_degree as f64) * phi_degree as f64 / 2.0)
}

/// Magnitude of the determinant by partial-pivot elimination.
fn det_abs(m: &CMatrix) -> f64 {
    let mut a = m.clone();
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&x, &y| a[x][c].norm().partial_cmp(&a[y][c].norm()).unwrap_or(core::cmp::Ordering::Equal))
            .unwrap_or(c);
        if a[p][c].norm() == 0.0 {
            return 0.0;
        }
        a.swap(p, c);
        det *= a[c][c].norm();
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let t = a[c][k];
                a[r][k] -= f * t;
            }
        }
    }
    det
}

/// `ξ^*(h)(x, y) = h(ξx, ξy)`, i.e. Gram `ξ^T G ξ̄`.
pub fn pullback(xi: &CMatrix, form: &GramData) -> Result<GramData> {
    let n = form.gram.len();
    if xi.len() != n || xi.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("basis change has the wrong shape".into()));
    }
    let scale = max_abs(xi).max(1.0);
    if det_abs(xi) <= CONSTRUCTION_TOL * Float::powi(scale, n as i32) {
        return Err(Error::SingularMatrix);
    }
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for a in 0..n {
                for b in 0..n {
                    s += xi[a][i] * form.gram[a][b] * xi[b][j].conj();
                }
            }
            out[i][j] = s;
        }
    }
    GramData::new(form.labels.clone(), out)
}

/// `Det(λ_p)` at every character for local basis-change matrices over `Q_p[Γ]`
/// (entries given as global group-ring elements).
pub fn det_package(table: &IrrTable, lambda: &[Vec<GroupRingElt>]) -> Result<EquivariantValue> {
    let values = (0..table.num_chars()).map(|i| table.det_of_matrix(lambda, i)).collect::<Result<_>>()?;
    Ok(EquivariantValue::new(values))
}

/// Discriminant representative `(Π_p Det(λ_p), θ^s)` for groups with no symplectic
/// characters, where the Pfaffian part is empty.
pub fn disc_rep(table: &IrrTable, local: &BTreeMap<u64, Vec<Vec<GroupRingElt>>>) -> Result<HermPair> {
    if !table.symplectic_indices().is_empty() {
        return Err(Error::Unsupported("Pfaffian unsupported".into()));
    }
    let mut first = IdeleCharFn::one();
    for (&p, lambda) in local {
        first = first.mul(&IdeleCharFn::single(p, det_package(table, lambda)?));
    }
    Ok(HermPair { first, symplectic: Vec::new() })
}

/// Both composites to the reduced Hom-description (through the metrised and through
/// the hermitian projection) agree with first-component extraction on every sample.
pub fn key_diagram_check(reps: &[RelKRep], table: &IrrTable) -> bool {
    reps.iter().all(|r| {
        let via_met = relk::partial_met(&relk::proj_met(r));
        let via_herm = relk::partial_herm(&relk::proj_herm(r, table));
        via_met == via_herm && via_met == relk::proj_red(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, irr_table, GroupSpec};

    fn table(spec: &str) -> IrrTable {
        irr_table(&build_group(&GroupSpec::parse(spec).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn isotypic_bases_are_orthonormal() {
        let t = table("heisenberg:3");
        for i in 0..t.num_chars() {
            let ws = isotypic_orthonormal_basis(&t, i);
            for (a, x) in ws.iter().enumerate() {
                for (b, y) in ws.iter().enumerate() {
                    let expect = if a == b { 1.0 } else { 0.0 };
                    assert!((dot(x, y) - Complex64::new(expect, 0.0)).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn betti_cyclic_three() {
        let t = table("cyclic:3");
        let v = betti_second_component(&t, 1, 1).unwrap();
        assert!((v - Float::sqrt(3.0)).abs() < 1e-9);
    }

    #[test]
    fn betti_heisenberg_degree_three() {
        let t = table("heisenberg:3");
        let i = (0..t.num_chars()).find(|&i| t.degree(i) == 3).unwrap();
        let v = betti_second_component(&t, 1, i).unwrap();
        let cf = betti_closed_form(27, 1, 3);
        assert!((v / cf - 1.0).abs() < 1e-6);
    }

    #[test]
    fn pullback_scaling() {
        let g = GramData::new(vec!["e".into()], vec![vec![Complex64::new(3.0, 0.0)]]).unwrap();
        let p = pullback(&vec![vec![Complex64::new(2.0, 0.0)]], &g).unwrap();
        assert!((p.gram[0][0] - Complex64::new(12.0, 0.0)).norm() < 1e-12);
        assert_eq!(pullback(&vec![vec![Complex64::new(0.0, 0.0)]], &g).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let g = GramData::new(
            vec!["a".into(), "b".into()],
            vec![
                vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
                vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
            ],
        )
        .unwrap();
        assert_eq!(g.sqrt_det().unwrap_err(), Error::NotPositiveDefinite);
    }
}
