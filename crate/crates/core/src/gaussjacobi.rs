//! Dirichlet characters, Gauss and Jacobi sums, and the equivariant Gauss-sum
//! packages of abelian extensions of `Q` inside cyclotomic fields.
//!
//! Conventions fixed here and used everywhere downstream:
//!
//! * `σ_a` is the automorphism `ζ_m ↦ ζ_m^a` of `Q(ζ_m)`; Frobenius at `p` is the
//!   arithmetic one, `σ_{a'}` with `a' ≡ p` away from `p` and `a' ≡ 1` on the `p`-part.
//! * A Galois character `χ` of `Gal(L/Q) = (Z/m)^×/H` corresponds to the Dirichlet
//!   character `ω_χ(a) = χ(σ_a)^{-1}`. This matches local reciprocity in which a unit
//!   `u` acts on `p`-power roots of unity by `ζ ↦ ζ^{u^{-1}}`.
//! * `τ(χ)` is the Gauss sum `Σ_a ω*(a) ζ_f^a` of the primitive character `ω*` inducing
//!   `ω_χ`. With these choices the resolvent of `ζ_m` at `χ` is exactly `τ(χ)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith;
use crate::cyclonum::CycNum;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, IrrTable, Quotient};

/// A Dirichlet character modulo `m` with values in the `order`-th roots of unity.
///
/// `exps[a]` is `Some(k)` when `χ(a) = ζ_order^k` and `None` when `gcd(a, m) > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletChar {
    modulus: u64,
    order: u64,
    exps: Vec<Option<u64>>,
}

fn unit_residues(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&a| arith::gcd(a, m) == 1).collect()
}

/// The unit group `(Z/m)^×` as a finite group, elements listed in increasing order.
pub fn unit_group(m: u64) -> Result<(FiniteGroup, Vec<u64>)> {
    if m == 0 {
        return Err(Error::InvalidInput("modulus 0".into()));
    }
    let units = unit_residues(m);
    let g = FiniteGroup::from_elements(units.clone(), |a, b| a * b % m, &format!("(Z/{m})^x"))?;
    Ok((g, units))
}

impl DirichletChar {
    pub fn new(modulus: u64, order: u64, exps: Vec<Option<u64>>) -> Result<DirichletChar> {
        if modulus == 0 || order == 0 || exps.len() != modulus as usize {
            return Err(Error::InvalidInput("malformed Dirichlet character".into()));
        }
        for a in 0..modulus {
            let unit = arith::gcd(a, modulus) == 1;
            match exps[a as usize] {
                Some(k) if unit && k < order => {}
                None if !unit => {}
                _ => return Err(Error::InvalidInput(format!("bad value at {a} mod {modulus}"))),
            }
        }
        let chi = DirichletChar { modulus, order, exps };
        for a in 0..modulus {
            for b in 0..modulus {
                if let (Some(x), Some(y)) = (chi.exps[a as usize], chi.exps[b as usize]) {
                    if chi.exps[(a * b % modulus) as usize] != Some((x + y) % order) {
                        return Err(Error::InvalidInput("not multiplicative".into()));
                    }
                }
            }
        }
        Ok(chi)
    }

    pub fn trivial(modulus: u64) -> DirichletChar {
        let exps = (0..modulus).map(|a| (arith::gcd(a, modulus) == 1).then_some(0)).collect();
        DirichletChar { modulus, order: 1, exps }
    }

    /// Every character modulo `m`, with values in `μ_e` for `e` the exponent of `(Z/m)^×`.
    pub fn all(m: u64) -> Result<Vec<DirichletChar>> {
        let (g, units) = unit_group(m)?;
        let e = g.exponent();
        let all: Vec<usize> = g.elements().collect();
        Ok(g.linear_characters_of(&all)
            .into_iter()
            .map(|lam| {
                let mut exps = vec![None; m as usize];
                for (i, &u) in units.iter().enumerate() {
                    exps[u as usize] = lam[i];
                }
                DirichletChar { modulus: m, order: e, exps }.simplified()
            })
            .collect())
    }

    /// Rewrite with the smallest value order.
    fn simplified(mut self) -> DirichletChar {
        let g = self.exps.iter().flatten().fold(self.order, |acc, &k| arith::gcd(acc, k));
        if g > 1 {
            for k in self.exps.iter_mut().flatten() {
                *k /= g;
            }
            self.order /= g;
        }
        self
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Exponent `e` such that all values lie in `μ_e` (this is the order of `χ`).
    pub fn value_order(&self) -> u64 {
        self.order
    }

    pub fn exponent_at(&self, a: i64) -> Option<u64> {
        self.exps[arith::modp(a, self.modulus) as usize]
    }

    pub fn value(&self, a: i64) -> CycNum {
        match self.exponent_at(a) {
            Some(k) => CycNum::zeta(self.order, k as i64),
            None => CycNum::zero(1),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Value as a Galois-style root of unity at `-1`: `+1` or `-1`.
    pub fn parity(&self) -> i64 {
        match self.exponent_at(-1) {
            Some(0) | None => 1,
            _ => -1,
        }
    }

    /// Smallest `f | m` such that `χ` is trivial on units congruent to 1 mod `f`.
    pub fn conductor(&self) -> u64 {
        let m = self.modulus;
        arith::divisors(m)
            .into_iter()
            .find(|&f| {
                (0..m).filter(|&a| arith::gcd(a, m) == 1 && a % f == 1 % f).all(|a| self.exps[a as usize] == Some(0))
            })
            .unwrap_or(m)
    }

    /// The primitive character modulo the conductor that induces `χ`.
    pub fn primitive(&self) -> DirichletChar {
        let f = self.conductor();
        self.reduce_to(f)
    }

    fn reduce_to(&self, f: u64) -> DirichletChar {
        let m = self.modulus;
        let exps = (0..f)
            .map(|a| {
                if arith::gcd(a, f) != 1 {
                    return None;
                }
                let lift = (0..m / f)
                    .map(|t| a + t * f)
                    .find(|&b| arith::gcd(b, m) == 1)
                    .expect("units lift along reduction maps");
                self.exps[lift as usize]
            })
            .collect();
        DirichletChar { modulus: f, order: self.order, exps }.simplified()
    }

    /// The character modulo a multiple `big` of the modulus induced by `χ`.
    pub fn lift_to(&self, big: u64) -> Result<DirichletChar> {
        if big % self.modulus != 0 {
            return Err(Error::InvalidInput(format!("{big} is not a multiple of {}", self.modulus)));
        }
        let exps = (0..big)
            .map(|a| if arith::gcd(a, big) == 1 { self.exps[(a % self.modulus) as usize] } else { None })
            .collect();
        Ok(DirichletChar { modulus: big, order: self.order, exps })
    }

    /// Product, computed modulo the lcm of the two moduli.
    pub fn mul(&self, other: &DirichletChar) -> DirichletChar {
        let m = arith::lcm(self.modulus, other.modulus);
        let e = arith::lcm(self.order, other.order);
        let a = self.lift_to(m).unwrap();
        let b = other.lift_to(m).unwrap();
        let exps = a
            .exps
            .iter()
            .zip(&b.exps)
            .map(|(x, y)| match (x, y) {
                (Some(x), Some(y)) => Some((x * (e / a.order) + y * (e / b.order)) % e),
                _ => None,
            })
            .collect();
        DirichletChar { modulus: m, order: e, exps }.simplified()
    }

    pub fn pow(&self, k: i64) -> DirichletChar {
        let e = self.order;
        let exps = self.exps.iter().map(|x| x.map(|x| arith::mul_mod(x, arith::modp(k, e), e))).collect();
        DirichletChar { modulus: self.modulus, order: e, exps }.simplified()
    }

    pub fn conj(&self) -> DirichletChar {
        self.pow(-1)
    }

    /// Components of `χ` at the prime powers exactly dividing the modulus.
    pub fn prime_power_component(&self, p: u64) -> DirichletChar {
        let m = self.modulus;
        let mut q = 1;
        while m % (q * p) == 0 {
            q *= p;
        }
        let rest = m / q;
        // χ_p(a) = χ(a') with a' ≡ a mod q and a' ≡ 1 mod rest.
        let exps = (0..q)
            .map(|a| {
                if arith::gcd(a, q) != 1 {
                    return None;
                }
                let lift = crt(a, q, 1 % rest, rest);
                self.exps[lift as usize]
            })
            .collect();
        DirichletChar { modulus: q, order: self.order, exps }.simplified()
    }

    /// The restriction of the associated Galois character to the decomposition
    /// group at `p`, as a local character over `Q_p`.
    pub fn local_component(&self, p: u64) -> LocalAbelianChar {
        let chi = self.primitive();
        let f = chi.modulus;
        let ramified = chi.prime_power_component(p);
        let q = ramified.modulus;
        let rest = f / q;
        // Galois-side value at arithmetic Frobenius σ_{a'} (a' ≡ p mod rest, 1 mod q),
        // which is ω(a')^{-1}.
        let frob = if rest == 1 {
            CycNum::one()
        } else {
            let a = crt(1 % q, q, p % rest, rest);
            chi.value(a as i64).inv().expect("unit value")
        };
        LocalAbelianChar { p, ramified, frobenius_value: frob }
    }
}

/// The unique `x mod ab` with `x ≡ r mod a`, `x ≡ s mod b` for coprime `a`, `b`.
fn crt(r: u64, a: u64, s: u64, b: u64) -> u64 {
    if b == 1 {
        return r % a;
    }
    if a == 1 {
        return s % b;
    }
    let inv = arith::inv_mod(a % b, b).expect("coprime moduli");
    let t = arith::mul_mod((s + b - r % b) % b, inv, b);
    r + a * t
}

/// Exact Gauss sum `Σ_{a mod f} ω*(a) ζ_f^a` of the primitive character inducing `χ`.
pub fn gauss_sum(chi: &DirichletChar) -> CycNum {
    let prim = chi.primitive();
    let f = prim.modulus;
    let e = prim.order;
    let n = arith::lcm(f, e);
    let mut v = vec![BigInt::from(0); n as usize];
    for a in 0..f {
        if let Some(k) = prim.exps[a as usize] {
            let idx = (k * (n / e) + a * (n / f)) % n;
            v[idx as usize] += 1;
        }
    }
    CycNum::from_exponent_ints(n, v, BigInt::one())
}

/// `J(χ, χ') = Σ_{a mod m} χ(a) χ'(1 - a)`, with `χ(a) = 0` for non-units (so
/// `J(1, χ') = -1` for `χ'` nontrivial modulo a prime).
pub fn jacobi_sum(chi: &DirichletChar, chi2: &DirichletChar) -> Result<CycNum> {
    if chi.modulus != chi2.modulus {
        return Err(Error::InvalidInput("Jacobi sum needs a common modulus".into()));
    }
    let m = chi.modulus;
    let e = arith::lcm(chi.order, chi2.order);
    let mut v = vec![BigInt::from(0); e as usize];
    for a in 0..m {
        let b = (1 + m - a) % m;
        if let (Some(x), Some(y)) = (chi.exps[a as usize], chi2.exps[b as usize]) {
            let idx = (x * (e / chi.order) + y * (e / chi2.order)) % e;
            v[idx as usize] += 1;
        }
    }
    Ok(CycNum::from_exponent_ints(e, v, BigInt::one()))
}

/// An abelian character of `Gal(Q_p^ab/Q_p)`: a ramified part of `p`-power
/// conductor and the value at the arithmetic Frobenius of the unramified part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAbelianChar {
    pub p: u64,
    /// Dirichlet character of `p`-power modulus describing the restriction to inertia.
    pub ramified: DirichletChar,
    pub frobenius_value: CycNum,
}

impl LocalAbelianChar {
    pub fn unramified(p: u64, frobenius_value: CycNum) -> LocalAbelianChar {
        LocalAbelianChar { p, ramified: DirichletChar::trivial(1), frobenius_value }
    }
    pub fn is_unramified(&self) -> bool {
        self.ramified.is_trivial()
    }
    /// Exponent `a` of the conductor `p^a`.
    pub fn conductor_exponent(&self) -> u32 {
        let f = self.ramified.conductor();
        let mut a = 0;
        let mut q = 1;
        while q < f {
            q *= self.p;
            a += 1;
        }
        a
    }
}

/// The base field of a local Gauss sum: a finite extension of `Q_p` of given degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalBase {
    pub p: u64,
    pub degree: u32,
}

impl LocalBase {
    pub fn qp(p: u64) -> LocalBase {
        LocalBase { p, degree: 1 }
    }
}

/// Local Galois-Gauss sum over `Q_p` in the pinned normalization:
/// `τ(Q_p, φ) = F^{-a} · τ(ω_p)` where `F` is the Frobenius value, `p^a` the
/// conductor and `ω_p` the ramified Dirichlet part. For a global character these
/// local values multiply to the global Gauss sum.
pub fn local_galois_gauss(phi: &LocalAbelianChar, base: &LocalBase) -> Result<CycNum> {
    if base.degree != 1 {
        return Err(Error::ReciprocityTableRequired);
    }
    if base.p != phi.p {
        return Err(Error::InvalidInput(format!("character at {} over Q_{}", phi.p, base.p)));
    }
    let a = phi.conductor_exponent();
    if a == 0 {
        return Ok(CycNum::one());
    }
    let f = phi.frobenius_value.pow(-(a as i64))?;
    Ok(&f * &gauss_sum(&phi.ramified))
}

/// Finite reciprocity data for an extension `N_p/M_p`: for representatives `x` of
/// `O^×/U^{(2)}`, the group element `rec(x/c)` and the additive value `ψ_add(x/c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityTable {
    pub p: u64,
    pub entries: Vec<ReciprocityEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityEntry {
    pub residue: u64,
    pub group_element: usize,
    pub additive: CycNum,
}

impl ReciprocityTable {
    /// `τ(M_p, ψ) = Σ_x ψ(rec(x/c)) ψ_add(x/c)` for a linear character given by its
    /// values on the group elements named in the table.
    pub fn local_gauss(&self, psi: impl Fn(usize) -> CycNum) -> CycNum {
        let mut acc = CycNum::zero(1);
        for e in &self.entries {
            acc = &acc + &(&psi(e.group_element) * &e.additive);
        }
        acc
    }
}

/// `τ(Q_p, ind_A^G ψ) = τ(M_p, ψ) · Π_{φ|_A = 1} τ(Q_p, φ)` (Brauer induction step),
/// with `τ(M_p, ψ)` read from a reciprocity table and the abelian factors supplied.
pub fn induced_local_gauss(
    table: &IrrTable,
    chi: usize,
    rec: &ReciprocityTable,
    abelian_values: &EquivariantValue,
) -> Result<CycNum> {
    let ind = table.inducing(chi);
    let e = table.exponent();
    let lambda = ind.lambda.clone();
    let tau_m = rec.local_gauss(|x| match lambda.get(x).copied().flatten() {
        Some(k) => CycNum::zeta(e, k as i64),
        None => CycNum::zero(1),
    });
    let mut acc = tau_m;
    for phi in 0..table.num_chars() {
        let trivial_on_a = table.degree(phi) == 1 && ind.subgroup.iter().all(|&a| table.value_at(phi, a).is_one());
        if trivial_on_a {
            acc = &acc * &abelian_values.values[phi];
        }
    }
    Ok(acc)
}

/// An element of `ζ(Q^c[Γ])` given by its components at the irreducible characters,
/// indexed as in the group's `IrrTable`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantValue {
    pub values: Vec<CycNum>,
}

impl EquivariantValue {
    pub fn new(values: Vec<CycNum>) -> EquivariantValue {
        EquivariantValue { values }
    }
    pub fn one(n: usize) -> EquivariantValue {
        EquivariantValue { values: vec![CycNum::one(); n] }
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    /// Error if any component is zero.
    pub fn check_invertible(&self) -> Result<()> {
        match self.values.iter().position(|v| v.is_zero()) {
            Some(index) => Err(Error::ZeroComponent { index }),
            None => Ok(()),
        }
    }
    pub fn mul(&self, other: &EquivariantValue) -> EquivariantValue {
        EquivariantValue { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }
    pub fn inv(&self) -> Result<EquivariantValue> {
        self.check_invertible()?;
        Ok(EquivariantValue { values: self.values.iter().map(|v| v.inv()).collect::<Result<_>>()? })
    }
    pub fn div(&self, other: &EquivariantValue) -> Result<EquivariantValue> {
        Ok(self.mul(&other.inv()?))
    }
    pub fn pow(&self, k: i64) -> Result<EquivariantValue> {
        Ok(EquivariantValue { values: self.values.iter().map(|v| v.pow(k)).collect::<Result<_>>()? })
    }
    /// Componentwise `x_χ^{χ(1)}`-style scaling: `t^{χ(1)·mult}` for a scalar `t`.
    pub fn reduced_norm_of_scalar(t: &CycNum, table: &IrrTable) -> Result<EquivariantValue> {
        let values = (0..table.num_chars()).map(|i| t.pow(table.degree(i) as i64)).collect::<Result<_>>()?;
        Ok(EquivariantValue { values })
    }
    /// Value at a virtual character, extended multiplicatively.
    pub fn at_virtual(&self, v: &[i64]) -> Result<CycNum> {
        let mut acc = CycNum::one();
        for (x, &n) in self.values.iter().zip(v) {
            if n != 0 {
                acc = &acc * &x.pow(n)?;
            }
        }
        Ok(acc)
    }
}

/// `(m + n·ψ_{k,*})(x)_χ = x_χ^m · x_{ψ_k(χ)}^n`.
pub fn adams_twist(x: &EquivariantValue, table: &IrrTable, m: i64, n: i64, k: i64) -> Result<EquivariantValue> {
    let mut values = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let j = table.adams_index(i, k)?;
        let a = if m == 0 { CycNum::one() } else { x.values[i].pow(m)? };
        let b = if n == 0 { CycNum::one() } else { x.values[j].pow(n)? };
        values.push(&a * &b);
    }
    Ok(EquivariantValue { values })
}

/// Whether `x` lies in `ζ(Q[Γ])`: `ω(x_χ) = x_{ω∘χ}` for every `χ` and every `ω`.
pub fn is_rational(x: &EquivariantValue, table: &IrrTable) -> bool {
    let e = table.exponent();
    let big = x.values.iter().fold(e, |acc, v| arith::lcm(acc, v.order()));
    let twists: Vec<Vec<usize>> = (0..x.len())
        .map(|i| {
            (0..e)
                .map(|k| {
                    if arith::gcd(k, e) == 1 {
                        table.galois_twist(i, k as i64).unwrap_or(usize::MAX)
                    } else {
                        usize::MAX
                    }
                })
                .collect()
        })
        .collect();
    for w in 1..big.max(2) {
        if arith::gcd(w, big) != 1 {
            continue;
        }
        for i in 0..x.len() {
            let j = twists[i][(w % e) as usize];
            if j == usize::MAX {
                return false;
            }
            match x.values[i].galois_apply(w as i64) {
                Ok(v) if v == x.values[j] => {}
                _ => return false,
            }
        }
    }
    true
}

/// `J_k = (ψ_{k,*} − k)(τ)` together with whether it is rational.
pub fn galois_jacobi(tau: &EquivariantValue, table: &IrrTable, k: i64) -> Result<(EquivariantValue, bool)> {
    let j = adams_twist(tau, table, -k, 1, k)?;
    let ok = is_rational(&j, table);
    Ok((j, ok))
}

/// Ramification data of a Galois extension with group `Γ` at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationDatum {
    /// Sorted elements of the inertia subgroup.
    pub inertia: Vec<usize>,
    /// A lift of Frobenius.
    pub frobenius: usize,
    /// Second ramification group trivial.
    pub weakly_ramified: bool,
}

impl RamificationDatum {
    pub fn new(g: &FiniteGroup, inertia: Vec<usize>, frobenius: usize, weak: bool) -> Result<Self> {
        if !g.is_subgroup(&inertia) || frobenius >= g.size() {
            return Err(Error::InvalidSubgroup("inertia is not a subgroup".into()));
        }
        let mut gens = g.generators_of(&inertia);
        gens.push(frobenius);
        let d = g.generated(&gens);
        let sub = g.subgroup(&d)?;
        let inert_local: Vec<usize> = inertia.iter().map(|x| sub.embed.binary_search(x).unwrap()).collect();
        if !sub.group.is_normal(&inert_local) {
            return Err(Error::InvalidSubgroup("inertia not normal in decomposition group".into()));
        }
        let mut inertia = inertia;
        inertia.sort_unstable();
        Ok(RamificationDatum { inertia, frobenius, weakly_ramified: weak })
    }

    pub fn is_tame(&self, g: &FiniteGroup, p: u64) -> bool {
        self.inertia.iter().all(|&x| g.order_of(x) % p != 0)
    }
}

/// `y(φ)` for an irreducible `φ`: `1` if `φ` is nontrivial on inertia, else `−φ(σ)`.
pub fn y_irreducible(d: &RamificationDatum, table: &IrrTable, i: usize) -> CycNum {
    let deg = CycNum::from_int(table.degree(i) as i64);
    if d.inertia.iter().all(|&h| table.value_at(i, h) == &deg) && table.degree(i) == 1 {
        -table.value_at(i, d.frobenius).clone()
    } else {
        CycNum::one()
    }
}

/// `y` extended multiplicatively to virtual characters.
pub fn y_char(d: &RamificationDatum, table: &IrrTable, phi: &[i64]) -> Result<CycNum> {
    let mut acc = CycNum::one();
    for (i, &n) in phi.iter().enumerate() {
        if n != 0 {
            acc = &acc * &y_irreducible(d, table, i).pow(n)?;
        }
    }
    Ok(acc)
}

/// The package `χ ↦ Π_d y_d(χ)` over a list of ramification data.
pub fn y_package(data: &[RamificationDatum], table: &IrrTable) -> EquivariantValue {
    let values = (0..table.num_chars())
        .map(|i| data.iter().fold(CycNum::one(), |acc, d| &acc * &y_irreducible(d, table, i)))
        .collect();
    EquivariantValue { values }
}

/// `τ' = τ · y^{-1}`.
pub fn tau_prime(tau: &EquivariantValue, y: &EquivariantValue) -> Result<EquivariantValue> {
    tau.check_invertible()?;
    tau.div(y)
}

/// `τ† = τ_K^Γ · τ`.
pub fn tau_dagger(tau: &EquivariantValue, tau_kg: &EquivariantValue) -> Result<EquivariantValue> {
    tau.check_invertible()?;
    Ok(tau_kg.mul(tau))
}

/// Checks `τ_K^Γ·(ψ_{2,*}−1)(τ')·(τ†)^{-1} = J_2·(ψ_{2,*}−1)(y^{-1})` componentwise.
pub fn verify_label_product(
    tau: &EquivariantValue,
    tau_p: &EquivariantValue,
    tau_d: &EquivariantValue,
    y: &EquivariantValue,
    tau_kg: &EquivariantValue,
    table: &IrrTable,
) -> Result<bool> {
    let lhs = tau_kg.mul(&adams_twist(tau_p, table, -1, 1, 2)?).div(tau_d)?;
    let (j2, _) = galois_jacobi(tau, table, 2)?;
    let rhs = j2.mul(&adams_twist(&y.inv()?, table, -1, 1, 2)?);
    Ok(lhs == rhs)
}

/// An abelian extension `L/Q` inside `Q(ζ_m)`, given by the subgroup `H` of
/// `(Z/m)^×` fixing it, so that `Gal(L/Q) = (Z/m)^×/H`.
#[derive(Clone, Debug)]
pub struct AbelianField {
    m: u64,
    units: Vec<u64>,
    unit_pos: Vec<Option<usize>>,
    kernel: Vec<u64>,
    quotient: Quotient,
    table: IrrTable,
    reps: Vec<u64>,
}

impl AbelianField {
    /// The fixed field of the subgroup generated by `kernel_gens`.
    pub fn new(m: u64, kernel_gens: &[u64]) -> Result<AbelianField> {
        let (g, units) = unit_group(m)?;
        let mut unit_pos = vec![None; m as usize];
        for (i, &u) in units.iter().enumerate() {
            unit_pos[u as usize] = Some(i);
        }
        let gens: Vec<usize> = kernel_gens
            .iter()
            .map(|&a| unit_pos[(a % m) as usize].ok_or(Error::NotCoprime { k: a as i64, modulus: m }))
            .collect::<Result<_>>()?;
        let h = g.generated(&gens);
        let quotient = g.quotient(&h)?;
        let table = crate::groups::irr_table(&quotient.group)?;
        let mut reps = vec![u64::MAX; quotient.group.size()];
        for (i, &u) in units.iter().enumerate() {
            let q = quotient.proj[i];
            if reps[q] == u64::MAX {
                reps[q] = u;
            }
        }
        let kernel = h.iter().map(|&i| units[i]).collect();
        Ok(AbelianField { m, units, unit_pos, kernel, quotient, table, reps })
    }

    /// `Q(ζ_m)` itself.
    pub fn full(m: u64) -> Result<AbelianField> {
        AbelianField::new(m, &[])
    }

    /// All subfields of `Q(ζ_m)` of odd degree.
    pub fn odd_degree_subfields(m: u64) -> Result<Vec<AbelianField>> {
        let (g, units) = unit_group(m)?;
        let two_part: Vec<usize> = g.elements().filter(|&x| g.order_of(x).is_power_of_two()).collect();
        let mut out = Vec::new();
        for h in g.all_subgroups() {
            if two_part.iter().all(|x| h.binary_search(x).is_ok()) {
                let gens: Vec<u64> = g.generators_of(&h).iter().map(|&i| units[i]).collect();
                out.push(AbelianField::new(m, &gens)?);
            }
        }
        Ok(out)
    }

    /// The unique subfield of given degree, when `(Z/m)^×` has exactly one such quotient.
    pub fn subfield_of_degree(m: u64, d: u64) -> Result<AbelianField> {
        let (g, units) = unit_group(m)?;
        let phi = g.size() as u64;
        if d == 0 || phi % d != 0 {
            return Err(Error::InvalidInput(format!("no subfield of degree {d} in Q(zeta_{m})")));
        }
        let cands: Vec<Vec<usize>> = g.all_subgroups().into_iter().filter(|h| h.len() as u64 * d == phi).collect();
        if cands.len() != 1 {
            return Err(Error::InvalidInput(format!("Q(zeta_{m}) has {} subfields of degree {d}", cands.len())));
        }
        let gens: Vec<u64> = g.generators_of(&cands[0]).iter().map(|&i| units[i]).collect();
        AbelianField::new(m, &gens)
    }

    /// The compositum, realised inside `Q(ζ_lcm)`.
    pub fn compositum(&self, other: &AbelianField) -> Result<AbelianField> {
        let big = arith::lcm(self.m, other.m);
        let gens: Vec<u64> = unit_residues(big)
            .into_iter()
            .filter(|&u| self.contains_kernel(u % self.m) && other.contains_kernel(u % other.m))
            .collect();
        AbelianField::new(big, &gens)
    }

    fn contains_kernel(&self, u: u64) -> bool {
        self.kernel.binary_search(&(u % self.m)).is_ok()
    }

    pub fn conductor_modulus(&self) -> u64 {
        self.m
    }
    pub fn degree(&self) -> usize {
        self.quotient.group.size()
    }
    pub fn kernel(&self) -> &[u64] {
        &self.kernel
    }
    pub fn group(&self) -> &FiniteGroup {
        &self.quotient.group
    }
    pub fn table(&self) -> &IrrTable {
        &self.table
    }
    /// A unit `a` with `σ_a` equal to the given group element.
    pub fn unit_rep(&self, g: usize) -> u64 {
        self.reps[g]
    }

    /// The group element `σ_a|_L`.
    pub fn sigma(&self, a: i64) -> Result<usize> {
        let r = arith::modp(a, self.m);
        let i = self.unit_pos[r as usize].ok_or(Error::NotCoprime { k: a, modulus: self.m })?;
        Ok(self.quotient.proj[i])
    }

    fn split(&self, p: u64) -> (u64, u64) {
        let mut q = 1;
        while self.m % (q * p) == 0 {
            q *= p;
        }
        (q, self.m / q)
    }

    /// Inertia subgroup at `p`: the image of units congruent to 1 away from `p`.
    pub fn inertia(&self, p: u64) -> Vec<usize> {
        let (q, rest) = self.split(p);
        let mut s: BTreeSet<usize> = BTreeSet::new();
        for &u in &self.units {
            if u % rest == 1 % rest && (q > 1 || u == 1 % self.m) {
                s.insert(self.quotient.proj[self.unit_pos[u as usize].unwrap()]);
            }
        }
        s.into_iter().collect()
    }

    /// Arithmetic Frobenius at `p`.
    pub fn frobenius(&self, p: u64) -> usize {
        let (q, rest) = self.split(p);
        let a = crt(1 % q, q, p % rest, rest);
        self.sigma(a as i64).expect("Frobenius lift is a unit")
    }

    /// Decomposition group at `p`.
    pub fn decomposition(&self, p: u64) -> Vec<usize> {
        let g = self.group();
        let mut gens = g.generators_of(&self.inertia(p));
        gens.push(self.frobenius(p));
        g.generated(&gens)
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        arith::factor_u64(self.m).into_iter().map(|(p, _)| p).filter(|&p| self.inertia(p).len() > 1).collect()
    }

    /// Ramification datum at `p`. The extension is weakly ramified at `p` exactly
    /// when every character has conductor exponent at most 2 there.
    pub fn ramification(&self, p: u64) -> RamificationDatum {
        let weak = (0..self.table.num_chars())
            .all(|i| self.dirichlet(i).prime_power_component(p).conductor() % (p * p * p) != 0);
        RamificationDatum { inertia: self.inertia(p), frobenius: self.frobenius(p), weakly_ramified: weak }
    }

    pub fn ramification_data(&self) -> Vec<(u64, RamificationDatum)> {
        self.ramified_primes().into_iter().map(|p| (p, self.ramification(p))).collect()
    }

    /// `ω_χ(a) = χ(σ_a)^{-1}` for the `i`-th character.
    pub fn dirichlet(&self, i: usize) -> DirichletChar {
        let e = self.table.exponent();
        let lam = &self.table.inducing(i).lambda;
        let exps = (0..self.m)
            .map(|a| {
                self.unit_pos[a as usize].map(|pos| {
                    let k = lam[self.quotient.proj[pos]].expect("linear character");
                    (e - k) % e
                })
            })
            .collect();
        DirichletChar { modulus: self.m, order: e, exps }.simplified()
    }

    /// `τ_{L/Q}`.
    pub fn tau(&self) -> EquivariantValue {
        EquivariantValue { values: (0..self.table.num_chars()).map(|i| gauss_sum(&self.dirichlet(i))).collect() }
    }

    /// `y_{L/Q}` over the ramified primes.
    pub fn y(&self) -> EquivariantValue {
        let data: Vec<RamificationDatum> = self.ramification_data().into_iter().map(|(_, d)| d).collect();
        y_package(&data, &self.table)
    }

    /// All Gauss-sum packages of `L/Q`.
    pub fn packages(&self) -> Result<GaussPackages> {
        let tau = self.tau();
        let y = self.y();
        let tau_kg = EquivariantValue::one(tau.len());
        let tau_prime = tau_prime(&tau, &y)?;
        let tau_dagger = tau_dagger(&tau, &tau_kg)?;
        Ok(GaussPackages { tau, y, tau_prime, tau_dagger, tau_kg })
    }

    /// Whether `b ∈ Q(ζ_m)` lies in `L`.
    pub fn contains(&self, b: &CycNum) -> bool {
        if self.m % b.order() != 0 {
            return false;
        }
        let b = b.embed(self.m);
        self.kernel.iter().all(|&h| b.galois_apply(h as i64).map(|x| x == b).unwrap_or(false))
    }

    /// `(b | χ) = Σ_g g(b) χ(g)^{-1}`; for `K = Q` this is also the norm resolvent.
    pub fn resolvent(&self, b: &CycNum, i: usize) -> Result<CycNum> {
        if !self.contains(b) {
            return Err(Error::NotInField(format!("{b} is not in the field")));
        }
        let b = b.embed(self.m);
        let e = self.table.exponent();
        let lam = &self.table.inducing(i).lambda;
        let mut acc = CycNum::zero(1);
        for g in self.group().elements() {
            let gb = b.galois_apply(self.reps[g] as i64)?;
            let k = lam[g].expect("linear character");
            acc = &acc + &(&gb * &CycNum::zeta(e, -(k as i64)));
        }
        Ok(acc)
    }

    /// The resolvent package `χ ↦ (b | χ)`.
    pub fn resolvents(&self, b: &CycNum) -> Result<EquivariantValue> {
        Ok(EquivariantValue {
            values: (0..self.table.num_chars()).map(|i| self.resolvent(b, i)).collect::<Result<_>>()?,
        })
    }

    /// `Tr_{Q(ζ_m)/L}(x)`.
    pub fn trace_down(&self, x: &CycNum) -> Result<CycNum> {
        let x = x.embed(arith::lcm(self.m, x.order()));
        if x.order() != self.m {
            return Err(Error::NotInField("element outside the ambient field".into()));
        }
        let mut acc = CycNum::zero(1);
        for &h in &self.kernel {
            acc = &acc + &x.galois_apply(h as i64)?;
        }
        Ok(acc)
    }
}

/// `τ`, `y`, `τ'`, `τ†` and `τ_K^Γ` for one extension.
#[derive(Clone, Debug)]
pub struct GaussPackages {
    pub tau: EquivariantValue,
    pub y: EquivariantValue,
    pub tau_prime: EquivariantValue,
    pub tau_dagger: EquivariantValue,
    pub tau_kg: EquivariantValue,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic_mod(p: u64) -> DirichletChar {
        DirichletChar::all(p).unwrap().into_iter().find(|c| c.value_order() == 2).unwrap()
    }

    #[test]
    fn gauss_sum_trivial_and_quadratic() {
        assert!(gauss_sum(&DirichletChar::trivial(1)).is_one());
        let chi = quadratic_mod(3);
        let expect = &CycNum::zeta(3, 1) - &CycNum::zeta(3, 2);
        assert_eq!(gauss_sum(&chi), expect);
        assert_eq!(&expect * &expect, CycNum::from_int(-3));
    }

    #[test]
    fn quartic_mod_five() {
        // χ(2) = ζ_4; oracle is the explicit four-term sum.
        let chi = DirichletChar::all(5).unwrap().into_iter().find(|c| c.value(2) == CycNum::zeta(4, 1)).unwrap();
        let mut oracle = CycNum::zero(1);
        for a in 1..5i64 {
            oracle = &oracle + &(&chi.value(a) * &CycNum::zeta(5, a));
        }
        let g = gauss_sum(&chi);
        assert_eq!(g, oracle);
        assert!((g.abs_f64().powi(2) - 5.0).abs() < 1e-9);
        let j = jacobi_sum(&chi, &chi).unwrap();
        assert!((j.abs_f64().powi(2) - 5.0).abs() < 1e-9);
        assert_eq!(&gauss_sum(&chi) * &gauss_sum(&chi), &j * &gauss_sum(&chi.pow(2)));
    }

    #[test]
    fn jacobi_degenerate() {
        let chi = quadratic_mod(7);
        assert_eq!(jacobi_sum(&DirichletChar::trivial(7), &chi).unwrap(), CycNum::from_int(-1));
        let j = jacobi_sum(&chi, &chi).unwrap();
        assert!((j.abs_f64().powi(2) - 7.0).abs() < 1e-9 || j == CycNum::from_int(-chi.parity()));
    }

    #[test]
    fn conductor_and_primitive() {
        let chi = quadratic_mod(3).lift_to(15).unwrap();
        assert_eq!(chi.conductor(), 3);
        assert_eq!(chi.primitive(), quadratic_mod(3));
    }

    #[test]
    fn product_formula_for_local_sums() {
        for chi in DirichletChar::all(63).unwrap() {
            let f = chi.conductor();
            let mut prod = CycNum::one();
            for (p, _) in arith::factor_u64(f) {
                let loc = chi.local_component(p);
                prod = &prod * &local_galois_gauss(&loc, &LocalBase::qp(p)).unwrap();
            }
            assert_eq!(prod, gauss_sum(&chi), "conductor {f}");
        }
    }

    #[test]
    fn local_requires_table_off_qp() {
        let loc = LocalAbelianChar::unramified(3, CycNum::zeta(3, 1));
        assert!(local_galois_gauss(&loc, &LocalBase::qp(3)).unwrap().is_one());
        assert_eq!(local_galois_gauss(&loc, &LocalBase { p: 3, degree: 2 }), Err(Error::ReciprocityTableRequired));
    }

    #[test]
    fn resolvent_of_zeta_is_gauss_sum() {
        let l = AbelianField::full(7).unwrap();
        let z = CycNum::zeta(7, 1);
        let t = l.table().trivial_index();
        let pk = l.packages().unwrap();
        for i in 0..l.table().num_chars() {
            if i != t {
                assert_eq!(l.resolvent(&z, i).unwrap(), gauss_sum(&l.dirichlet(i)));
            }
            assert_eq!(l.resolvent(&z, i).unwrap(), pk.tau_prime.values[i]);
        }
        assert_eq!(l.resolvent(&z, t).unwrap(), CycNum::from_int(-1));
        assert!(l.resolvent(&CycNum::one(), (t + 1) % 6).unwrap().is_zero());
    }

    #[test]
    fn resolvent_rejects_outside_field() {
        let l = AbelianField::subfield_of_degree(7, 3).unwrap();
        assert!(matches!(l.resolvent(&CycNum::zeta(7, 1), 0), Err(Error::NotInField(_))));
    }

    #[test]
    fn tame_cubic_packages() {
        let l = AbelianField::subfield_of_degree(7, 3).unwrap();
        let pk = l.packages().unwrap();
        let t = l.table().trivial_index();
        assert!(pk.tau.values[t].is_one());
        assert_eq!(pk.y.values[t], CycNum::from_int(-1));
        let (j2, ok) = galois_jacobi(&pk.tau, l.table(), 2).unwrap();
        assert!(ok);
        for i in 0..3 {
            if i == t {
                continue;
            }
            let chi = l.dirichlet(i);
            let jac = jacobi_sum(&chi, &chi).unwrap();
            assert_eq!(&j2.values[i] * &jac, CycNum::one());
        }
        assert!(verify_label_product(&pk.tau, &pk.tau_prime, &pk.tau_dagger, &pk.y, &pk.tau_kg, l.table()).unwrap());
        let mut bad = pk.tau.clone();
        bad.values[t] = CycNum::zeta(3, 1);
        assert!(!galois_jacobi(&bad, l.table(), 2).unwrap().1);
    }

    #[test]
    fn compositum_ramification() {
        let a = AbelianField::subfield_of_degree(9, 3).unwrap();
        let b = AbelianField::subfield_of_degree(7, 3).unwrap();
        let c = a.compositum(&b).unwrap();
        assert_eq!(c.degree(), 9);
        assert_eq!(c.inertia(3).len(), 3);
        assert_eq!(c.decomposition(3).len(), 9);
        assert_eq!(c.ramified_primes(), vec![3, 7]);
    }
}
