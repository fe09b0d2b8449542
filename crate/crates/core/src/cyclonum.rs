//! Exact arithmetic in cyclotomic fields.
//!
//! A [`CycNum`] of order `n` is stored in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`
//! as integer numerators over one positive common denominator, reduced modulo the
//! cyclotomic polynomial `Φ_n`. Because this representation is canonical, equality of
//! two values of the same order is equality of their coefficient vectors. Values of
//! different orders are compared and combined inside `Q(ζ_lcm)`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// An element of `Q(ζ_order)`.
#[derive(Clone)]
pub struct CycNum {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Coefficients of `Φ_n`, lowest degree first (monic, length `φ(n)+1`).
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    #[cfg(feature = "std")]
    {
        use std::collections::BTreeMap;
        use std::sync::{Mutex, OnceLock};
        static CACHE: OnceLock<Mutex<BTreeMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
        if let Some(p) = cache.lock().unwrap().get(&n) {
            return p.clone();
        }
        let p = Arc::new(compute_cyclotomic(n));
        cache.lock().unwrap().insert(n, p.clone());
        p
    }
    #[cfg(not(feature = "std"))]
    {
        Arc::new(compute_cyclotomic(n))
    }
}

fn compute_cyclotomic(n: u64) -> Vec<i64> {
    // Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}
    let mut poly = vec![1i64];
    let mut divide_by = Vec::new();
    for d in arith::divisors(n) {
        match arith::mobius(n / d) {
            1 => {
                let d = d as usize;
                let mut out = vec![0i64; poly.len() + d];
                for (i, &c) in poly.iter().enumerate() {
                    out[i + d] += c;
                    out[i] -= c;
                }
                poly = out;
            }
            -1 => divide_by.push(d as usize),
            _ => {}
        }
    }
    for d in divide_by {
        let deg = poly.len() - 1;
        let mut q = vec![0i64; deg - d + 1];
        for j in (d..=deg).rev() {
            let above = if j <= deg - d { q[j] } else { 0 };
            q[j - d] = poly[j] + above;
        }
        poly = q;
    }
    poly
}

fn fits_small(v: &[BigInt]) -> Option<u64> {
    let mut bits = 0;
    for c in v {
        let b = c.bits();
        if b > 62 {
            return None;
        }
        bits = bits.max(b);
    }
    Some(bits)
}

/// Reduce an exponent-indexed vector modulo `Φ_n` in `i128`, failing on overflow.
fn reduce_small(mut v: Vec<i128>, phi: &[i64]) -> Option<Vec<i128>> {
    let d = phi.len() - 1;
    for i in (d..v.len()).rev() {
        let c = v[i];
        if c != 0 {
            for j in 0..d {
                let t = c.checked_mul(phi[j] as i128)?;
                v[i - d + j] = v[i - d + j].checked_sub(t)?;
            }
            v[i] = 0;
        }
    }
    v.truncate(d);
    v.resize(d, 0);
    Some(v)
}

fn reduce_big(mut v: Vec<BigInt>, phi: &[i64]) -> Vec<BigInt> {
    let d = phi.len() - 1;
    for i in (d..v.len()).rev() {
        if !v[i].is_zero() {
            let c = core::mem::take(&mut v[i]);
            for j in 0..d {
                if phi[j] != 0 {
                    v[i - d + j] -= &c * phi[j];
                }
            }
        }
    }
    v.truncate(d);
    v.resize(d, BigInt::zero());
    v
}

/// Reduce an arbitrary exponent-indexed integer vector modulo `Φ_n`.
fn reduce_vec(v: Vec<BigInt>, n: u64) -> Vec<BigInt> {
    let phi = cyclotomic_poly(n);
    if v.len() < phi.len() {
        let mut v = v;
        v.resize(phi.len() - 1, BigInt::zero());
        return v;
    }
    if let Some(bits) = fits_small(&v) {
        if bits + 2 * (64 - (v.len() as u64).leading_zeros() as u64) < 90 {
            let small: Vec<i128> = v.iter().map(|c| c.to_i128().unwrap()).collect();
            if let Some(r) = reduce_small(small, &phi) {
                return r.into_iter().map(BigInt::from).collect();
            }
        }
    }
    reduce_big(v, &phi)
}

impl CycNum {
    fn normalized(order: u64, mut num: Vec<BigInt>, mut den: BigInt) -> CycNum {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -core::mem::take(c);
            }
        }
        if num.iter().all(|c| c.is_zero()) {
            return CycNum { order, num, den: BigInt::one() };
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c /= &g;
                }
                den /= &g;
            }
        }
        CycNum { order, num, den }
    }

    /// Build from a vector of integer coefficients of `ζ_n^i` (any length) over a denominator.
    pub fn from_exponent_ints(order: u64, v: Vec<BigInt>, den: BigInt) -> CycNum {
        assert!(order >= 1, "order must be positive");
        let num = reduce_vec(v, order);
        CycNum::normalized(order, num, den)
    }

    /// Build from rational coefficients of `ζ_n^i`, `i = 0..len`.
    pub fn from_rationals(order: u64, coeffs: &[BigRational]) -> CycNum {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let v = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        CycNum::from_exponent_ints(order, v, den)
    }

    pub fn zero(order: u64) -> CycNum {
        let d = arith::euler_phi(order) as usize;
        CycNum { order, num: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    pub fn one() -> CycNum {
        CycNum::from_int(1)
    }

    pub fn from_int(n: i64) -> CycNum {
        CycNum { order: 1, num: vec![BigInt::from(n)], den: BigInt::one() }
    }

    pub fn from_rational(q: &BigRational) -> CycNum {
        CycNum::normalized(1, vec![q.numer().clone()], q.denom().clone())
    }

    pub fn from_ratio(n: i64, d: i64) -> CycNum {
        CycNum::normalized(1, vec![BigInt::from(n)], BigInt::from(d))
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u64, k: i64) -> CycNum {
        let e = arith::modp(k, n) as usize;
        let mut v = vec![BigInt::zero(); n as usize];
        v[e] = BigInt::one();
        CycNum::from_exponent_ints(n, v, BigInt::one())
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Canonical power-basis coefficients as exact rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The same element viewed in `Q(ζ_big)`; `order` must divide `big`.
    pub fn embed(&self, big: u64) -> CycNum {
        assert!(big % self.order == 0, "embedding order must be a multiple");
        if big == self.order {
            return self.clone();
        }
        let step = (big / self.order) as usize;
        let mut v = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step] = c.clone();
        }
        CycNum::from_exponent_ints(big, v, self.den.clone())
    }

    fn common(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        if a.order == b.order {
            (a.clone(), b.clone())
        } else {
            let n = arith::lcm(a.order, b.order);
            (a.embed(n), b.embed(n))
        }
    }

    fn add_same(a: &CycNum, b: &CycNum, sign: i32) -> CycNum {
        let (num, den) = if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| if sign > 0 { x + y } else { x - y }).collect();
            (num, a.den.clone())
        } else {
            let num = a
                .num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if sign > 0 {
                        l + r
                    } else {
                        l - r
                    }
                })
                .collect();
            (num, &a.den * &b.den)
        };
        CycNum::normalized(a.order, num, den)
    }

    fn mul_same(a: &CycNum, b: &CycNum) -> CycNum {
        let n = a.order;
        let d = a.num.len();
        if a.is_zero() || b.is_zero() {
            return CycNum::zero(n);
        }
        let den = &a.den * &b.den;
        if let (Some(ba), Some(bb)) = (fits_small(&a.num), fits_small(&b.num)) {
            if ba + bb + 2 * (64 - (d as u64).leading_zeros() as u64) < 96 {
                let av: Vec<i128> = a.num.iter().map(|c| c.to_i128().unwrap()).collect();
                let bv: Vec<i128> = b.num.iter().map(|c| c.to_i128().unwrap()).collect();
                let mut prod = vec![0i128; 2 * d - 1];
                for (i, x) in av.iter().enumerate() {
                    if *x == 0 {
                        continue;
                    }
                    for (j, y) in bv.iter().enumerate() {
                        prod[i + j] += x * y;
                    }
                }
                let phi = cyclotomic_poly(n);
                if let Some(r) = reduce_small(prod, &phi) {
                    let num = r.into_iter().map(BigInt::from).collect();
                    return CycNum::normalized(n, num, den);
                }
            }
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let phi = cyclotomic_poly(n);
        CycNum::normalized(n, reduce_big(prod, &phi), den)
    }

    pub fn mul_int(&self, k: i64) -> CycNum {
        let num = self.num.iter().map(|c| c * k).collect();
        CycNum::normalized(self.order, num, self.den.clone())
    }

    pub fn scale(&self, q: &BigRational) -> CycNum {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        CycNum::normalized(self.order, num, &self.den * q.denom())
    }

    /// Multiplicative inverse.
    ///
    /// The linear system `x·y = 1` is solved modulo a sequence of 62-bit primes, the
    /// solution lifted by CRT and rational reconstruction, and the candidate is accepted
    /// only after exact verification.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.num.len();
        if self.num[1..].iter().all(|c| c.is_zero()) {
            let q = CycNum::normalized(1, vec![self.den.clone()], self.num[0].clone());
            return Ok(q.embed(self.order));
        }
        // Gauss sums, Jacobi sums and their quotients have rational norm to the
        // maximal real subfield, so x⁻¹ = x̄ / (x x̄) avoids the linear solve.
        let bar = self.conj();
        let nrm = self * &bar;
        if let Some(q) = nrm.as_rational() {
            return Ok(bar.scale(&q.recip()));
        }
        let phi = cyclotomic_poly(self.order);
        // Columns: coefficient vectors of A·ζ^j where A is the integral numerator.
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(d);
        let mut cur = self.num.clone();
        for _ in 0..d {
            cols.push(cur.clone());
            let top = cur[d - 1].clone();
            let mut next = vec![BigInt::zero(); d];
            for i in (1..d).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..d {
                    if phi[i] != 0 {
                        next[i] -= &top * phi[i];
                    }
                }
            }
            cur = next;
        }
        let mut modulus = BigInt::one();
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); d];
        let mut prime = (1u64 << 62) - 57;
        let mut used = 0;
        loop {
            while !arith::is_prime(prime) {
                prime -= 2;
            }
            let p = prime;
            prime -= 2;
            let Some(sol) = solve_mod_p(&cols, p) else { continue };
            // CRT combine acc (mod modulus) with sol (mod p).
            let pb = BigInt::from(p);
            let minv = arith::inv_mod((&modulus % &pb).to_u64().unwrap(), p).unwrap();
            for i in 0..d {
                let a_mod_p = (&acc[i] % &pb).to_u64().unwrap();
                let diff = (sol[i] + p - a_mod_p) % p;
                let t = arith::mul_mod(diff, minv, p);
                acc[i] += &modulus * BigInt::from(t);
            }
            modulus *= &pb;
            used += 1;
            if used % 2 == 1 && used > 1 {
                continue;
            }
            if let Some(cand) = reconstruct(&acc, &modulus) {
                let (num, den) = cand;
                let y = CycNum::normalized(self.order, num, den);
                let a_int = CycNum::normalized(self.order, self.num.clone(), BigInt::one());
                if (&a_int * &y).is_one() {
                    let scaled = y.num.iter().map(|c| c * &self.den).collect();
                    return Ok(CycNum::normalized(self.order, scaled, y.den));
                }
            }
        }
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = CycNum::one().embed(self.order);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(result)
    }

    /// The automorphism `ζ_n ↦ ζ_n^k`.
    pub fn galois_apply(&self, k: i64) -> Result<CycNum> {
        let n = self.order;
        let kk = arith::modp(k, n);
        if arith::gcd(kk, n) != 1 {
            return Err(Error::NotCoprime { k, modulus: n });
        }
        if kk == 1 || n <= 2 {
            return Ok(self.clone());
        }
        let mut v = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[((i as u64 * kk) % n) as usize] = c.clone();
        }
        Ok(CycNum::from_exponent_ints(n, v, self.den.clone()))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> CycNum {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    /// The complex value under `ζ_n ↦ e^{2πi/n}`.
    pub fn complex_value(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let exact_ratio = !den.is_finite() || den > 1e300;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if exact_ratio {
                BigRational::new(c.clone(), self.den.clone()).to_f64().unwrap_or(0.0)
            } else {
                c.to_f64().unwrap_or(f64::INFINITY) / den
            };
            let ang = 2.0 * core::f64::consts::PI * (i as f64) / (self.order as f64);
            z += Complex64::from_polar(coeff, ang);
        }
        z
    }

    /// `|x|` as a double.
    pub fn abs_f64(&self) -> f64 {
        self.complex_value().norm()
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// True when every coefficient is `ℓ`-integral, i.e. the element lies in
    /// `Z_(ℓ)[ζ_n]` (the power basis is an integral basis).
    pub fn is_l_integral(&self, l: u64) -> bool {
        !(&self.den % BigInt::from(l)).is_zero()
    }

    /// Primes dividing the common denominator.
    pub fn denominator_primes(&self) -> Vec<u64> {
        arith::prime_divisors_big(&self.den)
    }

    /// Total order compatible with equality (compares canonical coefficients in `Q(ζ_lcm)`).
    pub fn canonical_cmp(&self, other: &CycNum) -> Ordering {
        let (a, b) = CycNum::common(self, other);
        for (x, y) in a.num.iter().zip(&b.num) {
            let l = x * &b.den;
            let r = y * &a.den;
            match l.cmp(&r) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Solve the `d×d` system with the given columns for right-hand side `e_0` modulo `p`.
fn solve_mod_p(cols: &[Vec<BigInt>], p: u64) -> Option<Vec<u64>> {
    let d = cols.len();
    let pb = BigInt::from(p);
    // Row-major augmented matrix.
    let mut m = vec![vec![0u64; d + 1]; d];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..d {
            m[i][j] = col[i].mod_floor(&pb).to_u64().unwrap();
        }
    }
    m[0][d] = 1;
    for c in 0..d {
        let piv = (c..d).find(|&r| m[r][c] != 0)?;
        m.swap(c, piv);
        let inv = arith::inv_mod(m[c][c], p)?;
        for k in c..=d {
            m[c][k] = arith::mul_mod(m[c][k], inv, p);
        }
        let pivot_row = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && row[c] != 0 {
                let f = row[c];
                for k in c..=d {
                    let sub = arith::mul_mod(f, pivot_row[k], p);
                    row[k] = (row[k] + p - sub) % p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d]).collect())
}

fn reconstruct(acc: &[BigInt], modulus: &BigInt) -> Option<(Vec<BigInt>, BigInt)> {
    // Find a common denominator from successive entries, then read off numerators.
    let mut den = BigInt::one();
    for a in acc {
        let scaled = (a * &den).mod_floor(modulus);
        let (_, s) = arith::rational_reconstruct(&scaled, modulus)?;
        den *= s;
    }
    let half = modulus / BigInt::from(2);
    let mut num = Vec::with_capacity(acc.len());
    for a in acc {
        let mut r = (a * &den).mod_floor(modulus);
        if r > half {
            r -= modulus;
        }
        num.push(r);
    }
    Some((num, den))
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        if self.order == other.order {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = CycNum::common(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.order == rhs.order {
            CycNum::add_same(self, rhs, 1)
        } else {
            let (a, b) = CycNum::common(self, rhs);
            CycNum::add_same(&a, &b, 1)
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        if self.order == rhs.order {
            CycNum::add_same(self, rhs, -1)
        } else {
            let (a, b) = CycNum::common(self, rhs);
            CycNum::add_same(&a, &b, -1)
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.order == rhs.order {
            CycNum::mul_same(self, rhs)
        } else {
            let (a, b) = CycNum::common(self, rhs);
            CycNum::mul_same(&a, &b)
        }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.mul_int(-1)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.mul_int(-1)
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.den.is_one() {
            write!(f, "(")?;
        }
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            write!(f, "{sign}")?;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{}", self.order, i)?,
                (_, false) => write!(f, "{mag}*z{}^{}", self.order, i)?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.den.is_one() {
            write!(f, ")/{}", self.den)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_mul_oracle(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len(), 49);
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn sum_of_primitive_cube_roots() {
        let s = &CycNum::zeta(3, 1) + &CycNum::zeta(3, 2);
        assert_eq!(s, CycNum::from_int(-1));
    }

    #[test]
    fn inverse_of_zeta5() {
        assert_eq!(CycNum::zeta(5, 1).inv().unwrap(), CycNum::zeta(5, 4));
    }

    #[test]
    fn product_matches_polynomial_oracle() {
        // (1 + t)(1 - t) computed as plain polynomials, then reduced by t^4 = -1.
        let prod = poly_mul_oracle(&[1, 1], &[1, -1]);
        let mut reduced = vec![0i64; 4];
        for (i, c) in prod.iter().enumerate() {
            if i < 4 {
                reduced[i] += c;
            } else {
                reduced[i - 4] -= c;
            }
        }
        let one = CycNum::one();
        let z = CycNum::zeta(8, 1);
        let lhs = &(&one + &z) * &(&one - &z);
        let expect = CycNum::from_exponent_ints(8, reduced.into_iter().map(BigInt::from).collect(), BigInt::one());
        assert_eq!(lhs, expect);
        assert_eq!(lhs, &one - &CycNum::zeta(8, 2));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(CycNum::zeta(5, 1).galois_apply(2).unwrap(), CycNum::zeta(5, 2));
        let q = CycNum::from_ratio(3, 7);
        assert_eq!(q.galois_apply(5).unwrap(), q);
        let x = &CycNum::zeta(3, 1) + &CycNum::zeta(3, 2).mul_int(2);
        let expect = &CycNum::zeta(3, 2) + &CycNum::zeta(3, 1).mul_int(2);
        assert_eq!(x.galois_apply(2).unwrap(), expect);
        assert!(matches!(CycNum::zeta(6, 1).galois_apply(3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn complex_values() {
        let i = CycNum::zeta(4, 1).complex_value();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let m = CycNum::from_int(-1).complex_value();
        assert!((m - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let r2 = (&CycNum::zeta(8, 1) + &CycNum::zeta(8, -1)).complex_value();
        assert!((r2.re - (2.0f64).sqrt()).abs() < 1e-9 && r2.im.abs() < 1e-9);
    }

    #[test]
    fn rationality() {
        let x = &CycNum::zeta(6, 1) + &CycNum::zeta(6, 5);
        assert_eq!(x.as_rational(), Some(BigRational::from_integer(1.into())));
        assert_eq!(CycNum::zeta(5, 1).as_rational(), None);
        let mut s = CycNum::zero(5);
        for k in 1..5 {
            s = &s + &CycNum::zeta(5, k);
        }
        assert_eq!(s.as_rational(), Some(BigRational::from_integer((-1).into())));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(CycNum::zero(7).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_in_large_field() {
        // A Gauss-sum-like element of Q(ζ_203).
        let mut x = CycNum::zero(203);
        for a in 1..29i64 {
            x = &x + &CycNum::zeta(203, 7 * a + 29 * (a % 7));
        }
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn mixed_orders_embed() {
        let a = CycNum::zeta(3, 1);
        let b = CycNum::zeta(4, 1);
        let p = &a * &b;
        assert_eq!(p.order(), 12);
        assert_eq!(p, CycNum::zeta(12, 4 + 3));
        assert_eq!(a.embed(12), a);
        assert_eq!(a.embed(12).embed(36), a);
    }
}
