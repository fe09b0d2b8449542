//! Small-integer number theory used throughout the crate.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in increasing order.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of `|n|` for an arbitrary-precision integer.
///
/// Trial division only; the integers met in this crate are norms of small
/// cyclotomic integers, which factor quickly.
pub fn prime_divisors_big(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u64;
    loop {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        if (&n % &pb).is_zero() {
            out.push(p);
            while (&n % &pb).is_zero() {
                n /= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let last: u64 = (&n).try_into().expect("cofactor exceeds u64 after trial division");
        out.push(last);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn mobius(n: u64) -> i32 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// `a mod m` in `0..m` for signed `a`.
pub fn modp(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Smallest primitive root modulo an odd prime power `p^k`.
pub fn primitive_root_prime_power(p: u64, k: u32) -> u64 {
    let m = p.pow(k);
    let ph = euler_phi(m);
    let qs: Vec<u64> = factor_u64(ph).into_iter().map(|(q, _)| q).collect();
    (2..m)
        .find(|&g| gcd(g, m) == 1 && qs.iter().all(|&q| pow_mod(g, ph / q, m) != 1))
        .expect("odd prime powers have primitive roots")
}

/// Multiplicative order of `a` modulo `m` (requires `gcd(a, m) = 1`).
pub fn mult_order(a: u64, m: u64) -> u64 {
    let ph = euler_phi(m);
    let mut ord = ph;
    for (q, _) in factor_u64(ph) {
        while ord % q == 0 && pow_mod(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    ord
}

/// The `ℓ`-adic valuation of a nonzero integer.
pub fn val_big(n: &BigInt, l: u64) -> u32 {
    let lb = BigInt::from(l);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &lb).is_zero() {
        n /= &lb;
        v += 1;
    }
    v
}

/// Rational reconstruction: find `(r, s)` with `r ≡ s·a (mod m)`, `|r|, s ≤ sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = core::mem::replace(&mut r1, r2);
        s0 = core::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    if s1.is_negative() {
        Some((-r1, -s1))
    } else {
        Some((r1, s1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_and_divisors() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(63), 36);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(2305843009213693951));
        assert!(!is_prime(2305843009213693953));
        assert_eq!(primitive_root_prime_power(7, 1), 3);
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(inv_mod(3, 7), Some(5));
    }

    #[test]
    fn reconstruct_fraction() {
        let m = BigInt::from(1_000_000_007u64);
        let s = BigInt::from(7);
        let inv7 = BigInt::from(inv_mod(7, 1_000_000_007).unwrap());
        let a = (BigInt::from(-3) * inv7).mod_floor(&m);
        assert_eq!(rational_reconstruct(&a, &m), Some((BigInt::from(-3), s)));
    }
}
