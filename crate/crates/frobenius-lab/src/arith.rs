//! Integer and modular arithmetic primitives.
//!
//! Everything here assumes moduli below 2^31, so products of two reduced
//! residues fit in a `u64` and no 128-bit widening is needed on the hot
//! paths. Callers that sweep a curve over many `x` should go through
//! [`QrTable`]; [`legendre`] does a full Euler-criterion exponentiation per
//! call and is meant for ad-hoc queries.

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive). Products of reduced residues stay
/// below 2^62.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Primes up to a limit, in order, with O(log n) membership and prefix counts.
#[derive(Debug, Clone)]
pub struct PrimeList {
    limit: u64,
    primes: Vec<u64>,
}

/// Sieve of Eratosthenes up to and including `limit`.
pub fn sieve_primes(limit: u64) -> PrimeList {
    let mut composite = vec![false; (limit as usize) + 1];
    let mut primes = Vec::new();
    for n in 2..=limit as usize {
        if !composite[n] {
            primes.push(n as u64);
            let mut m = n * n;
            while m <= limit as usize {
                composite[m] = true;
                m += n;
            }
        }
    }
    PrimeList { limit, primes }
}

impl PrimeList {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.primes
    }

    /// pi(x): number of primes <= x. Requires x <= limit.
    pub fn count_le(&self, x: u64) -> u64 {
        assert!(
            x <= self.limit,
            "count_le({x}) beyond sieve limit {}",
            self.limit
        );
        self.primes.partition_point(|&p| p <= x) as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= self.limit && self.primes.binary_search(&n).is_ok()
    }

    /// Primes in [5, x]: the sweep range used by every curve statistic
    /// (2 and 3 are excluded throughout).
    pub fn curve_range(&self, x: u64) -> &[u64] {
        let lo = self.primes.partition_point(|&p| p < 5);
        let hi = self.primes.partition_point(|&p| p <= x.min(self.limit));
        &self.primes[lo..hi]
    }
}

/// Deterministic trial-division primality test, adequate for n < 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3] {
        if n % d == 0 {
            return n == d;
        }
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// x^e mod m, with m < 2^31.
pub fn modpow(mut x: u64, mut e: u64, m: u64) -> u64 {
    debug_assert!(m < MAX_MODULUS);
    let mut acc = 1 % m;
    x %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * x % m;
        }
        x = x * x % m;
        e >>= 1;
    }
    acc
}

/// Legendre symbol (a|p) in {-1, 0, 1} by Euler's criterion.
///
/// Checks that p is an odd prime on every call; sweeps should use [`QrTable`].
pub fn legendre(a: i64, p: u64) -> Result<i32> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let e = modpow(r, (p - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Quadratic-residue table for one prime: `sign(a)` in O(1) after an O(p)
/// build. Backbone of every bulk trace sweep.
#[derive(Debug, Clone)]
pub struct QrTable {
    p: u64,
    sign: Vec<i8>,
}

impl QrTable {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let mut sign = vec![-1i8; p as usize];
        sign[0] = 0;
        let mut y = 1u64;
        while y <= p / 2 {
            sign[(y * y % p) as usize] = 1;
            y += 1;
        }
        Ok(QrTable { p, sign })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Legendre symbol of a reduced residue.
    #[inline]
    pub fn sign(&self, a: u64) -> i32 {
        debug_assert!(a < self.p);
        self.sign[a as usize] as i32
    }
}

/// Inverse of a mod p for prime p, by extended Euclid. Errors when p | a.
pub fn mod_inverse(a: u64, p: u64) -> Result<u64> {
    if p < 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let r = a % p;
    if r == 0 {
        return Err(Error::NotInvertible { a, p });
    }
    // Invariants: old_r = old_s * a (mod p), r = s * a (mod p).
    let (mut old_r, mut r_) = (r as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r_ != 0 {
        let q = old_r / r_;
        (old_r, r_) = (r_, old_r - q * r_);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "p prime and p does not divide a");
    Ok(old_s.rem_euclid(p as i64) as u64)
}

/// Floor of sqrt(n), by integer Newton iteration. No floating point: the
/// extremal trace sequence -floor(2 sqrt p) must be exact at every p.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// Squarefree part of n: the unique squarefree d with n = d * m^2, same sign
/// as n. Errors on n = 0.
pub fn squarefree_part(n: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidInput("squarefree_part(0)".into()));
    }
    let mut m = n.unsigned_abs();
    let mut d = 2u64;
    let mut sf: i64 = 1;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0u32;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            if e % 2 == 1 {
                sf *= d as i64;
            }
        }
        d += 1;
    }
    sf *= m as i64; // leftover prime factor
    Ok(if n < 0 { -sf } else { sf })
}

/// Moebius function by trial-division factorization.
pub fn mobius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::InvalidInput("mobius(0)".into()));
    }
    let mut m = n;
    let mut omega = 0u32;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return Ok(0);
            }
            omega += 1;
        }
        d += 1;
    }
    if m > 1 {
        omega += 1;
    }
    Ok(if omega % 2 == 0 { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_small() {
        assert_eq!(sieve_primes(10).as_slice(), &[2, 3, 5, 7]);
        assert_eq!(sieve_primes(100).count_le(100), 25);
        assert_eq!(sieve_primes(1).as_slice(), &[] as &[u64]);
    }

    #[test]
    fn sieve_curve_range_starts_at_five() {
        let pl = sieve_primes(30);
        assert_eq!(pl.curve_range(30), &[5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(pl.curve_range(4), &[] as &[u64]);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(3, 5).unwrap(), -1);
        assert_eq!(legendre(4, 5).unwrap(), 1);
        assert_eq!(legendre(10, 5).unwrap(), 0);
        assert_eq!(legendre(-1, 5).unwrap(), 1); // -1 = 4 mod 5
        assert!(legendre(1, 6).is_err());
        assert!(legendre(1, 2).is_err());
    }

    #[test]
    fn legendre_sums_to_zero() {
        // sum_{a=0}^{p-1} (a|p) = 0: as many residues as non-residues.
        for p in sieve_primes(100).curve_range(100) {
            let s: i32 = (0..*p as i64).map(|a| legendre(a, *p).unwrap()).sum();
            assert_eq!(s, 0, "p = {p}");
        }
    }

    #[test]
    fn qr_table_matches_euler() {
        for p in [3u64, 5, 7, 97, 101] {
            let t = QrTable::new(p).unwrap();
            for a in 0..p {
                assert_eq!(t.sign(a), legendre(a as i64, p).unwrap(), "p={p} a={a}");
            }
        }
        assert!(QrTable::new(9).is_err());
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(2, 5).unwrap(), 3);
        assert!(mod_inverse(0, 5).is_err());
        assert!(mod_inverse(10, 5).is_err());
        for p in [5u64, 7, 9973] {
            for a in 1..p.min(200) {
                let inv = mod_inverse(a, p).unwrap();
                assert_eq!(a * inv % p, 1);
            }
        }
    }

    #[test]
    fn isqrt_exact() {
        assert_eq!(isqrt(28), 5);
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(1), 1);
        assert_eq!(isqrt(3), 1);
        assert_eq!(isqrt(4), 2);
        for n in (0..2000u64).chain([u32::MAX as u64, 4 * 9973, 10_000_000_019]) {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "n = {n}");
        }
        // perfect squares and their neighbors
        for k in 1..2000u64 {
            assert_eq!(isqrt(k * k), k);
            assert_eq!(isqrt(k * k - 1), k - 1);
            assert_eq!(isqrt(k * k + 1), k);
        }
    }

    #[test]
    fn squarefree_part_examples() {
        assert_eq!(squarefree_part(-16).unwrap(), -1);
        assert_eq!(squarefree_part(12).unwrap(), 3);
        assert_eq!(squarefree_part(1).unwrap(), 1);
        assert_eq!(squarefree_part(-11).unwrap(), -11);
        assert!(squarefree_part(0).is_err());
        // d * m^2 reconstruction on a range
        for n in 1..=2000i64 {
            let d = squarefree_part(n).unwrap();
            assert_eq!(n % d, 0);
            let m2 = n / d;
            let m = isqrt(m2 as u64);
            assert_eq!((m * m) as i64, m2, "n = {n}");
            assert_eq!(squarefree_part(d).unwrap(), d, "d squarefree");
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn mobius_divisor_sums() {
        // sum_{d | n} mu(d) = [n = 1]
        let n_max = 10_000u64;
        let mut sums = vec![0i64; (n_max + 1) as usize];
        for d in 1..=n_max {
            let mu = mobius(d).unwrap() as i64;
            let mut m = d;
            while m <= n_max {
                sums[m as usize] += mu;
                m += d;
            }
        }
        assert_eq!(sums[1], 1);
        for n in 2..=n_max as usize {
            assert_eq!(sums[n], 0, "n = {n}");
        }
    }

    #[test]
    fn modpow_agrees_with_naive() {
        for (x, e, m) in [
            (2u64, 10u64, 1000u64),
            (7, 0, 13),
            (5, 12, 13),
            (123, 77, 1009),
        ] {
            let mut naive = 1u64;
            for _ in 0..e {
                naive = naive * x % m;
            }
            assert_eq!(modpow(x, e, m), naive);
        }
    }
}
