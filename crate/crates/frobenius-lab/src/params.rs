//! Parameter sets and their distribution mod p.
//!
//! Four kinds of sets feed the averaged statistics:
//! * `farey(T)`: fractions u/v with 1 <= u, v <= T, gcd(u, v) = 1;
//! * `interval(T)`: integers 1..T;
//! * `sumset(U, V)`: all u + v with multiplicity, for integer lists U, V;
//! * `farey_pairs(T)`: sums r + s of two Farey fractions, with multiplicity.
//!
//! Everything downstream consumes only the residue histogram
//! `R(w) = #{t in the set : t = w mod p}` (fractions with p dividing the
//! denominator are skipped and tallied separately). The coincidence count Q,
//! the additive energy V and the exponential sums S(m) are all computed from
//! the histogram alone: O(T^2 + p) for Q, O(T^2 + p^2) worst case for V, and
//! O(p) per frequency for S(m). Convolutions are direct sums; at p <= 10^4
//! an FFT would be noise.

use crate::arith::{gcd, is_prime, mobius};
use crate::error::{Error, Result};
use crate::family::RationalParam;
use num_complex::Complex64;

/// A parameter multiset for family averages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamSet {
    /// Farey fractions u/v, 1 <= u, v <= T, coprime.
    Farey { t: u64 },
    /// Integers 1..=T.
    Interval { t: u64 },
    /// u + v over the product of two explicit positive-integer lists,
    /// with multiplicity.
    SumSet { u: Vec<i64>, v: Vec<i64> },
    /// r + s over ordered pairs of Farey fractions of height T,
    /// with multiplicity.
    FareyPairs { t: u64 },
}

impl ParamSet {
    pub fn farey(t: u64) -> Result<Self> {
        require_height(t)?;
        Ok(ParamSet::Farey { t })
    }

    pub fn interval(t: u64) -> Result<Self> {
        require_height(t)?;
        Ok(ParamSet::Interval { t })
    }

    pub fn farey_pairs(t: u64) -> Result<Self> {
        require_height(t)?;
        Ok(ParamSet::FareyPairs { t })
    }

    pub fn sum_set(u: Vec<i64>, v: Vec<i64>) -> Result<Self> {
        if u.is_empty() || v.is_empty() {
            return Err(Error::InvalidInput("sum set with an empty side".into()));
        }
        for &x in u.iter().chain(v.iter()) {
            if x < 1 {
                return Err(Error::InvalidInput(format!(
                    "sum-set entries must be positive, got {x}"
                )));
            }
        }
        Ok(ParamSet::SumSet { u, v })
    }

    /// Total number of parameters, with multiplicity. This is the
    /// normalization denominator for every averaged statistic.
    pub fn len(&self) -> u64 {
        match self {
            ParamSet::Farey { t } => farey_count(*t),
            ParamSet::Interval { t } => *t,
            ParamSet::SumSet { u, v } => u.len() as u64 * v.len() as u64,
            ParamSet::FareyPairs { t } => {
                let n = farey_count(*t);
                n * n
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest value (for integer kinds) or height (for Farey kinds);
    /// the `p > T` lemma hypotheses compare against this.
    pub fn height(&self) -> u64 {
        match self {
            ParamSet::Farey { t } | ParamSet::Interval { t } | ParamSet::FareyPairs { t } => *t,
            ParamSet::SumSet { u, v } => {
                let mu = u.iter().copied().max().unwrap_or(0);
                let mv = v.iter().copied().max().unwrap_or(0);
                mu.max(mv) as u64
            }
        }
    }
}

fn require_height(t: u64) -> Result<()> {
    if t == 0 {
        Err(Error::InvalidInput(
            "parameter height T must be >= 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// The Farey fractions of height T in deterministic (u, v) order.
pub fn farey_params(t: u64) -> Vec<RationalParam> {
    let mut out = Vec::new();
    for u in 1..=t as i64 {
        for v in 1..=t as i64 {
            if gcd(u as u64, v as u64) == 1 {
                out.push(RationalParam::new(u, v).expect("coprime pair is reduced"));
            }
        }
    }
    out
}

/// #F(T) by the Moebius identity sum_{d <= T} mu(d) floor(T/d)^2.
/// Exact, ~(6/pi^2) T^2, and cheap enough to use as `ParamSet::len`.
pub fn farey_count(t: u64) -> u64 {
    let mut sum: i64 = 0;
    for d in 1..=t {
        let mu = mobius(d).expect("d >= 1") as i64;
        if mu != 0 {
            let q = (t / d) as i64;
            sum += mu * q * q;
        }
    }
    debug_assert!(sum >= 0);
    sum as u64
}

/// Residue distribution of a parameter set mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueHistogram {
    p: u64,
    counts: Vec<u64>,
    skipped: u64,
}

impl ResidueHistogram {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn count(&self, w: u64) -> u64 {
        self.counts[w as usize]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Parameters skipped because p divides their denominator.
    pub fn skipped(&self) -> u64 {
        self.skipped
    }

    /// Total mass placed on residues.
    pub fn mass(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Nonzero entries as (residue, count), ascending.
    pub fn support(&self) -> Vec<(u64, u64)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w as u64, c))
            .collect()
    }

    /// Histogram of pairwise sums (w1 + w2 mod p), i.e. the self-convolution
    /// over Z_p. Mass squares; the skipped tally becomes the number of pairs
    /// with at least one skipped member.
    pub fn self_convolution(&self) -> ResidueHistogram {
        let p = self.p;
        let support = self.support();
        let mut counts = vec![0u64; p as usize];
        for &(w1, c1) in &support {
            for &(w2, c2) in &support {
                counts[((w1 + w2) % p) as usize] += c1 * c2;
            }
        }
        let total = self.mass() + self.skipped;
        let skipped = total * total - self.mass() * self.mass();
        ResidueHistogram { p, counts, skipped }
    }

    /// Sum of squared counts: for a Farey histogram this is the coincidence
    /// count Q, for a pair-sum histogram the additive energy V.
    pub fn sum_of_squares(&self) -> u128 {
        self.counts.iter().map(|&c| (c as u128) * (c as u128)).sum()
    }

    /// S(m) = sum_w R(w) e(m w / p): one complex exponential per distinct
    /// residue, weighted by its count.
    pub fn expsum(&self, m: u64) -> Complex64 {
        let table = unit_roots(self.p);
        self.expsum_with_roots(m, &table)
    }

    /// All of S(0), ..., S(p-1), sharing one root table.
    pub fn expsums_all(&self) -> Vec<Complex64> {
        let table = unit_roots(self.p);
        (0..self.p)
            .map(|m| self.expsum_with_roots(m, &table))
            .collect()
    }

    fn expsum_with_roots(&self, m: u64, roots: &[Complex64]) -> Complex64 {
        let p = self.p;
        let m = m % p;
        let mut s = Complex64::new(0.0, 0.0);
        for (w, c) in self.support() {
            s += (c as f64) * roots[(m * w % p) as usize];
        }
        s
    }
}

pub(crate) fn unit_roots(p: u64) -> Vec<Complex64> {
    (0..p)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / p as f64))
        .collect()
}

/// Residue histogram of a parameter set mod a prime p.
///
/// p >= 2 is accepted here: histograms are pure counting and the p in {2, 3}
/// cases are useful in tests, even though curve statistics start at p = 5.
pub fn residue_histogram(set: &ParamSet, p: u64) -> Result<ResidueHistogram> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!(
            "histogram modulus must be prime, got {p}"
        )));
    }
    let mut counts = vec![0u64; p as usize];
    let mut skipped = 0u64;
    match set {
        ParamSet::Farey { t } => {
            let inv = inverse_table(p);
            for u in 1..=*t {
                for v in 1..=*t {
                    if gcd(u, v) != 1 {
                        continue;
                    }
                    if v % p == 0 {
                        skipped += 1;
                    } else {
                        let w = u % p * inv[(v % p) as usize] % p;
                        counts[w as usize] += 1;
                    }
                }
            }
        }
        ParamSet::Interval { t } => {
            for t in 1..=*t {
                counts[(t % p) as usize] += 1;
            }
        }
        ParamSet::SumSet { u, v } => {
            for (value, mult) in sum_value_multiset(u, v) {
                counts[(value as u64 % p) as usize] += mult;
            }
        }
        ParamSet::FareyPairs { t } => {
            let single = residue_histogram(&ParamSet::Farey { t: *t }, p)?;
            return Ok(single.self_convolution());
        }
    }
    Ok(ResidueHistogram { p, counts, skipped })
}

/// The multiset {u + v} as sorted (value, multiplicity) pairs.
pub fn sum_value_multiset(u: &[i64], v: &[i64]) -> Vec<(i64, u64)> {
    let max = u.iter().max().unwrap_or(&0) + v.iter().max().unwrap_or(&0);
    let mut mult = vec![0u64; (max + 1) as usize];
    for &a in u {
        for &b in v {
            mult[(a + b) as usize] += 1;
        }
    }
    mult.into_iter()
        .enumerate()
        .filter(|(_, m)| *m > 0)
        .map(|(val, m)| (val as i64, m))
        .collect()
}

/// Coincidence count Q_{T,p}: ordered pairs of Farey fractions of height T
/// (denominators coprime to p) landing on the same residue mod p. Computed
/// from the histogram as sum_w R(w)^2.
pub fn coincidence_q(t: u64, p: u64) -> Result<u64> {
    require_height(t)?;
    let hist = residue_histogram(&ParamSet::Farey { t }, p)?;
    Ok(hist.sum_of_squares() as u64)
}

/// Additive energy V_{T,p}: quadruples of usable Farey fractions with
/// r1 + r2 = r3 + r4 mod p, via the self-convolution C and sum_s C(s)^2.
pub fn additive_energy_v(t: u64, p: u64) -> Result<u128> {
    require_height(t)?;
    let hist = residue_histogram(&ParamSet::Farey { t }, p)?;
    Ok(hist.self_convolution().sum_of_squares())
}

/// S_{T,p}(m) = sum over usable Farey fractions of e(m * u/v mod p / p).
pub fn farey_expsum(t: u64, p: u64, m: u64) -> Result<Complex64> {
    require_height(t)?;
    Ok(residue_histogram(&ParamSet::Farey { t }, p)?.expsum(m))
}

/// Inverses mod p for all residues, inv[0] unused, by the standard linear
/// recurrence inv[i] = -(p / i) * inv[p mod i].
pub(crate) fn inverse_table(p: u64) -> Vec<u64> {
    let mut inv = vec![0u64; p as usize];
    if p >= 2 {
        inv[1] = 1;
        for i in 2..p {
            inv[i as usize] = (p - p / i * inv[(p % i) as usize] % p) % p;
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mod_inverse;

    #[test]
    fn farey_small() {
        let f2: Vec<(i64, i64)> = farey_params(2).iter().map(|r| (r.u(), r.v())).collect();
        assert_eq!(f2, vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(farey_count(2), 3);
        assert_eq!(farey_count(1), 1);
    }

    #[test]
    fn farey_count_matches_enumeration() {
        for t in 1..=120 {
            assert_eq!(farey_count(t), farey_params(t).len() as u64, "T = {t}");
        }
    }

    #[test]
    fn farey_count_density() {
        // #F(100) ~ (6/pi^2) * 10^4 = 6079.3 within 2%
        let c = farey_count(100) as f64;
        assert!((c / 6079.3 - 1.0).abs() < 0.02, "{c}");
    }

    #[test]
    fn inverse_table_correct() {
        for p in [2u64, 3, 5, 97, 101] {
            let inv = inverse_table(p);
            for i in 1..p {
                assert_eq!(i * inv[i as usize] % p, 1, "p={p} i={i}");
                assert_eq!(inv[i as usize], mod_inverse(i, p).unwrap());
            }
        }
    }

    #[test]
    fn histogram_frozen_values() {
        let h = residue_histogram(&ParamSet::farey(2).unwrap(), 5).unwrap();
        assert_eq!(h.support(), vec![(1, 1), (2, 1), (3, 1)]);
        assert_eq!(h.skipped(), 0);

        let h = residue_histogram(&ParamSet::farey(2).unwrap(), 2).unwrap();
        assert_eq!(h.support(), vec![(0, 1), (1, 1)]);
        assert_eq!(h.skipped(), 1); // 1/2 unusable

        let h = residue_histogram(&ParamSet::interval(3).unwrap(), 2).unwrap();
        assert_eq!(h.support(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn histogram_mass_accounting() {
        for t in [1u64, 2, 7, 30] {
            for p in [2u64, 5, 31, 101] {
                let set = ParamSet::farey(t).unwrap();
                let h = residue_histogram(&set, p).unwrap();
                assert_eq!(h.mass() + h.skipped(), set.len(), "T={t} p={p}");
            }
        }
    }

    #[test]
    fn sumset_histogram_multiplicity() {
        // U = V = {1, 2}: sums 2, 3, 3, 4
        let set = ParamSet::sum_set(vec![1, 2], vec![1, 2]).unwrap();
        assert_eq!(set.len(), 4);
        let h = residue_histogram(&set, 5).unwrap();
        assert_eq!(h.support(), vec![(2, 1), (3, 2), (4, 1)]);
        assert!(ParamSet::sum_set(vec![], vec![1]).is_err());
        assert!(ParamSet::sum_set(vec![0], vec![1]).is_err());
    }

    #[test]
    fn coincidence_frozen_values() {
        for p in [5u64, 7, 101] {
            assert_eq!(coincidence_q(1, p).unwrap(), 1, "p = {p}");
        }
        assert_eq!(coincidence_q(2, 5).unwrap(), 3);
    }

    #[test]
    fn coincidence_matches_brute_force() {
        // pairs of usable fractions with u1 v2 = u2 v1 mod p
        for t in [2u64, 5, 12, 30] {
            for p in [5u64, 7, 31, 101] {
                let params = farey_params(t);
                let mut brute = 0u64;
                for a in &params {
                    for b in &params {
                        if a.v() as u64 % p == 0 || b.v() as u64 % p == 0 {
                            continue;
                        }
                        let lhs = (a.u() * b.v()).rem_euclid(p as i64);
                        let rhs = (b.u() * a.v()).rem_euclid(p as i64);
                        if lhs == rhs {
                            brute += 1;
                        }
                    }
                }
                assert_eq!(coincidence_q(t, p).unwrap(), brute, "T={t} p={p}");
            }
        }
    }

    #[test]
    fn energy_frozen_values() {
        for p in [5u64, 7, 101] {
            assert_eq!(additive_energy_v(1, p).unwrap(), 1, "p = {p}");
        }
        // T = 2, p = 5: pair-sum histogram {0:2, 1:1, 2:1, 3:2, 4:3}
        let conv = residue_histogram(&ParamSet::farey_pairs(2).unwrap(), 5).unwrap();
        assert_eq!(conv.support(), vec![(0, 2), (1, 1), (2, 1), (3, 2), (4, 3)]);
        assert_eq!(additive_energy_v(2, 5).unwrap(), 19);
    }

    #[test]
    fn energy_matches_quadruple_loop() {
        for (t, p) in [(2u64, 5u64), (3, 7), (6, 31), (6, 5)] {
            let usable: Vec<_> = farey_params(t)
                .into_iter()
                .filter(|r| r.v() as u64 % p != 0)
                .collect();
            let residue = |r: &RationalParam| {
                r.u() as u64 % p * mod_inverse(r.v() as u64 % p, p).unwrap() % p
            };
            let rs: Vec<u64> = usable.iter().map(residue).collect();
            let mut brute = 0u128;
            for a in &rs {
                for b in &rs {
                    for c in &rs {
                        for d in &rs {
                            if (a + b) % p == (c + d) % p {
                                brute += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(additive_energy_v(t, p).unwrap(), brute, "T={t} p={p}");
        }
    }

    #[test]
    fn expsum_frozen_values() {
        // m = 0: real part counts usable fractions
        for (t, p) in [(2u64, 5u64), (10, 7), (7, 3)] {
            let s = farey_expsum(t, p, 0).unwrap();
            let h = residue_histogram(&ParamSet::farey(t).unwrap(), p).unwrap();
            assert!((s.re - h.mass() as f64).abs() < 1e-9);
            assert!(s.im.abs() < 1e-9);
        }
        // T = 2, p = 5, m = 1: e(1/5) + e(2/5) + e(3/5) has modulus 2 cos(pi/5)
        let s = farey_expsum(2, 5, 1).unwrap();
        let golden = 2.0 * (std::f64::consts::PI / 5.0).cos();
        assert!((s.norm() - golden).abs() < 1e-12, "{}", s.norm());
    }

    #[test]
    fn parseval_for_q_and_v() {
        // sum_m |S(m)|^2 = p Q and sum_m |S(m)|^4 = p V
        for (t, p) in [(2u64, 5u64), (5, 7), (12, 31), (8, 101)] {
            let hist = residue_histogram(&ParamSet::farey(t).unwrap(), p).unwrap();
            let sums = hist.expsums_all();
            let s2: f64 = sums.iter().map(|s| s.norm_sqr()).sum();
            let s4: f64 = sums.iter().map(|s| s.norm_sqr() * s.norm_sqr()).sum();
            let q = coincidence_q(t, p).unwrap() as f64;
            let v = additive_energy_v(t, p).unwrap() as f64;
            assert!((s2 / (p as f64 * q) - 1.0).abs() < 1e-9, "Q T={t} p={p}");
            assert!((s4 / (p as f64 * v) - 1.0).abs() < 1e-9, "V T={t} p={p}");
        }
    }

    #[test]
    fn set_len_and_height() {
        assert_eq!(ParamSet::farey(2).unwrap().len(), 3);
        assert_eq!(ParamSet::interval(7).unwrap().len(), 7);
        assert_eq!(ParamSet::farey_pairs(2).unwrap().len(), 9);
        let s = ParamSet::sum_set(vec![1, 2, 3], vec![5, 9]).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.height(), 9);
        assert!(ParamSet::farey(0).is_err());
    }
}
