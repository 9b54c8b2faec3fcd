//! Harmonic-analysis side: Chebyshev polynomials, the semicircle measure,
//! exact interval discrepancy with its Koksma-style bound, twisted character
//! sums over fiber censuses, and the three angle counters that feed the
//! averaged Sato-Tate experiments.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::{CurveFamily, FamilyKey};
use crate::params::{residue_histogram, sum_value_multiset, ParamSet};
use crate::stats::{fiber_census, AngleWindow, FiberCensus};

/// Slack accepted on |z| <= 1 before a domain error; Hasse traces divided by
/// 2 sqrt p can overshoot by a rounding ulp.
const DOMAIN_TOL: f64 = 1e-9;

/// Chebyshev polynomial of the second kind, U_n(z), by the three-term
/// recurrence. Only the orthogonality range matters here, so |z| > 1 is
/// rejected; U_n(cos t) = sin((n+1)t)/sin t and |U_n| <= n + 1 on [-1, 1].
pub fn chebyshev_u(n: u32, z: f64) -> Result<f64> {
    if !(z.is_finite() && z.abs() <= 1.0 + DOMAIN_TOL) {
        return Err(Error::InvalidInput(format!(
            "chebyshev_u argument {z} outside [-1, 1]"
        )));
    }
    let z = z.clamp(-1.0, 1.0);
    let mut prev = 1.0; // U_0
    let mut cur = 2.0 * z; // U_1
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        (prev, cur) = (cur, 2.0 * z * cur - prev);
    }
    Ok(cur)
}

/// Semicircle cumulative distribution: the measure of [-1, z] under the
/// density (2/pi) sqrt(1 - z^2).
pub fn semicircle_cdf(z: f64) -> f64 {
    let z = z.clamp(-1.0, 1.0);
    (z * (1.0 - z * z).sqrt() + z.asin()) / std::f64::consts::PI + 0.5
}

/// Semicircle measure of [a, b] inside [-1, 1].
pub fn semicircle_g(a: f64, b: f64) -> Result<f64> {
    if !(a >= -1.0 - DOMAIN_TOL && a < b && b <= 1.0 + DOMAIN_TOL) {
        return Err(Error::InvalidInput(format!(
            "semicircle interval [{a}, {b}] must sit inside [-1, 1]"
        )));
    }
    Ok(semicircle_cdf(b) - semicircle_cdf(a))
}

/// Composite Simpson quadrature with n panels (n made even). Shared by the
/// closed-form cross-checks in the test suites.
pub(crate) fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Exact count-scale discrepancy of a point multiset against the semicircle
/// measure: sup over intervals I of |#{i : x_i in I} - m G(I)|, with closed
/// intervals optimizing the excess and open ones the deficit. The sup is
/// attained at sample coordinates, so a single sorted scan is exact.
pub fn discrepancy(points: &[f64]) -> Result<f64> {
    let coords = sorted_with_counts(points)?;
    let m = points.len() as f64;
    let mut d_plus: f64 = 0.0;
    let mut d_minus: f64 = 0.0;
    let mut min_lo = f64::INFINITY;
    let mut max_hi = f64::NEG_INFINITY;
    let mut cum_prev = 0u64;
    for &(v, c) in &coords {
        let fv = m * semicircle_cdf(v);
        let lo = cum_prev as f64 - fv;
        let cum = cum_prev + c;
        let hi = cum as f64 - fv;
        // deficit intervals are open: strictly earlier coordinates only
        d_minus = d_minus.max(max_hi - lo);
        max_hi = max_hi.max(hi);
        // excess intervals are closed: the current point may start one
        min_lo = min_lo.min(lo);
        d_plus = d_plus.max(hi - min_lo);
        cum_prev = cum;
    }
    Ok(d_plus.max(d_minus).max(0.0))
}

/// Sorted distinct coordinates with multiplicities, with -1 and 1 added as
/// interval-endpoint candidates.
fn sorted_with_counts(points: &[f64]) -> Result<Vec<(f64, u64)>> {
    let mut xs = Vec::with_capacity(points.len());
    for &x in points {
        if !(x.is_finite() && x.abs() <= 1.0 + DOMAIN_TOL) {
            return Err(Error::InvalidInput(format!(
                "discrepancy point {x} outside [-1, 1]"
            )));
        }
        xs.push(x.clamp(-1.0, 1.0));
    }
    xs.sort_by(|a, b| a.partial_cmp(b).expect("no NaN after validation"));
    let mut coords: Vec<(f64, u64)> = vec![(-1.0, 0)];
    for x in xs {
        match coords.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => coords.push((x, 1)),
        }
    }
    if coords.last().map(|&(v, _)| v) != Some(1.0) {
        coords.push((1.0, 0));
    }
    Ok(coords)
}

/// The two sides of the Koksma-style discrepancy bound
/// D <= m/k + sum_{n<=k} |sum_i U_n(x_i)| / n, with the exact left side.
#[derive(Debug, Clone)]
pub struct DiscrepancyReport {
    /// Exact sup-interval discrepancy on the count scale.
    pub lhs: f64,
    /// m/k + sum of the k weighted Chebyshev averages.
    pub rhs: f64,
    pub k: u32,
    /// |sum_i U_n(x_i)| for n = 1..=k.
    pub terms: Vec<f64>,
}

impl DiscrepancyReport {
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }
}

/// Evaluate both sides of the discrepancy bound at truncation k.
pub fn niederreiter_report(points: &[f64], k: u32) -> Result<DiscrepancyReport> {
    if k == 0 {
        return Err(Error::InvalidInput("truncation k must be >= 1".into()));
    }
    if points.is_empty() {
        return Err(Error::InvalidInput("discrepancy of an empty sample".into()));
    }
    let lhs = discrepancy(points)?;
    // run each point's recurrence once, accumulating all k sums
    let mut sums = vec![0.0f64; k as usize];
    for &x in points {
        let z = x.clamp(-1.0, 1.0);
        let mut prev = 1.0;
        let mut cur = 2.0 * z;
        for s in sums.iter_mut() {
            *s += cur;
            (prev, cur) = (cur, 2.0 * z * cur - prev);
        }
    }
    let terms: Vec<f64> = sums.iter().map(|s| s.abs()).collect();
    let rhs = points.len() as f64 / k as f64
        + terms
            .iter()
            .enumerate()
            .map(|(i, t)| t / (i + 1) as f64)
            .sum::<f64>();
    Ok(DiscrepancyReport { lhs, rhs, k, terms })
}

/// Twisted Chebyshev sum over a fiber census:
/// sum_w U_n(a_w / 2 sqrt p) e_p(m w), the quantity whose square-root
/// cancellation drives every averaged-equidistribution bound here.
pub fn michel_sum(census: &FiberCensus, n: u32, m: u64) -> Result<Complex64> {
    let p = census.p();
    let roots = crate::params::unit_roots(p);
    let m = m % p;
    let scale = 2.0 * (p as f64).sqrt();
    let mut s = Complex64::new(0.0, 0.0);
    for &(w, a) in census.entries() {
        let u = chebyshev_u(n, a as f64 / scale)?;
        s += u * roots[(w * m % p) as usize];
    }
    Ok(s)
}

/// Memoized fiber censuses keyed by (family, p). Censuses cost O(p^2), and
/// the angle counters ask for the same one repeatedly.
#[derive(Default)]
pub struct CensusCache {
    map: RwLock<HashMap<(FamilyKey, u64), Arc<FiberCensus>>>,
}

impl CensusCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(&self, family: &CurveFamily, p: u64) -> Result<Arc<FiberCensus>> {
        let key = (family.key(), p);
        if let Some(c) = self.map.read().expect("census cache poisoned").get(&key) {
            return Ok(c.clone());
        }
        let census = Arc::new(fiber_census(family, p)?);
        let mut map = self.map.write().expect("census cache poisoned");
        Ok(map.entry(key).or_insert(census).clone())
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("census cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn require_large_p(p: u64, height: u64, allow_small_p: bool) -> Result<()> {
    if p > height || allow_small_p {
        Ok(())
    } else {
        Err(Error::HypothesisViolation(format!(
            "counter hypothesis p > {height} fails at p = {p}; pass allow_small_p to force"
        )))
    }
}

/// #{(t1, t2) in F(T)^2 : psi_{t1 + t2}(p) in the window}, pairs whose sum
/// hits a bad fiber or whose denominator vanishes mod p dropped. The
/// asymptotic statements assume p > T; smaller p needs `allow_small_p`.
pub fn angle_counter_b(
    census: &FiberCensus,
    t: u64,
    window: &AngleWindow,
    allow_small_p: bool,
) -> Result<u64> {
    let p = census.p();
    require_large_p(p, t, allow_small_p)?;
    let hist = residue_histogram(&ParamSet::farey_pairs(t)?, p)?;
    let mut n = 0u64;
    for (w, c) in hist.support() {
        if let Some(a) = census.trace_at(w) {
            if window.contains_trace(a, p) {
                n += c;
            }
        }
    }
    Ok(n)
}

/// #{t in 1..=T : psi_t(p) in the window}, bad fibers dropped.
pub fn angle_counter_c(
    census: &FiberCensus,
    t: u64,
    window: &AngleWindow,
    allow_small_p: bool,
) -> Result<u64> {
    let p = census.p();
    require_large_p(p, t, allow_small_p)?;
    let mut n = 0u64;
    for tt in 1..=t {
        if let Some(a) = census.trace_at(tt % p) {
            if window.contains_trace(a, p) {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// #{(u, v) in U x V : psi_{u + v}(p) in the window}, bad fibers dropped.
pub fn angle_counter_d(
    census: &FiberCensus,
    u: &[i64],
    v: &[i64],
    window: &AngleWindow,
    allow_small_p: bool,
) -> Result<u64> {
    let set = ParamSet::sum_set(u.to_vec(), v.to_vec())?;
    let p = census.p();
    require_large_p(p, set.height(), allow_small_p)?;
    let mut n = 0u64;
    for (val, mult) in sum_value_multiset(u, v) {
        if let Some(a) = census.trace_at(val as u64 % p) {
            if window.contains_trace(a, p) {
                n += mult;
            }
        }
    }
    Ok(n)
}
