//! Prime-indexed counting statistics.
//!
//! The three single-curve counters ask, for each good prime p <= x, whether
//! the Frobenius data hits a target:
//! * trace statistic: a_p equals a prescribed sequence value;
//! * field statistic: the squarefree part of a_p^2 - 4p equals a fixed
//!   negative discriminant d (supersingular p with a_p = 0 never match);
//! * angle statistic: the Frobenius angle lies in a window [alpha, beta].
//!
//! [`family_average`] runs the same counters over a whole parameter set and
//! reports per-prime rows; [`fiber_census`] records the trace of every fiber
//! of a family mod p for the congruence and class-count diagnostics.
//!
//! Primes 2 and 3 are excluded from every sweep. Window membership is closed
//! on both ends at the public API; the half-open variant exists so that a
//! partition of [0, pi] counts every good prime exactly once.

use std::collections::BTreeMap;

use crate::arith::{sieve_primes, PrimeList, QrTable};
use crate::curves::{extremal_trace, frobenius_field_disc, CurveModP};
use crate::error::{Error, Result};
use crate::family::{CurveFamily, FamilyKey, IntPoly, RationalParam};
use crate::params::{residue_histogram, sum_value_multiset, ParamSet};

/// Target trace values 𝔸 = (a_p), one per prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceSequence {
    /// a_p = a for every p. `Constant(0)` is the supersingular count.
    Constant(i64),
    /// a_p = -floor(2 sqrt p), the extremal (largest point count) trace.
    Extremal,
    /// Explicit table p -> a_p; primes absent from the table never match.
    Custom(BTreeMap<u64, i64>),
}

impl TraceSequence {
    pub fn value(&self, p: u64) -> Option<i64> {
        match self {
            TraceSequence::Constant(a) => Some(*a),
            TraceSequence::Extremal => Some(extremal_trace(p)),
            TraceSequence::Custom(table) => table.get(&p).copied(),
        }
    }
}

/// Tolerance for window-boundary comparisons on cosines whose endpoints are
/// not recognized as exact half-integers.
const COS_TOL: f64 = 1e-12;

/// An angle window [alpha, beta] inside [0, pi].
///
/// Membership is decided on cosines: psi in [alpha, beta] iff
/// cos(beta) <= a/(2 sqrt p) <= cos(alpha). When an endpoint cosine is a
/// half-integer k/2 (the cosines of 0, pi/3, pi/2, 2pi/3, pi) the comparison
/// is exact integer arithmetic (a against k sqrt p via squares); otherwise a
/// 1e-12 tolerance absorbs rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleWindow {
    alpha: f64,
    beta: f64,
    cos_alpha: f64,
    cos_beta: f64,
    k_alpha: Option<i8>,
    k_beta: Option<i8>,
}

/// cos(theta) as an exact half-integer k/2, if it is one to within 1e-9.
fn half_integer_cos(theta: f64) -> Option<i8> {
    let c2 = 2.0 * theta.cos();
    let k = c2.round();
    if (c2 - k).abs() < 1e-9 && (-2.0..=2.0).contains(&k) {
        Some(k as i8)
    } else {
        None
    }
}

/// Compare a/(2 sqrt p) with k/2, i.e. a with k sqrt p, exactly.
fn cmp_trace_half(a: i64, p: u64, k: i8) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    let k = k as i64;
    if a >= 0 && k < 0 {
        return Greater;
    }
    if a < 0 && k >= 0 {
        return Less;
    }
    let a2 = (a as i128) * (a as i128);
    let k2p = (k as i128) * (k as i128) * (p as i128);
    // same sign: squaring preserves order for non-negatives, flips for negatives
    if a >= 0 {
        a2.cmp(&k2p)
    } else {
        k2p.cmp(&a2)
    }
}

impl AngleWindow {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha < beta && beta <= std::f64::consts::PI + 1e-12) {
            return Err(Error::InvalidInput(format!(
                "angle window [{alpha}, {beta}] must satisfy 0 <= alpha < beta <= pi"
            )));
        }
        let beta = beta.min(std::f64::consts::PI);
        Ok(AngleWindow {
            alpha,
            beta,
            cos_alpha: alpha.cos(),
            cos_beta: beta.cos(),
            k_alpha: half_integer_cos(alpha),
            k_beta: half_integer_cos(beta),
        })
    }

    pub fn full() -> Self {
        Self::new(0.0, std::f64::consts::PI).expect("valid")
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Closed membership: psi_p(a) in [alpha, beta].
    pub fn contains_trace(&self, a: i64, p: u64) -> bool {
        let lower = match self.k_beta {
            Some(k) => cmp_trace_half(a, p, k) != std::cmp::Ordering::Less,
            None => self.cosine(a, p) >= self.cos_beta - COS_TOL,
        };
        let upper = match self.k_alpha {
            Some(k) => cmp_trace_half(a, p, k) != std::cmp::Ordering::Greater,
            None => self.cosine(a, p) <= self.cos_alpha + COS_TOL,
        };
        lower && upper
    }

    /// Half-open membership [alpha, beta), with raw comparisons and no
    /// tolerance. Windows sharing an endpoint (bitwise) partition exactly:
    /// a boundary angle belongs to the window that starts there. beta = pi
    /// behaves as closed because psi = pi cannot occur (a = -2 sqrt p is
    /// never integral for prime p).
    pub fn contains_trace_half_open(&self, a: i64, p: u64) -> bool {
        let lower = match self.k_beta {
            Some(k) => cmp_trace_half(a, p, k) == std::cmp::Ordering::Greater,
            None => self.cosine(a, p) > self.cos_beta,
        };
        let upper = match self.k_alpha {
            Some(k) => cmp_trace_half(a, p, k) != std::cmp::Ordering::Greater,
            None => self.cosine(a, p) <= self.cos_alpha,
        };
        lower && upper
    }

    fn cosine(&self, a: i64, p: u64) -> f64 {
        a as f64 / (2.0 * (p as f64).sqrt())
    }
}

/// Sato-Tate measure of a window: (2/pi) int_alpha^beta sin^2 t dt, in the
/// closed form ((beta - alpha) - (sin 2beta - sin 2alpha)/2) / pi.
pub fn st_density(window: &AngleWindow) -> f64 {
    let (a, b) = (window.alpha, window.beta);
    ((b - a) - ((2.0 * b).sin() - (2.0 * a).sin()) / 2.0) / std::f64::consts::PI
}

/// What to count at each good prime.
#[derive(Debug, Clone, PartialEq)]
pub enum Statistic {
    Trace(TraceSequence),
    /// Frobenius field discriminant equals this negative squarefree d.
    Field(i64),
    Angle(AngleWindow),
    /// Mod-ell equidistribution diagnostic over a family's fibers:
    /// the per-prime value is max_a |#{w : a_w = a mod ell} - size/ell|.
    Census {
        ell: u64,
    },
}

impl Statistic {
    pub fn field(d: i64) -> Result<Self> {
        if d >= 0 || crate::arith::squarefree_part(d)? != d {
            return Err(Error::InvalidInput(format!(
                "field discriminant must be negative and squarefree, got {d}"
            )));
        }
        Ok(Statistic::Field(d))
    }

    pub fn census(ell: u64) -> Result<Self> {
        require_census_modulus(ell)?;
        Ok(Statistic::Census { ell })
    }

    /// Does a curve with trace a over F_p match?
    fn matches(&self, a: i64, p: u64) -> bool {
        match self {
            Statistic::Trace(seq) => seq.value(p) == Some(a),
            Statistic::Field(d) => a != 0 && frobenius_field_disc(a, p).ok() == Some(*d),
            Statistic::Angle(w) => w.contains_trace(a, p),
            Statistic::Census { .. } => unreachable!("census handled per fiber"),
        }
    }

    /// Expected contribution per good parameter under the limiting law,
    /// used for the CSV `expected` column. Only the angle statistic has a
    /// per-prime prediction.
    fn density(&self) -> f64 {
        match self {
            Statistic::Angle(w) => st_density(w),
            _ => 0.0,
        }
    }
}

fn require_census_modulus(ell: u64) -> Result<()> {
    if ell < 17 || !crate::arith::is_prime(ell) {
        return Err(Error::HypothesisViolation(format!(
            "census modulus must be a prime >= 17, got {ell}"
        )));
    }
    Ok(())
}

/// What the statistic runs over.
#[derive(Debug, Clone)]
pub enum StatSource {
    /// A fixed curve y^2 = x^3 + Ax + B over Q; good primes are p >= 5 not
    /// dividing -16(4A^3 + 27B^2).
    Fixed { a: i64, b: i64 },
    /// One member E(t) of a family, swept over p.
    Specialized {
        family: CurveFamily,
        t: RationalParam,
    },
    /// A family averaged over a parameter set.
    Family { family: CurveFamily, set: ParamSet },
}

impl StatSource {
    pub fn fixed(a: i64, b: i64) -> Result<Self> {
        if fixed_curve_disc(a, b)? == 0 {
            return Err(Error::DegenerateFamily(format!(
                "y^2 = x^3 + {a}x + {b} is singular over Q (discriminant 0)"
            )));
        }
        Ok(StatSource::Fixed { a, b })
    }
}

/// -16(4A^3 + 27B^2) in i128; errors only on absurd coefficients.
fn fixed_curve_disc(a: i64, b: i64) -> Result<i128> {
    let a = a as i128;
    let b = b as i128;
    let v = a
        .checked_pow(3)
        .and_then(|a3| a3.checked_mul(4))
        .and_then(|t| {
            b.checked_mul(b)
                .and_then(|b2| b2.checked_mul(27).and_then(|s| t.checked_add(s)))
        })
        .and_then(|t| t.checked_mul(-16));
    v.ok_or_else(|| Error::InvalidInput("curve coefficients overflow discriminant".into()))
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    /// Largest prime for which an O(p^2) full fiber census is attempted.
    pub census_cap: u64,
    /// Worker threads for the per-prime partition.
    pub workers: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            census_cap: 5000,
            workers: 1,
        }
    }
}

/// One per-prime row of a sweep.
#[derive(Debug, Clone, Copy)]
pub struct StatRow {
    pub p: u64,
    /// Parameters (with multiplicity) of good reduction at p; 0 or 1 for
    /// single-curve sources.
    pub param_count: u64,
    pub contribution: f64,
    /// pi(p), counting 2 and 3.
    pub pi_p: u64,
    /// Limiting-law prediction for this row (angle and census statistics).
    pub expected: f64,
}

/// A full sweep: per-prime rows plus the normalization facts.
#[derive(Debug, Clone)]
pub struct StatReport {
    pub rows: Vec<StatRow>,
    /// Sum of contributions.
    pub total: f64,
    /// Full parameter count with multiplicity (1 for single-curve sources):
    /// the averaged statistics normalize by this, not by the per-prime
    /// good-reduction counts.
    pub params_total: u64,
    /// pi(x) over all primes including 2 and 3.
    pub pi_x: u64,
}

impl StatReport {
    pub fn avg_per_param(&self) -> f64 {
        self.total / self.params_total as f64
    }

    pub fn ratio_to_pi(&self) -> f64 {
        if self.pi_x == 0 {
            return 0.0;
        }
        self.avg_per_param() / self.pi_x as f64
    }
}

/// Run a statistic over all good primes 5 <= p <= x.
pub fn sweep(
    source: &StatSource,
    stat: &Statistic,
    x: u64,
    opts: &SweepOptions,
) -> Result<StatReport> {
    if opts.workers == 0 {
        return Err(Error::InvalidInput("worker count must be >= 1".into()));
    }
    validate_combination(source, stat)?;
    let primes = sieve_primes(x);
    let ctx = SweepCtx::prepare(source, stat, &primes, opts)?;

    let sweep_limit = match stat {
        Statistic::Census { .. } => x.min(opts.census_cap),
        _ => x,
    };
    let range: Vec<u64> = primes.curve_range(sweep_limit).to_vec();

    let rows: Result<Vec<Option<StatRow>>> = if opts.workers > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| range.par_iter().map(|&p| ctx.row(p, &primes)).collect())
    } else {
        range.iter().map(|&p| ctx.row(p, &primes)).collect()
    };
    let rows: Vec<StatRow> = rows?.into_iter().flatten().collect();

    let total = rows.iter().map(|r| r.contribution).sum();
    Ok(StatReport {
        total,
        params_total: ctx.params_total,
        pi_x: primes.count_le(x),
        rows,
    })
}

fn validate_combination(source: &StatSource, stat: &Statistic) -> Result<()> {
    match (source, stat) {
        (StatSource::Family { .. }, _) => Ok(()),
        (_, Statistic::Census { .. }) => Err(Error::InvalidInput(
            "census statistic requires a family source".into(),
        )),
        _ => Ok(()),
    }
}

/// Immutable preprocessed state shared by all per-prime tasks.
struct SweepCtx<'a> {
    source: &'a StatSource,
    stat: &'a Statistic,
    params_total: u64,
    /// Fixed-curve integer discriminant.
    fixed_disc: i128,
    /// Family parameters surviving the exact delta(t) != 0 filter:
    /// Farey fractions, or integer values with multiplicity.
    farey: Vec<RationalParam>,
    values: Vec<(i64, u64)>,
}

impl<'a> SweepCtx<'a> {
    fn prepare(
        source: &'a StatSource,
        stat: &'a Statistic,
        _primes: &PrimeList,
        _opts: &SweepOptions,
    ) -> Result<Self> {
        let mut ctx = SweepCtx {
            source,
            stat,
            params_total: 1,
            fixed_disc: 0,
            farey: Vec::new(),
            values: Vec::new(),
        };
        match source {
            StatSource::Fixed { a, b } => {
                ctx.fixed_disc = fixed_curve_disc(*a, *b)?;
                if ctx.fixed_disc == 0 {
                    return Err(Error::DegenerateFamily(format!(
                        "y^2 = x^3 + {a}x + {b} is singular over Q (discriminant 0)"
                    )));
                }
            }
            StatSource::Specialized { family, t } => {
                require_nondegenerate(family)?;
                if family.delta_vanishes_at(t)? {
                    return Err(Error::InvalidInput(format!(
                        "parameter {t} is a root of the family discriminant"
                    )));
                }
            }
            StatSource::Family { family, set } => {
                require_nondegenerate(family)?;
                if set.is_empty() {
                    return Err(Error::InvalidInput("empty parameter set".into()));
                }
                ctx.params_total = set.len();
                match set {
                    ParamSet::Farey { t } => {
                        ctx.farey = crate::params::farey_params(*t);
                        retain_delta_nonzero_farey(family, &mut ctx.farey)?;
                    }
                    ParamSet::Interval { t } => {
                        ctx.values = (1..=*t as i64).map(|v| (v, 1)).collect();
                        retain_delta_nonzero_values(family, &mut ctx.values)?;
                    }
                    ParamSet::SumSet { u, v } => {
                        ctx.values = sum_value_multiset(u, v);
                        retain_delta_nonzero_values(family, &mut ctx.values)?;
                    }
                    // Parameters with delta(t) = 0 in Q reduce to excluded
                    // fibers mod every prime, so the per-prime census filter
                    // below already skips them; no up-front enumeration of
                    // the T^4 pairs is needed.
                    ParamSet::FareyPairs { .. } => {}
                }
            }
        }
        Ok(ctx)
    }

    /// Compute one per-prime row. `None` drops the prime from the report
    /// (only for the census statistic at p = ell).
    fn row(&self, p: u64, primes: &PrimeList) -> Result<Option<StatRow>> {
        let pi_p = primes.count_le(p);
        match (self.source, self.stat) {
            (StatSource::Fixed { a, b }, stat) => {
                if self.fixed_disc.rem_euclid(p as i128) == 0 {
                    return Ok(Some(StatRow {
                        p,
                        param_count: 0,
                        contribution: 0.0,
                        pi_p,
                        expected: 0.0,
                    }));
                }
                let curve = CurveModP::new(p, *a, *b)?;
                let ap = curve.trace();
                let hit = stat.matches(ap, p);
                Ok(Some(StatRow {
                    p,
                    param_count: 1,
                    contribution: if hit { 1.0 } else { 0.0 },
                    pi_p,
                    expected: stat.density(),
                }))
            }
            (StatSource::Specialized { family, t }, stat) => {
                match family.specialize_mod_p(t, p)? {
                    crate::family::Reduction::Bad(_) => Ok(Some(StatRow {
                        p,
                        param_count: 0,
                        contribution: 0.0,
                        pi_p,
                        expected: 0.0,
                    })),
                    crate::family::Reduction::Good(curve) => {
                        let ap = curve.trace();
                        let hit = stat.matches(ap, p);
                        Ok(Some(StatRow {
                            p,
                            param_count: 1,
                            contribution: if hit { 1.0 } else { 0.0 },
                            pi_p,
                            expected: stat.density(),
                        }))
                    }
                }
            }
            (StatSource::Family { family, set: _ }, Statistic::Census { ell }) => {
                if p == *ell {
                    return Ok(None);
                }
                let census = fiber_census(family, p)?;
                let dev = census_max_deviation(&census, *ell)?;
                Ok(Some(StatRow {
                    p,
                    param_count: census.size(),
                    contribution: dev,
                    pi_p,
                    expected: census.size() as f64 / *ell as f64,
                }))
            }
            (StatSource::Family { family, set }, stat) => {
                Ok(Some(self.family_row(family, set, stat, p, pi_p)?))
            }
        }
    }

    /// Family statistics share one pattern: residues with their multiplicity,
    /// one trace per distinct residue of good reduction.
    fn family_row(
        &self,
        family: &CurveFamily,
        set: &ParamSet,
        stat: &Statistic,
        p: u64,
        pi_p: u64,
    ) -> Result<StatRow> {
        let support = self.residue_support(set, p)?;
        let delta_p = family.delta().reduced_mod(p);
        let f_p = family.f().reduced_mod(p);
        let g_p = family.g().reduced_mod(p);
        let table = QrTable::new(p)?;

        let mut good: u64 = 0;
        let mut hits: u64 = 0;
        for &(w, mult) in &support {
            if IntPoly::eval_reduced(&delta_p, w, p) == 0 {
                continue;
            }
            let a = IntPoly::eval_reduced(&f_p, w, p) as i64;
            let b = IntPoly::eval_reduced(&g_p, w, p) as i64;
            let ap = CurveModP::new(p, a, b)?.trace_with_table(&table);
            good += mult;
            if stat.matches(ap, p) {
                hits += mult;
            }
        }
        Ok(StatRow {
            p,
            param_count: good,
            contribution: hits as f64,
            pi_p,
            expected: stat.density() * good as f64,
        })
    }

    /// Distinct residues hit by the parameter set at p, with multiplicity.
    fn residue_support(&self, set: &ParamSet, p: u64) -> Result<Vec<(u64, u64)>> {
        match set {
            ParamSet::Farey { .. } => {
                let mut counts = vec![0u64; p as usize];
                for t in &self.farey {
                    let v = t.v() as u64 % p;
                    if v == 0 {
                        continue;
                    }
                    let w = t.u() as u64 % p * crate::arith::mod_inverse(v, p)? % p;
                    counts[w as usize] += 1;
                }
                Ok(sparsify(&counts))
            }
            ParamSet::Interval { .. } | ParamSet::SumSet { .. } => {
                let mut counts = vec![0u64; p as usize];
                for &(val, mult) in &self.values {
                    counts[(val as u64 % p) as usize] += mult;
                }
                Ok(sparsify(&counts))
            }
            ParamSet::FareyPairs { .. } => Ok(residue_histogram(set, p)?.support()),
        }
    }
}

fn sparsify(counts: &[u64]) -> Vec<(u64, u64)> {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(w, &c)| (w as u64, c))
        .collect()
}

fn require_nondegenerate(family: &CurveFamily) -> Result<()> {
    if family.is_nondegenerate() {
        Ok(())
    } else {
        Err(Error::DegenerateFamily(
            "family statistics require a nonzero discriminant and nonconstant j".into(),
        ))
    }
}

fn retain_delta_nonzero_farey(family: &CurveFamily, params: &mut Vec<RationalParam>) -> Result<()> {
    let mut err = None;
    params.retain(|t| match family.delta_vanishes_at(t) {
        Ok(z) => !z,
        Err(e) => {
            err = Some(e);
            false
        }
    });
    err.map_or(Ok(()), Err)
}

fn retain_delta_nonzero_values(family: &CurveFamily, values: &mut Vec<(i64, u64)>) -> Result<()> {
    let mut err = None;
    values.retain(|(v, _)| {
        match RationalParam::integer(*v).and_then(|t| family.delta_vanishes_at(&t)) {
            Ok(z) => !z,
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    err.map_or(Ok(()), Err)
}

/// Count of good primes p <= x with a_p equal to the sequence value.
pub fn pi_trace(source: &StatSource, seq: &TraceSequence, x: u64) -> Result<u64> {
    single_curve_count(source, &Statistic::Trace(seq.clone()), x)
}

/// Count of good ordinary primes p <= x whose Frobenius field is Q(sqrt d).
pub fn pi_field(source: &StatSource, d: i64, x: u64) -> Result<u64> {
    single_curve_count(source, &Statistic::field(d)?, x)
}

/// Count of good primes p <= x whose Frobenius angle lies in the window.
pub fn pi_angle(source: &StatSource, window: &AngleWindow, x: u64) -> Result<u64> {
    single_curve_count(source, &Statistic::Angle(*window), x)
}

fn single_curve_count(source: &StatSource, stat: &Statistic, x: u64) -> Result<u64> {
    if matches!(source, StatSource::Family { .. }) {
        return Err(Error::InvalidInput(
            "single-curve counter given a family source; use family_average".into(),
        ));
    }
    let report = sweep(source, stat, x, &SweepOptions::default())?;
    Ok(report.total as u64)
}

/// The trace at every good prime 5 <= p <= x of a single-curve source, in
/// prime order. One pass serves any number of windows or sequences.
pub fn trace_values(source: &StatSource, x: u64, opts: &SweepOptions) -> Result<Vec<(u64, i64)>> {
    let disc = match source {
        StatSource::Fixed { a, b } => {
            let d = fixed_curve_disc(*a, *b)?;
            if d == 0 {
                return Err(Error::DegenerateFamily(format!(
                    "y^2 = x^3 + {a}x + {b} is singular over Q (discriminant 0)"
                )));
            }
            d
        }
        StatSource::Specialized { family, t } => {
            require_nondegenerate(family)?;
            if family.delta_vanishes_at(t)? {
                return Err(Error::InvalidInput(format!(
                    "parameter {t} is a root of the family discriminant"
                )));
            }
            0
        }
        StatSource::Family { .. } => {
            return Err(Error::InvalidInput(
                "trace_values needs a single-curve source".into(),
            ));
        }
    };
    let primes = sieve_primes(x);
    let range: Vec<u64> = primes.curve_range(x).to_vec();
    let eval = |p: u64| -> Result<Option<(u64, i64)>> {
        match source {
            StatSource::Fixed { a, b } => {
                if disc.rem_euclid(p as i128) == 0 {
                    Ok(None)
                } else {
                    Ok(Some((p, CurveModP::new(p, *a, *b)?.trace())))
                }
            }
            StatSource::Specialized { family, t } => match family.specialize_mod_p(t, p)? {
                crate::family::Reduction::Good(e) => Ok(Some((p, e.trace()))),
                crate::family::Reduction::Bad(_) => Ok(None),
            },
            StatSource::Family { .. } => unreachable!(),
        }
    };
    let out: Result<Vec<Option<(u64, i64)>>> = if opts.workers > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| range.par_iter().map(|&p| eval(p)).collect())
    } else {
        range.iter().map(|&p| eval(p)).collect()
    };
    Ok(out?.into_iter().flatten().collect())
}

/// Per-prime rows of a statistic averaged over a parameter set.
pub fn family_average(
    family: &CurveFamily,
    set: &ParamSet,
    stat: &Statistic,
    x: u64,
    opts: &SweepOptions,
) -> Result<StatReport> {
    let source = StatSource::Family {
        family: family.clone(),
        set: set.clone(),
    };
    sweep(&source, stat, x, opts)
}

/// The traces of every fiber of a family mod p: entries (w, a_w) for the w
/// with delta(w) != 0 mod p, ascending in w. O(p^2) time.
#[derive(Debug, Clone)]
pub struct FiberCensus {
    p: u64,
    entries: Vec<(u64, i64)>,
    excluded: u64,
    family_key: FamilyKey,
    j_family: bool,
}

impl FiberCensus {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn entries(&self) -> &[(u64, i64)] {
        &self.entries
    }

    /// Number of fibers that are elliptic curves.
    pub fn size(&self) -> u64 {
        self.entries.len() as u64
    }

    /// Residues excluded by delta(w) = 0 mod p.
    pub fn excluded(&self) -> u64 {
        self.excluded
    }

    pub fn family_key(&self) -> &FamilyKey {
        &self.family_key
    }

    pub fn is_j_family(&self) -> bool {
        self.j_family
    }

    /// Trace at fiber w, None when excluded.
    pub fn trace_at(&self, w: u64) -> Option<i64> {
        self.entries
            .binary_search_by_key(&w, |&(w_, _)| w_)
            .ok()
            .map(|i| self.entries[i].1)
    }
}

/// Sweep all fibers of the family mod p. Requires a nondegenerate family and
/// a prime p >= 5.
pub fn fiber_census(family: &CurveFamily, p: u64) -> Result<FiberCensus> {
    require_nondegenerate(family)?;
    if p < 5 {
        return Err(Error::InvalidInput(format!(
            "census prime must be >= 5, got {p}"
        )));
    }
    let table = QrTable::new(p)?;
    let delta_p = family.delta().reduced_mod(p);
    let f_p = family.f().reduced_mod(p);
    let g_p = family.g().reduced_mod(p);
    let mut entries = Vec::with_capacity(p as usize);
    let mut excluded = 0u64;
    for w in 0..p {
        if IntPoly::eval_reduced(&delta_p, w, p) == 0 {
            excluded += 1;
            continue;
        }
        let a = IntPoly::eval_reduced(&f_p, w, p) as i64;
        let b = IntPoly::eval_reduced(&g_p, w, p) as i64;
        let ap = CurveModP::new(p, a, b)?.trace_with_table(&table);
        entries.push((w, ap));
    }
    Ok(FiberCensus {
        p,
        entries,
        excluded,
        family_key: family.key(),
        j_family: family.is_j_family(),
    })
}

/// #{w : a_w = a mod ell}. Requires prime ell >= 17 and ell != p; the
/// trace congruences that make this diagnostic meaningful fail below 17.
pub fn census_mod_ell(census: &FiberCensus, ell: u64, a: u64) -> Result<u64> {
    require_census_modulus(ell)?;
    if ell == census.p {
        return Err(Error::HypothesisViolation(format!(
            "census modulus ell = {ell} must differ from p"
        )));
    }
    let target = a % ell;
    Ok(census
        .entries
        .iter()
        .filter(|(_, ap)| ap.rem_euclid(ell as i64) as u64 == target)
        .count() as u64)
}

/// max_a |#{w : a_w = a mod ell} - size/ell|: the equidistribution defect.
pub fn census_max_deviation(census: &FiberCensus, ell: u64) -> Result<f64> {
    require_census_modulus(ell)?;
    if ell == census.p {
        return Err(Error::HypothesisViolation(format!(
            "census modulus ell = {ell} must differ from p"
        )));
    }
    let mut class_counts = vec![0u64; ell as usize];
    for (_, ap) in &census.entries {
        class_counts[ap.rem_euclid(ell as i64) as usize] += 1;
    }
    let mean = census.size() as f64 / ell as f64;
    Ok(class_counts
        .iter()
        .map(|&c| (c as f64 - mean).abs())
        .fold(0.0, f64::max))
}

/// #{w : ordinary fiber with Frobenius field Q(sqrt d)} for negative
/// squarefree d. Supersingular fibers (a_w = 0) never count.
pub fn census_field(census: &FiberCensus, d: i64) -> Result<u64> {
    if d >= 0 || crate::arith::squarefree_part(d)? != d {
        return Err(Error::InvalidInput(format!(
            "field discriminant must be negative and squarefree, got {d}"
        )));
    }
    let mut n = 0u64;
    for &(_, ap) in &census.entries {
        if ap != 0 && frobenius_field_disc(ap, census.p)? == d {
            n += 1;
        }
    }
    Ok(n)
}

/// #{w : a_w = t} exactly. A direct analogue of the Deuring/Lenstra class
/// number count only for the j-family, where every twist class appears once
/// per j-invariant; for other families the count is still computed but a
/// warning is logged.
pub fn trace_class_count(census: &FiberCensus, t: i64) -> u64 {
    if !census.j_family {
        log::warn!(
            "trace_class_count on a family other than the j-family: counts are not class numbers"
        );
    }
    census.entries.iter().filter(|(_, ap)| *ap == t).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{BadReduction, Reduction};

    fn cm_curve() -> StatSource {
        StatSource::fixed(1, 0).unwrap()
    }

    #[test]
    fn st_density_frozen_values() {
        let full = AngleWindow::full();
        assert!((st_density(&full) - 1.0).abs() < 1e-15);
        let half = AngleWindow::new(0.0, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((st_density(&half) - 0.5).abs() < 1e-15);
        let mid = AngleWindow::new(
            std::f64::consts::FRAC_PI_3,
            2.0 * std::f64::consts::FRAC_PI_3,
        )
        .unwrap();
        // 1/3 + sqrt(3)/(2 pi)
        assert!((st_density(&mid) - 0.6089977810442292).abs() < 1e-14);
    }

    #[test]
    fn st_density_additive_and_symmetric() {
        let cut = 1.1;
        let w1 = AngleWindow::new(0.0, cut).unwrap();
        let w2 = AngleWindow::new(cut, std::f64::consts::PI).unwrap();
        assert!((st_density(&w1) + st_density(&w2) - 1.0).abs() < 1e-14);
        // symmetry about pi/2
        let a = AngleWindow::new(0.3, 0.9).unwrap();
        let b = AngleWindow::new(std::f64::consts::PI - 0.9, std::f64::consts::PI - 0.3).unwrap();
        assert!((st_density(&a) - st_density(&b)).abs() < 1e-14);
    }

    #[test]
    fn window_validation() {
        assert!(AngleWindow::new(-0.1, 1.0).is_err());
        assert!(AngleWindow::new(1.0, 1.0).is_err());
        assert!(AngleWindow::new(1.0, 4.0).is_err());
    }

    #[test]
    fn window_membership_exact_boundaries() {
        // a = 0 sits exactly on the pi/2 boundary: closed windows on both
        // sides contain it.
        let lo = AngleWindow::new(0.0, std::f64::consts::FRAC_PI_2).unwrap();
        let hi = AngleWindow::new(std::f64::consts::FRAC_PI_2, std::f64::consts::PI).unwrap();
        assert!(lo.contains_trace(0, 7));
        assert!(hi.contains_trace(0, 7));
        // half-open: only the window starting at pi/2 keeps it
        assert!(!lo.contains_trace_half_open(0, 7));
        assert!(hi.contains_trace_half_open(0, 7));
        // the full window contains every Hasse trace
        let full = AngleWindow::full();
        for a in -5..=5 {
            assert!(full.contains_trace(a, 7));
            assert!(full.contains_trace_half_open(a, 7));
        }
    }

    #[test]
    fn window_membership_matches_angle() {
        // against direct angle computation away from boundaries
        let w = AngleWindow::new(0.7, 2.2).unwrap();
        for p in [5u64, 101, 9973] {
            let bound = crate::arith::isqrt(4 * p) as i64;
            for a in -bound..=bound {
                let psi = crate::curves::frobenius_angle(a, p).unwrap();
                if (psi - 0.7).abs() > 1e-9 && (psi - 2.2).abs() > 1e-9 {
                    assert_eq!(
                        w.contains_trace(a, p),
                        (0.7..=2.2).contains(&psi),
                        "a={a} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn trace_sequences() {
        assert_eq!(TraceSequence::Constant(0).value(97), Some(0));
        assert_eq!(TraceSequence::Extremal.value(5), Some(-4)); // -floor(sqrt 20)
        let table = BTreeMap::from([(5u64, -3i64)]);
        let custom = TraceSequence::Custom(table);
        assert_eq!(custom.value(5), Some(-3));
        assert_eq!(custom.value(7), None);
    }

    #[test]
    fn pi_trace_cm_curve() {
        // y^2 = x^3 + x is supersingular exactly at p = 3 mod 4; sweeps
        // start at 5, so 7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83.
        let n = pi_trace(&cm_curve(), &TraceSequence::Constant(0), 100).unwrap();
        assert_eq!(n, 12);
    }

    #[test]
    fn pi_field_cm_curve() {
        // ordinary primes p = 1 mod 4 all give Q(i): 5, 13, ..., 97
        assert_eq!(pi_field(&cm_curve(), -1, 100).unwrap(), 11);
        assert_eq!(pi_field(&cm_curve(), -3, 100).unwrap(), 0);
        assert!(pi_field(&cm_curve(), 5, 100).is_err());
        assert!(pi_field(&cm_curve(), -12, 100).is_err());
    }

    #[test]
    fn pi_angle_full_window_counts_good_primes() {
        // y^2 = x^3 + x + 1 has discriminant -496 = -16 * 31: bad at 31.
        // Good primes in [5, 100]: 22 of the 25 primes up to 100.
        let curve = StatSource::fixed(1, 1).unwrap();
        assert_eq!(pi_angle(&curve, &AngleWindow::full(), 100).unwrap(), 22);
    }

    #[test]
    fn angle_partition_is_exact() {
        // half-open windows partition the good primes exactly
        let curve = StatSource::fixed(1, 1).unwrap();
        let x = 500;
        let k = 8;
        let mut total = 0u64;
        let edges: Vec<f64> = (0..=k)
            .map(|i| i as f64 * std::f64::consts::PI / k as f64)
            .collect();
        let report = sweep(
            &curve,
            &Statistic::Angle(AngleWindow::full()),
            x,
            &SweepOptions::default(),
        )
        .unwrap();
        let good: u64 = report.rows.iter().map(|r| r.param_count).sum();
        for i in 0..k {
            let w = AngleWindow::new(edges[i], edges[i + 1]).unwrap();
            // count via half-open membership
            let mut n = 0u64;
            for row in &report.rows {
                if row.param_count == 0 {
                    continue;
                }
                let ap = CurveModP::new(row.p, 1, 1).unwrap().trace();
                if w.contains_trace_half_open(ap, row.p) {
                    n += 1;
                }
            }
            total += n;
        }
        assert_eq!(total, good);
    }

    #[test]
    fn singular_fixed_curve_rejected() {
        assert!(StatSource::fixed(0, 0).is_err());
        assert!(StatSource::fixed(-3, 2).is_err()); // 4*27 = 27*4
    }

    #[test]
    fn specialized_source_matches_direct() {
        // Sweeping E(2) of the j-family must agree with specializing at
        // each prime by hand.
        let fam = CurveFamily::j_family();
        let t = RationalParam::integer(2).unwrap();
        let spec = StatSource::Specialized {
            family: fam.clone(),
            t,
        };
        let report = sweep(
            &spec,
            &Statistic::Trace(TraceSequence::Constant(0)),
            200,
            &SweepOptions::default(),
        )
        .unwrap();
        // cross-check each row against direct specialization
        for row in &report.rows {
            match fam.specialize_mod_p(&t, row.p).unwrap() {
                Reduction::Good(e) => {
                    assert_eq!(row.param_count, 1);
                    let hit = e.trace() == 0;
                    assert_eq!(row.contribution > 0.5, hit, "p = {}", row.p);
                }
                Reduction::Bad(_) => assert_eq!(row.param_count, 0),
            }
        }
    }

    #[test]
    fn census_frozen_values() {
        let fam = CurveFamily::j_family();
        let c = fiber_census(&fam, 5).unwrap();
        assert_eq!(c.entries(), &[(1, 2), (2, -3), (4, 1)]);
        assert_eq!(c.excluded(), 2); // w = 0 and w = 1728 mod 5 = 3
        assert_eq!(c.size(), 3);
        assert_eq!(c.trace_at(2), Some(-3));
        assert_eq!(c.trace_at(0), None);
    }

    #[test]
    fn census_mod_ell_frozen() {
        let fam = CurveFamily::j_family();
        let c = fiber_census(&fam, 5).unwrap();
        // traces {2, -3, 1} = {2, 14, 1} mod 17
        assert_eq!(census_mod_ell(&c, 17, 2).unwrap(), 1);
        assert_eq!(census_mod_ell(&c, 17, 14).unwrap(), 1);
        assert_eq!(census_mod_ell(&c, 17, 1).unwrap(), 1);
        assert_eq!(census_mod_ell(&c, 17, 0).unwrap(), 0);
        assert!(census_mod_ell(&c, 13, 0).is_err()); // ell < 17
        assert!(census_mod_ell(&c, 18, 0).is_err()); // not prime
        let c17 = fiber_census(&fam, 17).unwrap();
        assert!(census_mod_ell(&c17, 17, 0).is_err()); // ell = p
    }

    #[test]
    fn census_field_frozen() {
        let fam = CurveFamily::j_family();
        let c = fiber_census(&fam, 5).unwrap();
        assert_eq!(census_field(&c, -1).unwrap(), 1); // w = 1: 4 - 20 = -16
        assert_eq!(census_field(&c, -11).unwrap(), 1); // w = 2: 9 - 20
        assert_eq!(census_field(&c, -19).unwrap(), 1); // w = 4: 1 - 20
        assert_eq!(census_field(&c, -2).unwrap(), 0);
        assert!(census_field(&c, -4).is_err());
    }

    #[test]
    fn trace_class_count_frozen() {
        let fam = CurveFamily::j_family();
        let c = fiber_census(&fam, 5).unwrap();
        assert_eq!(trace_class_count(&c, 2), 1);
        assert_eq!(trace_class_count(&c, 0), 0);
    }

    #[test]
    fn census_excluded_matches_delta_roots() {
        let fam = CurveFamily::j_family();
        for p in [5u64, 7, 101, 1009] {
            let c = fiber_census(&fam, p).unwrap();
            assert_eq!(c.excluded(), 2, "p = {p}"); // 0 and 1728 mod p
            assert_eq!(c.size() + c.excluded(), p);
        }
    }

    #[test]
    fn family_average_matches_brute_force() {
        // j-family over farey(3), supersingular counts, x = 60: compare the
        // histogram route against direct per-parameter specialization.
        let fam = CurveFamily::j_family();
        let set = ParamSet::farey(3).unwrap();
        let stat = Statistic::Trace(TraceSequence::Constant(0));
        let report = family_average(&fam, &set, &stat, 60, &SweepOptions::default()).unwrap();

        let primes = sieve_primes(60);
        for (row, &p) in report.rows.iter().zip(primes.curve_range(60)) {
            assert_eq!(row.p, p);
            let mut good = 0u64;
            let mut hits = 0u64;
            for t in crate::params::farey_params(3) {
                match fam.specialize_mod_p(&t, p).unwrap() {
                    Reduction::Good(e) => {
                        good += 1;
                        if e.trace_naive() == 0 {
                            hits += 1;
                        }
                    }
                    Reduction::Bad(BadReduction::Denominator | BadReduction::Discriminant) => {}
                }
            }
            assert_eq!(row.param_count, good, "p = {p}");
            assert_eq!(row.contribution as u64, hits, "p = {p}");
        }
        assert_eq!(report.params_total, 7); // #F(3)
    }

    #[test]
    fn family_average_rejects_degenerate() {
        let degen = CurveFamily::new(IntPoly::constant(1), IntPoly::constant(1)).unwrap();
        let set = ParamSet::farey(2).unwrap();
        let stat = Statistic::Trace(TraceSequence::Constant(0));
        assert!(matches!(
            family_average(&degen, &set, &stat, 50, &SweepOptions::default()),
            Err(Error::DegenerateFamily(_))
        ));
    }

    #[test]
    fn census_stat_sweep_skips_ell() {
        let fam = CurveFamily::j_family();
        let source = StatSource::Family {
            family: fam,
            set: ParamSet::interval(1).unwrap(),
        };
        let report = sweep(
            &source,
            &Statistic::census(17).unwrap(),
            30,
            &SweepOptions::default(),
        )
        .unwrap();
        let ps: Vec<u64> = report.rows.iter().map(|r| r.p).collect();
        assert_eq!(ps, vec![5, 7, 11, 13, 19, 23, 29]); // 17 dropped
        for row in &report.rows {
            assert_eq!(row.param_count, row.p - 2); // size = p - 2 for j-family
        }
    }

    #[test]
    fn sweep_deterministic_across_workers() {
        let fam = CurveFamily::j_family();
        let set = ParamSet::sum_set((1..=10i64).collect(), (1..=10i64).collect()).unwrap();
        let stat = Statistic::Angle(
            AngleWindow::new(
                std::f64::consts::FRAC_PI_3,
                2.0 * std::f64::consts::FRAC_PI_3,
            )
            .unwrap(),
        );
        let r1 = family_average(
            &fam,
            &set,
            &stat,
            200,
            &SweepOptions {
                census_cap: 5000,
                workers: 1,
            },
        )
        .unwrap();
        let r4 = family_average(
            &fam,
            &set,
            &stat,
            200,
            &SweepOptions {
                census_cap: 5000,
                workers: 4,
            },
        )
        .unwrap();
        assert_eq!(r1.rows.len(), r4.rows.len());
        for (a, b) in r1.rows.iter().zip(r4.rows.iter()) {
            assert_eq!(a.p, b.p);
            assert_eq!(a.param_count, b.param_count);
            assert_eq!(a.contribution.to_bits(), b.contribution.to_bits());
            assert_eq!(a.expected.to_bits(), b.expected.to_bits());
        }
        assert_eq!(r1.total.to_bits(), r4.total.to_bits());
    }

    #[test]
    fn custom_sequence_missing_primes_do_not_match() {
        let table = BTreeMap::from([(7u64, CurveModP::new(7, 1, 0).unwrap().trace())]);
        let n = pi_trace(&cm_curve(), &TraceSequence::Custom(table), 20).unwrap();
        assert_eq!(n, 1); // only p = 7 can match
    }
}
