//! Parametric families `E(t): Y^2 = X^3 + f(t)X + g(t)` with integer
//! polynomial coefficients, and their reductions mod p.
//!
//! A family is *nondegenerate* when its discriminant polynomial
//! `delta = -16 (4 f^3 + 27 g^2)` is not identically zero and its
//! j-invariant `j = -1728 (4f)^3 / delta` is nonconstant, i.e. the
//! numerator `-1728 (4f)^3` is not a rational multiple of `delta`. All
//! averaged statistics require nondegeneracy; a constant j would make the
//! whole family a single twist class.
//!
//! Coefficients live in `i64` with `i128` intermediates; there is
//! deliberately no big-integer fallback. At desk scale (the j-family has
//! coefficients up to 1728^5 ~ 1.5e16) nothing overflows, and anything
//! larger is out of scope.

use crate::arith::{gcd, is_prime, mod_inverse};
use crate::curves::CurveModP;
use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

fn overflow() -> Error {
    Error::InvalidInput("polynomial coefficient exceeds i64 (no big integers by design)".into())
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn leading(&self) -> i64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &IntPoly) -> Result<IntPoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = a.checked_add(b).ok_or_else(overflow)?;
        }
        Ok(IntPoly::new(out))
    }

    pub fn mul(&self, other: &IntPoly) -> Result<IntPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(IntPoly::zero());
        }
        let mut acc = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += (a as i128) * (b as i128);
            }
        }
        let out: Option<Vec<i64>> = acc.into_iter().map(|c| i64::try_from(c).ok()).collect();
        Ok(IntPoly::new(out.ok_or_else(overflow)?))
    }

    pub fn scale(&self, k: i64) -> Result<IntPoly> {
        let out: Option<Vec<i64>> = self.coeffs.iter().map(|&c| c.checked_mul(k)).collect();
        Ok(IntPoly::new(out.ok_or_else(overflow)?))
    }

    /// Coefficients reduced into [0, p): the per-prime form used by sweeps.
    pub fn reduced_mod(&self, p: u64) -> Vec<u64> {
        self.coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect()
    }

    /// Horner evaluation of already-reduced coefficients at w mod p.
    pub fn eval_reduced(reduced: &[u64], w: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for &c in reduced.iter().rev() {
            acc = (acc * w + c) % p;
        }
        acc
    }

    pub fn eval_mod(&self, w: u64, p: u64) -> u64 {
        Self::eval_reduced(&self.reduced_mod(p), w % p, p)
    }

    /// Exact numerator of the value at u/v: sum_i c_i u^i v^(d-i), in i128.
    /// Errors on overflow rather than silently wrapping; the only consumer
    /// that matters is the "is delta(t) exactly zero" test.
    pub fn rational_numerator(&self, u: i64, v: i64) -> Result<i128> {
        if self.is_zero() {
            return Ok(0);
        }
        // Horner in u with a growing power of v folded in:
        // N = (...(c_d * u + c_{d-1} v) * u + c_{d-2} v^2 ...)
        let d = self.coeffs.len() - 1;
        let mut acc: i128 = self.coeffs[d] as i128;
        let mut vpow: i128 = 1;
        for i in (0..d).rev() {
            vpow = vpow.checked_mul(v as i128).ok_or_else(overflow)?;
            acc = acc
                .checked_mul(u as i128)
                .and_then(|t| {
                    (self.coeffs[i] as i128)
                        .checked_mul(vpow)
                        .and_then(|s| t.checked_add(s))
                })
                .ok_or_else(overflow)?;
        }
        Ok(acc)
    }
}

/// A parameter u/v in lowest terms with u, v >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalParam {
    u: i64,
    v: i64,
}

impl RationalParam {
    /// Reduces to lowest terms. Errors unless u, v >= 1.
    pub fn new(u: i64, v: i64) -> Result<Self> {
        if u < 1 || v < 1 {
            return Err(Error::InvalidInput(format!(
                "parameter {u}/{v} must have positive numerator and denominator"
            )));
        }
        let g = gcd(u as u64, v as u64) as i64;
        Ok(RationalParam { u: u / g, v: v / g })
    }

    pub fn integer(t: i64) -> Result<Self> {
        Self::new(t, 1)
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    /// u/v + u'/v', reduced.
    pub fn add(&self, other: &RationalParam) -> Result<RationalParam> {
        let num = self
            .u
            .checked_mul(other.v)
            .and_then(|a| other.u.checked_mul(self.v).and_then(|b| a.checked_add(b)))
            .ok_or_else(overflow)?;
        let den = self.v.checked_mul(other.v).ok_or_else(overflow)?;
        Self::new(num, den)
    }
}

impl std::fmt::Display for RationalParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.v == 1 {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{}/{}", self.u, self.v)
        }
    }
}

/// Why a specialization failed to be an elliptic curve over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BadReduction {
    /// p divides the parameter's denominator.
    Denominator,
    /// delta(t) = 0 mod p.
    Discriminant,
}

/// Outcome of reducing E(t) mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    Good(CurveModP),
    Bad(BadReduction),
}

/// The discriminant polynomial -16 (4 f^3 + 27 g^2).
pub fn discriminant_poly(f: &IntPoly, g: &IntPoly) -> Result<IntPoly> {
    let f3 = f.mul(f)?.mul(f)?;
    let g2 = g.mul(g)?;
    f3.scale(4)?.add(&g2.scale(27)?)?.scale(-16)
}

/// `Y^2 = X^3 + f(Z)X + g(Z)` with precomputed discriminant and j-numerator.
#[derive(Debug, Clone)]
pub struct CurveFamily {
    f: IntPoly,
    g: IntPoly,
    delta: IntPoly,
    j_num: IntPoly,
    nondegenerate: bool,
    preset: Option<&'static str>,
}

/// Cache / identity key for a family: the coefficient vectors of f and g.
pub type FamilyKey = (Vec<i64>, Vec<i64>);

impl CurveFamily {
    pub fn new(f: IntPoly, g: IntPoly) -> Result<Self> {
        let delta = discriminant_poly(&f, &g)?;
        // j = -1728 (4f)^3 / delta; only the numerator is needed.
        let j_num = f.mul(&f)?.mul(&f)?.scale(64)?.scale(-1728)?;
        let nondegenerate = !delta.is_zero() && !proportional(&j_num, &delta);
        Ok(CurveFamily {
            f,
            g,
            delta,
            j_num,
            nondegenerate,
            preset: None,
        })
    }

    /// The family with j(t) = t: f = 3Z(1728 - Z), g = 2Z(1728 - Z)^2.
    /// Its discriminant is -1728^2 Z^2 (1728 - Z)^3, so the excluded fibers
    /// mod p are exactly w = 0 and w = 1728 mod p.
    pub fn j_family() -> Self {
        let z = IntPoly::new(vec![0, 1]);
        let lin = IntPoly::new(vec![1728, -1]); // 1728 - Z
        let f = z.mul(&lin).unwrap().scale(3).unwrap();
        let g = z.mul(&lin).unwrap().mul(&lin).unwrap().scale(2).unwrap();
        let mut fam = CurveFamily::new(f, g).expect("j-family coefficients fit i64");
        debug_assert!(fam.nondegenerate);
        fam.preset = Some("j-family");
        fam
    }

    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn g(&self) -> &IntPoly {
        &self.g
    }

    pub fn delta(&self) -> &IntPoly {
        &self.delta
    }

    /// Numerator of j(Z) = -1728 (4f)^3 / delta.
    pub fn j_numerator(&self) -> &IntPoly {
        &self.j_num
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn is_j_family(&self) -> bool {
        self.preset == Some("j-family")
    }

    pub fn preset_name(&self) -> Option<&'static str> {
        self.preset
    }

    pub fn key(&self) -> FamilyKey {
        (self.f.coeffs().to_vec(), self.g.coeffs().to_vec())
    }

    /// True when delta(u/v) = 0 exactly in Q. Such parameters are excluded
    /// from every family statistic (their fiber is not an elliptic curve
    /// over Q; equivalently delta(t) reduces to 0 mod every prime).
    pub fn delta_vanishes_at(&self, t: &RationalParam) -> Result<bool> {
        Ok(self.delta.rational_numerator(t.u, t.v)? == 0)
    }

    /// Reduce E(t) mod p. Bad reduction is a value, not an error; errors are
    /// reserved for invalid p and degenerate families.
    pub fn specialize_mod_p(&self, t: &RationalParam, p: u64) -> Result<Reduction> {
        if !self.nondegenerate {
            return Err(Error::DegenerateFamily(
                "cannot specialize a degenerate family".into(),
            ));
        }
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidInput(format!(
                "specialization modulus must be a prime >= 5, got {p}"
            )));
        }
        if (t.v as u64) % p == 0 {
            return Ok(Reduction::Bad(BadReduction::Denominator));
        }
        let inv = mod_inverse(t.v as u64 % p, p)?;
        let w = (t.u as u64 % p) * inv % p;
        if self.delta.eval_mod(w, p) == 0 {
            return Ok(Reduction::Bad(BadReduction::Discriminant));
        }
        let a = self.f.eval_mod(w, p) as i64;
        let b = self.g.eval_mod(w, p) as i64;
        // delta(w) != 0 and p >= 5 imply 4a^3 + 27b^2 != 0 mod p
        Ok(Reduction::Good(CurveModP::new(p, a, b)?))
    }
}

/// True when a = c * b over Q for some nonzero rational c. Both inputs
/// nonzero is assumed by the caller for a meaningful answer; a zero
/// j-numerator (f = 0) means j is constant, which callers treat as
/// degenerate before asking.
fn proportional(a: &IntPoly, b: &IntPoly) -> bool {
    if a.is_zero() {
        return true;
    }
    if b.is_zero() || a.degree() != b.degree() {
        return false;
    }
    // a = (a_lead / b_lead) b  <=>  b_lead * a == a_lead * b
    let (la, lb) = (a.leading() as i128, b.leading() as i128);
    let n = a.coeffs().len();
    (0..n).all(|i| lb * a.coeffs()[i] as i128 == la * b.coeffs()[i] as i128)
}
