//! Elliptic curves over prime fields and their Frobenius data.
//!
//! A curve is `Y^2 = X^3 + AX + B` over F_p with p >= 5; p = 2 and 3 are
//! rejected so the short Weierstrass discriminant -16(4A^3 + 27B^2) is the
//! only nonsingularity condition that ever matters.
//!
//! The trace of Frobenius is computed two independent ways:
//! * [`CurveModP::trace`] sums Legendre symbols of the cubic, one
//!   quadratic-residue table lookup per x;
//! * [`CurveModP::trace_naive`] counts points by enumerating y.
//!
//! The second exists purely as an oracle for the first and must never be
//! "optimized" into sharing the symbol-table path.

use crate::arith::{isqrt, QrTable};
use crate::error::{Error, Result};

/// `Y^2 = X^3 + AX + B` over F_p, nonsingular, with A and B reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveModP {
    p: u64,
    a: u64,
    b: u64,
}

impl CurveModP {
    /// Validates p (odd prime >= 5) and nonsingularity 4A^3 + 27B^2 != 0 mod p.
    pub fn new(p: u64, a: i64, b: i64) -> Result<Self> {
        if p < 5 || !crate::arith::is_prime(p) {
            return Err(Error::InvalidInput(format!(
                "curve modulus must be a prime >= 5, got {p}"
            )));
        }
        if p >= crate::arith::MAX_MODULUS {
            return Err(Error::InvalidInput(format!("modulus {p} >= 2^31")));
        }
        let a = a.rem_euclid(p as i64) as u64;
        let b = b.rem_euclid(p as i64) as u64;
        let a3 = a * a % p * a % p;
        let b2 = b * b % p;
        if (4 * a3 + 27 * b2) % p == 0 {
            return Err(Error::SingularCurve { p, a, b });
        }
        Ok(CurveModP { p, a, b })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// x^3 + Ax + B reduced mod p.
    #[inline]
    fn cubic(&self, x: u64) -> u64 {
        let p = self.p;
        (x * x % p * x % p + self.a * x % p + self.b) % p
    }

    /// Trace of Frobenius a_p = p + 1 - #E(F_p), via the character sum
    /// a_p = -sum_x (x^3 + Ax + B | p). Builds its own residue table; use
    /// [`Self::trace_with_table`] inside per-prime sweeps.
    pub fn trace(&self) -> i64 {
        let table = QrTable::new(self.p).expect("validated at construction");
        self.trace_with_table(&table)
    }

    /// Same character sum with a caller-supplied table for F_p.
    pub fn trace_with_table(&self, table: &QrTable) -> i64 {
        assert_eq!(table.p(), self.p, "table modulus mismatch");
        let mut sum: i64 = 0;
        for x in 0..self.p {
            sum += table.sign(self.cubic(x)) as i64;
        }
        -sum
    }

    /// Trace by explicit point enumeration: for each x count the y with
    /// y^2 = x^3 + Ax + B, plus the point at infinity. Oracle for
    /// [`Self::trace`]; O(p) time, O(p) scratch, no Legendre symbols.
    pub fn trace_naive(&self) -> i64 {
        let p = self.p;
        let mut square_count = vec![0u32; p as usize];
        for y in 0..p {
            square_count[(y * y % p) as usize] += 1;
        }
        let mut points: u64 = 1; // infinity
        for x in 0..p {
            points += square_count[self.cubic(x) as usize] as u64;
        }
        p as i64 + 1 - points as i64
    }
}

/// Checks the Hasse range a^2 <= 4p in exact integer arithmetic.
pub fn hasse_ok(a: i64, p: u64) -> bool {
    let a2 = (a as i128) * (a as i128);
    a2 <= 4 * p as i128
}

/// Frobenius angle psi in [0, pi] with cos(psi) = a / (2 sqrt p).
///
/// The quotient is clamped to [-1, 1] before acos so rounding at the Hasse
/// boundary cannot produce NaN. Errors when a^2 > 4p.
pub fn frobenius_angle(a: i64, p: u64) -> Result<f64> {
    if !hasse_ok(a, p) {
        return Err(Error::InvalidInput(format!(
            "trace {a} outside Hasse range for p = {p}"
        )));
    }
    let z = a as f64 / (2.0 * (p as f64).sqrt());
    Ok(z.clamp(-1.0, 1.0).acos())
}

/// Discriminant of the imaginary quadratic field Q(sqrt(a^2 - 4p)) attached
/// to a non-supersingular Frobenius: the squarefree part of a^2 - 4p.
///
/// For 0 < a^2 <= 4p with p prime the radicand is negative (a^2 = 4p would
/// force p | a and then a^2 >= 4p^2), so the result is a negative squarefree
/// integer. Errors on a = 0 and on traces outside the Hasse range.
pub fn frobenius_field_disc(a: i64, p: u64) -> Result<i64> {
    if a == 0 {
        return Err(Error::InvalidInput(
            "supersingular trace a = 0 has no imaginary quadratic field".into(),
        ));
    }
    if !hasse_ok(a, p) {
        return Err(Error::InvalidInput(format!(
            "trace {a} outside Hasse range for p = {p}"
        )));
    }
    crate::arith::squarefree_part(a * a - 4 * p as i64)
}

/// The extremal trace -floor(2 sqrt p), integer-exact.
pub fn extremal_trace(p: u64) -> i64 {
    -(isqrt(4 * p) as i64)
}
