//! Arbitrary-precision arithmetic primitives shared by every formula:
//! cached logarithms of small integers, pi, argument-reduced trigonometry,
//! periodized Bernoulli corrections and the order-one Bessel function.
//!
//! All real arithmetic is carried by MPFR via [`rug::Float`], which rounds
//! every operation correctly at the working precision. [`PrecisionContext`]
//! owns the decimal precision setting and the constant cache; everything it
//! hands out is immutable, so a context can be shared freely across threads.

mod bessel;

pub use bessel::bessel_j1;

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::collections::HashMap;
use std::sync::RwLock;

use crate::basis::XValue;
use crate::exact;

/// Minimum supported working precision in decimal digits.
pub const MIN_DIGITS: u32 = 15;

/// Arbitrary-precision real number. Values are bound to the precision of the
/// [`PrecisionContext`] (or an escalated precision derived from it) that
/// produced them; arithmetic between them is correctly rounded by MPFR.
pub type BigReal = Float;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum NumericsError {
    #[error("working precision must be at least {MIN_DIGITS} digits, got {0}")]
    PrecisionTooLow(u32),
    #[error("logarithm argument must be >= 2, got {0}")]
    LogDomain(u64),
}

/// Decimal digits -> MPFR mantissa bits, with headroom so that the last
/// requested digit is still correctly rounded after a chain of operations.
pub fn bits_for_digits(digits: u32) -> u32 {
    // log2(10) = 3.3219...
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

/// Working decimal precision plus the derived constants every formula needs.
pub struct PrecisionContext {
    digits: u32,
    bits: u32,
    pi: RwLock<Float>,
    ln_cache: RwLock<HashMap<u64, Float>>,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self, NumericsError> {
        if digits < MIN_DIGITS {
            return Err(NumericsError::PrecisionTooLow(digits));
        }
        let bits = bits_for_digits(digits);
        Ok(Self {
            digits,
            bits,
            pi: RwLock::new(Float::with_val(bits + 64, Constant::Pi)),
            ln_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa bits corresponding to [`Self::digits`].
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// A context with the same cache policy at `digits + extra` digits.
    pub fn escalated(&self, extra: u32) -> Self {
        Self::new(self.digits + extra).expect("escalated precision is above the minimum")
    }

    /// pi rounded to `bits`.
    pub fn pi_at(&self, bits: u32) -> Float {
        {
            let cached = self.pi.read().unwrap();
            if cached.prec() >= bits {
                return Float::with_val(bits, &*cached);
            }
        }
        let fresh = Float::with_val(bits + 64, Constant::Pi);
        let mut slot = self.pi.write().unwrap();
        if fresh.prec() > slot.prec() {
            *slot = fresh;
        }
        Float::with_val(bits, &*slot)
    }

    pub fn pi(&self) -> Float {
        self.pi_at(self.bits)
    }

    /// Natural log of a small integer, cached. This is `hp_log`.
    pub fn ln_at(&self, n: u64, bits: u32) -> Result<Float, NumericsError> {
        if n < 2 {
            return Err(NumericsError::LogDomain(n));
        }
        {
            let cache = self.ln_cache.read().unwrap();
            if let Some(v) = cache.get(&n) {
                if v.prec() >= bits {
                    return Ok(Float::with_val(bits, v));
                }
            }
        }
        let fresh = Float::with_val(bits + 64, n).ln();
        let mut cache = self.ln_cache.write().unwrap();
        let slot = cache.entry(n).or_insert_with(|| fresh.clone());
        if fresh.prec() > slot.prec() {
            *slot = fresh;
        }
        Ok(Float::with_val(bits, &*slot))
    }

    pub fn ln(&self, n: u64) -> Result<Float, NumericsError> {
        self.ln_at(n, self.bits)
    }

    /// Fresh value at the working precision.
    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits, v)
    }

    /// Integrality tolerance used by the piecewise Bernoulli correction:
    /// a point closer than this to an integer takes the jump branch.
    pub fn integrality_tolerance(&self) -> Float {
        Float::with_val(self.bits, 10).pow(-((self.digits / 2) as i32))
    }

    /// Recompute every cached constant at `digits + 10` and check the cached
    /// copies against them to within a relative error of `10^(2 - digits)`.
    pub fn verify_constants(&self) -> bool {
        let check_bits = bits_for_digits(self.digits + 10);
        let tol = Float::with_val(self.bits, 10).pow(2 - self.digits as i32);
        let pi_ref = Float::with_val(check_bits, Constant::Pi);
        let pi_err = relative_error(&self.pi(), &pi_ref);
        if pi_err > tol {
            return false;
        }
        let keys: Vec<u64> = self.ln_cache.read().unwrap().keys().copied().collect();
        for n in keys {
            let reference = Float::with_val(check_bits, n).ln();
            let cached = self.ln(n).expect("cached key is >= 2");
            if relative_error(&cached, &reference) > tol {
                return false;
            }
        }
        true
    }
}

fn relative_error(value: &Float, reference: &Float) -> Float {
    let mut err = Float::with_val(reference.prec(), value) - reference;
    err.abs_mut();
    if reference.is_zero() {
        return err;
    }
    let mut scale = reference.clone();
    scale.abs_mut();
    err / scale
}

/// Sine and cosine of `theta`, rounded to the context precision.
///
/// MPFR reduces the argument exactly, so the accuracy of the result is
/// limited only by the precision `theta` itself carries. Callers evaluating
/// oscillatory terms must therefore build `theta` with
/// `ctx.digits + magnitude-digits(theta)` working digits; the evaluators in
/// the analytic module do exactly that.
pub fn hp_sincos(theta: &Float, ctx: &PrecisionContext) -> (Float, Float) {
    let sin = Float::with_val(ctx.bits, theta);
    sin.sin_cos(Float::new(ctx.bits))
}

/// Periodized first Bernoulli polynomial `B1*`: `{t} - 1/2` away from the
/// integers and `0` on them. The integrality test uses the context tolerance;
/// exactly representable jump points (from the exact integer layer) enter as
/// exact integers and always take the zero branch.
pub fn b1_star(t: &Float, ctx: &PrecisionContext) -> Float {
    let rounded = t.clone().round();
    let dist = Float::with_val(ctx.bits, t - rounded).abs();
    if dist < ctx.integrality_tolerance() {
        return Float::with_val(ctx.bits, 0);
    }
    let frac = fractional_part(t, ctx.bits);
    frac - Float::with_val(ctx.bits, 0.5)
}

/// Second periodized Bernoulli polynomial `B2({t}) = {t}^2 - {t} + 1/6`.
pub fn b2_frac(t: &Float, ctx: &PrecisionContext) -> Float {
    let frac = fractional_part(t, ctx.bits);
    let sq = frac.clone().square();
    sq - &frac + Float::with_val(ctx.bits, 1u32) / 6u32
}

pub(crate) fn fractional_part(t: &Float, bits: u32) -> Float {
    let floor = t.clone().floor();
    Float::with_val(bits, t - floor)
}

/// Splits `log_a(x)` into its exact integer part and a fractional part that
/// carries the full context precision.
///
/// The integer part comes from pure big-integer power comparison, never from
/// floating point, so the branch of the piecewise Bernoulli terms can be
/// decided symbolically when `x` is an exact power of `a`.
pub fn frac_log_ratio(
    x: &XValue,
    a: u64,
    ctx: &PrecisionContext,
) -> Result<(u64, Float), NumericsError> {
    if a < 2 {
        return Err(NumericsError::LogDomain(a));
    }
    let e = exact::floor_log_x(a, x).expect("x >= 1 by construction");
    if x.is_power_of(a, e) {
        return Ok((e, Float::with_val(ctx.bits, 0)));
    }
    // The subtraction of the integer part cancels its leading digits, so the
    // ratio is formed with that many extra digits before rounding down.
    let magnitude_digits = (e.max(1) as f64).log10().ceil() as u32 + 1;
    let wide = bits_for_digits(ctx.digits + magnitude_digits);
    let l = x.ln(wide);
    let t = ctx.ln_at(a, wide)?;
    let frac = l / t - Float::with_val(wide, e);
    Ok((e, Float::with_val(ctx.bits, frac)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;
    use rug::Integer;

    fn ctx50() -> PrecisionContext {
        PrecisionContext::new(50).unwrap()
    }

    #[test]
    fn rejects_low_precision() {
        assert_eq!(
            PrecisionContext::new(10).unwrap_err(),
            NumericsError::PrecisionTooLow(10)
        );
    }

    #[test]
    fn ln2_matches_independent_series() {
        // atanh-based series oracle: ln 2 = 2 atanh(1/3), evaluated at much
        // higher precision than the 30 digits under test.
        let bits = bits_for_digits(80);
        let third = Float::with_val(bits, 1u32) / 3u32;
        let oracle = third.atanh() * 2u32;
        let ctx = PrecisionContext::new(30).unwrap();
        let got = ctx.ln(2).unwrap();
        let err = relative_error(&got, &oracle);
        assert!(err < Float::with_val(64, 1e-28), "err = {err}");
        // First 30 digits pinned from the oracle.
        let s = format!("{:.29}", got);
        assert_eq!(s, "0.69314718055994530941723212146");
    }

    #[test]
    fn log_laws_hold_at_context_precision() {
        let ctx = ctx50();
        let tol = Float::with_val(ctx.bits(), 10).pow(2 - ctx.digits() as i32);
        let four = ctx.ln(4).unwrap();
        let two = ctx.ln(2).unwrap();
        let six = ctx.ln(6).unwrap();
        let three = ctx.ln(3).unwrap();
        assert!(relative_error(&four, &(two.clone() * 2u32)) < tol);
        assert!(relative_error(&six, &(two + three)) < tol);
    }

    #[test]
    fn ln_rejects_small_arguments() {
        let ctx = ctx50();
        assert_eq!(ctx.ln(1).unwrap_err(), NumericsError::LogDomain(1));
        assert_eq!(ctx.ln(0).unwrap_err(), NumericsError::LogDomain(0));
    }

    #[test]
    fn sincos_special_points() {
        let ctx = ctx50();
        let tol = Float::with_val(ctx.bits(), 10).pow(2 - ctx.digits() as i32);
        let (s, c) = hp_sincos(&ctx.real(0), &ctx);
        assert!(s.is_zero());
        assert_eq!(c, 1);
        let (s, c) = hp_sincos(&ctx.pi(), &ctx);
        assert!(s.clone().abs() < tol);
        assert!((c + 1u32).abs() < tol);
    }

    #[test]
    fn sincos_huge_argument_reduces_exactly() {
        // theta = 10^6 * 2pi + pi/2, built at escalated precision as the
        // analytic evaluators do; reduction must recover (1, 0).
        let ctx = ctx50();
        let wide = bits_for_digits(ctx.digits() + 9);
        let pi = ctx.pi_at(wide);
        let theta = pi.clone() * 2_000_000u32 + pi / 2u32;
        let (s, c) = hp_sincos(&theta, &ctx);
        let tol = Float::with_val(ctx.bits(), 10).pow(2 - ctx.digits() as i32);
        assert!((s - 1u32).abs() < tol);
        assert!(c.abs() < tol);
    }

    #[test]
    fn b1_star_values() {
        let ctx = ctx50();
        assert_eq!(b1_star(&ctx.real(2.25), &ctx), -0.25);
        assert_eq!(b1_star(&ctx.real(3), &ctx), 0);
        let got = b1_star(&ctx.real(0.9), &ctx);
        assert!((got - 0.4f64).abs() < 1e-40);
    }

    #[test]
    fn b2_values() {
        let ctx = ctx50();
        let sixth = ctx.real(1u32) / 6u32;
        assert_eq!(b2_frac(&ctx.real(0), &ctx), sixth);
        let neg_twelfth = ctx.real(-1) / 12u32;
        assert!((b2_frac(&ctx.real(0.5), &ctx) - &neg_twelfth).abs() < 1e-45);
        assert!((b2_frac(&ctx.real(7.5), &ctx) - &neg_twelfth).abs() < 1e-45);
    }

    #[test]
    fn frac_log_ratio_exact_power() {
        let ctx = ctx50();
        let (e, frac) = frac_log_ratio(&XValue::from_u64(8), 2, &ctx).unwrap();
        assert_eq!(e, 3);
        assert!(frac.is_zero());
    }

    #[test]
    fn frac_log_ratio_of_ten_base_two() {
        let ctx = ctx50();
        let (e, frac) = frac_log_ratio(&XValue::from_u64(10), 2, &ctx).unwrap();
        assert_eq!(e, 3);
        // log2(10) - 3, pinned from a high-precision log oracle.
        let oracle = "0.32192809488736234787031942948939017586483139302458";
        let reference = Float::with_val(ctx.bits(), Float::parse(oracle).unwrap());
        assert!((frac - reference).abs() < Float::with_val(64, 1e-48));
    }

    #[test]
    fn frac_log_ratio_huge_power_of_ten() {
        let ctx = ctx50();
        let x = XValue::pow10(100);
        let (e, frac) = frac_log_ratio(&x, 3, &ctx).unwrap();
        assert_eq!(e, 209);
        // Cross-check the integer part by explicit big-integer powers.
        let p209 = Integer::from(3).pow(209);
        let p210 = Integer::from(3).pow(210);
        let xv = x.to_integer();
        assert!(p209 <= xv && xv < p210);
        assert!(frac > 0 && frac < 1);
    }

    #[test]
    fn verify_constants_self_test() {
        let ctx = ctx50();
        ctx.ln(2).unwrap();
        ctx.ln(3).unwrap();
        ctx.ln(7).unwrap();
        assert!(ctx.verify_constants());
    }
}
