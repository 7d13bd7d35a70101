//! Bessel function of the first kind, order one.
//!
//! Two branches: the Maclaurin series below the crossover and the
//! large-argument asymptotic expansion above it. The crossover sits at 30;
//! below it the series is summed with enough extra precision to absorb its
//! internal cancellation (the largest term grows like `e^z`), above it the
//! asymptotic tail is truncated at its smallest term, which at `z = 30` is
//! already below `1e-25` — comfortably past the 12 significant digits the
//! counting formulas need for arguments up to `~10^6`.

use rug::ops::Pow;
use rug::Float;

use super::{bits_for_digits, PrecisionContext};

const CROSSOVER: f64 = 30.0;

/// `J1(z)` for `z >= 0` (odd symmetry is applied for negative input).
pub fn bessel_j1(z: &Float, ctx: &PrecisionContext) -> Float {
    if z.is_zero() {
        return Float::with_val(ctx.bits(), 0);
    }
    if z.is_sign_negative() {
        return -bessel_j1(&z.clone().abs(), ctx);
    }
    if z.to_f64() < CROSSOVER {
        maclaurin(z, ctx)
    } else {
        asymptotic(z, ctx)
    }
}

/// sum_{m>=0} (-1)^m (z/2)^{2m+1} / (m! (m+1)!)
///
/// Also serves as the series half of the dual-branch check in tests, where
/// it is run far above the crossover at oracle precision.
pub(crate) fn maclaurin(z: &Float, ctx: &PrecisionContext) -> Float {
    // Cancellation loses ~ z*log10(e) decimal digits.
    let lost = (z.to_f64() * std::f64::consts::LOG10_E).ceil() as u32;
    let work = bits_for_digits(ctx.digits() + lost + 10);
    let half = Float::with_val(work, z) / 2u32;
    let neg_quarter_sq = -half.clone().square();
    let mut term = half; // m = 0
    let mut sum = term.clone();
    let cutoff = Float::with_val(work, 2f64).pow(-((work + 16) as i32));
    let mut m = 0u32;
    loop {
        m += 1;
        term *= &neg_quarter_sq;
        term /= m;
        term /= m + 1;
        sum += &term;
        if term.clone().abs() < cutoff || m > 20_000 {
            break;
        }
    }
    Float::with_val(ctx.bits(), sum)
}

/// `sqrt(2/(pi z)) (P cos w - Q sin w)` with `w = z - 3pi/4`, where P and Q
/// are the even/odd halves of the divergent tail `sum_k A_k z^-k`,
/// `A_0 = 1`, `A_k = A_{k-1} (4 - (2k-1)^2) / (8k)`. Terms are added while
/// they keep shrinking.
fn asymptotic(z: &Float, ctx: &PrecisionContext) -> Float {
    // The phase subtraction needs the magnitude digits of z on top of the
    // working precision.
    let mag = z.to_f64().log10().max(0.0).ceil() as u32;
    let work = bits_for_digits(ctx.digits() + mag + 10).max(z.prec());
    let zw = Float::with_val(work, z);
    let pi = ctx.pi_at(work);
    let omega = zw.clone() - pi.clone() * 3u32 / 4u32;
    let (sin_w, cos_w) = omega.sin_cos(Float::new(work));

    let inv_z = Float::with_val(work, 1) / &zw;
    let mut p = Float::with_val(work, 1); // k = 0 term
    let mut q = Float::with_val(work, 0);
    let mut coeff = Float::with_val(work, 1); // A_k z^-k, signless magnitude tracked below
    let mut prev_mag = Float::with_val(work, f64::INFINITY);
    let cutoff = Float::with_val(work, 2f64).pow(-((work + 16) as i32));
    for k in 1u32..200 {
        let factor = Float::with_val(work, 4 - (2 * i64::from(k) - 1).pow(2)) / (8 * k);
        coeff *= factor;
        coeff *= &inv_z;
        let mag_now = coeff.clone().abs();
        if mag_now >= prev_mag {
            break; // divergence onset: optimal truncation reached
        }
        // (-1)^floor(k/2) pattern: + + - - + + ...
        let negate = (k / 2) % 2 == 1;
        let signed = if negate { -coeff.clone() } else { coeff.clone() };
        if k % 2 == 0 {
            p += &signed;
        } else {
            q += &signed;
        }
        if mag_now < cutoff {
            break;
        }
        prev_mag = mag_now;
    }
    let envelope = (Float::with_val(work, 2) / (pi * &zw)).sqrt();
    let value = envelope * (p * cos_w - q * sin_w);
    Float::with_val(ctx.bits(), value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionContext;

    fn ctx50() -> PrecisionContext {
        PrecisionContext::new(50).unwrap()
    }

    fn oracle(z: f64, digits: u32) -> Float {
        // Independent oracle: the Maclaurin series summed to convergence at
        // well above the requested precision, regardless of the crossover.
        let ctx = PrecisionContext::new(digits + 20).unwrap();
        maclaurin(&ctx.real(z), &ctx)
    }

    #[test]
    fn zero_maps_to_zero() {
        let ctx = ctx50();
        assert!(bessel_j1(&ctx.real(0), &ctx).is_zero());
    }

    #[test]
    fn value_at_one() {
        let ctx = ctx50();
        let got = bessel_j1(&ctx.real(1), &ctx);
        // Frozen from the series oracle.
        let want = "0.44005058574493351595968220371891491312737230199277";
        let reference = Float::with_val(ctx.bits(), Float::parse(want).unwrap());
        assert!((got - reference).abs() < 1e-45);
    }

    #[test]
    fn asymptotic_branch_matches_series_oracle() {
        let ctx = ctx50();
        for z in [30.0, 31.5, 42.0, 50.0, 100.0] {
            let got = bessel_j1(&ctx.real(z), &ctx);
            let want = oracle(z, 60);
            let err = (got - &want).abs() / want.abs();
            assert!(err < 1e-10, "z = {z}: relative error {err}");
        }
    }

    #[test]
    fn crossover_is_seamless() {
        let ctx = ctx50();
        let below = bessel_j1(&ctx.real(29.999), &ctx);
        let above = bessel_j1(&ctx.real(30.001), &ctx);
        let o_below = oracle(29.999, 60);
        let o_above = oracle(30.001, 60);
        assert!((below - o_below).abs() < 1e-20);
        assert!((above - o_above).abs() < 1e-20);
    }

    #[test]
    fn bounded_by_one() {
        let ctx = ctx50();
        let mut z = 0.1f64;
        while z < 2.0e5 {
            let v = bessel_j1(&ctx.real(z), &ctx);
            assert!(v.abs() <= 1, "|J1({z})| > 1");
            z *= 3.7;
        }
    }

    #[test]
    fn huge_argument_magnitude() {
        // Arguments of this size appear for x = 10^(10^4); expected value
        // pinned from an independent high-precision evaluation.
        let ctx = ctx50();
        let wide = ctx.real(362880.5);
        let got = bessel_j1(&wide, &ctx);
        let want = "0.0007807316211913888917935076448078876267522";
        let reference = Float::with_val(ctx.bits(), Float::parse(want).unwrap());
        assert!(
            (got - reference).abs() < 1e-15,
            "asymptotic value drifted from oracle"
        );
    }
}
