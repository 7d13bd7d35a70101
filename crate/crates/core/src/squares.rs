//! Counting function of numbers `a^(p^2) b^(q^2)` via the Bessel-series
//! formula, decomposed the same way as the smooth-number variants: main
//! terms in `L = log x`, two periodized Bernoulli corrections in
//! `sqrt(L / log a)` and `sqrt(L / log b)`, a double Bessel sum over `(n, m)`
//! plus two single Bessel sums capped at `K`, and the `chi/2` jump term.

use rug::ops::CompleteRound;
use rug::{Float, Integer};

use crate::analytic::{AnalyticError, EvalReport, FormulaVariant};
use crate::basis::{self, int_sqrt, XValue};
use crate::exact;
use crate::numerics::{b1_star, bessel_j1, bits_for_digits, PrecisionContext};

/// Truncation caps for the Bessel sums: `(N, M)` for the double sum and `K`
/// for the two single sums.
#[derive(Debug, Clone, Copy)]
pub struct SquaresTruncation {
    pub n_cap: u64,
    pub m_cap: u64,
    pub k_cap: u64,
}

impl SquaresTruncation {
    pub fn new(n_cap: u64, m_cap: u64, k_cap: u64) -> Self {
        Self { n_cap, m_cap, k_cap }
    }
}

#[derive(Debug, Clone)]
enum Point {
    Exact(XValue),
    Rational(u64, u64),
}

/// Formula value at an integer point `x > 1`.
pub fn n2_formula(
    a: u64,
    b: u64,
    x: &XValue,
    trunc: &SquaresTruncation,
    ctx: &PrecisionContext,
) -> Result<EvalReport, AnalyticError> {
    if x.is_one() {
        return Err(AnalyticError::RequiresAboveOne);
    }
    formula_at(a, b, Point::Exact(x.clone()), trunc, ctx)
}

/// Formula value at `num/den`, off the integer lattice (chi is zero).
pub fn n2_formula_rational(
    a: u64,
    b: u64,
    num: u64,
    den: u64,
    trunc: &SquaresTruncation,
    ctx: &PrecisionContext,
) -> Result<EvalReport, AnalyticError> {
    if num <= den {
        return Err(AnalyticError::RequiresAboveOne);
    }
    formula_at(a, b, Point::Rational(num, den), trunc, ctx)
}

fn formula_at(
    a: u64,
    b: u64,
    point: Point,
    trunc: &SquaresTruncation,
    ctx: &PrecisionContext,
) -> Result<EvalReport, AnalyticError> {
    assert!(a >= 2 && a < b, "requires 2 <= a < b");
    // Bessel arguments grow like 2 pi k sqrt(L / log a); carry their
    // magnitude on top of the working precision.
    let log10x = match &point {
        Point::Exact(x) => x.approx_log10().max(1.0),
        Point::Rational(n, d) => ((*n as f64) / (*d as f64)).log10().max(0.05),
    };
    let l_approx = log10x * std::f64::consts::LN_10;
    let kmax = trunc.k_cap.max(trunc.n_cap).max(trunc.m_cap).max(1) as f64;
    let arg_mag = 6.3 * 2.0 * kmax * (l_approx / (a as f64).ln()).sqrt().max(1.0);
    let extra = arg_mag.log10().max(0.0).ceil() as u32 + 1;
    let work = ctx.escalated(extra + 10);
    let bits = bits_for_digits(work.digits());

    let l = match &point {
        Point::Exact(x) => x.ln(bits),
        Point::Rational(n, d) => {
            let mut v = Float::with_val(bits, *n).ln();
            v -= Float::with_val(bits, *d).ln();
            v
        }
    };
    let ta = work.ln_at(a, bits).expect("a >= 2");
    let tb = work.ln_at(b, bits).expect("b >= 2");
    let pi = work.pi_at(bits);

    // sqrt(L / log a), with the jump branch decided exactly when possible.
    let root_a = (l.clone() / &ta).sqrt();
    let root_b = (l.clone() / &tb).sqrt();

    // Main terms.
    let mut main = pi.clone();
    main *= &l;
    main /= 4u32;
    main /= (ta.clone() * &tb).sqrt();
    main += (&root_a / &Float::with_val(bits, 2)).complete(bits);
    main += (&root_b / &Float::with_val(bits, 2)).complete(bits);
    main += Float::with_val(bits, 0.25);

    // Bernoulli corrections with exact square-power detection.
    let mut bern = Float::with_val(bits, 0);
    for (base, root) in [(a, &root_a), (b, &root_b)] {
        let exact_jump = match &point {
            Point::Exact(x) => {
                let e = exact::floor_log_x(base, x).expect("x >= 1");
                let p = int_sqrt(e);
                p * p == e && x.is_power_of(base, e)
            }
            Point::Rational(_, _) => false,
        };
        let arg = if exact_jump {
            Float::with_val(bits, root.clone().round())
        } else {
            root.clone()
        };
        let b1 = b1_star(&arg, &work);
        bern -= b1 / 2u32;
    }

    // Double Bessel sum, accumulated along anti-diagonals (increasing n + m,
    // then n) so the conditionally convergent tail is summed in a fixed
    // order.
    let sqrt_l = l.clone().sqrt();
    let mut double_sum = Float::with_val(bits, 0);
    let tab = ta.clone() * &tb;
    for s in 2..=(trunc.n_cap + trunc.m_cap) {
        let lo = 1.max(s.saturating_sub(trunc.m_cap));
        for n in lo..=trunc.n_cap.min(s - 1) {
            let m = s - n;
            let mut w = ta.clone();
            w *= n;
            w *= n;
            let mut w2 = tb.clone();
            w2 *= m;
            w2 *= m;
            w += w2;
            // argument: 2 pi sqrt(w L / (ta tb))
            let mut arg = w.clone();
            arg /= &tab;
            arg *= &l;
            arg.sqrt_mut();
            arg *= &pi;
            arg *= 2u32;
            let j = bessel_j1(&arg, &work);
            double_sum += j / w.sqrt();
        }
    }
    double_sum *= &sqrt_l;

    // Single Bessel sums; the prefactor root of one element pairs with the
    // Bessel argument of the other.
    let mut singles = Float::with_val(bits, 0);
    for (pref, arg_root) in [(&root_a, &root_b), (&root_b, &root_a)] {
        let mut s = Float::with_val(bits, 0);
        let mut step = arg_root.clone();
        step *= &pi;
        step *= 2u32;
        for k in 1..=trunc.k_cap {
            let arg = step.clone() * k;
            let j = bessel_j1(&arg, &work);
            s += j / k;
        }
        s *= pref;
        s /= 2u32;
        singles += s;
    }

    let chi_member = match &point {
        Point::Exact(x) => basis::is_member_squares(x, a, b),
        Point::Rational(n, d) => n % d == 0 && {
            basis::is_member_squares(&XValue::from_u64(n / d), a, b)
        },
    };
    let chi_term = if chi_member {
        Float::with_val(bits, 0.5)
    } else {
        Float::with_val(bits, 0)
    };

    let oscillatory = double_sum + singles;
    let mut total = main.clone();
    total += &bern;
    total += &oscillatory;
    total += &chi_term;
    let rounded_count = total
        .clone()
        .round()
        .to_integer()
        .expect("finite totals round to an integer");

    Ok(EvalReport {
        variant: FormulaVariant::Squares,
        digits: work.digits(),
        main_term: main,
        bernoulli_terms: bern,
        oscillatory,
        chi_term,
        total,
        rounded_count,
        terms_used: vec![trunc.n_cap, trunc.m_cap, trunc.k_cap],
        resonance_warnings: Vec::new(),
        r_used: None,
    })
}

/// Exact count of pairs, re-exported next to the formula for convenience.
pub fn exact_count(a: u64, b: u64, x: &XValue) -> Integer {
    exact::count_squares_exact(a, b, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50).unwrap()
    }

    #[test]
    fn published_rows_reproduce() {
        let t = SquaresTruncation::new(5, 5, 400);
        let r = n2_formula(2, 3, &XValue::pow10(4), &t, &ctx()).unwrap();
        let s = format!("{:.13}", r.total);
        assert_eq!(s, "11.0386135898290");
        assert_eq!(r.rounded_count, 11);

        let r = n2_formula(2, 3, &XValue::pow10(2), &t, &ctx()).unwrap();
        let s = format!("{:.13}", r.total);
        assert_eq!(s, "7.0009495066104");
        assert_eq!(r.rounded_count, 7);
    }

    #[test]
    fn largest_published_error_row_still_rounds() {
        let t = SquaresTruncation::new(9, 9, 400);
        let r = n2_formula(2, 3, &XValue::pow10(7), &t, &ctx()).unwrap();
        let s = format!("{:.15}", r.total);
        assert_eq!(s, "18.408421860888305");
        assert_eq!(r.rounded_count, 18);
    }

    #[test]
    fn off_lattice_point_reproduces() {
        let t = SquaresTruncation::new(1, 1, 400);
        let r = n2_formula_rational(2, 3, 11, 10, &t, &ctx()).unwrap();
        let s = format!("{:.15}", r.total);
        assert_eq!(s, "1.077194794603378");
        assert_eq!(r.chi_term, 0);
        assert_eq!(r.rounded_count, 1);
    }

    #[test]
    fn rejects_x_equal_one() {
        let t = SquaresTruncation::new(1, 1, 1);
        assert!(matches!(
            n2_formula(2, 3, &XValue::from_u64(1), &t, &ctx()),
            Err(AnalyticError::RequiresAboveOne)
        ));
    }

    #[test]
    fn jump_branch_taken_at_exact_square_powers() {
        // x = 2^9 = a^(3^2): the first Bernoulli argument is an exact
        // integer, so its correction must vanish.
        let t = SquaresTruncation::new(3, 3, 50);
        let r = n2_formula(2, 3, &XValue::from_u64(512), &t, &ctx()).unwrap();
        assert_eq!(r.chi_term, 0.5f64);
        assert_eq!(exact_count(2, 3, &XValue::from_u64(512)), 9);
    }

    #[test]
    fn total_tracks_the_step_function() {
        // Sanity: across a jump the formula value climbs with the count.
        let t = SquaresTruncation::new(6, 6, 400);
        let before = n2_formula(2, 3, &XValue::from_u64(161), &t, &ctx()).unwrap();
        let after = n2_formula(2, 3, &XValue::from_u64(163), &t, &ctx()).unwrap();
        assert_eq!(before.rounded_count, 7);
        assert_eq!(after.rounded_count, 8);
        assert!(after.total > before.total);
    }
}
