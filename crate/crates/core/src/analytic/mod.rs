//! Analytic counting-formula evaluation: polynomial main term from the
//! residue engine (or its transcribed closed forms), periodized Bernoulli
//! corrections, truncated oscillatory series in the variant's grouping, and
//! the `+1/2 chi` jump correction, assembled into a decomposed report.

pub mod oscillatory;
pub mod residue;

pub use oscillatory::{Grouping, ResonanceWarning};

use rug::ops::{CompleteRound, Pow};
use rug::{Float, Integer};

use crate::basis::{self, Basis, XValue};
use crate::numerics::{b1_star, b2_frac, bits_for_digits, frac_log_ratio, PrecisionContext};
use oscillatory::{Resonant, SeriesSum};

/// One evaluable formula shape. The `...Cot` variants use the all-cotangent
/// grouping with residue-engine main terms; the plain variants use the
/// grouping that reproduces the corresponding published table together with
/// hand-transcribed main terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaVariant {
    /// One element: `L/log a + 1/2 - B1* + chi/2`.
    Single,
    /// Two elements, double cosine sum over `(n, m)` with the second-order
    /// Bernoulli corrections.
    DoubleSum,
    /// Two elements, shifted-cosine series (the Hardy-Littlewood shape).
    Hl2,
    /// Two elements, all-cotangent grouping.
    Hl2Cot,
    /// Three elements, shifted singles + plain double-cotangent terms.
    Triple,
    /// Three elements, all-cotangent grouping.
    TripleCot,
    /// Four elements, all-cotangent grouping combined pointwise.
    Quad,
    /// Four elements, all-cotangent grouping accumulated series by series.
    QuadCot,
    /// Any arity up to 12, all-cotangent grouping via the generic engine.
    General,
    /// Two elements with squared exponents; evaluated by the squares module.
    Squares,
}

impl FormulaVariant {
    pub fn tag(&self) -> &'static str {
        match self {
            FormulaVariant::Single => "single",
            FormulaVariant::DoubleSum => "double-sum",
            FormulaVariant::Hl2 => "hl2",
            FormulaVariant::Hl2Cot => "hl2-cot",
            FormulaVariant::Triple => "triple",
            FormulaVariant::TripleCot => "triple-cot",
            FormulaVariant::Quad => "quad",
            FormulaVariant::QuadCot => "quad-cot",
            FormulaVariant::General => "general",
            FormulaVariant::Squares => "squares",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "single" => FormulaVariant::Single,
            "double-sum" => FormulaVariant::DoubleSum,
            "hl2" => FormulaVariant::Hl2,
            "hl2-cot" => FormulaVariant::Hl2Cot,
            "triple" => FormulaVariant::Triple,
            "triple-cot" => FormulaVariant::TripleCot,
            "quad" => FormulaVariant::Quad,
            "quad-cot" => FormulaVariant::QuadCot,
            "general" => FormulaVariant::General,
            "squares" => FormulaVariant::Squares,
            _ => return None,
        })
    }

    pub fn arity_ok(&self, n: usize) -> bool {
        match self {
            FormulaVariant::Single => n == 1,
            FormulaVariant::DoubleSum | FormulaVariant::Hl2 | FormulaVariant::Hl2Cot => n == 2,
            FormulaVariant::Triple | FormulaVariant::TripleCot => n == 3,
            FormulaVariant::Quad | FormulaVariant::QuadCot => n == 4,
            FormulaVariant::General => (1..=12).contains(&n),
            FormulaVariant::Squares => n == 2,
        }
    }

    /// Weight of the `-sum B1*` block. In the all-cotangent grouping every
    /// unit of the pure sine series is absorbed (`1/2^(n-1)`); shifting the
    /// single-cotangent terms re-emits one unit per ordered pair, giving
    /// `n/2^(n-1)`; the double cosine sum carries `1/2` per element.
    fn bernoulli_weight(&self, n: usize, bits: u32) -> Float {
        let pow = Float::with_val(bits, 2u32).pow((n as u32).saturating_sub(1));
        match self {
            FormulaVariant::Single => Float::with_val(bits, 1),
            FormulaVariant::DoubleSum => Float::with_val(bits, 0.5),
            FormulaVariant::Hl2 | FormulaVariant::Triple => Float::with_val(bits, n as u32) / pow,
            FormulaVariant::Hl2Cot
            | FormulaVariant::TripleCot
            | FormulaVariant::Quad
            | FormulaVariant::QuadCot
            | FormulaVariant::General => Float::with_val(bits, 1) / pow,
            FormulaVariant::Squares => Float::with_val(bits, 0.5),
        }
    }

    fn requires_x_above_one(&self) -> bool {
        matches!(self, FormulaVariant::DoubleSum)
    }
}

/// Series truncation parameters.
#[derive(Debug, Clone, Copy, Default)]
pub struct TruncationSpec {
    /// Balanced truncation parameter: family `m` is capped at
    /// `floor(R log a_m)`.
    pub r: Option<f64>,
    /// Caps for the double cosine sum.
    pub double_sum_caps: Option<(u64, u64)>,
    /// Double `R` (or the caps) until two successive totals differ by less
    /// than 1e-6, up to `R = 10^6`.
    pub adaptive: bool,
}

impl TruncationSpec {
    pub fn balanced(r: f64) -> Self {
        Self {
            r: Some(r),
            ..Self::default()
        }
    }

    pub fn caps(n: u64, m: u64) -> Self {
        Self {
            double_sum_caps: Some((n, m)),
            ..Self::default()
        }
    }

    pub fn adaptive() -> Self {
        Self {
            adaptive: true,
            ..Self::default()
        }
    }
}

/// Decomposed formula value. `total` is exactly the sum of the four parts.
#[derive(Debug)]
pub struct EvalReport {
    pub variant: FormulaVariant,
    /// Working decimal digits actually used (after any escalation).
    pub digits: u32,
    pub main_term: Float,
    pub bernoulli_terms: Float,
    pub oscillatory: Float,
    pub chi_term: Float,
    pub total: Float,
    /// Nearest integer to `total`; under the jump convention this recovers
    /// the exact count whenever the truncation error is below one half.
    pub rounded_count: Integer,
    pub terms_used: Vec<u64>,
    pub resonance_warnings: Vec<ResonanceWarning>,
    /// The balanced-truncation parameter that produced the report (set by
    /// adaptive mode).
    pub r_used: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum AnalyticError {
    #[error("variant {variant} expects a different arity than the {got}-element basis")]
    ArityMismatch { variant: &'static str, got: usize },
    #[error("this variant is defined for x > 1 only")]
    RequiresAboveOne,
    #[error("basis is not pairwise multiplicatively independent; the sine denominators would vanish")]
    NotIndependent,
    #[error("no truncation given: need R, caps, or adaptive mode")]
    MissingTruncation,
    #[error("resonant denominator in pole family {family} at k = {k}; precision escalation did not clear it")]
    Resonant { family: usize, k: u64 },
    #[error("the squares variant is evaluated through the squares module")]
    SquaresVariant,
}

/// An evaluation point: an exact integer (with its membership jump term) or
/// an off-lattice rational used when reproducing table rows that were
/// computed just above a jump.
#[derive(Debug, Clone)]
pub enum EvalPoint {
    Exact(XValue),
    /// `num/den`, never a semigroup member; chi is identically zero.
    Rational(u64, u64),
}

impl EvalPoint {
    fn approx_log10(&self) -> f64 {
        match self {
            EvalPoint::Exact(x) => x.approx_log10(),
            EvalPoint::Rational(n, d) => (*n as f64).log10() - (*d as f64).log10(),
        }
    }

    fn is_one(&self) -> bool {
        match self {
            EvalPoint::Exact(x) => x.is_one(),
            EvalPoint::Rational(n, d) => n == d,
        }
    }

    fn ln(&self, bits: u32) -> Float {
        match self {
            EvalPoint::Exact(x) => x.ln(bits),
            EvalPoint::Rational(n, d) => {
                let num = Float::with_val(bits, *n).ln();
                let den = Float::with_val(bits, *d).ln();
                num - den
            }
        }
    }
}

/// Evaluates `variant` at an integer point.
pub fn evaluate(
    variant: FormulaVariant,
    basis: &Basis,
    x: &XValue,
    trunc: &TruncationSpec,
    ctx: &PrecisionContext,
) -> Result<EvalReport, AnalyticError> {
    evaluate_point(variant, basis, &EvalPoint::Exact(x.clone()), trunc, ctx)
}

/// Evaluates `variant` at `num/den`; the jump term is zero off the lattice.
pub fn evaluate_rational(
    variant: FormulaVariant,
    basis: &Basis,
    num: u64,
    den: u64,
    trunc: &TruncationSpec,
    ctx: &PrecisionContext,
) -> Result<EvalReport, AnalyticError> {
    evaluate_point(variant, basis, &EvalPoint::Rational(num, den), trunc, ctx)
}

pub fn evaluate_point(
    variant: FormulaVariant,
    basis: &Basis,
    point: &EvalPoint,
    trunc: &TruncationSpec,
    ctx: &PrecisionContext,
) -> Result<EvalReport, AnalyticError> {
    let n = basis.arity();
    if !variant.arity_ok(n) {
        return Err(AnalyticError::ArityMismatch {
            variant: variant.tag(),
            got: n,
        });
    }
    if n >= 2 && !basis.is_multiplicatively_independent() {
        return Err(AnalyticError::NotIndependent);
    }
    if variant.requires_x_above_one() && point.is_one() {
        return Err(AnalyticError::RequiresAboveOne);
    }
    if variant == FormulaVariant::Squares {
        return Err(AnalyticError::SquaresVariant);
    }
    if trunc.adaptive {
        return evaluate_adaptive(variant, basis, point, ctx);
    }
    match variant {
        FormulaVariant::DoubleSum => {
            let (nc, mc) = trunc
                .double_sum_caps
                .ok_or(AnalyticError::MissingTruncation)?;
            evaluate_sized(variant, basis, point, SizedTruncation::Caps(nc, mc), ctx)
        }
        FormulaVariant::Single => {
            // No oscillatory series; any truncation is acceptable.
            evaluate_sized(variant, basis, point, SizedTruncation::R(0.0), ctx)
        }
        _ => {
            let r = trunc.r.ok_or(AnalyticError::MissingTruncation)?;
            evaluate_sized(variant, basis, point, SizedTruncation::R(r), ctx)
        }
    }
}

#[derive(Clone, Copy)]
enum SizedTruncation {
    R(f64),
    Caps(u64, u64),
}

fn evaluate_adaptive(
    variant: FormulaVariant,
    basis: &Basis,
    point: &EvalPoint,
    ctx: &PrecisionContext,
) -> Result<EvalReport, AnalyticError> {
    let tol = 1e-6f64;
    let mut r = 8.0f64;
    let sized = |r: f64| match variant {
        FormulaVariant::DoubleSum => SizedTruncation::Caps(r as u64, r as u64),
        _ => SizedTruncation::R(r),
    };
    let mut prev = evaluate_sized(variant, basis, point, sized(r), ctx)?;
    loop {
        let next_r = r * 2.0;
        if next_r > 1_000_000.0 {
            prev.r_used = Some(r);
            return Ok(prev);
        }
        let next = evaluate_sized(variant, basis, point, sized(next_r), ctx)?;
        let delta = (next.total.clone() - &prev.total).abs();
        if delta < tol {
            let mut done = next;
            done.r_used = Some(next_r);
            return Ok(done);
        }
        r = next_r;
        prev = next;
    }
}

fn evaluate_sized(
    variant: FormulaVariant,
    basis: &Basis,
    point: &EvalPoint,
    sized: SizedTruncation,
    ctx: &PrecisionContext,
) -> Result<EvalReport, AnalyticError> {
    match evaluate_once(variant, basis, point, sized, ctx) {
        Ok(report) => Ok(report),
        Err(Resonant { .. }) => {
            // One-shot escalation doubles the working digits.
            let escalated = ctx.escalated(ctx.digits());
            evaluate_once(variant, basis, point, sized, &escalated)
                .map_err(|r| AnalyticError::Resonant {
                    family: r.family,
                    k: r.k,
                })
        }
    }
}

/// Working digits for the evaluation: the fractional parts of the log ratios
/// lose their leading digits to the integer part, which for huge `x` has
/// `log10(log_a1 x)` digits of its own.
fn working_digits(point: &EvalPoint, basis: &Basis, ctx: &PrecisionContext) -> u32 {
    let log10x = point.approx_log10().max(1.0);
    let ratio = log10x * std::f64::consts::LN_10 / (basis.elements()[0] as f64).ln();
    let magnitude = ratio.log10().max(0.0).ceil() as u32;
    ctx.digits() + magnitude + 10
}

fn evaluate_once(
    variant: FormulaVariant,
    basis: &Basis,
    point: &EvalPoint,
    sized: SizedTruncation,
    ctx: &PrecisionContext,
) -> Result<EvalReport, Resonant> {
    let digits = working_digits(point, basis, ctx);
    let work = ctx.escalated(digits - ctx.digits());
    let elements = basis.elements();
    let n = elements.len();

    // Angle magnitudes determine the extra precision the trigonometric
    // arguments must carry.
    let caps: Vec<u64> = match sized {
        SizedTruncation::R(r) => oscillatory::family_caps(elements, r, &work),
        SizedTruncation::Caps(nc, mc) => vec![nc, mc],
    };
    let max_cap = caps.iter().copied().max().unwrap_or(0);
    let l_mag = (point.approx_log10().max(1.0) * std::f64::consts::LN_10).max(1.0);
    let angle = 6.3 * (max_cap.max(1) as f64) * l_mag / (elements[0] as f64).ln();
    let angle_digits = angle.log10().max(0.0).ceil() as u32 + 1;
    let bits = bits_for_digits(digits + angle_digits);

    let l = point.ln(bits);

    // chi: membership jump term.
    let chi_member = match point {
        EvalPoint::Exact(x) => basis::is_member(x, basis),
        EvalPoint::Rational(num, den) => num % den == 0 && {
            let v = XValue::from_u64(num / den);
            basis::is_member(&v, basis)
        },
    };
    let chi_term = if chi_member {
        Float::with_val(bits, 0.5)
    } else {
        Float::with_val(bits, 0)
    };

    // Main term.
    let ts: Vec<Float> = elements
        .iter()
        .map(|&a| work.ln_at(a, bits).expect("elements >= 2"))
        .collect();
    let main_term = match variant {
        FormulaVariant::Single => residue::main_term_1(&ts[0], &l),
        FormulaVariant::DoubleSum | FormulaVariant::Hl2 => {
            residue::main_term_2(&ts[0], &ts[1], &l)
        }
        FormulaVariant::Triple => {
            residue::main_term_3(&[ts[0].clone(), ts[1].clone(), ts[2].clone()], &l)
        }
        FormulaVariant::Quad => residue::main_term_4(
            &[ts[0].clone(), ts[1].clone(), ts[2].clone(), ts[3].clone()],
            &l,
        ),
        FormulaVariant::Hl2Cot
        | FormulaVariant::TripleCot
        | FormulaVariant::QuadCot
        | FormulaVariant::General => residue::residue_main_term(basis, &l, &work),
        FormulaVariant::Squares => unreachable!("routed to the squares module"),
    };

    // Bernoulli corrections.
    let weight = variant.bernoulli_weight(n, bits);
    let mut bernoulli_terms = Float::with_val(bits, 0);
    for (i, &a) in elements.iter().enumerate() {
        let frac = log_ratio_fraction(point, a, &ts[i], &l, &work);
        let b1 = b1_star(&frac, &work);
        bernoulli_terms -= (&weight * &b1).complete(bits);
        if variant == FormulaVariant::DoubleSum {
            let other = &ts[1 - i];
            let b2 = b2_frac(&frac, &work);
            let mut coeff = ts[i].clone();
            coeff /= other;
            coeff /= 2u32;
            bernoulli_terms -= coeff * b2;
        }
    }

    // Oscillatory series in the variant's grouping.
    let series: SeriesSum = match variant {
        FormulaVariant::Single => SeriesSum {
            value: Float::with_val(bits, 0),
            per_family_terms: vec![0],
            warnings: Vec::new(),
        },
        FormulaVariant::DoubleSum => {
            oscillatory::double_cosine_sum(elements, &l, caps[0], caps[1], &work)?
        }
        FormulaVariant::Hl2 => oscillatory::two_shifted(elements, &l, &caps, &work)?,
        FormulaVariant::Hl2Cot => oscillatory::two_cot(elements, &l, &caps, &work)?,
        FormulaVariant::Triple => oscillatory::three_hybrid(elements, &l, &caps, &work)?,
        FormulaVariant::TripleCot => oscillatory::three_cot(elements, &l, &caps, &work)?,
        FormulaVariant::Quad => oscillatory::four_cot_pointwise(elements, &l, &caps, &work)?,
        FormulaVariant::QuadCot => oscillatory::four_cot_by_series(elements, &l, &caps, &work)?,
        FormulaVariant::General => {
            oscillatory::general_series(elements, &l, &caps, Grouping::PlainCot, &work)?
        }
        FormulaVariant::Squares => unreachable!("routed to the squares module"),
    };

    let mut total = main_term.clone();
    total += &bernoulli_terms;
    total += &series.value;
    total += &chi_term;
    let rounded_count = total
        .clone()
        .round()
        .to_integer()
        .expect("finite totals round to an integer");

    Ok(EvalReport {
        variant,
        digits,
        main_term,
        bernoulli_terms,
        oscillatory: series.value,
        chi_term,
        total,
        rounded_count,
        terms_used: series.per_family_terms,
        resonance_warnings: series.warnings,
        r_used: match sized {
            SizedTruncation::R(r) if r > 0.0 => Some(r),
            _ => None,
        },
    })
}

/// Fractional part of `L / log a`, with the exact-power branch decided by
/// big-integer comparison for exact points.
fn log_ratio_fraction(
    point: &EvalPoint,
    a: u64,
    t: &Float,
    l: &Float,
    work: &PrecisionContext,
) -> Float {
    match point {
        EvalPoint::Exact(x) => {
            let (_, frac) = frac_log_ratio(x, a, work).expect("a >= 2 and x >= 1");
            frac
        }
        EvalPoint::Rational(_, _) => {
            let ratio = (l / t).complete(l.prec());
            crate::numerics::fractional_part(&ratio, work.bits())
        }
    }
}

/// Truncated oscillatory series for the general formula, exposed with its
/// grouping as an explicit argument. Returns the series value together with
/// the per-family term counts and any resonance warnings.
pub fn oscillatory_general(
    basis: &Basis,
    x: &XValue,
    r: f64,
    grouping: Grouping,
    ctx: &PrecisionContext,
) -> Result<(Float, Vec<u64>, Vec<ResonanceWarning>), AnalyticError> {
    if basis.arity() >= 2 && !basis.is_multiplicatively_independent() {
        return Err(AnalyticError::NotIndependent);
    }
    let caps = oscillatory::family_caps(basis.elements(), r, ctx);
    let max_cap = caps.iter().copied().max().unwrap_or(0);
    let l_mag = (x.approx_log10().max(1.0) * std::f64::consts::LN_10).max(1.0);
    let angle = 6.3 * (max_cap.max(1) as f64) * l_mag / (basis.elements()[0] as f64).ln();
    let angle_digits = angle.log10().max(0.0).ceil() as u32 + 1;
    let bits = bits_for_digits(ctx.digits() + angle_digits);
    let l = x.ln(bits);
    match oscillatory::general_series(basis.elements(), &l, &caps, grouping, ctx) {
        Ok(s) => Ok((s.value, s.per_family_terms, s.warnings)),
        Err(r) => Err(AnalyticError::Resonant {
            family: r.family,
            k: r.k,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50).unwrap()
    }

    fn total_str(report: &EvalReport, digits: usize) -> String {
        format!("{:.*}", digits, report.total)
    }

    #[test]
    fn arity_is_enforced() {
        let b = Basis::new(&[2, 3]).unwrap();
        let err = evaluate(
            FormulaVariant::Triple,
            &b,
            &XValue::from_u64(10),
            &TruncationSpec::balanced(5.0),
            &ctx(),
        )
        .unwrap_err();
        assert!(matches!(err, AnalyticError::ArityMismatch { .. }));
    }

    #[test]
    fn double_sum_rejects_x_equal_one() {
        let b = Basis::new(&[2, 3]).unwrap();
        let err = evaluate(
            FormulaVariant::DoubleSum,
            &b,
            &XValue::from_u64(1),
            &TruncationSpec::caps(4, 4),
            &ctx(),
        )
        .unwrap_err();
        assert!(matches!(err, AnalyticError::RequiresAboveOne));
    }

    #[test]
    fn hl2_reproduces_published_digits() {
        let b = Basis::new(&[2, 3]).unwrap();
        let r = evaluate(
            FormulaVariant::Hl2,
            &b,
            &XValue::from_u64(10),
            &TruncationSpec::balanced(6.0),
            &ctx(),
        )
        .unwrap();
        let s = total_str(&r, 18);
        assert_eq!(s, "7.010395367925806528");
        assert_eq!(r.rounded_count, 7);
        assert_eq!(r.chi_term, 0);
    }

    #[test]
    fn hl2_at_one_includes_jump_term() {
        let b = Basis::new(&[2, 3]).unwrap();
        let r = evaluate(
            FormulaVariant::Hl2,
            &b,
            &XValue::from_u64(1),
            &TruncationSpec::balanced(1.0),
            &ctx(),
        )
        .unwrap();
        assert_eq!(r.chi_term, 0.5f64);
        let s = total_str(&r, 18);
        assert_eq!(s, "1.004082812812447944");
    }

    #[test]
    fn single_element_is_exact_at_powers() {
        let b = Basis::new(&[2]).unwrap();
        let r = evaluate(
            FormulaVariant::Single,
            &b,
            &XValue::from_u64(8),
            &TruncationSpec::default(),
            &ctx(),
        )
        .unwrap();
        assert_eq!(r.main_term, 3.5f64);
        assert_eq!(r.chi_term, 0.5f64);
        assert_eq!(r.rounded_count, 4);
        assert_eq!(r.total, 4);
    }

    #[test]
    fn double_sum_matches_published_row() {
        let b = Basis::new(&[2, 3]).unwrap();
        let r = evaluate(
            FormulaVariant::DoubleSum,
            &b,
            &XValue::from_u64(10),
            &TruncationSpec::caps(22, 22),
            &ctx(),
        )
        .unwrap();
        let s = total_str(&r, 16);
        assert_eq!(s, "7.0071497373839232");
        // printed table shows 7.0071497373839231 (last digit truncated)
        assert_eq!(r.rounded_count, 7);
    }

    #[test]
    fn quad_matches_published_row() {
        let b = Basis::new(&[2, 3, 5, 7]).unwrap();
        let r = evaluate(
            FormulaVariant::Quad,
            &b,
            &XValue::from_u64(100),
            &TruncationSpec::balanced(20.0),
            &ctx(),
        )
        .unwrap();
        // The printed row continues ...52216; the recomputation at full
        // precision deviates only below 1e-34.
        let s = total_str(&r, 30);
        assert_eq!(s, "46.036685214917263751302382938865");
    }

    #[test]
    fn triple_matches_published_row() {
        let b = Basis::new(&[2, 3, 5]).unwrap();
        let r = evaluate(
            FormulaVariant::Triple,
            &b,
            &XValue::from_u64(1000),
            &TruncationSpec::balanced(40.0),
            &ctx(),
        )
        .unwrap();
        let s = total_str(&r, 26);
        assert_eq!(s, "86.01831146911104727455077198");
        assert_eq!(r.chi_term, 0.5f64); // 1000 = 2^3 5^3 is a member
    }

    #[test]
    fn general_adaptive_recovers_count() {
        let b = Basis::new(&[2, 3]).unwrap();
        let r = evaluate(
            FormulaVariant::General,
            &b,
            &XValue::pow10(6),
            &TruncationSpec::adaptive(),
            &ctx(),
        )
        .unwrap();
        assert_eq!(r.rounded_count, 142);
        assert!(r.r_used.is_some());
    }

    #[test]
    fn report_parts_sum_to_total() {
        let b = Basis::new(&[2, 3, 5]).unwrap();
        let r = evaluate(
            FormulaVariant::TripleCot,
            &b,
            &XValue::from_u64(720),
            &TruncationSpec::balanced(30.0),
            &ctx(),
        )
        .unwrap();
        let mut sum = r.main_term.clone();
        sum += &r.bernoulli_terms;
        sum += &r.oscillatory;
        sum += &r.chi_term;
        assert_eq!(sum, r.total);
        assert_eq!(r.chi_term, 0.5f64); // 720 = 2^4 3^2 5
    }
}
