//! Main-term computation: the residue at the origin of
//! `x^s / (s prod_k (1 - a_k^{-s}))`, evaluated through formal truncated
//! series arithmetic, plus independently transcribed closed-form polynomials
//! for two, three and four basis elements used as a cross-check.
//!
//! Writing `1/(1 - e^{-ts}) = g(ts)/(ts)` with `g(z) = z/(1 - e^{-z})`, the
//! integrand becomes `e^{Ls} prod_k g(t_k s) / (s^{n+1} prod_k t_k)`, so the
//! residue is the degree-`n` coefficient of `e^{Ls} prod_k g(t_k s)` divided
//! by `prod_k t_k`. The coefficients of `g` are Bernoulli numbers in the
//! `B_1 = +1/2` convention.

use rug::ops::{CompleteRound, Pow};
use rug::{Complete, Float, Integer, Rational};

use crate::basis::Basis;
use crate::numerics::PrecisionContext;

/// Truncated formal series `s^{-order} * sum_j coeffs[j] s^j`.
///
/// Multiplication is a full convolution through the kept degree, so products
/// are exact through that degree.
#[derive(Debug, Clone)]
pub struct LaurentSeries {
    pub order: i64,
    pub coeffs: Vec<Float>,
}

impl LaurentSeries {
    pub fn new(order: i64, coeffs: Vec<Float>) -> Self {
        Self { order, coeffs }
    }

    pub fn mul_truncated(&self, other: &Self, keep_degree: usize) -> Self {
        let bits = self
            .coeffs
            .first()
            .or_else(|| other.coeffs.first())
            .map(Float::prec)
            .unwrap_or(64);
        let mut coeffs = vec![Float::with_val(bits, 0); keep_degree + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(keep_degree + 1) {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > keep_degree {
                    break;
                }
                coeffs[i + j] += (a * b).complete(bits);
            }
        }
        Self {
            order: self.order + other.order,
            coeffs,
        }
    }

    /// Coefficient of `s^power` counting the pole order, i.e. of the series
    /// index `power + order`.
    pub fn coefficient(&self, power: i64) -> Option<&Float> {
        usize::try_from(power + self.order)
            .ok()
            .and_then(|i| self.coeffs.get(i))
    }
}

/// Exact rational coefficients `beta_j` of `z/(1 - e^{-z})` through degree
/// `deg`: 1, 1/2, 1/12, 0, -1/720, ... Generated from the Bernoulli
/// recurrence rather than hardcoded; degrees up to 12 are supported, which
/// covers every basis arity the oscillatory engine accepts.
pub fn gen_function_coeffs(deg: usize) -> Vec<Rational> {
    assert!(deg <= 12, "basis arity above 12 is unsupported");
    // Bernoulli numbers, B1 = -1/2 convention, via
    // sum_{j=0}^{m} C(m+1, j) B_j = 0.
    let mut bernoulli: Vec<Rational> = Vec::with_capacity(deg + 1);
    for m in 0..=deg {
        if m == 0 {
            bernoulli.push(Rational::from(1));
            continue;
        }
        let mut acc = Rational::new();
        for (j, b) in bernoulli.iter().enumerate() {
            let c = Integer::binomial_u(u32::try_from(m + 1).unwrap(), u32::try_from(j).unwrap())
                .complete();
            acc += b.clone() * c;
        }
        acc /= -Rational::from(m as u32 + 1);
        bernoulli.push(acc);
    }
    let mut factorial = Integer::from(1);
    bernoulli
        .into_iter()
        .enumerate()
        .map(|(j, b)| {
            if j > 0 {
                factorial *= j as u32;
            }
            let mut beta = b / factorial.clone();
            if j == 1 {
                beta = -beta; // flip to the B1 = +1/2 convention
            }
            beta
        })
        .collect()
}

/// The polynomial-in-`log x` main term shared by every formula variant.
pub fn residue_main_term(basis: &Basis, l: &Float, ctx: &PrecisionContext) -> Float {
    let n = basis.arity();
    let bits = l.prec();
    let betas = gen_function_coeffs(n);
    let mut product = LaurentSeries::new(0, vec![Float::with_val(bits, 1)]);
    let mut t_product = Float::with_val(bits, 1);
    for &a in basis.elements() {
        let t = ctx.ln_at(a, bits).expect("basis elements are >= 2");
        let coeffs: Vec<Float> = betas
            .iter()
            .enumerate()
            .map(|(j, beta)| {
                let tj = t.clone().pow(u32::try_from(j).unwrap());
                Float::with_val(bits, beta) * tj
            })
            .collect();
        // g(t s) / (t s) contributes pole order 1 and series part g(t s).
        let factor = LaurentSeries::new(1, coeffs);
        product = product.mul_truncated(&factor, n);
        t_product *= t;
    }
    // Multiply by e^{Ls} (with the extra 1/s of the integrand the total pole
    // order is n+1) and read off the residue.
    let mut result = Float::with_val(bits, 0);
    let mut l_power = Float::with_val(bits, 1);
    let mut factorial = Float::with_val(bits, 1);
    for j in 0..=n {
        if j > 0 {
            l_power *= l;
            factorial *= j as u32;
        }
        let c = &product.coeffs[n - j];
        result += c * l_power.clone() / factorial.clone();
    }
    result / t_product
}

/// Closed-form main term for one element: `L/t + 1/2`.
pub fn main_term_1(t: &Float, l: &Float) -> Float {
    let bits = l.prec();
    (l / t).complete(bits) + Float::with_val(bits, 0.5)
}

/// Closed-form main term for two elements, in the printed
/// `log(ax) log(bx)` shape.
pub fn main_term_2(ta: &Float, tb: &Float, l: &Float) -> Float {
    let bits = l.prec();
    let half = Float::with_val(bits, 0.5);
    let quarter = Float::with_val(bits, 0.25);
    let twelfth = Float::with_val(bits, 12);
    (l + ta).complete(bits) * (l + tb).complete(bits) / (ta * tb).complete(bits) * &half
        + (ta / tb).complete(bits) / &twelfth
        + (tb / ta).complete(bits) / &twelfth
        - quarter
}

/// Closed-form main term for three elements, transcribed term by term.
pub fn main_term_3(ts: &[Float; 3], l: &Float) -> Float {
    let bits = l.prec();
    let [ta, tb, tc] = ts;
    let l2 = l.clone().square();
    let l3 = l2.clone() * l;
    let mut v = Float::with_val(bits, 0);
    v += l3 / (ta * tb).complete(bits) / tc / 6u32;
    v += l2.clone() / (ta * tb).complete(bits) / 4u32;
    v += l2.clone() / (ta * tc).complete(bits) / 4u32;
    v += l2 / (tb * tc).complete(bits) / 4u32;
    v += (l / ta).complete(bits) / 4u32;
    v += (l / tb).complete(bits) / 4u32;
    v += (l / tc).complete(bits) / 4u32;
    v += (ta * l).complete(bits) / (tb * tc).complete(bits) / 12u32;
    v += (tb * l).complete(bits) / (ta * tc).complete(bits) / 12u32;
    v += (tc * l).complete(bits) / (ta * tb).complete(bits) / 12u32;
    v += (ta / tb).complete(bits) / 24u32;
    v += (ta / tc).complete(bits) / 24u32;
    v += (tb / ta).complete(bits) / 24u32;
    v += (tb / tc).complete(bits) / 24u32;
    v += (tc / ta).complete(bits) / 24u32;
    v += (tc / tb).complete(bits) / 24u32;
    v += Float::with_val(bits, 1) / 8u32;
    v
}

/// Closed-form main term for four elements, transcribed term by term from
/// the general-basis statement (whose specialized corollary contains a known
/// term typo and is deliberately not used).
pub fn main_term_4(ts: &[Float; 4], l: &Float) -> Float {
    let bits = l.prec();
    let [ta, tb, tc, td] = ts;
    let l2 = l.clone().square();
    let l3 = l2.clone() * l;
    let l4 = l2.clone().square();
    let mut v = Float::with_val(bits, 0);
    v += l4 / (ta * tb).complete(bits) / (tc * td).complete(bits) / 24u32;
    for (x, y, z) in [(ta, tb, tc), (ta, tb, td), (ta, tc, td), (tb, tc, td)] {
        v += l3.clone() / (x * y).complete(bits) / z / 12u32;
    }
    for (num, d1, d2, d3) in [
        (ta, tb, tc, td),
        (tb, ta, tc, td),
        (tc, ta, tb, td),
        (td, ta, tb, tc),
    ] {
        v += (num * &l2).complete(bits) / (d1 * d2).complete(bits) / d3 / 24u32;
    }
    for (x, y) in [(ta, tb), (ta, tc), (ta, td), (tb, tc), (tb, td), (tc, td)] {
        v += l2.clone() / (x * y).complete(bits) / 8u32;
    }
    for t in [ta, tb, tc, td] {
        v += (l / t).complete(bits) / 8u32;
    }
    for (num, d1, d2) in [
        (ta, tb, tc),
        (ta, tb, td),
        (ta, tc, td),
        (tb, ta, tc),
        (tb, ta, td),
        (tb, tc, td),
        (tc, ta, tb),
        (tc, ta, td),
        (tc, tb, td),
        (td, ta, tb),
        (td, ta, tc),
        (td, tb, tc),
    ] {
        v += (num * l).complete(bits) / (d1 * d2).complete(bits) / 24u32;
    }
    v += Float::with_val(bits, 1) / 16u32;
    for (num, den) in [
        (ta, tb),
        (ta, tc),
        (ta, td),
        (tb, ta),
        (tb, tc),
        (tb, td),
        (tc, ta),
        (tc, tb),
        (tc, td),
        (td, ta),
        (td, tb),
        (td, tc),
    ] {
        v += (num / den).complete(bits) / 48u32;
    }
    for (n1, n2, d1, d2) in [
        (ta, tb, tc, td),
        (ta, tc, tb, td),
        (ta, td, tb, tc),
        (tb, tc, ta, td),
        (tb, td, ta, tc),
        (tc, td, ta, tb),
    ] {
        v += (n1 * n2).complete(bits) / (d1 * d2).complete(bits) / 144u32;
    }
    for (num, d1, d2, d3) in [
        (ta, tb, tc, td),
        (tb, ta, tc, td),
        (tc, ta, tb, td),
        (td, ta, tb, tc),
    ] {
        let cube = num.clone().pow(3u32);
        v -= cube / (d1 * d2).complete(bits) / d3 / 720u32;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bits_for_digits;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50).unwrap()
    }

    #[test]
    fn generating_coefficients_start_correctly() {
        let betas = gen_function_coeffs(6);
        assert_eq!(betas[0], Rational::from(1));
        assert_eq!(betas[1], Rational::from((1, 2)));
        assert_eq!(betas[2], Rational::from((1, 12)));
        assert_eq!(betas[3], Rational::from(0));
        assert_eq!(betas[4], Rational::from((-1i32, 720)));
        assert_eq!(betas[5], Rational::from(0));
        assert_eq!(betas[6], Rational::from((1, 30240)));
    }

    #[test]
    fn residue_single_element_power() {
        let ctx = ctx();
        let basis = Basis::new(&[2]).unwrap();
        let l = ctx.ln(8).unwrap();
        let got = residue_main_term(&basis, &l, &ctx);
        assert!((got - 3.5f64).abs() < 1e-45);
    }

    #[test]
    fn residue_two_elements_at_one() {
        let ctx = ctx();
        let basis = Basis::new(&[2, 3]).unwrap();
        let l = ctx.real(0);
        let got = residue_main_term(&basis, &l, &ctx);
        // 1/4 + ln2/(12 ln3) + ln3/(12 ln2), frozen from direct evaluation.
        let want = "0.43465768785771780154610550485754811358828833731870";
        let reference = Float::with_val(ctx.bits(), Float::parse(want).unwrap());
        assert!((got - reference).abs() < 1e-45);
    }

    #[test]
    fn residue_matches_transcriptions() {
        let ctx = ctx();
        let bits = bits_for_digits(50);
        let cases2 = [[2u64, 3], [3, 5], [6, 35]];
        for elems in cases2 {
            let basis = Basis::new(&elems).unwrap();
            for x in [2u64, 10, 97, 1_000_003] {
                let l = Float::with_val(bits, x).ln();
                let got = residue_main_term(&basis, &l, &ctx);
                let ta = ctx.ln_at(elems[0], bits).unwrap();
                let tb = ctx.ln_at(elems[1], bits).unwrap();
                let want = main_term_2(&ta, &tb, &l);
                let err = (got - &want).abs() / want.abs();
                assert!(err < 1e-45, "elems {elems:?} x {x}: {err}");
            }
        }
        let basis = Basis::new(&[2, 3, 5, 7]).unwrap();
        for x in [3u64, 12345, 99_999_989] {
            let l = Float::with_val(bits, x).ln();
            let got = residue_main_term(&basis, &l, &ctx);
            let ts = [
                ctx.ln_at(2, bits).unwrap(),
                ctx.ln_at(3, bits).unwrap(),
                ctx.ln_at(5, bits).unwrap(),
                ctx.ln_at(7, bits).unwrap(),
            ];
            let want = main_term_4(&ts, &l);
            let err = (got - &want).abs() / want.abs();
            assert!(err < 1e-45, "x {x}: {err}");
        }
    }
}
