//! Truncated oscillatory correction series in every grouping the formulas
//! use.
//!
//! All series share one truncation convention: the sum attached to the pole
//! family of basis element `a_m` is cut at `floor(R log a_m)`, with a single
//! `R` shared by all families (balanced truncation). Two groupings of the
//! same residue content are implemented:
//!
//! * `PlainCot` — every term is `sin(2 pi k L / log a_m - pi r / 2) / k`
//!   times a product of cotangents over an r-element subset of the other
//!   basis elements, with the pure-sine content absorbed into a Bernoulli
//!   weight of `1/2^(n-1)` per element.
//! * `ShiftedSingles` — the r = 1 terms instead keep the shifted-cosine
//!   shape `cos(2 pi k (L - log a_o / 2) / log a_m) / sin(pi k log a_o /
//!   log a_m)`, which moves one unit of the sine series per ordered pair
//!   out of the Bernoulli weight (giving `n/2^(n-1)` per element).
//!
//! The two groupings differ at finite truncation by partial sine tails;
//! which one a published table used is recorded with the table preset.
//!
//! Besides the generic engine (subset products via elementary symmetric
//! polynomials), the 2-, 3- and 4-element cases have hand-rolled paths that
//! follow the printed series structure term by term; the acceptance suite
//! compares the paths against each other.

use rug::ops::Pow;
use rug::Float;

use crate::numerics::PrecisionContext;

/// Series grouping for the oscillatory terms (see module docs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    PlainCot,
    ShiftedSingles,
}

/// A sine denominator came close enough to zero to cost precision.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceWarning {
    pub family: usize,
    pub k: u64,
    pub sin_magnitude: f64,
}

/// A denominator underflowed the working precision; the evaluation must be
/// retried with more digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resonant {
    pub family: usize,
    pub k: u64,
}

pub struct SeriesSum {
    pub value: Float,
    pub per_family_terms: Vec<u64>,
    pub warnings: Vec<ResonanceWarning>,
}

/// `floor(R log a)` per basis element, computed in high precision so the
/// cutoffs match published truncations exactly.
pub fn family_caps(elements: &[u64], r: f64, ctx: &PrecisionContext) -> Vec<u64> {
    elements
        .iter()
        .map(|&a| {
            let t = ctx.ln_at(a, 128).expect("basis elements are >= 2");
            let v = Float::with_val(128, r) * t;
            v.floor().to_f64() as u64
        })
        .collect()
}

struct Thresholds {
    warn: Float,
    error: Float,
}

fn thresholds(ctx: &PrecisionContext, bits: u32) -> Thresholds {
    let digits = ctx.digits() as i32;
    Thresholds {
        warn: Float::with_val(bits, 10).pow(-(digits - 10)),
        error: Float::with_val(bits, 10).pow(-digits + 5),
    }
}

fn guard(
    sin_value: &Float,
    family: usize,
    k: u64,
    th: &Thresholds,
    warnings: &mut Vec<ResonanceWarning>,
) -> Result<(), Resonant> {
    let mag = sin_value.clone().abs();
    if mag < th.error {
        return Err(Resonant { family, k });
    }
    if mag < th.warn {
        warnings.push(ResonanceWarning {
            family,
            k,
            sin_magnitude: mag.to_f64(),
        });
    }
    Ok(())
}

fn ln_vec(elements: &[u64], bits: u32, ctx: &PrecisionContext) -> Vec<Float> {
    elements
        .iter()
        .map(|&a| ctx.ln_at(a, bits).expect("basis elements are >= 2"))
        .collect()
}

fn sin_cos(theta: Float, bits: u32) -> (Float, Float) {
    theta.sin_cos(Float::new(bits))
}

/// Generic engine for any arity: per pole family and per `k`, the subset
/// cotangent products of every size are assembled from elementary symmetric
/// polynomials of the cotangent values.
pub fn general_series(
    elements: &[u64],
    l: &Float,
    caps: &[u64],
    grouping: Grouping,
    ctx: &PrecisionContext,
) -> Result<SeriesSum, Resonant> {
    let n = elements.len();
    let bits = l.prec();
    let pi = ctx.pi_at(bits);
    let th = thresholds(ctx, bits);
    let ts = ln_vec(elements, bits, ctx);
    let mut warnings = Vec::new();
    let mut total = Float::with_val(bits, 0);
    for m in 0..n {
        let tm = &ts[m];
        // u_k = 2 pi k L / t_m
        let mut du = pi.clone();
        du *= 2u32;
        du *= l;
        du /= tm;
        // phi_{o,k} = pi k t_o / t_m
        let dphi: Vec<Float> = (0..n)
            .filter(|&o| o != m)
            .map(|o| {
                let mut v = pi.clone();
                v *= &ts[o];
                v /= tm;
                v
            })
            .collect();
        let mut family = Float::with_val(bits, 0);
        for k in 1..=caps[m] {
            let (su, cu) = sin_cos(du.clone() * k, bits);
            let mut singles = Float::with_val(bits, 0);
            let mut cots: Vec<Float> = Vec::with_capacity(n - 1);
            for dp in &dphi {
                let (sp, cp) = sin_cos(dp.clone() * k, bits);
                guard(&sp, m, k, &th, &mut warnings)?;
                if grouping == Grouping::ShiftedSingles {
                    // cos(u - phi)/sin(phi), the shifted-cosine single term
                    let mut num = cu.clone();
                    num *= &cp;
                    let mut cross = su.clone();
                    cross *= &sp;
                    num += cross;
                    num /= &sp;
                    singles -= num;
                }
                cots.push(cp / sp);
            }
            // Elementary symmetric polynomials e_1..e_{n-1} of the cotangents.
            let mut e = vec![Float::with_val(bits, 0); n];
            e[0] = Float::with_val(bits, 1);
            for (done, c) in cots.iter().enumerate() {
                for d in (1..=done + 1).rev() {
                    let mut add = e[d - 1].clone();
                    add *= c;
                    e[d] += add;
                }
            }
            let r_start = match grouping {
                Grouping::PlainCot => 1,
                Grouping::ShiftedSingles => 2,
            };
            let mut term = match grouping {
                Grouping::PlainCot => Float::with_val(bits, 0),
                Grouping::ShiftedSingles => singles,
            };
            for (r, er) in e.iter().enumerate().take(n).skip(r_start) {
                // sin(u - pi r / 2) cycles through -cos, -sin, +cos, +sin.
                let mut w = match r % 4 {
                    1 => -cu.clone(),
                    2 => -su.clone(),
                    3 => cu.clone(),
                    _ => su.clone(),
                };
                w *= er;
                term += w;
            }
            family += term / k;
        }
        total += family;
    }
    total /= Float::with_val(bits, 2).pow(n as u32 - 1);
    total /= &pi;
    Ok(SeriesSum {
        value: total,
        per_family_terms: caps.to_vec(),
        warnings,
    })
}

/// Shifted-cosine series for two elements, following the printed two-sum
/// structure directly (no cotangent decomposition).
pub fn two_shifted(
    elements: &[u64],
    l: &Float,
    caps: &[u64],
    ctx: &PrecisionContext,
) -> Result<SeriesSum, Resonant> {
    let bits = l.prec();
    let pi = ctx.pi_at(bits);
    let th = thresholds(ctx, bits);
    let ts = ln_vec(elements, bits, ctx);
    let mut warnings = Vec::new();
    let mut total = Float::with_val(bits, 0);
    for (family, (mi, oi)) in [(0usize, 1usize), (1, 0)].into_iter().enumerate() {
        let tm = &ts[mi];
        let to = &ts[oi];
        // 2 pi (L - t_o/2) / t_m
        let mut num_step = to.clone();
        num_step /= -2;
        num_step += l;
        num_step *= &pi;
        num_step *= 2u32;
        num_step /= tm;
        let mut den_step = pi.clone();
        den_step *= to;
        den_step /= tm;
        for k in 1..=caps[family] {
            let den = (den_step.clone() * k).sin();
            guard(&den, family, k, &th, &mut warnings)?;
            let num = (num_step.clone() * k).cos();
            total += num / (den * k);
        }
    }
    total /= &pi;
    total /= 2u32;
    total = -total;
    Ok(SeriesSum {
        value: total,
        per_family_terms: caps.to_vec(),
        warnings,
    })
}

/// Plain-cotangent series for two elements, in the printed
/// `cos * cos / sin` shape.
pub fn two_cot(
    elements: &[u64],
    l: &Float,
    caps: &[u64],
    ctx: &PrecisionContext,
) -> Result<SeriesSum, Resonant> {
    let bits = l.prec();
    let pi = ctx.pi_at(bits);
    let th = thresholds(ctx, bits);
    let ts = ln_vec(elements, bits, ctx);
    let mut warnings = Vec::new();
    let mut total = Float::with_val(bits, 0);
    for (family, (mi, oi)) in [(0usize, 1usize), (1, 0)].into_iter().enumerate() {
        let tm = &ts[mi];
        let to = &ts[oi];
        let mut phi_step = pi.clone();
        phi_step *= to;
        phi_step /= tm;
        let mut u_step = pi.clone();
        u_step *= 2u32;
        u_step *= l;
        u_step /= tm;
        for k in 1..=caps[family] {
            let (sp, cp) = sin_cos(phi_step.clone() * k, bits);
            guard(&sp, family, k, &th, &mut warnings)?;
            let cu = (u_step.clone() * k).cos();
            total += cp * cu / (sp * k);
        }
    }
    total /= &pi;
    total /= 2u32;
    total = -total;
    Ok(SeriesSum {
        value: total,
        per_family_terms: caps.to_vec(),
        warnings,
    })
}

/// Three-element series in the grouping that reproduces the published
/// five-smooth table: shifted-cosine singles plus plain double-cotangent
/// sine terms.
pub fn three_hybrid(
    elements: &[u64],
    l: &Float,
    caps: &[u64],
    ctx: &PrecisionContext,
) -> Result<SeriesSum, Resonant> {
    let bits = l.prec();
    let pi = ctx.pi_at(bits);
    let th = thresholds(ctx, bits);
    let ts = ln_vec(elements, bits, ctx);
    let mut warnings = Vec::new();
    let mut singles = Float::with_val(bits, 0);
    for m in 0..3 {
        for o in 0..3 {
            if o == m {
                continue;
            }
            let tm = &ts[m];
            let to = &ts[o];
            let mut num_step = to.clone();
            num_step /= -2;
            num_step += l;
            num_step *= &pi;
            num_step *= 2u32;
            num_step /= tm;
            let mut den_step = pi.clone();
            den_step *= to;
            den_step /= tm;
            for k in 1..=caps[m] {
                let den = (den_step.clone() * k).sin();
                guard(&den, m, k, &th, &mut warnings)?;
                singles += (num_step.clone() * k).cos() / (den * k);
            }
        }
    }
    let mut doubles = Float::with_val(bits, 0);
    for m in 0..3 {
        let (j, li) = ((m + 1) % 3, (m + 2) % 3);
        let tm = &ts[m];
        let mut u_step = pi.clone();
        u_step *= 2u32;
        u_step *= l;
        u_step /= tm;
        let mut pj = pi.clone();
        pj *= &ts[j];
        pj /= tm;
        let mut pl = pi.clone();
        pl *= &ts[li];
        pl /= tm;
        for k in 1..=caps[m] {
            let (sj, cj) = sin_cos(pj.clone() * k, bits);
            guard(&sj, m, k, &th, &mut warnings)?;
            let (sl, cl) = sin_cos(pl.clone() * k, bits);
            guard(&sl, m, k, &th, &mut warnings)?;
            let su = (u_step.clone() * k).sin();
            doubles += cj * cl * su / (sj * sl * k);
        }
    }
    let mut value = singles + doubles;
    value /= &pi;
    value /= 4u32;
    value = -value;
    Ok(SeriesSum {
        value,
        per_family_terms: caps.to_vec(),
        warnings,
    })
}

/// Three-element series in the all-cotangent grouping.
pub fn three_cot(
    elements: &[u64],
    l: &Float,
    caps: &[u64],
    ctx: &PrecisionContext,
) -> Result<SeriesSum, Resonant> {
    let bits = l.prec();
    let pi = ctx.pi_at(bits);
    let th = thresholds(ctx, bits);
    let ts = ln_vec(elements, bits, ctx);
    let mut warnings = Vec::new();
    let mut total = Float::with_val(bits, 0);
    for m in 0..3 {
        let (j, li) = ((m + 1) % 3, (m + 2) % 3);
        let tm = &ts[m];
        let mut u_step = pi.clone();
        u_step *= 2u32;
        u_step *= l;
        u_step /= tm;
        let mut pj = pi.clone();
        pj *= &ts[j];
        pj /= tm;
        let mut pl = pi.clone();
        pl *= &ts[li];
        pl /= tm;
        for k in 1..=caps[m] {
            let (su, cu) = sin_cos(u_step.clone() * k, bits);
            let (sj, cj) = sin_cos(pj.clone() * k, bits);
            guard(&sj, m, k, &th, &mut warnings)?;
            let (sl, cl) = sin_cos(pl.clone() * k, bits);
            guard(&sl, m, k, &th, &mut warnings)?;
            let cot_j = cj / sj;
            let cot_l = cl / sl;
            // single-cotangent cosines plus the double-cotangent sine
            let mut term = cot_j.clone();
            term += &cot_l;
            term *= &cu;
            let mut dbl = cot_j;
            dbl *= &cot_l;
            dbl *= &su;
            term += dbl;
            total += term / k;
        }
    }
    total /= &pi;
    total /= 4u32;
    total = -total;
    Ok(SeriesSum {
        value: total,
        per_family_terms: caps.to_vec(),
        warnings,
    })
}

/// Four-element all-cotangent series, combined pointwise per `k`.
pub fn four_cot_pointwise(
    elements: &[u64],
    l: &Float,
    caps: &[u64],
    ctx: &PrecisionContext,
) -> Result<SeriesSum, Resonant> {
    general_series(elements, l, caps, Grouping::PlainCot, ctx)
}

/// Four-element all-cotangent series accumulated series by series in the
/// printed order: twelve single-cotangent cosine sums, twelve
/// double-cotangent sine sums, four triple-cotangent cosine sums.
pub fn four_cot_by_series(
    elements: &[u64],
    l: &Float,
    caps: &[u64],
    ctx: &PrecisionContext,
) -> Result<SeriesSum, Resonant> {
    let bits = l.prec();
    let pi = ctx.pi_at(bits);
    let th = thresholds(ctx, bits);
    let ts = ln_vec(elements, bits, ctx);
    let mut warnings = Vec::new();

    // Per family: tables of sin/cos of u_k and of phi_{o,k}, reused by the
    // three passes below.
    struct FamilyTables {
        su: Vec<Float>,
        cu: Vec<Float>,
        sp: [Vec<Float>; 3],
        cp: [Vec<Float>; 3],
    }
    let mut tables = Vec::with_capacity(4);
    for m in 0..4 {
        let tm = &ts[m];
        let cap = caps[m] as usize;
        let mut u_step = pi.clone();
        u_step *= 2u32;
        u_step *= l;
        u_step /= tm;
        let mut su = Vec::with_capacity(cap);
        let mut cu = Vec::with_capacity(cap);
        for k in 1..=caps[m] {
            let (s, c) = sin_cos(u_step.clone() * k, bits);
            su.push(s);
            cu.push(c);
        }
        let others: Vec<usize> = (0..4).filter(|&o| o != m).collect();
        let mut sp: [Vec<Float>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        let mut cp: [Vec<Float>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (slot, &o) in others.iter().enumerate() {
            let mut step = pi.clone();
            step *= &ts[o];
            step /= tm;
            for k in 1..=caps[m] {
                let (s, c) = sin_cos(step.clone() * k, bits);
                guard(&s, m, k, &th, &mut warnings)?;
                sp[slot].push(s);
                cp[slot].push(c);
            }
        }
        tables.push(FamilyTables { su, cu, sp, cp });
    }

    let mut total = Float::with_val(bits, 0);
    // Single-cotangent cosine sums: one per ordered (m, o) pair.
    for t in &tables {
        for slot in 0..3 {
            let mut s = Float::with_val(bits, 0);
            for ki in 0..t.su.len() {
                let mut term = t.cp[slot][ki].clone();
                term /= &t.sp[slot][ki];
                term *= &t.cu[ki];
                term /= ki as u32 + 1;
                s += term;
            }
            total -= s;
        }
    }
    // Double-cotangent sine sums: one per family and unordered pair.
    for t in &tables {
        for (s1, s2) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let mut s = Float::with_val(bits, 0);
            for ki in 0..t.su.len() {
                let mut term = t.cp[s1][ki].clone();
                term /= &t.sp[s1][ki];
                let mut c2 = t.cp[s2][ki].clone();
                c2 /= &t.sp[s2][ki];
                term *= c2;
                term *= &t.su[ki];
                term /= ki as u32 + 1;
                s += term;
            }
            total -= s;
        }
    }
    // Triple-cotangent cosine sums: one per family.
    for t in &tables {
        let mut s = Float::with_val(bits, 0);
        for ki in 0..t.su.len() {
            let mut term = t.cp[0][ki].clone();
            term /= &t.sp[0][ki];
            let mut c2 = t.cp[1][ki].clone();
            c2 /= &t.sp[1][ki];
            term *= c2;
            let mut c3 = t.cp[2][ki].clone();
            c3 /= &t.sp[2][ki];
            term *= c3;
            term *= &t.cu[ki];
            term /= ki as u32 + 1;
            s += term;
        }
        total += s;
    }
    total /= &pi;
    total /= 8u32;
    Ok(SeriesSum {
        value: total,
        per_family_terms: caps.to_vec(),
        warnings,
    })
}

/// The double cosine sum over `(n, m)` with pair-coupled denominators
/// `m^2 log(a)^2 - n^2 log(b)^2`, scaled by `log(a) log(b) / pi^2`.
pub fn double_cosine_sum(
    elements: &[u64],
    l: &Float,
    n_cap: u64,
    m_cap: u64,
    ctx: &PrecisionContext,
) -> Result<SeriesSum, Resonant> {
    let bits = l.prec();
    let pi = ctx.pi_at(bits);
    let th = thresholds(ctx, bits);
    let ts = ln_vec(elements, bits, ctx);
    let (ta, tb) = (&ts[0], &ts[1]);
    let mut ua = pi.clone();
    ua *= 2u32;
    ua *= l;
    ua /= ta;
    let mut ub = pi.clone();
    ub *= 2u32;
    ub *= l;
    ub /= tb;
    let cos_a: Vec<Float> = (1..=n_cap).map(|n| (ua.clone() * n).cos()).collect();
    let cos_b: Vec<Float> = (1..=m_cap).map(|m| (ub.clone() * m).cos()).collect();
    let ta2 = ta.clone().square();
    let tb2 = tb.clone().square();
    let m_sq_ta2: Vec<Float> = (1..=m_cap).map(|m| ta2.clone() * m * m).collect();
    let n_sq_tb2: Vec<Float> = (1..=n_cap).map(|n| tb2.clone() * n * n).collect();
    let mut warnings = Vec::new();
    let mut total = Float::with_val(bits, 0);
    for ni in 0..n_cap as usize {
        let mut row = Float::with_val(bits, 0);
        for mi in 0..m_cap as usize {
            let mut den = m_sq_ta2[mi].clone();
            den -= &n_sq_tb2[ni];
            guard(&den, ni + 1, mi as u64 + 1, &th, &mut warnings)?;
            let mut num = cos_a[ni].clone();
            num -= &cos_b[mi];
            row += num / den;
        }
        total += row;
    }
    total *= ta;
    total *= tb;
    total /= &pi;
    total /= &pi;
    Ok(SeriesSum {
        value: total,
        per_family_terms: vec![n_cap, m_cap],
        warnings,
    })
}
