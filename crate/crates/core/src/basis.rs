//! Basis tuples, exact evaluation points, and membership tests for the
//! multiplicative semigroups being counted.
//!
//! A basis `(a_1, ..., a_n)` spans the set of products `prod a_i^{q_i}` with
//! nonnegative exponents. Validation enforces the hypotheses the analytic
//! formulas rely on: strictly ascending elements `>= 2`, overall gcd 1, and
//! pairwise multiplicative independence (no `log a_i / log a_j` rational),
//! without which the sine denominators of the oscillatory series vanish.
//! Exact counting works under the weaker gcd-only hypothesis, so a relaxed
//! constructor skips the independence check.

use rug::ops::Pow;
use rug::{Complete, Float, Integer};
use std::fmt;

/// One reason a candidate basis was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    NotAscending,
    ElementBelowTwo(u64),
    GcdNotOne(u64),
    /// Indices (after sorting) of two elements whose prime exponent vectors
    /// are proportional.
    MultiplicativelyDependentPair(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "basis must contain at least one element"),
            Violation::NotAscending => write!(f, "elements must be strictly ascending"),
            Violation::ElementBelowTwo(v) => write!(f, "element {v} is below 2"),
            Violation::GcdNotOne(g) => write!(f, "gcd of all elements is {g}, not 1"),
            Violation::MultiplicativelyDependentPair(i, j) => write!(
                f,
                "elements at positions {i} and {j} are multiplicatively dependent"
            ),
        }
    }
}

/// Structured rejection: every violated condition, not just the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisError {
    pub violations: Vec<Violation>,
}

impl std::error::Error for BasisError {}

impl fmt::Display for BasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid basis: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A validated ascending tuple of multiplicatively independent integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    elements: Vec<u64>,
    /// Prime factorization of each element as (prime, exponent) pairs.
    factorizations: Vec<Vec<(u64, u32)>>,
    independent: bool,
}

impl Basis {
    /// Full (strict) validation: the analytic formulas require this.
    pub fn new(elements: &[u64]) -> Result<Self, BasisError> {
        Self::validate(elements, true)
    }

    /// Relaxed validation for the exact counting paths: multiplicative
    /// dependence is tolerated, the gcd hypothesis is not.
    pub fn new_relaxed(elements: &[u64]) -> Result<Self, BasisError> {
        Self::validate(elements, false)
    }

    fn validate(input: &[u64], strict: bool) -> Result<Self, BasisError> {
        let mut violations = Vec::new();
        if input.is_empty() {
            return Err(BasisError {
                violations: vec![Violation::Empty],
            });
        }
        let mut elements = input.to_vec();
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            violations.push(Violation::NotAscending);
        }
        for &e in &elements {
            if e < 2 {
                violations.push(Violation::ElementBelowTwo(e));
            }
        }
        if violations
            .iter()
            .any(|v| matches!(v, Violation::ElementBelowTwo(_)))
        {
            return Err(BasisError { violations });
        }
        if elements.len() >= 2 {
            let g = elements.iter().fold(0u64, |acc, &e| gcd(acc, e));
            if g != 1 {
                violations.push(Violation::GcdNotOne(g));
            }
        }
        let factorizations: Vec<_> = elements.iter().map(|&e| factorize(e)).collect();
        let mut independent = true;
        for i in 0..elements.len() {
            for j in (i + 1)..elements.len() {
                if proportional(&factorizations[i], &factorizations[j]) {
                    independent = false;
                    if strict {
                        violations.push(Violation::MultiplicativelyDependentPair(i, j));
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(Basis {
                elements,
                factorizations,
                independent,
            })
        } else {
            Err(BasisError { violations })
        }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn arity(&self) -> usize {
        self.elements.len()
    }

    pub fn is_multiplicatively_independent(&self) -> bool {
        self.independent
    }

    pub(crate) fn factorizations(&self) -> &[Vec<(u64, u32)>] {
        &self.factorizations
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn factorize(mut v: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= v {
        if v % p == 0 {
            let mut e = 0u32;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if v > 1 {
        out.push((v, 1));
    }
    out
}

/// Exponent vectors are proportional iff all cross products of matching
/// prime exponents agree and the prime supports coincide.
fn proportional(a: &[(u64, u32)], b: &[(u64, u32)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut ratio: Option<(u64, u64)> = None; // (ea, eb) reference pair
    for (pa, ea) in a {
        let Some((_, eb)) = b.iter().find(|(pb, _)| pb == pa) else {
            return false;
        };
        match ratio {
            None => ratio = Some((u64::from(*ea), u64::from(*eb))),
            Some((ra, rb)) => {
                if u64::from(*ea) * rb != u64::from(*eb) * ra {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum XValueError {
    #[error("evaluation point must be >= 1")]
    BelowOne,
    #[error("cannot parse '{0}' as an integer or 1e<E> power of ten")]
    Unparseable(String),
}

/// Exactly representable evaluation point: an explicit integer or `10^E`.
///
/// Text syntax accepted everywhere: a decimal literal ("1000000") or
/// "1e<E>" meaning exactly `10^E` ("1e100").
#[derive(Debug, Clone)]
pub enum XValue {
    Integer(Integer),
    PowerOfTen(u32),
}

impl XValue {
    pub fn from_integer(v: Integer) -> Result<Self, XValueError> {
        if v < 1 {
            return Err(XValueError::BelowOne);
        }
        Ok(XValue::Integer(v))
    }

    pub fn from_u64(v: u64) -> Self {
        assert!(v >= 1, "evaluation point must be >= 1");
        XValue::Integer(Integer::from(v))
    }

    pub fn pow10(e: u32) -> Self {
        XValue::PowerOfTen(e)
    }

    pub fn parse(s: &str) -> Result<Self, XValueError> {
        let t = s.trim();
        if let Some(exp) = t.strip_prefix("1e") {
            let e: u32 = exp
                .parse()
                .map_err(|_| XValueError::Unparseable(s.to_string()))?;
            return Ok(XValue::PowerOfTen(e));
        }
        let v = Integer::parse(t)
            .map(|p| p.complete())
            .map_err(|_| XValueError::Unparseable(s.to_string()))?;
        Self::from_integer(v).map_err(|_| XValueError::Unparseable(s.to_string()))
    }

    pub fn to_integer(&self) -> Integer {
        match self {
            XValue::Integer(v) => v.clone(),
            XValue::PowerOfTen(e) => Integer::from(10).pow(*e),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            XValue::Integer(v) => *v == 1,
            XValue::PowerOfTen(e) => *e == 0,
        }
    }

    /// Natural log at the requested mantissa precision.
    pub fn ln(&self, bits: u32) -> Float {
        match self {
            XValue::Integer(v) => Float::with_val(bits, v).ln(),
            XValue::PowerOfTen(e) => Float::with_val(bits, 10).ln() * *e,
        }
    }

    /// log10(x), cheap and approximate; used only to plan precision.
    pub fn approx_log10(&self) -> f64 {
        match self {
            XValue::Integer(v) => v.significant_bits() as f64 * std::f64::consts::LOG10_2,
            XValue::PowerOfTen(e) => f64::from(*e),
        }
    }

    /// True when `x == base^e` exactly.
    pub fn is_power_of(&self, base: u64, e: u64) -> bool {
        match self {
            XValue::PowerOfTen(te) => {
                // 10^te = base^e demands base = 10^(te/e) with exact powers.
                if *te == 0 {
                    return e == 0 || base == 1;
                }
                if e == 0 {
                    return false;
                }
                if e > u64::from(*te) * 4 {
                    return false;
                }
                Integer::from(base).pow(u32::try_from(e).unwrap_or(u32::MAX))
                    == Integer::from(10).pow(*te)
            }
            XValue::Integer(v) => match u32::try_from(e) {
                Ok(e32) => Integer::from(base).pow(e32) == *v,
                Err(_) => false,
            },
        }
    }
}

impl PartialEq for XValue {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (XValue::PowerOfTen(a), XValue::PowerOfTen(b)) => a == b,
            _ => self.to_integer() == other.to_integer(),
        }
    }
}

impl Eq for XValue {}

impl fmt::Display for XValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XValue::Integer(v) => write!(f, "{v}"),
            XValue::PowerOfTen(e) => write!(f, "1e{e}"),
        }
    }
}

/// Characteristic function of the semigroup spanned by `basis`.
///
/// Decided by bounded depth-first search over exponents with exact integer
/// division; powers of ten take an exponent-vector path instead so that
/// astronomically large table points stay cheap.
pub fn is_member(x: &XValue, basis: &Basis) -> bool {
    match x {
        XValue::PowerOfTen(e) => {
            if *e == 0 {
                return true;
            }
            let target = vec![(2u64, *e), (5u64, *e)];
            member_by_vectors(&target, basis.factorizations())
        }
        XValue::Integer(v) => {
            if *v < 1 {
                return false;
            }
            member_by_division(v.clone(), basis.elements())
        }
    }
}

fn member_by_division(x: Integer, elements: &[u64]) -> bool {
    if x == 1 {
        return true;
    }
    let Some((&a, rest)) = elements.split_first() else {
        return false;
    };
    let mut power = Integer::from(1);
    loop {
        let (q, r) = x.clone().div_rem(power.clone());
        if r.is_zero() && member_by_division(q, rest) {
            return true;
        }
        power *= a;
        if power > x {
            return false;
        }
    }
}

/// Membership over prime exponent vectors: does any nonnegative combination
/// of the element vectors hit `target` exactly?
fn member_by_vectors(target: &[(u64, u32)], factorizations: &[Vec<(u64, u32)>]) -> bool {
    fn search(target: &[u64], elems: &[Vec<u64>]) -> bool {
        if target.iter().all(|&t| t == 0) {
            return true;
        }
        let Some((vec, rest)) = elems.split_first() else {
            return false;
        };
        // Max exponent for this element before some prime component overshoots.
        let qmax = target
            .iter()
            .zip(vec)
            .filter(|(_, &c)| c > 0)
            .map(|(&t, &c)| t / c)
            .min()
            .unwrap_or(0);
        for q in (0..=qmax).rev() {
            let next: Vec<u64> = target
                .iter()
                .zip(vec)
                .map(|(&t, &c)| t - q * c)
                .collect();
            // Prune when a remaining prime has no supplier among later elements.
            let feasible = next
                .iter()
                .enumerate()
                .all(|(i, &t)| t == 0 || rest.iter().any(|r| r[i] > 0));
            if feasible && search(&next, rest) {
                return true;
            }
        }
        false
    }

    let mut primes: Vec<u64> = target.iter().map(|&(p, _)| p).collect();
    primes.sort_unstable();
    // An element using a prime outside the target can never participate.
    let mut usable: Vec<Vec<u64>> = Vec::new();
    for f in factorizations {
        if f.iter().all(|(p, _)| primes.contains(p)) {
            usable.push(
                primes
                    .iter()
                    .map(|p| {
                        f.iter()
                            .find(|(q, _)| q == p)
                            .map(|&(_, e)| u64::from(e))
                            .unwrap_or(0)
                    })
                    .collect(),
            );
        }
    }
    let t: Vec<u64> = {
        let mut m = std::collections::BTreeMap::new();
        for &(p, e) in target {
            m.insert(p, u64::from(e));
        }
        m.values().copied().collect()
    };
    search(&t, &usable)
}

/// Characteristic function of `{a^(p^2) b^(q^2)}`.
pub fn is_member_squares(x: &XValue, a: u64, b: u64) -> bool {
    debug_assert!(a < b && gcd(a, b) == 1);
    match x {
        XValue::PowerOfTen(e) if *e > 0 => {
            // Solve p^2 v(a) + q^2 v(b) = E * v(10) over exponent vectors.
            let fa = factorize(a);
            let fb = factorize(b);
            let mut primes: Vec<u64> = vec![2, 5];
            for (p, _) in fa.iter().chain(fb.iter()) {
                if !primes.contains(p) {
                    primes.push(*p);
                }
            }
            primes.sort_unstable();
            let vec_of = |f: &[(u64, u32)]| -> Vec<u64> {
                primes
                    .iter()
                    .map(|p| {
                        f.iter()
                            .find(|(q, _)| q == p)
                            .map(|&(_, e)| u64::from(e))
                            .unwrap_or(0)
                    })
                    .collect()
            };
            let va = vec_of(&fa);
            let vb = vec_of(&fb);
            let target: Vec<u64> = primes
                .iter()
                .map(|p| match p {
                    2 | 5 => u64::from(*e),
                    _ => 0,
                })
                .collect();
            let qmax = target
                .iter()
                .zip(&vb)
                .filter(|(_, &c)| c > 0)
                .map(|(&t, &c)| t / c)
                .min()
                .unwrap_or(0);
            let qmax = int_sqrt(qmax);
            for q in 0..=qmax {
                let qq = q * q;
                if target.iter().zip(&vb).any(|(&t, &c)| qq * c > t) {
                    continue;
                }
                let rem: Vec<u64> = target.iter().zip(&vb).map(|(&t, &c)| t - qq * c).collect();
                // rem must be a square multiple of va.
                let mut p2: Option<u64> = None;
                let mut ok = true;
                for (r, &c) in rem.iter().zip(&va) {
                    if c == 0 {
                        if *r != 0 {
                            ok = false;
                            break;
                        }
                    } else {
                        if r % c != 0 {
                            ok = false;
                            break;
                        }
                        let ratio = r / c;
                        match p2 {
                            None => p2 = Some(ratio),
                            Some(prev) if prev != ratio => {
                                ok = false;
                                break;
                            }
                            _ => {}
                        }
                    }
                }
                if ok {
                    let p2 = p2.unwrap_or(0);
                    let s = int_sqrt(p2);
                    if s * s == p2 {
                        return true;
                    }
                }
            }
            false
        }
        _ => {
            let xv = x.to_integer();
            let mut bq = Integer::from(1); // b^(q^2)
            let mut q = 0u64;
            loop {
                if bq > xv {
                    return false;
                }
                let (cof, rem) = xv.clone().div_rem(bq.clone());
                if rem.is_zero() && is_square_power_of(cof, a) {
                    return true;
                }
                // b^((q+1)^2) = b^(q^2) * b^(2q+1)
                bq *= Integer::from(b).pow(u32::try_from(2 * q + 1).unwrap());
                q += 1;
            }
        }
    }
}

/// True iff `v == a^(p^2)` for some nonnegative integer p.
fn is_square_power_of(mut v: Integer, a: u64) -> bool {
    let mut e = 0u64;
    while v != 1 {
        let (q, r) = v.div_rem(Integer::from(a));
        if !r.is_zero() {
            return false;
        }
        v = q;
        e += 1;
    }
    let s = int_sqrt(e);
    s * s == e
}

pub(crate) fn int_sqrt(v: u64) -> u64 {
    if v == 0 {
        return 0;
    }
    let mut s = (v as f64).sqrt() as u64;
    while s.saturating_mul(s) > v {
        s -= 1;
    }
    while (s + 1).saturating_mul(s + 1) <= v {
        s += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_paper_basis() {
        let b = Basis::new(&[2, 3]).unwrap();
        assert_eq!(b.elements(), &[2, 3]);
        assert!(b.is_multiplicatively_independent());
    }

    #[test]
    fn rejects_power_pair() {
        let err = Basis::new(&[2, 4]).unwrap_err();
        assert!(err
            .violations
            .contains(&Violation::MultiplicativelyDependentPair(0, 1)));
    }

    #[test]
    fn rejects_dependent_triple_with_gcd_one() {
        let err = Basis::new(&[2, 3, 4]).unwrap_err();
        assert_eq!(
            err.violations,
            vec![Violation::MultiplicativelyDependentPair(0, 2)]
        );
        // The relaxed path accepts it for exact counting.
        let relaxed = Basis::new_relaxed(&[2, 3, 4]).unwrap();
        assert!(!relaxed.is_multiplicatively_independent());
    }

    #[test]
    fn rejects_gcd_violation_even_relaxed() {
        let err = Basis::new_relaxed(&[2, 4]).unwrap_err();
        assert_eq!(err.violations, vec![Violation::GcdNotOne(2)]);
    }

    #[test]
    fn collects_every_violation() {
        let err = Basis::new(&[4, 2, 2]).unwrap_err();
        assert!(err.violations.contains(&Violation::NotAscending));
        assert!(err.violations.contains(&Violation::GcdNotOne(2)));
    }

    #[test]
    fn sorts_input() {
        let b = Basis::new(&[3, 2]).unwrap();
        assert_eq!(b.elements(), &[2, 3]);
    }

    #[test]
    fn xvalue_parse_and_equality() {
        assert_eq!(XValue::parse("1000000").unwrap(), XValue::from_u64(1000000));
        assert_eq!(XValue::parse("1e2").unwrap(), XValue::from_u64(100));
        assert_eq!(
            XValue::parse("1e100").unwrap(),
            XValue::from_integer(Integer::from(10).pow(100)).unwrap()
        );
        assert!(XValue::parse("0").is_err());
        assert!(XValue::parse("-3").is_err());
        assert!(XValue::parse("2e5").is_err());
        assert!(XValue::parse("abc").is_err());
    }

    #[test]
    fn membership_two_basis() {
        let b = Basis::new(&[2, 3]).unwrap();
        assert!(is_member(&XValue::from_u64(6), &b));
        assert!(!is_member(&XValue::from_u64(7), &b));
        assert!(is_member(&XValue::from_u64(1), &b));
    }

    #[test]
    fn membership_composite_coprime_basis() {
        let b = Basis::new(&[6, 10]).unwrap();
        // 360 = 6^2 * 10
        assert!(is_member(&XValue::from_u64(360), &b));
        assert!(!is_member(&XValue::from_u64(60), &b));
    }

    #[test]
    fn membership_powers_of_ten() {
        let b235 = Basis::new(&[2, 3, 5]).unwrap();
        assert!(is_member(&XValue::pow10(100), &b235));
        let b23 = Basis::new(&[2, 3]).unwrap();
        assert!(!is_member(&XValue::pow10(100), &b23));
        let b2357 = Basis::new(&[2, 3, 5, 7]).unwrap();
        assert!(is_member(&XValue::pow10(7), &b2357));
    }

    #[test]
    fn membership_matches_trial_division_on_prime_basis() {
        let b = Basis::new(&[2, 3, 5]).unwrap();
        for x in 1u64..=2000 {
            let mut v = x;
            for p in [2u64, 3, 5] {
                while v % p == 0 {
                    v /= p;
                }
            }
            assert_eq!(is_member(&XValue::from_u64(x), &b), v == 1, "x = {x}");
        }
    }

    #[test]
    fn squares_membership() {
        assert!(is_member_squares(&XValue::from_u64(48), 2, 3));
        assert!(is_member_squares(&XValue::from_u64(162), 2, 3));
        assert!(!is_member_squares(&XValue::from_u64(12), 2, 3));
        assert!(is_member_squares(&XValue::from_u64(1), 2, 3));
        // 10^E = 2^E 5^E never lands in {2^(p^2) 3^(q^2)} for E >= 1.
        assert!(!is_member_squares(&XValue::pow10(100), 2, 3));
    }

    #[test]
    fn squares_membership_matches_enumeration() {
        // Exhaustive oracle: enumerate a^(p^2) b^(q^2) up to the bound.
        let bound = 1_000_000u64;
        let mut members = std::collections::BTreeSet::new();
        for p in 0u32.. {
            let ap = 2u64.checked_pow(p * p);
            let Some(ap) = ap else { break };
            if ap > bound {
                break;
            }
            for q in 0u32.. {
                let bq = 3u64.checked_pow(q * q);
                let Some(bq) = bq else { break };
                let Some(v) = ap.checked_mul(bq) else { break };
                if v > bound {
                    break;
                }
                members.insert(v);
            }
        }
        assert_eq!(
            members.iter().take(8).copied().collect::<Vec<_>>(),
            vec![1, 2, 3, 6, 16, 48, 81, 162]
        );
        for x in 1..=3000u64 {
            assert_eq!(
                is_member_squares(&XValue::from_u64(x), 2, 3),
                members.contains(&x),
                "x = {x}"
            );
        }
    }
}
