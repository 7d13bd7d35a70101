//! Exact integer oracles.
//!
//! Everything here works purely with big-integer multiplication and
//! comparison — no floating point anywhere — because these counts anchor all
//! verification of the analytic formulas, including at points like 10^1000
//! where a double-precision log would misrank borderline powers.

use rug::ops::Pow;
use rug::{Complete, Integer};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::basis::{int_sqrt, Basis, XValue};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("divisor exceeds x; the floor-log argument would be below 1")]
    DivisorExceedsX,
    #[error("floor-log base must be >= 2, got {0}")]
    BadBase(u64),
}

/// Largest `e` with `base^e * divisor <= x`, by doubling plus binary search
/// over big-integer power comparisons.
pub fn floor_log(base: u64, x: &Integer, divisor: &Integer) -> Result<u64, ExactError> {
    if base < 2 {
        return Err(ExactError::BadBase(base));
    }
    if divisor > x {
        return Err(ExactError::DivisorExceedsX);
    }
    if base == 2 {
        // The bit-length pins e to within one; fix up by shifted comparison.
        let mut e = (x.significant_bits() - divisor.significant_bits()) as u64;
        loop {
            let shifted = divisor.clone() << u32::try_from(e).unwrap();
            match shifted.cmp(x) {
                Ordering::Greater => e -= 1,
                _ => {
                    let next = divisor.clone() << u32::try_from(e + 1).unwrap();
                    if next <= *x {
                        e += 1;
                    } else {
                        return Ok(e);
                    }
                }
            }
        }
    }
    let fits = |e: u64| -> bool {
        match u32::try_from(e) {
            Ok(e32) => Integer::from(base).pow(e32) * divisor <= *x,
            Err(_) => false,
        }
    };
    if !fits(1) {
        return Ok(0);
    }
    // Doubling to bracket, then binary search: fits(lo) && !fits(hi).
    let mut lo = 1u64;
    let mut hi = 2u64;
    while fits(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `floor(log_base(x))` with unit divisor.
pub fn floor_log_x(base: u64, x: &XValue) -> Result<u64, ExactError> {
    let one = Integer::from(1);
    floor_log(base, &x.to_integer(), &one)
}

/// Number of semigroup members `prod a_i^{q_i} <= x`, by the nested
/// floor-log recursion. The outermost loop runs over the largest basis
/// element, which minimizes the loop count; the innermost level collapses
/// to a single floor-log.
pub fn count_smooth(basis: &Basis, x: &XValue) -> Integer {
    let xv = x.to_integer();
    let elems = basis.elements();
    fn rec(elems: &[u64], idx: usize, divisor: Integer, x: &Integer) -> Integer {
        let e = floor_log(elems[idx], x, &divisor).expect("divisor <= x by loop bound");
        if idx == 0 {
            return Integer::from(e) + 1u32;
        }
        let mut total = Integer::new();
        let mut d = divisor;
        for _ in 0..=e {
            total += rec(elems, idx - 1, d.clone(), x);
            d *= elems[idx];
        }
        total
    }
    rec(elems, elems.len() - 1, Integer::from(1), &xv)
}

/// Count of pairs `(p, q)` with `a^(p^2) b^(q^2) <= x`.
pub fn count_squares_exact(a: u64, b: u64, x: &XValue) -> Integer {
    let xv = x.to_integer();
    let one = Integer::from(1);
    let qmax = int_sqrt(floor_log(b, &xv, &one).expect("x >= 1"));
    let mut total = Integer::from(qmax) + 1u32;
    let mut bq = Integer::from(1); // b^(k^2)
    for k in 0..=qmax {
        if k > 0 {
            // b^(k^2) = b^((k-1)^2) * b^(2k-1)
            bq *= Integer::from(b).pow(u32::try_from(2 * k - 1).unwrap());
        }
        let e = floor_log(a, &xv, &bq).expect("bq <= x by qmax bound");
        total += int_sqrt(e);
    }
    total
}

/// Ascending stream of semigroup members, merged from per-element chains
/// with a priority queue over exponent tuples.
pub struct SmoothStream {
    elements: Vec<u64>,
    limit: Integer,
    heap: BinaryHeap<std::cmp::Reverse<Candidate>>,
}

struct Candidate {
    /// Cached log for cheap ordering; ties within tolerance fall back to the
    /// exact value.
    log: f64,
    value: Integer,
    exponents: Vec<u32>,
    /// Children may only increment indices >= this one, which makes every
    /// exponent tuple reachable exactly once.
    min_child_index: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}
impl Eq for Candidate {}
impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        if (self.log - other.log).abs() > 1e-9 {
            return self
                .log
                .partial_cmp(&other.log)
                .expect("logs of positive integers are finite");
        }
        self.value.cmp(&other.value)
    }
}

/// All members `<= limit`, in strictly increasing order starting at 1.
pub fn generate_smooth(basis: &Basis, limit: &XValue) -> SmoothStream {
    let elements = basis.elements().to_vec();
    let mut heap = BinaryHeap::new();
    heap.push(std::cmp::Reverse(Candidate {
        log: 0.0,
        value: Integer::from(1),
        exponents: vec![0; elements.len()],
        min_child_index: 0,
    }));
    SmoothStream {
        elements,
        limit: limit.to_integer(),
        heap,
    }
}

impl Iterator for SmoothStream {
    type Item = Integer;

    fn next(&mut self) -> Option<Integer> {
        let std::cmp::Reverse(cand) = self.heap.pop()?;
        for i in cand.min_child_index..self.elements.len() {
            let a = self.elements[i];
            let value = (&cand.value * a).complete();
            if value <= self.limit {
                let mut exponents = cand.exponents.clone();
                exponents[i] += 1;
                self.heap.push(std::cmp::Reverse(Candidate {
                    log: cand.log + (a as f64).ln(),
                    value,
                    exponents,
                    min_child_index: i,
                }));
            }
        }
        Some(cand.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(elems: &[u64]) -> Basis {
        Basis::new_relaxed(elems).unwrap()
    }

    #[test]
    fn floor_log_small_cases() {
        let one = Integer::from(1);
        assert_eq!(floor_log(2, &Integer::from(1000), &one).unwrap(), 9);
        assert_eq!(floor_log(3, &Integer::from(1), &one).unwrap(), 0);
        assert_eq!(floor_log(10, &Integer::from(999), &one).unwrap(), 2);
        assert_eq!(floor_log(10, &Integer::from(1000), &one).unwrap(), 3);
    }

    #[test]
    fn floor_log_huge_power_of_ten() {
        let x = Integer::from(10).pow(100);
        let one = Integer::from(1);
        assert_eq!(floor_log(3, &x, &one).unwrap(), 209);
        assert_eq!(floor_log(2, &x, &one).unwrap(), 332);
    }

    #[test]
    fn floor_log_divisor_errors() {
        let one = Integer::from(1);
        assert_eq!(
            floor_log(2, &one, &Integer::from(2)).unwrap_err(),
            ExactError::DivisorExceedsX
        );
    }

    #[test]
    fn floor_log_bracket_is_exact() {
        // a^e <= x < a^(e+1) verified by construction on random cases.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let one = Integer::from(1);
        for _ in 0..500 {
            let base = rng.gen_range(2u64..=30);
            let x = Integer::from(rng.gen_range(1u64..=u64::MAX));
            let e = floor_log(base, &x, &one).unwrap();
            let p = Integer::from(base).pow(u32::try_from(e).unwrap());
            assert!(p <= x, "base {base} e {e}");
            assert!(p * base > x, "base {base} e {e}");
        }
    }

    #[test]
    fn counts_match_tables() {
        assert_eq!(count_smooth(&basis(&[2, 3]), &XValue::from_u64(100)), 20);
        assert_eq!(count_smooth(&basis(&[2, 3]), &XValue::from_u64(1)), 1);
        assert_eq!(
            count_smooth(&basis(&[2, 3, 5]), &XValue::from_u64(1000)),
            86
        );
        assert_eq!(count_smooth(&basis(&[2, 3]), &XValue::pow10(6)), 142);
    }

    #[test]
    fn count_is_permutation_invariant() {
        // Same semigroup regardless of the recursion order chosen at input.
        let x = XValue::from_u64(720_000);
        let c1 = count_smooth(&basis(&[2, 3, 5]), &x);
        let c2 = count_smooth(&basis(&[5, 2, 3]), &x);
        assert_eq!(c1, c2);
    }

    #[test]
    fn generate_matches_paper_listings() {
        let got: Vec<Integer> =
            generate_smooth(&basis(&[2, 3]), &XValue::from_u64(27)).collect();
        let want: Vec<Integer> = [1u64, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27]
            .iter()
            .map(|&v| Integer::from(v))
            .collect();
        assert_eq!(got, want);

        let got: Vec<Integer> =
            generate_smooth(&basis(&[2, 3, 5]), &XValue::from_u64(10)).collect();
        let want: Vec<Integer> = [1u64, 2, 3, 4, 5, 6, 8, 9, 10]
            .iter()
            .map(|&v| Integer::from(v))
            .collect();
        assert_eq!(got, want);

        let got: Vec<Integer> = generate_smooth(&basis(&[2]), &XValue::from_u64(16)).collect();
        let want: Vec<Integer> = [1u64, 2, 4, 8, 16]
            .iter()
            .map(|&v| Integer::from(v))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn squares_counts_match_table() {
        assert_eq!(count_squares_exact(2, 3, &XValue::from_u64(100)), 7);
        assert_eq!(count_squares_exact(2, 3, &XValue::from_u64(1)), 1);
        assert_eq!(count_squares_exact(2, 3, &XValue::from_u64(10_000)), 11);
    }

    #[test]
    fn stream_is_strictly_increasing_and_duplicate_free() {
        let mut prev = Integer::from(0);
        for v in generate_smooth(&basis(&[2, 3, 5]), &XValue::from_u64(100_000)) {
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn monotone_in_x() {
        let b = basis(&[2, 3]);
        let mut prev = Integer::from(0);
        for x in 1..=200u64 {
            let c = count_smooth(&b, &XValue::from_u64(x));
            assert!(c >= prev);
            prev = c;
        }
    }
}
