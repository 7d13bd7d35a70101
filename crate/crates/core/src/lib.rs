//! Counting functions of multiplicative semigroups `{prod a_i^{q_i}}` —
//! smooth-number counting — both exactly and through rapidly convergent
//! analytic formulas.
//!
//! The exact side ([`exact`]) counts by nested big-integer floor-logs and
//! generates the sequences by heap merge; it never touches floating point
//! and anchors all verification. The analytic side ([`analytic`]) evaluates
//! the residue-at-zero polynomial main term, periodized Bernoulli
//! corrections, and balanced-truncation oscillatory series in several
//! equivalent groupings; [`squares`] does the same for the counting
//! function of `a^(p^2) b^(q^2)` with Bessel series. [`tables`] bundles the
//! published reference tables the crate reproduces digit for digit.
//!
//! ```
//! use smoothcount_core::prelude::*;
//!
//! let basis = Basis::new(&[2, 3]).unwrap();
//! let count = count_smooth(&basis, &XValue::pow10(6));
//! assert_eq!(count, 142);
//!
//! let ctx = PrecisionContext::new(50).unwrap();
//! let report = evaluate(
//!     FormulaVariant::Hl2,
//!     &basis,
//!     &XValue::pow10(6),
//!     &TruncationSpec::balanced(60.0),
//!     &ctx,
//! )
//! .unwrap();
//! assert_eq!(report.rounded_count, count);
//! ```

pub mod analytic;
pub mod basis;
pub mod exact;
pub mod numerics;
pub mod squares;
pub mod tables;

pub mod prelude {
    pub use crate::analytic::{
        evaluate, evaluate_rational, oscillatory_general, EvalReport, FormulaVariant, Grouping,
        TruncationSpec,
    };
    pub use crate::basis::{is_member, is_member_squares, Basis, XValue};
    pub use crate::exact::{count_smooth, count_squares_exact, floor_log, generate_smooth};
    pub use crate::numerics::{b1_star, b2_frac, bessel_j1, BigReal, PrecisionContext};
    pub use crate::squares::{n2_formula, n2_formula_rational, SquaresTruncation};
    pub use crate::tables::{preset, run_row, PresetId};
}
