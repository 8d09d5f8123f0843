//! Canonical modules of Hibi rings: minimal generators of the canonical
//! module, the invariant `r_max` from condition-N sequences, and the
//! Gorenstein / level / type classification of the ring of a finite poset.
//!
//! ```
//! use hibi::{fixtures, classify, Budgets};
//!
//! let ep = fixtures::n7().extend();
//! let report = classify(&ep, &Budgets::default()).unwrap();
//! assert_eq!((report.r, report.r_max, report.cm_type), (4, 5, Some(2)));
//! ```

pub mod budget;
pub mod check;
pub mod classify;
pub mod cli;
pub mod condn;
pub mod error;
pub mod fixtures;
pub mod poset;
pub mod random;
pub mod valuation;

pub use budget::Budgets;
pub use check::{audit, Audit, Expected, Property};
pub use classify::{classify, AnalysisReport};
pub use condn::{compute_rmax, is_condition_n, nu_down, nu_up, CondNSequence};
pub use error::{HibiError, Result};
pub use poset::{parse_poset, ExtendedPoset, Poset};
pub use random::random_poset;
pub use valuation::{brute_force_minimal, enumerate_minimal, Valuation};
