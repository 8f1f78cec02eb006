//! Rich words over finite alphabets: detection, UPS-factorization,
//! exhaustive counting, and executable verification of the part-count and
//! growth bounds.
//!
//! A word of length n has at most n+1 distinct palindromic factors; the
//! words attaining that maximum are *rich*. This crate provides:
//!
//! - [`words`]: alphabets, words, and naive brute-force oracles used as
//!   ground truth in tests.
//! - [`eertree`]: an incremental palindromic tree with an undo journal,
//!   the engine behind richness testing and enumeration.
//! - [`rich`]: richness, palindromic defect, and the unioccurrent
//!   palindromic suffix (UPS) factorization of rich words.
//! - [`enumerate`]: depth-first enumeration and arbitrary-precision
//!   counting of rich words, with letter-permutation symmetry reduction
//!   and deterministic parallel workers.
//! - [`bounds`]: the explicit constant c, the kappa ceiling, packing and
//!   geometric-sum inequalities, the convolution recurrence bounding R_n,
//!   the binomial tail bound, and growth-rate certificates.

pub mod bounds;
pub mod eertree;
pub mod enumerate;
pub mod rich;
pub mod words;

pub use bounds::{
    BoundReport, BoundsError, CheckOutcome, GrowthHypothesis, GrowthPoint, PropEChain,
    TheoremAReport,
};
pub use eertree::{AppendOutcome, Eertree, EertreeError};
pub use enumerate::{
    CountTable, EnumerateError, EnumerationStats, LengthStats, Mode, SearchConfig,
};
pub use rich::{FactorizationRecord, RichError, UpsFactorization};
pub use words::{Alphabet, Letter, Word, WordError};
