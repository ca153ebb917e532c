//! Exact arithmetic over ℚ: rationals, sparse vectors, echelon spans and
//! truncated exponential generating functions.

mod egf;
mod rational;
mod sparse;
mod span;

pub use egf::{cyclie_series, lie_series, prelie_series, Egf};
pub use rational::Rational;
pub use sparse::SparseVec;
pub use span::{rank_of, Span};
