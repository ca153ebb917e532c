//! Exact computations in the PreLie operad.
//!
//! Rooted trees on finite label sets form a basis of `PreLie(I)`. On top of
//! the operad structure this crate implements the anticyclic Γ-calculus, the
//! reduction of trees to root-valence one modulo brackets, the morphism ρ
//! into the relation module, the isomorphism of short exact sequences that
//! identifies the Lie-indecomposables, and the embedding of the cyclic Lie
//! module into `PreLie`. All arithmetic is over ℚ.

pub mod anticyclic;
pub mod cyclie_embed;
pub mod error;
pub mod exactalg;
pub mod lie;
pub mod prelie;
pub mod rho_iso;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use exactalg::{Egf, Rational, SparseVec, Span};
pub use trees::{Label, RootedTree};
