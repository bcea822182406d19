//! Minimal generators, conductor and generic Tjurina number of the generic
//! value set `Λ_gen` of differentials for plane branches whose semigroup is
//! `Γ = ⟨p, m⟩`.
//!
//! The closed-form recursion ([`genrec`]) is the main route. Delorme's
//! algorithm ([`delorme`]) is kept as an independent oracle, and the Tjurina
//! number is computed three ways ([`tjurina`]).

pub mod cli;
pub mod delorme;
pub mod error;
pub mod euclid;
pub mod genrec;
pub mod report;
pub mod semigroup;
pub mod sweep;
pub mod tjurina;

pub use error::{Error, Result};
pub use euclid::{compute_euclid, EuclidData};
pub use genrec::{summarize, GenStep, LambdaSummary};
pub use semigroup::{SemigroupPM, StandardForm};
