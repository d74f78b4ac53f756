//! Class groups of skew Laurent extensions built from Krull monoids with a
//! shift automorphism, with exact arithmetic and sampled verification.

pub mod abelian;
pub mod cli;
pub mod construct;
pub mod error;
pub mod freeab;
pub mod galg;
pub mod krull;
pub mod pipeline;
pub mod seeded;
pub mod skew;
pub mod suites;

pub use error::{Error, Result};
