//! Exact construction, enumeration and approximation of bimatrix games whose
//! sum matrix `C = A + B` has low rank.
//!
//! Everything that decides a game-theoretic question (equilibrium checks,
//! vertex enumeration, LP solves) runs in exact rational arithmetic. The only
//! floating-point code is the SVD used to build low-rank perturbations, and
//! its output is rationalized before any exact quantity is derived from it.

pub mod bounds;
pub mod constructors;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod game;
pub mod lowrank;
pub mod numerics;

pub use error::{Error, Result};
pub use game::{BimatrixGame, EquilibriumReport, MixedProfile, SolutionKind};
pub use numerics::{Rational, RationalMatrix};
