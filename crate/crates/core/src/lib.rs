//! Convex-geometric functionals, k-Hessian torsion and eigenvalue solvers,
//! and checks of Polya-type inequalities between them.

pub mod bodies;
pub mod error;
pub mod lp;
pub mod special;

pub use error::{Error, Result};
pub mod functionals;
pub mod profile;
pub mod solver;
pub mod sweep;
