//! Shape functionals, bound constants and per-body inequality reports.

mod constants;
mod report;

pub use constants::Constants;
pub use report::*;
