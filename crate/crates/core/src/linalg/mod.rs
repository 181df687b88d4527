//! Exact linear algebra over the rationals and finite coboundary certificates.

mod matrix;
mod triviality;

pub use matrix::{solve, Certificate, Multiplier, RationalMatrix, Solution, SolveOutcome};
pub use triviality::{build_system, triviality_test, TrivialityOutcome, TrivialityResult, TrivialitySystem};
