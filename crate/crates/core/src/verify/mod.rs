//! Configuration, the element text format, box enumeration, verification
//! suites and their reports.

mod config;
pub mod laws;
mod parse;
mod report;
mod suites;

pub use config::{check_tau, enumerate_box, BoxBounds, Config, ConfigFile};
pub use parse::{parse_element, print_element};
pub use report::{Failure, VerificationReport};
pub use suites::{
    binomial_330, random_coboundary, random_element, random_rational, run_suite, SuiteOptions, SUITES,
};
