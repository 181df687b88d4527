//! Exact computer algebra for the Lie algebras `𝒲(ℓ₁,ℓ₂,ℓ₃,ℓ₄,Γ)` of
//! generalized differential operators: products, brackets, 2-cocycles,
//! cocycle normalization, central extensions and verification suites.

pub mod algebra;
pub mod cocycle;
pub mod error;
pub mod extension;
pub mod linalg;
pub mod numerics;
pub mod verify;

pub use error::{Error, Result};
