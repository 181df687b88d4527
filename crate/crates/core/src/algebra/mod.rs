//! The algebra `𝒜 ⊗ 𝔽[𝒟]`: signatures, the group Γ, monomials, sparse
//! elements, derivations, the associative product and the bracket.

mod element;
mod lattice;
mod monomial;
mod ops;
mod signature;
mod table;

pub use element::Element;
pub use lattice::{GammaElement, GammaLattice};
pub use monomial::{JIndex, Monomial};
pub use ops::Algebra;
pub use signature::Signature;
pub use table::{BracketTable, Interner, OpTable, Scratch, Sparse};

#[cfg(test)]
mod tests;
