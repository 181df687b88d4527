use std::cmp::Ordering;
use std::fmt;

use super::{GammaElement, Signature};
use crate::error::{Error, Result};
use crate::numerics::{order_deriv, order_slices, DerivIndex, IdxVec};

/// Exponent vector `ī ∈ J⃗ = ℤ₊^{ℓ'₂} × ℤ^{ℓ₃} × {0}^{ℓ₄}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct JIndex(pub IdxVec<i64>);

impl JIndex {
    pub fn new(entries: impl IntoIterator<Item = i64>) -> Self {
        JIndex(entries.into_iter().collect())
    }

    pub fn zero(len: usize) -> Self {
        JIndex(smallvec::smallvec![0; len])
    }

    pub fn unit(len: usize, p: usize) -> Self {
        let mut j = Self::zero(len);
        j.0[p] = 1;
        j
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn shifted(&self, p: usize, by: i64) -> JIndex {
        let mut j = self.clone();
        j.0[p] += by;
        j
    }

    pub fn is_valid_for(&self, sig: &Signature) -> bool {
        self.0.len() == sig.ell()
            && self.0[sig.nonneg_range()].iter().all(|&x| x >= 0)
            && self.0[sig.prefix(3)..].iter().all(|&x| x == 0)
    }
}

impl fmt::Display for JIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::numerics::write_list(f, self.0.iter())
    }
}

/// Basis element `x^{α,ī} ∂^μ`.
///
/// Ordered by `μ` under the level order, then `ī` under the same order, then
/// the Γ-coordinates of `α` lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub alpha: GammaElement,
    pub i: JIndex,
    pub mu: DerivIndex,
}

impl Monomial {
    /// Builds a monomial after checking `ī ∈ J⃗` and matching lengths.
    pub fn new(sig: &Signature, alpha: GammaElement, i: JIndex, mu: DerivIndex) -> Result<Self> {
        let ell = sig.ell();
        if alpha.embedding().len() != ell {
            return Err(Error::LengthMismatch {
                left: alpha.embedding().len(),
                right: ell,
            });
        }
        if !i.is_valid_for(sig) {
            return Err(Error::InvalidJIndex(i.to_string()));
        }
        if mu.len() != ell {
            return Err(Error::InvalidDerivIndex(mu.to_string()));
        }
        Ok(Monomial { alpha, i, mu })
    }

    pub fn ell(&self) -> usize {
        self.mu.len()
    }

    /// Degree-zero part, i.e. the monomial lies in the commutative algebra.
    pub fn is_function(&self) -> bool {
        self.mu.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_zero() && self.i.is_zero() && self.mu.is_zero()
    }

    pub fn with_mu(&self, mu: DerivIndex) -> Monomial {
        Monomial {
            alpha: self.alpha.clone(),
            i: self.i.clone(),
            mu,
        }
    }

    pub fn with_i(&self, i: JIndex) -> Monomial {
        Monomial {
            alpha: self.alpha.clone(),
            i,
            mu: self.mu.clone(),
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        order_deriv(&self.mu, &other.mu)
            .then_with(|| order_slices(&self.i.0, &other.i.0))
            .then_with(|| self.alpha.cmp(&other.alpha))
    }
}

/// Text form `m[α;ī;μ]`, with `α` in ambient coordinates.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(",");
        write!(
            f,
            "m[{};{};{}]",
            join(&mut self.alpha.embedding().iter().map(ToString::to_string)),
            join(&mut self.i.0.iter().map(ToString::to_string)),
            join(&mut self.mu.0.iter().map(ToString::to_string)),
        )
    }
}
