use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four derivation-type counts `(ℓ₁, ℓ₂, ℓ₃, ℓ₄)`.
///
/// Coordinates are 0-based throughout the crate. With `ℓ'_i` the prefix sums:
/// coordinates `0..ℓ₁` carry locally nilpotent derivations, `ℓ₁..ℓ'₂` locally
/// finite ones, `ℓ'₂..ℓ'₃` not locally finite ones and `ℓ'₃..ℓ` semisimple ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 4]", into = "[usize; 4]")]
pub struct Signature {
    counts: [usize; 4],
}

impl Signature {
    pub fn new(l1: usize, l2: usize, l3: usize, l4: usize) -> Result<Self> {
        if l1 + l2 + l3 + l4 == 0 {
            return Err(Error::EmptySignature);
        }
        Ok(Signature {
            counts: [l1, l2, l3, l4],
        })
    }

    pub fn counts(&self) -> [usize; 4] {
        self.counts
    }

    /// `ℓ_i` for `i ∈ 1..=4`.
    pub fn l(&self, i: usize) -> usize {
        self.counts[i - 1]
    }

    /// Total rank `ℓ`.
    pub fn ell(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Prefix sum `ℓ'_i = ℓ₁ + … + ℓ_i`, with `ℓ'_0 = 0`.
    pub fn prefix(&self, i: usize) -> usize {
        self.counts[..i].iter().sum()
    }

    /// Suffix sum `ℓ''_i = ℓ_i + … + ℓ₄`.
    pub fn suffix(&self, i: usize) -> usize {
        self.counts[i - 1..].iter().sum()
    }

    /// Coordinates on which the down-grading operator is defined.
    pub fn down_range(&self) -> Range<usize> {
        0..self.prefix(3)
    }

    /// Coordinates on which the grading operator is defined.
    pub fn up_range(&self) -> Range<usize> {
        self.prefix(1)..self.ell()
    }

    /// Coordinates of `J⃗` that must be nonnegative.
    pub fn nonneg_range(&self) -> Range<usize> {
        0..self.prefix(2)
    }

    /// Coordinates of `J⃗` that are free integers.
    pub fn free_range(&self) -> Range<usize> {
        self.prefix(2)..self.prefix(3)
    }
}

impl TryFrom<[usize; 4]> for Signature {
    type Error = Error;

    fn try_from(c: [usize; 4]) -> Result<Self> {
        Signature::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Signature> for [usize; 4] {
    fn from(s: Signature) -> Self {
        s.counts
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.counts;
        write!(f, "({a},{b},{c},{d})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_sums() {
        let s = Signature::new(0, 0, 0, 1).unwrap();
        assert_eq!(s.ell(), 1);
        assert_eq!(s.prefix(3), 0);

        let s = Signature::new(0, 0, 1, 0).unwrap();
        assert_eq!(s.ell(), 1);
        assert_eq!(s.prefix(3), 1);

        let s = Signature::new(1, 2, 3, 4).unwrap();
        assert_eq!(
            (1..=4).map(|i| s.prefix(i)).collect::<Vec<_>>(),
            vec![1, 3, 6, 10]
        );
        assert_eq!(
            (1..=4).map(|i| s.suffix(i)).collect::<Vec<_>>(),
            vec![10, 9, 7, 4]
        );
        assert_eq!(s.down_range(), 0..6);
        assert_eq!(s.up_range(), 1..10);
    }

    #[test]
    fn empty_signature_rejected() {
        assert!(matches!(Signature::new(0, 0, 0, 0), Err(Error::EmptySignature)));
        assert!(serde_json::from_str::<Signature>("[0,0,0,0]").is_err());
        let s: Signature = serde_json::from_str("[1,1,1,1]").unwrap();
        assert_eq!(s.to_string(), "(1,1,1,1)");
    }
}
