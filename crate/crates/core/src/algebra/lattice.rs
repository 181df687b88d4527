//! The group Γ as a free abelian group on ℤ-independent generators in ℚ^ℓ.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::Zero;

use super::Signature;
use crate::error::{Error, Result};
use crate::linalg::{solve, RationalMatrix, SolveOutcome};
use crate::numerics::{int, to_i64, IdxVec, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaLattice {
    signature: Signature,
    generators: Vec<Vec<Rational>>,
}

impl GammaLattice {
    /// Validates generators against the zero-prefix, independence and
    /// nondegeneracy constraints.
    pub fn new(signature: Signature, generators: Vec<Vec<Rational>>) -> Result<Self> {
        let ell = signature.ell();
        let l1 = signature.l(1);
        for g in &generators {
            if g.len() != ell {
                return Err(Error::LengthMismatch {
                    left: g.len(),
                    right: ell,
                });
            }
        }
        for (index, g) in generators.iter().enumerate() {
            if g[..l1].iter().any(|x| !x.is_zero()) {
                return Err(Error::ZeroPrefixViolation { index, l1 });
            }
        }
        if !generators.is_empty() {
            let full = RationalMatrix::from_rows(generators.clone())?;
            let rank = full.rank();
            if rank < generators.len() {
                return Err(Error::DependentGenerators {
                    rank,
                    count: generators.len(),
                });
            }
        }
        let required = signature.suffix(2);
        let rank = if generators.is_empty() {
            0
        } else {
            let proj: Vec<Vec<Rational>> = generators.iter().map(|g| g[l1..].to_vec()).collect();
            RationalMatrix::from_rows(proj)?.rank()
        };
        if rank < required {
            return Err(Error::DegenerateLattice { rank, required });
        }
        Ok(GammaLattice {
            signature,
            generators,
        })
    }

    /// Γ = ℤ^{ℓ-ℓ₁} on the unit vectors of the allowed coordinates; for ℓ = 1 this is ℤ.
    pub fn standard(signature: Signature) -> Result<Self> {
        let ell = signature.ell();
        let gens = (signature.l(1)..ell)
            .map(|q| (0..ell).map(|p| int(i64::from(p == q))).collect())
            .collect();
        Self::new(signature, gens)
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The element with the given integer coordinates.
    pub fn element(&self, coeffs: &[i64]) -> Result<GammaElement> {
        if coeffs.len() != self.rank() {
            return Err(Error::LengthMismatch {
                left: coeffs.len(),
                right: self.rank(),
            });
        }
        let ell = self.signature.ell();
        let mut emb = vec![Rational::zero(); ell];
        for (n, g) in coeffs.iter().zip(&self.generators) {
            if *n == 0 {
                continue;
            }
            let n = int(*n);
            for (e, x) in emb.iter_mut().zip(g) {
                *e += &n * x;
            }
        }
        Ok(GammaElement {
            coeffs: coeffs.iter().copied().collect(),
            embedding: emb.into(),
        })
    }

    pub fn zero(&self) -> GammaElement {
        self.element(&vec![0; self.rank()]).expect("zero has the right length")
    }

    /// Integer coordinates of `vec` in the generator basis, if `vec ∈ Γ`.
    pub fn membership(&self, vec: &[Rational]) -> Option<Vec<i64>> {
        if vec.len() != self.signature.ell() {
            return None;
        }
        if self.generators.is_empty() {
            return vec.iter().all(Zero::is_zero).then(Vec::new);
        }
        let a = RationalMatrix::from_rows(self.generators.clone())
            .ok()?
            .transpose();
        match solve(&a, vec).ok()? {
            SolveOutcome::Feasible(sol) => sol.particular.iter().map(to_i64).collect(),
            SolveOutcome::Infeasible(_) => None,
        }
    }

    pub fn from_ambient(&self, vec: &[Rational]) -> Result<GammaElement> {
        let coeffs = self
            .membership(vec)
            .ok_or_else(|| Error::NotInGamma(format_ambient(vec)))?;
        self.element(&coeffs)
    }
}

fn format_ambient(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// An element of Γ: integer coordinates plus the derived ambient vector.
///
/// Equality, hashing and ordering only look at the coordinates.
#[derive(Debug, Clone)]
pub struct GammaElement {
    coeffs: IdxVec<i64>,
    embedding: Arc<[Rational]>,
}

impl GammaElement {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn embedding(&self) -> &[Rational] {
        &self.embedding
    }

    /// The `q`-th ambient coordinate `α_q`.
    pub fn coord(&self, q: usize) -> &Rational {
        &self.embedding[q]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GammaElement) -> GammaElement {
        GammaElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            embedding: self
                .embedding
                .iter()
                .zip(other.embedding.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> GammaElement {
        GammaElement {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            embedding: self.embedding.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &GammaElement) -> GammaElement {
        self.add(&other.neg())
    }
}

impl PartialEq for GammaElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for GammaElement {}

impl Hash for GammaElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for GammaElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GammaElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.embedding.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn sig(a: usize, b: usize, c: usize, d: usize) -> Signature {
        Signature::new(a, b, c, d).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn validation_examples() {
        assert!(GammaLattice::new(sig(0, 0, 0, 1), vec![v(&[1])]).is_ok());
        assert!(matches!(
            GammaLattice::new(sig(1, 0, 0, 1), vec![v(&[1, 0])]),
            Err(Error::ZeroPrefixViolation { index: 0, l1: 1 })
        ));
        assert!(matches!(
            GammaLattice::new(sig(0, 0, 0, 2), vec![v(&[1, 0])]),
            Err(Error::DegenerateLattice {
                rank: 1,
                required: 2
            })
        ));
        assert!(matches!(
            GammaLattice::new(sig(0, 0, 0, 2), vec![v(&[1, 0]), v(&[2, 0]), v(&[0, 1])]),
            Err(Error::DependentGenerators { .. })
        ));
        // ℓ₁-only signatures admit the trivial group
        assert!(GammaLattice::new(sig(1, 0, 0, 0), vec![]).is_ok());
    }

    #[test]
    fn membership_examples() {
        let lat = GammaLattice::new(sig(0, 0, 0, 2), vec![v(&[1, 1]), v(&[0, 2])]).unwrap();
        assert_eq!(lat.membership(&v(&[0, 0])), Some(vec![0, 0]));
        assert_eq!(lat.membership(&v(&[1, 3])), Some(vec![1, 1]));
        assert_eq!(lat.membership(&v(&[1, 2])), None);

        let z = GammaLattice::new(sig(0, 0, 0, 1), vec![v(&[1])]).unwrap();
        assert_eq!(z.membership(&[rat(1, 2)]), None);
        assert!(matches!(z.from_ambient(&[rat(1, 2)]), Err(Error::NotInGamma(_))));
    }

    #[test]
    fn rational_generators() {
        let lat = GammaLattice::new(sig(0, 0, 0, 1), vec![vec![rat(1, 3)]]).unwrap();
        let g = lat.element(&[2]).unwrap();
        assert_eq!(g.coord(0), &rat(2, 3));
        assert_eq!(lat.membership(&[rat(-5, 3)]), Some(vec![-5]));
    }

    #[test]
    fn element_arithmetic() {
        let lat = GammaLattice::new(sig(0, 0, 0, 2), vec![v(&[1, 1]), v(&[0, 2])]).unwrap();
        let a = lat.element(&[1, -1]).unwrap();
        let b = lat.element(&[2, 3]).unwrap();
        let s = a.add(&b);
        assert_eq!(s.coeffs(), &[3, 2]);
        assert_eq!(s.embedding(), &v(&[3, 7])[..]);
        assert!(a.sub(&a).is_zero());
    }
}
