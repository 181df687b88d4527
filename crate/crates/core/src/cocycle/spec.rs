//! JSON descriptions of forms.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Coboundary, Combined, LinearFunctional, Phi0, PhiGamma, SharedForm, Sum};
use crate::algebra::{Algebra, GammaElement, JIndex, Monomial};
use crate::error::{Error, Result};
use crate::numerics::{DerivIndex, RationalRepr};
use crate::verify::parse_element;

/// `{"kind": "phi0"}`, `{"kind": "phi_gamma", "gamma": [...]}`,
/// `{"kind": "combined", "coeffs": [{"gamma": [...], "b": "p/q"}]}`,
/// `{"kind": "coboundary", "f": [{"monomial": ..., "value": "p/q"}]}` or
/// `{"kind": "sum", "parts": [...]}`. Vectors `gamma` are ambient coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CocycleSpec {
    Phi0,
    PhiGamma { gamma: Vec<RationalRepr> },
    Combined { coeffs: Vec<CombinedCoeff> },
    Coboundary { f: Vec<FunctionalEntry> },
    Sum { parts: Vec<CocycleSpec> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombinedCoeff {
    pub gamma: Vec<RationalRepr>,
    pub b: RationalRepr,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalEntry {
    pub monomial: MonomialSpec,
    pub value: RationalRepr,
}

/// A basis monomial, either as text `"m[α;ī;μ]"` or as a record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonomialSpec {
    Text(String),
    Record {
        alpha: Vec<RationalRepr>,
        i: Vec<i64>,
        mu: Vec<u32>,
    },
}

impl MonomialSpec {
    pub fn build(&self, alg: &Algebra) -> Result<Monomial> {
        match self {
            MonomialSpec::Text(s) => {
                let e = parse_element(s, alg)?;
                let mut terms = e.terms();
                match (terms.next(), terms.next()) {
                    (Some((m, c)), None) if num_traits::One::is_one(c) => Ok(m.clone()),
                    _ => Err(Error::Config(format!("{s:?} is not a single basis monomial"))),
                }
            }
            MonomialSpec::Record { alpha, i, mu } => {
                let alpha = gamma_from(alg, alpha)?;
                Monomial::new(
                    &alg.signature(),
                    alpha,
                    JIndex::new(i.iter().copied()),
                    DerivIndex::new(mu.iter().copied()),
                )
            }
        }
    }
}

fn gamma_from(alg: &Algebra, v: &[RationalRepr]) -> Result<GammaElement> {
    let v = v.iter().map(|x| x.clone().into_rational()).collect::<Result<Vec<_>>>()?;
    if v.len() != alg.ell() {
        return Err(Error::NotInGamma(format!("{v:?}")));
    }
    alg.lattice().from_ambient(&v)
}

impl CocycleSpec {
    pub fn build(&self, alg: &Algebra) -> Result<SharedForm> {
        Ok(match self {
            CocycleSpec::Phi0 => Arc::new(Phi0::new(alg)?),
            CocycleSpec::PhiGamma { gamma } => Arc::new(PhiGamma::new(alg, gamma_from(alg, gamma)?)?),
            CocycleSpec::Combined { coeffs } => {
                let pairs = coeffs
                    .iter()
                    .map(|c| Ok((gamma_from(alg, &c.gamma)?, c.b.clone().into_rational()?)))
                    .collect::<Result<Vec<_>>>()?;
                Arc::new(Combined::new(alg, pairs)?)
            }
            CocycleSpec::Coboundary { f } => {
                let mut lf = LinearFunctional::new();
                for entry in f {
                    lf.set(entry.monomial.build(alg)?, entry.value.clone().into_rational()?);
                }
                Arc::new(Coboundary::new(alg, lf))
            }
            CocycleSpec::Sum { parts } => {
                let mut sum = Sum::new();
                for p in parts {
                    sum = sum.with(num_traits::One::one(), p.build(alg)?);
                }
                Arc::new(sum)
            }
        })
    }

    /// The `γ` values of a `phi_gamma` or `combined` spec, in ambient coordinates.
    pub fn gammas(&self, alg: &Algebra) -> Result<Vec<GammaElement>> {
        match self {
            CocycleSpec::PhiGamma { gamma } => Ok(vec![gamma_from(alg, gamma)?]),
            CocycleSpec::Combined { coeffs } => coeffs.iter().map(|c| gamma_from(alg, &c.gamma)).collect(),
            _ => Ok(Vec::new()),
        }
    }
}
