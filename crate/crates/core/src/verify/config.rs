use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Algebra, GammaElement, GammaLattice, JIndex, Monomial, Signature};
use crate::cocycle::CocycleSpec;
use crate::error::{Error, Result};
use crate::numerics::{DerivIndex, RationalRepr};

/// Truncation of the basis: Γ-coefficients in `[-g, g]`, `|i_p| ≤ j` (and
/// `i_p ≥ 0` or `i_p = 0` where the exponent lattice demands), `μ_p ≤ m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BoxBounds {
    pub gamma_coeff_bound: u32,
    pub j_bound: u32,
    pub mu_bound: u32,
}

impl BoxBounds {
    pub fn new(gamma_coeff_bound: u32, j_bound: u32, mu_bound: u32) -> Self {
        BoxBounds {
            gamma_coeff_bound,
            j_bound,
            mu_bound,
        }
    }
}

/// Every monomial of the box, lexicographic in (Γ-coefficients, ī, μ).
pub fn enumerate_box(bounds: &BoxBounds, alg: &Algebra) -> Vec<Monomial> {
    let sig = alg.signature();
    let ell = sig.ell();
    let g = bounds.gamma_coeff_bound as i64;
    let j = bounds.j_bound as i64;
    let alpha_ranges = vec![(-g, g); alg.lattice().rank()];
    let i_ranges: Vec<(i64, i64)> = (0..ell)
        .map(|p| {
            if sig.nonneg_range().contains(&p) {
                (0, j)
            } else if sig.free_range().contains(&p) {
                (-j, j)
            } else {
                (0, 0)
            }
        })
        .collect();
    let mu_ranges = vec![(0, bounds.mu_bound as i64); ell];

    let alphas = odometer(&alpha_ranges);
    let is = odometer(&i_ranges);
    let mus = odometer(&mu_ranges);
    let mut out = Vec::with_capacity(alphas.len() * is.len() * mus.len());
    for a in &alphas {
        let alpha: GammaElement = alg.gamma(a).expect("coefficients match the lattice rank");
        for i in &is {
            for mu in &mus {
                out.push(Monomial {
                    alpha: alpha.clone(),
                    i: JIndex::new(i.iter().copied()),
                    mu: DerivIndex::new(mu.iter().map(|&x| x as u32)),
                });
            }
        }
    }
    out
}

/// All integer vectors in a product of closed ranges, lexicographic.
fn odometer(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// On-disk configuration. Rationals may be strings `"p/q"` or integers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ConfigFile {
    pub signature: Signature,
    /// Generators of Γ in ambient coordinates.
    pub gamma: Vec<Vec<RationalRepr>>,
    /// Γ-coordinates of τ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<i64>>,
    #[serde(rename = "box")]
    pub bounds: BoxBounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleSpec>,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub file: ConfigFile,
    pub algebra: Algebra,
    pub tau: Option<GammaElement>,
    pub bounds: BoxBounds,
}

impl Config {
    pub fn from_file(file: ConfigFile) -> Result<Self> {
        let gens = file
            .gamma
            .iter()
            .map(|g| g.iter().map(|x| x.clone().into_rational()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let lattice = GammaLattice::new(file.signature, gens)?;
        let algebra = Algebra::new(lattice);
        let tau = match &file.tau {
            Some(coeffs) => {
                let t = algebra
                    .gamma(coeffs)
                    .map_err(|e| Error::InvalidTau(e.to_string()))?;
                check_tau(&algebra, &t)?;
                Some(t)
            }
            None if algebra.lattice().rank() == 1 => {
                let t = algebra.gamma(&[1])?;
                check_tau(&algebra, &t).ok().map(|_| t)
            }
            None => None,
        };
        if let Some(spec) = &file.cocycle {
            spec.build(&algebra)?;
        }
        Ok(Config {
            bounds: file.bounds,
            file,
            algebra,
            tau,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Unit generators of Γ, τ = (1,…,1) when valid, no cocycle.
    pub fn standard(sig: Signature, bounds: BoxBounds) -> Result<Self> {
        let lattice = GammaLattice::standard(sig)?;
        let file = ConfigFile {
            signature: sig,
            gamma: lattice
                .generators()
                .iter()
                .map(|g| g.iter().map(RationalRepr::from).collect())
                .collect(),
            tau: None,
            bounds,
            cocycle: None,
        };
        let mut file = file;
        let rank = lattice.rank();
        let ones = vec![1; rank];
        let alg = Algebra::new(lattice);
        if alg.gamma(&ones).ok().filter(|t| check_tau(&alg, t).is_ok()).is_some() {
            file.tau = Some(ones);
        }
        Self::from_file(file)
    }

    pub fn with_cocycle(mut self, spec: CocycleSpec) -> Result<Self> {
        spec.build(&self.algebra)?;
        self.file.cocycle = Some(spec);
        Ok(self)
    }

    pub fn with_bounds(mut self, bounds: BoxBounds) -> Self {
        self.bounds = bounds;
        self.file.bounds = bounds;
        self
    }

    pub fn signature(&self) -> Signature {
        self.algebra.signature()
    }

    pub fn enumerate_box(&self) -> Vec<Monomial> {
        enumerate_box(&self.bounds, &self.algebra)
    }

    /// The configuration as echoed into reports.
    pub fn echo(&self) -> Value {
        serde_json::to_value(&self.file).expect("config serializes")
    }
}

/// `τ_p ≠ 0` for every grading coordinate `p`.
pub fn check_tau(alg: &Algebra, tau: &GammaElement) -> Result<()> {
    for p in alg.signature().up_range() {
        if num_traits::Zero::is_zero(tau.coord(p)) {
            return Err(Error::InvalidTau(format!("coordinate {} of ({tau}) is zero", p + 1)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(sig: [usize; 4], b: (u32, u32, u32)) -> Config {
        let sig = Signature::new(sig[0], sig[1], sig[2], sig[3]).unwrap();
        Config::standard(sig, BoxBounds::new(b.0, b.1, b.2)).unwrap()
    }

    #[test]
    fn box_sizes() {
        assert_eq!(cfg([0, 0, 0, 1], (2, 0, 1)).enumerate_box().len(), 10);
        let id = cfg([0, 0, 0, 1], (0, 0, 0)).enumerate_box();
        assert_eq!(id.len(), 1);
        assert!(id[0].is_identity());
        assert_eq!(cfg([0, 0, 1, 0], (1, 1, 0)).enumerate_box().len(), 9);
        assert_eq!(cfg([0, 1, 0, 0], (1, 2, 1)).enumerate_box().len(), 3 * 3 * 2);
        assert_eq!(cfg([1, 1, 1, 1], (1, 1, 1)).enumerate_box().len(), 27 * 2 * 2 * 3 * 16);
    }

    #[test]
    fn box_is_lexicographic_and_valid() {
        let c = cfg([0, 0, 1, 0], (1, 1, 1));
        let b = c.enumerate_box();
        assert_eq!(b[0].to_string(), "m[-1;-1;0]");
        assert_eq!(b[1].to_string(), "m[-1;-1;1]");
        assert_eq!(b.last().unwrap().to_string(), "m[1;1;1]");
        let sig = c.signature();
        assert!(b.iter().all(|m| m.i.is_valid_for(&sig)));
    }

    #[test]
    fn parses_json_config() {
        let c = Config::from_json(
            r#"{"signature":[0,0,0,1],"gamma":[["1"]],"tau":[1],
                "box":{"gammaCoeffBound":3,"jBound":0,"muBound":3},
                "cocycle":{"kind":"phi0"}}"#,
        )
        .unwrap();
        assert_eq!(c.enumerate_box().len(), 28);
        assert_eq!(c.tau.as_ref().unwrap().coeffs(), &[1]);
        let echo = c.echo();
        assert_eq!(echo["cocycle"]["kind"], "phi0");
    }

    #[test]
    fn rejects_bad_configs() {
        let bad_tau = r#"{"signature":[0,0,0,2],"gamma":[[1,0],[0,1]],"tau":[1,0],
            "box":{"gammaCoeffBound":1,"jBound":0,"muBound":1}}"#;
        assert!(matches!(Config::from_json(bad_tau), Err(Error::InvalidTau(_))));
        let degenerate = r#"{"signature":[0,0,0,2],"gamma":[[1,0]],
            "box":{"gammaCoeffBound":1,"jBound":0,"muBound":1}}"#;
        assert!(matches!(Config::from_json(degenerate), Err(Error::DegenerateLattice { .. })));
        let typo = r#"{"signature":[0,0,0,1],"gamma":[[1]],
            "box":{"gammaCoefBound":1,"jBound":0,"muBound":1}}"#;
        assert!(matches!(Config::from_json(typo), Err(Error::Config(_))));
        let wrong_form = r#"{"signature":[0,0,1,0],"gamma":[[1]],
            "box":{"gammaCoeffBound":1,"jBound":0,"muBound":1},"cocycle":{"kind":"phi0"}}"#;
        assert!(matches!(Config::from_json(wrong_form), Err(Error::WrongSignature { .. })));
    }
}
