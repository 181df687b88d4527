//! Finite obstructions to `ψ = ψ_f`.
//!
//! For a finite monomial set `S` the unknowns are `f(w)` for every `w` that
//! occurs in some `[u, v]`, `u, v ∈ S`, and each pair `u < v` contributes the
//! equation `f([u, v]) = ψ(u, v)`. An infeasible system proves that `ψ` is
//! not a coboundary; a feasible one proves nothing.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use super::{solve, Certificate, RationalMatrix, SolveOutcome};
use crate::algebra::{Algebra, Monomial};
use crate::cocycle::{BilinearForm, LinearFunctional};
use crate::error::{Error, Result};
use crate::numerics::{format_rational, Rational};

#[derive(Debug, Clone)]
pub struct TrivialitySystem {
    pub pairs: Vec<(Monomial, Monomial)>,
    pub unknowns: Vec<Monomial>,
    pub matrix: RationalMatrix,
    pub rhs: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub enum TrivialityOutcome {
    /// Some `f` on the finite support reproduces the form; inconclusive.
    Feasible(LinearFunctional),
    /// No such `f` exists, witnessed by the certificate.
    Infeasible(Certificate),
}

impl TrivialityOutcome {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, TrivialityOutcome::Infeasible(_))
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            TrivialityOutcome::Feasible(_) => "feasible (inconclusive)",
            TrivialityOutcome::Infeasible(_) => "infeasible (form is not a coboundary)",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrivialityResult {
    pub system: TrivialitySystem,
    pub outcome: TrivialityOutcome,
}

#[derive(Serialize)]
struct EquationRef {
    equation: usize,
    u: String,
    v: String,
    multiplier: String,
    rhs: String,
}

impl TrivialityResult {
    /// Re-checks the outcome against the system: a certificate must give
    /// `0 = nonzero`, and a solution must reproduce every equation.
    pub fn reverify(&self) -> bool {
        let sys = &self.system;
        match &self.outcome {
            TrivialityOutcome::Infeasible(c) => c.verify(&sys.matrix, &sys.rhs),
            TrivialityOutcome::Feasible(f) => {
                let x: Vec<Rational> = sys.unknowns.iter().map(|w| f.value(w)).collect();
                match sys.matrix.mul_vec(&x) {
                    Ok(ax) => ax == sys.rhs,
                    Err(_) => false,
                }
            }
        }
    }

    /// Machine-readable summary for reports.
    pub fn details(&self) -> Value {
        let sys = &self.system;
        let mut out = json!({
            "verdict": self.outcome.verdict(),
            "equations": sys.pairs.len(),
            "unknowns": sys.unknowns.len(),
            "reverified": self.reverify(),
        });
        match &self.outcome {
            TrivialityOutcome::Infeasible(c) => {
                let refs: Vec<EquationRef> = c
                    .multipliers
                    .iter()
                    .map(|m| EquationRef {
                        equation: m.equation,
                        u: sys.pairs[m.equation].0.to_string(),
                        v: sys.pairs[m.equation].1.to_string(),
                        multiplier: format_rational(&m.multiplier),
                        rhs: format_rational(&sys.rhs[m.equation]),
                    })
                    .collect();
                out["certificate"] = serde_json::to_value(c).expect("certificate serializes");
                out["combination"] = serde_json::to_value(refs).expect("serializes");
            }
            TrivialityOutcome::Feasible(f) => {
                let support: BTreeMap<String, String> = f
                    .support()
                    .map(|(m, v)| (m.to_string(), format_rational(v)))
                    .collect();
                out["f"] = serde_json::to_value(support).expect("serializes");
            }
        }
        out
    }
}

/// Builds the system `f([u,v]) = ψ(u,v)` for `u < v` in `S`.
pub fn build_system(alg: &Algebra, form: &dyn BilinearForm, set: &[Monomial]) -> Result<TrivialitySystem> {
    for m in set {
        alg.check_monomial(m)?;
    }
    let mut s: Vec<Monomial> = set.to_vec();
    s.sort();
    s.dedup();
    let mut pairs = Vec::new();
    let mut brackets = Vec::new();
    for (k, u) in s.iter().enumerate() {
        for v in &s[k + 1..] {
            brackets.push(alg.bracket_monomials(u, v));
            pairs.push((u.clone(), v.clone()));
        }
    }
    let mut cols: BTreeMap<Monomial, usize> = BTreeMap::new();
    for b in &brackets {
        for m in b.monomials() {
            cols.entry(m.clone()).or_insert(0);
        }
    }
    for (k, slot) in cols.values_mut().enumerate() {
        *slot = k;
    }
    let mut matrix = RationalMatrix::zeros(pairs.len(), cols.len());
    for (r, b) in brackets.iter().enumerate() {
        for (m, c) in b {
            matrix.set(r, cols[m], c.clone());
        }
    }
    let rhs = pairs.iter().map(|(u, v)| form.eval(u, v)).collect();
    Ok(TrivialitySystem {
        pairs,
        unknowns: cols.into_keys().collect(),
        matrix,
        rhs,
    })
}

/// Decides whether `form` agrees with some coboundary on the pairs of `set`.
/// The outcome is re-verified before it is returned.
pub fn triviality_test(alg: &Algebra, form: &dyn BilinearForm, set: &[Monomial]) -> Result<TrivialityResult> {
    let system = build_system(alg, form, set)?;
    let outcome = match solve(&system.matrix, &system.rhs)? {
        SolveOutcome::Infeasible(c) => TrivialityOutcome::Infeasible(c),
        SolveOutcome::Feasible(sol) => {
            let f = LinearFunctional::from_values(
                system
                    .unknowns
                    .iter()
                    .cloned()
                    .zip(sol.particular)
                    .filter(|(_, v)| !v.is_zero()),
            );
            TrivialityOutcome::Feasible(f)
        }
    };
    let result = TrivialityResult { system, outcome };
    if !result.reverify() {
        return Err(Error::SelfCheck("triviality outcome".into()));
    }
    Ok(result)
}
