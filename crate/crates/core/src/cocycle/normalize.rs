//! Normalization of a 2-cocycle `ψ` to an equivalent `φ = ψ − ψ_f`
//! satisfying
//!
//! * `φ(t^{1_[p]}∂_p, x^{α,ī}∂^μ) = 0` for `p < ℓ'₃`,
//! * `φ(∂_p, x^{α,ī}∂^μ) = 0` for every `p`.
//!
//! The functional `f` is built lazily, one basis monomial at a time.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BilinearForm, FormKind, SharedForm};
use crate::algebra::{Algebra, Element, GammaElement, Monomial};
use crate::error::{Error, Result};
use crate::numerics::{format_rational, int, multi_binomial, pow, DerivIndex, Rational};
use crate::verify::{Failure, VerificationReport};

pub struct NormalizedCocycle {
    alg: Algebra,
    source: SharedForm,
    tau: GammaElement,
    memo: Mutex<HashMap<Monomial, Rational>>,
}

/// Validates `τ` (nonzero in every grading coordinate) and wraps `psi`.
pub fn normalize(alg: &Algebra, psi: SharedForm, tau: GammaElement) -> Result<NormalizedCocycle> {
    if tau.coeffs().len() != alg.lattice().rank() || tau.embedding().len() != alg.ell() {
        return Err(Error::InvalidTau(format!("{tau} does not belong to the lattice")));
    }
    for p in alg.signature().up_range() {
        if tau.coord(p).is_zero() {
            return Err(Error::InvalidTau(format!("coordinate {p} of ({tau}) is zero")));
        }
    }
    Ok(NormalizedCocycle {
        alg: alg.clone(),
        source: psi,
        tau,
        memo: Mutex::new(HashMap::new()),
    })
}

impl NormalizedCocycle {
    pub fn source(&self) -> &SharedForm {
        &self.source
    }

    pub fn tau(&self) -> &GammaElement {
        &self.tau
    }

    /// Number of memoized values of `f`.
    pub fn memo_len(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }

    fn psi(&self, u: &Monomial, v: &Monomial) -> Rational {
        self.source.eval(u, v)
    }

    /// `f(m)` for a basis monomial.
    pub fn f(&self, m: &Monomial) -> Rational {
        if let Some(v) = self.memo.lock().expect("memo lock").get(m) {
            return v.clone();
        }
        let v = self.compute(m);
        self.memo
            .lock()
            .expect("memo lock")
            .entry(m.clone())
            .or_insert(v)
            .clone()
    }

    pub fn f_element(&self, e: &Element) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in e {
            let v = self.f(m);
            if !v.is_zero() {
                acc += v * c;
            }
        }
        acc
    }

    fn compute(&self, m: &Monomial) -> Rational {
        let sig = self.alg.signature();
        if !m.alpha.is_zero() {
            let q = sig
                .up_range()
                .find(|&q| !m.alpha.coord(q).is_zero())
                .expect("nonzero α has a nonzero grading coordinate");
            return self.compute_graded(q, m);
        }
        if let Some(r) = (0..sig.prefix(3)).find(|&r| m.i.0[r] != 0) {
            let (ir, mur) = (m.i.0[r], m.mu.0[r] as i64);
            if ir != mur {
                return self.psi(&self.alg.euler(r), m) / int(ir - mur);
            }
            let up = m.with_i(m.i.shifted(r, 1));
            return self.psi(&self.alg.partial(r), &up) / int(ir + 1);
        }
        if sig.prefix(3) >= 1 {
            let t = m.with_i(m.i.shifted(0, 1));
            return self.psi(&self.alg.partial(0), &t);
        }
        self.compute_pure_derivation(m)
    }

    /// `α ≠ 0`, with `q` the first coordinate where `α_q ≠ 0`; induction on `|i_q|`.
    fn compute_graded(&self, q: usize, m: &Monomial) -> Rational {
        let aq = m.alpha.coord(q).clone();
        let iq = m.i.0[q];
        if iq >= 0 {
            let mut v = self.psi(&self.alg.partial(q), m);
            if iq != 0 {
                v -= int(iq) * self.f(&m.with_i(m.i.shifted(q, -1)));
            }
            return v / aq;
        }
        let up = m.with_i(m.i.shifted(q, 1));
        if iq == -1 {
            let v = self.psi(&self.alg.euler(q), m) - &aq * self.f(&up);
            return -v / int(1 + m.mu.0[q] as i64);
        }
        let v = self.psi(&self.alg.partial(q), &up) - &aq * self.f(&up);
        v / int(iq + 1)
    }

    /// `ℓ'₃ = 0`, `m = ∂^μ`; induction on `μ` in the level order, using
    /// `[x^τ, x^{-τ}∂^{μ+1_[ℓ]}] = −Σ_{λ≠0} C(μ+1_[ℓ], λ) τ^λ ∂^{μ+1_[ℓ]-λ}`.
    fn compute_pure_derivation(&self, m: &Monomial) -> Rational {
        let ell = self.alg.ell();
        let last = ell - 1;
        let nu = m.mu.add(&DerivIndex::unit(ell, last));
        let unit = DerivIndex::unit(ell, last);

        let x_tau = self.alg.x_power(self.tau.clone());
        let x_neg = self.alg.x_power(self.tau.neg()).with_mu(nu.clone());
        let mut v = self.psi(&x_tau, &x_neg);
        for lam in nu.sub_indices() {
            if lam.is_zero() || lam == unit {
                continue;
            }
            let mut c = Rational::from_integer(BigInt::from(multi_binomial(&nu, &lam).expect("same length")));
            for (p, &k) in lam.0.iter().enumerate() {
                c *= pow(self.tau.coord(p), k);
            }
            if c.is_zero() {
                continue;
            }
            let lower = m.with_mu(nu.checked_sub(&lam).expect("λ ≤ ν"));
            v += c * self.f(&lower);
        }
        let lead = self.tau.coord(last) * int(m.mu.0[last] as i64 + 1);
        -v / lead
    }

    /// Checks both normalization conditions against every monomial of `monos`.
    pub fn check_postconditions(&self, monos: &[Monomial]) -> VerificationReport {
        let mut report = VerificationReport::new("normalize-postconditions");
        let sig = self.alg.signature();
        let mut probes: Vec<Monomial> = Vec::new();
        for p in 0..self.alg.ell() {
            probes.push(self.alg.partial(p));
        }
        for p in 0..sig.prefix(3) {
            probes.push(self.alg.euler(p));
        }
        for m in monos {
            for d in &probes {
                let v = self.eval(d, m);
                report.record(v.is_zero(), || {
                    Failure::new(vec![d.to_string(), m.to_string()], "0", format_rational(&v))
                });
            }
        }
        report
    }

    /// Like [`Self::check_postconditions`], failing with
    /// [`Error::NonCocycleInput`] at the first violation.
    pub fn ensure_postconditions(&self, monos: &[Monomial]) -> Result<VerificationReport> {
        let report = self.check_postconditions(monos);
        if let Some(f) = report.failures.first() {
            return Err(Error::NonCocycleInput(format!(
                "normalized form is {} on ({}, {})",
                f.actual, f.inputs[0], f.inputs[1]
            )));
        }
        Ok(report)
    }
}

impl BilinearForm for NormalizedCocycle {
    fn eval(&self, u: &Monomial, v: &Monomial) -> Rational {
        let psi = self.psi(u, v);
        if u == v {
            return psi;
        }
        psi - self.f_element(&self.alg.bracket_monomials(u, v))
    }

    fn kind(&self) -> FormKind {
        FormKind::Normalized
    }
}

impl std::fmt::Debug for NormalizedCocycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NormalizedCocycle")
            .field("source", &self.source.kind())
            .field("tau", &self.tau)
            .field("memo_len", &self.memo_len())
            .finish()
    }
}
