//! Checkers for the cocycle axioms and the binomial identity used in the
//! `φ_γ` computation.

use num_traits::Zero;
use rayon::prelude::*;

use super::BilinearForm;
use crate::algebra::{Algebra, BracketTable, Element, Monomial};
use crate::error::Result;
use crate::numerics::{format_rational, gen_binomial, int, sign_pow, Rational};
use crate::verify::{print_element, Failure, VerificationReport};

/// Reports every pair with `ψ(u,v) + ψ(v,u) ≠ 0`.
pub fn check_antisymmetry(form: &dyn BilinearForm, pairs: &[(Monomial, Monomial)]) -> VerificationReport {
    let results: Vec<Option<Failure>> = pairs
        .par_iter()
        .map(|(u, v)| {
            let s = form.eval(u, v) + form.eval(v, u);
            (!s.is_zero()).then(|| Failure::new(vec![u.to_string(), v.to_string()], "0", format_rational(&s)))
        })
        .collect();
    collect("antisymmetry", results)
}

/// Cyclic sum `ψ([a,b],c) + ψ([b,c],a) + ψ([c,a],b)` on arbitrary element triples.
pub fn check_cocycle_identity(
    alg: &Algebra,
    form: &dyn BilinearForm,
    triples: &[(Element, Element, Element)],
) -> Result<VerificationReport> {
    let results: Result<Vec<Option<Failure>>> = triples
        .par_iter()
        .map(|(a, b, c)| {
            let s = form.eval_elements(&alg.bracket(a, b)?, c)
                + form.eval_elements(&alg.bracket(b, c)?, a)
                + form.eval_elements(&alg.bracket(c, a)?, b);
            Ok((!s.is_zero()).then(|| {
                Failure::new(
                    vec![print_element(a), print_element(b), print_element(c)],
                    "0",
                    format_rational(&s),
                )
            }))
        })
        .collect();
    Ok(collect("cocycle-identity", results?))
}

/// Values `ψ(t, w)` for every bracket term `t` and every monomial `w` of a
/// [`BracketTable`].
pub struct FormTable<'a> {
    brackets: &'a BracketTable,
    values: Vec<Rational>,
}

impl<'a> FormTable<'a> {
    pub fn new(brackets: &'a BracketTable, form: &dyn BilinearForm) -> Self {
        let n = brackets.len();
        let terms = brackets.terms();
        let monos = brackets.monomials();
        let values = (0..terms.len() * n)
            .into_par_iter()
            .map(|k| form.eval(&terms[k / n], &monos[k % n]))
            .collect();
        FormTable { brackets, values }
    }

    /// `ψ([a, b], c)` by index.
    pub fn bracket_value(&self, a: usize, b: usize, c: usize) -> Rational {
        let n = self.brackets.len();
        let mut acc = Rational::zero();
        for (t, coef) in self.brackets.bracket(a, b) {
            let v = &self.values[*t as usize * n + c];
            if !v.is_zero() {
                acc += v * coef;
            }
        }
        acc
    }
}

/// The cyclic identity on every ordered triple of the table's monomials.
pub fn check_cocycle_identity_exhaustive(brackets: &BracketTable, form: &dyn BilinearForm) -> VerificationReport {
    let table = FormTable::new(brackets, form);
    let n = brackets.len();
    let g: Vec<Rational> = (0..n * n * n)
        .into_par_iter()
        .map(|k| table.bracket_value(k / (n * n), (k / n) % n, k % n))
        .collect();
    let monos = brackets.monomials();
    let results: Vec<Option<Failure>> = (0..n * n * n)
        .into_par_iter()
        .map(|k| {
            let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
            let s = &g[k] + &g[(b * n + c) * n + a] + &g[(c * n + a) * n + b];
            (!s.is_zero()).then(|| {
                Failure::new(
                    vec![monos[a].to_string(), monos[b].to_string(), monos[c].to_string()],
                    "0",
                    format_rational(&s),
                )
            })
        })
        .collect();
    collect("cocycle-identity", results)
}

fn collect(name: &str, results: Vec<Option<Failure>>) -> VerificationReport {
    let mut r = VerificationReport::new(name);
    r.checked = results.len() as u64;
    r.failures = results.into_iter().flatten().collect();
    r.failures.sort();
    r.failed = r.failures.len() as u64;
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialCheck {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl BinomialCheck {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of `Σ_q (-1)^q C(k+1-s, ν-q) C(λ+q, q) = C(μ+ν-s, ν)` with
/// `k = μ+ν+λ`. Only `0 ≤ q ≤ ν` contributes.
pub fn binomial_identity_sides(mu: u32, nu: u32, lam: u32, s: i64) -> (Rational, Rational) {
    let k = (mu + nu + lam) as i64;
    let mut lhs = Rational::zero();
    for q in 0..=nu {
        lhs += sign_pow(q)
            * gen_binomial(&int(k + 1 - s), nu - q)
            * gen_binomial(&int((lam + q) as i64), q);
    }
    let rhs = gen_binomial(&int((mu + nu) as i64 - s), nu);
    (lhs, rhs)
}

/// Checks the identity for `0 ≤ s ≤ μ+ν+λ+1`; `None` outside that range.
pub fn check_binomial_identity(mu: u32, nu: u32, lam: u32, s: i64) -> Option<BinomialCheck> {
    if s < 0 || s > (mu + nu + lam + 1) as i64 {
        return None;
    }
    let (lhs, rhs) = binomial_identity_sides(mu, nu, lam, s);
    Some(BinomialCheck { lhs, rhs })
}
