//! Associativity, Jacobi and Witt-compatibility checks for the algebra.

use rayon::prelude::*;

use crate::algebra::{Algebra, BracketTable, Element, Interner, Monomial, OpTable, Scratch};
use crate::error::Result;
use crate::verify::{print_element, Failure, VerificationReport};

fn collect(name: &str, checked: usize, mut failures: Vec<Failure>) -> VerificationReport {
    let mut r = VerificationReport::new(name);
    r.checked = checked as u64;
    failures.sort();
    r.failed = failures.len() as u64;
    r.failures = failures;
    r
}

fn triple_inputs(monos: &[Monomial], a: usize, b: usize, c: usize) -> Vec<String> {
    vec![monos[a].to_string(), monos[b].to_string(), monos[c].to_string()]
}

/// `(a⊙b)⊙c = a⊙(b⊙c)` for every ordered triple of `monos`.
pub fn check_associativity_exhaustive(alg: &Algebra, monos: &[Monomial]) -> VerificationReport {
    let n = monos.len();
    let mul = |a: &Monomial, b: &Monomial| alg.mul_monomials(a, b);
    let mut pairs = Interner::default();
    let p1 = OpTable::build(monos, monos, mul, &mut pairs);
    let mut out = Interner::default();
    let left = OpTable::build(pairs.items(), monos, mul, &mut out);
    let right = OpTable::build(monos, pairs.items(), mul, &mut out);
    let width = out.len();

    let failures: Vec<Failure> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut scratch = Scratch::new(width);
            let mut found = Vec::new();
            for b in 0..n {
                for c in 0..n {
                    for (t, x) in p1.get(a, b) {
                        scratch.add_scaled(left.get(*t as usize, c), x);
                    }
                    for (t, x) in p1.get(b, c) {
                        scratch.add_scaled(right.get(a, *t as usize), &-x);
                    }
                    let diff = scratch.drain();
                    if !diff.is_empty() {
                        found.push(Failure::new(
                            triple_inputs(monos, a, b, c),
                            "(a*b)*c - a*(b*c) = 0",
                            print_element(&out.element(&diff)),
                        ));
                    }
                }
            }
            found
        })
        .collect();
    collect("assoc", n * n * n, failures)
}

/// Jacobi identity for every ordered triple of `monos`.
pub fn check_jacobi_exhaustive(alg: &Algebra, monos: &[Monomial]) -> VerificationReport {
    let table = BracketTable::new(alg, monos);
    check_jacobi_with(alg, &table)
}

/// Jacobi identity over the monomials of a prebuilt bracket table.
pub fn check_jacobi_with(alg: &Algebra, table: &BracketTable) -> VerificationReport {
    let monos = table.monomials();
    let n = monos.len();
    let mut out = Interner::default();
    let second = OpTable::build(table.terms(), monos, |a, b| alg.bracket_monomials(a, b), &mut out);
    let width = out.len();

    let failures: Vec<Failure> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut scratch = Scratch::new(width);
            let mut found = Vec::new();
            for b in 0..n {
                for c in 0..n {
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for (t, coef) in table.bracket(x, y) {
                            scratch.add_scaled(second.get(*t as usize, z), coef);
                        }
                    }
                    let sum = scratch.drain();
                    if !sum.is_empty() {
                        found.push(Failure::new(
                            triple_inputs(monos, a, b, c),
                            "0",
                            print_element(&out.element(&sum)),
                        ));
                    }
                }
            }
            found
        })
        .collect();
    collect("jacobi", n * n * n, failures)
}

/// Associativity on explicit element triples.
pub fn check_associativity_on_triples(
    alg: &Algebra,
    triples: &[(Element, Element, Element)],
) -> Result<VerificationReport> {
    on_triples(triples, "assoc", "(a*b)*c - a*(b*c) = 0", |a, b, c| {
        Ok(alg.mul(&alg.mul(a, b)?, c)?.sub(&alg.mul(a, &alg.mul(b, c)?)?))
    })
}

/// Jacobi identity on explicit element triples.
pub fn check_jacobi_on_triples(alg: &Algebra, triples: &[(Element, Element, Element)]) -> Result<VerificationReport> {
    on_triples(triples, "jacobi", "0", |a, b, c| {
        Ok(alg
            .bracket(&alg.bracket(a, b)?, c)?
            .add(&alg.bracket(&alg.bracket(b, c)?, a)?)
            .add(&alg.bracket(&alg.bracket(c, a)?, b)?))
    })
}

fn on_triples(
    triples: &[(Element, Element, Element)],
    name: &str,
    expected: &str,
    law: impl Fn(&Element, &Element, &Element) -> Result<Element> + Sync,
) -> Result<VerificationReport> {
    let found: Result<Vec<Option<Failure>>> = triples
        .par_iter()
        .map(|(a, b, c)| {
            let r = law(a, b, c)?;
            Ok((!r.is_zero()).then(|| {
                Failure::new(
                    vec![print_element(a), print_element(b), print_element(c)],
                    expected,
                    print_element(&r),
                )
            }))
        })
        .collect();
    Ok(collect(name, triples.len(), found?.into_iter().flatten().collect()))
}

/// `[u∂_p, v∂_q]` computed as a commutator agrees with the Witt formula
/// `u∂_p(v)∂_q − v∂_q(u)∂_p` for functions `u, v` and all `p, q`.
pub fn check_witt_compat(alg: &Algebra, pairs: &[(Element, Element)]) -> Result<VerificationReport> {
    let ell = alg.ell();
    let results: Result<Vec<Vec<Failure>>> = pairs
        .par_iter()
        .map(|(u, v)| {
            let mut found = Vec::new();
            for p in 0..ell {
                for q in 0..ell {
                    let lhs = alg.bracket(&alg.times_partial(u, p), &alg.times_partial(v, q))?;
                    let rhs = alg.witt_bracket(u, p, v, q)?;
                    if lhs != rhs {
                        found.push(Failure::new(
                            vec![print_element(u), p.to_string(), print_element(v), q.to_string()],
                            print_element(&rhs),
                            print_element(&lhs),
                        ));
                    }
                }
            }
            Ok(found)
        })
        .collect();
    let failures = results?.into_iter().flatten().collect();
    Ok(collect("witt-compat", pairs.len() * ell * ell, failures))
}
