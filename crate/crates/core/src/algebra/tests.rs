use num_traits::{One, Zero};

use super::*;
use crate::numerics::{binomial_i, falling_factorial, gen_binomial, int, pow, DerivIndex, Rational};

fn alg(l1: usize, l2: usize, l3: usize, l4: usize) -> Algebra {
    Algebra::standard(l1, l2, l3, l4).unwrap()
}

fn mono(a: &Algebra, alpha: &[i64], i: &[i64], mu: &[u32]) -> Monomial {
    a.monomial(alpha, i, mu).unwrap()
}

fn el(m: Monomial) -> Element {
    Element::monomial(m)
}

/// Rank-one box: α ∈ [-g, g], i ∈ [-j, j] (clipped to J⃗), μ ∈ [0, m].
fn rank_one_box(a: &Algebra, g: i64, j: i64, m: u32) -> Vec<Monomial> {
    let sig = a.signature();
    let (ilo, ihi) = if sig.prefix(3) == 0 {
        (0, 0)
    } else if sig.prefix(2) == 1 {
        (0, j)
    } else {
        (-j, j)
    };
    let mut out = Vec::new();
    for alpha in -g..=g {
        for i in ilo..=ihi {
            for mu in 0..=m {
                out.push(mono(a, &[alpha], &[i], &[mu]));
            }
        }
    }
    out
}

#[test]
fn apply_down_examples() {
    let a = alg(0, 1, 0, 0);
    let t2 = mono(&a, &[0], &[2], &[0]);
    assert_eq!(
        a.apply_down(0, &t2).unwrap(),
        Element::term(int(2), mono(&a, &[0], &[1], &[0]))
    );
    let x = mono(&a, &[1], &[0], &[0]);
    assert!(a.apply_down(0, &x).unwrap().is_zero());

    let b = alg(0, 0, 1, 0);
    let tm1 = mono(&b, &[0], &[-1], &[0]);
    assert_eq!(
        b.apply_down(0, &tm1).unwrap(),
        Element::term(int(-1), mono(&b, &[0], &[-2], &[0]))
    );

    let c = alg(0, 0, 0, 1);
    assert!(matches!(
        c.apply_down(0, &c.identity()),
        Err(crate::Error::IndexOutOfRange { .. })
    ));
}

#[test]
fn apply_up_examples() {
    let a = alg(0, 0, 0, 1);
    let x3 = mono(&a, &[3], &[0], &[2]);
    assert_eq!(a.apply_up(0, &x3).unwrap(), Element::term(int(3), x3.clone()));

    let b = alg(0, 0, 1, 0);
    let t = mono(&b, &[0], &[4], &[1]);
    assert!(b.apply_up(0, &t).unwrap().is_zero());
    let m = mono(&b, &[2], &[-3], &[1]);
    let out = b.apply_up(0, &m).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out.coefficient(&m), int(2));

    let c = alg(1, 0, 0, 1);
    let id = c.identity();
    assert!(c.apply_up(0, &id).is_err());
}

#[test]
fn apply_partial_examples() {
    let a = alg(0, 0, 1, 0);
    let t = el(mono(&a, &[0], &[1], &[0]));
    assert_eq!(a.apply_partial(0, &t).unwrap(), el(a.identity()));

    let b = alg(0, 0, 0, 1);
    let x = mono(&b, &[-2], &[0], &[0]);
    assert_eq!(b.apply_partial(0, &el(x.clone())).unwrap(), Element::term(int(-2), x));

    for s in [alg(0, 0, 0, 1), alg(0, 0, 1, 0), alg(1, 1, 1, 1)] {
        for p in 0..s.ell() {
            assert!(s.apply_partial(p, &el(s.identity())).unwrap().is_zero());
        }
        assert!(s.apply_partial(s.ell(), &el(s.identity())).is_err());
    }
}

#[test]
fn deriv_power_examples() {
    let a = alg(0, 0, 1, 0);
    let t2 = el(mono(&a, &[0], &[2], &[0]));
    assert_eq!(a.apply_deriv_power(&DerivIndex::zero(1), &t2).unwrap(), t2);
    assert_eq!(
        a.apply_deriv_power(&DerivIndex::new([2]), &t2).unwrap(),
        Element::term(int(2), a.identity())
    );
}

fn iterate_partials(a: &Algebra, lam: &DerivIndex, e: &Element, reverse: bool) -> Element {
    let mut order: Vec<usize> = (0..a.ell()).collect();
    if reverse {
        order.reverse();
    }
    let mut cur = e.clone();
    for p in order {
        for _ in 0..lam.0[p] {
            cur = a.apply_partial(p, &cur).unwrap();
        }
    }
    cur
}

#[test]
fn deriv_power_matches_iterated_partials() {
    let a = alg(1, 1, 1, 1);
    let lams = DerivIndex::new([2, 2, 2, 2]).sub_indices();
    for alpha in [[0, 0, 0], [1, -1, 2], [0, 2, -1]] {
        for i in [[0, 0, 0, 0], [2, 1, -2, 0], [1, 3, 2, 0]] {
            let m = el(mono(&a, &alpha, &i, &[1, 0, 0, 1]));
            for lam in lams.iter().step_by(5) {
                let closed = a.apply_deriv_power(lam, &m).unwrap();
                assert_eq!(closed, iterate_partials(&a, lam, &m, false));
                assert_eq!(closed, iterate_partials(&a, lam, &m, true));
            }
        }
    }
}

#[test]
fn mul_examples() {
    let a = alg(0, 0, 1, 0);
    let tdt = el(mono(&a, &[0], &[1], &[1]));
    let expect = el(mono(&a, &[0], &[2], &[2])).add(&el(mono(&a, &[0], &[1], &[1])));
    assert_eq!(a.mul(&tdt, &tdt).unwrap(), expect);

    let xa = el(mono(&a, &[2], &[-1], &[0]));
    let xb = el(mono(&a, &[-3], &[4], &[0]));
    assert_eq!(a.mul(&xa, &xb).unwrap(), el(mono(&a, &[-1], &[3], &[0])));

    let b = alg(0, 0, 0, 1);
    let d = el(b.partial(0));
    let x = mono(&b, &[5], &[0], &[0]);
    let expect = Element::term(int(5), x.clone()).add(&el(mono(&b, &[5], &[0], &[1])));
    assert_eq!(b.mul(&d, &el(x)).unwrap(), expect);
}

#[test]
fn mul_rejects_foreign_elements() {
    let a = alg(0, 0, 1, 0);
    let b = alg(1, 1, 1, 1);
    let e = el(b.identity());
    assert!(matches!(a.mul(&el(a.identity()), &e), Err(crate::Error::SignatureMismatch)));
    assert!(a.bracket(&e, &e).is_err());
}

#[test]
fn bracket_examples() {
    let b = alg(0, 0, 0, 1);
    let xb = mono(&b, &[-4], &[0], &[0]);
    assert_eq!(
        b.bracket(&el(b.partial(0)), &el(xb.clone())).unwrap(),
        Element::term(int(-4), xb)
    );
    let xa = el(mono(&b, &[2], &[0], &[0]));
    let xc = el(mono(&b, &[7], &[0], &[0]));
    assert!(b.bracket(&xa, &xc).unwrap().is_zero());

    let a = alg(0, 0, 1, 0);
    let t = el(mono(&a, &[0], &[1], &[0]));
    let tdt = el(mono(&a, &[0], &[1], &[1]));
    assert_eq!(a.bracket(&tdt, &t).unwrap(), t);
}

#[test]
fn associativity_and_jacobi_small_boxes() {
    for a in [alg(0, 0, 0, 1), alg(0, 0, 1, 0), alg(0, 1, 0, 0)] {
        let bx = rank_one_box(&a, 1, 1, 1);
        for u in &bx {
            for v in &bx {
                let uv = a.mul_monomials(u, v);
                let buv = a.bracket_monomials(u, v);
                for w in &bx {
                    let w = el(w.clone());
                    let left = a.mul(&uv, &w).unwrap();
                    let right = a.mul(&el(u.clone()), &a.mul(&el(v.clone()), &w).unwrap()).unwrap();
                    assert_eq!(left, right, "assoc {u} {v}");

                    let j1 = a.bracket(&buv, &w).unwrap();
                    let j2 = a
                        .bracket(&a.bracket(&el(v.clone()), &w).unwrap(), &el(u.clone()))
                        .unwrap();
                    let j3 = a
                        .bracket(&a.bracket(&w, &el(u.clone())).unwrap(), &el(v.clone()))
                        .unwrap();
                    assert!(j1.add(&j2).add(&j3).is_zero(), "jacobi {u} {v}");
                }
            }
        }
    }
}

#[test]
fn derivation_property_on_functions() {
    let a = alg(1, 1, 1, 1);
    let us = [
        mono(&a, &[1, 0, -1], &[2, 1, -1, 0], &[1, 0, 1, 0]),
        mono(&a, &[0, 1, 1], &[0, 0, 2, 0], &[0, 2, 0, 1]),
    ];
    let vs = [
        mono(&a, &[-1, 2, 0], &[1, 2, -2, 0], &[0, 0, 0, 0]),
        mono(&a, &[0, 0, 1], &[3, 0, 1, 0], &[0, 0, 0, 0]),
    ];
    for u in &us {
        for v in &vs {
            let (u, v) = (el(u.clone()), el(v.clone()));
            for p in 0..4 {
                let lhs = a.apply_partial(p, &a.mul(&u, &v).unwrap()).unwrap();
                let rhs = a
                    .mul(&a.apply_partial(p, &u).unwrap(), &v)
                    .unwrap()
                    .add(&a.mul(&u, &a.apply_partial(p, &v).unwrap()).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn derivations_commute() {
    let a = alg(1, 1, 1, 1);
    let e = el(mono(&a, &[2, -1, 1], &[3, 2, -2, 0], &[1, 1, 0, 0]))
        .add(&Element::term(int(3), mono(&a, &[0, 1, 0], &[1, 0, 1, 0], &[0, 0, 2, 1])));
    for p in 0..4 {
        for q in 0..4 {
            let pq = a.apply_partial(p, &a.apply_partial(q, &e).unwrap()).unwrap();
            let qp = a.apply_partial(q, &a.apply_partial(p, &e).unwrap()).unwrap();
            assert_eq!(pq, qp);
        }
    }
}

#[test]
fn witt_compatibility() {
    let a = alg(1, 1, 1, 1);
    let funcs = [
        mono(&a, &[0, 0, 0], &[1, 0, 0, 0], &[0; 4]),
        mono(&a, &[1, 0, -1], &[2, 1, -1, 0], &[0; 4]),
        mono(&a, &[0, 2, 1], &[0, 3, 2, 0], &[0; 4]),
        mono(&a, &[-1, 1, 0], &[0, 0, -3, 0], &[0; 4]),
    ];
    for u in &funcs {
        for v in &funcs {
            let (ue, ve) = (el(u.clone()), el(v.clone()));
            for p in 0..4 {
                for q in 0..4 {
                    let lhs = a
                        .bracket(&a.times_partial(&ue, p), &a.times_partial(&ve, q))
                        .unwrap();
                    assert_eq!(lhs, a.witt_bracket(&ue, p, &ve, q).unwrap());
                }
            }
        }
    }
}

/// Closed-form commutator for rank-one Γ and ℓ = ℓ₄ = 1.
fn bracket_closed_form_l4(a: &Algebra, u: &Monomial, v: &Monomial) -> Element {
    let (al, be) = (u.alpha.coord(0).clone(), v.alpha.coord(0).clone());
    let (mu, nu) = (u.mu.0[0], v.mu.0[0]);
    let alpha = u.alpha.add(&v.alpha);
    let mut out = Element::zero();
    for s in 0..=mu + nu {
        let c = binomial_i(mu as i64, s) * pow(&be, s) - binomial_i(nu as i64, s) * pow(&al, s);
        let m = Monomial::new(
            &a.signature(),
            alpha.clone(),
            JIndex::zero(1),
            DerivIndex::new([mu + nu - s]),
        )
        .unwrap();
        out.add_term(m, c);
    }
    out
}

/// Closed-form commutator for rank-one Γ and ℓ = ℓ₃ = 1.
fn bracket_closed_form_l3(a: &Algebra, u: &Monomial, v: &Monomial) -> Element {
    let (al, be) = (u.alpha.coord(0).clone(), v.alpha.coord(0).clone());
    let (i, j) = (u.i.0[0], v.i.0[0]);
    let (mu, nu) = (u.mu.0[0], v.mu.0[0]);
    let alpha = u.alpha.add(&v.alpha);
    let mut out = Element::zero();
    for s in 0..=mu + nu {
        for r in 0..=s {
            let sr = binomial_i(s as i64, r);
            let c = binomial_i(mu as i64, s) * &sr * falling_factorial(&int(j), r) * pow(&be, s - r)
                - binomial_i(nu as i64, s) * &sr * falling_factorial(&int(i), r) * pow(&al, s - r);
            if c.is_zero() {
                continue;
            }
            let m = Monomial::new(
                &a.signature(),
                alpha.clone(),
                JIndex::new([i + j - r as i64]),
                DerivIndex::new([mu + nu - s]),
            )
            .unwrap();
            out.add_term(m, c);
        }
    }
    out
}

#[test]
fn specialized_bracket_formulas() {
    let a = alg(0, 0, 0, 1);
    let bx = rank_one_box(&a, 2, 0, 2);
    for u in &bx {
        for v in &bx {
            assert_eq!(a.bracket_monomials(u, v), bracket_closed_form_l4(&a, u, v));
        }
    }
    let b = alg(0, 0, 1, 0);
    let bx = rank_one_box(&b, 2, 2, 2);
    for u in &bx {
        for v in &bx {
            assert_eq!(b.bracket_monomials(u, v), bracket_closed_form_l3(&b, u, v));
        }
    }
}

#[test]
fn locally_nilpotent_derivations() {
    let a = alg(2, 0, 1, 1);
    for i0 in 0..4 {
        for i1 in 0..3 {
            let m = mono(&a, &[1, -1], &[i0, i1, -2, 0], &[1, 0, 2, 0]);
            for (p, ip) in [(0usize, i0), (1, i1)] {
                let mut cur = el(m.clone());
                for _ in 0..=ip {
                    cur = a.apply_partial(p, &cur).unwrap();
                }
                assert!(cur.is_zero(), "p={p} m={m}");
            }
        }
    }
}

#[test]
fn identity_is_unit_and_central() {
    let a = alg(0, 0, 1, 0);
    let one = el(a.identity());
    for m in rank_one_box(&a, 1, 1, 2) {
        let e = el(m);
        assert_eq!(a.mul(&one, &e).unwrap(), e);
        assert_eq!(a.mul(&e, &one).unwrap(), e);
    }
    assert_eq!(Rational::one(), gen_binomial(&int(4), 4));
}
