use std::sync::Arc;

use num_traits::Zero;
use weylk_core::algebra::Algebra;
use weylk_core::cocycle::{zero_form, BilinearForm, Coboundary, LinearFunctional, Phi0, PhiGamma};
use weylk_core::linalg::{build_system, triviality_test, TrivialityOutcome};
use weylk_core::numerics::{int, Rational};
use weylk_core::verify::{enumerate_box, BoxBounds};

#[test]
fn phi0_is_not_a_coboundary() {
    let a = Algebra::standard(0, 0, 0, 1).unwrap();
    let bx = enumerate_box(&BoxBounds::new(2, 0, 2), &a);
    let r = triviality_test(&a, &Phi0::new(&a).unwrap(), &bx).unwrap();
    let TrivialityOutcome::Infeasible(cert) = &r.outcome else {
        panic!("expected a certificate");
    };
    assert!(r.reverify());
    assert!(!cert.value.is_zero());
    let details = r.details();
    assert_eq!(details["reverified"], true);
    assert!(details["combination"].as_array().unwrap().len() == cert.multipliers.len());

    let mut tampered = cert.clone();
    tampered.value += int(1);
    assert!(!tampered.verify(&r.system.matrix, &r.system.rhs));
}

#[test]
fn coboundaries_are_feasible() {
    let a = Algebra::standard(0, 0, 1, 0).unwrap();
    let bx = enumerate_box(&BoxBounds::new(1, 1, 1), &a);
    let f = LinearFunctional::from_values(bx.iter().step_by(3).enumerate().map(|(k, m)| (m.clone(), int(k as i64 + 1))));
    let cob = Coboundary::new(&a, f);
    let r = triviality_test(&a, &cob, &bx).unwrap();
    let TrivialityOutcome::Feasible(g) = &r.outcome else {
        panic!("coboundary reported infeasible");
    };
    let recovered = Coboundary::new(&a, g.clone());
    for (u, v) in &r.system.pairs {
        assert_eq!(recovered.eval(u, v), cob.eval(u, v));
    }

    let z = triviality_test(&a, &*zero_form(), &bx).unwrap();
    match z.outcome {
        TrivialityOutcome::Feasible(g) => assert!(g.is_empty()),
        TrivialityOutcome::Infeasible(_) => panic!("zero form reported infeasible"),
    }
}

#[test]
fn witt_cocycle_is_not_a_coboundary() {
    let a = Algebra::standard(0, 0, 1, 0).unwrap();
    let l = |m: i64| a.monomial(&[0], &[m + 1], &[1]).unwrap();
    let set: Vec<_> = (-3..=3).map(l).collect();
    let r = triviality_test(&a, &PhiGamma::new(&a, a.lattice().zero()).unwrap(), &set).unwrap();
    assert!(r.outcome.is_infeasible());
}

#[test]
fn system_shape() {
    let a = Algebra::standard(0, 0, 0, 1).unwrap();
    let bx = enumerate_box(&BoxBounds::new(1, 0, 1), &a);
    let mut dup = bx.clone();
    dup.extend(bx.iter().cloned());
    let sys = build_system(&a, &Phi0::new(&a).unwrap(), &dup).unwrap();
    assert_eq!(sys.pairs.len(), bx.len() * (bx.len() - 1) / 2);
    assert!(sys.pairs.iter().all(|(u, v)| u < v));
    assert_eq!(sys.matrix.cols(), sys.unknowns.len());
    assert!(sys.unknowns.windows(2).all(|w| w[0] < w[1]));
    let _: Arc<Rational> = Arc::new(sys.rhs[0].clone());
}
