use num_traits::Zero;
use proptest::prelude::*;
use weylk_core::algebra::{Algebra, Element, Monomial};
use weylk_core::cocycle::{BilinearForm, PhiGamma};
use weylk_core::extension::virasoro_table;
use weylk_core::linalg::{solve, RationalMatrix, SolveOutcome};
use weylk_core::numerics::{rat, Rational};
use weylk_core::verify::{enumerate_box, parse_element, print_element, BoxBounds};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

fn pool(sig: [usize; 4], b: (u32, u32, u32)) -> (Algebra, Vec<Monomial>) {
    let a = Algebra::standard(sig[0], sig[1], sig[2], sig[3]).unwrap();
    let bx = enumerate_box(&BoxBounds::new(b.0, b.1, b.2), &a);
    (a, bx)
}

fn element(bx: &[Monomial], picks: &[(usize, Rational)]) -> Element {
    picks.iter().map(|(k, c)| (c.clone(), bx[k % bx.len()].clone())).collect()
}

fn picks() -> impl Strategy<Value = Vec<(usize, Rational)>> {
    prop::collection::vec((0usize..10_000, small_rational()), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_outcomes_verify(
        rows in 1usize..6, cols in 1usize..6,
        entries in prop::collection::vec(-2i64..=2, 36),
        rhs in prop::collection::vec(-3i64..=3, 6),
    ) {
        let data: Vec<Vec<Rational>> = (0..rows)
            .map(|r| (0..cols).map(|c| rat(entries[r * 6 + c], 1)).collect())
            .collect();
        let a = RationalMatrix::from_rows(data).unwrap();
        let b: Vec<Rational> = rhs[..rows].iter().map(|&x| rat(x, 1)).collect();
        match solve(&a, &b).unwrap() {
            SolveOutcome::Feasible(s) => {
                prop_assert_eq!(a.mul_vec(&s.particular).unwrap(), b.clone());
                for v in &s.nullspace {
                    prop_assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
                }
                prop_assert_eq!(s.pivots.len() + s.nullspace.len(), cols);
            }
            SolveOutcome::Infeasible(c) => prop_assert!(c.verify(&a, &b)),
        }
    }

    #[test]
    fn parser_round_trip(sig in 0usize..3, p in picks()) {
        let (a, bx) = match sig {
            0 => pool([0, 0, 0, 1], (3, 0, 3)),
            1 => pool([0, 0, 1, 0], (2, 2, 2)),
            _ => pool([1, 1, 1, 1], (1, 1, 1)),
        };
        let e = element(&bx, &p);
        let text = print_element(&e);
        prop_assert_eq!(parse_element(&text, &a).unwrap(), e);
    }

    #[test]
    fn elements_stay_canonical(p in picks(), q in picks()) {
        let (_, bx) = pool([0, 0, 1, 0], (1, 1, 1));
        let (x, y) = (element(&bx, &p), element(&bx, &q));
        prop_assert!(x.sub(&x).is_empty());
        prop_assert!(x.add(&y).terms().all(|(_, c)| !c.is_zero()));
        prop_assert_eq!(x.add(&y).sub(&y), x);
    }

    #[test]
    fn partial_is_a_derivation_on_functions(p in picks(), q in picks(), d in 0usize..4) {
        let (a, bx) = pool([1, 1, 1, 1], (1, 1, 1));
        let funcs: Vec<Monomial> = bx.into_iter().filter(|m| m.is_function()).collect();
        let (x, f) = (element(&funcs, &p), element(&funcs, &q));
        let lhs = a.apply_partial(d, &a.mul(&x, &f).unwrap()).unwrap();
        let rhs = a
            .mul(&a.apply_partial(d, &x).unwrap(), &f)
            .unwrap()
            .add(&a.mul(&x, &a.apply_partial(d, &f).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn forms_extend_bilinearly(p in picks(), q in picks(), c in small_rational()) {
        let (a, bx) = pool([0, 0, 1, 0], (2, 2, 2));
        let form = PhiGamma::new(&a, a.gamma(&[1]).unwrap()).unwrap();
        let (x, y) = (element(&bx, &p), element(&bx, &q));
        let direct: Rational = x
            .terms()
            .flat_map(|(u, cu)| y.terms().map(move |(v, cv)| (u, v, cu * cv)))
            .map(|(u, v, k)| form.eval(u, v) * k)
            .sum();
        prop_assert_eq!(form.eval_elements(&x, &y), direct.clone());
        prop_assert_eq!(form.eval_elements(&x.scale(&c), &y), direct * &c);
        prop_assert_eq!(form.eval_elements(&x, &y), -form.eval_elements(&y, &x));
    }
}

#[test]
fn virasoro_central_column_is_odd() {
    let a = Algebra::standard(0, 0, 1, 0).unwrap();
    let rows = virasoro_table(&a, 6).unwrap();
    let at = |m: i64, n: i64| rows.iter().find(|r| r.m == m && r.n == n).unwrap();
    for r in &rows {
        assert_eq!(at(-r.m, -r.n).central, -r.central.clone());
    }
}
