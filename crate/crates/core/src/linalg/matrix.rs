//! Dense exact matrices and Gaussian elimination with infeasibility certificates.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{rational_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// `yᵀ A` for a row vector `y`.
    pub fn left_mul_vec(&self, y: &[Rational]) -> Result<Vec<Rational>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "row vector of length {} times {}x{} matrix",
                y.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (r, yr) in y.iter().enumerate() {
            if yr.is_zero() {
                continue;
            }
            for (c, a) in self.row(r).iter().enumerate() {
                if !a.is_zero() {
                    out[c] += yr * a;
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut work = Echelon::new(self, None, false);
        work.reduce();
        work.pivots.len()
    }
}

/// A rational row combination `c` with `cᵀA = 0` and `cᵀb = value ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub multipliers: Vec<Multiplier>,
    #[serde(with = "rational_string")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multiplier {
    pub equation: usize,
    #[serde(with = "rational_string")]
    pub multiplier: Rational,
}

impl Certificate {
    /// Re-checks the certificate against the system it was derived from.
    pub fn verify(&self, a: &RationalMatrix, b: &[Rational]) -> bool {
        if self.value.is_zero() || b.len() != a.rows() {
            return false;
        }
        let mut y = vec![Rational::zero(); a.rows()];
        for m in &self.multipliers {
            if m.equation >= a.rows() {
                return false;
            }
            y[m.equation] += &m.multiplier;
        }
        let Ok(combo) = a.left_mul_vec(&y) else {
            return false;
        };
        let rhs = y
            .iter()
            .zip(b)
            .fold(Rational::zero(), |acc, (c, v)| acc + c * v);
        combo.iter().all(Zero::is_zero) && rhs == self.value
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
    /// Pivot columns in elimination order.
    pub pivots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible(Solution),
    Infeasible(Certificate),
}

/// Solves `A x = b` exactly.
///
/// Pivots are chosen positionally: columns left to right, and within a column
/// the first row at or below the current one with a nonzero entry.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Result<SolveOutcome> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let mut work = Echelon::new(a, Some(b), true);
    work.reduce();

    let n = a.cols();
    let rank = work.pivots.len();
    for r in rank..a.rows() {
        let rhs = &work.rows[r][n];
        if !rhs.is_zero() {
            let multipliers = work.rows[r][n + 1..]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(equation, v)| Multiplier {
                    equation,
                    multiplier: v.clone(),
                })
                .collect();
            return Ok(SolveOutcome::Infeasible(Certificate {
                multipliers,
                value: rhs.clone(),
            }));
        }
    }

    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in work.pivots.iter().enumerate() {
        particular[c] = work.rows[r][n].clone();
    }
    let pivot_set: Vec<bool> = (0..n).map(|c| work.pivots.contains(&c)).collect();
    let nullspace = (0..n)
        .filter(|&c| !pivot_set[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (r, &pc) in work.pivots.iter().enumerate() {
                v[pc] = -work.rows[r][free].clone();
            }
            v
        })
        .collect();
    Ok(SolveOutcome::Feasible(Solution {
        particular,
        nullspace,
        pivots: work.pivots,
    }))
}

/// Row-reduction workspace: `[A | b | I]` with the identity block tracking
/// row operations.
struct Echelon {
    rows: Vec<Vec<Rational>>,
    cols: usize,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(a: &RationalMatrix, b: Option<&[Rational]>, track: bool) -> Self {
        let m = a.rows();
        let rows = (0..m)
            .map(|r| {
                let mut row = a.row(r).to_vec();
                if let Some(b) = b {
                    row.push(b[r].clone());
                }
                if track {
                    row.extend((0..m).map(|k| {
                        if k == r {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    }));
                }
                row
            })
            .collect();
        Echelon {
            rows,
            cols: a.cols(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&mut self) {
        let m = self.rows.len();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&k| !self.rows[k][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].recip();
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            let pivot_row = std::mem::take(&mut self.rows[r]);
            for (k, row) in self.rows.iter_mut().enumerate() {
                if k == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (dst, src) in row.iter_mut().zip(&pivot_row) {
                    if !src.is_zero() {
                        *dst -= &factor * src;
                    }
                }
            }
            self.rows[r] = pivot_row;
            self.pivots.push(c);
            r += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_system() {
        let b = vec![int(3), rat(-1, 2), int(7)];
        match solve(&RationalMatrix::identity(3), &b).unwrap() {
            SolveOutcome::Feasible(s) => {
                assert_eq!(s.particular, b);
                assert!(s.nullspace.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_matrix_nonzero_rhs() {
        let a = RationalMatrix::zeros(2, 3);
        let b = vec![int(0), int(5)];
        match solve(&a, &b).unwrap() {
            SolveOutcome::Infeasible(cert) => {
                assert_eq!(cert.multipliers.len(), 1);
                assert_eq!(cert.multipliers[0].equation, 1);
                assert_eq!(cert.multipliers[0].multiplier, int(1));
                assert!(cert.verify(&a, &b));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        assert!(solve(&RationalMatrix::identity(2), &[int(1)]).is_err());
    }

    #[test]
    fn random_systems_verify_by_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let rows: Vec<Vec<Rational>> = (0..6)
                .map(|_| (0..6).map(|_| int(rng.gen_range(-5..=5))).collect())
                .collect();
            let a = RationalMatrix::from_rows(rows).unwrap();
            let b: Vec<Rational> = (0..6).map(|_| int(rng.gen_range(-9..=9))).collect();
            match solve(&a, &b).unwrap() {
                SolveOutcome::Feasible(s) => {
                    assert_eq!(a.mul_vec(&s.particular).unwrap(), b);
                    for v in &s.nullspace {
                        assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
                    }
                    assert_eq!(s.pivots.len() + s.nullspace.len(), 6);
                }
                SolveOutcome::Infeasible(cert) => assert!(cert.verify(&a, &b)),
            }
        }
    }

    #[test]
    fn rank_deficient_system() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let b = vec![int(1), int(3), int(0)];
        let SolveOutcome::Infeasible(cert) = solve(&a, &b).unwrap() else {
            panic!("expected infeasible");
        };
        assert!(cert.verify(&a, &b));
        let b2 = vec![int(1), int(2), int(0)];
        let SolveOutcome::Feasible(s) = solve(&a, &b2).unwrap() else {
            panic!("expected feasible");
        };
        assert_eq!(s.nullspace.len(), 1);
        assert_eq!(a.mul_vec(&s.particular).unwrap(), b2);
    }

    #[test]
    fn deterministic_pivots() {
        let a = m(&[&[0, 1, 1], &[1, 1, 0], &[1, 2, 1]]);
        let b = vec![int(1), int(1), int(2)];
        let first = solve(&a, &b).unwrap();
        for _ in 0..3 {
            assert_eq!(solve(&a, &b).unwrap(), first);
        }
        let SolveOutcome::Feasible(s) = first else {
            panic!()
        };
        assert_eq!(s.pivots, vec![0, 1]);
    }

    #[test]
    fn tampered_certificate_fails() {
        let a = RationalMatrix::zeros(1, 1);
        let b = vec![int(2)];
        let SolveOutcome::Infeasible(mut cert) = solve(&a, &b).unwrap() else {
            panic!()
        };
        cert.value = int(3);
        assert!(!cert.verify(&a, &b));
    }
}
