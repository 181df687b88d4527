//! The closed-form cocycles on the rank-one algebras.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{BilinearForm, FormKind};
use crate::algebra::{Algebra, GammaElement, Monomial, Signature};
use crate::error::{Error, Result};
use crate::numerics::{factorial, gen_binomial, int, powdiv, sign_pow, stirling2_row, Rational};

fn require(alg: &Algebra, what: &'static str, counts: [usize; 4]) -> Result<()> {
    let expected = Signature::new(counts[0], counts[1], counts[2], counts[3])?;
    if alg.signature() != expected {
        return Err(Error::WrongSignature {
            what,
            expected,
            found: alg.signature(),
        });
    }
    Ok(())
}

/// The cocycle on the signature `(0,0,0,1)` spanning its second cohomology.
///
/// The closed form `δ_{α+β,0} (-1)^k k! l! C(α+k, k+l+1)` is its value on
/// the falling-factorial basis `x^α [∂]_k`; with `∂^μ = Σ_k S(μ,k) [∂]_k` the
/// value on `x^α∂^μ, x^β∂^ν` is the Stirling transform of that table. Both
/// agree when `μ, ν ≤ 1`. Read directly on `x^α∂^μ` the closed form violates
/// the cocycle identity once `μ + ν ≥ 2`; see [`Phi0::closed_form`].
#[derive(Debug, Clone, Default)]
pub struct Phi0;

impl Phi0 {
    pub fn new(alg: &Algebra) -> Result<Self> {
        require(alg, "phi0", [0, 0, 0, 1])?;
        Ok(Phi0)
    }

    /// `(-1)^k k! l! C(α+k, k+l+1)`, without the delta factor.
    pub fn closed_form(alpha: &Rational, k: u32, l: u32) -> Rational {
        let top = gen_binomial(&(alpha + int(k as i64)), k + l + 1);
        if top.is_zero() {
            return top;
        }
        sign_pow(k) * factorial(k) * factorial(l) * top
    }
}

impl BilinearForm for Phi0 {
    fn eval(&self, u: &Monomial, v: &Monomial) -> Rational {
        let alpha = u.alpha.coord(0);
        if !(alpha + v.alpha.coord(0)).is_zero() {
            return Rational::zero();
        }
        let (mu, nu) = (u.mu.0[0], v.mu.0[0]);
        let (sm, sn) = (stirling2_row(mu), stirling2_row(nu));
        let mut acc = Rational::zero();
        for (k, a) in sm.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (l, b) in sn.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let c = Phi0::closed_form(alpha, k as u32, l as u32);
                if !c.is_zero() {
                    acc += c * Rational::from_integer(a * b);
                }
            }
        }
        acc
    }

    fn kind(&self) -> FormKind {
        FormKind::Phi0
    }
}

/// `φ_γ` on the signature `(0,0,1,0)`:
/// `δ_{α+β,γ} (-1)^μ μ! ν! Σ_s C(i,s) α^{μ+ν+1-s}/(μ+ν+1-s)! · γ^{s-i-j-1}/(s-i-j-1)!`.
///
/// For `γ = 0` the last factor is `δ_{i+j,s-1}` through the `0⁰ = 1`
/// convention of [`powdiv`].
#[derive(Debug, Clone)]
pub struct PhiGamma {
    gamma: GammaElement,
}

impl PhiGamma {
    pub fn new(alg: &Algebra, gamma: GammaElement) -> Result<Self> {
        require(alg, "phi_gamma", [0, 0, 1, 0])?;
        if gamma.embedding().len() != 1 || gamma.coeffs().len() != alg.lattice().rank() {
            return Err(Error::SignatureMismatch);
        }
        Ok(PhiGamma { gamma })
    }

    pub fn gamma(&self) -> &GammaElement {
        &self.gamma
    }
}

/// The `φ_γ` value with the delta already satisfied.
fn phi_gamma_value(gamma: &Rational, u: &Monomial, v: &Monomial) -> Rational {
    let alpha = u.alpha.coord(0);
    let (i, j) = (u.i.0[0], v.i.0[0]);
    let (mu, nu) = (u.mu.0[0], v.mu.0[0]);
    let n = (mu + nu + 1) as i64;
    let ir = int(i);
    let mut acc = Rational::zero();
    for s in 0..=n {
        let g = powdiv(gamma, s - i - j - 1);
        if g.is_zero() {
            continue;
        }
        let a = powdiv(alpha, n - s);
        if a.is_zero() {
            continue;
        }
        let c = gen_binomial(&ir, s as u32);
        if c.is_zero() {
            continue;
        }
        acc += c * a * g;
    }
    if acc.is_zero() {
        return acc;
    }
    sign_pow(mu) * factorial(mu) * factorial(nu) * acc
}

impl BilinearForm for PhiGamma {
    fn eval(&self, u: &Monomial, v: &Monomial) -> Rational {
        if u.alpha.add(&v.alpha) != self.gamma {
            return Rational::zero();
        }
        phi_gamma_value(self.gamma.coord(0), u, v)
    }

    fn kind(&self) -> FormKind {
        FormKind::PhiGamma(self.gamma.clone())
    }
}

/// `Σ_γ b_γ φ_γ`; on a monomial pair only `γ = α + β` contributes.
#[derive(Debug, Clone)]
pub struct Combined {
    coeffs: BTreeMap<GammaElement, Rational>,
}

impl Combined {
    pub fn new(alg: &Algebra, coeffs: impl IntoIterator<Item = (GammaElement, Rational)>) -> Result<Self> {
        require(alg, "combined", [0, 0, 1, 0])?;
        let mut map = BTreeMap::new();
        for (g, b) in coeffs {
            if g.coeffs().len() != alg.lattice().rank() {
                return Err(Error::SignatureMismatch);
            }
            let slot: &mut Rational = map.entry(g).or_insert_with(Rational::zero);
            *slot += b;
        }
        map.retain(|_, b: &mut Rational| !b.is_zero());
        Ok(Combined { coeffs: map })
    }
}

impl BilinearForm for Combined {
    fn eval(&self, u: &Monomial, v: &Monomial) -> Rational {
        let gamma = u.alpha.add(&v.alpha);
        match self.coeffs.get(&gamma) {
            Some(b) => phi_gamma_value(gamma.coord(0), u, v) * b,
            None => Rational::zero(),
        }
    }

    fn kind(&self) -> FormKind {
        FormKind::Combined
    }
}
