//! Derivations, the associative product and the commutator bracket.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Element, GammaElement, GammaLattice, JIndex, Monomial, Signature};
use crate::error::{Error, Result};
use crate::numerics::{falling_factorial, int, multi_binomial, pow, DerivIndex, Rational};

/// The algebra `𝒲(ℓ₁,ℓ₂,ℓ₃,ℓ₄,Γ)` of generalized differential operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    signature: Signature,
    lattice: GammaLattice,
}

impl Algebra {
    pub fn new(lattice: GammaLattice) -> Self {
        Algebra {
            signature: lattice.signature(),
            lattice,
        }
    }

    /// The algebra over the standard lattice of [`GammaLattice::standard`].
    pub fn standard(l1: usize, l2: usize, l3: usize, l4: usize) -> Result<Self> {
        let sig = Signature::new(l1, l2, l3, l4)?;
        Ok(Algebra::new(GammaLattice::standard(sig)?))
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn lattice(&self) -> &GammaLattice {
        &self.lattice
    }

    pub fn ell(&self) -> usize {
        self.signature.ell()
    }

    pub fn gamma(&self, coeffs: &[i64]) -> Result<GammaElement> {
        self.lattice.element(coeffs)
    }

    /// `x^{α,ī}∂^μ` from Γ-coordinates, exponents and derivation degrees.
    pub fn monomial(&self, alpha: &[i64], i: &[i64], mu: &[u32]) -> Result<Monomial> {
        Monomial::new(
            &self.signature,
            self.gamma(alpha)?,
            JIndex::new(i.iter().copied()),
            DerivIndex::new(mu.iter().copied()),
        )
    }

    pub fn identity(&self) -> Monomial {
        let ell = self.ell();
        Monomial {
            alpha: self.lattice.zero(),
            i: JIndex::zero(ell),
            mu: DerivIndex::zero(ell),
        }
    }

    /// `∂_p` as an element, i.e. `x^{0,0}∂^{1_[p]}`.
    pub fn partial(&self, p: usize) -> Monomial {
        let ell = self.ell();
        Monomial {
            alpha: self.lattice.zero(),
            i: JIndex::zero(ell),
            mu: DerivIndex::unit(ell, p),
        }
    }

    /// `t^{1_[p]}∂_p`; only meaningful for `p < ℓ'₃`.
    pub fn euler(&self, p: usize) -> Monomial {
        let ell = self.ell();
        Monomial {
            alpha: self.lattice.zero(),
            i: JIndex::unit(ell, p),
            mu: DerivIndex::unit(ell, p),
        }
    }

    /// The degree-zero monomial `x^α` for `α ∈ Γ`.
    pub fn x_power(&self, alpha: GammaElement) -> Monomial {
        let ell = self.ell();
        Monomial {
            alpha,
            i: JIndex::zero(ell),
            mu: DerivIndex::zero(ell),
        }
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        let ell = self.ell();
        if m.mu.len() != ell
            || m.i.0.len() != ell
            || m.alpha.coeffs().len() != self.lattice.rank()
            || m.alpha.embedding().len() != ell
        {
            return Err(Error::SignatureMismatch);
        }
        Ok(())
    }

    pub fn check_element(&self, e: &Element) -> Result<()> {
        e.monomials().try_for_each(|m| self.check_monomial(m))
    }

    /// Down-grading operator `∂⁻_p` on the function part of `m`.
    pub fn apply_down(&self, p: usize, m: &Monomial) -> Result<Element> {
        let range = self.signature.down_range();
        if !range.contains(&p) {
            return Err(out_of_range("apply_down", p, range));
        }
        let ip = m.i.0[p];
        if ip == 0 {
            return Ok(Element::zero());
        }
        Ok(Element::term(int(ip), m.with_i(m.i.shifted(p, -1))))
    }

    /// Grading operator `∂⁺_q`: multiplication by `α_q`.
    pub fn apply_up(&self, q: usize, m: &Monomial) -> Result<Element> {
        let range = self.signature.up_range();
        if !range.contains(&q) {
            return Err(out_of_range("apply_up", q, range));
        }
        Ok(Element::term(m.alpha.coord(q).clone(), m.clone()))
    }

    /// The derivation `∂_p` acting on the function part of every term.
    pub fn apply_partial(&self, p: usize, e: &Element) -> Result<Element> {
        if p >= self.ell() {
            return Err(out_of_range("apply_partial", p, 0..self.ell()));
        }
        let mut out = Element::zero();
        for (m, c) in e {
            if self.signature.down_range().contains(&p) {
                out.add_scaled(&self.apply_down(p, m)?, c);
            }
            if self.signature.up_range().contains(&p) {
                out.add_scaled(&self.apply_up(p, m)?, c);
            }
        }
        Ok(out)
    }

    /// `∂^λ` applied to every term, in closed form.
    pub fn apply_deriv_power(&self, lam: &DerivIndex, e: &Element) -> Result<Element> {
        if lam.len() != self.ell() {
            return Err(Error::LengthMismatch {
                left: lam.len(),
                right: self.ell(),
            });
        }
        let mut out = Element::zero();
        for (m, c) in e {
            for (coef, i) in self.deriv_power_terms(lam, &m.alpha, &m.i) {
                out.add_term(m.with_i(i), coef * c);
            }
        }
        Ok(out)
    }

    /// Expansion of `∂^λ(x^{β,j})` as `Σ coef · x^{β, j - r}`.
    ///
    /// For each coordinate the down and up parts commute, so
    /// `∂_p^k = Σ_r C(k,r) (∂⁻_p)^r (∂⁺_p)^{k-r}`; terms whose coefficient
    /// vanishes are dropped before the shifted exponent is built.
    fn deriv_power_terms(
        &self,
        lam: &DerivIndex,
        beta: &GammaElement,
        j: &JIndex,
    ) -> Vec<(Rational, JIndex)> {
        let sig = &self.signature;
        let l1 = sig.l(1);
        let l3p = sig.prefix(3);
        let mut acc: Vec<(Rational, JIndex)> = vec![(Rational::one(), j.clone())];
        for (p, &k) in lam.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let factors: Vec<(Rational, u32)> = if p < l1 {
                vec![(falling_factorial(&int(j.0[p]), k), k)]
            } else if p < l3p {
                let jp = int(j.0[p]);
                let bp = beta.coord(p);
                (0..=k)
                    .map(|r| {
                        let c = binom_u32(k, r) * falling_factorial(&jp, r) * pow(bp, k - r);
                        (c, r)
                    })
                    .collect()
            } else {
                vec![(pow(beta.coord(p), k), 0)]
            };
            let factors: Vec<_> = factors.into_iter().filter(|(c, _)| !c.is_zero()).collect();
            if factors.is_empty() {
                return Vec::new();
            }
            let mut next = Vec::with_capacity(acc.len() * factors.len());
            for (c0, j0) in &acc {
                for (c, r) in &factors {
                    next.push((c0 * c, j0.shifted(p, -(*r as i64))));
                }
            }
            acc = next;
        }
        acc
    }

    /// The associative product
    /// `u∂^μ ⊙ v∂^ν = u Σ_{λ ≤ μ} C(μ,λ) ∂^λ(v) ∂^{μ+ν-λ}`.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = Element::zero();
        for (ma, ca) in a {
            for (mb, cb) in b {
                self.mul_monomials_into(ma, mb, &(ca * cb), &mut out);
            }
        }
        Ok(out)
    }

    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Element {
        let mut out = Element::zero();
        self.mul_monomials_into(a, b, &Rational::one(), &mut out);
        out
    }

    fn mul_monomials_into(&self, a: &Monomial, b: &Monomial, scale: &Rational, out: &mut Element) {
        let alpha = a.alpha.add(&b.alpha);
        let top = a.mu.add(&b.mu);
        for lam in a.mu.sub_indices() {
            let c = multi_binomial(&a.mu, &lam).expect("same length");
            let c = Rational::from_integer(BigInt::from(c)) * scale;
            let mu = top.checked_sub(&lam).expect("λ ≤ μ");
            for (coef, j) in self.deriv_power_terms(&lam, &b.alpha, &b.i) {
                let i = JIndex(a.i.0.iter().zip(&j.0).map(|(x, y)| x + y).collect());
                out.add_term(
                    Monomial {
                        alpha: alpha.clone(),
                        i,
                        mu: mu.clone(),
                    },
                    coef * &c,
                );
            }
        }
    }

    /// Commutator `a ⊙ b − b ⊙ a`.
    pub fn bracket(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }

    pub fn bracket_monomials(&self, a: &Monomial, b: &Monomial) -> Element {
        let mut out = Element::zero();
        self.mul_monomials_into(a, b, &Rational::one(), &mut out);
        self.mul_monomials_into(b, a, &-Rational::one(), &mut out);
        out
    }

    /// Product in the commutative algebra: `x^{α,ī}·x^{β,j} = x^{α+β,ī+j}`.
    pub fn function_product(&self, u: &Element, v: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (mu, cu) in u {
            for (mv, cv) in v {
                if !mu.is_function() || !mv.is_function() {
                    return Err(Error::InvalidDerivIndex(format!(
                        "{} is not a function",
                        if mu.is_function() { mv } else { mu }
                    )));
                }
                let i = JIndex(mu.i.0.iter().zip(&mv.i.0).map(|(x, y)| x + y).collect());
                out.add_term(
                    Monomial {
                        alpha: mu.alpha.add(&mv.alpha),
                        i,
                        mu: mu.mu.clone(),
                    },
                    cu * cv,
                );
            }
        }
        Ok(out)
    }

    /// Bracket of degree-one operators,
    /// `[u∂_p, v∂_q] = u∂_p(v)∂_q − v∂_q(u)∂_p` for functions `u, v`.
    pub fn witt_bracket(&self, u: &Element, p: usize, v: &Element, q: usize) -> Result<Element> {
        let left = self.function_product(u, &self.apply_partial(p, v)?)?;
        let right = self.function_product(v, &self.apply_partial(q, u)?)?;
        let ell = self.ell();
        let lift = |e: &Element, r: usize| -> Element {
            e.terms()
                .map(|(m, c)| (c.clone(), m.with_mu(DerivIndex::unit(ell, r))))
                .collect()
        };
        Ok(lift(&left, q).sub(&lift(&right, p)))
    }

    /// `u∂_p` as an element, for a function `u`.
    pub fn times_partial(&self, u: &Element, p: usize) -> Element {
        let ell = self.ell();
        u.terms()
            .map(|(m, c)| (c.clone(), m.with_mu(m.mu.add(&DerivIndex::unit(ell, p)))))
            .collect()
    }
}

fn binom_u32(n: u32, k: u32) -> Rational {
    let mb = multi_binomial(&DerivIndex::new([n]), &DerivIndex::new([k])).expect("same length");
    Rational::from_integer(BigInt::from(mb))
}

fn out_of_range(op: &'static str, index: usize, range: std::ops::Range<usize>) -> Error {
    Error::IndexOutOfRange {
        op,
        index,
        lo: range.start,
        hi: range.end.saturating_sub(1),
    }
}
