//! Bilinear forms on `𝒲`: the closed-form cocycles `φ₀` and `φ_γ`,
//! coboundaries, normalization and the identity checkers.

mod checks;
mod forms;
mod normalize;
mod spec;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Algebra, Element, GammaElement, Monomial};
use crate::numerics::Rational;

pub use checks::{
    binomial_identity_sides, check_antisymmetry, check_binomial_identity, check_cocycle_identity,
    check_cocycle_identity_exhaustive, BinomialCheck, FormTable,
};
pub use forms::{Combined, Phi0, PhiGamma};
pub use normalize::{normalize, NormalizedCocycle};
pub use spec::{CocycleSpec, CombinedCoeff, FunctionalEntry, MonomialSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormKind {
    Phi0,
    PhiGamma(GammaElement),
    Coboundary,
    Combined,
    Normalized,
    Sum,
    Custom,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormKind::Phi0 => write!(f, "phi0"),
            FormKind::PhiGamma(g) => write!(f, "phi_gamma({g})"),
            FormKind::Coboundary => write!(f, "coboundary"),
            FormKind::Combined => write!(f, "combined"),
            FormKind::Normalized => write!(f, "normalized"),
            FormKind::Sum => write!(f, "sum"),
            FormKind::Custom => write!(f, "custom"),
        }
    }
}

/// A bilinear form on `𝒲`, given by its values on pairs of basis monomials.
pub trait BilinearForm: Send + Sync {
    fn eval(&self, u: &Monomial, v: &Monomial) -> Rational;

    fn kind(&self) -> FormKind;

    /// Bilinear extension to elements.
    fn eval_elements(&self, a: &Element, b: &Element) -> Rational {
        let mut acc = Rational::zero();
        for (u, cu) in a {
            for (v, cv) in b {
                let x = self.eval(u, v);
                if !x.is_zero() {
                    acc += x * cu * cv;
                }
            }
        }
        acc
    }
}

pub type SharedForm = Arc<dyn BilinearForm>;

impl<F: BilinearForm + ?Sized> BilinearForm for Arc<F> {
    fn eval(&self, u: &Monomial, v: &Monomial) -> Rational {
        (**self).eval(u, v)
    }

    fn kind(&self) -> FormKind {
        (**self).kind()
    }
}

/// Linear functional with finite support; unlisted monomials map to zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearFunctional {
    values: BTreeMap<Monomial, Rational>,
}

impl LinearFunctional {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values(values: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut f = Self::new();
        for (m, v) in values {
            f.set(m, v);
        }
        f
    }

    pub fn set(&mut self, m: Monomial, v: Rational) {
        if v.is_zero() {
            self.values.remove(&m);
        } else {
            self.values.insert(m, v);
        }
    }

    pub fn value(&self, m: &Monomial) -> Rational {
        self.values.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn apply(&self, e: &Element) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in e {
            if let Some(v) = self.values.get(m) {
                acc += v * c;
            }
        }
        acc
    }
}

/// `f([a, b])` for a linear functional `f`.
pub fn coboundary_eval(alg: &Algebra, f: &LinearFunctional, a: &Element, b: &Element) -> crate::Result<Rational> {
    Ok(f.apply(&alg.bracket(a, b)?))
}

/// The trivial cocycle `ψ_f(u, v) = f([u, v])`.
#[derive(Debug, Clone)]
pub struct Coboundary {
    alg: Algebra,
    f: LinearFunctional,
}

impl Coboundary {
    pub fn new(alg: &Algebra, f: LinearFunctional) -> Self {
        Coboundary { alg: alg.clone(), f }
    }

    pub fn functional(&self) -> &LinearFunctional {
        &self.f
    }
}

impl BilinearForm for Coboundary {
    fn eval(&self, u: &Monomial, v: &Monomial) -> Rational {
        if u == v || self.f.is_empty() {
            return Rational::zero();
        }
        self.f.apply(&self.alg.bracket_monomials(u, v))
    }

    fn kind(&self) -> FormKind {
        FormKind::Coboundary
    }
}

/// `Σ cₖ ψₖ`.
#[derive(Clone, Default)]
pub struct Sum {
    parts: Vec<(Rational, SharedForm)>,
}

impl Sum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, scale: Rational, form: SharedForm) -> Self {
        self.parts.push((scale, form));
        self
    }
}

impl BilinearForm for Sum {
    fn eval(&self, u: &Monomial, v: &Monomial) -> Rational {
        let mut acc = Rational::zero();
        for (c, form) in &self.parts {
            let x = form.eval(u, v);
            if !x.is_zero() {
                acc += x * c;
            }
        }
        acc
    }

    fn kind(&self) -> FormKind {
        FormKind::Sum
    }
}

type Evaluator = dyn Fn(&Monomial, &Monomial) -> Rational + Send + Sync;

/// A form given by an arbitrary evaluator.
#[derive(Clone)]
pub struct Custom(Arc<Evaluator>);

impl Custom {
    pub fn new(f: impl Fn(&Monomial, &Monomial) -> Rational + Send + Sync + 'static) -> Self {
        Custom(Arc::new(f))
    }
}

impl BilinearForm for Custom {
    fn eval(&self, u: &Monomial, v: &Monomial) -> Rational {
        (self.0)(u, v)
    }

    fn kind(&self) -> FormKind {
        FormKind::Custom
    }
}

/// `base` with `delta` added at `(u, v)` and subtracted at `(v, u)`; stays
/// antisymmetric but in general breaks the cyclic identity.
#[derive(Clone)]
pub struct Perturbed {
    base: SharedForm,
    u: Monomial,
    v: Monomial,
    delta: Rational,
}

impl Perturbed {
    pub fn new(base: SharedForm, u: Monomial, v: Monomial, delta: Rational) -> Self {
        Perturbed { base, u, v, delta }
    }
}

impl BilinearForm for Perturbed {
    fn eval(&self, u: &Monomial, v: &Monomial) -> Rational {
        let x = self.base.eval(u, v);
        if self.u == self.v {
            return x;
        }
        if *u == self.u && *v == self.v {
            x + &self.delta
        } else if *u == self.v && *v == self.u {
            x - &self.delta
        } else {
            x
        }
    }

    fn kind(&self) -> FormKind {
        FormKind::Custom
    }
}

/// The zero form.
pub fn zero_form() -> SharedForm {
    Arc::new(Custom::new(|_, _| Rational::zero()))
}
