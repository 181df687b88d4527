//! One-dimensional central extensions `𝒲 ⊕ 𝔽c` twisted by a 2-cocycle.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, BracketTable, Element, Signature};
use crate::cocycle::{check_cocycle_identity_exhaustive, BilinearForm, PhiGamma};
use crate::error::{Error, Result};
use crate::numerics::{format_rational, rational_string, Rational};
use crate::verify::{laws, print_element, Failure, VerificationReport};

/// `body + central·c`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtendedElement {
    pub body: Element,
    pub central: Rational,
}

impl ExtendedElement {
    pub fn new(body: Element, central: Rational) -> Self {
        ExtendedElement { body, central }
    }

    pub fn from_body(body: Element) -> Self {
        Self::new(body, Rational::zero())
    }

    pub fn central_only(c: Rational) -> Self {
        Self::new(Element::zero(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero() && self.central.is_zero()
    }

    pub fn add(&self, other: &ExtendedElement) -> ExtendedElement {
        ExtendedElement::new(self.body.add(&other.body), &self.central + &other.central)
    }

    pub fn neg(&self) -> ExtendedElement {
        ExtendedElement::new(self.body.neg(), -self.central.clone())
    }
}

impl std::fmt::Display for ExtendedElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + ({})c", print_element(&self.body), format_rational(&self.central))
    }
}

/// `[a, b] = [a.body, b.body] + ψ(a.body, b.body)c`; `c` is central.
pub fn ext_bracket(
    alg: &Algebra,
    a: &ExtendedElement,
    b: &ExtendedElement,
    form: &dyn BilinearForm,
) -> Result<ExtendedElement> {
    let body = alg.bracket(&a.body, &b.body)?;
    let central = form.eval_elements(&a.body, &b.body);
    Ok(ExtendedElement::new(body, central))
}

/// Cyclic Jacobi sum for each triple; both coordinates must vanish.
pub fn check_ext_jacobi(
    alg: &Algebra,
    form: &dyn BilinearForm,
    triples: &[(ExtendedElement, ExtendedElement, ExtendedElement)],
) -> Result<VerificationReport> {
    let results: Result<Vec<Option<Failure>>> = triples
        .par_iter()
        .map(|(a, b, c)| {
            let br = |x: &ExtendedElement, y: &ExtendedElement| ext_bracket(alg, x, y, form);
            let sum = br(&br(a, b)?, c)?
                .add(&br(&br(b, c)?, a)?)
                .add(&br(&br(c, a)?, b)?);
            Ok((!sum.is_zero()).then(|| {
                Failure::new(
                    vec![a.to_string(), b.to_string(), c.to_string()],
                    "0 + (0)c",
                    sum.to_string(),
                )
            }))
        })
        .collect();
    let mut report = VerificationReport::new("extension-jacobi");
    for f in results? {
        report.record(f.is_none(), || f.expect("failure present"));
    }
    Ok(report)
}

/// Extension Jacobi on every ordered triple of the table's monomials: the
/// body part is the Jacobi identity of `𝒲` and the central part is the
/// cyclic cocycle identity of `form`.
pub fn check_ext_jacobi_exhaustive(
    alg: &Algebra,
    form: &dyn BilinearForm,
    table: &BracketTable,
) -> VerificationReport {
    let mut body = laws::check_jacobi_with(alg, table);
    for f in &mut body.failures {
        f.expected = "0 (body)".into();
    }
    let mut central = check_cocycle_identity_exhaustive(table, form);
    for f in &mut central.failures {
        f.expected = "0 (central)".into();
    }
    let mut report = VerificationReport::new("extension-jacobi");
    report.absorb(body);
    report.absorb(central);
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VirasoroRow {
    pub m: i64,
    pub n: i64,
    #[serde(with = "rational_string")]
    pub body: Rational,
    #[serde(with = "rational_string")]
    pub central: Rational,
}

/// `[L_m, L_n]` for `L_m = t^{m+1}∂` and `|m|, |n| ≤ bound`, twisted by
/// `φ_{γ=0}`: the coefficient of `L_{m+n}` in the body and the central term.
pub fn virasoro_table(alg: &Algebra, bound: i64) -> Result<Vec<VirasoroRow>> {
    let expected = Signature::new(0, 0, 1, 0)?;
    if alg.signature() != expected {
        return Err(Error::WrongSignature {
            what: "virasoro table",
            expected,
            found: alg.signature(),
        });
    }
    let form = PhiGamma::new(alg, alg.lattice().zero())?;
    let l = |m: i64| alg.monomial(&vec![0; alg.lattice().rank()], &[m + 1], &[1]);
    let mut rows = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            let (lm, ln) = (l(m)?, l(n)?);
            let out = ext_bracket(
                alg,
                &ExtendedElement::from_body(Element::monomial(lm)),
                &ExtendedElement::from_body(Element::monomial(ln)),
                &form,
            )?;
            let target = l(m + n)?;
            let body = out.body.coefficient(&target);
            if out.body.len() > usize::from(!body.is_zero()) {
                return Err(Error::NonCocycleInput(format!(
                    "[L_{m}, L_{n}] has terms outside L_{}",
                    m + n
                )));
            }
            rows.push(VirasoroRow {
                m,
                n,
                body,
                central: out.central,
            });
        }
    }
    Ok(rows)
}

/// Aligned text rendering of [`virasoro_table`] rows.
pub fn format_virasoro_table(rows: &[VirasoroRow]) -> String {
    let cells: Vec<[String; 4]> = rows
        .iter()
        .map(|r| {
            [
                r.m.to_string(),
                r.n.to_string(),
                format_rational(&r.body),
                format_rational(&r.central),
            ]
        })
        .collect();
    let header = ["m", "n", "body", "central"];
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |row: [&str; 4]| {
        let parts: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:>w$}")).collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = line(header);
    out.push('\n');
    for row in &cells {
        out.push_str(&line([&row[0], &row[1], &row[2], &row[3]]));
        out.push('\n');
    }
    out
}
