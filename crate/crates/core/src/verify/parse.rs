//! Text form of elements.
//!
//! ```text
//! element  := term { ("+" | "-") term } ;
//! term     := [ rational "*" ] mono ;
//! mono     := "m[" vec ";" vec ";" vec "]" ;
//! vec      := scalar { "," scalar } ;
//! rational := integer [ "/" positive-integer ] ;
//! ```
//!
//! The bare literal `0` denotes the zero element. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Algebra, Element, JIndex, Monomial};
use crate::error::{Error, Result};
use crate::numerics::{format_rational, to_i64, DerivIndex, Rational};

/// Canonical text: terms in ascending monomial order, `"0"` for zero.
pub fn print_element(e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in e.terms().enumerate() {
        if k == 0 {
            if !c.is_one() {
                out.push_str(&format_rational(c));
                out.push('*');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            let a = c.abs();
            if !a.is_one() {
                out.push_str(&format_rational(&a));
                out.push('*');
            }
        }
        out.push_str(&m.to_string());
    }
    out
}

/// Parses and validates an element against `alg`.
pub fn parse_element(text: &str, alg: &Algebra) -> Result<Element> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        alg,
    };
    let e = p.element()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(&["\"+\"", "\"-\"", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alg: &'a Algebra,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&mut self, expected: &[&str]) -> Error {
        self.skip_ws();
        let found = match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                format!("{:?}", rest.chars().next().unwrap_or(' '))
            }
        };
        Error::Syntax {
            pos: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(self.error(&[&format!("{tok:?}")]))
        }
    }

    fn element(&mut self) -> Result<Element> {
        if self.peek() == Some(b'0') {
            let save = self.pos;
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(Element::zero());
            }
            self.pos = save;
        }
        let mut out = Element::zero();
        let (c, m) = self.term()?;
        out.add_term(m, c);
        loop {
            let sign = match self.peek() {
                Some(b'+') => Rational::one(),
                Some(b'-') => -Rational::one(),
                _ => break,
            };
            self.pos += 1;
            let (c, m) = self.term()?;
            out.add_term(m, c * sign);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Rational, Monomial)> {
        let c = match self.peek() {
            Some(b'm') => Rational::one(),
            Some(b) if b == b'-' || b == b'+' || b.is_ascii_digit() => {
                let c = self.rational()?;
                self.expect("*")?;
                c
            }
            _ => return Err(self.error(&["rational", "\"m[\""])),
        };
        Ok((c, self.mono()?))
    }

    fn integer(&mut self, signed: bool) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if signed && matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error(&["integer"]));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("validated digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer(true)?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.integer(false)?;
            if den.is_zero() {
                self.pos = at;
                return Err(self.error(&["positive integer"]));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn vec(&mut self) -> Result<Vec<Rational>> {
        let mut v = vec![self.rational()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            v.push(self.rational()?);
        }
        Ok(v)
    }

    fn mono(&mut self) -> Result<Monomial> {
        self.expect("m")?;
        self.expect("[")?;
        let alpha = self.vec()?;
        self.expect(";")?;
        let i = self.vec()?;
        self.expect(";")?;
        let mu = self.vec()?;
        self.expect("]")?;
        build_monomial(self.alg, &alpha, &i, &mu)
    }
}

fn show(v: &[Rational]) -> String {
    let parts: Vec<_> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

fn build_monomial(alg: &Algebra, alpha: &[Rational], i: &[Rational], mu: &[Rational]) -> Result<Monomial> {
    let sig = alg.signature();
    let ell = sig.ell();
    if alpha.len() != ell {
        return Err(Error::NotInGamma(show(alpha)));
    }
    let alpha = alg.lattice().from_ambient(alpha)?;

    let ints: Option<Vec<i64>> = i.iter().map(to_i64).collect();
    let j = match ints {
        Some(v) if v.len() == ell => JIndex::new(v),
        _ => return Err(Error::InvalidJIndex(show(i))),
    };
    if !j.is_valid_for(&sig) {
        return Err(Error::InvalidJIndex(show(i)));
    }

    let degs: Option<Vec<u32>> = mu
        .iter()
        .map(|r| to_i64(r).and_then(|x| u32::try_from(x).ok()))
        .collect();
    let mu = match degs {
        Some(v) if v.len() == ell => DerivIndex::new(v),
        _ => return Err(Error::InvalidDerivIndex(show(mu))),
    };
    Monomial::new(&sig, alpha, j, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    fn alg(l: [usize; 4]) -> Algebra {
        Algebra::standard(l[0], l[1], l[2], l[3]).unwrap()
    }

    #[test]
    fn parses_single_monomial() {
        let a = alg([0, 0, 0, 1]);
        let e = parse_element("m[2;0;1]", &a).unwrap();
        assert_eq!(e, Element::monomial(a.monomial(&[2], &[0], &[1]).unwrap()));
    }

    #[test]
    fn parses_two_terms() {
        let a = alg([0, 0, 1, 0]);
        let e = parse_element("3*m[0;1;1] - 1/2*m[0;0;2]", &a).unwrap();
        let mut want = Element::term(int(3), a.monomial(&[0], &[1], &[1]).unwrap());
        want.add_term(a.monomial(&[0], &[0], &[2]).unwrap(), rat(-1, 2));
        assert_eq!(e, want);
        assert_eq!(print_element(&e), "3*m[0;1;1] - 1/2*m[0;0;2]");
    }

    #[test]
    fn rejects_values_outside_gamma() {
        let a = alg([0, 0, 0, 1]);
        assert!(matches!(parse_element("m[1/2;0;0]", &a), Err(Error::NotInGamma(_))));
        assert!(matches!(parse_element("m[1,2;0;0]", &a), Err(Error::NotInGamma(_))));
    }

    #[test]
    fn rejects_invalid_indices() {
        let a = alg([0, 1, 0, 0]);
        assert!(matches!(parse_element("m[0;-1;0]", &a), Err(Error::InvalidJIndex(_))));
        assert!(matches!(parse_element("m[0;1/2;0]", &a), Err(Error::InvalidJIndex(_))));
        assert!(matches!(parse_element("m[0;0;-1]", &a), Err(Error::InvalidDerivIndex(_))));
        let b = alg([0, 0, 0, 1]);
        assert!(matches!(parse_element("m[0;1;0]", &b), Err(Error::InvalidJIndex(_))));
    }

    #[test]
    fn syntax_errors_report_position() {
        let a = alg([0, 0, 0, 1]);
        match parse_element("m[1;0;0] + x", &a) {
            Err(Error::Syntax { pos, expected, .. }) => {
                assert_eq!(pos, 11);
                assert!(expected.iter().any(|t| t.contains("m[")));
            }
            other => panic!("{other:?}"),
        }
        match parse_element("2 m[1;0;0]", &a) {
            Err(Error::Syntax { pos, expected, .. }) => {
                assert_eq!(pos, 2);
                assert_eq!(expected, vec!["\"*\"".to_string()]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_element("1/0*m[0;0;0]", &a), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_element("", &a), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_element("m[0;0;0", &a), Err(Error::Syntax { pos: 7, .. })));
    }

    #[test]
    fn zero_and_cancellation() {
        let a = alg([0, 0, 0, 1]);
        assert!(parse_element("0", &a).unwrap().is_zero());
        assert!(parse_element("  0 ", &a).unwrap().is_zero());
        assert!(parse_element("m[1;0;0] - m[1;0;0]", &a).unwrap().is_zero());
        assert_eq!(print_element(&Element::zero()), "0");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = alg([0, 0, 1, 0]);
        let tight = parse_element("2*m[1;-1;0]-m[0;0;1]", &a).unwrap();
        let loose = parse_element(" 2 * m [ 1 ; -1 ; 0 ] -  m[ 0;0 ;1 ] ", &a).unwrap();
        assert_eq!(tight, loose);
    }

    #[test]
    fn print_round_trips_signs() {
        let a = alg([0, 0, 0, 1]);
        let mut e = Element::term(int(-1), a.monomial(&[0], &[0], &[0]).unwrap());
        e.add_term(a.monomial(&[-2], &[0], &[1]).unwrap(), int(-1));
        e.add_term(a.monomial(&[3], &[0], &[1]).unwrap(), rat(5, 3));
        let text = print_element(&e);
        assert_eq!(text, "-1*m[0;0;0] - m[-2;0;1] + 5/3*m[3;0;1]");
        assert_eq!(parse_element(&text, &a).unwrap(), e);
    }
}
