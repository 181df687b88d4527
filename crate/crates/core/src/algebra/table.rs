//! Precomputed products and brackets over finite monomial sets, with result
//! terms interned so that repeated evaluation works on indices.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::{Algebra, Element, Monomial};
use crate::numerics::Rational;

/// Sparse vector over interned monomials.
pub type Sparse = Vec<(u32, Rational)>;

#[derive(Debug, Default, Clone)]
pub struct Interner {
    index: HashMap<Monomial, u32>,
    items: Vec<Monomial>,
}

impl Interner {
    pub fn intern(&mut self, m: &Monomial) -> u32 {
        if let Some(&k) = self.index.get(m) {
            return k;
        }
        let k = self.items.len() as u32;
        self.index.insert(m.clone(), k);
        self.items.push(m.clone());
        k
    }

    pub fn get(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn items(&self) -> &[Monomial] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn sparse(&mut self, e: &Element) -> Sparse {
        e.terms().map(|(m, c)| (self.intern(m), c.clone())).collect()
    }

    pub fn element(&self, s: &Sparse) -> Element {
        s.iter()
            .map(|(k, c)| (c.clone(), self.items[*k as usize].clone()))
            .collect()
    }
}

/// `op(l, r)` for every `l` in a left list and `r` in a right list.
#[derive(Debug, Clone)]
pub struct OpTable {
    cols: usize,
    entries: Vec<Sparse>,
}

impl OpTable {
    pub fn build<F>(left: &[Monomial], right: &[Monomial], op: F, out: &mut Interner) -> Self
    where
        F: Fn(&Monomial, &Monomial) -> Element + Sync,
    {
        let cols = right.len();
        let raw: Vec<Element> = (0..left.len() * cols)
            .into_par_iter()
            .map(|k| op(&left[k / cols], &right[k % cols]))
            .collect();
        OpTable {
            cols,
            entries: raw.iter().map(|e| out.sparse(e)).collect(),
        }
    }

    pub fn get(&self, l: usize, r: usize) -> &Sparse {
        &self.entries[l * self.cols + r]
    }
}

/// All brackets `[a, b]` for `a, b` in a fixed list of monomials.
#[derive(Debug, Clone)]
pub struct BracketTable {
    monos: Vec<Monomial>,
    terms: Interner,
    table: OpTable,
}

impl BracketTable {
    pub fn new(alg: &Algebra, monos: &[Monomial]) -> Self {
        let mut terms = Interner::default();
        let table = OpTable::build(monos, monos, |a, b| alg.bracket_monomials(a, b), &mut terms);
        BracketTable {
            monos: monos.to_vec(),
            terms,
            table,
        }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    /// Distinct monomials occurring in some bracket.
    pub fn terms(&self) -> &[Monomial] {
        self.terms.items()
    }

    pub fn bracket(&self, a: usize, b: usize) -> &Sparse {
        self.table.get(a, b)
    }

    pub fn bracket_element(&self, a: usize, b: usize) -> Element {
        self.terms.element(self.bracket(a, b))
    }
}

/// Dense accumulator over an interned index space that remembers which
/// slots it touched.
pub struct Scratch {
    slots: Vec<Rational>,
    touched: Vec<u32>,
}

impl Scratch {
    pub fn new(len: usize) -> Self {
        Scratch {
            slots: vec![Rational::zero(); len],
            touched: Vec::new(),
        }
    }

    /// `self += scale · v`.
    pub fn add_scaled(&mut self, v: &Sparse, scale: &Rational) {
        for (k, c) in v {
            let slot = &mut self.slots[*k as usize];
            if slot.is_zero() {
                self.touched.push(*k);
            }
            *slot += c * scale;
        }
    }

    /// Nonzero entries, in index order; resets the accumulator.
    pub fn drain(&mut self) -> Sparse {
        self.touched.sort_unstable();
        self.touched.dedup();
        let mut out = Vec::new();
        for k in self.touched.drain(..) {
            let v = std::mem::take(&mut self.slots[k as usize]);
            if !v.is_zero() {
                out.push((k, v));
            }
        }
        out
    }
}
