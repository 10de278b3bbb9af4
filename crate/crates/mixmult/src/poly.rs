//! Polynomial ring elements with coefficients in a runtime-selected field.
//!
//! Elements are sparse maps from monomials to nonzero coefficients. They are
//! the candidate entries for joint reductions and Koszul complexes; the ring
//! operations implemented here are exactly the ones those constructions need
//! (addition, monomial multiples, scalar multiples).

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use std::collections::BTreeMap;

/// A polynomial with nonzero coefficients from `field`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyElement {
    field: FieldSpec,
    terms: BTreeMap<Monomial, Coeff>,
}

impl PolyElement {
    pub fn zero(field: FieldSpec) -> Self {
        PolyElement { field, terms: BTreeMap::new() }
    }

    /// Builds an element from (monomial, coefficient) pairs, combining
    /// repeated monomials and dropping zero coefficients.
    pub fn from_terms(field: FieldSpec, terms: Vec<(Monomial, Coeff)>) -> Result<Self> {
        let mut map: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        let mut nvars: Option<usize> = None;
        for (m, c) in terms {
            match nvars {
                None => nvars = Some(m.nvars()),
                Some(n) if n != m.nvars() => {
                    return Err(Error::input("terms drawn from different rings"));
                }
                _ => {}
            }
            let entry = map.remove(&m);
            let combined = match entry {
                Some(prev) => field.add(&prev, &c),
                None => c,
            };
            if !combined.is_zero() {
                map.insert(m, combined);
            }
        }
        Ok(PolyElement { field, terms: map })
    }

    pub fn monomial(field: FieldSpec, m: Monomial) -> Self {
        let one = field.one();
        PolyElement { field, terms: BTreeMap::from([(m, one)]) }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// When the element has exactly one term, returns it. Single-term
    /// elements admit exact monomial arithmetic (the coefficient is a unit).
    pub fn as_term(&self) -> Option<(&Monomial, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// When the element is a single term with coefficient 1, returns that
    /// monomial.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if *c == self.field.one() {
            Some(m)
        } else {
            None
        }
    }

    pub fn add(&self, other: &PolyElement) -> PolyElement {
        assert_eq!(self.field, other.field, "elements over different fields");
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let combined = match terms.remove(m) {
                Some(prev) => self.field.add(&prev, c),
                None => c.clone(),
            };
            if !combined.is_zero() {
                terms.insert(m.clone(), combined);
            }
        }
        PolyElement { field: self.field, terms }
    }

    pub fn scale(&self, c: &Coeff) -> PolyElement {
        if c.is_zero() {
            return PolyElement::zero(self.field);
        }
        PolyElement {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> PolyElement {
        PolyElement {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Whether every term lies in the monomial ideal. For monomial ideals
    /// this is exactly ideal membership of the polynomial.
    pub fn lies_in(&self, ideal: &MonomialIdeal) -> bool {
        self.terms.keys().all(|m| ideal.contains_monomial(m))
    }

    /// The common total degree of all terms, when the element is homogeneous
    /// and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        if degrees.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Largest total degree among the terms (0 for the zero element).
    pub fn max_term_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn render(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("{c}")
                } else if *c == self.field.one() {
                    m.render(vars)
                } else {
                    format!("{c}*{}", m.render(vars))
                }
            })
            .collect();
        parts.join(" + ")
    }
}
