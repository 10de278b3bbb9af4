//! Monomial ideals in canonical minimal-generator form, with exact ideal
//! arithmetic: sums, products, powers, colons, saturations, intersections,
//! and minimal primes.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use std::collections::BTreeSet;

/// A monomial ideal, stored as its unique minimal generating set (an
/// antichain under divisibility), sorted in graded lexicographic order.
///
/// The zero ideal is the empty antichain; the unit ideal is generated by 1.
/// Structural equality therefore coincides with ideal equality.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // Sorted by degree, so only earlier generators can divide g.
        if !kept.iter().any(|h| h.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, reduced to canonical form.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        for g in &gens {
            assert_eq!(g.nvars(), nvars, "generator from a different ring");
        }
        MonomialIdeal { nvars, gens: minimalize(gens) }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    /// The maximal ideal (x_1, ..., x_n).
    pub fn maximal(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: (0..nvars).map(|i| Monomial::var(i, nvars)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Largest total degree among the minimal generators (0 for zero/unit).
    pub fn max_gen_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Smallest total degree among the minimal generators; `None` for the
    /// zero ideal. No monomial of smaller degree lies in the ideal.
    pub fn min_gen_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).min()
    }

    /// Membership: a monomial lies in the ideal iff some generator divides it.
    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Ideal containment `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains_monomial(g))
    }

    /// Ideal sum.
    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.nvars, other.nvars, "ideals from different rings");
        if self.is_unit() || other.is_unit() {
            return MonomialIdeal::unit(self.nvars);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal { nvars: self.nvars, gens: minimalize(gens) }
    }

    /// Ideal product. Errors when the operands live in different rings.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.nvars != other.nvars {
            return Err(Error::input(format!(
                "ideal product across different rings ({} vs {} variables)",
                self.nvars, other.nvars
            )));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ok(MonomialIdeal { nvars: self.nvars, gens: minimalize(gens) })
    }

    /// Multiplies every generator by a fixed monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal {
            nvars: self.nvars,
            gens: self.gens.iter().map(|g| g.mul(m)).collect(),
        }
    }

    /// `self^n`, with `self^0` the unit ideal.
    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..n {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// Intersection of two monomial ideals (pairwise lcms).
    pub fn intersection(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.nvars, other.nvars, "ideals from different rings");
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        MonomialIdeal { nvars: self.nvars, gens: minimalize(gens) }
    }

    /// Colon by a single monomial: `(self : m)`.
    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal {
            nvars: self.nvars,
            gens: minimalize(self.gens.iter().map(|g| g.quot(m)).collect()),
        }
    }

    /// Ideal colon `(self : other)`. The colon by the zero ideal is the unit
    /// ideal.
    pub fn colon(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.nvars, other.nvars, "ideals from different rings");
        let mut acc = MonomialIdeal::unit(self.nvars);
        for g in &other.gens {
            acc = acc.intersection(&self.colon_monomial(g));
        }
        acc
    }

    /// Saturation `(self : other^∞)`, computed as the stable value of
    /// iterated colons.
    pub fn colon_saturate(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(other);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Minimal primes over the ideal, each a set of variable indices.
    ///
    /// Computed as the minimal transversals of the generator supports. The
    /// zero ideal yields `{∅}` (the zero prime of the ambient ring); the unit
    /// ideal has no primes over it and is an input error.
    pub fn minimal_primes(&self) -> Result<Vec<BTreeSet<usize>>> {
        if self.is_unit() {
            return Err(Error::input("the unit ideal has no minimal primes"));
        }
        let mut covers: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
        for g in &self.gens {
            let support = g.support();
            let mut next: Vec<BTreeSet<usize>> = Vec::new();
            for cover in &covers {
                if support.iter().any(|v| cover.contains(v)) {
                    next.push(cover.clone());
                } else {
                    for &v in &support {
                        let mut extended = cover.clone();
                        extended.insert(v);
                        next.push(extended);
                    }
                }
            }
            // Prune non-minimal covers.
            next.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
            next.dedup();
            let mut pruned: Vec<BTreeSet<usize>> = Vec::new();
            for s in next {
                if !pruned.iter().any(|t| t.is_subset(&s)) {
                    pruned.push(s);
                }
            }
            covers = pruned;
        }
        covers.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
        Ok(covers)
    }

    /// Whether the radical is the maximal ideal (every minimal prime is the
    /// full variable set). False for the zero and unit ideals.
    pub fn is_m_primary(&self) -> bool {
        match self.minimal_primes() {
            Ok(primes) => {
                primes.len() == 1 && primes[0].len() == self.nvars
            }
            Err(_) => false,
        }
    }

    /// The least `a` with `x_v^a` in the ideal, read off the minimal
    /// generators; `None` when no pure power of `x_v` lies in the ideal.
    pub fn pure_power_exponent(&self, v: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| g.support() == [v])
            .map(|g| g.exp(v))
            .min()
    }

    /// Projects the generators onto a variable subset (localization at the
    /// prime generated by those variables: the remaining variables become
    /// units).
    pub fn project(&self, vars: &[usize]) -> MonomialIdeal {
        MonomialIdeal {
            nvars: vars.len(),
            gens: minimalize(self.gens.iter().map(|g| g.project(vars)).collect()),
        }
    }

    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.render(vars)).collect();
        format!("({})", parts.join(", "))
    }
}
