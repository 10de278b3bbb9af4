//! Finitely generated monomial modules presented as subquotients
//! `num/den` of the polynomial ring, with exact length, Krull dimension,
//! annihilator, torsion quotient, and localization computations.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{monomials_of_degree, Monomial};
use std::collections::BTreeSet;

/// Krull dimension, with `NegInf` for the zero module.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, serde::Serialize)]
pub enum Dim {
    NegInf,
    Fin(usize),
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dim::NegInf => write!(f, "-inf"),
            Dim::Fin(d) => write!(f, "{d}"),
        }
    }
}

/// Module length.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Length::Finite(v) => Some(*v),
            Length::Infinite => None,
        }
    }
}

impl std::fmt::Display for Length {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite => write!(f, "inf"),
        }
    }
}

/// A module presented as `num/den` for monomial ideals `den ⊆ num`.
///
/// The ring itself is `unit/zero`; a cyclic quotient `R/q` is `unit/q`.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Subquotient {
    num: MonomialIdeal,
    den: MonomialIdeal,
}

impl Subquotient {
    pub fn new(num: MonomialIdeal, den: MonomialIdeal) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::input("numerator and denominator from different rings"));
        }
        if !num.contains_ideal(&den) {
            return Err(Error::input(
                "denominator is not contained in the numerator",
            ));
        }
        Ok(Subquotient { num, den })
    }

    /// The ring `R` as a module over itself.
    pub fn ring(nvars: usize) -> Self {
        Subquotient {
            num: MonomialIdeal::unit(nvars),
            den: MonomialIdeal::zero(nvars),
        }
    }

    /// The cyclic module `R/q`.
    pub fn cyclic(q: MonomialIdeal) -> Self {
        let nvars = q.nvars();
        Subquotient { num: MonomialIdeal::unit(nvars), den: q }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MonomialIdeal {
        &self.num
    }

    pub fn den(&self) -> &MonomialIdeal {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.den.contains_ideal(&self.num)
    }

    /// The annihilator `(den : num)`.
    pub fn annihilator(&self) -> MonomialIdeal {
        self.den.colon(&self.num)
    }

    /// Krull dimension of the support, `dim R/ann`.
    pub fn krull_dim(&self) -> Dim {
        if self.is_zero() {
            return Dim::NegInf;
        }
        let ann = self.annihilator();
        let primes = ann.minimal_primes().expect("nonzero module has a proper annihilator");
        let n = self.nvars();
        Dim::Fin(primes.iter().map(|p| n - p.len()).max().expect("at least one prime"))
    }

    /// Exact length over `R`, finite iff the annihilator is primary to the
    /// maximal ideal (or the module is zero).
    ///
    /// When finite, every monomial of `num` of total degree at least
    /// `maxdeg(num) + t` already lies in `den`, where `t = Σ_v (a_v - 1) + 1`
    /// and `x_v^{a_v}` are the pure powers in the annihilator: such a
    /// monomial is `g·h` with `h` of degree `≥ t`, forcing some exponent of
    /// `h` up to `a_v` and hence `h ∈ ann`. The length is then a direct count
    /// of the surviving monomials below that bound.
    pub fn length(&self) -> Length {
        if self.is_zero() {
            return Length::Finite(0);
        }
        let ann = self.annihilator();
        if !ann.is_m_primary() {
            return Length::Infinite;
        }
        let n = self.nvars();
        let t: u32 = (0..n)
            .map(|v| {
                self.annihilator_pure_power(&ann, v) - 1
            })
            .sum::<u32>()
            + 1;
        let bound = self.num.max_gen_degree() + t;
        let start = self.num.min_gen_degree().expect("nonzero module");
        let mut count = 0u64;
        for deg in start..bound {
            for m in monomials_of_degree(n, deg) {
                if self.num.contains_monomial(&m) && !self.den.contains_monomial(&m) {
                    count += 1;
                }
            }
        }
        Length::Finite(count)
    }

    fn annihilator_pure_power(&self, ann: &MonomialIdeal, v: usize) -> u32 {
        ann.pure_power_exponent(v)
            .expect("m-primary ideal contains a pure power of every variable")
    }

    /// The quotient by the `P`-torsion: `M / H⁰_P(M)`, i.e.
    /// `num / ((den : P^∞) ∩ num)`.
    pub fn torsion_free_quotient(&self, p: &MonomialIdeal) -> Subquotient {
        let sat = self.den.colon_saturate(p);
        Subquotient {
            num: self.num.clone(),
            den: sat.intersection(&self.num),
        }
    }

    /// Length of the localization `M_p` at the prime generated by the
    /// variables in `p`. The variables outside `p` become units, so the
    /// presentation projects onto the `p`-coordinates and the length is
    /// computed there (over the localized ring).
    pub fn localized_length(&self, p: &BTreeSet<usize>) -> Length {
        let vars: Vec<usize> = p.iter().copied().collect();
        let num = self.num.project(&vars);
        let den = self.den.project(&vars);
        Subquotient { num, den }.length()
    }

    /// The subquotient `(A·M)/(B·M)` for ideals `B ⊆ A`, presented as
    /// `(A·num + den)/(B·num + den)`.
    pub fn graded_piece(&self, a: &MonomialIdeal, b: &MonomialIdeal) -> Result<Subquotient> {
        if !a.contains_ideal(b) {
            return Err(Error::input("graded piece requires nested ideals"));
        }
        let num = a.product(&self.num)?.sum(&self.den);
        let den = b.product(&self.num)?.sum(&self.den);
        Ok(Subquotient { num, den })
    }

    /// The quotient `M/(x·M)` by a monomial multiple.
    pub fn quotient_by_element(&self, x: &Monomial) -> Subquotient {
        Subquotient {
            num: self.num.clone(),
            den: self.den.sum(&self.num.mul_monomial(x)),
        }
    }

    /// The kernel `(0 :_M x)` of multiplication by a monomial, as a
    /// submodule of `M`.
    pub fn kernel_of_element(&self, x: &Monomial) -> Subquotient {
        let colon = self.den.colon_monomial(x);
        Subquotient {
            num: colon.intersection(&self.num),
            den: self.den.clone(),
        }
    }

    pub fn render(&self, vars: &[String]) -> String {
        format!("{}/{}", self.num.render(vars), self.den.render(vars))
    }
}

/// A finite direct sum of subquotients. Hilbert data and lengths are additive
/// across the parts.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Module {
    parts: Vec<Subquotient>,
}

impl Module {
    pub fn direct_sum(parts: Vec<Subquotient>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::input("direct sum needs at least one part"));
        }
        let nvars = parts[0].nvars();
        if parts.iter().any(|p| p.nvars() != nvars) {
            return Err(Error::input("direct sum parts from different rings"));
        }
        Ok(Module { parts })
    }

    pub fn copies(part: Subquotient, r: usize) -> Result<Self> {
        Module::direct_sum(vec![part; r.max(1)])
    }

    pub fn parts(&self) -> &[Subquotient] {
        &self.parts
    }

    pub fn nvars(&self) -> usize {
        self.parts[0].nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Subquotient::is_zero)
    }

    pub fn krull_dim(&self) -> Dim {
        self.parts.iter().map(Subquotient::krull_dim).max().unwrap_or(Dim::NegInf)
    }

    /// Intersection of the parts' annihilators.
    pub fn annihilator(&self) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars());
        for p in &self.parts {
            acc = acc.intersection(&p.annihilator());
        }
        acc
    }

    pub fn length(&self) -> Length {
        let mut total = 0u64;
        for p in &self.parts {
            match p.length() {
                Length::Finite(v) => total += v,
                Length::Infinite => return Length::Infinite,
            }
        }
        Length::Finite(total)
    }
}

impl From<Subquotient> for Module {
    fn from(s: Subquotient) -> Module {
        Module { parts: vec![s] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(nvars: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(nvars, gens.iter().map(|e| Monomial::new(e.to_vec())).collect())
    }

    #[test]
    fn lengths_of_artinian_quotients() {
        // R/(x,y)^2 has basis 1, x, y
        let m2 = MonomialIdeal::maximal(2).power(2);
        assert_eq!(Subquotient::cyclic(m2).length(), Length::Finite(3));
        // k[x]/(x^3)
        let x3 = ideal(1, &[&[3]]);
        assert_eq!(Subquotient::cyclic(x3).length(), Length::Finite(3));
        // zero module
        let z = Subquotient::new(ideal(2, &[&[1, 0]]), ideal(2, &[&[1, 0]])).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.length(), Length::Finite(0));
        assert_eq!(z.krull_dim(), Dim::NegInf);
    }

    #[test]
    fn infinite_length_when_support_is_positive_dimensional() {
        let m = Subquotient::cyclic(ideal(2, &[&[1, 1]]));
        assert_eq!(m.length(), Length::Infinite);
        assert_eq!(m.krull_dim(), Dim::Fin(1));
    }

    #[test]
    fn subquotient_length_counts_between_ideals() {
        // (x)/(x^2, xy) is one-dimensional over the residue field
        let m = Subquotient::new(ideal(2, &[&[1, 0]]), ideal(2, &[&[2, 0], &[1, 1]])).unwrap();
        assert_eq!(m.annihilator(), ideal(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(m.length(), Length::Finite(1));
        assert_eq!(m.krull_dim(), Dim::Fin(0));
    }

    #[test]
    fn dimensions() {
        assert_eq!(Subquotient::ring(2).krull_dim(), Dim::Fin(2));
        assert_eq!(Subquotient::cyclic(MonomialIdeal::maximal(2)).krull_dim(), Dim::Fin(0));
        assert_eq!(Subquotient::ring(0).krull_dim(), Dim::Fin(0));
        assert_eq!(Subquotient::ring(0).length(), Length::Finite(1));
    }

    #[test]
    fn validation_rejects_non_nested_ideals() {
        assert!(Subquotient::new(ideal(2, &[&[2, 0]]), ideal(2, &[&[1, 0]])).is_err());
    }

    #[test]
    fn torsion_quotient() {
        // M = R/(x^2, xy); its (x,y)-torsion is the x-line, leaving R/(x)
        let m = Subquotient::cyclic(ideal(2, &[&[2, 0], &[1, 1]]));
        let p = MonomialIdeal::maximal(2);
        let mb = m.torsion_free_quotient(&p);
        assert_eq!(mb, Subquotient::cyclic(ideal(2, &[&[1, 0]])));
        assert_eq!(mb.krull_dim(), Dim::Fin(1));
        // a module with no torsion is unchanged
        let free = Subquotient::ring(2);
        assert_eq!(free.torsion_free_quotient(&p), free);
    }

    #[test]
    fn localized_lengths() {
        // R/(xy) at (x): y inverts, leaving k(y)[x]/(x), length 1
        let m = Subquotient::cyclic(ideal(2, &[&[1, 1]]));
        assert_eq!(m.localized_length(&BTreeSet::from([0])), Length::Finite(1));
        // at (x,y) the module has infinite length (it is the local ring of a curve)
        assert_eq!(m.localized_length(&BTreeSet::from([0, 1])), Length::Infinite);
        // R/(x^2 y) at (x): length 2
        let f = Subquotient::cyclic(ideal(2, &[&[2, 1]]));
        assert_eq!(f.localized_length(&BTreeSet::from([0])), Length::Finite(2));
        assert_eq!(f.localized_length(&BTreeSet::from([1])), Length::Finite(1));
    }

    #[test]
    fn localized_length_matches_stabilized_count() {
        // Localizing at p inverts the outside variables; the length equals
        // the stable count, over growing b, of p-monomials mu with
        // mu * (outside vars)^b in num but not in den.
        let m = Subquotient::new(ideal(2, &[&[1, 0]]), ideal(2, &[&[3, 0], &[2, 2]])).unwrap();
        let p = BTreeSet::from([0usize]);
        let expected = m.localized_length(&p).finite().unwrap();
        assert_eq!(expected, 1);
        let mut stable = None;
        for b in (0..8u32).rev() {
            let mut count = 0u64;
            for a in 0..16u32 {
                let probe = Monomial::new(vec![a, b]);
                if m.num().contains_monomial(&probe) && !m.den().contains_monomial(&probe) {
                    count += 1;
                }
            }
            if stable.is_none() {
                stable = Some(count);
            }
            if b >= 6 {
                assert_eq!(count, expected, "not yet stable at b={b}");
            }
        }
        assert_eq!(stable, Some(expected));
    }

    #[test]
    fn graded_pieces_give_hilbert_values() {
        // M = R, A = (x,y), B = (x,y)^2: A·M/B·M has basis x, y
        let r = Subquotient::ring(2);
        let a = MonomialIdeal::maximal(2);
        let b = a.power(2);
        let piece = r.graded_piece(&a, &b).unwrap();
        assert_eq!(piece.length(), Length::Finite(2));
        assert!(r.graded_piece(&b, &a).is_err());
    }

    #[test]
    fn multiplication_sequence_pieces() {
        // M = k[x]/(x^3), multiplication by x: both ends have length 1
        let m = Subquotient::cyclic(ideal(1, &[&[3]]));
        let x = Monomial::new(vec![1]);
        assert_eq!(m.quotient_by_element(&x).length(), Length::Finite(1));
        assert_eq!(m.kernel_of_element(&x).length(), Length::Finite(1));
    }

    #[test]
    fn direct_sums_add() {
        let part = Subquotient::cyclic(MonomialIdeal::maximal(2));
        let m = Module::copies(part.clone(), 3).unwrap();
        assert_eq!(m.length(), Length::Finite(3));
        assert_eq!(m.krull_dim(), Dim::Fin(0));
        assert_eq!(m.annihilator(), part.annihilator());
        assert!(Module::direct_sum(vec![]).is_err());
    }
}
