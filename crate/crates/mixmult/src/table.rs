//! Exact multigraded Hilbert tables.
//!
//! For a family `(J; I_1, ..., I_d)` acting on a module `M`, two functions
//! are tabulated over a rectangular window:
//!
//! * `P(n_0, n) = ℓ(J^{n_0} 𝕀^n M / J^{n_0+1} 𝕀^n M)`
//! * `F(n_0, n) = ℓ(𝕀^n M / J^{n_0} 𝕀^n M)`
//!
//! where `𝕀^n = I_1^{n_1} ⋯ I_d^{n_d}`. Both are finite for every cell
//! because `J` is primary to the maximal ideal. `F` telescopes into `P`
//! along the `n_0` direction, which is the bridge the difference identities
//! cross: summing `P(i, n)` for `i < n_0` gives `F(n_0, n)`.

use crate::degrees::{binomial, boxed_indices, MultiDegree, TypeIndex, Window};
use crate::error::{Error, Result};
use crate::exec::map_vec;
use crate::family::IdealFamily;
use crate::ideal::MonomialIdeal;
use crate::module::{Length, Module};

/// Which of the two Hilbert functions a table holds.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum TableKind {
    P,
    F,
}

impl std::fmt::Display for TableKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableKind::P => write!(f, "P"),
            TableKind::F => write!(f, "F"),
        }
    }
}

/// Cached powers of the family's ideals, so a window of cells shares the
/// repeated-product work.
pub struct PowerCache {
    j: Vec<MonomialIdeal>,
    ideals: Vec<Vec<MonomialIdeal>>,
}

impl PowerCache {
    /// Caches `J^0..J^(hi.n0+1)` and `I_i^0..I_i^(hi.n_i)`.
    pub fn new(fam: &IdealFamily, window: &Window) -> Self {
        fn powers(ideal: &MonomialIdeal, max: u32) -> Vec<MonomialIdeal> {
            let mut v = Vec::with_capacity(max as usize + 1);
            v.push(MonomialIdeal::unit(ideal.nvars()));
            for a in 1..=max {
                let next = v[a as usize - 1].product(ideal).expect("same ring");
                v.push(next);
            }
            v
        }
        PowerCache {
            j: powers(fam.j(), window.hi.n0 + 1),
            ideals: fam
                .ideals()
                .iter()
                .enumerate()
                .map(|(i, ideal)| powers(ideal, window.hi.n[i]))
                .collect(),
        }
    }

    /// `𝕀^n = I_1^{n_1} ⋯ I_d^{n_d}`.
    pub fn ideals_power(&self, n: &[u32]) -> MonomialIdeal {
        let mut acc: Option<MonomialIdeal> = None;
        for (i, &ni) in n.iter().enumerate() {
            let p = &self.ideals[i][ni as usize];
            acc = Some(match acc {
                None => p.clone(),
                Some(a) => a.product(p).expect("same ring"),
            });
        }
        acc.unwrap_or_else(|| self.j[0].clone())
    }

    /// `J^{n_0} 𝕀^n`.
    pub fn w(&self, p: &MultiDegree) -> MonomialIdeal {
        self.j[p.n0 as usize]
            .product(&self.ideals_power(&p.n))
            .expect("same ring")
    }

    pub fn j_power(&self, a: u32) -> &MonomialIdeal {
        &self.j[a as usize]
    }
}

fn finite(len: Length, what: &MultiDegree) -> Result<i64> {
    match len {
        Length::Finite(v) => i64::try_from(v)
            .map_err(|_| Error::inconsistency(format!("length overflow at {what}"))),
        Length::Infinite => Err(Error::inconsistency(format!(
            "unexpected infinite length at {what}; J is primary so every cell is finite"
        ))),
    }
}

fn p_value(module: &Module, cache: &PowerCache, p: &MultiDegree) -> Result<i64> {
    let w = cache.w(p);
    let jw = cache.j_power(p.n0 + 1).product(&cache.ideals_power(&p.n))?;
    let mut total = 0i64;
    for part in module.parts() {
        let piece = part.graded_piece(&w, &jw)?;
        total += finite(piece.length(), p)?;
    }
    Ok(total)
}

fn f_value(module: &Module, cache: &PowerCache, p: &MultiDegree) -> Result<i64> {
    let ipow = cache.ideals_power(&p.n);
    let jipow = cache.j_power(p.n0).product(&ipow)?;
    let mut total = 0i64;
    for part in module.parts() {
        let piece = part.graded_piece(&ipow, &jipow)?;
        total += finite(piece.length(), p)?;
    }
    Ok(total)
}

/// A table of exact Hilbert values over a window, in row-major cell order.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct HilbertTable {
    kind: TableKind,
    window: Window,
    values: Vec<i64>,
}

impl HilbertTable {
    /// Tabulates `P` over the window.
    pub fn hilbert_p(module: &Module, fam: &IdealFamily, window: &Window) -> Result<HilbertTable> {
        Self::tabulate(TableKind::P, module, fam, window)
    }

    /// Tabulates `F` over the window.
    pub fn hilbert_f(module: &Module, fam: &IdealFamily, window: &Window) -> Result<HilbertTable> {
        Self::tabulate(TableKind::F, module, fam, window)
    }

    fn tabulate(
        kind: TableKind,
        module: &Module,
        fam: &IdealFamily,
        window: &Window,
    ) -> Result<HilbertTable> {
        if window.d() != fam.d() {
            return Err(Error::input(format!(
                "window has {} ideal coordinates but the family has {}",
                window.d(),
                fam.d()
            )));
        }
        let cache = PowerCache::new(fam, window);
        let values: Vec<Result<i64>> = map_vec(window.cells(), |cell| match kind {
            TableKind::P => p_value(module, &cache, &cell),
            TableKind::F => f_value(module, &cache, &cell),
        });
        let values = values.into_iter().collect::<Result<Vec<i64>>>()?;
        Ok(HilbertTable { kind, window: window.clone(), values })
    }

    #[cfg(test)]
    pub(crate) fn from_raw(kind: TableKind, window: Window, values: Vec<i64>) -> HilbertTable {
        assert_eq!(window.num_cells(), values.len());
        HilbertTable { kind, window, values }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, p: &MultiDegree) -> Option<i64> {
        self.window.index_of(p).map(|i| self.values[i])
    }

    /// The backward mixed difference `Δ^{(k_0,k)}` of the table at `p`:
    ///
    /// `Σ_{0<=j<=t} (-1)^{|j|} C(t_0,j_0)⋯C(t_d,j_d) · value(p - j)`.
    ///
    /// `None` when any required cell falls outside the window (or below
    /// zero).
    pub fn mixed_difference(&self, t: &TypeIndex, p: &MultiDegree) -> Option<i64> {
        if t.d() != p.d() || p.d() != self.window.d() {
            return None;
        }
        let tc = t.coords();
        let pc = p.coords();
        let mut acc: i128 = 0;
        for j in boxed_indices(t) {
            let jc = j.coords();
            let mut shifted = Vec::with_capacity(pc.len());
            for (a, b) in pc.iter().zip(&jc) {
                shifted.push(a.checked_sub(*b)?);
            }
            let q = MultiDegree::new(shifted[0], shifted[1..].to_vec());
            let v = self.value(&q)? as i128;
            let coeff: i128 = tc.iter().zip(&jc).map(|(n, k)| binomial(*n, *k)).product();
            if j.total() % 2 == 0 {
                acc += coeff * v;
            } else {
                acc -= coeff * v;
            }
        }
        i64::try_from(acc).ok()
    }
}

/// A single `P` value at one lattice point (no window, no cache reuse).
pub fn hilbert_p_at(module: &Module, fam: &IdealFamily, p: &MultiDegree) -> Result<i64> {
    point_window_value(TableKind::P, module, fam, p)
}

/// A single `F` value at one lattice point.
pub fn hilbert_f_at(module: &Module, fam: &IdealFamily, p: &MultiDegree) -> Result<i64> {
    point_window_value(TableKind::F, module, fam, p)
}

fn point_window_value(
    kind: TableKind,
    module: &Module,
    fam: &IdealFamily,
    p: &MultiDegree,
) -> Result<i64> {
    let window = Window::new(p.clone(), p.clone())?;
    let cache = PowerCache::new(fam, &window);
    match kind {
        TableKind::P => p_value(module, &cache, p),
        TableKind::F => f_value(module, &cache, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Subquotient;
    use crate::monomial::Monomial;

    fn ideal(nvars: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(nvars, gens.iter().map(|e| Monomial::new(e.to_vec())).collect())
    }

    fn maximal_pair() -> (IdealFamily, Module) {
        let fam = IdealFamily::new(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)])
            .unwrap();
        (fam, Subquotient::ring(2).into())
    }

    fn window(lo: (u32, &[u32]), hi: (u32, &[u32])) -> Window {
        Window::new(
            MultiDegree::new(lo.0, lo.1.to_vec()),
            MultiDegree::new(hi.0, hi.1.to_vec()),
        )
        .unwrap()
    }

    #[test]
    fn powers_of_the_maximal_ideal() {
        // J = I = (x,y) on R: P(n0,n) = l(m^{n0+n}/m^{n0+n+1}) = n0+n+1
        let (fam, module) = maximal_pair();
        let w = window((0, &[0]), (3, &[3]));
        let p = HilbertTable::hilbert_p(&module, &fam, &w).unwrap();
        for cell in w.cells() {
            assert_eq!(p.value(&cell), Some((cell.n0 + cell.n[0] + 1) as i64), "at {cell}");
        }
        // F(n0,n) = sum_{s=n}^{n0+n-1} (s+1)
        let f = HilbertTable::hilbert_f(&module, &fam, &w).unwrap();
        for cell in w.cells() {
            let expect: i64 = (cell.n[0]..cell.n0 + cell.n[0]).map(|s| (s + 1) as i64).sum();
            assert_eq!(f.value(&cell), Some(expect), "at {cell}");
        }
    }

    #[test]
    fn f_telescopes_into_p() {
        let fam = IdealFamily::new(
            ideal(2, &[&[2, 0], &[0, 1]]),
            vec![ideal(2, &[&[1, 1], &[0, 2]])],
        )
        .unwrap();
        let module: Module = Subquotient::cyclic(ideal(2, &[&[2, 1]])).into();
        let w = window((0, &[0]), (4, &[3]));
        let p = HilbertTable::hilbert_p(&module, &fam, &w).unwrap();
        let f = HilbertTable::hilbert_f(&module, &fam, &w).unwrap();
        for cell in w.cells() {
            if cell.n0 + 1 > w.hi.n0 {
                continue;
            }
            let up = MultiDegree::new(cell.n0 + 1, cell.n.clone());
            assert_eq!(
                f.value(&up).unwrap() - f.value(&cell).unwrap(),
                p.value(&cell).unwrap(),
                "telescoping fails at {cell}"
            );
        }
        // F vanishes along n0 = 0
        for n in 0..=3 {
            assert_eq!(f.value(&MultiDegree::new(0, vec![n])), Some(0));
        }
    }

    #[test]
    fn mixed_differences() {
        let (fam, module) = maximal_pair();
        let w = window((0, &[0]), (3, &[3]));
        let p = HilbertTable::hilbert_p(&module, &fam, &w).unwrap();
        // P is linear of total degree 1: second differences vanish
        let at = MultiDegree::new(2, vec![2]);
        assert_eq!(p.mixed_difference(&TypeIndex::new(1, vec![1]), &at), Some(0));
        assert_eq!(p.mixed_difference(&TypeIndex::new(2, vec![0]), &at), Some(0));
        assert_eq!(p.mixed_difference(&TypeIndex::new(1, vec![0]), &at), Some(1));
        assert_eq!(p.mixed_difference(&TypeIndex::new(0, vec![1]), &at), Some(1));
        assert_eq!(p.mixed_difference(&TypeIndex::new(0, vec![0]), &at), Some(5));
        // needs a cell below the window
        assert_eq!(
            p.mixed_difference(&TypeIndex::new(1, vec![0]), &MultiDegree::new(0, vec![0])),
            None
        );
    }

    #[test]
    fn point_evaluation_matches_tables() {
        let (fam, module) = maximal_pair();
        let w = window((1, &[1]), (2, &[2]));
        let p = HilbertTable::hilbert_p(&module, &fam, &w).unwrap();
        let f = HilbertTable::hilbert_f(&module, &fam, &w).unwrap();
        for cell in w.cells() {
            assert_eq!(hilbert_p_at(&module, &fam, &cell).unwrap(), p.value(&cell).unwrap());
            assert_eq!(hilbert_f_at(&module, &fam, &cell).unwrap(), f.value(&cell).unwrap());
        }
    }

    #[test]
    fn window_dimension_must_match_family() {
        let (fam, module) = maximal_pair();
        let w = window((0, &[0, 0]), (2, &[2, 2]));
        assert!(HilbertTable::hilbert_p(&module, &fam, &w).is_err());
    }
}
