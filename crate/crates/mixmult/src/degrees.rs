//! Degree bookkeeping for multigraded Hilbert data: lattice points
//! `(n_0, n_1, ..., n_d)`, difference/coefficient type indices
//! `(k_0, k_1, ..., k_d)`, and rectangular evaluation windows.

use crate::error::{Error, Result};
use std::cmp::Ordering;

/// A lattice point `(n_0, n)` indexing one Hilbert-function value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, serde::Serialize)]
pub struct MultiDegree {
    pub n0: u32,
    pub n: Vec<u32>,
}

impl MultiDegree {
    pub fn new(n0: u32, n: Vec<u32>) -> Self {
        MultiDegree { n0, n }
    }

    /// Number of `n` coordinates (not counting `n0`).
    pub fn d(&self) -> usize {
        self.n.len()
    }

    /// All coordinates in order, `n0` first.
    pub fn coords(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(1 + self.n.len());
        v.push(self.n0);
        v.extend_from_slice(&self.n);
        v
    }
}

impl std::fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A type index `(k_0, k)`: the order of a mixed difference, or equally the
/// position of a coefficient in the binomial-product basis.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct TypeIndex {
    pub k0: u32,
    pub k: Vec<u32>,
}

impl TypeIndex {
    pub fn new(k0: u32, k: Vec<u32>) -> Self {
        TypeIndex { k0, k }
    }

    pub fn d(&self) -> usize {
        self.k.len()
    }

    pub fn total(&self) -> u32 {
        self.k0 + self.k.iter().sum::<u32>()
    }

    pub fn coords(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(1 + self.k.len());
        v.push(self.k0);
        v.extend_from_slice(&self.k);
        v
    }

    /// Componentwise `<=` (the dominance order; incomparable pairs exist).
    pub fn le(&self, other: &TypeIndex) -> bool {
        self.k0 <= other.k0
            && self.k.len() == other.k.len()
            && self.k.iter().zip(&other.k).all(|(a, b)| a <= b)
    }

    /// Strict dominance: `<=` componentwise and different.
    pub fn lt(&self, other: &TypeIndex) -> bool {
        self.le(other) && self != other
    }
}

// Total order for map storage and stable iteration: by total degree, then by
// coordinates. This is *not* the dominance order, which `le`/`lt` provide.
impl Ord for TypeIndex {
    fn cmp(&self, other: &TypeIndex) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.coords().cmp(&other.coords()))
    }
}

impl PartialOrd for TypeIndex {
    fn partial_cmp(&self, other: &TypeIndex) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for TypeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Exact binomial coefficient `C(n, k)` (0 when `k > n`).
pub fn binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// All type indices `j` with `0 <= j <= t` componentwise, in increasing
/// [`Ord`] order.
pub fn boxed_indices(t: &TypeIndex) -> Vec<TypeIndex> {
    let mut out = Vec::new();
    let bounds = t.coords();
    let mut cur = vec![0u32; bounds.len()];
    'outer: loop {
        out.push(TypeIndex::new(cur[0], cur[1..].to_vec()));
        let mut i = cur.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            if cur[i] < bounds[i] {
                cur[i] += 1;
                for j in i + 1..cur.len() {
                    cur[j] = 0;
                }
                break;
            }
        }
    }
    out.sort();
    out
}

/// All type indices of total degree at most `max_total` in `1 + d`
/// coordinates, in increasing [`Ord`] order.
pub fn type_indices_up_to(d: usize, max_total: u32) -> Vec<TypeIndex> {
    fn fill(coords: &mut Vec<u32>, remaining: usize, budget: u32, out: &mut Vec<TypeIndex>) {
        if remaining == 0 {
            out.push(TypeIndex::new(coords[0], coords[1..].to_vec()));
            return;
        }
        for v in 0..=budget {
            coords.push(v);
            fill(coords, remaining - 1, budget - v, out);
            coords.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(1 + d), 1 + d, max_total, &mut out);
    out.sort();
    out
}

/// A rectangular window `[lo, hi]` of lattice points, inclusive on both ends.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Window {
    pub lo: MultiDegree,
    pub hi: MultiDegree,
}

impl Window {
    pub fn new(lo: MultiDegree, hi: MultiDegree) -> Result<Self> {
        if lo.d() != hi.d() {
            return Err(Error::input("window corners of different dimensions"));
        }
        if lo.n0 > hi.n0 || lo.n.iter().zip(&hi.n).any(|(a, b)| a > b) {
            return Err(Error::input(format!(
                "empty window: lo {lo} exceeds hi {hi} in some coordinate"
            )));
        }
        Ok(Window { lo, hi })
    }

    pub fn d(&self) -> usize {
        self.lo.d()
    }

    /// Side lengths, `n0` first.
    pub fn extents(&self) -> Vec<usize> {
        self.lo
            .coords()
            .iter()
            .zip(self.hi.coords())
            .map(|(a, b)| (b - a) as usize + 1)
            .collect()
    }

    pub fn num_cells(&self) -> usize {
        self.extents().iter().product()
    }

    pub fn contains(&self, p: &MultiDegree) -> bool {
        p.d() == self.d()
            && self.lo.n0 <= p.n0
            && p.n0 <= self.hi.n0
            && self
                .lo
                .n
                .iter()
                .zip(&p.n)
                .zip(&self.hi.n)
                .all(|((a, x), b)| a <= x && x <= b)
    }

    /// All lattice points of the window in row-major order (`n0` slowest,
    /// last coordinate fastest).
    pub fn cells(&self) -> Vec<MultiDegree> {
        let lo = self.lo.coords();
        let hi = self.hi.coords();
        let mut out = Vec::with_capacity(self.num_cells());
        let mut cur = lo.clone();
        'outer: loop {
            out.push(MultiDegree::new(cur[0], cur[1..].to_vec()));
            // odometer increment, last coordinate fastest
            let mut i = cur.len();
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    for j in i + 1..cur.len() {
                        cur[j] = lo[j];
                    }
                    break;
                }
            }
        }
        out
    }

    /// Flat index of a point in [`Self::cells`] order.
    pub fn index_of(&self, p: &MultiDegree) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let lo = self.lo.coords();
        let pc = p.coords();
        let ext = self.extents();
        let mut idx = 0usize;
        for i in 0..pc.len() {
            idx = idx * ext[i] + (pc[i] - lo[i]) as usize;
        }
        Some(idx)
    }

    /// Grows the upper corner by `by` in every coordinate.
    pub fn extend_hi(&self, by: u32) -> Window {
        Window {
            lo: self.lo.clone(),
            hi: MultiDegree::new(
                self.hi.n0 + by,
                self.hi.n.iter().map(|v| v + by).collect(),
            ),
        }
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}
