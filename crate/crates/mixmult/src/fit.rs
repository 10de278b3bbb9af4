//! Fitting Hilbert tables by integer polynomials in the binomial-product
//! basis, and reading mixed multiplicities of maximal degrees off the fit.
//!
//! The basis element of type `t = (t_0, ..., t_d)` is
//! `B_t(n) = C(n_0 + t_0, t_0) ⋯ C(n_d + t_d, t_d)`. Its backward difference
//! in coordinate `c` is exactly `B_{t - e_c}` (and 0 once `t_c` hits 0), so
//! iterated differencing at a fixed corner isolates coefficients from the top
//! total degree down, entirely in integer arithmetic.

use crate::degrees::{binomial, boxed_indices, MultiDegree, TypeIndex, Window};
use crate::error::{Error, Result};
use crate::table::HilbertTable;
use std::collections::BTreeMap;

/// An integer polynomial expressed in the binomial-product basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinomialPoly {
    d: usize,
    coeffs: BTreeMap<TypeIndex, i64>,
}

impl BinomialPoly {
    pub fn new(d: usize, coeffs: BTreeMap<TypeIndex, i64>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(t, c)| {
                assert_eq!(t.d(), d, "type index of wrong dimension");
                *c != 0
            })
            .collect();
        BinomialPoly { d, coeffs }
    }

    pub fn zero(d: usize) -> Self {
        BinomialPoly { d, coeffs: BTreeMap::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &BTreeMap<TypeIndex, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, t: &TypeIndex) -> i64 {
        self.coeffs.get(t).copied().unwrap_or(0)
    }

    /// Total degree of the polynomial; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(TypeIndex::total).max()
    }

    pub fn eval(&self, p: &MultiDegree) -> i64 {
        assert_eq!(p.d(), self.d, "point of wrong dimension");
        let pc = p.coords();
        let mut acc: i128 = 0;
        for (t, c) in &self.coeffs {
            let term: i128 = t
                .coords()
                .iter()
                .zip(&pc)
                .map(|(tc, nc)| binomial(nc + tc, *tc))
                .product();
            acc += *c as i128 * term;
        }
        i64::try_from(acc).expect("polynomial value overflows i64")
    }

    /// The mixed difference `Δ^{(s)}` of the polynomial: each basis index
    /// drops by `s`, and indices not dominating `s` vanish.
    pub fn difference(&self, s: &TypeIndex) -> BinomialPoly {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(t, _)| s.le(t))
            .map(|(t, c)| {
                let k: Vec<u32> = t.k.iter().zip(&s.k).map(|(a, b)| a - b).collect();
                (TypeIndex::new(t.k0 - s.k0, k), *c)
            })
            .collect();
        BinomialPoly { d: self.d, coeffs }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|t| t.total() == 0)
    }

    /// The coefficient of the constant basis element.
    pub fn constant_value(&self) -> i64 {
        self.coeff(&TypeIndex::new(0, vec![0; self.d]))
    }

    /// Maximal types of the support under the dominance order, with their
    /// coefficients.
    pub fn maximal_support(&self) -> Vec<(TypeIndex, i64)> {
        self.coeffs
            .iter()
            .filter(|&(t, _)| !self.coeffs.keys().any(|s| t.lt(s)))
            .map(|(t, c)| (t.clone(), *c))
            .collect()
    }
}

/// How a fit was produced and how well it reproduces the table.
#[derive(Clone, Debug, serde::Serialize)]
pub struct FittingCertificate {
    /// Window the table was computed over.
    pub window: Window,
    /// Corner where all differences were taken (the window's upper corner).
    pub fit_corner: MultiDegree,
    /// Cells per coordinate at the low end never consumed by the
    /// differencing, so they act as held-out checks.
    pub margin: u32,
    /// Per-coordinate caps on difference orders.
    pub caps: Vec<u32>,
    /// Number of cells the fitted polynomial was compared against (the whole
    /// window).
    pub verification_cells: usize,
    /// Whether the fit reproduces every cell exactly.
    pub stable: bool,
    /// Cells where table and fit disagree: (cell, table value, fit value).
    pub mismatches: Vec<(MultiDegree, i64, i64)>,
}

/// Preferred margin of held-out low cells per coordinate.
const FIT_MARGIN: u32 = 2;

/// Fits the table at its upper corner and verifies the fit over the whole
/// window.
///
/// Coefficients are extracted in decreasing total degree: for a type `s`,
/// `Δ^{(s)}` kills every basis element of type not dominating `s` and maps
/// `B_t` to `B_{t-s}`, so
///
/// `c_s = Δ^{(s)}(table)(corner) - Σ_{t ⊋ s} c_t · B_{t-s}(corner)`
///
/// with the sum over already-known coefficients of strictly dominating type.
pub fn fit_binomial(table: &HilbertTable) -> (BinomialPoly, FittingCertificate) {
    let window = table.window().clone();
    let corner = window.hi.clone();
    let extents = window.extents();
    let margin = extents
        .iter()
        .map(|&e| (e as u32).saturating_sub(1))
        .min()
        .unwrap_or(0)
        .min(FIT_MARGIN);
    let caps: Vec<u32> = extents.iter().map(|&e| e as u32 - 1 - margin).collect();

    // All candidate types, highest total degree first.
    let cap_type = TypeIndex::new(caps[0], caps[1..].to_vec());
    let mut candidates = boxed_indices(&cap_type);
    candidates.reverse();

    let mut coeffs: BTreeMap<TypeIndex, i64> = BTreeMap::new();
    let corner_coords = corner.coords();
    for s in candidates {
        let delta = table
            .mixed_difference(&s, &corner)
            .expect("difference order capped to stay inside the window");
        let mut value = delta as i128;
        for (t, c) in &coeffs {
            if s.lt(t) {
                let shift: i128 = t
                    .coords()
                    .iter()
                    .zip(s.coords())
                    .zip(&corner_coords)
                    .map(|((tc, sc), nc)| binomial(nc + (tc - sc), tc - sc))
                    .product();
                value -= *c as i128 * shift;
            }
        }
        let value = i64::try_from(value).expect("fit coefficient overflows i64");
        if value != 0 {
            coeffs.insert(s, value);
        }
    }
    let poly = BinomialPoly { d: window.d(), coeffs };

    let mut mismatches = Vec::new();
    let cells = window.cells();
    for cell in &cells {
        let table_value = table.value(cell).expect("cell lies in the window");
        let fit_value = poly.eval(cell);
        if table_value != fit_value {
            mismatches.push((cell.clone(), table_value, fit_value));
        }
    }
    let cert = FittingCertificate {
        window,
        fit_corner: corner,
        margin,
        caps,
        verification_cells: cells.len(),
        stable: mismatches.is_empty(),
        mismatches,
    };
    (poly, cert)
}

/// A mixed multiplicity of maximal degrees read off a fitted polynomial.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub enum MixedMult {
    /// Every strictly larger type has zero coefficient; the multiplicity is
    /// the coefficient at the requested type.
    Defined { value: i64 },
    /// Some strictly larger type carries a nonzero coefficient, so the
    /// requested type is not maximal and the multiplicity does not exist.
    Undefined { witness: TypeIndex, witness_coeff: i64 },
}

/// Reads `e` of type `t` off a fitted `P` polynomial. Refuses when the fit
/// certificate is not stable, since then the coefficients are not trustworthy.
pub fn mixed_mult_maximal(
    poly: &BinomialPoly,
    cert: &FittingCertificate,
    t: &TypeIndex,
) -> Result<MixedMult> {
    if !cert.stable {
        return Err(Error::refused(format!(
            "fit over {} does not reproduce the table ({} mismatching cells); enlarge the window",
            cert.window,
            cert.mismatches.len()
        )));
    }
    if t.d() != poly.d() {
        return Err(Error::input("type index of wrong dimension"));
    }
    for (s, c) in poly.coeffs() {
        if t.lt(s) {
            return Ok(MixedMult::Undefined { witness: s.clone(), witness_coeff: *c });
        }
    }
    Ok(MixedMult::Defined { value: poly.coeff(t) })
}
