//! Koszul homology of the multi-Rees module and the Euler characteristic χ.
//!
//! For a candidate list **x** (elements of J and of the I_i, each tagged with
//! the grading shift of its Rees variable), the Koszul complex of **x** on the
//! multi-Rees module ⊕ 𝕀ⁿM t₀^{n₀}Tⁿ decomposes degreewise: the piece of K_p
//! at (n₀, n) is the direct sum, over p-subsets S of **x**, of 𝕀^{n−σ(S)}M,
//! where σ(S) collects the T-shifts of S and the t₀-shifts only gate whether
//! the summand exists (the t₀ grading adds no new elements).  Each such piece
//! is a graded k-vector space, infinite-dimensional as a whole but with
//! finite-dimensional slices in every internal degree, and the differential
//! preserves the internal degree once each summand is shifted by the total
//! degree of its subset.  We therefore compute homology exactly, slice by
//! slice, and certify finiteness empirically: once a band of top slices
//! contributes no homology, the lengths are reported as stable.
//!
//! This is why candidate elements must be homogeneous on this path: an
//! inhomogeneous element has no internal-degree shift, the slice
//! decomposition breaks down, and we refuse rather than approximate.
//! (Truncating each piece 𝔪-adically instead would manufacture kernel
//! classes at the truncation boundary — e.g. multiplication by x on
//! k[x]/x^D has a kernel even though it is injective on k[x] — and those
//! artifacts do not go away as D grows.)

use crate::degrees::{MultiDegree, TypeIndex, Window};
use crate::error::{Error, Result};
use crate::exec::map_vec;
use crate::family::IdealFamily;
use crate::field::FieldSpec;
use crate::fit::{fit_binomial, BinomialPoly};
use crate::ideal::MonomialIdeal;
use crate::matrix::Matrix;
use crate::module::{Module, Subquotient};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::PolyElement;
use crate::reductions::{is_joint_reduction, ReductionCandidate};
use crate::table::HilbertTable;
use std::collections::BTreeMap;

/// Number of consecutive top slices that must carry no homology before the
/// computed lengths are reported as stable.
const TOP_BAND: u32 = 4;

/// Rounds of slice-budget escalation before giving up on stabilization.
const BUDGET_ROUNDS: u32 = 3;

/// One Koszul variable: a homogeneous element together with its Rees shifts.
struct KoszulElement {
    poly: PolyElement,
    /// Shift in n₀ (1 for elements of J, 0 otherwise).
    dn0: u32,
    /// Shift in n (e_i for elements of I_i, zero otherwise).
    dn: Vec<u32>,
    /// Internal degree of the element.
    delta: u32,
}

/// Homology lengths of the Koszul complex at one multidegree.
#[derive(Clone, Debug, serde::Serialize)]
pub struct HomologyReport {
    /// The multidegree at which the complex was assembled.
    pub deg: MultiDegree,
    /// ℓ(H_p) for p = 0..=len(**x**), summed over all internal degrees tried.
    pub lengths: Vec<i64>,
    /// Alternating sum of the lengths.
    pub euler: i64,
    /// Internal degrees 0..slice_budget were computed in the final round.
    pub slice_budget: u32,
    /// Every budget tried, in order.
    pub budgets_tried: Vec<u32>,
    /// True when the top band of slices carried no homology, so the lengths
    /// are complete barring contributions beyond every budget tried.
    pub stable: bool,
}

/// The Δ-difference oracle for χ: either a constant or a witness that the
/// differenced fit still depends on the degree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ChiOutcome {
    Constant(i64),
    NotConstant { support: Vec<TypeIndex> },
}

/// Options for [`chi`].
#[derive(Clone, Debug, Default)]
pub struct ChiOptions {
    /// Cross-validate the oracle value against direct Koszul homology at two
    /// deep window cells.
    pub koszul_validate: bool,
    /// Initial slice budget for the direct computations, when overriding the
    /// built-in estimate.
    pub trunc: Option<u32>,
}

/// The result of [`chi`].
#[derive(Clone, Debug, serde::Serialize)]
pub struct ChiReport {
    /// The multiplicity type (k₀, k) of the candidate.
    pub type_index: TypeIndex,
    /// χ(**x**, J, **I**, M).
    pub value: i64,
    /// Verdict string from the joint-reduction verification.
    pub reduction_verdict: String,
    /// Direct homology computations, when cross-validation was requested.
    pub koszul_reports: Vec<HomologyReport>,
    pub diagnostics: Vec<String>,
}

/// Outcome of the generating-function identity check on a window.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum GenFnCheck {
    /// The alternating F-combination matched the Koszul Euler characteristic
    /// at every cell deep enough to test.
    Verified { cells: usize },
    /// First cell where the two sides differ.
    FailsAt {
        cell: MultiDegree,
        expected: i64,
        euler: i64,
    },
    /// No cell was deep enough, or homology did not stabilize anywhere.
    InsufficientDepth,
}

/// Flattens a candidate into the ordered Koszul variable list: elements of
/// I₁, …, I_d first, then the elements of J.  Refuses inhomogeneous elements,
/// since the slice decomposition needs a well-defined degree shift per
/// variable.
fn x_list(cand: &ReductionCandidate) -> Result<Vec<KoszulElement>> {
    let d = cand.ideal_elems().len();
    let mut out = Vec::new();
    let mut push = |poly: &PolyElement, dn0: u32, dn: Vec<u32>| -> Result<()> {
        let delta = poly.homogeneous_degree().ok_or_else(|| {
            Error::refused(
                "Koszul homology requires homogeneous candidate elements; \
                 got an inhomogeneous element",
            )
        })?;
        out.push(KoszulElement {
            poly: poly.clone(),
            dn0,
            dn,
            delta,
        });
        Ok(())
    };
    for (i, elems) in cand.ideal_elems().iter().enumerate() {
        for e in elems {
            let mut dn = vec![0u32; d];
            dn[i] = 1;
            push(e, 0, dn)?;
        }
    }
    for e in cand.j_elems() {
        push(e, 1, vec![0u32; d])?;
    }
    Ok(out)
}

/// All p-element subsets of 0..len as bitmasks, in increasing mask order.
fn subsets(len: usize, p: usize) -> Vec<u32> {
    (0u32..(1 << len))
        .filter(|m| m.count_ones() as usize == p)
        .collect()
}

/// Per-part Koszul data: the piece ideal for each subset mask, or `None`
/// when a shift pushes some coordinate of the multidegree negative (the Rees
/// module has no such piece), together with the subset's internal-degree
/// shift.
struct PartComplex<'a> {
    den: &'a MonomialIdeal,
    pieces: Vec<Option<MonomialIdeal>>,
    shifts: Vec<u32>,
}

impl<'a> PartComplex<'a> {
    fn build(
        part: &'a Subquotient,
        fam: &IdealFamily,
        elems: &[KoszulElement],
        deg: &MultiDegree,
    ) -> Result<Self> {
        let nmasks = 1usize << elems.len();
        let mut pieces = Vec::with_capacity(nmasks);
        let mut shifts = Vec::with_capacity(nmasks);
        for mask in 0..nmasks as u32 {
            let mut n0 = deg.n0 as i64;
            let mut n: Vec<i64> = deg.n.iter().map(|&c| c as i64).collect();
            let mut delta = 0u32;
            for (j, el) in elems.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    n0 -= el.dn0 as i64;
                    for (c, s) in n.iter_mut().zip(&el.dn) {
                        *c -= *s as i64;
                    }
                    delta += el.delta;
                }
            }
            shifts.push(delta);
            if n0 < 0 || n.iter().any(|&c| c < 0) {
                pieces.push(None);
                continue;
            }
            let mut ideal = part.num().clone();
            for (i, &c) in n.iter().enumerate() {
                ideal = ideal.product(&fam.ideal(i).power(c as u32))?;
            }
            pieces.push(Some(ideal));
        }
        Ok(PartComplex {
            den: part.den(),
            pieces,
            shifts,
        })
    }

    /// Monomial basis of the `mask` summand in internal degree `s`: the
    /// degree-(s − shift) monomials of the piece that survive modulo den.
    fn slice_basis(&self, mask: u32, s: u32) -> Vec<Monomial> {
        let Some(piece) = &self.pieces[mask as usize] else {
            return Vec::new();
        };
        let shift = self.shifts[mask as usize];
        if s < shift {
            return Vec::new();
        }
        monomials_of_degree(piece.nvars(), s - shift)
            .into_iter()
            .filter(|m| piece.contains_monomial(m) && !self.den.contains_monomial(m))
            .collect()
    }
}

/// Homology contributions (one per homological index) of a single internal
/// degree of one part's complex.
fn slice_homology(
    part: &PartComplex,
    elems: &[KoszulElement],
    field: FieldSpec,
    s: u32,
) -> Vec<i64> {
    let len = elems.len();
    // Bases per homological index: (mask, offset, monomial → local index).
    let mut bases: Vec<Vec<(u32, usize, BTreeMap<Monomial, usize>)>> = Vec::with_capacity(len + 1);
    let mut dims = Vec::with_capacity(len + 1);
    for p in 0..=len {
        let mut level = Vec::new();
        let mut offset = 0usize;
        for mask in subsets(len, p) {
            let basis = part.slice_basis(mask, s);
            let map: BTreeMap<Monomial, usize> = basis
                .into_iter()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let count = map.len();
            level.push((mask, offset, map));
            offset += count;
        }
        dims.push(offset);
        bases.push(level);
    }
    // ranks[p] = rank of d_p : K_p → K_{p−1}, for p = 1..=len.
    let mut ranks = vec![0usize; len + 2];
    for p in 1..=len {
        if dims[p] == 0 || dims[p - 1] == 0 {
            continue;
        }
        let mut mat = Matrix::zero(field, dims[p - 1], dims[p]);
        for (mask, offset, map) in &bases[p] {
            for (mono, col) in map {
                let mut sign_pos = 0u32;
                for j in 0..len {
                    if mask >> j & 1 == 0 {
                        continue;
                    }
                    let target_mask = mask & !(1 << j);
                    let negative = sign_pos % 2 == 1;
                    sign_pos += 1;
                    let (_, target_offset, target_map) = bases[p - 1]
                        .iter()
                        .find(|(m, _, _)| *m == target_mask)
                        .expect("every (p−1)-subset is enumerated");
                    for (term, coeff) in elems[j].poly.terms() {
                        let image = term.mul(mono);
                        let Some(row) = target_map.get(&image) else {
                            // The term lands in den and is zero in the piece.
                            continue;
                        };
                        let c = if negative {
                            field.neg(coeff)
                        } else {
                            coeff.clone()
                        };
                        let prior = mat.at(target_offset + row, offset + col).clone();
                        mat.set(target_offset + row, offset + col, field.add(&prior, &c));
                    }
                }
            }
        }
        ranks[p] = mat.rank();
    }
    (0..=len)
        .map(|p| {
            let h = dims[p] as i64 - ranks[p] as i64 - ranks[p + 1] as i64;
            debug_assert!(h >= 0, "negative homology dimension in a slice");
            h
        })
        .collect()
}

/// Initial slice budget: generous enough to cover the degrees where the
/// pieces are generated plus the band used for the stability check.
fn default_budget(fam: &IdealFamily, module: &Module, elems: &[KoszulElement], deg: &MultiDegree) -> u32 {
    let total_deg: u32 = deg.n0 + deg.n.iter().sum::<u32>();
    let num_deg = module
        .parts()
        .iter()
        .map(|p| p.num().max_gen_degree())
        .max()
        .unwrap_or(0);
    let delta_total: u32 = elems.iter().map(|e| e.delta).sum();
    fam.max_input_degree() * total_deg + num_deg + delta_total + TOP_BAND + 2
}

/// Computes the homology lengths of the Koszul complex of the candidate's
/// elements on the Rees module of `module` at one multidegree, exactly,
/// slice by internal degree.  The caller is responsible for the candidate
/// being a verified joint reduction when the lengths are to carry meaning;
/// the complex itself is defined for any candidate.
///
/// `trunc` overrides the initial slice budget.  The budget escalates up to
/// three rounds; if the top band of slices still carries homology, the
/// report comes back with `stable = false`.
pub fn koszul_homology(
    cand: &ReductionCandidate,
    fam: &IdealFamily,
    module: &Module,
    deg: &MultiDegree,
    trunc: Option<u32>,
) -> Result<HomologyReport> {
    if deg.n.len() != fam.d() {
        return Err(Error::input(format!(
            "multidegree has {} ideal coordinates but the family has {}",
            deg.n.len(),
            fam.d()
        )));
    }
    let elems = x_list(cand)?;
    let field = cand.field();
    let base = trunc.unwrap_or_else(|| default_budget(fam, module, &elems, deg));
    let base = base.max(TOP_BAND + 1);
    let parts: Vec<PartComplex> = module
        .parts()
        .iter()
        .map(|p| PartComplex::build(p, fam, &elems, deg))
        .collect::<Result<_>>()?;

    let mut budgets_tried = Vec::new();
    let mut lengths = vec![0i64; elems.len() + 1];
    let mut stable = false;
    let mut budget = base;
    for round in 0..BUDGET_ROUNDS {
        budget = base * (round + 1);
        budgets_tried.push(budget);
        let per_slice: Vec<Vec<i64>> = map_vec((0..budget).collect(), |s| {
            let mut acc = vec![0i64; elems.len() + 1];
            for part in &parts {
                for (p, h) in slice_homology(part, &elems, field, s).into_iter().enumerate() {
                    acc[p] += h;
                }
            }
            acc
        });
        lengths = vec![0i64; elems.len() + 1];
        for acc in &per_slice {
            for (p, h) in acc.iter().enumerate() {
                lengths[p] += h;
            }
        }
        stable = per_slice[(budget - TOP_BAND) as usize..]
            .iter()
            .all(|acc| acc.iter().all(|&h| h == 0));
        if stable {
            break;
        }
    }
    let euler = lengths
        .iter()
        .enumerate()
        .map(|(p, &h)| if p % 2 == 0 { h } else { -h })
        .sum();
    Ok(HomologyReport {
        deg: deg.clone(),
        lengths,
        euler,
        slice_budget: budget,
        budgets_tried,
        stable,
    })
}

/// The χ oracle: applies the backward difference of order (k₀+1, k) to the
/// fitted F-polynomial and reports the constant it collapses to.  Refuses
/// when the fit itself has not stabilized on the window.
pub fn chi_oracle(
    t: &TypeIndex,
    fam: &IdealFamily,
    module: &Module,
    window: &Window,
) -> Result<ChiOutcome> {
    let table = HilbertTable::hilbert_f(module, fam, window)?;
    let (fit, cert) = fit_binomial(&table);
    if !cert.stable {
        return Err(Error::refused(
            "the F-table fit has not stabilized; enlarge the window",
        ));
    }
    Ok(chi_oracle_from_fit(t, &fit))
}

/// The oracle applied to an already-fitted F-polynomial.
pub fn chi_oracle_from_fit(t: &TypeIndex, fit: &BinomialPoly) -> ChiOutcome {
    let shifted = TypeIndex::new(t.k0 + 1, t.k.clone());
    let diff = fit.difference(&shifted);
    if diff.is_constant() {
        ChiOutcome::Constant(diff.constant_value())
    } else {
        ChiOutcome::NotConstant {
            support: diff
                .coeffs()
                .keys()
                .filter(|s| s.total() > 0)
                .cloned()
                .collect(),
        }
    }
}

/// χ(**x**, J, **I**, M) for a verified joint reduction, via the Δ-oracle,
/// optionally cross-validated against direct Koszul homology at two deep
/// window cells.  A verified reduction whose oracle is not constant is an
/// inconsistency (the window is too small), as is any cross-validation
/// mismatch.
pub fn chi(
    cand: &ReductionCandidate,
    fam: &IdealFamily,
    module: &Module,
    window: &Window,
    options: &ChiOptions,
) -> Result<ChiReport> {
    let shape = cand.shape();
    let t = shape.multiplicity_type().ok_or_else(|| {
        Error::input("χ requires a candidate with at least one element from J")
    })?;
    let red = is_joint_reduction(cand, fam, module, window)?;
    if !red.holds {
        return Err(Error::input(format!(
            "χ requires a verified joint reduction; this candidate {}",
            red.verdict
        )));
    }
    let value = match chi_oracle(&t, fam, module, window)? {
        ChiOutcome::Constant(v) => v,
        ChiOutcome::NotConstant { support } => {
            return Err(Error::inconsistency(format!(
                "the differenced F-fit is not constant (support {:?}) although the \
                 candidate verifies as a joint reduction; the window is too small",
                support
                    .iter()
                    .map(|s| format!("({}; {:?})", s.k0, s.k))
                    .collect::<Vec<_>>()
            )));
        }
    };
    let mut diagnostics = Vec::new();
    let mut koszul_reports = Vec::new();
    if options.koszul_validate {
        for deg in deep_cells(window, 2) {
            let report = koszul_homology(cand, fam, module, &deg, options.trunc)?;
            if !report.stable {
                return Err(Error::refused(format!(
                    "Koszul homology at {} did not stabilize within budget {}; \
                     raise the truncation",
                    render_deg(&deg),
                    report.slice_budget
                )));
            }
            if report.euler != value {
                return Err(Error::inconsistency(format!(
                    "Koszul Euler characteristic {} at {} disagrees with the \
                     Δ-oracle value {}",
                    report.euler,
                    render_deg(&deg),
                    value
                )));
            }
            diagnostics.push(format!(
                "Koszul euler at {} matches the oracle: {}",
                render_deg(&deg),
                value
            ));
            koszul_reports.push(report);
        }
    }
    Ok(ChiReport {
        type_index: t,
        value,
        reduction_verdict: red.verdict,
        koszul_reports,
        diagnostics,
    })
}

/// Up to `count` deepest cells of the window: the top corner, then the
/// corner stepped back one in each coordinate direction in turn.
fn deep_cells(window: &Window, count: usize) -> Vec<MultiDegree> {
    let mut out = vec![window.hi.clone()];
    if window.hi.n0 > window.lo.n0 {
        out.push(MultiDegree::new(window.hi.n0 - 1, window.hi.n.clone()));
    }
    for i in 0..window.hi.n.len() {
        if out.len() >= count {
            break;
        }
        if window.hi.n[i] > window.lo.n[i] {
            let mut n = window.hi.n.clone();
            n[i] -= 1;
            out.push(MultiDegree::new(window.hi.n0, n));
        }
    }
    out.truncate(count.max(1));
    out
}

fn render_deg(deg: &MultiDegree) -> String {
    format!(
        "({}; {})",
        deg.n0,
        deg.n
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// Verifies, cell by cell, that the alternating binomial combination of raw
/// F-values of order equal to the candidate's shape reproduces the Koszul
/// Euler characteristic.  Cells too shallow for the combination (the shifted
/// cell leaves the window) are skipped; if none remain, the check is
/// inconclusive rather than failed.
pub fn generating_function_check(
    cand: &ReductionCandidate,
    fam: &IdealFamily,
    module: &Module,
    window: &Window,
    trunc: Option<u32>,
) -> Result<GenFnCheck> {
    let red = is_joint_reduction(cand, fam, module, window)?;
    if !red.holds {
        return Err(Error::input(format!(
            "the generating-function identity presumes a verified joint \
             reduction; this candidate {}",
            red.verdict
        )));
    }
    let shape = cand.shape();
    let tt = TypeIndex::new(shape.j_count, shape.counts.clone());
    let table = HilbertTable::hilbert_f(module, fam, window)?;
    let eligible: Vec<MultiDegree> = window
        .cells()
        .into_iter()
        .filter(|c| table.mixed_difference(&tt, c).is_some())
        .collect();
    if eligible.is_empty() {
        return Ok(GenFnCheck::InsufficientDepth);
    }
    let results: Vec<(MultiDegree, i64, HomologyReport)> = map_vec(eligible, |cell| {
        let expected = table
            .mixed_difference(&tt, &cell)
            .expect("eligibility was checked");
        koszul_homology(cand, fam, module, &cell, trunc).map(|rep| (cell, expected, rep))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut saw_unstable = false;
    for (cell, expected, rep) in &results {
        if !rep.stable {
            saw_unstable = true;
            continue;
        }
        if *expected != rep.euler {
            return Ok(GenFnCheck::FailsAt {
                cell: cell.clone(),
                expected: *expected,
                euler: rep.euler,
            });
        }
    }
    if saw_unstable {
        return Ok(GenFnCheck::InsufficientDepth);
    }
    Ok(GenFnCheck::Verified {
        cells: results.len(),
    })
}

/// Alternating binomial combination of a table's values of order `t` at a
/// cell — the coefficient-extraction form of the generating-function
/// identity, exposed for the harness.  It is exactly the backward mixed
/// difference of the raw table.
pub fn alternating_combination(
    table: &HilbertTable,
    t: &TypeIndex,
    cell: &MultiDegree,
) -> Option<i64> {
    table.mixed_difference(t, cell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degrees::Window;
    use crate::field::FieldSpec;
    use crate::monomial::Monomial;
    use crate::poly::PolyElement;
    use crate::reductions::{generic_candidate, CandidateShape};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn ideal(nvars: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(
            nvars,
            gens.iter().map(|g| Monomial::new(g.to_vec())).collect(),
        )
    }

    fn rng(seed: u64) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(seed)
    }

    /// J = I₁ = maximal in k[x,y], M = R.
    fn e1() -> (IdealFamily, Module) {
        let fam = IdealFamily::new(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)])
            .unwrap();
        let module: Module = Subquotient::cyclic(MonomialIdeal::zero(2)).into();
        (fam, module)
    }

    /// J = I₁ = (x) in k[x], M = R.
    fn principal_line() -> (IdealFamily, Module) {
        let fam =
            IdealFamily::new(MonomialIdeal::maximal(1), vec![MonomialIdeal::maximal(1)]).unwrap();
        let module: Module = Subquotient::cyclic(MonomialIdeal::zero(1)).into();
        (fam, module)
    }

    fn x_candidate(fam: &IdealFamily, f: FieldSpec, exps: Vec<u32>) -> ReductionCandidate {
        let x = PolyElement::monomial(f, Monomial::new(exps));
        ReductionCandidate::new(fam, f, vec![x], vec![vec![]]).unwrap()
    }

    #[test]
    fn principal_line_homology() {
        let (fam, module) = principal_line();
        let f = FieldSpec::default();
        let cand = x_candidate(&fam, f, vec![1]);
        let report =
            koszul_homology(&cand, &fam, &module, &MultiDegree::new(2, vec![2]), None).unwrap();
        assert!(report.stable);
        assert_eq!(report.lengths, vec![1, 0]);
        assert_eq!(report.euler, 1);
    }

    #[test]
    fn annihilating_element_leaves_a_kernel() {
        // x kills M = R/(x), so the Koszul differential vanishes on the
        // whole K₁ piece, which then has unbounded homology: the report must
        // come back unstable with a visibly nonzero H₁.
        let fam = IdealFamily::new(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)])
            .unwrap();
        let module: Module = Subquotient::cyclic(ideal(2, &[&[1, 0]])).into();
        let f = FieldSpec::default();
        let cand = x_candidate(&fam, f, vec![1, 0]);
        let report =
            koszul_homology(&cand, &fam, &module, &MultiDegree::new(2, vec![2]), Some(8)).unwrap();
        assert!(!report.stable);
        assert!(report.lengths[1] > 0);
        assert_eq!(report.budgets_tried, vec![8, 16, 24]);
    }

    #[test]
    fn plane_homology_lengths() {
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let cand =
            generic_candidate(&fam, &CandidateShape::new(2, vec![0]), f, &mut rng(7)).unwrap();
        let report =
            koszul_homology(&cand, &fam, &module, &MultiDegree::new(3, vec![2]), None).unwrap();
        assert!(report.stable);
        assert_eq!(report.lengths, vec![3, 2, 0]);
        assert_eq!(report.euler, 1);
        // The invariant: euler is the alternating sum of the lengths.
        let alt: i64 = report
            .lengths
            .iter()
            .enumerate()
            .map(|(p, &h)| if p % 2 == 0 { h } else { -h })
            .sum();
        assert_eq!(report.euler, alt);
    }

    #[test]
    fn oracle_values_on_the_plane_and_the_line() {
        let (fam, module) = e1();
        let w = fam.default_window();
        assert_eq!(
            chi_oracle(&TypeIndex::new(1, vec![0]), &fam, &module, &w).unwrap(),
            ChiOutcome::Constant(1)
        );
        assert_eq!(
            chi_oracle(&TypeIndex::new(1, vec![1]), &fam, &module, &w).unwrap(),
            ChiOutcome::Constant(0)
        );
        let (fam, module) = principal_line();
        let w = fam.default_window();
        assert_eq!(
            chi_oracle(&TypeIndex::new(0, vec![0]), &fam, &module, &w).unwrap(),
            ChiOutcome::Constant(1)
        );
    }

    #[test]
    fn chi_with_cross_validation() {
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let w = fam.default_window();
        let opts = ChiOptions {
            koszul_validate: true,
            trunc: None,
        };
        let cand =
            generic_candidate(&fam, &CandidateShape::new(2, vec![0]), f, &mut rng(11)).unwrap();
        let report = chi(&cand, &fam, &module, &w, &opts).unwrap();
        assert_eq!(report.value, 1);
        assert_eq!(report.type_index, TypeIndex::new(1, vec![0]));
        assert_eq!(report.koszul_reports.len(), 2);
        assert!(report.koszul_reports.iter().all(|r| r.stable && r.euler == 1));

        let wide =
            generic_candidate(&fam, &CandidateShape::new(2, vec![1]), f, &mut rng(11)).unwrap();
        let report = chi(&wide, &fam, &module, &w, &ChiOptions::default()).unwrap();
        assert_eq!(report.value, 0);

        let (fam, module) = principal_line();
        let cand = x_candidate(&fam, f, vec![1]);
        let report = chi(&cand, &fam, &module, &fam.default_window(), &opts).unwrap();
        assert_eq!(report.value, 1);
    }

    #[test]
    fn chi_adds_over_a_submodule_and_its_quotient() {
        // 0 → (x)/(x²) → R/(x²) → R/(x) → 0 over k[x,y] with J = I₁ = 𝔪.
        let fam = IdealFamily::new(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)])
            .unwrap();
        let f = FieldSpec::default();
        let w = fam.default_window();
        let x2 = ideal(2, &[&[2, 0]]);
        let whole: Module = Subquotient::cyclic(x2.clone()).into();
        let sub: Module = Subquotient::new(ideal(2, &[&[1, 0]]), x2).unwrap().into();
        let quot: Module = Subquotient::cyclic(ideal(2, &[&[1, 0]])).into();
        let cand =
            generic_candidate(&fam, &CandidateShape::new(1, vec![0]), f, &mut rng(3)).unwrap();
        let opts = ChiOptions::default();
        let chi_whole = chi(&cand, &fam, &whole, &w, &opts).unwrap().value;
        let chi_sub = chi(&cand, &fam, &sub, &w, &opts).unwrap().value;
        let chi_quot = chi(&cand, &fam, &quot, &w, &opts).unwrap().value;
        assert_eq!(chi_whole, 2);
        assert_eq!(chi_sub, 1);
        assert_eq!(chi_quot, 1);
        assert_eq!(chi_whole, chi_sub + chi_quot);
    }

    #[test]
    fn chi_is_independent_of_the_candidate() {
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let w = fam.default_window();
        let opts = ChiOptions::default();
        let a = generic_candidate(&fam, &CandidateShape::new(2, vec![0]), f, &mut rng(5)).unwrap();
        let b = generic_candidate(&fam, &CandidateShape::new(2, vec![0]), f, &mut rng(6)).unwrap();
        let va = chi(&a, &fam, &module, &w, &opts).unwrap().value;
        let vb = chi(&b, &fam, &module, &w, &opts).unwrap().value;
        assert_eq!(va, vb);
    }

    #[test]
    fn inhomogeneous_elements_are_refused() {
        // J = (x², y) is primary to the maximal ideal but has generators in
        // two different degrees, so its generic elements are inhomogeneous.
        let fam = IdealFamily::new(
            ideal(2, &[&[2, 0], &[0, 1]]),
            vec![MonomialIdeal::maximal(2)],
        )
        .unwrap();
        let module: Module = Subquotient::cyclic(MonomialIdeal::zero(2)).into();
        let f = FieldSpec::default();
        let cand =
            generic_candidate(&fam, &CandidateShape::new(1, vec![0]), f, &mut rng(9)).unwrap();
        let err =
            koszul_homology(&cand, &fam, &module, &MultiDegree::new(2, vec![2]), None).unwrap_err();
        assert!(matches!(err, Error::Refused(_)));
    }

    #[test]
    fn generating_function_identity_on_windows() {
        let (fam, module) = principal_line();
        let f = FieldSpec::default();
        let cand = x_candidate(&fam, f, vec![1]);
        let w = Window::new(MultiDegree::new(2, vec![2]), MultiDegree::new(5, vec![5])).unwrap();
        assert_eq!(
            generating_function_check(&cand, &fam, &module, &w, None).unwrap(),
            GenFnCheck::Verified { cells: 12 }
        );

        let (fam, module) = e1();
        let cand =
            generic_candidate(&fam, &CandidateShape::new(2, vec![0]), f, &mut rng(13)).unwrap();
        let w = Window::new(MultiDegree::new(2, vec![2]), MultiDegree::new(5, vec![5])).unwrap();
        let out = generating_function_check(&cand, &fam, &module, &w, None).unwrap();
        assert_eq!(out, GenFnCheck::Verified { cells: 8 });
    }

    #[test]
    fn shallow_windows_are_inconclusive_not_false() {
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let cand =
            generic_candidate(&fam, &CandidateShape::new(2, vec![0]), f, &mut rng(13)).unwrap();
        // Every cell of this window is too shallow for a (2; 0) difference.
        let w = Window::new(MultiDegree::new(2, vec![2]), MultiDegree::new(3, vec![3])).unwrap();
        assert_eq!(
            generating_function_check(&cand, &fam, &module, &w, None).unwrap(),
            GenFnCheck::InsufficientDepth
        );
    }
}
