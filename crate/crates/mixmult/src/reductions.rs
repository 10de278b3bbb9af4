//! Joint reductions: candidate generation, exact per-multidegree testing via
//! a Nakayama criterion, randomized search, minimality, and weak-(FC)
//! condition checks.
//!
//! A candidate of shape `(t; m_1, ..., m_d)` draws `t` elements from `J` and
//! `m_i` from `I_i`. It is a joint reduction at `(n_0, n)` when
//!
//! `J^{n_0}𝕀^n M = Σ_j x_j J^{n_0-1}𝕀^n M + Σ_{i,l} y_{i,l} J^{n_0}𝕀^{n-e_i} M`.
//!
//! Both sides sit between `W M` and `𝔪 W M` for `W = J^{n_0}𝕀^n`, so by
//! Nakayama the equality holds iff the candidate images span the
//! finite-dimensional space `(W·num + den)/(𝔪W·num + den)` — a rank
//! computation over the chosen field.

use crate::degrees::{boxed_indices, MultiDegree, TypeIndex, Window};
use crate::error::{Error, Result};
use crate::exec::map_vec;
use crate::family::IdealFamily;
use crate::field::FieldSpec;
use crate::fit::{fit_binomial, mixed_mult_maximal, MixedMult};
use crate::ideal::MonomialIdeal;
use crate::matrix::Matrix;
use crate::module::{Module, Subquotient};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::PolyElement;
use crate::table::{HilbertTable, PowerCache};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::collections::BTreeMap;

/// Element counts of a candidate: `j_count` elements from `J`, `counts[i]`
/// from `I_i`.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CandidateShape {
    pub j_count: u32,
    pub counts: Vec<u32>,
}

impl CandidateShape {
    pub fn new(j_count: u32, counts: Vec<u32>) -> Self {
        CandidateShape { j_count, counts }
    }

    /// The shape searching for the multiplicity of type `(k_0, k)`: one more
    /// element from `J` than the degree asks for, `k_i` from each `I_i`.
    pub fn for_type(t: &TypeIndex) -> Self {
        CandidateShape { j_count: t.k0 + 1, counts: t.k.clone() }
    }

    /// The multiplicity type `(j_count - 1, counts)` this shape corresponds
    /// to; `None` when the shape has no `J` elements.
    pub fn multiplicity_type(&self) -> Option<TypeIndex> {
        self.j_count
            .checked_sub(1)
            .map(|k0| TypeIndex::new(k0, self.counts.clone()))
    }

    pub fn total(&self) -> u32 {
        self.j_count + self.counts.iter().sum::<u32>()
    }

    /// All shapes strictly below this one componentwise, in increasing total
    /// size then lexicographic order.
    pub fn strictly_smaller(&self) -> Vec<CandidateShape> {
        boxed_indices(&TypeIndex::new(self.j_count, self.counts.clone()))
            .into_iter()
            .map(|t| CandidateShape { j_count: t.k0, counts: t.k })
            .filter(|s| s != self)
            .collect()
    }
}

impl std::fmt::Display for CandidateShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(u32::to_string).collect();
        write!(f, "({}; {})", self.j_count, parts.join(","))
    }
}

/// A tuple of candidate elements, one list per ideal of the family.
#[derive(Clone, Debug)]
pub struct ReductionCandidate {
    field: FieldSpec,
    j_elems: Vec<PolyElement>,
    ideal_elems: Vec<Vec<PolyElement>>,
}

impl ReductionCandidate {
    /// Validates that every element is nonzero, lies in its declared ideal,
    /// and shares the candidate's field.
    pub fn new(
        fam: &IdealFamily,
        field: FieldSpec,
        j_elems: Vec<PolyElement>,
        ideal_elems: Vec<Vec<PolyElement>>,
    ) -> Result<Self> {
        if ideal_elems.len() != fam.d() {
            return Err(Error::input(format!(
                "candidate has {} ideal lists but the family has {}",
                ideal_elems.len(),
                fam.d()
            )));
        }
        let check = |e: &PolyElement, ideal: &MonomialIdeal, what: &str| -> Result<()> {
            if e.field() != field {
                return Err(Error::input(format!("{what} element over a different field")));
            }
            if e.is_zero() {
                return Err(Error::input(format!("{what} element is zero")));
            }
            if !e.lies_in(ideal) {
                return Err(Error::input(format!("{what} element does not lie in its ideal")));
            }
            Ok(())
        };
        for e in &j_elems {
            check(e, fam.j(), "J")?;
        }
        for (i, list) in ideal_elems.iter().enumerate() {
            for e in list {
                check(e, fam.ideal(i), &format!("I_{}", i + 1))?;
            }
        }
        Ok(ReductionCandidate { field, j_elems, ideal_elems })
    }

    pub fn shape(&self) -> CandidateShape {
        CandidateShape {
            j_count: self.j_elems.len() as u32,
            counts: self.ideal_elems.iter().map(|l| l.len() as u32).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn j_elems(&self) -> &[PolyElement] {
        &self.j_elems
    }

    pub fn ideal_elems(&self) -> &[Vec<PolyElement>] {
        &self.ideal_elems
    }

    /// Rendered element lists: the `J` list first, then one per `I_i`.
    pub fn rendered(&self, vars: &[String]) -> (Vec<String>, Vec<Vec<String>>) {
        (
            self.j_elems.iter().map(|e| e.render(vars)).collect(),
            self.ideal_elems
                .iter()
                .map(|l| l.iter().map(|e| e.render(vars)).collect())
                .collect(),
        )
    }
}

/// A random k-linear combination of the minimal generators with nonzero
/// coefficients; deterministic given the rng state.
pub fn generic_element(
    a: &MonomialIdeal,
    field: FieldSpec,
    rng: &mut ChaCha20Rng,
) -> Result<PolyElement> {
    if a.is_zero() {
        return Err(Error::input("cannot draw a generic element from the zero ideal"));
    }
    let terms = a
        .gens()
        .iter()
        .map(|g| (g.clone(), field.random_nonzero(rng)))
        .collect();
    PolyElement::from_terms(field, terms)
}

/// A full candidate of the given shape with fresh generic elements.
pub fn generic_candidate(
    fam: &IdealFamily,
    shape: &CandidateShape,
    field: FieldSpec,
    rng: &mut ChaCha20Rng,
) -> Result<ReductionCandidate> {
    if shape.counts.len() != fam.d() {
        return Err(Error::input("candidate shape does not match the family"));
    }
    let j_elems = (0..shape.j_count)
        .map(|_| generic_element(fam.j(), field, rng))
        .collect::<Result<Vec<_>>>()?;
    let ideal_elems = shape
        .counts
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            (0..m)
                .map(|_| generic_element(fam.ideal(i), field, rng))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ReductionCandidate::new(fam, field, j_elems, ideal_elems)
}

fn check_degree_positivity(shape: &CandidateShape, deg: &MultiDegree) -> Result<()> {
    if shape.j_count > 0 && deg.n0 == 0 {
        return Err(Error::input(
            "candidate has J elements, so the degree needs n0 >= 1",
        ));
    }
    for (i, (&m, &ni)) in shape.counts.iter().zip(&deg.n).enumerate() {
        if m > 0 && ni == 0 {
            return Err(Error::input(format!(
                "candidate has I_{} elements, so the degree needs n_{} >= 1",
                i + 1,
                i + 1
            )));
        }
    }
    Ok(())
}

/// One part's Nakayama test: do the candidate images span
/// `(W·num + den)/(𝔪W·num + den)`?
fn spans_part(
    cand: &ReductionCandidate,
    fam: &IdealFamily,
    part: &Subquotient,
    cache: &PowerCache,
    deg: &MultiDegree,
) -> Result<bool> {
    let w_num = cache.w(deg).product(part.num())?;
    let mw_den = MonomialIdeal::maximal(fam.nvars())
        .product(&w_num)?
        .sum(part.den());
    let basis: Vec<&Monomial> = w_num
        .gens()
        .iter()
        .filter(|g| !mw_den.contains_monomial(g))
        .collect();
    if basis.is_empty() {
        return Ok(true);
    }
    let index: BTreeMap<&Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();

    let mut rows: Vec<Vec<crate::field::Coeff>> = Vec::new();
    let field = cand.field();
    let mut push_images = |elems: &[PolyElement], shifted: &MonomialIdeal| {
        for e in elems {
            for h in shifted.gens() {
                let image = e.mul_monomial(h);
                let mut row = vec![field.zero(); basis.len()];
                let mut nonzero = false;
                for (m, c) in image.terms() {
                    if let Some(&i) = index.get(m) {
                        row[i] = c.clone();
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    };

    if !cand.j_elems.is_empty() {
        let shifted = cache
            .j_power(deg.n0 - 1)
            .product(&cache.ideals_power(&deg.n))?
            .product(part.num())?;
        push_images(&cand.j_elems, &shifted);
    }
    for (i, elems) in cand.ideal_elems.iter().enumerate() {
        if elems.is_empty() {
            continue;
        }
        let mut n = deg.n.clone();
        n[i] -= 1;
        let shifted = cache
            .j_power(deg.n0)
            .product(&cache.ideals_power(&n))?
            .product(part.num())?;
        push_images(elems, &shifted);
    }

    if rows.len() < basis.len() {
        return Ok(false);
    }
    let mut matrix = Matrix::zero(field, rows.len(), basis.len());
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            matrix.set(r, c, v);
        }
    }
    Ok(matrix.rank() == basis.len())
}

fn jr_at_with_cache(
    cand: &ReductionCandidate,
    fam: &IdealFamily,
    module: &Module,
    cache: &PowerCache,
    deg: &MultiDegree,
) -> Result<bool> {
    check_degree_positivity(&cand.shape(), deg)?;
    for part in module.parts() {
        if !spans_part(cand, fam, part, cache, deg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tests the joint-reduction equality at a single multidegree.
pub fn joint_reduction_at(
    cand: &ReductionCandidate,
    fam: &IdealFamily,
    module: &Module,
    deg: &MultiDegree,
) -> Result<bool> {
    let window = Window::new(deg.clone(), deg.clone())?;
    let cache = PowerCache::new(fam, &window);
    jr_at_with_cache(cand, fam, module, &cache, deg)
}

/// The outcome of testing one candidate over a window.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ReductionCertificate {
    pub shape: CandidateShape,
    pub window: Window,
    /// Per-cell results, in window order, for the cells meeting the
    /// positivity requirement of the candidate's shape.
    pub cells: Vec<(MultiDegree, bool)>,
    pub holds: bool,
    pub verdict: String,
    /// Seed that generated the candidate, when it came from a search.
    pub seed: Option<u64>,
}

/// Applies [`joint_reduction_at`] across every eligible window cell.
///
/// A passing window is evidence for "joint reduction for all large degrees",
/// not a proof; the verdict says so.
pub fn is_joint_reduction(
    cand: &ReductionCandidate,
    fam: &IdealFamily,
    module: &Module,
    window: &Window,
) -> Result<ReductionCertificate> {
    if window.d() != fam.d() {
        return Err(Error::input("window dimension does not match the family"));
    }
    let shape = cand.shape();
    let eligible: Vec<MultiDegree> = window
        .cells()
        .into_iter()
        .filter(|c| check_degree_positivity(&shape, c).is_ok())
        .collect();
    if eligible.is_empty() {
        return Err(Error::input(
            "no window cell meets the candidate's positivity requirement",
        ));
    }
    let cache = PowerCache::new(fam, window);
    let results: Vec<Result<bool>> = map_vec(eligible.clone(), |cell| {
        jr_at_with_cache(cand, fam, module, &cache, &cell)
    });
    let mut cells = Vec::with_capacity(eligible.len());
    for (cell, r) in eligible.into_iter().zip(results) {
        cells.push((cell, r?));
    }
    let first_failure = cells.iter().find(|(_, ok)| !ok).map(|(c, _)| c.clone());
    let holds = first_failure.is_none();
    let verdict = match &first_failure {
        None => "holds (heuristic window)".to_string(),
        Some(c) => format!("fails at cell {c}"),
    };
    Ok(ReductionCertificate { shape, window: window.clone(), cells, holds, verdict, seed: None })
}

/// The result of a randomized candidate search at one shape.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub shape: CandidateShape,
    pub attempts_used: u32,
    pub found: Option<(ReductionCandidate, ReductionCertificate)>,
    pub note: String,
}

/// Default number of generic candidates tried per shape.
pub const DEFAULT_ATTEMPTS: u32 = 8;

/// Searches for a joint reduction whose existence the multiplicity type `t`
/// asks about: shape `(k_0 + 1; k)`.
pub fn find_joint_reduction(
    fam: &IdealFamily,
    module: &Module,
    t: &TypeIndex,
    window: &Window,
    field: FieldSpec,
    seed: u64,
    attempts: u32,
) -> Result<SearchReport> {
    find_by_shape(fam, module, &CandidateShape::for_type(t), window, field, seed, attempts)
}

/// Searches for a joint reduction of an explicit shape.
pub fn find_by_shape(
    fam: &IdealFamily,
    module: &Module,
    shape: &CandidateShape,
    window: &Window,
    field: FieldSpec,
    seed: u64,
    attempts: u32,
) -> Result<SearchReport> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    // A shape with no elements has a single possible candidate.
    let attempts = if shape.total() == 0 { 1 } else { attempts.max(1) };
    for attempt in 1..=attempts {
        let cand = generic_candidate(fam, shape, field, &mut rng)?;
        let mut cert = is_joint_reduction(&cand, fam, module, window)?;
        if cert.holds {
            cert.seed = Some(seed);
            return Ok(SearchReport {
                shape: shape.clone(),
                attempts_used: attempt,
                found: Some((cand, cert)),
                note: format!("found on attempt {attempt}"),
            });
        }
    }
    Ok(SearchReport {
        shape: shape.clone(),
        attempts_used: attempts,
        found: None,
        note: format!(
            "no joint reduction found after {attempts} generic attempts (evidence, not proof)"
        ),
    })
}

/// The verdict of a minimality search, with the positivity cross-check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct MinimalityReport {
    pub shape: CandidateShape,
    pub minimal: bool,
    /// A strictly smaller shape that also reduces, when one was found.
    pub smaller_found: Option<CandidateShape>,
    pub shapes_searched: u32,
    pub attempts_per_shape: u32,
    /// The multiplicity `e` of the candidate's type, when it exists.
    pub e_value: Option<i64>,
    /// Whether `e > 0` agrees with minimality (Theorem-level cross-check).
    pub positivity_agrees: Option<bool>,
    pub diagnostics: Vec<String>,
}

/// Decides minimality by searching every strictly smaller shape for a joint
/// reduction, then cross-checks against the positivity of the corresponding
/// mixed multiplicity. Disagreements are reported, never silently resolved.
pub fn is_minimal_joint_reduction(
    cand: &ReductionCandidate,
    fam: &IdealFamily,
    module: &Module,
    window: &Window,
    seed: u64,
    attempts: u32,
) -> Result<MinimalityReport> {
    let own = is_joint_reduction(cand, fam, module, window)?;
    if !own.holds {
        return Err(Error::input(format!(
            "candidate is not a joint reduction on the window ({})",
            own.verdict
        )));
    }
    let shape = cand.shape();
    let smaller = shape.strictly_smaller();
    let shapes_searched = smaller.len() as u32;
    let mut smaller_found = None;
    for (idx, s) in smaller.iter().enumerate() {
        let report = find_by_shape(
            fam,
            module,
            s,
            window,
            cand.field(),
            seed.wrapping_add(idx as u64 + 1),
            attempts,
        )?;
        if report.found.is_some() {
            smaller_found = Some(s.clone());
            break;
        }
    }
    let minimal = smaller_found.is_none();

    let mut diagnostics = Vec::new();
    if minimal {
        diagnostics.push(
            "minimality rests on randomized searches failing; evidence, not proof".to_string(),
        );
    }
    let (e_value, positivity_agrees) = match shape.multiplicity_type() {
        None => {
            diagnostics.push("shape has no J element, so no multiplicity type to compare".into());
            (None, None)
        }
        Some(t) => match positivity_e(fam, module, &t) {
            Ok(Some(e)) => {
                let agrees = (e > 0) == minimal;
                if !agrees {
                    diagnostics.push(format!(
                        "DISAGREEMENT: search says minimal={minimal} but e = {e}; \
                         raise attempts or enlarge the window"
                    ));
                }
                (Some(e), Some(agrees))
            }
            Ok(None) => {
                diagnostics.push(format!(
                    "multiplicity of type {t} is not defined; positivity cross-check skipped"
                ));
                (None, None)
            }
            Err(e) => {
                diagnostics.push(format!("positivity cross-check unavailable: {e}"));
                (None, None)
            }
        },
    };
    Ok(MinimalityReport {
        shape,
        minimal,
        smaller_found,
        shapes_searched,
        attempts_per_shape: attempts,
        e_value,
        positivity_agrees,
        diagnostics,
    })
}

/// The mixed multiplicity of type `t`, when defined, from a fresh fit over
/// the family's default window.
fn positivity_e(fam: &IdealFamily, module: &Module, t: &TypeIndex) -> Result<Option<i64>> {
    let table = HilbertTable::hilbert_p(module, fam, &fam.default_window())?;
    let (poly, cert) = fit_binomial(&table);
    match mixed_mult_maximal(&poly, &cert, t)? {
        MixedMult::Defined { value } => Ok(Some(value)),
        MixedMult::Undefined { .. } => Ok(None),
    }
}

/// The outcome of a weak-(FC) check for one element.
#[derive(Clone, Debug, serde::Serialize)]
pub struct FCWitness {
    /// The element tested, rendered.
    pub element: String,
    /// Which `I_i` the element was declared in (zero-indexed).
    pub index: usize,
    /// Per-cell FC1 results over the window's `n`-projections.
    pub fc1_cells: Vec<(Vec<u32>, bool)>,
    pub fc1: bool,
    pub fc2: bool,
    /// Truncation level used by the non-monomial path.
    pub truncation: Option<u32>,
    /// Set when the element is a single term, so ideal arithmetic was exact.
    pub exact: bool,
}

/// Checks the weak-(FC) conditions for `x ∈ I_i`:
///
/// * FC1: `x M ∩ 𝕀^n M = x 𝕀^{n-e_i} M` at every window cell (`n`-part,
///   with `n_i ≥ 1`),
/// * FC2: `(0_M : x) ⊆ (0_M : 𝕀^∞)`.
///
/// Single-term elements are tested exactly by ideal arithmetic. Otherwise
/// both conditions are tested inside the truncations `M/𝔪^D M` for `D`,
/// `D+1`, `D+2`; disagreement between the three levels is a refusal.
pub fn weak_fc_check(
    x: &PolyElement,
    i: usize,
    fam: &IdealFamily,
    module: &Module,
    window: &Window,
    d_trunc: u32,
) -> Result<FCWitness> {
    if i >= fam.d() {
        return Err(Error::input(format!(
            "index {} out of range for a family with {} ideals",
            i + 1,
            fam.d()
        )));
    }
    if x.is_zero() {
        return Err(Error::input("the element is zero"));
    }
    if !x.lies_in(fam.ideal(i)) {
        return Err(Error::input(format!("the element does not lie in I_{}", i + 1)));
    }
    if window.d() != fam.d() {
        return Err(Error::input("window dimension does not match the family"));
    }

    // Distinct n-parts of the window with n_i >= 1, in order.
    let mut ncells: Vec<Vec<u32>> = window
        .cells()
        .into_iter()
        .map(|c| c.n)
        .filter(|n| n[i] >= 1)
        .collect();
    ncells.sort();
    ncells.dedup();
    if ncells.is_empty() {
        return Err(Error::input(format!(
            "no window cell has n_{} >= 1; nothing to test",
            i + 1
        )));
    }

    let rendered = x.render(fam.vars());
    if let Some((mono, _)) = x.as_term() {
        let mut fc1_cells = Vec::with_capacity(ncells.len());
        for n in &ncells {
            let mut ok = true;
            for part in module.parts() {
                if !fc1_exact(mono, i, fam, part, n)? {
                    ok = false;
                    break;
                }
            }
            fc1_cells.push((n.clone(), ok));
        }
        let fc2 = module.parts().iter().all(|part| fc2_exact(mono, fam, part));
        let fc1 = fc1_cells.iter().all(|(_, ok)| *ok);
        return Ok(FCWitness {
            element: rendered,
            index: i,
            fc1_cells,
            fc1,
            fc2,
            truncation: None,
            exact: true,
        });
    }

    // Truncated path: verdicts must agree at D, D+1, D+2.
    let levels = [d_trunc, d_trunc + 1, d_trunc + 2];
    let mut per_level: Vec<(Vec<bool>, bool)> = Vec::new();
    for &d in &levels {
        let mut fc1_at_level = Vec::with_capacity(ncells.len());
        for n in &ncells {
            let mut ok = true;
            for part in module.parts() {
                if !fc1_truncated(x, i, fam, part, n, d)? {
                    ok = false;
                    break;
                }
            }
            fc1_at_level.push(ok);
        }
        let fc2 = module
            .parts()
            .iter()
            .all(|part| fc2_truncated(x, fam, part, d));
        per_level.push((fc1_at_level, fc2));
    }
    if per_level.iter().any(|l| *l != per_level[0]) {
        return Err(Error::refused(format!(
            "truncated FC verdicts differ across D = {}, {}, {}; raise the truncation",
            levels[0], levels[1], levels[2]
        )));
    }
    let (fc1_flags, fc2) = per_level.swap_remove(0);
    let fc1_cells: Vec<(Vec<u32>, bool)> = ncells.into_iter().zip(fc1_flags).collect();
    let fc1 = fc1_cells.iter().all(|(_, ok)| *ok);
    Ok(FCWitness {
        element: rendered,
        index: i,
        fc1_cells,
        fc1,
        fc2,
        truncation: Some(d_trunc),
        exact: false,
    })
}

/// Exact FC1 at one `n`: `(x·num ∩ 𝕀^n·num) + den = x·𝕀^{n-e_i}·num + den`.
fn fc1_exact(
    x: &Monomial,
    i: usize,
    fam: &IdealFamily,
    part: &Subquotient,
    n: &[u32],
) -> Result<bool> {
    let ipow = ideals_power(fam, n)?;
    let mut shifted = n.to_vec();
    shifted[i] -= 1;
    let ipow_shift = ideals_power(fam, &shifted)?;
    let lhs = part
        .num()
        .mul_monomial(x)
        .intersection(&ipow.product(part.num())?)
        .sum(part.den());
    let rhs = ipow_shift.product(part.num())?.mul_monomial(x).sum(part.den());
    Ok(lhs == rhs)
}

/// Exact FC2: `(den : x) ∩ num ⊆ (den : 𝕀^∞)`.
fn fc2_exact(x: &Monomial, fam: &IdealFamily, part: &Subquotient) -> bool {
    let kernel = part.den().colon_monomial(x).intersection(part.num());
    let sat = part.den().colon_saturate(&fam.ideals_product());
    sat.contains_ideal(&kernel)
}

fn ideals_power(fam: &IdealFamily, n: &[u32]) -> Result<MonomialIdeal> {
    let mut acc = MonomialIdeal::unit(fam.nvars());
    for (i, &ni) in n.iter().enumerate() {
        acc = acc.product(&fam.ideal(i).power(ni))?;
    }
    Ok(acc)
}

/// Monomial basis of `M/𝔪^D M` for a part `num/den`: monomials of `num`
/// outside `den + 𝔪^D·num`. Every such monomial has degree below
/// `maxdeg(num) + D`.
pub(crate) struct TruncatedModule {
    pub(crate) basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    den_t: MonomialIdeal,
}

impl TruncatedModule {
    pub(crate) fn new(part: &Subquotient, d: u32) -> Self {
        let nvars = part.nvars();
        let mpow = MonomialIdeal::maximal(nvars).power(d);
        let den_t = part
            .den()
            .sum(&mpow.product(part.num()).expect("same ring"));
        let mut basis = Vec::new();
        let lo = part.num().min_gen_degree().unwrap_or(0);
        let hi = part.num().max_gen_degree() + d;
        for deg in lo..hi {
            for m in monomials_of_degree(nvars, deg) {
                if part.num().contains_monomial(&m) && !den_t.contains_monomial(&m) {
                    basis.push(m);
                }
            }
        }
        let index = basis.iter().cloned().zip(0..).collect();
        TruncatedModule { basis, index, den_t }
    }

    pub(crate) fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a polynomial image, truncating terms in `den_t`.
    pub(crate) fn reduce(&self, e: &PolyElement, field: FieldSpec) -> Vec<crate::field::Coeff> {
        let mut row = vec![field.zero(); self.basis.len()];
        for (m, c) in e.terms() {
            if let Some(&i) = self.index.get(m) {
                row[i] = c.clone();
            } else {
                debug_assert!(self.den_t.contains_monomial(m), "image outside the module");
            }
        }
        row
    }
}

pub(crate) fn rank_of_rows(field: FieldSpec, rows: &[Vec<crate::field::Coeff>], cols: usize) -> usize {
    let mut m = Matrix::zero(field, rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    m.rank()
}

/// Truncated FC1 at one `n`: compare `dim(x·M̄ ∩ 𝕀^n·M̄)` with
/// `dim(x·𝕀^{n-e_i}·M̄)` inside `M̄ = M/𝔪^D M`.
fn fc1_truncated(
    x: &PolyElement,
    i: usize,
    fam: &IdealFamily,
    part: &Subquotient,
    n: &[u32],
    d: u32,
) -> Result<bool> {
    let field = x.field();
    let trunc = TruncatedModule::new(part, d);
    if trunc.dim() == 0 {
        return Ok(true);
    }
    let ipow = ideals_power(fam, n)?.product(part.num())?;
    let mut shifted = n.to_vec();
    shifted[i] -= 1;
    let ipow_shift = ideals_power(fam, &shifted)?.product(part.num())?;

    // image of multiplication by x
    let a_rows: Vec<Vec<crate::field::Coeff>> = trunc
        .basis
        .iter()
        .map(|mu| trunc.reduce(&x.mul_monomial(mu), field))
        .collect();
    let dim_a = rank_of_rows(field, &a_rows, trunc.dim());

    // the monomial subspace 𝕀^n M̄, and the join with the image
    let b_cols: Vec<usize> = trunc
        .basis
        .iter()
        .enumerate()
        .filter(|(_, m)| ipow.contains_monomial(m))
        .map(|(idx, _)| idx)
        .collect();
    let dim_b = b_cols.len();
    let mut joined = a_rows.clone();
    for &c in &b_cols {
        let mut row = vec![field.zero(); trunc.dim()];
        row[c] = field.one();
        joined.push(row);
    }
    let dim_ab = rank_of_rows(field, &joined, trunc.dim());
    let dim_lhs = dim_a + dim_b - dim_ab;

    let rhs_rows: Vec<Vec<crate::field::Coeff>> = trunc
        .basis
        .iter()
        .filter(|m| ipow_shift.contains_monomial(m))
        .map(|mu| trunc.reduce(&x.mul_monomial(mu), field))
        .collect();
    let dim_rhs = rank_of_rows(field, &rhs_rows, trunc.dim());
    Ok(dim_lhs == dim_rhs)
}

/// Truncated FC2: the kernel of `x` on basis monomials of degree low enough
/// that no image term is truncated is exactly `(0 :_M x)` in those degrees;
/// every kernel vector must be supported in `(den : 𝕀^∞)`.
fn fc2_truncated(x: &PolyElement, fam: &IdealFamily, part: &Subquotient, d: u32) -> bool {
    let field = x.field();
    let trunc = TruncatedModule::new(part, d);
    if trunc.dim() == 0 {
        return true;
    }
    let dx = x.max_term_degree();
    let domain: Vec<&Monomial> = trunc
        .basis
        .iter()
        .filter(|m| m.degree() + dx < d)
        .collect();
    if domain.is_empty() {
        return true;
    }
    // columns = domain monomials, rows = target coordinates
    let mut matrix = Matrix::zero(field, trunc.dim(), domain.len());
    for (c, mu) in domain.iter().enumerate() {
        let col = trunc.reduce(&x.mul_monomial(mu), field);
        for (r, v) in col.into_iter().enumerate() {
            matrix.set(r, c, v);
        }
    }
    let sat = part.den().colon_saturate(&fam.ideals_product());
    for v in matrix.kernel_basis() {
        for (c, coeff) in v.iter().enumerate() {
            if !coeff.is_zero() && !sat.contains_monomial(domain[c]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Coeff;

    fn ideal(nvars: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(nvars, gens.iter().map(|e| Monomial::new(e.to_vec())).collect())
    }

    fn e1() -> (IdealFamily, Module) {
        let fam = IdealFamily::new(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)])
            .unwrap();
        (fam, Subquotient::ring(2).into())
    }

    fn rng(seed: u64) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(seed)
    }

    #[test]
    fn generic_elements_are_deterministic_and_nonzero() {
        let f = FieldSpec::default();
        let a = ideal(2, &[&[1, 0], &[0, 1]]);
        let e1 = generic_element(&a, f, &mut rng(7)).unwrap();
        let e2 = generic_element(&a, f, &mut rng(7)).unwrap();
        assert_eq!(e1, e2);
        assert_eq!(e1.num_terms(), 2);
        assert!(generic_element(&MonomialIdeal::zero(2), f, &mut rng(7)).is_err());
        // a principal ideal gives a scaled generator
        let p = generic_element(&ideal(2, &[&[1, 0]]), f, &mut rng(7)).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert!(p.lies_in(&ideal(2, &[&[1, 0]])));
    }

    #[test]
    fn principal_case_reduces() {
        // k[x], J = I1 = (x), M = R, candidate one J element, deg (2,2)
        let fam = IdealFamily::new(ideal(1, &[&[1]]), vec![ideal(1, &[&[1]])]).unwrap();
        let module: Module = Subquotient::ring(1).into();
        let cand = generic_candidate(
            &fam,
            &CandidateShape::new(1, vec![0]),
            FieldSpec::default(),
            &mut rng(3),
        )
        .unwrap();
        let deg = MultiDegree::new(2, vec![2]);
        assert!(joint_reduction_at(&cand, &fam, &module, &deg).unwrap());
    }

    #[test]
    fn two_generic_elements_reduce_the_plane() {
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let cand =
            generic_candidate(&fam, &CandidateShape::new(2, vec![0]), f, &mut rng(11)).unwrap();
        let deg = MultiDegree::new(3, vec![2]);
        assert!(joint_reduction_at(&cand, &fam, &module, &deg).unwrap());
        // a single element cannot span the 1-dimension-bigger piece
        let single =
            generic_candidate(&fam, &CandidateShape::new(1, vec![0]), f, &mut rng(11)).unwrap();
        assert!(!joint_reduction_at(&single, &fam, &module, &deg).unwrap());
        // the empty candidate fails wherever the piece is nonzero
        let empty =
            generic_candidate(&fam, &CandidateShape::new(0, vec![0]), f, &mut rng(11)).unwrap();
        assert!(!joint_reduction_at(&empty, &fam, &module, &deg).unwrap());
    }

    #[test]
    fn positivity_requirement_on_degrees() {
        let (fam, module) = e1();
        let cand = generic_candidate(
            &fam,
            &CandidateShape::new(2, vec![0]),
            FieldSpec::default(),
            &mut rng(5),
        )
        .unwrap();
        assert!(joint_reduction_at(&cand, &fam, &module, &MultiDegree::new(0, vec![2])).is_err());
    }

    #[test]
    fn scaling_and_permutation_invariance() {
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let cand =
            generic_candidate(&fam, &CandidateShape::new(2, vec![0]), f, &mut rng(23)).unwrap();
        let deg = MultiDegree::new(2, vec![3]);
        let base = joint_reduction_at(&cand, &fam, &module, &deg).unwrap();

        let swapped = ReductionCandidate::new(
            &fam,
            f,
            vec![cand.j_elems()[1].clone(), cand.j_elems()[0].clone()],
            vec![vec![]],
        )
        .unwrap();
        assert_eq!(joint_reduction_at(&swapped, &fam, &module, &deg).unwrap(), base);

        let scaled = ReductionCandidate::new(
            &fam,
            f,
            vec![cand.j_elems()[0].scale(&f.from_i64(17)), cand.j_elems()[1].clone()],
            vec![vec![]],
        )
        .unwrap();
        assert_eq!(joint_reduction_at(&scaled, &fam, &module, &deg).unwrap(), base);
    }

    #[test]
    fn window_certificates() {
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let cand =
            generic_candidate(&fam, &CandidateShape::new(2, vec![0]), f, &mut rng(2)).unwrap();
        let w = fam.reduction_window();
        let cert = is_joint_reduction(&cand, &fam, &module, &w).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.verdict, "holds (heuristic window)");
        assert_eq!(cert.cells.len(), w.num_cells());

        let single =
            generic_candidate(&fam, &CandidateShape::new(1, vec![0]), f, &mut rng(2)).unwrap();
        let cert = is_joint_reduction(&single, &fam, &module, &w).unwrap();
        assert!(!cert.holds);
        assert!(cert.verdict.starts_with("fails at cell"));
    }

    #[test]
    fn search_finds_and_refuses_per_type() {
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let w = fam.reduction_window();
        // type (1,(0)): two J elements exist
        let hit =
            find_joint_reduction(&fam, &module, &TypeIndex::new(1, vec![0]), &w, f, 42, 4)
                .unwrap();
        assert!(hit.found.is_some());
        assert_eq!(hit.found.as_ref().unwrap().1.seed, Some(42));
        // type (0,(0)): a single J element never reduces the plane
        let miss =
            find_joint_reduction(&fam, &module, &TypeIndex::new(0, vec![0]), &w, f, 42, 4)
                .unwrap();
        assert!(miss.found.is_none());
        assert_eq!(miss.attempts_used, 4);
    }

    #[test]
    fn annihilated_ideal_allows_tiny_reductions() {
        // M = R/(x), I1 = (x): 𝕀^n M = 0 for n >= 1, so one J element and
        // one I1 element form a joint reduction
        let fam = IdealFamily::new(MonomialIdeal::maximal(2), vec![ideal(2, &[&[1, 0]])])
            .unwrap();
        let module: Module = Subquotient::cyclic(ideal(2, &[&[1, 0]])).into();
        let w = fam.reduction_window();
        let hit = find_joint_reduction(
            &fam,
            &module,
            &TypeIndex::new(0, vec![1]),
            &w,
            FieldSpec::default(),
            9,
            4,
        )
        .unwrap();
        assert!(hit.found.is_some());
    }

    #[test]
    fn minimality_and_positivity_agree_on_the_plane() {
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let w = fam.reduction_window();
        // shape (2; 0): minimal, e = 1
        let cand = generic_candidate(&fam, &CandidateShape::new(2, vec![0]), f, &mut rng(31))
            .unwrap();
        let report = is_minimal_joint_reduction(&cand, &fam, &module, &w, 31, 4).unwrap();
        assert!(report.minimal);
        assert_eq!(report.e_value, Some(1));
        assert_eq!(report.positivity_agrees, Some(true));
        assert_eq!(report.shapes_searched, 2);

        // shape (2; 1): not minimal — the search hits (1; 1) first (two generic
        // linear forms already span each graded piece); e of type (1,1) is 0
        let big = generic_candidate(&fam, &CandidateShape::new(2, vec![1]), f, &mut rng(31))
            .unwrap();
        let report = is_minimal_joint_reduction(&big, &fam, &module, &w, 31, 4).unwrap();
        assert!(!report.minimal);
        assert_eq!(report.smaller_found, Some(CandidateShape::new(1, vec![1])));
        assert_eq!(report.e_value, Some(0));
        assert_eq!(report.positivity_agrees, Some(true));
    }

    #[test]
    fn rejects_candidates_that_do_not_reduce() {
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let w = fam.reduction_window();
        let single =
            generic_candidate(&fam, &CandidateShape::new(1, vec![0]), f, &mut rng(2)).unwrap();
        assert!(is_minimal_joint_reduction(&single, &fam, &module, &w, 2, 2).is_err());
    }

    #[test]
    fn candidate_validation() {
        let (fam, _) = e1();
        let f = FieldSpec::default();
        // an element outside J is rejected
        let outside = PolyElement::from_terms(
            f,
            vec![(Monomial::one(2), f.one())],
        )
        .unwrap();
        assert!(ReductionCandidate::new(&fam, f, vec![outside], vec![vec![]]).is_err());
        // list count must match the family
        assert!(ReductionCandidate::new(&fam, f, vec![], vec![]).is_err());
    }

    #[test]
    fn fc_exact_principal() {
        // x = x1 in I1 = (x1), M = R: FC1 exact true
        let fam = IdealFamily::new(MonomialIdeal::maximal(2), vec![ideal(2, &[&[1, 0]])])
            .unwrap();
        let module: Module = Subquotient::ring(2).into();
        let f = FieldSpec::default();
        let x = PolyElement::monomial(f, Monomial::new(vec![1, 0]));
        let w = fam.default_window();
        let witness = weak_fc_check(&x, 0, &fam, &module, &w, 12).unwrap();
        assert!(witness.exact);
        assert!(witness.fc1);
        assert!(witness.fc2);
        assert_eq!(witness.truncation, None);
    }

    #[test]
    fn fc2_fails_on_an_embedded_component() {
        // M = R/(x^2, xy), I1 = (x,y), element x: 0:x = (x,y)M ⊄ 0:I^∞ = (x)M
        let fam = IdealFamily::new(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)])
            .unwrap();
        let module: Module = Subquotient::cyclic(ideal(2, &[&[2, 0], &[1, 1]])).into();
        let f = FieldSpec::default();
        let x = PolyElement::monomial(f, Monomial::new(vec![1, 0]));
        let w = fam.default_window();
        let witness = weak_fc_check(&x, 0, &fam, &module, &w, 12).unwrap();
        assert!(witness.exact);
        assert!(!witness.fc2);
        // FC1 still holds for this element
        assert!(witness.fc1);
    }

    #[test]
    fn fc_truncated_generic_on_a_curve() {
        // generic x in I1 = (x,y), M = R/(xy): both conditions hold, stably
        let fam = IdealFamily::new(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)])
            .unwrap();
        let module: Module = Subquotient::cyclic(ideal(2, &[&[1, 1]])).into();
        let f = FieldSpec::default();
        let x = generic_element(fam.ideal(0), f, &mut rng(17)).unwrap();
        assert_eq!(x.num_terms(), 2);
        let w = fam.default_window();
        let witness = weak_fc_check(&x, 0, &fam, &module, &w, 12).unwrap();
        assert!(!witness.exact);
        assert_eq!(witness.truncation, Some(12));
        assert!(witness.fc1);
        assert!(witness.fc2);
    }

    #[test]
    fn fc_validates_membership() {
        let fam = IdealFamily::new(MonomialIdeal::maximal(2), vec![ideal(2, &[&[1, 0]])])
            .unwrap();
        let module: Module = Subquotient::ring(2).into();
        let f = FieldSpec::default();
        let y = PolyElement::monomial(f, Monomial::new(vec![0, 1]));
        let w = fam.default_window();
        assert!(weak_fc_check(&y, 0, &fam, &module, &w, 10).is_err());
        let x = PolyElement::monomial(f, Monomial::new(vec![1, 0]));
        assert!(weak_fc_check(&x, 5, &fam, &module, &w, 10).is_err());
    }

    #[test]
    fn nakayama_matches_truncated_brute_force() {
        // Direct oracle: compare both sides of the reduction equality as
        // subspaces of M/𝔪^D M, spanned by candidate-element multiples.
        let (fam, module) = e1();
        let f = FieldSpec::default();
        let deg = MultiDegree::new(2, vec![2]);
        for (shape, seed) in [
            (CandidateShape::new(2, vec![0]), 41u64),
            (CandidateShape::new(1, vec![0]), 43),
            (CandidateShape::new(1, vec![1]), 47),
            (CandidateShape::new(0, vec![2]), 53),
        ] {
            let cand = generic_candidate(&fam, &shape, f, &mut rng(seed)).unwrap();
            let fast = joint_reduction_at(&cand, &fam, &module, &deg).unwrap();
            let brute = brute_reduction_at(&cand, &fam, module.parts().first().unwrap(), &deg, 10);
            assert_eq!(fast, brute, "disagreement for shape {shape}");
        }
    }

    /// Truncated ideal-equality oracle for the reduction equality at `deg`.
    fn brute_reduction_at(
        cand: &ReductionCandidate,
        fam: &IdealFamily,
        part: &Subquotient,
        deg: &MultiDegree,
        d: u32,
    ) -> bool {
        let field = cand.field();
        let trunc = TruncatedModule::new(part, d);
        let w_num = fam
            .j()
            .power(deg.n0)
            .product(&ideals_power(fam, &deg.n).unwrap())
            .unwrap()
            .product(part.num())
            .unwrap();
        let lhs_cols: Vec<usize> = trunc
            .basis
            .iter()
            .enumerate()
            .filter(|(_, m)| w_num.contains_monomial(m))
            .map(|(i, _)| i)
            .collect();
        let mut rows: Vec<Vec<Coeff>> = Vec::new();
        let mut push = |elems: &[PolyElement], shifted: &MonomialIdeal| {
            for e in elems {
                for mu in &trunc.basis {
                    if shifted.contains_monomial(mu) {
                        rows.push(trunc.reduce(&e.mul_monomial(mu), field));
                    }
                }
            }
        };
        if !cand.j_elems().is_empty() {
            let shifted = fam
                .j()
                .power(deg.n0 - 1)
                .product(&ideals_power(fam, &deg.n).unwrap())
                .unwrap()
                .product(part.num())
                .unwrap();
            push(cand.j_elems(), &shifted);
        }
        for (i, elems) in cand.ideal_elems().iter().enumerate() {
            if elems.is_empty() {
                continue;
            }
            let mut n = deg.n.clone();
            n[i] -= 1;
            let shifted = fam
                .j()
                .power(deg.n0)
                .product(&ideals_power(fam, &n).unwrap())
                .unwrap()
                .product(part.num())
                .unwrap();
            push(elems, &shifted);
        }
        let dim_rhs = rank_of_rows(field, &rows, trunc.dim());
        dim_rhs == lhs_cols.len()
    }
}
