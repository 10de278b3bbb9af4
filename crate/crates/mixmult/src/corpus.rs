//! The bundled example corpus: small monomial families over two or three
//! variables with hand-checked multiplicities, plus a runner that sweeps
//! every verification operation over every entry.
//!
//! Each entry fixes a type where its multiplicity is defined and freezes the
//! expected value, so the corpus doubles as a regression anchor: the runner
//! must come back all-pass, and the frozen values must be reproduced by the
//! fits.

use crate::degrees::{type_indices_up_to, TypeIndex};
use crate::error::Result;
use crate::family::IdealFamily;
use crate::field::FieldSpec;
use crate::harness::{
    verify_additivity_reduction, verify_exact_sequence, verify_main,
    verify_positivity_equivalences, verify_rank_formula, VerificationReport, Verdict,
};
use crate::ideal::MonomialIdeal;
use crate::module::{Module, Subquotient};
use crate::monomial::Monomial;

/// One bundled example: a family, a module over its ring, and the type at
/// which its multiplicity is known.
pub struct CorpusEntry {
    pub name: &'static str,
    /// One-line description of the geometry.
    pub description: &'static str,
    pub family: IdealFamily,
    pub module: Module,
    /// `(M, N)` as presented subquotients, for the submodule-based checks;
    /// entries whose module is not a single subquotient leave this empty.
    pub pair: Option<(Subquotient, Subquotient)>,
    /// A type where the multiplicity of `module` is defined.
    pub t: TypeIndex,
    /// The multiplicity at `t`, frozen from a hand count of standard
    /// monomials.
    pub e_expected: i64,
    /// A type where the ring's own multiplicity is defined, used by the rank
    /// formula.
    pub ring_t: TypeIndex,
    /// Small grid of types swept by the property-style checks.
    pub grid: Vec<TypeIndex>,
}

fn ideal(nvars: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(nvars, gens.iter().map(|g| Monomial::new(g.to_vec())).collect())
}

fn fam(j: MonomialIdeal, ideals: Vec<MonomialIdeal>) -> IdealFamily {
    IdealFamily::new(j, ideals).expect("corpus families are valid by construction")
}

/// The zero submodule of `of`, presented over the same denominator.
fn zero_sub(of: &Subquotient) -> Subquotient {
    Subquotient::new(of.den().clone(), of.den().clone())
        .expect("den/den is a valid subquotient")
}

fn t1(k0: u32, k1: u32) -> TypeIndex {
    TypeIndex::new(k0, vec![k1])
}

/// All twelve bundled examples.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut entries = Vec::new();

    // The plane: J = I₁ = (x, y) on R = k[x, y].
    {
        let family = fam(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)]);
        let m = Subquotient::ring(2);
        let n = zero_sub(&m);
        entries.push(CorpusEntry {
            name: "plane",
            description: "the regular ring k[x,y] with J = I1 = (x,y)",
            family,
            module: m.clone().into(),
            pair: Some((m, n)),
            t: t1(1, 0),
            e_expected: 1,
            ring_t: t1(1, 0),
            grid: type_indices_up_to(1, 2),
        });
    }

    // The line: J = I₁ = (x) on R = k[x].
    {
        let family = fam(MonomialIdeal::maximal(1), vec![MonomialIdeal::maximal(1)]);
        let m = Subquotient::ring(1);
        let n = zero_sub(&m);
        entries.push(CorpusEntry {
            name: "line",
            description: "the principal case k[x] with J = I1 = (x)",
            family,
            module: m.clone().into(),
            pair: Some((m, n)),
            t: t1(0, 0),
            e_expected: 1,
            ring_t: t1(0, 0),
            grid: type_indices_up_to(1, 2),
        });
    }

    // The coordinate cross R/(xy) with the axis (x)/(xy) as submodule.
    {
        let family = fam(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)]);
        let m = Subquotient::cyclic(ideal(2, &[&[1, 1]]));
        let n = Subquotient::new(ideal(2, &[&[1, 0]]), ideal(2, &[&[1, 1]]))
            .expect("the axis contains the cross");
        entries.push(CorpusEntry {
            name: "cross",
            description: "the coordinate cross R/(xy) with submodule (x)/(xy)",
            family,
            module: m.clone().into(),
            pair: Some((m, n)),
            t: t1(0, 0),
            e_expected: 2,
            ring_t: t1(1, 0),
            grid: type_indices_up_to(1, 2),
        });
    }

    // A line with an embedded double structure: R/(x²y), submodule (x²)/(x²y).
    {
        let family = fam(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)]);
        let m = Subquotient::cyclic(ideal(2, &[&[2, 1]]));
        let n = Subquotient::new(ideal(2, &[&[2, 0]]), ideal(2, &[&[2, 1]]))
            .expect("(x^2) contains (x^2 y)");
        entries.push(CorpusEntry {
            name: "fat-line",
            description: "R/(x^2 y): a doubled line plus a reduced one",
            family,
            module: m.clone().into(),
            pair: Some((m, n)),
            t: t1(0, 0),
            e_expected: 3,
            ring_t: t1(1, 0),
            grid: type_indices_up_to(1, 2),
        });
    }

    // I₁ acts nilpotently: I₁ = (x) on R/(x); every table is zero.
    {
        let family = fam(MonomialIdeal::maximal(2), vec![ideal(2, &[&[1, 0]])]);
        let m = Subquotient::cyclic(ideal(2, &[&[1, 0]]));
        let n = zero_sub(&m);
        entries.push(CorpusEntry {
            name: "annihilated",
            description: "I1 = (x) kills M = R/(x); all multiplicities vanish",
            family,
            module: m.clone().into(),
            pair: Some((m, n)),
            t: t1(0, 1),
            e_expected: 0,
            ring_t: t1(1, 0),
            grid: type_indices_up_to(1, 2),
        });
    }

    // Two principal ideals alongside J: d = 2.
    {
        let family = fam(
            MonomialIdeal::maximal(2),
            vec![ideal(2, &[&[1, 0]]), ideal(2, &[&[0, 1]])],
        );
        let m = Subquotient::ring(2);
        let n = zero_sub(&m);
        entries.push(CorpusEntry {
            name: "axes-pair",
            description: "J = (x,y) with the two axis ideals I1 = (x), I2 = (y)",
            family,
            module: m.clone().into(),
            pair: Some((m, n)),
            t: TypeIndex::new(1, vec![0, 0]),
            e_expected: 1,
            ring_t: TypeIndex::new(1, vec![0, 0]),
            grid: type_indices_up_to(2, 2),
        });
    }

    // J generated in degree two: J = (x,y)², I₁ = (x,y).
    {
        let family = fam(MonomialIdeal::maximal(2).power(2), vec![MonomialIdeal::maximal(2)]);
        let m = Subquotient::ring(2);
        let n = zero_sub(&m);
        entries.push(CorpusEntry {
            name: "double-m",
            description: "J = (x,y)^2 on the plane; e(J) = 4 and the mixed value is 2",
            family,
            module: m.clone().into(),
            pair: Some((m, n)),
            t: t1(1, 0),
            e_expected: 4,
            ring_t: t1(1, 0),
            grid: type_indices_up_to(1, 2),
        });
    }

    // Three variables: J = I₁ = (x, y, z) on R = k[x, y, z].
    {
        let family = fam(MonomialIdeal::maximal(3), vec![MonomialIdeal::maximal(3)]);
        let m = Subquotient::ring(3);
        let n = zero_sub(&m);
        entries.push(CorpusEntry {
            name: "space",
            description: "the regular ring k[x,y,z]; the mixed type (1,(1)) carries 1",
            family,
            module: m.clone().into(),
            pair: Some((m, n)),
            t: t1(1, 1),
            e_expected: 1,
            ring_t: t1(1, 1),
            grid: type_indices_up_to(1, 2),
        });
    }

    // A non-equigenerated ideal: I₁ = (x, y²).
    {
        let family = fam(MonomialIdeal::maximal(2), vec![ideal(2, &[&[1, 0], &[0, 2]])]);
        let m = Subquotient::ring(2);
        let n = zero_sub(&m);
        entries.push(CorpusEntry {
            name: "cusp-ideal",
            description: "I1 = (x, y^2) against J = (x,y); the mixed value is 1",
            family,
            module: m.clone().into(),
            pair: Some((m, n)),
            t: t1(0, 1),
            e_expected: 1,
            ring_t: t1(0, 1),
            grid: type_indices_up_to(1, 2),
        });
    }

    // A plane inside space: R/(z) over k[x, y, z], with submodule (x, z)/(z).
    {
        let family = fam(MonomialIdeal::maximal(3), vec![MonomialIdeal::maximal(3)]);
        let m = Subquotient::cyclic(ideal(3, &[&[0, 0, 1]]));
        let n = Subquotient::new(
            ideal(3, &[&[1, 0, 0], &[0, 0, 1]]),
            ideal(3, &[&[0, 0, 1]]),
        )
        .expect("(x,z) contains (z)");
        entries.push(CorpusEntry {
            name: "plane-in-space",
            description: "the coordinate plane R/(z) in k[x,y,z] with submodule (x,z)/(z)",
            family,
            module: m.clone().into(),
            pair: Some((m, n)),
            t: t1(1, 0),
            e_expected: 1,
            ring_t: t1(1, 1),
            grid: type_indices_up_to(1, 2),
        });
    }

    // A module with two parts: R/(x) ⊕ R/(y).
    {
        let family = fam(MonomialIdeal::maximal(2), vec![MonomialIdeal::maximal(2)]);
        let module = Module::direct_sum(vec![
            Subquotient::cyclic(ideal(2, &[&[1, 0]])),
            Subquotient::cyclic(ideal(2, &[&[0, 1]])),
        ])
        .expect("two parts over the same ring");
        entries.push(CorpusEntry {
            name: "line-pair",
            description: "the direct sum R/(x) + R/(y); the two axes counted separately",
            family,
            module,
            pair: None,
            t: t1(0, 0),
            e_expected: 2,
            ring_t: t1(1, 0),
            grid: type_indices_up_to(1, 2),
        });
    }

    // A free module of rank two over the line.
    {
        let family = fam(MonomialIdeal::maximal(1), vec![MonomialIdeal::maximal(1)]);
        let module = Module::copies(Subquotient::ring(1), 2).expect("two copies of k[x]");
        entries.push(CorpusEntry {
            name: "rank-two",
            description: "the free module k[x]^2; everything doubles",
            family,
            module,
            pair: None,
            t: t1(0, 0),
            e_expected: 2,
            ring_t: t1(0, 0),
            grid: type_indices_up_to(1, 2),
        });
    }

    entries
}

/// All reports produced for one corpus entry, with the worst verdict pulled
/// out front.
#[derive(Debug, serde::Serialize)]
pub struct CorpusOutcome {
    pub name: String,
    pub verdict: Verdict,
    pub reports: Vec<VerificationReport>,
}

/// Runs every applicable verification on every corpus entry. Entries get
/// deterministic per-entry seeds derived from `seed`, so a full run is
/// reproducible.
pub fn run_corpus(field: FieldSpec, seed: u64) -> Result<Vec<CorpusOutcome>> {
    let mut outcomes = Vec::new();
    for (idx, entry) in corpus().into_iter().enumerate() {
        let entry_seed = seed.wrapping_add(1000 * idx as u64);
        let mut reports = Vec::new();
        if let Some((m, n)) = &entry.pair {
            reports.push(verify_main(m, n, &entry.family, &entry.t, field, entry_seed)?);
            reports.push(verify_exact_sequence(
                m,
                n,
                &entry.family,
                &entry.t,
                field,
                entry_seed.wrapping_add(100),
            )?);
        }
        reports.push(verify_positivity_equivalences(
            &entry.family,
            &entry.module,
            &entry.t,
            field,
            entry_seed.wrapping_add(200),
        )?);
        reports.push(verify_additivity_reduction(&entry.family, &entry.module, &entry.t)?);
        reports.push(verify_rank_formula(
            2,
            &entry.family,
            &entry.ring_t,
            field,
            entry_seed.wrapping_add(300),
        )?);
        let verdict = reports
            .iter()
            .map(|r| r.verdict)
            .max_by_key(|v| v.severity())
            .unwrap_or(Verdict::Pass);
        outcomes.push(CorpusOutcome { name: entry.name.to_string(), verdict, reports });
    }
    Ok(outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{fit_binomial, mixed_mult_maximal, MixedMult};
    use crate::table::HilbertTable;
    use std::collections::BTreeSet;

    fn e_at(entry: &CorpusEntry) -> MixedMult {
        let table =
            HilbertTable::hilbert_p(&entry.module, &entry.family, &entry.family.default_window())
                .expect("corpus tables are finite");
        let (poly, cert) = fit_binomial(&table);
        mixed_mult_maximal(&poly, &cert, &entry.t).expect("corpus fits are stable")
    }

    #[test]
    fn the_corpus_is_broad_enough() {
        let entries = corpus();
        assert!(entries.len() >= 10, "only {} entries", entries.len());
        let names: BTreeSet<&str> = entries.iter().map(|e| e.name).collect();
        assert_eq!(names.len(), entries.len(), "duplicate entry names");
        for e in &entries {
            assert!(e.family.nvars() <= 3, "{}: too many variables", e.name);
            assert!(e.family.d() <= 2, "{}: too many ideals", e.name);
            assert!(!e.grid.is_empty(), "{}: empty type grid", e.name);
            assert_eq!(e.t.d(), e.family.d(), "{}: type of wrong dimension", e.name);
            assert_eq!(e.module.nvars(), e.family.nvars(), "{}: ring mismatch", e.name);
        }
        // At least one entry with two ideals and one over three variables.
        assert!(entries.iter().any(|e| e.family.d() == 2));
        assert!(entries.iter().any(|e| e.family.nvars() == 3));
    }

    #[test]
    fn frozen_multiplicities_are_reproduced() {
        for entry in &corpus() {
            assert_eq!(
                e_at(entry),
                MixedMult::Defined { value: entry.e_expected },
                "{}: multiplicity at {} does not match the frozen value",
                entry.name,
                entry.t
            );
        }
    }

    #[test]
    fn every_entry_passes_every_verification() {
        for outcome in run_corpus(FieldSpec::default(), 1).unwrap() {
            assert_eq!(
                outcome.verdict,
                Verdict::Pass,
                "{}: {:#?}",
                outcome.name,
                outcome.reports
            );
        }
    }
}
