//! The versioned JSON input format (`schema_version: 1`) and its conversion
//! into library types. Validation happens here, before any computation: every
//! exponent vector must match the ring's variable count, coefficients are
//! parsed into the selected field, and malformed input is an input error.

use mixmult::error::{Error, Result};
use mixmult::poly::PolyElement;
use mixmult::reductions::ReductionCandidate;
use mixmult::{
    FieldSpec, IdealFamily, Monomial, MonomialIdeal, MultiDegree, Subquotient, TypeIndex, Window,
};
use serde::Deserialize;

/// A problem instance: ring, family, module, and optional extras that
/// individual subcommands require or ignore.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema_version: u32,
    pub ring: RingSpec,
    /// `J`, as a list of exponent vectors.
    #[serde(rename = "J")]
    pub j: IdealSpec,
    /// The ideals `I_1, ..., I_d`, in order.
    #[serde(default)]
    pub ideals: Vec<IdealSpec>,
    /// The module `M = num/den`; the ring itself when omitted.
    #[serde(default)]
    pub module: Option<ModuleSpec>,
    /// Numerator of a submodule `N = submodule/den(M)`, for the statements
    /// over a short exact sequence.
    #[serde(default)]
    pub submodule: Option<IdealSpec>,
    /// A candidate joint reduction, as term lists.
    #[serde(default)]
    pub candidate: Option<CandidateSpec>,
    #[serde(default)]
    pub window: Option<WindowSpec>,
    #[serde(default)]
    pub truncation: Option<u32>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// A type index `[k0, k1, ..., kd]`.
    #[serde(rename = "type", default)]
    pub type_index: Option<Vec<u32>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub variables: Vec<String>,
    #[serde(default)]
    pub field: Option<FieldChoice>,
}

/// `{"prime": p}` or `{"rationals": true}`.
#[derive(Deserialize, Clone, Copy)]
#[serde(deny_unknown_fields)]
pub struct FieldChoice {
    #[serde(default)]
    pub prime: Option<u64>,
    #[serde(default)]
    pub rationals: Option<bool>,
}

/// A monomial ideal: a list of exponent vectors, or the string `"unit"`.
#[derive(Deserialize, Clone)]
#[serde(untagged)]
pub enum IdealSpec {
    Named(String),
    Gens(Vec<Vec<u32>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub num: IdealSpec,
    pub den: IdealSpec,
}

/// One term of a polynomial element: a coefficient literal (decimal integer,
/// or `a/b` over the rationals) and an exponent vector.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default = "default_coeff")]
    pub coeff: String,
    pub exps: Vec<u32>,
}

fn default_coeff() -> String {
    "1".to_string()
}

/// Candidate element lists: one list of terms per element.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateSpec {
    #[serde(rename = "j", default)]
    pub j_elems: Vec<Vec<TermSpec>>,
    #[serde(default)]
    pub ideals: Vec<Vec<Vec<TermSpec>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub lo: Vec<u32>,
    pub hi: Vec<u32>,
}

impl ProblemSpec {
    pub fn parse(raw: &str) -> Result<ProblemSpec> {
        let spec: ProblemSpec =
            serde_json::from_str(raw).map_err(|e| Error::input(format!("bad input JSON: {e}")))?;
        if spec.schema_version != 1 {
            return Err(Error::input(format!(
                "unsupported schema_version {}; this build reads version 1",
                spec.schema_version
            )));
        }
        if spec.ring.variables.is_empty() {
            return Err(Error::input("the ring needs at least one variable"));
        }
        Ok(spec)
    }

    pub fn nvars(&self) -> usize {
        self.ring.variables.len()
    }

    /// The field selected in the input, before any command-line override.
    pub fn field(&self) -> Result<Option<FieldSpec>> {
        match &self.ring.field {
            None => Ok(None),
            Some(choice) => match (choice.prime, choice.rationals) {
                (Some(p), None) => Ok(Some(FieldSpec::Prime(p).validated()?)),
                (None, Some(true)) => Ok(Some(FieldSpec::Rationals)),
                _ => Err(Error::input(
                    "field must be {\"prime\": p} or {\"rationals\": true}",
                )),
            },
        }
    }

    fn ideal(&self, spec: &IdealSpec, what: &str) -> Result<MonomialIdeal> {
        let nvars = self.nvars();
        match spec {
            IdealSpec::Named(name) if name == "unit" => Ok(MonomialIdeal::unit(nvars)),
            IdealSpec::Named(name) => Err(Error::input(format!(
                "{what}: unknown ideal name {name:?} (only \"unit\" is recognized)"
            ))),
            IdealSpec::Gens(rows) => {
                let mut gens = Vec::with_capacity(rows.len());
                for row in rows {
                    if row.len() != nvars {
                        return Err(Error::input(format!(
                            "{what}: exponent vector {row:?} has {} entries for a ring \
                             with {} variables",
                            row.len(),
                            nvars
                        )));
                    }
                    gens.push(Monomial::new(row.clone()));
                }
                Ok(MonomialIdeal::new(nvars, gens))
            }
        }
    }

    pub fn family(&self) -> Result<IdealFamily> {
        let j = self.ideal(&self.j, "J")?;
        let ideals = self
            .ideals
            .iter()
            .enumerate()
            .map(|(i, s)| self.ideal(s, &format!("I_{}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        IdealFamily::new(j, ideals)?.with_var_names(self.ring.variables.clone())
    }

    /// The module `M`, defaulting to the ring.
    pub fn module_m(&self) -> Result<Subquotient> {
        match &self.module {
            None => Ok(Subquotient::ring(self.nvars())),
            Some(ms) => Subquotient::new(
                self.ideal(&ms.num, "module.num")?,
                self.ideal(&ms.den, "module.den")?,
            ),
        }
    }

    /// The submodule `N = submodule/den(M)`; requires the `submodule` key.
    pub fn module_n(&self, m: &Subquotient) -> Result<Subquotient> {
        let num = match &self.submodule {
            Some(spec) => self.ideal(spec, "submodule")?,
            None => {
                return Err(Error::input(
                    "this statement needs a submodule: add a \"submodule\" key with the \
                     numerator's generators",
                ))
            }
        };
        Subquotient::new(num, m.den().clone())
    }

    fn element(&self, field: FieldSpec, terms: &[TermSpec], what: &str) -> Result<PolyElement> {
        let nvars = self.nvars();
        let mut parsed = Vec::with_capacity(terms.len());
        for term in terms {
            if term.exps.len() != nvars {
                return Err(Error::input(format!(
                    "{what}: exponent vector {:?} has {} entries for a ring with {} variables",
                    term.exps,
                    term.exps.len(),
                    nvars
                )));
            }
            parsed.push((Monomial::new(term.exps.clone()), field.parse(&term.coeff)?));
        }
        PolyElement::from_terms(field, parsed)
    }

    /// The candidate joint reduction; requires the `candidate` key.
    pub fn candidate(&self, fam: &IdealFamily, field: FieldSpec) -> Result<ReductionCandidate> {
        let spec = self.candidate.as_ref().ok_or_else(|| {
            Error::input("this command needs a candidate: add a \"candidate\" key")
        })?;
        let j_elems = spec
            .j_elems
            .iter()
            .enumerate()
            .map(|(i, terms)| self.element(field, terms, &format!("candidate.j[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let ideal_elems = spec
            .ideals
            .iter()
            .enumerate()
            .map(|(i, list)| {
                list.iter()
                    .enumerate()
                    .map(|(k, terms)| {
                        self.element(field, terms, &format!("candidate.ideals[{i}][{k}]"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ReductionCandidate::new(fam, field, j_elems, ideal_elems)
    }

    /// The window given in the input, if any.
    pub fn window(&self) -> Result<Option<Window>> {
        match &self.window {
            None => Ok(None),
            Some(ws) => Ok(Some(Window::new(
                parse_corner(&ws.lo, "window.lo")?,
                parse_corner(&ws.hi, "window.hi")?,
            )?)),
        }
    }

    /// The type index given in the input, if any.
    pub fn type_from_input(&self) -> Result<Option<TypeIndex>> {
        match &self.type_index {
            None => Ok(None),
            Some(coords) if coords.is_empty() => {
                Err(Error::input("\"type\" needs at least the k0 coordinate"))
            }
            Some(coords) => Ok(Some(TypeIndex::new(coords[0], coords[1..].to_vec()))),
        }
    }
}

fn parse_corner(coords: &[u32], what: &str) -> Result<MultiDegree> {
    if coords.is_empty() {
        return Err(Error::input(format!("{what}: needs at least the n0 coordinate")));
    }
    Ok(MultiDegree::new(coords[0], coords[1..].to_vec()))
}

/// Parses `k0,k1,...` (a command-line type index).
pub fn parse_type_flag(s: &str) -> Result<TypeIndex> {
    let coords = parse_u32_list(s, "--type")?;
    Ok(TypeIndex::new(coords[0], coords[1..].to_vec()))
}

/// Parses `n0,n1,...` (a command-line multidegree).
pub fn parse_deg_flag(s: &str) -> Result<MultiDegree> {
    let coords = parse_u32_list(s, "--deg")?;
    Ok(MultiDegree::new(coords[0], coords[1..].to_vec()))
}

/// Parses `lo0,lo1,..:hi0,hi1,..` (a command-line window).
pub fn parse_window_flag(s: &str) -> Result<Window> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| {
        Error::input(format!("--window wants lo0,lo1,..:hi0,hi1,.. but got {s:?}"))
    })?;
    Window::new(
        parse_corner(&parse_u32_list(lo, "--window")?, "--window lo")?,
        parse_corner(&parse_u32_list(hi, "--window")?, "--window hi")?,
    )
}

/// Parses `q` / `rationals` / a prime number (a command-line field).
pub fn parse_field_flag(s: &str) -> Result<FieldSpec> {
    match s {
        "q" | "Q" | "rationals" => Ok(FieldSpec::Rationals),
        other => {
            let p: u64 = other
                .parse()
                .map_err(|_| Error::input(format!("--field wants q or a prime, got {other:?}")))?;
            FieldSpec::Prime(p).validated()
        }
    }
}

fn parse_u32_list(s: &str, what: &str) -> Result<Vec<u32>> {
    let coords = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<u32>, _>>()
        .map_err(|_| Error::input(format!("{what}: bad coordinate list {s:?}")))?;
    if coords.is_empty() {
        return Err(Error::input(format!("{what}: empty coordinate list")));
    }
    Ok(coords)
}
