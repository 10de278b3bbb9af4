//! `mixmult`: a JSON-in/JSON-out command-line front end for the `mixmult`
//! library.
//!
//! Input is a problem file (`--input FILE`, `-` for standard input) in the
//! versioned schema of [`schema::ProblemSpec`]; output is a single JSON
//! envelope on standard out embedding the input hash, the field, the seed,
//! and the window/truncation actually used, next to the command's result.
//! Output is byte-identical given identical input bytes and flags.
//!
//! Exit codes: 0 success/pass, 1 computation refused (unstable fit,
//! undefined multiplicity, failed search, non-pass verdict short of a
//! contradiction), 2 input error, 3 internal inconsistency (exact arithmetic
//! disagreeing where equality is proven). Errors and non-pass diagnostics go
//! to standard error as JSON.

mod schema;

use clap::{Parser, Subcommand, ValueEnum};
use mixmult::corpus::run_corpus;
use mixmult::error::{Error, Result};
use mixmult::fit::{fit_binomial, mixed_mult_maximal, MixedMult};
use mixmult::harness::{
    verify_additivity_reduction, verify_exact_sequence, verify_main,
    verify_positivity_equivalences, verify_rank_formula, Verdict, VerificationReport,
};
use mixmult::koszul::{chi, koszul_homology, ChiOptions};
use mixmult::poly::PolyElement;
use mixmult::reductions::{
    find_joint_reduction, is_joint_reduction, is_minimal_joint_reduction, ReductionCandidate,
    DEFAULT_ATTEMPTS,
};
use mixmult::table::HilbertTable;
use mixmult::{FieldSpec, IdealFamily, Module, TypeIndex, Window};
use schema::ProblemSpec;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::io::Read;

#[derive(Parser)]
#[command(name = "mixmult", version, about = "Exact mixed multiplicities of monomial ideal \
families: Hilbert tables, joint reductions, Koszul Euler characteristics, and statement-level \
verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Problem JSON file; `-` reads standard input.
    #[arg(short, long, global = true)]
    input: Option<String>,

    /// Seed for every randomized search (overrides the input file).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Evaluation window `lo0,lo1,..:hi0,hi1,..` (overrides the input file).
    #[arg(long, global = true)]
    window: Option<String>,

    /// Truncation (slice budget) for direct Koszul homology.
    #[arg(long, global = true)]
    trunc: Option<u32>,

    /// Generic candidates tried per shape in randomized searches.
    #[arg(long, global = true)]
    attempts: Option<u32>,

    /// Coefficient field: `q` for the rationals, or a prime.
    #[arg(long, global = true)]
    field: Option<String>,

    /// Type index `k0,k1,..` (overrides the input file).
    #[arg(long = "type", global = true)]
    type_flag: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the Hilbert-style function P or F over the window
    Hilbert {
        #[arg(long = "fn", value_enum, default_value_t = TableFn::P)]
        table_fn: TableFn,
    },
    /// Fit the binomial-basis polynomial to a table and certify it
    Fit {
        #[arg(long = "fn", value_enum, default_value_t = TableFn::P)]
        table_fn: TableFn,
    },
    /// The mixed multiplicity of maximal degrees at a type
    Mixedmult,
    /// Maximal support of the fitted P-polynomial
    Support,
    /// Joint reductions: randomized search, certification, minimality
    Jointred {
        #[command(subcommand)]
        action: JointredCmd,
    },
    /// Koszul Euler characteristic of a candidate joint reduction
    Chi {
        /// Cross-validate against direct homology at two deep cells
        #[arg(long)]
        koszul_validate: bool,
    },
    /// Koszul homology lengths at one multidegree
    Koszul {
        /// Multidegree `n0,n1,..`
        #[arg(long)]
        deg: String,
    },
    /// Replay a verified statement and report a labeled verdict
    Verify {
        #[command(subcommand)]
        statement: VerifyCmd,
    },
    /// The bundled example corpus
    Corpus {
        #[command(subcommand)]
        action: CorpusCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "verbatim")]
enum TableFn {
    P,
    F,
}

#[derive(Subcommand)]
enum JointredCmd {
    /// Search for a generic joint reduction of the type's shape
    Find,
    /// Certify a candidate over the window
    Test,
    /// Decide minimality by searching all strictly smaller shapes
    Minimal,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// e(M) = chi = e(N) + e(M/N), with the minimality criterion
    Main,
    /// The positivity equivalences at one type
    Positivity,
    /// Additivity of e over minimal primes
    Addred,
    /// e and chi scale linearly on free modules
    Rank {
        #[arg(long, default_value_t = 2)]
        rank: u32,
    },
    /// Additivity of e and chi over a short exact sequence
    Exact,
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Run every verification on every bundled example
    Run,
}

/// Everything a handler produces; `main` wraps it in the output envelope.
struct Outcome {
    command: &'static str,
    window: Option<Window>,
    truncation: Option<u32>,
    result: Value,
    code: i32,
    /// Machine-readable note for standard error when the exit is nonzero
    /// without being an error (failed search, non-pass verdict, ...).
    stderr_note: Option<Value>,
}

/// Resolved inputs shared by the handlers.
struct Ctx {
    raw: Vec<u8>,
    spec: Option<ProblemSpec>,
    field: FieldSpec,
    seed: u64,
    window_flag: Option<Window>,
    type_flag: Option<TypeIndex>,
    trunc: Option<u32>,
    attempts: u32,
}

fn main() {
    let cli = Cli::parse();
    let (ctx, outcome) = match run(&cli) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!(
                "{}",
                json!({"error": {"class": error_class(&e), "message": e.to_string()}})
            );
            std::process::exit(error_code(&e));
        }
    };
    let envelope = json!({
        "schema_version": 1,
        "command": outcome.command,
        "input_hash": format!("sha256:{}", hex_digest(&ctx.raw)),
        "field": ctx.field.to_string(),
        "seed": ctx.seed,
        "window": outcome.window.as_ref().map(window_json),
        "truncation": outcome.truncation,
        "result": outcome.result,
    });
    println!("{}", serde_json::to_string_pretty(&envelope).expect("JSON output"));
    if let Some(note) = outcome.stderr_note {
        eprintln!("{note}");
    }
    std::process::exit(outcome.code);
}

fn run(cli: &Cli) -> Result<(Ctx, Outcome)> {
    let needs_input = !matches!(cli.command, Command::Corpus { .. });
    let ctx = load_ctx(cli, needs_input)?;
    let outcome = match &cli.command {
        Command::Hilbert { table_fn } => {
            reject_flags(cli, "hilbert", &["window"])?;
            cmd_hilbert(&ctx, *table_fn)
        }
        Command::Fit { table_fn } => {
            reject_flags(cli, "fit", &["window"])?;
            cmd_fit(&ctx, *table_fn)
        }
        Command::Mixedmult => {
            reject_flags(cli, "mixedmult", &["window", "type"])?;
            cmd_mixedmult(&ctx)
        }
        Command::Support => {
            reject_flags(cli, "support", &["window"])?;
            cmd_support(&ctx)
        }
        Command::Jointred { action: JointredCmd::Find } => {
            reject_flags(cli, "jointred find", &["window", "type", "attempts"])?;
            cmd_jointred_find(&ctx)
        }
        Command::Jointred { action: JointredCmd::Test } => {
            reject_flags(cli, "jointred test", &["window"])?;
            cmd_jointred_test(&ctx)
        }
        Command::Jointred { action: JointredCmd::Minimal } => {
            reject_flags(cli, "jointred minimal", &["window", "attempts"])?;
            cmd_jointred_minimal(&ctx)
        }
        Command::Chi { koszul_validate } => {
            reject_flags(cli, "chi", &["window", "trunc"])?;
            cmd_chi(&ctx, *koszul_validate)
        }
        Command::Koszul { deg } => {
            reject_flags(cli, "koszul", &["trunc"])?;
            cmd_koszul(&ctx, deg)
        }
        Command::Verify { statement } => {
            let label = match statement {
                VerifyCmd::Main => "verify main",
                VerifyCmd::Positivity => "verify positivity",
                VerifyCmd::Addred => "verify addred",
                VerifyCmd::Rank { .. } => "verify rank",
                VerifyCmd::Exact => "verify exact",
            };
            reject_flags(cli, label, &["type"])?;
            cmd_verify(&ctx, statement, label)
        }
        Command::Corpus { action: CorpusCmd::Run } => {
            reject_flags(cli, "corpus run", &[])?;
            cmd_corpus(&ctx)
        }
    }?;
    Ok((ctx, outcome))
}

fn load_ctx(cli: &Cli, needs_input: bool) -> Result<Ctx> {
    let (raw, spec) = match (&cli.input, needs_input) {
        (Some(path), true) => {
            let raw = read_input(path)?;
            let text = std::str::from_utf8(&raw)
                .map_err(|_| Error::input("input is not UTF-8 text"))?;
            let spec = ProblemSpec::parse(text)?;
            (raw, Some(spec))
        }
        (None, true) => {
            return Err(Error::input(
                "this command needs --input FILE (use - for standard input)",
            ))
        }
        (Some(_), false) => {
            return Err(Error::input("corpus run is self-contained and takes no --input"))
        }
        (None, false) => (Vec::new(), None),
    };
    let field = match &cli.field {
        Some(s) => schema::parse_field_flag(s)?,
        None => spec
            .as_ref()
            .map(ProblemSpec::field)
            .transpose()?
            .flatten()
            .unwrap_or_default(),
    };
    let seed = cli.seed.or(spec.as_ref().and_then(|s| s.seed)).unwrap_or(0);
    let window_flag = cli.window.as_deref().map(schema::parse_window_flag).transpose()?;
    let type_flag = cli.type_flag.as_deref().map(schema::parse_type_flag).transpose()?;
    let trunc = cli.trunc.or(spec.as_ref().and_then(|s| s.truncation));
    let attempts = cli.attempts.unwrap_or(DEFAULT_ATTEMPTS);
    Ok(Ctx { raw, spec, field, seed, window_flag, type_flag, trunc, attempts })
}

fn read_input(path: &str) -> Result<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Error::input(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| Error::input(format!("reading {path}: {e}")))
    }
}

fn reject_flags(cli: &Cli, label: &str, allowed: &[&str]) -> Result<()> {
    let provided = [
        ("window", cli.window.is_some()),
        ("trunc", cli.trunc.is_some()),
        ("attempts", cli.attempts.is_some()),
        ("type", cli.type_flag.is_some()),
    ];
    for (name, given) in provided {
        if given && !allowed.contains(&name) {
            return Err(Error::input(format!("--{name} has no effect on '{label}'")));
        }
    }
    Ok(())
}

impl Ctx {
    fn spec(&self) -> &ProblemSpec {
        self.spec.as_ref().expect("commands without input never reach here")
    }

    fn family(&self) -> Result<IdealFamily> {
        self.spec().family()
    }

    fn module(&self) -> Result<Module> {
        Ok(self.spec().module_m()?.into())
    }

    /// Window precedence: flag, then input file, then `fallback`.
    fn window_or(&self, fallback: Window) -> Result<Window> {
        if let Some(w) = &self.window_flag {
            return Ok(w.clone());
        }
        Ok(self.spec().window()?.unwrap_or(fallback))
    }

    /// Type precedence: flag, then input file; required.
    fn required_type(&self, fam: &IdealFamily) -> Result<TypeIndex> {
        let t = match &self.type_flag {
            Some(t) => t.clone(),
            None => self.spec().type_from_input()?.ok_or_else(|| {
                Error::input("this command needs a type: pass --type k0,k1,.. or a \"type\" key")
            })?,
        };
        if t.d() != fam.d() {
            return Err(Error::input(format!(
                "type {t} has {} ideal coordinates but the family has {}",
                t.d(),
                fam.d()
            )));
        }
        Ok(t)
    }

    fn candidate(&self, fam: &IdealFamily) -> Result<ReductionCandidate> {
        self.spec().candidate(fam, self.field)
    }
}

fn error_class(e: &Error) -> &'static str {
    match e {
        Error::Input(_) => "input",
        Error::Refused(_) => "refused",
        Error::Inconsistency(_) => "inconsistency",
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => 2,
        Error::Refused(_) => 1,
        Error::Inconsistency(_) => 3,
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        Verdict::Retry | Verdict::HypothesisNotMet => 1,
        Verdict::Fail => 3,
    }
}

fn verdict_rank(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Retry => 1,
        Verdict::HypothesisNotMet => 2,
        Verdict::Fail => 3,
    }
}

fn hex_digest(raw: &[u8]) -> String {
    Sha256::digest(raw).iter().map(|b| format!("{b:02x}")).collect()
}

fn window_json(w: &Window) -> Value {
    json!({"lo": w.lo.coords(), "hi": w.hi.coords()})
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library reports serialize")
}

/// Nests a row-major value list into arrays by window extents.
fn nest_values(values: &[i64], extents: &[usize]) -> Value {
    if extents.len() <= 1 {
        return json!(values);
    }
    let chunk = values.len() / extents[0];
    Value::Array(values.chunks(chunk).map(|c| nest_values(c, &extents[1..])).collect())
}

fn term_list(e: &PolyElement) -> Value {
    Value::Array(
        e.terms()
            .map(|(m, c)| json!({"coeff": c.to_string(), "exps": m.exps()}))
            .collect(),
    )
}

fn candidate_json(cand: &ReductionCandidate, vars: &[String]) -> Value {
    let (rendered_j, rendered_ideals) = cand.rendered(vars);
    json!({
        "j": cand.j_elems().iter().map(term_list).collect::<Vec<_>>(),
        "ideals": cand
            .ideal_elems()
            .iter()
            .map(|list| Value::Array(list.iter().map(term_list).collect()))
            .collect::<Vec<_>>(),
        "rendered": {"j": rendered_j, "ideals": rendered_ideals},
    })
}

fn coeff_list(coeffs: &std::collections::BTreeMap<TypeIndex, i64>) -> Value {
    Value::Array(
        coeffs
            .iter()
            .map(|(t, c)| json!({"type": t.coords(), "coeff": c.to_string()}))
            .collect(),
    )
}

fn tabulate(ctx: &Ctx, table_fn: TableFn, window: &Window) -> Result<HilbertTable> {
    let fam = ctx.family()?;
    let module = ctx.module()?;
    match table_fn {
        TableFn::P => HilbertTable::hilbert_p(&module, &fam, window),
        TableFn::F => HilbertTable::hilbert_f(&module, &fam, window),
    }
}

fn cmd_hilbert(ctx: &Ctx, table_fn: TableFn) -> Result<Outcome> {
    let fam = ctx.family()?;
    let window = ctx.window_or(fam.default_window())?;
    let table = tabulate(ctx, table_fn, &window)?;
    let result = json!({
        "fn": match table_fn { TableFn::P => "P", TableFn::F => "F" },
        "values": nest_values(table.values(), &window.extents()),
    });
    Ok(Outcome {
        command: "hilbert",
        window: Some(window),
        truncation: None,
        result,
        code: 0,
        stderr_note: None,
    })
}

fn cmd_fit(ctx: &Ctx, table_fn: TableFn) -> Result<Outcome> {
    let fam = ctx.family()?;
    let window = ctx.window_or(fam.default_window())?;
    let table = tabulate(ctx, table_fn, &window)?;
    let (poly, cert) = fit_binomial(&table);
    let stable = cert.stable;
    let result = json!({
        "fn": match table_fn { TableFn::P => "P", TableFn::F => "F" },
        "coefficients": coeff_list(poly.coeffs()),
        "certificate": to_value(&cert),
    });
    Ok(Outcome {
        command: "fit",
        window: Some(window),
        truncation: None,
        result,
        code: if stable { 0 } else { 1 },
        stderr_note: (!stable).then(|| {
            json!({"diagnostic": "the fit does not reproduce the table; enlarge the window"})
        }),
    })
}

fn cmd_mixedmult(ctx: &Ctx) -> Result<Outcome> {
    let fam = ctx.family()?;
    let t = ctx.required_type(&fam)?;
    let window = ctx.window_or(fam.default_window())?;
    let table = tabulate(ctx, TableFn::P, &window)?;
    let (poly, cert) = fit_binomial(&table);
    let (result, code, note) = match mixed_mult_maximal(&poly, &cert, &t)? {
        MixedMult::Defined { value } => (json!({"mixedmult": value}), 0, None),
        MixedMult::Undefined { witness, witness_coeff } => (
            json!({
                "mixedmult": "undefined",
                "witness": witness.coords(),
                "witness_coeff": witness_coeff.to_string(),
            }),
            1,
            Some(json!({
                "diagnostic": format!(
                    "the multiplicity at {t} is undefined: the fitted polynomial carries \
                     {witness_coeff} at the strictly larger type {witness}"
                )
            })),
        ),
    };
    Ok(Outcome {
        command: "mixedmult",
        window: Some(window),
        truncation: None,
        result,
        code,
        stderr_note: note,
    })
}

fn cmd_support(ctx: &Ctx) -> Result<Outcome> {
    let fam = ctx.family()?;
    let window = ctx.window_or(fam.default_window())?;
    let table = tabulate(ctx, TableFn::P, &window)?;
    let (poly, cert) = fit_binomial(&table);
    if !cert.stable {
        return Err(Error::refused(
            "the fit does not reproduce the table, so its support is unreliable; \
             enlarge the window",
        ));
    }
    let support = Value::Array(
        poly.maximal_support()
            .iter()
            .map(|(t, c)| json!({"type": t.coords(), "coeff": c.to_string()}))
            .collect(),
    );
    Ok(Outcome {
        command: "support",
        window: Some(window),
        truncation: None,
        result: json!({"support": support}),
        code: 0,
        stderr_note: None,
    })
}

fn cmd_jointred_find(ctx: &Ctx) -> Result<Outcome> {
    let fam = ctx.family()?;
    let module = ctx.module()?;
    let t = ctx.required_type(&fam)?;
    let window = ctx.window_or(fam.reduction_window())?;
    let report =
        find_joint_reduction(&fam, &module, &t, &window, ctx.field, ctx.seed, ctx.attempts)?;
    let found = report.found.is_some();
    let result = match &report.found {
        Some((cand, cert)) => json!({
            "shape": to_value(&report.shape),
            "attempts_used": report.attempts_used,
            "note": report.note,
            "candidate": candidate_json(cand, fam.vars()),
            "certificate": to_value(cert),
        }),
        None => json!({
            "shape": to_value(&report.shape),
            "attempts_used": report.attempts_used,
            "note": report.note,
            "candidate": null,
            "certificate": null,
        }),
    };
    Ok(Outcome {
        command: "jointred find",
        window: Some(window),
        truncation: None,
        result,
        code: if found { 0 } else { 1 },
        stderr_note: (!found).then(|| json!({"diagnostic": report.note})),
    })
}

fn cmd_jointred_test(ctx: &Ctx) -> Result<Outcome> {
    let fam = ctx.family()?;
    let module = ctx.module()?;
    let cand = ctx.candidate(&fam)?;
    let window = ctx.window_or(fam.reduction_window())?;
    let cert = is_joint_reduction(&cand, &fam, &module, &window)?;
    let holds = cert.holds;
    let verdict = cert.verdict.clone();
    Ok(Outcome {
        command: "jointred test",
        window: Some(window),
        truncation: None,
        result: json!({"certificate": to_value(&cert)}),
        code: if holds { 0 } else { 1 },
        stderr_note: (!holds)
            .then(|| json!({"diagnostic": format!("not a joint reduction: {verdict}")})),
    })
}

fn cmd_jointred_minimal(ctx: &Ctx) -> Result<Outcome> {
    let fam = ctx.family()?;
    let module = ctx.module()?;
    let cand = ctx.candidate(&fam)?;
    let window = ctx.window_or(fam.reduction_window())?;
    let report =
        is_minimal_joint_reduction(&cand, &fam, &module, &window, ctx.seed, ctx.attempts)?;
    let minimal = report.minimal;
    let note = report
        .smaller_found
        .as_ref()
        .map(|s| format!("a strictly smaller shape also reduces: ({};{:?})", s.j_count, s.counts));
    Ok(Outcome {
        command: "jointred minimal",
        window: Some(window),
        truncation: None,
        result: json!({"minimality": to_value(&report)}),
        code: if minimal { 0 } else { 1 },
        stderr_note: note.map(|n| json!({"diagnostic": n})),
    })
}

fn cmd_chi(ctx: &Ctx, koszul_validate: bool) -> Result<Outcome> {
    let fam = ctx.family()?;
    let module = ctx.module()?;
    let cand = ctx.candidate(&fam)?;
    let window = ctx.window_or(fam.reduction_window())?;
    let options = ChiOptions { koszul_validate, trunc: ctx.trunc };
    let report = chi(&cand, &fam, &module, &window, &options)?;
    Ok(Outcome {
        command: "chi",
        window: Some(window),
        truncation: ctx.trunc,
        result: json!({"chi": report.value, "report": to_value(&report)}),
        code: 0,
        stderr_note: None,
    })
}

fn cmd_koszul(ctx: &Ctx, deg: &str) -> Result<Outcome> {
    let fam = ctx.family()?;
    let module = ctx.module()?;
    let cand = ctx.candidate(&fam)?;
    let deg = schema::parse_deg_flag(deg)?;
    let report = koszul_homology(&cand, &fam, &module, &deg, ctx.trunc)?;
    let stable = report.stable;
    Ok(Outcome {
        command: "koszul",
        window: None,
        truncation: ctx.trunc,
        result: to_value(&report),
        code: if stable { 0 } else { 1 },
        stderr_note: (!stable).then(|| {
            json!({"diagnostic": "homology lengths did not stabilize within the slice \
                                  budgets; raise --trunc"})
        }),
    })
}

fn cmd_verify(ctx: &Ctx, statement: &VerifyCmd, label: &'static str) -> Result<Outcome> {
    let fam = ctx.family()?;
    let t = ctx.required_type(&fam)?;
    let report: VerificationReport = match statement {
        VerifyCmd::Main => {
            let m = ctx.spec().module_m()?;
            let n = ctx.spec().module_n(&m)?;
            verify_main(&m, &n, &fam, &t, ctx.field, ctx.seed)?
        }
        VerifyCmd::Positivity => {
            verify_positivity_equivalences(&fam, &ctx.module()?, &t, ctx.field, ctx.seed)?
        }
        VerifyCmd::Addred => verify_additivity_reduction(&fam, &ctx.module()?, &t)?,
        VerifyCmd::Rank { rank } => verify_rank_formula(*rank, &fam, &t, ctx.field, ctx.seed)?,
        VerifyCmd::Exact => {
            let m = ctx.spec().module_m()?;
            let n = ctx.spec().module_n(&m)?;
            verify_exact_sequence(&m, &n, &fam, &t, ctx.field, ctx.seed)?
        }
    };
    let verdict = report.verdict;
    let note = (verdict != Verdict::Pass).then(|| {
        json!({"verdict": verdict.to_string(), "diagnostics": report.diagnostics})
    });
    Ok(Outcome {
        command: label,
        window: Some(fam.default_window()),
        truncation: None,
        result: to_value(&report),
        code: verdict_code(verdict),
        stderr_note: note,
    })
}

fn cmd_corpus(ctx: &Ctx) -> Result<Outcome> {
    let outcomes = run_corpus(ctx.field, ctx.seed)?;
    let worst = outcomes
        .iter()
        .map(|o| o.verdict)
        .max_by_key(|v| verdict_rank(*v))
        .unwrap_or(Verdict::Pass);
    let summary: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({"name": o.name, "verdict": o.verdict.to_string()}))
        .collect();
    let note = (worst != Verdict::Pass).then(|| {
        json!({"diagnostic": format!("corpus worst verdict: {worst}"), "summary": summary})
    });
    Ok(Outcome {
        command: "corpus run",
        window: None,
        truncation: None,
        result: json!({"worst": worst.to_string(), "outcomes": to_value(&outcomes)}),
        code: verdict_code(worst),
        stderr_note: note,
    })
}
