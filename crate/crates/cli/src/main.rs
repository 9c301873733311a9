//! Command-line front end: φ construction, APN checks, factorization,
//! absolute irreducibility, and the verification battery. Output is either
//! human-readable text or deterministic JSON (schema "fermat-apn/1");
//! `--output` additionally appends one JSON line per report.

use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fermat_apn::factor::{self, AbsIrredWitness, FactorConfig};
use fermat_apn::verify::{self, Report, Verdict};
use fermat_apn::{apn, phi, singular};
use fermat_apn::{Error, FieldCtx, MPoly, UPoly, Var};

const SCHEMA: &str = "fermat-apn/1";

#[derive(Parser)]
#[command(name = "fermat-apn", version, about = "Generalized Fermat polynomials and APN analysis over GF(2^m)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomized algorithm choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Factor-engine work budget in recombination steps.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    work_budget: u64,
    /// Worker threads, 0 = auto; FERMAT_APN_THREADS overrides.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Emit JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Append each JSON record as one line to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Unlock k = 4 and the extended φ_d ranges.
    #[arg(long, global = true)]
    extended: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct φ_j (or φ_f for a sparse f) and print it.
    Phi(PhiArgs),
    /// Differential spectrum and APN verdict of one function.
    ApnCheck(ApnCheckArgs),
    /// APN verdicts of a GF(2)-coefficient polynomial across field sizes.
    Scan(ScanArgs),
    /// Factor a polynomial in x (univariate) or x, y over its field.
    Factor(PolyArgs),
    /// Decide absolute irreducibility.
    AbsIrred(AbsIrredArgs),
    /// Verify the Kasami factorization structure of φ_t (Eq. 5).
    KasamiVerify(KArgs),
    /// Check that the Kasami components meet (1,1) transversally.
    Transversal(KArgs),
    /// Count the equal-degree terms x^m y^m, m >= 1.
    EdCount(EdCountArgs),
    /// Run verification reports; with no selector, the full battery.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PhiArgs {
    /// Exponent j for φ_j.
    #[arg(long, conflicts_with = "poly")]
    j: Option<u32>,
    /// Sparse map "d:coeff-hex,..." for f; builds φ_f.
    #[arg(long)]
    poly: Option<String>,
    /// Coefficient field, e.g. gf2 or gf2^3.
    #[arg(long, default_value = "gf2")]
    field: String,
    /// Emit the affine part (z = 1) instead of the trivariate form.
    #[arg(long)]
    affine: bool,
}

#[derive(Args)]
struct ApnCheckArgs {
    /// Sparse map "d:coeff-hex,..." with coefficients in GF(2^n).
    #[arg(long)]
    poly: String,
    /// Field degree n.
    #[arg(long)]
    n: u32,
    /// Also run the Rodier surface check (n <= 8).
    #[arg(long)]
    rodier: bool,
}

#[derive(Args)]
struct ScanArgs {
    /// Sparse map "d:coeff-hex,..." with GF(2) coefficients.
    #[arg(long)]
    poly: String,
    /// Inclusive range of extension degrees, e.g. 3..11 or a single n.
    #[arg(long, value_name = "A..B")]
    n_range: String,
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial in the mpoly text form, e.g. "x^2 + 2*x*y + 1".
    #[arg(long)]
    poly: Option<String>,
    /// File containing the mpoly text form.
    #[arg(long, conflicts_with = "poly")]
    poly_file: Option<PathBuf>,
    /// Coefficient field, e.g. gf2 or gf2^3.
    #[arg(long, default_value = "gf2")]
    field: String,
}

#[derive(Args)]
struct AbsIrredArgs {
    /// Use the affine φ_j for this j as the input.
    #[arg(long, conflicts_with_all = ["poly", "poly_file"])]
    phi_j: Option<u32>,
    #[command(flatten)]
    input: PolyArgs,
}

#[derive(Args)]
struct KArgs {
    /// Kasami parameter k (2 or 3; 4 needs --extended).
    #[arg(long)]
    k: u32,
}

#[derive(Args)]
struct EdCountArgs {
    /// Use the affine φ_j for this j as the input.
    #[arg(long, conflicts_with_all = ["poly", "poly_file"])]
    phi_j: Option<u32>,
    #[command(flatten)]
    input: PolyArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Single theorem family: 3mod4 or 5mod8.
    #[arg(long, value_parser = ["3mod4", "5mod8"])]
    theorem: Option<String>,
    /// Kasami parameter k for --theorem.
    #[arg(long)]
    k: Option<u32>,
    /// Sparse map "d:coeff-hex,..." for h in f = x^t + h.
    #[arg(long)]
    h: Option<String>,
    /// Coefficient field of h.
    #[arg(long, default_value = "gf2")]
    field: String,
    /// φ_d sweep over an inclusive odd-d range, e.g. 5..40.
    #[arg(long, value_name = "A..B", conflicts_with = "theorem")]
    phi_d: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(&cli.global);
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// The CLI owns the worker pool; library code only ever uses the global one.
fn init_threads(g: &Global) {
    let threads = std::env::var("FERMAT_APN_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(g.threads);
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

/// Exit 2 for usage/input problems, 3 when capacity or budget ran out.
fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapacityExceeded { .. }) | Some(Error::BudgetExhausted { .. }) => 3,
        _ => 2,
    }
}

/// Accepts gf2, gf2^m, gf2^m/modulus-hex, or a bare degree.
fn parse_field(s: &str) -> Result<FieldCtx> {
    let t = s.trim().to_ascii_lowercase();
    let body = t.strip_prefix("gf2").unwrap_or(&t);
    if body.is_empty() {
        return Ok(FieldCtx::gf2());
    }
    let body = body.strip_prefix('^').unwrap_or(body);
    let (m_str, modulus) = match body.split_once('/') {
        Some((m, h)) => (
            m,
            Some(
                u64::from_str_radix(h, 16)
                    .map_err(|_| Error::Parse(format!("bad modulus hex {h:?}")))?,
            ),
        ),
        None => (body, None),
    };
    let m: u32 = m_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad field {s:?}: expected gf2, gf2^m, or m")))?;
    Ok(FieldCtx::new(m, modulus)?)
}

/// Inclusive "a..b" range, or a single value.
fn parse_range(s: &str) -> Result<Vec<u32>> {
    let t = s.trim();
    let parse = |x: &str| -> Result<u32> {
        x.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range bound {x:?}")).into())
    };
    match t.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                bail!(Error::Parse(format!("empty range {t:?}")));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![parse(t)?]),
    }
}

fn read_mpoly(args: &PolyArgs) -> Result<MPoly> {
    let ctx = parse_field(&args.field)?;
    let text = match (&args.poly, &args.poly_file) {
        (Some(s), None) => s.clone(),
        (None, Some(p)) => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => bail!(Error::InvalidInput("provide exactly one of --poly / --poly-file".into())),
    };
    Ok(MPoly::parse(ctx, text.trim())?)
}

// ---- Output plumbing ----

struct Emitter {
    json: bool,
    output: Option<PathBuf>,
}

impl Emitter {
    fn new(g: &Global) -> Emitter {
        Emitter { json: g.json, output: g.output.clone() }
    }

    /// Appends one JSON line to --output; used per record so interrupted
    /// batch runs keep everything finished so far.
    fn line(&self, value: &Value) -> Result<()> {
        if let Some(path) = &self.output {
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening {}", path.display()))?;
            writeln!(f, "{value}")?;
        }
        Ok(())
    }

    fn finish(&self, human: String, value: &Value) -> Result<()> {
        if self.json {
            println!("{value}");
        } else {
            println!("{human}");
        }
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let emit = Emitter::new(&cli.global);
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Phi(a) => cmd_phi(a, &emit),
        Cmd::ApnCheck(a) => cmd_apn_check(a, &emit),
        Cmd::Scan(a) => cmd_scan(a, &emit),
        Cmd::Factor(a) => cmd_factor(a, g, &emit),
        Cmd::AbsIrred(a) => cmd_abs_irred(a, g, &emit),
        Cmd::KasamiVerify(a) => {
            require_k(a.k, g.extended)?;
            finish_reports("kasami-verify", vec![verify::verify_kasami_structure(a.k, g.seed)], &emit)
        }
        Cmd::Transversal(a) => {
            require_k(a.k, g.extended)?;
            finish_reports("transversal", vec![verify::verify_transversality(a.k)], &emit)
        }
        Cmd::EdCount(a) => cmd_ed_count(a, &emit),
        Cmd::Verify(a) => cmd_verify(a, g, &emit),
    }
}

fn require_k(k: u32, extended: bool) -> Result<()> {
    if k == 4 && !extended {
        bail!(Error::InvalidInput("k = 4 needs --extended".into()));
    }
    Ok(())
}

fn cmd_phi(a: &PhiArgs, emit: &Emitter) -> Result<ExitCode> {
    let ctx = parse_field(&a.field)?;
    let (source, p) = match (&a.j, &a.poly) {
        (Some(j), None) => (json!({ "j": j }), phi::build_phi_j(ctx, *j)?),
        (None, Some(s)) => {
            let f = UPoly::parse_sparse(ctx, s)?;
            (json!({ "f": f.to_sparse_string() }), phi::build_phi_f(ctx, &f)?)
        }
        _ => bail!(Error::InvalidInput("provide exactly one of --j / --poly".into())),
    };
    let p = if a.affine { phi::affine_part(&p) } else { p };
    let value = json!({
        "schema": SCHEMA,
        "command": "phi",
        "field": ctx.to_string(),
        "source": source,
        "affine": a.affine,
        "total_degree": p.total_degree(),
        "terms": p.iter_terms().count(),
        "poly": p.to_string(),
    });
    emit.line(&value)?;
    emit.finish(p.to_string(), &value)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_apn_check(a: &ApnCheckArgs, emit: &Emitter) -> Result<ExitCode> {
    let ctx = FieldCtx::new(a.n, None)?;
    let f = UPoly::parse_sparse(ctx, &a.poly)?;
    let spectrum = apn::diff_spectrum(&f)?;
    let rodier = if a.rodier {
        let r = apn::rodier_report(&f)?;
        json!({ "holds": r.holds, "witness": r.witness })
    } else {
        Value::Null
    };
    let value = json!({
        "schema": SCHEMA,
        "command": "apn-check",
        "field": ctx.to_string(),
        "n": a.n,
        "poly": f.to_sparse_string(),
        "uniformity": spectrum.uniformity,
        "is_apn": spectrum.is_apn(),
        "histogram": spectrum.histogram,
        "rodier": rodier,
    });
    let mut human = format!(
        "f = {} over GF(2^{}): uniformity {} ({})",
        f.to_sparse_string(),
        a.n,
        spectrum.uniformity,
        if spectrum.is_apn() { "APN" } else { "not APN" }
    );
    if a.rodier {
        human.push_str(&format!("\nrodier: {}", value["rodier"]));
    }
    emit.line(&value)?;
    emit.finish(human, &value)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(a: &ScanArgs, emit: &Emitter) -> Result<ExitCode> {
    let f = UPoly::parse_sparse(FieldCtx::gf2(), &a.poly)?;
    let ns = parse_range(&a.n_range)?;
    let rows = apn::exceptional_scan(&f, &ns)?;
    let value = json!({
        "schema": SCHEMA,
        "command": "scan",
        "poly": f.to_sparse_string(),
        "rows": rows
            .iter()
            .map(|r| json!({ "n": r.n, "uniformity": r.uniformity, "is_apn": r.is_apn }))
            .collect::<Vec<_>>(),
    });
    let mut human = format!("f = {} across extensions:", f.to_sparse_string());
    for r in &rows {
        human.push_str(&format!(
            "\n  n = {:2}: uniformity {:3} {}",
            r.n,
            r.uniformity,
            if r.is_apn { "APN" } else { "" }
        ));
    }
    emit.line(&value)?;
    emit.finish(human, &value)?;
    Ok(ExitCode::SUCCESS)
}

fn factor_config(g: &Global) -> FactorConfig {
    FactorConfig { seed: g.seed, work_budget: g.work_budget, ..FactorConfig::default() }
}

fn factorization_json(fz: &factor::Factorization) -> Value {
    json!({
        "field": fz.field.to_string(),
        "unit": fz.unit,
        "factors": fz
            .factors
            .iter()
            .map(|(p, e)| json!({
                "poly": p.to_string(),
                "multiplicity": e,
                "field": fz.field.to_string(),
            }))
            .collect::<Vec<_>>(),
    })
}

fn cmd_factor(a: &PolyArgs, g: &Global, emit: &Emitter) -> Result<ExitCode> {
    let p = read_mpoly(a)?;
    let fz = if p.uses_var(Var::Y) {
        factor::bivar_factor_cfg(&p, &factor_config(g))?
    } else {
        factor::univar_factor(&p.to_univar(Var::X)?, g.seed)?
    };
    let mut value = factorization_json(&fz);
    value["schema"] = json!(SCHEMA);
    value["command"] = json!("factor");
    value["input"] = json!(p.to_string());
    let mut human = format!("unit {}", fz.unit);
    for (q, e) in &fz.factors {
        human.push_str(&format!("\n  ({q})^{e}"));
    }
    emit.line(&value)?;
    emit.finish(human, &value)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_abs_irred(a: &AbsIrredArgs, g: &Global, emit: &Emitter) -> Result<ExitCode> {
    let p = match a.phi_j {
        Some(j) => phi::phi_j_affine(parse_field(&a.input.field)?, j)?,
        None => read_mpoly(&a.input)?,
    };
    let (ok, witness) = factor::absolutely_irreducible_cfg(&p, &factor_config(g))?;
    let witness_json = match &witness {
        AbsIrredWitness::Irreducible { tested_primes } => {
            json!({ "irreducible": true, "tested_primes": tested_primes })
        }
        AbsIrredWitness::Splits { field, factors } => {
            json!({ "irreducible": false, "splits_over": field, "factors": factors })
        }
    };
    let value = json!({
        "schema": SCHEMA,
        "command": "abs-irred",
        "field": p.ctx.to_string(),
        "poly": p.to_string(),
        "total_degree": p.total_degree(),
        "absolutely_irreducible": ok,
        "witness": witness_json,
    });
    let human = match &witness {
        AbsIrredWitness::Irreducible { tested_primes } => format!(
            "absolutely irreducible (irreducible over the base field and over \
             extensions of prime degree {tested_primes:?})"
        ),
        AbsIrredWitness::Splits { field, factors } => {
            format!("not absolutely irreducible: splits over {field} as {factors:?}")
        }
    };
    emit.line(&value)?;
    emit.finish(human, &value)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_ed_count(a: &EdCountArgs, emit: &Emitter) -> Result<ExitCode> {
    let p = match a.phi_j {
        Some(j) => phi::phi_j_affine(parse_field(&a.input.field)?, j)?,
        None => read_mpoly(&a.input)?,
    };
    let (count, odd) = singular::ed_term_count(&p);
    let value = json!({
        "schema": SCHEMA,
        "command": "ed-count",
        "poly": p.to_string(),
        "count": count,
        "odd": odd,
    });
    let human = format!("{count} equal-degree terms ({})", if odd { "odd" } else { "even" });
    emit.line(&value)?;
    emit.finish(human, &value)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: &VerifyArgs, g: &Global, emit: &Emitter) -> Result<ExitCode> {
    let reports = if let Some(theorem) = &a.theorem {
        let h_text = a
            .h
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--theorem needs --h \"d:coeff-hex,...\"".into()))?;
        let h = UPoly::parse_sparse(parse_field(&a.field)?, h_text)?;
        let (default_k, f): (u32, fn(u32, &UPoly, u64) -> Report) = match theorem.as_str() {
            "3mod4" => (2, verify::verify_theorem_3mod4),
            _ => (3, verify::verify_theorem_5mod8),
        };
        let k = a.k.unwrap_or(default_k);
        require_k(k, g.extended)?;
        vec![f(k, &h, g.seed)]
    } else if let Some(range) = &a.phi_d {
        let ds: Vec<u32> = parse_range(range)?.into_iter().filter(|d| d % 2 == 1).collect();
        if ds.is_empty() {
            bail!(Error::InvalidInput(format!("no odd d in {range:?}")));
        }
        let cap = if g.extended { 205 } else { 40 };
        if ds.iter().any(|&d| d > cap) {
            bail!(Error::InvalidInput(format!("d > {cap} needs --extended")));
        }
        vec![verify::verify_phi_d_irreducibility(&ds, g.seed)]
    } else {
        verify::run_all(g.extended, g.seed)
    };
    finish_reports("verify", reports, emit)
}

fn verdict_str(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "pass".into(),
        Verdict::Fail => "FAIL".into(),
        Verdict::Skipped { reason } => format!("skipped ({reason})"),
    }
}

/// Emits reports (JSON array on stdout in --json mode, summary table
/// otherwise, one JSON line each to --output) and maps failures to exit 1.
fn finish_reports(command: &str, reports: Vec<Report>, emit: &Emitter) -> Result<ExitCode> {
    for r in &reports {
        emit.line(&json!({ "schema": SCHEMA, "report": r }))?;
    }
    let value = json!({
        "schema": SCHEMA,
        "command": command,
        "reports": reports,
    });
    let mut human = String::new();
    for r in &reports {
        human.push_str(&format!(
            "{:24} {:40} {:8} {:.2}s\n",
            r.name,
            r.hypotheses.to_string(),
            verdict_str(&r.verdict),
            r.runtime
        ));
    }
    let failed = reports.iter().filter(|r| r.failed()).count();
    let passed = reports.iter().filter(|r| r.passed()).count();
    human.push_str(&format!(
        "{} checks: {passed} passed, {failed} failed, {} skipped",
        reports.len(),
        reports.len() - passed - failed
    ));
    emit.finish(human, &value)?;
    Ok(if failed > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
