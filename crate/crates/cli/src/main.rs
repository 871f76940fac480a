mod manifest;
mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use carpet_ext::classification::{classify_fano, classify_mukai, ClassificationRecord};
use carpet_ext::extendability::{assess, beta, gamma, h0_n_minus_k_bound, AlphaBound, CarpetAssessment, Extendable};
use carpet_ext::repro::{self, ReproReport};
use carpet_ext::rules::{h0_normal_twist, NormalTwist, NormalTwistValue, RuleTable};
use carpet_ext::scan::{bundle_cohomology, evaluate_grid_with_workers, Bundle, GridRow, Quantity, RowValue};
use carpet_ext::{DivisorClass, Error, HirzebruchSurface};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use manifest::{parse_tangent, ManifestFile, ScanFlags};
use render::{interval_cell, interval_json, num};

const THREADS_ENV: &str = "CARPET_EXT_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Exact cohomology on Hirzebruch surfaces and extendability of K3 carpets.
#[derive(Parser, Debug)]
#[command(name = "carpet-ext", version, about)]
struct Cli {
    /// Output format (scans default to csv, everything else to text)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to PATH instead of stdout (atomically)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Exit with status 3 unless every reported value is exact
    #[arg(long, global = true)]
    exact: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// h^i of aC0+bf, or of a twisted tangent bundle
    Coh(CohArgs),
    /// Upper bound for alpha and the extendability verdict
    Alpha(Point),
    /// The beta estimator
    Beta(Point),
    /// The gamma estimator (a = 2)
    Gamma(GammaArgs),
    /// h^0 of twisted normal bundles
    NormalBound(NormalArgs),
    /// Fano threefold and Mukai variety tables
    Classify {
        #[command(subcommand)]
        kind: ClassifyKind,
    },
    /// Evaluate a quantity over an (e, a, b) grid
    Scan(ScanArgs),
    /// Recompute every tabulated claim and report PASS/FAIL
    VerifyPaper,
}

#[derive(Args, Debug)]
struct CohArgs {
    #[arg(long, allow_negative_numbers = true)]
    e: i64,
    #[arg(long, allow_negative_numbers = true)]
    a: BigInt,
    #[arg(long, allow_negative_numbers = true)]
    b: BigInt,
    /// Tangent bundle twisted by -H, -H+K, or L = aC0+bf itself
    #[arg(long, allow_hyphen_values = true, value_name = "TWIST")]
    tangent: Option<String>,
}

#[derive(Args, Debug)]
struct Point {
    #[arg(long, allow_negative_numbers = true)]
    e: i64,
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
}

#[derive(Args, Debug)]
struct GammaArgs {
    #[arg(long, allow_negative_numbers = true)]
    e: i64,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
    /// Accepted for symmetry; must be 2
    #[arg(long, allow_negative_numbers = true)]
    a: Option<i64>,
}

#[derive(Args, Debug)]
struct NormalArgs {
    #[arg(long, allow_negative_numbers = true)]
    e: i64,
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    k: i64,
    /// -H (default) or -H+K
    #[arg(long, allow_hyphen_values = true, default_value = "-H")]
    twist: String,
}

#[derive(Subcommand, Debug)]
enum ClassifyKind {
    Fano {
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
    },
    Mukai {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
    },
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Range of e: N or LO..HI
    #[arg(long, allow_hyphen_values = true)]
    e: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// cohomology, beta, gamma, alpha, normal-k or classify
    #[arg(long)]
    compute: Option<String>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_hyphen_values = true, value_name = "TWIST")]
    tangent: Option<String>,
    /// JSON manifest; flags override its fields
    #[arg(long)]
    manifest: Option<PathBuf>,
}

enum Failure {
    Verification,
    Input(String),
    Indeterminate(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_indeterminate() {
            Failure::Indeterminate(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(format!("output: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Indeterminate(msg)) => {
            eprintln!("indeterminate: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format.unwrap_or(Format::Text);
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Coh(args) => cmd_coh(args, format, out, cli.exact),
        Command::Alpha(p) => {
            let a = assess(p.a, p.b, p.e)?;
            emit_point(format, out, &Quantity::Alpha, p, RowValue::Assessment(Box::new(a.clone())), || alpha_text(&a))?;
            demand(cli.exact, a.bound.is_exact(), "alpha bound is an interval")
        }
        Command::Beta(p) => {
            let b = beta(p.a, p.b, p.e)?;
            emit_point(format, out, &Quantity::Beta, p, RowValue::Estimate(Box::new(b.clone())), || estimate_text("β", &b))?;
            demand(cli.exact, b.is_exact(), "beta is an interval")
        }
        Command::Gamma(args) => {
            if args.a.is_some_and(|a| a != 2) {
                return Err(Failure::Input("gamma is only defined for a = 2".into()));
            }
            let g = gamma(args.b, args.e)?;
            let p = Point { e: args.e, a: 2, b: args.b };
            emit_point(format, out, &Quantity::Gamma, &p, RowValue::Estimate(Box::new(g.clone())), || estimate_text("γ", &g))?;
            demand(cli.exact, g.is_exact(), "gamma is an interval")
        }
        Command::NormalBound(args) => cmd_normal(args, format, out, cli.exact),
        Command::Classify { kind } => {
            let rec = match kind {
                ClassifyKind::Fano { r, g } => classify_fano(*r, *g)?,
                ClassifyKind::Mukai { n, r, g } => classify_mukai(*n, *r, *g)?,
            };
            emit(out, &classification_output(&rec, format))
        }
        Command::Scan(args) => cmd_scan(args, cli),
        Command::VerifyPaper => {
            let report = repro::run(&RuleTable::standard());
            emit(out, &report_output(&report, format))?;
            if report.all_pass() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn demand(exact: bool, is_exact: bool, what: &str) -> Outcome {
    if exact && !is_exact {
        Err(Failure::Indeterminate(what.into()))
    } else {
        Ok(())
    }
}

fn emit(out: Option<&Path>, content: &str) -> Outcome {
    match out {
        Some(path) => write_atomically(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Write to a temporary file next to `path`, then rename over it.
fn write_atomically(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn json_line(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn csv_or_input(headers: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    render::csv_string(headers, rows).map_err(|e| Failure::Input(format!("csv: {e}")))
}

fn cmd_coh(args: &CohArgs, format: Format, out: Option<&Path>, exact: bool) -> Outcome {
    let s = HirzebruchSurface::new(args.e)?;
    let bundle = match &args.tangent {
        Some(t) => parse_tangent(t)?,
        None => Bundle::Line,
    };
    let d = DivisorClass::new(args.a.clone(), args.b.clone());
    let dims = bundle_cohomology(bundle, &d, &s);
    let text = match format {
        Format::Text => {
            let tag = match (bundle.is_tangent(), dims.exact) {
                (false, _) => "",
                (true, true) => " exact",
                (true, false) => " interval",
            };
            format!("h = {dims}{tag}\n  {bundle} with L = {d} on {s} [{}]\n", render::bundle_anchors(bundle).join("; "))
        }
        Format::Json => json_line(&render::dims_json(args.e, &args.a, &args.b, bundle, &dims)),
        Format::Csv => {
            let headers = render::headers(&Quantity::Cohomology(bundle));
            let mut row = vec![args.e.to_string(), args.a.to_string(), args.b.to_string(), bundle.to_string()];
            row.extend(dims.h.iter().map(interval_cell));
            row.extend([dims.exact.to_string(), render::bundle_anchors(bundle).join("; "), String::new()]);
            csv_or_input(&headers, &[row])?
        }
    };
    emit(out, &text)?;
    demand(exact, dims.exact, "connecting-map ranks are not forced")
}

fn emit_point(format: Format, out: Option<&Path>, q: &Quantity, p: &Point, value: RowValue, text: impl FnOnce() -> String) -> Outcome {
    let row = GridRow { e: p.e, a: p.a, b: p.b, result: Ok(value) };
    let content = match format {
        Format::Text => text(),
        Format::Json => json_line(&render::row_json(q, &row)),
        Format::Csv => csv_or_input(&render::headers(q), &[render::cells(q, &row)])?,
    };
    emit(out, &content)
}

fn terms_text(b: &AlphaBound) -> String {
    let parts: Vec<String> = b.terms.iter().map(|t| format!("{} = {}", t.label, t.value)).collect();
    format!("  terms: {}\n", parts.join(", "))
}

fn rg(b: &AlphaBound) -> String {
    format!("(r,g)=({},{})", b.params.r, b.params.g)
}

fn estimate_text(symbol: &str, b: &AlphaBound) -> String {
    let correction = if b.special_correction > 0 { format!(" (includes +{} correction)", b.special_correction) } else { String::new() };
    format!("{symbol} = {}{correction}; {}; M = {} [{}]\n{}", b.value, rg(b), b.params.m, b.anchors.join("; "), terms_text(b))
}

fn alpha_text(a: &CarpetAssessment) -> String {
    let b = &a.bound;
    let v = &a.verdict;
    let mut verdict = match v.extendable {
        Extendable::No => "NOT extendable".to_string(),
        Extendable::Unknown => "extendability unknown".to_string(),
    };
    if v.extendable == Extendable::Unknown {
        if let Some(k) = &v.k_extendability_ceiling {
            verdict += &format!(", not {k}-extendable");
        }
    }
    let spread = if b.is_exact() { String::new() } else { format!(" ({} in {})", b.estimator, b.value) };
    let mut out = format!("α ≤ {}{spread}; {}; {verdict} [{}]\n", b.upper(), rg(b), render::verdict_anchors(a).join("; "));
    out +=
        &format!("  {} with M = {}, N = {}, h0(N(-2H)) <= {}\n", b.estimator, b.params.m, b.params.n, interval_cell(&v.h0_n_minus2_bound));
    out += &terms_text(b);
    for r in &v.reasons {
        out += &format!("  {r}\n");
    }
    out
}

fn normal_twist_output(p: &NormalArgs, twist: NormalTwist, v: &NormalTwistValue, format: Format) -> Result<String, Failure> {
    let h = if p.k == 1 { "-H".to_string() } else { format!("-{}H", p.k) };
    let label = match twist {
        NormalTwist::MinusH => h,
        NormalTwist::MinusHPlusK => h + "+K",
    };
    Ok(match format {
        Format::Text => {
            let rel = if v.exact { "=" } else { "<=" };
            let shown = if v.exact { v.value.to_string() } else { v.value.hi().to_string() };
            format!("h0(N_Y({label})) {rel} {shown} (rule {}) [{}]\n", v.rule_id, v.anchor)
        }
        Format::Json => json_line(&json!({
            "surface": {"e": p.e},
            "divisor": {"a": p.a, "b": p.b},
            "twist": label,
            "k": p.k,
            "value": interval_json(&v.value),
            "exact": v.exact,
            "rule": v.rule_id,
            "anchors": [v.anchor],
        })),
        Format::Csv => csv_or_input(
            &["e", "a", "b", "twist", "k", "value", "exact", "rule", "anchors"],
            &[vec![
                p.e.to_string(),
                p.a.to_string(),
                p.b.to_string(),
                label,
                p.k.to_string(),
                interval_cell(&v.value),
                v.exact.to_string(),
                v.rule_id.to_string(),
                v.anchor.to_string(),
            ]],
        )?,
    })
}

fn cmd_normal(args: &NormalArgs, format: Format, out: Option<&Path>, exact: bool) -> Outcome {
    let twist = match args.twist.as_str() {
        "-H" => NormalTwist::MinusH,
        "-H+K" => NormalTwist::MinusHPlusK,
        other => return Err(Failure::Input(format!("unknown twist '{other}', expected -H or -H+K"))),
    };
    if twist == NormalTwist::MinusH && args.k >= 2 {
        let k = u32::try_from(args.k).map_err(|_| Failure::Input(format!("k = {} is too large", args.k)))?;
        let v = h0_n_minus_k_bound(args.a, args.b, args.e, k)?;
        let p = Point { e: args.e, a: args.a, b: args.b };
        let text = || format!("h0(N(-{}H)) <= {} for the carpet [{}]\n", args.k, v.hi(), carpet_ext::anchors::MINUS_TWO_TWIST);
        emit_point(format, out, &Quantity::NormalBound { k }, &p, RowValue::NormalBound(v.clone()), text)?;
        return demand(exact, v.is_point(), "bound is an interval");
    }
    let s = HirzebruchSurface::new(args.e)?;
    let v = h0_normal_twist(&DivisorClass::new(args.a, args.b), &s, twist, &BigInt::from(args.k))?;
    emit(out, &normal_twist_output(args, twist, &v, format)?)?;
    demand(exact, v.exact, "only a bound is known")
}

fn classification_output(rec: &ClassificationRecord, format: Format) -> String {
    let kind = match rec.kind {
        carpet_ext::classification::Kind::Fano => "fano",
        carpet_ext::classification::Kind::Mukai => "mukai",
    };
    match format {
        Format::Text => format!("{rec}\n"),
        Format::Json => json_line(&json!({
            "kind": kind,
            "n": num(&rec.n),
            "r": num(&rec.r),
            "g": num(&rec.g),
            "status": rec.status.to_string(),
            "reason": rec.reason,
            "alpha": rec.alpha.as_ref().map_or(Value::Null, |a| num(&a.value)),
            "alpha_bound_only": rec.alpha.as_ref().is_some_and(|a| a.bound_only),
            "tangent_dim_at_cone": rec.tangent_dim_at_cone.as_ref().map_or(Value::Null, num),
            "unique_fano": rec.unique_fano,
            "carpet": {"a": num(&rec.carpet.0), "b": num(&rec.carpet.1), "e": num(&rec.carpet.2)},
            "anchors": rec.anchors,
        })),
        Format::Csv => render::csv_string(
            &["kind", "n", "r", "g", "status", "alpha", "dim_T", "unique_fano", "reason", "anchors"],
            &[vec![
                kind.to_string(),
                rec.n.to_string(),
                rec.r.to_string(),
                rec.g.to_string(),
                rec.status.to_string(),
                rec.alpha.as_ref().map(|a| a.to_string()).unwrap_or_default(),
                rec.tangent_dim_at_cone.as_ref().map(|d| d.to_string()).unwrap_or_default(),
                rec.unique_fano.to_string(),
                rec.reason.clone(),
                rec.anchors.join("; "),
            ]],
        )
        .expect("in-memory csv"),
    }
}

fn report_output(report: &ReproReport, format: Format) -> String {
    match format {
        Format::Text => format!("{report}\n"),
        Format::Json => {
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "id": e.id,
                        "anchor": e.anchor,
                        "provenance": e.provenance.to_string(),
                        "expected": e.expected,
                        "computed": e.computed,
                        "pass": e.pass,
                    })
                })
                .collect();
            json_line(&json!({"entries": entries, "passed": report.passed(), "failed": report.failed()}))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.id.clone(),
                        e.anchor.to_string(),
                        e.provenance.to_string(),
                        e.expected.clone(),
                        e.computed.clone(),
                        if e.pass { "PASS" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            render::csv_string(&["id", "anchor", "provenance", "expected", "computed", "result"], &rows).expect("in-memory csv")
        }
    }
}

fn workers() -> Result<usize, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Failure::Input(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn cmd_scan(args: &ScanArgs, cli: &Cli) -> Outcome {
    let file = match &args.manifest {
        Some(p) => ManifestFile::load(p)?,
        None => ManifestFile::default(),
    };
    let flags = ScanFlags {
        e: args.e.as_deref(),
        a: args.a.as_deref(),
        b: args.b.as_deref(),
        compute: args.compute.as_deref(),
        k: args.k,
        tangent: args.tangent.as_deref(),
        format: cli.format,
        out: cli.out.as_deref(),
    };
    let m = manifest::resolve(flags, file)?;
    let rows = evaluate_grid_with_workers(&m.grid, &m.quantity, &RuleTable::standard(), workers()?)?;
    let content = match m.format {
        Format::Json => json_line(&Value::Array(rows.iter().map(|r| render::row_json(&m.quantity, r)).collect())),
        Format::Csv | Format::Text => {
            let headers = render::headers(&m.quantity);
            let cells: Vec<Vec<String>> = rows.iter().map(|r| render::cells(&m.quantity, r)).collect();
            if m.format == Format::Csv {
                csv_or_input(&headers, &cells)?
            } else {
                render::text_table(&headers, &cells)
            }
        }
    };
    emit(m.out.as_deref(), &content)?;
    let all_exact = rows.iter().all(|r| match &r.result {
        Ok(RowValue::Dims(d)) => d.exact,
        Ok(RowValue::Estimate(b)) => b.is_exact(),
        Ok(RowValue::Assessment(a)) => a.bound.is_exact(),
        Ok(RowValue::NormalBound(v)) => v.is_point(),
        Ok(RowValue::Classification(_)) => true,
        Err(_) => false,
    });
    demand(cli.exact, all_exact, "some rows are intervals or indeterminate")
}
