//! Command-line front end for crewlab.
//!
//! [`run_cli`] parses arguments, runs one subcommand and writes JSON (or
//! CSV) to `out` and diagnostics to `err`. Exit codes: 0 success or a true
//! verdict, 1 a false verdict, 2 a usage or input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use crewlab::counting::{self, TableRow};
use crewlab::formats::{self, FormatError, MatrixInput};
use crewlab::frames::{self, BoundReport, EtfReport, FrameSystem};
use crewlab::orbits::{self, EnumOptions, Relation};
use crewlab::seidel::{self, SeidelMatrix, SwitchVector};
use crewlab::spectra::{self, Certification, NeighborhoodReport, SpectralCertificate};
use crewlab::twograph::{TwoGraphData, Violation};
use crewlab::{demo, CyclotomicInteger};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "crewlab",
    version,
    about = "Seidel matrices over roots of unity, two-graphs and equiangular tight frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a matrix file is an m-th-root Seidel matrix.
    Validate {
        /// Seidel JSON or raw complex matrix JSON.
        input: PathBuf,
        #[arg(long, default_value_t = seidel::DEFAULT_VALIDATE_TOL)]
        tol: f64,
    },
    /// Conjugate a Seidel matrix by a diagonal of roots of unity.
    Switch {
        input: PathBuf,
        /// Comma-separated exponents, one per vertex.
        #[arg(long, value_delimiter = ',', required = true)]
        diag: Vec<u32>,
    },
    /// Switch a Seidel matrix so that its first row is all ones.
    Standardize { input: PathBuf },
    /// Triple-class data of Seidel matrices.
    #[command(subcommand)]
    Twograph(TwographCommand),
    /// Count classes of m-th-root Seidel matrices by exhaustive search.
    Enumerate(EnumerateArgs),
    /// Exact two-eigenvalue certificate and neighborhood report.
    Regular { input: PathBuf },
    /// Strongly regular graph parameters of a simple graph.
    Srg { input: PathBuf },
    /// Equiangular tight frames.
    #[command(subcommand)]
    Etf(EtfCommand),
    /// Directed graphs as cube-root Seidel matrices.
    #[command(subcommand)]
    Digraph(DigraphCommand),
    /// Closed-form and brute-force class counts.
    #[command(subcommand)]
    Count(CountCommand),
    /// Built-in worked examples.
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Subcommand, Debug)]
enum TwographCommand {
    /// Cycle-product classes of every triple.
    FromSeidel { input: PathBuf },
    /// Rebuild the standard-form Seidel matrix from triple classes.
    ToSeidel {
        input: PathBuf,
        /// Vertex joined to all others by ones (1-based).
        #[arg(long, default_value_t = 1)]
        pivot: usize,
    },
    /// Check triple-class data against an axiom.
    Validate {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Axiom::Cocycle)]
        axiom: Axiom,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Axiom {
    /// c(ijk) + c(ikl) = c(ijl) + c(jkl) on every 4-set.
    Cocycle,
    /// Every 4-set holds an even number of triples of each class.
    Paper,
}

#[derive(Args, Debug)]
struct JobsArg {
    /// Worker threads.
    #[arg(long, env = "CREWLAB_JOBS")]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    orbits: OrbitKind,
    #[command(flatten)]
    jobs: JobsArg,
    /// Largest search space to walk.
    #[arg(long, default_value_t = orbits::DEFAULT_BUDGET)]
    budget: u64,
    /// Emit CSV instead of JSON.
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrbitKind {
    Switching,
    Equivalence,
    Isomorphism,
}

impl From<OrbitKind> for Relation {
    fn from(k: OrbitKind) -> Self {
        match k {
            OrbitKind::Switching => Relation::Switching,
            OrbitKind::Equivalence => Relation::Equivalence,
            OrbitKind::Isomorphism => Relation::Isomorphism,
        }
    }
}

#[derive(Subcommand, Debug)]
enum EtfCommand {
    /// Frame vectors from a Seidel matrix with two eigenvalues.
    Build {
        input: PathBuf,
        /// Write the frame here instead of stdout.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Check unit norms, equiangularity, tightness and Welch equality.
    Verify {
        input: PathBuf,
        #[arg(long, default_value_t = frames::DEFAULT_ETF_TOL)]
        tol: f64,
    },
    /// Absolute, relative and Welch bounds for n lines in dimension k.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Coherence; defaults to the Welch bound.
        #[arg(long)]
        alpha: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum DigraphCommand {
    /// Arcs become ζ, reverse arcs ζ², double arcs and non-arcs 1.
    ToSeidel {
        input: PathBuf,
        /// Border with a new first vertex joined by ones.
        #[arg(long)]
        cone: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CountCommand {
    /// Class counts for the real and cube-root cases, n = 3..=n-max.
    Tables {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        csv: bool,
        /// Largest search space for brute-force cells.
        #[arg(long, default_value_t = counting::TABLE_BUDGET)]
        budget: u64,
        #[command(flatten)]
        jobs: JobsArg,
    },
}

#[derive(Subcommand, Debug)]
enum DemoCommand {
    /// The nine equiangular lines in C^6 built from the 8-vertex digraph.
    Etf96,
}

enum Failure {
    Usage(String),
    Input { path: Option<PathBuf>, error: FormatError },
}

impl From<crewlab::Error> for Failure {
    fn from(e: crewlab::Error) -> Self {
        Failure::Input { path: None, error: e.into() }
    }
}

type Outcome = Result<(Output, bool), Failure>;

enum Output {
    Json(Value),
    Text(String),
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input { path: Some(path.to_owned()), error: FormatError::new("io", e.to_string()) })
}

fn parse<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, FormatError>) -> Result<T, Failure> {
    let text = read_input(path)?;
    f(&text).map_err(|error| Failure::Input { path: Some(path.to_owned()), error })
}

/// A matrix file, validated into a Seidel matrix when it is given entrywise.
fn load_matrix(path: &Path) -> Result<SeidelMatrix, Failure> {
    match parse(path, formats::matrix_input_from_json)? {
        MatrixInput::Seidel(s) => Ok(s),
        MatrixInput::Raw(raw) => seidel::validate(&raw.rows, raw.m, seidel::DEFAULT_VALIDATE_TOL).map_err(|d| {
            Failure::Input { path: Some(path.to_owned()), error: FormatError::new(d.kind.code(), d.to_string()) }
        }),
    }
}

fn options(jobs: &JobsArg, budget: u64) -> Result<EnumOptions, Failure> {
    let mut opts = EnumOptions { budget, ..EnumOptions::default() };
    if let Some(j) = jobs.jobs {
        if j == 0 {
            return Err(Failure::Usage("--jobs must be at least 1".into()));
        }
        opts.jobs = j;
    }
    Ok(opts)
}

fn big_value(text: String) -> Value {
    match text.parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(text),
    }
}

fn cyclotomic_value(x: &CyclotomicInteger) -> Value {
    match x.to_integer() {
        Some(v) => big_value(v.to_string()),
        None => json!(x.embed().re),
    }
}

fn certificate_value(c: &Certification) -> Value {
    match c {
        Certification::Regular(cert) => regular_value(cert),
        Certification::Refused { witness } => {
            json!({ "regular": false, "witness": [witness.0 + 1, witness.1 + 1] })
        }
    }
}

fn regular_value(c: &SpectralCertificate) -> Value {
    let lambda = match &c.lambda_exact {
        Some([a, b]) => json!([big_value(a.to_string()), big_value(b.to_string())]),
        None => json!(c.lambda),
    };
    let mut v = json!({
        "regular": true,
        "mu": cyclotomic_value(&c.mu),
        "lambda": lambda,
        "mult": c.mult,
        "exact": c.exact,
    });
    if c.mu.to_integer().is_none() {
        v["mu_exact"] = json!(c.mu.to_string());
    }
    v
}

fn neighborhood_value(r: &NeighborhoodReport) -> Value {
    json!({
        "size": r.size,
        "mu": r.mu.as_ref().map(cyclotomic_value),
        "row_sum_witness": r.row_sum_witness.map(|i| i + 2),
        "spectrum": r.spectrum.iter().map(|(v, k)| json!({ "value": v, "mult": k })).collect::<Vec<_>>(),
        "lambda": r.lambda,
        "spectrum_ok": r.spectrum_ok,
        "regular": r.regular,
        "agrees": r.agrees,
        "eigen_residual": r.eigen_residual,
    })
}

fn violation_value(v: &Violation) -> Value {
    json!({ "vertices": v.vertices.map(|x| x + 1), "weight": v.weight })
}

fn etf_value(r: &EtfReport) -> Value {
    json!({
        "n": r.n,
        "k": r.k,
        "tol": r.tol,
        "unit_norm": r.unit_norm,
        "max_norm_error": r.max_norm_error,
        "equiangular": r.equiangular,
        "alpha": r.alpha,
        "alpha_spread": r.alpha_spread,
        "tight": r.tight,
        "frame_constant": r.frame_constant,
        "tightness_residual": r.tightness_residual,
        "tight_via_gram": r.tight_via_gram,
        "gram_square_residual": r.gram_square_residual,
        "welch_bound": r.welch_bound,
        "welch_equality": r.welch_equality,
        "etf": r.is_etf,
    })
}

fn bounds_value(b: &BoundReport) -> Value {
    json!({
        "n": b.n,
        "k": b.k,
        "alpha": b.alpha,
        "absolute": { "bound": b.absolute_bound, "holds": b.absolute_holds, "slack": b.absolute_slack },
        "relative": b.relative.as_ref().map(|r| json!({
            "bound": r.value,
            "holds": r.holds,
            "equality": r.equality,
            "predicted_spectrum": r.predicted_spectrum.map(|s| s.map(|(v, k)| json!({ "value": v, "mult": k }))),
        })),
        "welch_bound": b.welch_bound,
    })
}

fn table_value(rows: &[TableRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "quantity": r.quantity,
                    "value": r.value.as_ref().map(|v| big_value(v.to_string())),
                    "method": r.method.name(),
                })
            })
            .collect(),
    )
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| Failure::Usage(e.to_string());
    w.write_record(header).map_err(internal)?;
    for r in rows {
        w.write_record(&r).map_err(internal)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn seidel_output(s: &SeidelMatrix) -> Output {
    Output::Json(formats::seidel_to_value(s))
}

fn run(command: Command, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { input, tol } => {
            if tol.is_nan() || tol < 0.0 {
                return Err(Failure::Usage("--tol must be non-negative".into()));
            }
            let (m, rows) = match parse(&input, formats::matrix_input_from_json)? {
                MatrixInput::Seidel(s) => (s.order(), s.to_complex().rows()),
                MatrixInput::Raw(raw) => (raw.m, raw.rows),
            };
            match seidel::validate(&rows, m, tol) {
                Ok(s) => Ok((Output::Json(json!({ "valid": true, "seidel": formats::seidel_to_value(&s) })), true)),
                Err(d) => {
                    let _ = writeln!(err, "{}: {d}", input.display());
                    let report = json!({
                        "valid": false,
                        "reason": d.kind.code(),
                        "entry": [d.i + 1, d.j + 1],
                        "value": [d.value.re, d.value.im],
                    });
                    Ok((Output::Json(report), false))
                }
            }
        }
        Command::Switch { input, diag } => {
            let s = load_matrix(&input)?;
            if diag.len() != s.dim() {
                return Err(Failure::Usage(format!(
                    "--diag has {} entries, matrix has {} vertices",
                    diag.len(),
                    s.dim()
                )));
            }
            let d = SwitchVector::new(s.order(), diag)?;
            Ok((seidel_output(&s.switch(&d)?), true))
        }
        Command::Standardize { input } => {
            let (s, d) = load_matrix(&input)?.standard_form();
            let _ = writeln!(err, "switch: {:?}", d.diag());
            Ok((seidel_output(&s), true))
        }
        Command::Twograph(TwographCommand::FromSeidel { input }) => {
            let s = load_matrix(&input)?;
            let t = TwoGraphData::from_seidel(&s);
            let value: Value = serde_json::from_str(&formats::twograph_to_json(&t)).expect("own output parses");
            Ok((Output::Json(value), true))
        }
        Command::Twograph(TwographCommand::ToSeidel { input, pivot }) => {
            let t = parse(&input, formats::twograph_from_json)?;
            if pivot == 0 || pivot > t.dim() {
                return Err(Failure::Usage(format!("--pivot must lie in 1..={}", t.dim())));
            }
            Ok((seidel_output(&t.to_seidel(pivot - 1)?), true))
        }
        Command::Twograph(TwographCommand::Validate { input, axiom }) => {
            let t = parse(&input, formats::twograph_from_json)?;
            let (name, result) = match axiom {
                Axiom::Cocycle => ("cocycle", t.validate_cocycle()),
                Axiom::Paper => ("paper", t.validate_paper_axiom()),
            };
            let ok = result.is_ok();
            let mut report = json!({ "axiom": name, "valid": ok });
            if let Err(v) = result {
                report["violation"] = violation_value(&v);
            }
            Ok((Output::Json(report), ok))
        }
        Command::Enumerate(args) => {
            let opts = options(&args.jobs, args.budget)?;
            let relation = Relation::from(args.orbits);
            let space = orbits::search_space(args.m, args.n, relation);
            let _ = writeln!(
                err,
                "enumerating {} classes at m={} n={}: {space} matrices, jobs={}",
                relation.name(),
                args.m,
                args.n,
                opts.jobs
            );
            let count = orbits::count_classes(args.m, args.n, relation, &opts)?;
            let out = if args.csv {
                Output::Text(csv_text(
                    &["count-type", "m", "n", "value"],
                    [vec![relation.name().to_string(), args.m.to_string(), args.n.to_string(), count.to_string()]],
                )?)
            } else {
                Output::Json(json!({
                    "m": args.m,
                    "n": args.n,
                    "orbits": relation.name(),
                    "count": count,
                    "search_space": big_value(space.to_string()),
                }))
            };
            Ok((out, true))
        }
        Command::Regular { input } => {
            let s = load_matrix(&input)?;
            let cert = spectra::two_eigenvalue_certificate(&s)?;
            let regular = cert.is_regular();
            let mut report = certificate_value(&cert);
            if s.dim() >= 3 {
                report["neighborhood"] = neighborhood_value(&spectra::regular_neighborhood_test(&s)?);
            }
            Ok((Output::Json(report), regular))
        }
        Command::Srg { input } => {
            let g = parse(&input, formats::graph_from_json)?;
            let params = spectra::srg_parameters(&g);
            let report = json!({
                "srg": params.map(|p| json!({ "n": p.n, "k": p.k, "a": p.a, "c": p.c })),
                "k_equals_2c": params.is_some_and(|p| p.k == 2 * p.c),
                "cone_is_regular_two_graph": spectra::regular_two_graph_via_srg(&g),
            });
            Ok((Output::Json(report), params.is_some()))
        }
        Command::Etf(EtfCommand::Build { input, output }) => {
            let s = load_matrix(&input)?;
            let gram = frames::gram_from_seidel(&s)?;
            let frame = frames::frame_vectors(&gram)?;
            let _ = writeln!(
                err,
                "{} vectors in dimension {}, coherence {}, reconstruction residual {:e}",
                frame.len(),
                frame.k,
                gram.coherence,
                frames::reconstruction_residual(&frame, &gram)
            );
            let text = formats::frame_to_json(&frame);
            match output {
                Some(path) => {
                    fs::write(&path, format!("{text}\n")).map_err(|e| Failure::Input {
                        path: Some(path.clone()),
                        error: FormatError::new("io", e.to_string()),
                    })?;
                    Ok((
                        Output::Json(json!({ "written": path.display().to_string(), "n": frame.len(), "k": frame.k })),
                        true,
                    ))
                }
                None => Ok((Output::Text(format!("{text}\n")), true)),
            }
        }
        Command::Etf(EtfCommand::Verify { input, tol }) => {
            if tol.is_nan() || tol < 0.0 {
                return Err(Failure::Usage("--tol must be non-negative".into()));
            }
            let frame: FrameSystem = parse(&input, formats::frame_from_json)?;
            let report = frames::verify_etf(&frame, tol);
            Ok((Output::Json(etf_value(&report)), report.is_etf))
        }
        Command::Etf(EtfCommand::Bounds { n, k, alpha }) => {
            let alpha = match alpha {
                Some(a) => a,
                None => frames::welch_bound(n, k)?,
            };
            let b = frames::bound_report(n, k, alpha)?;
            let ok = b.absolute_holds && b.relative.as_ref().is_none_or(|r| r.holds);
            Ok((Output::Json(bounds_value(&b)), ok))
        }
        Command::Digraph(DigraphCommand::ToSeidel { input, cone }) => {
            let g = parse(&input, formats::digraph_from_json)?;
            let s = SeidelMatrix::from_digraph(&g);
            Ok((seidel_output(&if cone { s.cone() } else { s }), true))
        }
        Command::Count(CountCommand::Tables { n_max, csv, budget, jobs }) => {
            if n_max < 3 {
                return Err(Failure::Usage("--n-max must be at least 3".into()));
            }
            let opts = options(&jobs, budget)?;
            let rows = counting::table_report(n_max, &opts)?;
            let out = if csv {
                Output::Text(csv_text(
                    &["n", "quantity", "value", "method"],
                    rows.iter().map(|r| {
                        vec![
                            r.n.to_string(),
                            r.quantity.to_string(),
                            r.value.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                            r.method.name().to_string(),
                        ]
                    }),
                )?)
            } else {
                Output::Json(table_value(&rows))
            };
            Ok((out, true))
        }
        Command::Demo(DemoCommand::Etf96) => {
            let r = demo::demo_etf96()?;
            let report = json!({
                "digraph": serde_json::from_str::<Value>(&formats::digraph_to_json(&r.digraph)).expect("own output parses"),
                "cone": formats::seidel_to_value(&r.cone),
                "canonical_form": formats::seidel_to_value(&r.canonical_key.to_matrix()),
                "matches_reference": r.matches_reference,
                "certificate": regular_value(&r.certificate),
                "coherence": r.gram.coherence,
                "seidel_scale": r.gram.seidel_scale,
                "rank": r.gram.rank,
                "reconstruction_residual": r.reconstruction_residual,
                "etf": etf_value(&r.etf),
                "bounds": bounds_value(&r.bounds),
            });
            Ok((Output::Json(report), r.etf.is_etf))
        }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match run(cli.command, err) {
        Ok((output, verdict)) => {
            let written = match output {
                Output::Json(v) => writeln!(out, "{}", serde_json::to_string(&v).expect("json serializes")),
                Output::Text(t) => write!(out, "{t}"),
            };
            if written.is_err() {
                return 2;
            }
            if verdict {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Input { path, error }) => {
            match path {
                Some(p) => {
                    let _ = writeln!(err, "error: {}: {error}", p.display());
                }
                None => {
                    let _ = writeln!(err, "error: {error}");
                }
            }
            2
        }
    }
}
