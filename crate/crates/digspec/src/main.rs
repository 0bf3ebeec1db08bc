//! Command-line front end: spectra of arc-list files, closed-form
//! evaluation with live numeric cross-checks, verification suites,
//! cospectral search, and family generation.
//!
//! Exit codes: 0 = success/confirmed, 1 = verification failure,
//! 2 = input error.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use digspec::closed_forms::{
    adjacency_formula, laplacian_cycle_formula, laplacian_path_formula, signless_cycle_formula,
    signless_path_formula, star_formula, AdjacencyFamily,
};
use digspec::determination::{cospectral_mates, spectrum_of, SearchOptions};
use digspec::digraph::Digraph;
use digspec::eigen::{singular_values, MatrixKind, SingularSpectrum};
use digspec::iso::is_isomorphic;
use digspec::matrix::{adjacency_matrix, laplacian, signless_laplacian};
use digspec::verify::{run_suite, seed_from_env, SuiteReport, SUITES};
use digspec::arclist;

#[derive(Parser)]
#[command(name = "digspec", version, about = "Singular-value spectra of digraph matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "Q", alias = "q")]
    Q,
}

impl From<MatrixArg> for MatrixKind {
    fn from(m: MatrixArg) -> MatrixKind {
        match m {
            MatrixArg::A => MatrixKind::A,
            MatrixArg::L => MatrixKind::L,
            MatrixArg::Q => MatrixKind::Q,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Path,
    Cycle,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Cycle,
    Path,
    Outstar,
    File,
}

#[derive(Subcommand)]
enum Command {
    /// Singular-value spectrum of a digraph read from an arc-list file.
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        matrix: MatrixArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form spectrum of a named family, cross-checked numerically.
    ClosedForm {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        matrix: MatrixArg,
        #[arg(long)]
        n: usize,
        /// Star out-neighbours of the center.
        #[arg(long)]
        x: Option<usize>,
        /// Star in-neighbours of the center.
        #[arg(long)]
        y: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Self-check suites over identities, fixtures and random inputs.
    Verify {
        /// identities | fixtures | bipartite | interlacing | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Closed-form range for the identities suite (<= 1000).
        #[arg(long, default_value_t = 200)]
        n_max: usize,
    },
    /// Exhaustive search for cospectral mates of a target digraph.
    Cospectral {
        #[arg(value_enum)]
        target: TargetArg,
        #[arg(long, value_enum)]
        matrix: MatrixArg,
        #[arg(long)]
        n: Option<usize>,
        /// Arc-list file for target=file.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Scan the full arc-subset space instead of trace-filtered sizes.
        #[arg(long)]
        unpruned: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write the canonical arc-list file of a named family.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        y: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Rounds to 12 significant digits so JSON output diffs cleanly.
fn sig12(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        format!("{x:.11e}").parse().expect("rounded float reparses")
    }
}

#[derive(Serialize)]
struct SpectrumRecord {
    n: usize,
    matrix: &'static str,
    arcs: usize,
    zagreb_plus: usize,
    singular_values: Vec<f64>,
    trace_norm: f64,
    trace_identity_residual: f64,
}

impl SpectrumRecord {
    fn build(d: &Digraph, kind: MatrixKind) -> SpectrumRecord {
        let m = match kind {
            MatrixKind::A => adjacency_matrix(d),
            MatrixKind::L => laplacian(d),
            _ => signless_laplacian(d),
        };
        let s = singular_values(&m, kind).expect("digraph spectra converge");
        let expected = match kind {
            MatrixKind::A => d.arc_count() as f64,
            _ => (d.zagreb_plus() + d.arc_count()) as f64,
        };
        SpectrumRecord {
            n: d.n(),
            matrix: kind.label(),
            arcs: d.arc_count(),
            zagreb_plus: d.zagreb_plus(),
            singular_values: s.values.iter().map(|&v| sig12(v)).collect(),
            trace_norm: sig12(s.trace_norm()),
            trace_identity_residual: sig12((s.sum_of_squares() - expected).abs()),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("row,value\n");
        for (i, v) in self.singular_values.iter().enumerate() {
            out.push_str(&format!("sigma_{},{v}\n", i + 1));
        }
        out.push_str(&format!(
            "summary,n={};matrix={};arcs={};zagreb_plus={};trace_norm={};trace_identity_residual={}\n",
            self.n, self.matrix, self.arcs, self.zagreb_plus, self.trace_norm,
            self.trace_identity_residual
        ));
        out
    }
}

#[derive(Serialize)]
struct ClosedFormRecord {
    family: String,
    matrix: &'static str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y: Option<usize>,
    singular_values: Vec<f64>,
    trace_norm: f64,
    numeric_max_abs_diff: f64,
}

impl ClosedFormRecord {
    fn to_csv(&self) -> String {
        let mut out = String::from("row,value\n");
        for (i, v) in self.singular_values.iter().enumerate() {
            out.push_str(&format!("sigma_{},{v}\n", i + 1));
        }
        out.push_str(&format!(
            "summary,family={};matrix={};n={};trace_norm={};numeric_max_abs_diff={}\n",
            self.family, self.matrix, self.n, self.trace_norm, self.numeric_max_abs_diff
        ));
        out
    }
}

#[derive(Serialize)]
struct MateRecord {
    arcs: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct CospectralRecord {
    target_n: usize,
    target_arcs: Vec<(usize, usize)>,
    matrix: &'static str,
    mates: Vec<MateRecord>,
    mate_count: usize,
    candidates_examined: u64,
    candidates_after_trace_filter: u64,
    elapsed_seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    expectation_met: Option<bool>,
}

fn emit(output: &OutputArgs, json: String, csv: String) -> Result<(), String> {
    let body = match output.format {
        FormatArg::Json => json,
        FormatArg::Csv => csv,
    };
    let body = body.trim_end_matches('\n');
    match &output.out {
        None => {
            println!("{body}");
            Ok(())
        }
        Some(path) => std::fs::File::create(path)
            .and_then(|mut f| writeln!(f, "{body}"))
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn input_error(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn cmd_spectrum(input: &PathBuf, matrix: MatrixArg, output: &OutputArgs) -> ExitCode {
    let d = match arclist::read_file(input) {
        Ok(d) => d,
        Err(e) => return input_error(format!("{}: {e}", input.display())),
    };
    let record = SpectrumRecord::build(&d, matrix.into());
    let json = serde_json::to_string_pretty(&record).expect("record serializes");
    match emit(output, json, record.to_csv()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => input_error(e),
    }
}

fn closed_form_spectrum(
    family: FamilyArg,
    kind: MatrixKind,
    n: usize,
    x: Option<usize>,
    y: Option<usize>,
) -> Result<(SingularSpectrum, f64, Option<(usize, usize)>), String> {
    let err = |e| format!("invalid parameters: {e}");
    match (family, kind) {
        (FamilyArg::Star, MatrixKind::L | MatrixKind::Q) => {
            let (x, y) = star_params(n, x, y)?;
            let f = star_formula(x, y).map_err(err)?;
            Ok((f.spectrum, f.trace_norm, Some((x, y))))
        }
        (FamilyArg::Star, MatrixKind::A) => {
            let (x, y) = star_params(n, x, y)?;
            let s = adjacency_formula(AdjacencyFamily::Star, n, Some((x, y))).map_err(err)?;
            let tn = s.trace_norm();
            Ok((s, tn, Some((x, y))))
        }
        (FamilyArg::Cycle, MatrixKind::A) => {
            let s = adjacency_formula(AdjacencyFamily::Cycle, n, None).map_err(err)?;
            let tn = s.trace_norm();
            Ok((s, tn, None))
        }
        (FamilyArg::Path, MatrixKind::A) => {
            let s = adjacency_formula(AdjacencyFamily::Path, n, None).map_err(err)?;
            let tn = s.trace_norm();
            Ok((s, tn, None))
        }
        (FamilyArg::Cycle, MatrixKind::L) => {
            let f = laplacian_cycle_formula(n).map_err(err)?;
            Ok((f.spectrum, f.trace_norm, None))
        }
        (FamilyArg::Cycle, MatrixKind::Q) => {
            let f = signless_cycle_formula(n).map_err(err)?;
            Ok((f.spectrum, f.trace_norm, None))
        }
        (FamilyArg::Path, MatrixKind::L) => {
            let f = laplacian_path_formula(n).map_err(err)?;
            Ok((f.spectrum, f.trace_norm, None))
        }
        (FamilyArg::Path, MatrixKind::Q) => {
            let f = signless_path_formula(n).map_err(err)?;
            Ok((f.spectrum, f.trace_norm, None))
        }
        (_, MatrixKind::Raw) => unreachable!("raw is not a CLI matrix"),
    }
}

fn star_params(n: usize, x: Option<usize>, y: Option<usize>) -> Result<(usize, usize), String> {
    match (x, y) {
        (Some(x), Some(y)) if x + y + 1 == n && x + y > 0 => Ok((x, y)),
        (Some(x), None) if x + 1 <= n && n >= 2 => Ok((x, n - 1 - x)),
        (None, Some(y)) if y + 1 <= n && n >= 2 => Ok((n - 1 - y, y)),
        (None, None) if n >= 2 => Ok((n - 1, 0)),
        _ => Err(format!("star parameters must satisfy x + y + 1 = n (n = {n})")),
    }
}

fn family_digraph(
    family: FamilyArg,
    n: usize,
    params: Option<(usize, usize)>,
) -> Result<Digraph, String> {
    let err = |e| format!("invalid parameters: {e}");
    match family {
        FamilyArg::Cycle => Digraph::directed_cycle(n).map_err(err),
        FamilyArg::Path => Digraph::directed_path(n).map_err(err),
        FamilyArg::Star => {
            let (x, y) = params.expect("star params resolved");
            Digraph::oriented_star(x, y).map_err(err)
        }
    }
}

fn cmd_closed_form(
    family: FamilyArg,
    matrix: MatrixArg,
    n: usize,
    x: Option<usize>,
    y: Option<usize>,
    output: &OutputArgs,
) -> ExitCode {
    let kind: MatrixKind = matrix.into();
    let (spectrum, trace_norm, params) = match closed_form_spectrum(family, kind, n, x, y) {
        Ok(v) => v,
        Err(e) => return input_error(e),
    };
    let d = match family_digraph(family, n, params) {
        Ok(d) => d,
        Err(e) => return input_error(e),
    };
    let diff = spectrum.max_abs_diff(&spectrum_of(kind, &d));
    let record = ClosedFormRecord {
        family: format!("{:?}", family).to_lowercase(),
        matrix: kind.label(),
        n,
        x: params.map(|p| p.0),
        y: params.map(|p| p.1),
        singular_values: spectrum.values.iter().map(|&v| sig12(v)).collect(),
        trace_norm: sig12(trace_norm),
        numeric_max_abs_diff: sig12(diff),
    };
    let json = serde_json::to_string_pretty(&record).expect("record serializes");
    if let Err(e) = emit(output, json, record.to_csv()) {
        return input_error(e);
    }
    if diff > 1e-8 {
        eprintln!("closed form deviates from numeric spectrum by {diff:e}");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn print_suite(report: &SuiteReport) {
    for check in &report.checks {
        let mark = if check.pass { "ok " } else { "FAIL" };
        println!("[{mark}] {}/{}: {}", report.suite, check.name, check.detail);
    }
}

fn cmd_verify(suite: &str, n_max: usize) -> ExitCode {
    if n_max > 1000 {
        return input_error("n-max is capped at 1000".into());
    }
    let seed = seed_from_env();
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![suite]
    };
    let mut first_failure: Option<String> = None;
    for name in names {
        let Some(mut report) = run_suite(name, seed) else {
            return input_error(format!("unknown suite {name:?}"));
        };
        if name == "identities" {
            report = digspec::verify::identities_suite(n_max, 1000, seed);
        }
        print_suite(&report);
        if first_failure.is_none() {
            if let Some(c) = report.checks.iter().find(|c| !c.pass) {
                first_failure = Some(format!("{}/{}", report.suite, c.name));
            }
        }
    }
    match first_failure {
        None => ExitCode::SUCCESS,
        Some(name) => {
            eprintln!("verification failed: {name}");
            ExitCode::FAILURE
        }
    }
}

/// Exit-0 expectation for named cospectral targets. Cycle and out-star
/// have no L/Q mates; the path's L/Q mates are exactly the interior-sink
/// orientations of the path (sign-similar tridiagonal Gram matrices).
/// Under A, the path's companion cycle-plus-isolated-vertex and the
/// reversed star must show up, and the cycle has mates exactly when
/// n >= 4 (any disjoint cover by directed cycles shares its adjacency
/// spectrum).
fn cospectral_expectation(
    target: TargetArg,
    kind: MatrixKind,
    n: usize,
    mates: &[Digraph],
) -> Option<bool> {
    let contains = |expected: &Digraph| {
        mates
            .iter()
            .any(|m| is_isomorphic(m, expected).expect("orders match"))
    };
    match (target, kind) {
        (TargetArg::File, _) => None,
        (TargetArg::Path, MatrixKind::L | MatrixKind::Q) => Some(
            digspec::determination::same_up_to_iso(
                mates,
                &digspec::determination::path_interior_sink_mates(n),
            )
            .expect("orders match"),
        ),
        (_, MatrixKind::L | MatrixKind::Q) => Some(mates.is_empty()),
        (TargetArg::Path, MatrixKind::A) => {
            let companion = Digraph::directed_cycle(n - 1)
                .expect("n >= 3")
                .disjoint_union(&Digraph::k1());
            Some(contains(&companion))
        }
        (TargetArg::Outstar, MatrixKind::A) => {
            let reversed = Digraph::oriented_star(0, n - 1).expect("n >= 2");
            Some(n == 2 || contains(&reversed))
        }
        (TargetArg::Cycle, MatrixKind::A) => Some((n >= 4) == !mates.is_empty()),
        (_, MatrixKind::Raw) => None,
    }
}

fn cmd_cospectral(
    target: TargetArg,
    matrix: MatrixArg,
    n: Option<usize>,
    input: Option<&PathBuf>,
    jobs: usize,
    unpruned: bool,
    output: &OutputArgs,
) -> ExitCode {
    let kind: MatrixKind = matrix.into();
    let digraph = match target {
        TargetArg::File => match input {
            None => return input_error("target=file requires --input".into()),
            Some(path) => match arclist::read_file(path) {
                Ok(d) => d,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            },
        },
        named => {
            let Some(n) = n else {
                return input_error("named targets require --n".into());
            };
            let built = match named {
                TargetArg::Cycle => Digraph::directed_cycle(n),
                TargetArg::Path => Digraph::directed_path(n),
                TargetArg::Outstar => Digraph::oriented_star(n.saturating_sub(1), 0),
                TargetArg::File => unreachable!(),
            };
            match built {
                Ok(d) => d,
                Err(e) => return input_error(format!("invalid parameters: {e}")),
            }
        }
    };
    let opts = SearchOptions { pruned: !unpruned, jobs, progress: true };
    let report = match cospectral_mates(&digraph, kind, &opts) {
        Ok(r) => r,
        Err(e) => return input_error(e.to_string()),
    };
    let expectation = cospectral_expectation(target, kind, digraph.n(), &report.mates);
    let record = CospectralRecord {
        target_n: digraph.n(),
        target_arcs: digraph.arcs().to_vec(),
        matrix: kind.label(),
        mates: report
            .mates
            .iter()
            .map(|m| MateRecord { arcs: m.arcs().to_vec() })
            .collect(),
        mate_count: report.mates.len(),
        candidates_examined: report.candidates_examined,
        candidates_after_trace_filter: report.candidates_after_trace_filter,
        elapsed_seconds: sig12(report.elapsed.as_secs_f64()),
        expectation_met: expectation,
    };
    let json = serde_json::to_string_pretty(&record).expect("record serializes");
    let csv = format!(
        "row,value\nmate_count,{}\ncandidates_examined,{}\ncandidates_after_trace_filter,{}\n",
        record.mate_count, record.candidates_examined, record.candidates_after_trace_filter
    );
    if let Err(e) = emit(output, json, csv) {
        return input_error(e);
    }
    match expectation {
        Some(false) => {
            eprintln!("cospectral result contradicts the determination expectation");
            ExitCode::FAILURE
        }
        _ => ExitCode::SUCCESS,
    }
}

fn cmd_generate(
    family: FamilyArg,
    n: usize,
    x: Option<usize>,
    y: Option<usize>,
    out: &PathBuf,
) -> ExitCode {
    let params = if matches!(family, FamilyArg::Star) {
        match star_params(n, x, y) {
            Ok(p) => Some(p),
            Err(e) => return input_error(e),
        }
    } else {
        None
    };
    let d = match family_digraph(family, n, params) {
        Ok(d) => d,
        Err(e) => return input_error(e),
    };
    match arclist::write_file(&d, out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => input_error(format!("cannot write {}: {e}", out.display())),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Spectrum { input, matrix, output } => cmd_spectrum(&input, matrix, &output),
        Command::ClosedForm { family, matrix, n, x, y, output } => {
            cmd_closed_form(family, matrix, n, x, y, &output)
        }
        Command::Verify { suite, n_max } => cmd_verify(&suite, n_max),
        Command::Cospectral { target, matrix, n, input, jobs, unpruned, output } => {
            cmd_cospectral(target, matrix, n, input.as_ref(), jobs, unpruned, &output)
        }
        Command::Generate { family, n, x, y, out } => cmd_generate(family, n, x, y, &out),
    }
}
