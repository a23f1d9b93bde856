//! Command-line front end.
//!
//! `solve` exits with 0 (nonnegative solution), 1 (integer solution with a
//! negative entry), 2 (no integer solution) or 3 (bad input). Every other
//! command exits 0 on success and 3 on bad input; `verify` exits 1 when the
//! solution is rejected.

pub mod files;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd_max_minors, Integer};
use crate::cone::{t_size_bound, deep_cone_condition, lattice_index, shifted_cone_condition_m2};
use crate::error::{Error, Result};
use crate::frobenius::{box_shape, brauer_g, f_chain, frobenius_number_dp, DEFAULT_DP_CAP};
use crate::generate::{generate_instance, GenConfig, GenMode};
use crate::solver::{partition, solve_detailed, verify, Partition, ProblemInstance, SolveOutcome};

use files::{ConditionJson, InstanceFile, ResultFile, SingleRowJson, TwoRowJson, INTEGER_ONLY_NOTE};

pub const EXIT_NONNEGATIVE: i32 = 0;
pub const EXIT_INTEGER_ONLY: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "dbox", version, about = "Nonnegative integer solutions of A x = b by lattice box reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one instance (or every instance in a directory with --batch).
    Solve(SolveArgs),
    /// Report the sufficient conditions for a nonnegative solution.
    Check(IoArgs),
    /// Report threshold values that depend only on A.
    Bounds(IoArgs),
    /// Generate a random instance.
    Gen(GenArgs),
    /// Gcd chain, Brauer bound and (for small entries) the Frobenius number.
    Frobenius(FrobeniusArgs),
    /// Check that a vector is a nonnegative solution.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct IoArgs {
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(short = 'i', long = "input", required_unless_present = "batch", conflicts_with = "batch")]
    input: Option<PathBuf>,
    /// Output file, or output directory in batch mode.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Solve every `*.json` instance in this directory.
    #[arg(long)]
    batch: Option<PathBuf>,
    /// Include wall-clock timing in result files.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "feasible")]
    mode: String,
    #[arg(long = "max-entry", default_value_t = 20)]
    max_entry: i64,
    /// Draw only positive entries.
    #[arg(long)]
    positive: bool,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FrobeniusArgs {
    #[arg(required = true, allow_negative_numbers = true)]
    entries: Vec<String>,
    /// Largest modulus for the exact Frobenius number.
    #[arg(long, default_value_t = DEFAULT_DP_CAP)]
    cap: u64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Result file from `solve`, or a JSON array of integers.
    #[arg(short = 's', long = "solution", required_unless_present = "x", conflicts_with = "x")]
    solution: Option<PathBuf>,
    /// Comma-separated solution vector.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
}

/// Runs the CLI with the given arguments (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT_ERROR;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a, out, err),
        Command::Check(a) => cmd_check(&a, out),
        Command::Bounds(a) => cmd_bounds(&a, out),
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Frobenius(a) => cmd_frobenius(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn read_instance(path: &Path) -> Result<ProblemInstance> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    InstanceFile::parse(&text)
        .and_then(|f| f.to_instance())
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Error::Input(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Error::Input(e.to_string())),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serialises");
    s.push('\n');
    s
}

fn strings(v: &[Integer]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn exit_code(outcome: &SolveOutcome) -> i32 {
    match outcome {
        SolveOutcome::Nonnegative(_) => EXIT_NONNEGATIVE,
        SolveOutcome::IntegerOnly(..) => EXIT_INTEGER_ONLY,
        SolveOutcome::IntegerInfeasible => EXIT_INFEASIBLE,
    }
}

/// Single-row Brauer report for the coefficient vector with the basis column first.
fn single_row_report(inst: &ProblemInstance, part: &Partition) -> SingleRowJson {
    let coeffs: Vec<Integer> = part.order.iter().map(|&j| inst.a.get(0, j).clone()).collect();
    match brauer_g(&coeffs) {
        Ok(g) => SingleRowJson { applies: inst.b[0] > g, g: Some(g.to_string()) },
        Err(_) => SingleRowJson { g: None, applies: false },
    }
}

fn two_row_report(inst: &ProblemInstance, part: &Partition) -> Result<TwoRowJson> {
    let check = shifted_cone_condition_m2(&inst.a, &part.b_mat, &part.n_mat, &inst.b)?;
    Ok(TwoRowJson::from(&check))
}

/// Solves one instance and builds its result file.
pub fn solve_to_result(inst: &ProblemInstance, timing: bool) -> Result<(ResultFile, i32)> {
    let start = Instant::now();
    let report = solve_detailed(inst)?;
    let elapsed = start.elapsed();
    let part = &report.trace.partition;
    let condition = match &report.outcome {
        SolveOutcome::IntegerOnly(_, r) => r.clone(),
        _ => deep_cone_condition(&part.b_mat, &part.n_mat, &report.trace.gcd_a, &inst.b)?,
    };
    let result = ResultFile {
        status: ResultFile::status_for(&report.outcome).to_string(),
        x: report.outcome.solution().map(strings),
        note: matches!(report.outcome, SolveOutcome::IntegerOnly(..)).then(|| INTEGER_ONLY_NOTE.to_string()),
        basis_cols: part.basis_cols.iter().map(|c| c + 1).collect(),
        condition: ConditionJson::from(&condition),
        m1: (inst.m() == 1).then(|| single_row_report(inst, part)),
        m2: if inst.m() == 2 { Some(two_row_report(inst, part)?) } else { None },
        timing_ms: timing.then_some(elapsed.as_secs_f64() * 1e3),
    };
    Ok((result, exit_code(&report.outcome)))
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if let Some(dir) = &args.batch {
        return solve_batch(dir, args.output.as_deref(), args.timing, out, err);
    }
    let input = args.input.as_ref().expect("clap enforces --input without --batch");
    let inst = read_instance(input)?;
    let (result, code) = solve_to_result(&inst, args.timing)?;
    emit(&result.to_json(), args.output.as_deref(), out)?;
    Ok(code)
}

/// Instance files of a batch directory, sorted by name.
pub fn batch_inputs(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            p.is_file() && name.ends_with(".json") && !name.ends_with(".result.json")
        })
        .collect();
    files.sort();
    Ok(files)
}

fn solve_batch(dir: &Path, out_dir: Option<&Path>, timing: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let inputs = batch_inputs(dir)?;
    let target = out_dir.unwrap_or(dir);
    fs::create_dir_all(target).map_err(|e| Error::Input(format!("{}: {e}", target.display())))?;
    let results: Vec<(PathBuf, Result<String>)> = inputs
        .par_iter()
        .map(|path| {
            let res = read_instance(path).and_then(|inst| solve_to_result(&inst, timing)).and_then(|(result, _)| {
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
                let dest = target.join(format!("{stem}.result.json"));
                fs::write(&dest, result.to_json()).map_err(|e| Error::Input(format!("{}: {e}", dest.display())))?;
                Ok(result.status)
            });
            (path.clone(), res)
        })
        .collect();
    let mut code = 0;
    for (path, res) in results {
        match res {
            Ok(status) => {
                let _ = writeln!(out, "{}: {status}", path.display());
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                code = EXIT_INPUT_ERROR;
            }
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct TBoundJson {
    approx: f64,
    p_approx: f64,
    #[serde(rename = "det_AAT")]
    det_aat: String,
}

#[derive(Serialize)]
struct CheckSingleRow {
    f_chain: Vec<String>,
    #[serde(rename = "G")]
    g: Option<String>,
    b: String,
    b_above_g: bool,
}

#[derive(Serialize)]
struct CheckReport {
    m: usize,
    n: usize,
    basis_cols: Vec<usize>,
    gcd_a: String,
    det_b: String,
    lattice_det: String,
    l_n_sq: String,
    deep_cone: ConditionJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    m1: Option<CheckSingleRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m2: Option<TwoRowJson>,
    t_bound: TBoundJson,
    hermite_threshold: &'static str,
}

const NOT_EVALUATED: &str = "not evaluated";

fn t_bound_json(inst: &ProblemInstance) -> Result<TBoundJson> {
    let t = t_size_bound(inst.m(), inst.n(), &inst.a)?;
    Ok(TBoundJson { approx: t.bound, p_approx: t.p, det_aat: t.det_aat.to_string() })
}

fn cmd_check(args: &IoArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(&args.input)?;
    let part = partition(&inst)?;
    let gcd = gcd_max_minors(&inst.a, inst.m())?;
    let deep_cone = deep_cone_condition(&part.b_mat, &part.n_mat, &gcd, &inst.b)?;
    let m1 = if inst.m() == 1 {
        let coeffs: Vec<Integer> = part.order.iter().map(|&j| inst.a.get(0, j).clone()).collect();
        let g = brauer_g(&coeffs).ok();
        Some(CheckSingleRow {
            f_chain: f_chain(&coeffs).map(|f| strings(f.values())).unwrap_or_default(),
            b_above_g: g.as_ref().is_some_and(|g| inst.b[0] > *g),
            g: g.map(|g| g.to_string()),
            b: inst.b[0].to_string(),
        })
    } else {
        None
    };
    let report = CheckReport {
        m: inst.m(),
        n: inst.n(),
        basis_cols: part.basis_cols.iter().map(|c| c + 1).collect(),
        gcd_a: gcd.to_string(),
        det_b: part.det_b.to_string(),
        lattice_det: lattice_index(&part.b_mat, &gcd)?.to_string(),
        l_n_sq: part.n_mat.max_column_norm_sq().to_string(),
        deep_cone: ConditionJson::from(&deep_cone),
        m1,
        m2: if inst.m() == 2 { Some(two_row_report(&inst, &part)?) } else { None },
        t_bound: t_bound_json(&inst)?,
        hermite_threshold: NOT_EVALUATED,
    };
    emit(&to_json(&report), args.output.as_deref(), out)?;
    Ok(0)
}

#[derive(Serialize)]
struct BoundsReport {
    m: usize,
    n: usize,
    gcd_a: String,
    lattice_det: String,
    /// `l_N² (D - 1)²`, the squared depth required by the deep-cone test.
    deep_threshold_sq: String,
    #[serde(rename = "G", skip_serializing_if = "Option::is_none")]
    g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    box_shape: Option<Vec<String>>,
    /// `(l_B l_N (|det B| - 1) / |det B|)²`, the squared shift factor of the two-row test.
    #[serde(skip_serializing_if = "Option::is_none")]
    shift_sq: Option<String>,
    t_bound: TBoundJson,
    hermite_threshold: &'static str,
}

fn cmd_bounds(args: &IoArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(&args.input)?;
    let part = partition(&inst)?;
    let gcd = gcd_max_minors(&inst.a, inst.m())?;
    let d = lattice_index(&part.b_mat, &gcd)?;
    let one = crate::arith::Rational::from_integer(1.into());
    let excess = &d - &one;
    let deep = crate::arith::Rational::from_integer(part.n_mat.max_column_norm_sq()) * &excess * &excess;
    let (g, shape) = if inst.m() == 1 {
        let coeffs: Vec<Integer> = part.order.iter().map(|&j| inst.a.get(0, j).clone()).collect();
        (
            brauer_g(&coeffs).ok().map(|g| g.to_string()),
            box_shape(&coeffs).ok().map(|s| s.iter().map(ToString::to_string).collect()),
        )
    } else {
        (None, None)
    };
    let shift_sq = (inst.m() == 2).then(|| {
        let det = crate::arith::Rational::from_integer(num_traits::Signed::abs(&part.det_b));
        let factor = (&det - &one) / &det;
        let q = crate::arith::Rational::from_integer(part.b_mat.max_column_norm_sq() * part.n_mat.max_column_norm_sq());
        (q * &factor * &factor).to_string()
    });
    let report = BoundsReport {
        m: inst.m(),
        n: inst.n(),
        gcd_a: gcd.to_string(),
        lattice_det: d.to_string(),
        deep_threshold_sq: deep.to_string(),
        g,
        box_shape: shape,
        shift_sq,
        t_bound: t_bound_json(&inst)?,
        hermite_threshold: NOT_EVALUATED,
    };
    emit(&to_json(&report), args.output.as_deref(), out)?;
    Ok(0)
}

/// Generates an instance file; identical arguments give identical bytes.
pub fn generate_instance_json(cfg: &GenConfig, seed: u64) -> Result<String> {
    Ok(InstanceFile::from_instance(&generate_instance(cfg, seed)?).to_json())
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32> {
    let mode: GenMode = args.mode.parse()?;
    let mut cfg = GenConfig::new(args.m, args.n, mode);
    cfg.max_entry = args.max_entry;
    cfg.positive = args.positive;
    emit(&generate_instance_json(&cfg, args.seed)?, args.output.as_deref(), out)?;
    Ok(0)
}

#[derive(Serialize)]
struct FrobeniusReport {
    f: Vec<String>,
    #[serde(rename = "G")]
    g: String,
    #[serde(rename = "F", skip_serializing_if = "Option::is_none")]
    f_number: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_skipped: Option<String>,
}

fn cmd_frobenius(args: &FrobeniusArgs, out: &mut dyn Write) -> Result<i32> {
    let entries = files::parse_integers("entries", &args.entries)?;
    let chain = f_chain(&entries)?;
    let g = brauer_g(&entries)?;
    let (f_number, f_skipped) = match frobenius_number_dp(&entries, args.cap) {
        Ok(f) => (Some(f.to_string()), None),
        Err(e @ Error::CapExceeded { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let report = FrobeniusReport { f: strings(chain.values()), g: g.to_string(), f_number, f_skipped };
    emit(&to_json(&report), None, out)?;
    Ok(0)
}

fn read_solution(args: &VerifyArgs) -> Result<Vec<Integer>> {
    if let Some(x) = &args.x {
        let parts: Vec<String> = x.split(',').map(|s| s.trim().to_string()).collect();
        return files::parse_integers("x", &parts);
    }
    let path = args.solution.as_ref().expect("clap enforces --solution without --x");
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column())))?;
    let items = match &value {
        serde_json::Value::Array(a) => a.clone(),
        serde_json::Value::Object(o) => match o.get("x") {
            Some(serde_json::Value::Array(a)) => a.clone(),
            _ => return Err(Error::Input(format!("{}: no solution vector `x`", path.display()))),
        },
        _ => return Err(Error::Input(format!("{}: expected an array or a result object", path.display()))),
    };
    let texts: Vec<String> = items
        .iter()
        .map(|v| match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    files::parse_integers("x", &texts)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = read_instance(&args.input)?;
    let x = read_solution(args)?;
    let ok = verify(&inst.a, &inst.b, &x)?;
    let _ = writeln!(out, "{}", if ok { "valid" } else { "invalid" });
    Ok(if ok { 0 } else { 1 })
}
