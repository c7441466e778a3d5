//! The `schubreg` command line.
//!
//! Exit codes: 0 ok, 1 usage or invalid input, 2 internal discrepancy between
//! the two routes (or a failed theorem check), 3 a conjecture check failed.
//!
//! `analyze --json` prints a [`RegularityReport`]; its field names `reg`,
//! `h_coeffs`, `dim`, `height`, `covexillary`, `cm_status`, `method` and
//! `kl_degree` are stable. `scan --cache FILE` keeps one `ScanRecord` per
//! line with fields `n`, `v`, `w`, `reg`, `formula_reg`, `h_coeffs`, `dim`,
//! `height`, `covexillary`, `cm_status`, `method`, `kernel_version`,
//! `elapsed_ms` and, for pairs that ran out of budget, `error`.
//!
//! `SCHUBREG_BUDGET_MS` sets the default for `--budget-ms`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::gb::{Budget, GbError};
use crate::groth::{groth_spec_1mq, grothendieck, vexillary_degree_formula};
use crate::ideal::{generic_matrix, kl_generators, GeneratorMode};
use crate::perm::{PermError, Permutation};
use crate::reg::{
    check_conjectures, finalps_check, max_reg_scan, regularity, Check, Flag, Method, RegError,
    RegOptions, RegularityReport, Restrict, ScanOptions, ScanSummary, KERNEL_VERSION,
};
use crate::shapes::{kappa, rrw_filling};

pub const SCAN_MAX_N: usize = 7;

#[derive(Debug, Parser)]
#[command(name = "schubreg", version, about = "Regularity of tangent cones of Schubert varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regularity of the tangent cone of X_w at e_v.
    Analyze(AnalyzeArgs),
    /// maxReg(n) over all Bruhat pairs, with conjecture checks.
    Scan(ScanArgs),
    /// Grothendieck polynomial of a permutation.
    Groth(GrothArgs),
    /// Run every available check on one pair.
    Verify(PairArgs),
    /// Write a Macaulay2 script reproducing the computation.
    #[command(name = "export-m2")]
    ExportM2(ExportArgs),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// The point e_v.
    #[arg(long, value_name = "PERM")]
    pub v: Permutation,
    /// The Schubert variety X_w.
    #[arg(long, value_name = "PERM")]
    pub w: Permutation,
    /// Wall-clock limit per Gröbner basis.
    #[arg(long, value_name = "MS", env = "SCHUBREG_BUDGET_MS")]
    pub budget_ms: Option<u64>,
}

impl PairArgs {
    fn budget(&self) -> Budget {
        self.budget_ms.map_or(Budget::UNLIMITED, Budget::ms)
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value = "auto", value_name = "auto|formula|groebner|both")]
    pub method: Method,
    #[arg(long)]
    pub json: bool,
    /// Also print the first N coefficients of the Poincaré series.
    #[arg(long, value_name = "N")]
    pub ps_order: Option<usize>,
    /// Also compute the Kazhdan–Lusztig polynomial.
    #[arg(long)]
    pub kl: bool,
    /// Generate the ideal from essential-set conditions only.
    #[arg(long)]
    pub essential: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=SCAN_MAX_N as u64))]
    pub n: u64,
    #[arg(long)]
    pub covexillary_only: bool,
    /// Comma-separated: h-nonneg, degree-bound, semicontinuity, coefficientwise, dual-path.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    pub checks: Option<Vec<Check>>,
    /// JSON-lines file of computed pairs; the scan resumes from it.
    #[arg(long, value_name = "FILE")]
    pub cache: Option<PathBuf>,
    /// Wall-clock limit for the whole scan; the result is then a lower bound.
    #[arg(long, value_name = "MS", env = "SCHUBREG_BUDGET_MS")]
    pub budget_ms: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GrothArgs {
    #[arg(long, value_name = "PERM")]
    pub w: Permutation,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(short = 'o', long = "output", value_name = "FILE")]
    pub output: PathBuf,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn reg_failure(e: RegError) -> Failure {
    match e {
        RegError::Perm(e @ (PermError::NotBelow { .. } | PermError::SizeMismatch { .. })) => {
            Failure::usage(format!("--v/--w: {e}"))
        }
        e @ RegError::FormulaInapplicable(_) => Failure::usage(format!("--method: {e}")),
        RegError::Gb(e @ GbError::Budget { .. }) => Failure::usage(format!("--budget-ms: {e}")),
        e @ RegError::Gb(GbError::TooManyVariables(_) | GbError::Ideal(_)) => Failure::usage(e.to_string()),
        e => Failure {
            code: 2,
            message: e.to_string(),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a, &mut out),
        Command::Scan(a) => scan(a, &mut out),
        Command::Groth(a) => groth(a, &mut out),
        Command::Verify(a) => verify(a, &mut out),
        Command::ExportM2(a) => export_m2(a, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn render_report(r: &RegularityReport) -> String {
    let mut s = String::new();
    let status = match r.cm_status {
        crate::reg::CmStatus::Proven => "proven",
        crate::reg::CmStatus::Conjectural => "conjectural, assumes Reg = deg H",
    };
    let _ = writeln!(s, "v             {}", r.v);
    let _ = writeln!(s, "w             {}", r.w);
    let _ = writeln!(s, "method        {}", r.method);
    let _ = writeln!(s, "reg           {} ({status})", opt(&r.reg));
    let _ = writeln!(s, "formula       {}", opt(&r.formula_reg));
    let _ = writeln!(s, "deg H         {}", opt(&r.groebner_reg));
    let _ = writeln!(s, "H             {}", opt(&r.h_coeffs));
    let _ = writeln!(s, "H(1)          {}", opt(&r.multiplicity));
    let _ = writeln!(s, "dim           {}", r.dim);
    let _ = writeln!(s, "height        {}", r.height);
    let _ = writeln!(s, "variables     {}", r.n_vars);
    let _ = writeln!(s, "covexillary   {}", r.covexillary);
    let _ = writeln!(s, "homogeneous   {}", opt(&r.homogeneous_ideal));
    let _ = writeln!(s, "kl degree     {}", opt(&r.kl_degree));
    if let Some(ps) = &r.ps_series {
        let terms: Vec<String> = ps.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "PS            {}", terms.join(", "));
    }
    if let Some(p) = &r.postulation {
        let _ = writeln!(s, "postulation   {}", p.post.map_or_else(|| "none".to_string(), |m| m.to_string()));
    }
    for (name, flag) in &r.conjecture_flags {
        let _ = writeln!(s, "check         {name}: {flag}");
    }
    if r.discrepant {
        let _ = writeln!(s, "DISCREPANT: formula and Gröbner routes disagree");
    }
    s
}

fn analyze(a: &AnalyzeArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let opts = RegOptions {
        method: a.method,
        budget: a.pair.budget(),
        mode: if a.essential { GeneratorMode::Essential } else { GeneratorMode::Full },
        kl: a.kl,
        ps_order: a.ps_order,
        ..Default::default()
    };
    let r = regularity(&a.pair.v, &a.pair.w, &opts).map_err(reg_failure)?;
    if a.json {
        let json = serde_json::to_string_pretty(&r).map_err(|e| Failure::usage(e.to_string()))?;
        writeln!(out, "{json}")?;
    } else {
        write!(out, "{}", render_report(&r))?;
        if r.covexillary {
            let k = kappa(&r.v, &r.w).map_err(|e| reg_failure(e.into()))?;
            let filling = rrw_filling(&r.v, &r.w).map_err(|e| reg_failure(e.into()))?;
            writeln!(out, "kappa         {}", k.kappa)?;
            writeln!(out, "RRW filling:")?;
            write!(out, "{filling}")?;
        }
    }
    Ok(if r.discrepant { 2 } else { 0 })
}

fn scan(a: &ScanArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let restrict = if a.covexillary_only { Restrict::CovexillaryOnly } else { Restrict::All };
    let checks = match &a.checks {
        Some(c) => c.clone(),
        None if a.covexillary_only => vec![Check::DegreeBound, Check::Semicontinuity],
        None => Check::ALL.to_vec(),
    };
    let opts = ScanOptions {
        restrict,
        checks,
        total_ms: a.budget_ms,
        cache: a.cache.clone(),
        ..ScanOptions::new(a.n as usize)
    };
    let summary: ScanSummary = max_reg_scan(&opts)?;
    if summary.from_cache > 0 {
        eprintln!("{} pairs read from cache", summary.from_cache);
    }
    if a.json {
        let json = serde_json::to_string_pretty(&summary).map_err(|e| Failure::usage(e.to_string()))?;
        writeln!(out, "{json}")?;
    } else {
        write!(out, "{summary}")?;
    }
    if summary.failures.iter().any(|f| f.check == Check::DualPath) {
        return Ok(2);
    }
    Ok(if summary.has_failures() { 3 } else { 0 })
}

fn groth(a: &GrothArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let g = grothendieck(&a.w).map_err(|e| Failure::usage(e.to_string()))?;
    let spec = groth_spec_1mq(&a.w).map_err(|e| Failure::usage(e.to_string()))?;
    let degree = g.degree().unwrap_or(0) as usize;
    let vex = if a.w.is_vexillary() {
        Some(vexillary_degree_formula(&a.w).map_err(|e| Failure::usage(e.to_string()))?)
    } else {
        None
    };
    if a.json {
        let value = serde_json::json!({
            "w": a.w,
            "polynomial": g.to_string(),
            "degree": degree,
            "length": a.w.length(),
            "vexillary": a.w.is_vexillary(),
            "vexillary_formula": vex,
            "at_one_minus_q": spec,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&value).map_err(|e| Failure::usage(e.to_string()))?)?;
    } else {
        writeln!(out, "G_{} = {g}", a.w)?;
        writeln!(out, "degree        {degree}")?;
        writeln!(out, "length        {}", a.w.length())?;
        writeln!(out, "vexillary     {}", a.w.is_vexillary())?;
        writeln!(out, "formula       {}", opt(&vex))?;
        writeln!(out, "G(1-q)        {spec}")?;
    }
    Ok(if vex.is_some_and(|d| d != degree) { 2 } else { 0 })
}

fn verify(a: &PairArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let budget = a.budget();
    let covexillary = a.w.is_covexillary();
    let opts = RegOptions {
        method: if covexillary { Method::Both } else { Method::Groebner },
        budget,
        kl: true,
        ..Default::default()
    };
    let r = regularity(&a.v, &a.w, &opts).map_err(reg_failure)?;
    write!(out, "{}", render_report(&r))?;
    let mut flags: BTreeMap<String, Flag> = check_conjectures(&a.v, &a.w, budget).map_err(reg_failure)?;
    if covexillary {
        let f = finalps_check(&a.v, &a.w, budget).map_err(reg_failure)?;
        flags.insert("finalps".into(), Flag::from_bool(f.holds));
    }
    if let (Some(reg), Some(d)) = (r.reg, r.kl_degree) {
        let info = if reg <= d { "yes" } else { "no" };
        writeln!(out, "reg <= deg P  {info} (informational)")?;
    }
    let theorem = ["reg_equals_deg_h", "kl_degree_equals_reg", "finalps"];
    let mut code = 0;
    for (name, flag) in &flags {
        writeln!(out, "{name}: {flag}")?;
        if *flag == Flag::Fail {
            let c = if covexillary && theorem.contains(&name.as_str()) { 2 } else { 3 };
            if code == 0 || c == 2 {
                code = c;
            }
        }
    }
    if r.discrepant {
        code = 2;
    }
    if code != 0 {
        writeln!(out, "reproduce: schubreg verify --v {} --w {}", a.v, a.w)?;
    }
    Ok(code)
}

/// `z_i_j` as the Macaulay2 indexed variable `z_(i,j)`.
fn m2_name(name: &str) -> String {
    let mut parts = name.splitn(3, '_');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(z), Some(i), Some(j)) => format!("{z}_({i},{j})"),
        _ => name.to_string(),
    }
}

/// Macaulay2 script for `I_{v,w}` and its tangent cone.
pub fn m2_script(v: &Permutation, w: &Permutation) -> Result<String, RegError> {
    Permutation::require_below(v, w)?;
    let ideal = kl_generators(v, w, GeneratorMode::Full).map_err(GbError::from)?;
    let names: Vec<String> = ideal.var_names.iter().map(|n| m2_name(n)).collect();
    let z = generic_matrix(v);
    let mut s = String::new();
    let _ = writeln!(s, "-- schubreg {KERNEL_VERSION}: Kazhdan-Lusztig ideal of v = {v}, w = {w}");
    let _ = writeln!(s, "-- generic matrix Z^(v); z_i_j is the variable z_(i,j), row i counted from the bottom:");
    for line in z.to_string().lines() {
        let _ = writeln!(s, "--   {line}");
    }
    if names.is_empty() {
        let _ = writeln!(s, "R = QQ[dummy];");
        let _ = writeln!(s, "I = ideal(dummy);");
    } else {
        let _ = writeln!(s, "R = QQ[{}];", names.join(", "));
        let gens: Vec<String> = ideal.generators.iter().map(|g| g.fmt_with(&names)).collect();
        if gens.is_empty() {
            let _ = writeln!(s, "I = ideal(0_R);");
        } else {
            let _ = writeln!(s, "I = ideal(\n  {}\n);", gens.join(",\n  "));
        }
    }
    let _ = writeln!(s, "C = tangentCone I;");
    let _ = writeln!(s, "M = comodule C;");
    let _ = writeln!(s, "hs = hilbertSeries(M, Reduce => true);");
    let _ = writeln!(s, "F = res M;");
    let _ = writeln!(s, "print(\"dim=\" | toString dim M);");
    let _ = writeln!(s, "print(\"codim=\" | toString codim M);");
    let _ = writeln!(s, "print(\"degree=\" | toString degree M);");
    let _ = writeln!(s, "print(\"hilbert_series=\" | toString hs);");
    let _ = writeln!(s, "print(\"k_numerator=\" | toString numerator hilbertSeries M);");
    let _ = writeln!(s, "print(\"betti=\" | toString betti F);");
    let _ = writeln!(s, "print(\"reg=\" | toString regularity M);");
    Ok(s)
}

fn export_m2(a: &ExportArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let script = m2_script(&a.pair.v, &a.pair.w).map_err(reg_failure)?;
    fs::write(&a.output, script)
        .map_err(|e| Failure::usage(format!("-o {}: {e}", a.output.display())))?;
    writeln!(out, "wrote {}", a.output.display())?;
    Ok(0)
}
