use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CmStatus, Flag, Method, KERNEL_VERSION};
use crate::gb::{self, Budget};
use crate::ideal::GeneratorMode;
use crate::perm::{all_permutations, Permutation};
use crate::poly::UniPoly;
use crate::shapes::regularity_formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Restrict {
    All,
    CovexillaryOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    HNonneg,
    DegreeBound,
    Semicontinuity,
    Coefficientwise,
    DualPath,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::HNonneg,
        Check::DegreeBound,
        Check::Semicontinuity,
        Check::Coefficientwise,
        Check::DualPath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::HNonneg => "h-nonneg",
            Check::DegreeBound => "degree-bound",
            Check::Semicontinuity => "semicontinuity",
            Check::Coefficientwise => "coefficientwise",
            Check::DualPath => "dual-path",
        }
    }

    fn needs_h(self) -> bool {
        matches!(self, Check::HNonneg | Check::Coefficientwise | Check::DualPath)
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                format!("unknown check '{s}' ({})", names.join(", "))
            })
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub n: usize,
    pub restrict: Restrict,
    pub checks: Vec<Check>,
    /// Per pair.
    pub budget: Budget,
    /// Wall clock for the whole scan.
    pub total_ms: Option<u64>,
    pub cache: Option<PathBuf>,
    pub chunk: usize,
}

impl ScanOptions {
    pub fn new(n: usize) -> Self {
        ScanOptions {
            n,
            restrict: Restrict::All,
            checks: Check::ALL.to_vec(),
            budget: Budget::UNLIMITED,
            total_ms: None,
            cache: None,
            chunk: 256,
        }
    }

    fn needs_h(&self) -> bool {
        self.checks.iter().any(|c| c.needs_h())
    }
}

/// One line of the JSONL cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: usize,
    pub v: Permutation,
    pub w: Permutation,
    pub reg: Option<usize>,
    pub formula_reg: Option<usize>,
    pub h_coeffs: Option<UniPoly>,
    pub dim: usize,
    pub height: usize,
    pub covexillary: bool,
    pub cm_status: CmStatus,
    pub method: Method,
    pub kernel_version: String,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ScanRecord {
    fn usable(&self, n: usize, needs_h: bool) -> bool {
        self.n == n
            && self.kernel_version == KERNEL_VERSION
            && self.error.is_none()
            && (!needs_h || self.h_coeffs.is_some())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureDump {
    pub check: Check,
    pub v: Permutation,
    pub w: Permutation,
    pub u: Option<Permutation>,
    pub detail: String,
    pub repro: String,
}

impl fmt::Display for FailureDump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL {} at v={} w={}", self.check, self.v, self.w)?;
        if let Some(u) = &self.u {
            write!(f, " u={u}")?;
        }
        write!(f, ": {}\n  reproduce: {}", self.detail, self.repro)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub n: usize,
    pub restrict: Restrict,
    pub pairs_total: usize,
    pub pairs_done: usize,
    pub from_cache: usize,
    pub skipped_cache_lines: usize,
    pub max_reg: Option<usize>,
    pub maximizers: Vec<(Permutation, Permutation)>,
    /// Some pair is missing, so `max_reg` is only a lower bound.
    pub partial: bool,
    pub histogram: BTreeMap<usize, usize>,
    /// `check → [pass, fail, not-checkable]`.
    pub checks: BTreeMap<String, [usize; 3]>,
    pub failures: Vec<FailureDump>,
}

impl ScanSummary {
    pub fn has_failures(&self) -> bool {
        !self.failures.is_empty()
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = match self.restrict {
            Restrict::All => "all pairs",
            Restrict::CovexillaryOnly => "covexillary w",
        };
        writeln!(f, "n = {} ({scope})", self.n)?;
        writeln!(f, "pairs: {} of {}", self.pairs_done, self.pairs_total)?;
        match self.max_reg {
            Some(m) if self.partial => writeln!(f, "maxReg >= {m} (partial scan, lower bound)")?,
            Some(m) => writeln!(f, "maxReg = {m}")?,
            None => writeln!(f, "maxReg: no pair computed")?,
        }
        for (v, w) in &self.maximizers {
            writeln!(f, "  attained at v={v} w={w}")?;
        }
        let hist: Vec<String> = self.histogram.iter().map(|(r, c)| format!("{r}:{c}")).collect();
        writeln!(f, "reg histogram: {}", hist.join(" "))?;
        for (name, [pass, fail, nc]) in &self.checks {
            writeln!(f, "check {name}: {pass} pass, {fail} fail, {nc} not checkable")?;
        }
        for dump in &self.failures {
            writeln!(f, "{dump}")?;
        }
        Ok(())
    }
}

/// Reads a JSONL cache, skipping (and counting) lines that do not parse.
pub fn read_cache(path: &Path) -> io::Result<(Vec<ScanRecord>, usize)> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok((Vec::new(), 0)),
        Err(e) => return Err(e),
    };
    let mut records = Vec::new();
    let mut skipped = 0;
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<ScanRecord>(&line) {
            Ok(r) => records.push(r),
            Err(e) => {
                eprintln!("warning: {}:{}: skipping corrupt cache line ({e})", path.display(), lineno + 1);
                skipped += 1;
            }
        }
    }
    Ok((records, skipped))
}

fn scan_pairs(n: usize, restrict: Restrict) -> Vec<(Permutation, Permutation)> {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let mut pairs = Vec::new();
    for w in &perms {
        if restrict == Restrict::CovexillaryOnly && !w.is_covexillary() {
            continue;
        }
        for v in &perms {
            if v.length() <= w.length() && v.bruhat_leq_unchecked(w) {
                pairs.push((v.clone(), w.clone()));
            }
        }
    }
    pairs.sort_by(|a, b| {
        let da = a.1.length() - a.0.length();
        let db = b.1.length() - b.0.length();
        (da, &a.1, &a.0).cmp(&(db, &b.1, &b.0))
    });
    pairs
}

fn compute_record(v: &Permutation, w: &Permutation, needs_h: bool, budget: Budget) -> ScanRecord {
    let start = Instant::now();
    let n = w.n();
    let covexillary = w.is_covexillary();
    let mut record = ScanRecord {
        n,
        v: v.clone(),
        w: w.clone(),
        reg: None,
        formula_reg: None,
        h_coeffs: None,
        dim: w.length() - v.length(),
        height: n * (n - 1) / 2 - w.length(),
        covexillary,
        cm_status: if covexillary { CmStatus::Proven } else { CmStatus::Conjectural },
        method: if covexillary { Method::Formula } else { Method::Groebner },
        kernel_version: KERNEL_VERSION.to_string(),
        elapsed_ms: 0,
        error: None,
    };
    if covexillary {
        match regularity_formula(v, w) {
            Ok(r) => record.formula_reg = Some(r),
            Err(e) => record.error = Some(e.to_string()),
        }
    }
    if (!covexillary || needs_h) && record.error.is_none() {
        if covexillary {
            record.method = Method::Both;
        }
        match gb::hilbert_data(v, w, GeneratorMode::Full, budget) {
            Ok(hd) => record.h_coeffs = Some(hd.data.h),
            Err(e) => record.error = Some(e.to_string()),
        }
    }
    record.reg = record
        .formula_reg
        .or_else(|| record.h_coeffs.as_ref().map(|h| h.degree().unwrap_or(0)));
    record.elapsed_ms = start.elapsed().as_millis() as u64;
    record
}

fn rewrite_cache(path: &Path, records: &[&ScanRecord]) -> io::Result<()> {
    let tmp = path.with_extension("jsonl.tmp");
    {
        let mut out = BufWriter::new(File::create(&tmp)?);
        for r in records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
    }
    fs::rename(tmp, path)
}

/// Computes `Reg(R_{v,w})` for every Bruhat pair in `S_n`, shortest intervals
/// first, resuming from and appending to the cache if one is given.
pub fn max_reg_scan(opts: &ScanOptions) -> io::Result<ScanSummary> {
    let start = Instant::now();
    let needs_h = opts.needs_h();
    let pairs = scan_pairs(opts.n, opts.restrict);
    let mut done: HashMap<(Permutation, Permutation), ScanRecord> = HashMap::new();
    let mut skipped_cache_lines = 0;
    let mut writer = None;
    if let Some(path) = &opts.cache {
        let (records, skipped) = read_cache(path)?;
        skipped_cache_lines = skipped;
        let total = records.len();
        for r in records {
            if r.usable(opts.n, needs_h) {
                done.insert((r.v.clone(), r.w.clone()), r);
            }
        }
        if skipped > 0 || done.len() != total {
            let mut kept: Vec<&ScanRecord> = done.values().collect();
            kept.sort_by(|a, b| (&a.w, &a.v).cmp(&(&b.w, &b.v)));
            rewrite_cache(path, &kept)?;
        }
        writer = Some(BufWriter::new(OpenOptions::new().create(true).append(true).open(path)?));
    }
    let from_cache = pairs.iter().filter(|p| done.contains_key(*p)).count();
    let todo: Vec<&(Permutation, Permutation)> = pairs.iter().filter(|p| !done.contains_key(*p)).collect();
    let mut out_of_time = false;
    for chunk in todo.chunks(opts.chunk.max(1)) {
        if let Some(limit) = opts.total_ms {
            if start.elapsed().as_millis() as u64 >= limit {
                out_of_time = true;
                break;
            }
        }
        let fresh: Vec<ScanRecord> = chunk
            .par_iter()
            .map(|(v, w)| compute_record(v, w, needs_h, opts.budget))
            .collect();
        for r in fresh {
            if let Some(out) = writer.as_mut() {
                serde_json::to_writer(&mut *out, &r)?;
                out.write_all(b"\n")?;
            }
            done.insert((r.v.clone(), r.w.clone()), r);
        }
        if let Some(out) = writer.as_mut() {
            out.flush()?;
        }
    }
    Ok(summarize(opts, &pairs, &done, from_cache, skipped_cache_lines, out_of_time))
}

fn summarize(
    opts: &ScanOptions,
    pairs: &[(Permutation, Permutation)],
    done: &HashMap<(Permutation, Permutation), ScanRecord>,
    from_cache: usize,
    skipped_cache_lines: usize,
    out_of_time: bool,
) -> ScanSummary {
    let records: Vec<&ScanRecord> = pairs.iter().filter_map(|p| done.get(p)).collect();
    let complete = records.iter().filter(|r| r.reg.is_some()).count();
    let max_reg = records.iter().filter_map(|r| r.reg).max();
    let mut maximizers: Vec<(Permutation, Permutation)> = records
        .iter()
        .filter(|r| r.reg.is_some() && r.reg == max_reg)
        .map(|r| (r.v.clone(), r.w.clone()))
        .collect();
    maximizers.sort();
    let mut histogram = BTreeMap::new();
    for r in &records {
        if let Some(reg) = r.reg {
            *histogram.entry(reg).or_insert(0) += 1;
        }
    }
    let mut checks: BTreeMap<String, [usize; 3]> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut checks_sorted = opts.checks.clone();
    checks_sorted.sort();
    checks_sorted.dedup();
    for check in checks_sorted {
        let counts = checks.entry(check.name().to_string()).or_default();
        for r in &records {
            for (flag, u, detail) in run_check(check, r, done) {
                match flag {
                    Flag::Pass => counts[0] += 1,
                    Flag::Fail => {
                        counts[1] += 1;
                        failures.push(FailureDump {
                            check,
                            v: r.v.clone(),
                            w: r.w.clone(),
                            u,
                            detail,
                            repro: format!("schubreg verify --v {} --w {}", r.v, r.w),
                        });
                    }
                    Flag::NotCheckable => counts[2] += 1,
                }
            }
        }
    }
    ScanSummary {
        n: opts.n,
        restrict: opts.restrict,
        pairs_total: pairs.len(),
        pairs_done: complete,
        from_cache,
        skipped_cache_lines,
        max_reg,
        maximizers,
        partial: out_of_time || complete < pairs.len(),
        histogram,
        checks,
        failures,
    }
}

type CheckOutcome = (Flag, Option<Permutation>, String);

fn run_check(
    check: Check,
    r: &ScanRecord,
    done: &HashMap<(Permutation, Permutation), ScanRecord>,
) -> Vec<CheckOutcome> {
    let span = r.w.length() - r.v.length();
    match check {
        Check::HNonneg => vec![match &r.h_coeffs {
            Some(h) => (Flag::from_bool(h.has_nonnegative_coeffs()), None, format!("H = {h}")),
            None => (Flag::NotCheckable, None, String::new()),
        }],
        Check::DegreeBound => vec![match r.reg {
            Some(_) if span == 0 => (Flag::Pass, None, String::new()),
            Some(reg) => (
                Flag::from_bool(2 * reg < span),
                None,
                format!("reg {reg} with l(w) - l(v) = {span}"),
            ),
            None => (Flag::NotCheckable, None, String::new()),
        }],
        Check::DualPath => vec![match (r.covexillary, r.formula_reg, &r.h_coeffs) {
            (true, Some(a), Some(h)) => {
                let b = h.degree().unwrap_or(0);
                (Flag::from_bool(a == b), None, format!("formula {a}, deg H {b}"))
            }
            _ => (Flag::NotCheckable, None, String::new()),
        }],
        Check::Semicontinuity | Check::Coefficientwise => r
            .v
            .bruhat_covers_down()
            .into_iter()
            .map(|u| {
                let Some(lower) = done.get(&(u.clone(), r.w.clone())) else {
                    return (Flag::NotCheckable, Some(u), String::new());
                };
                if check == Check::Semicontinuity {
                    match (lower.reg, r.reg) {
                        (Some(a), Some(b)) => {
                            (Flag::from_bool(a >= b), Some(u), format!("reg at u {a} < reg at v {b}"))
                        }
                        _ => (Flag::NotCheckable, Some(u), String::new()),
                    }
                } else {
                    match (&lower.h_coeffs, &r.h_coeffs) {
                        (Some(hu), Some(hv)) => {
                            let len = hu.coeffs().len().max(hv.coeffs().len());
                            let ok = (0..len).all(|t| hu.coeff(t) >= hv.coeff(t));
                            (Flag::from_bool(ok), Some(u), format!("H at u = {hu}, H at v = {hv}"))
                        }
                        _ => (Flag::NotCheckable, Some(u), String::new()),
                    }
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_scan() {
        let summary = max_reg_scan(&ScanOptions::new(3)).unwrap();
        assert_eq!(summary.pairs_total, 19);
        assert_eq!(summary.max_reg, Some(0));
        assert!(!summary.partial);
        assert!(!summary.has_failures());
    }

    #[test]
    fn s4_scan() {
        let summary = max_reg_scan(&ScanOptions::new(4)).unwrap();
        assert_eq!(summary.max_reg, Some(1));
        assert!(!summary.partial);
        assert!(!summary.has_failures());
        assert!(summary
            .maximizers
            .contains(&(Permutation::identity(4), "3412".parse().unwrap())));
    }

    #[test]
    fn check_names() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }
}
