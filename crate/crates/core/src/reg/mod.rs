//! Regularity reports, conjecture checks and maxReg scans.

mod kl;
mod scan;

pub use kl::{kl_polynomial, KlCache};
pub use scan::{
    max_reg_scan, read_cache, Check, FailureDump, Restrict, ScanOptions, ScanRecord, ScanSummary,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::gb::{self, is_homogeneous_ideal, Budget, GbError, Postulation};
use crate::groth::groth_spec_1mq;
use crate::ideal::{kl_generators, GeneratorMode};
use crate::perm::{PermError, Permutation};
use crate::poly::{Int, PolyError, UniPoly};
use crate::shapes::{kappa, regularity_formula, ShapeError};

pub const KERNEL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the formula needs a covexillary w; {0} contains 3412")]
    FormulaInapplicable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Formula,
    Groebner,
    Both,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "formula" => Ok(Method::Formula),
            "groebner" => Ok(Method::Groebner),
            "both" => Ok(Method::Both),
            _ => Err(format!("unknown method '{s}' (auto, formula, groebner, both)")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Auto => "auto",
            Method::Formula => "formula",
            Method::Groebner => "groebner",
            Method::Both => "both",
        };
        f.write_str(s)
    }
}

/// Whether the reported regularity is a theorem or rests on `Reg = deg H`
/// holding beyond the covexillary case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CmStatus {
    Proven,
    Conjectural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    Pass,
    Fail,
    NotCheckable,
}

impl Flag {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Flag::Pass
        } else {
            Flag::Fail
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Pass => "pass",
            Flag::Fail => "fail",
            Flag::NotCheckable => "not-checkable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub v: Permutation,
    pub w: Permutation,
    pub method: Method,
    pub reg: Option<usize>,
    pub formula_reg: Option<usize>,
    /// `deg H` from the Gröbner route.
    pub groebner_reg: Option<usize>,
    pub h_coeffs: Option<UniPoly>,
    pub multiplicity: Option<Int>,
    pub dim: usize,
    pub height: usize,
    pub n_vars: usize,
    pub covexillary: bool,
    pub cm_status: CmStatus,
    pub homogeneous_ideal: Option<bool>,
    pub kl_degree: Option<usize>,
    pub discrepant: bool,
    pub conjecture_flags: BTreeMap<String, Flag>,
    pub ps_series: Option<Vec<Int>>,
    pub postulation: Option<Postulation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegOptions {
    pub method: Method,
    /// With `Method::Auto`, run both routes on covexillary input.
    pub verify: bool,
    pub budget: Budget,
    pub mode: GeneratorMode,
    pub kl: bool,
    pub ps_order: Option<usize>,
}

impl Default for RegOptions {
    fn default() -> Self {
        RegOptions {
            method: Method::Auto,
            verify: false,
            budget: Budget::UNLIMITED,
            mode: GeneratorMode::Full,
            kl: false,
            ps_order: None,
        }
    }
}

impl RegOptions {
    pub fn with_method(method: Method) -> Self {
        RegOptions {
            method,
            ..Default::default()
        }
    }
}

fn resolve_method(method: Method, verify: bool, covexillary: bool, w: &Permutation) -> Result<Method, RegError> {
    match (method, covexillary) {
        (Method::Auto, true) => Ok(if verify { Method::Both } else { Method::Formula }),
        (Method::Auto, false) => Ok(Method::Groebner),
        (Method::Formula | Method::Both, false) => Err(RegError::FormulaInapplicable(w.to_string())),
        (m, _) => Ok(m),
    }
}

/// `Reg(R_{v,w})` by the requested route(s).
pub fn regularity(v: &Permutation, w: &Permutation, opts: &RegOptions) -> Result<RegularityReport, RegError> {
    Permutation::require_below(v, w)?;
    let n = w.n();
    let covexillary = w.is_covexillary();
    let method = resolve_method(opts.method, opts.verify, covexillary, w)?;
    let formula_reg = match method {
        Method::Formula | Method::Both => Some(regularity_formula(v, w)?),
        _ => None,
    };
    let mut report = RegularityReport {
        v: v.clone(),
        w: w.clone(),
        method,
        reg: None,
        formula_reg,
        groebner_reg: None,
        h_coeffs: None,
        multiplicity: None,
        dim: w.length() - v.length(),
        height: n * (n - 1) / 2 - w.length(),
        n_vars: n * (n - 1) / 2 - v.length(),
        covexillary,
        cm_status: if covexillary { CmStatus::Proven } else { CmStatus::Conjectural },
        homogeneous_ideal: None,
        kl_degree: None,
        discrepant: false,
        conjecture_flags: BTreeMap::new(),
        ps_series: None,
        postulation: None,
    };
    let needs_h = matches!(method, Method::Groebner | Method::Both) || opts.ps_order.is_some();
    if needs_h {
        let hd = gb::hilbert_data(v, w, opts.mode, opts.budget)?;
        let ideal = kl_generators(v, w, opts.mode).map_err(GbError::from)?;
        report.homogeneous_ideal = Some(if hd.tangent.homogeneous_input {
            true
        } else {
            is_homogeneous_ideal(&ideal, opts.budget)?
        });
        let h = hd.data.h.clone();
        if matches!(method, Method::Groebner | Method::Both) {
            report.groebner_reg = Some(h.degree().unwrap_or(0));
        }
        report.multiplicity = Some(hd.data.multiplicity());
        if let Some(order) = opts.ps_order {
            report.ps_series = Some(hd.data.hilbert_function(order));
        }
        report.postulation = Some(gb::postulation_number(&hd.data.k, hd.data.n_vars)?);
        report.h_coeffs = Some(h);
    }
    report.reg = report.formula_reg.or(report.groebner_reg);
    if let (Some(a), Some(b)) = (report.formula_reg, report.groebner_reg) {
        report.discrepant = a != b;
    }
    if opts.kl {
        report.kl_degree = KlCache::new().polynomial(v, w)?.degree();
    }
    report.conjecture_flags = local_flags(&report);
    Ok(report)
}

/// Checks that need only the pair itself.
fn local_flags(r: &RegularityReport) -> BTreeMap<String, Flag> {
    let mut flags = BTreeMap::new();
    let span = r.w.length() - r.v.length();
    if let Some(h) = &r.h_coeffs {
        flags.insert("h_nonnegative".into(), Flag::from_bool(h.has_nonnegative_coeffs()));
    }
    let bound = match r.reg {
        // At v = w the pair is a smooth point and the bound is vacuous.
        Some(_) if span == 0 => Flag::Pass,
        Some(reg) => Flag::from_bool(2 * reg < span),
        None => Flag::NotCheckable,
    };
    flags.insert("degree_bound".into(), bound);
    let reg_vs_h = match (r.covexillary, r.formula_reg, r.groebner_reg) {
        (true, Some(a), Some(b)) => Flag::from_bool(a == b),
        _ => Flag::NotCheckable,
    };
    flags.insert("reg_equals_deg_h".into(), reg_vs_h);
    let kl = match (r.covexillary, r.reg, r.kl_degree) {
        (true, Some(reg), Some(d)) => Flag::from_bool(reg == d),
        _ => Flag::NotCheckable,
    };
    flags.insert("kl_degree_equals_reg".into(), kl);
    flags
}

/// The Poincaré series of the tangent cone to order `order`, and `H(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsSeries {
    pub coeffs: Vec<Int>,
    pub multiplicity: Int,
    pub h: UniPoly,
    pub dim: usize,
}

pub fn ps_series(v: &Permutation, w: &Permutation, order: usize, budget: Budget) -> Result<PsSeries, RegError> {
    let hd = gb::hilbert_data(v, w, GeneratorMode::Full, budget)?;
    Ok(PsSeries {
        coeffs: hd.data.hilbert_function(order),
        multiplicity: hd.data.multiplicity(),
        h: hd.data.h,
        dim: hd.data.dim,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinalPs {
    pub g: UniPoly,
    pub h: UniPoly,
    pub exponent: usize,
    pub holds: bool,
}

/// `𝔊_{w0 κ(v,w)}(1 - q, …, 1 - q) = H_{v,w}(q) · (1 - q)^{C(n,2) - ℓ(w)}`:
/// the Poincaré series of the full local ring of `X_w` at `e_v` has
/// denominator `(1 - q)^{ℓ(w)}`.
pub fn finalps_check(v: &Permutation, w: &Permutation, budget: Budget) -> Result<FinalPs, RegError> {
    let k = kappa(v, w)?.kappa;
    let g = groth_spec_1mq(&k.w0_compose())?;
    let hd = gb::hilbert_data(v, w, GeneratorMode::Full, budget)?;
    let n = w.n();
    let exponent = n * (n - 1) / 2 - w.length();
    let rhs = hd.data.h.mul(&UniPoly::one_minus_q_pow(exponent));
    Ok(FinalPs {
        holds: g == rhs,
        g,
        h: hd.data.h,
        exponent,
    })
}

/// All checkable conjecture instances at `(v, w)`, including comparisons with
/// every `u` covered by `v`.
pub fn check_conjectures(
    v: &Permutation,
    w: &Permutation,
    budget: Budget,
) -> Result<BTreeMap<String, Flag>, RegError> {
    let covexillary = w.is_covexillary();
    let opts = RegOptions {
        method: if covexillary { Method::Both } else { Method::Groebner },
        budget,
        kl: w.n() <= 5,
        ..Default::default()
    };
    let here = regularity(v, w, &opts)?;
    let mut flags = here.conjecture_flags.clone();
    let below: Vec<Permutation> = v.bruhat_covers_down();
    let mut semi = Flag::Pass;
    let mut coeff = Flag::Pass;
    for u in &below {
        let there = regularity(u, w, &opts)?;
        if there.reg < here.reg {
            semi = Flag::Fail;
        }
        if let (Some(hu), Some(hv)) = (&there.h_coeffs, &here.h_coeffs) {
            let len = hu.coeffs().len().max(hv.coeffs().len());
            if (0..len).any(|t| hu.coeff(t) < hv.coeff(t)) {
                coeff = Flag::Fail;
            }
        }
    }
    flags.insert("semicontinuity".into(), semi);
    flags.insert("coefficientwise_semicontinuity".into(), coeff);
    if !covexillary {
        flags.insert("reg_equals_deg_h".into(), Flag::NotCheckable);
    }
    Ok(flags)
}
