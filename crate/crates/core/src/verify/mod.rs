//! Check registry and suite runner.
//!
//! Every check compares a computed left-hand side with a reference
//! right-hand side and emits one row per case. Rows are returned in
//! registry order whatever the degree of parallelism.

mod checks;
mod plot;
mod report;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::specfun::SpecFunConfig;
use crate::verdict::{Metric, Verdict};
use crate::zeros::{find_zeros, CriticalZero, ScanConfig, ZetaRoute};

pub use plot::{emit_plot_data, PlotKind, PlotRequest};
pub use report::{Report, Summary};

/// Static description of one check.
#[derive(Debug, Clone, Copy)]
pub struct CheckSpec {
    pub id: &'static str,
    pub anchor: &'static str,
    pub tolerance: f64,
    pub metric: Metric,
    pub summary: &'static str,
}

impl CheckSpec {
    /// Report section: the id up to the first dot.
    pub fn module(&self) -> &'static str {
        self.id.split('.').next().unwrap_or(self.id)
    }
}

macro_rules! check {
    ($id:literal, $anchor:literal, $tol:expr, $metric:ident, $summary:literal) => {
        CheckSpec {
            id: $id,
            anchor: $anchor,
            tolerance: $tol,
            metric: Metric::$metric,
            summary: $summary,
        }
    };
}

/// All checks, in report order.
pub const REGISTRY: [CheckSpec; 15] = [
    check!("xi.functional_equation", "§intro, \"$\\xi(s) = \\xi(1-s)$\"", 1e-9, Absolute,
        "max |ξ(s) - ξ(1-s)|/(1+|ξ(s)|) over σ ∈ [-2,3], t ∈ [0,40]"),
    check!("xi.no_zeros_outside_strip", "§intro, \"has no zeros in $\\sigma > 1$\"", 1e-6, Above,
        "ξ stays away from zero for σ ∉ [0,1]"),
    check!("zeros.first_ten", "§intro, \"$s_{n} = \\frac{1}{2} + it_{n}$\"", 1e-8, Absolute,
        "first ten ordinates agree between the Euler–Maclaurin and η routes"),
    check!("hadamard.convergence", "Eq. 38, \"($\\gamma$ is Euler's constant)\"", 0.1, Absolute,
        "partial products at s = 2 converge to ξ(2)"),
    check!("hadamard.b0_eq39", "Eq. 39, \"b_{0} = - \\frac{1}{2} \\gamma - 1\"", 1e-5, Absolute,
        "numerical d/ds ln ξ at 0 against the stated b₀"),
    check!("spectrum.real_negative", "Khuri, \"real and negative\"", 1e-12, Absolute,
        "zero-derived couplings are real"),
    check!("spectrum.below_quarter", "Khuri, \"such that $\\lambda_{n} < -\\frac{1}{4}$\"", 0.0, Below,
        "zero-derived couplings lie below -1/4"),
    check!("scatter.phase_match", "Eq. 8, \"$\\delta = \\frac{\\pi}{4} - \\frac{\\pi\\nu}{2}$\"", 1e-4, Absolute,
        "numerical S-matrix against e^{2iδ}"),
    check!("scatter.energy_independence", "Eq. 8, \"independent of energy\"", 1e-4, Absolute,
        "spread of the numerical S-matrix across a decade in k"),
    check!("scatter.jost_asymptotic", "Eq. 34, \"$f(k,r) \\rightarrow e^{ikr}$\"", 2e-2, Absolute,
        "f(k,r)e^{-ikr} approaches 1"),
    check!("scatter.k_integral_eq36pp", "Eq. 36″, \"follows from Eq. (36$'$)\"", 1e-8, Relative,
        "∫ r K_ν²(τr) dr against the stated closed form"),
    check!("scatter.reality_conclusion", "Eq. 32, \"can one conclude that\"", 1e-12, Above,
        "finite nonzero norm integral, hence Im λₙ(iτ) = 0"),
    check!("chi.lambda_roundtrip", "Eq. 27, \"$\\lambda$ is real positive\"", 1e-12, Absolute,
        "λ recovered from |ln χ| equals s(s-1)"),
    check!("chi.ratio_vs_direct", "Eq. 37, \"Their ratio, by Hadamard's theorem\"", 1e-6, Relative,
        "ξ(s)e^{α+βs} against the closed form of χ"),
    check!("chi.beta_eq41", "Eq. 41, \"We obtain the identification\"", 1e-6, Absolute,
        "β against B - b₀"),
];

pub fn find_check(id: &str) -> Option<&'static CheckSpec> {
    REGISTRY.iter().find(|c| c.id == id)
}

/// A compared quantity: real or complex.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Real(f64),
    Complex(Complex64),
}

impl Quantity {
    fn as_complex(self) -> Complex64 {
        match self {
            Quantity::Real(x) => Complex64::new(x, 0.0),
            Quantity::Complex(z) => z,
        }
    }

    pub fn magnitude(self) -> f64 {
        match self {
            Quantity::Real(x) => x.abs(),
            Quantity::Complex(z) => z.norm(),
        }
    }

    fn ordering_value(self) -> f64 {
        match self {
            Quantity::Real(x) => x,
            Quantity::Complex(z) => z.re,
        }
    }
}

impl From<f64> for Quantity {
    fn from(x: f64) -> Self {
        Quantity::Real(x)
    }
}

impl From<Complex64> for Quantity {
    fn from(z: Complex64) -> Self {
        Quantity::Complex(z)
    }
}

fn same_f64(a: f64, b: f64) -> bool {
    a == b || (a.is_nan() && b.is_nan())
}

impl PartialEq for Quantity {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Quantity::Real(a), Quantity::Real(b)) => same_f64(*a, *b),
            (Quantity::Complex(a), Quantity::Complex(b)) => same_f64(a.re, b.re) && same_f64(a.im, b.im),
            _ => false,
        }
    }
}

/// One row of the report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationResult {
    pub check_id: String,
    pub case: String,
    pub paper_anchor: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub metric: Metric,
    pub verdict: Verdict,
    pub note: String,
}

impl PartialEq for VerificationResult {
    fn eq(&self, o: &Self) -> bool {
        self.check_id == o.check_id
            && self.case == o.case
            && self.paper_anchor == o.paper_anchor
            && self.lhs == o.lhs
            && self.rhs == o.rhs
            && same_f64(self.abs_err, o.abs_err)
            && same_f64(self.rel_err, o.rel_err)
            && same_f64(self.tolerance, o.tolerance)
            && self.metric == o.metric
            && self.verdict == o.verdict
            && self.note == o.note
    }
}

impl VerificationResult {
    /// Compares `lhs` with `rhs` under `metric` and `tolerance`.
    pub fn compare(
        spec: &CheckSpec,
        case: impl Into<String>,
        lhs: impl Into<Quantity>,
        rhs: impl Into<Quantity>,
        metric: Metric,
        tolerance: f64,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let diff = (lhs.as_complex() - rhs.as_complex()).norm();
        // undefined against a zero reference; NaN also keeps JSON round trips exact
        let scale = rhs.magnitude();
        let rel_err = if scale == 0.0 { f64::NAN } else { diff / scale };
        let verdict = Verdict::from_pass(metric.passes(
            lhs.ordering_value(),
            rhs.ordering_value(),
            diff,
            rel_err,
            tolerance,
        ));
        Self {
            check_id: spec.id.to_string(),
            case: case.into(),
            paper_anchor: spec.anchor.to_string(),
            lhs,
            rhs,
            abs_err: diff,
            rel_err,
            tolerance,
            metric,
            verdict,
            note: String::new(),
        }
    }

    /// Row recording that the check could not be evaluated.
    pub fn not_applicable(spec: &CheckSpec, case: impl Into<String>, note: impl Into<String>) -> Self {
        Self {
            check_id: spec.id.to_string(),
            case: case.into(),
            paper_anchor: spec.anchor.to_string(),
            lhs: Quantity::Real(f64::NAN),
            rhs: Quantity::Real(f64::NAN),
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tolerance: spec.tolerance,
            metric: spec.metric,
            verdict: Verdict::NotApplicable,
            note: note.into(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

/// Which checks to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selection {
    All,
    Ids(Vec<String>),
}

/// Everything a suite run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub specfun: SpecFunConfig<f64>,
    /// Per-check tolerance overrides.
    pub tolerances: BTreeMap<String, f64>,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
    /// Upper end of the zero scan feeding the Hadamard and spectrum checks.
    pub zero_t_max: f64,
    pub scan_step: f64,
    /// Included in the config block only when set.
    pub timestamp: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            specfun: SpecFunConfig::default(),
            tolerances: BTreeMap::new(),
            jobs: 0,
            // the N = 100 Hadamard product needs t₁₀₀ ≈ 236.5
            zero_t_max: 240.0,
            scan_step: 0.05,
            timestamp: None,
        }
    }
}

impl RunConfig {
    pub fn tolerance(&self, spec: &CheckSpec) -> f64 {
        self.tolerances.get(spec.id).copied().unwrap_or(spec.tolerance)
    }

    /// Parses `id=value` and records it, rejecting unknown ids.
    pub fn set_tolerance(&mut self, assignment: &str) -> Result<()> {
        let (id, value) = assignment
            .split_once('=')
            .ok_or_else(|| LabError::Usage(format!("--tol expects id=value, got {assignment:?}")))?;
        let spec = find_check(id.trim()).ok_or_else(|| LabError::Usage(format!("unknown check id {id:?}")))?;
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| LabError::Usage(format!("tolerance for {id} is not a number: {value:?}")))?;
        if !(v >= 0.0) || !v.is_finite() {
            return Err(LabError::Usage(format!("tolerance for {id} must be finite and ≥ 0")));
        }
        self.tolerances.insert(spec.id.to_string(), v);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.specfun.validate().map_err(|e| LabError::Usage(e.to_string()))?;
        self.scan().validate().map_err(|e| LabError::Usage(e.to_string()))
    }

    fn scan(&self) -> ScanConfig<f64> {
        ScanConfig {
            t_min: 0.0,
            t_max: self.zero_t_max,
            step: self.scan_step,
            ..ScanConfig::default()
        }
    }
}

/// Shared state of one run: configuration plus lazily computed zero tables.
pub(crate) struct Context<'a> {
    pub cfg: &'a RunConfig,
    zeros: OnceLock<std::result::Result<Vec<CriticalZero<f64>>, String>>,
    eta_zeros: OnceLock<std::result::Result<Vec<CriticalZero<f64>>, String>>,
}

impl<'a> Context<'a> {
    fn new(cfg: &'a RunConfig) -> Self {
        Self {
            cfg,
            zeros: OnceLock::new(),
            eta_zeros: OnceLock::new(),
        }
    }

    pub fn spec(&self) -> &SpecFunConfig<f64> {
        &self.cfg.specfun
    }

    /// Zeros on `[0, zero_t_max]` by the Euler–Maclaurin route.
    pub fn zeros(&self) -> Result<&[CriticalZero<f64>]> {
        self.zeros
            .get_or_init(|| find_zeros(&self.cfg.scan(), ZetaRoute::EulerMaclaurin, self.spec()).map_err(|e| e.to_string()))
            .as_deref()
            .map_err(|e| LabError::Solver(e.clone()))
    }

    /// Zeros on `[0, 50]` by the alternating η route.
    pub fn eta_zeros(&self) -> Result<&[CriticalZero<f64>]> {
        self.eta_zeros
            .get_or_init(|| {
                let scan = ScanConfig {
                    t_max: 50.0,
                    ..self.cfg.scan()
                };
                find_zeros(&scan, ZetaRoute::Alternating, self.spec()).map_err(|e| e.to_string())
            })
            .as_deref()
            .map_err(|e| LabError::Solver(e.clone()))
    }
}

/// Resolves a selection to registry entries in registry order.
pub fn resolve(selection: &Selection) -> Result<Vec<&'static CheckSpec>> {
    match selection {
        Selection::All => Ok(REGISTRY.iter().collect()),
        Selection::Ids(ids) => {
            if ids.is_empty() {
                return Err(LabError::Usage("no checks selected".into()));
            }
            for id in ids {
                if find_check(id).is_none() {
                    return Err(LabError::Usage(format!("unknown check id {id:?}")));
                }
            }
            Ok(REGISTRY.iter().filter(|c| ids.iter().any(|i| i == c.id)).collect())
        }
    }
}

/// Runs the selected checks. A check that fails internally contributes one
/// NOT_APPLICABLE row carrying the diagnostic; the run continues.
pub fn run_suite(selection: &Selection, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let specs = resolve(selection)?;
    let ctx = Context::new(cfg);
    let run = |spec: &&'static CheckSpec| -> Vec<VerificationResult> {
        match checks::run(spec, &ctx) {
            Ok(rows) if !rows.is_empty() => rows,
            Ok(_) => vec![VerificationResult::not_applicable(spec, "all", "check produced no rows")],
            Err(e) => vec![VerificationResult::not_applicable(spec, "all", e.to_string())],
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| LabError::Usage(format!("cannot start {} workers: {e}", cfg.jobs)))?;
    let rows: Vec<Vec<VerificationResult>> = pool.install(|| specs.par_iter().map(run).collect());
    Ok(Report::new(cfg, rows.into_iter().flatten().collect()))
}
