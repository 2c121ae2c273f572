//! Analysis pipeline and report serialization used by the `wsd` binary.
//!
//! A report runs, in order: metrics and weight distribution, the rotation
//! identities on dense states (small `n` only), the inequalities over the
//! θ-grid, the λ-family inequality and the per-weight bound table.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    binomial_baseline, bound_entropy, bound_sqrt_e, doubly_even_bound, lambda_family_check,
    lambda_grid, tightest_bound_report, BoundError, BoundReport, BoundValue,
};
use crate::enumerators::{macwilliams_transform, EnumeratorError};
use crate::gf2::{
    code_metrics, dual_code, is_weakly_self_dual, weight_distribution, BinaryCode, CodeMetrics,
    Gf2Error, WeightDistribution, ENUMERATION_CAP,
};
use crate::gmat::{parse_gmat, GmatError};
use crate::hilbert::{
    apply_s_theta, closed_form_word, code_state, dual_component_mass_by_projection,
    enumerator_inequality_from, self_dual_sum_bound, self_dual_sum_from_dual, theta_grid,
    CosetProfile, HilbertError, StateVector, STATE_CAP,
};
use crate::prng::CounterRng;
use crate::zoo::{zoo, ZooError};

pub const SCHEMA: &str = "wsd-report/1";

/// Agreement required between simulated and closed-form amplitudes.
pub const AMPLITUDE_TOLERANCE: f64 = 1e-10;
/// Agreement required between the combinatorial and projected masses.
pub const PROJECTION_TOLERANCE: f64 = 1e-8;
/// Largest length for which the projection cross-check runs on every θ.
pub const PROJECTION_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisOptions {
    pub theta_steps: usize,
    pub lambda_steps: usize,
    pub tolerance: f64,
    pub require_wsd: bool,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            theta_steps: 101,
            lambda_steps: 99,
            tolerance: 1e-9,
            require_wsd: false,
            seed: 0,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error("{path}: {source}")]
    Parse { path: String, source: GmatError },
    #[error("{0}")]
    Io(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid arguments: {0}")]
    Usage(String),
}

impl AnalysisError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::Capacity(_) => 3,
            _ => 2,
        }
    }
}

impl From<Gf2Error> for AnalysisError {
    fn from(e: Gf2Error) -> Self {
        match e {
            Gf2Error::Capacity { .. } => AnalysisError::Capacity(e.to_string()),
            other => AnalysisError::Precondition(other.to_string()),
        }
    }
}

impl From<HilbertError> for AnalysisError {
    fn from(e: HilbertError) -> Self {
        match e {
            HilbertError::StateCapacity { .. }
            | HilbertError::WorkCapacity { .. }
            | HilbertError::Capacity { .. } => AnalysisError::Capacity(e.to_string()),
            HilbertError::Gf2(g) => g.into(),
            other => AnalysisError::Precondition(other.to_string()),
        }
    }
}

impl From<EnumeratorError> for AnalysisError {
    fn from(e: EnumeratorError) -> Self {
        AnalysisError::Precondition(e.to_string())
    }
}

impl From<BoundError> for AnalysisError {
    fn from(e: BoundError) -> Self {
        AnalysisError::Precondition(e.to_string())
    }
}

impl From<ZooError> for AnalysisError {
    fn from(e: ZooError) -> Self {
        match e {
            ZooError::Code(g) => g.into(),
            other => AnalysisError::Precondition(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
    /// Evaluated, but the code lies outside the derivation's hypotheses.
    OutsideHypotheses,
}

/// Result of one identity or inequality over its grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub description: &'static str,
    pub status: CheckStatus,
    /// Largest evaluated quantity (or deviation, for identity checks).
    pub worst_value: Option<f64>,
    /// Right-hand side the worst value is compared with.
    pub bound: Option<f64>,
    /// Smallest `bound - value` across the grid.
    pub worst_slack: Option<f64>,
    /// Grid parameter (θ, λ or w) at the worst point.
    pub worst_at: Option<f64>,
    pub points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    fn skipped(name: &'static str, description: &'static str, note: impl Into<String>) -> Self {
        Self {
            name,
            description,
            status: CheckStatus::Skipped,
            worst_value: None,
            bound: None,
            worst_slack: None,
            worst_at: None,
            points: 0,
            note: Some(note.into()),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Failed
    }
}

/// Tracks the tightest point of an inequality `value ≤ bound` over a grid.
struct Worst {
    value: f64,
    bound: f64,
    slack: f64,
    at: f64,
    points: usize,
    violated: bool,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: f64::NEG_INFINITY,
            bound: f64::NAN,
            slack: f64::INFINITY,
            at: f64::NAN,
            points: 0,
            violated: false,
        }
    }

    fn record(&mut self, at: f64, value: f64, bound: f64, allowed: f64) {
        let slack = bound - value;
        self.points += 1;
        let within = value <= bound + allowed;
        self.violated |= !within;
        if slack < self.slack || self.points == 1 {
            self.slack = slack;
            self.value = value;
            self.bound = bound;
            self.at = at;
        }
    }

    fn finish(self, name: &'static str, description: &'static str, status: Option<CheckStatus>) -> CheckResult {
        let status = status.unwrap_or(if self.violated {
            CheckStatus::Failed
        } else {
            CheckStatus::Passed
        });
        CheckResult {
            name,
            description,
            status,
            worst_value: Some(self.value),
            bound: Some(self.bound),
            worst_slack: Some(self.slack),
            worst_at: Some(self.at),
            points: self.points,
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub theta_steps: usize,
    pub theta_extra: [f64; 2],
    pub lambda_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodeSection {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub delta: Option<f64>,
    pub weakly_self_dual: bool,
    pub self_dual: bool,
    pub doubly_even: bool,
    pub distribution: Vec<u128>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub config: AnalysisOptions,
    pub grid: GridSpec,
    pub code: CodeSection,
    pub lemmas: Vec<CheckResult>,
    pub bounds: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds_note: Option<String>,
    pub passed: bool,
}

impl ReportDocument {
    /// Human-readable descriptions of every failed check.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .lemmas
            .iter()
            .filter(|c| c.failed())
            .map(|c| {
                format!(
                    "{}: {} = {:e} exceeds {:e} at {}",
                    self.code.name,
                    c.name,
                    c.worst_value.unwrap_or(f64::NAN),
                    c.bound.unwrap_or(f64::NAN),
                    c.worst_at.map_or("?".to_string(), |x| x.to_string())
                )
            })
            .collect();
        if let Some(b) = &self.bounds {
            if b.within_hypotheses {
                out.extend(
                    b.rows
                        .iter()
                        .filter(|r| !r.holds)
                        .map(|r| format!("{}: A_{} = {} exceeds a bound", self.code.name, r.w, r.count)),
                );
            }
        }
        out
    }
}

/// Weight distribution, going through the dual when the code itself is too
/// large to enumerate.
pub fn distribution_of(code: &BinaryCode) -> Result<WeightDistribution, AnalysisError> {
    if code.k() <= ENUMERATION_CAP {
        return Ok(weight_distribution(code)?);
    }
    let dual = dual_code(code);
    let dual_dist = weight_distribution(&dual)?;
    Ok(macwilliams_transform(&dual_dist, dual.k())?)
}

pub fn analyze_path(path: &Path, opts: &AnalysisOptions) -> Result<ReportDocument, AnalysisError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AnalysisError::Io(format!("{}: {e}", path.display())))?;
    let code = parse_gmat(&text).map_err(|source| AnalysisError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    analyze_code(&name, &code, opts)
}

pub fn analyze_code(
    name: &str,
    code: &BinaryCode,
    opts: &AnalysisOptions,
) -> Result<ReportDocument, AnalysisError> {
    if !(opts.tolerance >= 0.0 && opts.tolerance.is_finite()) {
        return Err(AnalysisError::Usage(format!("tolerance {} must be finite and nonnegative", opts.tolerance)));
    }
    let k = code.k();
    let wsd = is_weakly_self_dual(code);
    if opts.require_wsd && !wsd {
        return Err(AnalysisError::Precondition(format!(
            "{name} is not weakly self-dual (some pair of generators has odd inner product)"
        )));
    }
    let dist = distribution_of(code)?;
    let metrics = code_metrics(code, &dist).ok();
    let thetas = theta_grid(opts.theta_steps);

    let mut lemmas = vec![closed_form_check(code, opts.seed)?, norm_check(code, &thetas)?];
    let profile = CosetProfile::build(code)?;
    lemmas.push(dual_mass_check(&profile, &thetas, opts.tolerance));
    lemmas.push(projection_check(code, &profile, &thetas)?);

    let (bounds, bounds_note) = if wsd {
        let dual_dist = macwilliams_transform(&dist, k)?;
        lemmas.push(self_dual_sum_check(&dual_dist, k, &thetas, opts.tolerance));
        lemmas.push(enumerator_check(&dist, &thetas, opts.tolerance));
        lemmas.push(lambda_check(&dist, opts.lambda_steps)?);
        match &metrics {
            Some(m) => {
                let report = tightest_bound_report(code, &dist, m, opts.tolerance)?;
                (Some(report), None)
            }
            None => (None, Some("zero code: no nonzero weights to bound".to_string())),
        }
    } else {
        let why = "code is not weakly self-dual";
        lemmas.push(CheckResult::skipped("self_dual_sum", SELF_DUAL_SUM, why));
        lemmas.push(CheckResult::skipped("enumerator_inequality", ENUMERATOR_INEQ, why));
        lemmas.push(CheckResult::skipped("lambda_family", LAMBDA_FAMILY, why));
        (None, Some(why.to_string()))
    };
    if let Some(b) = &bounds {
        lemmas.push(weight_bounds_check(b));
    }

    let passed = !lemmas.iter().any(CheckResult::failed);
    Ok(ReportDocument {
        schema: SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        config: opts.clone(),
        grid: GridSpec {
            theta_lo: 0.01,
            theta_hi: PI - 0.01,
            theta_steps: opts.theta_steps,
            theta_extra: [PI / 4.0, PI / 2.0],
            lambda_steps: opts.lambda_steps,
        },
        code: code_section(name, code, &dist, metrics.as_ref(), wsd),
        lemmas,
        bounds,
        bounds_note,
        passed,
    })
}

fn code_section(
    name: &str,
    code: &BinaryCode,
    dist: &WeightDistribution,
    metrics: Option<&CodeMetrics>,
    wsd: bool,
) -> CodeSection {
    let doubly_even = dist
        .counts
        .iter()
        .enumerate()
        .all(|(w, &c)| c == 0 || w % 4 == 0);
    CodeSection {
        name: name.to_string(),
        n: code.n(),
        k: code.k(),
        d: metrics.map(|m| m.d),
        delta: metrics.map(CodeMetrics::delta_f64),
        weakly_self_dual: wsd,
        self_dual: wsd && 2 * code.k() == code.n(),
        doubly_even,
        distribution: dist.counts.clone(),
    }
}

const CLOSED_FORM: &str = "rotated basis states match the closed-form amplitudes";
const NORM: &str = "rotation of the code state preserves the norm";
const DUAL_MASS: &str = "mass of the rotated code state on the dual code is at most 1";
const PROJECTION: &str = "dual mass by enumeration agrees with projection of the dense state";
const SELF_DUAL_SUM: &str = "|sum over the dual of sin^(n-wt) cos^wt| <= 2^((n-2k)/2)";
const ENUMERATOR_INEQ: &str = "|sum over the code of (sin+cos)^(n-wt) (sin-cos)^wt| <= 2^(n/2)";
const LAMBDA_FAMILY: &str = "sum_j A_2j lambda^j <= (1+lambda)^(n/2)";
const WEIGHT_BOUNDS: &str = "every A_w with 0 < w < n/2 is under the entropy and sqrt(e) bounds";

fn closed_form_check(code: &BinaryCode, seed: u64) -> Result<CheckResult, AnalysisError> {
    let n = code.n();
    if n > STATE_CAP {
        return Ok(CheckResult::skipped(
            "closed_form_amplitude",
            CLOSED_FORM,
            format!("n = {n} exceeds the state cap {STATE_CAP}"),
        ));
    }
    let mut rng = CounterRng::new(seed);
    let mut inputs = vec![0u64];
    if let Some(&g) = code.rows().first() {
        inputs.push(g);
    }
    let msg = rng.next_u64() & crate::gf2::mask(code.k());
    inputs.push(code.encode(msg));

    let mut worst = Worst::new();
    for c in inputs {
        let theta = 0.05 + (PI - 0.1) * rng.next_f64();
        let out = apply_s_theta(&StateVector::basis(n, c)?, theta)?;
        let (s, co) = theta.sin_cos();
        let dev = out
            .amplitudes()
            .par_iter()
            .enumerate()
            .map(|(a, amp)| {
                let expect = closed_form_word(c, a as u64, n, s, co);
                (amp.re - expect).abs().max(amp.im.abs())
            })
            .reduce(|| 0.0, f64::max);
        worst.record(theta, dev, AMPLITUDE_TOLERANCE, 0.0);
    }
    Ok(worst.finish("closed_form_amplitude", CLOSED_FORM, None))
}

fn norm_check(code: &BinaryCode, thetas: &[f64]) -> Result<CheckResult, AnalysisError> {
    let n = code.n();
    if n > STATE_CAP {
        return Ok(CheckResult::skipped(
            "norm_preservation",
            NORM,
            format!("n = {n} exceeds the state cap {STATE_CAP}"),
        ));
    }
    let state = code_state(code)?;
    let mut worst = Worst::new();
    // a handful of angles is enough; the dense pass is the expensive part
    let picks: Vec<f64> = thetas.iter().step_by(thetas.len().div_ceil(5).max(1)).copied().collect();
    for theta in picks {
        let dev = (apply_s_theta(&state, theta)?.norm() - 1.0).abs();
        worst.record(theta, dev, 1e-9, 0.0);
    }
    Ok(worst.finish("norm_preservation", NORM, None))
}

fn dual_mass_check(profile: &CosetProfile, thetas: &[f64], tol: f64) -> CheckResult {
    let mut worst = Worst::new();
    for &t in thetas {
        worst.record(t, profile.mass(t), 1.0, tol);
    }
    worst.finish("dual_component_mass", DUAL_MASS, None)
}

fn projection_check(
    code: &BinaryCode,
    profile: &CosetProfile,
    thetas: &[f64],
) -> Result<CheckResult, AnalysisError> {
    if code.n() > PROJECTION_MAX_N {
        return Ok(CheckResult::skipped(
            "dual_projection_consistency",
            PROJECTION,
            format!("n = {} exceeds {PROJECTION_MAX_N}", code.n()),
        ));
    }
    let mut worst = Worst::new();
    for &t in thetas {
        let dev = (dual_component_mass_by_projection(code, t)? - profile.mass(t)).abs();
        worst.record(t, dev, PROJECTION_TOLERANCE, 0.0);
    }
    Ok(worst.finish("dual_projection_consistency", PROJECTION, None))
}

fn self_dual_sum_check(dual: &WeightDistribution, k: usize, thetas: &[f64], tol: f64) -> CheckResult {
    let bound = self_dual_sum_bound(dual.n, k);
    let mut worst = Worst::new();
    for &t in thetas {
        worst.record(t, self_dual_sum_from_dual(dual, t), bound, tol * bound.max(1.0));
    }
    worst.finish("self_dual_sum", SELF_DUAL_SUM, None)
}

fn enumerator_check(dist: &WeightDistribution, thetas: &[f64], tol: f64) -> CheckResult {
    let bound = (dist.n as f64 / 2.0).exp2();
    let mut worst = Worst::new();
    for &t in thetas {
        worst.record(t, enumerator_inequality_from(dist, t), bound, tol * bound.max(1.0));
    }
    worst.finish("enumerator_inequality", ENUMERATOR_INEQ, None)
}

fn lambda_check(dist: &WeightDistribution, steps: usize) -> Result<CheckResult, AnalysisError> {
    let mut worst = Worst::new();
    let mut within = true;
    for lambda in lambda_grid(steps) {
        let c = lambda_family_check(dist, lambda)?;
        within &= c.within_hypotheses;
        // holds already carries the relative slack
        worst.record(lambda, c.lhs, c.rhs, if c.holds { f64::INFINITY } else { 0.0 });
    }
    let status = (!within).then_some(CheckStatus::OutsideHypotheses);
    let mut r = worst.finish("lambda_family", LAMBDA_FAMILY, status);
    if !within {
        r.note = Some("odd length: the inequality is only derived for even n".to_string());
    }
    Ok(r)
}

fn weight_bounds_check(report: &BoundReport) -> CheckResult {
    let mut worst = Worst::new();
    for row in &report.rows {
        for b in [&row.entropy, &row.sqrt_e] {
            if let (Some(l), true) = (b.log2(), row.count > 0) {
                let log_a = (row.count as f64).log2();
                worst.record(row.w as f64, log_a, l, if row.holds { f64::INFINITY } else { 0.0 });
            }
        }
    }
    if worst.points == 0 {
        let mut r = CheckResult::skipped("weight_bounds", WEIGHT_BOUNDS, "no nonzero A_w with 0 < w < n/2");
        r.status = if report.within_hypotheses {
            CheckStatus::Passed
        } else {
            CheckStatus::OutsideHypotheses
        };
        return r;
    }
    let status = (!report.within_hypotheses).then_some(CheckStatus::OutsideHypotheses);
    let mut r = worst.finish("weight_bounds", WEIGHT_BOUNDS, status);
    r.note = Some("values are log2(A_w) against log2 of the bound".to_string());
    r
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

pub const CSV_HEADER: &str =
    "w,A_w,log2_bound_eq16,log2_bound_eq17,log2_bound_eq1,log2_baseline,min_slack";

/// One row per tabulated weight; inapplicable bounds are written as `NA`.
pub fn report_csv(doc: &ReportDocument) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in doc.bounds.iter().flat_map(|b| &b.rows) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.w,
            r.count,
            fmt_opt(r.entropy.log2()),
            fmt_opt(r.sqrt_e.log2()),
            fmt_opt(r.doubly_even.log2()),
            r.baseline.log2_value,
            fmt_opt(r.min_slack),
        );
    }
    out
}

pub fn report_json(doc: &impl Serialize) -> String {
    serde_json::to_string_pretty(doc).expect("reports serialize")
}

/// Analyses every zoo entry; results come back in zoo order.
pub fn verify_zoo(opts: &AnalysisOptions) -> Result<Vec<ReportDocument>, AnalysisError> {
    let entries = zoo()?;
    entries
        .par_iter()
        .map(|e| analyze_code(&e.name, &e.code, opts))
        .collect()
}

/// Formula-only bound values for one weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub w: usize,
    pub entropy: BoundValue,
    pub sqrt_e: BoundValue,
    pub doubly_even: BoundValue,
    pub baseline_log2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveTable {
    pub schema: &'static str,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub interval_constant: Option<f64>,
    pub rows: Vec<CurveRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Curve {
    Entropy,
    SqrtE,
    DoublyEven,
    Baseline,
}

/// Bound curves for `w = 1 .. n/2 - 1` without reference to a code.
pub fn bound_curves(n: usize, d: Option<usize>, k: Option<usize>) -> Result<CurveTable, AnalysisError> {
    if n < 2 || n % 2 == 1 {
        return Err(AnalysisError::Usage(format!("n = {n} must be even and at least 2")));
    }
    let k = k.unwrap_or(n / 2);
    if k > n {
        return Err(AnalysisError::Usage(format!("k = {k} exceeds n = {n}")));
    }
    if let Some(d) = d {
        if d == 0 || 2 * d > n {
            return Err(AnalysisError::Usage(format!("d = {d} must satisfy 0 < d <= n/2")));
        }
    }
    let delta = d.map(|d| d as f64 / n as f64);
    let rows = (1..n / 2)
        .map(|w| {
            let doubly_even = match delta {
                Some(delta) => doubly_even_bound(n, w, delta),
                None => BoundValue::not_applicable("no minimum distance given"),
            };
            Ok(CurveRow {
                w,
                entropy: bound_entropy(n, w),
                sqrt_e: bound_sqrt_e(n, w),
                doubly_even,
                baseline_log2: binomial_baseline(n, k, w)?.log2_value,
            })
        })
        .collect::<Result<Vec<_>, BoundError>>()?;
    Ok(CurveTable {
        schema: "wsd-curves/1",
        n,
        k,
        d,
        interval_constant: delta.and_then(|x| crate::bounds::interval_constant(x).ok()),
        rows,
    })
}

pub const CURVES_CSV_HEADER: &str = "w,log2_bound_eq16,log2_bound_eq17,log2_bound_eq1,log2_baseline";

pub fn curves_csv(table: &CurveTable) -> String {
    let mut out = String::from(CURVES_CSV_HEADER);
    out.push('\n');
    for r in &table.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.w,
            fmt_opt(r.entropy.log2()),
            fmt_opt(r.sqrt_e.log2()),
            fmt_opt(r.doubly_even.log2()),
            r.baseline_log2
        );
    }
    out
}

/// Two-column `w,log2_value` data for a single curve; inapplicable points are
/// omitted.
pub fn curve_csv(table: &CurveTable, curve: Curve) -> String {
    let mut out = String::from("w,log2_value\n");
    for r in &table.rows {
        let v = match curve {
            Curve::Entropy => r.entropy.log2(),
            Curve::SqrtE => r.sqrt_e.log2(),
            Curve::DoublyEven => r.doubly_even.log2(),
            Curve::Baseline => Some(r.baseline_log2),
        };
        if let Some(v) = v {
            let _ = writeln!(out, "{},{}", r.w, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{build_extended_hamming, build_golay24, zoo_entry};

    #[test]
    fn hamming_report_passes() {
        let doc = analyze_code("hamming8", &build_extended_hamming(), &AnalysisOptions::default()).unwrap();
        assert!(doc.passed, "{:?}", doc.failures());
        assert_eq!(doc.schema, SCHEMA);
        assert_eq!(doc.code.d, Some(4));
        let b = doc.bounds.as_ref().unwrap();
        assert_eq!(b.rows.len(), 1);
        assert_eq!(b.rows[0].w, 2);
        assert!(b.rows[0].zero_count && b.rows[0].holds);
        assert!(doc.lemmas.iter().all(|c| c.status == CheckStatus::Passed));
    }

    #[test]
    fn golay_report_rows() {
        let opts = AnalysisOptions {
            theta_steps: 11,
            ..Default::default()
        };
        let doc = analyze_code("golay24", &build_golay24(), &opts).unwrap();
        assert!(doc.passed);
        let row = doc.bounds.as_ref().unwrap().row(8).unwrap();
        assert_eq!(row.count, 759);
        assert!(row.doubly_even.applicable);
        assert!(row.min_slack.unwrap() > 0.0);
        let skipped: Vec<_> = doc
            .lemmas
            .iter()
            .filter(|c| c.status == CheckStatus::Skipped)
            .map(|c| c.name)
            .collect();
        assert_eq!(skipped, ["closed_form_amplitude", "norm_preservation", "dual_projection_consistency"]);
    }

    #[test]
    fn non_self_orthogonal_code() {
        let rep3 = zoo_entry("rep3").unwrap().code;
        let doc = analyze_code("rep3", &rep3, &AnalysisOptions::default()).unwrap();
        assert!(doc.passed);
        assert!(doc.bounds.is_none());
        let strict = AnalysisOptions {
            require_wsd: true,
            ..Default::default()
        };
        let err = analyze_code("rep3", &rep3, &strict).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn odd_length_is_outside_hypotheses() {
        let c = BinaryCode::from_words(3, &[0b110]).unwrap();
        let doc = analyze_code("wsd3", &c, &AnalysisOptions::default()).unwrap();
        assert!(doc.passed);
        let lam = doc.lemmas.iter().find(|c| c.name == "lambda_family").unwrap();
        assert_eq!(lam.status, CheckStatus::OutsideHypotheses);
    }

    #[test]
    fn capacity_maps_to_exit_three() {
        let rm6 = crate::zoo::build_reed_muller_1(6).unwrap();
        let err = analyze_code("rm1_6", &rm6, &AnalysisOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn large_codes_use_the_dual_for_their_distribution() {
        // [40, 30]: enumerate the 10-dimensional dual instead
        let rows: Vec<u64> = (0..30).map(|i| 1u64 << (39 - i) | 1).collect();
        let c = BinaryCode::from_words(40, &rows).unwrap();
        let d = distribution_of(&c).unwrap();
        assert_eq!(d.total(), 1u128 << 30);
    }

    #[test]
    fn failures_name_the_offending_point() {
        let mut doc = analyze_code("hamming8", &build_extended_hamming(), &AnalysisOptions::default()).unwrap();
        let check = doc.lemmas.iter_mut().find(|c| c.name == "dual_component_mass").unwrap();
        check.status = CheckStatus::Failed;
        check.worst_at = Some(0.5);
        let f = doc.failures();
        assert_eq!(f.len(), 1);
        assert!(f[0].contains("dual_component_mass") && f[0].ends_with("at 0.5"));
    }

    #[test]
    fn csv_layout() {
        let doc = analyze_code("hamming8", &build_extended_hamming(), &AnalysisOptions::default()).unwrap();
        let csv = report_csv(&doc);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("2,0,"));
        assert!(lines[1].ends_with(",NA"));
    }

    #[test]
    fn curve_tables() {
        let t = bound_curves(24, Some(8), None).unwrap();
        assert_eq!(t.rows.len(), 11);
        let r8 = &t.rows[7];
        assert_eq!(r8.w, 8);
        assert_eq!(r8.entropy, bound_entropy(24, 8));
        let big = bound_curves(2048, None, None).unwrap();
        assert!(big
            .rows
            .iter()
            .all(|r| r.entropy.log2_value.is_finite() && r.sqrt_e.log2_value.is_finite() && r.baseline_log2.is_finite()));
        assert!(bound_curves(25, None, None).is_err());
        assert!(bound_curves(24, Some(13), None).is_err());
        let two = curve_csv(&t, Curve::Entropy);
        assert_eq!(two.lines().count(), 12);
    }
}
