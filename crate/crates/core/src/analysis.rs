//! Decoherence observables: τ_dec and t_f extraction, saturation residuals,
//! recoherence detection, and reproduction of the reference tables and
//! figure data.
//!
//! τ_dec marks a 2% loss of coherence magnitude (the first crossing of
//! 0.98) and t_f a 99% loss (crossing of 0.01); when the magnitude
//! saturates above 0.01 the t_f column carries a saturation sentinel with
//! the limiting residual instead. Super-Ohmic decays are non-monotonic at
//! low temperature, so a trace can dip below a threshold and recover; the
//! reference tables report the recovery crossing in that situation, and
//! the table generators here follow the same convention.

pub mod reference;

use crate::bath::BathSpec;
use crate::closedform::{
    self, ClosedFormError, CoherenceValue, PairBranch, PairCase,
};
use crate::kernels::{self, QuadratureConfig, QuadratureError};
use crate::register::{CoherenceLabel, RegisterGeometry, RegisterError};
use reference::{RefCell, TABLE1, TABLE2, TABLE3};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    Register(#[from] RegisterError),
    #[error("invalid trace: {0}")]
    InvalidTrace(&'static str),
    #[error("unknown table id {0}; valid ids are 1, 2, 3")]
    UnknownTable(u8),
    #[error("unknown figure id {0}; valid ids are 1..=8")]
    UnknownFigure(u8),
}

/// Coherence magnitude defining τ_dec (2% deviation from the initial value).
pub const TAU_DEC_LEVEL: f64 = 0.98;
/// Coherence magnitude defining t_f.
pub const T_F_LEVEL: f64 = 0.01;
/// Default scan horizon for saturation classification.
pub const DEFAULT_HORIZON: f64 = 1e7;

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

/// Long-time behaviour of a coherence magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogLimit {
    /// log|ρ| tends to the given finite value.
    Finite(f64),
    /// log|ρ| → −∞ (the coherence vanishes).
    Vanishes,
}

/// One register element as a function of time.
pub trait CoherenceEvaluator {
    /// log of the coherence magnitude, −Γ_total(τ).
    fn log_magnitude(&self, tau: f64) -> Result<f64, AnalysisError>;

    fn value(&self, tau: f64) -> Result<CoherenceValue, AnalysisError>;

    /// Analytic τ → ∞ limit of the log-magnitude, when known.
    fn log_magnitude_limit(&self) -> Option<LogLimit> {
        None
    }
}

/// Single qubit, closed forms (d ∈ {1, 3}).
#[derive(Debug, Clone, Copy)]
pub struct SingleQubitClosed {
    pub d: u32,
    pub c: f64,
    pub theta: f64,
}

impl CoherenceEvaluator for SingleQubitClosed {
    fn log_magnitude(&self, tau: f64) -> Result<f64, AnalysisError> {
        Ok(-closedform::gamma_single_closed(self.d, self.c, self.theta, tau)?)
    }

    fn value(&self, tau: f64) -> Result<CoherenceValue, AnalysisError> {
        let gamma = closedform::gamma_single_closed(self.d, self.c, self.theta, tau)?;
        Ok(CoherenceValue::from_exponents(gamma, 0.0))
    }

    fn log_magnitude_limit(&self) -> Option<LogLimit> {
        match closedform::gamma_single_closed_limit(self.d, self.c, self.theta) {
            Ok(Some(limit)) => Some(LogLimit::Finite(-limit)),
            Ok(None) => Some(LogLimit::Vanishes),
            Err(_) => None,
        }
    }
}

/// Two-qubit element under independent coupling, closed forms.
#[derive(Debug, Clone, Copy)]
pub struct PairIndependentClosed {
    pub d: u32,
    pub c: f64,
    pub theta: f64,
    pub tau_s: f64,
    pub case: PairCase,
    pub branch: PairBranch,
}

impl PairIndependentClosed {
    fn eval(&self, tau: f64) -> Result<CoherenceValue, AnalysisError> {
        Ok(match self.d {
            1 => closedform::pair_independent_d1(
                self.c, self.theta, tau, self.tau_s, self.case, self.branch,
            ),
            3 => closedform::pair_independent_d3(
                self.c, self.theta, tau, self.tau_s, self.case, self.branch,
            )?,
            other => return Err(ClosedFormError::UnsupportedDimension(other).into()),
        })
    }
}

impl CoherenceEvaluator for PairIndependentClosed {
    fn log_magnitude(&self, tau: f64) -> Result<f64, AnalysisError> {
        Ok(self.eval(tau)?.magnitude.ln())
    }

    fn value(&self, tau: f64) -> Result<CoherenceValue, AnalysisError> {
        self.eval(tau)
    }

    fn log_magnitude_limit(&self) -> Option<LogLimit> {
        match closedform::pair_independent_limit(
            self.d, self.c, self.theta, self.tau_s, self.case, self.branch,
        ) {
            Ok(Some(limit)) => Some(LogLimit::Finite(-limit)),
            Ok(None) => Some(LogLimit::Vanishes),
            Err(_) => None,
        }
    }
}

/// Two-qubit element under collective coupling, closed forms.
#[derive(Debug, Clone, Copy)]
pub struct PairCollectiveClosed {
    pub d: u32,
    pub c: f64,
    pub theta: f64,
    pub case: PairCase,
    pub branch: PairBranch,
}

impl CoherenceEvaluator for PairCollectiveClosed {
    fn log_magnitude(&self, tau: f64) -> Result<f64, AnalysisError> {
        Ok(self.value(tau)?.magnitude.ln())
    }

    fn value(&self, tau: f64) -> Result<CoherenceValue, AnalysisError> {
        Ok(closedform::pair_collective(
            self.d, self.c, self.theta, tau, self.case, self.branch,
        )?)
    }

    fn log_magnitude_limit(&self) -> Option<LogLimit> {
        match closedform::pair_collective_limit(self.d, self.c, self.theta, self.case, self.branch)
        {
            Ok(Some(limit)) => Some(LogLimit::Finite(-limit)),
            Ok(None) => Some(LogLimit::Vanishes),
            Err(_) => None,
        }
    }
}

/// Arbitrary register element under independent coupling via quadrature.
#[derive(Debug, Clone)]
pub struct IndependentQuadrature {
    pub bath: BathSpec,
    pub geometry: RegisterGeometry,
    pub label: CoherenceLabel,
    pub cfg: QuadratureConfig,
}

impl CoherenceEvaluator for IndependentQuadrature {
    fn log_magnitude(&self, tau: f64) -> Result<f64, AnalysisError> {
        Ok(-kernels::gamma_independent(
            &self.bath,
            &self.geometry,
            &self.label,
            tau,
            &self.cfg,
        )?)
    }

    fn value(&self, tau: f64) -> Result<CoherenceValue, AnalysisError> {
        Ok(crate::register::coherence_independent(
            &self.bath,
            &self.geometry,
            &self.label,
            tau,
            &self.cfg,
        )?)
    }
}

/// Arbitrary register element under collective coupling via quadrature.
#[derive(Debug, Clone)]
pub struct CollectiveQuadrature {
    pub bath: BathSpec,
    pub label: CoherenceLabel,
    pub cfg: QuadratureConfig,
}

impl CoherenceEvaluator for CollectiveQuadrature {
    fn log_magnitude(&self, tau: f64) -> Result<f64, AnalysisError> {
        let class = crate::register::dfs_classify(&self.label);
        if class.damping_weight == 0.0 {
            return Ok(0.0);
        }
        Ok(-class.damping_weight * kernels::gamma_collective(&self.bath, tau, &self.cfg)?)
    }

    fn value(&self, tau: f64) -> Result<CoherenceValue, AnalysisError> {
        Ok(crate::register::coherence_collective(
            &self.bath,
            &self.label,
            tau,
            &self.cfg,
        )?)
    }
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

/// How a trace was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceSource {
    ClosedForm,
    Quadrature,
    Discrete,
}

/// Time series of one coherence factor on a strictly increasing grid.
#[derive(Debug, Clone)]
pub struct CoherenceTrace {
    taus: Vec<f64>,
    values: Vec<CoherenceValue>,
    pub source: TraceSource,
}

impl CoherenceTrace {
    pub fn new(
        taus: Vec<f64>,
        values: Vec<CoherenceValue>,
        source: TraceSource,
    ) -> Result<Self, AnalysisError> {
        if taus.len() != values.len() {
            return Err(AnalysisError::InvalidTrace("grid/value length mismatch"));
        }
        if taus.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(AnalysisError::InvalidTrace("grid not strictly increasing"));
        }
        if values
            .iter()
            .any(|v| !(v.magnitude >= 0.0) || v.magnitude > 1.0 + 1e-12)
        {
            return Err(AnalysisError::InvalidTrace("magnitude outside (0, 1]"));
        }
        Ok(Self {
            taus,
            values,
            source,
        })
    }

    pub fn from_evaluator(
        eval: &dyn CoherenceEvaluator,
        taus: Vec<f64>,
        source: TraceSource,
    ) -> Result<Self, AnalysisError> {
        let values = taus
            .iter()
            .map(|&t| eval.value(t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(taus, values, source)
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn values(&self) -> &[CoherenceValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }
}

/// Linear grid with n ≥ 2 points; the endpoints are exact.
pub fn lin_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let mut g: Vec<f64> = (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect();
    g[0] = a;
    g[n - 1] = b;
    g
}

/// Geometric grid on [a, b], a > 0, with n ≥ 2 points; endpoints exact.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let (la, lb) = (a.ln(), b.ln());
    let mut g: Vec<f64> = (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect();
    g[0] = a;
    g[n - 1] = b;
    g
}

// ---------------------------------------------------------------------------
// Threshold crossings
// ---------------------------------------------------------------------------

/// Relative precision of the reported crossing times.
const ROOT_REL_TOL: f64 = 1e-8;
/// Growth factor of the geometric bracket scan.
const SCAN_RATIO: f64 = 1.12;

/// Refines a bracketed crossing of `log_magnitude = target` by bisection
/// with secant steps. `sign` orients the residual g(t) = sign·(log|ρ| −
/// target) so that g(a) > 0 > g(b): +1 for a downward crossing of the
/// magnitude, −1 for an upward (recovery) crossing.
fn refine_crossing(
    eval: &dyn CoherenceEvaluator,
    target: f64,
    sign: f64,
    mut a: f64,
    mut fa: f64,
    mut b: f64,
    mut fb: f64,
) -> Result<f64, AnalysisError> {
    for _ in 0..200 {
        if (b - a) <= ROOT_REL_TOL * b.abs().max(1e-300) {
            break;
        }
        // secant proposal, midpoint fallback
        let mut t = if (fb - fa).abs() > 1e-300 {
            b - fb * (b - a) / (fb - fa)
        } else {
            0.5 * (a + b)
        };
        let lo = a + 0.25 * ROOT_REL_TOL * a.abs().max(1e-300);
        if !(t > lo && t < b) || !t.is_finite() {
            t = 0.5 * (a + b);
        }
        let ft = sign * (eval.log_magnitude(t)? - target);
        if ft == 0.0 {
            return Ok(t);
        }
        if ft > 0.0 {
            a = t;
            fa = ft;
        } else {
            b = t;
            fb = ft;
        }
    }
    let _ = (fa, fb);
    Ok(0.5 * (a + b))
}

/// First downward crossing of `magnitude = level` at t > from, scanning
/// geometrically up to `horizon`.
fn first_downward_crossing(
    eval: &dyn CoherenceEvaluator,
    level: f64,
    from: f64,
    horizon: f64,
) -> Result<Option<f64>, AnalysisError> {
    let target = level.ln();
    let mut a = from.max(1e-300);
    let mut fa = eval.log_magnitude(a)? - target;
    if fa <= 0.0 {
        // already at or below the threshold at the scan start
        return Ok(Some(a));
    }
    let mut t = a;
    while t < horizon {
        t = (t * SCAN_RATIO).min(horizon);
        let ft = eval.log_magnitude(t)? - target;
        if ft <= 0.0 {
            return Ok(Some(refine_crossing(eval, target, 1.0, a, fa, t, ft)?));
        }
        a = t;
        fa = ft;
        if t >= horizon {
            break;
        }
    }
    Ok(None)
}

/// First upward crossing (recovery) of `magnitude = level` at t > from.
fn first_upward_crossing(
    eval: &dyn CoherenceEvaluator,
    level: f64,
    from: f64,
    horizon: f64,
) -> Result<Option<f64>, AnalysisError> {
    let target = level.ln();
    let mut a = from;
    let mut fa = eval.log_magnitude(a)? - target;
    if fa >= 0.0 {
        return Ok(Some(a));
    }
    let mut t = a;
    while t < horizon {
        t = (t * SCAN_RATIO).min(horizon);
        let ft = eval.log_magnitude(t)? - target;
        if ft >= 0.0 {
            return Ok(Some(refine_crossing(eval, target, -1.0, a, -fa, t, -ft)?));
        }
        a = t;
        fa = ft;
        if t >= horizon {
            break;
        }
    }
    Ok(None)
}

/// Time of 2% coherence loss: first crossing of |ρ| = 0.98, expanding the
/// given bracket geometrically up to the default horizon; `None` when the
/// magnitude never reaches the threshold.
pub fn find_tau_dec(
    eval: &dyn CoherenceEvaluator,
    bracket: (f64, f64),
) -> Result<Option<f64>, AnalysisError> {
    let (lo, hi) = bracket;
    let start = if lo > 0.0 { lo } else { 1e-6 };
    // the scan covers the given bracket first and keeps expanding
    // geometrically up to the horizon when it does not contain the crossing
    first_downward_crossing(eval, TAU_DEC_LEVEL, start, DEFAULT_HORIZON.max(hi))
}

/// Outcome of the t_f extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TfResult {
    /// |ρ| crosses 0.01 at the given time.
    Crossing(f64),
    /// |ρ| saturates above 0.01; carries the residual coherence.
    Saturates(f64),
}

impl TfResult {
    pub fn crossing(&self) -> Option<f64> {
        match self {
            TfResult::Crossing(t) => Some(*t),
            TfResult::Saturates(_) => None,
        }
    }

    pub fn residual(&self) -> Option<f64> {
        match self {
            TfResult::Crossing(_) => None,
            TfResult::Saturates(r) => Some(*r),
        }
    }
}

/// Time of 99% coherence loss, or the saturation sentinel with the residual
/// value. The analytic t → ∞ limit decides saturation when the evaluator
/// provides one; otherwise the trace is scanned to `horizon` and the
/// plateau value there is reported.
pub fn find_t_f(eval: &dyn CoherenceEvaluator, horizon: f64) -> Result<TfResult, AnalysisError> {
    let target = T_F_LEVEL.ln();
    match eval.log_magnitude_limit() {
        Some(LogLimit::Finite(l)) if l > target => Ok(TfResult::Saturates(l.exp())),
        Some(_) => {
            // the crossing exists; keep scanning past the nominal horizon
            match first_downward_crossing(eval, T_F_LEVEL, 1e-6, 1e16)? {
                Some(t) => Ok(TfResult::Crossing(t)),
                None => Ok(TfResult::Saturates(eval.log_magnitude(1e16)?.exp())),
            }
        }
        None => match first_downward_crossing(eval, T_F_LEVEL, 1e-6, horizon)? {
            Some(t) => Ok(TfResult::Crossing(t)),
            None => Ok(TfResult::Saturates(eval.log_magnitude(horizon)?.exp())),
        },
    }
}

/// True when the magnitude exhibits a revival: a local minimum followed by
/// a rise exceeding 1e−6 absolute and 0.1% of the preceding drop.
pub fn detect_recoherence(trace: &CoherenceTrace) -> bool {
    let mags: Vec<f64> = trace.values().iter().map(|v| v.magnitude).collect();
    if mags.len() < 3 {
        return false;
    }
    let mut max_so_far = mags[0];
    let mut run_min = mags[0];
    let mut drop_at_min = 0.0;
    for &m in &mags[1..] {
        if m < run_min {
            run_min = m;
            drop_at_min = max_so_far - run_min;
        } else {
            let rise = m - run_min;
            if rise > 1e-6 && rise > 1e-3 * drop_at_min && drop_at_min > 0.0 {
                return true;
            }
        }
        max_so_far = max_so_far.max(m);
    }
    false
}

/// Summary observables of one element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceTimes {
    pub tau_dec: Option<f64>,
    pub t_f: TfResult,
    pub recoherence: bool,
    /// Residual coherence when the trace saturates.
    pub residual: Option<f64>,
}

/// Extracts τ_dec, t_f, the residual, and the recoherence flag; the
/// recoherence scan uses a geometric grid of `scan_points` up to `horizon`
/// (capped for trace building).
pub fn decoherence_times(
    eval: &dyn CoherenceEvaluator,
    horizon: f64,
    scan_points: usize,
) -> Result<DecoherenceTimes, AnalysisError> {
    let tau_dec = find_tau_dec(eval, (1e-4, 1.0))?;
    let t_f = find_t_f(eval, horizon)?;
    let scan_hi = horizon.min(1e5);
    let trace = CoherenceTrace::from_evaluator(
        eval,
        log_grid(1e-3, scan_hi, scan_points.max(1000)),
        TraceSource::ClosedForm,
    )?;
    Ok(DecoherenceTimes {
        tau_dec,
        t_f,
        recoherence: detect_recoherence(&trace),
        residual: t_f.residual(),
    })
}

// ---------------------------------------------------------------------------
// Table reproduction
// ---------------------------------------------------------------------------

/// A computed table cell next to its printed reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CellValue {
    Number(f64),
    Saturates,
}

impl CellValue {
    pub fn as_number(&self) -> Option<f64> {
        match self {
            CellValue::Number(v) => Some(*v),
            CellValue::Saturates => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableCell {
    pub column: &'static str,
    pub computed: CellValue,
    pub reference: RefCell,
    /// |computed − reference| / |reference| when both are numbers.
    pub rel_dev: Option<f64>,
    /// Sentinels agree and numbers agree within `tol_rel` plus half a
    /// printed ulp.
    pub matches: bool,
}

impl TableCell {
    fn build(column: &'static str, computed: CellValue, reference: RefCell, tol_rel: f64) -> Self {
        let (rel_dev, matches) = match (&computed, &reference) {
            (CellValue::Number(c), RefCell::Num { value, .. }) => {
                let dev = (c - value).abs() / value.abs().max(1e-300);
                let allowed = tol_rel * value.abs() + reference.print_resolution();
                (Some(dev), (c - value).abs() <= allowed)
            }
            (CellValue::Saturates, RefCell::Saturates) => (None, true),
            _ => (None, false),
        };
        Self {
            column,
            computed,
            reference,
            rel_dev,
            matches,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub params: Vec<(&'static str, f64)>,
    pub cells: Vec<TableCell>,
}

#[derive(Debug, Clone)]
pub struct TableData {
    pub id: u8,
    pub rows: Vec<TableRow>,
}

impl TableData {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.cells.iter().all(|c| c.matches))
    }
}

/// Scan start from the quiet-regime asymptote Γ ≈ cτ²/2: the 2% crossing
/// cannot occur much before τ = √(2·0.0202/c), so two decades below it is a
/// safe seed.
fn quiet_regime_seed(c: f64) -> f64 {
    (2.0 * (-(TAU_DEC_LEVEL.ln())) / c).sqrt() * 1e-2
}

/// τ_dec with the reference-table convention: the first crossing of 0.98,
/// except that a trace which saturates above the threshold after a
/// transient dip is reported at the recovery crossing of its first
/// excursion.
fn table_tau_dec(eval: &dyn CoherenceEvaluator, seed: f64) -> Result<CellValue, AnalysisError> {
    let first = first_downward_crossing(eval, TAU_DEC_LEVEL, seed, DEFAULT_HORIZON)?;
    let Some(t1) = first else {
        return Ok(CellValue::Saturates);
    };
    if let Some(LogLimit::Finite(l)) = eval.log_magnitude_limit() {
        if l > TAU_DEC_LEVEL.ln() {
            if let Some(t2) =
                first_upward_crossing(eval, TAU_DEC_LEVEL, t1 * (1.0 + 1e-7), DEFAULT_HORIZON)?
            {
                return Ok(CellValue::Number(t2));
            }
        }
    }
    Ok(CellValue::Number(t1))
}

fn table_t_f(eval: &dyn CoherenceEvaluator) -> Result<(CellValue, CellValue), AnalysisError> {
    match find_t_f(eval, DEFAULT_HORIZON)? {
        TfResult::Crossing(t) => Ok((CellValue::Number(t), CellValue::Number(T_F_LEVEL))),
        TfResult::Saturates(residual) => Ok((CellValue::Saturates, CellValue::Number(residual))),
    }
}

/// Reproduces one of the reference decoherence-time tables (ids 1–3) from
/// the closed-form evaluators, with per-cell deviations.
pub fn make_table(id: u8) -> Result<TableData, AnalysisError> {
    match id {
        1 => make_table1(),
        2 => make_table2(),
        3 => make_table3(),
        other => Err(AnalysisError::UnknownTable(other)),
    }
}

fn make_table1() -> Result<TableData, AnalysisError> {
    const TOL: f64 = 1e-3;
    let mut rows = Vec::new();
    for r in TABLE1 {
        let minus = PairIndependentClosed {
            d: 1,
            c: r.c1,
            theta: r.theta,
            tau_s: r.tau_s,
            case: PairCase::BothDiffer,
            branch: PairBranch::Minus,
        };
        let plus = PairIndependentClosed {
            branch: PairBranch::Plus,
            ..minus
        };
        let seed = quiet_regime_seed(r.c1);
        let (tfm, _) = table_t_f(&minus)?;
        let (tfp, _) = table_t_f(&plus)?;
        rows.push(TableRow {
            params: vec![("c1", r.c1), ("theta", r.theta), ("tau_s", r.tau_s)],
            cells: vec![
                TableCell::build("tau_dec_minus", table_tau_dec(&minus, seed)?, r.tau_dec_minus, TOL),
                TableCell::build("t_f_minus", tfm, r.t_f_minus, TOL),
                TableCell::build("tau_dec_plus", table_tau_dec(&plus, seed)?, r.tau_dec_plus, TOL),
                TableCell::build("t_f_plus", tfp, r.t_f_plus, TOL),
            ],
        });
    }
    Ok(TableData { id: 1, rows })
}

fn make_table2() -> Result<TableData, AnalysisError> {
    const TOL: f64 = 5e-3;
    let mut rows = Vec::new();
    for r in TABLE2 {
        let plus = PairIndependentClosed {
            d: 3,
            c: r.c3,
            theta: r.theta,
            tau_s: r.tau_s,
            case: PairCase::BothDiffer,
            branch: PairBranch::Plus,
        };
        let minus = PairIndependentClosed {
            branch: PairBranch::Minus,
            ..plus
        };
        let seed = quiet_regime_seed(r.c3);
        let (tfp, resp) = table_t_f(&plus)?;
        let (tfm, resm) = table_t_f(&minus)?;
        rows.push(TableRow {
            params: vec![("c3", r.c3), ("theta", r.theta), ("tau_s", r.tau_s)],
            cells: vec![
                TableCell::build("tau_dec_plus", table_tau_dec(&plus, seed)?, r.tau_dec_plus, TOL),
                TableCell::build("t_f_plus", tfp, r.t_f_plus, TOL),
                TableCell::build("residual_plus", resp, r.residual_plus, TOL),
                TableCell::build("tau_dec_minus", table_tau_dec(&minus, seed)?, r.tau_dec_minus, TOL),
                TableCell::build("t_f_minus", tfm, r.t_f_minus, TOL),
                TableCell::build("residual_minus", resm, r.residual_minus, TOL),
            ],
        });
    }
    Ok(TableData { id: 2, rows })
}

fn make_table3() -> Result<TableData, AnalysisError> {
    const TOL: f64 = 1e-3;
    let mut rows = Vec::new();
    for r in TABLE3 {
        let eval = SingleQubitClosed {
            d: r.d,
            c: r.c,
            theta: r.theta,
        };
        let seed = quiet_regime_seed(r.c);
        let (tf, res) = table_t_f(&eval)?;
        rows.push(TableRow {
            params: vec![("d", r.d as f64), ("c", r.c), ("theta", r.theta)],
            cells: vec![
                TableCell::build("tau_dec", table_tau_dec(&eval, seed)?, r.tau_dec, TOL),
                TableCell::build("t_f", tf, r.t_f, TOL),
                TableCell::build("residual", res, r.residual, TOL),
            ],
        });
    }
    Ok(TableData { id: 3, rows })
}

// ---------------------------------------------------------------------------
// Figure data
// ---------------------------------------------------------------------------

/// One curve or surface family of a figure.
#[derive(Debug, Clone)]
pub struct FigureFamily {
    pub label: String,
    pub rows: Vec<Vec<f64>>,
}

/// Gridded data reproducing one of the reference figures.
#[derive(Debug, Clone)]
pub struct FigureData {
    pub id: u8,
    pub axes: Vec<&'static str>,
    pub families: Vec<FigureFamily>,
}

fn pair_surface_family(
    d: u32,
    c: f64,
    theta: f64,
    branch: PairBranch,
    tau_grid: &[f64],
    tau_s_grid: &[f64],
    label: String,
) -> Result<FigureFamily, AnalysisError> {
    let mut rows = Vec::with_capacity(tau_grid.len() * tau_s_grid.len());
    for &tau_s in tau_s_grid {
        for &tau in tau_grid {
            let v = match d {
                1 => closedform::pair_independent_d1(
                    c,
                    theta,
                    tau,
                    tau_s,
                    PairCase::BothDiffer,
                    branch,
                ),
                _ => closedform::pair_independent_d3(
                    c,
                    theta,
                    tau,
                    tau_s,
                    PairCase::BothDiffer,
                    branch,
                )?,
            };
            rows.push(vec![tau_s, tau, v.magnitude]);
        }
    }
    Ok(FigureFamily { label, rows })
}

/// Emits the gridded magnitude data of one reference figure (ids 1–8).
pub fn make_figure(id: u8) -> Result<FigureData, AnalysisError> {
    let tau_s_grid = lin_grid(0.0, 10.0, 21);
    match id {
        // Two-qubit independent decay surfaces vs (τ_s, τ): Ohmic Plus.
        1 | 2 => {
            let branch = if id == 1 { PairBranch::Plus } else { PairBranch::Minus };
            let tau_grid = lin_grid(0.0, 30.0, 61);
            let families = [1e-3, 1.0, 1e2]
                .iter()
                .map(|&theta| {
                    pair_surface_family(
                        1,
                        0.25,
                        theta,
                        branch,
                        &tau_grid,
                        &tau_s_grid,
                        format!("theta={theta:e}"),
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FigureData {
                id,
                axes: vec!["tau_s", "tau", "magnitude"],
                families,
            })
        }
        // Same for the super-Ohmic bath.
        3 | 4 => {
            let branch = if id == 3 { PairBranch::Plus } else { PairBranch::Minus };
            let tau_grid = lin_grid(0.0, 20.0, 61);
            let families = [1e-3, 1.0, 1e2]
                .iter()
                .map(|&theta| {
                    pair_surface_family(
                        3,
                        0.25,
                        theta,
                        branch,
                        &tau_grid,
                        &tau_s_grid,
                        format!("theta={theta:e}"),
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FigureData {
                id,
                axes: vec!["tau_s", "tau", "magnitude"],
                families,
            })
        }
        // Weak-coupling super-Ohmic surfaces, both branches and temperatures.
        5 => {
            let tau_grid = lin_grid(0.0, 20.0, 61);
            let mut families = Vec::new();
            for &theta in &[1e-3, 1e2] {
                for branch in [PairBranch::Plus, PairBranch::Minus] {
                    let tag = match branch {
                        PairBranch::Plus => "plus",
                        PairBranch::Minus => "minus",
                    };
                    families.push(pair_surface_family(
                        3,
                        0.01,
                        theta,
                        branch,
                        &tau_grid,
                        &tau_s_grid,
                        format!("theta={theta:e} branch={tag}"),
                    )?);
                }
            }
            Ok(FigureData {
                id,
                axes: vec!["tau_s", "tau", "magnitude"],
                families,
            })
        }
        // Collective superdecoherence vs (θ, τ) for d = 1 and d = 3.
        6 => {
            let theta_grid = log_grid(1e-5, 1e2, 29);
            let tau_grid = lin_grid(0.0, 30.0, 61);
            let mut families = Vec::new();
            for d in [1u32, 3] {
                let mut rows = Vec::new();
                for &theta in &theta_grid {
                    for &tau in &tau_grid {
                        let v = closedform::pair_collective(
                            d,
                            0.25,
                            theta,
                            tau,
                            PairCase::BothDiffer,
                            PairBranch::Plus,
                        )?;
                        rows.push(vec![theta, tau, v.magnitude]);
                    }
                }
                families.push(FigureFamily {
                    label: format!("d={d}"),
                    rows,
                });
            }
            Ok(FigureData {
                id,
                axes: vec!["theta", "tau", "magnitude"],
                families,
            })
        }
        // Single-qubit Ohmic decay with the vacuum/thermal split (i), and
        // the decay against time in thermal units (ii).
        7 => {
            let mut families = Vec::new();
            let mut tau_grid = vec![0.0];
            tau_grid.extend(log_grid(1e-2, 1e6, 81));
            for (tag, theta) in [("i.a", 1.0), ("i.b", 1e-2), ("i.c", 1e-5)] {
                let mut rows = Vec::new();
                for &tau in &tau_grid {
                    let total = closedform::gamma1_low_temp(0.25, theta, tau);
                    let vacuum = closedform::gamma1_low_temp(0.25, 0.0, tau);
                    let thermal = total - vacuum;
                    rows.push(vec![
                        tau,
                        (-total).exp(),
                        (-vacuum).exp(),
                        (-thermal.max(0.0)).exp(),
                    ]);
                }
                families.push(FigureFamily {
                    label: format!("{tag} theta={theta:e}"),
                    rows,
                });
            }
            let mut wt_grid = vec![0.0];
            wt_grid.extend(log_grid(1e-2, 1e3, 61));
            for (tag, theta) in [("ii.a", 1e-5), ("ii.b", 1e-2), ("ii.c", 1e2)] {
                let mut rows = Vec::new();
                for &wt in &wt_grid {
                    let tau = wt / theta;
                    let total = closedform::gamma1_low_temp(0.25, theta, tau);
                    let vacuum = closedform::gamma1_low_temp(0.25, 0.0, tau);
                    let thermal = total - vacuum;
                    rows.push(vec![
                        wt,
                        (-total).exp(),
                        (-vacuum).exp(),
                        (-thermal.max(0.0)).exp(),
                    ]);
                }
                families.push(FigureFamily {
                    label: format!("{tag} theta={theta:e}"),
                    rows,
                });
            }
            Ok(FigureData {
                id,
                axes: vec!["time", "magnitude", "vacuum", "thermal"],
                families,
            })
        }
        // Single-qubit decay vs (θ, τ) for both bath dimensionalities.
        8 => {
            let theta_grid = log_grid(1e-5, 1e2, 29);
            let tau_grid = lin_grid(0.0, 30.0, 61);
            let mut families = Vec::new();
            for d in [1u32, 3] {
                let mut rows = Vec::new();
                for &theta in &theta_grid {
                    for &tau in &tau_grid {
                        let gamma = closedform::gamma_single_closed(d, 0.25, theta, tau)?;
                        rows.push(vec![theta, tau, (-gamma).exp()]);
                    }
                }
                families.push(FigureFamily {
                    label: format!("d={d}"),
                    rows,
                });
            }
            Ok(FigureData {
                id,
                axes: vec!["theta", "tau", "magnitude"],
                families,
            })
        }
        other => Err(AnalysisError::UnknownFigure(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_dec_single_qubit_reference() {
        let eval = SingleQubitClosed {
            d: 1,
            c: 0.25,
            theta: 1e-5,
        };
        // the printed reference carries its own last-digit rounding
        let t = find_tau_dec(&eval, (1e-4, 1.0)).unwrap().unwrap();
        assert!((t - 0.418831).abs() / 0.418831 < 1e-4, "{t}");
        // the computed crossing sits on the threshold to root precision
        let g = closedform::gamma1_low_temp(0.25, 1e-5, t);
        assert!((g - (-(TAU_DEC_LEVEL.ln()))).abs() < 1e-8);
    }

    #[test]
    fn tau_dec_dfs_element_is_none() {
        // constant magnitude never reaches 0.98
        struct Flat;
        impl CoherenceEvaluator for Flat {
            fn log_magnitude(&self, _tau: f64) -> Result<f64, AnalysisError> {
                Ok(0.0)
            }
            fn value(&self, _tau: f64) -> Result<CoherenceValue, AnalysisError> {
                Ok(CoherenceValue::new(1.0, 0.0))
            }
        }
        assert!(find_tau_dec(&Flat, (1e-4, 1.0)).unwrap().is_none());
    }

    #[test]
    fn tau_dec_pair_d3_reference() {
        let eval = PairIndependentClosed {
            d: 3,
            c: 0.25,
            theta: 1e-3,
            tau_s: 0.5,
            case: PairCase::BothDiffer,
            branch: PairBranch::Plus,
        };
        let t = find_tau_dec(&eval, (1e-4, 1.0)).unwrap().unwrap();
        assert!((t - 0.1292).abs() < 5e-5, "{t}");
    }

    #[test]
    fn t_f_single_qubit_crossing_and_saturation() {
        let eval = SingleQubitClosed {
            d: 1,
            c: 0.25,
            theta: 1.0,
        };
        match find_t_f(&eval, DEFAULT_HORIZON).unwrap() {
            TfResult::Crossing(t) => assert!((t - 6.39891).abs() / 6.39891 < 1e-6, "{t}"),
            other => panic!("expected crossing, got {other:?}"),
        }
        let eval = SingleQubitClosed {
            d: 3,
            c: 0.25,
            theta: 1e-5,
        };
        match find_t_f(&eval, DEFAULT_HORIZON).unwrap() {
            TfResult::Saturates(res) => assert!((res - 0.778801).abs() < 1e-5, "{res}"),
            other => panic!("expected saturation, got {other:?}"),
        }
    }

    #[test]
    fn t_f_pair_d1_reference() {
        let eval = PairIndependentClosed {
            d: 1,
            c: 0.25,
            theta: 1e-3,
            tau_s: 0.5,
            case: PairCase::BothDiffer,
            branch: PairBranch::Plus,
        };
        match find_t_f(&eval, DEFAULT_HORIZON).unwrap() {
            TfResult::Crossing(t) => assert!((t - 103.507).abs() / 103.507 < 1e-5, "{t}"),
            other => panic!("expected crossing, got {other:?}"),
        }
    }

    #[test]
    fn plateau_detection_agrees_with_analytic_limit() {
        // quadrature evaluator has no analytic limit: the horizon plateau
        // must agree with the closed-form limit to 1e−4
        let eval = CollectiveQuadrature {
            bath: BathSpec::super_ohmic(0.25, 1.0).unwrap(),
            label: CoherenceLabel::from_bits("1", "0").unwrap(),
            cfg: QuadratureConfig::default(),
        };
        match find_t_f(&eval, 2e3).unwrap() {
            TfResult::Saturates(res) => {
                let analytic = (-closedform::gamma3_limit(0.25, 1.0).unwrap()).exp();
                assert!((res - analytic).abs() < 1e-4, "{res} vs {analytic}");
            }
            other => panic!("expected saturation, got {other:?}"),
        }
    }

    #[test]
    fn recoherence_flags() {
        // non-monotonic super-Ohmic pair trace
        let eval = PairIndependentClosed {
            d: 3,
            c: 0.25,
            theta: 1e-3,
            tau_s: 0.5,
            case: PairCase::BothDiffer,
            branch: PairBranch::Plus,
        };
        let trace =
            CoherenceTrace::from_evaluator(&eval, log_grid(1e-2, 200.0, 2000), TraceSource::ClosedForm)
                .unwrap();
        assert!(detect_recoherence(&trace));

        // monotone Ohmic single-qubit decay
        let eval = SingleQubitClosed {
            d: 1,
            c: 0.25,
            theta: 1.0,
        };
        let trace =
            CoherenceTrace::from_evaluator(&eval, log_grid(1e-2, 100.0, 2000), TraceSource::ClosedForm)
                .unwrap();
        assert!(!detect_recoherence(&trace));

        // constant trace
        let taus = lin_grid(0.0, 10.0, 100);
        let vals = vec![CoherenceValue::new(1.0, 0.0); 100];
        let trace = CoherenceTrace::new(taus, vals, TraceSource::ClosedForm).unwrap();
        assert!(!detect_recoherence(&trace));
    }

    #[test]
    fn trace_validation() {
        let bad = CoherenceTrace::new(
            vec![0.0, 0.0, 1.0],
            vec![CoherenceValue::new(1.0, 0.0); 3],
            TraceSource::ClosedForm,
        );
        assert!(bad.is_err());
        let bad = CoherenceTrace::new(
            vec![0.0, 1.0],
            vec![CoherenceValue::new(1.5, 0.0); 2],
            TraceSource::ClosedForm,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn table_ids_validate() {
        assert!(matches!(make_table(9), Err(AnalysisError::UnknownTable(9))));
        assert!(matches!(
            make_figure(9),
            Err(AnalysisError::UnknownFigure(9))
        ));
    }

    #[test]
    fn table_cell_matching_allows_printed_rounding() {
        // a reference printed with two decimals absorbs up to half an ulp
        let two_dec = reference::RefCell::num(0.20, 2);
        let cell = TableCell::build("t", CellValue::Number(0.2042), two_dec, 5e-3);
        assert!(cell.matches, "within printed resolution");
        let cell = TableCell::build("t", CellValue::Number(0.21), two_dec, 5e-3);
        assert!(!cell.matches, "beyond printed resolution");
        // sentinel bookkeeping
        let cell = TableCell::build("t", CellValue::Saturates, reference::RefCell::Saturates, 1e-3);
        assert!(cell.matches && cell.rel_dev.is_none());
        let cell = TableCell::build("t", CellValue::Number(1.0), reference::RefCell::Saturates, 1e-3);
        assert!(!cell.matches);
    }

    #[test]
    fn decoherence_times_invariants() {
        let eval = SingleQubitClosed {
            d: 1,
            c: 0.25,
            theta: 1.0,
        };
        let times = decoherence_times(&eval, DEFAULT_HORIZON, 1000).unwrap();
        let tau_dec = times.tau_dec.unwrap();
        let t_f = times.t_f.crossing().unwrap();
        assert!(tau_dec < t_f);
        assert!(!times.recoherence);
        // crossings sit on the thresholds
        assert!(
            (eval.value(tau_dec).unwrap().magnitude - TAU_DEC_LEVEL).abs() < 1e-6,
            "τ_dec off-level"
        );
        assert!((eval.value(t_f).unwrap().magnitude - T_F_LEVEL).abs() < 1e-6);
    }
}
