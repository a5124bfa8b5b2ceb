//! Rate estimation and bracket verdicts: power-law exponent fits for
//! |φ_t(z)−τ|, log-slope fits for d_D(z,φ_t(z)), t·ω limits, and checks
//! against the finite/infinite-shift rate brackets.
//!
//! Fits are ordinary least squares without weights; acceptance windows
//! start at t = 10³ so the transient constants are absorbed into the
//! intercept — the rate statements are asymptotic.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::harmonic::HarmonicEstimate;
use crate::models::{SemigroupModel, ShiftType};
use crate::orbits::OrbitTrace;

/// Slack added to bracket endpoints before the membership test; absorbs
/// the approach-from-below of finite-t fits to their asymptotic slopes.
pub const BRACKET_TOL: f64 = 1e-3;

/// Default ε in rate brackets (the bounds hold for every ε > 0; tests
/// need one fixed value).
pub const DEFAULT_EPS: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    EuclidExponent,
    HypLogSlope,
    HarmonicRate,
}

impl ReportKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReportKind::EuclidExponent => "euclid-exponent",
            ReportKind::HypLogSlope => "hyp-log-slope",
            ReportKind::HarmonicRate => "harmonic-rate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Within,
    Outside,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Within => "within",
            Verdict::Outside => "outside",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

/// A fitted rate with an optional bracket verdict.
#[derive(Debug, Clone)]
pub struct RateReport {
    pub kind: ReportKind,
    /// Decay exponent α (positive-for-decay) for Euclidean fits, the raw
    /// log-slope for hyperbolic fits, the extrapolated limit of t·ω for
    /// harmonic fits.
    pub slope: f64,
    /// OLS intercept in the fit space (ln c for power laws); for harmonic
    /// fits, the maximum of t·ω over the samples.
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub bracket: Option<(f64, f64)>,
    pub verdict: Verdict,
    /// Slack applied to the bracket membership test.
    pub tol: f64,
    /// Human-readable statement of the claim the bracket encodes.
    pub claim: String,
}

impl RateReport {
    /// Fitted multiplicative constant c with y ≈ c·t^(−slope).
    pub fn fitted_constant(&self) -> f64 {
        self.intercept.exp()
    }

    pub fn with_bracket(mut self, lo: f64, hi: f64, claim: impl Into<String>) -> Self {
        self.bracket = Some((lo, hi));
        self.claim = claim.into();
        self.verdict = if self.slope >= lo - self.tol && self.slope <= hi + self.tol {
            Verdict::Within
        } else {
            Verdict::Outside
        };
        self
    }
}

fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    (slope, intercept, r2)
}

fn windowed(ts: &[f64], ys: &[f64], window: (f64, f64)) -> Result<(Vec<f64>, Vec<f64>)> {
    if ts.len() != ys.len() {
        return Err(Error::domain("rate fit needs matching sample lengths"));
    }
    let pairs: (Vec<f64>, Vec<f64>) = ts
        .iter()
        .zip(ys)
        .filter(|(&t, _)| t >= window.0 && t <= window.1)
        .map(|(&t, &y)| (t, y))
        .unzip();
    Ok(pairs)
}

/// Least squares of log y against log t inside the window; the reported
/// slope is the decay exponent α in y ≈ c·t^(−α).
pub fn fit_power_law(ts: &[f64], ys: &[f64], window: (f64, f64)) -> Result<RateReport> {
    let (tw, yw) = windowed(ts, ys, window)?;
    if tw.len() < 10 {
        return Err(Error::InsufficientSamples { have: tw.len(), need: 10 });
    }
    if yw.iter().any(|&y| !(y > 0.0)) {
        return Err(Error::domain("fit_power_law needs strictly positive values"));
    }
    let xs: Vec<f64> = tw.iter().map(|t| t.ln()).collect();
    let ls: Vec<f64> = yw.iter().map(|y| y.ln()).collect();
    let (slope, intercept, r2) = ols(&xs, &ls);
    Ok(RateReport {
        kind: ReportKind::EuclidExponent,
        slope: -slope,
        intercept,
        r_squared: r2,
        window,
        bracket: None,
        verdict: Verdict::NotApplicable,
        tol: BRACKET_TOL,
        claim: String::new(),
    })
}

/// Least squares of d against log t inside the window.
pub fn fit_log_slope(ts: &[f64], ds: &[f64], window: (f64, f64)) -> Result<RateReport> {
    let (tw, dw) = windowed(ts, ds, window)?;
    if tw.len() < 10 {
        return Err(Error::InsufficientSamples { have: tw.len(), need: 10 });
    }
    let xs: Vec<f64> = tw.iter().map(|t| t.ln()).collect();
    let (slope, intercept, r2) = ols(&xs, &dw);
    Ok(RateReport {
        kind: ReportKind::HypLogSlope,
        slope,
        intercept,
        r_squared: r2,
        window,
        bracket: None,
        verdict: Verdict::NotApplicable,
        tol: BRACKET_TOL,
        claim: String::new(),
    })
}

/// Extrapolated limit of t·ω via the one-parameter fit ω ≈ a/t (least
/// squares of ω against 1/t), less noise-sensitive than the largest
/// sample alone. `intercept` records max t·ω over the samples.
pub fn harmonic_rate(ts: &[f64], omegas: &[HarmonicEstimate]) -> Result<RateReport> {
    if ts.len() != omegas.len() {
        return Err(Error::domain("harmonic_rate needs matching sample lengths"));
    }
    if ts.len() < 3 {
        return Err(Error::InsufficientSamples { have: ts.len(), need: 3 });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (&t, o) in ts.iter().zip(omegas) {
        num += o.value / t;
        den += 1.0 / (t * t);
    }
    let a = num / den;
    let max_t_omega = ts
        .iter()
        .zip(omegas)
        .map(|(&t, o)| t * o.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let mean = omegas.iter().map(|o| o.value).sum::<f64>() / ts.len() as f64;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (&t, o) in ts.iter().zip(omegas) {
        ss_res += (o.value - a / t) * (o.value - a / t);
        ss_tot += (o.value - mean) * (o.value - mean);
    }
    let r2 = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok(RateReport {
        kind: ReportKind::HarmonicRate,
        slope: a,
        intercept: max_t_omega,
        r_squared: r2,
        window: (
            ts.iter().copied().fold(f64::INFINITY, f64::min),
            ts.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        ),
        bracket: None,
        verdict: Verdict::NotApplicable,
        tol: BRACKET_TOL,
        claim: String::new(),
    })
}

/// Monte Carlo standard error of the extrapolated t·ω limit, propagated
/// through the 1/t fit weights.
pub fn harmonic_rate_stderr(ts: &[f64], omegas: &[HarmonicEstimate]) -> f64 {
    let den: f64 = ts.iter().map(|t| 1.0 / (t * t)).sum();
    let var: f64 = ts
        .iter()
        .zip(omegas)
        .map(|(&t, o)| {
            let w = (1.0 / t) / den;
            w * w * o.stderr * o.stderr
        })
        .sum();
    var.sqrt()
}

/// Emits the applicable rate brackets for a computed trace: the Euclidean
/// exponent bracket ([1, 1+ε] finite shift, [1, (π+Θ)/Θ+ε] infinite
/// shift) and the hyperbolic slope bracket [1, (π+Θ)/(2Θ)+ε].
pub fn rate_verdicts(model: &SemigroupModel, trace: &OrbitTrace, eps: f64) -> Result<Vec<RateReport>> {
    let t_max = *trace.ts.last().unwrap_or(&0.0);
    if t_max < 1e5 {
        return Err(Error::domain("rate_verdicts needs a trace reaching t >= 1e5"));
    }
    let window = (1e3, t_max);
    let theta = model.inner_argument();
    let mut reports = Vec::new();

    let eucl = fit_power_law(&trace.ts, &trace.eucl_to_dw, window)?;
    let report = match model.shift_type() {
        ShiftType::Finite => eucl.with_bracket(
            1.0,
            1.0 + eps,
            format!("finite-shift euclidean decay exponent within [1, 1+{eps}]"),
        ),
        ShiftType::Infinite => eucl.with_bracket(
            1.0,
            (PI + theta) / theta + eps,
            format!("infinite-shift euclidean decay exponent within [1, (pi+theta)/theta+{eps}]"),
        ),
    };
    reports.push(report);

    let hyp = fit_log_slope(&trace.ts, &trace.hyp_from_start, window)?;
    reports.push(hyp.with_bracket(
        1.0,
        (PI + theta) / (2.0 * theta) + eps,
        format!("hyperbolic displacement log-slope within [1, (pi+theta)/(2 theta)+{eps}]"),
    ));
    Ok(reports)
}
