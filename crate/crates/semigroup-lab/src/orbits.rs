//! Orbit computation φ_t(z) = h⁻¹(h(z) + t) by damped Newton inversion
//! with continuation in t, plus per-sample convergence metrics.
//!
//! Newton runs in the model's upper half-plane solve coordinate u, where
//! h stays well conditioned at every t; the disk coordinate quantizes to
//! ~1 ulp near the Denjoy–Wolff point, which h′ (growing like a power of
//! t) amplifies past any residual tolerance. Metrics derive from the
//! standard-Cayley gauge W of u through exact identities:
//! |φ_t(z) − τ| = 2/|W+i|, horodisk parameter = 1/Im W, and hyperbolic
//! displacement = d_{H}(W_0, W_t).

use num_complex::Complex64;

use crate::complex::{cayley_halfplane_to_disk, ensure_finite};
use crate::error::{Error, Result};
use crate::hypgeo::{dist_halfplane, Orientation};
use crate::models::{DenjoyWolff, ParamDomain, SemigroupModel, ShiftType};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Geometric time grid t_k = t0·(t1/t0)^{k/(count−1)}; all rate fits are
/// against log t.
#[derive(Debug, Clone, Copy)]
pub struct TimeGrid {
    pub t0: f64,
    pub t1: f64,
    pub count: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, t1: f64, count: usize) -> Result<Self> {
        if !(t0 > 0.0 && t0.is_finite()) {
            return Err(Error::domain("time grid needs t0 > 0"));
        }
        if !(t1 > t0 && t1.is_finite()) {
            return Err(Error::domain("time grid needs t1 > t0"));
        }
        if count < 2 {
            return Err(Error::domain("time grid needs at least 2 samples"));
        }
        Ok(TimeGrid { t0, t1, count })
    }

    /// Strictly increasing samples; the endpoints are hit exactly.
    pub fn samples(&self) -> Vec<f64> {
        let (l0, l1) = (self.t0.ln(), self.t1.ln());
        let m = (self.count - 1) as f64;
        let mut ts: Vec<f64> = (0..self.count)
            .map(|k| (l0 + (l1 - l0) * k as f64 / m).exp())
            .collect();
        ts[0] = self.t0;
        ts[self.count - 1] = self.t1;
        ts
    }
}

/// A sampled orbit with per-sample convergence metrics. `ts[0] = 0` is
/// always prepended so the horodisk baseline R_z and the hyperbolic
/// baseline are well defined.
#[derive(Debug, Clone)]
pub struct OrbitTrace {
    pub model_id: String,
    pub z0: Complex64,
    pub grid: TimeGrid,
    pub ts: Vec<f64>,
    /// Orbit points in the parameter domain.
    pub points: Vec<Complex64>,
    /// Disk images (identical to `points` for disk models).
    pub disk_points: Vec<Complex64>,
    /// h evaluated on the orbit; tracks h(z0) + t to the Newton tolerance.
    pub h_values: Vec<Complex64>,
    /// |φ_t(z) − τ| in disk coordinates.
    pub eucl_to_dw: Vec<f64>,
    /// d_D(z, φ_t(z)).
    pub hyp_from_start: Vec<f64>,
    /// |τ − φ_t(z)|²/(1 − |φ_t(z)|²).
    pub horodisk_param: Vec<f64>,
    /// Standard-Cayley gauge coordinates W_k (upper half-plane); the
    /// stable source for every metric above.
    pub gauges: Vec<Complex64>,
}

fn newton_in_solve(
    model: &SemigroupModel,
    target: Complex64,
    u_start: Complex64,
) -> Result<(Complex64, Complex64)> {
    let tol = 1e-13 * (1.0 + target.norm());
    let contract = 1e-12 * (1.0 + target.norm());
    let mut u = u_start;
    let mut hu = model.solve_h(u);
    let mut res = (hu - target).norm();
    if res <= tol {
        return Ok((u, hu));
    }
    for _ in 0..50 {
        let slope = model.solve_h_prime(u);
        if !(slope.norm() > 0.0) {
            return Err(Error::NoConvergence { steps: 50, residual: res });
        }
        let step = (hu - target) / slope;
        // halve the step until the candidate stays in the half-plane and
        // reduces the residual; h′ degenerates near boundary slits
        let mut lambda = 1.0;
        let mut moved = false;
        for _ in 0..30 {
            let cand = u - lambda * step;
            if cand.im > 0.0 {
                let hc = model.solve_h(cand);
                let rc = (hc - target).norm();
                if rc < res {
                    u = cand;
                    hu = hc;
                    res = rc;
                    moved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if res <= tol {
            return Ok((u, hu));
        }
        if !moved {
            // stagnated at the floating-point floor
            if res <= contract {
                return Ok((u, hu));
            }
            return Err(Error::DomainEscape { target_re: target.re, target_im: target.im });
        }
    }
    if res <= contract {
        Ok((u, hu))
    } else {
        Err(Error::NoConvergence { steps: 50, residual: res })
    }
}

/// Solves h(z) = target by damped Newton from `warm_start`. If the warm
/// start already meets the tolerance it is returned unchanged.
pub fn koenigs_invert(
    model: &SemigroupModel,
    target: Complex64,
    warm_start: Complex64,
) -> Result<Complex64> {
    ensure_finite(target, "koenigs_invert target")?;
    ensure_finite(warm_start, "koenigs_invert warm start")?;
    if !model.has_orbit() {
        return Err(Error::NoOrbitCapability(model.id().to_string()));
    }
    if !model.omega_contains(target) {
        return Err(Error::domain(format!(
            "koenigs_invert target {target} lies outside the Koenigs domain of '{}'",
            model.id()
        )));
    }
    if !model.in_parameter_domain(warm_start) {
        return Err(Error::domain("koenigs_invert warm start outside the parameter domain"));
    }
    let u0 = model.solve_coord(warm_start)?;
    let (u, _) = newton_in_solve(model, target, u0)?;
    if u.re == u0.re && u.im == u0.im {
        // avoid a lossy solve-coordinate round trip when nothing moved
        return Ok(warm_start);
    }
    Ok(model.param_from_solve(u))
}

/// Computes the orbit of `z0` on `grid` (with t = 0 prepended) and fills
/// the per-sample metrics.
pub fn orbit_trace(model: &SemigroupModel, z0: Complex64, grid: TimeGrid) -> Result<OrbitTrace> {
    ensure_finite(z0, "orbit starting point")?;
    if !model.has_orbit() {
        return Err(Error::NoOrbitCapability(model.id().to_string()));
    }
    if !model.in_parameter_domain(z0) {
        return Err(Error::domain(format!(
            "orbit starting point {z0} outside the parameter domain of '{}'",
            model.id()
        )));
    }
    let u0 = model.solve_coord(z0)?;
    let h0 = model.solve_h(u0);

    let mut ts = Vec::with_capacity(grid.count + 1);
    ts.push(0.0);
    ts.extend(grid.samples());

    let mut trace = OrbitTrace {
        model_id: model.id().to_string(),
        z0,
        grid,
        ts: ts.clone(),
        points: Vec::with_capacity(ts.len()),
        disk_points: Vec::with_capacity(ts.len()),
        h_values: Vec::with_capacity(ts.len()),
        eucl_to_dw: Vec::with_capacity(ts.len()),
        hyp_from_start: Vec::with_capacity(ts.len()),
        horodisk_param: Vec::with_capacity(ts.len()),
        gauges: Vec::with_capacity(ts.len()),
    };

    let w0_gauge = model.std_gauge(u0);
    let mut u = u0;
    for (k, &t) in ts.iter().enumerate() {
        let (hu, point) = if k == 0 {
            (h0, z0)
        } else {
            let target = h0 + Complex64::new(t, 0.0);
            let (u_next, hu) = newton_in_solve(model, target, u)
                .map_err(|e| Error::OrbitAt { t, source: Box::new(e) })?;
            u = u_next;
            (hu, model.param_from_solve(u))
        };
        let gauge = model.std_gauge(u);
        if !(gauge.im > 0.0) {
            return Err(Error::OrbitAt {
                t,
                source: Box::new(Error::domain("orbit gauge left the upper half-plane")),
            });
        }
        let disk = match model.parameter_domain() {
            ParamDomain::Disk => point,
            ParamDomain::UpperHalfPlane => cayley_halfplane_to_disk(gauge, ONE)?,
        };
        trace.points.push(point);
        trace.disk_points.push(disk);
        trace.h_values.push(hu);
        trace.eucl_to_dw.push(2.0 / (gauge + I).norm());
        trace.horodisk_param.push(1.0 / gauge.im);
        trace
            .hyp_from_start
            .push(dist_halfplane(w0_gauge, gauge, 0.0, Orientation::Upper)?);
        trace.gauges.push(gauge);
    }
    Ok(trace)
}

/// Per-sample check of the infinite-shift sandwich
/// ((1−|z|)/(1+|z|))·e^{−2d} ≤ |φ_t(z)−τ| ≤ (2|τ−z|/(1−|z|))·e^{−d}
/// with additive slack 1e−9. Errors on finite-shift models.
pub fn sandwich_check(trace: &OrbitTrace, model: &SemigroupModel) -> Result<Vec<bool>> {
    if model.shift_type() != ShiftType::Infinite {
        return Err(Error::domain(format!(
            "sandwich_check applies to infinite-shift models, '{}' is finite",
            model.id()
        )));
    }
    const SLACK: f64 = 1e-9;
    let z0 = trace.disk_points[0];
    let a = z0.norm();
    let dist0 = trace.eucl_to_dw[0]; // |τ − z0|, gauge-exact
    let lower_coef = (1.0 - a) / (1.0 + a);
    let upper_coef = 2.0 * dist0 / (1.0 - a);
    Ok(trace
        .ts
        .iter()
        .enumerate()
        .map(|(k, _)| {
            let d = trace.hyp_from_start[k];
            let e = trace.eucl_to_dw[k];
            let lo = lower_coef * (-2.0 * d).exp();
            let hi = upper_coef * (-d).exp();
            e >= lo - SLACK && e <= hi + SLACK
        })
        .collect())
}

/// Defect |φ_{t+s}(z0) − φ_t(φ_s(z0))| computed along two independent
/// inversion paths; the semigroup identity keeps it at the Newton noise
/// level (contract ≤ 1e−8).
pub fn semigroup_property_check(
    model: &SemigroupModel,
    z0: Complex64,
    s: f64,
    t: f64,
) -> Result<f64> {
    if !(s >= 0.0 && t >= 0.0) {
        return Err(Error::domain("semigroup check needs s, t >= 0"));
    }
    let h0 = model.koenigs_eval(z0)?;
    let direct = koenigs_invert(model, h0 + Complex64::new(s + t, 0.0), z0)?;
    let z_s = koenigs_invert(model, h0 + Complex64::new(s, 0.0), z0)?;
    let h_s = model.koenigs_eval(z_s)?;
    let composed = koenigs_invert(model, h_s + Complex64::new(t, 0.0), z_s)?;
    Ok((direct - composed).norm())
}

/// Denjoy–Wolff point in disk coordinates (τ, or 1 for half-plane models
/// whose disk picture sends ∞ to 1).
pub fn dw_disk_point(model: &SemigroupModel) -> Complex64 {
    match model.dw_point() {
        DenjoyWolff::Boundary(tau) => tau,
        DenjoyWolff::Infinity => ONE,
    }
}
