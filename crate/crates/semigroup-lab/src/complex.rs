//! Principal-branch complex arithmetic and the Cayley correspondences
//! between the unit disk and half-planes.
//!
//! The branch cut of `log`/`arg` is fixed to the negative real axis with
//! arguments in (−π, π]; every sector formula downstream assumes this.
//! Values are validated (finite coordinates) at module boundaries, not
//! inside inner loops.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Checks both coordinates are finite, rejecting NaN/∞ at module boundaries.
pub fn ensure_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} must have finite coordinates, got {z}")))
    }
}

/// Principal argument in (−π, π]. Errors on z = 0.
///
/// `atan2(-0.0, x)` would report −π on the negative real axis, so the
/// imaginary part is normalized first to keep the range right-closed.
pub fn principal_arg(z: Complex64) -> Result<f64> {
    ensure_finite(z, "principal_arg input")?;
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::domain("principal_arg is undefined at 0"));
    }
    if z.im == 0.0 {
        // covers im == -0.0 as well
        return Ok(if z.re > 0.0 { 0.0 } else { std::f64::consts::PI });
    }
    Ok(z.im.atan2(z.re))
}

/// Principal-branch real power: exp(p·(ln|z| + i·arg z)).
///
/// z = 0 is allowed for p > 0 (the limit value 0); it is a domain error
/// for p ≤ 0.
pub fn complex_pow(z: Complex64, p: f64) -> Result<Complex64> {
    ensure_finite(z, "complex_pow input")?;
    if z.re == 0.0 && z.im == 0.0 {
        return if p > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::domain("complex_pow: 0 cannot be raised to a non-positive power"))
        };
    }
    let r = z.norm();
    let phi = principal_arg(z)?;
    let mag = r.powf(p);
    let ang = p * phi;
    Ok(Complex64::new(mag * ang.cos(), mag * ang.sin()))
}

/// Cayley transform C(z) = i(τ+z)/(τ−z) sending the disk onto the upper
/// half-plane with τ ↦ ∞.
///
/// Boundary points z ≠ τ with |z| = 1 are accepted and map to the real
/// axis (the boundary limit values).
pub fn cayley_disk_to_halfplane(z: Complex64, tau: Complex64) -> Result<Complex64> {
    ensure_finite(z, "cayley input")?;
    ensure_finite(tau, "cayley contact point")?;
    if (tau.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::domain("cayley contact point must lie on the unit circle"));
    }
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::domain("cayley input must lie in the closed unit disk"));
    }
    let den = tau - z;
    if den.norm() < 1e-15 {
        return Err(Error::domain("cayley input coincides with the contact point"));
    }
    Ok(Complex64::new(0.0, 1.0) * (tau + z) / den)
}

/// Inverse Cayley transform: z = τ(w−i)/(w+i), upper half-plane to disk.
///
/// For τ = 1 the distance to the contact point is exactly
/// |result − 1| = 2/|w + i|.
pub fn cayley_halfplane_to_disk(w: Complex64, tau: Complex64) -> Result<Complex64> {
    ensure_finite(w, "cayley input")?;
    ensure_finite(tau, "cayley contact point")?;
    if (tau.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::domain("cayley contact point must lie on the unit circle"));
    }
    if w.im <= 0.0 {
        return Err(Error::domain("cayley inverse needs Im w > 0"));
    }
    let i = Complex64::new(0.0, 1.0);
    Ok(tau * (w - i) / (w + i))
}

/// 1 − |z|², evaluated as (1−re)(1+re) − im² to avoid the cancellation of
/// 1 − (re² + im²) near the unit circle.
pub fn one_minus_sq_abs(z: Complex64) -> f64 {
    (1.0 - z.re) * (1.0 + z.re) - z.im * z.im
}
