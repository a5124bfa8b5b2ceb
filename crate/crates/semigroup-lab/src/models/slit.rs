//! The slit model: Koenigs map of the disk onto a horizontal half-plane
//! minus one horizontal left slit, h = f ∘ C with f(w) = w + log w − iπ
//! on the upper half-plane and C the Möbius map D → H with C(0) = w₀,
//! C(1) = ∞, where w₀ is the root of f in H.
//!
//! f maps H onto {Im w > −π} \ {Im w = 0, Re w ≤ −1}: the positive reals
//! go to the line Im = −π and the negative reals fold onto the slit
//! (−∞, −1] twice, with the fold at f(−1) = −1.

use num_complex::Complex64;

use crate::error::{Error, Result};

const I_PI: Complex64 = Complex64 { re: 0.0, im: std::f64::consts::PI };

pub(crate) fn f_map(w: Complex64) -> Complex64 {
    w + w.ln() - I_PI
}

pub(crate) fn f_prime(w: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) + w.inv()
}

/// Newton root of w + log w − iπ = 0 in the upper half-plane, from the
/// initial guess −0.3 + 1.4i.
pub(crate) fn solve_w0() -> Result<Complex64> {
    let mut w = Complex64::new(-0.3, 1.4);
    for _ in 0..60 {
        let r = f_map(w);
        if r.norm() < 1e-15 {
            return Ok(w);
        }
        let next = w - r / f_prime(w);
        if next.im <= 0.0 {
            return Err(Error::domain("w0 iteration left the upper half-plane"));
        }
        w = next;
    }
    let residual = f_map(w).norm();
    if residual < 1e-13 {
        Ok(w)
    } else {
        Err(Error::NoConvergence { steps: 60, residual })
    }
}

/// C(z) = (w₀ − w̄₀·z)/(1−z), written as w̄₀ + 2i·Im(w₀)/(1−z) so the only
/// cancellation-prone quantity is 1−z, which is exact near z = 1.
pub(crate) fn cayley_to_h(z: Complex64, w0: Complex64) -> Complex64 {
    let delta = Complex64::new(1.0, 0.0) - z;
    w0.conj() + Complex64::new(0.0, 2.0 * w0.im) / delta
}

/// C⁻¹(w) = (w − w₀)/(w − w̄₀).
pub(crate) fn cayley_from_h(w: Complex64, w0: Complex64) -> Complex64 {
    (w - w0) / (w - w0.conj())
}

/// dC/dz = 2i·Im(w₀)/(1−z)².
pub(crate) fn cayley_to_h_prime(z: Complex64, w0: Complex64) -> Complex64 {
    let delta = Complex64::new(1.0, 0.0) - z;
    Complex64::new(0.0, 2.0 * w0.im) / (delta * delta)
}
