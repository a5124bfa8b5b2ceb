//! Exact hyperbolic geometry: distances in the disk, horizontal
//! half-planes and horizontal sectors, hyperbolic polyline length, and
//! horodisk algebra.
//!
//! Every distance here is a log quotient of the form
//! ½·log((A+B)/(A−B)) whose denominator loses all precision once the two
//! points are far apart in the hyperbolic metric. The quotients are
//! therefore evaluated log1p-style with the denominator recovered from
//! the algebraic identity A² − B² (a product of boundary gaps), which
//! stays exact for arbitrarily distant points along orbits.

use num_complex::Complex64;

use crate::complex::{ensure_finite, one_minus_sq_abs, principal_arg};
use crate::error::{Error, Result};

/// Relative separation below which distances short-circuit to 0; the raw
/// formulas would subtract nearly equal magnitudes there.
const COINCIDENCE_EPS: f64 = 1e-15;

/// Which of the two horizontal half-planes (or sector mirror images) is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Im ζ > ρ half-planes, Arg ζ ∈ (0, θ) sectors.
    Upper,
    /// Im ζ < ρ half-planes, Arg ζ ∈ (−θ, 0) sectors.
    Lower,
}

/// Horodisk E(τ,R) = {z : |τ−z|²/(1−|z|²) < R}, internally tangent to the
/// unit circle at τ.
#[derive(Debug, Clone, Copy)]
pub struct Horodisk {
    pub tau: Complex64,
    pub r_param: f64,
}

impl Horodisk {
    pub fn new(tau: Complex64, r_param: f64) -> Result<Self> {
        ensure_finite(tau, "horodisk contact point")?;
        if (tau.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::domain("horodisk contact point must lie on the unit circle"));
        }
        if !(r_param > 0.0) {
            return Err(Error::domain("horodisk parameter must be positive"));
        }
        Ok(Horodisk { tau, r_param })
    }

    /// Euclidean radius R/(R+1) < 1.
    pub fn euclidean_radius(&self) -> f64 {
        self.r_param / (self.r_param + 1.0)
    }

    pub fn contains(&self, z: Complex64) -> Result<bool> {
        Ok(horodisk_parameter(z, self.tau)? < self.r_param)
    }
}

/// A horizontal angular sector: apex + {Arg ζ ∈ (0, θ)} (upper) or its
/// mirror image below the horizontal (lower).
#[derive(Debug, Clone, Copy)]
pub struct SectorSpec {
    pub apex: Complex64,
    pub theta: f64,
    pub orientation: Orientation,
}

impl SectorSpec {
    pub fn new(apex: Complex64, theta: f64, orientation: Orientation) -> Result<Self> {
        ensure_finite(apex, "sector apex")?;
        if !(theta > 0.0 && theta <= std::f64::consts::PI) {
            return Err(Error::domain("sector angle must lie in (0, pi]"));
        }
        Ok(SectorSpec { apex, theta, orientation })
    }

    /// Apex-relative coordinate, reflected to the upper case for `Lower`.
    fn normalize(&self, z: Complex64) -> Complex64 {
        let w = z - self.apex;
        match self.orientation {
            Orientation::Upper => w,
            Orientation::Lower => w.conj(),
        }
    }

    /// Strict membership in the open sector.
    pub fn contains(&self, z: Complex64) -> bool {
        let w = self.normalize(z);
        if w.re == 0.0 && w.im == 0.0 {
            return false;
        }
        match principal_arg(w) {
            Ok(a) => a > 0.0 && a < self.theta,
            Err(_) => false,
        }
    }
}

fn log_quotient(sum: f64, sq_gap: f64, sep: f64) -> f64 {
    // ½·log((P+Q)/(P−Q)) with P−Q = sq_gap/(P+Q), written log1p-style.
    0.5 * (2.0 * sep * sum / sq_gap).ln_1p()
}

/// Hyperbolic distance in the unit disk,
/// d(z,w) = ½·log((|1−z̄w|+|z−w|)/(|1−z̄w|−|z−w|)).
pub fn dist_disk(z: Complex64, w: Complex64) -> Result<f64> {
    ensure_finite(z, "dist_disk point")?;
    ensure_finite(w, "dist_disk point")?;
    let gz = one_minus_sq_abs(z);
    let gw = one_minus_sq_abs(w);
    if gz <= 0.0 || gw <= 0.0 {
        return Err(Error::domain("dist_disk points must lie in the open unit disk"));
    }
    let sep = (z - w).norm();
    if sep < COINCIDENCE_EPS * (1.0 + z.norm()) {
        return Ok(0.0);
    }
    let a = (Complex64::new(1.0, 0.0) - z.conj() * w).norm();
    // |1−z̄w|² − |z−w|² = (1−|z|²)(1−|w|²)
    Ok(log_quotient(a + sep, gz * gw, sep))
}

/// Hyperbolic distance in a horizontal half-plane with boundary Im ζ = ρ.
pub fn dist_halfplane(z: Complex64, w: Complex64, rho: f64, orientation: Orientation) -> Result<f64> {
    ensure_finite(z, "dist_halfplane point")?;
    ensure_finite(w, "dist_halfplane point")?;
    // reflect the lower case across Im = ρ
    let (z, w) = match orientation {
        Orientation::Upper => (z, w),
        Orientation::Lower => (
            Complex64::new(z.re, 2.0 * rho - z.im),
            Complex64::new(w.re, 2.0 * rho - w.im),
        ),
    };
    let gz = z.im - rho;
    let gw = w.im - rho;
    if gz <= 0.0 || gw <= 0.0 {
        return Err(Error::domain("dist_halfplane points must lie strictly inside the half-plane"));
    }
    let sep = (z - w).norm();
    if sep < COINCIDENCE_EPS * (1.0 + z.norm()) {
        return Ok(0.0);
    }
    let p = (z - w.conj() - Complex64::new(0.0, 2.0 * rho)).norm();
    // |z−w̄−2ρi|² − |z−w|² = 4(Im z−ρ)(Im w−ρ)
    Ok(log_quotient(p + sep, 4.0 * gz * gw, sep))
}

/// Hyperbolic distance in a horizontal angular sector, via the principal
/// power map ζ ↦ ζ^{π/θ} applied to apex-relative coordinates.
pub fn dist_sector(z: Complex64, w: Complex64, spec: &SectorSpec) -> Result<f64> {
    ensure_finite(z, "dist_sector point")?;
    ensure_finite(w, "dist_sector point")?;
    if !spec.contains(z) || !spec.contains(w) {
        return Err(Error::domain("dist_sector points must lie strictly inside the open sector"));
    }
    let zr = spec.normalize(z);
    let wr = spec.normalize(w);
    if (zr - wr).norm() < COINCIDENCE_EPS * (1.0 + zr.norm()) {
        return Ok(0.0);
    }
    let p = std::f64::consts::PI / spec.theta;
    let zp = crate::complex::complex_pow(zr, p)?;
    let wp = crate::complex::complex_pow(wr, p)?;
    let sep = (zp - wp).norm();
    if sep == 0.0 {
        return Ok(0.0);
    }
    let a = (zp - wp.conj()).norm();
    // the power images live in the upper half-plane: A² − B² = 4 Im(zp) Im(wp)
    Ok(log_quotient(a + sep, 4.0 * zp.im * wp.im, sep))
}

/// Midpoint-rule hyperbolic length of a polyline in the unit disk:
/// Σ |Δ|/(1−|midpoint|²). No adaptive refinement.
pub fn hyperbolic_length_disk(polyline: &[Complex64]) -> Result<f64> {
    for &v in polyline {
        ensure_finite(v, "polyline vertex")?;
        if one_minus_sq_abs(v) <= 0.0 {
            return Err(Error::domain("polyline vertex outside the open unit disk"));
        }
    }
    Ok(polyline
        .windows(2)
        .map(|seg| {
            let mid = (seg[0] + seg[1]) * 0.5;
            (seg[1] - seg[0]).norm() / one_minus_sq_abs(mid)
        })
        .sum())
}

/// The horodisk parameter |τ−z|²/(1−|z|²); z ∈ E(τ,R) iff the value is < R.
pub fn horodisk_parameter(z: Complex64, tau: Complex64) -> Result<f64> {
    ensure_finite(z, "horodisk_parameter point")?;
    ensure_finite(tau, "horodisk contact point")?;
    if (tau.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::domain("horodisk contact point must lie on the unit circle"));
    }
    let g = one_minus_sq_abs(z);
    if g <= 0.0 {
        return Err(Error::domain("horodisk_parameter point must lie in the open unit disk"));
    }
    Ok((tau - z).norm_sqr() / g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn disk_examples() {
        assert_eq!(dist_disk(c(0.0, 0.0), c(0.0, 0.0)).unwrap(), 0.0);
        let half_ln3 = 0.5 * 3.0f64.ln();
        assert!((dist_disk(c(0.0, 0.0), c(0.5, 0.0)).unwrap() - half_ln3).abs() < 1e-15);
        // equals dist_halfplane(0, 2, rho = −1) by conformal invariance
        let d = dist_disk(c(0.0, 0.0), c(0.5, -0.5)).unwrap();
        assert!((d - (1.0 + 2.0f64.sqrt()).ln()).abs() < 1e-14);
        assert!(dist_disk(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn halfplane_examples() {
        let d = dist_halfplane(c(0.0, 1.0), c(0.0, 2.0), 0.0, Orientation::Upper).unwrap();
        assert!((d - 0.5 * 2.0f64.ln()).abs() < 1e-15);
        let d = dist_halfplane(c(0.0, 0.0), c(2.0, 0.0), -1.0, Orientation::Upper).unwrap();
        assert!((d - (1.0 + 2.0f64.sqrt()).ln()).abs() < 1e-14);
        assert_eq!(dist_halfplane(c(3.0, 5.0), c(3.0, 5.0), 0.25, Orientation::Upper).unwrap(), 0.0);
        assert!(dist_halfplane(c(0.0, -1.0), c(0.0, 1.0), 0.0, Orientation::Upper).is_err());
        // lower case by reflection
        let d1 = dist_halfplane(c(0.0, -1.0), c(5.0, -2.0), 0.0, Orientation::Lower).unwrap();
        let d2 = dist_halfplane(c(0.0, 1.0), c(5.0, 2.0), 0.0, Orientation::Upper).unwrap();
        assert!((d1 - d2).abs() < 1e-15);
    }

    #[test]
    fn sector_examples() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let spec = SectorSpec::new(c(0.0, 0.0), FRAC_PI_2, Orientation::Upper).unwrap();
        let d = dist_sector(c(r, r), c(2.0 * r, 2.0 * r), &spec).unwrap();
        assert!((d - 2.0f64.ln()).abs() < 1e-14);
        assert_eq!(dist_sector(c(r, r), c(r, r), &spec).unwrap(), 0.0);
        assert!(dist_sector(c(-1.0, 1.0), c(r, r), &spec).is_err());
    }

    #[test]
    fn length_examples() {
        // geodesic segment [0, 0.5] with 1e4 subdivisions approximates ½ ln 3
        let n = 10_000;
        let poly: Vec<C> = (0..=n).map(|k| c(0.5 * k as f64 / n as f64, 0.0)).collect();
        let len = hyperbolic_length_disk(&poly).unwrap();
        assert!((len - 0.5 * 3.0f64.ln()).abs() < 1e-6);

        assert_eq!(hyperbolic_length_disk(&[c(0.3, 0.3)]).unwrap(), 0.0);

        let dogleg = [c(0.0, 0.0), c(0.0, 0.5), c(0.5, 0.0)];
        let len = hyperbolic_length_disk(&dogleg).unwrap();
        assert!(len >= dist_disk(c(0.0, 0.0), c(0.5, 0.0)).unwrap() - 1e-9);

        assert!(hyperbolic_length_disk(&[c(0.0, 0.0), c(2.0, 0.0)]).is_err());
    }

    #[test]
    fn horodisk_examples() {
        let tau = c(1.0, 0.0);
        assert!((horodisk_parameter(c(0.0, 0.0), tau).unwrap() - 1.0).abs() < 1e-15);
        assert!((horodisk_parameter(c(0.5, 0.0), tau).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((horodisk_parameter(c(-0.5, 0.0), tau).unwrap() - 3.0).abs() < 1e-14);
        assert!(horodisk_parameter(c(0.0, 1.0), tau).is_err());

        let h = Horodisk::new(tau, 1.0).unwrap();
        assert!((h.euclidean_radius() - 0.5).abs() < 1e-15);
        // nesting: parameter below R1 < R2 implies membership in both
        let z = c(0.8, 0.0);
        let p = horodisk_parameter(z, tau).unwrap();
        for r in [p * 1.5, p * 4.0] {
            assert!(Horodisk::new(tau, r).unwrap().contains(z).unwrap());
        }
        assert!(!Horodisk::new(tau, p * 0.5).unwrap().contains(z).unwrap());
    }

    /// 500 random disk automorphisms leave dist_disk invariant to 1e−11.
    #[test]
    fn moebius_invariance() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let a = random_disk_point(&mut rng, 0.9);
            let phi: f64 = rng.gen_range(-PI..PI);
            let rot = c(phi.cos(), phi.sin());
            let t = |z: C| rot * (z - a) / (c(1.0, 0.0) - a.conj() * z);
            let z = random_disk_point(&mut rng, 0.95);
            let w = random_disk_point(&mut rng, 0.95);
            let d0 = dist_disk(z, w).unwrap();
            let d1 = dist_disk(t(z), t(w)).unwrap();
            assert!((d0 - d1).abs() < 1e-11, "automorphism broke invariance: {d0} vs {d1}");
        }
    }

    fn random_disk_point(rng: &mut StdRng, rmax: f64) -> C {
        loop {
            let z = c(rng.gen_range(-rmax..rmax), rng.gen_range(-rmax..rmax));
            if z.norm() < rmax {
                return z;
            }
        }
    }

    proptest! {
        /// θ = π sector distance equals the ρ = 0 half-plane distance.
        #[test]
        fn sector_theta_pi_reduces_to_halfplane(
            zr in -30.0f64..30.0, zi in 0.01f64..30.0,
            wr in -30.0f64..30.0, wi in 0.01f64..30.0,
        ) {
            let spec = SectorSpec::new(c(0.0, 0.0), PI, Orientation::Upper).unwrap();
            let d1 = dist_sector(c(zr, zi), c(wr, wi), &spec).unwrap();
            let d2 = dist_halfplane(c(zr, zi), c(wr, wi), 0.0, Orientation::Upper).unwrap();
            prop_assert!((d1 - d2).abs() < 1e-12);
        }

        /// Domain monotonicity: sector ⊂ half-plane forces a larger distance.
        #[test]
        fn sector_dominates_halfplane(
            theta in 0.2f64..PI,
            ax in -5.0f64..5.0, ay in -5.0f64..5.0,
            r1 in 0.1f64..50.0, a1 in 0.05f64..0.95,
            r2 in 0.1f64..50.0, a2 in 0.05f64..0.95,
        ) {
            let apex = c(ax, ay);
            let spec = SectorSpec::new(apex, theta, Orientation::Upper).unwrap();
            let z = apex + C::from_polar(r1, a1 * theta);
            let w = apex + C::from_polar(r2, a2 * theta);
            prop_assume!(spec.contains(z) && spec.contains(w));
            let rho = ay; // sector lies inside {Im > Im apex}
            let dh = dist_halfplane(z, w, rho, Orientation::Upper).unwrap();
            let ds = dist_sector(z, w, &spec).unwrap();
            prop_assert!(dh <= ds + 1e-12);
        }

        /// Dual route: the sector formula must equal the half-plane
        /// distance of the principal power images (independent code paths).
        #[test]
        fn sector_equals_halfplane_of_power_images(
            theta in 0.2f64..PI,
            r1 in 0.01f64..100.0, a1 in 0.02f64..0.98,
            r2 in 0.01f64..100.0, a2 in 0.02f64..0.98,
        ) {
            let spec = SectorSpec::new(c(0.0, 0.0), theta, Orientation::Upper).unwrap();
            let z = C::from_polar(r1, a1 * theta);
            let w = C::from_polar(r2, a2 * theta);
            let ds = dist_sector(z, w, &spec).unwrap();
            let p = PI / theta;
            let zp = crate::complex::complex_pow(z, p).unwrap();
            let wp = crate::complex::complex_pow(w, p).unwrap();
            let dh = dist_halfplane(zp, wp, 0.0, Orientation::Upper).unwrap();
            prop_assert!((ds - dh).abs() < 1e-11 * (1.0 + ds));
        }

        #[test]
        fn disk_distance_symmetric(zr in -0.9f64..0.9, zi in -0.9f64..0.9,
                                   wr in -0.9f64..0.9, wi in -0.9f64..0.9) {
            prop_assume!(zr * zr + zi * zi < 0.81 && wr * wr + wi * wi < 0.81);
            let d1 = dist_disk(c(zr, zi), c(wr, wi)).unwrap();
            let d2 = dist_disk(c(wr, wi), c(zr, zi)).unwrap();
            prop_assert!((d1 - d2).abs() < 1e-13);
            prop_assert!(d1 >= 0.0);
        }
    }
}
