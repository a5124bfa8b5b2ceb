//! Catalog of concrete semigroup models, each exposing its Koenigs map,
//! derivative, Koenigs-domain membership predicate and metadata, plus the
//! sector-inclusion probe realizing the inner-argument geometry.
//!
//! Every orbit-capable model factors its Koenigs map through an upper
//! half-plane "solve coordinate" u (the standard Cayley image for disk
//! models, the parameter itself for half-plane models). Newton inversion
//! and all orbit metrics run in that coordinate: near the Denjoy–Wolff
//! point the disk coordinate z loses all significance (h′ ~ t³ amplifies
//! one ulp of z past any tolerance), while u keeps full relative
//! precision at every t.

mod comb;
mod slit;

pub use comb::SlitRay;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, LN_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::complex::{ensure_finite, one_minus_sq_abs};
use crate::error::{Error, Result};
use crate::hypgeo::{Orientation, SectorSpec};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Where the model's parameter (orbit) variable lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamDomain {
    Disk,
    UpperHalfPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftType {
    Finite,
    Infinite,
}

/// Denjoy–Wolff point: a boundary point of the disk, or ∞ for models
/// parameterized on the half-plane.
#[derive(Debug, Clone, Copy)]
pub enum DenjoyWolff {
    Boundary(Complex64),
    Infinity,
}

/// A horizontal half-plane known to contain the Koenigs domain.
#[derive(Debug, Clone, Copy)]
pub struct HalfplaneBound {
    pub rho: f64,
    pub orientation: Orientation,
}

#[derive(Debug)]
enum ModelKind {
    Halfplane,
    Sector,
    Comb { ceiling: f64, slits: Vec<SlitRay> },
    Slit { w0: Complex64 },
    SlitMid,
    DyadicComb { slits: Vec<SlitRay> },
}

/// A catalog entry: Koenigs map, derivative, Ω-membership predicate,
/// parameter domain, Denjoy–Wolff data and shift metadata. Immutable and
/// shareable across threads after catalog construction.
#[derive(Debug)]
pub struct SemigroupModel {
    id: &'static str,
    domain: ParamDomain,
    base_point: Complex64,
    dw: DenjoyWolff,
    shift: ShiftType,
    inner_argument: f64,
    bound: HalfplaneBound,
    kind: ModelKind,
}

impl SemigroupModel {
    pub fn id(&self) -> &'static str {
        self.id
    }

    pub fn parameter_domain(&self) -> ParamDomain {
        self.domain
    }

    /// Default starting point for orbit workloads.
    pub fn base_point(&self) -> Complex64 {
        self.base_point
    }

    pub fn dw_point(&self) -> DenjoyWolff {
        self.dw
    }

    pub fn shift_type(&self) -> ShiftType {
        self.shift
    }

    /// The inner argument Θ ∈ [0, π] (catalog metadata).
    pub fn inner_argument(&self) -> f64 {
        self.inner_argument
    }

    pub fn halfplane_bound(&self) -> HalfplaneBound {
        self.bound
    }

    /// Whether the model carries a Koenigs map (orbit capability); the
    /// slit-mid and dyadic-comb entries are geometry-only.
    pub fn has_orbit(&self) -> bool {
        !matches!(self.kind, ModelKind::SlitMid | ModelKind::DyadicComb { .. })
    }

    pub fn in_parameter_domain(&self, z: Complex64) -> bool {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        match self.domain {
            ParamDomain::Disk => one_minus_sq_abs(z) > 0.0,
            ParamDomain::UpperHalfPlane => z.im > 0.0,
        }
    }

    /// Evaluates the Koenigs map h at a parameter-domain point.
    pub fn koenigs_eval(&self, z: Complex64) -> Result<Complex64> {
        ensure_finite(z, "koenigs_eval point")?;
        if !self.in_parameter_domain(z) {
            return Err(Error::domain(format!(
                "koenigs_eval: point {z} outside the parameter domain of '{}'",
                self.id
            )));
        }
        Ok(self.solve_h(self.solve_coord(z)?))
    }

    /// Evaluates h′ at a parameter-domain point (closed forms; the comb
    /// series is differentiated term by term).
    pub fn koenigs_derivative_eval(&self, z: Complex64) -> Result<Complex64> {
        ensure_finite(z, "koenigs_derivative_eval point")?;
        if !self.in_parameter_domain(z) {
            return Err(Error::domain(format!(
                "koenigs_derivative_eval: point {z} outside the parameter domain of '{}'",
                self.id
            )));
        }
        let delta = ONE - z;
        match &self.kind {
            ModelKind::Halfplane => Ok(2.0 * I / (delta * delta)),
            ModelKind::Sector => {
                let w = I * (ONE + z) / delta;
                Ok(I / (delta * delta * w.sqrt()))
            }
            ModelKind::Slit { w0 } => {
                let w = slit::cayley_to_h(z, *w0);
                Ok(slit::f_prime(w) * slit::cayley_to_h_prime(z, *w0))
            }
            ModelKind::Comb { .. } => Ok(comb::comb_h_prime(z)),
            _ => Err(Error::NoOrbitCapability(self.id.to_string())),
        }
    }

    /// Exact membership predicate for the Koenigs domain Ω. Slits are
    /// closed sets: points on a slit are outside.
    pub fn omega_contains(&self, w: Complex64) -> bool {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return false;
        }
        match &self.kind {
            ModelKind::Halfplane => w.im > -1.0,
            ModelKind::Sector => {
                let s = w + Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
                s.re > 0.0 && s.im > 0.0
            }
            ModelKind::Comb { ceiling, slits } => {
                w.im < *ceiling && !on_any_slit(w, slits)
            }
            ModelKind::Slit { .. } => {
                w.im > -PI && !(w.im == 0.0 && w.re <= -1.0)
            }
            ModelKind::SlitMid => w.im > -1.0 && !(w.im == -0.5 && w.re <= -1.0),
            ModelKind::DyadicComb { slits } => w.im > -1.0 && !on_any_slit(w, slits),
        }
    }

    /// Horizontal obstructions of the complement, used by the probe to
    /// sample exact slit crossings (a pointwise fan cannot hit a
    /// measure-zero slit).
    fn complement_slits(&self) -> &[SlitRay] {
        match &self.kind {
            ModelKind::Comb { slits, .. } | ModelKind::DyadicComb { slits } => slits,
            ModelKind::Slit { .. } => &SLIT_MODEL_SLITS,
            ModelKind::SlitMid => &SLIT_MID_SLITS,
            _ => &[],
        }
    }

    // --- upper half-plane solve coordinate -------------------------------

    /// Parameter point → solve coordinate (always in the upper half-plane).
    pub(crate) fn solve_coord(&self, z: Complex64) -> Result<Complex64> {
        let u = match &self.kind {
            ModelKind::Halfplane | ModelKind::Sector => I * (ONE + z) / (ONE - z),
            ModelKind::Slit { w0 } => slit::cayley_to_h(z, *w0),
            ModelKind::Comb { .. } => z,
            _ => return Err(Error::NoOrbitCapability(self.id.to_string())),
        };
        Ok(u)
    }

    /// Solve coordinate → parameter point.
    pub(crate) fn param_from_solve(&self, u: Complex64) -> Complex64 {
        match &self.kind {
            ModelKind::Halfplane | ModelKind::Sector => (u - I) / (u + I),
            ModelKind::Slit { w0 } => slit::cayley_from_h(u, *w0),
            _ => u,
        }
    }

    /// h expressed in the solve coordinate.
    pub(crate) fn solve_h(&self, u: Complex64) -> Complex64 {
        match &self.kind {
            ModelKind::Halfplane => u - I,
            ModelKind::Sector => u.sqrt() - Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
            ModelKind::Slit { .. } => slit::f_map(u),
            _ => comb::comb_h(u),
        }
    }

    /// dh/du in the solve coordinate.
    pub(crate) fn solve_h_prime(&self, u: Complex64) -> Complex64 {
        match &self.kind {
            ModelKind::Halfplane => ONE,
            ModelKind::Sector => 0.5 * u.sqrt().inv(),
            ModelKind::Slit { .. } => slit::f_prime(u),
            _ => comb::comb_h_prime(u),
        }
    }

    /// Standard-Cayley gauge of a solve coordinate: the image of the
    /// parameter point under z ↦ i(τ+z)/(τ−z) with τ the Denjoy–Wolff
    /// point. Orbit metrics (|z−τ|, horodisk parameter, hyperbolic
    /// distance) all have exact expressions in this gauge.
    pub(crate) fn std_gauge(&self, u: Complex64) -> Complex64 {
        match &self.kind {
            ModelKind::Slit { w0 } => Complex64::new((u.re - w0.re) / w0.im, u.im / w0.im),
            _ => u,
        }
    }
}

fn on_any_slit(w: Complex64, slits: &[SlitRay]) -> bool {
    slits.iter().any(|s| w.im == s.height && w.re <= s.tip)
}

static SLIT_MODEL_SLITS: [SlitRay; 1] = [SlitRay { height: 0.0, tip: -1.0 }];
static SLIT_MID_SLITS: [SlitRay; 1] = [SlitRay { height: -0.5, tip: -1.0 }];

/// Number of comb-complement slits the probe can sample; deeper slits
/// exist but certifications are one-sided anyway.
const COMB_SLIT_INVENTORY: usize = 64;

/// Dyadic slit heights 2ⁿ·ln2 − 1 for n = 1..=60; tips 2^(2ⁿ) saturate to
/// +∞ past n = 9, which is exact over representable floats (every f64 is
/// ≤ 2¹⁰²⁴).
fn dyadic_slits() -> Vec<SlitRay> {
    (1..=60u32)
        .map(|n| {
            let height = (2f64).powi(n as i32) * LN_2 - 1.0;
            let tip = if n <= 9 {
                (2f64).powi(1i32 << n)
            } else {
                f64::INFINITY
            };
            SlitRay { height, tip }
        })
        .collect()
}

/// The six catalog models, built once (the slit-model root-find and the
/// comb slit inventory run at first access) and immutable afterwards.
pub fn model_catalog() -> &'static [SemigroupModel] {
    static CATALOG: OnceLock<Vec<SemigroupModel>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let w0 = slit::solve_w0().expect("slit-model root-find converges");
        let ceiling = comb::ceiling_y();
        let comb_slits = comb::slit_inventory(COMB_SLIT_INVENTORY, ceiling);
        vec![
            SemigroupModel {
                id: "halfplane",
                domain: ParamDomain::Disk,
                base_point: Complex64::new(0.0, 0.0),
                dw: DenjoyWolff::Boundary(ONE),
                shift: ShiftType::Finite,
                inner_argument: PI,
                bound: HalfplaneBound { rho: -1.0, orientation: Orientation::Upper },
                kind: ModelKind::Halfplane,
            },
            SemigroupModel {
                id: "sector",
                domain: ParamDomain::Disk,
                base_point: Complex64::new(0.0, 0.0),
                dw: DenjoyWolff::Boundary(ONE),
                shift: ShiftType::Infinite,
                inner_argument: FRAC_PI_2,
                bound: HalfplaneBound { rho: -FRAC_1_SQRT_2, orientation: Orientation::Upper },
                kind: ModelKind::Sector,
            },
            SemigroupModel {
                id: "comb",
                domain: ParamDomain::UpperHalfPlane,
                base_point: I,
                dw: DenjoyWolff::Infinity,
                shift: ShiftType::Finite,
                inner_argument: PI,
                bound: HalfplaneBound { rho: ceiling, orientation: Orientation::Lower },
                kind: ModelKind::Comb { ceiling, slits: comb_slits },
            },
            SemigroupModel {
                id: "slit",
                domain: ParamDomain::Disk,
                base_point: Complex64::new(0.0, 0.0),
                dw: DenjoyWolff::Boundary(ONE),
                shift: ShiftType::Finite,
                inner_argument: PI,
                bound: HalfplaneBound { rho: -PI, orientation: Orientation::Upper },
                kind: ModelKind::Slit { w0 },
            },
            SemigroupModel {
                id: "slit-mid",
                domain: ParamDomain::Disk,
                base_point: Complex64::new(0.0, 0.0),
                dw: DenjoyWolff::Boundary(ONE),
                shift: ShiftType::Finite,
                inner_argument: PI,
                bound: HalfplaneBound { rho: -1.0, orientation: Orientation::Upper },
                kind: ModelKind::SlitMid,
            },
            SemigroupModel {
                id: "dyadic-comb",
                domain: ParamDomain::Disk,
                base_point: Complex64::new(0.0, 0.0),
                dw: DenjoyWolff::Boundary(ONE),
                shift: ShiftType::Infinite,
                inner_argument: 0.0,
                bound: HalfplaneBound { rho: -1.0, orientation: Orientation::Upper },
                kind: ModelKind::DyadicComb { slits: dyadic_slits() },
            },
        ]
    })
}

/// Looks a model up by its stable id.
pub fn model_by_id(id: &str) -> Option<&'static SemigroupModel> {
    model_catalog().iter().find(|m| m.id == id)
}

// --- sector inclusion probe ----------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    Fits,
    Violated,
}

/// Outcome of a sampling probe for `apex + S_θ ⊂ Ω`. `Fits` is one-sided
/// (sampled evidence only); `Violated` carries a certified witness.
#[derive(Debug, Clone, Copy)]
pub struct ProbeResult {
    pub theta: f64,
    pub apex: Complex64,
    pub verdict: ProbeVerdict,
    pub witness: Option<Complex64>,
}

/// Samples a fan of `resolution × resolution` sector points out to radial
/// distance `depth` (log-spaced radii, uniform angles), plus the exact
/// point where each ray crosses a complement slit height — violations
/// hide either near the apex or on far slits. The verdict is `Fits` iff
/// every sample satisfies `omega_contains`.
pub fn sector_inclusion_probe(
    model: &SemigroupModel,
    spec: &SectorSpec,
    depth: f64,
    resolution: usize,
) -> ProbeResult {
    let bad = |witness: Complex64| ProbeResult {
        theta: spec.theta,
        apex: spec.apex,
        verdict: ProbeVerdict::Violated,
        witness: Some(witness),
    };
    if !model.omega_contains(spec.apex) {
        return bad(spec.apex);
    }
    let res = resolution.max(2);
    let sign = match spec.orientation {
        Orientation::Upper => 1.0,
        Orientation::Lower => -1.0,
    };
    let r_min = depth * 1e-6;
    let ratio = (depth / r_min).powf(1.0 / (res as f64 - 1.0));
    for j in 0..res {
        let angle = spec.theta * (j as f64 + 0.5) / res as f64;
        let (sin_a, cos_a) = (angle.sin(), angle.cos());
        let mut r = r_min;
        for _ in 0..res {
            let p = spec.apex + Complex64::new(r * cos_a, sign * r * sin_a);
            if !model.omega_contains(p) {
                return bad(p);
            }
            r *= ratio;
        }
        // exact crossings of complement slit heights along this ray
        for s in model.complement_slits() {
            let rise = sign * (s.height - spec.apex.im);
            if rise <= 0.0 || rise > depth * sin_a {
                continue;
            }
            let x = spec.apex.re + rise * cos_a / sin_a;
            if x <= s.tip {
                return bad(Complex64::new(x, s.height));
            }
        }
    }
    ProbeResult {
        theta: spec.theta,
        apex: spec.apex,
        verdict: ProbeVerdict::Fits,
        witness: None,
    }
}

/// Bisection for the largest θ (within `tol`) at which some apex in
/// `apex_search` yields a `Fits` probe; a lower-bound estimate of the
/// inner argument at the probed depth. The sector orientation follows the
/// model's half-plane bound.
pub fn inner_argument_estimate(
    model: &SemigroupModel,
    apex_search: &[Complex64],
    depth: f64,
    tol: f64,
) -> f64 {
    let orientation = model.halfplane_bound().orientation;
    let resolution = 48;
    let fits = |theta: f64| {
        apex_search.iter().any(|&apex| {
            let spec = match SectorSpec::new(apex, theta, orientation) {
                Ok(s) => s,
                Err(_) => return false,
            };
            sector_inclusion_probe(model, &spec, depth, resolution).verdict == ProbeVerdict::Fits
        })
    };
    if fits(PI) {
        return PI;
    }
    let (mut lo, mut hi) = (0.0f64, PI);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_point(model: &SemigroupModel, rng: &mut StdRng) -> Complex64 {
        match model.parameter_domain() {
            ParamDomain::Disk => loop {
                let z = c(rng.gen_range(-0.95..0.95), rng.gen_range(-0.95..0.95));
                if z.norm() < 0.95 {
                    return z;
                }
            },
            ParamDomain::UpperHalfPlane => {
                c(rng.gen_range(-8.0..8.0), rng.gen_range(0.05..6.0))
            }
        }
    }

    #[test]
    fn catalog_has_six_distinct_models() {
        let cat = model_catalog();
        assert_eq!(cat.len(), 6);
        let mut ids: Vec<_> = cat.iter().map(|m| m.id()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 6);
        for id in ["halfplane", "sector", "comb", "slit", "slit-mid", "dyadic-comb"] {
            assert!(model_by_id(id).is_some(), "missing {id}");
        }
    }

    #[test]
    fn koenigs_normalizations() {
        let hp = model_by_id("halfplane").unwrap();
        assert!(hp.koenigs_eval(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        assert!((hp.koenigs_derivative_eval(c(0.0, 0.0)).unwrap() - c(0.0, 2.0)).norm() < 1e-15);

        let sec = model_by_id("sector").unwrap();
        assert!(sec.koenigs_eval(c(0.0, 0.0)).unwrap().norm() < 1e-15);

        let comb = model_by_id("comb").unwrap();
        assert!((comb.koenigs_eval(c(0.0, 1.0)).unwrap() - c(0.0, -1.0)).norm() < 1e-15);

        let sl = model_by_id("slit").unwrap();
        assert!(sl.koenigs_eval(c(0.0, 0.0)).unwrap().norm() < 1e-13);
    }

    #[test]
    fn image_lands_in_omega_and_stays_under_translation() {
        let mut rng = StdRng::seed_from_u64(11);
        for model in model_catalog().iter().filter(|m| m.has_orbit()) {
            for _ in 0..200 {
                let z = random_point(model, &mut rng);
                let h = model.koenigs_eval(z).unwrap();
                assert!(model.omega_contains(h), "{}: h({z}) = {h} outside", model.id());
                for t in [1.0, 10.0, 1e3] {
                    let shifted = h + c(t, 0.0);
                    assert!(model.omega_contains(shifted), "{}: h({z})+{t} outside", model.id());
                }
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let mut rng = StdRng::seed_from_u64(23);
        let step = 1e-6;
        for model in model_catalog().iter().filter(|m| m.has_orbit()) {
            for _ in 0..100 {
                let z = random_point(model, &mut rng);
                let d = model.koenigs_derivative_eval(z).unwrap();
                let fd = (model.koenigs_eval(z + c(step, 0.0)).unwrap()
                    - model.koenigs_eval(z - c(step, 0.0)).unwrap())
                    / (2.0 * step);
                assert!(
                    (d - fd).norm() <= 1e-6 * (1.0 + d.norm()),
                    "{} at {z}: {d} vs {fd}",
                    model.id()
                );
            }
        }
    }

    #[test]
    fn slit_derivative_chain_rule() {
        // f′(C(z))·C′(z) against a symbolic expansion at a specific point
        let sl = model_by_id("slit").unwrap();
        let z = c(0.2, -0.3);
        let d = sl.koenigs_derivative_eval(z).unwrap();
        let fd = (sl.koenigs_eval(z + c(1e-7, 0.0)).unwrap()
            - sl.koenigs_eval(z - c(1e-7, 0.0)).unwrap())
            / 2e-7;
        assert!((d - fd).norm() < 1e-7 * d.norm());
    }

    #[test]
    fn omega_membership_examples() {
        let mid = model_by_id("slit-mid").unwrap();
        assert!(mid.omega_contains(c(0.0, 0.0)));
        assert!(!mid.omega_contains(c(-2.0, -0.5)));
        assert!(mid.omega_contains(c(0.5, -0.5))); // right of the slit tip
        assert!(!mid.omega_contains(c(0.0, -1.5)));

        let dy = model_by_id("dyadic-comb").unwrap();
        let a1 = c(4.0, 2.0 * LN_2 - 1.0);
        assert!(!dy.omega_contains(a1), "tip point a_1 lies on a slit");
        assert!(dy.omega_contains(c(5.0, 2.0 * LN_2 - 1.0)), "just right of the tip");
        assert!(dy.omega_contains(c(0.0, 0.0)));

        let sl = model_by_id("slit").unwrap();
        assert!(sl.omega_contains(c(0.0, 0.0)));
        assert!(!sl.omega_contains(c(-3.0, 0.0)));
        assert!(sl.omega_contains(c(0.5, 0.0))); // right of the fold at −1
        assert!(!sl.omega_contains(c(0.0, -4.0)));
    }

    #[test]
    fn probe_halfplane_fits_wide_sector() {
        let hp = model_by_id("halfplane").unwrap();
        let spec = SectorSpec::new(c(0.0, 0.0), 0.9 * PI, Orientation::Upper).unwrap();
        let r = sector_inclusion_probe(hp, &spec, 1e4, 48);
        assert_eq!(r.verdict, ProbeVerdict::Fits);
    }

    #[test]
    fn probe_sector_rejects_wide_sector_with_witness() {
        let sec = model_by_id("sector").unwrap();
        let spec = SectorSpec::new(c(0.0, 0.0), 0.6 * PI, Orientation::Upper).unwrap();
        let r = sector_inclusion_probe(sec, &spec, 1e3, 48);
        assert_eq!(r.verdict, ProbeVerdict::Violated);
        let w = r.witness.expect("violated probes carry a witness");
        assert!(!sec.omega_contains(w));
    }

    #[test]
    fn probe_dyadic_rejects_thin_sectors() {
        let dy = model_by_id("dyadic-comb").unwrap();
        for apex in [c(0.0, 0.0), c(1e3, 0.0), c(1e6, 0.0)] {
            let spec = SectorSpec::new(apex, 0.1, Orientation::Upper).unwrap();
            let r = sector_inclusion_probe(dy, &spec, 1e6, 48);
            assert_eq!(r.verdict, ProbeVerdict::Violated, "apex {apex}");
            let w = r.witness.unwrap();
            assert!(!dy.omega_contains(w));
        }
    }

    #[test]
    fn inner_argument_estimates() {
        let hp = model_by_id("halfplane").unwrap();
        let est = inner_argument_estimate(hp, &[c(0.0, 0.0)], 1e4, 5e-3);
        assert!(est >= PI - 5e-3, "halfplane estimate {est}");

        let sec = model_by_id("sector").unwrap();
        let est = inner_argument_estimate(sec, &[c(0.0, 0.0)], 1e4, 5e-3);
        assert!((est - FRAC_PI_2).abs() < 0.05, "sector estimate {est}");

        let dy = model_by_id("dyadic-comb").unwrap();
        let est = inner_argument_estimate(dy, &[c(0.0, 0.0), c(100.0, 0.0)], 1e6, 5e-3);
        assert!(est < 0.1, "dyadic estimate {est}");
    }
}
