//! Harmonic measure: exact formulas in sectors, half-planes and strips, a
//! walk-on-spheres Monte Carlo estimator for slit and rectangle domains,
//! and the bound machinery for the slit-mid and dyadic-comb examples.

mod wos;

pub use wos::{wos_estimate, BoundaryPrimitive, ABSORB_SHELL};

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::complex::{ensure_finite, principal_arg};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Wos,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Wos => "wos",
        }
    }
}

/// A harmonic-measure value in \[0,1\] with its provenance; `stderr` is the
/// binomial standard error for Monte Carlo estimates and 0 for exact ones.
#[derive(Debug, Clone, Copy)]
pub struct HarmonicEstimate {
    pub value: f64,
    pub stderr: f64,
    pub method: Method,
    pub paths: u64,
    pub seed: u64,
}

impl HarmonicEstimate {
    fn exact(value: f64) -> Self {
        HarmonicEstimate { value, stderr: 0.0, method: Method::Exact, paths: 0, seed: 0 }
    }
}

/// Which boundary ray of a sector carries the measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorSide {
    Alpha,
    Beta,
}

/// Exact harmonic measure in the angular sector {Arg ζ ∈ (α, β)}:
/// ω(z, {Arg = β}) = (Arg z − α)/(β − α); the two sides sum to 1 exactly.
pub fn hm_sector(z: Complex64, alpha: f64, beta: f64, side: SectorSide) -> Result<HarmonicEstimate> {
    ensure_finite(z, "hm_sector point")?;
    if !(-PI <= alpha && alpha < beta && beta <= PI) {
        return Err(Error::domain("hm_sector needs −π ≤ α < β ≤ π"));
    }
    let arg = principal_arg(z)?;
    if !(arg > alpha && arg < beta) {
        return Err(Error::domain("hm_sector point lies outside the open sector"));
    }
    let beta_side = (arg - alpha) / (beta - alpha);
    Ok(HarmonicEstimate::exact(match side {
        SectorSide::Beta => beta_side,
        SectorSide::Alpha => 1.0 - beta_side,
    }))
}

/// Exact harmonic measure of the left ray (−∞, c] seen from z in the
/// upper half-plane: arg(z − c)/π.
pub fn hm_halfplane_halfline(z: Complex64, c: f64) -> Result<HarmonicEstimate> {
    ensure_finite(z, "hm_halfplane_halfline point")?;
    if !(z.im > 0.0) {
        return Err(Error::domain("hm_halfplane_halfline needs Im z > 0"));
    }
    Ok(HarmonicEstimate::exact(principal_arg(z - Complex64::new(c, 0.0))? / PI))
}

/// Exact harmonic measure of the top edge of a horizontal strip: the
/// linear harmonic interpolant (Im z − bottom)/height.
pub fn hm_strip_top(z: Complex64, bottom: f64, height: f64) -> Result<HarmonicEstimate> {
    ensure_finite(z, "hm_strip_top point")?;
    if !(height > 0.0) {
        return Err(Error::domain("hm_strip_top needs a positive height"));
    }
    if !(z.im > bottom && z.im < bottom + height) {
        return Err(Error::domain("hm_strip_top point lies outside the open strip"));
    }
    Ok(HarmonicEstimate::exact((z.im - bottom) / height))
}

/// Boundary primitives of the slit-mid Koenigs domain
/// {Im w > −1} \ {Im w = −½, Re w ≤ −1}, labeled "floor" and "slit".
pub fn slit_mid_primitives() -> Vec<BoundaryPrimitive> {
    vec![
        BoundaryPrimitive::HorizontalLine { y: -1.0, label: "floor".into() },
        BoundaryPrimitive::HorizontalRayLeft {
            anchor: Complex64::new(-1.0, -0.5),
            label: "slit".into(),
        },
    ]
}

/// Rate envelope for the harmonic measure of the slit-mid slit seen from
/// t on the orbit ray: the exact half-plane inclusion lower bound
/// arctan(1/(2(t+1)))/π and the asymptotic upper envelope 1/(πt)
/// (boundary gap 1 over inner argument π).
pub fn slit_mid_bounds(t: f64) -> (f64, f64) {
    let lower = (1.0 / (2.0 * (t + 1.0))).atan() / PI;
    let upper = 1.0 / (PI * t);
    (lower, upper)
}

/// Report of the dyadic-comb chain at index n: the exact strip value
/// against the rectangle Monte Carlo pieces it dominates.
#[derive(Debug, Clone, Copy)]
pub struct ChainReport {
    pub n: u32,
    pub t_n: f64,
    /// Exact 1/(2^{n+1}·ln 2), the strip measure of the upper line.
    pub strip_exact: f64,
    /// WoS estimate of the rectangle's top side.
    pub top: HarmonicEstimate,
    /// WoS estimate of the rectangle's right side.
    pub right: HarmonicEstimate,
    /// strip_exact ≤ 5·top + 3·stderr
    pub chain_holds: bool,
    /// top ≥ 1/(10·ln t_n) − 3·stderr
    pub log_bound_holds: bool,
}

/// Rectangle (2^{2ⁿ}, 2^{2^{n+1}}) × (−1, 2^{n+1}·ln2 − 1) with labeled
/// sides, and the midpoint t_n = 2^{2ⁿ−1}(2^{2ⁿ}+1).
pub fn dyadic_rectangle(n: u32) -> Result<(Vec<BoundaryPrimitive>, f64)> {
    if n < 1 {
        return Err(Error::domain("chain index n must be at least 1"));
    }
    if n > 4 {
        // 2^(2^5) = 2^32 squared in t_n leaves the exactly representable range
        return Err(Error::Overflow(format!("chain index n = {n}: 2^(2^{})", n + 1)));
    }
    let left = (2f64).powi(1 << n);
    let right = (2f64).powi(1 << (n + 1));
    let top_y = (2f64).powi(n as i32 + 1) * LN_2 - 1.0;
    let t_n = 0.5 * left * (left + 1.0);
    let prims = vec![
        BoundaryPrimitive::HorizontalSegment {
            anchor: Complex64::new(left, top_y),
            len: right - left,
            label: "top".into(),
        },
        BoundaryPrimitive::HorizontalSegment {
            anchor: Complex64::new(left, -1.0),
            len: right - left,
            label: "bottom".into(),
        },
        BoundaryPrimitive::VerticalSegment {
            anchor: Complex64::new(left, -1.0),
            len: top_y + 1.0,
            label: "left".into(),
        },
        BoundaryPrimitive::VerticalSegment {
            anchor: Complex64::new(right, -1.0),
            len: top_y + 1.0,
            label: "right".into(),
        },
    ];
    Ok((prims, t_n))
}

/// Runs the dyadic-comb inequality chain at index n: computes the exact
/// strip value 1/(2^{n+1}·ln2), Monte Carlo estimates of the rectangle's
/// top and right sides from t_n, and checks the two dominations.
pub fn dyadic_comb_chain(n: u32, paths: u64, seed: u64) -> Result<ChainReport> {
    let (prims, t_n) = dyadic_rectangle(n)?;
    let strip_exact = 1.0 / ((2f64).powi(n as i32 + 1) * LN_2);
    let z = Complex64::new(t_n, 0.0);
    let top = wos_estimate(&prims, None, z, &["top"], paths, seed)?;
    let right = wos_estimate(&prims, None, z, &["right"], paths, seed)?;
    Ok(ChainReport {
        n,
        t_n,
        strip_exact,
        top,
        right,
        chain_holds: strip_exact <= 5.0 * top.value + 3.0 * top.stderr,
        log_bound_holds: top.value >= 1.0 / (10.0 * t_n.ln()) - 3.0 * top.stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sector_examples() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let e = hm_sector(c(r, r), 0.0, PI / 2.0, SectorSide::Beta).unwrap();
        assert!((e.value - 0.5).abs() < 1e-15);
        let e = hm_sector(c(1.0, 1.0), 0.0, PI, SectorSide::Alpha).unwrap();
        assert!((e.value - 0.75).abs() < 1e-15);
        // boundary limit: approaching the β ray pushes the measure to 1
        let near = c(1e-9, 1.0);
        let e = hm_sector(near, 0.0, PI / 2.0, SectorSide::Beta).unwrap();
        assert!(e.value > 1.0 - 1e-8);
        // complementarity is exact
        let a = hm_sector(c(2.0, 1.0), -1.0, 2.0, SectorSide::Alpha).unwrap();
        let b = hm_sector(c(2.0, 1.0), -1.0, 2.0, SectorSide::Beta).unwrap();
        assert_eq!(a.value + b.value, 1.0);
        assert!(hm_sector(c(-1.0, -1.0), 0.0, PI / 2.0, SectorSide::Beta).is_err());
    }

    #[test]
    fn halfline_examples() {
        assert!((hm_halfplane_halfline(c(0.0, 1.0), 0.0).unwrap().value - 0.5).abs() < 1e-15);
        assert!((hm_halfplane_halfline(c(1.0, 1.0), 0.0).unwrap().value - 0.25).abs() < 1e-15);
        let e = hm_halfplane_halfline(c(11.0, 0.5), 1.0).unwrap();
        assert!((e.value - (0.05f64).atan() / PI).abs() < 1e-15);
        assert!((e.value - 0.015902).abs() < 1e-6);
        assert!(hm_halfplane_halfline(c(0.0, -1.0), 0.0).is_err());
    }

    #[test]
    fn strip_examples() {
        let e = hm_strip_top(c(17.0, 0.0), -1.0, 4.0 * LN_2).unwrap();
        assert!((e.value - 1.0 / (4.0 * LN_2)).abs() < 1e-16);
        assert!((e.value - 0.360674).abs() < 1e-6);
        let e = hm_strip_top(c(-3.0, 0.0), -1.0, 8.0 * LN_2).unwrap();
        assert!((e.value - 0.180337).abs() < 1e-6);
        let e = hm_strip_top(c(0.0, 1.0), 0.0, 2.0).unwrap();
        assert_eq!(e.value, 0.5);
        assert!(hm_strip_top(c(0.0, 3.0), 0.0, 2.0).is_err());
    }

    #[test]
    fn slit_mid_bound_values() {
        let (lo, hi) = slit_mid_bounds(10.0);
        assert!((lo - 0.014458).abs() < 1e-6);
        assert!((hi - 0.031831).abs() < 1e-6);
        assert!(lo < hi);
        // t·lower → 1/(2π), t·upper → 1/π
        let t = 1e9;
        let (lo, hi) = slit_mid_bounds(t);
        assert!((t * lo - 1.0 / (2.0 * PI)).abs() < 1e-8);
        assert!((t * hi - 1.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn halfplane_split_matches_exact() {
        let prims = vec![
            BoundaryPrimitive::HorizontalRayLeft { anchor: c(0.0, 0.0), label: "left".into() },
            BoundaryPrimitive::HorizontalSegment { anchor: c(0.0, 0.0), len: 1e9, label: "right".into() },
        ];
        let est = wos_estimate(&prims, None, c(1.0, 1.0), &["left"], 20_000, 42).unwrap();
        assert!((est.value - 0.25).abs() <= (3.0 * est.stderr).max(5e-3), "{}", est.value);
    }

    #[test]
    fn chain_values_and_overflow() {
        let (_, t1) = dyadic_rectangle(1).unwrap();
        assert_eq!(t1, 10.0);
        let (_, t2) = dyadic_rectangle(2).unwrap();
        assert_eq!(t2, 136.0);
        let (_, t4) = dyadic_rectangle(4).unwrap();
        assert_eq!(t4, 2147516416.0);
        assert!(matches!(dyadic_rectangle(5), Err(Error::Overflow(_))));
        assert!(matches!(dyadic_comb_chain(5, 1000, 1), Err(Error::Overflow(_))));

        let report = dyadic_comb_chain(1, 20_000, 42).unwrap();
        assert!((report.strip_exact - 1.0 / (4.0 * LN_2)).abs() < 1e-15);
        assert!(report.chain_holds);
        assert!(report.log_bound_holds);
    }
}
