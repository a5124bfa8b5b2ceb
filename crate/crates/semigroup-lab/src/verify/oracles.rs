//! Brute-force oracles used only by the acceptance suite; they share no
//! code with the evaluation paths they check.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::models::model_by_id;

/// Direct partial summation of the comb series to 1e7 terms, with
/// Richardson extrapolation of the half and full partial sums (the bare
/// partial sum itself is only ~|z−i|·1e−7 accurate; the extrapolation
/// removes the leading 1/N tail without touching any closed form).
pub fn comb_direct_sum(z: Complex64, terms: usize) -> Complex64 {
    let mut half = Complex64::new(0.0, 0.0);
    let mut full = Complex64::new(0.0, 0.0);
    let mut c = Complex64::new(0.0, 0.0); // Kahan compensation
    for n in 1..=terms {
        let nf = n as f64;
        let term = ((Complex64::new(nf, 0.0) - z) / Complex64::new(nf, -1.0)).ln() / nf;
        let y = term - c;
        let t = full + y;
        c = (t - full) - y;
        full = t;
        if n == terms / 2 {
            half = full;
        }
    }
    2.0 * full - half - z
}

/// Largest deviation between the catalog comb evaluation and the direct
/// 1e7-term oracle over the given points.
pub fn comb_worst_deviation(points: &[Complex64]) -> f64 {
    let model = model_by_id("comb").expect("catalog");
    points
        .par_iter()
        .map(|&z| {
            let fast = model.koenigs_eval(z).expect("points lie in the upper half-plane");
            let slow = comb_direct_sum(z, 10_000_000);
            (fast - slow).norm()
        })
        .reduce(|| 0.0, f64::max)
}
