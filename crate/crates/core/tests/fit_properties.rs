//! Property tests for the fitting pipeline: exact recovery, transform
//! identities, and inversion laws.

use decilefit::{
    fit_polynomial, invert_decreasing_quadratic, EmpiricalCdf, FitConfig, Polynomial,
    Standardization,
};
use proptest::prelude::*;

/// Ten strictly increasing abscissae with a window positioned like real
/// decile tables: the offset is comparable to the span, so every
/// coefficient stays identifiable.
fn abscissae(span_log10: f64, offset_log10: f64, jitter: &[f64]) -> Vec<f64> {
    let span = 10f64.powf(span_log10);
    let x_lo = span * 10f64.powf(offset_log10);
    (0..10)
        .map(|i| x_lo + span * (i as f64 + 0.45 * jitter[i]) / 10.0)
        .collect()
}

fn poly_from_parts(degree: usize, x_hi: f64, mags: &[f64], signs: &[bool]) -> Vec<f64> {
    (0..=degree)
        .map(|k| {
            let sign = if signs[k] { 1.0 } else { -1.0 };
            sign * 10f64.powf(mags[k]) / x_hi.powi(k as i32)
        })
        .collect()
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

proptest! {
    /// Fitting exact polynomial samples recovers the coefficients to 1e-8
    /// relative and leaves essentially no residual, for any degree up to 5
    /// and spans up to nine orders of magnitude.
    #[test]
    fn exact_recovery(
        degree in 1usize..=5,
        span_log10 in 0.0..9.0f64,
        offset_log10 in -1.3..0.3f64,
        jitter in prop::collection::vec(-1.0..1.0f64, 10),
        mags in prop::collection::vec(1.0..3.0f64, 6),
        signs in prop::collection::vec(any::<bool>(), 6),
    ) {
        let xs = abscissae(span_log10, offset_log10, &jitter);
        let coeffs = poly_from_parts(degree, xs[9], &mags, &signs);
        let points: Vec<(f64, f64)> = xs.iter().map(|&x| (x, horner(&coeffs, x))).collect();
        let sum_sq: f64 = points.iter().map(|(_, y)| y * y).sum();

        let cdf = EmpiricalCdf::from_points(points).unwrap();
        let fit = fit_polynomial(&cdf, &FitConfig::with_degree(degree)).unwrap();

        for (got, want) in fit.poly.coeffs().iter().zip(&coeffs) {
            let rel = ((got - want) / want).abs();
            prop_assert!(rel <= 1e-8, "coefficient error {rel} ({got} vs {want})");
        }
        prop_assert!(fit.ss_res <= 1e-16 * sum_sq, "ss_res {} vs bound {}", fit.ss_res, 1e-16 * sum_sq);
    }

    /// R-squared never exceeds 1, and hits 1 exactly when the residual sum
    /// vanishes.
    #[test]
    fn r_squared_is_capped_at_one(
        span_log10 in 0.0..6.0f64,
        offset_log10 in -1.3..0.3f64,
        jitter in prop::collection::vec(-1.0..1.0f64, 10),
        noise in prop::collection::vec(-10.0..10.0f64, 10),
        degree in 1usize..=5,
    ) {
        let xs = abscissae(span_log10, offset_log10, &jitter);
        let points: Vec<(f64, f64)> = xs
            .iter()
            .zip(&noise)
            .map(|(&x, &e)| (x, 150.0 - 50.0 * (x - xs[0]) / (xs[9] - xs[0]) + e))
            .collect();
        let cdf = EmpiricalCdf::from_points(points).unwrap();
        let fit = fit_polynomial(&cdf, &FitConfig::with_degree(degree)).unwrap();
        prop_assert!(fit.r_squared <= 1.0);
        if fit.ss_res <= 1e-12 {
            prop_assert!((fit.r_squared - 1.0).abs() <= 1e-12);
        } else if fit.ss_tot > 0.0 {
            prop_assert!((fit.r_squared - (1.0 - fit.ss_res / fit.ss_tot)).abs() <= 1e-12);
        }
    }

    /// The raw-x polynomial agrees with the standardized-space polynomial
    /// at every sample point.
    #[test]
    fn back_transform_is_exact_at_the_samples(
        span_log10 in 0.0..8.0f64,
        offset_log10 in -1.3..0.3f64,
        jitter in prop::collection::vec(-1.0..1.0f64, 10),
        noise in prop::collection::vec(-5.0..5.0f64, 10),
        degree in 1usize..=5,
    ) {
        let xs = abscissae(span_log10, offset_log10, &jitter);
        let points: Vec<(f64, f64)> = xs
            .iter()
            .zip(&noise)
            .map(|(&x, &e)| (x, 180.0 - 100.0 * (x - xs[0]) / (xs[9] - xs[0]) + e))
            .collect();
        let cdf = EmpiricalCdf::from_points(points.clone()).unwrap();
        let fit = fit_polynomial(&cdf, &FitConfig::with_degree(degree)).unwrap();

        // reconstruct the z-space polynomial from the recorded
        // standardization and compare evaluations
        for (&(x, p), r) in points.iter().zip(&fit.residuals) {
            let z_value = p - r; // fitted value computed in z space
            let x_value = fit.poly.eval(x);
            let scale = z_value.abs().max(1.0);
            prop_assert!(
                ((x_value - z_value) / scale).abs() <= 1e-10,
                "x-eval {x_value} vs z-eval {z_value}"
            );
        }
    }

    /// Rescaling all abscissae by a positive factor divides the degree-k
    /// coefficient by that factor to the k-th power and leaves R^2 alone.
    #[test]
    fn fit_is_affine_equivariant(
        alpha_log10 in -4.0..4.0f64,
        jitter in prop::collection::vec(-1.0..1.0f64, 10),
        noise in prop::collection::vec(-8.0..8.0f64, 10),
        degree in 1usize..=3,
    ) {
        let alpha = 10f64.powf(alpha_log10);
        let xs = abscissae(3.0, 0.0, &jitter);
        let ys: Vec<f64> = xs
            .iter()
            .zip(&noise)
            .map(|(&x, &e)| 170.0 - 0.12 * x + 2.4e-5 * x * x + e)
            .collect();

        let base = EmpiricalCdf::from_points(
            xs.iter().copied().zip(ys.iter().copied()).collect(),
        )
        .unwrap();
        let scaled = EmpiricalCdf::from_points(
            xs.iter().map(|&x| alpha * x).zip(ys.iter().copied()).collect(),
        )
        .unwrap();

        let fit_base = fit_polynomial(&base, &FitConfig::with_degree(degree)).unwrap();
        let fit_scaled = fit_polynomial(&scaled, &FitConfig::with_degree(degree)).unwrap();

        for (k, (got, want)) in fit_scaled
            .poly
            .coeffs()
            .iter()
            .zip(fit_base.poly.coeffs())
            .enumerate()
        {
            let expected = want / alpha.powi(k as i32);
            let denom = expected.abs().max(f64::MIN_POSITIVE);
            prop_assert!(
                ((got - expected) / denom).abs() <= 1e-6,
                "degree-{k} coefficient {got} vs {expected}"
            );
        }
        prop_assert!((fit_scaled.r_squared - fit_base.r_squared).abs() <= 1e-10);
    }

    /// Evaluating the quadratic at its own inverse returns the probed
    /// percent, and the inverse is strictly decreasing in p.
    #[test]
    fn inversion_identity_and_monotonicity(
        a_log10 in -14.0..-4.0f64,
        b_log10 in -6.0..-0.7f64,
        c in 60.0..220.0f64,
        p1 in 10.0..300.0f64,
        p2 in 10.0..300.0f64,
    ) {
        let a = 10f64.powf(a_log10);
        let b = -(10f64.powf(b_log10));
        let poly = Polynomial::quadratic(a, b, c).unwrap();

        let disc1 = b * b - 4.0 * a * (c - p1);
        let disc2 = b * b - 4.0 * a * (c - p2);
        prop_assume!(disc1 >= 0.0 && disc2 >= 0.0);

        let x1 = invert_decreasing_quadratic(&poly, p1).unwrap();
        let x2 = invert_decreasing_quadratic(&poly, p2).unwrap();

        prop_assert!((poly.eval(x1) - p1).abs() <= 1e-9 * p1.abs().max(1.0));
        prop_assert!((poly.eval(x2) - p2).abs() <= 1e-9 * p2.abs().max(1.0));
        if p1 < p2 {
            prop_assert!(x1 > x2);
        } else if p2 < p1 {
            prop_assert!(x2 > x1);
        }
    }

    /// Standardized abscissae come out centered with unit population
    /// spread.
    #[test]
    fn standardize_centers_and_scales(
        span_log10 in 0.0..9.0f64,
        offset_log10 in -1.3..0.3f64,
        jitter in prop::collection::vec(-1.0..1.0f64, 10),
    ) {
        let xs = abscissae(span_log10, offset_log10, &jitter);
        let (zs, s) = decilefit::standardize(&xs).unwrap();
        prop_assert!(s.x_scale > 0.0);
        let mean = zs.iter().sum::<f64>() / zs.len() as f64;
        let var = zs.iter().map(|z| (z - mean) * (z - mean)).sum::<f64>() / zs.len() as f64;
        prop_assert!(mean.abs() <= 1e-10);
        prop_assert!((var - 1.0).abs() <= 1e-10);
    }

    /// Standardize then back-transform is the identity on polynomials that
    /// are already expressed in z. The mean-to-scale ratio is capped at 10,
    /// which is looser than anything a strictly increasing 10-point window
    /// can produce.
    #[test]
    fn back_transform_round_trips_through_evaluation(
        coeffs in prop::collection::vec(-100.0..100.0f64, 1..=6),
        ratio in -10.0..10.0f64,
        x_scale in 0.001..1e6f64,
        probe in -3.0..3.0f64,
    ) {
        let x_mean = ratio * x_scale;
        let s = Standardization { x_mean, x_scale };
        let raw = decilefit::back_transform_coefficients(&coeffs, &s);
        let x = x_mean + probe * x_scale;
        let direct = horner(&coeffs, probe);
        let via_raw = horner(&raw, x);
        // score the error against the raw evaluation's term-magnitude sum:
        // near the center the expanded terms cancel, so the value itself is
        // not the right scale
        let magnitude: f64 = raw
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs() * x.abs().powi(k as i32))
            .sum();
        prop_assert!(
            (via_raw - direct).abs() <= 1e-11 * magnitude.max(1.0),
            "{via_raw} vs {direct} (term magnitude {magnitude})"
        );
    }
}
