//! Complementary CDFs on deciles and numerically safe polynomial least
//! squares.
//!
//! Raw abscissae can span eight orders of magnitude (incomes printed in
//! old lire reach ~10^8, so x^4 would reach ~10^33 in a raw Vandermonde
//! matrix). Fits are therefore solved on standardized abscissae
//! `z = (x - mean) / std` and the coefficients are back-transformed to raw
//! x afterwards; the pair of transforms is exact up to rounding and removes
//! the conditioning problem entirely.

use crate::error::{FitError, SeriesError};
use crate::ingest::{DecileSeries, SeriesMeta};

/// Largest fitted polynomial degree. Ten points leave at least four
/// residual degrees of freedom at this cap.
pub const MAX_DEGREE: usize = 5;

/// The fixed complementary-CDF grid paired with a decile series, in
/// percent: the first decile maps to 100, the tenth to 10.
pub const PERCENT_GRID: [f64; 10] = [
    100.0, 90.0, 80.0, 70.0, 60.0, 50.0, 40.0, 30.0, 20.0, 10.0,
];

/// Empirical complementary CDF: pairs `(x, p)` where `p` is the percent of
/// the population with income at least `x`.
///
/// Built from a [`DecileSeries`] the grid is exactly 100, 90, ..., 10; the
/// general constructor accepts any strictly increasing abscissae so that
/// arbitrary point sets can be fitted.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    points: Vec<(f64, f64)>,
}

impl EmpiricalCdf {
    /// Complementary CDF of a valid decile series: `points[i] =
    /// (values[i], 100 - 10 i)`.
    pub fn from_series(series: &DecileSeries) -> EmpiricalCdf {
        let points = series
            .values()
            .iter()
            .zip(PERCENT_GRID)
            .map(|(&x, p)| (x, p))
            .collect();
        EmpiricalCdf { points }
    }

    /// General point set: at least two points, finite, x strictly
    /// increasing.
    pub fn from_points(points: Vec<(f64, f64)>) -> Result<EmpiricalCdf, FitError> {
        if points.len() < 2 {
            return Err(FitError::TooFewPoints {
                needed: 2,
                got: points.len(),
            });
        }
        for (i, (x, p)) in points.iter().enumerate() {
            if !x.is_finite() || !p.is_finite() {
                return Err(FitError::NotFinite { index: i });
            }
        }
        for i in 0..points.len() - 1 {
            if points[i].0 >= points[i + 1].0 {
                return Err(FitError::NotIncreasing { index: i });
            }
        }
        Ok(EmpiricalCdf { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|&(x, _)| x)
    }

    pub fn ps(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|&(_, p)| p)
    }
}

/// Shorthand for [`EmpiricalCdf::from_series`].
pub fn build_cdf(series: &DecileSeries) -> EmpiricalCdf {
    EmpiricalCdf::from_series(series)
}

/// Polynomial with coefficients in ascending power order
/// (`coeffs[0]` is the constant term).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial of declared degree `coeffs.len() - 1`. Trailing
    /// zero coefficients are kept. At most degree 5; all entries finite.
    pub fn new(coeffs: Vec<f64>) -> Result<Polynomial, FitError> {
        if coeffs.is_empty()
            || coeffs.len() > MAX_DEGREE + 1
            || coeffs.iter().any(|c| !c.is_finite())
        {
            return Err(FitError::BadCoefficients);
        }
        Ok(Polynomial { coeffs })
    }

    /// Quadratic `a x^2 + b x + c` from the conventional descending names.
    pub fn quadratic(a: f64, b: f64, c: f64) -> Result<Polynomial, FitError> {
        Polynomial::new(vec![c, b, a])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Record of the abscissa standardization used during a fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Standardization {
    pub x_mean: f64,
    pub x_scale: f64,
}

impl Standardization {
    pub fn apply(&self, x: f64) -> f64 {
        (x - self.x_mean) / self.x_scale
    }
}

/// Centers on the mean and scales by the population standard deviation.
///
/// Errors when all values are equal (zero scale).
pub fn standardize(xs: &[f64]) -> Result<(Vec<f64>, Standardization), FitError> {
    if xs.len() < 2 {
        return Err(FitError::TooFewPoints {
            needed: 2,
            got: xs.len(),
        });
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let scale = var.sqrt();
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(FitError::ZeroScale);
    }
    let s = Standardization {
        x_mean: mean,
        x_scale: scale,
    };
    Ok((xs.iter().map(|&x| s.apply(x)).collect(), s))
}

/// Rewrites a polynomial in `z = (x - x_mean) / x_scale` as a polynomial in
/// raw `x`, by binomial expansion of `((x - x_mean) / x_scale)^k`.
pub fn back_transform_coefficients(coeffs_z: &[f64], s: &Standardization) -> Vec<f64> {
    let k = coeffs_z.len();
    let mut out = vec![0.0; k];
    for (deg, &cz) in coeffs_z.iter().enumerate() {
        let scaled = cz / s.x_scale.powi(deg as i32);
        for (j, slot) in out.iter_mut().enumerate().take(deg + 1) {
            *slot += scaled * binomial(deg, j) * (-s.x_mean).powi((deg - j) as i32);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Whether a fit runs on the raw points or on `(ln x, ln p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Linear,
    LogLog,
}

impl Transform {
    pub fn as_str(self) -> &'static str {
        match self {
            Transform::Linear => "linear",
            Transform::LogLog => "loglog",
        }
    }
}

impl std::fmt::Display for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Fit configuration: degree defaults to 2 and transform to linear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FitConfig {
    pub degree: usize,
    pub transform: Transform,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            degree: 2,
            transform: Transform::Linear,
        }
    }
}

impl FitConfig {
    pub fn with_degree(degree: usize) -> Self {
        FitConfig {
            degree,
            ..FitConfig::default()
        }
    }
}

/// A fitted polynomial model together with its diagnostics.
///
/// `poly` carries raw-x coefficients; for a log-log fit they apply to
/// `ln x` and predict `ln p`. Residuals, sums of squares, and R² live in
/// the fitting space.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub poly: Polynomial,
    pub residuals: Vec<f64>,
    pub ss_res: f64,
    pub ss_tot: f64,
    pub r_squared: f64,
    pub standardization: Standardization,
    pub transform: Transform,
}

impl FitResult {
    /// Predicted `p` at raw income `x`, undoing the log-log transform when
    /// one was used.
    pub fn predict(&self, x: f64) -> f64 {
        match self.transform {
            Transform::Linear => self.poly.eval(x),
            Transform::LogLog => self.poly.eval(x.ln()).exp(),
        }
    }
}

/// Least-squares polynomial fit of the configured degree.
///
/// Solving happens on standardized abscissae via the normal equations
/// (elimination with partial pivoting plus one iterative-refinement pass);
/// coefficients are back-transformed to raw x before return.
pub fn fit_polynomial(cdf: &EmpiricalCdf, config: &FitConfig) -> Result<FitResult, FitError> {
    if !(1..=MAX_DEGREE).contains(&config.degree) {
        return Err(FitError::DegreeRange {
            degree: config.degree,
        });
    }
    let n = cdf.len();
    if n < config.degree + 1 {
        return Err(FitError::TooFewPoints {
            needed: config.degree + 1,
            got: n,
        });
    }

    let (xs, ys): (Vec<f64>, Vec<f64>) = match config.transform {
        Transform::Linear => (cdf.xs().collect(), cdf.ps().collect()),
        Transform::LogLog => {
            for (i, (x, p)) in cdf.points().iter().enumerate() {
                if !(*x > 0.0) {
                    return Err(FitError::NonPositive {
                        index: i,
                        value: *x,
                    });
                }
                if !(*p > 0.0) {
                    return Err(FitError::NonPositive {
                        index: i,
                        value: *p,
                    });
                }
            }
            (
                cdf.xs().map(f64::ln).collect(),
                cdf.ps().map(f64::ln).collect(),
            )
        }
    };

    let (zs, standardization) = standardize(&xs)?;
    let coeffs_z = solve_least_squares(&zs, &ys, config.degree)?;
    let coeffs_x = back_transform_coefficients(&coeffs_z, &standardization);
    let poly = Polynomial::new(coeffs_x)?;

    let z_poly = Polynomial { coeffs: coeffs_z };
    let fitted: Vec<f64> = zs.iter().map(|&z| z_poly.eval(z)).collect();
    let residuals: Vec<f64> = ys.iter().zip(&fitted).map(|(y, f)| y - f).collect();
    let ss_res = residuals.iter().map(|r| r * r).sum::<f64>();
    let mean_y = ys.iter().sum::<f64>() / n as f64;
    let ss_tot = ys.iter().map(|y| (y - mean_y) * (y - mean_y)).sum::<f64>();
    let r2 = r_squared(&ys, &fitted)?;

    Ok(FitResult {
        poly,
        residuals,
        ss_res,
        ss_tot,
        r_squared: r2,
        standardization,
        transform: config.transform,
    })
}

/// Degree-`degree` fit of `(ln x, ln p)`; diagnostics are in log space.
pub fn fit_loglog(cdf: &EmpiricalCdf, degree: usize) -> Result<FitResult, FitError> {
    fit_polynomial(
        cdf,
        &FitConfig {
            degree,
            transform: Transform::LogLog,
        },
    )
}

/// Normal-equations least squares on already-standardized abscissae.
fn solve_least_squares(zs: &[f64], ys: &[f64], degree: usize) -> Result<Vec<f64>, FitError> {
    let n = zs.len();
    let k = degree + 1;

    // Vandermonde rows [1, z, z^2, ...]
    let mut v = vec![vec![0.0; k]; n];
    for (row, &z) in v.iter_mut().zip(zs) {
        let mut pow = 1.0;
        for cell in row.iter_mut() {
            *cell = pow;
            pow *= z;
        }
    }

    let mut gram = vec![vec![0.0; k]; k];
    let mut rhs = vec![0.0; k];
    for i in 0..n {
        for r in 0..k {
            rhs[r] += v[i][r] * ys[i];
            for c in 0..k {
                gram[r][c] += v[i][r] * v[i][c];
            }
        }
    }

    let mut coeffs = solve_linear(&gram, &rhs, degree)?;

    // one iterative-refinement pass against the residual
    let mut resid_rhs = vec![0.0; k];
    for i in 0..n {
        let mut fitted = 0.0;
        for (c, &w) in coeffs.iter().enumerate() {
            fitted += w * v[i][c];
        }
        let r = ys[i] - fitted;
        for (slot, cell) in resid_rhs.iter_mut().zip(&v[i]) {
            *slot += cell * r;
        }
    }
    let delta = solve_linear(&gram, &resid_rhs, degree)?;
    for (c, d) in coeffs.iter_mut().zip(delta) {
        *c += d;
    }

    Ok(coeffs)
}

/// Gaussian elimination with partial pivoting.
fn solve_linear(matrix: &[Vec<f64>], rhs: &[f64], degree: usize) -> Result<Vec<f64>, FitError> {
    let k = rhs.len();
    let mut m: Vec<Vec<f64>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();

    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 || !m[pivot][col].is_finite() {
            return Err(FitError::Singular { degree });
        }
        m.swap(col, pivot);
        for row in col + 1..k {
            let (upper, lower) = m.split_at_mut(row);
            let pivot_row = &upper[col];
            let target = &mut lower[0];
            let factor = target[col] / pivot_row[col];
            if factor == 0.0 {
                continue;
            }
            for (t, p) in target[col..=k].iter_mut().zip(&pivot_row[col..=k]) {
                *t -= factor * p;
            }
        }
    }

    let mut x = vec![0.0; k];
    for i in (0..k).rev() {
        let mut acc = m[i][k];
        for j in i + 1..k {
            acc -= m[i][j] * x[j];
        }
        x[i] = acc / m[i][i];
    }
    Ok(x)
}

/// Coefficient of determination `1 - SSres / SStot`, with SStot taken about
/// the mean of the observed values.
///
/// Constant observed data scores 1 when fitted exactly (SSres at rounding
/// level) and is an error otherwise.
pub fn r_squared(observed: &[f64], fitted: &[f64]) -> Result<f64, FitError> {
    if observed.len() != fitted.len() {
        return Err(FitError::LengthMismatch {
            observed: observed.len(),
            fitted: fitted.len(),
        });
    }
    if observed.len() < 2 {
        return Err(FitError::TooFewPoints {
            needed: 2,
            got: observed.len(),
        });
    }
    let n = observed.len() as f64;
    let mean = observed.iter().sum::<f64>() / n;
    let ss_tot = observed.iter().map(|y| (y - mean) * (y - mean)).sum::<f64>();
    let ss_res = observed
        .iter()
        .zip(fitted)
        .map(|(y, f)| (y - f) * (y - f))
        .sum::<f64>();
    if ss_tot == 0.0 {
        return if ss_res <= 1e-12 * n {
            Ok(1.0)
        } else {
            Err(FitError::ConstantObserved { ss_res })
        };
    }
    Ok(1.0 - ss_res / ss_tot)
}

/// Inverts `a x^2 + b x + c = p` on the decreasing branch (the root at or
/// left of the vertex).
///
/// The intended domain is the fitted model shape `a > 0`, `b < 0`; there
/// the branch is evaluated as `2 (c - p) / (-b + sqrt(disc))`, which stays
/// accurate when `p` is near `c`. The result may be negative (wealth fits
/// extrapolate below zero at p = 100). A vanishing leading coefficient
/// degenerates to the linear solution `(p - c) / b`.
pub fn invert_decreasing_quadratic(poly: &Polynomial, p: f64) -> Result<f64, FitError> {
    if poly.degree() != 2 {
        return Err(FitError::NotQuadratic {
            degree: poly.degree(),
        });
    }
    let (c, b, a) = (poly.coeffs[0], poly.coeffs[1], poly.coeffs[2]);
    if a.abs() <= 1e-300 {
        if b == 0.0 {
            return Err(FitError::DegenerateQuadratic);
        }
        return Ok((p - c) / b);
    }
    let discriminant = b * b - 4.0 * a * (c - p);
    if discriminant < 0.0 {
        return Err(FitError::NegativeDiscriminant { p, discriminant });
    }
    let root = discriminant.sqrt();
    if b < 0.0 {
        // smaller root, cancellation-free form
        Ok(2.0 * (c - p) / (-b + root))
    } else {
        Ok((-b - root) / (2.0 * a))
    }
}

/// Inverts a fitted quadratic at every grid percent to produce the
/// synthetic decile series it implies.
pub fn reconstruct_series_from_fit(
    poly: &Polynomial,
    meta: SeriesMeta,
) -> Result<DecileSeries, FitError> {
    let mut values = [0.0; 10];
    for (slot, p) in values.iter_mut().zip(PERCENT_GRID) {
        *slot = invert_decreasing_quadratic(poly, p).map_err(|source| FitError::ReconstructAt {
            p,
            source: Box::new(source),
        })?;
    }
    DecileSeries::new(meta, &values)
        .map_err(|source: SeriesError| FitError::ReconstructInvalid { source })
}
