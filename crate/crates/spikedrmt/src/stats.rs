//! Small statistics helpers: histograms, curve distances, KS test.

use crate::error::{Error, Result};
use crate::spectra::DensityCurve;

/// Sample mean and standard error of the mean.
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Uniform-bin histogram over [min, max] evaluated at bin centres and
/// normalized so that Σ value·width = (number of in-range samples)/`per`.
///
/// With `per` = number of trials the curve estimates the eigenvalue density
/// with the model's own mass (N, m, …).
pub fn histogram_density(samples: &[f64], min: f64, max: f64, bins: usize, per: f64) -> Result<DensityCurve> {
    if bins == 0 || !(max > min) {
        return Err(Error::Config("histogram needs bins >= 1 and max > min".into()));
    }
    let width = (max - min) / bins as f64;
    let mut counts = vec![0u64; bins];
    for &x in samples {
        if x >= min && x <= max {
            let k = (((x - min) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
    }
    let grid: Vec<f64> = (0..bins).map(|k| min + (k as f64 + 0.5) * width).collect();
    let values: Vec<f64> = counts.iter().map(|&c| c as f64 / (per * width)).collect();
    let mut curve = DensityCurve::new(grid, values)?;
    curve.set_meta("kind", "histogram");
    curve.set_meta("bins", bins);
    Ok(curve)
}

/// Freedman–Diaconis bin count for a histogram of `samples` over
/// [min, max]: bin width 2·IQR·n^{−1/3}. At least one bin.
pub fn freedman_diaconis_bins(samples: &[f64], min: f64, max: f64) -> usize {
    let mut sorted: Vec<f64> = samples.iter().copied().filter(|x| x.is_finite()).collect();
    if sorted.len() < 2 || !(max > min) {
        return 1;
    }
    sorted.sort_by(f64::total_cmp);
    let quantile = |q: f64| {
        let pos = q * (sorted.len() - 1) as f64;
        let (lo, frac) = (pos.floor() as usize, pos.fract());
        let hi = (lo + 1).min(sorted.len() - 1);
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    };
    let iqr = quantile(0.75) - quantile(0.25);
    let width = 2.0 * iqr / (sorted.len() as f64).cbrt();
    if !(width > 0.0) {
        return 1;
    }
    ((max - min) / width).ceil().max(1.0) as usize
}

/// L1 distance between two curves on a common grid (trapezoid weights),
/// after normalizing both to unit mass.
pub fn l1_distance_normalized(a: &DensityCurve, b: &DensityCurve) -> Result<f64> {
    check_same_grid(a, b)?;
    let (na, nb) = (a.normalized(1.0), b.normalized(1.0));
    let diff: Vec<f64> = na.values.iter().zip(&nb.values).map(|(x, y)| (x - y).abs()).collect();
    Ok(crate::quadrature::trapezoid(&a.grid, &diff))
}

/// L1 distance between a histogram (as built by [`histogram_density`]) and
/// a density, compared bin by bin as probability masses after normalizing
/// both to unit mass. The density is integrated over each bin with the
/// substitution x = lo + (hi−lo)(1−cos πt)/2, so integrable inverse-square-root
/// singularities at bin edges (hard edges of spectral laws) are handled.
pub fn binned_l1_distance(hist: &DensityCurve, mut density: impl FnMut(f64) -> f64) -> Result<f64> {
    let bins = hist.grid.len();
    if bins == 0 {
        return Err(Error::EmptyRequest("binned_l1_distance with an empty histogram"));
    }
    let width = if bins > 1 { hist.grid[1] - hist.grid[0] } else { 1.0 };
    if !(width > 0.0) {
        return Err(Error::Dimension("histogram grid must be increasing".into()));
    }
    let rule = crate::quadrature::GaussRule::new(24, 0.0, 1.0);
    let half_pi = 0.5 * std::f64::consts::PI;
    let observed: Vec<f64> = hist.values.iter().map(|v| v * width).collect();
    let expected: Vec<f64> = hist
        .grid
        .iter()
        .map(|&centre| {
            let lo = centre - 0.5 * width;
            rule.integrate(|t| {
                let x = lo + 0.5 * width * (1.0 - (2.0 * half_pi * t).cos());
                density(x) * half_pi * width * (2.0 * half_pi * t).sin()
            })
        })
        .collect();
    let (so, se) = (observed.iter().sum::<f64>(), expected.iter().sum::<f64>());
    if !(so > 0.0 && se > 0.0) {
        return Err(Error::Domain("binned_l1_distance needs positive total mass".into()));
    }
    Ok(observed.iter().zip(&expected).map(|(o, e)| (o / so - e / se).abs()).sum())
}

/// Supremum distance between two curves on a common grid (unnormalized).
pub fn sup_distance(a: &DensityCurve, b: &DensityCurve) -> Result<f64> {
    check_same_grid(a, b)?;
    Ok(a.values.iter().zip(&b.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

fn check_same_grid(a: &DensityCurve, b: &DensityCurve) -> Result<()> {
    if a.grid.len() != b.grid.len() || a.grid.iter().zip(&b.grid).any(|(x, y)| (x - y).abs() > 1e-12 * x.abs().max(1.0))
    {
        return Err(Error::Dimension("curves are not sampled on the same grid".into()));
    }
    Ok(())
}

/// Two-sample Kolmogorov–Smirnov test: returns (D statistic, p-value) with
/// the asymptotic Kolmogorov distribution and the Stephens correction.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n, m) = (x.len(), y.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let v = x[i].min(y[j]);
        while i < n && x[i] <= v {
            i += 1;
        }
        while j < m && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let en = ((n * m) as f64 / (n + m) as f64).sqrt();
    let lambda = (en + 0.12 + 0.11 / en) * d;
    (d, kolmogorov_survival(lambda))
}

/// Q_KS(λ) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}.
fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}
