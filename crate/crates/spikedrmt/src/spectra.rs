//! Limiting spectral laws: Wigner semicircle and Marchenko–Pastur, with
//! closed-form Stieltjes transforms and Catalan/Narayana moments.

use crate::error::{domain, Error, Result};
use crate::quadrature::trapezoid;
use crate::specialfn::{catalan, narayana};
use std::f64::consts::PI;

/// A limiting eigenvalue law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LimitLaw {
    /// Semicircle with total mass `n` on [−J, J], J = √(2n).
    Semicircle { n: usize },
    /// Unit-mass Marchenko–Pastur law (n − m fixed) in the unscaled variable
    /// x ∈ (0, 4m).
    MarchenkoPasturFixedDiff { m: usize },
    /// Unit-mass Marchenko–Pastur law with ratio γ = n/m ≥ 1: continuous part
    /// on (c, d), c = (1−√γ)², d = (1+√γ)², plus an atom 1 − 1/γ at zero.
    MarchenkoPasturGamma { gamma: f64 },
}

impl LimitLaw {
    /// The semicircle radius J = √(2N) (only meaningful for the semicircle).
    fn radius(n: usize) -> f64 {
        (2.0 * n as f64).sqrt()
    }

    /// Support of the absolutely continuous part.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            LimitLaw::Semicircle { n } => {
                let j = Self::radius(n);
                (-j, j)
            }
            LimitLaw::MarchenkoPasturFixedDiff { m } => (0.0, 4.0 * m as f64),
            LimitLaw::MarchenkoPasturGamma { gamma } => {
                let s = gamma.sqrt();
                ((1.0 - s).powi(2), (1.0 + s).powi(2))
            }
        }
    }

    pub fn upper_edge(&self) -> f64 {
        self.support().1
    }

    /// Weight of the atom at zero (nonzero only for MP-γ with γ > 1).
    pub fn point_mass(&self) -> f64 {
        match *self {
            LimitLaw::MarchenkoPasturGamma { gamma } => 1.0 - 1.0 / gamma,
            _ => 0.0,
        }
    }

    /// Total mass (continuous part plus atom): N for the semicircle, 1 otherwise.
    pub fn total_mass(&self) -> f64 {
        match *self {
            LimitLaw::Semicircle { n } => n as f64,
            _ => 1.0,
        }
    }

    /// Density of the absolutely continuous part at `x`.
    pub fn density(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(x > lo && x < hi) {
            return 0.0;
        }
        match *self {
            LimitLaw::Semicircle { n } => {
                let j = Self::radius(n);
                2.0 * n as f64 / (PI * j) * (1.0 - (x / j).powi(2)).max(0.0).sqrt()
            }
            LimitLaw::MarchenkoPasturFixedDiff { m } => {
                let u = x / m as f64;
                (4.0 - u).max(0.0).sqrt() / (2.0 * PI * u.sqrt()) / m as f64
            }
            LimitLaw::MarchenkoPasturGamma { gamma } => ((x - lo) * (hi - x)).max(0.0).sqrt() / (2.0 * PI * gamma * x),
        }
    }

    /// Stieltjes transform ∫ρ(x)/(z − x) dx of the whole law (including the
    /// atom) for real z outside the support.
    pub fn stieltjes(&self, z: f64) -> Result<f64> {
        match *self {
            LimitLaw::Semicircle { n } => {
                let j = Self::radius(n);
                if z.abs() < j {
                    return Err(outside(z, self));
                }
                // (2Nz/J²)(1 − √(1 − J²/z²)) written without cancellation.
                let eps = (j / z).powi(2);
                Ok(2.0 * n as f64 * z / (j * j) * eps / (1.0 + (1.0 - eps).sqrt()))
            }
            LimitLaw::MarchenkoPasturFixedDiff { m } => {
                let mf = m as f64;
                if z < 4.0 * mf {
                    return Err(outside(z, self));
                }
                let eps = 4.0 * mf / z;
                Ok(eps / (1.0 + (1.0 - eps).sqrt()) / (2.0 * mf))
            }
            LimitLaw::MarchenkoPasturGamma { gamma } => {
                if z < self.upper_edge() {
                    return Err(outside(z, self));
                }
                let continuous = marchenko_pastur_reduced_stieltjes(gamma, z)?;
                Ok((1.0 - 1.0 / gamma) / z + continuous / gamma)
            }
        }
    }

    /// k-th moment. Semicircle: ∫xᵏρ (odd moments vanish, k = 0 gives N).
    /// Fixed-diff MP: mᵏ·Catalan(k). MP-γ: moments of the normalized
    /// continuous part, Σ_i N(k, i−1) γⁱ (1 at k = 0).
    pub fn moment(&self, k: usize) -> Result<f64> {
        let limit = if matches!(self, LimitLaw::Semicircle { .. }) { 128 } else { 64 };
        if k > limit {
            return Err(domain(format!("moment order {k} exceeds {limit}")));
        }
        match *self {
            LimitLaw::Semicircle { n } => {
                if k % 2 == 1 {
                    return Ok(0.0);
                }
                let half = k / 2;
                let j = Self::radius(n);
                Ok(2.0 * n as f64 / j * (j / 2.0).powi(k as i32 + 1) * catalan(half as u64)? as f64)
            }
            LimitLaw::MarchenkoPasturFixedDiff { m } => Ok((m as f64).powi(k as i32) * catalan(k as u64)? as f64),
            LimitLaw::MarchenkoPasturGamma { gamma } => {
                if k == 0 {
                    return Ok(1.0);
                }
                let mut acc = 0.0;
                for i in 1..=k {
                    acc += narayana(k as u64, (i - 1) as u64)? as f64 * gamma.powi(i as i32);
                }
                Ok(acc)
            }
        }
    }
}

fn outside(z: f64, law: &LimitLaw) -> Error {
    domain(format!("Stieltjes transform requested at z = {z} inside the support {:?} of {law:?}", law.support()))
}

/// Closed form of ∫_c^d ρ̃(x)/(z − x) dx for the normalized continuous part
/// ρ̃(x) = √((x−c)(d−x))/(2πx) of the MP-γ law:
/// ½(1 − (γ−1)/z − √(1 − 2(γ+1)/z + (γ−1)²/z²)), for z ≥ d.
pub fn marchenko_pastur_reduced_stieltjes(gamma: f64, z: f64) -> Result<f64> {
    let d = (1.0 + gamma.sqrt()).powi(2);
    if z < d {
        return Err(domain(format!("z = {z} lies inside the MP support (edge {d})")));
    }
    let a = (gamma - 1.0) / z;
    let root = (1.0 - 2.0 * (gamma + 1.0) / z + a * a).max(0.0).sqrt();
    // Rationalized form: (2/z)/(1 − a + root).
    Ok(2.0 / z / (1.0 - a + root))
}

/// Grid-sampled density with free-form metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Ordered key/value tags (model id, declared mass, seed, …).
    pub meta: Vec<(String, String)>,
}

impl DensityCurve {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Dimension(format!("grid has {} points but values has {}", grid.len(), values.len())));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain("density grid must be strictly increasing"));
        }
        Ok(Self { grid, values, meta: Vec::new() })
    }

    /// Samples `law.density` on the grid.
    pub fn from_law(law: &LimitLaw, grid: Vec<f64>) -> Result<Self> {
        let values = grid.iter().map(|&x| law.density(x)).collect();
        let mut curve = Self::new(grid, values)?;
        curve.set_meta("law", format!("{law:?}"));
        curve.set_meta("mass", law.total_mass() - law.point_mass());
        Ok(curve)
    }

    pub fn set_meta(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        if let Some(entry) = self.meta.iter_mut().find(|(k, _)| k == key) {
            entry.1 = value;
        } else {
            self.meta.push((key.to_string(), value));
        }
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.set_meta(key, value);
        self
    }

    /// Trapezoid integral over the grid.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.grid, &self.values)
    }

    /// The curve rescaled to the given trapezoid mass.
    pub fn normalized(&self, mass: f64) -> Self {
        let total = self.integral();
        let scale = if total != 0.0 { mass / total } else { 0.0 };
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * scale).collect(),
            meta: self.meta.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semicircle_values() {
        let law = LimitLaw::Semicircle { n: 8 };
        let j = 4.0;
        assert!((law.density(0.0) - 16.0 / (PI * j)).abs() < 1e-15);
        assert_eq!(law.density(j), 0.0);
        assert!((law.stieltjes(j).unwrap() - 2.0 * 8.0 / j).abs() < 1e-14);
        assert!(law.stieltjes(0.5 * j).is_err());
        assert_eq!(law.moment(0).unwrap(), 8.0);
    }

    #[test]
    fn mp_moments() {
        let law = LimitLaw::MarchenkoPasturGamma { gamma: 1.5 };
        assert!((law.moment(3).unwrap() - 11.625).abs() < 1e-12);
        let law = LimitLaw::MarchenkoPasturGamma { gamma: 2.0 };
        assert!((law.moment(2).unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_one_reduces_to_fixed_difference() {
        let a = LimitLaw::MarchenkoPasturGamma { gamma: 1.0 };
        let b = LimitLaw::MarchenkoPasturFixedDiff { m: 1 };
        for &z in &[4.0, 4.5, 7.0, 40.0] {
            let (sa, sb) = (a.stieltjes(z).unwrap(), b.stieltjes(z).unwrap());
            assert!((sa - sb).abs() < 1e-15 * sa.abs());
        }
    }

    #[test]
    fn curve_validation() {
        assert!(DensityCurve::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(DensityCurve::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
        let c = DensityCurve::new(vec![0.0, 1.0, 2.0], vec![1.0, 1.0, 1.0]).unwrap();
        assert!((c.normalized(4.0).integral() - 4.0).abs() < 1e-15);
    }
}
