//! Rank-one (and chiral rank-two) perturbations of diagonal matrices via
//! secular equations, and the large-size eigenvalue-separation predictors.
//!
//! For `A = diag(a) + μ y yᵀ` the eigenvalues are the zeros of
//! `1 = μ Σ w_i/(λ − a_i)` with `w_i = |y_i|²`; for μ > 0 they interlace
//! `λ_1 > a_1 > λ_2 > … > λ_N > a_N`. Each root is bracketed in its
//! interlacing interval, located by bisection, then polished by a
//! safeguarded Newton iteration written relative to the nearest pole so
//! that roots very close to a diagonal entry keep full relative accuracy.

use crate::error::{domain, Error, Result};
use nalgebra::Complex;

/// Rank-one update problem `diag(a) + μ·(weights as |y|²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecularProblem {
    pub diag: Vec<f64>,
    pub weights: Vec<f64>,
    pub coupling: f64,
}

/// What was removed before root finding.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DeflationReport {
    /// Diagonal entries with zero weight (exact eigenvalues).
    pub zero_weight: Vec<f64>,
    /// Repeated diagonal values merged into one pole: (value, merged count).
    pub merged: Vec<(f64, usize)>,
}

/// Eigenvalues (descending) together with the deflation report.
#[derive(Clone, Debug, PartialEq)]
pub struct SecularSolution {
    pub eigenvalues: Vec<f64>,
    pub deflation: DeflationReport,
}

/// All eigenvalues of the rank-one update, in descending order.
pub fn secular_eigenvalues(problem: &SecularProblem, tol: f64) -> Result<Vec<f64>> {
    Ok(solve_secular(problem, tol)?.eigenvalues)
}

/// Like [`secular_eigenvalues`] but also reports deflation.
pub fn solve_secular(problem: &SecularProblem, tol: f64) -> Result<SecularSolution> {
    let SecularProblem { diag, weights, coupling } = problem;
    if diag.len() != weights.len() {
        return Err(Error::Dimension(format!("diag has {} entries but weights has {}", diag.len(), weights.len())));
    }
    if !(tol > 0.0) {
        return Err(domain("secular tolerance must be positive"));
    }
    if diag.iter().chain(weights).any(|v| !v.is_finite()) || !coupling.is_finite() {
        return Err(Error::Degenerate("non-finite diagonal, weight or coupling".into()));
    }
    let has_pos = weights.iter().any(|&w| w > 0.0);
    let has_neg = weights.iter().any(|&w| w < 0.0);
    if has_pos && has_neg {
        return Err(Error::Unsupported(
            "weights of mixed sign: the secular solver requires μ·w_i of uniform sign".into(),
        ));
    }
    // Fold the weight sign into the coupling; then μ < 0 maps to μ > 0 by
    // negating the diagonal.
    let (weights, mut mu): (Vec<f64>, f64) =
        if has_neg { (weights.iter().map(|w| -w).collect(), -coupling) } else { (weights.clone(), *coupling) };
    let flip = mu < 0.0;
    let mut diag: Vec<f64> = diag.clone();
    if flip {
        diag.iter_mut().for_each(|a| *a = -*a);
        mu = -mu;
    }

    let mut pairs: Vec<(f64, f64)> = diag.into_iter().zip(weights).collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut report = DeflationReport::default();
    let mut fixed: Vec<f64> = Vec::new();
    let mut poles: Vec<f64> = Vec::new();
    let mut pole_weights: Vec<f64> = Vec::new();

    if mu == 0.0 {
        fixed.extend(pairs.iter().map(|p| p.0));
    } else {
        let scale = pairs.iter().map(|p| p.0.abs()).fold(0.0, f64::max);
        let mut i = 0;
        while i < pairs.len() {
            let value = pairs[i].0;
            let mut j = i;
            let mut w = 0.0;
            while j < pairs.len() && (pairs[j].0 - value).abs() <= 4.0 * f64::EPSILON * scale {
                w += pairs[j].1;
                j += 1;
            }
            let count = j - i;
            if w == 0.0 {
                report.zero_weight.extend(std::iter::repeat_n(value, count));
                fixed.extend(std::iter::repeat_n(value, count));
            } else {
                if count > 1 {
                    report.merged.push((value, count));
                    fixed.extend(std::iter::repeat_n(value, count - 1));
                }
                poles.push(value);
                pole_weights.push(w);
            }
            i = j;
        }
    }

    let mut eigenvalues = fixed;
    eigenvalues.extend(secular_roots(&poles, &pole_weights, mu, tol)?);
    if flip {
        eigenvalues.iter_mut().for_each(|x| *x = -*x);
        for v in report.zero_weight.iter_mut() {
            *v = -*v;
        }
        for v in report.merged.iter_mut() {
            v.0 = -v.0;
        }
    }
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(SecularSolution { eigenvalues, deflation: report })
}

/// Roots of 1 = μ Σ z_i/(λ − d_i) for strictly decreasing d, z > 0, μ > 0.
fn secular_roots(d: &[f64], z: &[f64], mu: f64, tol: f64) -> Result<Vec<f64>> {
    let k = d.len();
    let mut roots = Vec::with_capacity(k);
    let total: f64 = z.iter().sum();
    for i in 0..k {
        let (lower, upper) = if i == 0 { (d[0], d[0] + mu * total) } else { (d[i], d[i - 1]) };
        roots.push(root_in_bracket(d, z, mu, i, lower, upper, tol)?);
    }
    Ok(roots)
}

/// Secular function relative to an origin `pole`: f(t) = 1 − μ Σ z_j/(t − δ_j)
/// with δ_j = d_j − pole; returns (f, f′).
fn shifted_secular(delta: &[f64], z: &[f64], mu: f64, t: f64) -> (f64, f64) {
    let mut s = 0.0;
    let mut ds = 0.0;
    for (&dj, &zj) in delta.iter().zip(z) {
        let inv = 1.0 / (t - dj);
        s += zj * inv;
        ds += zj * inv * inv;
    }
    (1.0 - mu * s, mu * ds)
}

fn root_in_bracket(d: &[f64], z: &[f64], mu: f64, i: usize, lower: f64, upper: f64, tol: f64) -> Result<f64> {
    // Pick the origin: the pole nearer to the root, decided by the sign of
    // the secular function at the midpoint (it increases across the bracket).
    let mid = 0.5 * (lower + upper);
    let (fmid, _) = shifted_secular(d, z, mu, mid);
    let use_upper_pole = i > 0 && fmid > 0.0;
    let origin = if use_upper_pole { upper } else { lower };
    let delta: Vec<f64> = d.iter().map(|&dj| dj - origin).collect();
    let (mut lo, mut hi) = (lower - origin, upper - origin);
    let gap = hi - lo;

    // Bisection down to 1e−3 of the gap.
    while hi - lo > 1e-3 * gap {
        let t = 0.5 * (lo + hi);
        let (f, _) = shifted_secular(&delta, z, mu, t);
        if f < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
    }
    // Safeguarded Newton.
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (f, df) = shifted_secular(&delta, z, mu, t);
        if f == 0.0 {
            return Ok(origin + t);
        }
        if f < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let mut next = t - f / df;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        let step = (next - t).abs();
        t = next;
        let scale = (origin + t).abs().max(t.abs()).max(f64::MIN_POSITIVE);
        if step <= tol * scale || hi - lo <= tol * scale {
            return Ok(origin + t);
        }
    }
    if hi - lo <= 1e3 * tol * (origin + t).abs().max(gap) {
        return Ok(origin + t);
    }
    Err(Error::Bracketing(format!("secular root {i} in ({lower}, {upper}) did not converge")))
}

/// How the chiral rank-two coupling vectors are specified.
#[derive(Clone, Copy, Debug)]
pub enum ChiralCoupling<'a> {
    /// Explicit overlaps u_j = ⟨U_j, 1_n⟩ (length n; entries beyond m belong to
    /// the n − m zero modes) and v_j = ⟨V_j, 1_m⟩ (length m), where X = U S V†.
    Explicit { u: &'a [Complex<f64>], v: &'a [Complex<f64>] },
    /// Overlaps replaced by their means (u_j v̄_j → 0, |u_j|², |v_j|² → 1) and
    /// the zero-mode terms dropped: roots of 1 = μ Σ_j λ/(λ² − s_j²).
    Averaged,
}

/// Positive eigenvalues (ascending) of the chiral matrix with blocks
/// `X + μ 1_n 1_mᵀ`, given the singular values `s` of `X`.
///
/// In the explicit mode this is the set of singular values of
/// `S + μ u v†`; the rank-two Hermitian update of the block spectrum
/// (±s_j, n − m zeros) is split into two rank-one updates, each solved by the
/// secular solver (the second in the eigenbasis of the first).
pub fn chiral_secular_eigenvalues(
    singulars: &[f64],
    coupling: ChiralCoupling<'_>,
    mu: f64,
    n: usize,
    tol: f64,
) -> Result<Vec<f64>> {
    let m = singulars.len();
    if n < m {
        return Err(Error::Dimension(format!("chiral shape requires n >= m, got n={n}, m={m}")));
    }
    if singulars.iter().any(|&s| !(s >= 0.0)) {
        return Err(domain("singular values must be nonnegative"));
    }
    if mu == 0.0 {
        let mut out = singulars.to_vec();
        out.sort_by(f64::total_cmp);
        return Ok(out);
    }
    match coupling {
        ChiralCoupling::Averaged => {
            // λ/(λ² − s²) = ½[1/(λ − s) + 1/(λ + s)]: a secular equation with
            // poles ±s_j, unit weights and coupling μ/2.
            let mut diag: Vec<f64> = singulars.to_vec();
            diag.extend(singulars.iter().map(|s| -s));
            let weights = vec![1.0; diag.len()];
            let roots = secular_eigenvalues(&SecularProblem { diag, weights, coupling: 0.5 * mu }, tol)?;
            let mut positive: Vec<f64> = roots.into_iter().filter(|&x| x > 0.0).collect();
            positive.sort_by(f64::total_cmp);
            Ok(positive)
        }
        ChiralCoupling::Explicit { u, v } => {
            if u.len() != n || v.len() != m {
                return Err(Error::Dimension(format!(
                    "explicit chiral coupling needs |u| = n = {n} and |v| = m = {m}, got {} and {}",
                    u.len(),
                    v.len()
                )));
            }
            chiral_explicit(singulars, u, v, mu, n, tol)
        }
    }
}

fn chiral_explicit(s: &[f64], u: &[Complex<f64>], v: &[Complex<f64>], mu: f64, n: usize, tol: f64) -> Result<Vec<f64>> {
    let m = s.len();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    // Block eigenbasis: (U_j, ±V_j)/√2 for ±s_j, (U_j, 0) for the zero modes.
    // Components of e = (1_n, 0) and f = (0, 1_m) in that basis.
    let mut diag = Vec::with_capacity(n + m);
    let mut e = Vec::with_capacity(n + m);
    let mut f = Vec::with_capacity(n + m);
    for j in 0..m {
        diag.push(s[j]);
        e.push(u[j].conj() * h);
        f.push(v[j].conj() * h);
    }
    for j in 0..m {
        diag.push(-s[j]);
        e.push(u[j].conj() * h);
        f.push(-v[j].conj() * h);
    }
    for uj in &u[m..n] {
        diag.push(0.0);
        e.push(uj.conj());
        f.push(Complex::new(0.0, 0.0));
    }
    // μ(e f† + f e†) = (μ/2)[p p† − q q†] with p = e + f, q = e − f.
    let p: Vec<Complex<f64>> = e.iter().zip(&f).map(|(a, b)| a + b).collect();
    let q: Vec<Complex<f64>> = e.iter().zip(&f).map(|(a, b)| a - b).collect();
    let first = rank_one_with_vectors(&diag, &p, 0.5 * mu, tol)?;
    // Express q in the eigenbasis of the first update.
    let q_new: Vec<f64> = first
        .vectors
        .iter()
        .map(|col| match col {
            EigenColumn::Unit(k) => q[*k].norm_sqr(),
            EigenColumn::Dense(c) => c.iter().zip(&q).map(|(a, b)| a.conj() * b).sum::<Complex<f64>>().norm_sqr(),
        })
        .collect();
    let second = secular_eigenvalues(&SecularProblem { diag: first.values, weights: q_new, coupling: -0.5 * mu }, tol)?;
    let scale = second.iter().fold(0.0_f64, |acc, x| acc.max(x.abs())).max(f64::MIN_POSITIVE);
    let mut positive: Vec<f64> = second.into_iter().filter(|&x| x > 1e-10 * scale).collect();
    positive.sort_by(f64::total_cmp);
    // Exactly m singular values; pad with zeros if some collapsed to zero.
    positive.truncate(m);
    while positive.len() < m {
        positive.insert(0, 0.0);
    }
    Ok(positive)
}

enum EigenColumn {
    Unit(usize),
    Dense(Vec<Complex<f64>>),
}

struct RankOneEigen {
    values: Vec<f64>,
    vectors: Vec<EigenColumn>,
}

/// Eigenpairs of diag(d) + ρ p p†, handling zero components and repeated
/// diagonal values by explicit deflation (Householder-free: a unitary
/// rotation inside each repeated block concentrates the weight).
fn rank_one_with_vectors(d: &[f64], p: &[Complex<f64>], rho: f64, tol: f64) -> Result<RankOneEigen> {
    let dim = d.len();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| d[b].total_cmp(&d[a]));
    let scale = d.iter().fold(0.0_f64, |acc, x| acc.max(x.abs())).max(f64::MIN_POSITIVE);

    let mut values = Vec::with_capacity(dim);
    let mut vectors = Vec::with_capacity(dim);
    // Active poles with their combined basis vector (unit-norm direction of p
    // within the repeated block).
    let mut pole_value = Vec::new();
    let mut pole_weight = Vec::new();
    let mut pole_dir: Vec<Vec<(usize, Complex<f64>)>> = Vec::new();

    let mut i = 0;
    while i < dim {
        let value = d[order[i]];
        let mut j = i;
        while j < dim && (d[order[j]] - value).abs() <= 4.0 * f64::EPSILON * scale {
            j += 1;
        }
        let block: Vec<usize> = order[i..j].to_vec();
        let norm2: f64 = block.iter().map(|&k| p[k].norm_sqr()).sum();
        if norm2 == 0.0 {
            for &k in &block {
                values.push(value);
                vectors.push(EigenColumn::Unit(k));
            }
        } else {
            let norm = norm2.sqrt();
            let dir: Vec<(usize, Complex<f64>)> = block.iter().map(|&k| (k, p[k] / norm)).collect();
            // Orthogonal complement of `dir` within the block: eigenvectors
            // with eigenvalue `value`, by Gram–Schmidt on unit vectors.
            let mut basis: Vec<Vec<(usize, Complex<f64>)>> = vec![dir.clone()];
            for &k in &block {
                if basis.len() == block.len() {
                    break;
                }
                let mut cand: Vec<Complex<f64>> = block
                    .iter()
                    .map(|&kk| if kk == k { Complex::new(1.0, 0.0) } else { Complex::new(0.0, 0.0) })
                    .collect();
                for b in &basis {
                    let proj: Complex<f64> = b.iter().zip(&cand).map(|((_, bv), c)| bv.conj() * c).sum();
                    for (c, (_, bv)) in cand.iter_mut().zip(b) {
                        *c -= proj * bv;
                    }
                }
                let nrm: f64 = cand.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                if nrm > 1e-8 {
                    basis.push(block.iter().copied().zip(cand.iter().map(|c| c / nrm)).collect());
                }
            }
            for b in basis.into_iter().skip(1) {
                values.push(value);
                vectors.push(EigenColumn::Dense(expand(&b, dim)));
            }
            pole_value.push(value);
            pole_weight.push(norm2);
            pole_dir.push(dir);
        }
        i = j;
    }

    if rho == 0.0 || pole_value.is_empty() {
        for (val, dir) in pole_value.into_iter().zip(pole_dir) {
            values.push(val);
            vectors.push(EigenColumn::Dense(expand(&dir, dim)));
        }
        return Ok(RankOneEigen { values, vectors });
    }
    let roots = secular_eigenvalues(
        &SecularProblem { diag: pole_value.clone(), weights: pole_weight.clone(), coupling: rho },
        tol,
    )?;
    for lam in roots {
        // Eigenvector ∝ (λ − D)^{-1} p restricted to the pole directions.
        let mut col = vec![Complex::new(0.0, 0.0); dim];
        let mut norm2 = 0.0;
        for ((&val, &w), dir) in pole_value.iter().zip(&pole_weight).zip(&pole_dir) {
            let coef = w.sqrt() / (lam - val);
            for &(k, c) in dir {
                col[k] += c * coef;
            }
            norm2 += coef * coef;
        }
        let norm = norm2.sqrt();
        if norm.is_finite() && norm > 0.0 {
            col.iter_mut().for_each(|c| *c /= norm);
        }
        values.push(lam);
        vectors.push(EigenColumn::Dense(col));
    }
    Ok(RankOneEigen { values, vectors })
}

fn expand(sparse: &[(usize, Complex<f64>)], dim: usize) -> Vec<Complex<f64>> {
    let mut v = vec![Complex::new(0.0, 0.0); dim];
    for &(k, c) in sparse {
        v[k] = c;
    }
    v
}

/// Dyson index of a sampled ensemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Beta {
    /// Real symmetric / real Gaussian entries.
    Real,
    /// Complex Hermitian / complex Gaussian entries.
    Complex,
}

impl Beta {
    pub fn from_index(beta: u8) -> Result<Self> {
        match beta {
            1 => Ok(Beta::Real),
            2 => Ok(Beta::Complex),
            other => Err(Error::Unsupported(format!("beta = {other} (only 1 and 2)"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Beta::Real => 1,
            Beta::Complex => 2,
        }
    }
}

/// A spiked ensemble at finite size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpikeModel {
    /// `G + H⁽⁰⁾`, N×N, with r eigenvalues of H⁽⁰⁾ equal to `c·J/2`, J = √(2N).
    GaussianShift { beta: Beta, n: usize, c: f64, r: usize },
    /// Wishart `Σ^{1/2} Y†Y Σ^{1/2}` with Y n×m and Σ = diag(sʳ, 1^{m−r}).
    WishartSpike { beta: Beta, m: usize, n: usize, s: f64, r: usize },
    /// As [`SpikeModel::WishartSpike`] with n = round(γ m).
    WishartSpikeGamma { beta: Beta, m: usize, gamma: f64, s: f64, r: usize },
    /// Chiral blocks of `X + X⁽⁰⁾`, X n×m, with r singular values of X⁽⁰⁾
    /// equal to `c·J/2`, J = 2√m.
    ChiralShift { beta: Beta, m: usize, n: usize, c: f64, r: usize },
}

impl SpikeModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SpikeModel::GaussianShift { n, c, r, .. } => {
                if n == 0 || r > n {
                    return Err(Error::Dimension(format!("need 0 <= r <= N, N >= 1 (N={n}, r={r})")));
                }
                if !(c >= 0.0) {
                    return Err(domain("shift c must be nonnegative"));
                }
            }
            SpikeModel::WishartSpike { m, n, s, r, .. } => {
                if m == 0 || n < m || r > m {
                    return Err(Error::Dimension(format!("need n >= m >= r (m={m}, n={n}, r={r})")));
                }
                if !(s > 0.0) {
                    return Err(domain("spike eigenvalue s must be positive"));
                }
            }
            SpikeModel::WishartSpikeGamma { m, gamma, s, r, .. } => {
                if m == 0 || r > m {
                    return Err(Error::Dimension(format!("need m >= r (m={m}, r={r})")));
                }
                if !(gamma >= 1.0) {
                    return Err(domain("gamma must be at least 1"));
                }
                if !(s > 0.0) {
                    return Err(domain("spike eigenvalue s must be positive"));
                }
            }
            SpikeModel::ChiralShift { m, n, c, r, .. } => {
                if m == 0 || n < m || r > m {
                    return Err(Error::Dimension(format!("need n >= m >= r (m={m}, n={n}, r={r})")));
                }
                if !(c >= 0.0) {
                    return Err(domain("shift c must be nonnegative"));
                }
            }
        }
        Ok(())
    }

    pub fn beta(&self) -> Beta {
        match *self {
            SpikeModel::GaussianShift { beta, .. }
            | SpikeModel::WishartSpike { beta, .. }
            | SpikeModel::WishartSpikeGamma { beta, .. }
            | SpikeModel::ChiralShift { beta, .. } => beta,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            SpikeModel::GaussianShift { r, .. }
            | SpikeModel::WishartSpike { r, .. }
            | SpikeModel::WishartSpikeGamma { r, .. }
            | SpikeModel::ChiralShift { r, .. } => r,
        }
    }

    /// Sample count n for the Wishart-type models (n = round(γm) for γ).
    pub fn samples(&self) -> Option<usize> {
        match *self {
            SpikeModel::WishartSpike { n, .. } | SpikeModel::ChiralShift { n, .. } => Some(n),
            SpikeModel::WishartSpikeGamma { m, gamma, .. } => Some((gamma * m as f64).round() as usize),
            SpikeModel::GaussianShift { .. } => None,
        }
    }

    /// Full spectrum size: N, m, or n + m for the chiral block matrix.
    pub fn dimension(&self) -> usize {
        match *self {
            SpikeModel::GaussianShift { n, .. } => n,
            SpikeModel::WishartSpike { m, .. } | SpikeModel::WishartSpikeGamma { m, .. } => m,
            SpikeModel::ChiralShift { m, n, .. } => n + m,
        }
    }

    /// Upper edge of the unperturbed bulk: √(2N), 4m, n·(1+1/√γ)²·… or 2√m.
    pub fn bulk_edge(&self) -> f64 {
        match *self {
            SpikeModel::GaussianShift { n, .. } => (2.0 * n as f64).sqrt(),
            SpikeModel::WishartSpike { m, .. } => 4.0 * m as f64,
            SpikeModel::WishartSpikeGamma { m, gamma, .. } => m as f64 * (1.0 + gamma.sqrt()).powi(2),
            SpikeModel::ChiralShift { m, .. } => 2.0 * (m as f64).sqrt(),
        }
    }
}

/// Outcome of a separation prediction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationPrediction {
    /// Predicted location of the separated eigenvalue (None below threshold).
    pub location: Option<f64>,
    /// Critical spike value in the model's own spike parameter.
    pub threshold: f64,
    pub above_threshold: bool,
}

/// Large-size prediction for the separated eigenvalue.
///
/// * Gaussian shift: threshold c = 1, location (J/2)(c + 1/c), J = √(2N).
/// * Wishart (n − m fixed): threshold s = 2, location m s²/(s − 1).
/// * Wishart with n/m = γ: threshold s = 1 + 1/√γ, location
///   n·s(1 + γ⁻¹/(s − 1)).
/// * Chiral shift: threshold c = 1, location (J/2)(c + 1/c), J = 2√m.
pub fn separation_predictor(model: &SpikeModel) -> Result<SeparationPrediction> {
    model.validate()?;
    let (threshold, spike, location): (f64, f64, Box<dyn Fn() -> f64>) = match *model {
        SpikeModel::GaussianShift { n, c, .. } => {
            let j = (2.0 * n as f64).sqrt();
            (1.0, c, Box::new(move || 0.5 * j * (c + 1.0 / c)))
        }
        SpikeModel::WishartSpike { m, s, .. } => (2.0, s, Box::new(move || m as f64 * s * s / (s - 1.0))),
        SpikeModel::WishartSpikeGamma { gamma, s, .. } => {
            let n = model.samples().expect("gamma model has samples") as f64;
            (1.0 + 1.0 / gamma.sqrt(), s, Box::new(move || n * s * (1.0 + 1.0 / (gamma * (s - 1.0)))))
        }
        SpikeModel::ChiralShift { m, c, .. } => {
            let j = 2.0 * (m as f64).sqrt();
            (1.0, c, Box::new(move || 0.5 * j * (c + 1.0 / c)))
        }
    };
    let above = spike > threshold;
    Ok(SeparationPrediction {
        location: if above { Some(location()) } else { None },
        threshold,
        above_threshold: above,
    })
}
