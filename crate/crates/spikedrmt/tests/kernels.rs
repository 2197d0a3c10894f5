use nalgebra::Complex;
use spikedrmt::kernels::*;
use spikedrmt::quadrature::{linspace, trapezoid, GaussRule};
use spikedrmt::specialfn::{hermite_poly, hyp0f1_series, laguerre_poly, ln_gamma};
use std::f64::consts::PI;

type C = Complex<f64>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Trapezoid rule for ∮ f(z) dz/(2πi) on a circle, doubling the node count
/// from 512 until two successive values agree.
fn contour(center: C, radius: f64, f: impl Fn(C) -> C) -> f64 {
    let eval = |n: usize| {
        let mut acc = C::new(0.0, 0.0);
        for k in 0..n {
            let e = C::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
            acc += f(center + e * radius) * e * radius;
        }
        (acc / n as f64).re
    };
    let mut n = 512;
    let mut prev = eval(n);
    loop {
        n *= 2;
        let next = eval(n);
        if (next - prev).abs() <= 1e-14 * next.abs().max(1e-300) || n >= 1 << 16 {
            return next;
        }
        prev = next;
    }
}

fn cpow(z: C, p: f64) -> C {
    (z.ln() * p).exp()
}

fn cpowi(z: C, k: i32) -> C {
    z.powi(k)
}

/// ₀F₁(b; z) by its power series (complex argument).
fn hyp0f1_complex(b: f64, z: C) -> C {
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..400 {
        term = term * z / ((k as f64 + 1.0) * (b + k as f64));
        sum += term;
        if term.norm() < 1e-18 * sum.norm() && k > 10 {
            break;
        }
    }
    sum
}

fn gue_model(n: usize, r: usize, c: f64) -> KernelModel {
    KernelModel::ShiftedGue { n, r, c }
}

// ---------------------------------------------------------------- GUE

#[test]
fn gue_kernel_origin() {
    assert!((kernel_gue(1, 0.0, 0.0).unwrap() - 1.0 / PI.sqrt()).abs() < 1e-15);
}

#[test]
fn gue_trace_and_projection() {
    for n in [1usize, 6, 20] {
        let half = (2.0 * n as f64).sqrt() + 6.0;
        let rule = GaussRule::new(400, -half, half);
        let trace = rule.integrate(|x| kernel_gue(n, x, x).unwrap());
        assert!((trace - n as f64).abs() < 1e-8, "n={n}: {trace}");
    }
    let (x, y) = (0.3, -1.1);
    let rule = GaussRule::new(400, -12.0, 12.0);
    let proj = rule.integrate(|t| kernel_gue(6, x, t).unwrap() * kernel_gue(6, t, y).unwrap());
    assert!((proj - kernel_gue(6, x, y).unwrap()).abs() < 1e-8);
}

#[test]
fn incomplete_hermite_first_index_closed_forms() {
    let (n, r, c, x) = (6usize, 1usize, 2.0, 0.7);
    let model = gue_model(n, r, c);
    // Γ̃⁽¹⁾ as the explicit sum of the two residues.
    let mut origin = 0.0;
    for p in 0..=n - 2 {
        let k = n - 2 - p;
        origin += hermite_poly(k, x).unwrap()
            / (2f64.powi(k as i32) * (1..=k).product::<usize>() as f64)
            / (2.0 * c).powi(p as i32 + 1);
    }
    let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let expected = sign * ((2.0 * c * x - c * c).exp() / (2.0 * c).powi(n as i32 - 1) - origin);
    let got = incomplete_hermite(IncompleteKind::Tilde, 1, x, &model).unwrap().to_f64();
    assert!(rel(got, expected) < 1e-12, "{got} vs {expected}");
    // Γ⁽¹⁾(y) = (−1)^{N−r} e^{−y²} H_{N−r}(y)/√π (the sign comes from
    // reflecting the imaginary-axis integral; see the line-integral test).
    let plain_sign = if (n - r) % 2 == 0 { 1.0 } else { -1.0 };
    for y in [-1.3f64, 0.2, 2.5] {
        let expected = plain_sign * (-y * y).exp() * hermite_poly(n - r, y).unwrap() / PI.sqrt();
        let got = incomplete_hermite(IncompleteKind::Plain, 1, y, &model).unwrap().to_f64();
        assert!(rel(got, expected) < 1e-12);
    }
}

#[test]
fn incomplete_hermite_tilde_matches_contour_quadrature() {
    for n in [3usize, 5, 8] {
        for r in 1..=3usize.min(n) {
            for c in [0.3, 1.0, 2.0] {
                let model = gue_model(n, r, c);
                let m = (n - r) as i32;
                for x in [-1.2, 0.4, 1.9] {
                    for j in 1..=r {
                        let oracle = contour(C::new(0.0, 0.0), 2.0 * c + 2.0, |z| {
                            (-z * x - z * z / 4.0).exp() / (cpowi(z, m) * cpowi(z + 2.0 * c, j as i32))
                        });
                        let got = incomplete_hermite(IncompleteKind::Tilde, j, x, &model).unwrap().to_f64();
                        assert!(rel(got, oracle) < 1e-8, "N={n} r={r} c={c} x={x} j={j}: {got} vs {oracle}");
                    }
                }
            }
        }
    }
}

#[test]
fn incomplete_hermite_plain_matches_line_integral() {
    // Γ⁽ʲ⁾(y) = (1/2π) ∫ e^{iyt − t²/4} (it)^{N−r} (it+2c)^{j−1} dt.
    let (n, r, c) = (7usize, 3usize, 1.4);
    let model = gue_model(n, r, c);
    let ts = linspace(-60.0, 60.0, 24001);
    for y in [-0.8, 0.5, 1.7] {
        for j in 1..=r {
            let re: Vec<f64> = ts
                .iter()
                .map(|&t| {
                    let w = C::new(0.0, t);
                    ((w * y + w * w / 4.0).exp() * cpowi(w, (n - r) as i32) * cpowi(w + 2.0 * c, j as i32 - 1)).re
                })
                .collect();
            let oracle = trapezoid(&ts, &re) / (2.0 * PI);
            let got = incomplete_hermite(IncompleteKind::Plain, j, y, &model).unwrap().to_f64();
            assert!((got - oracle).abs() < 1e-10 * oracle.abs().max(1.0), "j={j} y={y}: {got} vs {oracle}");
        }
    }
}

#[test]
fn incomplete_hermite_biorthogonality() {
    let (n, r, c) = (6usize, 3usize, 1.5);
    let model = gue_model(n, r, c);
    let rule = GaussRule::composite(32, 24, -12.0, 16.0);
    for j in 1..=r {
        for k in 1..=r {
            let v = rule.integrate(|x| {
                incomplete_hermite(IncompleteKind::Tilde, j, x, &model).unwrap().to_f64()
                    * incomplete_hermite(IncompleteKind::Plain, k, x, &model).unwrap().to_f64()
            });
            let expected = if j == k { 1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-6, "({j},{k}): {v}");
        }
    }
}

#[test]
fn shifted_gue_small_shift_limit() {
    let (n, r, x) = (8usize, 2usize, 0.5);
    let unshifted = kernel_gue(n, x, x).unwrap();
    for c in [1e-8, 1e-10] {
        let d = density_shifted_gue(&gue_model(n, r, c), x).unwrap();
        assert!((d - unshifted).abs() < 1e-6, "c={c}: {d} vs {unshifted}");
    }
    // The density moves at first order in c.
    let d = density_shifted_gue(&gue_model(n, r, 1e-4), x).unwrap();
    assert!((d - unshifted).abs() < 1e-4);
    let d0 = density_shifted_gue(&gue_model(n, r, 0.0), x).unwrap();
    assert!((d0 - unshifted).abs() < 1e-13);
}

/// L1 distance on [lo, hi] between two densities.
fn l1_on(lo: f64, hi: f64, f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> f64 {
    GaussRule::composite(32, 24, lo, hi).integrate(|x| (f(x) - g(x)).abs())
}

#[test]
fn shifted_gue_trace_and_lobes() {
    let (n, r) = (15usize, 5usize);
    let model = gue_model(n, r, 15.0);
    let rule = GaussRule::composite(32, 48, -14.0, 26.0);
    let trace = rule.integrate(|x| density_shifted_gue(&model, x).unwrap());
    assert!((trace - 15.0).abs() < 1e-6, "trace {trace}");

    // The right lobe holds r eigenvalues centred at c + (N−r)/(2c): the
    // outliers are pushed away from the bulk at second order in 1/c.
    let lobe = GaussRule::composite(32, 24, 9.0, 26.0);
    let mass = lobe.integrate(|x| density_shifted_gue(&model, x).unwrap());
    let mean = lobe.integrate(|x| x * density_shifted_gue(&model, x).unwrap()) / mass;
    assert!((mass - r as f64).abs() < 1e-6, "lobe mass {mass}");
    assert!((mean - (15.0 + 10.0 / 30.0)).abs() < 1e-6, "lobe mean {mean}");

    // Against the r×r GUE centred at c the L1 distance decays like 1/c;
    // once displaced by (N−r)/(2c) it decays like 1/c².
    let distances = |c: f64| {
        let model = gue_model(n, r, c);
        let exact = |x: f64| density_shifted_gue(&model, x).unwrap();
        let shift = (n - r) as f64 / (2.0 * c);
        let centred = l1_on(c - 6.0, c + 8.0, exact, |x| kernel_gue(r, x - c, x - c).unwrap());
        let displaced = l1_on(c - 6.0, c + 8.0, exact, |x| kernel_gue(r, x - c - shift, x - c - shift).unwrap());
        (centred, displaced)
    };
    let cs = [10.0, 15.0, 20.0, 30.0, 60.0];
    let d: Vec<(f64, f64)> = cs.iter().map(|&c| distances(c)).collect();
    assert!(d.windows(2).all(|w| w[1].0 < w[0].0 && w[1].1 < w[0].1), "{d:?}");
    for (&c, &(centred, _)) in cs.iter().zip(&d) {
        assert!((10.0..14.0).contains(&(c * centred)), "c={c}: c·L1 = {}", c * centred);
    }
    assert!(d[3].1 < 0.05, "displaced-lobe L1 at c=30: {}", d[3].1);
}

#[test]
fn shifted_gue_projection() {
    let model = gue_model(6, 2, 1.3);
    let rule = GaussRule::composite(32, 16, -12.0, 14.0);
    for (x, y) in [(0.1, 0.7), (-1.5, 2.2), (1.0, 1.0), (2.6, -0.4), (0.0, 3.1)] {
        let k = |a: f64, b: f64| kernel_shifted_gue(&model, a, b).unwrap();
        let proj = rule.integrate(|t| k(x, t) * k(t, y));
        assert!((proj - k(x, y)).abs() < 1e-6, "({x},{y}): {proj} vs {}", k(x, y));
    }
}

#[test]
fn gue_asymptotic_forms() {
    // r = 1 reduces to a single Gaussian.
    let (c, x, y) = (4.0f64, 4.3f64, 3.6f64);
    let expected = (2.0 * c * (x - y)).exp() * (-((x - c).powi(2) + (y - c).powi(2)) / 2.0).exp() / PI.sqrt();
    assert!(rel(kernel_shifted_gue_asymptotic(1, c, x, y).unwrap(), expected) < 1e-13);
    // Exact spike term converges to the asymptotic form at the lobe centre.
    let deviation = |c: f64| {
        let exact = shifted_gue_spike_term(&gue_model(12, 2, c), c, c).unwrap();
        rel(exact, kernel_shifted_gue_asymptotic(2, c, c, c).unwrap())
    };
    // The relative deviation decays like 1/c² (c² · deviation ≈ 27 for
    // N = 12, r = 2); strictly smaller at c = 30 than at c = 15.
    let cs = [10.0, 15.0, 20.0, 30.0, 60.0, 100.0];
    let devs: Vec<f64> = cs.iter().map(|&c| deviation(c)).collect();
    assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
    for (&c, &d) in cs.iter().zip(&devs) {
        assert!((15.0..35.0).contains(&(c * c * d)), "c={c}: c²·deviation = {}", c * c * d);
    }
    assert!(devs[4] < 1e-2, "deviation at c=60: {}", devs[4]);
}

#[test]
fn correlation_function_properties() {
    let model = gue_model(6, 2, 1.3);
    let pts = [0.2, -0.9, 1.6];
    let base = correl_n(&model, &pts).unwrap();
    for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
        let p: Vec<f64> = perm.iter().map(|&i| pts[i]).collect();
        assert!(rel(correl_n(&model, &p).unwrap(), base) < 1e-12);
    }
    let one = correl_n(&model, &[0.4]).unwrap();
    assert!(rel(one, density_shifted_gue(&model, 0.4).unwrap()) < 1e-14);
    // Coincident points make the determinant vanish.
    assert!(correl_n(&model, &[0.4, 0.4]).unwrap().abs() < 1e-12);
}

// ---------------------------------------------------------------- LUE

fn lue_model(m: usize, alpha: f64, r: usize, btilde: f64) -> KernelModel {
    KernelModel::SpikedLue { m, alpha, r, btilde }
}

/// Integrates over [0, hi] with x = u² to absorb x^{a} behaviour at 0.
fn integrate_half_line(hi: f64, panels: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    GaussRule::composite(32, panels, 0.0, hi.sqrt()).integrate(|u| 2.0 * u * f(u * u))
}

#[test]
fn laguerre_kernel_basics() {
    let v = kernel_laguerre(1, 0.0, 0.3, 0.3).unwrap();
    assert!((v - (-0.3f64).exp()).abs() < 1e-15);
    assert!(kernel_laguerre(3, 0.5, -0.1, 1.0).is_err());
    let trace = integrate_half_line(80.0, 20, |x| kernel_laguerre(6, 0.5, x, x).unwrap());
    assert!((trace - 6.0).abs() < 1e-8, "{trace}");
    for (x, y) in [(0.4, 2.0), (3.3, 7.1)] {
        let proj = integrate_half_line(90.0, 20, |t| {
            kernel_laguerre(5, 2.0, x, t).unwrap() * kernel_laguerre(5, 2.0, t, y).unwrap()
        });
        assert!((proj - kernel_laguerre(5, 2.0, x, y).unwrap()).abs() < 1e-8);
    }
}

/// ∮ e^{−xz}(1+z)^{m+α} / (z^{m−r} (z−δ)^j) dz/2πi around 0 and δ only.
fn lambda_tilde_oracle(m: usize, alpha: f64, r: usize, btilde: f64, j: usize, x: f64) -> f64 {
    let delta = btilde - 1.0;
    let center = C::new(0.5 * delta, 0.0);
    // Stay clear of the branch point at z = −1.
    let reach = 0.5 * delta.abs();
    let gap = (center.re + 1.0) - reach;
    let radius = reach + 0.5 * gap.min(1.0);
    contour(center, radius, |z| {
        (-z * x).exp() * cpow(z + 1.0, m as f64 + alpha) / (cpowi(z, (m - r) as i32) * cpowi(z - delta, j as i32))
    })
}

#[test]
fn incomplete_laguerre_tilde_matches_contour_quadrature() {
    let got = incomplete_laguerre(IncompleteKind::Tilde, 1, 2.0, &lue_model(5, 1.0, 1, 0.5)).unwrap().to_f64();
    let oracle = lambda_tilde_oracle(5, 1.0, 1, 0.5, 1, 2.0);
    assert!(rel(got, oracle) < 1e-8, "{got} vs {oracle}");
    for (m, alpha, r) in [(4usize, 0.5, 2usize), (6, 2.0, 3), (7, 1.0, 1)] {
        for btilde in [0.4, 0.8, 1.6] {
            for x in [0.3, 1.5, 4.0] {
                for j in 1..=r {
                    let model = lue_model(m, alpha, r, btilde);
                    let got = incomplete_laguerre(IncompleteKind::Tilde, j, x, &model).unwrap().to_f64();
                    let oracle = lambda_tilde_oracle(m, alpha, r, btilde, j, x);
                    assert!(rel(got, oracle) < 1e-8, "m={m} a={alpha} r={r} b={btilde} x={x} j={j}: {got} vs {oracle}");
                }
            }
        }
    }
}

#[test]
fn incomplete_laguerre_plain_matches_contour_quadrature() {
    // Integer α: the integrand of Λ has a pole (not a branch point) at −1.
    for (m, alpha, r, btilde) in [(5usize, 1.0, 1usize, 0.5), (6, 2.0, 3, 0.4), (4, 0.0, 2, 1.7)] {
        let model = lue_model(m, alpha, r, btilde);
        let delta = btilde - 1.0;
        for x in [0.4, 2.3] {
            for j in 1..=r {
                let oracle = contour(C::new(-1.0, 0.0), 0.5, |w| {
                    (w * x).exp() * cpowi(w, (m - r) as i32) * cpowi(w - delta, j as i32 - 1)
                        / cpowi(w + 1.0, (m as f64 + alpha) as i32)
                });
                let got = incomplete_laguerre(IncompleteKind::Plain, j, x, &model).unwrap().to_f64();
                assert!(rel(got, oracle) < 1e-8, "j={j} x={x}: {got} vs {oracle}");
            }
        }
    }
    // j = 1: x^a e^{−x} L^a_{m−1}(x) (m−1)!/(m−1+a)! (rank one, a = α).
    let (m, a, x) = (5usize, 2.0f64, 1.3f64);
    let model = lue_model(m, a, 1, 0.3);
    let expected = x.powf(a)
        * (-x).exp()
        * laguerre_poly(m - 1, a, x).unwrap()
        * (ln_gamma(m as f64) - ln_gamma(m as f64 + a)).exp();
    let got = incomplete_laguerre(IncompleteKind::Plain, 1, x, &model).unwrap().to_f64();
    assert!(rel(got, expected) < 1e-12);
}

#[test]
fn incomplete_laguerre_biorthogonality() {
    let model = lue_model(6, 1.0, 2, 0.4);
    for j in 1..=2 {
        for k in 1..=2 {
            let v = integrate_half_line(260.0, 40, |x| {
                incomplete_laguerre(IncompleteKind::Tilde, j, x, &model).unwrap().to_f64()
                    * incomplete_laguerre(IncompleteKind::Plain, k, x, &model).unwrap().to_f64()
            });
            let expected = if j == k { 1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-6, "({j},{k}): {v}");
        }
    }
}

#[test]
fn spiked_lue_unit_spike_limit() {
    let (m, alpha, r) = (6usize, 1.0, 2usize);
    for btilde in [1.0 - 1e-6, 1.0 + 1e-6, 1.0] {
        let model = lue_model(m, alpha, r, btilde);
        for x in [0.5, 3.0, 11.0] {
            let d = density_spiked_lue(&model, x).unwrap();
            let unspiked = kernel_laguerre(m, alpha, x, x).unwrap();
            assert!((d - unspiked).abs() < 1e-4, "b={btilde} x={x}: {d} vs {unspiked}");
        }
    }
}

#[test]
fn spiked_lue_trace_and_lobe() {
    let (m, alpha, r, btilde) = (10usize, 0.5, 3usize, 0.05);
    let model = lue_model(m, alpha, r, btilde);
    let trace = integrate_half_line(2400.0, 120, |x| density_spiked_lue(&model, x).unwrap());
    assert!((trace - m as f64).abs() < 1e-6, "trace {trace}");
    // Spike lobe in u = b̃x against the r×r LUE with parameter α + m − r.
    // At b̃ = 0.05 the lobe still overlaps the bulk; the distance decays
    // linearly in b̃ and the separated lobe sits at the reference mean
    // r + α + m − r shifted by (m − r) b̃ / (1 − b̃).
    let lobe = |btilde: f64| {
        let model = lue_model(m, alpha, r, btilde);
        let rule = GaussRule::composite(32, 40, 70.0 * btilde, 110.0);
        let scaled = |u: f64| density_spiked_lue(&model, u / btilde).unwrap() / btilde;
        let reference = |u: f64| kernel_laguerre(r, alpha + (m - r) as f64, u, u).unwrap();
        let l1 = rule.integrate(|u| (scaled(u) - reference(u)).abs());
        let mass = rule.integrate(scaled);
        let mean = rule.integrate(|u| u * scaled(u)) / mass;
        (l1, mass, mean)
    };
    let bts = [0.1, 0.05, 0.02, 0.01, 0.005];
    let stats: Vec<(f64, f64, f64)> = bts.iter().map(|&b| lobe(b)).collect();
    assert!(stats.windows(2).all(|w| w[1].0 < w[0].0), "{stats:?}");
    for (&bt, &(l1, mass, mean)) in bts.iter().zip(&stats).skip(3) {
        assert!((mass - r as f64).abs() < 1e-5, "b̃={bt}: lobe mass {mass}");
        let expected = r as f64 + alpha + (m - r) as f64 + (m - r) as f64 * bt / (1.0 - bt);
        assert!((mean - expected).abs() < 1e-3, "b̃={bt}: lobe mean {mean} vs {expected}");
        assert!(l1 < 0.05, "b̃={bt}: L1 {l1}");
    }
}

#[test]
fn spiked_lue_projection() {
    let model = lue_model(6, 1.0, 2, 0.4);
    for (x, y) in [(0.5, 2.0), (4.0, 9.0), (1.0, 1.0), (12.0, 0.3), (7.5, 20.0)] {
        let k = |a: f64, b: f64| kernel_spiked_lue(&model, a, b).unwrap();
        let proj = integrate_half_line(400.0, 60, |t| k(x, t) * k(t, y));
        assert!((proj - k(x, y)).abs() < 1e-6, "({x},{y}): {proj} vs {}", k(x, y));
    }
}

// ---------------------------------------------------------------- chiral

fn chiral_model(m: usize, alpha: f64, r: usize, c: f64) -> KernelModel {
    KernelModel::ShiftedChiral { m, alpha, r, c }
}

#[test]
fn chiral_p_first_index() {
    let (m, alpha, r, c) = (6usize, 2.0, 2usize, 1.5);
    let model = chiral_model(m, alpha, r, c);
    for x in [0.3, 2.0, 6.5] {
        let expected = ln_gamma((m - r) as f64 + 1.0).exp() * laguerre_poly(m - r, alpha, x).unwrap();
        let got = chiral_pq(ChiralKind::P, 1, x, &model).unwrap().to_f64();
        assert!(rel(got, expected) < 1e-12);
    }
}

#[test]
fn chiral_p_matches_integral_representation() {
    // p_k(x) = e^x/Γ(α+1) ∫ u^{m−r+α} (u+c²)^{k−1} e^{−u} ₀F₁(α+1; −xu) du.
    let (m, alpha, r, c) = (5usize, 1.0, 3usize, 0.9);
    let model = chiral_model(m, alpha, r, c);
    let rule = GaussRule::composite(32, 30, 0.0, 80.0);
    for x in [0.2, 0.7] {
        for k in 1..=r {
            let integral = rule.integrate(|u| {
                u.powf((m - r) as f64 + alpha)
                    * (u + c * c).powi(k as i32 - 1)
                    * (-u).exp()
                    * hyp0f1_series(alpha + 1.0, -x * u, 200)
            });
            let oracle = x.exp() * integral / ln_gamma(alpha + 1.0).exp();
            let got = chiral_pq(ChiralKind::P, k, x, &model).unwrap().to_f64();
            assert!(rel(got, oracle) < 1e-8, "k={k} x={x}: {got} vs {oracle}");
        }
    }
}

#[test]
fn chiral_q_matches_contour_quadrature() {
    for (m, alpha, r, c) in [(6usize, 2.0, 2usize, 1.5), (5, 0.5, 3, 0.8), (4, 1.0, 1, 1.1)] {
        let model = chiral_model(m, alpha, r, c);
        let c2 = c * c;
        for x in [0.4, 1.7, 3.5] {
            for k in 1..=r {
                let integral = contour(C::new(-0.5 * c2, 0.0), 0.5 * c2 + 1.0, |v| {
                    v.exp() * hyp0f1_complex(alpha + 1.0, -v * x) / (cpowi(v, (m - r) as i32) * cpowi(v + c2, k as i32))
                });
                let oracle = x.powf(alpha) * (-x).exp() * integral / ln_gamma(alpha + 1.0).exp();
                let got = chiral_pq(ChiralKind::Q, k, x, &model).unwrap().to_f64();
                assert!(rel(got, oracle) < 1e-8, "m={m} a={alpha} r={r} c={c} x={x} k={k}: {got} vs {oracle}");
            }
        }
    }
}

#[test]
fn chiral_biorthogonality() {
    let model = chiral_model(6, 2.0, 2, 1.5);
    for j in 1..=2 {
        for k in 1..=2 {
            let v = integrate_half_line(120.0, 40, |x| {
                chiral_pq(ChiralKind::P, j, x, &model).unwrap().to_f64()
                    * chiral_pq(ChiralKind::Q, k, x, &model).unwrap().to_f64()
            });
            let expected = if j == k { 1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-6, "({j},{k}): {v}");
        }
    }
}

#[test]
fn chiral_small_shift_limit() {
    let (m, alpha, r) = (6usize, 2.0, 2usize);
    for c in [1e-8, 1e-4, 0.0] {
        let model = chiral_model(m, alpha, r, c);
        for lambda in [0.5, 2.0, 4.1] {
            let d = density_shifted_chiral(&model, lambda).unwrap();
            let unshifted = 2.0 * lambda * kernel_laguerre(m, alpha, lambda * lambda, lambda * lambda).unwrap();
            assert!((d - unshifted).abs() < 1e-6, "c={c} λ={lambda}: {d} vs {unshifted}");
        }
    }
}

#[test]
fn chiral_trace_and_lobe() {
    let (m, alpha, r, c) = (15usize, 4.0, 5usize, 15.0);
    let model = chiral_model(m, alpha, r, c);
    let rule = GaussRule::composite(32, 40, 0.0, 26.0);
    let trace = rule.integrate(|l| density_shifted_chiral(&model, l).unwrap());
    assert!((trace - m as f64).abs() < 1e-6, "trace {trace}");

    // The right lobe carries r eigenvalues; its distance to the r×r GUE
    // centred at c shrinks like 1/c.
    let lobe = GaussRule::composite(32, 24, 10.0, 26.0);
    let mass = lobe.integrate(|l| density_shifted_chiral(&model, l).unwrap());
    assert!((mass - r as f64).abs() < 1e-6, "lobe mass {mass}");
    let distance = |c: f64| {
        let model = chiral_model(m, alpha, r, c);
        l1_on(
            c - 6.0,
            c + 8.0,
            |l| density_shifted_chiral(&model, l).unwrap(),
            |l| kernel_gue(r, l - c, l - c).unwrap(),
        )
    };
    let cs = [15.0, 20.0, 30.0, 60.0, 100.0];
    let d: Vec<f64> = cs.iter().map(|&c| distance(c)).collect();
    assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
    assert!(d[4] * 100.0 < d[2] * 30.0 * 1.2, "{d:?}");
}

#[test]
fn chiral_projection() {
    let model = chiral_model(5, 2.0, 2, 1.2);
    let rule = GaussRule::composite(32, 12, 0.0, 12.0);
    for (x, y) in [(0.8, 1.5), (2.0, 2.0), (3.1, 0.4), (1.2, 4.0), (0.3, 2.6)] {
        let k = |a: f64, b: f64| kernel_shifted_chiral(&model, a, b).unwrap();
        let proj = rule.integrate(|t| 2.0 * t * k(x, t) * k(t, y));
        assert!((proj - k(x, y)).abs() < 1e-6, "({x},{y}): {proj} vs {}", k(x, y));
    }
}

#[test]
fn chiral_asymptotic_forms() {
    let (c, x, y) = (6.0f64, 37.0f64, 34.0f64);
    let (u, v) = (x.sqrt() - c, y.sqrt() - c);
    let expected = (-(v * v) / 2.0 + u * u / 2.0).exp() * (-(u * u + v * v) / 2.0).exp() / PI.sqrt() / (2.0 * c);
    assert!(rel(chiral_asymptotic_pq(1, c, x, y).unwrap(), expected) < 1e-13);
    let deviation = |c: f64| {
        let exact = chiral_spike_term(&chiral_model(10, 2.0, 2, c), c * c, c * c).unwrap();
        rel(exact, chiral_asymptotic_pq(2, c, c * c, c * c).unwrap())
    };
    // The signed deviation rises to a maximum near c = 13 for these
    // parameters and then decays like 1/c² (c² · deviation ≈ 90).
    let cs = [15.0, 20.0, 30.0, 60.0, 100.0];
    let devs: Vec<f64> = cs.iter().map(|&c| deviation(c)).collect();
    assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
    for (&c, &d) in cs.iter().zip(&devs).skip(2) {
        assert!((70.0..110.0).contains(&(c * c * d)), "c={c}: c²·deviation = {}", c * c * d);
    }
    assert!(devs[4] < 2e-2, "deviation at c=100: {}", devs[4]);
}

#[test]
fn densities_are_nonnegative_on_grids() {
    let models = [
        gue_model(15, 5, 15.0),
        gue_model(8, 2, 1.0),
        lue_model(10, 0.5, 3, 0.05),
        lue_model(6, 1.0, 2, 3.0),
        chiral_model(15, 4.0, 5, 15.0),
        chiral_model(6, 2.0, 2, 1.5),
    ];
    for model in models {
        let (lo, hi) = model.support_hint();
        for x in linspace(lo, hi, 400) {
            let raw = model.kernel(x, x).unwrap();
            let raw = if let KernelModel::ShiftedChiral { .. } = model { 2.0 * x * raw } else { raw };
            assert!(raw >= -1e-10, "{model:?} at {x}: {raw}");
        }
    }
}
