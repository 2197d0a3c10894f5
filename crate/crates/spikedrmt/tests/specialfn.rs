mod common;

use common::ddouble::DD;
use proptest::prelude::*;
use spikedrmt::quadrature::GaussRule;
use spikedrmt::specialfn::*;

fn hermite_oracle(n: usize, x: f64) -> Vec<DD> {
    let x = DD::from(x);
    let pi_quarter = DD::PI.sqrt().sqrt();
    let mut out = vec![(-(x * x) / DD::from(2.0)).exp() / pi_quarter];
    let mut prev = DD::ZERO;
    for p in 1..n {
        let pf = DD::from_usize(p);
        let next = (DD::from(2.0) / pf).sqrt() * x * out[p - 1] - ((pf - DD::ONE) / pf).sqrt() * prev;
        prev = out[p - 1];
        out.push(next);
    }
    out
}

fn laguerre_oracle(n: usize, a_half_int: DD, gamma_a1: DD, x: f64) -> Vec<DD> {
    // φ_0 = x^{a/2} e^{−x/2}/√Γ(a+1); here a = 1/2 so x^{a/2} = x^{1/4}.
    let xd = DD::from(x);
    let a = a_half_int;
    let phi0 = xd.sqrt().sqrt() * (-(xd / DD::from(2.0))).exp() / gamma_a1.sqrt();
    let mut out = vec![phi0];
    let mut prev = DD::ZERO;
    for p in 0..n - 1 {
        let pf = DD::from_usize(p);
        let two = DD::from(2.0);
        let next = ((two * pf + DD::ONE + a - xd) * out[p] - (pf * (pf + a)).sqrt() * prev)
            / ((pf + DD::ONE) * (pf + a + DD::ONE)).sqrt();
        prev = out[p];
        out.push(next);
    }
    out
}

#[test]
fn hermite_matches_extended_precision_oracle() {
    let n = 501;
    let fast = hermite_weighted(n, 0.5).unwrap();
    let oracle = hermite_oracle(n, 0.5);
    for (p, (f, o)) in fast.iter().zip(&oracle).enumerate() {
        let o = o.to_f64();
        assert!(((f - o) / o).abs() < 1e-10, "p={p}: {f} vs {o}");
    }
}

#[test]
fn laguerre_matches_extended_precision_oracle() {
    let n = 50;
    let fast = laguerre_weighted(n, 0.5, 10.0).unwrap();
    // Γ(3/2) = √π/2
    let gamma = DD::PI.sqrt() / DD::from(2.0);
    let oracle = laguerre_oracle(n, DD::from(0.5), gamma, 10.0);
    for (p, (f, o)) in fast.iter().zip(&oracle).enumerate() {
        let o = o.to_f64();
        assert!(((f - o) / o).abs() < 1e-10, "p={p}: {f} vs {o}");
    }
}

#[test]
fn hermite_orthonormality() {
    let rule = GaussRule::new(200, -14.0, 14.0);
    let table: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| hermite_weighted(20, x).unwrap()).collect();
    for i in 0..20 {
        for j in 0..20 {
            let v: f64 = table.iter().zip(&rule.weights).map(|(row, w)| w * row[i] * row[j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            assert!((v - target).abs() < 1e-8, "({i},{j}) -> {v}");
        }
    }
}

#[test]
fn laguerre_orthonormality() {
    // Substitute x = u² so the x^a endpoint behaviour becomes smooth.
    let rule = GaussRule::new(200, 0.0, 12.0);
    for &a in &[0.0, 0.5, 3.0] {
        let table: Vec<Vec<f64>> = rule.nodes.iter().map(|&u| laguerre_weighted(20, a, u * u).unwrap()).collect();
        for i in 0..20 {
            for j in 0..20 {
                let v: f64 = table
                    .iter()
                    .zip(rule.nodes.iter().zip(&rule.weights))
                    .map(|(row, (u, w))| 2.0 * u * w * row[i] * row[j])
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((v - target).abs() < 1e-8, "a={a} ({i},{j}) -> {v}");
            }
        }
    }
}

#[test]
fn catalan_and_narayana_examples() {
    let c: Vec<u128> = (0..=5).map(|k| catalan(k).unwrap()).collect();
    assert_eq!(c, [1, 1, 2, 5, 14, 42]);
    let row: Vec<u128> = (0..4).map(|j| narayana(4, j).unwrap()).collect();
    assert_eq!(row, [1, 6, 6, 1]);
}

fn nonzero() -> impl Strategy<Value = f64> {
    prop_oneof![(-1e6f64..-1e-6), (1e-6f64..1e6)]
}

proptest! {
    #[test]
    fn log_product_is_associative(a in nonzero(), b in nonzero(), c in nonzero()) {
        let (a, b, c) = (
            SignedLogValue::from_f64(a),
            SignedLogValue::from_f64(b),
            SignedLogValue::from_f64(c),
        );
        let left = (a * b) * c;
        let right = a * (b * c);
        prop_assert_eq!(left.sign(), right.sign());
        let scale = left.log_magnitude().abs().max(1.0);
        prop_assert!((left.log_magnitude() - right.log_magnitude()).abs() <= 1e-13 * scale);
    }

    #[test]
    fn cancelling_addition_matches_compensated_sum(a in 1e-3f64..1e3, rel in -1e-6f64..1e-6) {
        let b = -(a * (1.0 + rel));
        let s = SignedLogValue::from_f64(a) + SignedLogValue::from_f64(b);
        let exact = a + b; // exact by Sterbenz for nearby values
        if s.is_zero() {
            prop_assert!(exact.abs() <= 1e-10 * a.abs().max(b.abs()));
        } else {
            prop_assert!((s.to_f64() - exact).abs() <= 1e-10 * a.abs().max(b.abs()));
        }
    }

    #[test]
    fn round_trip_preserves_log(x in nonzero()) {
        let v = SignedLogValue::from_f64(x);
        let again = SignedLogValue::from_f64(v.to_f64());
        prop_assert_eq!(v.sign(), again.sign());
        prop_assert!((v.log_magnitude() - again.log_magnitude()).abs()
            <= 1e-14 * v.log_magnitude().abs().max(1.0));
    }

    #[test]
    fn hermite_never_overflows(x in -60.0f64..60.0) {
        let v = hermite_weighted(1001, x).unwrap();
        prop_assert!(v.iter().all(|t| t.is_finite()));
    }
}
