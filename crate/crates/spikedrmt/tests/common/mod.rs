#![allow(dead_code)]

pub mod ddouble;

/// Relative difference |a−b|/max(|b|, floor).
pub fn rel_diff(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / b.abs().max(floor)
}
