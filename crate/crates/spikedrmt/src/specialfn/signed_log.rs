//! Signed log-space numbers for magnitudes far outside the `f64` range.

use std::cmp::Ordering;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A real number stored as `sign · exp(log_magnitude)`.
///
/// Zero is represented by `sign == 0` and `log_magnitude == -∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLogValue {
    sign: i8,
    log_magnitude: f64,
}

impl SignedLogValue {
    pub const ZERO: Self = Self { sign: 0, log_magnitude: f64::NEG_INFINITY };
    pub const ONE: Self = Self { sign: 1, log_magnitude: 0.0 };

    /// Builds a value from a sign and a natural-log magnitude.
    ///
    /// A zero sign or a `-∞` magnitude both yield zero.
    pub fn new(sign: i8, log_magnitude: f64) -> Self {
        if sign == 0 || log_magnitude == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            Self { sign: sign.signum(), log_magnitude }
        }
    }

    /// `exp(log_magnitude)` with positive sign.
    pub fn from_log(log_magnitude: f64) -> Self {
        Self::new(1, log_magnitude)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::new(if x > 0.0 { 1 } else { -1 }, x.abs().ln())
        }
    }

    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_magnitude.exp()
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn log_magnitude(self) -> f64 {
        self.log_magnitude
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        Self::new(self.sign.abs(), self.log_magnitude)
    }

    /// Multiplies by `exp(log_factor)`.
    pub fn scale_log(self, log_factor: f64) -> Self {
        Self::new(self.sign, self.log_magnitude + log_factor)
    }

    pub fn powi(self, k: i32) -> Self {
        if k == 0 {
            return Self::ONE;
        }
        let sign = if k % 2 == 0 { self.sign.abs() } else { self.sign };
        Self::new(sign, self.log_magnitude * f64::from(k))
    }

    /// Compensated sum of many terms, relative to the largest magnitude.
    pub fn sum_slice(terms: &[Self]) -> Self {
        let max_log = terms.iter().filter(|t| t.sign != 0).map(|t| t.log_magnitude).fold(f64::NEG_INFINITY, f64::max);
        if max_log == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        if max_log.is_infinite() {
            // +∞ magnitudes: sum the signs of the infinite terms.
            let s: i32 = terms.iter().filter(|t| t.log_magnitude == f64::INFINITY).map(|t| i32::from(t.sign)).sum();
            return Self::new(s.signum() as i8, f64::INFINITY);
        }
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        for t in terms.iter().filter(|t| t.sign != 0) {
            let v = f64::from(t.sign) * (t.log_magnitude - max_log).exp();
            let s = sum + v;
            if sum.abs() >= v.abs() {
                comp += (sum - s) + v;
            } else {
                comp += (v - s) + sum;
            }
            sum = s;
        }
        Self::from_f64(sum + comp).scale_log(max_log)
    }
}

impl Default for SignedLogValue {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for SignedLogValue {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for SignedLogValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.sign, self.log_magnitude)
    }
}

impl Mul for SignedLogValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.sign * rhs.sign, self.log_magnitude + rhs.log_magnitude)
    }
}

impl Mul<f64> for SignedLogValue {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self * Self::from_f64(rhs)
    }
}

impl Div for SignedLogValue {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if rhs.sign == 0 {
            return Self::new(self.sign, f64::INFINITY);
        }
        Self::new(self.sign * rhs.sign, self.log_magnitude - rhs.log_magnitude)
    }
}

impl Add for SignedLogValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_magnitude >= rhs.log_magnitude { (self, rhs) } else { (rhs, self) };
        if big.log_magnitude.is_infinite() {
            return big;
        }
        let ratio = (small.log_magnitude - big.log_magnitude).exp();
        if big.sign == small.sign {
            Self::new(big.sign, big.log_magnitude + ratio.ln_1p())
        } else if ratio == 1.0 {
            Self::ZERO
        } else {
            Self::new(big.sign, big.log_magnitude + (-ratio).ln_1p())
        }
    }
}

impl Sub for SignedLogValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Sum for SignedLogValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let terms: Vec<Self> = iter.collect();
        Self::sum_slice(&terms)
    }
}

impl PartialOrd for SignedLogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.log_magnitude.partial_cmp(&other.log_magnitude),
                _ => other.log_magnitude.partial_cmp(&self.log_magnitude),
            },
            ord => Some(ord),
        }
    }
}
