//! Small floating-point helpers shared by the evaluators.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Bases this close to zero are treated as exactly zero in [`sin_cos_power`].
pub const ZERO_BASE: f64 = 1e-15;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}

pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

/// `base^exp` with `0^0 = 1` and bases within [`ZERO_BASE`] of zero
/// collapsing to an exact zero for positive exponents.
#[inline]
pub fn power(base: f64, exp: u32) -> f64 {
    if exp == 0 {
        1.0
    } else if base.abs() < ZERO_BASE {
        0.0
    } else {
        base.powi(exp as i32)
    }
}

/// `sin^p · cos^q` for the rotation coefficients.
#[inline]
pub fn sin_cos_power(sin: f64, cos: f64, p: u32, q: u32) -> f64 {
    power(sin, p) * power(cos, q)
}

/// Base-2 logarithm of an arbitrarily large unsigned integer.
pub fn log2_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}
