//! Weight enumerators and the MacWilliams transform in exact arithmetic.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::gf2::WeightDistribution;
use crate::numeric::{power, CompensatedSum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumeratorError {
    #[error("dimension {k} is larger than the length {n}")]
    DimensionTooLarge { k: usize, n: usize },
    #[error("coefficient A_{w} = {value} of the transform is not a nonnegative integer; the input is not a weight distribution of a {k}-dimensional code")]
    Inconsistent { w: usize, k: usize, value: String },
    #[error("coefficient A_{w} = {value} does not fit in 128 bits")]
    Overflow { w: usize, value: String },
}

/// Binomial coefficient `C(n, r)` as a big integer (zero when `r > n`).
pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Krawtchouk value `K_w(j; n) = Σ_i (-1)^i C(j, i) C(n - j, w - i)`.
pub fn krawtchouk(w: usize, j: usize, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=w.min(j) {
        let term = BigInt::from(binomial(j, i) * binomial(n - j, w - i));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// A weight enumerator with exact rational coefficients.
///
/// Holds genuine distributions as well as transformed intermediates that
/// have not yet been checked for integrality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratorPolynomial {
    pub n: usize,
    pub coeffs: Vec<BigRational>,
}

impl EnumeratorPolynomial {
    pub fn from_distribution(dist: &WeightDistribution) -> Self {
        Self {
            n: dist.n,
            coeffs: dist
                .counts
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// `(1/2^k) Σ_j A_j K_w(j; n)` for every `w`, without an integrality check.
    pub fn macwilliams(&self, k: usize) -> Self {
        let n = self.n;
        let scale = BigRational::from_integer(BigInt::one() << k);
        let coeffs = (0..=n)
            .map(|w| {
                let sum = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (j, a)| {
                        acc + a * BigRational::from_integer(krawtchouk(w, j, n))
                    });
                sum / &scale
            })
            .collect();
        Self { n, coeffs }
    }

    pub fn total(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Converts back to counts, failing on any non-integral or negative
    /// coefficient.
    pub fn into_distribution(self, k: usize) -> Result<WeightDistribution, EnumeratorError> {
        let n = self.n;
        let counts = self
            .coeffs
            .into_iter()
            .enumerate()
            .map(|(w, c)| {
                if !c.is_integer() || c.is_negative() {
                    return Err(EnumeratorError::Inconsistent {
                        w,
                        k,
                        value: c.to_string(),
                    });
                }
                c.to_integer().to_u128().ok_or(EnumeratorError::Overflow {
                    w,
                    value: c.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightDistribution::new(n, counts))
    }
}

/// Distribution of the dual of a `k`-dimensional code with distribution `dist`.
pub fn macwilliams_transform(
    dist: &WeightDistribution,
    k: usize,
) -> Result<WeightDistribution, EnumeratorError> {
    if k > dist.n {
        return Err(EnumeratorError::DimensionTooLarge { k, n: dist.n });
    }
    EnumeratorPolynomial::from_distribution(dist)
        .macwilliams(k)
        .into_distribution(k)
}

/// `Σ_w A_w x^(n-w) y^w` in floating point with compensated summation.
pub fn enumerator_eval(dist: &WeightDistribution, x: f64, y: f64) -> f64 {
    let n = dist.n;
    let mut sum = CompensatedSum::new();
    for (w, &a) in dist.counts.iter().enumerate() {
        if a != 0 {
            sum.add(a as f64 * power(x, (n - w) as u32) * power(y, w as u32));
        }
    }
    sum.value()
}
