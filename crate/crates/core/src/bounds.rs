//! Upper bounds on the weight distribution of weakly self-dual codes.
//!
//! Every bound is carried as a base-2 logarithm so that formula-only
//! evaluation stays finite for lengths in the thousands.

use std::f64::consts::LOG2_E;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::enumerators::binomial;
use crate::gf2::{BinaryCode, CodeMetrics, WeightDistribution};
use crate::numeric::{log2_biguint, CompensatedSum};

/// Relative slack allowed when comparing a count against a bound.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundError {
    #[error("{name} = {value} is outside {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("the distribution has codewords of odd weight, so the code is not weakly self-dual")]
    OddWeights,
    #[error("the code is not weakly self-dual")]
    NotWeaklySelfDual,
    #[error("distribution length {dist} does not match code length {code}")]
    LengthMismatch { dist: usize, code: usize },
    #[error("interval constant undefined: outer radicand {0} is negative")]
    NegativeRadicand(f64),
}

fn domain(name: &'static str, value: f64, range: &'static str) -> BoundError {
    BoundError::Domain { name, value, range }
}

/// A bound value in log2 form, or the reason it does not apply.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundValue {
    pub log2_value: f64,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl BoundValue {
    pub fn applies(log2_value: f64) -> Self {
        Self {
            log2_value,
            applicable: true,
            reason: None,
        }
    }

    pub fn not_applicable(reason: impl Into<String>) -> Self {
        Self {
            log2_value: f64::NAN,
            applicable: false,
            reason: Some(reason.into()),
        }
    }

    pub fn value(&self) -> Option<f64> {
        self.applicable.then(|| self.log2_value.exp2())
    }

    pub fn log2(&self) -> Option<f64> {
        self.applicable.then_some(self.log2_value)
    }

    /// Whether `count` sits under the bound, with relative tolerance `tol`.
    pub fn admits(&self, count: u128, tol: f64) -> bool {
        if !self.applicable || count == 0 {
            return true;
        }
        (count as f64).log2() <= self.log2_value + (1.0 + tol).log2()
    }
}

/// `H₂(x) = -x log₂ x - (1-x) log₂(1-x)`, zero at the endpoints.
pub fn binary_entropy(x: f64) -> Result<f64, BoundError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("x", x, "[0, 1]"));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

fn check_weight_range(n: usize, w: usize) -> Option<BoundValue> {
    if w == 0 || 2 * w >= n {
        Some(BoundValue::not_applicable(format!(
            "w = {w} is outside 0 < w < n/2 = {}",
            n as f64 / 2.0
        )))
    } else {
        None
    }
}

/// `A_w ≤ 2^((n/2) H₂(w/n))` for `0 < w < n/2`.
pub fn bound_entropy(n: usize, w: usize) -> BoundValue {
    if let Some(na) = check_weight_range(n, w) {
        return na;
    }
    let h = binary_entropy(w as f64 / n as f64).expect("w/n lies in (0, 1/2)");
    BoundValue::applies(0.5 * n as f64 * h)
}

/// `A_w ≤ √e (n - w + 1)^(w/2)` for `0 < w < n/2`.
pub fn bound_sqrt_e(n: usize, w: usize) -> BoundValue {
    if let Some(na) = check_weight_range(n, w) {
        return na;
    }
    BoundValue::applies(0.5 * LOG2_E + 0.5 * w as f64 * ((n - w + 1) as f64).log2())
}

/// Outcome of the λ-family inequality `Σ_j A_{2j} λ^j ≤ (1+λ)^(n/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaCheck {
    pub lambda: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// False for odd `n`, where the inequality was not derived.
    pub within_hypotheses: bool,
}

fn check_lambda(lambda: f64) -> Result<(), BoundError> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(domain("lambda", lambda, "(0, 1)"));
    }
    Ok(())
}

pub fn lambda_family_check(dist: &WeightDistribution, lambda: f64) -> Result<LambdaCheck, BoundError> {
    check_lambda(lambda)?;
    if dist.has_odd_weights() {
        return Err(BoundError::OddWeights);
    }
    let lhs = dist
        .counts
        .iter()
        .step_by(2)
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(j, &a)| a as f64 * lambda.powi(j as i32))
        .collect::<CompensatedSum>()
        .value();
    let rhs = (1.0 + lambda).powf(dist.n as f64 / 2.0);
    Ok(LambdaCheck {
        lambda,
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-12),
        within_hypotheses: dist.n % 2 == 0,
    })
}

/// Exact-rational version of [`lambda_family_check`]; returns `lhs ≤ rhs`.
/// Only defined for even `n`.
pub fn lambda_family_check_exact(
    dist: &WeightDistribution,
    lambda: &BigRational,
) -> Result<bool, BoundError> {
    let approx = lambda.to_f64().unwrap_or(f64::NAN);
    if *lambda <= BigRational::zero() || *lambda >= BigRational::one() {
        return Err(domain("lambda", approx, "(0, 1)"));
    }
    if dist.has_odd_weights() {
        return Err(BoundError::OddWeights);
    }
    if dist.n % 2 == 1 {
        return Err(domain("n", dist.n as f64, "even lengths"));
    }
    let mut lhs = BigRational::zero();
    let mut pow = BigRational::one();
    for &a in dist.counts.iter().step_by(2) {
        lhs += BigRational::from_integer(BigInt::from(a)) * &pow;
        pow *= lambda;
    }
    let rhs = num_traits::pow(BigRational::one() + lambda, dist.n / 2);
    Ok(lhs <= rhs)
}

/// Upper-bound exponent `F(λ) = -(α/2) log₂ λ + (1/2) log₂(1+λ)`.
pub fn lambda_objective(alpha: f64, lambda: f64) -> f64 {
    -0.5 * alpha * lambda.log2() + 0.5 * (1.0 + lambda).log2()
}

/// Minimizer `α/(1-α)` of [`lambda_objective`] on `(0, 1)`.
pub fn optimal_lambda(alpha: f64) -> Result<f64, BoundError> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(domain("alpha", alpha, "(0, 1/2)"));
    }
    Ok(alpha / (1.0 - alpha))
}

/// Left end `c` of the interval `[c, 1-c]` on which the doubly-even bound holds.
pub fn interval_constant(delta: f64) -> Result<f64, BoundError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(domain("delta", delta, "(0, 1)"));
    }
    let inner = 1.0 - 8.0 * delta + 32.0 * delta * delta;
    let outer = (6.0 * delta - 1.0 + inner.sqrt()) / (8.0 * (1.0 - delta));
    if outer < 0.0 {
        return Err(BoundError::NegativeRadicand(outer));
    }
    Ok(0.5 - outer.sqrt())
}

/// `A_w ≤ 2^((H₂(w/n) - 1/2) n)` for doubly-even self-dual codes with
/// `w/n ∈ [c, 1-c]`.
pub fn doubly_even_bound(n: usize, w: usize, delta: f64) -> BoundValue {
    if w == 0 || w >= n {
        return BoundValue::not_applicable(format!("w = {w} is outside 0 < w < n = {n}"));
    }
    let c = match interval_constant(delta) {
        Ok(c) => c,
        Err(e) => return BoundValue::not_applicable(e.to_string()),
    };
    let ratio = w as f64 / n as f64;
    if ratio < c || ratio > 1.0 - c {
        return BoundValue::not_applicable(format!(
            "w/n = {ratio:.6} is outside [c, 1-c] = [{c:.6}, {:.6}]",
            1.0 - c
        ));
    }
    let h = binary_entropy(ratio).expect("ratio in (0, 1)");
    BoundValue::applies((h - 0.5) * n as f64)
}

/// Expected `A_w` of a random `[n, k]` code: `C(n, w) / 2^(n-k)`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Baseline {
    /// Exact value as `numerator / 2^denominator_log2`.
    #[serde(serialize_with = "serialize_display")]
    pub numerator: num_bigint::BigUint,
    pub denominator_log2: usize,
    pub log2_value: f64,
    /// `None` when the value overflows a double.
    pub decimal: Option<f64>,
}

fn serialize_display<S: serde::Serializer>(
    v: &num_bigint::BigUint,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn binomial_baseline(n: usize, k: usize, w: usize) -> Result<Baseline, BoundError> {
    if w > n {
        return Err(domain("w", w as f64, "[0, n]"));
    }
    if k > n {
        return Err(domain("k", k as f64, "[0, n]"));
    }
    let numerator = binomial(n, w);
    let shift = n - k;
    let log2_value = log2_biguint(&numerator) - shift as f64;
    // scaling by a power of two is exact in binary floating point
    let decimal = numerator
        .to_f64()
        .filter(|v| v.is_finite())
        .map(|v| v * (-(shift as f64)).exp2())
        .filter(|v| v.is_finite() && *v > 0.0);
    Ok(Baseline {
        numerator,
        denominator_log2: shift,
        log2_value,
        decimal,
    })
}

/// One weight's comparison of `A_w` against every applicable bound.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundRow {
    pub w: usize,
    pub count: u128,
    pub entropy: BoundValue,
    pub sqrt_e: BoundValue,
    pub doubly_even: BoundValue,
    pub baseline: Baseline,
    /// Smallest `log₂(bound) - log₂(A_w)` over applicable bounds; `None` when `A_w = 0`.
    pub min_slack: Option<f64>,
    pub zero_count: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    /// False for odd `n`: rows are reported but not asserted.
    pub within_hypotheses: bool,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn row(&self, w: usize) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.w == w)
    }
}

/// Per-weight table for every even `w` with `0 < w < n/2`.
pub fn tightest_bound_report(
    code: &BinaryCode,
    dist: &WeightDistribution,
    metrics: &CodeMetrics,
    tol: f64,
) -> Result<BoundReport, BoundError> {
    if !metrics.weakly_self_dual {
        return Err(BoundError::NotWeaklySelfDual);
    }
    if dist.n != code.n() {
        return Err(BoundError::LengthMismatch {
            dist: dist.n,
            code: code.n(),
        });
    }
    let n = code.n();
    let k = code.k();
    let doubly_even_self_dual = metrics.doubly_even && 2 * k == n;
    let rows = (2..n.div_ceil(2))
        .step_by(2)
        .filter(|&w| 2 * w < n)
        .map(|w| {
            let count = dist.count(w);
            let entropy = bound_entropy(n, w);
            let sqrt_e = bound_sqrt_e(n, w);
            let doubly_even = if doubly_even_self_dual {
                doubly_even_bound(n, w, metrics.delta_f64())
            } else {
                BoundValue::not_applicable("code is not doubly-even self-dual")
            };
            let applicable = [&entropy, &sqrt_e, &doubly_even];
            let min_slack = (count != 0).then(|| {
                let log_a = (count as f64).log2();
                applicable
                    .iter()
                    .filter_map(|b| b.log2())
                    .map(|l| l - log_a)
                    .fold(f64::INFINITY, f64::min)
            });
            let holds = applicable.iter().all(|b| b.admits(count, tol));
            BoundRow {
                w,
                count,
                entropy,
                sqrt_e,
                doubly_even,
                baseline: binomial_baseline(n, k, w).expect("w < n"),
                min_slack,
                zero_count: count == 0,
                holds,
            }
        })
        .collect();
    Ok(BoundReport {
        n,
        k,
        within_hypotheses: n % 2 == 0,
        rows,
    })
}

/// `λ` grid `j / (steps + 1)` for `j = 1..=steps`.
pub fn lambda_grid(steps: usize) -> Vec<f64> {
    (1..=steps).map(|j| j as f64 / (steps + 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn dist(counts: &[u128]) -> WeightDistribution {
        WeightDistribution::new(counts.len() - 1, counts.to_vec())
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert!(close(binary_entropy(0.11).unwrap(), 0.5, 5e-4));
        assert!(close(binary_entropy(1.0 / 3.0).unwrap(), 0.918296, 1e-6));
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn entropy_bound_examples() {
        let b = bound_entropy(24, 8);
        assert!(close(b.log2_value, 12.0 * binary_entropy(1.0 / 3.0).unwrap(), 1e-12));
        assert!(close(b.log2_value, 11.0196, 1e-3));
        assert!(b.admits(759, BOUND_TOLERANCE));
        assert!(!bound_entropy(8, 4).applicable);
        assert!(!bound_entropy(8, 0).applicable);
        assert!(close(bound_entropy(100, 2).log2_value, 7.07, 5e-3));
    }

    #[test]
    fn sqrt_e_bound_examples() {
        let b = bound_sqrt_e(24, 8);
        let direct = 1f64.exp().sqrt() * 17f64.powi(4);
        assert!(close(b.value().unwrap(), direct, 1e-6 * direct));
        assert!(close(direct, 1.3771e5, 10.0));
        assert!(close(bound_sqrt_e(4, 1).value().unwrap(), 2.0 * 1f64.exp().sqrt(), 1e-12));
        assert!(close(bound_sqrt_e(100, 2).value().unwrap(), 99.0 * 1f64.exp().sqrt(), 1e-9));
        assert!(!bound_sqrt_e(24, 12).applicable);
    }

    #[test]
    fn lambda_check_examples() {
        let c = lambda_family_check(&dist(&[1, 0, 1]), 0.5).unwrap();
        assert_eq!(c.lhs, 1.5);
        assert_eq!(c.rhs, 1.5);
        assert!(c.holds && c.within_hypotheses);

        let c = lambda_family_check(&dist(&[1, 0, 1]), 1e-9).unwrap();
        assert!(close(c.lhs, 1.0, 1e-8) && close(c.rhs, 1.0, 1e-8));

        assert_eq!(
            lambda_family_check(&dist(&[1, 0, 0, 1]), 0.5),
            Err(BoundError::OddWeights)
        );
        assert!(lambda_family_check(&dist(&[1, 0, 1]), 1.0).is_err());

        let odd = lambda_family_check(&dist(&[1, 0, 1, 0]), 0.5).unwrap();
        assert!(!odd.within_hypotheses);
    }

    #[test]
    fn exact_lambda_check() {
        let half = BigRational::new(1.into(), 2.into());
        assert!(lambda_family_check_exact(&dist(&[1, 0, 1]), &half).unwrap());
        let h = dist(&[1, 0, 0, 0, 14, 0, 0, 0, 1]);
        for j in 1..20 {
            let l = BigRational::new(j.into(), 20.into());
            assert!(lambda_family_check_exact(&h, &l).unwrap());
        }
        // a fake distribution with too much weight-2 mass fails
        assert!(!lambda_family_check_exact(&dist(&[1, 0, 9, 0, 0]), &half).unwrap());
    }

    #[test]
    fn optimal_lambda_examples() {
        assert!(close(optimal_lambda(1.0 / 3.0).unwrap(), 0.5, 1e-15));
        let l = optimal_lambda(0.25).unwrap();
        assert!(close(l, 1.0 / 3.0, 1e-15));
        let half_h = 0.5 * binary_entropy(0.25).unwrap();
        assert!(close(lambda_objective(0.25, l), half_h, 1e-12));
        assert!(optimal_lambda(0.5).is_err());
        assert!(optimal_lambda(0.0).is_err());
    }

    #[test]
    fn interval_constant_examples() {
        let c = interval_constant(0.11).unwrap();
        assert!(c > 0.27);
        assert!(close(c, 0.2714, 1e-3));
        assert!(close(interval_constant(1.0 / 3.0).unwrap(), -0.1672, 1e-3));
        assert!(close(interval_constant(1e-12).unwrap(), 0.5, 1e-5));
        assert!(interval_constant(0.0).is_err());
    }

    #[test]
    fn doubly_even_examples() {
        let b = doubly_even_bound(24, 8, 1.0 / 3.0);
        assert!(b.applicable);
        assert!(close(b.log2_value, 10.04, 1e-2));
        assert!(close(b.value().unwrap(), 1053.0, 1.0));
        let na = doubly_even_bound(100, 20, 0.11);
        assert!(!na.applicable);
        assert!(na.reason.unwrap().contains("outside"));
        let mid = doubly_even_bound(24, 12, 1.0 / 3.0);
        assert_eq!(mid.log2_value, 12.0);
    }

    #[test]
    fn baseline_examples() {
        let b = binomial_baseline(2, 1, 0).unwrap();
        assert_eq!(b.decimal, Some(0.5));
        let b = binomial_baseline(24, 12, 8).unwrap();
        assert_eq!(b.numerator, 735_471u32.into());
        assert_eq!(b.denominator_log2, 12);
        assert_eq!(b.decimal, Some(735_471.0 / 4096.0));
        assert_eq!(binomial_baseline(8, 4, 4).unwrap().decimal, Some(4.375));
        let big = binomial_baseline(4096, 0, 2048).unwrap();
        assert!(big.decimal.is_none(), "{:?}", big.decimal);
        assert!(big.log2_value.is_finite());
    }

    #[test]
    fn admits_uses_relative_tolerance() {
        let b = BoundValue::applies(10.0);
        assert!(b.admits(1024, 0.0));
        assert!(!b.admits(1025, 1e-9));
        assert!(BoundValue::not_applicable("x").admits(u128::MAX, 0.0));
    }

    #[test]
    fn grids() {
        let g = lambda_grid(99);
        assert_eq!(g.len(), 99);
        assert!(close(g[0], 0.01, 1e-15) && close(g[98], 0.99, 1e-15));
    }
}
