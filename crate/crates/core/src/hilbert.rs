//! Dense state vectors over `n` qubits and the rotation `R_θ^⊗n`.
//!
//! Basis states are indexed by packed words (see [`crate::gf2`]): written
//! position 0 is qubit 1 and the most significant index bit. The dual-side
//! quantities are also available combinatorially so that codes longer than
//! [`STATE_CAP`] can still be checked.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::enumerators::{enumerator_eval, macwilliams_transform, EnumeratorError};
use crate::gf2::{
    dual_code, inner_product, is_weakly_self_dual, null_space, weight_distribution, word_to_string,
    BinaryCode, BitVector, Echelon, Gf2Error, WeightDistribution, ENUMERATION_CAP,
};
use crate::numeric::{sin_cos_power, CompensatedSum};

/// Largest qubit count for which dense states are built.
pub const STATE_CAP: usize = 22;

/// Limit on `log2` of the number of (coset, codeword) pairs visited when
/// building a [`CosetProfile`].
pub const COSET_WORK_CAP: usize = 36;

const NORM_TOLERANCE: f64 = 1e-9;

// Qubit strides at or above this are split across threads within a block.
const PARALLEL_STRIDE: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HilbertError {
    #[error("angle {0} is not finite")]
    NonFiniteAngle(f64),
    #[error("{n} qubits exceed the state-vector cap {cap}")]
    StateCapacity { n: usize, cap: usize },
    #[error("coset enumeration needs 2^{bits} steps, above the cap 2^{cap}")]
    WorkCapacity { bits: usize, cap: usize },
    #[error("dimension {k} or co-dimension {dual_k} exceeds the enumeration cap {cap}")]
    Capacity { k: usize, dual_k: usize, cap: usize },
    #[error("the code is not weakly self-dual")]
    NotWeaklySelfDual,
    #[error("words have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Enumerator(#[from] EnumeratorError),
}

/// The real 2×2 unitary `((sin θ, cos θ), (cos θ, -sin θ))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationGate {
    pub theta: f64,
    pub entries: [[f64; 2]; 2],
}

impl RotationGate {
    /// Largest entry of `MᵀM - I` in absolute value.
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.entries;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let dot = m[0][i] * m[0][j] + m[1][i] * m[1][j];
                let id = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - id).abs());
            }
        }
        worst
    }
}

pub fn rotation_gate(theta: f64) -> Result<RotationGate, HilbertError> {
    if !theta.is_finite() {
        return Err(HilbertError::NonFiniteAngle(theta));
    }
    let (s, c) = theta.sin_cos();
    Ok(RotationGate {
        theta,
        entries: [[s, c], [c, -s]],
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The basis state `|index⟩`.
    pub fn basis(n: usize, index: u64) -> Result<Self, HilbertError> {
        check_state_cap(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex64>) -> Result<Self, HilbertError> {
        check_state_cap(n)?;
        assert_eq!(amplitudes.len(), 1 << n, "need 2^n amplitudes");
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: u64) -> Complex64 {
        self.amplitudes[index as usize]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .collect::<CompensatedSum>()
            .value()
            .sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOLERANCE
    }

    /// Applies `gate` to every qubit in place.
    pub fn apply_to_all(&mut self, gate: &RotationGate) {
        for q in 0..self.n {
            self.apply_single(gate, q);
        }
    }

    /// Applies `gate` to qubit `q` (0 = leftmost).
    pub fn apply_single(&mut self, gate: &RotationGate, q: usize) {
        assert!(q < self.n);
        let stride = 1usize << (self.n - 1 - q);
        let m = gate.entries;
        let pair = move |x0: &mut Complex64, x1: &mut Complex64| {
            let (a, b) = (*x0, *x1);
            *x0 = a * m[0][0] + b * m[0][1];
            *x1 = a * m[1][0] + b * m[1][1];
        };
        if stride >= PARALLEL_STRIDE {
            for block in self.amplitudes.chunks_mut(2 * stride) {
                let (lo, hi) = block.split_at_mut(stride);
                lo.par_iter_mut()
                    .zip(hi.par_iter_mut())
                    .for_each(|(x0, x1)| pair(x0, x1));
            }
        } else {
            self.amplitudes
                .par_chunks_mut(2 * stride)
                .with_min_len(64)
                .for_each(|block| {
                    let (lo, hi) = block.split_at_mut(stride);
                    lo.iter_mut().zip(hi.iter_mut()).for_each(|(x0, x1)| pair(x0, x1));
                });
        }
    }

    /// Total probability mass on the basis states listed by `support`.
    pub fn mass_on(&self, support: impl IntoIterator<Item = u64>) -> f64 {
        support
            .into_iter()
            .map(|i| self.amplitudes[i as usize].norm_sqr())
            .collect::<CompensatedSum>()
            .value()
    }

    /// Diagnostic CSV dump: `basis,re,im`, one row per amplitude.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("basis,re,im\n");
        for (i, a) in self.amplitudes.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", word_to_string(i as u64, self.n), a.re, a.im);
        }
        out
    }
}

fn check_state_cap(n: usize) -> Result<(), HilbertError> {
    if n > STATE_CAP {
        return Err(HilbertError::StateCapacity { n, cap: STATE_CAP });
    }
    Ok(())
}

/// `|C⟩ = 2^(-k/2) Σ_{c∈C} |c⟩`.
pub fn code_state(code: &BinaryCode) -> Result<StateVector, HilbertError> {
    let n = code.n();
    check_state_cap(n)?;
    let amp = Complex64::new((0.5f64).powf(code.k() as f64 / 2.0), 0.0);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
    code.for_each_codeword(|c| amplitudes[c as usize] = amp);
    Ok(StateVector { n, amplitudes })
}

/// `S_θ s = R_θ^⊗n s`, one qubit at a time.
pub fn apply_s_theta(state: &StateVector, theta: f64) -> Result<StateVector, HilbertError> {
    let gate = rotation_gate(theta)?;
    let mut out = state.clone();
    out.apply_to_all(&gate);
    Ok(out)
}

/// Sign and exponents of the closed-form coefficient `⟨a|S_θ|c⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormTerms {
    /// `c·a`, the real inner product.
    pub inner: u32,
    pub sin_exp: u32,
    pub cos_exp: u32,
}

impl ClosedFormTerms {
    pub fn negative(&self) -> bool {
        self.inner % 2 == 1
    }
}

/// Exponents from the weight of the GF(2) sum: `n - wt(c+a)` and `wt(c+a)`.
pub fn terms_from_sum(c: u64, a: u64, n: usize) -> ClosedFormTerms {
    let d = (c ^ a).count_ones();
    ClosedFormTerms {
        inner: inner_product(c, a),
        sin_exp: n as u32 - d,
        cos_exp: d,
    }
}

/// Exponents from the separate weights:
/// `n - wt c - wt a + 2c·a` and `wt c + wt a - 2c·a`.
pub fn terms_from_weights(c: u64, a: u64, n: usize) -> ClosedFormTerms {
    let inner = inner_product(c, a) as i64;
    let (wc, wa) = (c.count_ones() as i64, a.count_ones() as i64);
    let sin_exp = n as i64 - wc - wa + 2 * inner;
    let cos_exp = wc + wa - 2 * inner;
    ClosedFormTerms {
        inner: inner as u32,
        sin_exp: u32::try_from(sin_exp).expect("sin exponent is nonnegative"),
        cos_exp: u32::try_from(cos_exp).expect("cos exponent is nonnegative"),
    }
}

/// `⟨a|S_θ|c⟩ = (-1)^(c·a) sin^(n-wt(c+a)) θ cos^(wt(c+a)) θ`.
///
/// Both exponent routes are computed and must agree.
pub fn closed_form_amplitude(c: &BitVector, a: &BitVector, theta: f64) -> Result<f64, HilbertError> {
    if c.len() != a.len() {
        return Err(HilbertError::LengthMismatch(c.len(), a.len()));
    }
    if !theta.is_finite() {
        return Err(HilbertError::NonFiniteAngle(theta));
    }
    let (s, co) = theta.sin_cos();
    Ok(closed_form_word(c.bits(), a.bits(), c.len(), s, co))
}

/// Word-level form of [`closed_form_amplitude`] with `sin θ`, `cos θ` given.
pub fn closed_form_word(c: u64, a: u64, n: usize, sin: f64, cos: f64) -> f64 {
    let t = terms_from_sum(c, a, n);
    assert_eq!(t, terms_from_weights(c, a, n), "exponent identity failed");
    let mag = sin_cos_power(sin, cos, t.sin_exp, t.cos_exp);
    if t.negative() {
        -mag
    } else {
        mag
    }
}

/// Weight distributions of the cosets `a + C` for `a ∈ C^⊥`, with
/// multiplicities. The dual-component mass only depends on these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetProfile {
    pub n: usize,
    pub k: usize,
    /// Coset weight distribution → number of `a ∈ C^⊥` with that coset.
    pub classes: BTreeMap<Vec<u64>, u128>,
}

impl CosetProfile {
    pub fn build(code: &BinaryCode) -> Result<Self, HilbertError> {
        let n = code.n();
        let k = code.k();
        if k > ENUMERATION_CAP || n - k > ENUMERATION_CAP {
            return Err(HilbertError::Capacity {
                k,
                dual_k: n - k,
                cap: ENUMERATION_CAP,
            });
        }
        let dual = dual_code(code);
        // C ∩ C^⊥ = (C + C^⊥)^⊥; a and a + x give the same coset for x in it.
        let both: Vec<u64> = code.rows().iter().chain(dual.rows()).copied().collect();
        let hull = null_space(&both, n);
        let mut ech = Echelon::new();
        for &h in &hull {
            ech.insert(h);
        }
        let reps: Vec<u64> = dual.rows().iter().copied().filter(|&r| ech.insert(r)).collect();
        let work_bits = reps.len() + k;
        if work_bits > COSET_WORK_CAP {
            return Err(HilbertError::WorkCapacity {
                bits: work_bits,
                cap: COSET_WORK_CAP,
            });
        }
        let per_rep = 1u128 << hull.len();
        let rep_code = BinaryCode::span(n, &reps)?;
        let classes = (0..1u64 << reps.len())
            .into_par_iter()
            .fold(BTreeMap::new, |mut acc: BTreeMap<Vec<u64>, u128>, i| {
                let rep = rep_code.encode(i);
                let mut counts = vec![0u64; n + 1];
                code.for_each_codeword(|c| counts[(c ^ rep).count_ones() as usize] += 1);
                *acc.entry(counts).or_default() += per_rep;
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (key, m) in b {
                    *a.entry(key).or_default() += m;
                }
                a
            });
        Ok(Self { n, k, classes })
    }

    /// `2^-k Σ_{a∈C^⊥} (Σ_{c∈C} sin^(n-wt(c+a)) cos^(wt(c+a)))²`.
    pub fn mass(&self, theta: f64) -> f64 {
        let (s, co) = theta.sin_cos();
        let n = self.n as u32;
        let total: CompensatedSum = self
            .classes
            .iter()
            .map(|(counts, &mult)| {
                let inner: f64 = counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(w, &c)| c as f64 * sin_cos_power(s, co, n - w as u32, w as u32))
                    .collect::<CompensatedSum>()
                    .value();
                mult as f64 * inner * inner
            })
            .collect();
        total.value() * (0.5f64).powi(self.k as i32)
    }
}

/// Mass of `S_θ|C⟩` on the span of `{|a⟩ : a ∈ C^⊥}`, evaluated combinatorially.
pub fn dual_component_mass(code: &BinaryCode, theta: f64) -> Result<f64, HilbertError> {
    if !theta.is_finite() {
        return Err(HilbertError::NonFiniteAngle(theta));
    }
    Ok(CosetProfile::build(code)?.mass(theta))
}

/// The same mass read off a dense state by projection onto `C^⊥`.
pub fn dual_component_mass_by_projection(code: &BinaryCode, theta: f64) -> Result<f64, HilbertError> {
    let rotated = apply_s_theta(&code_state(code)?, theta)?;
    let dual = dual_code(code);
    let mut support = Vec::with_capacity(1 << dual.k());
    dual.for_each_codeword(|a| support.push(a));
    Ok(rotated.mass_on(support))
}

/// Right-hand side `2^((n-2k)/2)` of the self-dual sum inequality.
pub fn self_dual_sum_bound(n: usize, k: usize) -> f64 {
    (0.5 * (n as f64 - 2.0 * k as f64)).exp2()
}

/// `|Σ_{c∈C^⊥} sin^(n-wt c) θ cos^(wt c) θ|` for a weakly self-dual code.
pub fn self_dual_sum(code: &BinaryCode, theta: f64) -> Result<f64, HilbertError> {
    if !is_weakly_self_dual(code) {
        return Err(HilbertError::NotWeaklySelfDual);
    }
    let dist = weight_distribution(code)?;
    let dual = macwilliams_transform(&dist, code.k())?;
    Ok(self_dual_sum_from_dual(&dual, theta))
}

/// [`self_dual_sum`] from a precomputed dual distribution.
pub fn self_dual_sum_from_dual(dual: &WeightDistribution, theta: f64) -> f64 {
    let (s, co) = theta.sin_cos();
    enumerator_eval(dual, s, co).abs()
}

/// `|Σ_{c∈C} (sin θ + cos θ)^(n-wt c) (sin θ - cos θ)^(wt c)|`, bounded by `2^(n/2)`.
pub fn enumerator_inequality(code: &BinaryCode, theta: f64) -> Result<f64, HilbertError> {
    if !is_weakly_self_dual(code) {
        return Err(HilbertError::NotWeaklySelfDual);
    }
    Ok(enumerator_inequality_from(&weight_distribution(code)?, theta))
}

pub fn enumerator_inequality_from(dist: &WeightDistribution, theta: f64) -> f64 {
    let (s, co) = theta.sin_cos();
    enumerator_eval(dist, s + co, s - co).abs()
}

/// `steps` evenly spaced angles on `[0.01, π - 0.01]` followed by `π/4` and `π/2`.
pub fn theta_grid(steps: usize) -> Vec<f64> {
    let (lo, hi) = (0.01, PI - 0.01);
    let mut grid: Vec<f64> = match steps {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => (0..steps)
            .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
            .collect(),
    };
    grid.extend([FRAC_PI_4, FRAC_PI_2]);
    grid
}
