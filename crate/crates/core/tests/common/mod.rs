//! Independent reference computations shared by the integration tests.
//! Nothing here calls into the library's numerical routines.
#![allow(dead_code)]

use wsd_core::BinaryCode;

/// Dense `R_θ^{⊗n}` as a row-major `2^n × 2^n` matrix, built by repeated
/// Kronecker products.
pub fn kron_matrix(n: usize, theta: f64) -> Vec<f64> {
    let r = [[theta.sin(), theta.cos()], [theta.cos(), -theta.sin()]];
    let mut m = vec![1.0];
    let mut dim = 1;
    for _ in 0..n {
        let next_dim = dim * 2;
        let mut next = vec![0.0; next_dim * next_dim];
        for i in 0..dim {
            for j in 0..dim {
                let a = m[i * dim + j];
                for (p, row) in r.iter().enumerate() {
                    for (q, &b) in row.iter().enumerate() {
                        next[(2 * i + p) * next_dim + 2 * j + q] = a * b;
                    }
                }
            }
        }
        m = next;
        dim = next_dim;
    }
    m
}

/// Every codeword by direct linear combination of the generators.
pub fn naive_codewords(code: &BinaryCode) -> Vec<u64> {
    let gens = code.generators();
    (0..1u64 << gens.len())
        .map(|msg| {
            let mut word = 0u64;
            for (i, g) in gens.iter().enumerate() {
                if msg >> i & 1 == 1 {
                    word ^= g.bits();
                }
            }
            word
        })
        .collect()
}

/// The dual code by testing every word of length `n`.
pub fn brute_dual_words(code: &BinaryCode) -> Vec<u64> {
    let n = code.n();
    (0..1u64 << n)
        .filter(|x| code.rows().iter().all(|r| (r & x).count_ones() % 2 == 0))
        .collect()
}

pub fn brute_distribution(words: &[u64], n: usize) -> Vec<u128> {
    let mut counts = vec![0u128; n + 1];
    for w in words {
        counts[w.count_ones() as usize] += 1;
    }
    counts
}

pub fn entropy2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.ln() / std::f64::consts::LN_2 - (1.0 - x) * (1.0 - x).ln() / std::f64::consts::LN_2
}

/// Minimizer of a unimodal function on `[a, b]`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    (a + b) / 2.0
}

/// `c = 1/2 - u` where `u² = x` is the positive root of
/// `4(1-δ)x² + (1-6δ)x - δ/4 = 0`, found by bisection on `u`.
pub fn interval_constant_oracle(delta: f64) -> f64 {
    let f = |u: f64| {
        let x = u * u;
        4.0 * (1.0 - delta) * x * x + (1.0 - 6.0 * delta) * x - delta / 4.0
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 - (lo + hi) / 2.0
}

/// `√e (n-w+1)^(w/2)` evaluated directly.
pub fn sqrt_e_bound(n: usize, w: usize) -> f64 {
    std::f64::consts::E.sqrt() * ((n - w + 1) as f64).powf(w as f64 / 2.0)
}

/// `2^(H₂(w/n) n / 2)` evaluated directly.
pub fn entropy_bound(n: usize, w: usize) -> f64 {
    (0.5 * entropy2(w as f64 / n as f64) * n as f64).exp2()
}
