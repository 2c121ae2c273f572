//! Reference codes, random self-orthogonal codes and the fixture set.

use crate::gf2::{
    mask, null_space, weight_distribution, BinaryCode, Echelon, Gf2Error, WeightDistribution,
    MAX_LENGTH,
};
use crate::gmat::{parse_gmat, GmatError};
use crate::prng::CounterRng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZooError {
    #[error("Reed-Muller order-1 parameter m = {0} is outside 3..=6")]
    ReedMullerRange(usize),
    #[error("invalid parameters n = {n}, k = {k}: {reason}")]
    InvalidParameters {
        n: usize,
        k: usize,
        reason: &'static str,
    },
    #[error("unknown zoo entry {0:?}")]
    UnknownEntry(String),
    #[error("fixture {name}: {source}")]
    Fixture { name: String, source: GmatError },
    #[error("fixture {name}: expected distribution is malformed: {message}")]
    Expected { name: String, message: String },
    #[error(transparent)]
    Code(#[from] Gf2Error),
}

/// Checked-in `.gmat` fixtures with their expected distributions.
pub const FIXTURES: &[(&str, &str, &str)] = &[
    (
        "rep2",
        include_str!("../fixtures/rep2.gmat"),
        include_str!("../fixtures/rep2.expected.json"),
    ),
    (
        "rep3",
        include_str!("../fixtures/rep3.gmat"),
        include_str!("../fixtures/rep3.expected.json"),
    ),
    (
        "wsd3",
        include_str!("../fixtures/wsd3.gmat"),
        include_str!("../fixtures/wsd3.expected.json"),
    ),
    (
        "sd4",
        include_str!("../fixtures/sd4.gmat"),
        include_str!("../fixtures/sd4.expected.json"),
    ),
    (
        "hamming7",
        include_str!("../fixtures/hamming7.gmat"),
        include_str!("../fixtures/hamming7.expected.json"),
    ),
    (
        "simplex7",
        include_str!("../fixtures/simplex7.gmat"),
        include_str!("../fixtures/simplex7.expected.json"),
    ),
    (
        "hamming8",
        include_str!("../fixtures/hamming8.gmat"),
        include_str!("../fixtures/hamming8.expected.json"),
    ),
    (
        "golay24",
        include_str!("../fixtures/golay24.gmat"),
        include_str!("../fixtures/golay24.expected.json"),
    ),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZooEntry {
    pub name: String,
    pub code: BinaryCode,
    pub expected: Option<WeightDistribution>,
    pub provenance: String,
}

impl ZooEntry {
    /// Checks the stored distribution, when present, against enumeration.
    pub fn validate(&self) -> Result<bool, Gf2Error> {
        match &self.expected {
            Some(e) => Ok(weight_distribution(&self.code)? == *e),
            None => Ok(true),
        }
    }
}

/// The `[8, 4, 4]` extended Hamming code: systematic `[7, 4]` Hamming code
/// plus an overall parity bit.
pub fn build_extended_hamming() -> BinaryCode {
    const PARITY: [u64; 4] = [0b011, 0b101, 0b110, 0b111];
    let rows: Vec<u64> = PARITY
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let word7 = (1u64 << (6 - i)) | p;
            (word7 << 1) | u64::from(word7.count_ones() % 2)
        })
        .collect();
    BinaryCode::from_words(8, &rows).expect("fixed generators are independent")
}

/// The `[24, 12, 8]` extended Golay code from the checked-in fixture.
pub fn build_golay24() -> BinaryCode {
    parse_gmat(fixture_text("golay24").expect("golay24 fixture")).expect("golay24 fixture parses")
}

/// First-order Reed-Muller code `RM(1, m)` of length `2^m`.
///
/// Coordinate `p` is the point whose binary expansion is `p`; the rows are
/// the all-ones word and the `m` coordinate functions.
pub fn build_reed_muller_1(m: usize) -> Result<BinaryCode, ZooError> {
    if !(3..=6).contains(&m) {
        return Err(ZooError::ReedMullerRange(m));
    }
    let n = 1usize << m;
    let mut rows = vec![mask(n)];
    for i in 0..m {
        let f = (0..n)
            .filter(|p| p >> i & 1 == 1)
            .fold(0u64, |acc, p| acc | 1u64 << (n - 1 - p));
        rows.push(f);
    }
    Ok(BinaryCode::from_words(n, &rows)?)
}

/// Seeded random `k`-dimensional self-orthogonal code of even length `n`.
///
/// Each generator is drawn uniformly from the even-weight vectors orthogonal
/// to the generators chosen so far; picks inside the current span are
/// rejected and redrawn. The stream is [`CounterRng`] seeded with `seed`,
/// one `u64` per draw, whose low bits select a combination of the
/// constraint-space basis.
pub fn random_weakly_self_dual(n: usize, k: usize, seed: u64) -> Result<BinaryCode, ZooError> {
    if n == 0 || n > MAX_LENGTH || n % 2 == 1 {
        return Err(ZooError::InvalidParameters {
            n,
            k,
            reason: "n must be even and at most 64",
        });
    }
    if k == 0 || 2 * k > n {
        return Err(ZooError::InvalidParameters {
            n,
            k,
            reason: "k must satisfy 1 <= k <= n/2",
        });
    }
    let mut rng = CounterRng::new(seed);
    let mut chosen: Vec<u64> = Vec::with_capacity(k);
    let mut span = Echelon::new();
    while chosen.len() < k {
        let mut constraints = chosen.clone();
        constraints.push(mask(n));
        let basis = null_space(&constraints, n);
        let dim = basis.len();
        loop {
            let coeffs = rng.next_u64() & mask(dim);
            let v = basis
                .iter()
                .enumerate()
                .filter(|(i, _)| coeffs >> i & 1 == 1)
                .fold(0u64, |acc, (_, b)| acc ^ b);
            if span.insert(v) {
                chosen.push(v);
                break;
            }
        }
    }
    Ok(BinaryCode::from_words(n, &chosen)?)
}

pub fn fixture_text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _, _)| *n == name).map(|(_, g, _)| *g)
}

#[derive(serde::Deserialize)]
struct ExpectedFile {
    n: usize,
    counts: Vec<u128>,
}

pub fn parse_expected(name: &str, json: &str) -> Result<WeightDistribution, ZooError> {
    let bad = |message: String| ZooError::Expected {
        name: name.to_string(),
        message,
    };
    let e: ExpectedFile = serde_json::from_str(json).map_err(|err| bad(err.to_string()))?;
    if e.counts.len() != e.n + 1 {
        return Err(bad(format!("{} counts for n = {}", e.counts.len(), e.n)));
    }
    Ok(WeightDistribution::new(e.n, e.counts))
}

fn reed_muller_distribution(m: usize) -> WeightDistribution {
    let n = 1usize << m;
    let mut counts = vec![0u128; n + 1];
    counts[0] = 1;
    counts[n / 2] = (1u128 << (m + 1)) - 2;
    counts[n] = 1;
    WeightDistribution::new(n, counts)
}

/// Fixtures kept out of the zoo: self-orthogonal codes of odd length, for
/// which the λ-family inequality was only derived under `n` even.
pub const OUTSIDE_ZOO: &[&str] = &["wsd3", "simplex7"];

/// Seeded random codes included in the zoo: `(n, k, seed)`.
pub const RANDOM_ZOO: &[(usize, usize, u64)] = &[(12, 4, 42), (16, 8, 7), (20, 6, 99), (24, 12, 2024)];

/// Every zoo entry in fixed order.
pub fn zoo() -> Result<Vec<ZooEntry>, ZooError> {
    let mut out = Vec::new();
    for &(name, gmat, expected) in FIXTURES {
        if OUTSIDE_ZOO.contains(&name) {
            continue;
        }
        let code = parse_gmat(gmat).map_err(|source| ZooError::Fixture {
            name: name.to_string(),
            source,
        })?;
        let provenance = gmat
            .lines()
            .find_map(|l| l.strip_prefix('#'))
            .map(|s| s.trim().to_string())
            .unwrap_or_default();
        out.push(ZooEntry {
            name: name.to_string(),
            code,
            expected: Some(parse_expected(name, expected)?),
            provenance,
        });
    }
    for m in [4, 5] {
        out.push(ZooEntry {
            name: format!("rm1_{m}"),
            code: build_reed_muller_1(m)?,
            expected: Some(reed_muller_distribution(m)),
            provenance: format!("first-order Reed-Muller code RM(1,{m})"),
        });
    }
    for &(n, k, seed) in RANDOM_ZOO {
        out.push(ZooEntry {
            name: format!("rand{n}_{k}_s{seed}"),
            code: random_weakly_self_dual(n, k, seed)?,
            expected: None,
            provenance: format!("random self-orthogonal code, n = {n}, k = {k}, seed = {seed}"),
        });
    }
    Ok(out)
}

pub fn zoo_entry(name: &str) -> Result<ZooEntry, ZooError> {
    zoo()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| ZooError::UnknownEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{code_metrics, is_doubly_even, is_weakly_self_dual};
    use crate::gmat::emit_gmat;

    #[test]
    fn extended_hamming() {
        let h = build_extended_hamming();
        assert!(is_weakly_self_dual(&h));
        assert!(is_doubly_even(&h));
        let d = weight_distribution(&h).unwrap();
        assert_eq!(d.counts, vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
        assert_eq!(code_metrics(&h, &d).unwrap().d, 4);
        assert_eq!(h, zoo_entry("hamming8").unwrap().code);
    }

    #[test]
    fn golay() {
        let g = build_golay24();
        assert_eq!((g.n(), g.k()), (24, 12));
        assert!(is_weakly_self_dual(&g));
        let d = weight_distribution(&g).unwrap();
        assert_eq!(d.count(8), 759);
        assert_eq!(d.count(12), 2576);
        assert_eq!(parse_gmat(&emit_gmat(&g)).unwrap(), g);
    }

    #[test]
    fn reed_muller() {
        let r3 = build_reed_muller_1(3).unwrap();
        assert_eq!((r3.n(), r3.k()), (8, 4));
        assert_eq!(weight_distribution(&r3).unwrap().count(4), 14);
        let r4 = build_reed_muller_1(4).unwrap();
        assert_eq!(weight_distribution(&r4).unwrap().count(8), 30);
        let r5 = build_reed_muller_1(5).unwrap();
        assert_eq!(weight_distribution(&r5).unwrap().count(16), 62);
        for m in 3..=6 {
            let r = build_reed_muller_1(m).unwrap();
            assert!(is_weakly_self_dual(&r));
            assert_eq!(weight_distribution(&r).unwrap(), reed_muller_distribution(m));
        }
        assert_eq!(build_reed_muller_1(2), Err(ZooError::ReedMullerRange(2)));
        assert_eq!(build_reed_muller_1(7), Err(ZooError::ReedMullerRange(7)));
    }

    #[test]
    fn random_codes() {
        let c = random_weakly_self_dual(2, 1, 12345).unwrap();
        assert_eq!(c.rows(), &[0b11]);
        let a = random_weakly_self_dual(12, 4, 42).unwrap();
        let b = random_weakly_self_dual(12, 4, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.k(), 4);
        assert!(is_weakly_self_dual(&a));
        assert_ne!(a, random_weakly_self_dual(12, 4, 43).unwrap());
        for n in (2..=24).step_by(2) {
            let c = random_weakly_self_dual(n, n / 2, n as u64).unwrap();
            assert_eq!(c.k(), n / 2);
            assert!(is_weakly_self_dual(&c));
        }
        assert!(random_weakly_self_dual(7, 2, 0).is_err());
        assert!(random_weakly_self_dual(8, 5, 0).is_err());
        assert!(random_weakly_self_dual(8, 0, 0).is_err());
    }

    #[test]
    fn zoo_is_consistent() {
        let z = zoo().unwrap();
        let mut names: Vec<_> = z.iter().map(|e| e.name.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), z.len());
        for e in &z {
            assert!(e.validate().unwrap(), "{}", e.name);
            if is_weakly_self_dual(&e.code) {
                assert_eq!(e.code.n() % 2, 0, "{}", e.name);
                assert!(!weight_distribution(&e.code).unwrap().has_odd_weights());
            }
        }
        assert!(matches!(zoo_entry("nope"), Err(ZooError::UnknownEntry(_))));
    }
}
