//! Exact linear algebra and exhaustive enumeration over GF(2).
//!
//! Words of length `n <= 64` are packed into a `u64` so that the leftmost
//! written bit is the most significant of the `n` used bits. With this
//! convention the packed value of a word is also its index in the standard
//! basis of a state vector (see [`crate::hilbert`]).

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;

/// Largest supported code length.
pub const MAX_LENGTH: usize = 64;

/// Default cap on the dimension of a code whose codewords are enumerated.
pub const ENUMERATION_CAP: usize = 28;

// Below this many codewords a single Gray-code pass is faster than splitting.
const PARALLEL_THRESHOLD_BITS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("row {row} has length {found}, expected {expected}")]
    LengthMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("code length {0} is outside the supported range 1..=64")]
    UnsupportedLength(usize),
    #[error("generator rows are linearly dependent: rank {rank}, expected {expected}")]
    DependentRows { rank: usize, expected: usize },
    #[error(
        "dimension {k} exceeds the enumeration cap {cap}; \
         enumerate the dual (dimension {dual_k}) and apply the MacWilliams transform instead"
    )]
    Capacity { k: usize, cap: usize, dual_k: usize },
    #[error("the zero code has no minimum distance")]
    DegenerateCode,
    #[error("invalid bit character {0:?}")]
    InvalidBit(char),
}

/// A binary word with an explicit length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    bits: u64,
}

impl BitVector {
    /// Builds a word from its packed value; bits above `len` must be clear.
    pub fn new(len: usize, bits: u64) -> Result<Self, Gf2Error> {
        if len > MAX_LENGTH {
            return Err(Gf2Error::UnsupportedLength(len));
        }
        if bits & !mask(len) != 0 {
            return Err(Gf2Error::LengthMismatch {
                row: 0,
                expected: len,
                found: (64 - bits.leading_zeros()) as usize,
            });
        }
        Ok(Self { len, bits })
    }

    pub fn zero(len: usize) -> Self {
        Self { len, bits: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Bit at written position `i` (0 = leftmost).
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.bits >> (self.len - 1 - i) & 1 == 1
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let len = s.chars().count();
        if len > MAX_LENGTH {
            return Err(Gf2Error::UnsupportedLength(len));
        }
        let mut bits = 0u64;
        for ch in s.chars() {
            bits <<= 1;
            match ch {
                '0' => {}
                '1' => bits |= 1,
                other => return Err(Gf2Error::InvalidBit(other)),
            }
        }
        Ok(Self { len, bits })
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_to_string(self.bits, self.len))
    }
}

/// Mask of the low `n` bits.
#[inline]
pub fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Real inner product of two packed words.
#[inline]
pub fn inner_product(a: u64, b: u64) -> u32 {
    (a & b).count_ones()
}

pub fn word_to_string(bits: u64, n: usize) -> String {
    (0..n)
        .map(|i| if bits >> (n - 1 - i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Reduced row-echelon basis of the row space of `rows`.
///
/// Pivots are taken leftmost-first, so the returned rows are sorted by pivot
/// position (equivalently, in decreasing packed value).
pub fn rref(rows: &[BitVector], n: usize) -> Result<(usize, Vec<BitVector>), Gf2Error> {
    if n > MAX_LENGTH {
        return Err(Gf2Error::UnsupportedLength(n));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len != n {
            return Err(Gf2Error::LengthMismatch {
                row: i,
                expected: n,
                found: r.len,
            });
        }
    }
    let words: Vec<u64> = rows.iter().map(|r| r.bits).collect();
    let basis = rref_words(&words, n);
    let out: Vec<BitVector> = basis.iter().map(|&bits| BitVector { len: n, bits }).collect();
    Ok((out.len(), out))
}

/// Word-level RREF. Returns the nonzero basis rows ordered by pivot.
pub(crate) fn rref_words(words: &[u64], n: usize) -> Vec<u64> {
    let mut rows: Vec<u64> = words.iter().map(|w| w & mask(n)).collect();
    let mut rank = 0;
    for col in (0..n).rev() {
        let bit = 1u64 << col;
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r & bit != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Incrementally built echelon basis used for independence tests.
#[derive(Debug, Clone, Default)]
pub(crate) struct Echelon {
    // kept sorted by leading bit, highest first
    rows: Vec<u64>,
}

impl Echelon {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn reduce(&self, mut w: u64) -> u64 {
        for &r in &self.rows {
            if w >> (63 - r.leading_zeros()) & 1 == 1 {
                w ^= r;
            }
        }
        w
    }

    /// Adds `w` if it is independent of the current rows.
    pub(crate) fn insert(&mut self, w: u64) -> bool {
        let r = self.reduce(w);
        if r == 0 {
            return false;
        }
        let lead = r.leading_zeros();
        let pos = self.rows.partition_point(|x| x.leading_zeros() < lead);
        self.rows.insert(pos, r);
        true
    }
}

/// A binary linear code stored as a canonical (RREF) generator matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryCode {
    /// Builds a code from linearly independent generators.
    pub fn new(n: usize, generators: &[BitVector]) -> Result<Self, Gf2Error> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Gf2Error::UnsupportedLength(n));
        }
        let (rank, basis) = rref(generators, n)?;
        if rank != generators.len() {
            return Err(Gf2Error::DependentRows {
                rank,
                expected: generators.len(),
            });
        }
        Ok(Self {
            n,
            rows: basis.into_iter().map(|b| b.bits).collect(),
        })
    }

    /// Builds a code from packed words, which must be independent.
    pub fn from_words(n: usize, words: &[u64]) -> Result<Self, Gf2Error> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Gf2Error::UnsupportedLength(n));
        }
        let gens = words
            .iter()
            .enumerate()
            .map(|(i, &w)| {
                BitVector::new(n, w).map_err(|_| Gf2Error::LengthMismatch {
                    row: i,
                    expected: n,
                    found: (64 - w.leading_zeros()) as usize,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, &gens)
    }

    /// The code spanned by `words`, dependent or not.
    pub fn span(n: usize, words: &[u64]) -> Result<Self, Gf2Error> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Gf2Error::UnsupportedLength(n));
        }
        if let Some(i) = words.iter().position(|&w| w & !mask(n) != 0) {
            return Err(Gf2Error::LengthMismatch {
                row: i,
                expected: n,
                found: (64 - words[i].leading_zeros()) as usize,
            });
        }
        Ok(Self {
            n,
            rows: rref_words(words, n),
        })
    }

    /// The degenerate code `{0}` of length `n`.
    pub fn zero(n: usize) -> Result<Self, Gf2Error> {
        Self::span(n, &[])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Canonical generator rows as packed words.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn generators(&self) -> Vec<BitVector> {
        self.rows
            .iter()
            .map(|&bits| BitVector { len: self.n, bits })
            .collect()
    }

    /// Codeword for message `msg`; bit `i` of `msg` selects generator `i`.
    pub fn encode(&self, msg: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| msg >> i & 1 == 1)
            .fold(0, |acc, (_, r)| acc ^ r)
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, word: u64) -> bool {
        if word & !mask(self.n) != 0 {
            return false;
        }
        let mut w = word;
        for &r in &self.rows {
            let pivot = 63 - r.leading_zeros();
            if w >> pivot & 1 == 1 {
                w ^= r;
            }
        }
        w == 0
    }

    /// Calls `f` on every codeword, in Gray-code order starting at zero.
    pub fn for_each_codeword(&self, mut f: impl FnMut(u64)) {
        let mut word = 0u64;
        f(word);
        let total = 1u64 << self.k();
        for i in 1..total {
            word ^= self.rows[i.trailing_zeros() as usize];
            f(word);
        }
    }

    /// All codewords, for small codes.
    pub fn codewords(&self) -> Result<Vec<u64>, Gf2Error> {
        self.check_enumerable()?;
        let mut out = Vec::with_capacity(1 << self.k());
        self.for_each_codeword(|w| out.push(w));
        Ok(out)
    }

    fn check_enumerable(&self) -> Result<(), Gf2Error> {
        if self.k() > ENUMERATION_CAP {
            return Err(Gf2Error::Capacity {
                k: self.k(),
                cap: ENUMERATION_CAP,
                dual_k: self.n - self.k(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.n, self.k())
    }
}

/// The dual code: all words orthogonal to every generator.
pub fn dual_code(code: &BinaryCode) -> BinaryCode {
    BinaryCode {
        n: code.n,
        rows: null_space(&code.rows, code.n),
    }
}

/// Basis (in RREF) of `{x : x·r = 0 for every r in rows}`.
pub(crate) fn null_space(rows: &[u64], n: usize) -> Vec<u64> {
    let basis = rref_words(rows, n);
    let pivots: Vec<usize> = basis
        .iter()
        .map(|r| 63 - r.leading_zeros() as usize)
        .collect();
    let mut out = Vec::with_capacity(n - basis.len());
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        // Setting one free coordinate forces each pivot coordinate to the
        // parity of its row restricted to the free columns.
        let mut v = 1u64 << free;
        for (r, &p) in basis.iter().zip(&pivots) {
            if r >> free & 1 == 1 {
                v |= 1u64 << p;
            }
        }
        out.push(v);
    }
    rref_words(&out, n)
}

/// True iff the code is contained in its dual.
pub fn is_weakly_self_dual(code: &BinaryCode) -> bool {
    let rows = code.rows();
    rows.iter()
        .enumerate()
        .all(|(i, &a)| rows[i..].iter().all(|&b| inner_product(a, b) % 2 == 0))
}

/// True iff every codeword weight is divisible by four.
///
/// Uses the generator criterion (weights ≡ 0 mod 4, pairwise orthogonal),
/// cross-checked by enumeration when the code is small enough.
pub fn is_doubly_even(code: &BinaryCode) -> bool {
    let by_generators = code.rows().iter().all(|r| r.count_ones() % 4 == 0)
        && is_weakly_self_dual(code);
    if code.k() <= ENUMERATION_CAP {
        let mut by_enumeration = true;
        code.for_each_codeword(|w| by_enumeration &= w.count_ones() % 4 == 0);
        debug_assert_eq!(by_generators, by_enumeration);
        return by_enumeration;
    }
    by_generators
}

/// Exact weight distribution `(A_0, ..., A_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct WeightDistribution {
    pub n: usize,
    pub counts: Vec<u128>,
}

impl WeightDistribution {
    pub fn new(n: usize, counts: Vec<u128>) -> Self {
        assert_eq!(counts.len(), n + 1, "distribution needs n + 1 entries");
        Self { n, counts }
    }

    pub fn count(&self, w: usize) -> u128 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    /// Base-2 logarithm of the code size, if the total is a power of two.
    pub fn dimension(&self) -> Option<usize> {
        let t = self.total();
        t.is_power_of_two().then(|| t.trailing_zeros() as usize)
    }

    pub fn has_odd_weights(&self) -> bool {
        self.counts.iter().skip(1).step_by(2).any(|&c| c != 0)
    }

    /// Least positive weight with a nonzero count.
    pub fn min_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&w| self.counts[w] != 0)
    }
}

/// Weight distribution by Gray-code traversal of all `2^k` codewords.
///
/// Large codes are split into contiguous message ranges that are traversed
/// independently; the combined counts do not depend on the split.
pub fn weight_distribution(code: &BinaryCode) -> Result<WeightDistribution, Gf2Error> {
    code.check_enumerable()?;
    let k = code.k();
    let n = code.n();
    let counts = if k <= PARALLEL_THRESHOLD_BITS {
        gray_range_counts(code, 0, 1u64 << k)
    } else {
        let chunk_bits = PARALLEL_THRESHOLD_BITS;
        let chunks = 1u64 << (k - chunk_bits);
        (0..chunks)
            .into_par_iter()
            .map(|c| gray_range_counts(code, c << chunk_bits, (c + 1) << chunk_bits))
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    Ok(WeightDistribution::new(
        n,
        counts.into_iter().map(u128::from).collect(),
    ))
}

fn gray_range_counts(code: &BinaryCode, start: u64, end: u64) -> Vec<u64> {
    let rows = code.rows();
    let mut counts = vec![0u64; code.n() + 1];
    let mut word = code.encode(start ^ (start >> 1));
    counts[word.count_ones() as usize] += 1;
    for i in start + 1..end {
        word ^= rows[i.trailing_zeros() as usize];
        counts[word.count_ones() as usize] += 1;
    }
    counts
}

/// Minimum distance and structural flags of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMetrics {
    pub d: usize,
    pub delta: Ratio<u64>,
    pub weakly_self_dual: bool,
    pub doubly_even: bool,
}

impl CodeMetrics {
    pub fn delta_f64(&self) -> f64 {
        *self.delta.numer() as f64 / *self.delta.denom() as f64
    }
}

pub fn code_metrics(code: &BinaryCode, dist: &WeightDistribution) -> Result<CodeMetrics, Gf2Error> {
    let d = dist.min_distance().ok_or(Gf2Error::DegenerateCode)?;
    let doubly_even = dist
        .counts
        .iter()
        .enumerate()
        .all(|(w, &c)| c == 0 || w % 4 == 0);
    Ok(CodeMetrics {
        d,
        delta: Ratio::new(d as u64, code.n() as u64),
        weakly_self_dual: is_weakly_self_dual(code),
        doubly_even,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn code(rows: &[&str]) -> BinaryCode {
        let gens: Vec<_> = rows.iter().map(|r| bv(r)).collect();
        BinaryCode::new(gens[0].len(), &gens).unwrap()
    }

    fn hamming8() -> BinaryCode {
        code(&["11110000", "00111100", "00001111", "10101010"])
    }

    #[test]
    fn rref_drops_duplicates() {
        let (rank, basis) = rref(&[bv("11"), bv("11")], 2).unwrap();
        assert_eq!(rank, 1);
        assert_eq!(basis, vec![bv("11")]);
    }

    #[test]
    fn rref_of_nothing() {
        let (rank, basis) = rref(&[], 3).unwrap();
        assert_eq!(rank, 0);
        assert!(basis.is_empty());
    }

    #[test]
    fn rref_detects_sum_row() {
        // 110 ^ 011 = 101
        assert_eq!(bv("110").bits() ^ bv("011").bits(), bv("101").bits());
        let (rank, basis) = rref(&[bv("110"), bv("011"), bv("101")], 3).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(basis, vec![bv("101"), bv("011")]);
    }

    #[test]
    fn rref_rejects_mixed_lengths() {
        let err = rref(&[bv("110"), bv("01")], 3).unwrap_err();
        assert_eq!(
            err,
            Gf2Error::LengthMismatch {
                row: 1,
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn dual_of_small_codes() {
        let c = code(&["11"]);
        assert_eq!(dual_code(&c), c);

        let rep = code(&["111"]);
        let dual = dual_code(&rep);
        assert_eq!(dual.k(), 2);
        let mut words = dual.codewords().unwrap();
        words.sort();
        // brute force: all 3-bit words orthogonal to 111
        let mut expect: Vec<u64> = (0..8u64).filter(|w| w.count_ones() % 2 == 0).collect();
        expect.sort();
        assert_eq!(words, expect);

        assert_eq!(dual_code(&hamming8()), hamming8());
    }

    #[test]
    fn dual_of_zero_code_is_everything() {
        let z = BinaryCode::zero(4).unwrap();
        assert_eq!(dual_code(&z).k(), 4);
        assert_eq!(dual_code(&dual_code(&z)), z);
    }

    #[test]
    fn self_orthogonality_flags() {
        assert!(is_weakly_self_dual(&code(&["11"])));
        assert!(!is_weakly_self_dual(&code(&["111"])));
        assert!(is_weakly_self_dual(&code(&["110"])));
        assert!(is_doubly_even(&hamming8()));
        assert!(!is_doubly_even(&code(&["11"])));
    }

    #[test]
    fn distributions() {
        assert_eq!(
            weight_distribution(&code(&["11"])).unwrap().counts,
            vec![1, 0, 1]
        );
        assert_eq!(
            weight_distribution(&hamming8()).unwrap().counts,
            vec![1, 0, 0, 0, 14, 0, 0, 0, 1]
        );
        let z = BinaryCode::zero(3).unwrap();
        assert_eq!(weight_distribution(&z).unwrap().counts, vec![1, 0, 0, 0]);
    }

    #[test]
    fn parallel_split_matches_single_pass() {
        // k = 20 triggers the chunked path
        let n = 40;
        let rows: Vec<u64> = (0..20).map(|i| (1u64 << (39 - i)) | (0x5a5a5u64 << i)).collect();
        let c = BinaryCode::span(n, &rows).unwrap();
        assert!(c.k() > PARALLEL_THRESHOLD_BITS);
        let split = weight_distribution(&c).unwrap();
        let single = gray_range_counts(&c, 0, 1 << c.k());
        assert_eq!(
            split.counts,
            single.into_iter().map(u128::from).collect::<Vec<_>>()
        );
    }

    #[test]
    fn capacity_guard() {
        let rows: Vec<u64> = (0..30).map(|i| 1u64 << i).collect();
        let c = BinaryCode::span(40, &rows).unwrap();
        assert!(matches!(
            weight_distribution(&c),
            Err(Gf2Error::Capacity { k: 30, dual_k: 10, .. })
        ));
    }

    #[test]
    fn metrics() {
        let h = hamming8();
        let m = code_metrics(&h, &weight_distribution(&h).unwrap()).unwrap();
        assert_eq!(m.d, 4);
        assert_eq!(m.delta, Ratio::new(1, 2));
        assert!(m.weakly_self_dual && m.doubly_even);

        let c = code(&["11"]);
        let m = code_metrics(&c, &weight_distribution(&c).unwrap()).unwrap();
        assert_eq!(m.d, 2);
        assert_eq!(m.delta, Ratio::new(1, 1));
        assert!(!m.doubly_even);

        let z = BinaryCode::zero(2).unwrap();
        assert_eq!(
            code_metrics(&z, &weight_distribution(&z).unwrap()),
            Err(Gf2Error::DegenerateCode)
        );
    }

    #[test]
    fn dependent_generators_rejected() {
        assert_eq!(
            BinaryCode::new(3, &[bv("110"), bv("110")]).unwrap_err(),
            Gf2Error::DependentRows {
                rank: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn contains_matches_enumeration() {
        let h = hamming8();
        let words = h.codewords().unwrap();
        for w in 0..256u64 {
            assert_eq!(h.contains(w), words.contains(&w));
        }
    }
}
