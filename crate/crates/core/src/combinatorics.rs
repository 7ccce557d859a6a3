//! Tries as binary degree matrices.
//!
//! A trie with nodes `u_1..u_n` in pre-order maps to the `σ × n` matrix whose
//! column `j` marks the labels leaving `u_j`. The map is injective, and a
//! matrix with the right row sums comes from a trie exactly when the prefix
//! sums `L` of its column degrees minus one stay non-negative before the last
//! column. Every matrix has exactly one cyclic rotation with that property,
//! which yields the count `(1/n)·∏_c C(n, n_c)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::bigmath::binomial;
use crate::trie::{Alphabet, DistributionError, SymbolDistribution, Trie};

/// Default ceiling on the number of matrices [`enumerate_tries`] will visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("matrix needs at least one column")]
    NoColumns,
    #[error("matrix has {found} bits, expected {sigma} x {n}")]
    Shape { sigma: usize, n: usize, found: usize },
    #[error("matrix has {ones} ones, a trie with {n} nodes has {} edges", n - 1)]
    OnesTotal { ones: usize, n: usize },
    #[error("prefix sum L[{position}] < 0: no pending edge for the next node")]
    NotLukasiewicz { position: usize },
    #[error("alphabet has {found} symbols, matrix has {sigma} rows")]
    AlphabetSize { sigma: usize, found: usize },
    #[error("enumeration would visit {matrices} matrices, above the cap of {cap}")]
    CapExceeded { matrices: BigUint, cap: u64 },
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error("matrix text: {0}")]
    Parse(String),
}

/// A `σ × n` binary matrix whose ones total `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeMatrix {
    sigma: usize,
    n: usize,
    // Row-major.
    bits: Vec<bool>,
}

impl DegreeMatrix {
    pub fn new(sigma: usize, n: usize, bits: Vec<bool>) -> Result<Self, CombinatoricsError> {
        if n == 0 {
            return Err(CombinatoricsError::NoColumns);
        }
        if bits.len() != sigma * n {
            return Err(CombinatoricsError::Shape { sigma, n, found: bits.len() });
        }
        let ones = bits.iter().filter(|&&b| b).count();
        if ones + 1 != n {
            return Err(CombinatoricsError::OnesTotal { ones, n });
        }
        Ok(Self { sigma, n, bits })
    }

    /// Builds from rows written as `'0'`/`'1'` strings.
    pub fn from_rows(rows: &[&str]) -> Result<Self, CombinatoricsError> {
        let n = rows.first().map_or(0, |r| r.len());
        let mut bits = Vec::with_capacity(rows.len() * n);
        for row in rows {
            if row.len() != n {
                return Err(CombinatoricsError::Shape { sigma: rows.len(), n, found: row.len() });
            }
            for ch in row.chars() {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    _ => return Err(CombinatoricsError::Parse(format!("unexpected character {ch:?}"))),
                }
            }
        }
        Self::new(rows.len(), n, bits)
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry in row `row` (symbol index) and 0-based column `col`.
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[bool] {
        &self.bits[row * self.n..(row + 1) * self.n]
    }

    pub fn row_ones(&self) -> Vec<u64> {
        (0..self.sigma).map(|r| self.row(r).iter().filter(|&&b| b).count() as u64).collect()
    }

    pub fn column_ones(&self, col: usize) -> usize {
        (0..self.sigma).filter(|&r| self.get(r, col)).count()
    }

    pub fn lukasiewicz(&self) -> LukasiewiczPath {
        let d: Vec<i64> = (0..self.n).map(|j| self.column_ones(j) as i64 - 1).collect();
        let l = d
            .iter()
            .scan(0i64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        LukasiewiczPath { d, l }
    }

    /// Rows as `'0'`/`'1'` strings.
    pub fn rows_text(&self) -> Vec<String> {
        (0..self.sigma).map(|r| self.row(r).iter().map(|&b| if b { '1' } else { '0' }).collect()).collect()
    }

    /// Text form: a header `σ n`, then one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.sigma, self.n);
        for row in self.rows_text() {
            s.push_str(&row);
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self, CombinatoricsError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| CombinatoricsError::Parse("missing header".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| CombinatoricsError::Parse(format!("bad header `{header}`"))))
            .collect::<Result<_, _>>()?;
        let [sigma, n] = nums[..] else {
            return Err(CombinatoricsError::Parse(format!("header must be `σ n`, found `{header}`")));
        };
        let rows: Vec<&str> = lines.collect();
        if rows.len() != sigma {
            return Err(CombinatoricsError::Parse(format!("expected {sigma} rows, found {}", rows.len())));
        }
        if sigma == 0 {
            return Self::new(0, n, Vec::new());
        }
        let m = Self::from_rows(&rows)?;
        if m.n != n {
            return Err(CombinatoricsError::Parse(format!("expected {n} columns, found {}", m.n)));
        }
        Ok(m)
    }
}

/// The sequences `D[i] = ones(column i) - 1` and their prefix sums `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LukasiewiczPath {
    pub d: Vec<i64>,
    pub l: Vec<i64>,
}

impl LukasiewiczPath {
    /// First 1-based `i < n` with `L[i] < 0`, if any.
    pub fn first_violation(&self) -> Option<usize> {
        let n = self.l.len();
        self.l[..n - 1].iter().position(|&x| x < 0).map(|p| p + 1)
    }

    pub fn is_valid(&self) -> bool {
        self.l.last() == Some(&-1) && self.first_violation().is_none()
    }
}

/// Column `j` is the characteristic vector of the labels leaving the `j`-th
/// pre-order node.
pub fn trie_to_matrix(t: &Trie) -> DegreeMatrix {
    let (sigma, n) = (t.sigma(), t.len());
    let mut bits = vec![false; sigma * n];
    for u in 0..n {
        for c in t.out_labels(u) {
            bits[c * n + u] = true;
        }
    }
    DegreeMatrix { sigma, n, bits }
}

/// Inverts [`trie_to_matrix`], rejecting matrices whose `L` is not a
/// Łukasiewicz path at the first failing position.
pub fn matrix_to_trie(m: &DegreeMatrix, alphabet: &Alphabet) -> Result<Trie, CombinatoricsError> {
    if alphabet.len() != m.sigma {
        return Err(CombinatoricsError::AlphabetSize { sigma: m.sigma, found: alphabet.len() });
    }
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut edges = Vec::with_capacity(m.n - 1);
    for j in 0..m.n {
        if j > 0 {
            let (parent, c) = pending.pop().ok_or(CombinatoricsError::NotLukasiewicz { position: j })?;
            edges.push((parent, j, c));
        }
        // Reverse label order so the smallest label is popped first.
        pending.extend((0..m.sigma).rev().filter(|&c| m.get(c, j)).map(|c| (j, c)));
    }
    debug_assert!(pending.is_empty(), "row sums fix the edge total");
    Ok(Trie::from_indexed_edges(alphabet.clone(), m.n, &edges).expect("pre-order edges form a trie"))
}

/// Moves the last `r mod n` columns to the front.
pub fn rotate(m: &DegreeMatrix, r: usize) -> DegreeMatrix {
    let n = m.n;
    let r = r % n;
    let mut bits = Vec::with_capacity(m.bits.len());
    for row in 0..m.sigma {
        let row = m.row(row);
        bits.extend_from_slice(&row[n - r..]);
        bits.extend_from_slice(&row[..n - r]);
    }
    DegreeMatrix { sigma: m.sigma, n, bits }
}

/// The unique `r ∈ [0, n)` for which `rotate(m, r)` is a trie matrix:
/// `r = (n - i) mod n` with `i` the leftmost minimum of `L`.
pub fn canonical_rotation(m: &DegreeMatrix) -> usize {
    let l = m.lukasiewicz().l;
    let min = *l.iter().min().expect("n ≥ 1");
    let i = l.iter().position(|&x| x == min).unwrap() + 1;
    let r = (m.n - i) % m.n;
    // The minimum value may be attained more than once; it is the leftmost
    // one that starts a valid rotation.
    assert!(
        rotate(m, r).lukasiewicz().is_valid(),
        "rotation {r} of a matrix with n - 1 ones must be a Łukasiewicz path"
    );
    r
}

/// `(1/n)·∏_c C(n, n_c)`, the number of tries with this distribution.
pub fn count_tries(dist: &SymbolDistribution) -> BigUint {
    let n = dist.n();
    let product = matrix_count(dist);
    let (q, r) = product.div_rem(&BigUint::from(n));
    assert!(r.is_zero(), "∏ C(n, n_c) must be divisible by n");
    q
}

/// `|M| = ∏_c C(n, n_c)`.
pub fn matrix_count(dist: &SymbolDistribution) -> BigUint {
    dist.counts().iter().map(|&nc| binomial(dist.n(), nc)).product()
}

/// `(1/n)·C(nσ, n - 1)`, the number of tries with `n` nodes over `σ` symbols.
pub fn count_all_tries(n: u64, sigma: u64) -> BigUint {
    assert!(n >= 1, "a trie has at least one node");
    let (q, r) = binomial(n * sigma, n - 1).div_rem(&BigUint::from(n));
    assert!(r.is_zero(), "C(nσ, n - 1) must be divisible by n");
    q
}

/// All distributions `{n_c}` with `Σ n_c = n - 1` over `σ` symbols, in
/// lexicographic order of the count vectors.
pub fn distributions(n: u64, sigma: usize) -> Vec<SymbolDistribution> {
    fn rec(left: u64, slots: usize, cur: &mut Vec<u64>, n: u64, out: &mut Vec<SymbolDistribution>) {
        if slots == 0 {
            if left == 0 {
                out.push(SymbolDistribution::new(n, cur.clone()).expect("sums to n - 1"));
            }
            return;
        }
        for x in 0..=left.min(n) {
            cur.push(x);
            rec(left - x, slots - 1, cur, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n - 1, sigma, &mut Vec::new(), n, &mut out);
    out
}

/// Rows of width `n` with `k` ones, in lexicographic order.
fn rows_with_weight(n: usize, k: usize) -> Vec<Vec<bool>> {
    fn rec(pos: usize, left: usize, cur: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<bool>>) {
        if pos == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if n - pos > left {
            cur.push(false);
            rec(pos + 1, left, cur, n, out);
            cur.pop();
        }
        if left > 0 {
            cur.push(true);
            rec(pos + 1, left - 1, cur, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, &mut Vec::new(), n, &mut out);
    out
}

/// Every matrix of the set `M` for `dist`, row 0 varying slowest.
pub fn enumerate_matrices(dist: &SymbolDistribution, cap: u64) -> Result<Vec<DegreeMatrix>, CombinatoricsError> {
    let total = matrix_count(dist);
    if total > BigUint::from(cap) {
        return Err(CombinatoricsError::CapExceeded { matrices: total, cap });
    }
    let n = dist.n() as usize;
    let sigma = dist.sigma();
    let choices: Vec<Vec<Vec<bool>>> = dist.counts().iter().map(|&k| rows_with_weight(n, k as usize)).collect();
    let mut out = Vec::with_capacity(total.to_usize().unwrap_or(0));
    let mut idx = vec![0usize; sigma];
    loop {
        let mut bits = Vec::with_capacity(sigma * n);
        for (row, &i) in choices.iter().zip(&idx) {
            bits.extend_from_slice(&row[i]);
        }
        out.push(DegreeMatrix { sigma, n, bits });
        // Odometer with the last row fastest.
        let mut r = sigma;
        loop {
            if r == 0 {
                return Ok(out);
            }
            r -= 1;
            idx[r] += 1;
            if idx[r] < choices[r].len() {
                break;
            }
            idx[r] = 0;
        }
    }
}

/// All tries with distribution `dist`, by filtering `M` for Łukasiewicz paths.
pub fn enumerate_tries(
    dist: &SymbolDistribution,
    alphabet: &Alphabet,
    cap: u64,
) -> Result<Vec<Trie>, CombinatoricsError> {
    if alphabet.len() != dist.sigma() {
        return Err(CombinatoricsError::AlphabetSize { sigma: dist.sigma(), found: alphabet.len() });
    }
    Ok(enumerate_matrices(dist, cap)?
        .iter()
        .filter(|m| m.lukasiewicz().is_valid())
        .map(|m| matrix_to_trie(m, alphabet).expect("valid path inverts"))
        .collect())
}
