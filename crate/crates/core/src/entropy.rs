//! Entropy measures for tries.
//!
//! All functions return unnormalized values in bits: `nH_k` rather than `H_k`
//! and `(n-1)·H^label_k` rather than `H^label_k`. Values come from exact
//! integer counts; only the final logarithms are floating point.

use num_bigint::BigUint;

use crate::bigmath::log2_big;
use crate::combinatorics::count_tries;
use crate::gen::letters;
use crate::trie::{ContextStats, SymbolDistribution, Trie};
use crate::xbwt::{colex_sort, runs_of, RunsProfile};

/// Relative tolerance used when checking inequalities between float values.
pub const TOLERANCE: f64 = 1e-9;

/// `a ≤ b` up to [`TOLERANCE`] relative to the larger magnitude.
pub fn le_tol(a: f64, b: f64) -> bool {
    a <= b + TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// `x·log2(total/x)`, zero when `x = 0`.
fn plogp(x: u64, total: u64) -> f64 {
    if x == 0 {
        0.0
    } else {
        x as f64 * (total as f64 / x as f64).log2()
    }
}

/// Zeroth-order entropy (bits per symbol) of a multiset given by its counts.
pub fn string_h0(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    counts.iter().map(|&c| plogp(c, total)).sum::<f64>() / total as f64
}

/// `H^wc = log2 |U|` for the tries sharing `dist`.
pub fn worst_case_entropy(dist: &SymbolDistribution) -> f64 {
    log2_big(&count_tries(dist))
}

/// Exact `|U|` alongside its logarithm.
pub fn worst_case_count(dist: &SymbolDistribution) -> BigUint {
    count_tries(dist)
}

/// `nH_k` from precomputed context statistics.
pub fn empirical_entropy_from_stats(stats: &ContextStats) -> f64 {
    stats.iter().map(|(_, e)| e.n_wc.iter().map(|&x| plogp(x, e.n_w) + plogp(e.n_w - x, e.n_w)).sum::<f64>()).sum()
}

/// `nH_k`: for every context `w` and symbol `c`, the binary entropy of
/// "a node with context `w` has a `c`-child", weighted by `n_w`.
pub fn empirical_entropy(t: &Trie, k: usize) -> f64 {
    empirical_entropy_from_stats(&t.context_stats(k))
}

/// `(n-1)·H^label_k` from precomputed context statistics.
pub fn label_entropy_from_stats(stats: &ContextStats) -> f64 {
    stats
        .iter()
        .map(|(_, e)| {
            let m = e.edges();
            e.n_wc.iter().map(|&x| plogp(x, m)).sum::<f64>()
        })
        .sum()
}

/// `(n-1)·H^label_k`: the string entropy of the labels leaving nodes of each
/// context, summed over contexts.
pub fn label_entropy(t: &Trie, k: usize) -> f64 {
    label_entropy_from_stats(&t.context_stats(k))
}

/// Inequalities evaluated for one context order.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyLevel {
    pub k: usize,
    /// Number `ℓ_k` of realized contexts.
    pub contexts: usize,
    pub nh_k: f64,
    pub nh_label_k: f64,
    /// `(n-1)·H^label_k + 1.443·n`.
    pub label_bound: f64,
    pub label_bound_holds: bool,
    /// `nH_k + σ^{k+1}`.
    pub runs_bound: f64,
    pub runs_bound_holds: bool,
}

/// Entropy profile of one trie for orders `0..=k_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub n: usize,
    pub sigma: usize,
    pub distribution: Vec<u64>,
    /// `|U|`, kept exact.
    pub tries_with_distribution: BigUint,
    pub h_wc: f64,
    /// `nH_0 - σ·log2(n+1) - log2 n`.
    pub h_wc_lower: f64,
    /// `nH_0 - log2 n`.
    pub h_wc_upper: f64,
    pub h_wc_bounds_hold: bool,
    pub runs: RunsProfile,
    pub levels: Vec<EntropyLevel>,
}

impl EntropyReport {
    /// True when every evaluated inequality holds.
    pub fn all_hold(&self) -> bool {
        self.h_wc_bounds_hold
            && self.levels.iter().all(|l| l.label_bound_holds && l.runs_bound_holds)
            && self.levels.windows(2).all(|w| le_tol(w[1].nh_k, w[0].nh_k))
    }
}

pub fn entropy_report(t: &Trie, k_max: usize) -> EntropyReport {
    let (n, sigma) = (t.len(), t.sigma());
    let dist = t.symbol_distribution();
    let count = count_tries(&dist);
    let h_wc = log2_big(&count);
    let log_n = (n as f64).log2();
    let nh0 = empirical_entropy(t, 0);
    let h_wc_lower = nh0 - sigma as f64 * ((n + 1) as f64).log2() - log_n;
    let h_wc_upper = nh0 - log_n;
    let runs = runs_of(t, &colex_sort(t));
    let levels = (0..=k_max)
        .map(|k| {
            let stats = t.context_stats(k);
            let nh_k = empirical_entropy_from_stats(&stats);
            let nh_label_k = label_entropy_from_stats(&stats);
            let label_bound = nh_label_k + 1.443 * n as f64;
            let runs_bound = nh_k + (sigma as f64).powi(k as i32 + 1);
            EntropyLevel {
                k,
                contexts: stats.len(),
                nh_k,
                nh_label_k,
                label_bound,
                label_bound_holds: le_tol(nh_k, label_bound),
                runs_bound,
                runs_bound_holds: le_tol(runs.r as f64, runs_bound),
            }
        })
        .collect();
    EntropyReport {
        n,
        sigma,
        distribution: dist.counts().to_vec(),
        tries_with_distribution: count,
        h_wc,
        h_wc_lower,
        h_wc_upper,
        h_wc_bounds_hold: le_tol(h_wc_lower, h_wc) && le_tol(h_wc, h_wc_upper),
        runs,
        levels,
    }
}

/// The complete `y`-ary trie of height `h` in which every internal node at
/// depth `d` has one child for each symbol of its own group `Σ_d` of `y`
/// symbols. The alphabet has `σ = h·y` symbols starting at `a`, group `d`
/// taking symbols `d·y .. (d+1)·y`.
pub fn make_level_alphabet_trie(y: usize, h: usize) -> Trie {
    assert!(y >= 1, "arity must be positive");
    let alphabet = letters(y * h);
    let mut edges = Vec::new();
    let mut level = vec![0usize];
    let mut next_id = 1;
    for d in 0..h {
        let mut next = Vec::with_capacity(level.len() * y);
        for &u in &level {
            for c in d * y..(d + 1) * y {
                edges.push((u, next_id, c));
                next.push(next_id);
                next_id += 1;
            }
        }
        level = next;
    }
    Trie::from_indexed_edges(alphabet, next_id, &edges).expect("complete trie")
}

/// The complete binary trie of height `h` over `{a, b}`.
pub fn make_complete_binary_trie(h: usize) -> Trie {
    let mut edges = Vec::new();
    let mut level = vec![0usize];
    let mut next_id = 1;
    for _ in 0..h {
        let mut next = Vec::with_capacity(level.len() * 2);
        for &u in &level {
            for c in 0..2 {
                edges.push((u, next_id, c));
                next.push(next_id);
                next_id += 1;
            }
        }
        level = next;
    }
    Trie::from_indexed_edges(letters(2), next_id, &edges).expect("complete trie")
}
