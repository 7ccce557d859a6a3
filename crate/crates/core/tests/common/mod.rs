//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's own algorithms: they work on
//! explicit path strings, naive scans and hash maps.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use xtrie_core::gen::{letters, random_trie};
use xtrie_core::trie::{Alphabet, NodeId, Trie};

/// The 4-node trie `{a, b, ba}` used in the arithmetic coding example.
pub fn small_trie() -> Trie {
    let ab = Alphabet::from_chars("ab").unwrap();
    Trie::build_from_edges(ab, 4, &[(0, 1, 'a' as u32), (0, 2, 'b' as u32), (2, 3, 'a' as u32)]).unwrap()
}

/// Edges of the 28-node XBWT example, numbered by co-lex rank.
pub const SAMPLE28_EDGES: [(usize, usize, char); 27] = [
    (1, 2, 'a'),
    (1, 13, 'b'),
    (2, 3, 'a'),
    (2, 21, 'c'),
    (13, 4, 'a'),
    (13, 25, 'c'),
    (3, 22, 'c'),
    (21, 9, 'a'),
    (21, 17, 'b'),
    (4, 23, 'c'),
    (25, 20, 'b'),
    (25, 12, 'a'),
    (22, 10, 'a'),
    (22, 18, 'b'),
    (9, 24, 'c'),
    (17, 5, 'a'),
    (17, 26, 'c'),
    (23, 11, 'a'),
    (23, 19, 'b'),
    (20, 8, 'a'),
    (12, 16, 'b'),
    (10, 14, 'b'),
    (18, 6, 'a'),
    (18, 27, 'c'),
    (19, 28, 'c'),
    (19, 7, 'a'),
    (11, 15, 'b'),
];

/// The XBWT rows of the 28-node example: ranks with an a-, b- and c-child.
pub const SAMPLE28_ROWS: [&[usize]; 3] =
    [&[1, 2, 13, 17, 18, 19, 20, 21, 22, 23, 25], &[1, 10, 11, 12, 21, 22, 23, 25], &[2, 3, 4, 9, 13, 17, 18, 19]];

pub fn sample28() -> Trie {
    let edges: Vec<(usize, usize, u32)> = SAMPLE28_EDGES.iter().map(|&(p, c, s)| (p - 1, c - 1, s as u32)).collect();
    Trie::build_from_edges(letters(3), 28, &edges).unwrap()
}

/// Expected co-lex rank of each path string in the 28-node sample.
pub fn sample28_ranks_by_path() -> HashMap<Vec<usize>, usize> {
    let mut parent = vec![(0usize, 0usize); 29];
    for &(p, c, s) in &SAMPLE28_EDGES {
        parent[c] = (p, s as usize - 'a' as usize);
    }
    (1..=28)
        .map(|r| {
            let mut path = Vec::new();
            let mut v = r;
            while v != 1 {
                path.push(parent[v].1);
                v = parent[v].0;
            }
            path.reverse();
            (path, r)
        })
        .collect()
}

/// Co-lex order by sorting reversed path strings.
pub fn colex_oracle(t: &Trie) -> Vec<NodeId> {
    let mut nodes: Vec<NodeId> = (0..t.len()).collect();
    nodes.sort_by_key(|&u| {
        let mut p = t.path_label(u);
        p.reverse();
        p
    });
    nodes
}

/// Nodes whose root path ends with `p` (alphabet indices).
pub fn count_oracle(t: &Trie, p: &[usize]) -> usize {
    (0..t.len()).filter(|&u| t.path_label(u).ends_with(p)).count()
}

/// Context statistics gathered from explicit strings, `None` standing for `#`.
pub struct ContextOracle {
    /// `nH_k`.
    pub nh: f64,
    /// `(n-1)·H^label_k`.
    pub label: f64,
    /// Number of realized contexts.
    pub contexts: usize,
}

/// Node count and per-symbol child counts of one context.
type ContextGroup = (u64, BTreeMap<usize, u64>);

pub fn context_oracle(t: &Trie, k: usize) -> ContextOracle {
    let mut groups: HashMap<Vec<Option<usize>>, ContextGroup> = HashMap::new();
    for u in 0..t.len() {
        let path = t.path_label(u);
        let mut ctx: Vec<Option<usize>> = vec![None; k.saturating_sub(path.len())];
        ctx.extend(path[path.len().saturating_sub(k)..].iter().map(|&c| Some(c)));
        let g = groups.entry(ctx).or_default();
        g.0 += 1;
        for c in t.out_labels(u) {
            *g.1.entry(c).or_default() += 1;
        }
    }
    let h = |p: f64| if p <= 0.0 || p >= 1.0 { 0.0 } else { -p * p.log2() - (1.0 - p) * (1.0 - p).log2() };
    let nh =
        groups.values().map(|(nw, m)| m.values().map(|&x| *nw as f64 * h(x as f64 / *nw as f64)).sum::<f64>()).sum();
    let label = groups
        .values()
        .map(|(_, m)| {
            let total: u64 = m.values().sum();
            m.values().map(|&x| x as f64 * (total as f64 / x as f64).log2()).sum::<f64>()
        })
        .sum();
    ContextOracle { nh, label, contexts: groups.len() }
}

pub fn nhk_oracle(t: &Trie, k: usize) -> f64 {
    context_oracle(t, k).nh
}

/// Plain XBWT rows `B_c` (index 0 is rank 1) built from the path-sort order.
pub fn rows_oracle(t: &Trie) -> Vec<Vec<bool>> {
    let order = colex_oracle(t);
    (0..t.sigma()).map(|c| order.iter().map(|&u| t.child(u, c).is_some()).collect()).collect()
}

/// Runs of ones summed over all rows.
pub fn runs_oracle(t: &Trie) -> usize {
    rows_oracle(t)
        .iter()
        .map(|row| row.iter().zip(row.iter().skip(1).chain([&false])).filter(|(a, b)| **a && !**b).count())
        .sum()
}

/// `log2 C(n, k)` as a float sum.
pub fn log2_binomial(n: u64, k: u64) -> f64 {
    (1..=k).map(|i| ((n - k + i) as f64 / i as f64).log2()).sum()
}

pub fn naive_rank(bits: &[bool], i: usize) -> usize {
    bits[..i].iter().filter(|&&b| b).count()
}

pub fn naive_select(bits: &[bool], j: usize) -> Option<usize> {
    bits.iter().enumerate().filter(|(_, &b)| b).nth(j.checked_sub(1)?).map(|(i, _)| i + 1)
}

pub fn random_bits<R: Rng>(rng: &mut R, len: usize, density: f64) -> Vec<bool> {
    (0..len).map(|_| rng.random_bool(density)).collect()
}

/// A random trie with `n` drawn from `1..=max_n` and `σ` from `1..=max_sigma`.
pub fn any_random_trie<R: Rng>(rng: &mut R, max_n: usize, max_sigma: usize) -> Trie {
    let n = rng.random_range(1..=max_n);
    let sigma = rng.random_range(1..=max_sigma);
    random_trie(rng, n, sigma)
}

/// Every trie with `n` nodes over `σ` symbols, built recursively as a root
/// with labelled subtrees, independent of the matrix bijection. Each trie is
/// returned as its pre-order list of `(depth, label)` pairs.
pub fn all_tries_oracle(n: usize, sigma: usize) -> Vec<Vec<(usize, usize)>> {
    fn forests(size: usize, first_label: usize, sigma: usize, depth: usize) -> Vec<Vec<(usize, usize)>> {
        if size == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for label in first_label..sigma {
            for sub in 1..=size {
                for head in trees(sub, sigma, depth) {
                    for tail in forests(size - sub, label + 1, sigma, depth) {
                        let mut f = vec![(depth, label)];
                        f.extend(head.iter().copied());
                        f.extend(tail);
                        out.push(f);
                    }
                }
            }
        }
        out
    }
    // Subtrees below a node at `depth` whose own entry is added by the caller.
    fn trees(size: usize, sigma: usize, depth: usize) -> Vec<Vec<(usize, usize)>> {
        forests(size - 1, 0, sigma, depth + 1)
    }
    forests(n - 1, 0, sigma, 1)
}

/// Pre-order `(depth, label)` listing of a trie, comparable with the oracle.
pub fn shape_of(t: &Trie) -> Vec<(usize, usize)> {
    (1..t.len()).map(|u| (t.depth(u), t.label(u).unwrap())).collect()
}

/// Tight relative comparison.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// Proptest strategy for random tries with `n ≤ max_n` and `σ ≤ max_sigma`.
pub fn arb_trie(max_n: usize, max_sigma: usize) -> impl proptest::strategy::Strategy<Value = Trie> {
    use proptest::prelude::*;
    use rand::SeedableRng;
    (1..=max_n, 1..=max_sigma, any::<u64>())
        .prop_map(|(n, sigma, seed)| random_trie(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), n, sigma))
}

/// Proptest strategy for dictionaries over the first `sigma` letters.
pub fn arb_dictionary(
    sigma: u32,
    max_words: usize,
    max_len: usize,
) -> impl proptest::strategy::Strategy<Value = Vec<Vec<u32>>> {
    use proptest::prelude::*;
    prop::collection::vec(prop::collection::vec('a' as u32..'a' as u32 + sigma, 0..=max_len), 0..=max_words)
}
