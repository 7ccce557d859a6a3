//! Random tries for tests, benchmarks and the command line.
//!
//! Every generator takes the random source explicitly so that a seed fully
//! determines the output.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::combinatorics::{canonical_rotation, matrix_to_trie, rotate, DegreeMatrix};
use crate::trie::{Alphabet, Symbol, Trie};

/// The alphabet `a, b, c, …` of the given size.
pub fn letters(sigma: usize) -> Alphabet {
    Alphabet::new((0..sigma as Symbol).map(|i| 'a' as Symbol + i).collect()).expect("distinct letters")
}

/// A random trie with `n` nodes over the first `sigma` letters.
///
/// Each new node hangs off a node that still has a free label. Half of the
/// time that node is one of the few most recent ones, which yields deeper
/// shapes than uniform attachment alone.
pub fn random_trie<R: Rng + ?Sized>(rng: &mut R, n: usize, sigma: usize) -> Trie {
    assert!(n >= 1, "a trie has at least one node");
    assert!(n == 1 || sigma >= 1, "edges need at least one symbol");
    let alphabet = letters(sigma);
    let mut used: Vec<Vec<bool>> = vec![vec![false; sigma]];
    let mut open: Vec<usize> = vec![0];
    let mut edges = Vec::with_capacity(n - 1);
    for v in 1..n {
        let slot = if rng.random_bool(0.5) {
            let recent = open.len().min(4);
            open.len() - 1 - rng.random_range(0..recent)
        } else {
            rng.random_range(0..open.len())
        };
        let p = open[slot];
        let free: Vec<usize> = (0..sigma).filter(|&c| !used[p][c]).collect();
        let c = *free.choose(rng).expect("open nodes have a free label");
        used[p][c] = true;
        if free.len() == 1 {
            open.swap_remove(slot);
        }
        used.push(vec![false; sigma]);
        open.push(v);
        edges.push((p, v, c));
    }
    Trie::from_indexed_edges(alphabet, n, &edges).expect("generator builds valid tries")
}

/// A uniformly random trie with the given node count and per-symbol edge
/// counts: a random matrix of the set `M`, rotated into shape.
pub fn random_trie_with_distribution<R: Rng + ?Sized>(rng: &mut R, n: usize, counts: &[usize]) -> Trie {
    let m = random_matrix(rng, n, counts);
    let r = canonical_rotation(&m);
    matrix_to_trie(&rotate(&m, r), &letters(counts.len())).expect("canonical rotation is valid")
}

/// A uniformly random `σ × n` matrix whose row `c` has `counts[c]` ones.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, counts: &[usize]) -> DegreeMatrix {
    let mut bits = Vec::with_capacity(counts.len() * n);
    for &k in counts {
        let mut row = vec![false; n];
        for i in rand::seq::index::sample(rng, n, k) {
            row[i] = true;
        }
        bits.extend(row);
    }
    DegreeMatrix::new(counts.len(), n, bits).expect("counts sum to n - 1")
}

/// A random split of `n - 1` edges over `sigma` symbols, each at most `n`.
pub fn random_counts<R: Rng + ?Sized>(rng: &mut R, n: usize, sigma: usize) -> Vec<usize> {
    let mut counts = vec![0usize; sigma];
    for _ in 0..n - 1 {
        loop {
            let c = rng.random_range(0..sigma);
            if counts[c] < n {
                counts[c] += 1;
                break;
            }
        }
    }
    counts
}

/// A random dictionary trie: `words` strings of length up to `max_len`, with
/// symbol `c` drawn with weight proportional to `1/(c+1)` to skew the labels.
pub fn random_dictionary<R: Rng + ?Sized>(rng: &mut R, words: usize, max_len: usize, sigma: usize) -> Vec<Vec<Symbol>> {
    let weights: Vec<f64> = (0..sigma).map(|c| 1.0 / (c as f64 + 1.0)).collect();
    let total: f64 = weights.iter().sum();
    (0..words)
        .map(|_| {
            let len = rng.random_range(0..=max_len);
            (0..len)
                .map(|_| {
                    let mut x = rng.random::<f64>() * total;
                    let mut c = 0;
                    while c + 1 < sigma && x >= weights[c] {
                        x -= weights[c];
                        c += 1;
                    }
                    'a' as Symbol + c as Symbol
                })
                .collect()
        })
        .collect()
}
