//! The XBWT of a trie and a compressed index over it.
//!
//! Nodes are ranked `1..=n` in co-lexicographic order of their root paths, so
//! the root is rank `1`. For every symbol `c` the bitvector `B_c` marks the
//! ranks whose node has an outgoing `c`-edge, and `C[c]` is one plus the
//! number of edges labeled by smaller symbols. Children labeled `c` occupy
//! ranks `C[c]+1 ..= C[c+1]` in the order of their parents, which gives
//! `child(i, c) = C[c] + prank(i, B_c)` and its inverse through `select`.

mod serial;

pub use serial::{read_index, write_index, SerialError};

use thiserror::Error;

use crate::entropy;
use crate::succinct::{default_block_size, BitAccess, BoostedBitvector, SelectOverlay};
use crate::trie::{Alphabet, NodeId, Symbol, SymbolMode, Trie};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum XbwtError {
    #[error("rank {i} outside 1..={n}")]
    Rank { i: usize, n: usize },
    #[error("symbol index {c} outside an alphabet of {sigma} symbols")]
    Symbol { c: usize, sigma: usize },
    #[error("the root (rank 1) has no parent")]
    RootHasNoParent,
    #[error("child ordinals start at 1")]
    Ordinal,
}

/// Co-lexicographic ranks of the nodes of a trie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColexOrder {
    rank: Vec<usize>,
    node: Vec<NodeId>,
}

impl ColexOrder {
    /// 1-based co-lex rank of node `u`.
    pub fn rank(&self, u: NodeId) -> usize {
        self.rank[u]
    }

    /// Node with 1-based co-lex rank `i`.
    pub fn node(&self, i: usize) -> NodeId {
        self.node[i - 1]
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// Nodes listed by increasing rank.
    pub fn nodes(&self) -> &[NodeId] {
        &self.node
    }

    /// The rows `B_c` in plain form: `rows[c][i - 1]` tells whether the node of
    /// rank `i` has a `c`-child.
    pub fn out_rows(&self, t: &Trie) -> Vec<Vec<bool>> {
        let mut rows = vec![vec![false; t.len()]; t.sigma()];
        for (pos, &u) in self.node.iter().enumerate() {
            for c in t.out_labels(u) {
                rows[c][pos] = true;
            }
        }
        rows
    }
}

/// Sorts the nodes co-lexicographically by prefix doubling.
///
/// After round `t` two nodes share a rank iff the last `2^t` symbols of their
/// root paths agree, with paths shorter than `2^t` padded by a terminator
/// below every symbol. The root's path is all terminator, so it also stands
/// in for ancestors above the root. Rounds stop once all ranks are distinct.
pub fn colex_sort(t: &Trie) -> ColexOrder {
    let n = t.len();
    let mut rank: Vec<usize> = (0..n).map(|u| t.label(u).map_or(0, |c| c + 1)).collect();
    let mut anc: Vec<NodeId> = (0..n).map(|u| t.parent(u).unwrap_or(0)).collect();
    let mut order: Vec<NodeId> = (0..n).collect();
    let mut key = vec![(0usize, 0usize); n];
    loop {
        for u in 0..n {
            key[u] = (rank[u], rank[anc[u]]);
        }
        order.sort_unstable_by_key(|&u| key[u]);
        let mut distinct = 0;
        for (pos, &u) in order.iter().enumerate() {
            if pos > 0 && key[u] != key[order[pos - 1]] {
                distinct += 1;
            }
            rank[u] = distinct;
        }
        if distinct + 1 == n {
            break;
        }
        anc = (0..n).map(|u| anc[anc[u]]).collect();
    }
    ColexOrder { rank: rank.into_iter().map(|r| r + 1).collect(), node: order }
}

/// Per-symbol run breaks: positions `i` with `B_c[i] = 1` and either `i = n`
/// or `B_c[i + 1] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunsProfile {
    pub r: usize,
    pub per_symbol: Vec<usize>,
}

impl RunsProfile {
    pub fn from_rows<'a, I: IntoIterator<Item = &'a [bool]>>(rows: I) -> Self {
        let per_symbol: Vec<usize> = rows
            .into_iter()
            .map(|row| (0..row.len()).filter(|&i| row[i] && (i + 1 == row.len() || !row[i + 1])).count())
            .collect();
        Self { r: per_symbol.iter().sum(), per_symbol }
    }
}

/// Runs of a trie computed from its plain XBWT rows.
pub fn runs_of(t: &Trie, order: &ColexOrder) -> RunsProfile {
    let rows = order.out_rows(t);
    RunsProfile::from_rows(rows.iter().map(Vec::as_slice))
}

/// Which `B_c`, if any, is stored complemented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ComplementPolicy {
    /// Complement the symbol with `n_c > n/2`, when there is one.
    #[default]
    Auto,
    Never,
    /// Complement this symbol index.
    Symbol(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct IndexOptions {
    pub block_size: Option<usize>,
    pub complement: ComplementPolicy,
    /// How the indexed strings were read; recorded so queries can match it.
    pub mode: SymbolMode,
}

/// Forward-search result: the co-lex interval `[i, j]`, empty when `j < i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub count: usize,
    pub i: usize,
    pub j: usize,
}

/// Compressed XBWT index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XbwtIndex {
    n: usize,
    alphabet: Alphabet,
    mode: SymbolMode,
    complemented: Option<usize>,
    block: usize,
    c_array: Vec<usize>,
    rows: Vec<BoostedBitvector>,
    overlay: SelectOverlay,
}

pub fn build_index(t: &Trie, options: IndexOptions) -> XbwtIndex {
    let order = colex_sort(t);
    let (n, sigma) = (t.len(), t.sigma());
    let dist = t.symbol_distribution();
    let block = options.block_size.unwrap_or_else(|| default_block_size(n, sigma)).max(1);
    let complemented = match options.complement {
        ComplementPolicy::Never => None,
        ComplementPolicy::Symbol(c) => Some(c).filter(|&c| c < sigma),
        ComplementPolicy::Auto => (0..sigma).find(|&c| 2 * dist.counts()[c] > n as u64),
    };
    let mut c_array = Vec::with_capacity(sigma + 1);
    let mut acc = 1usize;
    for &nc in dist.counts() {
        c_array.push(acc);
        acc += nc as usize;
    }
    c_array.push(acc);
    let rows: Vec<BoostedBitvector> = order
        .out_rows(t)
        .iter()
        .enumerate()
        .map(|(c, bits)| BoostedBitvector::build_with(bits, block, complemented == Some(c)))
        .collect();
    let overlay = SelectOverlay::build(&block_counts(&rows));
    XbwtIndex { n, alphabet: t.alphabet().clone(), mode: options.mode, complemented, block, c_array, rows, overlay }
}

fn block_counts(rows: &[BoostedBitvector]) -> Vec<Vec<usize>> {
    rows.iter().map(|r| (0..r.blocks()).map(|i| r.block_ones(i)).collect()).collect()
}

impl XbwtIndex {
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: an index covers at least the root.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn mode(&self) -> SymbolMode {
        self.mode
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    pub fn complemented(&self) -> Option<usize> {
        self.complemented
    }

    /// `C[0..=σ]`, with `C[σ] = n`.
    pub fn c_array(&self) -> &[usize] {
        &self.c_array
    }

    /// The bitvector `B_c`.
    pub fn row(&self, c: usize) -> &BoostedBitvector {
        &self.rows[c]
    }

    pub fn overlay(&self) -> &SelectOverlay {
        &self.overlay
    }

    fn check_rank(&self, i: usize) -> Result<(), XbwtError> {
        if i == 0 || i > self.n {
            Err(XbwtError::Rank { i, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_symbol(&self, c: usize) -> Result<(), XbwtError> {
        if c >= self.sigma() {
            Err(XbwtError::Symbol { c, sigma: self.sigma() })
        } else {
            Ok(())
        }
    }

    /// Rank of the `c`-child of the node with rank `i`, if it exists.
    pub fn child(&self, i: usize, c: usize) -> Result<Option<usize>, XbwtError> {
        self.check_rank(i)?;
        self.check_symbol(c)?;
        let p = self.rows[c].prank(i).expect("rank checked");
        Ok(p.map(|p| self.c_array[c] + p))
    }

    /// Label (symbol index) of the edge entering the node with rank `i ≥ 2`.
    pub fn incoming_label(&self, i: usize) -> Result<usize, XbwtError> {
        self.check_rank(i)?;
        if i == 1 {
            return Err(XbwtError::RootHasNoParent);
        }
        // Largest c with C[c] < i.
        Ok(self.c_array[..self.sigma()].partition_point(|&x| x < i) - 1)
    }

    /// Rank of the parent of the node with rank `i ≥ 2`.
    pub fn parent(&self, i: usize) -> Result<usize, XbwtError> {
        let c = self.incoming_label(i)?;
        Ok(self.select(c, i - self.c_array[c]))
    }

    /// Position of the `j`-th one of `B_c`, answered through the overlay.
    fn select(&self, c: usize, j: usize) -> usize {
        self.overlay.select(&self.rows, c, j).expect("child ranks map to ones of B_c")
    }

    /// Rank of the `k`-th child (1-based, label order) of the node with rank `i`.
    pub fn kth_child(&self, i: usize, k: usize) -> Result<Option<usize>, XbwtError> {
        self.check_rank(i)?;
        if k == 0 {
            return Err(XbwtError::Ordinal);
        }
        let mut seen = 0;
        for c in 0..self.sigma() {
            if self.rows[c].get(i).expect("rank checked") {
                seen += 1;
                if seen == k {
                    return self.child(i, c);
                }
            }
        }
        Ok(None)
    }

    /// Out-degree of the node with rank `i`.
    pub fn out_degree(&self, i: usize) -> Result<usize, XbwtError> {
        self.check_rank(i)?;
        Ok((0..self.sigma()).filter(|&c| self.rows[c].get(i).expect("rank checked")).count())
    }

    /// Forward search for nodes whose incoming path ends with `p`.
    pub fn count(&self, p: &[Symbol]) -> CountResult {
        let (mut i, mut j) = (1usize, self.n);
        for &s in p {
            let Some(c) = self.alphabet.index_of(s) else {
                return CountResult { count: 0, i: 1, j: 0 };
            };
            let row = &self.rows[c];
            i = self.c_array[c] + row.rank1(i - 1).expect("in range") + 1;
            j = self.c_array[c] + row.rank1(j).expect("in range");
            if j < i {
                return CountResult { count: 0, i, j };
            }
        }
        CountResult { count: j - i + 1, i, j }
    }

    /// Rank of the node spelling `p` from the root, if `p` is in the trie.
    pub fn prefix_query(&self, p: &[Symbol]) -> Option<usize> {
        let mut i = 1;
        for &s in p {
            let c = self.alphabet.index_of(s)?;
            i = self.child(i, c).expect("valid rank and symbol")?;
        }
        Some(i)
    }

    pub fn runs(&self) -> RunsProfile {
        let rows: Vec<Vec<bool>> = self.rows.iter().map(BoostedBitvector::decode_all).collect();
        RunsProfile::from_rows(rows.iter().map(Vec::as_slice))
    }

    /// Bits spent on block indexes over all `B_c`.
    pub fn payload_bits(&self) -> usize {
        self.rows.iter().map(BoostedBitvector::payload_bits).sum()
    }

    pub fn overhead(&self) -> Overhead {
        Overhead {
            block_directory_bits: self.rows.iter().map(BoostedBitvector::overhead_bits).sum(),
            c_array_bits: self.c_array.len() * 64,
            overlay_bits: self.overlay.size_bits(),
        }
    }

    /// Blocks over all `B_c` that store at least one set bit.
    pub fn nonempty_blocks(&self) -> usize {
        self.rows.iter().map(BoostedBitvector::nonempty_blocks).sum()
    }

    /// Rebuilds the trie the index was built from.
    pub fn to_trie(&self) -> Trie {
        self.try_to_trie().expect("index encodes a trie")
    }

    /// Like [`Self::to_trie`], reporting an inconsistent index instead of panicking.
    pub fn try_to_trie(&self) -> Result<Trie, crate::trie::TrieError> {
        let edges: Vec<(usize, usize, usize)> = (2..=self.n)
            .map(|i| (self.parent(i).expect("non-root") - 1, i - 1, self.incoming_label(i).expect("non-root")))
            .collect();
        Trie::from_indexed_edges(self.alphabet.clone(), self.n, &edges)
    }

    #[allow(clippy::too_many_arguments)]
    fn from_parts(
        n: usize,
        alphabet: Alphabet,
        mode: SymbolMode,
        complemented: Option<usize>,
        block: usize,
        c_array: Vec<usize>,
        rows: Vec<BoostedBitvector>,
        overlay: SelectOverlay,
    ) -> Self {
        Self { n, alphabet, mode, complemented, block, c_array, rows, overlay }
    }
}

/// Measured space outside the `B_c` payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overhead {
    /// `pre_ranks` and block pointers of every `B_c`.
    pub block_directory_bits: usize,
    pub c_array_bits: usize,
    /// The unary select bitvector `S` with its rank/select directory.
    pub overlay_bits: usize,
}

impl Overhead {
    pub fn total(&self) -> usize {
        self.block_directory_bits + self.c_array_bits + self.overlay_bits
    }
}

/// The payload bound for one context order.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceLevel {
    pub k: usize,
    pub nh_k: f64,
    pub contexts: usize,
    /// `nH_k + σ⌈n/b⌉ + #nonempty blocks + σ(ℓ_k - 1)b`.
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceReport {
    pub n: usize,
    pub sigma: usize,
    pub block_size: usize,
    pub payload_bits: usize,
    pub overhead: Overhead,
    pub nonempty_blocks: usize,
    /// `Σ_c log2 C(n, n_c)`.
    pub sum_log_binomials: f64,
    /// `n - 1 - log2 n`.
    pub succinct_floor: f64,
    /// `n·⌈log2 σ⌉`, the cost of storing one label per node.
    pub naive_label_bits: u64,
    pub levels: Vec<SpaceLevel>,
}

impl SpaceReport {
    pub fn all_hold(&self) -> bool {
        self.levels.iter().all(|l| l.holds)
    }
}

pub fn space_report(idx: &XbwtIndex, t: &Trie, k_max: usize) -> SpaceReport {
    let (n, sigma, b) = (idx.len(), idx.sigma(), idx.block_size());
    let payload = idx.payload_bits();
    let nonempty = idx.nonempty_blocks();
    let blocks_term = (sigma * n.div_ceil(b)) as f64;
    let levels = (0..=k_max)
        .map(|k| {
            let stats = t.context_stats(k);
            let nh_k = entropy::empirical_entropy_from_stats(&stats);
            let contexts = stats.len();
            let bound = nh_k + blocks_term + nonempty as f64 + (sigma * (contexts - 1) * b) as f64;
            SpaceLevel { k, nh_k, contexts, bound, holds: payload as f64 <= bound * (1.0 + 1e-9) }
        })
        .collect();
    let dist = t.symbol_distribution();
    let sum_log_binomials =
        dist.counts().iter().map(|&nc| crate::bigmath::log2_big(&crate::bigmath::binomial(n as u64, nc))).sum();
    SpaceReport {
        n,
        sigma,
        block_size: b,
        payload_bits: payload,
        overhead: idx.overhead(),
        nonempty_blocks: nonempty,
        sum_log_binomials,
        succinct_floor: n as f64 - 1.0 - (n as f64).log2(),
        naive_label_bits: n as u64 * crate::bigmath::ceil_log2(sigma.max(1) as u64),
        levels,
    }
}
