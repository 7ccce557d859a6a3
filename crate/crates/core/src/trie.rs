//! Tries over an explicit ordered alphabet.
//!
//! A [`Trie`] is an ordered, edge-labeled tree in which the edges leaving a
//! node carry pairwise distinct labels. Node ids are dense and assigned in
//! pre-order (root is `0`, children visited in label order), so the `i`-th
//! node of a pre-order visit is simply node `i - 1`.
//!
//! Contexts pad shallow nodes with the virtual symbol `#`, represented here by
//! [`ContextSymbol::Pad`] and never stored on an edge.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// A raw symbol value: a byte or a Unicode scalar value, depending on the input mode.
pub type Symbol = u32;

/// Dense node identifier. Equal to the node's position in pre-order.
pub type NodeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrieError {
    #[error("symbol {0:#x} appears twice in the alphabet")]
    DuplicateSymbol(Symbol),
    #[error("symbol {0:#x} is not in the alphabet")]
    UnknownSymbol(Symbol),
    #[error("string {string}: symbol {symbol:#x} at position {position} is not in the alphabet")]
    SymbolOutsideAlphabet { string: usize, position: usize, symbol: Symbol },
    #[error("a trie has at least one node")]
    Empty,
    #[error("node {node} out of range for a trie with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("node {parent} has two outgoing edges labeled {symbol:#x}")]
    DuplicateSiblingLabel { parent: usize, symbol: Symbol },
    #[error("node {node} has more than one parent")]
    MultipleParents { node: usize },
    #[error("the root (node 0) has an incoming edge")]
    RootHasParent,
    #[error("node {node} is not connected to the root")]
    Disconnected { node: usize },
    #[error("node {node} lies on a cycle")]
    Cycle { node: usize },
}

/// Ordered set of distinct symbols. The order `≼` is the numeric order of the
/// symbol values; the padding symbol `#` sits below every member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    /// Builds an alphabet from distinct symbols (any input order).
    pub fn new(mut symbols: Vec<Symbol>) -> Result<Self, TrieError> {
        symbols.sort_unstable();
        if let Some(w) = symbols.windows(2).find(|w| w[0] == w[1]) {
            return Err(TrieError::DuplicateSymbol(w[0]));
        }
        Ok(Self { symbols })
    }

    /// Alphabet of the distinct symbols occurring in `symbols`.
    pub fn effective<I: IntoIterator<Item = Symbol>>(symbols: I) -> Self {
        let mut symbols: Vec<Symbol> = symbols.into_iter().collect();
        symbols.sort_unstable();
        symbols.dedup();
        Self { symbols }
    }

    pub fn from_chars(chars: &str) -> Result<Self, TrieError> {
        Self::new(chars.chars().map(|c| c as Symbol).collect())
    }

    /// `σ`.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> Symbol {
        self.symbols[index]
    }

    pub fn index_of(&self, symbol: Symbol) -> Option<usize> {
        self.symbols.binary_search(&symbol).ok()
    }

    /// Printable form of the symbol at `index`.
    pub fn display_symbol(&self, index: usize) -> String {
        format_symbol(self.symbols[index])
    }
}

/// Renders a symbol as its character when it is a visible non-space
/// character, otherwise as a `0x..` hex literal.
pub fn format_symbol(symbol: Symbol) -> String {
    match char::from_u32(symbol) {
        Some(ch) if !ch.is_whitespace() && !ch.is_control() && ch != '#' => ch.to_string(),
        _ => format!("{symbol:#x}"),
    }
}

/// Inverse of [`format_symbol`].
pub fn parse_symbol(token: &str) -> Option<Symbol> {
    if let Some(hex) = token.strip_prefix("0x") {
        if !hex.is_empty() {
            return Symbol::from_str_radix(hex, 16).ok();
        }
    }
    let mut chars = token.chars();
    match (chars.next(), chars.next()) {
        (Some(ch), None) => Some(ch as Symbol),
        _ => None,
    }
}

/// One position of a context string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ContextSymbol {
    /// The virtual root symbol `#`.
    Pad,
    /// A real symbol, by alphabet index.
    Sym(usize),
}

pub type Context = Vec<ContextSymbol>;

/// Renders a context using alphabet symbols and `#` for padding.
pub fn format_context(alphabet: &Alphabet, context: &[ContextSymbol]) -> String {
    if context.is_empty() {
        return "ε".to_string();
    }
    context
        .iter()
        .map(|s| match s {
            ContextSymbol::Pad => "#".to_string(),
            ContextSymbol::Sym(c) => alphabet.display_symbol(*c),
        })
        .collect()
}

/// How dictionary lines map to symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SymbolMode {
    #[default]
    Bytes,
    Utf8,
}

/// Splits newline-terminated dictionary text into symbol strings.
pub fn parse_dictionary(data: &[u8], mode: SymbolMode) -> Result<Vec<Vec<Symbol>>, std::str::Utf8Error> {
    let mut lines: Vec<&[u8]> = data.split(|&b| b == b'\n').collect();
    if data.ends_with(b"\n") || data.is_empty() {
        lines.pop();
    }
    lines
        .into_iter()
        .map(|line| match mode {
            SymbolMode::Bytes => Ok(line.iter().map(|&b| b as Symbol).collect()),
            SymbolMode::Utf8 => Ok(std::str::from_utf8(line)?.chars().map(|c| c as Symbol).collect()),
        })
        .collect()
}

/// Per-symbol edge counts `{n_c}` of a trie with `n` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolDistribution {
    n: u64,
    counts: Vec<u64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("symbol counts sum to {sum}, a trie with {n} nodes has {} edges", n.saturating_sub(1))]
pub struct DistributionError {
    pub n: u64,
    pub sum: u64,
}

impl SymbolDistribution {
    pub fn new(n: u64, counts: Vec<u64>) -> Result<Self, DistributionError> {
        let sum: u64 = counts.iter().sum();
        if n == 0 || sum != n - 1 {
            return Err(DistributionError { n, sum });
        }
        Ok(Self { n, counts })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn sigma(&self) -> usize {
        self.counts.len()
    }

    /// `n_c` indexed by alphabet position.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// Counts `n_w` and `n_{w,c}` for one realized context `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextCounts {
    pub n_w: u64,
    pub n_wc: Vec<u64>,
}

impl ContextCounts {
    /// `m_w`: edges leaving nodes with this context.
    pub fn edges(&self) -> u64 {
        self.n_wc.iter().sum()
    }
}

/// Context statistics of order `k`. Only realized contexts (`n_w > 0`) are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextStats {
    k: usize,
    sigma: usize,
    entries: BTreeMap<Context, ContextCounts>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextStatsError {
    #[error("context {index} has length {len}, expected {k}")]
    BadContextLength { index: usize, len: usize, k: usize },
    #[error("context {index} has {len} symbol counts, expected {sigma}")]
    BadCountLength { index: usize, len: usize, sigma: usize },
    #[error("context {index}: n_w,c = {n_wc} exceeds n_w = {n_w}")]
    CountExceedsContext { index: usize, n_w: u64, n_wc: u64 },
    #[error("context {index} is unrealized (n_w = 0)")]
    EmptyContext { index: usize },
    #[error("context sizes sum to {sum}, expected n = {n}")]
    NodeTotal { sum: u64, n: u64 },
    #[error("edge counts sum to {sum}, expected n - 1 = {expected}")]
    EdgeTotal { sum: u64, expected: u64 },
    #[error("context symbol {symbol} outside alphabet of size {sigma}")]
    ContextSymbolRange { symbol: usize, sigma: usize },
}

impl ContextStats {
    /// Assembles statistics from raw parts, checking them against a trie of `n` nodes.
    pub fn from_parts(
        k: usize,
        sigma: usize,
        n: u64,
        entries: Vec<(Context, ContextCounts)>,
    ) -> Result<Self, ContextStatsError> {
        let mut map = BTreeMap::new();
        for (index, (ctx, counts)) in entries.into_iter().enumerate() {
            if ctx.len() != k {
                return Err(ContextStatsError::BadContextLength { index, len: ctx.len(), k });
            }
            if let Some(&ContextSymbol::Sym(symbol)) =
                ctx.iter().find(|s| matches!(s, ContextSymbol::Sym(c) if *c >= sigma))
            {
                return Err(ContextStatsError::ContextSymbolRange { symbol, sigma });
            }
            if counts.n_wc.len() != sigma {
                return Err(ContextStatsError::BadCountLength { index, len: counts.n_wc.len(), sigma });
            }
            if counts.n_w == 0 {
                return Err(ContextStatsError::EmptyContext { index });
            }
            if let Some(&n_wc) = counts.n_wc.iter().find(|&&x| x > counts.n_w) {
                return Err(ContextStatsError::CountExceedsContext { index, n_w: counts.n_w, n_wc });
            }
            map.insert(ctx, counts);
        }
        let stats = Self { k, sigma, entries: map };
        stats.check_totals(n)?;
        Ok(stats)
    }

    /// Checks `Σ_w n_w = n` and `Σ_w Σ_c n_{w,c} = n - 1`.
    pub fn check_totals(&self, n: u64) -> Result<(), ContextStatsError> {
        let sum = self.nodes();
        if sum != n {
            return Err(ContextStatsError::NodeTotal { sum, n });
        }
        let edges: u64 = self.entries.values().map(ContextCounts::edges).sum();
        if edges + 1 != n {
            return Err(ContextStatsError::EdgeTotal { sum: edges, expected: n - 1 });
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// `Σ_w n_w`.
    pub fn nodes(&self) -> u64 {
        self.entries.values().map(|e| e.n_w).sum()
    }

    /// Number `ℓ` of realized contexts.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, context: &[ContextSymbol]) -> Option<&ContextCounts> {
        self.entries.get(context)
    }

    /// Realized contexts in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = (&Context, &ContextCounts)> {
        self.entries.iter()
    }
}

/// An immutable trie with pre-order node ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trie {
    alphabet: Alphabet,
    parent: Vec<NodeId>,
    label: Vec<usize>,
    depth: Vec<usize>,
    child_start: Vec<usize>,
    children: Vec<NodeId>,
}

const NONE: usize = usize::MAX;

impl Trie {
    /// The single-node trie.
    pub fn root_only(alphabet: Alphabet) -> Self {
        Self {
            alphabet,
            parent: vec![NONE],
            label: vec![NONE],
            depth: vec![0],
            child_start: vec![0, 0],
            children: Vec::new(),
        }
    }

    /// Builds a trie from `(parent, child, symbol index)` edges over nodes
    /// `0..n` rooted at `0`. Ids need not be in pre-order; the result is
    /// renumbered so that they are.
    pub fn from_indexed_edges(
        alphabet: Alphabet,
        n: usize,
        edges: &[(usize, usize, usize)],
    ) -> Result<Self, TrieError> {
        if n == 0 {
            return Err(TrieError::Empty);
        }
        let sigma = alphabet.len();
        let mut parent = vec![NONE; n];
        let mut label = vec![NONE; n];
        let mut kids: Vec<Vec<(usize, NodeId)>> = vec![Vec::new(); n];
        for &(p, c, sym) in edges {
            for node in [p, c] {
                if node >= n {
                    return Err(TrieError::NodeOutOfRange { node, n });
                }
            }
            if sym >= sigma {
                return Err(TrieError::UnknownSymbol(sym as Symbol));
            }
            if c == 0 {
                return Err(TrieError::RootHasParent);
            }
            if parent[c] != NONE {
                return Err(TrieError::MultipleParents { node: c });
            }
            parent[c] = p;
            label[c] = sym;
            kids[p].push((sym, c));
        }
        for (p, list) in kids.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(TrieError::DuplicateSiblingLabel { parent: p, symbol: alphabet.symbol(w[0].0) });
            }
        }
        if let Some(node) = (1..n).find(|&u| parent[u] == NONE) {
            return Err(TrieError::Disconnected { node });
        }

        // Pre-order renumbering; nodes never reached sit on a cycle.
        let mut new_id = vec![NONE; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0usize];
        while let Some(u) = stack.pop() {
            new_id[u] = order.len();
            order.push(u);
            stack.extend(kids[u].iter().rev().map(|&(_, c)| c));
        }
        if let Some(node) = (0..n).find(|&u| new_id[u] == NONE) {
            return Err(TrieError::Cycle { node });
        }

        let mut t = Self {
            alphabet,
            parent: vec![NONE; n],
            label: vec![NONE; n],
            depth: vec![0; n],
            child_start: Vec::with_capacity(n + 1),
            children: Vec::with_capacity(n - 1),
        };
        for (id, &old) in order.iter().enumerate() {
            if old != 0 {
                let p = new_id[parent[old]];
                t.parent[id] = p;
                t.label[id] = label[old];
                t.depth[id] = t.depth[p] + 1;
            }
            t.child_start.push(t.children.len());
            t.children.extend(kids[old].iter().map(|&(_, c)| new_id[c]));
        }
        t.child_start.push(t.children.len());
        Ok(t)
    }

    /// Builds a trie from `(parent, child, symbol)` edges, `symbol` being a raw value.
    pub fn build_from_edges(alphabet: Alphabet, n: usize, edges: &[(usize, usize, Symbol)]) -> Result<Self, TrieError> {
        let indexed = edges
            .iter()
            .map(|&(p, c, s)| alphabet.index_of(s).map(|i| (p, c, i)).ok_or(TrieError::UnknownSymbol(s)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_indexed_edges(alphabet, n, &indexed)
    }

    /// The trie of all distinct prefixes of `strings`. Duplicates are merged.
    pub fn build_from_dictionary(strings: &[Vec<Symbol>], alphabet: Alphabet) -> Result<Self, TrieError> {
        Ok(DictionaryTrie::build(strings, alphabet)?.trie)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    /// Number of nodes `n`.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// Always false: a trie has a root.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn parent(&self, u: NodeId) -> Option<NodeId> {
        (self.parent[u] != NONE).then(|| self.parent[u])
    }

    /// Alphabet index of the label on the edge entering `u`.
    pub fn label(&self, u: NodeId) -> Option<usize> {
        (self.label[u] != NONE).then(|| self.label[u])
    }

    pub fn depth(&self, u: NodeId) -> usize {
        self.depth[u]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Children of `u` in label order.
    pub fn children(&self, u: NodeId) -> &[NodeId] {
        &self.children[self.child_start[u]..self.child_start[u + 1]]
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.child_start[u + 1] - self.child_start[u]
    }

    /// Labels of the edges leaving `u` (`out(u)`), ascending.
    pub fn out_labels(&self, u: NodeId) -> impl Iterator<Item = usize> + '_ {
        self.children(u).iter().map(move |&v| self.label[v])
    }

    pub fn child(&self, u: NodeId, c: usize) -> Option<NodeId> {
        let kids = self.children(u);
        kids.binary_search_by_key(&c, |&v| self.label[v]).ok().map(|i| kids[i])
    }

    pub fn is_leaf(&self, u: NodeId) -> bool {
        self.out_degree(u) == 0
    }

    /// All edges `(parent, child, symbol index)` in pre-order of the child.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, usize)> + '_ {
        (1..self.len()).map(move |v| (self.parent[v], v, self.label[v]))
    }

    /// Node ids in pre-order; identical to `0..n` by construction.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root()];
        while let Some(u) = stack.pop() {
            order.push(u);
            stack.extend(self.children(u).iter().rev());
        }
        order
    }

    /// Labels on the path from the root to `u`.
    pub fn path_label(&self, u: NodeId) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.depth[u]);
        let mut v = u;
        while v != 0 {
            path.push(self.label[v]);
            v = self.parent[v];
        }
        path.reverse();
        path
    }

    /// `λ_k(u)`: the last `k` labels on the root path, left-padded with `#`.
    pub fn context(&self, u: NodeId, k: usize) -> Context {
        let mut ctx = vec![ContextSymbol::Pad; k];
        let mut v = u;
        for slot in ctx.iter_mut().rev() {
            if v == 0 {
                break;
            }
            *slot = ContextSymbol::Sym(self.label[v]);
            v = self.parent[v];
        }
        ctx
    }

    /// `n_w` and `n_{w,c}` for every realized context of length `k`.
    pub fn context_stats(&self, k: usize) -> ContextStats {
        let sigma = self.sigma();
        let mut entries: BTreeMap<Context, ContextCounts> = BTreeMap::new();
        for u in 0..self.len() {
            let e = entries.entry(self.context(u, k)).or_insert_with(|| ContextCounts { n_w: 0, n_wc: vec![0; sigma] });
            e.n_w += 1;
            for c in self.out_labels(u) {
                e.n_wc[c] += 1;
            }
        }
        ContextStats { k, sigma, entries }
    }

    pub fn symbol_distribution(&self) -> SymbolDistribution {
        let mut counts = vec![0u64; self.sigma()];
        for v in 1..self.len() {
            counts[self.label[v]] += 1;
        }
        SymbolDistribution { n: self.len() as u64, counts }
    }

    /// The same trie over the symbols that label at least one edge.
    pub fn with_effective_alphabet(&self) -> Trie {
        let used = self.symbol_distribution();
        let keep: Vec<usize> = (0..self.sigma()).filter(|&c| used.counts[c] > 0).collect();
        let mut remap = vec![NONE; self.sigma()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let alphabet = Alphabet { symbols: keep.iter().map(|&c| self.alphabet.symbol(c)).collect() };
        let mut t = self.clone();
        t.alphabet = alphabet;
        for l in t.label.iter_mut().skip(1) {
            *l = remap[*l];
        }
        t
    }

    /// Same shape and labels, re-expressed over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<Trie, TrieError> {
        let mut remap = Vec::with_capacity(self.sigma());
        for &s in self.alphabet.symbols() {
            remap.push(alphabet.index_of(s).ok_or(TrieError::UnknownSymbol(s))?);
        }
        let mut t = self.clone();
        t.alphabet = alphabet;
        for l in t.label.iter_mut().skip(1) {
            *l = remap[*l];
        }
        Ok(t)
    }
}

/// A dictionary trie: a trie plus a mark on every node spelling an input string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DictionaryTrie {
    pub trie: Trie,
    pub terminal: Vec<bool>,
}

impl DictionaryTrie {
    pub fn build(strings: &[Vec<Symbol>], alphabet: Alphabet) -> Result<Self, TrieError> {
        let mut kids: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
        let mut terminal = vec![false];
        for (si, s) in strings.iter().enumerate() {
            let mut u = 0;
            for (position, &sym) in s.iter().enumerate() {
                let c = alphabet.index_of(sym).ok_or(TrieError::SymbolOutsideAlphabet {
                    string: si,
                    position,
                    symbol: sym,
                })?;
                u = match kids[u].get(&c) {
                    Some(&v) => v,
                    None => {
                        let v = kids.len();
                        kids.push(BTreeMap::new());
                        terminal.push(false);
                        kids[u].insert(c, v);
                        v
                    }
                };
            }
            terminal[u] = true;
        }
        let edges: Vec<(usize, usize, usize)> =
            kids.iter().enumerate().flat_map(|(p, m)| m.iter().map(move |(&c, &v)| (p, v, c))).collect();
        // Insertion ids differ from pre-order ids; recover the mapping via path labels.
        let trie = Trie::from_indexed_edges(alphabet, kids.len(), &edges)?;
        let mut marks = vec![false; trie.len()];
        let mut stack = vec![(0usize, 0usize)];
        while let Some((old, new)) = stack.pop() {
            marks[new] = terminal[old];
            for (&c, &v) in &kids[old] {
                stack.push((v, trie.child(new, c).expect("same shape")));
            }
        }
        Ok(Self { trie, terminal: marks })
    }

    /// The marked strings, in lexicographic order.
    pub fn strings(&self) -> Vec<Vec<Symbol>> {
        (0..self.trie.len())
            .filter(|&u| self.terminal[u])
            .map(|u| self.trie.path_label(u).into_iter().map(|c| self.trie.alphabet().symbol(c)).collect())
            .collect()
    }
}

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Trie(#[from] TrieError),
}

/// Parses the edge-list format: a header `n σ`, then `n - 1` lines
/// `parent child symbol`. The alphabet is the set of symbols used, which must
/// have exactly `σ` members.
pub fn parse_edge_list(text: &str) -> Result<Trie, EdgeListError> {
    let syntax = |line: usize, message: String| EdgeListError::Syntax { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, sigma] = fields[..] else {
        return Err(syntax(hl, format!("expected header `n σ`, found `{header}`")));
    };
    let n: usize = n.parse().map_err(|_| syntax(hl, format!("bad node count `{n}`")))?;
    let sigma: usize = sigma.parse().map_err(|_| syntax(hl, format!("bad alphabet size `{sigma}`")))?;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [p, c, s] = fields[..] else {
            return Err(syntax(ln, format!("expected `parent child symbol`, found `{line}`")));
        };
        let p: usize = p.parse().map_err(|_| syntax(ln, format!("bad parent `{p}`")))?;
        let c: usize = c.parse().map_err(|_| syntax(ln, format!("bad child `{c}`")))?;
        let s = parse_symbol(s).ok_or_else(|| syntax(ln, format!("bad symbol `{s}`")))?;
        edges.push((p, c, s));
    }
    if edges.len() + 1 != n {
        return Err(syntax(hl, format!("header announces {n} nodes but {} edges follow", edges.len())));
    }
    let alphabet = Alphabet::effective(edges.iter().map(|e| e.2));
    if alphabet.len() != sigma {
        return Err(syntax(
            hl,
            format!("header announces σ = {sigma} but edges use {} distinct symbols", alphabet.len()),
        ));
    }
    Ok(Trie::build_from_edges(alphabet, n, &edges)?)
}

/// Writes the normal form of the edge-list format (pre-order ids, one line per
/// child in pre-order). Only symbols that label an edge are counted in `σ`.
pub fn write_edge_list(t: &Trie) -> String {
    let t = t.with_effective_alphabet();
    let mut out = format!("{} {}\n", t.len(), t.sigma());
    for (p, c, s) in t.edges() {
        out.push_str(&format!("{p} {c} {}\n", t.alphabet().display_symbol(s)));
    }
    out
}

impl fmt::Display for Trie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_edge_list(self))
    }
}
