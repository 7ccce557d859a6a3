//! Exact arithmetic coding of tries.
//!
//! Nodes are visited in pre-order. For node `u` with context `w = λ_k(u)` and
//! each symbol `c` in alphabet order, the interval `[l, l+s)` is split at
//! `l + s·(1 - p)` with `p = n_{w,c}/n_w`: the upper part means `c ∈ out(u)`.
//! After the last node the coder emits the first `d = ⌈log2(2/s)⌉` bits of
//! the midpoint `l + s/2`, which is enough to land inside the final interval.
//!
//! The state is kept as integers over a shared denominator (`l = L/Q`,
//! `s = S/Q`), so no gcd is ever taken and every comparison is exact. Steps
//! where `p` is 0 or 1 are skipped: they leave `s` unchanged on the only
//! possible branch.

mod container;

pub use container::{read_container, write_container, ContainerError};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bigmath::{ceil_log2, log2_big};
use crate::trie::{Alphabet, ContextStats, ContextStatsError, Trie, TrieError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoderError {
    #[error("inconsistent model: {0}")]
    Model(#[from] ContextStatsError),
    #[error("model has {found} contexts of length {found_k}, expected length {k}")]
    ModelOrder { k: usize, found_k: usize, found: usize },
    #[error("model is for {model} symbols, alphabet has {alphabet}")]
    ModelAlphabet { model: usize, alphabet: usize },
    #[error("node {node} has context {context} which the model does not contain")]
    UnknownContext { node: usize, context: String },
    #[error("decoded tree has {found} nodes, the model expects {expected}")]
    NodeCount { expected: usize, found: usize },
    #[error("code has {d} bits but only {available} are stored")]
    ShortPayload { d: u64, available: u64 },
    #[error(transparent)]
    Trie(#[from] TrieError),
}

/// The interval `[l, l+s)` as numerators over a common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub low: BigUint,
    pub size: BigUint,
    pub den: BigUint,
}

impl RationalInterval {
    pub fn unit() -> Self {
        Self { low: BigUint::zero(), size: BigUint::one(), den: BigUint::one() }
    }

    pub fn l(&self) -> BigRational {
        BigRational::new(self.low.clone().into(), self.den.clone().into())
    }

    pub fn s(&self) -> BigRational {
        BigRational::new(self.size.clone().into(), self.den.clone().into())
    }

    /// `-log2 s`.
    pub fn neg_log2_size(&self) -> f64 {
        log2_big(&self.den) - log2_big(&self.size)
    }

    /// `0 ≤ l`, `s > 0` and `l + s ≤ 1`.
    pub fn is_valid(&self) -> bool {
        !self.size.is_zero() && &self.low + &self.size <= self.den
    }

    /// `d = ⌈log2(2/s)⌉`: the least `d` with `s·2^d ≥ 2`.
    pub fn code_length(&self) -> u64 {
        let two_q = &self.den << 1u32;
        // Start from the estimate given by bit lengths and adjust.
        let mut d = two_q.bits().saturating_sub(self.size.bits());
        while (&self.size << d) < two_q {
            d += 1;
        }
        while d > 0 && (&self.size << (d - 1)) >= two_q {
            d -= 1;
        }
        d
    }

    /// `⌊(l + s/2)·2^d⌋`, the first `d` bits of the midpoint.
    pub fn midpoint_bits(&self, d: u64) -> BigUint {
        ((&self.low << 1u32) + &self.size) * (BigUint::one() << d) / (&self.den << 1u32)
    }

    /// Whether `x / 2^d` lies in `[l, l+s)`.
    pub fn contains(&self, x: &BigUint, d: u64) -> bool {
        let xq = x * &self.den;
        xq >= (&self.low << d) && xq < ((&self.low + &self.size) << d)
    }

    /// Applies one coding step with probability `a/b` for the upper part.
    fn step(&mut self, a: u64, b: u64, present: bool) {
        if present {
            self.low = &self.low * b + &self.size * (b - a);
            self.size *= a;
        } else {
            self.low *= b;
            self.size *= b - a;
        }
        self.den *= b;
        assert!(self.is_valid(), "interval left [0, 1) or collapsed");
    }
}

/// A compressed trie: the code bits plus the model needed to decode them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrieCode {
    pub k: usize,
    pub n: usize,
    pub alphabet: Alphabet,
    pub model: ContextStats,
    /// Number of code bits `d`.
    pub d: u64,
    /// `b_1 … b_d` as an integer, `b_1` most significant.
    pub value: BigUint,
}

impl TrieCode {
    /// The bits `b_1 … b_d` as a `'0'`/`'1'` string.
    pub fn bit_string(&self) -> String {
        let s = self.value.to_str_radix(2);
        format!("{}{s}", "0".repeat(self.d as usize - s.len().min(self.d as usize)))
    }

    /// The code bits packed MSB first and zero-padded to whole bytes.
    pub fn payload_bytes(&self) -> Vec<u8> {
        let pad = (8 - self.d % 8) % 8;
        let padded = &self.value << pad;
        let len = ((self.d + pad) / 8) as usize;
        let mut bytes = padded.to_bytes_be();
        if bytes == [0] {
            bytes.clear();
        }
        let mut out = vec![0u8; len - bytes.len()];
        out.extend(bytes);
        out
    }

    /// Inverse of [`Self::payload_bytes`].
    pub fn value_from_payload(bytes: &[u8], d: u64) -> Result<BigUint, CoderError> {
        let available = bytes.len() as u64 * 8;
        if available < d || available >= d + 8 {
            return Err(CoderError::ShortPayload { d, available });
        }
        Ok(BigUint::from_bytes_be(bytes) >> (available - d))
    }
}

fn context_counts<'a>(
    model: &'a ContextStats,
    t_ctx: &[crate::trie::ContextSymbol],
) -> Option<&'a crate::trie::ContextCounts> {
    model.get(t_ctx)
}

/// The final interval for `t` under `model`.
pub fn encode_interval(t: &Trie, model: &ContextStats) -> RationalInterval {
    let k = model.k();
    let mut iv = RationalInterval::unit();
    let mut present = vec![false; t.sigma()];
    for u in 0..t.len() {
        let ctx = t.context(u, k);
        let e = context_counts(model, &ctx).expect("model built from this trie");
        present.iter_mut().for_each(|p| *p = false);
        for c in t.out_labels(u) {
            present[c] = true;
        }
        for (c, &is_present) in present.iter().enumerate() {
            let (a, b) = (e.n_wc[c], e.n_w);
            if a == 0 || a == b {
                continue;
            }
            iv.step(a, b, is_present);
        }
    }
    iv
}

/// Compresses `t` with a model of order `k` built from `t` itself.
pub fn compress(t: &Trie, k: usize) -> TrieCode {
    compress_with_interval(t, k).0
}

/// Like [`compress`], also returning the final interval `[l, l+s)`.
pub fn compress_with_interval(t: &Trie, k: usize) -> (TrieCode, RationalInterval) {
    let model = t.context_stats(k);
    let iv = encode_interval(t, &model);
    let d = iv.code_length();
    let value = iv.midpoint_bits(d);
    assert!(iv.contains(&value, d), "truncated midpoint must stay inside the interval");
    (TrieCode { k, n: t.len(), alphabet: t.alphabet().clone(), model, d, value }, iv)
}

/// Rebuilds the trie from its code by replaying the coder's decisions.
pub fn decompress(code: &TrieCode) -> Result<Trie, CoderError> {
    let model = &code.model;
    let sigma = code.alphabet.len();
    model.check_totals(code.n as u64)?;
    if model.sigma() != sigma {
        return Err(CoderError::ModelAlphabet { model: model.sigma(), alphabet: sigma });
    }
    if model.k() != code.k {
        return Err(CoderError::ModelOrder { k: code.k, found_k: model.k(), found: model.len() });
    }
    let k = code.k;
    // Scale the unit interval by 2^d so that x = value / 2^d needs no shifts:
    // with den = 2^d initially, x·den starts out as `value`.
    let scale = BigUint::one() << code.d;
    let mut iv = RationalInterval { low: BigUint::zero(), size: scale.clone(), den: scale };
    let mut xq = code.value.clone();

    let n = code.n;
    let mut parent = vec![usize::MAX; 1];
    let mut label = vec![usize::MAX; 1];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut u = 0usize;
    loop {
        let ctx = context_of(&parent, &label, u, k);
        let e = context_counts(model, &ctx).ok_or_else(|| CoderError::UnknownContext {
            node: u,
            context: crate::trie::format_context(&code.alphabet, &ctx),
        })?;
        let mut children = Vec::new();
        for c in 0..sigma {
            let (a, b) = (e.n_wc[c], e.n_w);
            if a == 0 {
                continue;
            }
            if a == b {
                children.push(c);
                continue;
            }
            // Present iff x ≥ l + s·(1 - p), i.e. x·Q·b ≥ L·b + S·(b - a).
            let split = &iv.low * b + &iv.size * (b - a);
            xq *= b;
            let is_present = xq >= split;
            if is_present {
                children.push(c);
            }
            iv.step(a, b, is_present);
        }
        pending.extend(children.into_iter().rev().map(|c| (u, c)));
        let Some((p, c)) = pending.pop() else { break };
        let v = parent.len();
        if v >= n {
            return Err(CoderError::NodeCount { expected: n, found: v + 1 + pending.len() });
        }
        parent.push(p);
        label.push(c);
        edges.push((p, v, c));
        u = v;
    }
    if parent.len() != n {
        return Err(CoderError::NodeCount { expected: n, found: parent.len() });
    }
    Ok(Trie::from_indexed_edges(code.alphabet.clone(), n, &edges)?)
}

fn context_of(parent: &[usize], label: &[usize], u: usize, k: usize) -> Vec<crate::trie::ContextSymbol> {
    use crate::trie::ContextSymbol;
    let mut ctx = vec![ContextSymbol::Pad; k];
    let mut v = u;
    for slot in ctx.iter_mut().rev() {
        if v == 0 {
            break;
        }
        *slot = ContextSymbol::Sym(label[v]);
        v = parent[v];
    }
    ctx
}

/// `(σ+1)·σ^k·⌈log2 n⌉`, the budget for storing the model.
pub fn model_size_bits(sigma: usize, k: usize, n: usize) -> BigUint {
    BigUint::from(sigma + 1) * BigUint::from(sigma).pow(k as u32) * BigUint::from(ceil_log2(n.max(1) as u64))
}
