//! The `TAC1` container for compressed tries.
//!
//! Every integer is an unsigned LEB128 varint.
//!
//! ```text
//! "TAC1"
//! k, n, σ
//! σ symbols, ascending: the first as is, then differences to the previous
//! ℓ                       number of contexts
//! ℓ × context record, contexts in ascending order:
//!     shared              length of the prefix shared with the previous context
//!     k - shared symbols  0 for '#', c + 1 for alphabet index c
//!     n_w
//!     σ × n_{w,c}
//! d                       number of code bits
//! ⌈d/8⌉ payload bytes     code bits, most significant first, zero-padded
//! ```

use thiserror::Error;

use super::{CoderError, TrieCode};
use crate::trie::{Alphabet, Context, ContextCounts, ContextStats, ContextSymbol};

const MAGIC: &[u8; 4] = b"TAC1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContainerError {
    #[error("not a TAC1 container (bad magic)")]
    Magic,
    #[error("container truncated")]
    Truncated,
    #[error("varint overflows 64 bits")]
    Varint,
    #[error("trailing bytes after payload")]
    Trailing,
    #[error("corrupt container: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Coder(#[from] CoderError),
}

fn put(out: &mut Vec<u8>, mut x: u64) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn varint(&mut self) -> Result<u64, ContainerError> {
        let mut x = 0u64;
        for shift in (0..64).step_by(7) {
            let byte = *self.data.get(self.pos).ok_or(ContainerError::Truncated)?;
            self.pos += 1;
            let bits = u64::from(byte & 0x7f);
            if shift == 63 && bits > 1 {
                return Err(ContainerError::Varint);
            }
            x |= bits << shift;
            if byte & 0x80 == 0 {
                return Ok(x);
            }
        }
        Err(ContainerError::Varint)
    }

    fn usize(&mut self) -> Result<usize, ContainerError> {
        usize::try_from(self.varint()?).map_err(|_| ContainerError::Varint)
    }

    /// A count of items that each take at least one byte.
    fn count(&mut self) -> Result<usize, ContainerError> {
        let x = self.usize()?;
        if x > self.data.len() - self.pos {
            return Err(ContainerError::Truncated);
        }
        Ok(x)
    }
}

fn corrupt(msg: impl Into<String>) -> ContainerError {
    ContainerError::Corrupt(msg.into())
}

pub fn write_container(code: &TrieCode) -> Vec<u8> {
    let mut out = MAGIC.to_vec();
    put(&mut out, code.k as u64);
    put(&mut out, code.n as u64);
    put(&mut out, code.alphabet.len() as u64);
    let mut prev = 0u32;
    for (i, &s) in code.alphabet.symbols().iter().enumerate() {
        put(&mut out, u64::from(if i == 0 { s } else { s - prev }));
        prev = s;
    }
    put(&mut out, code.model.len() as u64);
    let mut last: Option<&Context> = None;
    for (ctx, counts) in code.model.iter() {
        let shared = last.map_or(0, |p| p.iter().zip(ctx).take_while(|(a, b)| a == b).count());
        put(&mut out, shared as u64);
        for s in &ctx[shared..] {
            put(
                &mut out,
                match s {
                    ContextSymbol::Pad => 0,
                    ContextSymbol::Sym(c) => *c as u64 + 1,
                },
            );
        }
        put(&mut out, counts.n_w);
        for &x in &counts.n_wc {
            put(&mut out, x);
        }
        last = Some(ctx);
    }
    put(&mut out, code.d);
    out.extend(code.payload_bytes());
    out
}

pub fn read_container(data: &[u8]) -> Result<TrieCode, ContainerError> {
    if data.get(..4) != Some(MAGIC.as_slice()) {
        return Err(ContainerError::Magic);
    }
    let mut r = Reader { data, pos: 4 };
    let k = r.usize()?;
    let n = r.usize()?;
    if n == 0 {
        return Err(corrupt("zero nodes"));
    }
    let sigma = r.count()?;
    let mut symbols = Vec::with_capacity(sigma);
    for i in 0..sigma {
        let v = r.varint()?;
        let s = if i == 0 { v } else { u64::from(symbols[i - 1]) + v };
        if i > 0 && v == 0 {
            return Err(corrupt("symbols must be strictly ascending"));
        }
        symbols.push(u32::try_from(s).map_err(|_| corrupt("symbol exceeds 32 bits"))?);
    }
    let alphabet = Alphabet::new(symbols).map_err(|e| corrupt(e.to_string()))?;
    let contexts = r.count()?;
    if contexts > n {
        return Err(corrupt(format!("{contexts} contexts for {n} nodes")));
    }
    let mut entries: Vec<(Context, ContextCounts)> = Vec::with_capacity(contexts);
    for i in 0..contexts {
        let shared = r.usize()?;
        let prev: &[ContextSymbol] = entries.last().map_or(&[], |e: &(Context, ContextCounts)| &e.0);
        if shared > k || (i == 0 && shared != 0) || shared > prev.len() {
            return Err(corrupt(format!("context {i}: bad shared prefix {shared}")));
        }
        let mut ctx: Context = prev[..shared].to_vec();
        for _ in shared..k {
            let s = r.usize()?;
            ctx.push(match s {
                0 => ContextSymbol::Pad,
                s if s <= sigma => ContextSymbol::Sym(s - 1),
                s => return Err(corrupt(format!("context {i}: symbol {s} out of range"))),
            });
        }
        if i > 0 && ctx.as_slice() <= prev {
            return Err(corrupt(format!("context {i}: contexts not strictly ascending")));
        }
        let n_w = r.varint()?;
        let n_wc = (0..sigma).map(|_| r.varint()).collect::<Result<Vec<_>, _>>()?;
        entries.push((ctx, ContextCounts { n_w, n_wc }));
    }
    let model = ContextStats::from_parts(k, sigma, n as u64, entries).map_err(CoderError::from)?;
    let d = r.varint()?;
    if d == 0 {
        return Err(corrupt("zero code bits"));
    }
    let len = usize::try_from(d.div_ceil(8)).map_err(|_| ContainerError::Truncated)?;
    let payload = data.get(r.pos..).ok_or(ContainerError::Truncated)?;
    if payload.len() < len {
        return Err(ContainerError::Truncated);
    }
    if payload.len() > len {
        return Err(ContainerError::Trailing);
    }
    if d % 8 != 0 && payload[len - 1] & ((1u8 << (8 - d % 8)) - 1) != 0 {
        return Err(corrupt("nonzero padding bits"));
    }
    let value = TrieCode::value_from_payload(payload, d)?;
    Ok(TrieCode { k, n, alphabet, model, d, value })
}
