//! The `XBW1` index container.
//!
//! All integers are little-endian and fixed width:
//!
//! ```text
//! "XBW1"            magic
//! u32               version (1)
//! u64               n
//! u32               σ
//! u32 × σ           symbols, ascending
//! u8                symbol mode: 0 bytes, 1 UTF-8
//! u32               complemented symbol index, 0xFFFF_FFFF for none
//! u64               block size b
//! u64 × (σ + 1)     C array
//! per symbol c:
//!   u64             t, the number of blocks
//!   u64 × (t + 1)   pre_ranks (stored ones before each block, then total)
//!   (u32, u64) × t  per block: stored ones x, bit offset into the payload
//!   u64             payload length in bits
//!   u64 × ⌈len/64⌉  payload words, LSB first
//! u64               length of the select bitvector S in bits
//! u64 × ⌈len/64⌉    S words, LSB first
//! ```
//!
//! Loading rebuilds the index from the decoded trie and requires the result
//! to be identical, so a container either round-trips exactly or is rejected.

use thiserror::Error;

use super::{build_index, ComplementPolicy, IndexOptions, XbwtIndex};
use crate::succinct::{BitBuf, BoostedBitvector, PlainBitvector, SelectOverlay};
use crate::trie::{Alphabet, SymbolMode};

const MAGIC: &[u8; 4] = b"XBW1";
const VERSION: u32 = 1;
const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SerialError {
    #[error("not an XBW1 index (bad magic)")]
    Magic,
    #[error("unsupported index version {0}")]
    Version(u32),
    #[error("index truncated")]
    Truncated,
    #[error("trailing bytes after index")]
    Trailing,
    #[error("corrupt index: {0}")]
    Corrupt(String),
}

pub fn write_index(idx: &XbwtIndex) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    put_u64(&mut out, idx.n as u64);
    out.extend_from_slice(&(idx.sigma() as u32).to_le_bytes());
    for &s in idx.alphabet.symbols() {
        out.extend_from_slice(&s.to_le_bytes());
    }
    out.push(match idx.mode {
        SymbolMode::Bytes => 0,
        SymbolMode::Utf8 => 1,
    });
    out.extend_from_slice(&idx.complemented.map_or(NONE, |c| c as u32).to_le_bytes());
    put_u64(&mut out, idx.block as u64);
    for &c in &idx.c_array {
        put_u64(&mut out, c as u64);
    }
    for row in &idx.rows {
        put_u64(&mut out, row.blocks() as u64);
        for &p in row.pre_ranks() {
            put_u64(&mut out, p);
        }
        for i in 0..row.blocks() {
            out.extend_from_slice(&(row.stored_block_ones(i) as u32).to_le_bytes());
            put_u64(&mut out, row.bit_offsets()[i]);
        }
        put_u64(&mut out, row.payload().len() as u64);
        for &w in row.payload().words() {
            put_u64(&mut out, w);
        }
    }
    let s = idx.overlay.bitvector();
    put_u64(&mut out, crate::succinct::BitAccess::len(s) as u64);
    for &w in s.words() {
        put_u64(&mut out, w);
    }
    out
}

fn put_u64(out: &mut Vec<u8>, x: u64) {
    out.extend_from_slice(&x.to_le_bytes());
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8], SerialError> {
        let end = self.pos.checked_add(k).ok_or(SerialError::Truncated)?;
        let s = self.data.get(self.pos..end).ok_or(SerialError::Truncated)?;
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, SerialError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, SerialError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, SerialError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// A count that must fit in the remaining input at `unit` bytes per item.
    fn count(&mut self, unit: usize) -> Result<usize, SerialError> {
        let x = self.u64()?;
        let left = (self.data.len() - self.pos) as u64;
        if x.saturating_mul(unit as u64) > left {
            return Err(SerialError::Truncated);
        }
        Ok(x as usize)
    }

    fn words(&mut self, bits: usize) -> Result<Vec<u64>, SerialError> {
        (0..bits.div_ceil(64)).map(|_| self.u64()).collect()
    }
}

fn corrupt(msg: impl Into<String>) -> SerialError {
    SerialError::Corrupt(msg.into())
}

pub fn read_index(data: &[u8]) -> Result<XbwtIndex, SerialError> {
    let mut r = Reader { data, pos: 0 };
    if r.take(4).map_err(|_| SerialError::Magic)? != MAGIC {
        return Err(SerialError::Magic);
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(SerialError::Version(version));
    }
    let n = r.u64()? as usize;
    if n == 0 {
        return Err(corrupt("zero nodes"));
    }
    let sigma = r.u32()? as usize;
    if sigma.saturating_mul(4) > data.len() {
        return Err(SerialError::Truncated);
    }
    let symbols = (0..sigma).map(|_| r.u32()).collect::<Result<Vec<_>, _>>()?;
    if symbols.windows(2).any(|w| w[0] >= w[1]) {
        return Err(corrupt("symbols not strictly ascending"));
    }
    let alphabet = Alphabet::new(symbols).map_err(|e| corrupt(e.to_string()))?;
    let mode = match r.u8()? {
        0 => SymbolMode::Bytes,
        1 => SymbolMode::Utf8,
        m => return Err(corrupt(format!("unknown symbol mode {m}"))),
    };
    let complemented = match r.u32()? {
        NONE => None,
        c if (c as usize) < sigma => Some(c as usize),
        c => return Err(corrupt(format!("complemented symbol {c} out of range"))),
    };
    let block = r.u64()? as usize;
    if block == 0 {
        return Err(corrupt("zero block size"));
    }
    let c_array = (0..=sigma).map(|_| r.u64().map(|x| x as usize)).collect::<Result<Vec<_>, _>>()?;
    if c_array[0] != 1 || c_array.windows(2).any(|w| w[0] > w[1]) || c_array[sigma] != n {
        return Err(corrupt("C array inconsistent with n"));
    }
    let t_expected = n.div_ceil(block);
    let mut rows = Vec::with_capacity(sigma);
    for c in 0..sigma {
        let t = r.count(20)?;
        if t != t_expected {
            return Err(corrupt(format!("symbol {c}: {t} blocks, expected {t_expected}")));
        }
        let pre_ranks = (0..=t).map(|_| r.u64()).collect::<Result<Vec<_>, _>>()?;
        let mut offsets = Vec::with_capacity(t + 1);
        for i in 0..t {
            let x = r.u32()? as u64;
            offsets.push(r.u64()?);
            if pre_ranks[i + 1].checked_sub(pre_ranks[i]) != Some(x) {
                return Err(corrupt(format!("symbol {c}: block {i} count disagrees with pre_ranks")));
            }
        }
        let payload_len = r.count(0)?;
        offsets.push(payload_len as u64);
        let words = r.words(payload_len)?;
        let payload = BitBuf::from_words(words, payload_len).ok_or_else(|| corrupt("payload padding"))?;
        let row = BoostedBitvector::from_parts(n, block, complemented == Some(c), pre_ranks, offsets, payload)
            .ok_or_else(|| corrupt(format!("symbol {c}: invalid block directory")))?;
        if crate::succinct::BitAccess::count_ones(&row) != c_array[c + 1] - c_array[c] {
            return Err(corrupt(format!("symbol {c}: one count disagrees with C")));
        }
        rows.push(row);
    }
    let s_len = r.count(0)?;
    let s_words = r.words(s_len)?;
    let s = PlainBitvector::from_words(s_words, s_len).ok_or_else(|| corrupt("S padding"))?;
    if r.pos != data.len() {
        return Err(SerialError::Trailing);
    }
    let blocks: Vec<usize> = rows.iter().map(BoostedBitvector::blocks).collect();
    let overlay = SelectOverlay::from_bitvector(s, &blocks).ok_or_else(|| corrupt("select bitvector S"))?;
    if overlay != SelectOverlay::build(&super::block_counts(&rows)) {
        return Err(corrupt("select bitvector S disagrees with the blocks"));
    }
    let idx = XbwtIndex::from_parts(n, alphabet, mode, complemented, block, c_array, rows, overlay);
    let trie = idx.try_to_trie().map_err(|e| corrupt(format!("bitvectors do not describe a trie: {e}")))?;
    let policy = complemented.map_or(ComplementPolicy::Never, ComplementPolicy::Symbol);
    if build_index(&trie, IndexOptions { block_size: Some(block), complement: policy, mode }) != idx {
        return Err(corrupt("bitvectors are not in co-lexicographic order"));
    }
    Ok(idx)
}
