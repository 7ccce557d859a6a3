use std::sync::Mutex;

use num_bigint::BigUint;

use super::enumerative::{code_width, decode_block_words, encode_block};
use super::{check_position, select_in_word, BitAccess, BitBuf, PlainBitvector, SuccinctError};

/// Block size used when none is given: `max(8, ⌈σ·log2²n⌉)`, at most 4096.
pub fn default_block_size(n: usize, sigma: usize) -> usize {
    let lg = (n.max(1) as f64).log2();
    let b = (sigma.max(1) as f64 * lg * lg).ceil() as usize;
    b.clamp(8, 4096)
}

/// A bitvector split into fixed-size blocks, each stored as its enumerative
/// index in `⌈log2 C(b', x)⌉` bits.
///
/// `pre_ranks[i]` counts the stored ones before block `i` and `bit_offsets[i]`
/// is where block `i` starts in the payload, so both have one entry per block
/// plus a final total. With `complemented` set the blocks hold the negated
/// bits; every query still answers for the original bitvector.
pub struct BoostedBitvector {
    len: usize,
    block: usize,
    complemented: bool,
    pre_ranks: Vec<u64>,
    bit_offsets: Vec<u64>,
    payload: BitBuf,
    // Last block decoded, shared by consecutive queries on nearby positions.
    cache: Mutex<Option<(usize, Vec<u64>)>>,
}

impl Clone for BoostedBitvector {
    fn clone(&self) -> Self {
        Self {
            len: self.len,
            block: self.block,
            complemented: self.complemented,
            pre_ranks: self.pre_ranks.clone(),
            bit_offsets: self.bit_offsets.clone(),
            payload: self.payload.clone(),
            cache: Mutex::new(None),
        }
    }
}

impl PartialEq for BoostedBitvector {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len
            && self.block == other.block
            && self.complemented == other.complemented
            && self.pre_ranks == other.pre_ranks
            && self.bit_offsets == other.bit_offsets
            && self.payload == other.payload
    }
}

impl Eq for BoostedBitvector {}

impl std::fmt::Debug for BoostedBitvector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoostedBitvector")
            .field("len", &self.len)
            .field("block", &self.block)
            .field("complemented", &self.complemented)
            .field("ones", &self.count_ones())
            .field("payload_bits", &self.payload.len())
            .finish()
    }
}

impl BoostedBitvector {
    pub fn build(bits: &[bool], block: usize) -> Self {
        Self::build_with(bits, block, false)
    }

    /// Builds with the stored blocks optionally holding the complement of `bits`.
    pub fn build_with(bits: &[bool], block: usize, complemented: bool) -> Self {
        assert!(block >= 1, "block size must be positive");
        let t = bits.len().div_ceil(block);
        let mut pre_ranks = Vec::with_capacity(t + 1);
        let mut bit_offsets = Vec::with_capacity(t + 1);
        let mut payload = BitBuf::new();
        let mut ones = 0u64;
        let mut stored = Vec::with_capacity(block);
        for chunk in bits.chunks(block) {
            pre_ranks.push(ones);
            bit_offsets.push(payload.len() as u64);
            stored.clear();
            stored.extend(chunk.iter().map(|&b| b != complemented));
            let code = encode_block(&stored);
            let width = code_width(code.width, code.ones);
            payload.push_limbs(&code.offset.to_u64_digits(), width);
            ones += code.ones as u64;
        }
        pre_ranks.push(ones);
        bit_offsets.push(payload.len() as u64);
        Self { len: bits.len(), block, complemented, pre_ranks, bit_offsets, payload, cache: Mutex::new(None) }
    }

    /// Reassembles a bitvector from its stored parts, checking every block.
    pub fn from_parts(
        len: usize,
        block: usize,
        complemented: bool,
        pre_ranks: Vec<u64>,
        bit_offsets: Vec<u64>,
        payload: BitBuf,
    ) -> Option<Self> {
        if block == 0 {
            return None;
        }
        let t = len.div_ceil(block);
        if pre_ranks.len() != t + 1 || bit_offsets.len() != t + 1 || pre_ranks[0] != 0 || bit_offsets[0] != 0 {
            return None;
        }
        if bit_offsets[t] != payload.len() as u64 {
            return None;
        }
        let v = Self { len, block, complemented, pre_ranks, bit_offsets, payload, cache: Mutex::new(None) };
        let mut words = Vec::new();
        for i in 0..t {
            let width = v.block_width(i);
            let (lo, hi) = (v.pre_ranks[i], v.pre_ranks[i + 1]);
            let (so, eo) = (v.bit_offsets[i], v.bit_offsets[i + 1]);
            if hi < lo || hi - lo > width as u64 || eo < so {
                return None;
            }
            let x = (hi - lo) as usize;
            if (eo - so) as usize != code_width(width, x) {
                return None;
            }
            let offset = BigUint::from_slice(&to_u32_digits(&v.payload.get_limbs(so as usize, (eo - so) as usize)));
            if offset >= crate::bigmath::binomial(width as u64, x as u64) {
                return None;
            }
            decode_block_words(width, x, &offset, &mut words);
            if words.iter().map(|w| w.count_ones() as usize).sum::<usize>() != x {
                return None;
            }
        }
        Some(v)
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    /// Number of blocks `t`.
    pub fn blocks(&self) -> usize {
        self.pre_ranks.len() - 1
    }

    pub fn is_complemented(&self) -> bool {
        self.complemented
    }

    pub fn pre_ranks(&self) -> &[u64] {
        &self.pre_ranks
    }

    pub fn bit_offsets(&self) -> &[u64] {
        &self.bit_offsets
    }

    pub fn payload(&self) -> &BitBuf {
        &self.payload
    }

    /// Bits spent on block indexes.
    pub fn payload_bits(&self) -> usize {
        self.payload.len()
    }

    /// Bits spent on `pre_ranks` and block pointers, stored as plain words.
    pub fn overhead_bits(&self) -> usize {
        (self.pre_ranks.len() + self.bit_offsets.len()) * 64
    }

    /// Width `b'` of block `i` (the last block may be short).
    pub fn block_width(&self, i: usize) -> usize {
        self.block.min(self.len - i * self.block)
    }

    /// Stored ones in block `i`.
    pub fn stored_block_ones(&self, i: usize) -> usize {
        (self.pre_ranks[i + 1] - self.pre_ranks[i]) as usize
    }

    /// Ones of the original bitvector in block `i`.
    pub fn block_ones(&self, i: usize) -> usize {
        let x = self.stored_block_ones(i);
        if self.complemented {
            self.block_width(i) - x
        } else {
            x
        }
    }

    /// Blocks whose stored index takes at least one bit.
    pub fn nonempty_blocks(&self) -> usize {
        (0..self.blocks()).filter(|&i| self.stored_block_ones(i) > 0).count()
    }

    /// Original ones before block `i`.
    fn ones_before_block(&self, i: usize) -> usize {
        let stored = self.pre_ranks[i] as usize;
        if self.complemented {
            (i * self.block).min(self.len) - stored
        } else {
            stored
        }
    }

    /// Runs `f` on the original bits of block `i` as LSB-first words.
    fn with_block<R>(&self, i: usize, f: impl FnOnce(&[u64]) -> R) -> R {
        let mut guard = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        if let Some((cached, words)) = guard.as_ref() {
            if *cached == i {
                return f(words);
            }
        }
        let width = self.block_width(i);
        let (so, eo) = (self.bit_offsets[i] as usize, self.bit_offsets[i + 1] as usize);
        let offset = BigUint::from_slice(&to_u32_digits(&self.payload.get_limbs(so, eo - so)));
        let mut words = guard.take().map(|(_, w)| w).unwrap_or_default();
        decode_block_words(width, self.stored_block_ones(i), &offset, &mut words);
        if self.complemented {
            for (k, w) in words.iter_mut().enumerate() {
                let valid = (width - k * 64).min(64);
                *w = !*w & if valid == 64 { u64::MAX } else { (1u64 << valid) - 1 };
            }
        }
        let out = f(&words);
        *guard = Some((i, words));
        out
    }

    /// Position (1-based, global) of the `j`-th original one inside block `i`.
    pub fn select_in_block(&self, i: usize, j: usize) -> Result<usize, SuccinctError> {
        let x = self.block_ones(i);
        if j == 0 || j > x {
            return Err(SuccinctError::Rank { j, ones: x });
        }
        let p = self.with_block(i, |words| {
            let mut left = j;
            for (k, &w) in words.iter().enumerate() {
                let pop = w.count_ones() as usize;
                if left <= pop {
                    return k * 64 + select_in_word(w, (left - 1) as u32) as usize;
                }
                left -= pop;
            }
            unreachable!("block holds {x} ones")
        });
        Ok(i * self.block + p + 1)
    }

    /// Original bits, decoded block by block.
    pub fn decode_all(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.len);
        for i in 0..self.blocks() {
            let width = self.block_width(i);
            self.with_block(i, |words| out.extend((0..width).map(|p| words[p / 64] >> (p % 64) & 1 == 1)));
        }
        out
    }
}

fn to_u32_digits(limbs: &[u64]) -> Vec<u32> {
    limbs.iter().flat_map(|&l| [l as u32, (l >> 32) as u32]).collect()
}

impl BitAccess for BoostedBitvector {
    fn len(&self) -> usize {
        self.len
    }

    fn count_ones(&self) -> usize {
        self.ones_before_block(self.blocks())
    }

    fn get(&self, i: usize) -> Result<bool, SuccinctError> {
        check_position(i, self.len)?;
        let p = i - 1;
        let (blk, off) = (p / self.block, p % self.block);
        let x = self.stored_block_ones(blk);
        if x == 0 || x == self.block_width(blk) {
            return Ok((x > 0) != self.complemented);
        }
        Ok(self.with_block(blk, |w| w[off / 64] >> (off % 64) & 1 == 1))
    }

    fn rank1(&self, i: usize) -> Result<usize, SuccinctError> {
        if i > self.len {
            return Err(SuccinctError::Position { i, len: self.len });
        }
        let (blk, rem) = (i / self.block, i % self.block);
        let before = self.ones_before_block(blk);
        if rem == 0 {
            return Ok(before);
        }
        let x = self.block_ones(blk);
        if x == 0 || x == self.block_width(blk) {
            return Ok(before + if x == 0 { 0 } else { rem });
        }
        let inner = self.with_block(blk, |words| {
            let full = rem / 64;
            let mut c: usize = words[..full].iter().map(|w| w.count_ones() as usize).sum();
            if rem % 64 != 0 {
                c += (words[full] << (64 - rem % 64)).count_ones() as usize;
            }
            c
        });
        Ok(before + inner)
    }

    fn select1(&self, j: usize) -> Result<usize, SuccinctError> {
        let ones = self.count_ones();
        if j == 0 || j > ones {
            return Err(SuccinctError::Rank { j, ones });
        }
        // Last block with fewer than j ones before it.
        let (mut lo, mut hi) = (0usize, self.blocks() - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.ones_before_block(mid) < j {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        self.select_in_block(lo, j - self.ones_before_block(lo))
    }
}

/// Select over a family of blocked bitvectors through one unary bitvector `S`.
///
/// For bitvector `c` with per-block one counts `x_1..x_t`, `S` holds
/// `1^{x_1} 0 1^{x_2} 0 … 1^{x_t} 0`; the segments of all bitvectors are
/// concatenated. The `j`-th one of bitvector `c` is the `g`-th one of `S`
/// with `g = ones_before[c] + j`, and the zeros preceding it identify its block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectOverlay {
    s: PlainBitvector,
    ones_before: Vec<usize>,
    blocks_before: Vec<usize>,
}

impl SelectOverlay {
    /// `counts[c][i]` is the number of ones in block `i` of bitvector `c`.
    pub fn build(counts: &[Vec<usize>]) -> Self {
        let mut bits = Vec::new();
        let mut ones_before = vec![0];
        let mut blocks_before = vec![0];
        for row in counts {
            for &x in row {
                bits.extend(std::iter::repeat_n(true, x));
                bits.push(false);
            }
            ones_before.push(ones_before.last().unwrap() + row.iter().sum::<usize>());
            blocks_before.push(blocks_before.last().unwrap() + row.len());
        }
        Self { s: PlainBitvector::from_bits(&bits), ones_before, blocks_before }
    }

    /// Rebuilds the per-bitvector offsets from a stored `S`.
    pub fn from_bitvector(s: PlainBitvector, blocks_per_row: &[usize]) -> Option<Self> {
        let mut ones_before = vec![0];
        let mut blocks_before = vec![0];
        for &t in blocks_per_row {
            let end_blocks = blocks_before.last().unwrap() + t;
            let ones = if end_blocks == 0 { 0 } else { s.select0(end_blocks).ok()? - end_blocks };
            ones_before.push(ones);
            blocks_before.push(end_blocks);
        }
        let total_blocks = *blocks_before.last().unwrap();
        if s.len() - s.count_ones() != total_blocks || s.len() != total_blocks + ones_before.last().unwrap() {
            return None;
        }
        Some(Self { s, ones_before, blocks_before })
    }

    pub fn bitvector(&self) -> &PlainBitvector {
        &self.s
    }

    pub fn rows(&self) -> usize {
        self.ones_before.len() - 1
    }

    /// Ones of bitvector `c`.
    pub fn ones(&self, c: usize) -> usize {
        self.ones_before[c + 1] - self.ones_before[c]
    }

    pub fn size_bits(&self) -> usize {
        self.s.len() + self.s.overhead_bits()
    }

    /// Block holding the `j`-th one of bitvector `c`, with `j`'s rank inside it.
    pub fn locate(&self, c: usize, j: usize) -> Result<(usize, usize), SuccinctError> {
        let ones = self.ones(c);
        if j == 0 || j > ones {
            return Err(SuccinctError::Rank { j, ones });
        }
        let g = self.ones_before[c] + j;
        let p = self.s.select1(g)?;
        let block = (p - g) - self.blocks_before[c];
        // Ones of the same block precede p back to the previous separator.
        let start = if p - g == 0 { 0 } else { self.s.select0(p - g)? };
        Ok((block, p - start))
    }

    /// `select1(j)` on bitvector `c` of `rows`.
    pub fn select(&self, rows: &[BoostedBitvector], c: usize, j: usize) -> Result<usize, SuccinctError> {
        let (block, inner) = self.locate(c, j)?;
        rows[c].select_in_block(block, inner)
    }
}
