//! Bitvectors with rank and select.
//!
//! Positions and ranks are 1-based throughout, so `rank1(i)` counts the ones
//! among the first `i` bits and `select1(j)` is the position of the `j`-th one.
//! `rank1(0) = 0` is accepted as a convenience.

mod bitbuf;
mod boosted;
mod enumerative;
mod plain;

pub use bitbuf::BitBuf;
pub use boosted::{default_block_size, BoostedBitvector, SelectOverlay};
pub use enumerative::{code_width, decode_block, encode_block, EnumerativeBlock};
pub use plain::PlainBitvector;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuccinctError {
    #[error("position {i} outside 1..={len}")]
    Position { i: usize, len: usize },
    #[error("rank {j} outside 1..={ones}")]
    Rank { j: usize, ones: usize },
}

/// Read access shared by every bitvector in this module.
pub trait BitAccess {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn count_ones(&self) -> usize;

    /// Bit at 1-based position `i`.
    fn get(&self, i: usize) -> Result<bool, SuccinctError>;

    /// Ones among positions `1..=i`.
    fn rank1(&self, i: usize) -> Result<usize, SuccinctError>;

    /// Position of the `j`-th one.
    fn select1(&self, j: usize) -> Result<usize, SuccinctError>;

    /// Partial rank: `Some(rank1(i))` when bit `i` is set, `None` otherwise.
    fn prank(&self, i: usize) -> Result<Option<usize>, SuccinctError> {
        Ok(if self.get(i)? { Some(self.rank1(i)?) } else { None })
    }

    fn to_bits(&self) -> Vec<bool> {
        (1..=self.len()).map(|i| self.get(i).expect("in range")).collect()
    }
}

/// Full rank computed only through `select`, by binary search over the ones.
///
/// Returns the rank and the number of `select` probes spent, which never
/// exceeds `⌊log2 ones⌋ + 1`.
pub fn id_rank_by_binary_search<B: BitAccess + ?Sized>(v: &B, i: usize) -> Result<(usize, usize), SuccinctError> {
    if i > v.len() {
        return Err(SuccinctError::Position { i, len: v.len() });
    }
    let (mut lo, mut hi) = (1usize, v.count_ones());
    let (mut r, mut probes) = (0usize, 0usize);
    while lo <= hi {
        let j = lo + (hi - lo) / 2;
        probes += 1;
        let p = v.select1(j)?;
        match p.cmp(&i) {
            std::cmp::Ordering::Equal => return Ok((j, probes)),
            std::cmp::Ordering::Less => {
                r = j;
                lo = j + 1;
            }
            std::cmp::Ordering::Greater => hi = j - 1,
        }
    }
    Ok((r, probes))
}

fn check_position(i: usize, len: usize) -> Result<(), SuccinctError> {
    if i == 0 || i > len {
        Err(SuccinctError::Position { i, len })
    } else {
        Ok(())
    }
}

/// Position (0-based) of the `k`-th set bit (0-based) of `word`.
#[inline]
pub(crate) fn select_in_word(mut word: u64, k: u32) -> u32 {
    for _ in 0..k {
        word &= word - 1;
    }
    word.trailing_zeros()
}
