use super::{check_position, select_in_word, BitAccess, SuccinctError};

const WORDS_PER_SUPER: usize = 8;
const SELECT_SAMPLE: usize = 64;

/// Uncompressed bitvector with a two-level rank directory and sampled select.
///
/// Superblocks of 512 bits store absolute counts; each word stores its count
/// relative to its superblock. Every 64th one records the word holding it, so
/// `select1` starts from a nearby word and scans forward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainBitvector {
    len: usize,
    ones: usize,
    // One trailing zero word so that `rank1(len)` never reads past the end.
    words: Vec<u64>,
    supers: Vec<u64>,
    blocks: Vec<u16>,
    samples: Vec<u32>,
}

impl PlainBitvector {
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut words = vec![0u64; bits.len() / 64 + 1];
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            words[i / 64] |= 1 << (i % 64);
        }
        Self::build(words, bits.len())
    }

    /// Builds from LSB-first words; bits past `len` must be zero.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Option<Self> {
        if words.len() != len.div_ceil(64) {
            return None;
        }
        if !len.is_multiple_of(64) && words.last().is_some_and(|w| w >> (len % 64) != 0) {
            return None;
        }
        words.resize(len / 64 + 1, 0);
        Some(Self::build(words, len))
    }

    fn build(words: Vec<u64>, len: usize) -> Self {
        let mut supers = Vec::with_capacity(words.len() / WORDS_PER_SUPER + 1);
        let mut blocks = Vec::with_capacity(words.len());
        let mut samples = Vec::new();
        let mut total = 0usize;
        let mut in_super = 0u16;
        for (w, &word) in words.iter().enumerate() {
            if w % WORDS_PER_SUPER == 0 {
                supers.push(total as u64);
                in_super = 0;
            }
            blocks.push(in_super);
            let pop = word.count_ones() as usize;
            // Record this word for every sampled one it contains.
            while samples.len() * SELECT_SAMPLE < total + pop {
                samples.push(w as u32);
            }
            total += pop;
            in_super += pop as u16;
        }
        Self { len, ones: total, words, supers, blocks, samples }
    }

    /// LSB-first words covering exactly `len` bits.
    pub fn words(&self) -> &[u64] {
        &self.words[..self.len.div_ceil(64)]
    }

    /// Ones strictly before word `w`.
    #[inline]
    fn ones_before_word(&self, w: usize) -> usize {
        self.supers[w / WORDS_PER_SUPER] as usize + self.blocks[w] as usize
    }

    /// Directory space in bits, excluding the raw bits.
    pub fn overhead_bits(&self) -> usize {
        self.supers.len() * 64 + self.blocks.len() * 16 + self.samples.len() * 32
    }

    /// Position of the `j`-th zero.
    pub fn select0(&self, j: usize) -> Result<usize, SuccinctError> {
        let zeros = self.len - self.ones;
        if j == 0 || j > zeros {
            return Err(SuccinctError::Rank { j, ones: zeros });
        }
        // Binary search over words on the number of zeros before each word.
        let (mut lo, mut hi) = (0usize, self.len.div_ceil(64) - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if mid * 64 - self.ones_before_word(mid) < j {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let before = lo * 64 - self.ones_before_word(lo);
        let pos = select_in_word(!self.words[lo], (j - before - 1) as u32);
        Ok(lo * 64 + pos as usize + 1)
    }
}

impl BitAccess for PlainBitvector {
    fn len(&self) -> usize {
        self.len
    }

    fn count_ones(&self) -> usize {
        self.ones
    }

    fn get(&self, i: usize) -> Result<bool, SuccinctError> {
        check_position(i, self.len)?;
        let p = i - 1;
        Ok(self.words[p / 64] >> (p % 64) & 1 == 1)
    }

    fn rank1(&self, i: usize) -> Result<usize, SuccinctError> {
        if i > self.len {
            return Err(SuccinctError::Position { i, len: self.len });
        }
        let (w, r) = (i / 64, i % 64);
        let partial = if r == 0 { 0 } else { (self.words[w] << (64 - r)).count_ones() as usize };
        Ok(self.ones_before_word(w) + partial)
    }

    fn select1(&self, j: usize) -> Result<usize, SuccinctError> {
        if j == 0 || j > self.ones {
            return Err(SuccinctError::Rank { j, ones: self.ones });
        }
        let mut w = self.samples[(j - 1) / SELECT_SAMPLE] as usize;
        let mut left = j - self.ones_before_word(w);
        loop {
            let pop = self.words[w].count_ones() as usize;
            if left <= pop {
                break;
            }
            left -= pop;
            w += 1;
        }
        Ok(w * 64 + select_in_word(self.words[w], (left - 1) as u32) as usize + 1)
    }
}
