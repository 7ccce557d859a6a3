/// Append-only packed bit buffer, LSB-first within each word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitBuf {
    words: Vec<u64>,
    len: usize,
}

impl BitBuf {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Option<Self> {
        if words.len() != len.div_ceil(64) {
            return None;
        }
        if !len.is_multiple_of(64) && words.last().is_some_and(|w| w >> (len % 64) != 0) {
            return None;
        }
        Some(Self { words, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Appends the low `width` bits of `value` (`width ≤ 64`).
    pub fn push(&mut self, value: u64, width: usize) {
        debug_assert!(width <= 64);
        if width == 0 {
            return;
        }
        let value = if width == 64 { value } else { value & ((1u64 << width) - 1) };
        let shift = self.len % 64;
        if shift == 0 {
            self.words.push(value);
        } else {
            *self.words.last_mut().expect("partial word") |= value << shift;
            if shift + width > 64 {
                self.words.push(value >> (64 - shift));
            }
        }
        self.len += width;
    }

    /// Reads `width ≤ 64` bits starting at 0-based bit `pos`.
    pub fn get(&self, pos: usize, width: usize) -> u64 {
        debug_assert!(width <= 64 && pos + width <= self.len);
        if width == 0 {
            return 0;
        }
        let (w, shift) = (pos / 64, pos % 64);
        let mut value = self.words[w] >> shift;
        if shift + width > 64 {
            value |= self.words[w + 1] << (64 - shift);
        }
        if width == 64 {
            value
        } else {
            value & ((1u64 << width) - 1)
        }
    }

    /// Appends a `width`-bit integer given as little-endian 64-bit limbs.
    pub fn push_limbs(&mut self, limbs: &[u64], width: usize) {
        let mut left = width;
        for i in 0.. {
            if left == 0 {
                break;
            }
            let take = left.min(64);
            self.push(limbs.get(i).copied().unwrap_or(0), take);
            left -= take;
        }
    }

    /// Reads a `width`-bit integer as little-endian 64-bit limbs.
    pub fn get_limbs(&self, pos: usize, width: usize) -> Vec<u64> {
        (0..width.div_ceil(64))
            .map(|i| {
                let start = i * 64;
                self.get(pos + start, (width - start).min(64))
            })
            .collect()
    }
}
