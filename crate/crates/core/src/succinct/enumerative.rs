//! Enumerative coding of fixed-weight blocks.
//!
//! A block of width `w` with `x` ones is identified by its index among the
//! `C(w, x)` blocks of the same weight, in lexicographic order (a `0` sorts
//! before a `1`). The index needs `⌈log2 C(w, x)⌉` bits, which is zero for
//! all-zero and all-one blocks.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::bigmath::{binomial, ceil_log2_big};

/// A coded block: width, weight and lexicographic index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerativeBlock {
    pub width: usize,
    pub ones: usize,
    pub offset: BigUint,
}

/// Bits needed to store the index of a `(width, ones)` block.
pub fn code_width(width: usize, ones: usize) -> usize {
    ceil_log2_big(&binomial(width as u64, ones as u64)) as usize
}

pub fn encode_block(bits: &[bool]) -> EnumerativeBlock {
    let w = bits.len();
    let x = bits.iter().filter(|&&b| b).count();
    if w <= 64 {
        return EnumerativeBlock { width: w, ones: x, offset: BigUint::from(encode_small(bits, x)) };
    }
    // Walk C(rem, r) down the Pascal triangle, where rem is the number of
    // positions after the current one and r the ones still to place.
    let mut offset = BigUint::zero();
    let mut r = x;
    let mut c = binomial((w - 1) as u64, r as u64);
    for (p, &bit) in bits.iter().enumerate() {
        if r == 0 {
            break;
        }
        let rem = w - 1 - p;
        if bit {
            offset += &c;
            // C(rem - 1, r - 1) = C(rem, r) * r / rem
            if rem > 0 {
                c *= r as u64;
                c /= rem as u64;
            }
            r -= 1;
        } else if rem > 0 {
            // C(rem - 1, r) = C(rem, r) * (rem - r) / rem
            c *= (rem - r) as u64;
            c /= rem as u64;
        }
    }
    EnumerativeBlock { width: w, ones: x, offset }
}

fn encode_small(bits: &[bool], x: usize) -> u128 {
    let w = bits.len();
    let mut offset = 0u128;
    let mut r = x as u128;
    let mut c = small_binomial(w.saturating_sub(1), x);
    for (p, &bit) in bits.iter().enumerate() {
        if r == 0 {
            break;
        }
        let rem = (w - 1 - p) as u128;
        if bit {
            offset += c;
            c = (c * r).checked_div(rem).unwrap_or(c);
            r -= 1;
        } else {
            c = (c * (rem - r)).checked_div(rem).unwrap_or(c);
        }
    }
    offset
}

fn small_binomial(n: usize, k: usize) -> u128 {
    crate::bigmath::binomial_u128(n as u64, k as u64).expect("width ≤ 64 fits in u128")
}

/// Inverse of [`encode_block`]; writes the block as LSB-first words.
pub fn decode_block_words(width: usize, ones: usize, offset: &BigUint, out: &mut Vec<u64>) {
    out.clear();
    out.resize(width.div_ceil(64), 0);
    if ones == width {
        for i in 0..width {
            out[i / 64] |= 1 << (i % 64);
        }
        return;
    }
    if ones == 0 {
        return;
    }
    if width <= 64 {
        let mut off = offset.to_u128().expect("small block offset");
        let mut r = ones as u128;
        let mut c = small_binomial(width - 1, ones);
        for p in 0..width {
            if r == 0 {
                break;
            }
            let rem = (width - 1 - p) as u128;
            if off >= c {
                off -= c;
                out[0] |= 1 << p;
                c = (c * r).checked_div(rem).unwrap_or(c);
                r -= 1;
            } else {
                c = (c * (rem - r)).checked_div(rem).unwrap_or(c);
            }
        }
        return;
    }
    let mut off = offset.clone();
    let mut r = ones;
    let mut c = binomial((width - 1) as u64, r as u64);
    for p in 0..width {
        if r == 0 {
            break;
        }
        let rem = width - 1 - p;
        if rem + 1 == r {
            // Every remaining position must hold a one.
            for q in p..width {
                out[q / 64] |= 1 << (q % 64);
            }
            break;
        }
        if off >= c {
            off -= &c;
            out[p / 64] |= 1 << (p % 64);
            if rem > 0 {
                c *= r as u64;
                c /= rem as u64;
            }
            r -= 1;
        } else if rem > 0 {
            c *= (rem - r) as u64;
            c /= rem as u64;
        }
    }
}

pub fn decode_block(block: &EnumerativeBlock) -> Vec<bool> {
    let mut words = Vec::new();
    decode_block_words(block.width, block.ones, &block.offset, &mut words);
    (0..block.width).map(|i| words[i / 64] >> (i % 64) & 1 == 1).collect()
}
