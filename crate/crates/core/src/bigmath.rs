//! Exact integer helpers shared by the counting, entropy and coding modules.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `C(n, k)` as an exact big integer (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` in `u128`, or `None` on overflow.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) / (i + 1) stays integral at every step.
        let g = gcd(acc, i + 1);
        let (a, d) = (acc / g, (i + 1) / g);
        let m = (n as u128 - i) / d;
        acc = a.checked_mul(m)?;
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `log2(x)` for a positive big integer, accurate to double precision.
pub fn log2_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log2 of zero");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().expect("fits in u64").to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits");
    (top as f64).log2() + shift as f64
}

/// `⌈log2 x⌉` for `x ≥ 1`.
pub fn ceil_log2(x: u64) -> u64 {
    assert!(x >= 1, "ceil_log2 of zero");
    u64::from(64 - (x - 1).leading_zeros()) * u64::from(x > 1)
}

/// Exact `⌈log2 x⌉` for a positive big integer.
pub fn ceil_log2_big(x: &BigUint) -> u64 {
    assert!(!x.is_zero(), "ceil_log2 of zero");
    let one = BigUint::one();
    if *x == one {
        return 0;
    }
    (x - &one).bits()
}
