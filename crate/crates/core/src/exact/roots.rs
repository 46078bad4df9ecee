use num_traits::{One, Pow, Signed};

use super::{precondition, ExactError, ExactInteger};
use crate::primes::primes_up_to;

/// `floor(m^(1/n))` for `m >= 1`, by bisection inside the bracket
/// `[2^((bits-1)/n), 2^ceil(bits/n)]`.
pub fn nth_root_floor(m: &ExactInteger, n: u32) -> Result<ExactInteger, ExactError> {
    if !m.is_positive() {
        return Err(precondition("nth_root_floor", "m must be positive"));
    }
    if n == 0 {
        return Err(precondition("nth_root_floor", "n must be positive"));
    }
    if n == 1 {
        return Ok(m.clone());
    }
    let bits = m.bits();
    let n64 = u64::from(n);
    let mut lo = ExactInteger::one() << ((bits - 1) / n64);
    let mut hi = ExactInteger::one() << bits.div_ceil(n64);
    // lo^n <= m < hi^n
    while &hi - &lo > ExactInteger::one() {
        let mid: ExactInteger = (&lo + &hi) >> 1;
        if Pow::pow(&mid, n) <= *m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Returns `y` with `y^n = m` when `m` is an exact `n`-th power.
pub fn is_nth_power(m: &ExactInteger, n: u32) -> Result<Option<ExactInteger>, ExactError> {
    if !m.is_positive() {
        return Err(precondition("is_nth_power", "m must be positive"));
    }
    if n < 2 {
        return Err(precondition("is_nth_power", "n must be at least 2"));
    }
    let root = nth_root_floor(m, n)?;
    Ok((Pow::pow(&root, n) == *m).then_some(root))
}

/// All `(y, n)` with `y^n = m`, `y >= 2` and `n_min <= n <= n_max`, sorted by `n`.
///
/// Only prime exponents are tried: peeling prime roots until none remains
/// gives `m = b^e` with `e` maximal, and every representation is then
/// `b^(e/d)` for a divisor `d` of `e`. Exponents above `log2 m` cannot occur,
/// so `n_max` may exceed the bit length.
pub fn perfect_power_witnesses(
    m: &ExactInteger,
    n_min: u32,
    n_max: u32,
) -> Result<Vec<(ExactInteger, u32)>, ExactError> {
    if *m < ExactInteger::from(2) {
        return Err(precondition("perfect_power_witnesses", "m must be at least 2"));
    }
    if n_min < 2 || n_min > n_max {
        return Err(precondition(
            "perfect_power_witnesses",
            format!("need 2 <= n_min <= n_max, got [{n_min}, {n_max}]"),
        ));
    }
    let mut base = m.clone();
    let mut exponent: u64 = 1;
    'peel: loop {
        for p in primes_up_to(base.bits()) {
            if let Some(root) = is_nth_power(&base, p as u32)? {
                base = root;
                exponent *= p;
                continue 'peel;
            }
        }
        break;
    }
    let mut out = Vec::new();
    for d in 2..=exponent {
        if exponent % d != 0 || d < u64::from(n_min) || d > u64::from(n_max) {
            continue;
        }
        out.push((Pow::pow(&base, (exponent / d) as u32), d as u32));
    }
    Ok(out)
}
