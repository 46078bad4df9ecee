use crate::exact::power_sum_t;
use crate::primes::{pow_mod, primes_up_to};
use crate::valuation::vp;

/// `T_k(x) mod m` for any `m >= 1`.
pub fn t_mod(x: u64, k: u64, m: u64) -> u64 {
    let mut sum = 0u128;
    for b in x + 1..=2 * x {
        sum += pow_mod(b % m, k, m) as u128;
    }
    (sum % m as u128) as u64
}

/// Smallest prime `p <= prime_limit` dividing `T_k(x)`, with `v_p(T_k(x))`.
///
/// If `T_k(x) = y^n` and `p <= y` then `n` divides that valuation.
pub fn small_prime_exponent_cap(x: u64, k: u64, prime_limit: u64) -> Option<(u64, u32)> {
    small_prime_exponent_cap_in(x, k, &primes_up_to(prime_limit))
}

/// Same, scanning a precomputed ascending prime list.
pub fn small_prime_exponent_cap_in(x: u64, k: u64, primes: &[u64]) -> Option<(u64, u32)> {
    assert!(x >= 1 && k >= 1, "small_prime_exponent_cap needs x, k >= 1");
    let p = primes.iter().copied().find(|&p| t_mod(x, k, p) == 0)?;
    Some((p, valuation(x, k, p)))
}

fn valuation(x: u64, k: u64, p: u64) -> u32 {
    // Largest power of p that fits in a u64.
    let mut m = p;
    while let Some(next) = m.checked_mul(p) {
        m = next;
    }
    let mut r = t_mod(x, k, m);
    if r != 0 {
        let mut v = 0;
        while r % p == 0 {
            r /= p;
            v += 1;
        }
        return v;
    }
    let k = u32::try_from(k).expect("exponent too large for exact fallback");
    vp(&power_sum_t(k, x).expect("x, k >= 1"), p).expect("T_k(x) > 0 and p prime")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn examples() {
        assert_eq!(small_prime_exponent_cap(2, 1, 100), Some((7, 1)));
        assert_eq!(small_prime_exponent_cap(4, 2, 100), Some((2, 1)));
        assert_eq!(small_prime_exponent_cap(2, 2, 100), Some((5, 2)));
        // T_2(3) = 77: no prime factor up to 5
        assert_eq!(small_prime_exponent_cap(3, 2, 5), None);
    }

    #[test]
    fn matches_exact_valuation() {
        let primes = primes_up_to(200);
        for x in 1..=13u64 {
            for k in 1..=60u64 {
                let t = power_sum_t(k as u32, x).unwrap();
                let expected = primes.iter().copied().find(|&p| (&t % p).to_u64() == Some(0));
                let got = small_prime_exponent_cap_in(x, k, &primes);
                assert_eq!(got.map(|g| g.0), expected, "x={x} k={k}");
                if let Some((p, v)) = got {
                    assert_eq!(v, vp(&t, p).unwrap(), "x={x} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn t_mod_matches_exact() {
        for x in 1..=13u64 {
            for k in [1u64, 2, 7, 40] {
                let t = power_sum_t(k as u32, x).unwrap();
                for m in [1u64, 2, 97, 1 << 40, u64::MAX] {
                    assert_eq!(Some(t_mod(x, k, m)), (&t % m).to_u64(), "x={x} k={k} m={m}");
                }
            }
        }
    }
}
