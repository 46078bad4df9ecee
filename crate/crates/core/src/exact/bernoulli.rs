use std::sync::Mutex;

use num_traits::{One, Zero};

use super::{binomial, ExactInteger, ExactRational, RationalPolynomial};

// B_0, B_1, ... filled on demand; B_1 = -1/2.
static CACHE: Mutex<Vec<ExactRational>> = Mutex::new(Vec::new());

/// The Bernoulli number `B_m = B_m(0)`, so `B_1 = -1/2`.
///
/// Values come from the convolution `sum_{i<=m} C(m+1, i) B_i = 0` and are
/// memoized process-wide.
pub fn bernoulli_number(m: u32) -> ExactRational {
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(ExactRational::one());
    }
    while cache.len() <= m as usize {
        let next = cache.len() as u32;
        let mut acc = ExactRational::zero();
        for (i, b) in cache.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            acc += b * ExactRational::from_integer(binomial(next + 1, i as u32));
        }
        let value = -acc / ExactRational::from_integer(ExactInteger::from(next + 1));
        cache.push(value);
    }
    cache[m as usize].clone()
}

/// Evaluates `B_q(t) = sum_i C(q, i) B_i t^(q-i)` exactly.
pub fn bernoulli_poly(q: u32, t: &ExactRational) -> ExactRational {
    // Horner over descending powers of t: coefficient of t^(q-i) is C(q,i) B_i.
    let mut acc = ExactRational::zero();
    for i in 0..=q {
        acc = acc * t + ExactRational::from_integer(binomial(q, i)) * bernoulli_number(i);
    }
    acc
}

/// `B_q(x)` as a polynomial in `x`.
pub fn bernoulli_polynomial(q: u32) -> RationalPolynomial {
    let coeffs = (0..=q)
        .map(|j| {
            // x^j carries C(q, q-j) B_(q-j)
            ExactRational::from_integer(binomial(q, q - j)) * bernoulli_number(q - j)
        })
        .collect();
    RationalPolynomial::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    /// Coefficients of z/(e^z - 1) by inverting the series (e^z - 1)/z.
    fn series_oracle(m: u32) -> Vec<ExactRational> {
        let len = m as usize + 1;
        let mut fact = vec![ExactInteger::one(); len + 2];
        for i in 1..fact.len() {
            fact[i] = &fact[i - 1] * ExactInteger::from(i);
        }
        // a_j = 1/(j+1)!
        let a: Vec<ExactRational> = (0..len)
            .map(|j| ExactRational::new(ExactInteger::one(), fact[j + 1].clone()))
            .collect();
        let mut c = vec![ExactRational::one()];
        for n in 1..len {
            let mut s = ExactRational::zero();
            for j in 1..=n {
                s += &a[j] * &c[n - j];
            }
            c.push(-s);
        }
        c.into_iter()
            .enumerate()
            .map(|(n, cn)| cn * ExactRational::from_integer(fact[n].clone()))
            .collect()
    }

    #[test]
    fn leading_bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), q(1, 1));
        assert_eq!(bernoulli_number(1), q(-1, 2));
        assert_eq!(bernoulli_number(12), q(-691, 2730));
    }

    #[test]
    fn recurrence_matches_series_inversion() {
        let oracle = series_oracle(40);
        for (m, expected) in oracle.iter().enumerate() {
            assert_eq!(&bernoulli_number(m as u32), expected, "B_{m}");
        }
    }

    #[test]
    fn odd_bernoulli_numbers_vanish() {
        for k in 1..30 {
            assert!(bernoulli_number(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn polynomial_values() {
        assert_eq!(bernoulli_poly(1, &q(1, 1)), q(1, 2));
        assert_eq!(bernoulli_poly(3, &q(1, 1)), q(0, 1));
        // B_2(t) = t^2 - t + 1/6
        let t = q(1, 2);
        let expanded = &t * &t - &t + q(1, 6);
        assert_eq!(bernoulli_poly(2, &t), expanded);
        assert_eq!(bernoulli_poly(2, &t), q(-1, 12));
    }

    #[test]
    fn polynomial_form_agrees_with_pointwise_evaluation() {
        for deg in 0..15 {
            let p = bernoulli_polynomial(deg);
            assert_eq!(p.degree(), Some(deg as usize));
            for t in [q(0, 1), q(3, 7), q(-5, 2), q(11, 1)] {
                assert_eq!(p.eval(&t), bernoulli_poly(deg, &t));
            }
        }
    }

    #[test]
    fn odd_polynomials_vanish_at_zero_and_one() {
        for k in 1..12 {
            assert!(bernoulli_poly(2 * k + 1, &q(0, 1)).is_zero());
            assert!(bernoulli_poly(2 * k + 1, &q(1, 1)).is_zero());
        }
    }

    proptest::proptest! {
        #[test]
        fn reflection(deg in 0u32..=20, n in -40i64..40, d in 1i64..12) {
            let t = q(n, d);
            let lhs = bernoulli_poly(deg, &(q(1, 1) - &t));
            let sign = if deg % 2 == 0 { q(1, 1) } else { q(-1, 1) };
            proptest::prop_assert_eq!(lhs, sign * bernoulli_poly(deg, &t));
        }

        #[test]
        fn duplication(deg in 0u32..=20, n in -40i64..40, d in 1i64..12) {
            let t = q(n, d);
            let lhs = bernoulli_poly(deg, &t) + bernoulli_poly(deg, &(&t + q(1, 2)));
            let scale = ExactRational::new(ExactInteger::one(), ExactInteger::from(2).pow(deg)) * q(2, 1);
            let rhs = scale * bernoulli_poly(deg, &(&t * q(2, 1)));
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cache_is_safe_across_threads() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || bernoulli_number(30 + i)))
            .collect();
        let values: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        let oracle = series_oracle(37);
        for (i, v) in values.iter().enumerate() {
            assert_eq!(v, &oracle[30 + i]);
        }
    }
}
