//! Exact integer and rational arithmetic: Bernoulli numbers and polynomials,
//! the power sums `S_k` and `T_k`, and exact integer roots.
//!
//! Integers and fractions are `num-bigint`/`num-rational` values. `BigRational`
//! is always kept in lowest terms with a positive denominator, and `BigInt`
//! has a single canonical zero, so both satisfy the invariants the rest of
//! the crate relies on without any wrapping.

mod bernoulli;
mod poly;
mod power_sum;
mod roots;

pub use bernoulli::{bernoulli_number, bernoulli_poly, bernoulli_polynomial};
pub use poly::RationalPolynomial;
pub use power_sum::{
    power_sum_s, power_sum_s_bernoulli, power_sum_s_with, power_sum_t, power_sum_t_bernoulli,
    power_sum_t_with, structural_factor_check, t_polynomial, Evaluation,
};
pub use roots::{is_nth_power, nth_root_floor, perfect_power_witnesses};

use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type ExactInteger = num_bigint::BigInt;

/// Normalized fraction of two [`ExactInteger`]s.
pub type ExactRational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{op}: precondition violated: {reason}")]
    Precondition { op: &'static str, reason: String },
    #[error("{what}: direct summation and Bernoulli form disagree at k={k}, x={x}")]
    EvaluationMismatch { what: &'static str, k: u32, x: String },
}

pub(crate) fn precondition(op: &'static str, reason: impl Into<String>) -> ExactError {
    ExactError::Precondition {
        op,
        reason: reason.into(),
    }
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u32, k: u32) -> ExactInteger {
    if k > n {
        return ExactInteger::from(0);
    }
    let k = k.min(n - k);
    let mut acc = ExactInteger::from(1);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), ExactInteger::from(10));
        assert_eq!(binomial(13, 0), ExactInteger::from(1));
        assert_eq!(binomial(13, 13), ExactInteger::from(1));
        assert_eq!(binomial(3, 5), ExactInteger::from(0));
        assert_eq!(binomial(40, 20), "137846528820".parse::<ExactInteger>().unwrap());
    }

    proptest::proptest! {
        #[test]
        fn integers_round_trip_through_decimal(s in "-?[1-9][0-9]{0,80}") {
            let v: ExactInteger = s.parse().unwrap();
            proptest::prop_assert_eq!(v.to_string(), s);
        }

        #[test]
        fn rationals_are_normalized(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = ExactRational::new(n.into(), d.into());
            proptest::prop_assert!(q.denom() >= &ExactInteger::from(1));
            let g = num_integer::Integer::gcd(q.numer(), q.denom());
            proptest::prop_assert_eq!(g, ExactInteger::from(1));
        }
    }

    #[test]
    fn negative_zero_is_canonical() {
        let z: ExactInteger = "-0".parse().unwrap();
        assert_eq!(z.to_string(), "0");
        assert_eq!(z, ExactInteger::from(0));
    }
}
