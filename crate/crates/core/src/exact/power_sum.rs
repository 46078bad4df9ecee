use num_traits::{One, Pow, Signed, Zero};

use super::{
    bernoulli_poly, bernoulli_polynomial, precondition, ExactError, ExactInteger, ExactRational,
    RationalPolynomial,
};

/// Which route a power sum is computed by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Evaluation {
    /// Add up the k-th powers one by one.
    #[default]
    Direct,
    /// Closed form through Bernoulli polynomials.
    Bernoulli,
    /// Both routes; a disagreement is an error.
    Verified,
}

fn check_k(op: &'static str, k: u32) -> Result<(), ExactError> {
    if k == 0 {
        return Err(precondition(op, "k must be at least 1"));
    }
    Ok(())
}

fn sum_of_powers(k: u32, from: u64, to: u64) -> ExactInteger {
    (from..=to).fold(ExactInteger::zero(), |acc, j| acc + ExactInteger::from(j).pow(k))
}

fn integral(q: ExactRational) -> ExactInteger {
    debug_assert!(q.is_integer(), "power sum closed form left a fraction: {q}");
    q.to_integer()
}

/// `S_k(x) = 1^k + ... + x^k` by direct summation.
pub fn power_sum_s(k: u32, x: u64) -> Result<ExactInteger, ExactError> {
    check_k("power_sum_s", k)?;
    Ok(sum_of_powers(k, 1, x))
}

/// `S_k(x) = (B_(k+1)(x+1) - B_(k+1)(0)) / (k+1)`.
pub fn power_sum_s_bernoulli(k: u32, x: &ExactInteger) -> Result<ExactInteger, ExactError> {
    check_k("power_sum_s", k)?;
    if x.is_negative() {
        return Err(precondition("power_sum_s", "x must be non-negative"));
    }
    let shifted = ExactRational::from_integer(x + 1u32);
    let diff = bernoulli_poly(k + 1, &shifted) - bernoulli_poly(k + 1, &ExactRational::zero());
    Ok(integral(diff / ExactRational::from_integer((k + 1).into())))
}

pub fn power_sum_s_with(k: u32, x: u64, how: Evaluation) -> Result<ExactInteger, ExactError> {
    match how {
        Evaluation::Direct => power_sum_s(k, x),
        Evaluation::Bernoulli => power_sum_s_bernoulli(k, &x.into()),
        Evaluation::Verified => {
            let direct = power_sum_s(k, x)?;
            if direct != power_sum_s_bernoulli(k, &x.into())? {
                return Err(ExactError::EvaluationMismatch {
                    what: "S_k",
                    k,
                    x: x.to_string(),
                });
            }
            Ok(direct)
        }
    }
}

/// `T_k(x) = (x+1)^k + ... + (2x)^k` by direct summation.
pub fn power_sum_t(k: u32, x: u64) -> Result<ExactInteger, ExactError> {
    check_k("power_sum_t", k)?;
    if x == 0 {
        return Err(precondition("power_sum_t", "x must be at least 1"));
    }
    Ok(sum_of_powers(k, x + 1, 2 * x))
}

/// `T_k(x) = (B_(k+1)(2x+1) - B_(k+1)(x+1)) / (k+1)`.
pub fn power_sum_t_bernoulli(k: u32, x: &ExactInteger) -> Result<ExactInteger, ExactError> {
    check_k("power_sum_t", k)?;
    if !x.is_positive() {
        return Err(precondition("power_sum_t", "x must be at least 1"));
    }
    let upper = ExactRational::from_integer(x * 2u32 + 1u32);
    let lower = ExactRational::from_integer(x + 1u32);
    let diff = bernoulli_poly(k + 1, &upper) - bernoulli_poly(k + 1, &lower);
    Ok(integral(diff / ExactRational::from_integer((k + 1).into())))
}

pub fn power_sum_t_with(k: u32, x: u64, how: Evaluation) -> Result<ExactInteger, ExactError> {
    match how {
        Evaluation::Direct => power_sum_t(k, x),
        Evaluation::Bernoulli => power_sum_t_bernoulli(k, &x.into()),
        Evaluation::Verified => {
            let direct = power_sum_t(k, x)?;
            if direct != power_sum_t_bernoulli(k, &x.into())? {
                return Err(ExactError::EvaluationMismatch {
                    what: "T_k",
                    k,
                    x: x.to_string(),
                });
            }
            Ok(direct)
        }
    }
}

/// `T_k` as a polynomial of degree `k + 1`.
pub fn t_polynomial(k: u32) -> Result<RationalPolynomial, ExactError> {
    check_k("t_polynomial", k)?;
    let b = bernoulli_polynomial(k + 1);
    let one = ExactRational::one();
    let two = ExactRational::from_integer(2.into());
    let diff = &b.compose_affine(&two, &one) - &b.compose_affine(&one, &one);
    Ok(diff.scale(&ExactRational::new(ExactInteger::one(), (k + 1).into())))
}

/// Checks that `x(2x+1)` divides `T_k` for even `k` and `x^2(3x+1)` divides it
/// for odd `k`, over the rationals. Requires `k >= 2`.
pub fn structural_factor_check(k: u32) -> Result<bool, ExactError> {
    if k < 2 {
        return Err(precondition(
            "structural_factor_check",
            "k must be at least 2; T_1(x) = x(3x+1)/2 is handled on its own",
        ));
    }
    let divisor = if k % 2 == 0 {
        RationalPolynomial::from_integers(&[0, 1, 2])
    } else {
        RationalPolynomial::from_integers(&[0, 0, 1, 3])
    };
    Ok(t_polynomial(k)?.is_divisible_by(&divisor))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInteger {
        ExactInteger::from(v)
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn s_examples() {
        assert_eq!(power_sum_s(1, 4).unwrap(), int(10));
        assert_eq!(power_sum_s(2, 24).unwrap(), int(4900));
        assert_eq!(power_sum_s(3, 3).unwrap(), int(36));
        assert_eq!(power_sum_s(5, 0).unwrap(), int(0));
        assert_eq!(power_sum_s_with(2, 24, Evaluation::Verified).unwrap(), int(4900));
    }

    #[test]
    fn t_examples() {
        assert_eq!(power_sum_t(1, 2).unwrap(), int(7));
        assert_eq!(power_sum_t(2, 2).unwrap(), int(25));
        assert_eq!(power_sum_t(3, 3).unwrap(), int(405));
        assert_eq!(power_sum_t_bernoulli(3, &int(3)).unwrap(), int(405));
        // closed form x^2(5x+3)(3x+1)/4 at x = 3
        assert_eq!(int(9 * 18 * 10 / 4), int(405));
    }

    #[test]
    fn preconditions() {
        assert!(power_sum_s(0, 3).is_err());
        assert!(power_sum_t(1, 0).is_err());
        assert!(power_sum_t_bernoulli(2, &int(0)).is_err());
        assert!(power_sum_s_bernoulli(2, &int(-1)).is_err());
        assert!(t_polynomial(0).is_err());
        assert!(structural_factor_check(1).is_err());
    }

    #[test]
    fn t_polynomial_closed_forms() {
        // (3/2)x^2 + (1/2)x
        assert_eq!(t_polynomial(1).unwrap(), RationalPolynomial::from_coeffs(vec![q(0, 1), q(1, 2), q(3, 2)]));
        // x^2 (5x+3)(3x+1) / 4 = (15x^4 + 14x^3 + 3x^2) / 4
        let expected = RationalPolynomial::from_integers(&[0, 0, 3, 14, 15]).scale(&q(1, 4));
        assert_eq!(t_polynomial(3).unwrap(), expected);
        assert_eq!(t_polynomial(2).unwrap().eval_integer(&int(2)), q(25, 1));
    }

    #[test]
    fn t_polynomial_degree_and_values() {
        for k in 1..=12u32 {
            let p = t_polynomial(k).unwrap();
            assert_eq!(p.degree(), Some(k as usize + 1));
            for x in 1..=15u64 {
                assert_eq!(
                    p.eval_integer(&x.into()),
                    ExactRational::from_integer(power_sum_t(k, x).unwrap())
                );
            }
        }
    }

    #[test]
    fn structural_factors_hold() {
        for k in 2..=40 {
            assert!(structural_factor_check(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn wrong_factor_is_rejected() {
        // x(2x+1) must not divide T_3, which has the double root at 0 and the
        // root -1/3 instead.
        let divisor = RationalPolynomial::from_integers(&[0, 1, 2]);
        assert!(!t_polynomial(3).unwrap().is_divisible_by(&divisor));
    }
}
