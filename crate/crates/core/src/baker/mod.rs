//! Explicit lower bounds for linear forms in two logarithms (Laurent's
//! two-logarithm estimate) specialised to `T_k(x) = y^n` for
//! `x in {2, 3, 6, 7, 10, 11}`, and certification of the resulting bounds
//! on `n` and `k`.
//!
//! Three regimes are handled: `y > 4x^2` and `y > 10^6` bound `n`,
//! `y <= 4x^2` bounds `k`. All arithmetic is outward-rounded interval
//! arithmetic from [`crate::directed`].

mod certify;
mod laurent;
mod tables;

pub use certify::{certify_at, certify_bound, BoundReport, Certificate};
pub use laurent::{
    contradiction_rhs, contradiction_rhs_k, h_parameter, laurent_constants, rhs_coefficients,
    HParameter, LaurentConstants, RhsCoefficients,
};
pub use tables::{
    compare_tables, hprime_reconciliation, published_bound, published_row, FieldCheck, FieldKind,
    PublishedRow, Reconciliation,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::directed::{DirectedError, Interval};
use crate::valuation::predict_v2_t;

/// The `x` values this module treats.
pub const BAKER_XS: [u64; 6] = [2, 3, 6, 7, 10, 11];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    /// `y > 4x^2`, bounds `n`.
    I,
    /// `y > 10^6`, bounds `n`.
    II,
    /// `y <= 4x^2`, bounds `k`.
    III,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::I, Case::II, Case::III];

    /// Name of the variable this case bounds.
    pub fn variable(self) -> &'static str {
        match self {
            Case::I | Case::II => "n",
            Case::III => "k",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
        })
    }
}

impl FromStr for Case {
    type Err = BakerError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "I" | "1" => Ok(Case::I),
            "II" | "2" => Ok(Case::II),
            "III" | "3" => Ok(Case::III),
            other => Err(BakerError::UnknownCase(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BakerError {
    #[error(transparent)]
    Arithmetic(#[from] DirectedError),
    #[error("hypothesis {which} fails: {detail}")]
    Hypothesis { which: &'static str, detail: String },
    #[error("x = {0} is outside {{2, 3, 6, 7, 10, 11}}")]
    UnsupportedX(u64),
    #[error("unknown case {0:?}, expected I, II or III")]
    UnknownCase(String),
    #[error("{0}")]
    Domain(String),
}

pub(crate) fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `sigma = (1 + 2 mu - mu^2)/2` and `lambda = sigma log rho`.
///
/// `sigma` is increasing on `[1/3, 1]`, so its enclosure comes from the
/// exact values at the endpoints of `mu` clamped to that range.
pub fn sigma_lambda(rho: &Interval, mu: &Interval) -> Result<(Interval, Interval), BakerError> {
    let one = BigRational::from_integer(1.into());
    if rho.lo.exact() <= one {
        return Err(BakerError::Domain(format!("rho must exceed 1, got {rho}")));
    }
    // The true mu lies in the intersection with [1/3, 1], where sigma is increasing.
    let (third, mu_lo, mu_hi) = (rational(1, 3), mu.lo.exact(), mu.hi.exact());
    if mu_hi < third || mu_lo > one {
        return Err(BakerError::Domain(format!("mu must lie in [1/3, 1], got {mu}")));
    }
    let digits = digits_of(rho);
    let two = BigRational::from_integer(2.into());
    let sigma_at = |m: BigRational| (&one + &m * &two - &m * &m) / &two;
    let lo = Interval::from_rational(&sigma_at(mu_lo.max(third)), digits).lo;
    let hi = Interval::from_rational(&sigma_at(mu_hi.min(one.clone())), digits).hi;
    let sigma = Interval { lo, hi };
    let lambda = sigma.mul(&rho.ln()?)?;
    Ok((sigma, lambda))
}

fn digits_of(i: &Interval) -> u32 {
    // inverse of bits_for_digits, rounded down
    ((f64::from(i.lo.precision()) - 16.0) / std::f64::consts::LOG2_10).floor() as u32
}

/// Everything about one `(x, case)` that does not depend on `n` or `k`.
#[derive(Debug, Clone)]
pub struct CaseSetup {
    pub x: u64,
    pub case: Case,
    pub digits: u32,
    pub rho: Interval,
    pub mu: Interval,
    pub sigma: Interval,
    pub lambda: Interval,
    pub a1: Interval,
    pub a2: Interval,
    /// `log y` at the extremal `y`; absent in case III.
    pub log_y: Option<Interval>,
    pub log_2x: Interval,
    /// `log(2x / (2x - 1))`
    pub log_ratio: Interval,
}

/// Published choice of `rho` for each regime.
pub fn rho_for(x: u64, case: Case) -> BigRational {
    match case {
        Case::I => rational(77, 10),
        Case::II if x <= 7 => rational(96, 10),
        Case::II => rational(93, 10),
        Case::III => rational(62, 10),
    }
}

/// Setup at the extremal `y` for the case: `4x^2` in case I, `10^6` in case II.
pub fn case_setup(x: u64, case: Case, digits: u32) -> Result<CaseSetup, BakerError> {
    let y = match case {
        Case::I => Some(BigRational::from_integer(BigInt::from(4 * x * x))),
        Case::II => Some(BigRational::from_integer(BigInt::from(1_000_000))),
        Case::III => None,
    };
    case_setup_at(x, case, y.as_ref(), digits)
}

/// Setup with an explicit `y` in cases I and II.
///
/// `a1` grows with `log y` but the right-hand side of the contradiction
/// inequality falls with it, so the extremal `y` is the worst case.
pub fn case_setup_at(
    x: u64,
    case: Case,
    y: Option<&BigRational>,
    digits: u32,
) -> Result<CaseSetup, BakerError> {
    if !BAKER_XS.contains(&x) {
        return Err(BakerError::UnsupportedX(x));
    }
    let num = |n: i64| Interval::from_integer(n, digits);
    let rho = Interval::from_rational(&rho_for(x, case), digits);
    let mu = Interval::from_rational(&rational(57, 100), digits);
    let (sigma, lambda) = sigma_lambda(&rho, &mu)?;
    let two_x = 2 * x as i64;
    let log_2x = num(two_x).ln()?;
    let log_ratio = Interval::from_rational(&rational(two_x, two_x - 1), digits).ln()?;
    let (a1, a2, log_y) = match case {
        Case::I | Case::II => {
            let y = y.ok_or_else(|| BakerError::Domain(format!("case {case} needs y")))?;
            let log_y = Interval::from_rational(y, digits).ln()?;
            let rho1 = rho.add(&num(1));
            let a2 = rho1.mul(&log_2x)?;
            let a1 = rho1.div(&num(2))?.mul(&log_2x)?.add(&num(2).mul(&log_y)?);
            (a1, a2, Some(log_y))
        }
        Case::III => {
            let a1 = Interval::from_rational(&rational(102, 100), digits)
                .mul(&rho.add(&num(3)))?
                .mul(&log_2x)?;
            let a2 = num(2).mul(&rho.add(&num(1)))?.mul(&log_2x)?;
            (a1, a2, None)
        }
    };
    Ok(CaseSetup { x, case, digits, rho, mu, sigma, lambda, a1, a2, log_y, log_2x, log_ratio })
}

/// Whether `T_k(x)` is odd for every `k`, read off the 2-adic predictor.
///
/// For `x` not `1 (mod 8)` the predictor depends on `k` only through the
/// classes `k = 1`, `k` even, `k >= 3` odd, so `k = 1, 2, 3` decide it.
/// Odd `T_k(x)` forces odd `y`, so `y/(2x)^B` and `2x` (and in case III
/// `2x/y^B` and `y`) share no prime and are multiplicatively independent.
pub fn y_is_always_odd(x: u64) -> bool {
    x % 8 != 1 && (1..=3).all(|k| predict_v2_t(x, k).value == Some(0))
}
