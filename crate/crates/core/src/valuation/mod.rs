//! p-adic valuations of power sums, closed-form 2- and 3-adic predictors,
//! the exponent bounds they imply, and brute-force harnesses for all of it.

mod bound;
mod congruence;
mod predict;
mod verify;

pub use bound::{
    exponent_bound, exponent_bounds, sharpest_exponent_bound, two_adic_exponent_bound, BoundKind,
    BoundOutcome,
};
pub use congruence::{
    decompose, verify_congruence_forms, CongruenceCheck, CongruenceCounterexample, CongruenceForm,
    CongruenceGrid, CongruenceReport, Decomposition,
};
pub use predict::{predict_v2_t, predict_v3_s, predict_v3_t, ValuationPrediction, NOT_COVERED};
pub use verify::{verify_valuation_predictors, MismatchRecord, Quantity, ValuationReport};

use num_traits::Zero;
use thiserror::Error;

use crate::exact::ExactInteger;
use crate::primes::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("valuation of zero is undefined")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Largest `v` with `p^v | m`.
pub fn vp(m: &ExactInteger, p: u64) -> Result<u32, ValuationError> {
    if m.is_zero() {
        return Err(ValuationError::Zero);
    }
    if !is_prime(p) {
        return Err(ValuationError::NotPrime(p));
    }
    if p == 2 {
        return Ok(m.trailing_zeros().expect("nonzero") as u32);
    }
    // Strip p^(2^j) chunks first so huge valuations stay logarithmic.
    let mut rest = m.clone();
    let mut v = 0u32;
    let mut powers = vec![ExactInteger::from(p)];
    loop {
        let last = powers.last().unwrap();
        if !(&rest % last).is_zero() {
            break;
        }
        let sq = last * last;
        if sq.bits() > rest.bits() + 1 {
            break;
        }
        powers.push(sq);
    }
    for (j, pw) in powers.iter().enumerate().rev() {
        while (&rest % pw).is_zero() {
            rest /= pw;
            v += 1 << j;
        }
    }
    Ok(v)
}

/// `vp` for machine integers; `m` must be nonzero and `p` prime.
pub(crate) fn vp_u128(mut m: u128, p: u128) -> u32 {
    debug_assert!(m != 0 && p >= 2);
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    v
}

pub(crate) fn v2(m: u128) -> u32 {
    m.trailing_zeros()
}

pub(crate) fn v3(m: u128) -> u32 {
    vp_u128(m, 3)
}
