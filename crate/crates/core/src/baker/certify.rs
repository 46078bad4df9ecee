use serde::Serialize;

use super::laurent::{h_parameter, laurent_constants, rhs_coefficients, LaurentConstants};
use super::tables::published_bound;
use super::{case_setup, BakerError, Case, CaseSetup};
use crate::directed::{DirectedReal, Interval};

/// Proof that `v < RHS(v)` for every `v >= v0`.
///
/// With the constants frozen at `v0` (they only improve as `v` grows) the
/// right-hand side is `alpha t^2 + beta t + gamma log(delta t^2) + eta`
/// with `t = log v + c`. Divided by `v`, each term is decreasing once
/// `t > 2` and `delta t^2 >= e` and all coefficients are nonnegative, so
/// `RHS(v0) < v0` carries over to every larger `v`.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub v0: u64,
    pub rhs_at_v0: DirectedReal,
    pub t_at_v0: DirectedReal,
    pub holds: bool,
    /// Why `holds` is false, if it is.
    pub failure: Option<String>,
}

/// Checks the persistence argument at `v0`.
pub fn certify_at(setup: &CaseSetup, v0: u64) -> Result<Certificate, BakerError> {
    let hp = h_parameter(setup, v0)?;
    let constants =
        laurent_constants(&setup.sigma, &setup.lambda, &setup.mu, &setup.a1, &setup.a2, &hp.h)?;
    let coeffs = rhs_coefficients(setup, &constants, &hp.epsilon)?;
    let t = coeffs.t_at(v0)?;
    let d = setup.digits;
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |why: String| failures.push(why);
    if hp.binding != "log(v) + epsilon" {
        fail(format!("h is set by {} rather than log(v) + epsilon", hp.binding));
    }
    if t.lo <= Interval::from_integer(2, d).hi {
        fail(format!("t = h'(v0) = {t} is not above 2"));
    }
    // e < 2.7183
    let e_upper = Interval::from_rational(&super::rational(27183, 10000), d);
    if t.is_positive() && coeffs.delta.mul(&t.square()?)?.lo < e_upper.hi {
        fail("delta t^2 is not above e".to_string());
    }
    for (name, c) in [("alpha", &coeffs.alpha), ("beta", &coeffs.beta), ("gamma", &coeffs.gamma), ("eta", &coeffs.eta)] {
        if c.lo.is_negative() {
            fail(format!("coefficient {name} may be negative"));
        }
    }
    let rhs = if failures.is_empty() { Some(coeffs.eval(v0)?) } else { None };
    let rhs_at_v0 = match &rhs {
        Some(r) => r.hi.clone(),
        None => DirectedReal::from_integer(0, crate::directed::Rounding::Up, d),
    };
    if let Some(r) = &rhs {
        if r.hi >= Interval::from_integer(v0 as i64, d).lo {
            failures.push(format!("RHS({v0}) = {:.4} is not below {v0}", r.hi));
        }
    }
    let failure = failures.into_iter().next();
    Ok(Certificate { v0, rhs_at_v0, t_at_v0: t.lo, holds: failure.is_none(), failure })
}

/// Certification of one published bound.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub x: u64,
    pub case: Case,
    pub rho: Interval,
    pub mu: Interval,
    pub epsilon: DirectedReal,
    /// Constants at the published bound.
    pub constants: LaurentConstants,
    pub published_bound_value: u64,
    /// Certificate at `published_bound_value + 1`.
    pub certificate: Certificate,
    /// Smallest bound this code certifies, never below the floor the
    /// `r = 0` argument needs.
    pub derived_bound: Option<u64>,
    pub reproduced: bool,
}

/// Below this the `r = 0` exclusion (`(2x)^(Bn) = y^n` up to a small
/// correction) does not apply: `v` must exceed
/// `(log(2x) + log 2) / log(2x/(2x-1))` in cases I and II, and `k >= 83` in case III.
fn variable_floor(setup: &CaseSetup) -> u64 {
    match setup.case {
        Case::III => 83,
        _ => {
            let two_x = 2.0 * setup.x as f64;
            ((two_x.ln() + 2f64.ln()) / (two_x / (two_x - 1.0)).ln()).ceil() as u64
        }
    }
}

/// Certifies the published bound for `(x, case)` and searches for the
/// smallest bound the same argument supports.
pub fn certify_bound(x: u64, case: Case, digits: u32) -> Result<BoundReport, BakerError> {
    let setup = case_setup(x, case, digits)?;
    let published_bound_value = published_bound(x, case).ok_or(BakerError::UnsupportedX(x))?;
    let certificate = certify_at(&setup, published_bound_value + 1)?;
    let hp = h_parameter(&setup, published_bound_value)?;
    let constants = LaurentConstants::at(&setup, published_bound_value)?;

    let derived_bound = if certificate.holds {
        // bisection on the first certifiable v0 in (lo, hi]
        let floor = variable_floor(&setup);
        let (mut lo, mut hi) = (floor, published_bound_value + 1);
        if certify_at(&setup, lo)?.holds {
            hi = lo;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if certify_at(&setup, mid)?.holds {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some((hi - 1).max(floor))
    } else {
        None
    };

    Ok(BoundReport {
        x,
        case,
        rho: setup.rho.clone(),
        mu: setup.mu.clone(),
        epsilon: hp.epsilon,
        constants,
        published_bound_value,
        reproduced: certificate.holds,
        certificate,
        derived_bound,
    })
}
