use serde::Serialize;

use super::{rational, BakerError, Case, CaseSetup};
use crate::directed::{DirectedReal, Interval};

/// The parameter `h` of the two-logarithm estimate at a given `n` (cases
/// I, II) or `k` (case III).
#[derive(Debug, Clone, Serialize)]
pub struct HParameter {
    /// The chosen `h`, an exact number at or above every lower limit.
    pub h: Interval,
    /// Upper bound on `h - log v` when the logarithmic limit binds.
    pub epsilon: DirectedReal,
    /// Which of the three lower limits is largest.
    pub binding: &'static str,
}

/// `h = max(log(b1/a2 + b2/a1) + log lambda + 1.81, lambda, log(2)/2)` with
/// the worst-case `b1 = v`, `b2 = v/2`, so the first limit is `log v + epsilon`.
pub fn h_parameter(setup: &CaseSetup, v: u64) -> Result<HParameter, BakerError> {
    let d = setup.digits;
    let num = |n: i64| Interval::from_integer(n, d);
    let inner = setup.a2.recip()?.add(&num(2).mul(&setup.a1)?.recip()?);
    let epsilon = inner
        .ln()?
        .add(&setup.lambda.ln()?)
        .add(&Interval::from_rational(&rational(181, 100), d));
    let log_term = num(v as i64).ln()?.add(&epsilon);
    let half_log2 = num(2).ln()?.div(&num(2))?;
    let mut binding = "log(v) + epsilon";
    let mut top = log_term.hi.clone();
    for (name, alt) in [("lambda", &setup.lambda), ("log(2)/2", &half_log2)] {
        if alt.hi > top {
            top = alt.hi.clone();
            binding = name;
        }
    }
    Ok(HParameter { h: Interval::point(&top), epsilon: epsilon.hi, binding })
}

/// Constants of the estimate with the rounding direction of each field
/// chosen so the estimate stays valid: `big_h` is a lower bound, the rest
/// upper bounds.
#[derive(Debug, Clone, Serialize)]
pub struct LaurentConstants {
    pub sigma: Interval,
    pub lambda: Interval,
    pub h: DirectedReal,
    #[serde(rename = "H")]
    pub big_h: DirectedReal,
    pub omega: DirectedReal,
    pub theta: DirectedReal,
    pub c0: DirectedReal,
    pub c: DirectedReal,
    pub c_prime: DirectedReal,
    pub h_prime: DirectedReal,
    #[serde(skip)]
    pub(crate) enclosure: Enclosures,
}

#[derive(Debug, Clone)]
pub(crate) struct Enclosures {
    pub omega: Interval,
    pub theta: Interval,
    pub c: Interval,
    pub c_prime: Interval,
}

/// Evaluates the constants for given `rho, mu, a1, a2, h`. Checks
/// `a1, a2 >= 1`, `a1 a2 >= lambda^2`, `h >= lambda` and `h >= log(2)/2`.
pub fn laurent_constants(
    sigma: &Interval,
    lambda: &Interval,
    mu: &Interval,
    a1: &Interval,
    a2: &Interval,
    h: &Interval,
) -> Result<LaurentConstants, BakerError> {
    let d = (h.lo.precision().max(a1.lo.precision()) as f64 / std::f64::consts::LOG2_10) as u32;
    let num = |n: i64| Interval::from_integer(n, d);
    let frac = |p: i64, q: i64| Interval::from_rational(&rational(p, q), d);
    let hyp = |ok: bool, which: &'static str, detail: String| {
        if ok {
            Ok(())
        } else {
            Err(BakerError::Hypothesis { which, detail })
        }
    };
    let a1a2 = a1.mul(a2)?;
    let lambda_sq = lambda.square()?;
    hyp(a1.lo >= num(1).hi && a2.lo >= num(1).hi, "a_i >= 1", format!("a1 = {a1}, a2 = {a2}"))?;
    hyp(a1a2.lo >= lambda_sq.hi, "a1 a2 >= lambda^2", format!("a1 a2 = {a1a2}, lambda^2 = {lambda_sq}"))?;
    hyp(h.lo >= lambda.hi, "h >= lambda", format!("h = {h}, lambda = {lambda}"))?;
    let half_log2 = num(2).ln()?.div(&num(2))?;
    hyp(h.lo >= half_log2.hi, "h >= log(2)/2", format!("h = {h}"))?;

    let big_h = h.div(lambda)?.add(&sigma.recip()?);
    let root = num(1).add(&num(4).mul(&big_h.square()?)?.recip()?).sqrt()?;
    let omega = num(2).add(&num(2).mul(&root)?);
    let theta = root.add(&num(2).mul(&big_h)?.recip()?);

    // C0 = (omega/6 + sqrt(omega^2/9 + t1 + t2)/2)^2
    let omega_5_4 = omega.mul(&omega.sqrt()?.sqrt()?)?;
    let theta_1_4 = theta.sqrt()?.sqrt()?;
    let t1 = num(8)
        .mul(lambda)?
        .mul(&omega_5_4)?
        .mul(&theta_1_4)?
        .div(&num(3).mul(&a1a2.sqrt()?)?.mul(&big_h.sqrt()?)?)?;
    let t2 = frac(4, 3)
        .mul(&a1.recip()?.add(&a2.recip()?))?
        .mul(lambda)?
        .mul(&omega)?
        .div(&big_h)?;
    let radical = omega.square()?.div(&num(9))?.add(&t1).add(&t2).sqrt()?;
    let c0 = omega.div(&num(6))?.add(&radical.div(&num(2))?).square()?;

    let lambda_cubed = lambda.square()?.mul(lambda)?;
    let c = c0.mul(mu)?.div(&lambda_cubed.mul(sigma)?)?;
    let c_prime = c
        .mul(sigma)?
        .mul(&omega)?
        .mul(&theta)?
        .div(&lambda_cubed.mul(mu)?)?
        .sqrt()?;
    let h_prime = h.add(&lambda.div(sigma)?);

    Ok(LaurentConstants {
        sigma: sigma.clone(),
        lambda: lambda.clone(),
        h: h.hi.clone(),
        big_h: big_h.lo.clone(),
        omega: omega.hi.clone(),
        theta: theta.hi.clone(),
        c0: c0.hi,
        c: c.hi.clone(),
        c_prime: c_prime.hi.clone(),
        h_prime: h_prime.hi,
        enclosure: Enclosures { omega, theta, c, c_prime },
    })
}

impl LaurentConstants {
    /// Constants for `setup` at main variable `v`.
    pub fn at(setup: &CaseSetup, v: u64) -> Result<Self, BakerError> {
        let hp = h_parameter(setup, v)?;
        laurent_constants(&setup.sigma, &setup.lambda, &setup.mu, &setup.a1, &setup.a2, &hp.h)
    }
}

/// The contradiction inequality `v < RHS(v)` rewritten in `t = h'(v)`:
/// `RHS = alpha t^2 + beta t + gamma log(delta t^2) + eta`.
#[derive(Debug, Clone, Serialize)]
pub struct RhsCoefficients {
    pub alpha: Interval,
    pub beta: Interval,
    pub gamma: Interval,
    pub delta: Interval,
    pub eta: Interval,
    /// `t = log v + t_offset`, with `t_offset = epsilon + lambda/sigma`.
    pub t_offset: Interval,
}

/// Coefficients for fixed constants. In cases I, II the right-hand side is
/// `(C h'^2 a1 a2 + sqrt(omega theta) h' + log(C' h'^2 a1 a2) + log 4)
/// log(2x) / (log y log(2x/(2x-1)))`; in case III it is
/// `(C h'^2 a1 a2 + sqrt(omega theta) h' + log(2 C' h'^2 a1 a2)) / log(2x/(2x-1))`.
pub fn rhs_coefficients(
    setup: &CaseSetup,
    constants: &LaurentConstants,
    epsilon: &DirectedReal,
) -> Result<RhsCoefficients, BakerError> {
    let d = setup.digits;
    let num = |n: i64| Interval::from_integer(n, d);
    let e = &constants.enclosure;
    let a1a2 = setup.a1.mul(&setup.a2)?;
    let factor = match (&setup.case, &setup.log_y) {
        (Case::III, _) => setup.log_ratio.recip()?,
        (_, Some(log_y)) => setup.log_2x.div(&log_y.mul(&setup.log_ratio)?)?,
        (_, None) => return Err(BakerError::Domain("cases I and II need log y".into())),
    };
    let (delta_scale, eta) = match setup.case {
        Case::III => (num(2), Interval::from_integer(0, d)),
        _ => (num(1), num(4).ln()?.mul(&factor)?),
    };
    // an epsilon that is only an upper bound is the value actually used for h
    let eps = Interval::point(epsilon);
    Ok(RhsCoefficients {
        alpha: e.c.mul(&a1a2)?.mul(&factor)?,
        beta: e.omega.mul(&e.theta)?.sqrt()?.mul(&factor)?,
        gamma: factor,
        delta: delta_scale.mul(&e.c_prime)?.mul(&a1a2)?,
        eta,
        t_offset: eps.add(&setup.lambda.div(&setup.sigma)?),
    })
}

impl RhsCoefficients {
    pub fn t_at(&self, v: u64) -> Result<Interval, BakerError> {
        let d = self.alpha.lo.precision();
        let digits = ((f64::from(d) - 16.0) / std::f64::consts::LOG2_10) as u32;
        Ok(Interval::from_integer(v as i64, digits).ln()?.add(&self.t_offset))
    }

    /// Enclosure of the right-hand side at `v`.
    pub fn eval(&self, v: u64) -> Result<Interval, BakerError> {
        let t = self.t_at(v)?;
        if !t.is_positive() {
            return Err(BakerError::Domain(format!("h' must be positive at v = {v}")));
        }
        let log_term = self.delta.mul(&t.square()?)?.ln()?.mul_nonneg(&self.gamma)?;
        Ok(self.alpha.mul(&t.square()?)?.add(&self.beta.mul(&t)?).add(&log_term).add(&self.eta))
    }
}

fn rhs_at(setup: &CaseSetup, v: u64) -> Result<DirectedReal, BakerError> {
    let hp = h_parameter(setup, v)?;
    let constants = laurent_constants(&setup.sigma, &setup.lambda, &setup.mu, &setup.a1, &setup.a2, &hp.h)?;
    // h' = h + lambda/sigma; when the log limit binds, h = log v + epsilon
    if hp.binding != "log(v) + epsilon" {
        return Err(BakerError::Domain(format!("h is set by {} at v = {v}", hp.binding)));
    }
    Ok(rhs_coefficients(setup, &constants, &hp.epsilon)?.eval(v)?.hi)
}

/// Upper bound for the right-hand side of `n < RHS(n)` in cases I and II,
/// with constants evaluated at `n` itself.
pub fn contradiction_rhs(setup: &CaseSetup, n: u64) -> Result<DirectedReal, BakerError> {
    if setup.case == Case::III {
        return Err(BakerError::Domain("case III bounds k; use contradiction_rhs_k".into()));
    }
    if n < 3 {
        return Err(BakerError::Domain(format!("n must be at least 3, got {n}")));
    }
    rhs_at(setup, n)
}

/// Upper bound for the right-hand side of `k < RHS(k)` in case III.
pub fn contradiction_rhs_k(setup: &CaseSetup, k: u64) -> Result<DirectedReal, BakerError> {
    if setup.case != Case::III {
        return Err(BakerError::Domain("only case III bounds k".into()));
    }
    if k < 83 {
        return Err(BakerError::Domain(format!("k must be at least 83, got {k}")));
    }
    rhs_at(setup, k)
}
