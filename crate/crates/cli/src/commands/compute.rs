use num_bigint::BigInt;
use num_traits::Zero;
use powsum_core::exact::{perfect_power_witnesses, power_sum_s, power_sum_t, ExactInteger};
use powsum_core::primes::primes_up_to;
use powsum_core::valuation::vp;
use serde::Serialize;

use crate::error::{usage, CliError};
use crate::report::RunReport;
use crate::settings::Settings;

const TRIAL_DIVISION_LIMIT: u64 = 10_000;
const SCAN_EXPONENTS: (u32, u32) = (2, 12);

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub root: String,
    pub n: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorDigest {
    pub digits: usize,
    /// Prime factors below the trial-division limit with multiplicity.
    pub small_factors: Vec<(u64, u32)>,
    pub cofactor_digits: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Evaluated {
    pub value: String,
    pub digest: FactorDigest,
    pub witnesses: Option<Vec<Witness>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComputeOutput {
    pub x: u64,
    pub k: u32,
    pub t: Evaluated,
    pub s: Evaluated,
}

pub fn digest(m: &ExactInteger) -> FactorDigest {
    let mut rest = m.clone();
    let mut small_factors = Vec::new();
    for p in primes_up_to(TRIAL_DIVISION_LIMIT) {
        if (&rest % p).is_zero() {
            let e = vp(&rest, p).expect("nonzero, prime");
            rest /= BigInt::from(p).pow(e);
            small_factors.push((p, e));
        }
    }
    FactorDigest {
        digits: m.to_string().len(),
        small_factors,
        cofactor_digits: if rest == BigInt::from(1) { 0 } else { rest.to_string().len() },
    }
}

pub fn witnesses(m: &ExactInteger, n_min: u32, n_max: u32) -> Result<Vec<Witness>, CliError> {
    if *m < BigInt::from(2) {
        return Ok(Vec::new());
    }
    Ok(perfect_power_witnesses(m, n_min, n_max)?
        .into_iter()
        .map(|(root, n)| Witness { root: root.to_string(), n })
        .collect())
}

fn evaluate(m: ExactInteger, scan: bool) -> Result<Evaluated, CliError> {
    let witnesses = if scan { Some(witnesses(&m, SCAN_EXPONENTS.0, SCAN_EXPONENTS.1)?) } else { None };
    Ok(Evaluated { digest: digest(&m), value: m.to_string(), witnesses })
}

pub fn cmd_compute(x: u64, k: u32, scan: bool, settings: &Settings) -> Result<RunReport, CliError> {
    if x == 0 || k == 0 {
        return Err(usage("compute needs x >= 1 and k >= 1"));
    }
    // S_k(2x) has about (k+1) log10(2x) digits.
    let digits = (k as f64 + 1.0) * ((2 * x) as f64).log10();
    if digits > settings.max_digits as f64 {
        return Err(usage(format!(
            "T_{k}({x}) has about {digits:.0} digits, above --max-digits {}",
            settings.max_digits
        )));
    }
    let mut report = RunReport::new(format!("compute {x} {k}"), (x, k, scan));
    let out = report.timed("compute", || -> Result<ComputeOutput, CliError> {
        Ok(ComputeOutput {
            x,
            k,
            t: evaluate(power_sum_t(k, x)?, scan)?,
            s: evaluate(power_sum_s(k, x)?, scan)?,
        })
    })?;
    for (name, e) in [(format!("T_{k}({x})"), &out.t), (format!("S_{k}({x})"), &out.s)] {
        report.line(format!("{name} = {}", e.value));
        let factors: Vec<String> = e
            .digest
            .small_factors
            .iter()
            .map(|&(p, m)| if m == 1 { p.to_string() } else { format!("{p}^{m}") })
            .collect();
        let mut d = format!("  {} digits; factors below {TRIAL_DIVISION_LIMIT}: ", e.digest.digits);
        d.push_str(if factors.is_empty() { "none" } else { "" });
        d.push_str(&factors.join(" * "));
        if e.digest.cofactor_digits > 0 {
            d.push_str(&format!("; cofactor of {} digits", e.digest.cofactor_digits));
        }
        report.line(d);
        if let Some(w) = &e.witnesses {
            if w.is_empty() {
                report.line(format!(
                    "  not a perfect n-th power for n in [{}, {}]",
                    SCAN_EXPONENTS.0, SCAN_EXPONENTS.1
                ));
            }
            for w in w {
                report.line(format!("  witness: {}^{}", w.root, w.n));
            }
        }
    }
    if x == 1 {
        report.notice("x = 1 is out of scope: T_k(1) = 2^k");
    }
    report.set_outputs(out);
    Ok(report)
}
