//! End-to-end plan for `T_k(x) = y^n` with `2 <= x <= 13`, `n >= 3`.
//!
//! x in {2,3,6,7,10,11}: direct search for small k; the linear-forms bounds
//! split on y; y <= 10^6 is handled by small-prime valuations, y > 10^6 by
//! the sieve for every n up to the Case II bound.
//!
//! x in {4,5,8,9,12,13}: direct search for small k; for larger k the 2-adic
//! valuation fixes n per parity of k, and the sieve runs on the parity classes
//! that still allow some n >= 3.

use std::path::Path;

use num_traits::ToPrimitive;
use powsum_core::baker::{published_bound, Case, BAKER_XS};
use powsum_core::directed::Interval;
use powsum_core::primes::primes_up_to;
use powsum_core::sieve::{small_prime_exponent_cap_in, SieveStatus};
use powsum_core::valuation::two_adic_exponent_bound;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::bounds::{baker_rows, BakerRow};
use crate::commands::search::{search_grid, SearchHit, SearchRange};
use crate::commands::sieve::{exponents_up_to, run_jobs, SieveJob, SieveSummary};
use crate::error::{usage, CliError};
use crate::report::{RunReport, Verdict};
use crate::settings::Settings;

/// The y threshold of Case II; primes up to it are scanned in the small-y segment.
pub const SMALL_Y_LIMIT: u64 = 1_000_000;
/// Below this k the bounds from linear forms are not used.
pub const SEARCH_FLOOR: u32 = 83;
const SMALL_Y_EXPONENT_CAP: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Sieve over every k.
    SieveOnly,
    /// A valuation bound removed some k classes first; sieve the rest.
    BoundThenSieve,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlannedExponent {
    pub n: u64,
    pub strategy: Strategy,
    pub seed_modulus: u64,
    pub seed_residues: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmallYPlan {
    pub k_first: u64,
    /// Largest k the bounds require.
    pub k_full: u64,
    /// Largest k this run checks.
    pub k_run: u64,
    pub prime_limit: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofPlan {
    pub x: u64,
    pub search_k_max: u32,
    pub n_bound: u64,
    pub provenance: String,
    pub n_run: u64,
    pub exponents: Vec<PlannedExponent>,
    pub small_y: Option<SmallYPlan>,
    pub truncations: Vec<String>,
    pub full_scale: bool,
}

impl ProofPlan {
    pub fn is_truncated(&self) -> bool {
        !self.truncations.is_empty()
    }
}

fn arith(e: impl std::fmt::Display) -> CliError {
    CliError::Invariant(e.to_string())
}

/// Largest integer `k` with `k < c * ln 10 / ln(2x)`, from an upper enclosure.
pub fn k_below_decimal_digits(c: u64, x: u64, digits: u32) -> Result<u64, CliError> {
    let ratio = Interval::from_integer(10, digits)
        .ln()
        .and_then(|l| l.mul(&Interval::from_integer(c, digits)))
        .and_then(|l| l.div(&Interval::from_integer(2 * x, digits).ln()?))
        .map_err(arith)?;
    let hi = ratio.hi.exact();
    hi.floor().to_integer().to_u64().ok_or_else(|| arith("k bound out of range"))
}

pub fn build_plan(x: u64, full_scale: bool, settings: &Settings) -> Result<ProofPlan, CliError> {
    if !(2..=13).contains(&x) {
        return Err(usage("prove needs 2 <= x <= 13"));
    }
    let base_search = settings.k_max.max(SEARCH_FLOOR);
    if BAKER_XS.contains(&x) {
        let bound = |case| published_bound(x, case).ok_or_else(|| arith("missing bound"));
        let (n0, n1, k1) = (bound(Case::I)?, bound(Case::II)?, bound(Case::III)?);
        // n <= 12 and y <= 10^6 give T_k(x) <= 10^72, and T_k(x) > (2x)^k.
        let k_direct = k_below_decimal_digits(6 * SMALL_Y_EXPONENT_CAP as u64, x, settings.precision)?;
        let search_k_max = base_search.max(k_direct as u32);
        // 4x^2 < y <= 10^6 and n <= n0 give k < 6 n0 ln 10 / ln 2x; y <= 4x^2 gives k <= k1.
        let k_full = k1.max(k_below_decimal_digits(6 * n0, x, settings.precision)?);
        let k_run = if full_scale {
            k_full
        } else {
            k_full.min(settings.small_y_k_ceiling.max(search_k_max as u64))
        };
        let n_run = if full_scale { n1 } else { n1.min(settings.n_ceiling) };
        let mut truncations = Vec::new();
        if k_run < k_full {
            truncations.push(format!(
                "small-y segment (y <= 10^6) checked k <= {k_run} of k <= {k_full}"
            ));
        }
        if n_run < n1 {
            truncations.push(format!("sieve (y > 10^6) covered n <= {n_run} of n <= {n1}"));
        }
        let exponents = exponents_up_to(n_run)
            .into_iter()
            .map(|n| PlannedExponent {
                n,
                strategy: Strategy::SieveOnly,
                seed_modulus: 1,
                seed_residues: vec![0],
            })
            .collect();
        return Ok(ProofPlan {
            x,
            search_k_max,
            n_bound: n1,
            provenance: format!(
                "linear forms in two logarithms: n <= {n0} for y > 4x^2, n <= {n1} for y > 10^6, k <= {k1} for y <= 4x^2"
            ),
            n_run,
            exponents,
            small_y: Some(SmallYPlan {
                k_first: search_k_max as u64 + 1,
                k_full,
                k_run,
                prime_limit: SMALL_Y_LIMIT,
            }),
            truncations,
            full_scale,
        });
    }

    let class_bound = |rep: u32| -> Result<u64, CliError> {
        two_adic_exponent_bound(x, rep)
            .map(|(n, _)| n as u64)
            .ok_or_else(|| arith(format!("no 2-adic bound for x = {x}")))
    };
    let (even, odd) = (class_bound(4)?, class_bound(5)?);
    let n_bound = even.max(odd);
    let exponents = exponents_up_to(n_bound)
        .into_iter()
        .map(|n| {
            let (seed_modulus, seed_residues) = match (even >= n, odd >= n) {
                (true, true) => (1, vec![0]),
                (true, false) => (2, vec![0]),
                _ => (2, vec![1]),
            };
            let strategy = if seed_modulus == 1 { Strategy::SieveOnly } else { Strategy::BoundThenSieve };
            PlannedExponent { n, strategy, seed_modulus, seed_residues }
        })
        .collect();
    Ok(ProofPlan {
        x,
        search_k_max: base_search,
        n_bound,
        provenance: format!(
            "2-adic valuation for k >= 4: n <= {even} for even k, n <= {odd} for odd k"
        ),
        n_run: n_bound,
        exponents,
        small_y: None,
        truncations: Vec::new(),
        full_scale,
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SmallYOutcome {
    pub checked: u64,
    /// No prime up to the limit divides `T_k(x)`, so `y > 10^6`.
    pub no_small_prime: u64,
    /// Some prime has valuation 1 or 2, which `n >= 3` cannot divide.
    pub valuation_below_three: u64,
    /// Valuation between 3 and 12: then `n <= 12` and `k` would be below the search bound.
    pub capped: u64,
    pub unresolved: Vec<(u64, u64, u32)>,
}

pub fn small_y_segment(x: u64, plan: &SmallYPlan) -> SmallYOutcome {
    let primes = primes_up_to(plan.prime_limit);
    let caps: Vec<(u64, Option<(u64, u32)>)> = (plan.k_first..=plan.k_run)
        .into_par_iter()
        .map(|k| (k, small_prime_exponent_cap_in(x, k, &primes)))
        .collect();
    let mut out = SmallYOutcome { checked: caps.len() as u64, ..Default::default() };
    for (k, cap) in caps {
        match cap {
            None => out.no_small_prime += 1,
            Some((_, e)) if e < 3 => out.valuation_below_three += 1,
            Some((_, e)) if e <= SMALL_Y_EXPONENT_CAP => out.capped += 1,
            Some((p, e)) => out.unresolved.push((k, p, e)),
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ProveOutput {
    pub plan: ProofPlan,
    pub search_checked: u64,
    pub search_hits: Vec<SearchHit>,
    pub bounds: Option<Vec<BakerRow>>,
    pub small_y: Option<SmallYOutcome>,
    pub sieve: Vec<SieveSummary>,
}

fn describe_plan(report: &mut RunReport, plan: &ProofPlan) {
    let x = plan.x;
    report.line(format!("plan for x={x}{}", if plan.full_scale { " (full scale)" } else { "" }));
    report.line(format!("  direct search: k <= {}, every n >= 3", plan.search_k_max));
    report.line(format!("  exponent bound: n <= {} ({})", plan.n_bound, plan.provenance));
    if let Some(s) = &plan.small_y {
        report.line(format!(
            "  small y: k in [{}, {}] via primes <= {}",
            s.k_first, s.k_run, s.prime_limit
        ));
    }
    let list: Vec<String> = plan
        .exponents
        .iter()
        .map(|e| match e.strategy {
            Strategy::SieveOnly => e.n.to_string(),
            Strategy::BoundThenSieve => format!("{} (k = {:?} mod {})", e.n, e.seed_residues, e.seed_modulus),
        })
        .collect();
    report.line(format!(
        "  sieve: {} exponents up to n = {}: {}",
        list.len(),
        plan.n_run,
        if list.len() > 12 { format!("{} ... {}", list[..6].join(", "), list[list.len() - 3..].join(", ")) } else { list.join(", ") }
    ));
}

pub fn checkpoint_path(dir: &Path, x: u64, n: u64) -> std::path::PathBuf {
    dir.join(format!("x{x}_n{n}.json"))
}

pub fn cmd_prove(x: u64, full_scale: bool, force: bool, settings: &Settings) -> Result<RunReport, CliError> {
    let plan = build_plan(x, full_scale, settings)?;
    let mut report = RunReport::new(
        format!("prove {x}{}{}", if full_scale { " --full-scale" } else { "" }, if force { " --force" } else { "" }),
        serde_json::json!({
            "x": x, "full_scale": full_scale, "n_ceiling": settings.n_ceiling, "k_max": settings.k_max,
            "small_y_k_ceiling": settings.small_y_k_ceiling, "max_primes": settings.max_primes,
            "max_modulus": settings.max_modulus,
        }),
    );
    describe_plan(&mut report, &plan);

    if full_scale && x == 11 && !force {
        report.notice(format!(
            "the full x = 11 campaign ({} sieve exponents up to n = {}, small-y k up to {}) is not desk scale",
            plan.exponents.len(),
            plan.n_bound,
            plan.small_y.as_ref().map_or(0, |s| s.k_full)
        ));
        report.notice(
            "to run it anyway: prove 11 --full-scale --force --checkpoint <dir> --max-modulus 1000000000000000; \
             each exponent checkpoints to <dir>/x11_n<n>.json and an interrupted run resumes from there",
        );
        report.verdict = Verdict::Deferred;
        report.set_outputs(&plan);
        return Ok(report);
    }

    let search = report.timed("search", || {
        search_grid(SearchRange { x_min: x, x_max: x, k_max: plan.search_k_max, n_min: 3, n_max: 100_000 })
    })?;
    report.line(format!(
        "direct search: {} values of k, {} perfect powers with n >= 3",
        search.checked,
        search.hits.len()
    ));
    let mut undecided = !search.hits.is_empty();

    let bounds = if plan.small_y.is_some() {
        let rows = report.timed("bounds", || baker_rows(x, settings.precision))?;
        for r in &rows {
            report.line(format!(
                "bound case {:<3} {} <= {}: {}",
                r.case.to_string(),
                r.case.variable(),
                r.published,
                if r.certified { "certified" } else { "NOT certified" }
            ));
        }
        if rows.iter().any(|r| !r.certified) {
            undecided = true;
            report.notice("a published bound could not be certified");
        }
        Some(rows)
    } else {
        None
    };

    let small_y = plan.small_y.as_ref().map(|s| {
        let out = report.timed("small_y", || small_y_segment(x, s));
        report.line(format!(
            "small y: {} values of k; {} without a prime factor <= 10^6, {} with a valuation below 3, {} with a valuation in [3, 12], {} unresolved",
            out.checked, out.no_small_prime, out.valuation_below_three, out.capped, out.unresolved.len()
        ));
        out
    });
    if small_y.as_ref().is_some_and(|s| !s.unresolved.is_empty()) {
        undecided = true;
    }

    let jobs: Vec<SieveJob> = plan
        .exponents
        .iter()
        .map(|e| SieveJob {
            x,
            n: e.n,
            seed_modulus: e.seed_modulus,
            seed_residues: e.seed_residues.clone(),
            checkpoint: settings.checkpoint.as_deref().map(|d| checkpoint_path(d, x, e.n)),
        })
        .collect();
    let sieve = report.timed("sieve", || run_jobs(&jobs, settings))?;
    let open: Vec<u64> = sieve.iter().filter(|s| s.status != SieveStatus::Proven).map(|s| s.n).collect();
    let resumed = sieve.iter().filter(|s| s.resumed).count();
    report.line(format!(
        "sieve: {} of {} exponents proven{}",
        sieve.len() - open.len(),
        sieve.len(),
        if resumed > 0 { format!(", {resumed} resumed from checkpoints") } else { String::new() }
    ));
    if !open.is_empty() {
        undecided = true;
        report.notice(format!("sieve undecided for n in {open:?}; raise --max-primes or --max-modulus"));
    }
    if let Some(dir) = &settings.checkpoint {
        report.checkpoints.push(dir.display().to_string());
    }

    for t in &plan.truncations {
        report.notice(format!("TRUNCATED: {t}; rerun with --full-scale for the full range"));
    }
    report.verdict = match (undecided, plan.is_truncated()) {
        (true, _) => Verdict::Undecided,
        (false, true) => Verdict::Partial,
        (false, false) => Verdict::Proven,
    };
    report.set_outputs(ProveOutput {
        plan,
        search_checked: search.checked,
        search_hits: search.hits,
        bounds,
        small_y,
        sieve,
    });
    Ok(report)
}
