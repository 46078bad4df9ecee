use powsum_core::exact::power_sum_t;
use rayon::prelude::*;
use serde::Serialize;

use super::compute::witnesses;
use crate::error::{usage, CliError};
use crate::report::{RunReport, Verdict};

/// Grids larger than this are not desk scale.
const MAX_GRID_K: u32 = 20_000;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SearchRange {
    pub x_min: u64,
    pub x_max: u64,
    pub k_max: u32,
    pub n_min: u32,
    pub n_max: u32,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SearchHit {
    pub x: u64,
    pub k: u32,
    pub root: String,
    pub n: u32,
    /// `x >= 2` and `n >= 3`; anything else is a known artifact outside the claim.
    pub in_scope: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutput {
    pub checked: u64,
    pub hits: Vec<SearchHit>,
}

/// Every `(x, k, root, n)` with `T_k(x) = root^n`, `n` in `[n_min, n_max]`.
pub fn search_grid(range: SearchRange) -> Result<SearchOutput, CliError> {
    let cells: Vec<(u64, u32)> = (range.x_min..=range.x_max)
        .flat_map(|x| (1..=range.k_max).map(move |k| (x, k)))
        .collect();
    let found: Vec<Vec<SearchHit>> = cells
        .par_iter()
        .map(|&(x, k)| -> Result<Vec<SearchHit>, CliError> {
            let t = power_sum_t(k, x)?;
            Ok(witnesses(&t, range.n_min, range.n_max)?
                .into_iter()
                .map(|w| SearchHit { x, k, root: w.root, n: w.n, in_scope: x >= 2 && w.n >= 3 })
                .collect())
        })
        .collect::<Result<_, _>>()?;
    Ok(SearchOutput { checked: cells.len() as u64, hits: found.into_iter().flatten().collect() })
}

pub fn cmd_search(range: SearchRange) -> Result<RunReport, CliError> {
    let SearchRange { x_min, x_max, k_max, n_min, n_max } = range;
    if x_min == 0 || x_min > x_max {
        return Err(usage("search needs 1 <= x-min <= x-max"));
    }
    if n_min < 2 || n_min > n_max {
        return Err(usage("search needs 2 <= n-min <= n-max"));
    }
    if k_max == 0 || k_max > MAX_GRID_K || x_max > 1000 {
        return Err(usage(format!("search needs 1 <= k-max <= {MAX_GRID_K} and x-max <= 1000")));
    }
    let mut report = RunReport::new(
        format!("search --x-min {x_min} --x-max {x_max} --k-max {k_max} --n-min {n_min} --n-max {n_max}"),
        range,
    );
    let out = report.timed("search", || search_grid(range))?;
    report.line(format!(
        "checked T_k(x) for x in [{x_min}, {x_max}], k in [1, {k_max}], n in [{n_min}, {n_max}]: {} values",
        out.checked
    ));
    for h in &out.hits {
        let tag = if h.in_scope { "IN SCOPE" } else { "out of scope" };
        report.line(format!("  T_{}({}) = {}^{}  ({tag})", h.k, h.x, h.root, h.n));
    }
    let in_scope = out.hits.iter().filter(|h| h.in_scope).count();
    report.line(format!("{in_scope} witnesses with x >= 2 and n >= 3"));
    if x_min == 1 {
        report.notice("x = 1 is out of scope: T_k(1) = 2^k is a perfect power for every k >= 2");
    }
    if in_scope > 0 {
        report.verdict = Verdict::Undecided;
        report.notice("perfect powers with n >= 3 found; see hits");
    }
    report.set_outputs(out);
    Ok(report)
}
