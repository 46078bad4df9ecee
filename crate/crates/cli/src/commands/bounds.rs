use powsum_core::baker::{certify_bound, BoundReport, Case, BAKER_XS};
use powsum_core::valuation::{
    exponent_bound, exponent_bounds, sharpest_exponent_bound, two_adic_exponent_bound, BoundKind,
    BoundOutcome,
};
use serde::Serialize;

use crate::error::{usage, CliError};
use crate::report::{RunReport, Verdict};
use crate::settings::Settings;

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub class: &'static str,
    pub outcome: BoundOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct BakerRow {
    pub case: Case,
    pub published: u64,
    pub certified: bool,
    pub derived_bound: Option<u64>,
    pub report: BoundReport,
}

pub fn outcome_of(branch: Option<(u32, &'static str)>) -> BoundOutcome {
    match branch {
        None => BoundOutcome { kind: BoundKind::NotCovered, case_label: "no branch applies" },
        Some((n, label)) if n <= 1 => {
            BoundOutcome { kind: BoundKind::NoSolutionForNGe2, case_label: label }
        }
        Some((n, label)) => BoundOutcome { kind: BoundKind::UpperBound(n), case_label: label },
    }
}

/// Exponent bounds for `k = 1, 2, 3` and for the two parity classes of `k >= 4`.
/// The class rows use the 2-adic branch only, which is constant on each class.
pub fn class_rows(x: u64) -> Vec<ClassRow> {
    vec![
        ClassRow { class: "k = 1", outcome: sharpest_exponent_bound(x, 1) },
        ClassRow { class: "k = 2", outcome: sharpest_exponent_bound(x, 2) },
        ClassRow { class: "k = 3", outcome: sharpest_exponent_bound(x, 3) },
        ClassRow { class: "k >= 4 even", outcome: outcome_of(two_adic_exponent_bound(x, 4)) },
        ClassRow { class: "k >= 5 odd", outcome: outcome_of(two_adic_exponent_bound(x, 5)) },
    ]
}

pub fn describe(o: &BoundOutcome) -> String {
    match o.kind {
        BoundKind::UpperBound(n) => format!("n <= {n}  [{}]", o.case_label),
        BoundKind::NoSolutionForNGe2 => format!("no solution with n >= 2  [{}]", o.case_label),
        BoundKind::NotCovered => "not covered".to_string(),
    }
}

pub fn case_condition(case: Case) -> &'static str {
    match case {
        Case::I => "(y > 4x^2)",
        Case::II => "(y > 10^6)",
        Case::III => "(y <= 4x^2)",
    }
}

pub fn baker_rows(x: u64, digits: u32) -> Result<Vec<BakerRow>, CliError> {
    Case::ALL
        .iter()
        .map(|&case| {
            let r = certify_bound(x, case, digits)?;
            Ok(BakerRow {
                case,
                published: r.published_bound_value,
                certified: r.reproduced,
                derived_bound: r.derived_bound,
                report: r,
            })
        })
        .collect()
}

pub fn cmd_bounds(x: u64, k: Option<u32>, settings: &Settings) -> Result<RunReport, CliError> {
    if x < 2 {
        return Err(usage("bounds needs x >= 2"));
    }
    if k == Some(0) {
        return Err(usage("bounds needs k >= 1"));
    }
    let echo = match k {
        Some(k) => format!("bounds {x} {k}"),
        None => format!("bounds {x}"),
    };
    let mut report = RunReport::new(echo, (x, k));
    if let Some(k) = k {
        let first = exponent_bound(x, k);
        let sharpest = sharpest_exponent_bound(x, k);
        report.line(format!("x={x} k={k}: {}", describe(&first)));
        if sharpest != first {
            report.line(format!("  sharpest over all branches: {}", describe(&sharpest)));
        }
        let all: Vec<_> = exponent_bounds(x, k);
        report.set_outputs(serde_json::json!({ "first": first, "sharpest": sharpest, "branches": all }));
        return Ok(report);
    }
    if BAKER_XS.contains(&x) {
        let rows = report.timed("certify", || baker_rows(x, settings.precision))?;
        for r in &rows {
            report.line(format!(
                "x={x} case {:<3} {:<14} {} <= {:>8}  {}  derived {}",
                r.case.to_string(),
                case_condition(r.case),
                r.case.variable(),
                r.published,
                if r.certified { "certified" } else { "NOT certified" },
                r.derived_bound.map_or("-".into(), |d| d.to_string()),
            ));
        }
        if rows.iter().any(|r| !r.certified) {
            report.verdict = Verdict::Failed;
        }
        report.set_outputs(rows);
    } else {
        let rows = class_rows(x);
        for r in &rows {
            report.line(format!("x={x} {:<12} {}", r.class, describe(&r.outcome)));
        }
        report.set_outputs(rows);
    }
    Ok(report)
}
