use std::fmt::Write as _;
use std::path::Path;

use powsum_core::baker::{compare_tables, hprime_reconciliation, Case, FieldCheck, BAKER_XS};
use serde::Serialize;

use super::bounds::{baker_rows, BakerRow};
use crate::error::{usage, CliError};
use crate::report::{RunReport, Verdict};
use crate::settings::Settings;

#[derive(Debug, Clone, Serialize)]
pub struct TablesOutput {
    pub fields: Vec<FieldCheck>,
    pub bounds: Vec<BakerRow>,
    pub hprime_discrepancies: Vec<(Case, u64, f64)>,
}

impl TablesOutput {
    pub fn all_pass(&self) -> bool {
        self.fields.iter().all(|f| f.sound && f.agrees) && self.bounds.iter().all(|b| b.certified)
    }
}

pub fn recompute(digits: u32) -> Result<TablesOutput, CliError> {
    let fields = compare_tables(digits)?;
    let mut bounds = Vec::new();
    for x in BAKER_XS {
        bounds.extend(baker_rows(x, digits)?);
    }
    let hprime_discrepancies = hprime_reconciliation(digits)?
        .into_iter()
        .map(|r| (r.case, r.x, r.discrepancy))
        .collect();
    Ok(TablesOutput { fields, bounds, hprime_discrepancies })
}

fn csv(out: &TablesOutput) -> String {
    let mut s = String::from("case,x,field,printed,computed,kind,deviation,tolerance,sound,agrees\n");
    for f in &out.fields {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{:?},{:.3e},{},{},{}",
            f.case,
            f.x,
            f.field,
            f.printed,
            f.computed.to_decimal(6),
            f.kind,
            f.deviation,
            f.tolerance,
            f.sound,
            f.agrees
        );
    }
    s
}

pub fn cmd_tables(out_dir: Option<&Path>, settings: &Settings) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("tables", serde_json::json!({ "precision": settings.precision }));
    let out = report.timed("recompute", || recompute(settings.precision))?;

    for case in Case::ALL {
        for x in BAKER_XS {
            let row: Vec<&FieldCheck> =
                out.fields.iter().filter(|f| f.case == case && f.x == x).collect();
            let cells: Vec<String> = row
                .iter()
                .map(|f| {
                    let mark = match (f.sound, f.agrees) {
                        (true, true) => "ok",
                        (false, _) => "UNSOUND",
                        (true, false) => "FAR",
                    };
                    format!("{}={} {mark}", f.field, f.printed)
                })
                .collect();
            report.line(format!("case {:<3} x={x:<2} {}", case.to_string(), cells.join("  ")));
        }
    }
    for b in &out.bounds {
        report.line(format!(
            "bound x={:<2} case {:<3} {} <= {:<8} {} (derived {})",
            b.report.x,
            b.case.to_string(),
            b.case.variable(),
            b.published,
            if b.certified { "certified" } else { "NOT certified" },
            b.derived_bound.map_or("-".into(), |d| d.to_string())
        ));
    }
    let worst = out.fields.iter().map(|f| f.deviation).fold(0.0, f64::max);
    report.line(format!("largest deviation from the printed entries: {worst:.2e}"));
    let worst_h = out.hprime_discrepancies.iter().map(|d| d.2.abs()).fold(0.0, f64::max);
    report.notice(format!(
        "h' offsets differ from epsilon + lambda/sigma by up to {worst_h:.1e}; diagnostic only"
    ));

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        let json = dir.join("tables.json");
        let matrix = dir.join("tables.csv");
        let write = |p: &Path, body: String| {
            std::fs::write(p, body).map_err(|e| usage(format!("{}: {e}", p.display())))
        };
        write(&json, serde_json::to_string_pretty(&out).expect("serializes"))?;
        write(&matrix, csv(&out))?;
        report.line(format!("wrote {} and {}", json.display(), matrix.display()));
    }
    report.verdict = if out.all_pass() { Verdict::Success } else { Verdict::Failed };
    report.set_outputs(&out);
    Ok(report)
}
