use std::collections::BTreeMap;

use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;

use super::predict::{predict_v2_t, predict_v3_s, predict_v3_t, ValuationPrediction};
use super::vp;
use crate::exact::ExactInteger;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quantity {
    T,
    S,
}

/// One predictor disagreeing with the exact valuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MismatchRecord {
    pub x: u64,
    pub k: u32,
    pub p: u64,
    pub quantity: Quantity,
    pub predicted: u32,
    pub actual: u32,
    pub case_label: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValuationReport {
    pub checked: u64,
    pub uncovered: u64,
    /// Hits per branch, keyed `"<predictor>: <case label>"`.
    pub branch_hits: BTreeMap<String, u64>,
    pub mismatches: Vec<MismatchRecord>,
}

impl ValuationReport {
    /// One JSON object per mismatch, newline separated.
    pub fn mismatches_json_lines(&self) -> String {
        self.mismatches
            .iter()
            .map(|m| serde_json::to_string(m).expect("plain record") + "\n")
            .collect()
    }

    fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.uncovered += other.uncovered;
        for (label, n) in other.branch_hits {
            *self.branch_hits.entry(label).or_default() += n;
        }
        self.mismatches.extend(other.mismatches);
        self
    }
}

/// Compares every predictor against exact valuations of `T_k(x)` and
/// `S_k(x)` for `1 <= x <= x_max`, `1 <= k <= k_max`.
///
/// The exact values come from running prefix sums `1^k + ... + n^k`, which
/// share no code with the predictors or the Bernoulli evaluator. Output is
/// ordered by `(x, k)` regardless of thread scheduling.
pub fn verify_valuation_predictors(x_max: u64, k_max: u32) -> ValuationReport {
    let prefix: Vec<Vec<ExactInteger>> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let mut acc = ExactInteger::from(0);
            let mut out = Vec::with_capacity(2 * x_max as usize + 1);
            out.push(acc.clone());
            for j in 1..=2 * x_max {
                acc += Pow::pow(&ExactInteger::from(j), k);
                out.push(acc.clone());
            }
            out
        })
        .collect();

    let per_x: Vec<ValuationReport> = (1..=x_max)
        .into_par_iter()
        .map(|x| {
            let mut report = ValuationReport::default();
            for k in 1..=k_max {
                let table = &prefix[(k - 1) as usize];
                let s = &table[x as usize];
                let t = &table[2 * x as usize] - s;
                let cases: [(&str, Quantity, u64, ValuationPrediction, &ExactInteger); 3] = [
                    ("v2(T)", Quantity::T, 2, predict_v2_t(x, k), &t),
                    ("v3(T)", Quantity::T, 3, predict_v3_t(x, k), &t),
                    ("v3(S)", Quantity::S, 3, predict_v3_s(x, k), s),
                ];
                for (name, quantity, p, pred, value) in cases {
                    let Some(predicted) = pred.value else {
                        report.uncovered += 1;
                        continue;
                    };
                    report.checked += 1;
                    *report.branch_hits.entry(format!("{name}: {}", pred.case_label)).or_default() += 1;
                    let actual = vp(value, p).expect("power sums are positive");
                    if actual != predicted {
                        report.mismatches.push(MismatchRecord {
                            x,
                            k,
                            p,
                            quantity,
                            predicted,
                            actual,
                            case_label: pred.case_label.to_string(),
                        });
                    }
                }
            }
            report
        })
        .collect();

    per_x.into_iter().fold(ValuationReport::default(), ValuationReport::merge)
}
