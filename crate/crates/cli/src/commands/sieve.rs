use std::path::{Path, PathBuf};

use powsum_core::primes::{is_prime, prime_factors};
use powsum_core::sieve::{
    advance, check_exponent, checkpoint_load, SieveConfig, SieveState, SieveStatus,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{usage, CliError};
use crate::report::{RunReport, Verdict};
use crate::settings::Settings;

/// Exponents the sieve must rule out so that `y^n` is excluded: the odd prime
/// divisors of `n`, plus 4 when `4 | n`. Empty only for `n` in `{1, 2}`.
pub fn reduce_exponent(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = prime_factors(n).into_iter().filter(|&p| p != 2).collect();
    if n % 4 == 0 {
        out.push(4);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Exponents covering every `n` in `[3, n_max]`: 4 and the odd primes.
pub fn exponents_up_to(n_max: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (3..=n_max).filter(|&n| n % 2 == 1 && is_prime(n)).collect();
    if n_max >= 4 {
        out.push(4);
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SieveJob {
    pub x: u64,
    pub n: u64,
    pub seed_modulus: u64,
    pub seed_residues: Vec<u64>,
    pub checkpoint: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SieveSummary {
    pub x: u64,
    pub n: u64,
    pub status: SieveStatus,
    pub seed_modulus: u64,
    pub seed_residues: Vec<u64>,
    pub modulus: u64,
    pub surviving: u64,
    pub primes_examined: u64,
    pub primes_used: Vec<u64>,
    pub primes_skipped: Vec<u64>,
    pub peak_residues: u64,
    pub resumed: bool,
}

impl SieveSummary {
    pub fn line(&self) -> String {
        let seed = if self.seed_modulus == 1 {
            "all k".to_string()
        } else {
            format!("k = {:?} mod {}", self.seed_residues, self.seed_modulus)
        };
        let mut s = format!(
            "x={} n={} ({seed}): {:?} after {} primes, {} applied, {} skipped, modulus {}, peak |K| {}",
            self.x,
            self.n,
            self.status,
            self.primes_examined,
            self.primes_used.len(),
            self.primes_skipped.len(),
            self.modulus,
            self.peak_residues
        );
        if self.status != SieveStatus::Proven {
            s.push_str(&format!(", {} classes survive", self.surviving));
        }
        if self.resumed {
            s.push_str(" (resumed from checkpoint)");
        }
        s
    }
}

pub fn sieve_config(settings: &Settings, checkpoint: Option<PathBuf>) -> SieveConfig {
    SieveConfig {
        max_primes: settings.max_primes,
        max_modulus: settings.max_modulus,
        checkpoint_every: settings.checkpoint_every,
        checkpoint_path: checkpoint,
    }
}

/// Checkpoint file for exponent `n` when one path has to serve several exponents.
pub fn checkpoint_for(path: &Path, n: u64, several: bool) -> PathBuf {
    if !several {
        return path.to_path_buf();
    }
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}_n{n}.json"))
}

/// Run one job, resuming from its checkpoint when the file exists.
pub fn run_job(job: &SieveJob, settings: &Settings) -> Result<(SieveState, bool), CliError> {
    let config = sieve_config(settings, job.checkpoint.clone());
    let fresh = SieveState::seeded(job.x, job.n, job.seed_modulus, job.seed_residues.clone())?;
    let (start, resumed) = match &job.checkpoint {
        Some(path) if path.exists() => {
            let s = checkpoint_load(path)?;
            if (s.x, s.n, s.seed_modulus) != (job.x, job.n, job.seed_modulus) {
                return Err(usage(format!(
                    "checkpoint {} is for x={} n={} seed modulus {}, not x={} n={} seed modulus {}",
                    path.display(),
                    s.x,
                    s.n,
                    s.seed_modulus,
                    job.x,
                    job.n,
                    job.seed_modulus
                )));
            }
            (s, true)
        }
        _ => (fresh, false),
    };
    Ok((advance(start, &config, None)?, resumed))
}

pub fn summarize(job: &SieveJob, s: &SieveState, resumed: bool) -> SieveSummary {
    SieveSummary {
        x: job.x,
        n: job.n,
        status: s.status,
        seed_modulus: s.seed_modulus,
        seed_residues: job.seed_residues.clone(),
        modulus: s.modulus,
        surviving: s.residues.len() as u64,
        primes_examined: s.primes_examined,
        primes_used: s.primes_used.clone(),
        primes_skipped: s.primes_skipped.clone(),
        peak_residues: s.peak_residues,
        resumed,
    }
}

/// Jobs run on the worker pool; results come back in job order.
pub fn run_jobs(jobs: &[SieveJob], settings: &Settings) -> Result<Vec<SieveSummary>, CliError> {
    jobs.par_iter()
        .map(|job| {
            let (state, resumed) = run_job(job, settings)?;
            state.check_invariants().map_err(CliError::Invariant)?;
            Ok(summarize(job, &state, resumed))
        })
        .collect()
}

pub fn cmd_sieve(x: u64, n: u64, settings: &Settings) -> Result<RunReport, CliError> {
    if !(2..=13).contains(&x) {
        return Err(usage("sieve needs 2 <= x <= 13"));
    }
    if n < 3 {
        return Err(usage("sieve needs n >= 3"));
    }
    let exponents = reduce_exponent(n);
    for &e in &exponents {
        check_exponent(e)?;
    }
    let jobs: Vec<SieveJob> = exponents
        .iter()
        .map(|&e| SieveJob {
            x,
            n: e,
            seed_modulus: 1,
            seed_residues: vec![0],
            checkpoint: settings
                .checkpoint
                .as_deref()
                .map(|p| checkpoint_for(p, e, exponents.len() > 1)),
        })
        .collect();
    let mut report = RunReport::new(format!("sieve {x} {n}"), serde_json::json!({
        "x": x, "n": n, "max_primes": settings.max_primes, "max_modulus": settings.max_modulus,
    }));
    if exponents != [n] {
        report.line(format!("n = {n} reduces to exponents {exponents:?}"));
    }
    let summaries = report.timed("sieve", || run_jobs(&jobs, settings))?;
    for s in &summaries {
        report.line(s.line());
    }
    report.checkpoints =
        jobs.iter().filter_map(|j| j.checkpoint.as_ref().map(|p| p.display().to_string())).collect();
    report.verdict = if summaries.iter().all(|s| s.status == SieveStatus::Proven) {
        Verdict::Proven
    } else {
        report.notice("undecided: raise --max-primes or --max-modulus, or resume from the checkpoint");
        Verdict::Undecided
    };
    report.set_outputs(summaries);
    Ok(report)
}
