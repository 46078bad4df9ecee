//! Local elimination of the exponent `k` in `T_k(x) = y^n` for fixed `(x, n)`.
//!
//! For primes `p = 2in + 1` the values `T_k(x) mod p` repeat with period `p-1`,
//! so the `k` that survive every prime seen so far form a set of residues
//! modulo the lcm of the `p-1`. An empty set means no `k` works.

mod checkpoint;
mod local;
mod residues;

pub use checkpoint::{checkpoint_load, checkpoint_save, CHECKPOINT_FORMAT_VERSION};
pub use local::{small_prime_exponent_cap, small_prime_exponent_cap_in, t_mod};
pub use residues::{
    admissible_k_residues, admissible_mask, is_nth_power_residue, nth_power_residues, t_mod_table,
};

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::primes::{is_prime, lcm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SieveError {
    #[error("sieve precondition violated: {0}")]
    Precondition(String),
    #[error("lcm({modulus}, {p} - 1) exceeds the modulus cap {cap}")]
    ModulusCapExceeded { modulus: u64, p: u64, cap: u64 },
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SieveStatus {
    Running,
    Proven,
    Undecided,
}

/// Surviving exponent classes `k mod modulus` for one `(x, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveState {
    pub x: u64,
    pub n: u64,
    /// Modulus of the starting class set; `modulus = lcm(seed_modulus, p-1 for p in primes_used)`.
    pub seed_modulus: u64,
    pub modulus: u64,
    pub residues: Vec<u64>,
    pub primes_used: Vec<u64>,
    /// Primes examined but not applied because the lcm would pass the cap.
    pub primes_skipped: Vec<u64>,
    /// Next multiplier `i` in `p = 2in + 1`.
    pub next_i: u64,
    pub primes_examined: u64,
    pub peak_residues: u64,
    pub status: SieveStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveConfig {
    /// Budget of candidate primes examined, including skipped ones.
    pub max_primes: u64,
    pub max_modulus: u64,
    /// Save every this many examined primes when `checkpoint_path` is set.
    pub checkpoint_every: u64,
    pub checkpoint_path: Option<PathBuf>,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            max_primes: 500,
            max_modulus: 1_000_000_000,
            checkpoint_every: 25,
            checkpoint_path: None,
        }
    }
}

impl SieveConfig {
    pub fn validate(&self) -> Result<(), SieveError> {
        if self.max_primes == 0 || self.max_modulus == 0 || self.checkpoint_every == 0 {
            return Err(SieveError::Precondition(
                "max_primes, max_modulus and checkpoint_every must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// The sieve runs on `n = 4` or an odd prime `n`; other exponents reduce to these.
pub fn check_exponent(n: u64) -> Result<(), SieveError> {
    if n == 4 || (n >= 3 && n % 2 == 1 && is_prime(n)) {
        Ok(())
    } else {
        Err(SieveError::Precondition(format!("n = {n} must be 4 or an odd prime")))
    }
}

impl SieveState {
    /// Every `k` still possible.
    pub fn new(x: u64, n: u64) -> Result<Self, SieveError> {
        Self::seeded(x, n, 1, vec![0])
    }

    /// Start from the classes `residues mod modulus`, e.g. odd `k` only.
    pub fn seeded(x: u64, n: u64, modulus: u64, mut residues: Vec<u64>) -> Result<Self, SieveError> {
        if x == 0 {
            return Err(SieveError::Precondition("x must be positive".into()));
        }
        check_exponent(n)?;
        if modulus == 0 || residues.iter().any(|&r| r >= modulus) {
            return Err(SieveError::Precondition("seed residues must lie in [0, modulus)".into()));
        }
        residues.sort_unstable();
        residues.dedup();
        let status = if residues.is_empty() { SieveStatus::Proven } else { SieveStatus::Running };
        Ok(SieveState {
            x,
            n,
            seed_modulus: modulus,
            modulus,
            peak_residues: residues.len() as u64,
            residues,
            primes_used: Vec::new(),
            primes_skipped: Vec::new(),
            next_i: 1,
            primes_examined: 0,
            status,
        })
    }

    pub fn is_finished(&self) -> bool {
        self.status != SieveStatus::Running
    }

    /// Structural invariants, checked after loading a checkpoint.
    pub fn check_invariants(&self) -> Result<(), String> {
        check_exponent(self.n).map_err(|e| e.to_string())?;
        let mut m = self.seed_modulus;
        for &p in &self.primes_used {
            m = lcm(m, p - 1).ok_or("modulus overflow")?;
        }
        if m != self.modulus {
            return Err(format!("modulus {} is not lcm of the used primes ({m})", self.modulus));
        }
        if self.residues.windows(2).any(|w| w[0] >= w[1]) {
            return Err("residues are not strictly increasing".into());
        }
        if self.residues.last().is_some_and(|&r| r >= self.modulus) {
            return Err("residue outside [0, modulus)".into());
        }
        if (self.status == SieveStatus::Proven) != self.residues.is_empty() {
            return Err("status Proven must coincide with an empty residue set".into());
        }
        Ok(())
    }
}

/// Lift the classes to `lcm(modulus, p-1)` and keep those whose `T_k(x) mod p`
/// is an n-th power residue.
pub fn lift_and_filter(state: &SieveState, p: u64, max_modulus: u64) -> Result<SieveState, SieveError> {
    if !is_prime(p) {
        return Err(SieveError::Precondition(format!("{p} is not prime")));
    }
    if state.primes_used.contains(&p) {
        return Err(SieveError::Precondition(format!("prime {p} already used")));
    }
    let o = state.modulus;
    let lifted = match lcm(o, p - 1) {
        Some(m) if m <= max_modulus => m,
        _ => return Err(SieveError::ModulusCapExceeded { modulus: o, p, cap: max_modulus }),
    };
    let q = p - 1;
    let (x, n) = (state.x, state.n);
    let candidates = state.residues.len() as u128 * (lifted / o) as u128;
    // A full table costs about x*p; evaluating each candidate costs about x*log p.
    let lazy = candidates * 64 < q as u128;
    let mask = if lazy { Vec::new() } else { admissible_mask(x, p, n) };
    let keep = |c: u64| -> bool {
        if lazy {
            let k = if c % q == 0 { q } else { c % q };
            is_nth_power_residue(t_mod(x, k, p), p, n)
        } else {
            mask[(c % q) as usize]
        }
    };
    let residues: Vec<u64> = (0..lifted / o)
        .into_par_iter()
        .flat_map_iter(|j| state.residues.iter().map(move |&r| r + j * o).filter(|&c| keep(c)))
        .collect();

    let mut next = state.clone();
    next.modulus = lifted;
    next.primes_used.push(p);
    next.peak_residues = next.peak_residues.max(residues.len() as u64);
    next.status = if residues.is_empty() { SieveStatus::Proven } else { SieveStatus::Running };
    next.residues = residues;
    Ok(next)
}

fn next_candidate_prime(state: &mut SieveState) -> u64 {
    loop {
        let p = 2 * state.next_i * state.n + 1;
        state.next_i += 1;
        if is_prime(p) {
            return p;
        }
    }
}

/// Continue a run. Stops when finished, when the prime budget is spent, or
/// after `max_steps` examined primes in this call (status stays `Running`).
/// Checkpoints every `checkpoint_every` examined primes and at the end.
pub fn advance(
    mut state: SieveState,
    config: &SieveConfig,
    max_steps: Option<u64>,
) -> Result<SieveState, SieveError> {
    config.validate()?;
    let mut steps = 0u64;
    while state.status == SieveStatus::Running {
        if state.primes_examined >= config.max_primes {
            state.status = SieveStatus::Undecided;
            break;
        }
        if max_steps.is_some_and(|m| steps >= m) {
            break;
        }
        let p = next_candidate_prime(&mut state);
        state.primes_examined += 1;
        steps += 1;
        match lift_and_filter(&state, p, config.max_modulus) {
            Ok(next) => state = next,
            Err(SieveError::ModulusCapExceeded { .. }) => state.primes_skipped.push(p),
            Err(e) => return Err(e),
        }
        if let Some(path) = &config.checkpoint_path {
            if state.primes_examined % config.checkpoint_every == 0 {
                checkpoint_save(&state, path)?;
            }
        }
    }
    if let Some(path) = &config.checkpoint_path {
        checkpoint_save(&state, path)?;
    }
    Ok(state)
}

/// Full run from the unrestricted class set.
pub fn run_sieve(x: u64, n: u64, config: &SieveConfig) -> Result<SieveState, SieveError> {
    advance(SieveState::new(x, n)?, config, None)
}

/// First prime in `primes` at which `t mod p` is not an n-th power residue.
pub fn rejecting_prime(t_mod_p: impl Fn(u64) -> u64, n: u64, primes: &[u64]) -> Option<u64> {
    primes.iter().copied().find(|&p| !is_nth_power_residue(t_mod_p(p), p, n))
}

#[cfg(test)]
mod tests;
