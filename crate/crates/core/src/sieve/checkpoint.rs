use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{SieveError, SieveState, SieveStatus};

pub const CHECKPOINT_FORMAT_VERSION: u32 = 1;

// Integers are decimal strings so wider moduli stay representable.
#[derive(Serialize, Deserialize)]
struct Record {
    format_version: u32,
    x: String,
    n: String,
    seed_modulus: String,
    modulus: String,
    residues: Vec<String>,
    primes_used: Vec<String>,
    primes_skipped: Vec<String>,
    next_i: String,
    primes_examined: String,
    peak_residues: String,
    status: SieveStatus,
}

fn err(path: &Path, reason: impl Into<String>) -> SieveError {
    SieveError::Checkpoint { path: path.display().to_string(), reason: reason.into() }
}

fn strings(v: &[u64]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

/// Write the state atomically: a sibling temporary file is renamed over `path`.
pub fn checkpoint_save(state: &SieveState, path: &Path) -> Result<(), SieveError> {
    let record = Record {
        format_version: CHECKPOINT_FORMAT_VERSION,
        x: state.x.to_string(),
        n: state.n.to_string(),
        seed_modulus: state.seed_modulus.to_string(),
        modulus: state.modulus.to_string(),
        residues: strings(&state.residues),
        primes_used: strings(&state.primes_used),
        primes_skipped: strings(&state.primes_skipped),
        next_i: state.next_i.to_string(),
        primes_examined: state.primes_examined.to_string(),
        peak_residues: state.peak_residues.to_string(),
        status: state.status,
    };
    let body = serde_json::to_vec(&record).map_err(|e| err(path, e.to_string()))?;
    let mut tmp_name = path.as_os_str().to_owned();
    tmp_name.push(".tmp");
    let tmp = Path::new(&tmp_name);
    let write = || -> std::io::Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut f = fs::File::create(tmp)?;
        f.write_all(&body)?;
        f.sync_all()?;
        fs::rename(tmp, path)
    };
    write().map_err(|e| err(path, e.to_string()))
}

pub fn checkpoint_load(path: &Path) -> Result<SieveState, SieveError> {
    let body = fs::read(path).map_err(|e| err(path, e.to_string()))?;
    let value: serde_json::Value =
        serde_json::from_slice(&body).map_err(|e| err(path, format!("not valid JSON: {e}")))?;
    match value.get("format_version").and_then(|v| v.as_u64()) {
        Some(v) if v == CHECKPOINT_FORMAT_VERSION as u64 => {}
        Some(v) => {
            return Err(err(
                path,
                format!("format version {v}, expected {CHECKPOINT_FORMAT_VERSION}"),
            ))
        }
        None => return Err(err(path, "missing format_version")),
    }
    let r: Record =
        serde_json::from_value(value).map_err(|e| err(path, format!("malformed record: {e}")))?;
    let num = |field: &str, s: &str| -> Result<u64, SieveError> {
        s.parse().map_err(|_| err(path, format!("{field}: '{s}' is not a non-negative integer")))
    };
    let nums = |field: &str, v: &[String]| -> Result<Vec<u64>, SieveError> {
        v.iter().map(|s| num(field, s)).collect()
    };
    let state = SieveState {
        x: num("x", &r.x)?,
        n: num("n", &r.n)?,
        seed_modulus: num("seed_modulus", &r.seed_modulus)?,
        modulus: num("modulus", &r.modulus)?,
        residues: nums("residues", &r.residues)?,
        primes_used: nums("primes_used", &r.primes_used)?,
        primes_skipped: nums("primes_skipped", &r.primes_skipped)?,
        next_i: num("next_i", &r.next_i)?,
        primes_examined: num("primes_examined", &r.primes_examined)?,
        peak_residues: num("peak_residues", &r.peak_residues)?,
        status: r.status,
    };
    state.check_invariants().map_err(|e| err(path, e))?;
    Ok(state)
}
