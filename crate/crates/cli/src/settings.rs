use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{usage, CliError};

/// Options shared by every command, after merging defaults, config file and flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub json: bool,
    /// Decimal digits for directed-rounding arithmetic.
    pub precision: u32,
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: u64,
    pub max_primes: u64,
    pub max_modulus: u64,
    pub n_ceiling: u64,
    pub k_max: u32,
    /// Largest `k` checked in the small-`y` segment of `prove` at desk scale.
    pub small_y_k_ceiling: u64,
    /// Refuse to print power sums with more digits than this.
    pub max_digits: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            json: false,
            precision: 60,
            checkpoint: None,
            checkpoint_every: 25,
            max_primes: 500,
            max_modulus: 1_000_000_000,
            n_ceiling: 50,
            k_max: 83,
            small_y_k_ceiling: 2000,
            max_digits: 1_000_000,
        }
    }
}

/// Partial settings: a config file, or the flags given on the command line.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Overrides {
    pub json: Option<bool>,
    pub precision: Option<u32>,
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: Option<u64>,
    pub max_primes: Option<u64>,
    pub max_modulus: Option<u64>,
    pub n_ceiling: Option<u64>,
    pub k_max: Option<u32>,
    pub small_y_k_ceiling: Option<u64>,
    pub max_digits: Option<u64>,
}

impl Overrides {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| usage(format!("config: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }
}

impl Settings {
    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = o.$f.clone() { self.$f = v; } )* };
        }
        take!(json, precision, checkpoint_every, max_primes, max_modulus, n_ceiling, k_max,
              small_y_k_ceiling, max_digits);
        if o.checkpoint.is_some() {
            self.checkpoint = o.checkpoint.clone();
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(20..=2000).contains(&self.precision) {
            return Err(usage("--precision must be between 20 and 2000 digits"));
        }
        if self.max_primes == 0 || self.max_modulus < 2 || self.checkpoint_every == 0 {
            return Err(usage("--max-primes, --checkpoint-every must be positive, --max-modulus >= 2"));
        }
        if self.n_ceiling < 3 {
            return Err(usage("--n-ceiling must be at least 3"));
        }
        if self.k_max == 0 || self.max_digits == 0 {
            return Err(usage("--k-max and --max-digits must be positive"));
        }
        Ok(())
    }
}
