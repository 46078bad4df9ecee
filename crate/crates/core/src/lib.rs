pub mod exact;
pub mod primes;
pub mod valuation;
pub mod directed;
pub mod baker;
pub mod sieve;

pub use baker::{certify_bound, compare_tables, BoundReport, Case, CaseSetup, LaurentConstants};
pub use directed::{DirectedReal, Interval, Rounding};
pub use exact::{power_sum_s, power_sum_t, ExactError, ExactInteger, ExactRational};
pub use sieve::{run_sieve, SieveConfig, SieveError, SieveState, SieveStatus};
pub use valuation::{exponent_bound, sharpest_exponent_bound, BoundKind, BoundOutcome};
