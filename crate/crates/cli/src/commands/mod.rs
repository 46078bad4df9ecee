pub mod bounds;
pub mod compute;
pub mod search;
pub mod sieve;
pub mod tables;
