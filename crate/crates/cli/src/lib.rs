//! Dataset, reports and subcommand logic behind the `iwasawa` binary.

pub mod commands;
pub mod dataset;
pub mod report;
pub mod tables;

pub use dataset::Dataset;
pub use report::{Check, Report};

/// Exit status for a run whose checks all matched.
pub const EXIT_MATCH: i32 = 0;
/// Usage or computation error.
pub const EXIT_ERROR: i32 = 1;
/// Some stated value was not reproduced.
pub const EXIT_MISMATCH: i32 = 2;

/// `IWASAWA_MAX_PN`, or the library default when unset.
pub fn max_pn_from_env() -> anyhow::Result<u64> {
    match std::env::var("IWASAWA_MAX_PN") {
        Ok(v) => v.trim().parse().map_err(|_| anyhow::anyhow!("IWASAWA_MAX_PN={v:?} is not a positive integer")),
        Err(std::env::VarError::NotPresent) => Ok(iwasawa_core::DEFAULT_MAX_PN),
        Err(e) => Err(e.into()),
    }
}
