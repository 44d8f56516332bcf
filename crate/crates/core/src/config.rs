//! Resource caps for group construction and verification.

use serde::{Deserialize, Serialize};

/// Caps applied while building groups and running checks. All overridable
/// from the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Caps {
    /// Maximum group order enumerated by closure.
    pub max_order: usize,
    /// Dense multiplication table materialized only up to this order.
    pub mult_table_max: usize,
    /// Maximum number of conjugacy classes for character-table computation.
    pub max_classes: usize,
    /// Brute-force DP oracle cross-checks only below this order.
    pub dp_oracle_max: usize,
    /// Default series-expansion test bound.
    pub max_length: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 200_000,
            mult_table_max: 20_000,
            max_classes: 60,
            dp_oracle_max: 1_000,
            max_length: 8,
        }
    }
}
