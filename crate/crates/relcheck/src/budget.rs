//! Enumeration budgets for audits and property scans.

/// Controls how far enumerations reach and whether a check may sample
/// instead of exhausting its instance space.
///
/// Every audit condition records whether it ran exhaustively under its
/// budget, so a sampled pass is never reported as an exhaustive one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Endpoint-size cap for object/arrow/proarrow enumeration.
    pub max_size: usize,
    /// Force exhaustive enumeration even where sampling would be allowed.
    pub exhaustive: bool,
    /// Number of sampled instances per check when not exhaustive.
    pub samples: usize,
    /// Seed for the sampling generator; fixed seed means fixed report.
    pub seed: u64,
}

impl Budget {
    pub fn exhaustive(max_size: usize) -> Self {
        Budget { max_size, exhaustive: true, samples: 0, seed: 0 }
    }

    pub fn sampled(max_size: usize, samples: usize, seed: u64) -> Self {
        Budget { max_size, exhaustive: false, samples, seed }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::exhaustive(2)
    }
}
