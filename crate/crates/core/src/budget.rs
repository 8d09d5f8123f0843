/// Limits on the exhaustive searches. Exceeding one aborts with
/// [`HibiError::SizeGuard`](crate::HibiError::SizeGuard), never a truncated answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest accepted |P|.
    pub max_elements: usize,
    /// Lattice points of T(P) the minimal-element search may visit.
    pub max_box: u64,
    /// Partial condition-N sequences the backtracking may visit.
    pub max_sequences: u64,
    /// Ideals `poset_ideals` may produce (checked against 2^(|P|-1)).
    pub max_ideals: u64,
    /// Largest |P| accepted by the pairwise brute-force oracle.
    pub oracle_elements: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            max_elements: 20,
            max_box: 10_000_000,
            max_sequences: 10_000_000,
            max_ideals: 1 << 22,
            oracle_elements: 9,
        }
    }
}

/// Environment variable overriding [`Budgets::max_box`].
pub const MAX_BOX_ENV: &str = "HIBI_MAX_BOX";

impl Budgets {
    /// Defaults, with `HIBI_MAX_BOX` applied when it holds a positive integer.
    pub fn from_env() -> Self {
        let mut budgets = Self::default();
        if let Some(v) = std::env::var(MAX_BOX_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
        {
            budgets.max_box = v;
        }
        budgets
    }
}
