use serde::{Deserialize, Serialize};

/// Resource bounds shared by every decision procedure and search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest number of level vertices `d^n` a permutation may act on.
    pub point_cap: usize,
    /// Largest group order enumerated element by element.
    pub enum_cap: u64,
    /// Largest number of distinct reduced words explored by `is_identity`.
    pub identity_cap: usize,
    /// Largest number of (section, phase) states visited on a boundary point.
    pub state_cap: usize,
    /// Largest number of words a box search may enumerate.
    pub word_cap: u64,
    /// Largest number of search nodes a centralizer backtrack may visit.
    pub node_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            point_cap: 1 << 14,
            enum_cap: 10_000_000,
            identity_cap: 1_000_000,
            state_cap: 1_000_000,
            word_cap: 2_000_000,
            node_cap: 2_000_000,
        }
    }
}
