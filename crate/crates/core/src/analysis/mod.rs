//! Decision procedures and diagnostics on automaton groups.

mod elements;
mod levels;
mod nucleus;
mod perm;
mod properties;
mod recurrence;

pub use elements::Overflow;
pub(crate) use levels::level_size;
pub use levels::{level_permutations, level_quotient_order, spherical_transitivity};
pub use nucleus::{
    is_contracting, nucleus, nucleus_with_schedule, restriction_depth, BoundKind, Contraction,
    Depth, NucleusElement, NucleusReport, NucleusStatus, Schedule, Witness,
};
pub use perm::StabilizerChain;
pub use properties::{
    check_tau_onto, connecting_word, epsilon_letter_graph, expansion_rule, is_nuclear, is_smooth,
    open_set_condition, ExpansionRule,
};
pub use recurrence::{recurrence, LetterRecurrence, RecurrenceReport, RecurrenceStatus};

/// Budgets shared by the closure procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Distinct candidate elements the nucleus closure may create.
    pub max_elements: usize,
    /// Longest reduced word accepted as a nucleus candidate.
    pub max_len: usize,
    /// Longest product searched for by the recurrence check.
    pub search_len: usize,
    /// Largest `|A|^n` for level computations.
    pub level_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 512,
            max_len: 12,
            search_len: 8,
            level_cap: 100_000,
        }
    }
}
