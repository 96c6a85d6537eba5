//! From parallel monitors to deterministic regular ones: alternating
//! automata, NFAs, DFAs, minimisation and monitor emission.

mod alternating;
mod automata;
mod pipeline;

pub use alternating::{monitor_to_alternating, monitor_to_alternating_unchecked, Alternating, Clause, Polarity};
pub use automata::{minimize_colored, Dfa, Nfa, AUTOMATON_CAP};
pub use pipeline::{
    determinize, dfa_to_regular_monitor, is_consistent, lasso_verdict, monitor_dfa, parallel_to_regular,
    verdict_difference, verdict_equivalent, EquivMode, MonitorAutomata, StageSizes,
};
