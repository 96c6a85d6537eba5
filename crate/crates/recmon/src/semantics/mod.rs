//! Linear-time, finfinite and branching-time semantics.

mod branching;
mod eval;
mod linear;
mod lts;
mod traces;

pub use branching::{eval_branching, satisfying_states};
pub use linear::{eval_finfinite, eval_linear, eval_trace_stats, EvalStats};
pub use lts::{process_steps, Lts, PROCESS_STATE_CAP};
pub use traces::{
    distinct_lassos, finite_traces, lassos, produced_finfinite_traces, produces_lasso, trace_process, words,
};

#[allow(unused_imports)]
pub(crate) use linear::{eval_unchecked, TraceModel};
