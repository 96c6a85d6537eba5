//! Monitor execution: transition systems O and N, weak transitions,
//! acceptance and rejection, reactivity, and instrumentation.

mod instrument;
mod props;
mod step;
mod weak;

pub use instrument::{
    instrument_exhaustive, instrument_random, instrumented_after, instrumented_steps, Config, Rule, Transcript,
    TranscriptStep,
};
pub use props::{is_reactive, is_reactive_capped, is_syntactically_reactive, reach, reach_with, states};
pub use step::{Stepper, System};
pub use weak::{
    accepts, can_weakly, rejects, tau_closure, verdict_table, verdict_table_with, weak_after, weak_after_with,
    weak_step, VerdictRow, DEFAULT_CAP,
};
