//! Abstract syntax for formulas, monitors, processes and traces, with
//! parsers and printers for the textual forms.

mod fragment;
mod formula;
mod lexer;
mod monitor;
mod parse;
mod process;
mod trace;

pub use fragment::{classify, Fragments};
pub use formula::Formula;
pub use monitor::{Monitor, Verdict};
pub use parse::{
    infer_alphabet, parse_formula, parse_formula_open, parse_lts_header, parse_monitor,
    parse_process, parse_trace, InputKind,
};
pub use process::{Label, Process};
pub use trace::Trace;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// An observable action name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Action(Arc<str>);

impl Action {
    pub fn new(name: &str) -> Self {
        Action(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A fixpoint or recursion variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite, non-empty, sorted set of actions. `tau` is never a member.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Alphabet {
    actions: Vec<Action>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut actions = Vec::new();
        for n in names {
            let n = n.as_ref().trim();
            if n.is_empty() {
                continue;
            }
            if n == "tau" {
                return Err(Error::ReservedTau);
            }
            if !lexer::is_ident(n) {
                return Err(Error::parse(0, format!("`{n}` is not a valid action name")));
            }
            actions.push(Action::new(n));
        }
        actions.sort();
        actions.dedup();
        if actions.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet { actions })
    }

    /// Parses a comma- or whitespace-separated list such as `a,b,c`.
    pub fn parse(s: &str) -> Result<Self> {
        Alphabet::new(s.split(|c: char| c == ',' || c.is_whitespace()))
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn index_of(&self, a: &Action) -> Option<usize> {
        self.actions.binary_search(a).ok()
    }

    pub fn contains(&self, a: &Action) -> bool {
        self.index_of(a).is_some()
    }

    pub fn get(&self, name: &str) -> Option<&Action> {
        self.actions.iter().find(|a| a.name() == name)
    }

    pub fn full(&self) -> ActSet {
        ActSet(self.actions.iter().cloned().collect())
    }

    pub fn complement(&self, set: &ActSet) -> ActSet {
        ActSet(self.actions.iter().filter(|a| !set.contains(a)).cloned().collect())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.actions.iter().map(|a| a.name()).collect();
        f.write_str(&names.join(","))
    }
}

/// A concrete set of actions used by modalities.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct ActSet(pub BTreeSet<Action>);

impl ActSet {
    pub fn single(a: Action) -> Self {
        ActSet(std::iter::once(a).collect())
    }

    pub fn of<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        ActSet(names.into_iter().map(|n| Action::new(n.as_ref())).collect())
    }

    pub fn contains(&self, a: &Action) -> bool {
        self.0.contains(a)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Action> {
        self.0.iter()
    }
}

impl fmt::Display for ActSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|a| a.name()).collect();
        f.write_str(&names.join(","))
    }
}

/// Picks a name based on `base` that is not in `taken`.
pub(crate) fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    let mut i = 1;
    loop {
        let cand = format!("{base}_{i}");
        if !taken.contains(&cand) {
            return cand;
        }
        i += 1;
    }
}
