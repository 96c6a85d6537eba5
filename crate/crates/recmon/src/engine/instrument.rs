use super::step::Stepper;
use super::weak::DEFAULT_CAP;
use crate::error::{Error, Result};
use crate::semantics::Lts;
use crate::syntax::{Action, Label, Monitor, Verdict};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};

/// A monitor running alongside a process state.
pub type Config = (Monitor, usize);

/// How an instrumented step was derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// Monitor and process move together on an action.
    Mon,
    /// The process moves on an action the monitor cannot analyse.
    Ter,
    /// The process moves silently.
    AsyncProcess,
    /// The monitor moves silently.
    AsyncMonitor,
}

/// One-step transitions of an instrumented configuration. `None` labels are
/// silent.
pub fn instrumented_steps(stepper: &Stepper, lts: &Lts, (m, p): &Config) -> Vec<(Option<usize>, Rule, Config)> {
    let mut out = Vec::new();
    let m_tau = stepper.step(m, &Label::Tau);
    for &(l, q) in lts.edges(*p) {
        match l {
            None => out.push((None, Rule::AsyncProcess, (m.clone(), q))),
            Some(a) => {
                let act = lts.alphabet().actions()[a].clone();
                let ms = stepper.step(m, &Label::Act(act));
                if ms.is_empty() {
                    if m_tau.is_empty() {
                        out.push((Some(a), Rule::Ter, (Monitor::end(), q)));
                    }
                } else {
                    for m2 in ms {
                        out.push((Some(a), Rule::Mon, (m2, q)));
                    }
                }
            }
        }
    }
    for m2 in m_tau {
        out.push((None, Rule::AsyncMonitor, (m2, *p)));
    }
    out
}

fn close(stepper: &Stepper, lts: &Lts, start: Vec<Config>, cap: usize) -> Result<HashSet<Config>> {
    let mut seen: HashSet<Config> = HashSet::new();
    let mut stack = Vec::new();
    for c in start {
        if seen.insert(c.clone()) {
            stack.push(c);
        }
    }
    while let Some(c) = stack.pop() {
        for (l, _, c2) in instrumented_steps(stepper, lts, &c) {
            if l.is_none() && !seen.contains(&c2) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(c2.clone());
                stack.push(c2);
            }
        }
    }
    Ok(seen)
}

fn action_step(stepper: &Stepper, lts: &Lts, set: &HashSet<Config>, a: usize, cap: usize) -> Result<HashSet<Config>> {
    let mut next = Vec::new();
    for c in set {
        for (l, _, c2) in instrumented_steps(stepper, lts, c) {
            if l == Some(a) {
                next.push(c2);
            }
        }
    }
    close(stepper, lts, next, cap)
}

/// All configurations reachable from `(m, p)` along the finite trace `s`.
pub fn instrumented_after(m: &Monitor, lts: &Lts, p: usize, s: &[Action]) -> Result<HashSet<Config>> {
    let stepper = Stepper::new();
    let mut cur = close(&stepper, lts, vec![(m.clone(), p)], DEFAULT_CAP)?;
    for a in s {
        let Some(ai) = lts.alphabet().index_of(a) else {
            return Ok(HashSet::new());
        };
        cur = action_step(&stepper, lts, &cur, ai, DEFAULT_CAP)?;
    }
    Ok(cur)
}

/// Every `(s, v)` with `<m, p> =s=> <v, p'>` and `|s| <= depth`, starting
/// from the initial state of `lts`.
pub fn instrument_exhaustive(m: &Monitor, lts: &Lts, depth: usize) -> Result<BTreeSet<(Vec<Action>, Verdict)>> {
    let stepper = Stepper::new();
    let mut out = BTreeSet::new();
    let start = close(&stepper, lts, vec![(m.clone(), lts.initial())], DEFAULT_CAP)?;
    let mut stack = vec![(Vec::<Action>::new(), start)];
    while let Some((trace, set)) = stack.pop() {
        for (n, _) in &set {
            if let Some(v) = n.as_verdict() {
                out.insert((trace.clone(), v));
            }
        }
        if trace.len() < depth {
            for a in 0..lts.alphabet().len() {
                let next = action_step(&stepper, lts, &set, a, DEFAULT_CAP)?;
                if !next.is_empty() {
                    let mut t2 = trace.clone();
                    t2.push(lts.alphabet().actions()[a].clone());
                    stack.push((t2, next));
                }
            }
        }
    }
    Ok(out)
}

/// One recorded step of a random run.
#[derive(Clone, Debug, Serialize)]
pub struct TranscriptStep {
    pub label: String,
    pub rule: Rule,
    pub monitor: String,
    pub state: String,
}

/// A reproducible random run of an instrumented system.
#[derive(Clone, Debug, Serialize)]
pub struct Transcript {
    pub seed: u64,
    pub start_monitor: String,
    pub start_state: String,
    pub steps: Vec<TranscriptStep>,
    /// The observed (external) trace.
    pub trace: String,
    /// The verdict the monitor holds at the end, if any.
    pub verdict: Option<Verdict>,
}

/// Runs for at most `fuel` steps, choosing uniformly between external and
/// silent moves and alternating between process and monitor silent moves
/// when both are possible.
pub fn instrument_random(m: &Monitor, lts: &Lts, seed: u64, fuel: usize) -> Transcript {
    let stepper = Stepper::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur: Config = (m.clone(), lts.initial());
    let mut steps = Vec::new();
    let mut observed = Vec::new();
    let mut prefer_process = true;
    for _ in 0..fuel {
        let moves = instrumented_steps(&stepper, lts, &cur);
        if moves.is_empty() {
            break;
        }
        let (ext, silent): (Vec<_>, Vec<_>) = moves.into_iter().partition(|(l, _, _)| l.is_some());
        let pick_silent = match (ext.is_empty(), silent.is_empty()) {
            (true, _) => true,
            (_, true) => false,
            _ => rng.gen_bool(0.5),
        };
        let chosen = if pick_silent {
            let (proc_moves, mon_moves): (Vec<_>, Vec<_>) =
                silent.into_iter().partition(|(_, r, _)| *r == Rule::AsyncProcess);
            let pool = match (proc_moves.is_empty(), mon_moves.is_empty()) {
                (false, false) => {
                    let p = if prefer_process { proc_moves } else { mon_moves };
                    prefer_process = !prefer_process;
                    p
                }
                (false, true) => proc_moves,
                _ => mon_moves,
            };
            pool.choose(&mut rng).cloned()
        } else {
            ext.choose(&mut rng).cloned()
        };
        let Some((l, rule, next)) = chosen else { break };
        let label = match l {
            None => "tau".to_string(),
            Some(a) => {
                let act = lts.alphabet().actions()[a].clone();
                observed.push(act.name().to_string());
                act.name().to_string()
            }
        };
        steps.push(TranscriptStep {
            label,
            rule,
            monitor: next.0.to_string(),
            state: lts.state_name(next.1).to_string(),
        });
        cur = next;
    }
    Transcript {
        seed,
        start_monitor: m.to_string(),
        start_state: lts.state_name(lts.initial()).to_string(),
        steps,
        trace: observed.join("."),
        verdict: cur.0.as_verdict(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_monitor, parse_process, Alphabet};

    fn setup(mon: &str, proc: &str) -> (Monitor, Lts) {
        let al = Alphabet::parse("a,b").unwrap();
        let m = parse_monitor(mon, &al).unwrap();
        let lts = Lts::from_process(&parse_process(proc, &al).unwrap(), &al).unwrap();
        (m, lts)
    }

    #[test]
    fn rules() {
        let (m, lts) = setup("a.no", "b.nil");
        let steps = instrumented_steps(&Stepper::new(), &lts, &(m, lts.initial()));
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].1, Rule::Ter);
        assert_eq!(steps[0].2 .0, Monitor::end());
        let (m, lts) = setup("a.no", "tau.a.nil");
        let steps = instrumented_steps(&Stepper::new(), &lts, &(m, lts.initial()));
        assert_eq!(steps[0].1, Rule::AsyncProcess);
        let (m, lts) = setup("rec x.a.x", "a.nil");
        let steps = instrumented_steps(&Stepper::new(), &lts, &(m, lts.initial()));
        assert!(steps.iter().all(|s| s.1 == Rule::AsyncMonitor));
    }

    #[test]
    fn exhaustive_verdicts() {
        let (m, lts) = setup("rec x.(a.x + b.no)", "rec y.(a.y + b.nil)");
        let got = instrument_exhaustive(&m, &lts, 3).unwrap();
        assert!(got.contains(&(vec![Action::new("b")], Verdict::No)));
        assert!(got.iter().all(|(s, v)| *v == Verdict::No && s.last() == Some(&Action::new("b"))));
        let after = instrumented_after(&m, &lts, lts.initial(), &[Action::new("a"), Action::new("b")]).unwrap();
        assert!(after.iter().any(|(n, _)| *n == Monitor::no()));
    }

    #[test]
    fn random_runs_are_reproducible() {
        let (m, lts) = setup("rec x.(a.x + b.yes)", "rec y.(a.y + b.y + tau.y)");
        let t1 = instrument_random(&m, &lts, 7, 30);
        let t2 = instrument_random(&m, &lts, 7, 30);
        assert_eq!(serde_json::to_string(&t1).unwrap(), serde_json::to_string(&t2).unwrap());
        assert!(t1.steps.len() <= 30);
        if t1.trace.contains('b') {
            assert_eq!(t1.verdict, Some(Verdict::Yes));
        }
    }
}
