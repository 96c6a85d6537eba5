use super::step::Stepper;
use crate::error::{Error, Result};
use crate::syntax::{Action, Alphabet, Label, Monitor, Verdict};
use std::collections::HashSet;

/// Default cap on the number of distinct monitor states in one closure.
pub const DEFAULT_CAP: usize = 100_000;

/// Silent closure of a set of states.
pub fn tau_closure(stepper: &Stepper, start: impl IntoIterator<Item = Monitor>, cap: usize) -> Result<HashSet<Monitor>> {
    let mut seen: HashSet<Monitor> = HashSet::new();
    let mut stack = Vec::new();
    for m in start {
        if seen.insert(m.clone()) {
            stack.push(m);
        }
    }
    while let Some(m) = stack.pop() {
        for n in stepper.step(&m, &Label::Tau) {
            if !seen.contains(&n) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(n.clone());
                stack.push(n);
            }
        }
    }
    Ok(seen)
}

/// Closed set after one more action: `{ n' | n =a=> n' }`.
pub fn weak_step(stepper: &Stepper, set: &HashSet<Monitor>, a: &Action, cap: usize) -> Result<HashSet<Monitor>> {
    let label = Label::Act(a.clone());
    let mut next = Vec::new();
    for m in set {
        next.extend(stepper.step(m, &label));
    }
    tau_closure(stepper, next, cap)
}

/// All states `n` with `m =s=> n` under the given stepper.
pub fn weak_after_with(stepper: &Stepper, m: &Monitor, s: &[Action], cap: usize) -> Result<HashSet<Monitor>> {
    let mut cur = tau_closure(stepper, [m.clone()], cap)?;
    for a in s {
        if cur.is_empty() {
            break;
        }
        cur = weak_step(stepper, &cur, a, cap)?;
    }
    Ok(cur)
}

/// All states reachable from `m` along the finite trace `s` (System O).
pub fn weak_after(m: &Monitor, s: &[Action]) -> Result<HashSet<Monitor>> {
    weak_after_with(&Stepper::new(), m, s, DEFAULT_CAP)
}

/// `m =s=> yes`.
pub fn accepts(m: &Monitor, s: &[Action]) -> Result<bool> {
    Ok(weak_after(m, s)?.contains(&Monitor::yes()))
}

/// `m =s=> no`.
pub fn rejects(m: &Monitor, s: &[Action]) -> Result<bool> {
    Ok(weak_after(m, s)?.contains(&Monitor::no()))
}

/// Whether `m =a=> n` for some `n`.
pub fn can_weakly(stepper: &Stepper, m: &Monitor, a: &Action, cap: usize) -> Result<bool> {
    let label = Label::Act(a.clone());
    let closure = tau_closure(stepper, [m.clone()], cap)?;
    Ok(closure.iter().any(|n| !stepper.step(n, &label).is_empty()))
}

/// Verdicts reached on one finite trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictRow {
    pub trace: Vec<Action>,
    pub accepts: bool,
    pub rejects: bool,
}

/// Acceptance and rejection of every finite trace of length at most
/// `max_len`, computed incrementally along the trace tree.
pub fn verdict_table(m: &Monitor, alphabet: &Alphabet, max_len: usize) -> Result<Vec<VerdictRow>> {
    verdict_table_with(&Stepper::new(), m, alphabet, max_len, DEFAULT_CAP)
}

pub fn verdict_table_with(
    stepper: &Stepper,
    m: &Monitor,
    alphabet: &Alphabet,
    max_len: usize,
    cap: usize,
) -> Result<Vec<VerdictRow>> {
    let yes = Monitor::Verdict(Verdict::Yes);
    let no = Monitor::Verdict(Verdict::No);
    let mut rows = Vec::new();
    let mut stack = vec![(Vec::new(), tau_closure(stepper, [m.clone()], cap)?)];
    while let Some((trace, set)) = stack.pop() {
        rows.push(VerdictRow { trace: trace.clone(), accepts: set.contains(&yes), rejects: set.contains(&no) });
        if trace.len() < max_len {
            for a in alphabet.actions() {
                let next = weak_step(stepper, &set, a, cap)?;
                let mut t2 = trace.clone();
                t2.push(a.clone());
                stack.push((t2, next));
            }
        }
    }
    rows.sort_by(|x, y| (x.trace.len(), &x.trace).cmp(&(y.trace.len(), &y.trace)));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::syntax::parse_monitor;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::parse("a,b").unwrap()
    }

    fn m(src: &str) -> Monitor {
        parse_monitor(src, &ab()).unwrap()
    }

    fn w(s: &str) -> Vec<Action> {
        s.chars().map(|c| Action::new(&c.to_string())).collect()
    }

    #[test]
    fn examples() {
        assert!(accepts(&m("rec x.(a.x + b.yes)"), &w("ab")).unwrap());
        assert!(accepts(&m("rec x.(a.x + b.yes)"), &w("aaaba")).unwrap());
        assert!(!accepts(&m("rec x.(a.x + b.yes)"), &w("aaa")).unwrap());
        assert!(rejects(&m("no"), &w("")).unwrap());
        let par = m("(a.yes + b.end) && (b.yes + a.end)");
        for row in verdict_table(&par, &ab(), 6).unwrap() {
            assert!(!row.accepts && !row.rejects);
        }
        for row in verdict_table(&m("a.a.yes || a.b.yes"), &ab(), 6).unwrap() {
            assert!(!row.accepts);
        }
        assert!(accepts(&m("a.a.yes || a.yes"), &w("aa")).unwrap());
    }

    #[test]
    fn table_is_ordered_and_complete() {
        let rows = verdict_table(&m("a.yes + b.no"), &ab(), 2).unwrap();
        assert_eq!(rows.len(), 7);
        assert!(rows[0].trace.is_empty() && !rows[0].accepts);
        assert!(rows.iter().filter(|r| r.trace.first() == Some(&Action::new("a"))).all(|r| r.accepts));
    }

    proptest! {
        #[test]
        fn verdicts_are_irrevocable(seed in any::<u64>()) {
            let al = ab();
            let mon = corpus::random_reactive_monitor(&mut corpus::rng(seed), &al, 10);
            let rows = verdict_table(&mon, &al, 4).unwrap();
            let index: std::collections::HashMap<_, _> = rows.iter().map(|r| (r.trace.clone(), r)).collect();
            for r in &rows {
                if let Some((_, pre)) = r.trace.split_last() {
                    let p = index[&pre.to_vec()];
                    prop_assert!(!p.accepts || r.accepts);
                    prop_assert!(!p.rejects || r.rejects);
                }
            }
        }

        #[test]
        fn systems_agree(seed in any::<u64>()) {
            let al = ab();
            let mon = corpus::random_monitor(&mut corpus::rng(seed), &al, 10);
            let o = verdict_table(&mon, &al, 4).unwrap();
            let n = verdict_table_with(&Stepper::system_n(&mon), &mon, &al, 4, DEFAULT_CAP).unwrap();
            prop_assert_eq!(o, n);
        }
    }
}
