use super::step::Stepper;
use super::weak::{can_weakly, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::syntax::{Action, Alphabet, Label, Monitor, Var};
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// Every state reachable from `m` by silent steps or actions of `alphabet`.
pub fn reach(m: &Monitor, alphabet: &Alphabet) -> Result<BTreeSet<Monitor>> {
    reach_with(&Stepper::new(), m, alphabet, DEFAULT_CAP)
}

pub fn reach_with(stepper: &Stepper, m: &Monitor, alphabet: &Alphabet, cap: usize) -> Result<BTreeSet<Monitor>> {
    let mut labels = vec![Label::Tau];
    labels.extend(alphabet.actions().iter().cloned().map(Label::Act));
    let mut seen: HashSet<Monitor> = HashSet::from([m.clone()]);
    let mut stack = vec![m.clone()];
    while let Some(n) = stack.pop() {
        for l in &labels {
            for n2 in stepper.step(&n, l) {
                if !seen.contains(&n2) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    seen.insert(n2.clone());
                    stack.push(n2);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The syntactic state set of a regular monitor, an over-approximation of
/// `reach` that coincides with it on closed monitors.
pub fn states(m: &Monitor) -> Result<BTreeSet<Monitor>> {
    if !m.is_regular() {
        return Err(Error::MonitorClass("states() needs a regular monitor".into()));
    }
    Ok(states_of(m))
}

fn states_of(m: &Monitor) -> BTreeSet<Monitor> {
    match m {
        Monitor::Verdict(_) | Monitor::Var(_) => BTreeSet::from([m.clone()]),
        Monitor::Prefix(_, n) => {
            let mut s = states_of(n);
            s.insert(m.clone());
            s
        }
        Monitor::Sum(l, r) => {
            let mut s = states_skip(l);
            s.extend(states_skip(r));
            s.insert(m.clone());
            s
        }
        Monitor::Rec(x, n) => states_of(n).iter().map(|k| k.subst(x, m)).collect(),
        Monitor::Conj(..) | Monitor::Disj(..) => BTreeSet::new(),
    }
}

fn states_skip(m: &Monitor) -> BTreeSet<Monitor> {
    match m {
        Monitor::Verdict(_) | Monitor::Var(_) => BTreeSet::from([m.clone()]),
        Monitor::Prefix(_, n) => states_of(n),
        Monitor::Sum(l, r) => {
            let mut s = states_skip(l);
            s.extend(states_skip(r));
            s
        }
        _ => states_of(m),
    }
}

/// Actions each term can weakly perform, read off the syntax. Parallel
/// compositions are under-approximated by intersection.
fn syntactic_actions(m: &Monitor, alphabet: &Alphabet) -> BTreeMap<Monitor, BTreeSet<Action>> {
    let binders = m.binders();
    let mut var_acts: BTreeMap<Var, BTreeSet<Action>> = binders.keys().map(|x| (x.clone(), BTreeSet::new())).collect();
    fn acts(n: &Monitor, al: &Alphabet, env: &BTreeMap<Var, BTreeSet<Action>>) -> BTreeSet<Action> {
        match n {
            Monitor::Verdict(_) => al.actions().iter().cloned().collect(),
            Monitor::Prefix(a, _) => BTreeSet::from([a.clone()]),
            Monitor::Sum(l, r) => {
                let mut s = acts(l, al, env);
                s.extend(acts(r, al, env));
                s
            }
            Monitor::Conj(l, r) | Monitor::Disj(l, r) => {
                let a = acts(l, al, env);
                let b = acts(r, al, env);
                a.intersection(&b).cloned().collect()
            }
            Monitor::Rec(_, b) => acts(b, al, env),
            Monitor::Var(x) => env.get(x).cloned().unwrap_or_default(),
        }
    }
    loop {
        let mut changed = false;
        for (x, body) in &binders {
            let a = acts(body, alphabet, &var_acts);
            if var_acts.get(x) != Some(&a) {
                var_acts.insert(x.clone(), a);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    m.submonitors().into_iter().map(|n| {
        let a = acts(&n, alphabet, &var_acts);
        (n, a)
    }).collect()
}

/// Sufficient syntactic condition for reactivity: every position a run can
/// reach (the root, prefix continuations, recursion bodies and parallel
/// components) can weakly perform every action.
pub fn is_syntactically_reactive(m: &Monitor, alphabet: &Alphabet) -> bool {
    let m = if m.has_unique_binders() { m.clone() } else { m.with_unique_binders() };
    let table = syntactic_actions(&m, alphabet);
    let full = |n: &Monitor| table.get(n).is_some_and(|a| a.len() == alphabet.len());
    if !full(&m) {
        return false;
    }
    m.submonitors().iter().all(|n| match n {
        Monitor::Prefix(_, k) | Monitor::Rec(_, k) => full(k),
        Monitor::Conj(l, r) | Monitor::Disj(l, r) => full(l) && full(r),
        _ => true,
    })
}

/// Every reachable state can weakly perform every action. Tries the
/// syntactic condition first, then explores the reachable states.
pub fn is_reactive(m: &Monitor, alphabet: &Alphabet) -> Result<bool> {
    is_reactive_capped(m, alphabet, DEFAULT_CAP)
}

pub fn is_reactive_capped(m: &Monitor, alphabet: &Alphabet, cap: usize) -> Result<bool> {
    if is_syntactically_reactive(m, alphabet) {
        return Ok(true);
    }
    let stepper = Stepper::new();
    for n in reach_with(&stepper, m, alphabet, cap)? {
        for a in alphabet.actions() {
            if !can_weakly(&stepper, &n, a, cap)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
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

    #[test]
    fn reactivity() {
        assert!(is_reactive(&m("a.no + b.yes"), &ab()).unwrap());
        assert!(is_reactive(&m("rec x.(a.x + b.yes)"), &ab()).unwrap());
        assert!(!is_reactive(&m("a.no"), &ab()).unwrap());
        assert!(!is_reactive(&m("a.(a.yes) + b.no"), &ab()).unwrap());
        assert!(!is_syntactically_reactive(&m("a.yes && b.yes"), &ab()));
        assert!(is_reactive(&m("(a.yes + b.no) && (b.no + a.yes)"), &ab()).unwrap());
    }

    #[test]
    fn state_sets() {
        let r = m("rec x.(a.x + b.yes)");
        let s = states(&r).unwrap();
        assert_eq!(s, reach(&r, &ab()).unwrap());
        assert_eq!(s.len(), 3);
        assert!(states(&m("a.yes && b.no")).is_err());
    }

    #[test]
    fn vacuous_binders_escape_the_bound() {
        let r = m("rec x.yes");
        assert_eq!(reach(&r, &ab()).unwrap().len(), 2);
        assert_eq!(states(&r).unwrap().len(), 1);
        assert_eq!(r.state_size(), 1);
    }

    fn binders_used(n: &Monitor) -> bool {
        n.binders().iter().all(|(x, body)| body.free_vars().contains(x))
    }

    proptest! {
        #[test]
        fn reach_matches_states(seed in any::<u64>()) {
            let al = ab();
            let mut rng = corpus::rng(seed);
            let mon = corpus::random_monitor(&mut rng, &al, 12);
            prop_assume!(mon.is_regular() && binders_used(&mon));
            let r = reach(&mon, &al).unwrap();
            prop_assert_eq!(&r, &states(&mon).unwrap());
            prop_assert!(r.len() <= mon.state_size());
        }

        #[test]
        fn syntactic_check_is_sound(seed in any::<u64>()) {
            let al = ab();
            let mon = corpus::random_monitor(&mut corpus::rng(seed), &al, 10);
            if is_syntactically_reactive(&mon, &al) {
                let stepper = Stepper::new();
                for n in reach(&mon, &al).unwrap() {
                    for a in al.actions() {
                        prop_assert!(can_weakly(&stepper, &n, a, DEFAULT_CAP).unwrap());
                    }
                }
            }
        }
    }
}
