//! Monitor synthesis from formulas, and formula extraction from monitors.

use crate::engine::{is_reactive, reach};
use crate::error::{Error, Result};
use crate::syntax::{classify, ActSet, Alphabet, Formula, Monitor, Var};
use crate::transform::determinize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Which verdicts a partial or branching monitor should be complete for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Reject every violating trace (safety side).
    Violation,
    /// Accept every satisfying trace (co-safety side).
    Satisfaction,
}

fn guarded_choice(acts: &ActSet, m: Monitor, alphabet: &Alphabet, other: Monitor) -> Monitor {
    let co = alphabet.complement(acts);
    let here = Monitor::prefix_all(acts.iter(), &m);
    let there = Monitor::prefix_all(co.iter(), &other);
    match (here, there) {
        (Some(h), Some(t)) => Monitor::sum(h, t),
        (Some(h), None) => h,
        (None, Some(t)) => t,
        (None, None) => other,
    }
}

fn synth(f: &Formula, alphabet: &Alphabet) -> Monitor {
    match f {
        Formula::True => Monitor::yes(),
        Formula::False => Monitor::no(),
        Formula::And(l, r) => Monitor::conj(synth(l, alphabet), synth(r, alphabet)),
        Formula::Or(l, r) => Monitor::disj(synth(l, alphabet), synth(r, alphabet)),
        Formula::Box(a, g) => guarded_choice(a, synth(g, alphabet), alphabet, Monitor::yes()),
        Formula::Diamond(a, g) => guarded_choice(a, synth(g, alphabet), alphabet, Monitor::no()),
        Formula::Max(x, g) | Formula::Min(x, g) => Monitor::Rec(x.clone(), Arc::new(synth(g, alphabet))),
        Formula::Var(x) => Monitor::Var(x.clone()),
    }
}

/// The complete monitor of a fixpoint-free formula: it rejects exactly the
/// violating and accepts exactly the satisfying infinite traces.
pub fn synth_complete(f: &Formula, alphabet: &Alphabet) -> Result<Monitor> {
    if !classify(f).hml {
        return Err(Error::Fragment("complete synthesis needs a fixpoint-free formula".into()));
    }
    f.check_alphabet(alphabet)?;
    Ok(synth(f, alphabet))
}

/// The partial monitor of a guarded formula without least fixpoints
/// (violation mode) or without greatest fixpoints (satisfaction mode).
pub fn synth_partial(f: &Formula, alphabet: &Alphabet, mode: Mode) -> Result<Monitor> {
    f.check_closed_guarded()?;
    f.check_alphabet(alphabet)?;
    let fr = classify(f);
    match mode {
        Mode::Violation if !fr.ltmu_s => return Err(Error::Fragment("violation mode needs a formula without min".into())),
        Mode::Satisfaction if !fr.ltmu_c => {
            return Err(Error::Fragment("satisfaction mode needs a formula without max".into()))
        }
        _ => {}
    }
    Ok(synth(f, alphabet).with_unique_binders())
}

fn synth_branch(f: &Formula, mode: Mode) -> Result<Monitor> {
    let bad = |what: &str| Error::Fragment(format!("{what} is outside the branching-time monitorable fragment"));
    Ok(match (f, mode) {
        (Formula::True, Mode::Violation) => Monitor::end(),
        (Formula::True, Mode::Satisfaction) => Monitor::yes(),
        (Formula::False, Mode::Violation) => Monitor::no(),
        (Formula::False, Mode::Satisfaction) => Monitor::end(),
        (Formula::Box(a, g), Mode::Violation) | (Formula::Diamond(a, g), Mode::Satisfaction) => {
            let body = synth_branch(g, mode)?;
            Monitor::prefix_all(a.iter(), &body).unwrap_or_else(Monitor::end)
        }
        (Formula::And(l, r), Mode::Violation) | (Formula::Or(l, r), Mode::Satisfaction) => {
            Monitor::sum(synth_branch(l, mode)?, synth_branch(r, mode)?)
        }
        (Formula::Max(x, g), Mode::Violation) | (Formula::Min(x, g), Mode::Satisfaction) => {
            Monitor::Rec(x.clone(), Arc::new(synth_branch(g, mode)?))
        }
        (Formula::Var(x), _) => Monitor::Var(x.clone()),
        (Formula::Box(..), _) => return Err(bad("a box")),
        (Formula::Diamond(..), _) => return Err(bad("a diamond")),
        (Formula::And(..), _) => return Err(bad("a conjunction")),
        (Formula::Or(..), _) => return Err(bad("a disjunction")),
        (Formula::Max(..), _) => return Err(bad("a greatest fixpoint")),
        (Formula::Min(..), _) => return Err(bad("a least fixpoint")),
    })
}

/// The regular monitor for an sHML formula (violation mode) or a cHML
/// formula (satisfaction mode) under the branching-time semantics.
pub fn synth_branching(f: &Formula, alphabet: &Alphabet, mode: Mode) -> Result<Monitor> {
    f.check_closed_guarded()?;
    f.check_alphabet(alphabet)?;
    Ok(synth_branch(f, mode)?.with_unique_binders())
}

/// Dispatch over the three synthesis functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SynthKind {
    Complete,
    Partial(Mode),
    Branching(Mode),
}

pub fn synthesize(f: &Formula, alphabet: &Alphabet, kind: SynthKind) -> Result<Monitor> {
    match kind {
        SynthKind::Complete => synth_complete(f, alphabet),
        SynthKind::Partial(m) => synth_partial(f, alphabet, m),
        SynthKind::Branching(m) => synth_branching(f, alphabet, m),
    }
}

/// The structural translation of a recursion-free monitor into a formula:
/// verdicts to constants (`end` to `tt`), prefixes to boxes, sums and
/// conjunctive composition to conjunction, disjunctive composition to
/// disjunction.
pub fn formula_of(m: &Monitor) -> Result<Formula> {
    Ok(match m {
        Monitor::Verdict(crate::syntax::Verdict::No) => Formula::False,
        Monitor::Verdict(_) => Formula::True,
        Monitor::Prefix(a, n) => Formula::boxed(ActSet::single(a.clone()), formula_of(n)?),
        Monitor::Sum(l, r) | Monitor::Conj(l, r) => Formula::and(formula_of(l)?, formula_of(r)?),
        Monitor::Disj(l, r) => Formula::or(formula_of(l)?, formula_of(r)?),
        Monitor::Rec(..) | Monitor::Var(_) => {
            return Err(Error::MonitorClass("formula extraction needs a recursion-free monitor".into()))
        }
    })
}

/// The formula of a recursion-free, syntactically deterministic, reactive
/// regular monitor.
pub fn formula_from_monitor(m: &Monitor, alphabet: &Alphabet) -> Result<Formula> {
    if !m.is_regular() || !m.is_recursion_free() {
        return Err(Error::MonitorClass("expected a recursion-free regular monitor".into()));
    }
    if !m.is_syntactically_deterministic() {
        return Err(Error::MonitorClass("expected a syntactically deterministic monitor".into()));
    }
    if !is_reactive(m, alphabet)? {
        return Err(Error::NotReactive);
    }
    formula_of(m)
}

/// The reactive completion used to relate monitors with their extracted
/// formulas: `end` becomes `yes`, each prefix gets `yes` branches for the
/// other actions, and sums become conjunctive compositions.
pub fn red(m: &Monitor, alphabet: &Alphabet) -> Monitor {
    match m {
        Monitor::Verdict(crate::syntax::Verdict::End) => Monitor::yes(),
        Monitor::Verdict(_) | Monitor::Var(_) => m.clone(),
        Monitor::Prefix(a, n) => guarded_choice(&ActSet::single(a.clone()), red(n, alphabet), alphabet, Monitor::yes()),
        Monitor::Sum(l, r) | Monitor::Conj(l, r) => Monitor::conj(red(l, alphabet), red(r, alphabet)),
        Monitor::Disj(l, r) => Monitor::disj(red(l, alphabet), red(r, alphabet)),
        Monitor::Rec(x, n) => Monitor::Rec(x.clone(), Arc::new(red(n, alphabet))),
    }
}

/// Unfolds the recursion of a complete deterministic regular monitor into a
/// recursion-free one. Fails if some branch needs more than `|reach(m)| + 1`
/// actions to reach a verdict.
pub fn no_rec(m: &Monitor, alphabet: &Alphabet) -> Result<Monitor> {
    if !m.is_regular() {
        return Err(Error::MonitorClass("no_rec needs a regular monitor".into()));
    }
    let cap = reach(m, alphabet)?.len() + 1;
    let m = if m.has_unique_binders() { m.clone() } else { m.with_unique_binders() };
    unfold(&m, &BTreeMap::new(), 0, cap)
}

fn unfold(m: &Monitor, env: &BTreeMap<Var, Monitor>, depth: usize, cap: usize) -> Result<Monitor> {
    match m {
        Monitor::Verdict(_) => Ok(m.clone()),
        Monitor::Prefix(a, n) => {
            if depth + 1 > cap {
                return Err(Error::CapExceeded(cap));
            }
            Ok(Monitor::prefix(a.clone(), unfold(n, env, depth + 1, cap)?))
        }
        Monitor::Sum(l, r) => Ok(Monitor::sum(unfold(l, env, depth, cap)?, unfold(r, env, depth, cap)?)),
        Monitor::Rec(x, n) => {
            let mut env2 = env.clone();
            env2.insert(x.clone(), m.clone());
            unfold(n, &env2, depth, cap)
        }
        Monitor::Var(x) => match env.get(x) {
            Some(Monitor::Rec(_, body)) => {
                let body = (**body).clone();
                unfold(&body, env, depth, cap)
            }
            _ => Err(Error::FreeVariable(x.to_string())),
        },
        Monitor::Conj(..) | Monitor::Disj(..) => Err(Error::MonitorClass("no_rec needs a regular monitor".into())),
    }
}

/// Extracts a fixpoint-free formula from a complete monitor: determinise,
/// unfold recursion, then read the formula off the syntax.
pub fn extract_complete_formula(m: &Monitor, alphabet: &Alphabet) -> Result<Formula> {
    let det = determinize(m, alphabet).map_err(|e| e.at_stage("determinize"))?;
    let flat = no_rec(&det, alphabet).map_err(|e| e.at_stage("no_rec"))?;
    formula_from_monitor(&flat, alphabet).map_err(|e| e.at_stage("formula_from_monitor"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, Fixpoints};
    use crate::engine::verdict_table;
    use crate::semantics::{eval_linear, lassos};
    use crate::syntax::{parse_formula, parse_monitor, Action, Verdict};
    use crate::transform::lasso_verdict;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::parse("a,b").unwrap()
    }

    fn f(src: &str) -> Formula {
        parse_formula(src, &ab()).unwrap()
    }

    fn m(src: &str) -> Monitor {
        parse_monitor(src, &ab()).unwrap()
    }

    #[test]
    fn complete_examples() {
        let al = ab();
        assert_eq!(synth_complete(&f("[a]ff"), &al).unwrap(), m("a.no + b.yes"));
        assert_eq!(synth_complete(&f("<a>tt & [b]ff"), &al).unwrap(), m("(a.yes + b.no) && (b.no + a.yes)"));
        assert!(matches!(synth_complete(&f("max X.[a]X"), &al), Err(Error::Fragment(_))));
    }

    #[test]
    fn partial_examples() {
        let al = ab();
        let got = synth_partial(&f("max X.([a]X & [b]ff)"), &al, Mode::Violation).unwrap();
        assert_eq!(got.to_string(), "rec X.a.X + b.yes && b.no + a.yes");
        assert_eq!(synth_partial(&f("<a>tt"), &al, Mode::Satisfaction).unwrap(), m("a.yes + b.no"));
        assert!(synth_partial(&f("min X.<a>X"), &al, Mode::Violation).is_err());
    }

    #[test]
    fn branching_examples() {
        let al = ab();
        assert_eq!(synth_branching(&f("[a]ff"), &al, Mode::Violation).unwrap(), m("a.no"));
        assert_eq!(synth_branching(&f("max X.[a]X"), &al, Mode::Violation).unwrap().to_string(), "rec X.a.X");
        assert_eq!(synth_branching(&f("tt"), &al, Mode::Satisfaction).unwrap(), Monitor::yes());
        assert_eq!(synth_branching(&f("tt"), &al, Mode::Violation).unwrap(), Monitor::end());
        assert!(synth_branching(&f("<a>tt"), &al, Mode::Violation).is_err());
    }

    #[test]
    fn extraction() {
        let al = ab();
        assert_eq!(formula_from_monitor(&m("a.yes + b.no"), &al).unwrap(), f("[a]tt & [b]ff"));
        assert_eq!(extract_complete_formula(&Monitor::yes(), &al).unwrap(), Formula::True);
        assert_eq!(formula_of(&Monitor::end()).unwrap(), Formula::True);
        assert!(formula_of(&m("rec x.a.x")).is_err());
    }

    #[test]
    fn reduction() {
        let al = ab();
        assert_eq!(red(&Monitor::end(), &al), Monitor::yes());
        assert_eq!(red(&m("a.no"), &al), m("a.no + b.yes"));
        assert_eq!(red(&Monitor::no(), &al), Monitor::no());
    }

    #[test]
    fn unfolding() {
        let al = ab();
        assert_eq!(no_rec(&m("rec x.yes"), &al).unwrap(), Monitor::yes());
        assert_eq!(no_rec(&m("rec x.(a.yes + b.no)"), &al).unwrap(), m("a.yes + b.no"));
        assert!(matches!(no_rec(&m("rec x.(a.x + b.yes)"), &al), Err(Error::CapExceeded(_))));
    }

    proptest! {
        #[test]
        fn complete_monitors_decide(idx in 0usize..2342, t in 0usize..200) {
            let al = ab();
            let fs = corpus::hml_formulas(&al, 3);
            let g = &fs[idx % fs.len()];
            let ts = lassos(&al, 4);
            let t = &ts[t % ts.len()];
            let mon = synth_complete(g, &al).unwrap();
            let expected = if eval_linear(g, t).unwrap() { Verdict::Yes } else { Verdict::No };
            prop_assert_eq!(lasso_verdict(&mon, t, &al).unwrap(), Some(expected));
        }

        #[test]
        fn partial_monitors_are_sound(seed in any::<u64>(), least in any::<bool>(), t in 0usize..200) {
            let al = ab();
            let (kind, mode) = if least { (Fixpoints::Least, Mode::Satisfaction) } else { (Fixpoints::Greatest, Mode::Violation) };
            let g = corpus::random_fixpoint_formula(&mut corpus::rng(seed), &al, kind, 12);
            let ts = lassos(&al, 4);
            let t = &ts[t % ts.len()];
            let mon = synth_partial(&g, &al, mode).unwrap();
            let holds = eval_linear(&g, t).unwrap();
            let v = crate::transform::MonitorAutomata::new(&mon, &al).unwrap().lasso_verdict(t).unwrap();
            match v {
                Some(Verdict::Yes) => prop_assert!(holds),
                Some(Verdict::No) => prop_assert!(!holds),
                _ => prop_assert_eq!(holds, !least),
            }
        }

        #[test]
        fn red_keeps_rejections(seed in any::<u64>()) {
            let al = ab();
            let mon = corpus::random_reactive_monitor(&mut corpus::rng(seed), &al, 8);
            let Ok(det) = determinize(&mon, &al) else { return Ok(()) };
            let a = verdict_table(&det, &al, 6).unwrap();
            let b = verdict_table(&red(&det, &al), &al, 6).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert_eq!(x.rejects, y.rejects, "{} on {:?}", det, x.trace);
            }
        }
    }

    #[test]
    fn red_on_verdict_sums() {
        let al = ab();
        let mon = m("a.(no + no)");
        let a = Action::new("a");
        assert!(!crate::engine::rejects(&mon, &[a.clone()]).unwrap());
        assert!(crate::engine::rejects(&red(&mon, &al), &[a]).unwrap());
    }
}
