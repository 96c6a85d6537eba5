use super::eval::{Domain, Evaluator};
use crate::error::{Error, Result};
use crate::syntax::{ActSet, Action, Formula, Trace};

/// The positions of a trace: lasso positions loop back, a finite trace ends
/// in a terminal position with no successor.
pub(crate) struct TraceModel {
    labels: Vec<Option<Action>>,
    succ: Vec<usize>,
}

impl TraceModel {
    pub fn new(t: &Trace) -> Self {
        let mut labels: Vec<Option<Action>> = t.prefix.iter().cloned().map(Some).collect();
        match &t.cycle {
            Some(c) => {
                labels.extend(c.iter().cloned().map(Some));
                let n = labels.len();
                let back = t.prefix.len();
                let succ = (0..n).map(|i| if i + 1 < n { i + 1 } else { back }).collect();
                TraceModel { labels, succ }
            }
            None => {
                labels.push(None);
                let n = labels.len();
                let succ = (0..n).map(|i| (i + 1).min(n - 1)).collect();
                TraceModel { labels, succ }
            }
        }
    }
}

impl Domain for TraceModel {
    fn size(&self) -> usize {
        self.labels.len()
    }

    fn diamond(&self, acts: &ActSet, target: &[bool]) -> Vec<bool> {
        (0..self.labels.len())
            .map(|i| match &self.labels[i] {
                Some(a) => acts.contains(a) && target[self.succ[i]],
                None => false,
            })
            .collect()
    }

    fn boxed(&self, acts: &ActSet, target: &[bool]) -> Vec<bool> {
        (0..self.labels.len())
            .map(|i| match &self.labels[i] {
                Some(a) => !acts.contains(a) || target[self.succ[i]],
                None => true,
            })
            .collect()
    }
}

/// Outcome of an evaluation together with the longest fixpoint iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalStats {
    pub holds: bool,
    pub positions: usize,
    pub max_rounds: usize,
}

/// Linear-time satisfaction of a closed guarded formula on a lasso.
pub fn eval_linear(f: &Formula, t: &Trace) -> Result<bool> {
    if t.is_finite() {
        return Err(Error::FiniteTrace);
    }
    eval_finfinite(f, t)
}

/// Satisfaction over finite or infinite traces. On a finite trace the empty
/// suffix falsifies every diamond and satisfies every box.
pub fn eval_finfinite(f: &Formula, t: &Trace) -> Result<bool> {
    Ok(eval_trace_stats(f, t)?.holds)
}

pub fn eval_trace_stats(f: &Formula, t: &Trace) -> Result<EvalStats> {
    f.check_closed_guarded()?;
    if t.cycle.as_ref().is_some_and(|c| c.is_empty()) {
        return Err(Error::parse(0, "empty cycle"));
    }
    Ok(eval_unchecked(f, &TraceModel::new(t)))
}

/// Evaluates without re-checking the formula; used by sweeps.
pub(crate) fn eval_unchecked(f: &Formula, model: &TraceModel) -> EvalStats {
    let mut ev = Evaluator::new(model);
    let set = ev.eval(f);
    EvalStats { holds: set[0], positions: model.size(), max_rounds: ev.max_rounds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, Fixpoints};
    use crate::syntax::{parse_formula, parse_trace, Alphabet};
    use proptest::prelude::*;

    fn holds(f: &str, t: &str, al: &str) -> bool {
        let al = Alphabet::parse(al).unwrap();
        eval_finfinite(&parse_formula(f, &al).unwrap(), &parse_trace(t, &al).unwrap()).unwrap()
    }

    #[test]
    fn lasso_examples() {
        assert!(holds("[a][a]ff", "(a.b)", "a,b"));
        assert!(holds("[a](<a>tt | <{b,c}>tt)", "(a.b)", "a,b,c"));
        assert!(holds("max X.<a>X", "(a)", "a,b"));
        assert!(!holds("max X.<a>X", "(a.b)", "a,b"));
        assert!(holds("min X.(<b>tt | <a>X)", "a.a(b)", "a,b"));
        assert!(!holds("min X.(<b>tt | <a>X)", "(a)", "a,b"));
    }

    #[test]
    fn finite_examples() {
        assert!(!holds("<a>tt", "", "a,b"));
        assert!(holds("[a]ff", "", "a,b"));
        assert!(holds("<a>tt", "a", "a,b"));
        assert!(holds("max X.[a]X", "a.a", "a,b"));
        assert!(!holds("min X.<a>X", "a.a", "a,b"));
    }

    #[test]
    fn linear_mode_needs_a_lasso() {
        let al = Alphabet::parse("a").unwrap();
        let f = parse_formula("tt", &al).unwrap();
        assert!(matches!(eval_linear(&f, &parse_trace("a", &al).unwrap()), Err(Error::FiniteTrace)));
    }

    proptest! {
        #[test]
        fn dual_complements(seed in any::<u64>(), t in 0usize..200) {
            let al = Alphabet::parse("a,b").unwrap();
            let f = corpus::random_fixpoint_formula(&mut corpus::rng(seed), &al, Fixpoints::Greatest, 20);
            let mut ts = crate::semantics::lassos(&al, 4);
            ts.extend(crate::semantics::finite_traces(&al, 4));
            let t = &ts[t % ts.len()];
            prop_assert_ne!(eval_finfinite(&f, t).unwrap(), eval_finfinite(&f.dual(), t).unwrap());
        }

        #[test]
        fn rounds_are_bounded(seed in any::<u64>(), least in any::<bool>(), t in 0usize..200) {
            let al = Alphabet::parse("a,b").unwrap();
            let kind = if least { Fixpoints::Least } else { Fixpoints::Greatest };
            let f = corpus::random_fixpoint_formula(&mut corpus::rng(seed), &al, kind, 20);
            let ts = crate::semantics::lassos(&al, 5);
            let st = eval_trace_stats(&f, &ts[t % ts.len()]).unwrap();
            prop_assert!(st.max_rounds <= st.positions + 1);
        }
    }
}
