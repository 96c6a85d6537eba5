use super::eval::{Domain, Evaluator};
use super::lts::Lts;
use crate::error::Result;
use crate::syntax::{ActSet, Formula};

impl Domain for Lts {
    fn size(&self) -> usize {
        self.num_states()
    }

    fn diamond(&self, acts: &ActSet, target: &[bool]) -> Vec<bool> {
        let idx: Vec<usize> = acts.iter().filter_map(|a| self.alphabet().index_of(a)).collect();
        (0..self.num_states())
            .map(|s| idx.iter().any(|&a| self.weak_succ(s, a).iter().any(|&t| target[t])))
            .collect()
    }

    fn boxed(&self, acts: &ActSet, target: &[bool]) -> Vec<bool> {
        let idx: Vec<usize> = acts.iter().filter_map(|a| self.alphabet().index_of(a)).collect();
        (0..self.num_states())
            .map(|s| idx.iter().all(|&a| self.weak_succ(s, a).iter().all(|&t| target[t])))
            .collect()
    }
}

/// The set of states satisfying a closed guarded formula (weak modalities).
pub fn satisfying_states(f: &Formula, lts: &Lts) -> Result<Vec<bool>> {
    f.check_closed_guarded()?;
    Ok(Evaluator::new(lts).eval(f))
}

/// Branching-time satisfaction at state `s`.
pub fn eval_branching(f: &Formula, lts: &Lts, s: usize) -> Result<bool> {
    Ok(satisfying_states(f, lts)?[s])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, Fixpoints};
    use crate::semantics::{eval_finfinite, finite_traces, lassos, trace_process};
    use crate::syntax::{parse_formula, parse_process, Alphabet};
    use proptest::prelude::*;

    #[test]
    fn process_examples() {
        let al = Alphabet::parse("a,b,c").unwrap();
        let p = parse_process("rec x.(a.b.x + a.a.x + a.nil)", &al).unwrap();
        let lts = Lts::from_process(&p, &al).unwrap();
        for (f, expected) in [("[a][a]ff", false), ("[a](<a>tt | <{b,c}>tt)", false), ("tt", true), ("<a>tt", true)] {
            let f = parse_formula(f, &al).unwrap();
            assert_eq!(eval_branching(&f, &lts, lts.initial()).unwrap(), expected, "{f}");
        }
    }

    #[test]
    fn modalities_are_weak() {
        let al = Alphabet::parse("a").unwrap();
        let lts = Lts::from_process(&parse_process("tau.a.nil", &al).unwrap(), &al).unwrap();
        assert!(eval_branching(&parse_formula("<a>tt", &al).unwrap(), &lts, lts.initial()).unwrap());
        assert!(!eval_branching(&parse_formula("[a]ff", &al).unwrap(), &lts, lts.initial()).unwrap());
    }

    proptest! {
        #[test]
        fn trace_process_correspondence(seed in any::<u64>(), least in any::<bool>(), t in 0usize..400) {
            let al = Alphabet::parse("a,b").unwrap();
            let kind = if least { Fixpoints::Least } else { Fixpoints::Greatest };
            let f = corpus::random_fixpoint_formula(&mut corpus::rng(seed), &al, kind, 20);
            let mut ts = lassos(&al, 4);
            ts.extend(finite_traces(&al, 4));
            let t = &ts[t % ts.len()];
            let lts = trace_process(t, &al).unwrap();
            prop_assert_eq!(eval_branching(&f, &lts, 0).unwrap(), eval_finfinite(&f, t).unwrap());
        }
    }
}
