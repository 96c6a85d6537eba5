use super::automata::{Nfa, AUTOMATON_CAP};
use crate::engine::{can_weakly, is_reactive, tau_closure, Stepper, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::syntax::{Alphabet, Monitor, Verdict};
use std::collections::{BTreeSet, HashMap};

/// Which verdict an automaton tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Accept,
    Reject,
}

impl Polarity {
    pub fn verdict(self) -> Verdict {
        match self {
            Polarity::Accept => Verdict::Yes,
            Polarity::Reject => Verdict::No,
        }
    }
}

/// A set of states that together satisfy a transition condition.
pub type Clause = BTreeSet<usize>;

/// An alternating automaton whose states are the submonitors of a monitor.
/// `delta[q][a]` lists the minimal sets of states that satisfy the positive
/// transition condition of `q` on the a-th action.
#[derive(Clone, Debug)]
pub struct Alternating {
    pub alphabet: Alphabet,
    pub polarity: Polarity,
    pub states: Vec<Monitor>,
    pub initial: usize,
    pub accepting: Vec<bool>,
    pub delta: Vec<Vec<Vec<Clause>>>,
}

fn minimize(mut cs: Vec<Clause>) -> Vec<Clause> {
    cs.sort_by_key(|c| c.len());
    let mut out: Vec<Clause> = Vec::new();
    for c in cs {
        if !out.iter().any(|d| d.is_subset(&c)) {
            out.push(c);
        }
    }
    out.sort();
    out
}

fn or(a: &[Clause], b: &[Clause]) -> Vec<Clause> {
    minimize(a.iter().chain(b).cloned().collect())
}

fn and(a: &[Clause], b: &[Clause]) -> Vec<Clause> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.push(x.union(y).copied().collect());
        }
    }
    minimize(out)
}

/// Builds the automaton for acceptance or rejection of a reactive monitor.
/// Regular monitors need not be reactive.
pub fn monitor_to_alternating(m: &Monitor, alphabet: &Alphabet, polarity: Polarity) -> Result<Alternating> {
    if !m.is_regular() && !is_reactive(m, alphabet)? {
        return Err(Error::NotReactive);
    }
    monitor_to_alternating_unchecked(m, alphabet, polarity)
}

/// The same construction without the reactivity check. For a non-reactive
/// parallel monitor the language may differ from the monitor's.
pub fn monitor_to_alternating_unchecked(m: &Monitor, alphabet: &Alphabet, polarity: Polarity) -> Result<Alternating> {
    if let Some(x) = m.free_vars().into_iter().next() {
        return Err(Error::FreeVariable(x.to_string()));
    }
    m.check_alphabet(alphabet)?;
    let root = if m.has_unique_binders() { m.clone() } else { m.with_unique_binders() };
    let states: Vec<Monitor> = root.submonitors().into_iter().collect();
    let index: HashMap<&Monitor, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let binders = root.binders();
    let stepper = Stepper::system_n(&root);
    let target = Monitor::Verdict(polarity.verdict());
    let n = states.len();
    let k = alphabet.len();

    let mut accepting = Vec::with_capacity(n);
    let mut can = vec![vec![false; k]; n];
    for (i, q) in states.iter().enumerate() {
        accepting.push(tau_closure(&stepper, [q.clone()], DEFAULT_CAP)?.contains(&target));
        for (a, act) in alphabet.actions().iter().enumerate() {
            can[i][a] = can_weakly(&stepper, q, act, DEFAULT_CAP)?;
        }
    }

    let mut delta: Vec<Vec<Vec<Clause>>> = vec![vec![Vec::new(); k]; n];
    loop {
        let mut changed = false;
        for (i, q) in states.iter().enumerate() {
            for a in 0..k {
                let d = if accepting[i] {
                    vec![Clause::new()]
                } else {
                    let sub = |x: &Monitor| index[x];
                    match q {
                        Monitor::Verdict(_) => Vec::new(),
                        Monitor::Prefix(b, c) => {
                            if alphabet.index_of(b) == Some(a) {
                                vec![Clause::from([sub(c)])]
                            } else {
                                Vec::new()
                            }
                        }
                        Monitor::Sum(l, r) => or(&delta[sub(l)][a], &delta[sub(r)][a]),
                        Monitor::Conj(l, r) | Monitor::Disj(l, r) => {
                            let (li, ri) = (sub(l), sub(r));
                            let agrees = matches!(
                                (q, polarity),
                                (Monitor::Conj(..), Polarity::Accept) | (Monitor::Disj(..), Polarity::Reject)
                            );
                            if agrees {
                                and(&delta[li][a], &delta[ri][a])
                            } else if can[li][a] && can[ri][a] {
                                or(&delta[li][a], &delta[ri][a])
                            } else {
                                Vec::new()
                            }
                        }
                        Monitor::Rec(_, b) => delta[sub(b)][a].clone(),
                        Monitor::Var(x) => delta[index[&binders[x]]][a].clone(),
                    }
                };
                if d != delta[i][a] {
                    delta[i][a] = d;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Alternating { alphabet: alphabet.clone(), polarity, initial: index[&root], states, accepting, delta })
}

impl Alternating {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Conjunctive subset construction. A subset accepts when all members
    /// are final; on an action it moves to the union of one minimal clause
    /// per member. Only minimal successor subsets are kept.
    pub fn to_nfa(&self) -> Result<(Nfa, Vec<Clause>)> {
        self.to_nfa_capped(AUTOMATON_CAP)
    }

    pub fn to_nfa_capped(&self, cap: usize) -> Result<(Nfa, Vec<Clause>)> {
        let k = self.alphabet.len();
        let start = Clause::from([self.initial]);
        let mut subsets = vec![start.clone()];
        let mut index: HashMap<Clause, usize> = HashMap::from([(start, 0)]);
        let mut trans: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let r = subsets[i].clone();
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut targets: Vec<Clause> = vec![Clause::new()];
                for &q in &r {
                    targets = and(&targets, &self.delta[q][a]);
                    if targets.is_empty() {
                        break;
                    }
                }
                let mut ids = Vec::new();
                for t in targets {
                    let j = match index.get(&t) {
                        Some(&j) => j,
                        None => {
                            if subsets.len() >= cap {
                                return Err(Error::CapExceeded(cap));
                            }
                            index.insert(t.clone(), subsets.len());
                            subsets.push(t);
                            subsets.len() - 1
                        }
                    };
                    ids.push(j);
                }
                ids.sort_unstable();
                row.push(ids);
            }
            trans.push(row);
            i += 1;
        }
        let accepting = subsets.iter().map(|s| s.iter().all(|&q| self.accepting[q])).collect();
        Ok((Nfa { alphabet: self.alphabet.clone(), starts: vec![0], trans, accepting }, subsets))
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut s = String::new();
        writeln!(s, "start {}", self.initial).unwrap();
        for (i, q) in self.states.iter().enumerate() {
            writeln!(s, "state {i} {q}").unwrap();
            if self.accepting[i] {
                writeln!(s, "accept {i}").unwrap();
            }
        }
        for (i, row) in self.delta.iter().enumerate() {
            for (a, clauses) in row.iter().enumerate() {
                let cond: Vec<String> = clauses
                    .iter()
                    .map(|c| {
                        let ids: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                        format!("{{{}}}", ids.join(","))
                    })
                    .collect();
                writeln!(s, "delta {i} {} {}", self.alphabet.actions()[a], cond.join(" ")).unwrap();
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::engine::verdict_table;
    use crate::syntax::parse_monitor;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::parse("a,b").unwrap()
    }

    #[test]
    fn clause_algebra() {
        let c = |v: &[usize]| v.iter().copied().collect::<Clause>();
        assert_eq!(or(&[c(&[1])], &[c(&[1, 2])]), [c(&[1])]);
        assert_eq!(and(&[c(&[1]), c(&[2])], &[c(&[3])]), [c(&[1, 3]), c(&[2, 3])]);
        assert!(and(&[], &[c(&[1])]).is_empty());
    }

    #[test]
    fn small_languages() {
        let al = ab();
        let yes = monitor_to_alternating(&Monitor::yes(), &al, Polarity::Accept).unwrap();
        let (nfa, _) = yes.to_nfa().unwrap();
        assert!(nfa.accepts(&[]));
        let par = parse_monitor("a.yes && b.yes", &al).unwrap();
        let (nfa, _) = monitor_to_alternating_unchecked(&par, &al, Polarity::Accept).unwrap().to_nfa().unwrap();
        assert!(crate::semantics::finite_traces(&al, 4).iter().all(|t| !nfa.accepts(&t.prefix)));
        assert!(matches!(monitor_to_alternating(&par, &al, Polarity::Accept), Err(Error::NotReactive)));
    }

    proptest! {
        #[test]
        fn sizes_and_languages(seed in any::<u64>(), accept in any::<bool>()) {
            let al = ab();
            let m = corpus::random_reactive_monitor(&mut corpus::rng(seed), &al, 8);
            let pol = if accept { Polarity::Accept } else { Polarity::Reject };
            let afa = monitor_to_alternating(&m, &al, pol).unwrap();
            prop_assert!(afa.num_states() <= m.length());
            let (nfa, _) = afa.to_nfa().unwrap();
            prop_assert!(nfa.num_states() as u128 <= 1u128 << m.length().min(127));
            for row in verdict_table(&m, &al, 4).unwrap() {
                let expected = if accept { row.accepts } else { row.rejects };
                prop_assert_eq!(nfa.accepts(&row.trace), expected, "{} on {:?}", m, row.trace);
            }
        }
    }
}
