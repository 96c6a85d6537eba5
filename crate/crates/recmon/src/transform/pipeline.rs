use super::alternating::{monitor_to_alternating, Alternating, Polarity};
use super::automata::{minimize_colored, Dfa, AUTOMATON_CAP};
use crate::engine::{is_reactive, verdict_table};
use crate::error::{Error, Result};
use crate::syntax::{Action, Alphabet, Monitor, Trace, Var};
use serde::Serialize;
use std::collections::BTreeSet;

/// Sizes of the intermediate automata of one polarity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageSizes {
    pub alternating: usize,
    pub nfa: usize,
    pub dfa: usize,
    pub minimal_dfa: usize,
}

/// Minimal automata for the accepted and rejected finite traces of a monitor.
#[derive(Clone, Debug)]
pub struct MonitorAutomata {
    pub accept: Dfa,
    pub reject: Dfa,
    pub accept_sizes: StageSizes,
    pub reject_sizes: StageSizes,
}

/// Runs alternating automaton, NFA and DFA construction for one polarity.
pub fn monitor_dfa(m: &Monitor, alphabet: &Alphabet, polarity: Polarity) -> Result<(Dfa, StageSizes)> {
    let afa = monitor_to_alternating(m, alphabet, polarity).map_err(|e| e.at_stage("alternating automaton"))?;
    alternating_dfa(&afa)
}

pub(crate) fn alternating_dfa(afa: &Alternating) -> Result<(Dfa, StageSizes)> {
    let (nfa, _) = afa.to_nfa().map_err(|e| e.at_stage("nfa"))?;
    let dfa = nfa.determinize(AUTOMATON_CAP).map_err(|e| e.at_stage("dfa"))?;
    let min = dfa.minimize();
    let sizes = StageSizes {
        alternating: afa.num_states(),
        nfa: nfa.num_states(),
        dfa: dfa.num_states(),
        minimal_dfa: min.num_states(),
    };
    Ok((min, sizes))
}

impl MonitorAutomata {
    /// Compiles a regular monitor, or a reactive parallel monitor.
    pub fn new(m: &Monitor, alphabet: &Alphabet) -> Result<Self> {
        let (accept, accept_sizes) = monitor_dfa(m, alphabet, Polarity::Accept)?;
        let (reject, reject_sizes) = monitor_dfa(m, alphabet, Polarity::Reject)?;
        Ok(MonitorAutomata { accept, reject, accept_sizes, reject_sizes })
    }

    pub fn accepts(&self, s: &[Action]) -> bool {
        self.accept.accepts(s)
    }

    pub fn rejects(&self, s: &[Action]) -> bool {
        self.reject.accepts(s)
    }

    /// The verdict reached on some finite prefix of `t`, if any.
    pub fn lasso_verdict(&self, t: &Trace) -> Result<Option<crate::syntax::Verdict>> {
        use crate::syntax::Verdict;
        let al = &self.accept.alphabet;
        let idx = |a: &Action| al.index_of(a).ok_or_else(|| Error::UnknownAction(a.to_string()));
        let (mut p, mut q) = (self.accept.start, self.reject.start);
        let check = |p: usize, q: usize| -> Result<Option<Verdict>> {
            match (self.accept.accepting[p], self.reject.accepting[q]) {
                (true, true) => Err(Error::Inconsistent(t.to_string())),
                (true, false) => Ok(Some(Verdict::Yes)),
                (false, true) => Ok(Some(Verdict::No)),
                _ => Ok(None),
            }
        };
        if let Some(v) = check(p, q)? {
            return Ok(Some(v));
        }
        for a in &t.prefix {
            let i = idx(a)?;
            p = self.accept.trans[p][i];
            q = self.reject.trans[q][i];
            if let Some(v) = check(p, q)? {
                return Ok(Some(v));
            }
        }
        let Some(cycle) = &t.cycle else { return Ok(None) };
        let mut seen = BTreeSet::new();
        while seen.insert((p, q)) {
            for a in cycle {
                let i = idx(a)?;
                p = self.accept.trans[p][i];
                q = self.reject.trans[q][i];
                if let Some(v) = check(p, q)? {
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    }

    /// Whether some finite trace is both accepted and rejected.
    pub fn inconsistency_witness(&self) -> Option<Vec<Action>> {
        let k = self.accept.alphabet.len();
        let start = (self.accept.start, self.reject.start);
        let mut seen = std::collections::HashMap::from([(start, Vec::new())]);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            let w = seen[&(p, q)].clone();
            if self.accept.accepting[p] && self.reject.accepting[q] {
                return Some(w);
            }
            for a in 0..k {
                let next = (self.accept.trans[p][a], self.reject.trans[q][a]);
                if !seen.contains_key(&next) {
                    let mut w2 = w.clone();
                    w2.push(self.accept.alphabet.actions()[a].clone());
                    seen.insert(next, w2);
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// The deterministic regular monitor recognising the same verdicts.
    pub fn to_monitor(&self) -> Result<Monitor> {
        dfa_to_regular_monitor(&self.accept, &self.reject)
    }
}

/// The verdict a monitor reaches on a lasso: `Some(yes)`, `Some(no)`, or
/// `None` when no finite prefix receives a verdict.
pub fn lasso_verdict(m: &Monitor, t: &Trace, alphabet: &Alphabet) -> Result<Option<crate::syntax::Verdict>> {
    if t.is_finite() {
        return Err(Error::FiniteTrace);
    }
    MonitorAutomata::new(m, alphabet)?.lasso_verdict(t)
}

const YES: usize = 1;
const NO: usize = 2;

/// Emits a deterministic regular monitor from automata for the accepted and
/// rejected traces. A verdict is emitted on the first prefix in the language,
/// so the monitor recognises the extension closures of the two languages.
/// Branches from which no verdict is reachable are dropped; a start state
/// with no reachable verdict becomes `end`.
pub fn dfa_to_regular_monitor(accept: &Dfa, reject: &Dfa) -> Result<Monitor> {
    if accept.alphabet != reject.alphabet {
        return Err(Error::MonitorClass("automata over different alphabets".into()));
    }
    let alphabet = &accept.alphabet;
    let k = alphabet.len();
    // product, with verdict states made absorbing
    let mut pairs = vec![(accept.start, reject.start)];
    let mut index = std::collections::HashMap::from([((accept.start, reject.start), 0usize)]);
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut colors: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        let color = match (accept.accepting[p], reject.accepting[q]) {
            (true, true) => {
                return Err(Error::Inconsistent(String::from("a common prefix")));
            }
            (true, false) => YES,
            (false, true) => NO,
            _ => 0,
        };
        colors.push(color);
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            if color != 0 {
                row.push(i);
                continue;
            }
            let next = (accept.trans[p][a], reject.trans[q][a]);
            let j = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                pairs.len() - 1
            });
            row.push(j);
        }
        trans.push(row);
        i += 1;
    }
    let (trans, colors, start) = minimize_colored(&trans, &colors, 0);
    let n = trans.len();
    // states from which a verdict is reachable
    let mut live: Vec<bool> = colors.iter().map(|&c| c != 0).collect();
    loop {
        let mut changed = false;
        for s in 0..n {
            if !live[s] && trans[s].iter().any(|&t| live[t]) {
                live[s] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut em = Emitter { alphabet, trans: &trans, colors: &colors, live: &live, stack: Vec::new(), used: vec![false; n], budget: EMIT_BUDGET };
    if !live[start] {
        return Ok(Monitor::end());
    }
    Ok(em.emit(start)?.with_unique_binders())
}

const EMIT_BUDGET: usize = 2_000_000;

struct Emitter<'a> {
    alphabet: &'a Alphabet,
    trans: &'a [Vec<usize>],
    colors: &'a [usize],
    live: &'a [bool],
    stack: Vec<usize>,
    used: Vec<bool>,
    budget: usize,
}

impl Emitter<'_> {
    fn var(s: usize) -> Var {
        Var::new(&format!("x{s}"))
    }

    fn emit(&mut self, s: usize) -> Result<Monitor> {
        if self.budget == 0 {
            return Err(Error::CapExceeded(EMIT_BUDGET));
        }
        self.budget -= 1;
        match self.colors[s] {
            YES => return Ok(Monitor::yes()),
            NO => return Ok(Monitor::no()),
            _ => {}
        }
        if self.stack.contains(&s) {
            self.used[s] = true;
            return Ok(Monitor::Var(Self::var(s)));
        }
        self.stack.push(s);
        let was_used = std::mem::replace(&mut self.used[s], false);
        let mut summands = Vec::new();
        for (a, act) in self.alphabet.actions().iter().enumerate() {
            let t = self.trans[s][a];
            if self.live[t] {
                summands.push(Monitor::prefix(act.clone(), self.emit(t)?));
            }
        }
        self.stack.pop();
        let body = Monitor::sum_of(summands).unwrap_or_else(Monitor::end);
        let rec = self.used[s];
        self.used[s] = was_used;
        Ok(if rec { Monitor::Rec(Self::var(s), std::sync::Arc::new(body)) } else { body })
    }
}

/// A verdict-equivalent deterministic regular monitor for a consistent
/// regular or reactive parallel monitor.
pub fn determinize(m: &Monitor, alphabet: &Alphabet) -> Result<Monitor> {
    let auto = MonitorAutomata::new(m, alphabet)?;
    if let Some(w) = auto.inconsistency_witness() {
        return Err(Error::Inconsistent(Trace::finite(w).to_string()));
    }
    auto.to_monitor()
}

/// Alias of [`determinize`] for parallel inputs.
pub fn parallel_to_regular(m: &Monitor, alphabet: &Alphabet) -> Result<Monitor> {
    determinize(m, alphabet)
}

/// How to compare verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMode {
    /// Compare the minimal automata.
    Exact,
    /// Compare on every finite trace up to the given length.
    Bounded(usize),
}

/// Whether two monitors accept and reject the same finite traces. On a
/// difference, a witnessing trace is returned.
pub fn verdict_difference(m: &Monitor, n: &Monitor, alphabet: &Alphabet, mode: EquivMode) -> Result<Option<Vec<Action>>> {
    match mode {
        EquivMode::Exact => {
            let a = MonitorAutomata::new(m, alphabet)?;
            let b = MonitorAutomata::new(n, alphabet)?;
            let wa = a.accept.distinguishing_word(&b.accept);
            let wr = a.reject.distinguishing_word(&b.reject);
            Ok(match (wa, wr) {
                (Some(x), Some(y)) => Some(if x.len() <= y.len() { x } else { y }),
                (x, y) => x.or(y),
            })
        }
        EquivMode::Bounded(k) => {
            let a = verdict_table(m, alphabet, k)?;
            let b = verdict_table(n, alphabet, k)?;
            Ok(a.into_iter().zip(b).find(|(x, y)| x != y).map(|(x, _)| x.trace))
        }
    }
}

pub fn verdict_equivalent(m: &Monitor, n: &Monitor, alphabet: &Alphabet, mode: EquivMode) -> Result<bool> {
    Ok(verdict_difference(m, n, alphabet, mode)?.is_none())
}

/// No finite trace is both accepted and rejected. Exact for regular and
/// reactive parallel monitors; otherwise checked up to `bound`.
pub fn is_consistent(m: &Monitor, alphabet: &Alphabet, bound: usize) -> Result<bool> {
    if m.is_regular() || is_reactive(m, alphabet)? {
        return Ok(MonitorAutomata::new(m, alphabet)?.inconsistency_witness().is_none());
    }
    Ok(verdict_table(m, alphabet, bound)?.iter().all(|r| !(r.accepts && r.rejects)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::syntax::{parse_monitor, parse_trace, Verdict};
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::parse("a,b").unwrap()
    }

    fn m(src: &str) -> Monitor {
        parse_monitor(src, &ab()).unwrap()
    }

    // Words starting with `first`, or no words at all.
    fn starts_with(first: Option<usize>) -> Dfa {
        let mut trans = vec![vec![2, 2], vec![1, 1], vec![2, 2]];
        if let Some(a) = first {
            trans[0][a] = 1;
        }
        Dfa { alphabet: ab(), start: 0, trans, accepting: vec![false, true, false] }
    }

    #[test]
    fn emission() {
        assert_eq!(dfa_to_regular_monitor(&starts_with(Some(0)), &starts_with(Some(1))).unwrap(), m("a.yes + b.no"));
        assert_eq!(dfa_to_regular_monitor(&starts_with(None), &starts_with(None)).unwrap(), Monitor::end());
        assert_eq!(dfa_to_regular_monitor(&starts_with(Some(0)), &starts_with(None)).unwrap(), m("a.yes"));
    }

    #[test]
    fn determinisation() {
        assert_eq!(determinize(&Monitor::yes(), &ab()).unwrap(), Monitor::yes());
        let r = m("rec x.(a.x + a.b.yes)");
        let d = determinize(&r, &ab()).unwrap();
        assert!(d.is_regular() && d.is_syntactically_deterministic());
        assert!(verdict_equivalent(&r, &d, &ab(), EquivMode::Bounded(8)).unwrap());
        assert!(verdict_equivalent(&r, &d, &ab(), EquivMode::Exact).unwrap());
        let par = m("(a.yes + b.no) && (a.yes + b.yes)");
        let d = parallel_to_regular(&par, &ab()).unwrap();
        assert!(d.is_regular());
        assert!(verdict_equivalent(&par, &d, &ab(), EquivMode::Exact).unwrap());
        assert!(matches!(determinize(&m("a.yes + a.no"), &ab()), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn equivalence() {
        assert!(!verdict_equivalent(&Monitor::yes(), &Monitor::no(), &ab(), EquivMode::Exact).unwrap());
        assert!(verdict_equivalent(&m("a.yes"), &m("a.yes + a.yes"), &ab(), EquivMode::Exact).unwrap());
        let diff = verdict_difference(&m("a.a.yes"), &m("a.yes"), &ab(), EquivMode::Exact).unwrap();
        assert_eq!(diff.map(|w| w.len()), Some(1));
    }

    #[test]
    fn lasso_verdicts() {
        let al = ab();
        let r = m("rec x.(a.x + b.yes)");
        assert_eq!(lasso_verdict(&r, &parse_trace("(a)", &al).unwrap(), &al).unwrap(), None);
        assert_eq!(lasso_verdict(&r, &parse_trace("a(b)", &al).unwrap(), &al).unwrap(), Some(Verdict::Yes));
        assert_eq!(lasso_verdict(&Monitor::no(), &parse_trace("(a)", &al).unwrap(), &al).unwrap(), Some(Verdict::No));
        assert!(matches!(lasso_verdict(&r, &parse_trace("a", &al).unwrap(), &al), Err(Error::FiniteTrace)));
    }

    #[test]
    fn consistency() {
        assert!(is_consistent(&m("a.yes + b.no"), &ab(), 4).unwrap());
        assert!(!is_consistent(&m("a.yes + a.no"), &ab(), 4).unwrap());
    }

    proptest! {
        #[test]
        fn determinised_monitors_agree(seed in any::<u64>()) {
            let al = ab();
            let mon = corpus::random_reactive_monitor(&mut corpus::rng(seed), &al, 8);
            match determinize(&mon, &al) {
                Ok(d) => {
                    prop_assert!(d.is_regular() && d.is_syntactically_deterministic());
                    prop_assert!(verdict_equivalent(&mon, &d, &al, EquivMode::Bounded(5)).unwrap());
                }
                Err(Error::Inconsistent(_)) => prop_assert!(!is_consistent(&mon, &al, 5).unwrap()),
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }
}
