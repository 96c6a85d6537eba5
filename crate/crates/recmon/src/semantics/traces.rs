use super::lts::Lts;
use crate::error::Result;
use crate::syntax::{Action, Alphabet, Trace};
use std::collections::BTreeSet;

/// The deterministic, silent-step-free process producing exactly the
/// prefixes of `t` (and `t` itself).
pub fn trace_process(t: &Trace, alphabet: &Alphabet) -> Result<Lts> {
    let mut word: Vec<Action> = t.prefix.clone();
    let back = t.prefix.len();
    if let Some(c) = &t.cycle {
        word.extend(c.iter().cloned());
    }
    let n = if t.is_finite() { word.len() + 1 } else { word.len() };
    let edges = word.iter().enumerate().map(|(i, a)| {
        let dst = if i + 1 < n { i + 1 } else { back };
        (i, Some(a.clone()), dst)
    });
    Lts::from_edges(alphabet.clone(), n, 0, edges.collect::<Vec<_>>())
}

/// All words over `alphabet` of length exactly `n`.
pub fn words(alphabet: &Alphabet, n: usize) -> Vec<Vec<Action>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.actions().iter().map(move |a| {
                    let mut w2 = w.clone();
                    w2.push(a.clone());
                    w2
                })
            })
            .collect();
    }
    out
}

/// All finite traces of length at most `bound`.
pub fn finite_traces(alphabet: &Alphabet, bound: usize) -> Vec<Trace> {
    (0..=bound).flat_map(|n| words(alphabet, n)).map(Trace::finite).collect()
}

/// All lassos `u(v)` with `|u| + |v| <= bound`, as written (not deduplicated).
pub fn lassos(alphabet: &Alphabet, bound: usize) -> Vec<Trace> {
    let mut out = Vec::new();
    for total in 1..=bound {
        for cl in 1..=total {
            for u in words(alphabet, total - cl) {
                for v in words(alphabet, cl) {
                    out.push(Trace { prefix: u.clone(), cycle: Some(v) });
                }
            }
        }
    }
    out
}

/// Lassos with `|u| + |v| <= bound`, one canonical representative per word.
pub fn distinct_lassos(alphabet: &Alphabet, bound: usize) -> Vec<Trace> {
    let set: BTreeSet<Trace> = lassos(alphabet, bound).iter().map(Trace::canonical).collect();
    set.into_iter().collect()
}

fn step_set(lts: &Lts, cur: &[usize], a: usize) -> Vec<usize> {
    let mut seen = vec![false; lts.num_states()];
    for &u in cur {
        for &v in lts.weak_succ(u, a) {
            seen[v] = true;
        }
    }
    (0..seen.len()).filter(|&i| seen[i]).collect()
}

/// Whether state `s` produces the lasso `t`. For a finite LTS this holds
/// exactly when every prefix is weakly producible.
pub fn produces_lasso(lts: &Lts, s: usize, t: &Trace) -> bool {
    let al = lts.alphabet();
    let idx = |a: &Action| al.index_of(a);
    let mut cur = vec![s];
    for a in &t.prefix {
        let Some(i) = idx(a) else { return false };
        cur = step_set(lts, &cur, i);
        if cur.is_empty() {
            return false;
        }
    }
    let Some(cycle) = &t.cycle else { return true };
    let mut seen: Vec<Vec<usize>> = Vec::new();
    loop {
        if seen.contains(&cur) {
            return true;
        }
        seen.push(cur.clone());
        for a in cycle {
            let Some(i) = idx(a) else { return false };
            cur = step_set(lts, &cur, i);
            if cur.is_empty() {
                return false;
            }
        }
    }
}

/// The finite traces of length at most `bound` and the lassos with
/// `|u| + |v| <= bound` that `s` produces, lassos in canonical form.
pub fn produced_finfinite_traces(lts: &Lts, s: usize, bound: usize) -> BTreeSet<Trace> {
    let mut out = BTreeSet::new();
    let k = lts.alphabet().len();
    let mut stack: Vec<(Vec<Action>, Vec<usize>)> = vec![(Vec::new(), vec![s])];
    while let Some((w, cur)) = stack.pop() {
        if w.len() < bound {
            for a in 0..k {
                let next = step_set(lts, &cur, a);
                if !next.is_empty() {
                    let mut w2 = w.clone();
                    w2.push(lts.alphabet().actions()[a].clone());
                    stack.push((w2, next));
                }
            }
        }
        out.insert(Trace::finite(w));
    }
    for t in distinct_lassos(lts.alphabet(), bound) {
        if produces_lasso(lts, s, &t) {
            out.insert(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_process, parse_trace};

    fn ab() -> Alphabet {
        Alphabet::parse("a,b").unwrap()
    }

    fn produced(p: &str, bound: usize) -> Vec<String> {
        let lts = Lts::from_process(&parse_process(p, &ab()).unwrap(), &ab()).unwrap();
        produced_finfinite_traces(&lts, lts.initial(), bound).iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn trace_processes() {
        let lts = trace_process(&parse_trace("a.b", &ab()).unwrap(), &ab()).unwrap();
        assert_eq!(lts.num_states(), 3);
        assert!(lts.edges(2).is_empty());
        let lts = trace_process(&parse_trace("(a)", &ab()).unwrap(), &ab()).unwrap();
        assert_eq!(lts.num_states(), 1);
        assert_eq!(lts.edges(0), &[(Some(0), 0)]);
        assert_eq!(trace_process(&Trace::finite(vec![]), &ab()).unwrap().num_states(), 1);
    }

    #[test]
    fn produced_traces() {
        assert_eq!(produced("nil", 3), [""]);
        let mut got = produced("rec x.a.x", 2);
        got.sort();
        assert_eq!(got, ["", "(a)", "a", "a.a"]);
        let mut got = produced("a.nil + b.nil", 1);
        got.sort();
        assert_eq!(got, ["", "a", "b"]);
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(words(&ab(), 3).len(), 8);
        assert_eq!(finite_traces(&ab(), 2).len(), 7);
        assert_eq!(lassos(&ab(), 2).len(), 2 + 4 + 4);
        let d = distinct_lassos(&ab(), 3);
        assert!(d.iter().all(|t| *t == t.canonical()));
        assert!(d.len() < lassos(&ab(), 3).len());
    }

    #[test]
    fn lasso_membership() {
        let lts = Lts::from_process(&parse_process("rec x.(a.b.x + a.nil)", &ab()).unwrap(), &ab()).unwrap();
        assert!(produces_lasso(&lts, lts.initial(), &parse_trace("(a.b)", &ab()).unwrap()));
        assert!(!produces_lasso(&lts, lts.initial(), &parse_trace("(a)", &ab()).unwrap()));
    }
}
