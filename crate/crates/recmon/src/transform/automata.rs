use crate::error::{Error, Result};
use crate::syntax::{Action, Alphabet};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

/// Default cap on automaton states produced by a construction.
pub const AUTOMATON_CAP: usize = 200_000;

/// A complete deterministic automaton over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    pub start: usize,
    /// `trans[s][a]` for the a-th action of the alphabet.
    pub trans: Vec<Vec<usize>>,
    pub accepting: Vec<bool>,
}

/// A nondeterministic automaton without silent moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    pub alphabet: Alphabet,
    pub starts: Vec<usize>,
    pub trans: Vec<Vec<Vec<usize>>>,
    pub accepting: Vec<bool>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn run(&self, from: usize, word: &[Action]) -> Option<usize> {
        let mut s = from;
        for a in word {
            s = self.trans[s][self.alphabet.index_of(a)?];
        }
        Some(s)
    }

    pub fn accepts(&self, word: &[Action]) -> bool {
        self.run(self.start, word).is_some_and(|s| self.accepting[s])
    }

    /// States reachable from the start state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.start] = true;
        let mut stack = vec![self.start];
        while let Some(s) = stack.pop() {
            for &t in &self.trans[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        let r = self.reachable();
        !(0..self.num_states()).any(|s| r[s] && self.accepting[s])
    }

    /// The minimal equivalent automaton, states numbered in breadth-first
    /// order from the start state.
    pub fn minimize(&self) -> Dfa {
        let colors: Vec<usize> = self.accepting.iter().map(|&b| b as usize).collect();
        let (trans, colors, start) = minimize_colored(&self.trans, &colors, self.start);
        Dfa { alphabet: self.alphabet.clone(), start, trans, accepting: colors.iter().map(|&c| c == 1).collect() }
    }

    /// Language equality, by search over the product.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.distinguishing_word(other).is_none()
    }

    /// A shortest word accepted by exactly one of the two automata.
    pub fn distinguishing_word(&self, other: &Dfa) -> Option<Vec<Action>> {
        let k = self.alphabet.len();
        let mut seen: HashMap<(usize, usize), Option<(usize, usize, usize)>> = HashMap::new();
        let start = (self.start, other.start);
        seen.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if self.accepting[p] != other.accepting[q] {
                let mut word = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((pp, pq, a))) = seen.get(&cur) {
                    word.push(self.alphabet.actions()[*a].clone());
                    cur = (*pp, *pq);
                }
                word.reverse();
                return Some(word);
            }
            for a in 0..k {
                let next = (self.trans[p][a], other.trans[q][a]);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(next) {
                    e.insert(Some((p, q, a)));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "start {}", self.start).unwrap();
        write_states(&mut s, &self.accepting);
        for (src, row) in self.trans.iter().enumerate() {
            for (a, dst) in row.iter().enumerate() {
                writeln!(s, "edge {src} {} {dst}", self.alphabet.actions()[a]).unwrap();
            }
        }
        s
    }

    pub fn parse_text(text: &str, alphabet: &Alphabet) -> Result<Dfa> {
        let nfa = Nfa::parse_text(text, alphabet)?;
        if nfa.starts.len() != 1 || nfa.trans.iter().any(|row| row.iter().any(|t| t.len() != 1)) {
            return Err(Error::parse(0, "automaton is not complete and deterministic"));
        }
        Ok(Dfa {
            alphabet: alphabet.clone(),
            start: nfa.starts[0],
            trans: nfa.trans.iter().map(|row| row.iter().map(|t| t[0]).collect()).collect(),
            accepting: nfa.accepting,
        })
    }
}

fn write_states(s: &mut String, accepting: &[bool]) {
    for (i, &acc) in accepting.iter().enumerate() {
        writeln!(s, "state {i}").unwrap();
        if acc {
            writeln!(s, "accept {i}").unwrap();
        }
    }
}

impl Nfa {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn accepts(&self, word: &[Action]) -> bool {
        let mut cur: BTreeSet<usize> = self.starts.iter().copied().collect();
        for a in word {
            let Some(ai) = self.alphabet.index_of(a) else { return false };
            cur = cur.iter().flat_map(|&s| self.trans[s][ai].iter().copied()).collect();
        }
        cur.iter().any(|&s| self.accepting[s])
    }

    /// Subset construction; the empty subset is kept as a sink so the
    /// result is complete.
    pub fn determinize(&self, cap: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut start: Vec<usize> = self.starts.clone();
        start.sort_unstable();
        start.dedup();
        index.insert(start.clone(), 0);
        sets.push(start);
        let mut trans: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut next: Vec<usize> = sets[i].iter().flat_map(|&s| self.trans[s][a].iter().copied()).collect();
                next.sort_unstable();
                next.dedup();
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        if sets.len() >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        index.insert(next.clone(), sets.len());
                        sets.push(next);
                        sets.len() - 1
                    }
                };
                row.push(j);
            }
            trans.push(row);
            i += 1;
        }
        let accepting = sets.iter().map(|s| s.iter().any(|&q| self.accepting[q])).collect();
        Ok(Dfa { alphabet: self.alphabet.clone(), start: 0, trans, accepting })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for st in &self.starts {
            writeln!(s, "start {st}").unwrap();
        }
        write_states(&mut s, &self.accepting);
        for (src, row) in self.trans.iter().enumerate() {
            for (a, dsts) in row.iter().enumerate() {
                for dst in dsts {
                    writeln!(s, "edge {src} {} {dst}", self.alphabet.actions()[a]).unwrap();
                }
            }
        }
        s
    }

    /// Reads `start N`, `state N`, `accept N` and `edge SRC ACT DST` lines.
    pub fn parse_text(text: &str, alphabet: &Alphabet) -> Result<Nfa> {
        let mut n = 0usize;
        let mut starts = Vec::new();
        let mut acc = BTreeSet::new();
        let mut edges = Vec::new();
        let mut offset = 0;
        for line in text.lines() {
            let here = offset;
            offset += line.len() + 1;
            let words: Vec<&str> = line.split_whitespace().collect();
            let num = |w: &str| w.parse::<usize>().map_err(|_| Error::parse(here, format!("bad state `{w}`")));
            match words.as_slice() {
                [] => {}
                ["state", s] => n = n.max(num(s)? + 1),
                ["start", s] => {
                    let s = num(s)?;
                    n = n.max(s + 1);
                    starts.push(s);
                }
                ["accept", s] => {
                    let s = num(s)?;
                    n = n.max(s + 1);
                    acc.insert(s);
                }
                ["edge", s, a, d] => {
                    let (s, d) = (num(s)?, num(d)?);
                    n = n.max(s.max(d) + 1);
                    let ai = alphabet.index_of(&Action::new(a)).ok_or_else(|| Error::UnknownAction(a.to_string()))?;
                    edges.push((s, ai, d));
                }
                _ => return Err(Error::parse(here, format!("malformed line `{line}`"))),
            }
        }
        let mut trans = vec![vec![Vec::new(); alphabet.len()]; n];
        for (s, a, d) in edges {
            trans[s][a].push(d);
        }
        for row in trans.iter_mut() {
            for t in row.iter_mut() {
                t.sort_unstable();
                t.dedup();
            }
        }
        Ok(Nfa { alphabet: alphabet.clone(), starts, trans, accepting: (0..n).map(|i| acc.contains(&i)).collect() })
    }
}

/// Partition refinement of a complete transition table whose states carry
/// colors. Unreachable states are dropped. Returns the quotient's table,
/// colors and start state, numbered breadth-first from the start.
pub fn minimize_colored(trans: &[Vec<usize>], colors: &[usize], start: usize) -> (Vec<Vec<usize>>, Vec<usize>, usize) {
    let n = trans.len();
    let k = trans.first().map_or(0, |r| r.len());
    let mut block: Vec<usize> = colors.to_vec();
    let mut count = {
        let distinct: BTreeSet<usize> = block.iter().copied().collect();
        let remap: BTreeMap<usize, usize> = distinct.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        for b in block.iter_mut() {
            *b = remap[b];
        }
        distinct.len()
    };
    loop {
        let mut sig: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next = vec![0; n];
        for s in 0..n {
            let key = (block[s], (0..k).map(|a| block[trans[s][a]]).collect::<Vec<_>>());
            let len = sig.len();
            next[s] = *sig.entry(key).or_insert(len);
        }
        let new_count = sig.len();
        block = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    // renumber reachable blocks breadth-first
    let mut order: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    order.insert(block[start], 0);
    reps.push(start);
    let mut i = 0;
    while i < reps.len() {
        let s = reps[i];
        for a in 0..k {
            let b = block[trans[s][a]];
            if let std::collections::hash_map::Entry::Vacant(e) = order.entry(b) {
                e.insert(reps.len());
                reps.push(trans[s][a]);
            }
        }
        i += 1;
    }
    let new_trans = reps.iter().map(|&s| (0..k).map(|a| order[&block[trans[s][a]]]).collect()).collect();
    let new_colors = reps.iter().map(|&s| colors[s]).collect();
    (new_trans, new_colors, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::parse("a,b").unwrap()
    }

    fn w(s: &str) -> Vec<Action> {
        s.chars().map(|c| Action::new(&c.to_string())).collect()
    }

    // Words ending in `a`.
    fn ends_in_a() -> Nfa {
        Nfa::parse_text("start 0\nstate 0\nstate 1\naccept 1\nedge 0 a 0\nedge 0 b 0\nedge 0 a 1\n", &ab()).unwrap()
    }

    #[test]
    fn subset_construction() {
        let nfa = ends_in_a();
        assert!(nfa.accepts(&w("ba")) && !nfa.accepts(&w("ab")));
        let dfa = nfa.determinize(AUTOMATON_CAP).unwrap();
        for n in 0..5 {
            for word in crate::semantics::words(&ab(), n) {
                assert_eq!(dfa.accepts(&word), nfa.accepts(&word));
            }
        }
        assert!(matches!(nfa.determinize(1), Err(Error::CapExceeded(1))));
    }

    #[test]
    fn minimisation() {
        let dfa = ends_in_a().determinize(AUTOMATON_CAP).unwrap();
        let min = dfa.minimize();
        assert_eq!(min.num_states(), 2);
        assert!(min.equivalent(&dfa));
        assert_eq!(min.minimize(), min);
    }

    #[test]
    fn distinguishing_words_are_shortest() {
        let a = ends_in_a().determinize(AUTOMATON_CAP).unwrap();
        let all = Dfa { alphabet: ab(), start: 0, trans: vec![vec![0, 0]], accepting: vec![true] };
        assert_eq!(a.distinguishing_word(&all), Some(vec![]));
        let none = Dfa { alphabet: ab(), start: 0, trans: vec![vec![0, 0]], accepting: vec![false] };
        assert!(none.is_empty());
        assert_eq!(a.distinguishing_word(&none), Some(w("a")));
    }

    #[test]
    fn text_round_trip() {
        let dfa = ends_in_a().determinize(AUTOMATON_CAP).unwrap().minimize();
        assert_eq!(Dfa::parse_text(&dfa.to_text(), &ab()).unwrap(), dfa);
        assert!(Dfa::parse_text(&ends_in_a().to_text(), &ab()).is_err());
    }
}
