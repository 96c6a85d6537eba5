use crate::error::{Error, Result};
use crate::syntax::{Action, Alphabet, Label, Process};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

/// Default cap on the number of states explored from a process term.
pub const PROCESS_STATE_CAP: usize = 10_000;

/// A finite labelled transition system with precomputed weak transitions.
#[derive(Clone, Debug)]
pub struct Lts {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: usize,
    /// Strong transitions: `None` is tau, `Some(i)` is the i-th action.
    edges: Vec<Vec<(Option<usize>, usize)>>,
    closure: Vec<Vec<usize>>,
    weak: Vec<Vec<Vec<usize>>>,
}

impl Lts {
    /// Builds an LTS from explicit edges over states `0..n`.
    pub fn from_edges(
        alphabet: Alphabet,
        n: usize,
        initial: usize,
        edges: impl IntoIterator<Item = (usize, Option<Action>, usize)>,
    ) -> Result<Self> {
        let names = (0..n).map(|i| format!("s{i}")).collect();
        let mut adj = vec![Vec::new(); n];
        for (s, a, t) in edges {
            let l = match a {
                None => None,
                Some(a) => Some(alphabet.index_of(&a).ok_or_else(|| Error::UnknownAction(a.to_string()))?),
            };
            adj[s].push((l, t));
        }
        Ok(Lts::build(alphabet, names, initial, adj))
    }

    fn build(alphabet: Alphabet, names: Vec<String>, initial: usize, mut edges: Vec<Vec<(Option<usize>, usize)>>) -> Self {
        let n = names.len();
        for e in edges.iter_mut() {
            e.sort();
            e.dedup();
        }
        let closure: Vec<Vec<usize>> = (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(u) = stack.pop() {
                    for &(l, v) in &edges[u] {
                        if l.is_none() && !seen[v] {
                            seen[v] = true;
                            stack.push(v);
                        }
                    }
                }
                (0..n).filter(|&i| seen[i]).collect()
            })
            .collect();
        let k = alphabet.len();
        let weak = (0..n)
            .map(|s| {
                (0..k)
                    .map(|a| {
                        let mut seen = vec![false; n];
                        for &u in &closure[s] {
                            for &(l, v) in &edges[u] {
                                if l == Some(a) {
                                    for &w in &closure[v] {
                                        seen[w] = true;
                                    }
                                }
                            }
                        }
                        (0..n).filter(|&i| seen[i]).collect()
                    })
                    .collect()
            })
            .collect();
        Lts { alphabet, names, initial, edges, closure, weak }
    }

    /// The reachable state space of a process term. Recursion unfolds with
    /// a silent step.
    pub fn from_process(p: &Process, alphabet: &Alphabet) -> Result<Self> {
        if let Some(x) = p.free_vars().into_iter().next() {
            return Err(Error::FreeVariable(x.to_string()));
        }
        if let Some(a) = p.actions().into_iter().find(|a| !alphabet.contains(a)) {
            return Err(Error::UnknownAction(a.to_string()));
        }
        let mut index: HashMap<Process, usize> = HashMap::new();
        let mut terms = vec![p.clone()];
        index.insert(p.clone(), 0);
        let mut adj: Vec<Vec<(Option<usize>, usize)>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut out = Vec::new();
            for (l, q) in process_steps(&terms[i]) {
                let j = match index.get(&q) {
                    Some(&j) => j,
                    None => {
                        if terms.len() >= PROCESS_STATE_CAP {
                            return Err(Error::CapExceeded(PROCESS_STATE_CAP));
                        }
                        let j = terms.len();
                        index.insert(q.clone(), j);
                        terms.push(q);
                        queue.push_back(j);
                        j
                    }
                };
                let l = match l {
                    Label::Tau => None,
                    Label::Act(a) => alphabet.index_of(&a),
                };
                out.push((l, j));
            }
            if adj.len() <= i {
                adj.resize(i + 1, Vec::new());
            }
            adj[i] = out;
        }
        adj.resize(terms.len(), Vec::new());
        let names = terms.iter().map(|t| t.to_string()).collect();
        Ok(Lts::build(alphabet.clone(), names, 0, adj))
    }

    /// Parses the text format: an `alphabet:` header, an `initial:` line and
    /// `STATE -act-> STATE` lines (`act` may be `tau`). `#` starts a comment.
    pub fn parse(text: &str, alphabet: Option<&Alphabet>) -> Result<Self> {
        let mut al: Option<Alphabet> = alphabet.cloned();
        let mut initial: Option<String> = None;
        let mut ids: BTreeMap<String, usize> = BTreeMap::new();
        let mut names: Vec<String> = Vec::new();
        let mut raw: Vec<(usize, String, usize)> = Vec::new();
        let mut intern = |s: &str, names: &mut Vec<String>| -> usize {
            *ids.entry(s.to_string()).or_insert_with(|| {
                names.push(s.to_string());
                names.len() - 1
            })
        };
        let mut offset = 0;
        for line in text.lines() {
            let here = offset;
            offset += line.len() + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("alphabet:") {
                if al.is_none() {
                    al = Some(Alphabet::parse(rest)?);
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix("initial:") {
                let s = rest.trim();
                intern(s, &mut names);
                initial = Some(s.to_string());
                continue;
            }
            let bad = || Error::parse(here, format!("malformed transition `{line}`"));
            let (src, rest) = line.split_once(" -").ok_or_else(bad)?;
            let (act, dst) = rest.split_once("-> ").ok_or_else(bad)?;
            let (src, act, dst) = (src.trim(), act.trim(), dst.trim());
            if src.is_empty() || act.is_empty() || dst.is_empty() {
                return Err(bad());
            }
            let s = intern(src, &mut names);
            let d = intern(dst, &mut names);
            raw.push((s, act.to_string(), d));
        }
        let al = al.ok_or_else(|| Error::parse(0, "missing `alphabet:` header"))?;
        let init = initial.ok_or_else(|| Error::parse(0, "missing `initial:` line"))?;
        let mut adj = vec![Vec::new(); names.len()];
        for (s, act, d) in raw {
            let l = if act == "tau" {
                None
            } else {
                Some(al.index_of(&Action::new(&act)).ok_or(Error::UnknownAction(act))?)
            };
            adj[s].push((l, d));
        }
        let initial = names.iter().position(|n| *n == init).unwrap_or(0);
        Ok(Lts::build(al, names, initial, adj))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn with_initial(&self, s: usize) -> Lts {
        let mut l = self.clone();
        l.initial = s;
        l
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Strong transitions of `s`.
    pub fn edges(&self, s: usize) -> &[(Option<usize>, usize)] {
        &self.edges[s]
    }

    /// States reachable from `s` by silent steps, including `s`.
    pub fn tau_closure(&self, s: usize) -> &[usize] {
        &self.closure[s]
    }

    /// Weak successors `s =a=> t` for the action with index `a`.
    pub fn weak_succ(&self, s: usize, a: usize) -> &[usize] {
        &self.weak[s][a]
    }

    /// Weak successors along a finite trace.
    pub fn weak_after(&self, s: usize, trace: &[Action]) -> Vec<usize> {
        let n = self.num_states();
        let mut cur = self.closure[s].clone();
        for a in trace {
            let Some(ai) = self.alphabet.index_of(a) else {
                return Vec::new();
            };
            let mut seen = vec![false; n];
            for &u in &cur {
                for &v in &self.weak[u][ai] {
                    seen[v] = true;
                }
            }
            cur = (0..n).filter(|&i| seen[i]).collect();
        }
        cur
    }
}

impl fmt::Display for Lts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "initial: {}", sanitize(&self.names[self.initial]))?;
        for (s, es) in self.edges.iter().enumerate() {
            for &(l, t) in es {
                let act = match l {
                    None => "tau",
                    Some(i) => self.alphabet.actions()[i].name(),
                };
                writeln!(f, "{} -{act}-> {}", sanitize(&self.names[s]), sanitize(&self.names[t]))?;
            }
        }
        Ok(())
    }
}

fn sanitize(name: &str) -> String {
    name.chars().map(|c| if c.is_whitespace() || c == '-' || c == '#' { '_' } else { c }).collect()
}

/// One-step transitions of a process term.
pub fn process_steps(p: &Process) -> Vec<(Label, Process)> {
    match p {
        Process::Nil | Process::Var(_) => Vec::new(),
        Process::Prefix(l, q) => vec![(l.clone(), (**q).clone())],
        Process::Sum(l, r) => {
            let mut v = process_steps(l);
            v.extend(process_steps(r));
            v
        }
        Process::Rec(x, q) => vec![(Label::Tau, q.subst(x, p))],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_process;

    #[test]
    fn parse_text_format() {
        let lts = Lts::parse("alphabet: a,b\ninitial: p\np -a-> q # note\nq -tau-> p\n", None).unwrap();
        assert_eq!(lts.num_states(), 2);
        assert_eq!(lts.state_name(lts.initial()), "p");
        assert_eq!(lts.weak_succ(1, 0), &[0, 1]);
        assert!(Lts::parse("initial: p\np -a-> q", None).is_err());
        assert!(Lts::parse("alphabet: a\ninitial: p\np -c-> q", None).is_err());
        assert!(Lts::parse("alphabet: a\ninitial: p\np a q", None).is_err());
    }

    #[test]
    fn weak_after_starts_closed() {
        let al = Alphabet::parse("a").unwrap();
        let lts = Lts::from_process(&parse_process("tau.a.nil", &al).unwrap(), &al).unwrap();
        assert_eq!(lts.weak_after(lts.initial(), &[]).len(), 2);
        assert_eq!(lts.weak_after(lts.initial(), &[Action::new("a")]).len(), 1);
    }

    #[test]
    fn process_recursion_unfolds_silently() {
        let al = Alphabet::parse("a").unwrap();
        let p = parse_process("rec x.a.x", &al).unwrap();
        let steps = process_steps(&p);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].0, Label::Tau);
    }
}
