use super::{fresh_name, Action, Alphabet};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Irrevocable verdicts; `End` is the inconclusive one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    End,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::End => "end",
        })
    }
}

/// A (parallel) monitor term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Monitor {
    Verdict(Verdict),
    Prefix(Action, Arc<Monitor>),
    Sum(Arc<Monitor>, Arc<Monitor>),
    /// Conjunctive parallel composition, written `&&`.
    Conj(Arc<Monitor>, Arc<Monitor>),
    /// Disjunctive parallel composition, written `||`.
    Disj(Arc<Monitor>, Arc<Monitor>),
    Rec(super::Var, Arc<Monitor>),
    Var(super::Var),
}

use Monitor::{Conj, Disj, Prefix, Rec, Sum, Var};

pub const YES: Monitor = Monitor::Verdict(self::Verdict::Yes);
pub const NO: Monitor = Monitor::Verdict(self::Verdict::No);
pub const END: Monitor = Monitor::Verdict(self::Verdict::End);

impl Monitor {
    pub fn yes() -> Monitor {
        YES
    }

    pub fn no() -> Monitor {
        NO
    }

    pub fn end() -> Monitor {
        END
    }

    pub fn prefix(a: Action, m: Monitor) -> Monitor {
        Prefix(a, Arc::new(m))
    }

    pub fn act(a: &str, m: Monitor) -> Monitor {
        Prefix(Action::new(a), Arc::new(m))
    }

    pub fn sum(l: Monitor, r: Monitor) -> Monitor {
        Sum(Arc::new(l), Arc::new(r))
    }

    pub fn conj(l: Monitor, r: Monitor) -> Monitor {
        Conj(Arc::new(l), Arc::new(r))
    }

    pub fn disj(l: Monitor, r: Monitor) -> Monitor {
        Disj(Arc::new(l), Arc::new(r))
    }

    pub fn rec(x: &str, m: Monitor) -> Monitor {
        Rec(super::Var::new(x), Arc::new(m))
    }

    pub fn var(x: &str) -> Monitor {
        Var(super::Var::new(x))
    }

    /// Left-nested sum of the given summands, `None` when empty.
    pub fn sum_of(items: impl IntoIterator<Item = Monitor>) -> Option<Monitor> {
        items.into_iter().reduce(Monitor::sum)
    }

    /// `A.m`: the sum of `a.m` over `a` in `acts`.
    pub fn prefix_all<'a>(acts: impl IntoIterator<Item = &'a Action>, m: &Monitor) -> Option<Monitor> {
        Monitor::sum_of(acts.into_iter().map(|a| Monitor::prefix(a.clone(), m.clone())))
    }

    pub fn as_verdict(&self) -> Option<self::Verdict> {
        match self {
            Monitor::Verdict(v) => Some(*v),
            _ => None,
        }
    }

    /// Symbol length `l(m)`.
    pub fn length(&self) -> usize {
        match self {
            Monitor::Verdict(_) | Var(_) => 1,
            Prefix(_, m) => 1 + m.length(),
            Sum(l, r) | Conj(l, r) | Disj(l, r) => 1 + l.length() + r.length(),
            Rec(_, m) => 1 + m.length(),
        }
    }

    /// The size bound on reachable states of a regular monitor.
    pub fn state_size(&self) -> usize {
        match self {
            Monitor::Verdict(_) | Var(_) => 1,
            Prefix(_, m) => 1 + m.state_size(),
            Sum(l, r) | Conj(l, r) | Disj(l, r) => 1 + l.state_size() + r.state_size(),
            Rec(_, m) => m.state_size(),
        }
    }

    /// No parallel composition.
    pub fn is_regular(&self) -> bool {
        match self {
            Monitor::Verdict(_) | Var(_) => true,
            Prefix(_, m) | Rec(_, m) => m.is_regular(),
            Sum(l, r) => l.is_regular() && r.is_regular(),
            Conj(..) | Disj(..) => false,
        }
    }

    pub fn is_recursion_free(&self) -> bool {
        match self {
            Monitor::Verdict(_) => true,
            Var(_) | Rec(..) => false,
            Prefix(_, m) => m.is_recursion_free(),
            Sum(l, r) | Conj(l, r) | Disj(l, r) => l.is_recursion_free() && r.is_recursion_free(),
        }
    }

    /// Summands of a maximal sum.
    pub fn summands(&self) -> Vec<&Monitor> {
        let mut out = Vec::new();
        fn go<'a>(m: &'a Monitor, out: &mut Vec<&'a Monitor>) {
            match m {
                Sum(l, r) => {
                    go(l, out);
                    go(r, out);
                }
                _ => out.push(m),
            }
        }
        go(self, &mut out);
        out
    }

    /// Every sum with at least two summands is a sum of prefixes with
    /// pairwise distinct actions.
    pub fn is_syntactically_deterministic(&self) -> bool {
        match self {
            Monitor::Verdict(_) | Var(_) => true,
            Prefix(_, m) | Rec(_, m) => m.is_syntactically_deterministic(),
            Conj(l, r) | Disj(l, r) => {
                l.is_syntactically_deterministic() && r.is_syntactically_deterministic()
            }
            Sum(..) => {
                let mut seen = BTreeSet::new();
                for s in self.summands() {
                    match s {
                        Prefix(a, m) => {
                            if !seen.insert(a.clone()) || !m.is_syntactically_deterministic() {
                                return false;
                            }
                        }
                        _ => return false,
                    }
                }
                true
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<super::Var> {
        fn go(m: &Monitor, bound: &mut Vec<super::Var>, out: &mut BTreeSet<super::Var>) {
            match m {
                Monitor::Verdict(_) => {}
                Var(x) => {
                    if !bound.contains(x) {
                        out.insert(x.clone());
                    }
                }
                Prefix(_, n) => go(n, bound, out),
                Sum(l, r) | Conj(l, r) | Disj(l, r) => {
                    go(l, bound, out);
                    go(r, bound, out);
                }
                Rec(x, n) => {
                    bound.push(x.clone());
                    go(n, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn var_names(&self) -> BTreeSet<String> {
        fn go(m: &Monitor, out: &mut BTreeSet<String>) {
            match m {
                Monitor::Verdict(_) => {}
                Var(x) => {
                    out.insert(x.name().to_string());
                }
                Prefix(_, n) => go(n, out),
                Sum(l, r) | Conj(l, r) | Disj(l, r) => {
                    go(l, out);
                    go(r, out);
                }
                Rec(x, n) => {
                    out.insert(x.name().to_string());
                    go(n, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// Every recursion variable occurs under a prefix inside its binder.
    pub fn is_guarded(&self) -> bool {
        fn go(m: &Monitor, open: &mut Vec<super::Var>) -> bool {
            match m {
                Monitor::Verdict(_) => true,
                Var(x) => !open.contains(x),
                Prefix(_, n) => go(n, &mut Vec::new()),
                Sum(l, r) | Conj(l, r) | Disj(l, r) => go(l, open) && go(r, open),
                Rec(x, n) => {
                    open.push(x.clone());
                    let ok = go(n, open);
                    open.pop();
                    ok
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn actions(&self) -> BTreeSet<Action> {
        fn go(m: &Monitor, out: &mut BTreeSet<Action>) {
            match m {
                Monitor::Verdict(_) | Var(_) => {}
                Prefix(a, n) => {
                    out.insert(a.clone());
                    go(n, out);
                }
                Sum(l, r) | Conj(l, r) | Disj(l, r) => {
                    go(l, out);
                    go(r, out);
                }
                Rec(_, n) => go(n, out),
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self.actions().into_iter().find(|a| !alphabet.contains(a)) {
            Some(a) => Err(Error::UnknownAction(a.to_string())),
            None => Ok(()),
        }
    }

    /// Substitutes `by` (assumed closed) for free occurrences of `x`.
    pub fn subst(&self, x: &super::Var, by: &Monitor) -> Monitor {
        match self {
            Monitor::Verdict(_) => self.clone(),
            Var(y) => {
                if y == x {
                    by.clone()
                } else {
                    self.clone()
                }
            }
            Prefix(a, n) => Prefix(a.clone(), Arc::new(n.subst(x, by))),
            Sum(l, r) => Monitor::sum(l.subst(x, by), r.subst(x, by)),
            Conj(l, r) => Monitor::conj(l.subst(x, by), r.subst(x, by)),
            Disj(l, r) => Monitor::disj(l.subst(x, by), r.subst(x, by)),
            Rec(y, n) => {
                if y == x {
                    self.clone()
                } else {
                    Rec(y.clone(), Arc::new(n.subst(x, by)))
                }
            }
        }
    }

    /// Renames binders apart from each other and from free variables.
    pub fn with_unique_binders(&self) -> Monitor {
        let mut taken: BTreeSet<String> =
            self.free_vars().iter().map(|v| v.name().to_string()).collect();
        self.rename(&mut taken, &BTreeMap::new())
    }

    fn rename(&self, taken: &mut BTreeSet<String>, env: &BTreeMap<super::Var, super::Var>) -> Monitor {
        match self {
            Monitor::Verdict(_) => self.clone(),
            Var(x) => Var(env.get(x).cloned().unwrap_or_else(|| x.clone())),
            Prefix(a, n) => Prefix(a.clone(), Arc::new(n.rename(taken, env))),
            Sum(l, r) => Monitor::sum(l.rename(taken, env), r.rename(taken, env)),
            Conj(l, r) => Monitor::conj(l.rename(taken, env), r.rename(taken, env)),
            Disj(l, r) => Monitor::disj(l.rename(taken, env), r.rename(taken, env)),
            Rec(x, n) => {
                let name = fresh_name(x.name(), taken);
                taken.insert(name.clone());
                let nx = super::Var::new(&name);
                let mut env2 = env.clone();
                env2.insert(x.clone(), nx.clone());
                Rec(nx, Arc::new(n.rename(taken, &env2)))
            }
        }
    }

    /// True when no two binders share a name.
    pub fn has_unique_binders(&self) -> bool {
        fn go(m: &Monitor, seen: &mut BTreeSet<super::Var>) -> bool {
            match m {
                Monitor::Verdict(_) | Var(_) => true,
                Prefix(_, n) => go(n, seen),
                Sum(l, r) | Conj(l, r) | Disj(l, r) => go(l, seen) && go(r, seen),
                Rec(x, n) => seen.insert(x.clone()) && go(n, seen),
            }
        }
        go(self, &mut BTreeSet::new())
    }

    /// Maps each binder to its body. Assumes unique binders.
    pub fn binders(&self) -> BTreeMap<super::Var, Monitor> {
        fn go(m: &Monitor, out: &mut BTreeMap<super::Var, Monitor>) {
            match m {
                Monitor::Verdict(_) | Var(_) => {}
                Prefix(_, n) => go(n, out),
                Sum(l, r) | Conj(l, r) | Disj(l, r) => {
                    go(l, out);
                    go(r, out);
                }
                Rec(x, n) => {
                    out.insert(x.clone(), (**n).clone());
                    go(n, out);
                }
            }
        }
        let mut out = BTreeMap::new();
        go(self, &mut out);
        out
    }

    /// All syntactic subterms, including the term itself.
    pub fn submonitors(&self) -> BTreeSet<Monitor> {
        fn go(m: &Monitor, out: &mut BTreeSet<Monitor>) {
            if !out.insert(m.clone()) {
                return;
            }
            match m {
                Monitor::Verdict(_) | Var(_) => {}
                Prefix(_, n) | Rec(_, n) => go(n, out),
                Sum(l, r) | Conj(l, r) | Disj(l, r) => {
                    go(l, out);
                    go(r, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    fn prec(&self) -> u8 {
        match self {
            Rec(..) => 0,
            Disj(..) => 1,
            Conj(..) => 2,
            Sum(..) => 3,
            Prefix(..) => 4,
            Monitor::Verdict(_) | Var(_) => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Monitor, min_prec: u8) -> fmt::Result {
    if child.prec() < min_prec {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Monitor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monitor::Verdict(v) => write!(f, "{v}"),
            Var(x) => write!(f, "{x}"),
            Prefix(a, m) => {
                write!(f, "{a}.")?;
                write_child(f, m, 4)
            }
            Sum(l, r) => {
                write_child(f, l, 3)?;
                f.write_str(" + ")?;
                write_child(f, r, 4)
            }
            Conj(l, r) => {
                write_child(f, l, 2)?;
                f.write_str(" && ")?;
                write_child(f, r, 3)
            }
            Disj(l, r) => {
                write_child(f, l, 1)?;
                f.write_str(" || ")?;
                write_child(f, r, 2)
            }
            Rec(x, m) => write!(f, "rec {x}.{m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_monitor;

    fn m(src: &str) -> Monitor {
        parse_monitor(src, &Alphabet::parse("a,b").unwrap()).unwrap()
    }

    #[test]
    fn parse_shape() {
        let r = m("rec x.(a.x + b.yes)");
        let expected = Monitor::rec("x", Monitor::sum(Monitor::act("a", Monitor::var("x")), Monitor::act("b", Monitor::yes())));
        assert_eq!(r, expected.with_unique_binders());
    }

    #[test]
    fn predicates() {
        assert!(m("rec x.(a.x + b.yes)").is_regular());
        assert!(!m("a.yes && b.no").is_regular());
        assert!(m("a.(a.no + b.yes)").is_syntactically_deterministic());
        assert!(!m("a.b.yes + a.a.no").is_syntactically_deterministic());
        assert!(m("a.yes").is_recursion_free());
        assert!(!m("rec x.a.x").is_recursion_free());
        assert!(m("rec x.a.x").is_guarded());
        assert!(!m("rec x.(x + a.yes)").is_guarded());
    }

    #[test]
    fn lengths() {
        assert_eq!(m("yes").length(), 1);
        assert_eq!(m("a.yes").length(), 2);
        assert_eq!(m("a.yes + b.no").length(), 5);
        assert_eq!(m("rec x.a.x").length(), 3);
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "a.(a.no + b.yes)",
            "a.yes + b.no && b.yes + a.no",
            "(a.yes || b.yes) + (a.end + b.end)",
            "rec x.a.x + b.yes",
            "a.yes && (b.yes && a.no)",
            "(rec x.a.x) + b.no",
        ] {
            assert_eq!(m(src).to_string(), src);
        }
    }

    #[test]
    fn binders_are_renamed_apart() {
        let r = m("rec x.a.x + rec x.b.x");
        assert!(r.has_unique_binders());
        assert_eq!(r.binders().len(), 2);
    }
}
