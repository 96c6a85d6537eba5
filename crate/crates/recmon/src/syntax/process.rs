use super::{fresh_name, Action};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// A transition label: an observable action or the silent `tau`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    Tau,
    Act(Action),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Tau => f.write_str("tau"),
            Label::Act(a) => write!(f, "{a}"),
        }
    }
}

/// A regular CCS process term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Process {
    Nil,
    Prefix(Label, Arc<Process>),
    Sum(Arc<Process>, Arc<Process>),
    Rec(super::Var, Arc<Process>),
    Var(super::Var),
}

use Process::*;

impl Process {
    pub fn prefix(l: Label, p: Process) -> Process {
        Prefix(l, Arc::new(p))
    }

    pub fn act(a: &str, p: Process) -> Process {
        Prefix(Label::Act(Action::new(a)), Arc::new(p))
    }

    pub fn tau(p: Process) -> Process {
        Prefix(Label::Tau, Arc::new(p))
    }

    pub fn sum(l: Process, r: Process) -> Process {
        Sum(Arc::new(l), Arc::new(r))
    }

    pub fn rec(x: &str, p: Process) -> Process {
        Rec(super::Var::new(x), Arc::new(p))
    }

    pub fn var(x: &str) -> Process {
        Var(super::Var::new(x))
    }

    pub fn subst(&self, x: &super::Var, by: &Process) -> Process {
        match self {
            Nil => Nil,
            Var(y) => {
                if y == x {
                    by.clone()
                } else {
                    self.clone()
                }
            }
            Prefix(l, p) => Prefix(l.clone(), Arc::new(p.subst(x, by))),
            Sum(l, r) => Process::sum(l.subst(x, by), r.subst(x, by)),
            Rec(y, p) => {
                if y == x {
                    self.clone()
                } else {
                    Rec(y.clone(), Arc::new(p.subst(x, by)))
                }
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<super::Var> {
        fn go(p: &Process, bound: &mut Vec<super::Var>, out: &mut BTreeSet<super::Var>) {
            match p {
                Nil => {}
                Var(x) => {
                    if !bound.contains(x) {
                        out.insert(x.clone());
                    }
                }
                Prefix(_, q) => go(q, bound, out),
                Sum(l, r) => {
                    go(l, bound, out);
                    go(r, bound, out);
                }
                Rec(x, q) => {
                    bound.push(x.clone());
                    go(q, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn actions(&self) -> BTreeSet<Action> {
        fn go(p: &Process, out: &mut BTreeSet<Action>) {
            match p {
                Nil | Var(_) => {}
                Prefix(l, q) => {
                    if let Label::Act(a) = l {
                        out.insert(a.clone());
                    }
                    go(q, out);
                }
                Sum(l, r) => {
                    go(l, out);
                    go(r, out);
                }
                Rec(_, q) => go(q, out),
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    pub fn with_unique_binders(&self) -> Process {
        fn go(p: &Process, taken: &mut BTreeSet<String>, env: &BTreeMap<super::Var, super::Var>) -> Process {
            match p {
                Nil => Nil,
                Var(x) => Var(env.get(x).cloned().unwrap_or_else(|| x.clone())),
                Prefix(l, q) => Prefix(l.clone(), Arc::new(go(q, taken, env))),
                Sum(l, r) => Process::sum(go(l, taken, env), go(r, taken, env)),
                Rec(x, q) => {
                    let name = fresh_name(x.name(), taken);
                    taken.insert(name.clone());
                    let nx = super::Var::new(&name);
                    let mut env2 = env.clone();
                    env2.insert(x.clone(), nx.clone());
                    Rec(nx, Arc::new(go(q, taken, &env2)))
                }
            }
        }
        let mut taken = self.free_vars().iter().map(|v| v.name().to_string()).collect();
        go(self, &mut taken, &BTreeMap::new())
    }

    fn prec(&self) -> u8 {
        match self {
            Rec(..) => 0,
            Sum(..) => 1,
            Prefix(..) => 2,
            Nil | Var(_) => 3,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Process, min_prec: u8) -> fmt::Result {
    if child.prec() < min_prec {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nil => f.write_str("nil"),
            Var(x) => write!(f, "{x}"),
            Prefix(l, p) => {
                write!(f, "{l}.")?;
                write_child(f, p, 2)
            }
            Sum(l, r) => {
                write_child(f, l, 1)?;
                f.write_str(" + ")?;
                write_child(f, r, 2)
            }
            Rec(x, p) => write!(f, "rec {x}.{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_process, Alphabet};

    #[test]
    fn printing_round_trips() {
        let al = Alphabet::parse("a,b").unwrap();
        for src in ["nil", "a.nil + b.nil", "rec x.a.x + tau.b.nil"] {
            let p = parse_process(src, &al).unwrap();
            assert_eq!(p.to_string(), src);
            assert_eq!(parse_process(&p.to_string(), &al).unwrap(), p);
        }
    }

    #[test]
    fn free_and_actions() {
        let p = Process::sum(Process::act("a", Process::var("x")), Process::tau(Process::Nil));
        assert_eq!(p.free_vars().len(), 1);
        assert_eq!(p.actions().len(), 1);
    }
}
