use crate::syntax::{Label, Monitor, Var, Verdict};
use std::collections::BTreeMap;

/// Which treatment of recursion to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum System {
    /// `rec x.m` unfolds to `m[rec x.m/x]` with a silent step.
    #[default]
    O,
    /// `rec x.m` steps silently to `m`, and `x` steps silently to the body
    /// of its (unique) binder.
    N,
}

/// One-step transition relation for monitors.
#[derive(Clone, Debug, Default)]
pub struct Stepper {
    system: System,
    binders: BTreeMap<Var, Monitor>,
}

impl Stepper {
    /// A stepper for System O.
    pub fn new() -> Self {
        Stepper::default()
    }

    /// A stepper for System N over the binders of `root`, which must have
    /// unique binder names.
    pub fn system_n(root: &Monitor) -> Self {
        Stepper { system: System::N, binders: root.binders() }
    }

    pub fn with_system(root: &Monitor, system: System) -> Self {
        match system {
            System::O => Stepper::new(),
            System::N => Stepper::system_n(root),
        }
    }

    pub fn system(&self) -> System {
        self.system
    }

    /// All `m'` with `m --l--> m'`, without duplicates.
    pub fn step(&self, m: &Monitor, l: &Label) -> Vec<Monitor> {
        let mut out = Vec::new();
        self.step_into(m, l, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn step_into(&self, m: &Monitor, l: &Label, out: &mut Vec<Monitor>) {
        match m {
            Monitor::Verdict(_) => {
                if let Label::Act(_) = l {
                    out.push(m.clone());
                }
            }
            Monitor::Prefix(a, n) => {
                if let Label::Act(b) = l {
                    if a == b {
                        out.push((**n).clone());
                    }
                }
            }
            Monitor::Sum(p, q) => {
                self.step_into(p, l, out);
                self.step_into(q, l, out);
            }
            Monitor::Rec(x, n) => {
                if *l == Label::Tau {
                    match self.system {
                        System::O => out.push(n.subst(x, m)),
                        System::N => out.push((**n).clone()),
                    }
                }
            }
            Monitor::Var(x) => {
                if *l == Label::Tau && self.system == System::N {
                    if let Some(body) = self.binders.get(x) {
                        out.push(Monitor::Rec(x.clone(), std::sync::Arc::new(body.clone())));
                    }
                }
            }
            Monitor::Conj(p, q) | Monitor::Disj(p, q) => {
                let conj = matches!(m, Monitor::Conj(..));
                let rebuild = |a: Monitor, b: Monitor| if conj { Monitor::conj(a, b) } else { Monitor::disj(a, b) };
                match l {
                    Label::Act(_) => {
                        let ps = self.step(p, l);
                        if ps.is_empty() {
                            return;
                        }
                        let qs = self.step(q, l);
                        for p2 in &ps {
                            for q2 in &qs {
                                out.push(rebuild(p2.clone(), q2.clone()));
                            }
                        }
                    }
                    Label::Tau => {
                        for p2 in self.step(p, l) {
                            out.push(rebuild(p2, (**q).clone()));
                        }
                        for q2 in self.step(q, l) {
                            out.push(rebuild((**p).clone(), q2));
                        }
                        let (vp, vq) = (p.as_verdict(), q.as_verdict());
                        if vp == Some(Verdict::End) && vq == Some(Verdict::End) {
                            out.push(Monitor::end());
                        }
                        let (unit, zero) = if conj { (Verdict::Yes, Verdict::No) } else { (Verdict::No, Verdict::Yes) };
                        if vp == Some(unit) {
                            out.push((**q).clone());
                        }
                        if vq == Some(unit) {
                            out.push((**p).clone());
                        }
                        if vp == Some(zero) || vq == Some(zero) {
                            out.push(Monitor::Verdict(zero));
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_monitor, Action, Alphabet};

    fn m(src: &str) -> Monitor {
        parse_monitor(src, &Alphabet::parse("a,b").unwrap()).unwrap()
    }

    fn act(a: &str) -> Label {
        Label::Act(Action::new(a))
    }

    #[test]
    fn recursion_unfolds() {
        let r = m("rec x.(a.x + b.yes)");
        let Monitor::Rec(x, body) = &r else { panic!() };
        assert_eq!(Stepper::new().step(&r, &Label::Tau), [body.subst(x, &r)]);
        assert_eq!(Stepper::system_n(&r).step(&r, &Label::Tau), [(**body).clone()]);
        assert!(Stepper::new().step(&r, &act("a")).is_empty());
    }

    #[test]
    fn verdicts_persist() {
        let s = Stepper::new();
        for v in ["yes", "no", "end"] {
            assert_eq!(s.step(&m(v), &act("a")), [m(v)]);
            assert!(s.step(&m(v), &Label::Tau).is_empty());
        }
    }

    #[test]
    fn choice_and_prefix() {
        let s = Stepper::new();
        assert_eq!(s.step(&m("a.yes + b.no"), &act("b")), [m("no")]);
        assert_eq!(s.step(&m("a.yes + a.no"), &act("a")).len(), 2);
        assert!(s.step(&m("a.yes"), &act("b")).is_empty());
    }

    #[test]
    fn parallel_verdict_rules() {
        let s = Stepper::new();
        let k = m("a.end");
        assert_eq!(s.step(&m("yes && a.end"), &Label::Tau), [k.clone()]);
        assert_eq!(s.step(&m("no && a.end"), &Label::Tau), [m("no")]);
        assert_eq!(s.step(&m("yes || a.end"), &Label::Tau), [m("yes")]);
        assert_eq!(s.step(&m("no || a.end"), &Label::Tau), [k]);
        assert_eq!(s.step(&m("end && end"), &Label::Tau), [m("end")]);
        assert_eq!(s.step(&m("a.yes && a.no"), &act("a")), [m("yes && no")]);
        assert!(s.step(&m("a.yes && b.no"), &act("a")).is_empty());
    }
}
