use super::{fresh_name, ActSet, Alphabet};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// A recHML formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    True,
    False,
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Box(ActSet, Arc<Formula>),
    Diamond(ActSet, Arc<Formula>),
    Max(super::Var, Arc<Formula>),
    Min(super::Var, Arc<Formula>),
    Var(super::Var),
}

use Formula::*;

impl Formula {
    pub fn and(l: Formula, r: Formula) -> Formula {
        And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Or(Arc::new(l), Arc::new(r))
    }

    pub fn boxed(a: ActSet, f: Formula) -> Formula {
        Box(a, Arc::new(f))
    }

    pub fn diamond(a: ActSet, f: Formula) -> Formula {
        Diamond(a, Arc::new(f))
    }

    pub fn max(x: &str, f: Formula) -> Formula {
        Max(super::Var::new(x), Arc::new(f))
    }

    pub fn min(x: &str, f: Formula) -> Formula {
        Min(super::Var::new(x), Arc::new(f))
    }

    pub fn var(x: &str) -> Formula {
        Var(super::Var::new(x))
    }

    /// Left-nested conjunction; `tt` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(True)
    }

    /// Left-nested disjunction; `ff` when empty.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(False)
    }

    /// `next f`, i.e. `<Act>f`.
    pub fn next(alphabet: &Alphabet, f: Formula) -> Formula {
        Formula::diamond(alphabet.full(), f)
    }

    /// `f until g`, i.e. `min Y.(g | (f & <Act>Y))`.
    pub fn until(alphabet: &Alphabet, f: Formula, g: Formula) -> Formula {
        let y = fresh_var("Y", &[&f, &g]);
        let step = Formula::and(f, Formula::diamond(alphabet.full(), Var(y.clone())));
        Min(y, Arc::new(Formula::or(g, step)))
    }

    /// `f release g`, i.e. `max Y.((g & f) | (g & <Act>Y))`.
    pub fn release(alphabet: &Alphabet, f: Formula, g: Formula) -> Formula {
        let y = fresh_var("Y", &[&f, &g]);
        let now = Formula::and(g.clone(), f);
        let later = Formula::and(g, Formula::diamond(alphabet.full(), Var(y.clone())));
        Max(y, Arc::new(Formula::or(now, later)))
    }

    /// Symbol length; a modality over `A` counts as the conjunction or
    /// disjunction of its single-action instances.
    pub fn length(&self) -> usize {
        match self {
            True | False | Var(_) => 1,
            And(l, r) | Or(l, r) => 1 + l.length() + r.length(),
            Box(a, f) | Diamond(a, f) => {
                let k = a.len().max(1);
                k * (1 + f.length()) + (k - 1)
            }
            Max(_, f) | Min(_, f) => 2 + f.length(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            True | False | Var(_) => 1,
            And(l, r) | Or(l, r) => 1 + l.size() + r.size(),
            Box(_, f) | Diamond(_, f) | Max(_, f) | Min(_, f) => 1 + f.size(),
        }
    }

    /// Nesting depth of modalities.
    pub fn modal_depth(&self) -> usize {
        match self {
            True | False | Var(_) => 0,
            And(l, r) | Or(l, r) => l.modal_depth().max(r.modal_depth()),
            Box(_, f) | Diamond(_, f) => 1 + f.modal_depth(),
            Max(_, f) | Min(_, f) => f.modal_depth(),
        }
    }

    /// The substitution measure: fixpoints and boolean connectives above the
    /// outermost modalities.
    pub fn ms(&self) -> usize {
        match self {
            True | False | Var(_) | Box(..) | Diamond(..) => 0,
            Max(_, f) | Min(_, f) => 1 + f.ms(),
            And(l, r) | Or(l, r) => 1 + l.ms().max(r.ms()),
        }
    }

    pub fn has_fixpoints(&self) -> bool {
        match self {
            True | False => false,
            Var(_) | Max(..) | Min(..) => true,
            And(l, r) | Or(l, r) => l.has_fixpoints() || r.has_fixpoints(),
            Box(_, f) | Diamond(_, f) => f.has_fixpoints(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<super::Var> {
        fn go(f: &Formula, bound: &mut Vec<super::Var>, out: &mut BTreeSet<super::Var>) {
            match f {
                True | False => {}
                Var(x) => {
                    if !bound.contains(x) {
                        out.insert(x.clone());
                    }
                }
                And(l, r) | Or(l, r) => {
                    go(l, bound, out);
                    go(r, bound, out);
                }
                Box(_, g) | Diamond(_, g) => go(g, bound, out),
                Max(x, g) | Min(x, g) => {
                    bound.push(x.clone());
                    go(g, bound, out);
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

    /// All variable names occurring anywhere (bound, free or as binders).
    pub fn var_names(&self) -> BTreeSet<String> {
        fn go(f: &Formula, out: &mut BTreeSet<String>) {
            match f {
                True | False => {}
                Var(x) => {
                    out.insert(x.name().to_string());
                }
                And(l, r) | Or(l, r) => {
                    go(l, out);
                    go(r, out);
                }
                Box(_, g) | Diamond(_, g) => go(g, out),
                Max(x, g) | Min(x, g) => {
                    out.insert(x.name().to_string());
                    go(g, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// Checks that every bound variable occurrence is under a modality
    /// inside its binder. Returns the offending variable.
    pub fn unguarded_var(&self) -> Option<super::Var> {
        fn go(f: &Formula, open: &mut Vec<super::Var>) -> Option<super::Var> {
            match f {
                True | False => None,
                Var(x) => open.contains(x).then(|| x.clone()),
                And(l, r) | Or(l, r) => go(l, open).or_else(|| go(r, open)),
                Box(_, g) | Diamond(_, g) => go(g, &mut Vec::new()),
                Max(x, g) | Min(x, g) => {
                    open.push(x.clone());
                    let r = go(g, open);
                    open.pop();
                    r
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn is_guarded(&self) -> bool {
        self.unguarded_var().is_none()
    }

    /// Fails unless the formula is closed and guarded.
    pub fn check_closed_guarded(&self) -> Result<()> {
        if let Some(x) = self.free_vars().into_iter().next() {
            return Err(Error::FreeVariable(x.to_string()));
        }
        if let Some(x) = self.unguarded_var() {
            return Err(Error::Unguarded(x.to_string()));
        }
        Ok(())
    }

    /// Fails if a modality mentions an action outside `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self {
            True | False | Var(_) => Ok(()),
            And(l, r) | Or(l, r) => {
                l.check_alphabet(alphabet)?;
                r.check_alphabet(alphabet)
            }
            Box(a, g) | Diamond(a, g) => {
                if let Some(x) = a.iter().find(|x| !alphabet.contains(x)) {
                    return Err(Error::UnknownAction(x.to_string()));
                }
                g.check_alphabet(alphabet)
            }
            Max(_, g) | Min(_, g) => g.check_alphabet(alphabet),
        }
    }

    /// Capture-free substitution of `by` for the free occurrences of `x`.
    pub fn subst(&self, x: &super::Var, by: &Formula) -> Formula {
        match self {
            True | False => self.clone(),
            Var(y) => {
                if y == x {
                    by.clone()
                } else {
                    self.clone()
                }
            }
            And(l, r) => Formula::and(l.subst(x, by), r.subst(x, by)),
            Or(l, r) => Formula::or(l.subst(x, by), r.subst(x, by)),
            Box(a, g) => Formula::boxed(a.clone(), g.subst(x, by)),
            Diamond(a, g) => Formula::diamond(a.clone(), g.subst(x, by)),
            Max(y, g) | Min(y, g) => {
                if y == x {
                    return self.clone();
                }
                let (y2, g2) = if by.free_vars().contains(y) {
                    let mut taken = by.var_names();
                    taken.extend(g.var_names());
                    taken.insert(x.name().to_string());
                    let fresh = super::Var::new(&fresh_name(y.name(), &taken));
                    (fresh.clone(), g.subst(y, &Var(fresh)))
                } else {
                    (y.clone(), (**g).clone())
                };
                let body = Arc::new(g2.subst(x, by));
                if matches!(self, Max(..)) {
                    Max(y2, body)
                } else {
                    Min(y2, body)
                }
            }
        }
    }

    /// The negation dual: swaps tt/ff, and/or, box/diamond, max/min.
    pub fn dual(&self) -> Formula {
        match self {
            True => False,
            False => True,
            Var(_) => self.clone(),
            And(l, r) => Formula::or(l.dual(), r.dual()),
            Or(l, r) => Formula::and(l.dual(), r.dual()),
            Box(a, g) => Formula::diamond(a.clone(), g.dual()),
            Diamond(a, g) => Formula::boxed(a.clone(), g.dual()),
            Max(x, g) => Min(x.clone(), Arc::new(g.dual())),
            Min(x, g) => Max(x.clone(), Arc::new(g.dual())),
        }
    }

    /// Renames binders so that every binder name is distinct and differs
    /// from every free variable.
    pub fn with_unique_binders(&self) -> Formula {
        let mut taken: BTreeSet<String> =
            self.free_vars().iter().map(|v| v.name().to_string()).collect();
        self.rename(&mut taken, &BTreeMap::new())
    }

    fn rename(&self, taken: &mut BTreeSet<String>, env: &BTreeMap<super::Var, super::Var>) -> Formula {
        match self {
            True | False => self.clone(),
            Var(x) => Var(env.get(x).cloned().unwrap_or_else(|| x.clone())),
            And(l, r) => Formula::and(l.rename(taken, env), r.rename(taken, env)),
            Or(l, r) => Formula::or(l.rename(taken, env), r.rename(taken, env)),
            Box(a, g) => Formula::boxed(a.clone(), g.rename(taken, env)),
            Diamond(a, g) => Formula::diamond(a.clone(), g.rename(taken, env)),
            Max(x, g) | Min(x, g) => {
                let name = fresh_name(x.name(), taken);
                taken.insert(name.clone());
                let nx = super::Var::new(&name);
                let mut env2 = env.clone();
                env2.insert(x.clone(), nx.clone());
                let body = Arc::new(g.rename(taken, &env2));
                if matches!(self, Max(..)) {
                    Max(nx, body)
                } else {
                    Min(nx, body)
                }
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Max(..) | Min(..) => 0,
            Or(..) => 1,
            And(..) => 2,
            Box(..) | Diamond(..) => 3,
            True | False | Var(_) => 4,
        }
    }
}

fn fresh_var(base: &str, fs: &[&Formula]) -> super::Var {
    let mut taken = BTreeSet::new();
    for f in fs {
        taken.extend(f.var_names());
    }
    super::Var::new(&fresh_name(base, &taken))
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, min_prec: u8) -> fmt::Result {
    if child.prec() < min_prec {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            True => f.write_str("tt"),
            False => f.write_str("ff"),
            Var(x) => write!(f, "{x}"),
            And(l, r) => {
                write_child(f, l, 2)?;
                f.write_str(" & ")?;
                write_child(f, r, 3)
            }
            Or(l, r) => {
                write_child(f, l, 1)?;
                f.write_str(" | ")?;
                write_child(f, r, 2)
            }
            Box(a, g) => {
                write!(f, "[{a}]")?;
                write_child(f, g, 3)
            }
            Diamond(a, g) => {
                write!(f, "<{a}>")?;
                write_child(f, g, 3)
            }
            Max(x, g) => write!(f, "max {x}.{g}"),
            Min(x, g) => write!(f, "min {x}.{g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, Fixpoints};
    use crate::syntax::parse_formula_open;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::parse("a,b").unwrap()
    }

    fn f(src: &str) -> Formula {
        parse_formula_open(src, &ab()).unwrap()
    }

    #[test]
    fn measures() {
        assert_eq!(f("[a]ff").ms(), 0);
        assert_eq!(f("max X.[a]X").ms(), 1);
        assert_eq!(f("max X.([a]X & tt)").ms(), 2);
        assert_eq!(f("[a][a]ff").length(), 3);
        assert_eq!(f("[a,b]ff").length(), 5);
        assert_eq!(f("[a][b]ff & <a>tt").modal_depth(), 2);
    }

    #[test]
    fn free_variables() {
        let g = f("max X.(X & Y)");
        let names: Vec<String> = g.free_vars().iter().map(|v| v.name().to_string()).collect();
        assert_eq!(names, ["Y"]);
        assert!(!g.is_closed());
        assert!(f("max X.[a]X").is_closed());
    }

    #[test]
    fn guardedness() {
        assert!(f("max X.[a]X").is_guarded());
        assert!(!f("max X.(X & [a]X)").is_guarded());
        assert!(matches!(f("min X.X").check_closed_guarded(), Err(crate::Error::Unguarded(_))));
    }

    #[test]
    fn substitution_avoids_capture() {
        let g = f("max X.(Y & [a]X)");
        let y = super::super::Var::new("Y");
        let s = g.subst(&y, &Formula::var("X"));
        assert_eq!(s.free_vars().len(), 1);
        assert_eq!(s.free_vars().into_iter().next().unwrap().name(), "X");
    }

    #[test]
    fn printing() {
        for src in ["[a][a]ff", "tt", "<a,b>tt & [b]ff | ff", "max X.[a]X & <b>tt", "[a](tt | ff)", "(tt | ff) & tt"] {
            assert_eq!(f(src).to_string(), src);
        }
        assert_eq!(f("(tt & tt) & tt").to_string(), "tt & tt & tt");
        assert_eq!(f("tt & (tt & tt)").to_string(), "tt & (tt & tt)");
    }

    #[test]
    fn ltl_sugar() {
        let al = ab();
        let u = Formula::until(&al, Formula::diamond(ActSet::of(["a"]), Formula::True), Formula::diamond(ActSet::of(["b"]), Formula::True));
        assert!(matches!(u, Formula::Min(..)));
        assert!(u.is_guarded() && u.is_closed());
        assert!(matches!(Formula::release(&al, Formula::True, Formula::False), Formula::Max(..)));
    }

    proptest! {
        #[test]
        fn unfolding_lowers_measure(seed in any::<u64>()) {
            let al = ab();
            let mut rng = corpus::rng(seed);
            let g = corpus::random_fixpoint_formula(&mut rng, &al, Fixpoints::Greatest, 20);
            let mut stack = vec![g];
            while let Some(h) = stack.pop() {
                match &h {
                    Formula::Max(x, body) | Formula::Min(x, body) => {
                        let unfolded = body.subst(x, &h);
                        prop_assert!(unfolded.ms() < h.ms(), "{} -> {}", h, unfolded);
                        stack.push((**body).clone());
                    }
                    Formula::And(l, r) | Formula::Or(l, r) => {
                        stack.push((**l).clone());
                        stack.push((**r).clone());
                    }
                    _ => {}
                }
            }
        }

        #[test]
        fn dual_is_an_involution(seed in any::<u64>()) {
            let mut rng = corpus::rng(seed);
            let g = corpus::random_fixpoint_formula(&mut rng, &ab(), Fixpoints::Least, 20);
            prop_assert_eq!(g.dual().dual(), g.clone());
            prop_assert_eq!(g.dual().length(), g.length());
        }
    }
}
