//! Slim normal forms for fixpoint-free formulas, recursion unfolding and
//! tightness checks.

use crate::engine::verdict_table;
use crate::error::{Error, Result};
use crate::semantics::{eval_finfinite, words};
use crate::syntax::{ActSet, Action, Alphabet, Formula, Monitor, Trace, Verdict};
use serde::Serialize;
use std::collections::BTreeMap;

pub use crate::synthesis::no_rec;

/// One application of a rewrite rule, on the redex it rewrote.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: &'static str,
    pub before: Formula,
    pub after: Formula,
}

impl Serialize for RewriteStep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RewriteStep", 3)?;
        st.serialize_field("rule", self.rule)?;
        st.serialize_field("before", &self.before.to_string())?;
        st.serialize_field("after", &self.after.to_string())?;
        st.end()
    }
}

/// A slim formula viewed as a family.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Family {
    True,
    False,
    Boxes(BTreeMap<Action, Formula>),
    Diamonds(BTreeMap<Action, Formula>),
}

fn single(a: &Action) -> ActSet {
    ActSet::single(a.clone())
}

fn build(fam: &Family) -> Formula {
    match fam {
        Family::True => Formula::True,
        Family::False => Formula::False,
        Family::Boxes(m) => Formula::conj(m.iter().map(|(a, f)| Formula::boxed(single(a), f.clone()))),
        Family::Diamonds(m) => Formula::disj(m.iter().map(|(a, f)| Formula::diamond(single(a), f.clone()))),
    }
}

struct Normalizer<'a> {
    alphabet: &'a Alphabet,
    steps: Vec<RewriteStep>,
}

impl Normalizer<'_> {
    fn record(&mut self, rule: &'static str, before: Formula, after: Formula) {
        self.steps.push(RewriteStep { rule, before, after });
    }

    fn norm(&mut self, f: &Formula) -> Result<Family> {
        match f {
            Formula::True => Ok(Family::True),
            Formula::False => Ok(Family::False),
            Formula::Box(acts, g) => {
                let inner = self.norm(g)?;
                let gf = build(&inner);
                let members = acts.iter().map(|a| (a.clone(), gf.clone())).collect();
                Ok(self.tidy_boxes(members))
            }
            Formula::Diamond(acts, g) => {
                let inner = self.norm(g)?;
                let gf = build(&inner);
                let members = acts.iter().map(|a| (a.clone(), gf.clone())).collect();
                Ok(self.tidy_diamonds(members))
            }
            Formula::And(l, r) => {
                let (a, b) = (self.norm(l)?, self.norm(r)?);
                self.and(a, b)
            }
            Formula::Or(l, r) => {
                let (a, b) = (self.norm(l)?, self.norm(r)?);
                self.or(a, b)
            }
            Formula::Max(..) | Formula::Min(..) | Formula::Var(_) => {
                Err(Error::Fragment("slim normal forms are defined for fixpoint-free formulas".into()))
            }
        }
    }

    /// Drops `[a]tt` members, and collapses empty and all-`ff` families.
    fn tidy_boxes(&mut self, mut m: BTreeMap<Action, Formula>) -> Family {
        let trivial: Vec<Action> = m.iter().filter(|(_, f)| **f == Formula::True).map(|(a, _)| a.clone()).collect();
        if !trivial.is_empty() {
            let before = build(&Family::Boxes(m.clone()));
            for a in trivial {
                m.remove(&a);
            }
            let after = build(&Family::Boxes(m.clone()));
            self.record("modal-trivial", before, after);
        }
        if m.is_empty() {
            return Family::True;
        }
        if m.len() == self.alphabet.len() && m.values().all(|f| *f == Formula::False) {
            let fam = Family::Boxes(m);
            self.record("full-box-ff", build(&fam), Formula::False);
            return Family::False;
        }
        Family::Boxes(m)
    }

    /// Drops `<a>ff` members, and collapses empty and all-`tt` families.
    fn tidy_diamonds(&mut self, mut m: BTreeMap<Action, Formula>) -> Family {
        let trivial: Vec<Action> = m.iter().filter(|(_, f)| **f == Formula::False).map(|(a, _)| a.clone()).collect();
        if !trivial.is_empty() {
            let before = build(&Family::Diamonds(m.clone()));
            for a in trivial {
                m.remove(&a);
            }
            let after = build(&Family::Diamonds(m.clone()));
            self.record("modal-trivial", before, after);
        }
        if m.is_empty() {
            return Family::False;
        }
        if m.len() == self.alphabet.len() && m.values().all(|f| *f == Formula::True) {
            let fam = Family::Diamonds(m);
            self.record("full-diamond-tt", build(&fam), Formula::True);
            return Family::True;
        }
        Family::Diamonds(m)
    }

    fn and(&mut self, a: Family, b: Family) -> Result<Family> {
        let before = Formula::and(build(&a), build(&b));
        match (a, b) {
            (Family::True, x) | (x, Family::True) => {
                self.record("absorb-trivial", before, build(&x));
                Ok(x)
            }
            (Family::False, _) | (_, Family::False) => {
                self.record("absorb-trivial", before, Formula::False);
                Ok(Family::False)
            }
            (Family::Boxes(p), Family::Boxes(q)) => {
                let common = p.keys().any(|k| q.contains_key(k));
                let mut raw = p.clone();
                for (k, f) in &q {
                    raw.entry(k.clone())
                        .and_modify(|g| *g = Formula::and(g.clone(), f.clone()))
                        .or_insert_with(|| f.clone());
                }
                if !common {
                    return Ok(self.tidy_boxes(raw));
                }
                self.record("box-merge", before, build(&Family::Boxes(raw.clone())));
                let mut merged = BTreeMap::new();
                for (k, f) in raw {
                    let g = match (p.get(&k), q.get(&k)) {
                        (Some(x), Some(y)) => {
                            let (fx, fy) = (self.norm(x)?, self.norm(y)?);
                            build(&self.and(fx, fy)?)
                        }
                        _ => f,
                    };
                    merged.insert(k, g);
                }
                Ok(self.tidy_boxes(merged))
            }
            (Family::Diamonds(p), Family::Diamonds(q)) => {
                let mut raw = BTreeMap::new();
                for (k, f) in &p {
                    if let Some(g) = q.get(k) {
                        raw.insert(k.clone(), Formula::and(f.clone(), g.clone()));
                    }
                }
                self.record("diamond-conjunction", before, build(&Family::Diamonds(raw.clone())));
                let mut out = BTreeMap::new();
                for (k, _) in raw {
                    let (fx, fy) = (self.norm(&p[&k])?, self.norm(&q[&k])?);
                    out.insert(k, build(&self.and(fx, fy)?));
                }
                Ok(self.tidy_diamonds(out))
            }
            (Family::Boxes(p), Family::Diamonds(q)) | (Family::Diamonds(q), Family::Boxes(p)) => {
                let mut raw = BTreeMap::new();
                for (k, g) in &q {
                    let f = match p.get(k) {
                        Some(f) => Formula::and(f.clone(), g.clone()),
                        None => g.clone(),
                    };
                    raw.insert(k.clone(), f);
                }
                self.record("diamond-and-box", before, build(&Family::Diamonds(raw)));
                let mut out = BTreeMap::new();
                for (k, g) in &q {
                    let f = match p.get(k) {
                        Some(f) => {
                            let (fx, fy) = (self.norm(f)?, self.norm(g)?);
                            build(&self.and(fx, fy)?)
                        }
                        None => g.clone(),
                    };
                    out.insert(k.clone(), f);
                }
                Ok(self.tidy_diamonds(out))
            }
        }
    }

    fn or(&mut self, a: Family, b: Family) -> Result<Family> {
        let before = Formula::or(build(&a), build(&b));
        match (a, b) {
            (Family::False, x) | (x, Family::False) => {
                self.record("absorb-trivial", before, build(&x));
                Ok(x)
            }
            (Family::True, _) | (_, Family::True) => {
                self.record("absorb-trivial", before, Formula::True);
                Ok(Family::True)
            }
            (Family::Diamonds(p), Family::Diamonds(q)) => {
                let common = p.keys().any(|k| q.contains_key(k));
                let mut raw = p.clone();
                for (k, f) in &q {
                    raw.entry(k.clone())
                        .and_modify(|g| *g = Formula::or(g.clone(), f.clone()))
                        .or_insert_with(|| f.clone());
                }
                if !common {
                    return Ok(self.tidy_diamonds(raw));
                }
                self.record("diamond-merge", before, build(&Family::Diamonds(raw.clone())));
                let mut merged = BTreeMap::new();
                for (k, f) in raw {
                    let g = match (p.get(&k), q.get(&k)) {
                        (Some(x), Some(y)) => {
                            let (fx, fy) = (self.norm(x)?, self.norm(y)?);
                            build(&self.or(fx, fy)?)
                        }
                        _ => f,
                    };
                    merged.insert(k, g);
                }
                Ok(self.tidy_diamonds(merged))
            }
            (Family::Boxes(p), Family::Boxes(q)) => {
                let mut raw = BTreeMap::new();
                for (k, f) in &p {
                    if let Some(g) = q.get(k) {
                        raw.insert(k.clone(), Formula::or(f.clone(), g.clone()));
                    }
                }
                self.record("box-disjunction", before, build(&Family::Boxes(raw.clone())));
                let mut out = BTreeMap::new();
                for (k, _) in raw {
                    let (fx, fy) = (self.norm(&p[&k])?, self.norm(&q[&k])?);
                    out.insert(k, build(&self.or(fx, fy)?));
                }
                Ok(self.tidy_boxes(out))
            }
            (Family::Boxes(p), Family::Diamonds(q)) | (Family::Diamonds(q), Family::Boxes(p)) => {
                let mut raw = BTreeMap::new();
                for (k, f) in &p {
                    let g = match q.get(k) {
                        Some(g) => Formula::or(f.clone(), g.clone()),
                        None => f.clone(),
                    };
                    raw.insert(k.clone(), g);
                }
                self.record("box-disjunction", before, build(&Family::Boxes(raw)));
                let mut out = BTreeMap::new();
                for (k, f) in &p {
                    let g = match q.get(k) {
                        Some(g) => {
                            let (fx, fy) = (self.norm(f)?, self.norm(g)?);
                            build(&self.or(fx, fy)?)
                        }
                        None => f.clone(),
                    };
                    out.insert(k.clone(), g);
                }
                Ok(self.tidy_boxes(out))
            }
        }
    }
}

/// Rewrites a fixpoint-free formula into slim form, returning the rule
/// applications in order. Every step shortens its redex.
pub fn to_slim(f: &Formula, alphabet: &Alphabet) -> Result<(Formula, Vec<RewriteStep>)> {
    f.check_alphabet(alphabet)?;
    let mut n = Normalizer { alphabet, steps: Vec::new() };
    let fam = n.norm(f)?;
    Ok((build(&fam), n.steps))
}

/// Members of a family whose connective is `and` (boxes) or `or`
/// (diamonds); `None` if some leaf is not a modality of that kind.
fn family_members(f: &Formula, boxes: bool, out: &mut Vec<(Action, Formula)>) -> bool {
    match (f, boxes) {
        (Formula::And(l, r), true) | (Formula::Or(l, r), false) => {
            family_members(l, boxes, out) && family_members(r, boxes, out)
        }
        (Formula::Box(a, g), true) | (Formula::Diamond(a, g), false) => {
            if a.is_empty() {
                return false;
            }
            out.extend(a.iter().map(|x| (x.clone(), (**g).clone())));
            true
        }
        _ => false,
    }
}

/// Membership in the slim grammar: `tt`, `ff`, a conjunction of boxes over
/// distinct actions whose bodies are slim and not `tt`, or a disjunction of
/// diamonds over distinct actions whose bodies are slim and not `ff`;
/// a family covering every action cannot have all bodies `ff` (boxes) or
/// all `tt` (diamonds).
pub fn is_slim(f: &Formula, alphabet: &Alphabet) -> bool {
    match f {
        Formula::True | Formula::False => true,
        Formula::And(..) | Formula::Box(..) | Formula::Or(..) | Formula::Diamond(..) => {
            let boxes = matches!(f, Formula::And(..) | Formula::Box(..));
            let mut members = Vec::new();
            if !family_members(f, boxes, &mut members) {
                return false;
            }
            let mut seen = std::collections::BTreeSet::new();
            let (unit, zero) = if boxes { (Formula::True, Formula::False) } else { (Formula::False, Formula::True) };
            for (a, g) in &members {
                if !seen.insert(a.clone()) || *g == unit || !is_slim(g, alphabet) {
                    return false;
                }
            }
            !(members.len() == alphabet.len() && members.iter().all(|(_, g)| *g == zero))
        }
        _ => false,
    }
}

/// A trace on which a monitor is not tight for a formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessFailure {
    pub trace: String,
    pub reason: String,
}

/// Semantic tightness for a fixpoint-free formula: on every finite trace,
/// the monitor rejects exactly when every extension violates the formula,
/// and accepts exactly when every extension satisfies it. Traces longer
/// than the modal depth are determined by their prefixes, so checking up to
/// the modal depth is exhaustive.
pub fn tightness_failure(m: &Monitor, f: &Formula, alphabet: &Alphabet) -> Result<Option<TightnessFailure>> {
    if f.has_fixpoints() {
        return Err(Error::Fragment("tightness is checked for fixpoint-free formulas".into()));
    }
    let depth = f.modal_depth();
    let filler = alphabet.actions()[0].clone();
    let rows = verdict_table(m, alphabet, depth)?;
    for row in rows {
        let rest = depth - row.trace.len();
        let mut sat = false;
        let mut vio = false;
        for w in words(alphabet, rest) {
            let mut u = row.trace.clone();
            u.extend(w);
            let t = Trace { prefix: u, cycle: Some(vec![filler.clone()]) };
            if eval_finfinite(f, &t)? {
                sat = true;
            } else {
                vio = true;
            }
        }
        let shown = Trace::finite(row.trace.clone()).to_string();
        let fail = |reason: &str| Ok(Some(TightnessFailure { trace: shown.clone(), reason: reason.into() }));
        if !sat && !row.rejects {
            return fail("every extension violates but the monitor does not reject");
        }
        if !vio && !row.accepts {
            return fail("every extension satisfies but the monitor does not accept");
        }
        if row.rejects && sat {
            return fail("the monitor rejects a trace with a satisfying extension");
        }
        if row.accepts && vio {
            return fail("the monitor accepts a trace with a violating extension");
        }
    }
    Ok(None)
}

pub fn is_tight(m: &Monitor, f: &Formula, alphabet: &Alphabet) -> Result<bool> {
    Ok(tightness_failure(m, f, alphabet)?.is_none())
}

/// Structural tightness of a deterministic regular monitor: no submonitor
/// is `rec x.v` or a sum `a.v` over every action, for `v` in {yes, no}.
pub fn is_tight_structural(m: &Monitor, alphabet: &Alphabet) -> Result<bool> {
    if !m.is_regular() || !m.is_syntactically_deterministic() {
        return Err(Error::MonitorClass("expected a syntactically deterministic regular monitor".into()));
    }
    for n in m.submonitors() {
        match &n {
            Monitor::Rec(_, b) if matches!(b.as_verdict(), Some(Verdict::Yes | Verdict::No)) => return Ok(false),
            Monitor::Sum(..) | Monitor::Prefix(..) => {
                let parts = n.summands();
                if parts.len() != alphabet.len() {
                    continue;
                }
                let mut verdicts = Vec::new();
                for p in &parts {
                    if let Monitor::Prefix(_, k) = p {
                        verdicts.push(k.as_verdict());
                    }
                }
                let v = verdicts.first().copied().flatten();
                if verdicts.len() == parts.len()
                    && matches!(v, Some(Verdict::Yes | Verdict::No))
                    && verdicts.iter().all(|x| *x == v)
                {
                    return Ok(false);
                }
            }
            _ => {}
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::semantics::{eval_linear, lassos};
    use crate::syntax::{parse_formula, parse_monitor};
    use crate::synthesis::synth_complete;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::parse("a,b").unwrap()
    }

    fn slim(src: &str) -> Formula {
        to_slim(&parse_formula(src, &ab()).unwrap(), &ab()).unwrap().0
    }

    #[test]
    fn examples() {
        let al = ab();
        let f = |s: &str| parse_formula(s, &al).unwrap();
        assert_eq!(slim("tt & [a]ff"), f("[a]ff"));
        assert_eq!(slim("<a>tt & <b>tt"), Formula::False);
        assert_eq!(slim("[a]ff & [b]ff"), Formula::False);
        assert_eq!(slim("<a>tt | <b>tt"), Formula::True);
        assert_eq!(slim("[a]tt"), Formula::True);
        assert!(!is_slim(&f("<a>ff"), &al));
        assert!(is_slim(&f("[a]ff & [b]<a>tt"), &al));
        assert!(to_slim(&f("max X.[a]X"), &al).is_err());
    }

    #[test]
    fn steps_are_recorded() {
        let al = ab();
        let (_, steps) = to_slim(&parse_formula("tt & [a]ff", &al).unwrap(), &al).unwrap();
        assert_eq!(steps.len(), 1);
        let json = serde_json::to_value(&steps[0]).unwrap();
        assert_eq!(json["before"], "tt & [a]ff");
        assert_eq!(json["after"], "[a]ff");
    }

    #[test]
    fn tightness() {
        let al = ab();
        let m = |s: &str| parse_monitor(s, &al).unwrap();
        assert!(!is_tight_structural(&m("a.(a.no + b.no) + b.yes"), &al).unwrap());
        assert!(is_tight_structural(&m("no"), &al).unwrap());
        assert!(is_tight_structural(&m("a.no + b.yes"), &al).unwrap());
        assert!(is_tight_structural(&m("a.no && b.no"), &al).is_err());
        let f = parse_formula("[a]([a]ff & [b]ff)", &al).unwrap();
        let loose = synth_complete(&f, &al).unwrap();
        let fail = tightness_failure(&loose, &f, &al).unwrap().unwrap();
        assert_eq!(fail.trace, "a");
        let g = to_slim(&f, &al).unwrap().0;
        assert!(is_tight(&synth_complete(&g, &al).unwrap(), &f, &al).unwrap());
    }

    proptest! {
        #[test]
        fn slim_forms_are_equivalent_and_stable(idx in 0usize..3000) {
            let al = Alphabet::parse("a,b,c").unwrap();
            let fs = corpus::hml_formulas(&al, 2);
            let f = &fs[idx % fs.len()];
            let (g, steps) = to_slim(f, &al).unwrap();
            prop_assert!(is_slim(&g, &al));
            prop_assert!(g.length() <= f.length());
            prop_assert!(steps.iter().all(|s| s.after.length() < s.before.length()));
            for t in lassos(&al, 3) {
                prop_assert_eq!(eval_linear(f, &t).unwrap(), eval_linear(&g, &t).unwrap(), "{} -> {} on {}", f, g, t);
            }
            let (h, again) = to_slim(&g, &al).unwrap();
            prop_assert_eq!(h, g);
            prop_assert!(again.is_empty());
        }
    }
}
