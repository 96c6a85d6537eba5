use super::Formula;
use serde::Serialize;

/// Membership of a formula in the named fragments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Fragments {
    /// Fixpoint-free.
    pub hml: bool,
    /// tt, ff, boxes, diamonds, and, or, max (also called maxHML).
    pub ltmu_s: bool,
    /// tt, ff, boxes, diamonds, and, or, min.
    pub ltmu_c: bool,
    /// tt, ff, boxes, and, or, max.
    pub ftmu_s: bool,
    /// tt, ff, diamonds, and, or, min.
    pub ftmu_c: bool,
    /// tt, ff, boxes, and, max.
    pub shml: bool,
    /// tt, ff, diamonds, or, min.
    pub chml: bool,
    pub closed: bool,
    pub guarded: bool,
}

#[derive(Default)]
struct Uses {
    boxes: bool,
    diamonds: bool,
    and: bool,
    or: bool,
    max: bool,
    min: bool,
}

fn scan(f: &Formula, u: &mut Uses) {
    match f {
        Formula::True | Formula::False | Formula::Var(_) => {}
        Formula::And(l, r) => {
            u.and = true;
            scan(l, u);
            scan(r, u);
        }
        Formula::Or(l, r) => {
            u.or = true;
            scan(l, u);
            scan(r, u);
        }
        Formula::Box(_, g) => {
            u.boxes = true;
            scan(g, u);
        }
        Formula::Diamond(_, g) => {
            u.diamonds = true;
            scan(g, u);
        }
        Formula::Max(_, g) => {
            u.max = true;
            scan(g, u);
        }
        Formula::Min(_, g) => {
            u.min = true;
            scan(g, u);
        }
    }
}

pub fn classify(f: &Formula) -> Fragments {
    let mut u = Uses::default();
    scan(f, &mut u);
    let hml = !f.has_fixpoints();
    Fragments {
        hml,
        ltmu_s: !u.min,
        ltmu_c: !u.max,
        ftmu_s: !u.min && !u.diamonds,
        ftmu_c: !u.max && !u.boxes,
        shml: !u.min && !u.diamonds && !u.or,
        chml: !u.max && !u.boxes && !u.and,
        closed: f.is_closed(),
        guarded: f.is_guarded(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, Fixpoints};
    use crate::syntax::{parse_formula, Alphabet};
    use proptest::prelude::*;

    fn c(src: &str) -> Fragments {
        classify(&parse_formula(src, &Alphabet::parse("a,b").unwrap()).unwrap())
    }

    #[test]
    fn examples() {
        let f = c("[a][a]ff");
        assert!(f.hml && f.ltmu_s && f.ftmu_s && f.shml && !f.chml);
        let f = c("max X.([b]X & [a]X)");
        assert!(!f.hml && f.ltmu_s && f.shml);
        let f = c("min X.(<a>tt | <b>X)");
        assert!(f.ltmu_c && f.ftmu_c && f.chml && !f.ltmu_s);
    }

    fn lattice(f: &Fragments) -> bool {
        (!f.shml || (f.ftmu_s && f.ltmu_s)) && (!f.ftmu_s || f.ltmu_s) && (!f.chml || (f.ftmu_c && f.ltmu_c)) && (!f.ftmu_c || f.ltmu_c)
    }

    #[test]
    fn lattice_on_small_formulas() {
        for f in corpus::hml_formulas(&Alphabet::parse("a,b").unwrap(), 2) {
            let fr = classify(&f);
            assert!(fr.hml && lattice(&fr), "{f}");
        }
    }

    proptest! {
        #[test]
        fn lattice_on_random_formulas(seed in any::<u64>(), least in any::<bool>()) {
            let kind = if least { Fixpoints::Least } else { Fixpoints::Greatest };
            let g = corpus::random_fixpoint_formula(&mut corpus::rng(seed), &Alphabet::parse("a,b").unwrap(), kind, 20);
            let fr = classify(&g);
            prop_assert!(lattice(&fr));
            prop_assert!(fr.closed && fr.guarded);
            prop_assert_eq!(if least { fr.ltmu_c } else { fr.ltmu_s }, true);
        }
    }
}
