use super::Action;
use std::fmt;

/// A finite trace (`cycle` is `None`) or a lasso `prefix . cycle^omega`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Trace {
    pub prefix: Vec<Action>,
    pub cycle: Option<Vec<Action>>,
}

impl Trace {
    pub fn finite(prefix: Vec<Action>) -> Self {
        Trace { prefix, cycle: None }
    }

    /// A lasso; an empty cycle is rejected by returning `None`.
    pub fn lasso(prefix: Vec<Action>, cycle: Vec<Action>) -> Option<Self> {
        if cycle.is_empty() {
            None
        } else {
            Some(Trace { prefix, cycle: Some(cycle) })
        }
    }

    pub fn from_names(prefix: &[&str], cycle: Option<&[&str]>) -> Self {
        let conv = |v: &[&str]| v.iter().map(|n| Action::new(n)).collect::<Vec<_>>();
        Trace { prefix: conv(prefix), cycle: cycle.map(conv) }
    }

    pub fn is_finite(&self) -> bool {
        self.cycle.is_none()
    }

    /// `|prefix| + |cycle|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.cycle.as_ref().map_or(0, |c| c.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The action at position `i` of the (possibly infinite) word.
    pub fn at(&self, i: usize) -> Option<&Action> {
        if i < self.prefix.len() {
            return self.prefix.get(i);
        }
        let c = self.cycle.as_ref()?;
        c.get((i - self.prefix.len()) % c.len())
    }

    /// The first `n` actions (or all of a finite trace if shorter).
    pub fn take(&self, n: usize) -> Vec<Action> {
        (0..n).map_while(|i| self.at(i).cloned()).collect()
    }

    /// The shortest representation of the same word: primitive cycle and
    /// the prefix rolled into the cycle as far as possible.
    pub fn canonical(&self) -> Trace {
        let Some(cycle) = &self.cycle else {
            return self.clone();
        };
        let n = cycle.len();
        let mut period = n;
        for p in 1..n {
            if n % p == 0 && (0..n).all(|i| cycle[i] == cycle[i % p]) {
                period = p;
                break;
            }
        }
        let mut cyc: Vec<Action> = cycle[..period].to_vec();
        let mut pre = self.prefix.clone();
        while let Some(last) = pre.last() {
            if *last == cyc[cyc.len() - 1] {
                pre.pop();
                cyc.rotate_right(1);
            } else {
                break;
            }
        }
        Trace { prefix: pre, cycle: Some(cyc) }
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Action]| v.iter().map(|a| a.name()).collect::<Vec<_>>().join(".");
        f.write_str(&join(&self.prefix))?;
        if let Some(c) = &self.cycle {
            write!(f, "({})", join(c))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: &[&str], c: Option<&[&str]>) -> Trace {
        Trace::from_names(p, c)
    }

    #[test]
    fn printing() {
        assert_eq!(t(&["a", "b"], Some(&["a", "b"])).to_string(), "a.b(a.b)");
        assert_eq!(t(&[], Some(&["a"])).to_string(), "(a)");
        assert_eq!(t(&[], None).to_string(), "");
    }

    #[test]
    fn canonical_form() {
        assert_eq!(t(&["a", "b"], Some(&["a", "b", "a", "b"])).canonical(), t(&[], Some(&["a", "b"])));
        assert_eq!(t(&["b"], Some(&["a"])).canonical(), t(&["b"], Some(&["a"])));
        assert_eq!(t(&["a"], Some(&["a"])).canonical(), t(&[], Some(&["a"])));
    }

    #[test]
    fn positions() {
        let x = t(&["a"], Some(&["b", "a"]));
        let names: Vec<&str> = (0..6).map(|i| x.at(i).unwrap().name()).collect();
        assert_eq!(names, ["a", "b", "a", "b", "a", "b"]);
        assert_eq!(x.len(), 3);
        assert!(!x.is_finite());
        assert!(Trace::lasso(vec![], vec![]).is_none());
    }
}
