use crate::syntax::{ActSet, Formula, Var};

/// A finite set of points over which formulas denote subsets.
pub(crate) trait Domain {
    fn size(&self) -> usize;
    fn diamond(&self, acts: &ActSet, target: &[bool]) -> Vec<bool>;
    fn boxed(&self, acts: &ActSet, target: &[bool]) -> Vec<bool>;
}

/// Knaster-Tarski evaluation by iteration; records the longest iteration.
pub(crate) struct Evaluator<'d, D: Domain> {
    pub domain: &'d D,
    env: Vec<(Var, Vec<bool>)>,
    pub max_rounds: usize,
}

impl<'d, D: Domain> Evaluator<'d, D> {
    pub fn new(domain: &'d D) -> Self {
        Evaluator { domain, env: Vec::new(), max_rounds: 0 }
    }

    pub fn eval(&mut self, f: &Formula) -> Vec<bool> {
        let n = self.domain.size();
        match f {
            Formula::True => vec![true; n],
            Formula::False => vec![false; n],
            Formula::Var(x) => self
                .env
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, s)| s.clone())
                .unwrap_or_else(|| vec![false; n]),
            Formula::And(l, r) => {
                let a = self.eval(l);
                let b = self.eval(r);
                a.iter().zip(&b).map(|(x, y)| *x && *y).collect()
            }
            Formula::Or(l, r) => {
                let a = self.eval(l);
                let b = self.eval(r);
                a.iter().zip(&b).map(|(x, y)| *x || *y).collect()
            }
            Formula::Box(acts, g) => {
                let t = self.eval(g);
                self.domain.boxed(acts, &t)
            }
            Formula::Diamond(acts, g) => {
                let t = self.eval(g);
                self.domain.diamond(acts, &t)
            }
            Formula::Max(x, g) => self.fixpoint(x, g, true),
            Formula::Min(x, g) => self.fixpoint(x, g, false),
        }
    }

    fn fixpoint(&mut self, x: &Var, body: &Formula, greatest: bool) -> Vec<bool> {
        let n = self.domain.size();
        let mut cur = vec![greatest; n];
        let mut rounds = 0;
        loop {
            rounds += 1;
            self.env.push((x.clone(), cur.clone()));
            let next = self.eval(body);
            self.env.pop();
            if next == cur {
                break;
            }
            cur = next;
        }
        self.max_rounds = self.max_rounds.max(rounds);
        cur
    }
}
