//! Test corpora: exhaustive small formulas, seeded random formulas,
//! monitors and LTSs.

use crate::semantics::Lts;
use crate::syntax::{ActSet, Action, Alphabet, Formula, Monitor};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Non-empty subsets of the alphabet, smallest first.
pub fn action_sets(alphabet: &Alphabet) -> Vec<ActSet> {
    let acts = alphabet.actions();
    let mut out: Vec<ActSet> = (1u32..1 << acts.len())
        .map(|mask| ActSet((0..acts.len()).filter(|i| mask >> i & 1 == 1).map(|i| acts[i].clone()).collect()))
        .collect();
    out.sort_by_key(|s| s.len());
    out
}

/// Every fixpoint-free formula with at most `ops` operators (modalities
/// over non-empty action sets, conjunctions and disjunctions), with
/// operands of commutative operators taken as unordered pairs.
pub fn hml_formulas(alphabet: &Alphabet, ops: usize) -> Vec<Formula> {
    let sets = action_sets(alphabet);
    let mut levels: Vec<Vec<Formula>> = vec![vec![Formula::True, Formula::False]];
    for k in 1..=ops {
        let mut level = Vec::new();
        for f in &levels[k - 1] {
            for a in &sets {
                level.push(Formula::boxed(a.clone(), f.clone()));
                level.push(Formula::diamond(a.clone(), f.clone()));
            }
        }
        for i in 0..k {
            let j = k - 1 - i;
            if i > j {
                break;
            }
            for (p, f) in levels[i].iter().enumerate() {
                let start = if i == j { p } else { 0 };
                for g in &levels[j][start..] {
                    level.push(Formula::and(f.clone(), g.clone()));
                    level.push(Formula::or(f.clone(), g.clone()));
                }
            }
        }
        levels.push(level);
    }
    levels.concat()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixpoints {
    Greatest,
    Least,
}

struct FormulaGen<'a> {
    alphabet: &'a Alphabet,
    sets: Vec<ActSet>,
    kind: Fixpoints,
    fresh: usize,
}

impl FormulaGen<'_> {
    /// `env` holds bound variables and whether a modality separates them
    /// from the current position.
    fn gen(&mut self, rng: &mut CorpusRng, budget: usize, env: &mut Vec<(String, bool)>) -> Formula {
        let guarded: Vec<&String> = env.iter().filter(|(_, g)| *g).map(|(x, _)| x).collect();
        if budget <= 1 {
            if !guarded.is_empty() && rng.gen_bool(0.6) {
                return Formula::var(guarded.choose(rng).unwrap());
            }
            return if rng.gen_bool(0.5) { Formula::True } else { Formula::False };
        }
        match rng.gen_range(0..10) {
            0 if !guarded.is_empty() => Formula::var(guarded.choose(rng).unwrap()),
            0 | 1 => {
                let x = format!("X{}", self.fresh);
                self.fresh += 1;
                env.push((x.clone(), false));
                let body = self.gen(rng, budget - 1, env);
                env.pop();
                match self.kind {
                    Fixpoints::Greatest => Formula::max(&x, body),
                    Fixpoints::Least => Formula::min(&x, body),
                }
            }
            2..=5 => {
                let a = self.sets[..self.sets.len().min(self.alphabet.len() + 1)].choose(rng).unwrap().clone();
                let mut inner: Vec<(String, bool)> = env.iter().map(|(x, _)| (x.clone(), true)).collect();
                let body = self.gen(rng, budget - 1, &mut inner);
                if rng.gen_bool(0.5) {
                    Formula::boxed(a, body)
                } else {
                    Formula::diamond(a, body)
                }
            }
            n => {
                let left = rng.gen_range(1..budget.max(2));
                let l = self.gen(rng, left, env);
                let r = self.gen(rng, budget.saturating_sub(left).max(1), env);
                if n % 2 == 0 {
                    Formula::and(l, r)
                } else {
                    Formula::or(l, r)
                }
            }
        }
    }
}

/// A closed guarded formula using only fixpoints of the given kind, of
/// length at most `max_len`.
pub fn random_fixpoint_formula(rng: &mut CorpusRng, alphabet: &Alphabet, kind: Fixpoints, max_len: usize) -> Formula {
    let mut gen = FormulaGen { alphabet, sets: action_sets(alphabet), kind, fresh: 0 };
    loop {
        gen.fresh = 0;
        let budget = rng.gen_range(2..=max_len.max(2) / 2 + 1);
        let f = gen.gen(rng, budget, &mut Vec::new());
        if f.length() <= max_len && f.is_closed() && f.is_guarded() {
            return f;
        }
    }
}

/// `n` random formulas, alternating between greatest- and least-fixpoint
/// fragments.
pub fn random_ltmu_corpus(seed: u64, alphabet: &Alphabet, n: usize, max_len: usize) -> Vec<(Fixpoints, Formula)> {
    let mut r = rng(seed);
    (0..n)
        .map(|i| {
            let kind = if i % 2 == 0 { Fixpoints::Greatest } else { Fixpoints::Least };
            (kind, random_fixpoint_formula(&mut r, alphabet, kind, max_len))
        })
        .collect()
}

struct MonitorGen<'a> {
    acts: &'a [Action],
    reactive: bool,
    fresh: usize,
}

impl MonitorGen<'_> {
    fn verdict(&self, rng: &mut CorpusRng) -> Monitor {
        match rng.gen_range(0..3) {
            0 => Monitor::yes(),
            1 => Monitor::no(),
            _ => Monitor::end(),
        }
    }

    fn leaf(&self, rng: &mut CorpusRng, guarded: &[String]) -> Monitor {
        if !guarded.is_empty() && rng.gen_bool(0.5) {
            Monitor::var(guarded.choose(rng).unwrap())
        } else {
            self.verdict(rng)
        }
    }

    fn choice(&mut self, rng: &mut CorpusRng, budget: usize, env: &[(String, bool)]) -> Monitor {
        let inner: Vec<(String, bool)> = env.iter().map(|(x, _)| (x.clone(), true)).collect();
        let picked: Vec<&Action> = if self.reactive {
            self.acts.iter().collect()
        } else {
            let k = rng.gen_range(1..=self.acts.len());
            self.acts.choose_multiple(rng, k).collect()
        };
        let share = (budget.saturating_sub(1) / picked.len()).max(1);
        let items: Vec<Monitor> = picked.into_iter().map(|a| Monitor::prefix(a.clone(), self.gen(rng, share, &inner))).collect();
        Monitor::sum_of(items).unwrap()
    }

    fn gen(&mut self, rng: &mut CorpusRng, budget: usize, env: &[(String, bool)]) -> Monitor {
        let guarded: Vec<String> = env.iter().filter(|(_, g)| *g).map(|(x, _)| x.clone()).collect();
        if budget <= 1 {
            return self.leaf(rng, &guarded);
        }
        match rng.gen_range(0..10) {
            0 => self.leaf(rng, &guarded),
            1 => {
                let x = format!("x{}", self.fresh);
                self.fresh += 1;
                let mut inner = env.to_vec();
                inner.push((x.clone(), false));
                let body = self.choice(rng, budget - 1, &inner);
                Monitor::rec(&x, body)
            }
            2..=5 => self.choice(rng, budget, env),
            n if n >= 6 && !env.is_empty() => self.choice(rng, budget, env),
            6 if !self.reactive => {
                let l = self.gen(rng, budget / 2, env);
                let r = self.gen(rng, budget / 2, env);
                Monitor::sum(l, r)
            }
            n => {
                let l = self.gen(rng, budget / 2, env);
                let r = self.gen(rng, budget / 2, env);
                if n % 2 == 0 {
                    Monitor::conj(l, r)
                } else {
                    Monitor::disj(l, r)
                }
            }
        }
    }
}

/// A closed monitor built from verdicts, total choices over the alphabet,
/// parallel compositions and guarded recursion; reactive by construction.
/// Parallel composition never occurs under a binder, which keeps the
/// reachable terms finite and small.
pub fn random_reactive_monitor(rng: &mut CorpusRng, alphabet: &Alphabet, budget: usize) -> Monitor {
    let mut g = MonitorGen { acts: alphabet.actions(), reactive: true, fresh: 0 };
    g.gen(rng, budget, &[]).with_unique_binders()
}

/// A closed guarded monitor with arbitrary choices; usually not reactive.
pub fn random_monitor(rng: &mut CorpusRng, alphabet: &Alphabet, budget: usize) -> Monitor {
    let mut g = MonitorGen { acts: alphabet.actions(), reactive: false, fresh: 0 };
    g.gen(rng, budget, &[]).with_unique_binders()
}

pub fn random_word(rng: &mut CorpusRng, alphabet: &Alphabet, max_len: usize) -> Vec<Action> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| alphabet.actions().choose(rng).unwrap().clone()).collect()
}

/// Edge list of an LTS on `n` states given by a bitmask over all
/// candidate edges (`tau` first when included, then actions in order).
pub fn edges_of_mask(alphabet: &Alphabet, n: usize, with_tau: bool, mask: u64) -> Vec<(usize, Option<Action>, usize)> {
    let mut labels: Vec<Option<Action>> = Vec::new();
    if with_tau {
        labels.push(None);
    }
    labels.extend(alphabet.actions().iter().cloned().map(Some));
    let mut out = Vec::new();
    let mut bit = 0;
    for s in 0..n {
        for l in &labels {
            for t in 0..n {
                if mask >> bit & 1 == 1 {
                    out.push((s, l.clone(), t));
                }
                bit += 1;
            }
        }
    }
    out
}

/// Number of candidate edges for `edges_of_mask`.
pub fn edge_slots(alphabet: &Alphabet, n: usize, with_tau: bool) -> usize {
    n * n * (alphabet.len() + with_tau as usize)
}

pub fn random_lts(rng: &mut CorpusRng, alphabet: &Alphabet, n: usize, density: f64) -> Lts {
    let slots = edge_slots(alphabet, n, true);
    let mask = (0..slots).fold(0u64, |m, i| m | (rng.gen_bool(density) as u64) << i);
    Lts::from_edges(alphabet.clone(), n, 0, edges_of_mask(alphabet, n, true, mask)).expect("actions come from the alphabet")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::is_syntactically_reactive;

    fn ab() -> Alphabet {
        Alphabet::parse("a,b").unwrap()
    }

    #[test]
    fn hml_counts() {
        let al = ab();
        assert_eq!(hml_formulas(&al, 0).len(), 2);
        assert_eq!(hml_formulas(&al, 1).len(), 20);
        let all = hml_formulas(&al, 3);
        assert_eq!(all.len(), 2342);
        assert!(all.iter().all(|f| !f.has_fixpoints()));
        let distinct: std::collections::BTreeSet<String> = all.iter().map(|f| f.to_string()).collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn random_formulas_are_well_formed() {
        let al = ab();
        for (kind, f) in random_ltmu_corpus(7, &al, 200, 20) {
            assert!(f.length() <= 20 && f.is_closed() && f.is_guarded(), "{f}");
            let s = f.to_string();
            match kind {
                Fixpoints::Greatest => assert!(!s.contains("min")),
                Fixpoints::Least => assert!(!s.contains("max")),
            }
        }
    }

    #[test]
    fn corpus_is_seed_reproducible() {
        let al = ab();
        assert_eq!(random_ltmu_corpus(3, &al, 20, 20), random_ltmu_corpus(3, &al, 20, 20));
        let (mut r1, mut r2) = (rng(9), rng(9));
        assert_eq!(random_monitor(&mut r1, &al, 12), random_monitor(&mut r2, &al, 12));
    }

    #[test]
    fn reactive_generator() {
        let al = ab();
        let mut r = rng(1);
        for _ in 0..300 {
            let m = random_reactive_monitor(&mut r, &al, 10);
            assert!(m.is_closed() && m.is_guarded(), "{m}");
            assert!(is_syntactically_reactive(&m, &al), "{m}");
        }
    }

    #[test]
    fn mask_edges() {
        let al = ab();
        assert_eq!(edge_slots(&al, 3, false), 18);
        let e = edges_of_mask(&al, 2, true, 0b1);
        assert_eq!(e, vec![(0, None, 0)]);
        let e = edges_of_mask(&al, 2, false, 1 << 7);
        assert_eq!(e, vec![(1, Some(Action::new("b")), 1)]);
    }
}
