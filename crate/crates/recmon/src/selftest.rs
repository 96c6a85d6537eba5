//! Property sweeps over a generated corpus, checked against the
//! semantic evaluators.

use crate::corpus::{self, Fixpoints};
use crate::engine::{instrument_exhaustive, instrumented_after, is_reactive, verdict_table, verdict_table_with, weak_after, Stepper, VerdictRow};
use crate::error::Result;
use crate::normalize::{is_slim, tightness_failure, to_slim};
use crate::semantics::{
    eval_branching, eval_finfinite, eval_linear, finite_traces, lassos, satisfying_states, trace_process, words, Lts,
};
use crate::synthesis::{extract_complete_formula, synth_complete, synth_partial, Mode};
use crate::syntax::{classify, parse_formula, parse_monitor, parse_process, parse_trace, Action, Alphabet, Formula, Label, Monitor, Trace, Verdict};
use crate::transform::{determinize, monitor_dfa, monitor_to_alternating, verdict_difference, EquivMode, MonitorAutomata, Polarity};
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct SelftestConfig {
    pub alphabet: Alphabet,
    /// Operator budget of the exhaustive fixpoint-free corpus.
    pub formula_ops: usize,
    pub random_formulas: usize,
    pub max_formula_len: usize,
    pub lasso_bound: usize,
    pub finite_bound: usize,
    pub lts_states: usize,
    pub lts_trace_bound: usize,
    pub lemma_instances: usize,
    pub random_monitors: usize,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            alphabet: Alphabet::parse("a,b").expect("valid alphabet"),
            formula_ops: 3,
            random_formulas: 500,
            max_formula_len: 20,
            lasso_bound: 5,
            finite_bound: 6,
            lts_states: 3,
            lts_trace_bound: 6,
            lemma_instances: 10_000,
            random_monitors: 300,
            seed: 2024,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    /// The first few failures.
    pub examples: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "[{status}] criterion {}: {} ({} checked, {} failures, {} ms)",
            self.id, self.name, self.checked, self.failures, self.elapsed_ms
        )
    }
}

const MAX_EXAMPLES: usize = 5;

struct Tally {
    checked: usize,
    failures: usize,
    examples: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: 0, examples: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(what);
        }
    }

    fn ok_or_fail<T>(&mut self, r: Result<T>, ctx: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.fail(format!("{}: {e}", ctx()));
                None
            }
        }
    }

    fn report(self, id: u8, name: &'static str, start: Instant) -> CriterionReport {
        CriterionReport {
            id,
            name,
            checked: self.checked,
            failures: self.failures,
            examples: self.examples,
            notes: self.notes,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

/// The formulas and traces shared by the sweeps.
pub struct Corpus {
    pub config: SelftestConfig,
    pub hml: Vec<Formula>,
    pub random: Vec<(Fixpoints, Formula)>,
    pub lassos: Vec<Trace>,
    pub finite: Vec<Trace>,
}

impl Corpus {
    pub fn new(config: SelftestConfig) -> Corpus {
        let al = &config.alphabet;
        Corpus {
            hml: corpus::hml_formulas(al, config.formula_ops),
            random: corpus::random_ltmu_corpus(config.seed, al, config.random_formulas, config.max_formula_len),
            lassos: lassos(al, config.lasso_bound),
            finite: finite_traces(al, config.finite_bound),
            config,
        }
    }

    fn all_formulas(&self) -> impl Iterator<Item = &Formula> {
        self.hml.iter().chain(self.random.iter().map(|(_, f)| f))
    }
}

pub fn criterion_complete(c: &Corpus) -> CriterionReport {
    let start = Instant::now();
    let al = &c.config.alphabet;
    let mut t = Tally::new();
    for f in &c.hml {
        let Some(m) = t.ok_or_fail(synth_complete(f, al), || format!("synth {f}")) else { continue };
        let Some(aut) = t.ok_or_fail(MonitorAutomata::new(&m, al), || format!("automata {m}")) else { continue };
        for tr in &c.lassos {
            let expected = eval_linear(f, tr).map(|b| Some(if b { Verdict::Yes } else { Verdict::No }));
            let got = aut.lasso_verdict(tr);
            t.check(matches!((&got, &expected), (Ok(x), Ok(y)) if x == y), || {
                format!("{f} on {tr}: monitor {got:?}, semantics {expected:?}")
            });
        }
    }
    t.report(1, "complete monitoring of fixpoint-free formulas", start)
}

pub fn criterion_partial(c: &Corpus) -> CriterionReport {
    let start = Instant::now();
    let al = &c.config.alphabet;
    let mut t = Tally::new();
    for (kind, f) in &c.random {
        let mode = match kind {
            Fixpoints::Greatest => Mode::Violation,
            Fixpoints::Least => Mode::Satisfaction,
        };
        let Some(m) = t.ok_or_fail(synth_partial(f, al, mode), || format!("synth {f}")) else { continue };
        let Some(aut) = t.ok_or_fail(MonitorAutomata::new(&m, al), || format!("automata {m}")) else { continue };
        for tr in &c.lassos {
            let Some(sat) = t.ok_or_fail(eval_linear(f, tr), || format!("eval {f}")) else { continue };
            let Some(v) = t.ok_or_fail(aut.lasso_verdict(tr), || format!("verdict {m} on {tr}")) else { continue };
            let sound = match v {
                Some(Verdict::Yes) => sat,
                Some(Verdict::No) => !sat,
                _ => true,
            };
            let complete = match mode {
                Mode::Violation => sat || v == Some(Verdict::No),
                Mode::Satisfaction => !sat || v == Some(Verdict::Yes),
            };
            t.check(sound && complete, || format!("{f} ({mode:?}) on {tr}: verdict {v:?}, holds {sat}"));
        }
    }
    t.report(2, "partial monitoring of greatest/least fixpoint fragments", start)
}

/// Reactive parallel monitors of the corpus: synthesised ones and seeded
/// random ones.
pub fn parallel_monitors(c: &Corpus) -> Vec<Monitor> {
    let al = &c.config.alphabet;
    let mut out: Vec<Monitor> = c.hml.iter().filter_map(|f| synth_complete(f, al).ok()).collect();
    for (kind, f) in &c.random {
        let mode = if *kind == Fixpoints::Greatest { Mode::Violation } else { Mode::Satisfaction };
        out.extend(synth_partial(f, al, mode).ok());
    }
    let mut rng = corpus::rng(c.config.seed ^ 0x5eed);
    for _ in 0..c.config.random_monitors {
        out.push(corpus::random_reactive_monitor(&mut rng, al, 10));
    }
    out
}

/// Exploration budget for tabulating a monitor through its transitions.
const OPERATIONAL_CAP: usize = 5_000;

/// Verdicts computed structurally from the combinator lemmas: parallel
/// composition combines component verdicts, sums take either side and
/// recursion unfolds. Used when the transition system of a monitor is too
/// large to explore.
pub fn compositional_table(m: &Monitor, alphabet: &Alphabet, max_len: usize) -> Vec<VerdictRow> {
    let mut memo = HashMap::new();
    let mut rows: Vec<VerdictRow> = (0..=max_len)
        .flat_map(|n| words(alphabet, n))
        .map(|w| {
            let (accepts, rejects) = compositional(m, &w, &mut memo);
            VerdictRow { trace: w, accepts, rejects }
        })
        .collect();
    rows.sort_by(|x, y| (x.trace.len(), &x.trace).cmp(&(y.trace.len(), &y.trace)));
    rows
}

fn compositional(m: &Monitor, s: &[Action], memo: &mut HashMap<(Monitor, Vec<Action>), (bool, bool)>) -> (bool, bool) {
    if let Some(v) = m.as_verdict() {
        return (v == Verdict::Yes, v == Verdict::No);
    }
    let key = (m.clone(), s.to_vec());
    if let Some(r) = memo.get(&key) {
        return *r;
    }
    let r = match m {
        Monitor::Prefix(a, k) => match s.split_first() {
            Some((b, rest)) if a == b => compositional(k, rest, memo),
            _ => (false, false),
        },
        Monitor::Sum(l, r) => {
            let side = |x: &Monitor, memo: &mut HashMap<_, _>| {
                if s.is_empty() && x.as_verdict().is_some() {
                    (false, false)
                } else {
                    compositional(x, s, memo)
                }
            };
            let (p, q) = (side(l, memo), side(r, memo));
            (p.0 || q.0, p.1 || q.1)
        }
        Monitor::Conj(l, r) => {
            let (p, q) = (compositional(l, s, memo), compositional(r, s, memo));
            (p.0 && q.0, p.1 || q.1)
        }
        Monitor::Disj(l, r) => {
            let (p, q) = (compositional(l, s, memo), compositional(r, s, memo));
            (p.0 || q.0, p.1 && q.1)
        }
        Monitor::Rec(x, body) => compositional(&body.subst(x, m), s, memo),
        Monitor::Var(_) | Monitor::Verdict(_) => (false, false),
    };
    memo.insert(key, r);
    r
}

pub fn criterion_transform(c: &Corpus) -> CriterionReport {
    let start = Instant::now();
    let al = &c.config.alphabet;
    let mut t = Tally::new();
    let mut inconsistent = 0;
    let mut compositional = 0;
    let mut seen = BTreeSet::new();
    for m in parallel_monitors(c) {
        if !seen.insert(m.clone()) {
            continue;
        }
        let Some(reactive) = t.ok_or_fail(is_reactive(&m, al), || format!("reactivity {m}")) else { continue };
        if !reactive {
            continue;
        }
        let Some(aut) = t.ok_or_fail(MonitorAutomata::new(&m, al), || format!("automata {m}")) else { continue };
        if aut.inconsistency_witness().is_some() {
            inconsistent += 1;
            continue;
        }
        let bound = |n: usize| n as f64 <= 2f64.powi(m.length().min(1000) as i32);
        t.check(bound(aut.accept_sizes.nfa) && bound(aut.reject_sizes.nfa), || {
            format!("{m}: nfa sizes {} / {} exceed 2^{}", aut.accept_sizes.nfa, aut.reject_sizes.nfa, m.length())
        });
        let Some(d) = t.ok_or_fail(determinize(&m, al), || format!("determinize {m}")) else { continue };
        t.check(d.is_regular() && d.is_syntactically_deterministic(), || format!("{m} -> {d}: not deterministic regular"));
        let exact = verdict_difference(&m, &d, al, EquivMode::Exact);
        t.check(matches!(exact, Ok(None)), || format!("{m} -> {d}: exact check {exact:?}"));
        let k = c.config.finite_bound;
        let original = match verdict_table_with(&Stepper::new(), &m, al, k, OPERATIONAL_CAP) {
            Err(e) if e.is_cap() => {
                compositional += 1;
                Ok(compositional_table(&m, al, k))
            }
            r => r,
        };
        let bounded = original.and_then(|x| Ok((x, verdict_table(&d, al, k)?)));
        match bounded {
            Ok((x, y)) => t.check(x == y, || format!("{m} -> {d}: differ on a short trace")),
            Err(e) => t.fail(format!("{m}: verdict table: {e}")),
        }
    }
    t.notes.push(format!("{inconsistent} inconsistent random monitors skipped"));
    t.notes.push(format!("{compositional} monitors tabulated compositionally"));
    t.report(3, "parallel to deterministic regular monitors", start)
}

fn named(t: &mut Tally, name: &str, ok: Result<bool>) {
    match ok {
        Ok(b) => t.check(b, || name.to_string()),
        Err(e) => {
            t.checked += 1;
            t.fail(format!("{name}: {e}"));
        }
    }
}

fn word(al: &Alphabet, s: &str) -> Vec<Action> {
    s.chars().map(|c| al.get(&c.to_string()).expect("action in alphabet").clone()).collect()
}

/// Worked examples with known outcomes.
pub fn criterion_regressions() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let ab = Alphabet::parse("a,b").unwrap();
    let abc = Alphabet::parse("a,b,c").unwrap();

    named(&mut t, "instrumentation reaches yes via ab", (|| {
        let m = parse_monitor("rec x.(a.x+b.yes)", &ab)?;
        let lts = Lts::from_process(&parse_process("a.rec x.b.x", &ab)?, &ab)?;
        Ok(instrument_exhaustive(&m, &lts, 2)?.contains(&(word(&ab, "ab"), Verdict::Yes)))
    })());
    named(&mut t, "instrumentation terminates with end via ab", (|| {
        let m = parse_monitor("rec x.(a.a.x+b.yes)", &ab)?;
        let lts = Lts::from_process(&parse_process("a.rec x.b.x", &ab)?, &ab)?;
        let got = instrument_exhaustive(&m, &lts, 2)?;
        Ok(got.contains(&(word(&ab, "ab"), Verdict::End)) && !got.iter().any(|(_, v)| *v == Verdict::Yes))
    })());

    named(&mut t, "[a][a]ff: trace satisfies, process does not", (|| {
        let f = parse_formula("[a][a]ff", &abc)?;
        let tr = parse_trace("(a.b)", &abc)?;
        let lts = Lts::from_process(&parse_process("rec x.(a.b.x + a.a.x + a.nil)", &abc)?, &abc)?;
        Ok(eval_linear(&f, &tr)? && !eval_branching(&f, &lts, lts.initial())?)
    })());
    named(&mut t, "[a](<a>tt | <b,c>tt) is a linear tautology", (|| {
        let f = parse_formula("[a](<a>tt | <b,c>tt)", &abc)?;
        for tr in lassos(&abc, 4) {
            if !eval_linear(&f, &tr)? {
                return Ok(false);
            }
        }
        Ok(true)
    })());
    named(&mut t, "[a](<a>tt | <b,c>tt) fails on the process", (|| {
        let f = parse_formula("[a](<a>tt | <b,c>tt)", &abc)?;
        let lts = Lts::from_process(&parse_process("rec x.(a.b.x + a.a.x + a.nil)", &abc)?, &abc)?;
        Ok(!eval_branching(&f, &lts, lts.initial())?)
    })());

    for (src, expected) in [
        ("a.yes+b.no", true),
        ("rec x.(a.x+b.yes)", true),
        ("a.yes&&b.no", false),
        ("(a.yes+b.end)&&(b.yes+a.end)", true),
        ("a.a.yes || a.b.yes", false),
    ] {
        named(&mut t, &format!("reactivity of {src} is {expected}"), (|| Ok(is_reactive(&parse_monitor(src, &ab)?, &ab)? == expected))());
    }
    named(&mut t, "a.a.yes || a.b.yes rejected by the automaton construction", (|| {
        let m = parse_monitor("a.a.yes || a.b.yes", &ab)?;
        Ok(monitor_to_alternating(&m, &ab, Polarity::Accept).is_err())
    })());
    named(&mut t, "(a.yes||b.yes)+(a.end+b.end) accepts nothing", (|| {
        let m = parse_monitor("(a.yes||b.yes)+(a.end+b.end)", &ab)?;
        Ok(monitor_dfa(&m, &ab, Polarity::Accept)?.0.is_empty())
    })());
    named(&mut t, "a.b.yes + a.a.no determinizes to a.(a.no + b.yes)", (|| {
        let m = parse_monitor("a.b.yes + a.a.no", &ab)?;
        Ok(determinize(&m, &ab)? == parse_monitor("a.(a.no + b.yes)", &ab)?)
    })());
    t.report(4, "worked examples", start)
}

pub fn criterion_slim(c: &Corpus) -> CriterionReport {
    let start = Instant::now();
    let al = &c.config.alphabet;
    let mut t = Tally::new();
    for f in &c.hml {
        let Some((g, steps)) = t.ok_or_fail(to_slim(f, al), || format!("to_slim {f}")) else { continue };
        t.check(steps.len() <= f.length(), || format!("{f}: {} steps > length {}", steps.len(), f.length()));
        for s in &steps {
            t.check(s.after.length() < s.before.length(), || format!("{f}: {} does not shrink {} -> {}", s.rule, s.before, s.after));
        }
        t.check(is_slim(&g, al), || format!("{f} -> {g}: not slim"));
        let mut all = true;
        let mut none = true;
        for tr in &c.lassos {
            let (x, y) = (eval_linear(f, tr), eval_linear(&g, tr));
            t.check(matches!((&x, &y), (Ok(p), Ok(q)) if p == q), || format!("{f} -> {g} differ on {tr}"));
            let sat = matches!(y, Ok(true));
            all &= sat;
            none &= !sat;
        }
        t.check(!all || g == Formula::True, || format!("slim {g} holds everywhere but is not tt"));
        t.check(!none || g == Formula::False, || format!("slim {g} holds nowhere but is not ff"));
        let Some(m) = t.ok_or_fail(synth_complete(&g, al), || format!("synth {g}")) else { continue };
        let r = tightness_failure(&m, f, al);
        t.check(matches!(r, Ok(None)), || format!("{f} -> {g} -> {m}: {r:?}"));
    }
    t.report(5, "slim normal forms and tightness", start)
}

/// Bit index of every word up to `bound`, in the order of `words`.
fn word_index(al: &Alphabet, bound: usize) -> HashMap<Vec<Action>, usize> {
    (0..=bound).flat_map(|n| words(al, n)).enumerate().map(|(i, w)| (w, i)).collect()
}

/// Finite weak traces up to `bound` produced from `s`, as a bitset.
fn produced_bits(lts: &Lts, s: usize, bound: usize, index: &HashMap<Vec<Action>, usize>) -> Vec<u64> {
    let mut bits = vec![0u64; index.len().div_ceil(64)];
    let al = lts.alphabet();
    let mut stack = vec![(Vec::<Action>::new(), lts.tau_closure(s).to_vec())];
    while let Some((w, set)) = stack.pop() {
        let i = index[&w];
        bits[i / 64] |= 1 << (i % 64);
        if w.len() == bound {
            continue;
        }
        for (ai, a) in al.actions().iter().enumerate() {
            let next: BTreeSet<usize> = set.iter().flat_map(|&q| lts.weak_succ(q, ai).iter().copied()).collect();
            if !next.is_empty() {
                let mut w2 = w.clone();
                w2.push(a.clone());
                stack.push((w2, next.into_iter().collect()));
            }
        }
    }
    bits
}

pub fn criterion_cross(c: &Corpus) -> CriterionReport {
    let start = Instant::now();
    let al = &c.config.alphabet;
    let mut t = Tally::new();

    for f in c.all_formulas() {
        for tr in &c.lassos {
            let (x, y) = (eval_finfinite(f, tr), eval_linear(f, tr));
            t.check(matches!((&x, &y), (Ok(p), Ok(q)) if p == q), || format!("{f} on {tr}: finfinite {x:?}, linear {y:?}"));
        }
    }

    let short: Vec<&Trace> = c.finite.iter().filter(|x| x.len() <= c.config.lasso_bound).chain(&c.lassos).collect();
    let processes: Vec<Lts> = short.iter().map(|x| trace_process(x, al).expect("trace over the alphabet")).collect();
    for f in c.all_formulas() {
        for (tr, lts) in short.iter().zip(&processes) {
            let (x, y) = (eval_finfinite(f, tr), eval_branching(f, lts, lts.initial()));
            t.check(matches!((&x, &y), (Ok(p), Ok(q)) if p == q), || format!("{f} on trace process {tr}: trace {x:?}, process {y:?}"));
        }
    }

    let mut shml: Vec<&Formula> = c.all_formulas().filter(|f| classify(f).shml).collect();
    shml.sort();
    shml.dedup();
    let bound = c.config.lts_trace_bound;
    let index = word_index(al, bound);
    let mut ordered: Vec<(&Vec<Action>, &usize)> = index.iter().collect();
    ordered.sort_by_key(|(_, i)| **i);
    let mut sat_bits: Vec<Vec<u64>> = Vec::new();
    for f in &shml {
        let mut bits = vec![0u64; index.len().div_ceil(64)];
        for (w, &i) in &ordered {
            if eval_finfinite(f, &Trace::finite((*w).clone())).unwrap_or(false) {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        sat_bits.push(bits);
    }

    let mut families: Vec<(usize, bool, Vec<u64>)> = Vec::new();
    let n = c.config.lts_states;
    let slots = corpus::edge_slots(al, n, false);
    if slots <= 24 {
        families.push((n, false, (0..1u64 << slots).collect()));
    }
    for k in 1..n.min(3) {
        let s = corpus::edge_slots(al, k, true);
        if s <= 16 {
            families.push((k, true, (0..1u64 << s).collect()));
        }
    }
    let mut rng = corpus::rng(c.config.seed ^ 0x1750);
    let s = corpus::edge_slots(al, n, true);
    families.push((n, true, (0..2000).map(|_| rng.gen::<u64>() & rng.gen::<u64>() & ((1u64 << s) - 1)).collect()));

    let mut lts_count = 0;
    for (k, tau, masks) in families {
        for chunk in masks.chunks(2048) {
            let mut edges = Vec::new();
            for (j, &mask) in chunk.iter().enumerate() {
                for (p, l, q) in corpus::edges_of_mask(al, k, tau, mask) {
                    edges.push((p + j * k, l, q + j * k));
                }
            }
            let union = Lts::from_edges(al.clone(), k * chunk.len(), 0, edges).expect("edges over the alphabet");
            lts_count += chunk.len();
            let produced: Vec<Vec<u64>> = (0..chunk.len()).map(|j| produced_bits(&union, j * k, bound, &index)).collect();
            for (f, sat) in shml.iter().zip(&sat_bits) {
                let states = match satisfying_states(f, &union) {
                    Ok(s) => s,
                    Err(e) => {
                        t.fail(format!("{f}: {e}"));
                        continue;
                    }
                };
                for (j, prod) in produced.iter().enumerate() {
                    let traces_ok = prod.iter().zip(sat).all(|(p, s)| p & !s == 0);
                    t.check(states[j * k] == traces_ok, || {
                        let lts = Lts::from_edges(al.clone(), k, 0, corpus::edges_of_mask(al, k, tau, chunk[j])).unwrap();
                        format!("{f} on\n{lts}: process {}, traces {traces_ok}", states[j * k])
                    });
                }
            }
        }
    }
    t.notes.push(format!("{} safety formulas over {lts_count} transition systems", shml.len()));
    t.report(6, "cross-semantics correspondences", start)
}

fn verdict_in(set: &std::collections::HashSet<Monitor>, v: Verdict) -> bool {
    set.iter().any(|m| m.as_verdict() == Some(v))
}

pub fn criterion_lemmas(c: &Corpus) -> CriterionReport {
    let start = Instant::now();
    let al = &c.config.alphabet;
    let mut t = Tally::new();
    let mut rng = corpus::rng(c.config.seed ^ 0x7a1f);
    let n = c.config.lemma_instances;

    for _ in 0..n {
        let m1 = corpus::random_reactive_monitor(&mut rng, al, 8);
        let m2 = corpus::random_reactive_monitor(&mut rng, al, 8);
        let s = corpus::random_word(&mut rng, al, 5);
        let r = (|| -> Result<bool> {
            let (a1, a2) = (weak_after(&m1, &s)?, weak_after(&m2, &s)?);
            let conj = weak_after(&Monitor::conj(m1.clone(), m2.clone()), &s)?;
            let disj = weak_after(&Monitor::disj(m1.clone(), m2.clone()), &s)?;
            let sum = weak_after(&Monitor::sum(m1.clone(), m2.clone()), &s)?;
            let (y, no) = (Verdict::Yes, Verdict::No);
            let mut ok = verdict_in(&conj, no) == (verdict_in(&a1, no) || verdict_in(&a2, no));
            ok &= verdict_in(&conj, y) == (verdict_in(&a1, y) && verdict_in(&a2, y));
            ok &= verdict_in(&disj, y) == (verdict_in(&a1, y) || verdict_in(&a2, y));
            ok &= verdict_in(&disj, no) == (verdict_in(&a1, no) && verdict_in(&a2, no));
            if !s.is_empty() || (m1.as_verdict().is_none() && m2.as_verdict().is_none()) {
                for v in [Verdict::Yes, Verdict::No, Verdict::End] {
                    ok &= verdict_in(&sum, v) == (verdict_in(&a1, v) || verdict_in(&a2, v));
                }
            }
            Ok(ok)
        })();
        match r {
            Ok(ok) => t.check(ok, || format!("combinators: {m1} , {m2} on {s:?}")),
            Err(e) => t.fail(format!("combinators: {m1} , {m2}: {e}")),
        }
    }

    let stepper = Stepper::new();
    for _ in 0..n {
        let m = corpus::random_monitor(&mut rng, al, 8);
        let lts = corpus::random_lts(&mut rng, al, 3, 0.2);
        let s = corpus::random_word(&mut rng, al, 4);
        let r = (|| -> Result<(bool, bool)> {
            let joint = instrumented_after(&m, &lts, 0, &s)?;
            let mons = weak_after(&m, &s)?;
            let procs: BTreeSet<usize> = lts.weak_after(0, &s).into_iter().collect();
            let zip = mons.iter().all(|n| procs.iter().all(|q| joint.contains(&(n.clone(), *q))));
            let mut unzip = true;
            for (n, q) in &joint {
                unzip &= procs.contains(q);
                if mons.contains(n) {
                    continue;
                }
                let mut stuck = false;
                if n.as_verdict() == Some(Verdict::End) {
                    for i in 0..s.len() {
                        for m1 in weak_after(&m, &s[..i])? {
                            stuck |= stepper.step(&m1, &Label::Tau).is_empty()
                                && stepper.step(&m1, &Label::Act(s[i].clone())).is_empty();
                        }
                    }
                }
                unzip &= stuck;
            }
            Ok((zip, unzip))
        })();
        match r {
            Ok((zip, unzip)) => {
                t.check(zip, || format!("zipping: {m} with\n{lts} on {s:?}"));
                t.check(unzip, || format!("unzipping: {m} with\n{lts} on {s:?}"));
            }
            Err(e) => t.fail(format!("zipping: {m}: {e}")),
        }
    }
    t.report(7, "monitor combinator and zipping lemmas", start)
}

pub fn criterion_maximality(c: &Corpus) -> CriterionReport {
    let start = Instant::now();
    let al = &c.config.alphabet;
    let mut t = Tally::new();
    for f in &c.hml {
        let r = synth_complete(f, al).and_then(|m| extract_complete_formula(&m, al));
        let Some(g) = t.ok_or_fail(r, || format!("extract from {f}")) else { continue };
        for tr in &c.lassos {
            let (x, y) = (eval_linear(f, tr), eval_linear(&g, tr));
            t.check(matches!((&x, &y), (Ok(p), Ok(q)) if p == q), || format!("{f} -> {g} differ on {tr}"));
        }
    }
    t.report(8, "formula extraction round trip", start)
}

/// Runs the sweeps whose ids are listed, or all of them.
pub fn run(config: SelftestConfig, only: &[u8]) -> Vec<CriterionReport> {
    let c = Corpus::new(config);
    let want = |i: u8| only.is_empty() || only.contains(&i);
    let mut out = Vec::new();
    if want(1) {
        out.push(criterion_complete(&c));
    }
    if want(2) {
        out.push(criterion_partial(&c));
    }
    if want(3) {
        out.push(criterion_transform(&c));
    }
    if want(4) {
        out.push(criterion_regressions());
    }
    if want(5) {
        out.push(criterion_slim(&c));
    }
    if want(6) {
        out.push(criterion_cross(&c));
    }
    if want(7) {
        out.push(criterion_lemmas(&c));
    }
    if want(8) {
        out.push(criterion_maximality(&c));
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SelftestConfig {
        SelftestConfig {
            formula_ops: 2,
            random_formulas: 40,
            lasso_bound: 4,
            finite_bound: 4,
            lts_states: 2,
            lts_trace_bound: 4,
            lemma_instances: 200,
            random_monitors: 30,
            ..SelftestConfig::default()
        }
    }

    #[test]
    fn small_sweeps_pass() {
        for r in run(small(), &[]) {
            println!("{}", r.line());
            assert!(r.passed(), "{}\n{:#?}", r.line(), r.examples);
        }
    }

    #[test]
    fn compositional_table_matches_transitions() {
        let al = Alphabet::parse("a,b").unwrap();
        let mut rng = corpus::rng(11);
        let mut monitors: Vec<Monitor> = (0..150).map(|_| corpus::random_reactive_monitor(&mut rng, &al, 10)).collect();
        for (kind, f) in corpus::random_ltmu_corpus(5, &al, 60, 14) {
            let mode = if kind == Fixpoints::Greatest { Mode::Violation } else { Mode::Satisfaction };
            monitors.push(synth_partial(&f, &al, mode).unwrap());
        }
        let mut compared = 0;
        for m in monitors {
            if let Ok(rows) = verdict_table_with(&Stepper::new(), &m, &al, 4, OPERATIONAL_CAP) {
                assert_eq!(rows, compositional_table(&m, &al, 4), "{m}");
                compared += 1;
            }
        }
        assert!(compared > 150);
    }

    #[test]
    fn regressions_pass() {
        let r = criterion_regressions();
        assert_eq!(r.checked, 13);
        assert!(r.passed(), "{:#?}", r.examples);
    }
}
