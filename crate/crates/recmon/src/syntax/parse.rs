use super::lexer::{lex, Tok};
use super::{ActSet, Action, Alphabet, Formula, Label, Monitor, Process, Trace, Var};
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::sync::Arc;

const FORMULA_KEYWORDS: &[&str] = &["tt", "ff", "max", "min", "next", "until", "release", "tau"];
const MONITOR_KEYWORDS: &[&str] = &["yes", "no", "end", "rec", "tau"];
const PROCESS_KEYWORDS: &[&str] = &["nil", "rec", "tau"];

/// Which grammar a text belongs to, for alphabet inference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Formula,
    Monitor,
    Process,
    Trace,
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    alphabet: Option<&'a Alphabet>,
    seen: BTreeSet<String>,
}

impl<'a> Parser<'a> {
    fn new(src: &str, alphabet: Option<&'a Alphabet>) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0, end: src.len(), alphabet, seen: BTreeSet::new() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let found = match self.peek() {
            Some(t) => format!(" (found {t:?})"),
            None => " (found end of input)".to_string(),
        };
        Error::parse(self.offset(), format!("{}{found}", msg.into()))
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn ident(&mut self, what: &str, keywords: &[&str]) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !keywords.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn action(&mut self, name: &str) -> Result<Action> {
        if name == "tau" {
            return Err(Error::ReservedTau);
        }
        match self.alphabet {
            Some(al) => al.get(name).cloned().ok_or_else(|| Error::UnknownAction(name.to_string())),
            None => {
                self.seen.insert(name.to_string());
                Ok(Action::new(name))
            }
        }
    }

    // ---- formulas ----

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.f_or()?;
        if self.peek_keyword("until") || self.peek_keyword("release") {
            let until = self.peek_keyword("until");
            self.pos += 1;
            let rhs = self.formula()?;
            let Some(al) = self.alphabet else {
                return Ok(Formula::True);
            };
            return Ok(if until {
                Formula::until(al, lhs, rhs)
            } else {
                Formula::release(al, lhs, rhs)
            });
        }
        Ok(lhs)
    }

    fn f_or(&mut self) -> Result<Formula> {
        let mut l = self.f_and()?;
        while self.eat(&Tok::Bar) {
            let r = self.f_and()?;
            l = Formula::or(l, r);
        }
        Ok(l)
    }

    fn f_and(&mut self) -> Result<Formula> {
        let mut l = self.f_unary()?;
        while self.eat(&Tok::Amp) {
            let r = self.f_unary()?;
            l = Formula::and(l, r);
        }
        Ok(l)
    }

    fn f_unary(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Tok::LBrack) => {
                self.pos += 1;
                let a = self.acts(Tok::RBrack)?;
                self.expect(Tok::RBrack, "`]`")?;
                Ok(Formula::boxed(a, self.f_unary()?))
            }
            Some(Tok::LAngle) => {
                self.pos += 1;
                let a = self.acts(Tok::RAngle)?;
                self.expect(Tok::RAngle, "`>`")?;
                Ok(Formula::diamond(a, self.f_unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "tt" => Ok(Formula::True),
                    "ff" => Ok(Formula::False),
                    "max" | "min" => {
                        let x = self.ident("a variable", FORMULA_KEYWORDS)?;
                        self.expect(Tok::Dot, "`.`")?;
                        let body = Arc::new(self.formula()?);
                        Ok(if s == "max" {
                            Formula::Max(Var::new(&x), body)
                        } else {
                            Formula::Min(Var::new(&x), body)
                        })
                    }
                    "next" => {
                        let f = self.f_unary()?;
                        Ok(match self.alphabet {
                            Some(al) => Formula::next(al, f),
                            None => f,
                        })
                    }
                    "until" | "release" | "tau" => {
                        self.pos -= 1;
                        Err(self.error("expected a formula"))
                    }
                    _ => Ok(Formula::Var(Var::new(&s))),
                }
            }
            _ => Err(self.error("expected a formula")),
        }
    }

    fn acts(&mut self, close: Tok) -> Result<ActSet> {
        if self.peek() == Some(&close) {
            return Ok(ActSet::default());
        }
        if self.eat(&Tok::Star) {
            return Ok(self.alphabet.map(|al| al.full()).unwrap_or_default());
        }
        if self.eat(&Tok::Tilde) {
            self.expect(Tok::LBrace, "`{`")?;
            let inner = self.act_list()?;
            self.expect(Tok::RBrace, "`}`")?;
            return Ok(self.alphabet.map(|al| al.complement(&inner)).unwrap_or_default());
        }
        if self.eat(&Tok::LBrace) {
            let inner = self.act_list()?;
            self.expect(Tok::RBrace, "`}`")?;
            return Ok(inner);
        }
        self.act_list()
    }

    fn act_list(&mut self) -> Result<ActSet> {
        let mut set = ActSet::default();
        loop {
            let name = self.ident("an action", &[])?;
            set.0.insert(self.action(&name)?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(set)
    }

    // ---- monitors ----

    fn monitor(&mut self) -> Result<Monitor> {
        let mut l = self.m_conj()?;
        while self.eat(&Tok::BarBar) {
            let r = self.m_conj()?;
            l = Monitor::disj(l, r);
        }
        Ok(l)
    }

    fn m_conj(&mut self) -> Result<Monitor> {
        let mut l = self.m_sum()?;
        while self.eat(&Tok::AmpAmp) {
            let r = self.m_sum()?;
            l = Monitor::conj(l, r);
        }
        Ok(l)
    }

    fn m_sum(&mut self) -> Result<Monitor> {
        let mut l = self.m_prefix()?;
        while self.eat(&Tok::Plus) {
            let r = self.m_prefix()?;
            l = Monitor::sum(l, r);
        }
        Ok(l)
    }

    fn m_prefix(&mut self) -> Result<Monitor> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let m = self.monitor()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(m)
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "yes" => Ok(Monitor::yes()),
                    "no" => Ok(Monitor::no()),
                    "end" => Ok(Monitor::end()),
                    "rec" => {
                        let x = self.ident("a variable", MONITOR_KEYWORDS)?;
                        self.expect(Tok::Dot, "`.`")?;
                        Ok(Monitor::Rec(Var::new(&x), Arc::new(self.monitor()?)))
                    }
                    _ if self.peek() == Some(&Tok::Dot) => {
                        self.pos += 1;
                        let a = self.action(&s)?;
                        Ok(Monitor::prefix(a, self.m_prefix()?))
                    }
                    "tau" => Err(Error::ReservedTau),
                    _ => Ok(Monitor::Var(Var::new(&s))),
                }
            }
            _ => Err(self.error("expected a monitor")),
        }
    }

    // ---- processes ----

    fn process(&mut self) -> Result<Process> {
        let mut l = self.p_prefix()?;
        while self.eat(&Tok::Plus) {
            let r = self.p_prefix()?;
            l = Process::sum(l, r);
        }
        Ok(l)
    }

    fn p_prefix(&mut self) -> Result<Process> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let p = self.process()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(p)
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "nil" => Ok(Process::Nil),
                    "rec" => {
                        let x = self.ident("a variable", PROCESS_KEYWORDS)?;
                        self.expect(Tok::Dot, "`.`")?;
                        Ok(Process::Rec(Var::new(&x), Arc::new(self.process()?)))
                    }
                    _ if self.peek() == Some(&Tok::Dot) => {
                        self.pos += 1;
                        let l = if s == "tau" { Label::Tau } else { Label::Act(self.action(&s)?) };
                        Ok(Process::prefix(l, self.p_prefix()?))
                    }
                    "tau" => Err(self.error("`tau` must prefix a process")),
                    _ => Ok(Process::Var(Var::new(&s))),
                }
            }
            _ => Err(self.error("expected a process")),
        }
    }

    // ---- traces ----

    fn trace_actions(&mut self, out: &mut Vec<Action>) -> Result<()> {
        loop {
            match self.peek().cloned() {
                Some(Tok::Ident(s)) => {
                    self.pos += 1;
                    self.trace_word(&s, out)?;
                }
                _ => return Err(self.error("expected an action")),
            }
            if !self.eat(&Tok::Dot) {
                return Ok(());
            }
        }
    }

    /// A word is one action, or a run of one-letter actions written
    /// without separators (`ab` for `a.b`) when `ab` itself is not an action.
    fn trace_word(&mut self, s: &str, out: &mut Vec<Action>) -> Result<()> {
        if s == "tau" {
            return Err(Error::ReservedTau);
        }
        match self.alphabet {
            Some(al) => {
                if let Some(a) = al.get(s) {
                    out.push(a.clone());
                    return Ok(());
                }
                let mut buf = Vec::new();
                for c in s.chars() {
                    match al.get(&c.to_string()) {
                        Some(a) => buf.push(a.clone()),
                        None => return Err(Error::UnknownAction(s.to_string())),
                    }
                }
                out.extend(buf);
                Ok(())
            }
            None => {
                self.seen.insert(s.to_string());
                out.push(Action::new(s));
                Ok(())
            }
        }
    }

    fn trace(&mut self) -> Result<Trace> {
        let mut prefix = Vec::new();
        if matches!(self.peek(), Some(Tok::Ident(_))) {
            self.trace_actions(&mut prefix)?;
        }
        let cycle = if self.eat(&Tok::LParen) {
            let mut c = Vec::new();
            self.trace_actions(&mut c)?;
            self.expect(Tok::RParen, "`)`")?;
            Some(c)
        } else {
            None
        };
        Ok(Trace { prefix, cycle })
    }
}

/// Parses a closed or open formula; binders are renamed apart.
pub fn parse_formula_open(src: &str, alphabet: &Alphabet) -> Result<Formula> {
    let mut p = Parser::new(src, Some(alphabet))?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f.with_unique_binders())
}

/// Parses a formula and checks that it is closed and guarded.
pub fn parse_formula(src: &str, alphabet: &Alphabet) -> Result<Formula> {
    let f = parse_formula_open(src, alphabet)?;
    f.check_closed_guarded()?;
    Ok(f)
}

/// Parses a monitor; binders are renamed apart.
pub fn parse_monitor(src: &str, alphabet: &Alphabet) -> Result<Monitor> {
    let mut p = Parser::new(src, Some(alphabet))?;
    let m = p.monitor()?;
    p.finish()?;
    Ok(m.with_unique_binders())
}

pub fn parse_process(src: &str, alphabet: &Alphabet) -> Result<Process> {
    let mut p = Parser::new(src, Some(alphabet))?;
    let q = p.process()?;
    p.finish()?;
    Ok(q.with_unique_binders())
}

pub fn parse_trace(src: &str, alphabet: &Alphabet) -> Result<Trace> {
    let mut p = Parser::new(src, Some(alphabet))?;
    let t = p.trace()?;
    p.finish()?;
    if t.cycle.as_ref().is_some_and(|c| c.is_empty()) {
        return Err(Error::parse(0, "empty cycle"));
    }
    Ok(t)
}

/// Collects the actions mentioned by the given inputs. Multi-letter words in
/// traces that no other input mentions are split into single letters.
pub fn infer_alphabet(inputs: &[(InputKind, &str)]) -> Result<Alphabet> {
    let mut names = BTreeSet::new();
    let mut trace_words = BTreeSet::new();
    for (kind, src) in inputs {
        let mut p = Parser::new(src, None)?;
        match kind {
            InputKind::Formula => {
                p.formula()?;
            }
            InputKind::Monitor => {
                p.monitor()?;
            }
            InputKind::Process => {
                p.process()?;
            }
            InputKind::Trace => {
                p.trace()?;
            }
        }
        p.finish()?;
        if *kind == InputKind::Trace {
            trace_words.extend(p.seen);
        } else {
            names.extend(p.seen);
        }
    }
    for w in trace_words {
        if names.contains(&w) {
            continue;
        }
        if w.chars().count() > 1 {
            names.extend(w.chars().map(|c| c.to_string()));
        } else {
            names.insert(w);
        }
    }
    Alphabet::new(names)
}

/// Parses the `alphabet:` header line of an LTS file, if present.
pub fn parse_lts_header(line: &str) -> Option<Result<Alphabet>> {
    let rest = line.trim().strip_prefix("alphabet:")?;
    Some(Alphabet::parse(rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, Fixpoints};
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::parse("a,b").unwrap()
    }

    #[test]
    fn boxes_nest() {
        let f = parse_formula("[a][a]ff", &ab()).unwrap();
        let a = ActSet::of(["a"]);
        assert_eq!(f, Formula::boxed(a.clone(), Formula::boxed(a, Formula::False)));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("<a>tt & tt | ff", &ab()).unwrap();
        assert!(matches!(f, Formula::Or(..)));
        let f = parse_formula("max X.[a]X & tt", &ab()).unwrap();
        assert!(matches!(f, Formula::Max(..)));
        let m = parse_monitor("a.yes + b.no && a.end", &ab()).unwrap();
        assert!(matches!(m, Monitor::Conj(..)));
    }

    #[test]
    fn sugar() {
        let al = ab();
        assert_eq!(parse_formula("[]ff", &al).unwrap(), Formula::boxed(ActSet::of(Vec::<&str>::new()), Formula::False));
        assert_eq!(parse_formula("[{a,b}]ff", &al).unwrap(), parse_formula("[a,b]ff", &al).unwrap());
        assert_eq!(parse_formula("[~{a}]ff", &al).unwrap(), parse_formula("[b]ff", &al).unwrap());
        assert_eq!(parse_formula("<*>tt", &al).unwrap(), parse_formula("<{a,b}>tt", &al).unwrap());
        assert!(parse_formula("next <a>tt", &al).is_ok());
        assert!(parse_formula("<a>tt until <b>tt", &al).is_ok());
    }

    #[test]
    fn errors() {
        let al = ab();
        assert!(matches!(parse_formula("[c]ff", &al), Err(Error::UnknownAction(_))));
        assert!(matches!(parse_formula("max X.X", &al), Err(Error::Unguarded(_))));
        assert!(matches!(parse_formula("[a]X", &al), Err(Error::FreeVariable(_))));
        assert!(matches!(parse_formula("[a]", &al), Err(Error::Parse { .. })));
        assert!(parse_trace("a()", &al).is_err());
    }

    #[test]
    fn traces() {
        let al = ab();
        let t = parse_trace("a.b(a.b)", &al).unwrap();
        assert_eq!(t.to_string(), "a.b(a.b)");
        assert!(parse_trace("", &al).unwrap().is_empty());
        assert_eq!(parse_trace("(a)", &al).unwrap().len(), 1);
    }

    #[test]
    fn inference() {
        let al = infer_alphabet(&[(InputKind::Formula, "[a]ff"), (InputKind::Trace, "ab")]).unwrap();
        let names: Vec<&str> = al.actions().iter().map(|a| a.name()).collect();
        assert_eq!(names, ["a", "b"]);
        let al = infer_alphabet(&[(InputKind::Monitor, "req.yes"), (InputKind::Trace, "req.ack")]).unwrap();
        assert!(al.get("req").is_some() && al.get("ack").is_none() && al.get("a").is_some());
    }

    #[test]
    fn lts_header() {
        assert!(parse_lts_header("alphabet: a, b").unwrap().is_ok());
        assert!(parse_lts_header("0 a 1").is_none());
    }

    proptest! {
        #[test]
        fn print_then_parse(seed in any::<u64>(), least in any::<bool>()) {
            let al = ab();
            let kind = if least { Fixpoints::Least } else { Fixpoints::Greatest };
            let f = corpus::random_fixpoint_formula(&mut corpus::rng(seed), &al, kind, 20);
            prop_assert_eq!(parse_formula(&f.to_string(), &al).unwrap(), f);
        }

        #[test]
        fn monitor_print_then_parse(seed in any::<u64>()) {
            let al = ab();
            let m = corpus::random_monitor(&mut corpus::rng(seed), &al, 12);
            prop_assert_eq!(parse_monitor(&m.to_string(), &al).unwrap(), m);
        }

        #[test]
        fn trace_print_then_parse(seed in any::<u64>()) {
            let al = ab();
            let mut rng = corpus::rng(seed);
            let p = corpus::random_word(&mut rng, &al, 4);
            let c = corpus::random_word(&mut rng, &al, 3);
            let t = Trace::lasso(p.clone(), c).unwrap_or(Trace::finite(p));
            prop_assert_eq!(parse_trace(&t.to_string(), &al).unwrap(), t);
        }
    }
}
