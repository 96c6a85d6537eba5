//! Command-line front end. Every command parses its inputs, calls one
//! library operation and renders the result as text or as a JSON report.

use crate::engine::{self, instrument_exhaustive, instrument_random, Stepper, System};
use crate::error::{Error, Result};
use crate::normalize::{is_tight, is_tight_structural, no_rec, to_slim};
use crate::selftest::{self, SelftestConfig};
use crate::semantics::{eval_branching, eval_finfinite, eval_linear, satisfying_states, Lts};
use crate::synthesis::{extract_complete_formula, synth_complete, synthesize, Mode, SynthKind};
use crate::syntax::{
    classify, infer_alphabet, parse_formula, parse_monitor, parse_process, parse_trace, Alphabet, InputKind, Trace,
    Verdict,
};
use crate::transform::{
    determinize, lasso_verdict, monitor_dfa, monitor_to_alternating, verdict_difference, EquivMode, MonitorAutomata,
    Polarity,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "recmon", version, about = "Monitors for Hennessy-Milner logic with recursion")]
pub struct Cli {
    /// Actions, e.g. `a,b,c`. Inferred from the inputs when omitted.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    /// Emit a single JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fragment membership and size measures of a formula.
    Classify { formula: String },
    /// Synthesise a monitor from a formula.
    Synth {
        formula: String,
        #[arg(long, value_enum, default_value_t = SynthMode::Complete)]
        mode: SynthMode,
    },
    /// Run a monitor over a finite trace or a lasso.
    Verdict {
        monitor: String,
        #[arg(long)]
        trace: String,
        #[arg(long, value_enum, default_value_t = SystemArg::O)]
        system: SystemArg,
    },
    /// Decide a formula on a trace or a process state.
    Check {
        formula: String,
        #[arg(long)]
        trace: Option<String>,
        #[arg(long, value_enum)]
        semantics: Option<SemanticsArg>,
        #[command(flatten)]
        system: SystemInput,
        /// State to check instead of the initial one.
        #[arg(long)]
        state: Option<String>,
    },
    /// All states of a transition system satisfying a formula.
    Mc {
        formula: String,
        #[command(flatten)]
        system: SystemInput,
    },
    /// Compile a monitor to automata or to a deterministic regular monitor.
    Transform {
        monitor: String,
        #[arg(long, value_enum, default_value_t = Target::Regular)]
        to: Target,
        #[arg(long, value_enum, default_value_t = PolarityArg::Reject)]
        polarity: PolarityArg,
    },
    /// Rewrite a fixpoint-free formula to slim form, or remove recursion
    /// from a deterministic monitor with `--no-rec`.
    Normalize {
        input: String,
        #[arg(long)]
        no_rec: bool,
    },
    /// Verdict equivalence of two monitors.
    Equiv {
        left: String,
        right: String,
        /// Compare traces up to this length instead of exactly.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Run a monitor instrumented with a process.
    Simulate {
        monitor: String,
        #[command(flatten)]
        system: SystemInput,
        #[arg(long, default_value_t = 40)]
        fuel: usize,
        /// List every verdict reachable within this many actions instead.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Recover a formula from a complete monitor.
    Extract { monitor: String },
    /// Property sweeps over a generated corpus.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Default)]
pub struct SystemInput {
    /// LTS file (`alphabet:`, `initial:`, `S -act-> T` lines).
    #[arg(long)]
    pub lts: Option<String>,
    /// Process term, e.g. `rec x.(a.x + b.nil)`.
    #[arg(long)]
    pub process: Option<String>,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Operator budget of the exhaustive formula corpus.
    #[arg(long, default_value_t = 3)]
    pub formula_depth: usize,
    /// Bound on |prefix| + |cycle| of lassos.
    #[arg(long, default_value_t = 5)]
    pub trace_bound: usize,
    #[arg(long, default_value_t = 6)]
    pub finite_bound: usize,
    #[arg(long, default_value_t = 500)]
    pub random_formulas: usize,
    #[arg(long, default_value_t = 20)]
    pub max_formula_len: usize,
    #[arg(long, default_value_t = 3)]
    pub lts_states: usize,
    #[arg(long, default_value_t = 10_000)]
    pub lemma_instances: usize,
    #[arg(long, default_value_t = 300)]
    pub random_monitors: usize,
    /// Comma-separated criterion numbers; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SynthMode {
    Complete,
    Violation,
    Satisfaction,
    BranchingViolation,
    BranchingSatisfaction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    O,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Linear,
    Finfinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Regular,
    Alternating,
    Nfa,
    Dfa,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolarityArg {
    Accept,
    Reject,
}

/// What a command produced.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// The JSON document emitted with `--json`.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: serde_json::Map<String, Value>,
    pub result: Value,
    pub diagnostics: Vec<String>,
    pub error: Option<Value>,
    pub exit_code: i32,
    pub timing_ms: u128,
}

/// A successful command: payload for JSON, rendering for text.
struct Done {
    result: Value,
    text: String,
    code: i32,
    diagnostics: Vec<String>,
}

impl Done {
    fn new(result: Value, text: impl Into<String>) -> Self {
        Done { result, text: text.into(), code: EXIT_OK, diagnostics: Vec::new() }
    }

    fn negative_if(mut self, negative: bool) -> Self {
        if negative {
            self.code = EXIT_NEGATIVE;
        }
        self
    }
}

struct Ctx {
    inputs: serde_json::Map<String, Value>,
    explicit: Option<Alphabet>,
}

impl Ctx {
    fn record(&mut self, name: &str, value: impl ToString) {
        self.inputs.insert(name.to_string(), Value::String(value.to_string()));
    }

    /// The declared alphabet, else the LTS header, else the actions
    /// mentioned by the inputs.
    fn alphabet(&mut self, inputs: &[(InputKind, &str)], lts_text: Option<&str>) -> Result<Alphabet> {
        let al = if let Some(a) = &self.explicit {
            a.clone()
        } else if let Some(h) = lts_text.and_then(|t| t.lines().find_map(crate::syntax::parse_lts_header)) {
            h?
        } else {
            let mut names: Vec<String> = Vec::new();
            if let Some(text) = lts_text {
                for line in text.lines() {
                    let line = line.split('#').next().unwrap_or("");
                    if let Some((_, rest)) = line.split_once(" -") {
                        if let Some((act, _)) = rest.split_once("->") {
                            let act = act.trim();
                            if act != "tau" && !act.is_empty() {
                                names.push(act.to_string());
                            }
                        }
                    }
                }
            }
            let extra = names.join(".");
            let mut all = inputs.to_vec();
            if !extra.is_empty() {
                all.push((InputKind::Process, &extra));
            }
            match infer_alphabet(&all) {
                Ok(a) => a,
                Err(Error::EmptyAlphabet) => Alphabet::parse("a")?,
                Err(e) => return Err(e),
            }
        };
        self.record("alphabet", &al);
        Ok(al)
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn load_system(ctx: &mut Ctx, sys: &SystemInput, others: &[(InputKind, &str)]) -> Result<Lts> {
    match (&sys.lts, &sys.process) {
        (Some(path), None) => {
            let text = read_file(path)?;
            let al = ctx.alphabet(others, Some(&text))?;
            let lts = Lts::parse(&text, Some(&al))?;
            ctx.record("lts", path);
            Ok(lts)
        }
        (None, Some(p)) => {
            let mut inputs = others.to_vec();
            inputs.push((InputKind::Process, p));
            let al = ctx.alphabet(&inputs, None)?;
            let proc_ = parse_process(p, &al)?;
            ctx.record("process", &proc_);
            Lts::from_process(&proc_, &al)
        }
        _ => Err(Error::Io("give exactly one of --lts or --process".into())),
    }
}

fn verdict_value(v: Option<Verdict>) -> Value {
    match v {
        Some(v) => json!(v),
        None => Value::Null,
    }
}

fn verdict_text(v: Option<Verdict>) -> String {
    v.map_or("none".to_string(), |v| v.to_string())
}

fn execute(cmd: &Command, ctx: &mut Ctx, seed: Option<u64>) -> Result<Done> {
    match cmd {
        Command::Classify { formula } => {
            let al = ctx.alphabet(&[(InputKind::Formula, formula)], None)?;
            let f = crate::syntax::parse_formula_open(formula, &al)?;
            ctx.record("formula", &f);
            let fr = classify(&f);
            let names: Vec<&str> = [
                ("hml", fr.hml),
                ("ltmu_s", fr.ltmu_s),
                ("ltmu_c", fr.ltmu_c),
                ("ftmu_s", fr.ftmu_s),
                ("ftmu_c", fr.ftmu_c),
                ("shml", fr.shml),
                ("chml", fr.chml),
            ]
            .into_iter()
            .filter(|(_, b)| *b)
            .map(|(n, _)| n)
            .collect();
            let result = json!({
                "fragments": fr,
                "length": f.length(),
                "size": f.size(),
                "modal_depth": f.modal_depth(),
                "ms": f.ms(),
            });
            let text = format!(
                "fragments: {}\nclosed: {}, guarded: {}\nlength: {}, modal depth: {}",
                if names.is_empty() { "none".to_string() } else { names.join(" ") },
                fr.closed,
                fr.guarded,
                f.length(),
                f.modal_depth()
            );
            Ok(Done::new(result, text))
        }
        Command::Synth { formula, mode } => {
            let al = ctx.alphabet(&[(InputKind::Formula, formula)], None)?;
            let f = parse_formula(formula, &al)?;
            ctx.record("formula", &f);
            ctx.inputs.insert("mode".into(), json!(mode));
            let kind = match mode {
                SynthMode::Complete => SynthKind::Complete,
                SynthMode::Violation => SynthKind::Partial(Mode::Violation),
                SynthMode::Satisfaction => SynthKind::Partial(Mode::Satisfaction),
                SynthMode::BranchingViolation => SynthKind::Branching(Mode::Violation),
                SynthMode::BranchingSatisfaction => SynthKind::Branching(Mode::Satisfaction),
            };
            let m = synthesize(&f, &al, kind)?;
            Ok(Done::new(json!({"monitor": m.to_string(), "length": m.length()}), m.to_string()))
        }
        Command::Verdict { monitor, trace, system } => {
            let al = ctx.alphabet(&[(InputKind::Monitor, monitor), (InputKind::Trace, trace)], None)?;
            let m = parse_monitor(monitor, &al)?;
            let t = parse_trace(trace, &al)?;
            ctx.record("monitor", &m);
            ctx.record("trace", &t);
            let v = if t.is_finite() {
                let stepper = match system {
                    SystemArg::O => Stepper::new(),
                    SystemArg::N => Stepper::with_system(&m, System::N),
                };
                let reached = engine::weak_after_with(&stepper, &m, &t.prefix, engine::DEFAULT_CAP)?;
                let has = |v: Verdict| reached.iter().any(|n| n.as_verdict() == Some(v));
                match (has(Verdict::Yes), has(Verdict::No)) {
                    (true, true) => return Err(Error::Inconsistent(t.to_string())),
                    (true, false) => Some(Verdict::Yes),
                    (false, true) => Some(Verdict::No),
                    _ if has(Verdict::End) => Some(Verdict::End),
                    _ => None,
                }
            } else {
                lasso_verdict(&m, &t, &al)?
            };
            Ok(Done::new(json!({"verdict": verdict_value(v)}), verdict_text(v)).negative_if(v == Some(Verdict::No)))
        }
        Command::Check { formula, trace, semantics, system, state } => {
            let (holds, how) = if let Some(tr) = trace {
                let al = ctx.alphabet(&[(InputKind::Formula, formula), (InputKind::Trace, tr)], None)?;
                let f = parse_formula(formula, &al)?;
                let t = parse_trace(tr, &al)?;
                ctx.record("formula", &f);
                ctx.record("trace", &t);
                let sem = semantics.unwrap_or(if t.is_finite() { SemanticsArg::Finfinite } else { SemanticsArg::Linear });
                match sem {
                    SemanticsArg::Linear => (eval_linear(&f, &t)?, "linear"),
                    SemanticsArg::Finfinite => (eval_finfinite(&f, &t)?, "finfinite"),
                }
            } else {
                let lts = load_system(ctx, system, &[(InputKind::Formula, formula)])?;
                let f = parse_formula(formula, lts.alphabet())?;
                ctx.record("formula", &f);
                let s = match state {
                    Some(name) => lts.state_index(name).ok_or_else(|| Error::Io(format!("no state `{name}`")))?,
                    None => lts.initial(),
                };
                ctx.record("state", lts.state_name(s));
                (eval_branching(&f, &lts, s)?, "branching")
            };
            ctx.record("semantics", how);
            Ok(Done::new(json!({"holds": holds}), holds.to_string()).negative_if(!holds))
        }
        Command::Mc { formula, system } => {
            let lts = load_system(ctx, system, &[(InputKind::Formula, formula)])?;
            let f = parse_formula(formula, lts.alphabet())?;
            ctx.record("formula", &f);
            let sat = satisfying_states(&f, &lts)?;
            let names: Vec<&str> = (0..lts.num_states()).filter(|&s| sat[s]).map(|s| lts.state_name(s)).collect();
            let init = sat[lts.initial()];
            let text = format!("satisfying states: {}\ninitial state satisfies: {init}", names.join(" "));
            Ok(Done::new(json!({"states": names, "initial": init}), text).negative_if(!init))
        }
        Command::Transform { monitor, to, polarity } => {
            let al = ctx.alphabet(&[(InputKind::Monitor, monitor)], None)?;
            let m = parse_monitor(monitor, &al)?;
            ctx.record("monitor", &m);
            let pol = match polarity {
                PolarityArg::Accept => Polarity::Accept,
                PolarityArg::Reject => Polarity::Reject,
            };
            match to {
                Target::Regular => {
                    let aut = MonitorAutomata::new(&m, &al)?;
                    let d = determinize(&m, &al)?;
                    let sizes = json!({"accept": aut.accept_sizes, "reject": aut.reject_sizes});
                    Ok(Done::new(json!({"monitor": d.to_string(), "sizes": sizes}), d.to_string()))
                }
                Target::Alternating => {
                    let a = monitor_to_alternating(&m, &al, pol)?;
                    Ok(Done::new(json!({"automaton": a.to_text(), "states": a.num_states()}), a.to_text()))
                }
                Target::Nfa => {
                    let (n, _) = monitor_to_alternating(&m, &al, pol)?.to_nfa()?;
                    Ok(Done::new(json!({"automaton": n.to_text(), "states": n.num_states()}), n.to_text()))
                }
                Target::Dfa => {
                    let (d, sizes) = monitor_dfa(&m, &al, pol)?;
                    let text = d.to_text();
                    Ok(Done::new(json!({"automaton": text, "states": d.num_states(), "sizes": sizes}), text))
                }
            }
        }
        Command::Normalize { input, no_rec: monitor_mode } => {
            if *monitor_mode {
                let al = ctx.alphabet(&[(InputKind::Monitor, input)], None)?;
                let m = parse_monitor(input, &al)?;
                ctx.record("monitor", &m);
                let r = no_rec(&m, &al)?;
                let tight = is_tight_structural(&r, &al)?;
                let text = format!("{r}\nstructurally tight: {tight}");
                return Ok(Done::new(json!({"monitor": r.to_string(), "structurally_tight": tight}), text));
            }
            let al = ctx.alphabet(&[(InputKind::Formula, input)], None)?;
            let f = parse_formula(input, &al)?;
            ctx.record("formula", &f);
            let (g, steps) = to_slim(&f, &al)?;
            let m = synth_complete(&g, &al)?;
            let tight = is_tight(&m, &f, &al)?;
            let mut text = String::new();
            for (i, s) in steps.iter().enumerate() {
                text.push_str(&format!("{}. {}: {}  ~>  {}\n", i + 1, s.rule, s.before, s.after));
            }
            text.push_str(&format!("slim: {g}\nmonitor: {m}\ntight: {tight}"));
            let result = json!({"slim": g.to_string(), "steps": steps, "monitor": m.to_string(), "tight": tight});
            Ok(Done::new(result, text))
        }
        Command::Equiv { left, right, bound } => {
            let al = ctx.alphabet(&[(InputKind::Monitor, left), (InputKind::Monitor, right)], None)?;
            let (m, n) = (parse_monitor(left, &al)?, parse_monitor(right, &al)?);
            ctx.record("left", &m);
            ctx.record("right", &n);
            let mode = bound.map_or(EquivMode::Exact, EquivMode::Bounded);
            let diff = verdict_difference(&m, &n, &al, mode)?;
            let witness = diff.as_ref().map(|w| Trace::finite(w.clone()).to_string());
            let text = match &witness {
                None => "equivalent".to_string(),
                Some(w) => format!("not equivalent: they differ on `{w}`"),
            };
            Ok(Done::new(json!({"equivalent": diff.is_none(), "witness": witness}), text).negative_if(diff.is_some()))
        }
        Command::Simulate { monitor, system, fuel, depth } => {
            let lts = load_system(ctx, system, &[(InputKind::Monitor, monitor)])?;
            let m = parse_monitor(monitor, lts.alphabet())?;
            ctx.record("monitor", &m);
            if let Some(d) = depth {
                let found = instrument_exhaustive(&m, &lts, *d)?;
                let rows: Vec<Value> = found
                    .iter()
                    .map(|(w, v)| json!({"trace": Trace::finite(w.clone()).to_string(), "verdict": v}))
                    .collect();
                let text = found
                    .iter()
                    .map(|(w, v)| format!("{} => {v}", Trace::finite(w.clone())))
                    .collect::<Vec<_>>()
                    .join("\n");
                return Ok(Done::new(json!({"verdicts": rows}), text));
            }
            let seed = seed.unwrap_or(0);
            let tr = instrument_random(&m, &lts, seed, *fuel);
            let mut text = String::new();
            let (mut mon, mut st) = (tr.start_monitor.clone(), tr.start_state.clone());
            for s in &tr.steps {
                text.push_str(&format!("{mon} | {st} --{}--> {} | {}  [{:?}]\n", s.label, s.monitor, s.state, s.rule));
                mon = s.monitor.clone();
                st = s.state.clone();
            }
            text.push_str(&format!("trace: {}\nverdict: {}", tr.trace, verdict_text(tr.verdict)));
            let mut done = Done::new(serde_json::to_value(&tr).unwrap_or(Value::Null), text);
            done.diagnostics.push(format!("seed {seed}"));
            Ok(done)
        }
        Command::Extract { monitor } => {
            let al = ctx.alphabet(&[(InputKind::Monitor, monitor)], None)?;
            let m = parse_monitor(monitor, &al)?;
            ctx.record("monitor", &m);
            let f = extract_complete_formula(&m, &al)?;
            Ok(Done::new(json!({"formula": f.to_string()}), f.to_string()))
        }
        Command::Selftest(a) => {
            let mut cfg = SelftestConfig {
                formula_ops: a.formula_depth,
                lasso_bound: a.trace_bound,
                finite_bound: a.finite_bound,
                random_formulas: a.random_formulas,
                max_formula_len: a.max_formula_len,
                lts_states: a.lts_states,
                lemma_instances: a.lemma_instances,
                random_monitors: a.random_monitors,
                ..SelftestConfig::default()
            };
            if let Some(al) = &ctx.explicit {
                cfg.alphabet = al.clone();
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            ctx.record("alphabet", &cfg.alphabet);
            ctx.inputs.insert("config".into(), json!(cfg));
            let reports = selftest::run(cfg, &a.criteria);
            let failures: usize = reports.iter().map(|r| r.failures).sum();
            let all_pass = reports.iter().all(|r| r.passed());
            let mut text = String::new();
            for r in &reports {
                text.push_str(&r.line());
                text.push('\n');
                for e in &r.examples {
                    text.push_str(&format!("    {}\n", e.replace('\n', "\n    ")));
                }
            }
            text.push_str(&format!("summary: {} criteria, {failures} failures", reports.len()));
            Ok(Done::new(json!({"criteria": reports, "failures": failures}), text).negative_if(!all_pass))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Synth { .. } => "synth",
        Command::Verdict { .. } => "verdict",
        Command::Check { .. } => "check",
        Command::Mc { .. } => "mc",
        Command::Transform { .. } => "transform",
        Command::Normalize { .. } => "normalize",
        Command::Equiv { .. } => "equiv",
        Command::Simulate { .. } => "simulate",
        Command::Extract { .. } => "extract",
        Command::Selftest(_) => "selftest",
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let mut ctx = Ctx { inputs: serde_json::Map::new(), explicit: None };
    let result = match cli.alphabet.as_deref().map(Alphabet::parse).transpose() {
        Ok(explicit) => {
            ctx.explicit = explicit;
            execute(&cli.command, &mut ctx, cli.seed)
        }
        Err(e) => Err(e),
    };
    let elapsed = start.elapsed().as_millis();
    let name = command_name(&cli.command);
    let (code, result_value, text, diagnostics, error) = match result {
        Ok(d) => (d.code, d.result, d.text, d.diagnostics, None),
        Err(e) => {
            let code = if e.is_cap() { EXIT_CAP } else { EXIT_INPUT };
            let err = json!({"code": e.code(), "message": e.to_string()});
            (code, Value::Null, String::new(), Vec::new(), Some((err, e.to_string())))
        }
    };
    if cli.json {
        let report = Report {
            command: name.to_string(),
            inputs: ctx.inputs,
            result: result_value,
            diagnostics,
            error: error.as_ref().map(|(v, _)| v.clone()),
            exit_code: code,
            timing_ms: elapsed,
        };
        let doc = serde_json::to_string_pretty(&report).expect("report serializes");
        return Outcome { code, stdout: doc + "\n", stderr: String::new() };
    }
    match error {
        Some((v, msg)) => Outcome { code, stdout: String::new(), stderr: format!("error[{}]: {msg}\n", v["code"].as_str().unwrap_or("")) },
        None => {
            let mut stderr = String::new();
            for d in diagnostics {
                stderr.push_str(&d);
                stderr.push('\n');
            }
            Outcome { code, stdout: text + "\n", stderr }
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("recmon").chain(args.iter().copied()))
    }

    #[test]
    fn check_on_lasso() {
        let out = run_args(&["check", "[a][a]ff", "--trace", "(ab)", "--semantics", "linear"]);
        assert_eq!(out.stdout.trim(), "true");
        assert_eq!(out.code, EXIT_OK);
        let out = run_args(&["check", "[a][a]ff", "--trace", "(a)"]);
        assert_eq!(out.stdout.trim(), "false");
        assert_eq!(out.code, EXIT_NEGATIVE);
    }

    #[test]
    fn synth_tt() {
        assert_eq!(run_args(&["synth", "--mode", "complete", "tt"]).stdout.trim(), "yes");
    }

    #[test]
    fn input_errors_exit_two() {
        let out = run_args(&["synth", "[a", "--alphabet", "a,b"]);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.contains("error[parse]"));
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_INPUT);
        assert_eq!(run_args(&["check", "[c]ff", "--trace", "(a)", "--alphabet", "a,b"]).code, EXIT_INPUT);
    }

    #[test]
    fn cap_exits_three() {
        let out = run_args(&["normalize", "--no-rec", "rec x.(a.x + b.yes)", "--alphabet", "a,b"]);
        assert_eq!(out.code, EXIT_CAP, "{}", out.stderr);
    }

    #[test]
    fn json_report_shape() {
        let out = run_args(&["--json", "verdict", "a.b.yes + a.a.no", "--trace", "a.a"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["command"], "verdict");
        assert_eq!(v["result"]["verdict"], "no");
        assert_eq!(v["inputs"]["alphabet"], "a,b");
        assert_eq!(v["exit_code"], 1);
        assert!(v["timing_ms"].is_u64());
        assert_eq!(out.code, EXIT_NEGATIVE);
    }

    #[test]
    fn json_inputs_reparse() {
        let out = run_args(&["--json", "synth", "max X.([a]X & <b>tt)", "--mode", "violation"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let al = Alphabet::parse(v["inputs"]["alphabet"].as_str().unwrap()).unwrap();
        let f = v["inputs"]["formula"].as_str().unwrap();
        assert_eq!(parse_formula(f, &al).unwrap().to_string(), f);
        let m = v["result"]["monitor"].as_str().unwrap();
        assert_eq!(parse_monitor(m, &al).unwrap().to_string(), m);
    }

    #[test]
    fn determinize_command() {
        let out = run_args(&["transform", "a.b.yes + a.a.no"]);
        assert_eq!(out.stdout.trim(), "a.(a.no + b.yes)");
    }

    #[test]
    fn simulate_is_seeded() {
        let args = ["--seed", "4", "simulate", "rec x.(a.x + b.yes)", "--process", "rec y.(a.y + b.nil)"];
        let (x, y) = (run_args(&args), run_args(&args));
        assert_eq!(x.code, EXIT_OK);
        assert_eq!(x.stdout, y.stdout);
        assert!(x.stdout.contains(" | "));
    }
}
