use recmon::engine::instrument_exhaustive;
use recmon::semantics::{eval_branching, Lts};
use recmon::synthesis::{synth_branching, Mode};
use recmon::syntax::{parse_formula, parse_process, Alphabet};

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b")?;
    let f = parse_formula("max X.([a]X & [b]ff)", &al)?;
    let m = synth_branching(&f, &al, Mode::Violation)?;
    println!("{f}  =>  {m}");
    for p in ["rec x.a.x", "a.a.b.nil", "rec x.(a.x + tau.b.nil)"] {
        let lts = Lts::from_process(&parse_process(p, &al)?, &al)?;
        let holds = eval_branching(&f, &lts, lts.initial())?;
        let rejected = instrument_exhaustive(&m, &lts, 4)?.iter().any(|(_, v)| *v == recmon::syntax::Verdict::No);
        println!("  {p:<24} holds={holds:<5} rejected={rejected}");
    }
    let g = parse_formula("min X.(<b>tt | <a>X)", &al)?;
    println!("{g}  =>  {}", synth_branching(&g, &al, Mode::Satisfaction)?);
    Ok(())
}
