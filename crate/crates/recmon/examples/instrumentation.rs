use recmon::engine::{instrument_exhaustive, instrument_random};
use recmon::semantics::Lts;
use recmon::syntax::{parse_monitor, parse_process, Alphabet};

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b")?;
    let m = parse_monitor("rec x.(a.x + b.no)", &al)?;
    let p = parse_process("rec y.(a.y + tau.b.nil)", &al)?;
    let lts = Lts::from_process(&p, &al)?;

    let run = instrument_random(&m, &lts, 11, 12);
    println!("{} | {}", run.start_monitor, run.start_state);
    for s in &run.steps {
        println!("  --{}--> {} | {}  [{:?}]", s.label, s.monitor, s.state, s.rule);
    }
    println!("trace: {}  verdict: {:?}", run.trace, run.verdict);

    for (trace, v) in instrument_exhaustive(&m, &lts, 3)? {
        let t: Vec<&str> = trace.iter().map(|a| a.name()).collect();
        println!("reachable verdict {v:?} after {}", t.join("."));
    }
    Ok(())
}
