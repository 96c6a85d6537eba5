use recmon::semantics::{eval_branching, produced_finfinite_traces, satisfying_states, trace_process, Lts};
use recmon::syntax::{parse_formula, parse_process, parse_trace, Alphabet};

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b,c")?;
    let p = parse_process("rec x.(a.b.x + a.a.x + a.nil)", &al)?;
    let lts = Lts::from_process(&p, &al)?;
    for f in ["[a][a]ff", "[a](<a>tt | <{b,c}>tt)", "<a>tt"] {
        let f = parse_formula(f, &al)?;
        println!("{p} |= {f}: {}", eval_branching(&f, &lts, lts.initial())?);
    }

    let text = "alphabet: a,b\ninitial: s0\ns0 -a-> s1\ns1 -tau-> s0\ns1 -b-> s2\n";
    let lts = Lts::parse(text, None)?;
    let f = parse_formula("max X.([a]X & [b]ff)", lts.alphabet())?;
    let sat = satisfying_states(&f, &lts)?;
    for s in 0..lts.num_states() {
        println!("{} |= {f}: {}", lts.state_name(s), sat[s]);
    }
    let traces: Vec<String> = produced_finfinite_traces(&lts, lts.initial(), 3).iter().map(|t| format!("'{t}'")).collect();
    println!("traces up to 3: {}", traces.join(" "));

    let ab = Alphabet::parse("a,b")?;
    let tp = trace_process(&parse_trace("a(b)", &ab)?, &ab)?;
    println!("trace process of a(b): {} states", tp.num_states());
    Ok(())
}
