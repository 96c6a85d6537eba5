use recmon::semantics::{eval_finfinite, eval_linear, eval_trace_stats};
use recmon::syntax::{parse_formula, parse_trace, Alphabet};

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b,c")?;
    let cases = [
        ("[a][a]ff", "(a.b)"),
        ("[a](<a>tt | <{b,c}>tt)", "(a.b)"),
        ("max X.<a>X", "(a)"),
        ("max X.<a>X", "(a.b)"),
    ];
    for (f, t) in cases {
        let (f, t) = (parse_formula(f, &al)?, parse_trace(t, &al)?);
        let stats = eval_trace_stats(&f, &t)?;
        println!("{t} |= {f}: {} ({} positions, {} rounds)", eval_linear(&f, &t)?, stats.positions, stats.max_rounds);
    }
    // Finite traces end in a position with no successor.
    for (f, t) in [("<a>tt", ""), ("[a]ff", ""), ("<a>tt", "a")] {
        let (f, t) = (parse_formula(f, &al)?, parse_trace(t, &al)?);
        println!("'{t}' |= {f}: {}", eval_finfinite(&f, &t)?);
    }
    Ok(())
}
