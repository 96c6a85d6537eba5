use recmon::normalize::{is_tight, is_tight_structural, to_slim};
use recmon::synthesis::synth_complete;
use recmon::syntax::{parse_formula, Alphabet};

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b")?;
    for src in ["tt & [a]ff", "<a>tt & <b>tt", "[a]([a]ff & [b]ff) | <b>tt"] {
        let f = parse_formula(src, &al)?;
        let (g, steps) = to_slim(&f, &al)?;
        println!("{f}");
        for s in &steps {
            println!("  {}: {} ~> {}", s.rule, s.before, s.after);
        }
        let loose = synth_complete(&f, &al)?;
        let tight = synth_complete(&g, &al)?;
        println!("  slim {g}; monitor {tight}");
        println!("  tight before={} after={}", is_tight(&loose, &f, &al)?, is_tight(&tight, &f, &al)?);
    }
    let m = recmon::syntax::parse_monitor("a.(a.no + b.no) + b.yes", &al)?;
    println!("{m} structurally tight: {}", is_tight_structural(&m, &al)?);
    Ok(())
}
