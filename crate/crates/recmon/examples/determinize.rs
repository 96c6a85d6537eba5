use recmon::syntax::{parse_monitor, Alphabet};
use recmon::transform::{determinize, verdict_difference, EquivMode};

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b")?;
    for src in ["rec x.(a.x + a.b.yes)", "a.b.yes + a.a.no", "a.yes + a.no"] {
        let m = parse_monitor(src, &al)?;
        match determinize(&m, &al) {
            Ok(d) => {
                let diff = verdict_difference(&m, &d, &al, EquivMode::Bounded(8))?;
                println!("{m}  =>  {d}  (difference up to 8: {diff:?})");
            }
            Err(e) => println!("{m}: {e}"),
        }
    }
    Ok(())
}
