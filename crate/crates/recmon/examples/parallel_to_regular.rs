use recmon::syntax::{parse_monitor, Alphabet};
use recmon::transform::{parallel_to_regular, verdict_equivalent, EquivMode, MonitorAutomata};

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b")?;
    for src in ["(a.yes + b.no) && (b.no + a.yes)", "rec x.(a.x + b.no) || rec y.(b.y + a.yes)"] {
        let m = parse_monitor(src, &al)?;
        let aut = MonitorAutomata::new(&m, &al)?;
        println!("{m}");
        println!("  accept: {:?}", aut.accept_sizes);
        println!("  reject: {:?}", aut.reject_sizes);
        let r = parallel_to_regular(&m, &al)?;
        println!("  regular: {r}");
        println!("  equivalent: {}", verdict_equivalent(&m, &r, &al, EquivMode::Exact)?);
    }
    Ok(())
}
