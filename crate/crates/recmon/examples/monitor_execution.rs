use recmon::engine::{is_reactive, reach, verdict_table, weak_after, Stepper};
use recmon::syntax::{parse_monitor, Action, Alphabet, Label};

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b")?;
    let m = parse_monitor("rec x.(a.x + b.yes)", &al)?;
    for n in Stepper::new().step(&m, &Label::Tau) {
        println!("{m} --tau--> {n}");
    }
    let ab = [Action::new("a"), Action::new("b")];
    let after: Vec<String> = weak_after(&m, &ab)?.iter().map(|n| n.to_string()).collect();
    println!("after a.b: {}", after.join(", "));
    println!("reactive: {}, reachable states: {}", is_reactive(&m, &al)?, reach(&m, &al)?.len());

    let par = parse_monitor("(a.yes + b.no) && (b.no + a.yes)", &al)?;
    for row in verdict_table(&par, &al, 2)? {
        let t: Vec<&str> = row.trace.iter().map(|a| a.name()).collect();
        println!("{:>4}  accepts={} rejects={}", t.join("."), row.accepts, row.rejects);
    }
    Ok(())
}
