use recmon::normalize::no_rec;
use recmon::synthesis::{extract_complete_formula, formula_from_monitor, red};
use recmon::syntax::{parse_monitor, Alphabet};

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b")?;
    let m = parse_monitor("a.yes + b.no", &al)?;
    println!("{m}  =>  {}", formula_from_monitor(&m, &al)?);
    println!("red({m}) = {}", red(&m, &al));

    for src in ["rec x.(a.(a.no + b.yes) + b.yes)", "rec x.(a.(a.no + b.x) + b.yes)"] {
        let r = parse_monitor(src, &al)?;
        match no_rec(&r, &al) {
            Ok(n) => println!("{r} unfolds to {n}"),
            Err(e) => println!("{r}: {e}"),
        }
    }
    let p = parse_monitor("(a.yes + b.no) && (b.no + a.yes)", &al)?;
    println!("{p}  =>  {}", extract_complete_formula(&p, &al)?);
    Ok(())
}
