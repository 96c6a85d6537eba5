use recmon::syntax::{classify, parse_formula, parse_monitor, Alphabet};

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b")?;
    for src in ["[a][a]ff", "max X.([b]X & [a]X)", "min X.(<a>tt | <b>X)", "<a>tt until <b>tt"] {
        let f = parse_formula(src, &al)?;
        let fr = classify(&f);
        println!("{f}");
        println!("  hml={} ltmu_s={} ltmu_c={} shml={} chml={}", fr.hml, fr.ltmu_s, fr.ltmu_c, fr.shml, fr.chml);
        println!("  length={} depth={} ms={}", f.length(), f.modal_depth(), f.ms());
    }
    let m = parse_monitor("rec x.(a.x + b.yes)", &al)?;
    println!("{m}: regular={} deterministic={} size={}", m.is_regular(), m.is_syntactically_deterministic(), m.state_size());
    if let Err(e) = parse_formula("max X.(X & [a]X)", &al) {
        println!("rejected: {e}");
    }
    Ok(())
}
