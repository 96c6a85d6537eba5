use recmon::semantics::{distinct_lassos, eval_linear};
use recmon::synthesis::synth_complete;
use recmon::syntax::{parse_formula, Alphabet};
use recmon::transform::lasso_verdict;

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b")?;
    for src in ["[a]ff", "<a>tt & [b]ff", "[a]([a]ff | <b>tt)"] {
        let f = parse_formula(src, &al)?;
        let m = synth_complete(&f, &al)?;
        println!("{f}  =>  {m}");
        for t in distinct_lassos(&al, 3) {
            let v = lasso_verdict(&m, &t, &al)?;
            println!("  {t:<8} holds={:<5} verdict={v:?}", eval_linear(&f, &t)?);
        }
    }
    Ok(())
}
