use recmon::semantics::{distinct_lassos, eval_linear};
use recmon::synthesis::{synth_partial, Mode};
use recmon::syntax::{parse_formula, Alphabet};
use recmon::transform::MonitorAutomata;

fn main() -> recmon::Result<()> {
    let al = Alphabet::parse("a,b")?;
    let cases = [("max X.([a]X & [b]ff)", Mode::Violation), ("min X.(<b>tt | <a>X)", Mode::Satisfaction)];
    for (src, mode) in cases {
        let f = parse_formula(src, &al)?;
        let m = synth_partial(&f, &al, mode)?;
        println!("{f} ({mode:?})  =>  {m}");
        let aut = MonitorAutomata::new(&m, &al)?;
        for t in distinct_lassos(&al, 3) {
            println!("  {t:<8} holds={:<5} verdict={:?}", eval_linear(&f, &t)?, aut.lasso_verdict(&t)?);
        }
    }
    Ok(())
}
