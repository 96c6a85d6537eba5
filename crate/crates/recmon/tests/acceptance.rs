use recmon::selftest::{run, SelftestConfig};
use std::process::ExitCode;

fn main() -> ExitCode {
    let reports = run(SelftestConfig::default(), &[]);
    for r in &reports {
        println!("{}", r.line());
        for n in &r.notes {
            println!("    note: {n}");
        }
        for e in &r.examples {
            println!("    failure: {e}");
        }
    }
    let ids: Vec<u8> = reports.iter().map(|r| r.id).collect();
    if ids != (1..=8).collect::<Vec<u8>>() {
        println!("missing criteria: ran {ids:?}");
        return ExitCode::FAILURE;
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("acceptance: {} of {} criteria passed", reports.len() - failed, reports.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
