use recmon::selftest::{run, SelftestConfig};

// A reduced sweep; `cargo test --test acceptance` runs the full one.
fn main() {
    let config = SelftestConfig {
        formula_ops: 2,
        random_formulas: 60,
        lasso_bound: 4,
        finite_bound: 4,
        lts_states: 2,
        lemma_instances: 500,
        random_monitors: 40,
        ..SelftestConfig::default()
    };
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    for r in run(config, &only) {
        println!("{}", r.line());
    }
}
