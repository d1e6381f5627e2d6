//! Runs every acceptance criterion and prints one PASS/FAIL line each.

fn main() {
    let only: Vec<u8> = std::env::var("QTURAN_ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect())
        .unwrap_or_default();
    let outcomes = qturan::acceptance::run(&only, 0, |o| println!("{o}"));
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
