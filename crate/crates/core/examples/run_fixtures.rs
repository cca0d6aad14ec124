fn main() {
    let names: Vec<String> = std::env::args().skip(1).collect();
    let names = if names.is_empty() {
        pdq_core::fixtures::fixture_names().unwrap()
    } else {
        names
    };
    for name in names {
        let t = std::time::Instant::now();
        match pdq_core::fixtures::verify_fixture(&name, 7) {
            Ok(rep) => {
                let (p, f, i) = rep.counts();
                println!(
                    "{name}: {} ({p} pass, {f} fail, {i} inconclusive) [{} ms]",
                    if rep.passed() { "PASS" } else { "FAIL" },
                    t.elapsed().as_millis()
                );
                for c in rep.checks.iter().filter(|c| c.status != pdq_core::fixtures::CheckStatus::Pass) {
                    println!("   {}: claimed {} computed {} -> {}", c.name, c.claimed, c.computed, c.status);
                }
            }
            Err(e) => println!("{name}: ERROR {e}"),
        }
    }
}
