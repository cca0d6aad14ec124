use pdq_core::{fixtures, resolve};
fn main() {
    let (j, _) = fixtures::load_fixture("A.11").unwrap();
    let t = std::time::Instant::now();
    let res = resolve::free_resolution(&j).unwrap();
    println!("resolution in {} ms, ranks {:?}", t.elapsed().as_millis(), res.ranks());
    let betti = resolve::BettiTable::from_complex(&res);
    println!("{}", betti.grid_string());
    for jj in 1..=res.length() {
        let d = res.differential(jj);
        let nonzero: usize = d.entries().iter().flatten().filter(|e| !e.is_zero()).count();
        let maxdeg: u16 = d.entries().iter().flatten().filter_map(|e| e.degree()).max().unwrap_or(0);
        println!("d_{jj}: {}x{} nonzero {} maxdeg {}", d.rows(), d.cols(), nonzero, maxdeg);
    }
}
