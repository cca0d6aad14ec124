use pdq_core::{fixtures, idealops, parse, Ideal};
fn main() {
    let (j, spec) = fixtures::load_fixture("A.2").unwrap();
    let ring = j.ring().clone();
    let alpha: Vec<_> = spec.link_alpha.as_ref().unwrap().iter()
        .map(|s| parse::parse_poly(&ring, s).unwrap()).collect();
    let link = idealops::link(&j, &alpha).unwrap();
    println!("computed GB:");
    for g in link.gb().unwrap().generators() {
        println!("  {}", parse::poly_to_string(g));
    }
    let expected = Ideal::new(&ring, spec.link_result.as_ref().unwrap().iter()
        .map(|s| parse::parse_poly(&ring, s).unwrap()).collect()).unwrap();
    println!("expected GB:");
    for g in expected.gb().unwrap().generators() {
        println!("  {}", parse::poly_to_string(g));
    }
    println!("expected subset of computed: {}", link.contains_ideal(&expected).unwrap());
    println!("computed subset of expected: {}", expected.contains_ideal(&link).unwrap());
}
