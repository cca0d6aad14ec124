use pdq_core::{idealops, resolve, Ideal, Ring};
fn main() {
    let r = Ring::default_with_vars(&["a", "b", "c", "d", "x", "y", "z"]);
    let t = std::time::Instant::now();
    let i3 = Ideal::from_strs(&r, &["x^2", "y^2", "z^2", "a*x+b*y+c*z"]).unwrap();
    println!(
        "I_3: ht {} pd {} e {} [{} ms]",
        idealops::height(&i3).unwrap(),
        resolve::projective_dimension(&i3).unwrap(),
        idealops::multiplicity(&i3).unwrap(),
        t.elapsed().as_millis()
    );
    let t = std::time::Instant::now();
    let i2 = Ideal::from_strs(&r, &["x^2", "y^2", "a*x+b*y", "c*x+d*y"]).unwrap();
    println!(
        "I_2: ht {} pd {} [{} ms]",
        idealops::height(&i2).unwrap(),
        resolve::projective_dimension(&i2).unwrap(),
        t.elapsed().as_millis()
    );
    // section-9 example: 4 quadrics needing all 7 variables
    let t = std::time::Instant::now();
    let i = Ideal::from_strs(&r, &["a*x+y^2", "b*x+y*z", "c*x+z^2", "d*x"]).unwrap();
    println!(
        "ex9: ht {} pd {} [{} ms]",
        idealops::height(&i).unwrap(),
        resolve::projective_dimension(&i).unwrap(),
        t.elapsed().as_millis()
    );
}
