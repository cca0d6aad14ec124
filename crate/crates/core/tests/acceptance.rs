//! Acceptance suite: every criterion below is exact (integer equality or
//! a hard bound) and runs at the default budgets and seeds. One summary
//! line prints per criterion; run with `--nocapture` to see them on
//! success.
//!
//!   cargo test -p pdq-core --test acceptance -- --nocapture

use pdq_core::certify::{buchsbaum_eisenbud_check, mutate_complex, Certification};
use pdq_core::fixtures::{self, CheckStatus};
use pdq_core::idealops;
use pdq_core::resolve;
use pdq_core::sampling;
use pdq_core::{hilbert, Ideal, MonomialOrder, Polynomial, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

const SEED: u64 = 7;

/// Criterion 1: the appendix catalog verifies 18/18 with exact pd and e.
///
/// The expected table matches the printed statements, with one documented
/// correction: A.7's source statement prints e = 4 but the ideal has
/// multiplicity 3 (shown independently by localization, by a
/// characteristic-zero Hilbert-function computation, and by the statement's
/// own role in the multiplicity-3 classification); the suite asserts the
/// verified value exactly.
#[test]
fn criterion_1_appendix_suite() {
    let expected_pd_e: &[(&str, usize, i64)] = &[
        ("A.1", 4, 6),
        ("A.2", 4, 2),
        ("A.3", 5, 2),
        ("A.4", 4, 3),
        ("A.5", 3, 3),
        ("A.6", 4, 3),
        ("A.7", 4, 3), // statement prints e = 4; verified value is 3
        ("A.8", 4, 3),
        ("A.9", 4, 3),
        ("A.10", 4, 3),
        ("A.11", 5, 3),
        ("A.12", 4, 3),
        ("A.13", 3, 4),
        ("A.14", 4, 4),
        ("A.15", 4, 4),
        ("A.16", 3, 4),
    ];
    let started = std::time::Instant::now();
    let mut passed = 0;
    for (name, pd, e) in expected_pd_e {
        let t = std::time::Instant::now();
        let (ideal, spec) = fixtures::load_fixture(name).unwrap();
        assert_eq!(spec.pd, Some(*pd), "{name}: catalog pd");
        assert_eq!(spec.e, Some(*e), "{name}: catalog e");
        assert_eq!(
            resolve::projective_dimension(&ideal).unwrap(),
            *pd,
            "{name}: pd"
        );
        assert_eq!(idealops::multiplicity(&ideal).unwrap(), *e, "{name}: e");
        let report = fixtures::verify_fixture(name, SEED).unwrap();
        assert!(
            report.passed(),
            "{name}: {:?}",
            report
                .checks
                .iter()
                .filter(|c| c.status != CheckStatus::Pass)
                .collect::<Vec<_>>()
        );
        assert!(
            t.elapsed().as_secs() <= 60,
            "{name} exceeded the per-fixture budget"
        );
        passed += 1;
    }
    // A.16 certifies its non-linear primary target
    let report = fixtures::verify_fixture("A.16", SEED).unwrap();
    assert!(report
        .checks
        .iter()
        .any(|c| c.name == "primary" && c.status == CheckStatus::Pass));
    // A.2 and A.6 carry link identities
    for name in ["A.2", "A.6"] {
        let report = fixtures::verify_fixture(name, SEED).unwrap();
        assert!(
            report
                .checks
                .iter()
                .any(|c| c.name == "link_identity" && c.status == CheckStatus::Pass),
            "{name}: link identity"
        );
    }
    // A.17 and A.18: Betti ranks 1,7,11,6,1 and unmixedness
    for name in ["A.17", "A.18"] {
        let t = std::time::Instant::now();
        let (ideal, spec) = fixtures::load_fixture(name).unwrap();
        assert_eq!(spec.betti, Some(vec![1, 7, 11, 6, 1]), "{name}: catalog");
        let betti = resolve::betti_table(&ideal).unwrap();
        assert_eq!(betti.ranks(), vec![1, 7, 11, 6, 1], "{name}: betti");
        let report = fixtures::verify_fixture(name, SEED).unwrap();
        assert!(report.passed(), "{name}: {:#?}", report.checks);
        assert!(
            report
                .checks
                .iter()
                .any(|c| c.name == "unmixed" && c.status == CheckStatus::Pass),
            "{name}: unmixed"
        );
        assert!(t.elapsed().as_secs() <= 60);
        passed += 1;
    }
    assert!(
        started.elapsed().as_secs() <= 600,
        "suite exceeded ten minutes"
    );
    println!(
        "criterion 1: PASS - appendix suite {passed}/18 fixtures verified (note: A.7 e = 3, statement misprint documented) in {} ms",
        started.elapsed().as_millis()
    );
}

/// Criterion 2: the tight examples have projective dimension exactly 6
/// over F_32003 in seven variables.
#[test]
fn criterion_2_tight_examples() {
    let r = Ring::default_with_vars(&["a", "b", "c", "d", "x", "y", "z"]);
    let i3 = Ideal::from_strs(&r, &["x^2", "y^2", "z^2", "a*x+b*y+c*z"]).unwrap();
    assert_eq!(idealops::height(&i3).unwrap(), 3);
    assert_eq!(resolve::projective_dimension(&i3).unwrap(), 6);
    let i2 = Ideal::from_strs(&r, &["x^2", "y^2", "a*x+b*y", "c*x+d*y"]).unwrap();
    assert_eq!(idealops::height(&i2).unwrap(), 2);
    assert_eq!(resolve::projective_dimension(&i2).unwrap(), 6);
    println!("criterion 2: PASS - pd(S/I_3) = 6 and pd(S/I_2) = 6 exactly");
}

/// Criterion 3: 100 random independent-4-quadric ideals in 7 variables
/// violate none of the bounds.
#[test]
fn criterion_3_main_theorem_sampler() {
    let started = std::time::Instant::now();
    let r = Ring::default_with_vars(&["x0", "x1", "x2", "x3", "x4", "x5", "x6"]);
    let mut heights = [0usize; 5];
    for trial in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED.wrapping_add(trial));
        let i = sampling::random_quadric_ideal(&r, 4, &mut rng).unwrap();
        let ht = idealops::height(&i).unwrap();
        let e = idealops::multiplicity(&i).unwrap();
        let pd = resolve::projective_dimension(&i).unwrap();
        heights[ht] += 1;
        assert!(pd <= 6, "trial {trial}: pd {pd} > 6 at ht {ht}");
        if ht == 3 {
            assert!(e <= 6, "trial {trial}: ht 3 with e {e} > 6");
            if e == 6 {
                assert_eq!(pd, 3, "trial {trial}: ht 3, e 6 must be pd 3");
            }
        }
        if ht == 4 {
            assert!(pd <= 4, "trial {trial}: complete intersection pd {pd}");
        }
    }
    assert!(started.elapsed().as_secs() <= 900, "sampler exceeded budget");
    println!(
        "criterion 3: PASS - 100 trials, 0 violations (height histogram {heights:?}) in {} ms",
        started.elapsed().as_millis()
    );
}

/// Criterion 4: the transcribed explicit complexes certify, including the
/// unmixedness strengthening at j = 4; every seeded single-entry mutation
/// fails; no inconclusives.
#[test]
fn criterion_4_explicit_complexes() {
    for name in ["A.1", "A.2"] {
        let c = fixtures::explicit_complex(name).unwrap();
        c.check_complex().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        // ideal height 3: the j = 4 condition is ht >= 5
        match buchsbaum_eisenbud_check(&c, 3, &mut rng).unwrap() {
            Certification::Valid(cert) => {
                assert_eq!(cert.length, 4, "{name}: certified length");
                assert!(
                    cert.heights[3] >= 5,
                    "{name}: unmixedness strengthening at j = 4, got {}",
                    cert.heights[3]
                );
            }
            other => panic!("{name}: expected valid certificate, got {other:?}"),
        }
        // consecutive expected ranks sum to the module ranks
        let er = pdq_core::certify::expected_ranks(&c);
        let ranks = c.ranks();
        for j in 1..c.length() {
            assert_eq!(er[j - 1] + er[j], ranks[j] as i64, "{name}: rank identity");
        }
        for k in 0..5u64 {
            let mutant = mutate_complex(&c, SEED.wrapping_add(k));
            let mut rng = ChaCha8Rng::seed_from_u64(SEED);
            let rejected = match buchsbaum_eisenbud_check(&mutant, 3, &mut rng) {
                Err(_) => true,
                Ok(cert) => {
                    assert!(
                        !cert.is_inconclusive(),
                        "{name} mutant {k}: inconclusive is not an acceptable outcome"
                    );
                    !cert.is_valid()
                }
            };
            assert!(rejected, "{name} mutant {k} was not rejected");
        }
    }
    println!("criterion 4: PASS - A.1 and A.2 certify with the j=4 strengthening; 10/10 mutants rejected; no inconclusives");
}

fn random_ideal_for_cross_check(k: u64) -> Ideal {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ k);
    let nvars = 4 + (k as usize % 4); // 4..=7
    let names: Vec<String> = (0..nvars).map(|i| format!("x{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let r = Ring::default_with_vars(&name_refs);
    let gens = 2 + (k as usize % 3); // 2..=4
    sampling::random_quadric_ideal(&r, gens, &mut rng).unwrap()
}

/// Criterion 5: multiplicity via the Betti numerator equals multiplicity
/// via the initial-ideal recursion on all fixtures and 50 random ideals.
#[test]
fn criterion_5_cross_oracle_multiplicity() {
    let mut cases = 0;
    for name in fixtures::fixture_names().unwrap() {
        let (ideal, _) = fixtures::load_fixture(&name).unwrap();
        let a = resolve::hilbert_from_resolution(&ideal).unwrap();
        let b = hilbert::hilbert_from_initial(&ideal).unwrap();
        assert_eq!(a.multiplicity, b.multiplicity, "{name}: e mismatch");
        assert_eq!(a.numerator, b.numerator, "{name}: numerator mismatch");
        cases += 1;
    }
    for k in 0..50u64 {
        let i = random_ideal_for_cross_check(k);
        let a = resolve::hilbert_from_resolution(&i).unwrap();
        let b = hilbert::hilbert_from_initial(&i).unwrap();
        assert_eq!(a.multiplicity, b.multiplicity, "random {k}: e mismatch");
        assert_eq!(a.numerator, b.numerator, "random {k}: numerator mismatch");
        cases += 1;
    }
    println!("criterion 5: PASS - cross-oracle multiplicity agreement on {cases} ideals (18 fixtures + 50 random)");
}

/// Criterion 6: linkage additivity e(S/J) + e(S/K) = e(S/(alpha)) on every
/// fixture, with alpha a found maximal regular sequence (8 for three
/// quadrics, 4 for one linear plus two quadrics, exact in every case).
#[test]
fn criterion_6_linkage_additivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for name in fixtures::fixture_names().unwrap() {
        let (j, _) = fixtures::load_fixture(&name).unwrap();
        let ht = idealops::height(&j).unwrap();
        let alpha = idealops::find_regular_sequence(&j, ht, &mut rng).unwrap();
        let ci = Ideal::new(j.ring(), alpha.clone()).unwrap();
        let k = idealops::ideal_quotient(&ci, &j).unwrap();
        let e_j = idealops::multiplicity(&j).unwrap();
        let e_k = idealops::multiplicity(&k).unwrap();
        let e_ci = idealops::multiplicity(&ci).unwrap();
        assert_eq!(
            e_j + e_k,
            e_ci,
            "{name}: additivity with degrees {:?}",
            alpha
                .iter()
                .map(|f| f.degree().unwrap())
                .collect::<Vec<_>>()
        );
        // a degree product sanity check on the complete intersection
        let product: i64 = alpha
            .iter()
            .map(|f| f.degree().unwrap() as i64)
            .product();
        assert_eq!(e_ci, product, "{name}: e of a complete intersection");
        checked += 1;
    }
    println!("criterion 6: PASS - exact linkage additivity on {checked}/18 fixtures");
}

/// Criterion 7: randomized property suites, deterministic under seed.
#[test]
fn criterion_7_property_suites() {
    let mut cases = 0usize;

    // normalization idempotence and ring axioms: 1000 random triples
    {
        let names = ["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7"];
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..1000 {
            let nvars = rng.gen_range(2..=8);
            let r = Ring::default_with_vars(&names[..nvars]);
            let rand_poly = |rng: &mut ChaCha8Rng, r: &Arc<Ring>| -> Polynomial {
                let d = rng.gen_range(1..=4u16);
                let mut terms = Vec::new();
                for _ in 0..rng.gen_range(1..=6) {
                    let mut exps = vec![0u32; nvars];
                    let mut left = d;
                    for v in 0..nvars {
                        let e = rng.gen_range(0..=left);
                        exps[v] = e as u32;
                        left -= e;
                        if left == 0 {
                            break;
                        }
                    }
                    exps[0] += left as u32;
                    terms.push((
                        rng.gen_range(0..32003u64),
                        pdq_core::Monomial::from_exps(&exps).unwrap(),
                    ));
                }
                Polynomial::from_terms(r, terms)
            };
            let f = rand_poly(&mut rng, &r);
            let g = rand_poly(&mut rng, &r);
            let h = rand_poly(&mut rng, &r);
            // associativity, commutativity, distributivity
            let fg = f.checked_mul(&g).unwrap();
            assert_eq!(
                fg.checked_mul(&h).unwrap(),
                f.checked_mul(&g.checked_mul(&h).unwrap()).unwrap()
            );
            assert_eq!(fg, g.checked_mul(&f).unwrap());
            let gh = g.checked_add(&h).unwrap();
            assert_eq!(
                f.checked_mul(&gh).unwrap(),
                f.checked_mul(&g)
                    .unwrap()
                    .checked_add(&f.checked_mul(&h).unwrap())
                    .unwrap()
            );
            // normalization idempotence
            let rebuilt = Polynomial::from_terms(&r, f.terms().to_vec());
            assert_eq!(f, rebuilt);
            cases += 1;
        }
    }

    // order compatibility with multiplication on random monomial triples
    {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
        for _ in 0..1000 {
            let nvars = rng.gen_range(2..=6);
            let rand_mono = |rng: &mut ChaCha8Rng| {
                let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..4)).collect();
                pdq_core::Monomial::from_exps(&exps).unwrap()
            };
            let m1 = rand_mono(&mut rng);
            let m2 = rand_mono(&mut rng);
            let m = rand_mono(&mut rng);
            for ord in [
                MonomialOrder::Grevlex,
                MonomialOrder::Lex,
                MonomialOrder::Elimination(1),
            ] {
                assert_eq!(ord.cmp(&m1, &m2), ord.cmp(&m1.mul(&m), &m2.mul(&m)));
            }
            cases += 1;
        }
    }

    // Buchberger fixpoint on random ideals: every S-polynomial of the
    // reduced basis reduces to zero; membership holds for the inputs
    {
        for k in 0..25u64 {
            let i = random_ideal_for_cross_check(k);
            let gb = i.gb().unwrap();
            let gens = gb.generators();
            let r = i.ring();
            for a in 0..gens.len() {
                for b in a + 1..gens.len() {
                    let (ca, ma) = gens[a].leading_term(MonomialOrder::Grevlex).unwrap();
                    let (cb, mb) = gens[b].leading_term(MonomialOrder::Grevlex).unwrap();
                    let lcm = ma.lcm(mb);
                    let fa = gens[a].mul_term(r.field().inv(ca), &ma.div(&lcm));
                    let fb = gens[b].mul_term(r.field().inv(cb), &mb.div(&lcm));
                    assert!(gb.normal_form(&(&fa - &fb)).unwrap().is_zero());
                }
            }
            for g in i.gens() {
                assert!(i.contains(g).unwrap());
            }
            cases += 1;
        }
    }

    // resolution properties on random ideals: complex, minimal, pd <= n
    {
        for k in 0..25u64 {
            let i = random_ideal_for_cross_check(k + 100);
            let res = resolve::free_resolution(&i).unwrap();
            res.check_complex().unwrap();
            assert!(res.is_minimal());
            assert!(res.length() <= i.ring().nvars(), "Hilbert syzygy bound");
            cases += 1;
        }
    }

    // unmixed parts of 50 random 4-quadric ideals: containment, equal
    // height and multiplicity, idempotence
    {
        let r = Ring::default_with_vars(&["x0", "x1", "x2", "x3", "x4", "x5", "x6"]);
        for k in 0..50u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(0xab5 + k);
            let i = sampling::random_quadric_ideal(&r, 4, &mut rng).unwrap();
            let un = idealops::unmixed_part(&i, &mut rng).unwrap();
            assert!(un.contains_ideal(&i).unwrap(), "I in I^un");
            assert_eq!(
                idealops::height(&i).unwrap(),
                idealops::height(&un).unwrap()
            );
            assert_eq!(
                idealops::multiplicity(&i).unwrap(),
                idealops::multiplicity(&un).unwrap()
            );
            let un2 = idealops::unmixed_part(&un, &mut rng).unwrap();
            assert!(un2.equals(&un).unwrap(), "idempotence");
            cases += 1;
        }
    }

    assert!(cases >= 1000);
    println!("criterion 7: PASS - property suites green over {cases} randomized cases (seeded)");
}
