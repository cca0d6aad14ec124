//! Ideal-theoretic operations: sums, intersections, quotients, height,
//! regular sequences, linkage, unmixed parts, minors ideals, the 2x3
//! linear-matrix classification, and primariness certificates.

use crate::error::{Error, Result};
use crate::groebner::{buchberger_raw, Ideal, INHOMOGENEOUS_DEGREE_CAP};
use crate::hilbert;
use crate::matrix::{minor_det, numeric_rank, subsets};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Attempt budget for randomized regular-sequence search.
pub const REGULAR_SEQUENCE_BUDGET: usize = 50;
/// Power cap for radical membership tests.
pub const RADICAL_POWER_CAP: u32 = 12;

/// Three independent linear forms cutting out a height-3 linear prime.
#[derive(Debug, Clone)]
pub struct LinearPrime {
    gens: [Polynomial; 3],
}

impl LinearPrime {
    pub fn new(gens: [Polynomial; 3]) -> Result<Self> {
        let ring = gens[0].ring().clone();
        for g in &gens {
            if !same_ring(&ring, g.ring()) {
                return Err(Error::RingMismatch);
            }
            if g.homogeneous_degree() != Some(1) {
                return Err(Error::Invalid("linear prime generators must be linear".into()));
            }
        }
        // independence: the coefficient matrix over the variables has rank 3
        let field = *ring.field();
        let mut rows = Vec::new();
        for g in &gens {
            let mut row = vec![0u64; ring.nvars()];
            for (c, m) in g.terms() {
                let v = m.exps().iter().position(|&e| e == 1).unwrap();
                row[v] = *c;
            }
            rows.push(row);
        }
        if numeric_rank(&field, rows) != 3 {
            return Err(Error::Invalid("linear forms are dependent".into()));
        }
        Ok(LinearPrime { gens })
    }

    pub fn gens(&self) -> &[Polynomial; 3] {
        &self.gens
    }

    pub fn as_ideal(&self) -> Ideal {
        Ideal::new(self.gens[0].ring(), self.gens.to_vec()).unwrap()
    }
}

/// A matrix whose entries are linear forms or zero.
#[derive(Debug, Clone)]
pub struct LinearMatrix {
    ring: Arc<Ring>,
    entries: Vec<Vec<Polynomial>>,
}

impl LinearMatrix {
    pub fn new(ring: &Arc<Ring>, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = entries.first().map_or(0, |r| r.len());
        for row in &entries {
            if row.len() != cols {
                return Err(Error::Invalid("ragged matrix".into()));
            }
            for e in row {
                if !same_ring(ring, e.ring()) {
                    return Err(Error::RingMismatch);
                }
                if !e.is_zero() && e.homogeneous_degree() != Some(1) {
                    return Err(Error::NonLinearEntry);
                }
            }
        }
        Ok(LinearMatrix {
            ring: ring.clone(),
            entries,
        })
    }

    pub fn from_strs(ring: &Arc<Ring>, rows: &[&[&str]]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        if s.trim() == "0" {
                            Ok(Polynomial::zero(ring))
                        } else {
                            crate::parse::parse_poly(ring, s)
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LinearMatrix::new(ring, entries)
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }
}

/// Concatenated generators, lightly interreduced.
pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let mut gens: Vec<Polynomial> = a.gens().to_vec();
    gens.extend(b.gens().iter().cloned());
    Ideal::new(a.ring(), interreduce(a.ring(), gens))
}

/// Drop zero and redundant generators by reducing each against the already
/// kept ones; keeps generating sets small without a full basis computation.
fn interreduce(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let _ = ring;
    let mut sorted: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by(|a, b| {
        let (_, ma) = a.leading_term(MonomialOrder::Grevlex).unwrap();
        let (_, mb) = b.leading_term(MonomialOrder::Grevlex).unwrap();
        a.degree()
            .cmp(&b.degree())
            .then_with(|| MonomialOrder::Grevlex.cmp(ma, mb))
            .then_with(|| a.num_terms().cmp(&b.num_terms()))
    });
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in sorted {
        let r = crate::groebner::reduce_by_polys(&g, &kept, MonomialOrder::Grevlex);
        if !r.is_zero() {
            kept.push(r.monic(MonomialOrder::Grevlex));
        }
    }
    kept
}

fn fresh_tag_name(ring: &Ring) -> String {
    if ring.var_index("t").is_none() {
        return "t".to_string();
    }
    for i in 0.. {
        let name = format!("t{i}");
        if ring.var_index(&name).is_none() {
            return name;
        }
    }
    unreachable!()
}

/// I ∩ J by the one-tag elimination method: adjoin t with top block
/// priority, eliminate it from t·I + (1-t)·J. The auxiliary computation is
/// inhomogeneous and runs on the dedicated inhomogeneous path.
pub fn ideal_intersection(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring();
    if a.is_zero_ideal() || b.is_zero_ideal() {
        return Ok(Ideal::zero(ring));
    }
    let tag = fresh_tag_name(ring);
    let ext = ring.prepend_vars(&[&tag])?;
    let t = Polynomial::var(&ext, 0);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens: Vec<Polynomial> = Vec::new();
    for f in a.gens() {
        gens.push(&t * &f.lift_to(&ext)?);
    }
    for g in b.gens() {
        gens.push(&one_minus_t * &g.lift_to(&ext)?);
    }
    let gb = buchberger_raw(
        &ext,
        &gens,
        MonomialOrder::Elimination(1),
        INHOMOGENEOUS_DEGREE_CAP,
    )?;
    let mut out: Vec<Polynomial> = Vec::new();
    for g in gb {
        if g.terms().iter().all(|(_, m)| m.exp(0) == 0) {
            let back = g.lift_to(ring)?;
            // elements of a homogeneous ideal need not be homogeneous
            // individually; their graded pieces still lie in it
            out.extend(back.homogeneous_components());
        }
    }
    Ideal::new(ring, interreduce(ring, out))
}

/// I : g = (I ∩ (g)) / g, generator-wise.
pub fn quotient_by_poly(a: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if !same_ring(a.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        // I : 0 = S
        return Ideal::new(a.ring(), vec![Polynomial::one(a.ring())]);
    }
    let principal = Ideal::new(a.ring(), vec![g.clone()])?;
    let inter = ideal_intersection(a, &principal)?;
    let gens = inter
        .gens()
        .iter()
        .map(|f| f.exact_div(g))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(a.ring(), gens)
}

/// I : J = ∩_g (I : g) over the generators of J.
pub fn ideal_quotient(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    if b.is_zero_ideal() {
        return Ideal::new(a.ring(), vec![Polynomial::one(a.ring())]);
    }
    let mut acc: Option<Ideal> = None;
    for g in b.gens() {
        let q = quotient_by_poly(a, g)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => ideal_intersection(&prev, &q)?,
        });
    }
    Ok(acc.unwrap())
}

/// Smallest vertex cover of the generator supports: the height of a
/// monomial ideal.
pub fn monomial_height(gens: &[Monomial], nvars: usize) -> usize {
    let mut masks: Vec<u64> = gens.iter().map(|m| m.support_mask()).collect();
    masks.retain(|&m| m != 0);
    if gens.iter().any(|m| m.is_one()) {
        return nvars; // unit ideal convention
    }
    // drop supersets
    masks.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for m in masks {
        if !minimal.iter().any(|&k| m & k == k) {
            minimal.push(m);
        }
    }
    let mut best = usize::MAX;
    fn go(masks: &[u64], chosen: usize, best: &mut usize) {
        if chosen >= *best {
            return;
        }
        let Some(&first) = masks.iter().min_by_key(|m| m.count_ones()) else {
            *best = chosen;
            return;
        };
        let mut bits = first;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let rest: Vec<u64> = masks
                .iter()
                .copied()
                .filter(|m| m & (1 << v) == 0)
                .collect();
            go(&rest, chosen + 1, best);
        }
    }
    go(&minimal, 0, &mut best);
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// Krull dimension of S/I, computed on the monomial initial ideal.
/// Unit ideal: dimension 0 (and height = nvars) by convention.
pub fn dimension(i: &Ideal) -> Result<usize> {
    Ok(i.ring().nvars() - height(i)?)
}

/// height(I) = n - dim(S/I).
pub fn height(i: &Ideal) -> Result<usize> {
    if i.is_zero_ideal() {
        return Ok(0);
    }
    let leads = i.initial_monomials(MonomialOrder::Grevlex)?;
    Ok(monomial_height(&leads, i.ring().nvars()))
}

/// Multiplicity e(S/I) via the initial-ideal Hilbert recursion.
pub fn multiplicity(i: &Ideal) -> Result<i64> {
    hilbert::multiplicity(i)
}

/// Select g homogeneous elements of I generating a height-g ideal: for
/// homogeneous ideals height = length certifies a regular sequence.
/// Candidates are generators (ascending degree) and then seeded random
/// same-degree combinations of generators.
pub fn find_regular_sequence(
    i: &Ideal,
    g: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Polynomial>> {
    let h = height(i)?;
    if h < g {
        return Err(Error::NoRegularSequence {
            wanted: g,
            budget: 0,
        });
    }
    let ring = i.ring();
    let mut gens: Vec<Polynomial> = i.gens().to_vec();
    gens.sort_by_key(|f| f.degree().unwrap_or(0));

    let mut seq: Vec<Polynomial> = Vec::new();
    let extends = |seq: &[Polynomial], cand: &Polynomial| -> Result<bool> {
        if cand.is_zero() {
            return Ok(false);
        }
        let mut test = seq.to_vec();
        test.push(cand.clone());
        let ht = height(&Ideal::new(ring, test)?)?;
        Ok(ht == seq.len() + 1)
    };

    for cand in &gens {
        if seq.len() == g {
            break;
        }
        if extends(&seq, cand)? {
            seq.push(cand.clone());
        }
    }

    let degrees: Vec<u16> = {
        let mut d: Vec<u16> = gens.iter().filter_map(|f| f.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    let mut attempts = 0usize;
    while seq.len() < g {
        if attempts >= REGULAR_SEQUENCE_BUDGET {
            return Err(Error::NoRegularSequence {
                wanted: g,
                budget: REGULAR_SEQUENCE_BUDGET,
            });
        }
        attempts += 1;
        let d = degrees[attempts % degrees.len()];
        let pool: Vec<&Polynomial> = gens
            .iter()
            .filter(|f| f.degree() == Some(d))
            .collect();
        if pool.is_empty() {
            continue;
        }
        let p = ring.field().modulus();
        let mut cand = Polynomial::zero(ring);
        for f in &pool {
            let c = rng.gen_range(0..p);
            cand = cand.checked_add(&f.scale(c))?;
        }
        if extends(&seq, &cand)? {
            seq.push(cand);
        }
    }
    Ok(seq)
}

/// The link (alpha) : I for a regular sequence alpha ⊆ I of length
/// height(I).
pub fn link(i: &Ideal, alpha: &[Polynomial]) -> Result<Ideal> {
    let h = height(i)?;
    if alpha.len() != h {
        return Err(Error::NotRegularSequence);
    }
    let gb = i.gb()?;
    for a in alpha {
        if !gb.contains(a)? {
            return Err(Error::Invalid("alpha is not contained in the ideal".into()));
        }
    }
    let ci = Ideal::new(i.ring(), alpha.to_vec())?;
    if height(&ci)? != alpha.len() {
        return Err(Error::NotRegularSequence);
    }
    ideal_quotient(&ci, i)
}

/// The unmixed part I^un as the double link (alpha) : ((alpha) : I).
pub fn unmixed_part(i: &Ideal, rng: &mut ChaCha8Rng) -> Result<Ideal> {
    if i.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    let h = height(i)?;
    if h == 0 {
        return Ok(i.clone());
    }
    let alpha = find_regular_sequence(i, h, rng)?;
    let ci = Ideal::new(i.ring(), alpha)?;
    let k = ideal_quotient(&ci, i)?;
    ideal_quotient(&ci, &k)
}

/// Ideal of all k x k minors.
pub fn minors_ideal(m: &LinearMatrix, k: usize) -> Result<Ideal> {
    minors_ideal_of_entries(&m.ring, m.entries(), k)
}

pub(crate) fn minors_ideal_of_entries(
    ring: &Arc<Ring>,
    entries: &[Vec<Polynomial>],
    k: usize,
) -> Result<Ideal> {
    let rows = entries.len();
    let cols = entries.first().map_or(0, |r| r.len());
    if k == 0 || k > rows.min(cols) {
        return Err(Error::MinorIndex { k, rows, cols });
    }
    let mut gens = Vec::new();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let d = minor_det(ring, entries, &rs, &cs);
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    Ideal::new(ring, interreduce(ring, gens))
}

/// Classification of a 2x3 matrix of linear forms by the height and minimal
/// generator count of its 2x2 minors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoByThreeClass {
    /// ht I2 = 1 with two independent minors (normal form has an isolated
    /// first-row entry).
    MuTwo,
    /// ht I2 = 1 with a single minor (normal form has a zero column).
    MuOne,
    /// ht I2 = 1 with three minors sharing a linear factor.
    MuThree,
    /// ht I2 = 2 and all entries lie in a two-dimensional space of linear
    /// forms (normal form rows (a b 0) / (0 a b)).
    TwoVariableEntries,
    /// ht I2 = 2 otherwise (1-generic-like); degenerate zero matrices also
    /// land here.
    Generic,
}

impl std::fmt::Display for TwoByThreeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Count of minimal generators of an ideal generated in a single degree:
/// the rank of the coefficient matrix.
fn single_degree_mu(ring: &Arc<Ring>, polys: &[Polynomial]) -> usize {
    let mut cols: std::collections::HashMap<Monomial, usize> = std::collections::HashMap::new();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for p in polys {
        for (_, m) in p.terms() {
            let next = cols.len();
            cols.entry(m.clone()).or_insert(next);
        }
    }
    for p in polys {
        let mut row = vec![0u64; cols.len()];
        for (c, m) in p.terms() {
            row[cols[m]] = *c;
        }
        rows.push(row);
    }
    numeric_rank(ring.field(), rows)
}

pub fn classify_2x3(m: &LinearMatrix) -> Result<TwoByThreeClass> {
    if m.rows() != 2 || m.cols() != 3 {
        return Err(Error::Invalid("classification requires a 2x3 matrix".into()));
    }
    let ring = &m.ring;
    let minors: Vec<Polynomial> = subsets(3, 2)
        .into_iter()
        .map(|cs| minor_det(ring, m.entries(), &[0, 1], &cs))
        .filter(|p| !p.is_zero())
        .collect();
    if minors.is_empty() {
        return Ok(TwoByThreeClass::Generic);
    }
    let i2 = Ideal::new(ring, minors.clone())?;
    let h2 = height(&i2)?;
    if h2 == 1 {
        return Ok(match single_degree_mu(ring, &minors) {
            2 => TwoByThreeClass::MuTwo,
            1 => TwoByThreeClass::MuOne,
            3 => TwoByThreeClass::MuThree,
            mu => return Err(Error::Invalid(format!("unexpected minor count {mu}"))),
        });
    }
    let entries: Vec<Polynomial> = m
        .entries()
        .iter()
        .flatten()
        .filter(|e| !e.is_zero())
        .cloned()
        .collect();
    let i1 = Ideal::new(ring, entries)?;
    if h2 == 2 && height(&i1)? == 2 {
        return Ok(TwoByThreeClass::TwoVariableEntries);
    }
    Ok(TwoByThreeClass::Generic)
}

/// Outcome of a power-capped radical membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadicalWitness {
    pub member: bool,
    /// Smallest power with f^m in I, when membership was established.
    pub power: Option<u32>,
    /// True when the test failed only because the cap was reached.
    pub cap_limited: bool,
}

/// f ∈ √I tested by successive powers f^m ∈ I, m = 1..=12. A miss at the
/// cap reports `cap_limited` rather than claiming non-membership.
pub fn radical_membership(i: &Ideal, f: &Polynomial) -> Result<RadicalWitness> {
    let gb = i.gb()?;
    let mut pow = gb.normal_form(f)?;
    if pow.is_zero() {
        return Ok(RadicalWitness {
            member: true,
            power: Some(1),
            cap_limited: false,
        });
    }
    for m in 2..=RADICAL_POWER_CAP {
        pow = gb.normal_form(&pow.checked_mul(f)?)?;
        if pow.is_zero() {
            return Ok(RadicalWitness {
                member: true,
                power: Some(m),
                cap_limited: false,
            });
        }
    }
    Ok(RadicalWitness {
        member: false,
        power: None,
        cap_limited: true,
    })
}

/// Certify that J is P-primary for the fixture shapes in scope: J ⊆ P,
/// every generator of P lies in √J, heights agree, and J equals its own
/// unmixed part.
pub fn is_primary_to(j: &Ideal, p: &Ideal, rng: &mut ChaCha8Rng) -> Result<bool> {
    if !p.contains_ideal(j)? {
        return Ok(false);
    }
    for g in p.gens() {
        if !radical_membership(j, g)?.member {
            return Ok(false);
        }
    }
    if height(j)? != height(p)? {
        return Ok(false);
    }
    let un = unmixed_part(j, rng)?;
    un.equals(j)
}

/// λ(S_P / J_P) for J primary to a linear prime P: since e(S/P) = 1 the
/// associativity formula collapses to λ = e(S/J).
pub fn component_length(j: &Ideal, p: &LinearPrime, rng: &mut ChaCha8Rng) -> Result<i64> {
    if !is_primary_to(j, &p.as_ideal(), rng)? {
        return Err(Error::Invalid(
            "component_length requires a P-primary input".into(),
        ));
    }
    multiplicity(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use rand::SeedableRng;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::default_with_vars(vars)
    }

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
        Ideal::from_strs(r, gens).unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn sums() {
        let r = ring(&["x", "y"]);
        let s = ideal_sum(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert!(s.equals(&ideal(&r, &["x", "y"])).unwrap());

        let r6 = ring(&["u", "v", "w", "x", "y", "z"]);
        let s = ideal_sum(
            &ideal(&r6, &["u", "v", "w"]),
            &ideal(&r6, &["x", "y", "z^2"]),
        )
        .unwrap();
        assert!(s.equals(&ideal(&r6, &["u", "v", "w", "x", "y", "z^2"])).unwrap());

        let i = ideal(&r, &["x^2", "x*y"]);
        let s = ideal_sum(&i, &Ideal::zero(&r)).unwrap();
        assert!(s.equals(&i).unwrap());
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y"]);
        let got = ideal_intersection(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert!(got.equals(&ideal(&r, &["x*y"])).unwrap());

        // (x,a,b) ∩ (x,c,d) = (x, ac, ad, bc, bd) with five independent
        // variables
        let r5 = ring(&["x", "a", "b", "c", "d"]);
        let got = ideal_intersection(
            &ideal(&r5, &["x", "a", "b"]),
            &ideal(&r5, &["x", "c", "d"]),
        )
        .unwrap();
        let expect = ideal(&r5, &["x", "a*c", "a*d", "b*c", "b*d"]);
        assert!(got.equals(&expect).unwrap());

        // idempotence
        let i = ideal(&r, &["x^2", "x*y"]);
        assert!(ideal_intersection(&i, &i).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn quotients() {
        let r = ring(&["x", "y"]);
        let got = ideal_quotient(&ideal(&r, &["x^2"]), &ideal(&r, &["x"])).unwrap();
        assert!(got.equals(&ideal(&r, &["x"])).unwrap());

        // I : (1) = I
        let i = ideal(&r, &["x^2", "x*y"]);
        let one = Ideal::new(&r, vec![Polynomial::one(&r)]).unwrap();
        assert!(ideal_quotient(&i, &one).unwrap().equals(&i).unwrap());

        // (x, y^2, z) : (x, y, z) = (x, y, z)
        let r3 = ring(&["x", "y", "z"]);
        let got = ideal_quotient(
            &ideal(&r3, &["x", "y^2", "z"]),
            &ideal(&r3, &["x", "y", "z"]),
        )
        .unwrap();
        assert!(got.equals(&ideal(&r3, &["x", "y", "z"])).unwrap());

        // principal-quotient duality: (I ∩ (g)) : g computed two ways
        let i = ideal(&r3, &["x^2", "y^2", "x*z"]);
        let g = parse_poly(&r3, "x").unwrap();
        let q1 = quotient_by_poly(&i, &g).unwrap();
        let q2 = ideal_quotient(&i, &Ideal::new(&r3, vec![g]).unwrap()).unwrap();
        assert!(q1.equals(&q2).unwrap());
    }

    #[test]
    fn heights() {
        let r = ring(&["x", "y", "z", "u", "v", "w"]);
        assert_eq!(height(&ideal(&r, &["x", "y", "z"])).unwrap(), 3);
        // three quadrics forming a complete intersection
        let ci = ideal(&r, &["x^2+u*v", "y^2+w*x", "z^2+u*w"]);
        assert_eq!(height(&ci).unwrap(), 3);
        assert_eq!(dimension(&ci).unwrap(), 3);
        // unit ideal: height n by convention
        let unit = Ideal::new(&r, vec![Polynomial::one(&r)]).unwrap();
        assert_eq!(height(&unit).unwrap(), 6);
        assert_eq!(height(&Ideal::zero(&r)).unwrap(), 0);
    }

    #[test]
    fn regular_sequences() {
        let r = ring(&["x", "y", "z"]);
        let mut rg = rng();
        let i = ideal(&r, &["x", "y", "z"]);
        let seq = find_regular_sequence(&i, 3, &mut rg).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(height(&Ideal::new(&r, seq).unwrap()).unwrap(), 3);

        // (x^2, xy, y^2, z^2): a height-3 sequence among the generators
        let i = ideal(&r, &["x^2", "x*y", "y^2", "z^2"]);
        let seq = find_regular_sequence(&i, 3, &mut rg).unwrap();
        let si = Ideal::new(&r, seq.clone()).unwrap();
        assert_eq!(height(&si).unwrap(), 3);
        for f in &seq {
            assert!(i.contains(f).unwrap());
        }

        // height 1 ideal cannot contain a length-2 sequence
        let bad = ideal(&r, &["x*y", "x*z"]);
        assert!(matches!(
            find_regular_sequence(&bad, 2, &mut rg),
            Err(Error::NoRegularSequence { .. })
        ));
    }

    #[test]
    fn links_and_unmixed_parts() {
        let r = ring(&["x", "y", "z"]);
        let mut rg = rng();

        // self-link of a complete intersection gives the unit ideal; the
        // double link recovers the ideal itself
        let ci = ideal(&r, &["x^2", "y^2", "z^2"]);
        let alpha: Vec<Polynomial> = ci.gens().to_vec();
        let k = link(&ci, &alpha).unwrap();
        assert!(k.is_unit().unwrap());
        let back = ideal_quotient(&Ideal::new(&r, alpha).unwrap(), &k).unwrap();
        assert!(back.equals(&ci).unwrap());

        // link errors
        let i = ideal(&r, &["x", "y^2"]);
        assert!(link(&i, &[parse_poly(&r, "z").unwrap(), parse_poly(&r, "x").unwrap()]).is_err());

        // unmixed_part(x^2, xy) = (x)
        let mixed = ideal(&r, &["x^2", "x*y"]);
        let un = unmixed_part(&mixed, &mut rg).unwrap();
        assert!(un.equals(&ideal(&r, &["x"])).unwrap());

        // an unmixed ideal is its own unmixed part; idempotence
        let j = ideal(&r, &["x", "y"]);
        let un = unmixed_part(&j, &mut rg).unwrap();
        assert!(un.equals(&j).unwrap());
        let un2 = unmixed_part(&un, &mut rg).unwrap();
        assert!(un2.equals(&un).unwrap());
    }

    #[test]
    fn containment_and_invariants_of_unmixed_part() {
        let r = ring(&["x", "y", "z", "w"]);
        let mut rg = rng();
        let i = ideal(&r, &["x^2", "x*y", "x*z^2"]);
        let un = unmixed_part(&i, &mut rg).unwrap();
        assert!(un.contains_ideal(&i).unwrap());
        assert_eq!(height(&i).unwrap(), height(&un).unwrap());
        assert_eq!(multiplicity(&i).unwrap(), multiplicity(&un).unwrap());
    }

    #[test]
    fn minors() {
        let r = ring(&["a", "d", "e", "f"]);
        let m = LinearMatrix::from_strs(&r, &[&["a", "0", "0"], &["d", "e", "f"]]).unwrap();
        let i2 = minors_ideal(&m, 2).unwrap();
        assert!(i2.equals(&ideal(&r, &["a*e", "a*f"])).unwrap());
        let i1 = minors_ideal(&m, 1).unwrap();
        assert!(i1.equals(&ideal(&r, &["a", "d", "e", "f"])).unwrap());
        assert!(minors_ideal(&m, 3).is_err());

        let r2 = ring(&["a", "b", "d"]);
        let m = LinearMatrix::from_strs(&r2, &[&["a", "b", "0"], &["d", "0", "b"]]).unwrap();
        let i2 = minors_ideal(&m, 2).unwrap();
        assert!(i2.equals(&ideal(&r2, &["b*d", "a*b", "b^2"])).unwrap());
    }

    #[test]
    fn classification() {
        let r = ring(&["a", "b", "d", "e", "f"]);
        let m = LinearMatrix::from_strs(&r, &[&["a", "0", "0"], &["d", "e", "f"]]).unwrap();
        assert_eq!(classify_2x3(&m).unwrap(), TwoByThreeClass::MuTwo);

        let m = LinearMatrix::from_strs(&r, &[&["a", "b", "0"], &["d", "e", "0"]]).unwrap();
        assert_eq!(classify_2x3(&m).unwrap(), TwoByThreeClass::MuOne);

        let m = LinearMatrix::from_strs(&r, &[&["a", "b", "0"], &["d", "0", "b"]]).unwrap();
        assert_eq!(classify_2x3(&m).unwrap(), TwoByThreeClass::MuThree);

        let m = LinearMatrix::from_strs(&r, &[&["a", "b", "0"], &["0", "a", "b"]]).unwrap();
        assert_eq!(classify_2x3(&m).unwrap(), TwoByThreeClass::TwoVariableEntries);

        // generic: rows (a, b, d) / (e, f, a)
        let m = LinearMatrix::from_strs(&r, &[&["a", "b", "d"], &["e", "f", "a"]]).unwrap();
        assert_eq!(classify_2x3(&m).unwrap(), TwoByThreeClass::Generic);
    }

    #[test]
    fn radical_and_primary() {
        let r = ring(&["x", "y", "z"]);
        let mut rg = rng();
        let i = ideal(&r, &["x^2"]);
        let w = radical_membership(&i, &parse_poly(&r, "x").unwrap()).unwrap();
        assert!(w.member);
        assert_eq!(w.power, Some(2));

        let i = ideal(&r, &["x^2", "x*y", "y^3"]);
        let w = radical_membership(&i, &parse_poly(&r, "y").unwrap()).unwrap();
        assert!(w.member);
        assert_eq!(w.power, Some(3));

        let w = radical_membership(&i, &parse_poly(&r, "z").unwrap()).unwrap();
        assert!(!w.member);
        assert!(w.cap_limited);

        // (x, y, z^2) is (x,y,z)-primary
        let j = ideal(&r, &["x", "y", "z^2"]);
        let p = ideal(&r, &["x", "y", "z"]);
        assert!(is_primary_to(&j, &p, &mut rg).unwrap());

        // (xy) is not (x)-primary
        let j = ideal(&r, &["x*y"]);
        let p = ideal(&r, &["x"]);
        assert!(!is_primary_to(&j, &p, &mut rg).unwrap());
    }

    #[test]
    fn lengths_of_linear_components() {
        let r = ring(&["x", "y", "z"]);
        let mut rg = rng();
        let p = LinearPrime::new([
            parse_poly(&r, "x").unwrap(),
            parse_poly(&r, "y").unwrap(),
            parse_poly(&r, "z").unwrap(),
        ])
        .unwrap();
        let j = ideal(&r, &["x", "y", "z^2"]);
        assert_eq!(component_length(&j, &p, &mut rg).unwrap(), 2);
        let j = ideal(&r, &["x", "y", "z"]);
        assert_eq!(component_length(&j, &p, &mut rg).unwrap(), 1);
        // precondition violation
        let j = ideal(&r, &["x*y"]);
        assert!(component_length(&j, &p, &mut rg).is_err());
    }

    #[test]
    fn linear_prime_validation() {
        let r = ring(&["x", "y", "z"]);
        assert!(LinearPrime::new([
            parse_poly(&r, "x").unwrap(),
            parse_poly(&r, "y").unwrap(),
            parse_poly(&r, "x+y").unwrap(),
        ])
        .is_err());
        assert!(LinearPrime::new([
            parse_poly(&r, "x").unwrap(),
            parse_poly(&r, "y").unwrap(),
            parse_poly(&r, "z^2").unwrap(),
        ])
        .is_err());
    }
}
