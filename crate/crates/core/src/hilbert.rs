//! Hilbert series numerators and multiplicities via the monomial initial
//! ideal: pivot-variable splitting on 0 -> S/(M:x) -> S/M -> S/(M+(x)) -> 0.
//!
//! The other route to the same numerator (alternating sums of graded Betti
//! numbers) lives in `resolve`; the two are cross-checked in tests.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;

/// Hilbert series data of S/I: the numerator N with
/// HS = N(t)/(1-t)^n, the codimension c, and the reduced numerator Q with
/// N = (1-t)^c Q. The multiplicity is Q(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub numerator: Vec<i64>,
    pub nvars: usize,
    pub codim: usize,
    pub reduced_numerator: Vec<i64>,
    pub multiplicity: i64,
}

impl HilbertData {
    pub fn from_parts(numerator: Vec<i64>, nvars: usize, codim: usize) -> Result<Self> {
        let mut q = trim(numerator.clone());
        for _ in 0..codim {
            q = divide_by_one_minus_t(&q)?;
        }
        let multiplicity: i64 = q.iter().sum();
        Ok(HilbertData {
            numerator: trim(numerator),
            nvars,
            codim,
            reduced_numerator: q,
            multiplicity,
        })
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Exact division by (1 - t); errors if not divisible.
fn divide_by_one_minus_t(n: &[i64]) -> Result<Vec<i64>> {
    // n(t) = (1-t) q(t)  =>  q_k = sum_{i<=k} n_i, with total sum 0
    if n.is_empty() {
        return Ok(Vec::new());
    }
    let mut q = Vec::with_capacity(n.len().saturating_sub(1));
    let mut acc = 0i64;
    for (k, &c) in n.iter().enumerate() {
        acc += c;
        if k < n.len() - 1 {
            q.push(acc);
        }
    }
    if acc != 0 {
        return Err(Error::Invalid(
            "Hilbert numerator not divisible by (1-t)".into(),
        ));
    }
    Ok(trim(q))
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Keep only divisibility-minimal monomials.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|k| k.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Hilbert numerator of S/M for a monomial ideal M, over (1-t)^n.
pub fn monomial_numerator(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    // pairwise coprime: product of (1 - t^deg)
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b)));
    if coprime {
        let mut acc = vec![1i64];
        for m in &gens {
            let mut f = vec![0i64; m.degree() as usize + 1];
            f[0] = 1;
            f[m.degree() as usize] = -1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // pivot: the variable hitting the most generator supports
    let mut counts = vec![0usize; nvars];
    for m in &gens {
        for (v, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                counts[v] += 1;
            }
        }
    }
    let pivot = (0..nvars).max_by_key(|&v| counts[v]).unwrap();
    debug_assert!(counts[pivot] >= 2);

    // M + (x): generators not divisible by x, plus x itself
    let mut plus: Vec<Monomial> = gens
        .iter()
        .filter(|m| m.exp(pivot) == 0)
        .cloned()
        .collect();
    plus.push(Monomial::var(nvars, pivot));
    // M : x: decrement the pivot exponent where present
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            if m.exp(pivot) > 0 {
                Monomial::var(nvars, pivot).div(m)
            } else {
                m.clone()
            }
        })
        .collect();

    let np = monomial_numerator(plus, nvars);
    let nc = monomial_numerator(colon, nvars);
    // N = N_plus + t * N_colon
    let mut out = vec![0i64; np.len().max(nc.len() + 1)];
    for (i, &c) in np.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in nc.iter().enumerate() {
        out[i + 1] += c;
    }
    trim(out)
}

/// Hilbert data of S/I computed on the grevlex initial ideal.
pub fn hilbert_from_initial(i: &Ideal) -> Result<HilbertData> {
    let n = i.ring().nvars();
    let leads = i.initial_monomials(MonomialOrder::Grevlex)?;
    let numerator = monomial_numerator(leads.clone(), n);
    let codim = crate::idealops::monomial_height(&leads, n);
    HilbertData::from_parts(numerator, n, codim)
}

/// Multiplicity e(S/I) = Q(1); 0 for the unit ideal.
pub fn multiplicity(i: &Ideal) -> Result<i64> {
    Ok(hilbert_from_initial(i)?.multiplicity)
}
