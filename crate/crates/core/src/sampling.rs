//! Random quadric sampling for the bound-checking harnesses.

use crate::error::Result;
use crate::groebner::Ideal;
use crate::matrix::numeric_rank;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// All degree-2 monomials in the ring's variables.
pub fn quadric_monomials(ring: &Arc<Ring>) -> Vec<Monomial> {
    let n = ring.nvars();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            let mut e = vec![0u32; n];
            e[a] += 1;
            e[b] += 1;
            out.push(Monomial::from_exps(&e).unwrap());
        }
    }
    out
}

/// One quadric with coefficients uniform over all degree-2 monomials.
pub fn random_quadric(ring: &Arc<Ring>, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = ring.field().modulus();
    let terms: Vec<(u64, Monomial)> = quadric_monomials(ring)
        .into_iter()
        .map(|m| (rng.gen_range(0..p), m))
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// `count` linearly independent random quadrics; dependent draws are
/// resampled.
pub fn independent_quadrics(
    ring: &Arc<Ring>,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Polynomial> {
    let monomials = quadric_monomials(ring);
    let col: std::collections::HashMap<&Monomial, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    loop {
        let quadrics: Vec<Polynomial> =
            (0..count).map(|_| random_quadric(ring, rng)).collect();
        let rows: Vec<Vec<u64>> = quadrics
            .iter()
            .map(|q| {
                let mut row = vec![0u64; monomials.len()];
                for (c, m) in q.terms() {
                    row[col[m]] = *c;
                }
                row
            })
            .collect();
        if numeric_rank(ring.field(), rows) == count {
            return quadrics;
        }
    }
}

/// An ideal of `count` independent random quadrics.
pub fn random_quadric_ideal(
    ring: &Arc<Ring>,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Ideal> {
    Ideal::new(ring, independent_quadrics(ring, count, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn independence_enforced() {
        let r = Ring::default_with_vars(&["x", "y", "z"]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let qs = independent_quadrics(&r, 4, &mut rng);
        assert_eq!(qs.len(), 4);
        for q in &qs {
            assert_eq!(q.homogeneous_degree(), Some(2));
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let r = Ring::default_with_vars(&["x", "y", "z", "w"]);
        let a = independent_quadrics(&r, 2, &mut ChaCha8Rng::seed_from_u64(9));
        let b = independent_quadrics(&r, 2, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }
}
