//! Sparse multivariate polynomials with exact F_p coefficients.
//!
//! Terms are stored sorted strictly descending under grevlex (the canonical
//! storage order); other orders locate leading terms by scan. Polynomials are
//! immutable after construction and freely shareable across threads.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::ring::{same_ring, Ring};
use std::cmp::Ordering;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    /// (coefficient, monomial), coefficients nonzero, grevlex-descending.
    terms: Vec<(u64, Monomial)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: u64) -> Self {
        let c = ring.field().reduce_u64(c);
        let mut terms = Vec::new();
        if c != 0 {
            terms.push((c, Monomial::one(ring.nvars())));
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(1, Monomial::var(ring.nvars(), i))],
        }
    }

    pub fn monomial_term(ring: &Arc<Ring>, c: u64, m: Monomial) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let c = ring.field().reduce_u64(c);
        let mut terms = Vec::new();
        if c != 0 {
            terms.push((c, m));
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary (coefficient, monomial) pairs; sorts, merges
    /// duplicates, and drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, mut raw: Vec<(u64, Monomial)>) -> Self {
        let f = *ring.field();
        for (c, m) in raw.iter() {
            debug_assert_eq!(m.nvars(), ring.nvars());
            debug_assert!(*c < f.modulus());
        }
        raw.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.1, &a.1));
        let mut terms: Vec<(u64, Monomial)> = Vec::with_capacity(raw.len());
        for (c, m) in raw {
            match terms.last_mut() {
                Some(last) if last.1 == m => last.0 = f.add(last.0, c),
                _ => terms.push((c, m)),
            }
        }
        terms.retain(|(c, _)| *c != 0);
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[(u64, Monomial)] {
        &self.terms
    }

    #[inline]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u16> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    /// `Some(d)` when every term has total degree `d` (zero counts as
    /// homogeneous of undefined degree and returns `None`).
    pub fn homogeneous_degree(&self) -> Option<u16> {
        let d = self.terms.first()?.1.degree();
        self.terms
            .iter()
            .all(|(_, m)| m.degree() == d)
            .then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(_, m)| m.is_one())
    }

    /// The nonzero constant value if this is a nonzero constant.
    pub fn constant_value(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [(c, m)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    /// The order-maximal term.
    pub fn leading_term(&self, ord: MonomialOrder) -> Result<(u64, &Monomial)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if ord == MonomialOrder::Grevlex {
            let (c, m) = &self.terms[0];
            return Ok((*c, m));
        }
        let mut best = &self.terms[0];
        for t in &self.terms[1..] {
            if ord.cmp(&t.1, &best.1) == Ordering::Greater {
                best = t;
            }
        }
        Ok((best.0, &best.1))
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let f = *self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ca, ma) = &self.terms[i];
            let (cb, mb) = &other.terms[j];
            match MonomialOrder::Grevlex.cmp(ma, mb) {
                Ordering::Greater => {
                    terms.push((*ca, ma.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((*cb, mb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(*ca, *cb);
                    if c != 0 {
                        terms.push((c, ma.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (f.neg(*c), m.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let f = self.ring.field();
        let c = f.reduce_u64(c);
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, m)| (f.mul(*a, c), m.clone()))
                .collect(),
        }
    }

    /// Multiply by the single term c * m.
    pub fn mul_term(&self, c: u64, m: &Monomial) -> Polynomial {
        let f = self.ring.field();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        // multiplying every monomial by a fixed one preserves grevlex order
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, t)| (f.mul(*a, c), t.mul(m)))
                .collect(),
        }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for (c, m) in &small.terms {
            acc = acc.checked_add(&large.mul_term(*c, m))?;
        }
        Ok(acc)
    }

    /// Scale so the leading coefficient under `ord` is 1.
    pub fn monic(&self, ord: MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Ok((c, _)) if c != 1 => self.scale(self.ring.field().inv(c)),
            _ => self.clone(),
        }
    }

    /// Exact division by a nonzero polynomial; error when not divisible.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &divisor.ring) {
            return Err(Error::RingMismatch);
        }
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = *self.ring.field();
        let ord = MonomialOrder::Grevlex;
        let (dc, dm) = divisor.leading_term(ord).unwrap();
        let dm = dm.clone();
        let dc_inv = f.inv(dc);
        let mut rem = self.clone();
        let mut quo: Vec<(u64, Monomial)> = Vec::new();
        while !rem.is_zero() {
            let (rc, rm) = rem.leading_term(ord).unwrap();
            if !dm.divides(rm) {
                return Err(Error::Invalid("exact division has a remainder".into()));
            }
            let qc = f.mul(rc, dc_inv);
            let qm = dm.div(rm);
            rem = rem.checked_sub(&divisor.mul_term(qc, &qm))?;
            quo.push((qc, qm));
        }
        Ok(Polynomial::from_terms(&self.ring, quo))
    }

    /// Evaluate at a full point (one value per variable).
    pub fn eval(&self, point: &[u64]) -> u64 {
        let f = self.ring.field();
        debug_assert_eq!(point.len(), self.ring.nvars());
        let mut acc = 0u64;
        for (c, m) in &self.terms {
            let mut v = *c;
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v = f.mul(v, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Map into another ring by variable name. Every variable that actually
    /// occurs must exist in the target; unused ones may be absent, so this
    /// serves both extension and restriction.
    pub fn lift_to(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if target.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                let mut exps = vec![0u32; target.nvars()];
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        let Some(j) = map[i] else {
                            return Err(Error::Invalid(format!(
                                "variable {} missing in target ring",
                                self.ring.vars()[i]
                            )));
                        };
                        exps[j] = e as u32;
                    }
                }
                Ok((*c, Monomial::from_exps(&exps)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Split into homogeneous graded pieces, highest degree first.
    pub fn homogeneous_components(&self) -> Vec<Polynomial> {
        let mut by_degree: std::collections::BTreeMap<u16, Vec<(u64, Monomial)>> =
            std::collections::BTreeMap::new();
        for (c, m) in &self.terms {
            by_degree
                .entry(m.degree())
                .or_default()
                .push((*c, m.clone()));
        }
        by_degree
            .into_values()
            .rev()
            .map(|terms| Polynomial::from_terms(&self.ring, terms))
            .collect()
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring3() -> Arc<Ring> {
        Ring::default_with_vars(&["x", "y", "z"])
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let r = ring3();
        let x = p(&r, "x");
        assert!(x.checked_add(&x.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_merges() {
        let r = ring3();
        let got = p(&r, "x^2+y^2").checked_add(&p(&r, "y^2")).unwrap();
        assert_eq!(got, p(&r, "x^2+2*y^2"));
    }

    #[test]
    fn char_two_cancellation() {
        let f2 = crate::field::PrimeField::new(2).unwrap();
        let r = Ring::new(f2, vec!["y".into()]).unwrap();
        let y2 = p(&r, "y^2");
        assert!(y2.checked_add(&y2).unwrap().is_zero());
    }

    #[test]
    fn product_difference_of_squares() {
        let r = ring3();
        let got = p(&r, "x+y").checked_mul(&p(&r, "x-y")).unwrap();
        assert_eq!(got, p(&r, "x^2-y^2"));
    }

    #[test]
    fn product_with_zero() {
        let r = ring3();
        let z = Polynomial::zero(&r);
        assert!(p(&r, "x+y").checked_mul(&z).unwrap().is_zero());
    }

    #[test]
    fn product_linear_times_var() {
        let r = Ring::default_with_vars(&["a", "b", "x", "y"]);
        let got = p(&r, "a*x+b*y").checked_mul(&p(&r, "x")).unwrap();
        assert_eq!(got, p(&r, "a*x^2+b*x*y"));
    }

    #[test]
    fn product_degree_adds() {
        let r = ring3();
        let f = p(&r, "x^2+y*z");
        let g = p(&r, "x+z");
        let fg = f.checked_mul(&g).unwrap();
        assert_eq!(
            fg.homogeneous_degree().unwrap(),
            f.homogeneous_degree().unwrap() + g.homogeneous_degree().unwrap()
        );
    }

    #[test]
    fn ring_mismatch_detected() {
        let r1 = ring3();
        let r2 = Ring::default_with_vars(&["u", "v"]);
        assert_eq!(
            p(&r1, "x").checked_add(&p(&r2, "u")),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn leading_terms() {
        let r = ring3();
        // grevlex: x^2 beats xy
        let f = p(&r, "x^2+x*y");
        assert_eq!(
            f.leading_term(MonomialOrder::Grevlex).unwrap().1,
            &Monomial::from_exps(&[2, 0, 0]).unwrap()
        );
        // lex ignores degree: x beats y^3
        let g = p(&r, "y^3+x");
        assert_eq!(
            g.leading_term(MonomialOrder::Lex).unwrap().1,
            &Monomial::from_exps(&[1, 0, 0]).unwrap()
        );
        // grevlex tie-break on equal degree: xy beats z^2
        let h = p(&r, "x*y+z^2");
        assert_eq!(
            h.leading_term(MonomialOrder::Grevlex).unwrap().1,
            &Monomial::from_exps(&[1, 1, 0]).unwrap()
        );
        assert_eq!(
            Polynomial::zero(&r).leading_term(MonomialOrder::Grevlex),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn exact_division() {
        let r = ring3();
        let f = p(&r, "x^2*y+x*y^2");
        let q = f.exact_div(&p(&r, "x*y")).unwrap();
        assert_eq!(q, p(&r, "x+y"));
        assert!(p(&r, "x^2+y").exact_div(&p(&r, "x")).is_err());
    }

    #[test]
    fn normalization_idempotent() {
        let r = ring3();
        let f = p(&r, "3*x*y+z^2-x*y");
        let rebuilt = Polynomial::from_terms(&r, f.terms().to_vec());
        assert_eq!(f, rebuilt);
    }
}
