//! Power products with packed u8 exponents and a cached total degree.

use crate::error::{Error, Result};
use smallvec::SmallVec;

/// Total-degree cap; every fixture stays far below this.
pub const DEGREE_CAP: u32 = 255;

type Exps = SmallVec<[u8; 12]>;

/// A monomial in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    deg: u16,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Result<Self> {
        let mut deg = 0u32;
        let mut packed = Exps::with_capacity(exps.len());
        for &e in exps {
            deg += e;
            if e > DEGREE_CAP || deg > DEGREE_CAP {
                return Err(Error::DegreeOverflow { cap: DEGREE_CAP });
            }
            packed.push(e as u8);
        }
        Ok(Monomial {
            exps: packed,
            deg: deg as u16,
        })
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u16 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u8 {
        self.exps[i]
    }

    #[inline]
    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let deg = self.deg as u32 + other.deg as u32;
        if deg > DEGREE_CAP {
            return Err(Error::DegreeOverflow { cap: DEGREE_CAP });
        }
        let mut exps = Exps::with_capacity(self.exps.len());
        for i in 0..self.exps.len() {
            exps.push(self.exps[i] + other.exps[i]);
        }
        Ok(Monomial {
            exps,
            deg: deg as u16,
        })
    }

    /// Product, panicking on overflow (internal hot path; the cap is checked
    /// at ideal-construction and S-pair boundaries).
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("monomial degree overflow")
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| a <= b)
    }

    /// other / self; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut exps = Exps::with_capacity(self.exps.len());
        for i in 0..self.exps.len() {
            exps.push(other.exps[i] - self.exps[i]);
        }
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = Exps::with_capacity(self.exps.len());
        let mut deg = 0u32;
        for i in 0..self.exps.len() {
            let e = self.exps[i].max(other.exps[i]);
            deg += e as u32;
            exps.push(e);
        }
        Monomial {
            exps,
            deg: deg as u16,
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u32) -> Result<Monomial> {
        let mut exps: Vec<u32> = Vec::with_capacity(self.exps.len());
        for &x in &self.exps {
            exps.push(x as u32 * e);
        }
        Monomial::from_exps(&exps)
    }

    /// Variables with nonzero exponent, as a bitmask (nvars <= 64 here).
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << i;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_cached() {
        let m = Monomial::from_exps(&[2, 0, 3]).unwrap();
        assert_eq!(m.degree(), 5);
        assert_eq!(m.exps(), &[2, 0, 3]);
    }

    #[test]
    fn overflow_rejected() {
        assert!(Monomial::from_exps(&[200, 100]).is_err());
        let m = Monomial::from_exps(&[200]).unwrap();
        assert!(m.try_mul(&m).is_err());
    }

    #[test]
    fn div_lcm() {
        let a = Monomial::from_exps(&[1, 2]).unwrap();
        let b = Monomial::from_exps(&[2, 2]).unwrap();
        assert!(a.divides(&b));
        assert_eq!(a.div(&b), Monomial::from_exps(&[1, 0]).unwrap());
        assert_eq!(a.lcm(&b), b);
        assert!(!b.divides(&a));
    }
}
