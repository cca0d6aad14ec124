//! Monomial orders: graded reverse lexicographic, lexicographic, and block
//! elimination orders.

use crate::monomial::Monomial;
use std::cmp::Ordering;

/// A term order on monomials of a fixed ring. Variables are always compared
/// in ring order: earlier variables are larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonomialOrder {
    /// Degree first, ties by reverse lexicography (the default).
    Grevlex,
    /// Pure lexicographic; ignores total degree.
    Lex,
    /// Eliminates the first `b` variables: any monomial involving one of them
    /// exceeds every monomial that involves none. Grevlex within each block.
    Elimination(u32),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match *self {
            MonomialOrder::Grevlex => grevlex(a.exps(), b.exps(), a.degree(), b.degree()),
            MonomialOrder::Lex => lex(a.exps(), b.exps()),
            MonomialOrder::Elimination(bsz) => {
                let k = (bsz as usize).min(a.nvars());
                let (a1, a2) = a.exps().split_at(k);
                let (b1, b2) = b.exps().split_at(k);
                let d = |s: &[u8]| s.iter().map(|&e| e as u16).sum::<u16>();
                grevlex(a1, b1, d(a1), d(b1)).then_with(|| grevlex(a2, b2, d(a2), d(b2)))
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

fn grevlex(a: &[u8], b: &[u8], da: u16, db: u16) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    // rightmost differing exponent: smaller wins
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn lex(a: &[u8], b: &[u8]) -> Ordering {
    for i in 0..a.len() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}
