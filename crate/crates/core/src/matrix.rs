//! Shared helpers for matrices of polynomials: symbolic minors (sparse
//! Laplace expansion with column-mask memoization), evaluation, and numeric
//! rank over F_p.

use crate::field::PrimeField;
use crate::poly::Polynomial;
use crate::ring::Ring;
use std::collections::HashMap;
use std::sync::Arc;

/// Determinant of the square submatrix on `rows` x `cols`.
/// Expansion along rows with memoization over remaining column sets.
pub(crate) fn minor_det(
    ring: &Arc<Ring>,
    entries: &[Vec<Polynomial>],
    rows: &[usize],
    cols: &[usize],
) -> Polynomial {
    assert_eq!(rows.len(), cols.len());
    assert!(cols.len() <= 64);
    let full: u64 = if cols.len() == 64 {
        u64::MAX
    } else {
        (1u64 << cols.len()) - 1
    };
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    det_rec(ring, entries, rows, cols, 0, full, &mut memo)
}

fn det_rec(
    ring: &Arc<Ring>,
    entries: &[Vec<Polynomial>],
    rows: &[usize],
    cols: &[usize],
    i: usize,
    mask: u64,
    memo: &mut HashMap<u64, Polynomial>,
) -> Polynomial {
    if i == rows.len() {
        return Polynomial::one(ring);
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let mut acc = Polynomial::zero(ring);
    let mut sign_pos = 0usize;
    for (ci, &c) in cols.iter().enumerate() {
        if mask & (1 << ci) == 0 {
            continue;
        }
        let e = &entries[rows[i]][c];
        if !e.is_zero() {
            let sub = det_rec(ring, entries, rows, cols, i + 1, mask & !(1 << ci), memo);
            if !sub.is_zero() {
                let term = e.checked_mul(&sub).expect("ring mismatch");
                acc = if sign_pos % 2 == 0 {
                    acc.checked_add(&term).unwrap()
                } else {
                    acc.checked_sub(&term).unwrap()
                };
            }
        }
        sign_pos += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Evaluate every entry at a point.
pub(crate) fn eval_entries(entries: &[Vec<Polynomial>], point: &[u64]) -> Vec<Vec<u64>> {
    entries
        .iter()
        .map(|row| row.iter().map(|e| e.eval(point)).collect())
        .collect()
}

/// Rank of a scalar matrix by Gaussian elimination. Returns the rank and,
/// for each pivot, the (row, col) used — handy for extracting a nonsingular
/// submatrix witness.
pub(crate) fn numeric_rank_with_pivots(
    field: &PrimeField,
    mut m: Vec<Vec<u64>>,
) -> (usize, Vec<(usize, usize)>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut used_rows = vec![false; rows];
    for c in 0..cols {
        let Some(r) = (0..rows).find(|&r| !used_rows[r] && m[r][c] != 0) else {
            continue;
        };
        used_rows[r] = true;
        pivots.push((r, c));
        let inv = field.inv(m[r][c]);
        for r2 in 0..rows {
            if r2 != r && m[r2][c] != 0 {
                let f = field.mul(m[r2][c], inv);
                for c2 in c..cols {
                    let sub = field.mul(f, m[r][c2]);
                    m[r2][c2] = field.sub(m[r2][c2], sub);
                }
            }
        }
    }
    (pivots.len(), pivots)
}

pub(crate) fn numeric_rank(field: &PrimeField, m: Vec<Vec<u64>>) -> usize {
    numeric_rank_with_pivots(field, m).0
}

/// All k-subsets of 0..n in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k as isize - 1;
        while i >= 0 && cur[i as usize] == n - k + i as usize {
            i -= 1;
        }
        if i < 0 {
            return out;
        }
        let i = i as usize;
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    for i in 0..k {
        num = num * (n - i) as u128 / (i + 1) as u128;
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn det_2x2() {
        let r = Ring::default_with_vars(&["a", "b", "c", "d"]);
        let e = vec![
            vec![parse_poly(&r, "a").unwrap(), parse_poly(&r, "b").unwrap()],
            vec![parse_poly(&r, "c").unwrap(), parse_poly(&r, "d").unwrap()],
        ];
        let d = minor_det(&r, &e, &[0, 1], &[0, 1]);
        assert_eq!(d, parse_poly(&r, "a*d-b*c").unwrap());
    }

    #[test]
    fn det_with_zeros() {
        let r = Ring::default_with_vars(&["x", "y", "z"]);
        let zero = Polynomial::zero(&r);
        let x = parse_poly(&r, "x").unwrap();
        let y = parse_poly(&r, "y").unwrap();
        let z = parse_poly(&r, "z").unwrap();
        // diag(x, y, z)
        let e = vec![
            vec![x.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), y.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), z.clone()],
        ];
        assert_eq!(
            minor_det(&r, &e, &[0, 1, 2], &[0, 1, 2]),
            parse_poly(&r, "x*y*z").unwrap()
        );
        // swap two rows: sign flips
        assert_eq!(
            minor_det(&r, &e, &[1, 0, 2], &[0, 1, 2]),
            parse_poly(&r, "x*y*z").unwrap().neg()
        );
    }

    #[test]
    fn rank_over_fp() {
        let f = PrimeField::default();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(numeric_rank(&f, m), 2);
        assert_eq!(numeric_rank(&f, vec![vec![0, 0], vec![0, 0]]), 0);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(binomial(14, 7), 3432);
    }
}
