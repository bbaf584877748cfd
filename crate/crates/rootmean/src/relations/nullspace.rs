//! Exact right nullspace by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{common_denominator, int_rat, ExactRational};

/// Row echelon form of an integer matrix plus its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Clears denominators row by row.
pub fn integer_rows(m: &[Vec<ExactRational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let den = int_rat(common_denominator(row.iter()));
            row.iter().map(|q| (q * &den).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free elimination; every division is exact.
pub fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let num = &pv * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

/// Basis of `{x : M x = 0}`: one vector per free column, with that column 1 and the
/// other free columns 0. Columns are ordered as in `m`.
pub fn nullspace(m: &[Vec<ExactRational>], cols: usize) -> Vec<Vec<ExactRational>> {
    let ech = bareiss(integer_rows(m), cols);
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![ExactRational::zero(); cols];
        x[f] = ExactRational::one();
        for (k, &pc) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[k];
            let mut s = ExactRational::zero();
            for j in pc + 1..cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += int_rat(row[j].clone()) * &x[j];
                }
            }
            x[pc] = -s / int_rat(row[pc].clone());
        }
        basis.push(x);
    }
    basis
}

pub fn rank(m: &[Vec<ExactRational>], cols: usize) -> usize {
    bareiss(integer_rows(m), cols).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<ExactRational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn apply(m: &[Vec<ExactRational>], x: &[ExactRational]) -> Vec<ExactRational> {
        m.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Plain rational Gauss-Jordan, used as an independent rank oracle.
    fn rank_gauss(mut m: Vec<Vec<ExactRational>>, cols: usize) -> usize {
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let pv = m[r][c].clone();
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &pv;
                    for j in 0..cols {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(nullspace(&mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3).is_empty());
    }

    #[test]
    fn duplicate_columns() {
        let m = mat(&[&[2, 2, 1], &[3, 3, 5], &[1, 1, 7]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns, vec![vec![rat(-1), rat(1), rat(0)]]);
    }

    #[test]
    fn rational_entries_and_rank_deficiency() {
        let m = vec![
            vec![ratio(1, 2), ratio(1, 3), rat(0), rat(1)],
            vec![rat(1), ratio(2, 3), rat(0), rat(2)],
            vec![rat(0), rat(0), rat(0), rat(0)],
        ];
        let ns = nullspace(&m, 4);
        assert_eq!(ns.len(), 3);
        for x in &ns {
            assert!(apply(&m, x).iter().all(|v| v.is_zero()));
        }
        assert_eq!(rank(&m, 4), rank_gauss(m.clone(), 4));
    }

    #[test]
    fn pseudo_random_matrices_against_gauss() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for _ in 0..200 {
            let rows = 1 + (next().unsigned_abs() as usize % 5);
            let cols = 1 + (next().unsigned_abs() as usize % 6);
            let m: Vec<Vec<ExactRational>> = (0..rows)
                .map(|_| (0..cols).map(|_| ratio(next(), 1 + next().abs())).collect())
                .collect();
            let ns = nullspace(&m, cols);
            let rk = rank_gauss(m.clone(), cols);
            assert_eq!(ns.len(), cols - rk);
            for x in &ns {
                assert!(apply(&m, x).iter().all(|v| v.is_zero()));
            }
        }
    }
}
