//! Smith form over the local ring `Z/p^N`.
//!
//! Over a local ring every nonzero entry is `p^v` times a unit, so pivoting on an
//! entry of least valuation lets its row clear the whole pivot column; the rest
//! of the pivot row is then a multiple of the pivot and never touches the
//! remaining block, so no column operations are needed.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{self, pow_int};
use crate::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LocalSnf {
    /// Valuations of the elementary divisors that are nonzero mod `p^N`.
    pub pivots: Vec<u32>,
    /// Elementary divisors divisible by `p^N`.
    pub zeros: usize,
}

pub(crate) fn local_snf(mut mat: Vec<Vec<Int>>, p: u64, n: u32) -> LocalSnf {
    let modulus = pow_int(p, n);
    for row in mat.iter_mut() {
        for c in row.iter_mut() {
            *c = c.mod_floor(&modulus);
        }
    }
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let size = rows.min(cols);
    let mut pivots = Vec::new();
    let mut live: Vec<bool> = alloc::vec![true; cols];
    let mut t = 0;
    while t < size {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in mat.iter().enumerate().skip(t) {
            for (j, c) in row.iter().enumerate() {
                if !live[j] {
                    continue;
                }
                if let Some(v) = arith::vp(c, p) {
                    if best.map_or(true, |(b, _, _)| v < b) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, i, j)) = best else { break };
        mat.swap(t, i);
        let pv = pow_int(p, v);
        let unit = &mat[t][j] / &pv;
        let inv = arith::mod_inverse(&unit, &modulus).expect("pivot unit");
        let pivot_row: Vec<Int> = mat[t].iter().map(|c| (c * &inv).mod_floor(&modulus)).collect();
        for row in mat.iter_mut().skip(t + 1) {
            if row[j].is_zero() {
                continue;
            }
            let factor = &row[j] / &pv;
            for (c, pc) in row.iter_mut().zip(&pivot_row) {
                *c = (&*c - &factor * pc).mod_floor(&modulus);
            }
        }
        mat[t] = pivot_row;
        live[j] = false;
        pivots.push(v);
        t += 1;
    }
    LocalSnf { zeros: size - pivots.len(), pivots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
    }

    #[test]
    fn diagonalises_small_matrices() {
        // [[2,4],[-4,6]] has divisors 2 and 14
        let s = local_snf(m(&[&[2, 4], &[-4, 6]]), 2, 10);
        assert_eq!(s, LocalSnf { pivots: vec![1, 1], zeros: 0 });
        let s = local_snf(m(&[&[9, 0], &[0, 0]]), 3, 5);
        assert_eq!(s, LocalSnf { pivots: vec![2], zeros: 1 });
        let s = local_snf(m(&[&[3, 1], &[0, 3]]), 3, 5);
        // determinant 9 with a unit entry: divisors 1 and 9
        assert_eq!(s, LocalSnf { pivots: vec![0, 2], zeros: 0 });
    }
}
