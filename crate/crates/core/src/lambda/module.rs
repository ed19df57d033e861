//! Finitely presented `Lambda`-modules `Lambda^r / (row span)`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::LambdaElement;
use crate::arith;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct LambdaModulePresentation {
    p: u64,
    rows: Vec<Vec<LambdaElement>>,
}

impl LambdaModulePresentation {
    pub fn new(rows: Vec<Vec<LambdaElement>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 || rows.iter().any(|row| row.len() != r) {
            return Err(Error::Invalid("presentation matrix must be square and nonempty".into()));
        }
        if r > 16 {
            return Err(Error::BoundExceeded { what: "presentation size", value: r as u64, bound: 16 });
        }
        let p = rows[0][0].prime();
        if let Some(bad) = rows.iter().flatten().find(|x| x.prime() != p) {
            return Err(Error::PrimeMismatch(p, bad.prime()));
        }
        Ok(LambdaModulePresentation { p, rows })
    }

    pub fn diagonal(entries: &[LambdaElement]) -> Result<Self> {
        let first = entries.first().ok_or_else(|| Error::Invalid("empty diagonal".into()))?;
        let zero = first.scale(&crate::Int::from(0));
        let rows = (0..entries.len())
            .map(|i| (0..entries.len()).map(|j| if i == j { entries[i].clone() } else { zero.clone() }).collect())
            .collect();
        Self::new(rows)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Determinant by cofactor expansion over column subsets, without division.
    pub fn determinant(&self) -> Result<LambdaElement> {
        let r = self.rows.len();
        let full = (1usize << r) - 1;
        let mut dp: Vec<Option<LambdaElement>> = vec![None; 1 << r];
        let one = {
            let e = &self.rows[0][0];
            LambdaElement::constant(self.p, 1, e.coeff_precision(), e.t_precision())?
        };
        dp[0] = Some(one);
        for mask in 0..full {
            let Some(acc) = dp[mask].take() else { continue };
            let i = mask.count_ones() as usize;
            for j in 0..r {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let inversions = (mask >> (j + 1)).count_ones();
                let mut term = acc.mul(&self.rows[i][j])?;
                if inversions % 2 == 1 {
                    term = term.neg();
                }
                let slot = &mut dp[mask | (1 << j)];
                *slot = Some(match slot.take() {
                    Some(prev) => prev.add(&term)?,
                    None => term,
                });
            }
        }
        Ok(dp[full].take().expect("full mask reached"))
    }

    /// Generator of the characteristic ideal, up to a unit.
    pub fn char_ideal(&self) -> Result<LambdaElement> {
        let det = self.determinant()?;
        if det.is_zero() {
            return Err(Error::ZeroSeries);
        }
        Ok(det)
    }

    /// `dim X / (p, T) X`: the corank mod `p` of the constant-term matrix.
    pub fn min_generators(&self) -> usize {
        let p = self.p;
        let mut m: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|x| (x.coeff(0) % p).to_u64().unwrap()).collect())
            .collect();
        let r = m.len();
        let mut rank = 0;
        for col in 0..r {
            let Some(piv) = (rank..r).find(|&i| m[i][col] != 0) else { continue };
            m.swap(rank, piv);
            let inv = arith::pow_mod(m[rank][col], p - 2, p);
            for i in 0..r {
                if i != rank && m[i][col] != 0 {
                    let f = arith::mul_mod(m[i][col], inv, p);
                    for j in 0..r {
                        let sub = arith::mul_mod(f, m[rank][j], p);
                        m[i][j] = (m[i][j] + p - sub) % p;
                    }
                }
            }
            rank += 1;
        }
        r - rank
    }
}
