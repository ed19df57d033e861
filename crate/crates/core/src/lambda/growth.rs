//! Orders of the layer quotients `Lambda/(f, theta_n)` and the growth law.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::snf::local_snf;
use super::{theta_poly, LambdaElement};
use crate::{arith, poly, Error, Int, Rat, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientOrder {
    pub n: u32,
    /// `Z_p`-rank of `Lambda/(f, theta_n)`.
    pub free_rank: usize,
    /// The torsion subgroup has order `p^e_n`.
    pub e_n: u64,
    /// `Some(true)` when the resultant route was run and agreed.
    pub resultant_agrees: Option<bool>,
}

/// Reduces an integer polynomial modulo a monic one.
fn rem_monic(a: &[Int], m: &[Int]) -> Vec<Int> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > d {
        let c = r.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = r.len() - d;
        for i in 0..d {
            r[shift + i] -= &c * &m[i];
        }
    }
    r.resize(d, Int::zero());
    r
}

pub fn quotient_order(f: &LambdaElement, n: u32) -> Result<QuotientOrder> {
    quotient_order_bounded(f, n, crate::DEFAULT_MAX_PN)
}

/// Smith form of multiplication by `f` on `Z_p[T]/(theta_n)`, where the stored
/// truncation of `f` is read as a polynomial with balanced coefficients.
pub fn quotient_order_bounded(f: &LambdaElement, n: u32, max_pn: u64) -> Result<QuotientOrder> {
    let p = f.p;
    let deg = p.checked_pow(n).filter(|&d| d <= max_pn).ok_or(Error::BoundExceeded {
        what: "p^n",
        value: p.saturating_pow(n),
        bound: max_pn,
    })? as usize;
    let lifted = f.balanced();
    if lifted.is_empty() {
        return Err(Error::ZeroSeries);
    }
    let theta = theta_poly(n, p);
    let f1 = rem_monic(&lifted, &theta);

    // rows are T^j f1 mod theta_n
    let mut rows = Vec::with_capacity(deg);
    let mut cur = f1.clone();
    for _ in 0..deg {
        rows.push(cur.clone());
        let mut shifted = vec![Int::zero()];
        shifted.extend(cur);
        cur = rem_monic(&shifted, &theta);
    }

    let fq = poly::from_ints(&f1);
    let tq = poly::from_ints(&theta);
    let free_rank = match poly::degree(&fq) {
        None => deg,
        Some(_) => poly::degree(&poly::gcd(&fq, &tq)).unwrap_or(0),
    };

    let snf = local_snf(rows, p, f.n);
    if snf.zeros > free_rank {
        return Err(Error::PrecisionExhausted { context: "quotient_order", achieved: f.n });
    }
    if snf.zeros < free_rank {
        return Err(Error::Inconsistent("fewer zero elementary divisors than the rational rank".into()));
    }
    let e_n: u64 = snf.pivots.iter().map(|&v| v as u64).sum();

    let resultant_agrees = if free_rank == 0 {
        let res: Rat = poly::resultant(&tq, &fq);
        let v = arith::vp(&res.numer().abs(), p).unwrap_or(0) as i64 - arith::vp(res.denom(), p).unwrap_or(0) as i64;
        if v != e_n as i64 {
            return Err(Error::Inconsistent(alloc::format!(
                "Smith form gives e_{n} = {e_n}, resultant gives {v}"
            )));
        }
        Some(true)
    } else {
        None
    };
    Ok(QuotientOrder { n, free_rank, e_n, resultant_agrees })
}

/// `e_n = lambda n + mu p^n + nu` for `n >= n0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthParams {
    pub lambda: i64,
    pub mu: i64,
    pub nu: i64,
    pub n0: u32,
    /// Stabilised `Z_p`-rank of the layer quotients.
    pub lambda0: usize,
    pub samples: Vec<QuotientOrder>,
    /// `lambda = lambda(f) - lambda0` and `mu = mu(f)`.
    pub consistent: bool,
}

/// Computes `e_0..e_{n_max}` and fits the growth law on the stable tail.
pub fn growth_fit(f: &LambdaElement, n_max: u32) -> Result<GrowthParams> {
    growth_fit_bounded(f, n_max, crate::DEFAULT_MAX_PN)
}

pub fn growth_fit_bounded(f: &LambdaElement, n_max: u32, max_pn: u64) -> Result<GrowthParams> {
    if n_max < 2 {
        return Err(Error::Invalid("growth_fit needs n_max >= 2".into()));
    }
    let (mu_f, lambda_f) = f.mu_lambda()?;
    let samples = (0..=n_max).map(|n| quotient_order_bounded(f, n, max_pn)).collect::<Result<Vec<_>>>()?;
    let p = f.p as i64;
    let a = n_max - 2;
    let e = |n: u32| samples[n as usize].e_n as i64;
    let lambda0 = samples[n_max as usize].free_rank;
    if samples[a as usize..].iter().any(|s| s.free_rank != lambda0) {
        return Err(Error::NotStabilized { n_max });
    }
    let pa = p.pow(a);
    let d1 = e(a + 1) - e(a);
    let d2 = e(a + 2) - e(a + 1);
    let denom = pa * (p - 1) * (p - 1);
    if (d2 - d1) % denom != 0 {
        return Err(Error::NotStabilized { n_max });
    }
    let mu = (d2 - d1) / denom;
    let lambda = d1 - mu * pa * (p - 1);
    let nu = e(a) - lambda * a as i64 - mu * pa;
    if mu < 0 || lambda < 0 {
        return Err(Error::NotStabilized { n_max });
    }
    let fits = |n: u32| e(n) == lambda * n as i64 + mu * p.pow(n) + nu && samples[n as usize].free_rank == lambda0;
    let mut n0 = a;
    while n0 > 0 && fits(n0 - 1) {
        n0 -= 1;
    }
    let consistent = lambda == lambda_f as i64 - lambda0 as i64 && mu == mu_f as i64;
    Ok(GrowthParams { lambda, mu, nu, n0, lambda0, samples, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(p: u64, c: &[i64]) -> LambdaElement {
        LambdaElement::from_i64(p, c, 30, 40).unwrap()
    }

    #[test]
    fn layer_orders() {
        let q = quotient_order(&el(3, &[-3, 1]), 1).unwrap();
        assert_eq!((q.free_rank, q.e_n, q.resultant_agrees), (0, 2, Some(true)));
        let q = quotient_order(&el(3, &[3, 3, 1]), 1).unwrap();
        assert_eq!((q.free_rank, q.e_n), (2, 0));
        let q = quotient_order(&el(3, &[3]), 0).unwrap();
        assert_eq!((q.free_rank, q.e_n), (0, 1));
    }

    #[test]
    fn size_cap() {
        assert!(matches!(quotient_order(&el(5, &[1, 1]), 4), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn growth_laws() {
        let g = growth_fit(&el(3, &[-3, 1]), 3).unwrap();
        assert_eq!((g.lambda, g.mu, g.nu, g.n0, g.lambda0, g.consistent), (1, 0, 1, 0, 0, true));
        let g = growth_fit(&el(3, &[-9, 3]), 3).unwrap();
        assert_eq!((g.lambda, g.mu, g.nu, g.lambda0, g.consistent), (1, 1, 1, 0, true));
        let g = growth_fit(&el(3, &[3, 3, 1]), 3).unwrap();
        assert_eq!((g.lambda, g.mu, g.nu, g.n0, g.lambda0, g.consistent), (0, 0, 0, 1, 2, true));
    }
}
