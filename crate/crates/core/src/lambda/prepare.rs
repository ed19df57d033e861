//! Weierstrass preparation and the ideal-equality tests built on it.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{inv_trunc, mul_trunc, LambdaElement};
use crate::arith::{self, pow_int};
use crate::padic::PadicNumber;
use crate::{Error, Int, Result};

/// Monic polynomial whose nonleading coefficients are divisible by `p`,
/// known modulo `p^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedPoly {
    pub p: u64,
    /// Ascending coefficients; the last one is 1.
    pub coeffs: Vec<Int>,
    pub precision: u32,
}

impl DistinguishedPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn balanced(&self) -> Vec<Int> {
        if self.precision == 0 {
            return self.coeffs.clone();
        }
        let m = pow_int(self.p, self.precision);
        self.coeffs.iter().map(|c| arith::balanced(c, &m)).collect()
    }
}

impl fmt::Display for DistinguishedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.balanced().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => alloc::format!("{c}"),
                1 if c.is_one() => String::from("T"),
                1 => alloc::format!("{c}*T"),
                _ if c.is_one() => alloc::format!("T^{i}"),
                _ => alloc::format!("{c}*T^{i}"),
            });
        }
        write!(f, "{} (mod {}^{})", terms.join(" + "), self.p, self.precision)
    }
}

/// `f = p^mu * d * u` with `d` distinguished and `u` a unit.
#[derive(Clone, Debug)]
pub struct Preparation {
    pub mu: u32,
    pub lambda: usize,
    pub distinguished: DistinguishedPoly,
    pub unit: LambdaElement,
    /// Digits of `d` that do not depend on the unknown tail beyond `T^K`.
    pub certified: u32,
}

/// Weierstrass preparation in `(Z/p^m)[[T]]/(T^K)`, `m = N - mu`.
///
/// `T^lambda` is divided by `g = f / p^mu`; writing `g = P + T^lambda H`, each
/// round moves the low part of the remainder into `r` and cancels the high part
/// against `H`, leaving `-q_step * P`, which gains a factor of `p`.
pub fn weierstrass_prepare(f: &LambdaElement) -> Result<Preparation> {
    let (mu, lambda) = f.mu_lambda()?;
    let k = f.k;
    let p = f.p;
    let m_digits = f.n - mu;
    let m = pow_int(p, m_digits);
    let pmu = pow_int(p, mu);
    let g: Vec<Int> = f.coeffs.iter().map(|c| (c / &pmu).mod_floor(&m)).collect();
    let low_part = &g[..lambda];
    let high_inv = inv_trunc(&g[lambda..], k - lambda, &m).ok_or(Error::NotAUnit)?;

    let mut h = vec![Int::zero(); k];
    h[lambda] = Int::one();
    let mut r = vec![Int::zero(); lambda];
    let mut q = vec![Int::zero(); k - lambda];
    for _ in 0..=m_digits {
        if h.iter().all(|c| c.is_zero()) {
            break;
        }
        for (ri, hi) in r.iter_mut().zip(&h[..lambda]) {
            *ri = (&*ri + hi).mod_floor(&m);
        }
        let step = mul_trunc(&h[lambda..], &high_inv, k - lambda, &m);
        for (qi, si) in q.iter_mut().zip(&step) {
            *qi = (&*qi + si).mod_floor(&m);
        }
        h = mul_trunc(&step, low_part, k, &m).into_iter().map(|c| (-c).mod_floor(&m)).collect();
    }
    if !h.iter().all(|c| c.is_zero()) {
        return Err(Error::Inconsistent("Weierstrass division did not converge".into()));
    }

    let mut d: Vec<Int> = r.iter().map(|c| (-c).mod_floor(&m)).collect();
    d.push(Int::one());
    let unit_coeffs = inv_trunc(&q, k, &m).ok_or(Error::NotAUnit)?;
    let unit = LambdaElement { p, n: m_digits, k, coeffs: unit_coeffs };

    // p^mu * d * u must give back f in the truncated ring
    let back = mul_trunc(&d, &unit.coeffs, k, &m);
    let full = pow_int(p, f.n);
    for (i, c) in back.iter().enumerate() {
        if (c * &pmu - &f.coeffs[i]).mod_floor(&full) != Int::zero() {
            return Err(Error::Inconsistent("Weierstrass reconstruction failed".into()));
        }
    }

    let certified = certified_digits(&g, lambda, k, p, m_digits, 0);
    if certified > 0 {
        let mc = pow_int(p, certified);
        for c in d.iter_mut() {
            *c = c.mod_floor(&mc);
        }
    }
    Ok(Preparation {
        mu,
        lambda,
        distinguished: DistinguishedPoly { p, coeffs: d, precision: certified },
        unit,
        certified,
    })
}

/// Digits of the `j`-th solution coefficient that survive truncation at `T^K`:
/// `min(m, floor(s * (K - lambda + 1 - j)))`, with `s` the least slope
/// `v(g_i) / (lambda - i)` of the Newton polygon below `T^lambda`.
fn certified_digits(g: &[Int], lambda: usize, k: usize, p: u64, m: u32, j: usize) -> u32 {
    let span = (k - lambda + 1).saturating_sub(j) as u64;
    let mut best = m as u64;
    for (i, c) in g.iter().enumerate().take(lambda) {
        if let Some(v) = arith::vp(c, p) {
            best = best.min(v as u64 * span / (lambda - i) as u64);
        }
    }
    best as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Associates {
    /// Equal ideals, distinguished parts agreeing modulo `p^precision`.
    Yes { precision: u32 },
    No,
    /// The truncation leaves no certified digit to compare.
    Indeterminate,
}

impl Associates {
    pub fn holds(self) -> bool {
        matches!(self, Associates::Yes { .. })
    }
}

/// Decides whether `(f) = (g)` in `Z_p[[T]]` by comparing Weierstrass data.
pub fn associates_check(f: &LambdaElement, g: &LambdaElement) -> Result<Associates> {
    if f.p != g.p {
        return Err(Error::PrimeMismatch(f.p, g.p));
    }
    let a = weierstrass_prepare(f)?;
    let b = weierstrass_prepare(g)?;
    if a.mu != b.mu || a.lambda != b.lambda {
        return Ok(Associates::No);
    }
    let prec = a.certified.min(b.certified);
    if a.lambda == 0 {
        return Ok(Associates::Yes { precision: prec });
    }
    if prec == 0 {
        return Ok(Associates::Indeterminate);
    }
    let m = pow_int(f.p, prec);
    let same = a
        .distinguished
        .coeffs
        .iter()
        .zip(&b.distinguished.coeffs)
        .all(|(x, y)| (x - y).mod_floor(&m).is_zero());
    Ok(if same { Associates::Yes { precision: prec } } else { Associates::No })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeSolution {
    /// `iota(f) = w (1+T)^c f`.
    Solved { w: i8, c: PadicNumber },
    NoSolution,
    Indeterminate,
}

/// Solves `iota(f) = w (1+T)^c f` for a sign `w` and a p-adic exponent `c`.
pub fn fe_solve(f: &LambdaElement) -> Result<FeSolution> {
    let p = f.p;
    let fi = f.involution();
    match associates_check(f, &fi)? {
        Associates::No => return Ok(FeSolution::NoSolution),
        Associates::Indeterminate => return Ok(FeSolution::Indeterminate),
        Associates::Yes { .. } => {}
    }
    let a = weierstrass_prepare(f)?;
    let b = weierstrass_prepare(&fi)?;
    let k = f.k - a.lambda;
    let (mu, lambda) = (a.mu, a.lambda);
    let m_digits = f.n - mu;
    let pmu = pow_int(p, mu);
    let g: Vec<Int> = f.coeffs.iter().map(|c| c / &pmu).collect();
    let gi: Vec<Int> = fi.coeffs.iter().map(|c| c / &pmu).collect();
    let acc = |j: usize| -> u32 {
        if lambda == 0 {
            m_digits
        } else {
            certified_digits(&g, lambda, f.k, p, m_digits, j).min(certified_digits(&gi, lambda, f.k, p, m_digits, j))
        }
    };
    let m = pow_int(p, m_digits);
    let ratio = mul_trunc(&b.unit.coeffs, &inv_trunc(&a.unit.coeffs, f.k, &m).ok_or(Error::NotAUnit)?, k, &m);

    let a0 = acc(0);
    if a0 == 0 {
        return Ok(FeSolution::Indeterminate);
    }
    let m0 = pow_int(p, a0);
    let h0 = ratio[0].mod_floor(&m0);
    let w: i8 = if h0.is_one() {
        1
    } else if h0 == &m0 - 1u32 {
        -1
    } else {
        return Ok(FeSolution::NoSolution);
    };
    if k < 2 {
        return Ok(FeSolution::Indeterminate);
    }
    let a1 = acc(1);
    if a1 == 0 {
        return Ok(FeSolution::Indeterminate);
    }
    let m1 = pow_int(p, a1);
    let c = if w == 1 { ratio[1].mod_floor(&m1) } else { (-&ratio[1]).mod_floor(&m1) };

    // h_j = w * binom(c, j), checked while any digit survives
    let mut falling = c.clone();
    for j in 2..k {
        falling *= &c - Int::from(j as u64 - 1);
        let fv = arith::factorial_vp(j as u64, p) as i64;
        let digits = (acc(j) as i64).min(a1 as i64 - fv);
        if digits <= 0 {
            break;
        }
        let fact: Int = (1..=j as u64).map(Int::from).product();
        let binom = &falling / &fact;
        let mj = pow_int(p, digits as u32);
        let expect = if w == 1 { binom } else { -binom };
        if !(&ratio[j] - expect).mod_floor(&mj).is_zero() {
            return Ok(FeSolution::NoSolution);
        }
    }
    let c = PadicNumber::from_int_abs(p, &arith::balanced(&c, &m1), a1 as i64)?;
    Ok(FeSolution::Solved { w, c })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(p: u64, c: &[i64]) -> LambdaElement {
        LambdaElement::from_i64(p, c, 30, 40).unwrap()
    }

    #[test]
    fn already_distinguished() {
        let prep = weierstrass_prepare(&el(3, &[3, 3, 1])).unwrap();
        assert_eq!(prep.mu, 0);
        assert_eq!(prep.distinguished.balanced(), [3, 3, 1].map(Int::from));
        assert_eq!(prep.unit, el(3, &[1]));
    }

    #[test]
    fn content_splits_off() {
        let prep = weierstrass_prepare(&el(2, &[4, 2])).unwrap();
        assert_eq!(prep.mu, 1);
        assert_eq!(prep.distinguished.balanced(), [2, 1].map(Int::from));
        assert!(prep.unit.balanced() == [Int::one()]);
    }

    #[test]
    fn nontrivial_unit() {
        let f = el(3, &[3, 3, 0, 1]);
        let prep = weierstrass_prepare(&f).unwrap();
        assert_eq!(prep.lambda, 3);
        let d = &prep.distinguished.coeffs;
        assert!(d[..3].iter().all(|c| (c % 3u32).is_zero()));
        assert!(prep.unit.is_unit());
    }

    #[test]
    fn zero_input() {
        let f = LambdaElement::from_i64(3, &[9, 27], 2, 5).unwrap();
        assert!(matches!(weierstrass_prepare(&f), Err(Error::ZeroSeries)));
    }

    #[test]
    fn involution_symmetric_ideals() {
        for f in [el(2, &[2, 1]), el(3, &[3, 3, 1]), el(5, &[5])] {
            assert!(associates_check(&f, &f.involution()).unwrap().holds(), "{f}");
        }
        let f = el(3, &[-3, 1]);
        assert_eq!(associates_check(&f, &f.involution()).unwrap(), Associates::No);
    }

    #[test]
    fn functional_equation_exponents() {
        let sol = |f: LambdaElement| match fe_solve(&f).unwrap() {
            FeSolution::Solved { w, c } => (w, c.to_balanced_int().unwrap()),
            other => panic!("{other:?}"),
        };
        assert_eq!(sol(el(5, &[0, 1])), (-1, Int::from(-1)));
        assert_eq!(sol(el(3, &[3, 3, 1])), (1, Int::from(-2)));
        assert_eq!(sol(el(7, &[1])), (1, Int::zero()));
        assert_eq!(fe_solve(&el(3, &[-3, 1])).unwrap(), FeSolution::NoSolution);
    }
}
