//! Real periods (AGM) and Tate periods at multiplicative primes.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Curve;
use crate::arith::{self, pow_int};
use crate::padic::PadicNumber;
use crate::{Error, Int, Result};

const AGM_MAX_ITER: usize = 64;

fn agm(mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    // relative tolerances below a few ulps are unreachable in f64
    let tol = tol.max(4.0 * f64::EPSILON);
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= tol * a.abs() {
            return Ok(a);
        }
        let m = (a + b) / 2.0;
        b = libm::sqrt(a * b);
        a = m;
    }
    Err(Error::NoConvergence)
}

/// Newton polish of a root of `4X^3 - g2 X - g3`.
fn polish(mut x: f64, g2: f64, g3: f64) -> f64 {
    for _ in 0..8 {
        let f = 4.0 * x * x * x - g2 * x - g3;
        let d = 12.0 * x * x - g2;
        if d == 0.0 {
            break;
        }
        let nx = x - f / d;
        if nx == x || !nx.is_finite() {
            break;
        }
        x = nx;
    }
    x
}

/// Real period of the minimal model: the full real period, doubled over both
/// components when the discriminant is positive.
pub fn real_period(e: &Curve, tol: f64) -> Result<f64> {
    let (m, _) = e.minimal_model()?;
    // shift x by -b2/12: roots of 4X^3 - g2 X - g3
    let g2 = m.c4.to_f64().unwrap() / 12.0;
    let g3 = m.c6.to_f64().unwrap() / 216.0;
    let pi = core::f64::consts::PI;
    // t^3 + p t + q with t = X
    let p = -g2 / 4.0;
    let q = -g3 / 4.0;
    if m.disc > Int::zero() {
        let r = 2.0 * libm::sqrt(-p / 3.0);
        let arg = ((3.0 * q) / (2.0 * p) * libm::sqrt(-3.0 / p)).clamp(-1.0, 1.0);
        let theta = libm::acos(arg) / 3.0;
        let mut roots: Vec<f64> = (0..3)
            .map(|k| polish(r * libm::cos(theta - 2.0 * pi * k as f64 / 3.0), g2, g3))
            .collect();
        roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let (e1, e2, e3) = (roots[0], roots[1], roots[2]);
        let a = agm(libm::sqrt(e1 - e3), libm::sqrt(e1 - e2), tol * 1e-3)?;
        Ok(2.0 * pi / a)
    } else {
        let disc = q * q / 4.0 + p * p * p / 27.0;
        let s = libm::sqrt(disc.max(0.0));
        let e1 = polish(libm::cbrt(-q / 2.0 + s) + libm::cbrt(-q / 2.0 - s), g2, g3);
        let z = libm::sqrt(3.0 * e1 * e1 - g2 / 4.0);
        let beta = 3.0 * e1;
        let a = agm(2.0 * libm::sqrt(z), libm::sqrt(2.0 * z + beta), tol * 1e-3)?;
        Ok(2.0 * pi / a)
    }
}

/// Upper limit on q-expansion coefficients generated for a Tate period.
pub const TATE_COEFF_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TatePeriod {
    pub q: PadicNumber,
    /// `v(q) = -ord(j)`.
    pub valuation: i64,
    /// Lower bound for `v(j(q) - j_E)`, measured through an independent q-expansion of `j`.
    pub residual: i64,
}

/// Divisor power sums `sigma_k(n)` for `n < len`.
fn sigma(k: u32, len: usize) -> Vec<Int> {
    let mut s = vec![Int::zero(); len];
    for d in 1..len {
        let dk = num_traits::pow(Int::from(d), k as usize);
        for n in (d..len).step_by(d) {
            s[n] += &dk;
        }
    }
    s
}

fn mul_exact(a: &[Int], b: &[Int], len: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn mul_mod(a: &[Int], b: &[Int], len: usize, m: &Int) -> Vec<Int> {
    mul_exact(a, b, len).iter().map(|c| c.mod_floor(m)).collect()
}

/// Inverse of a series with constant term 1, mod `m`.
fn inv_series(a: &[Int], len: usize, m: &Int) -> Vec<Int> {
    let mut inv = vec![Int::zero(); len];
    inv[0] = Int::one();
    for n in 1..len {
        let mut s = Int::zero();
        for k in 1..=n.min(a.len() - 1) {
            s += &a[k] * &inv[n - k];
        }
        inv[n] = (-s).mod_floor(m);
    }
    inv
}

fn eval_mod(series: &[Int], q: &Int, m: &Int) -> Int {
    series.iter().rev().fold(Int::zero(), |acc, c| (acc * q + c).mod_floor(m))
}

/// Solves `j(q) = j_E` in `Q_l` by Newton iteration on `1/j(q) = Delta(q) / E4(q)^3`.
pub fn tate_period(e: &Curve, l: u64, digits: u32) -> Result<TatePeriod> {
    arith::require_prime(l)?;
    let m = match arith::vp_rat(&e.j, l) {
        Some(v) if v < 0 => -v,
        _ => return Err(Error::UnsupportedReduction { prime: l, detail: "ord(j) >= 0: no Tate period" }),
    };
    // work modulo l^prec so that v(j(q) - j_E) is known to `digits`
    let prec = digits as i64 + 2 * m;
    let len = (prec as usize).div_ceil(m as usize) + 1;
    if len > TATE_COEFF_CAP {
        return Err(Error::BoundExceeded { what: "q-expansion coefficients", value: len as u64, bound: TATE_COEFF_CAP as u64 });
    }
    let modulus = pow_int(l, prec as u32);

    // Delta = q prod (1 - q^n)^24
    let mut prod = vec![Int::zero(); len];
    prod[0] = Int::one();
    for n in 1..len {
        for _ in 0..24 {
            for i in (n..len).rev() {
                let t = prod[i - n].clone();
                prod[i] -= t;
            }
        }
        for c in prod.iter_mut() {
            *c = c.mod_floor(&modulus);
        }
    }
    let mut delta = vec![Int::zero(); len];
    delta[1..len].clone_from_slice(&prod[..len - 1]);
    let s3 = sigma(3, len);
    let e4: Vec<Int> = (0..len).map(|n| if n == 0 { Int::one() } else { &s3[n] * 240 }).collect();
    let e4_cubed = mul_mod(&mul_mod(&e4, &e4, len, &modulus), &e4, len, &modulus);
    let s_series = mul_mod(&delta, &inv_series(&e4_cubed, len, &modulus), len, &modulus);
    let ds: Vec<Int> = s_series.iter().enumerate().skip(1).map(|(i, c)| (c * i).mod_floor(&modulus)).collect();

    let w = arith::rat_mod(&e.j.recip(), &modulus).ok_or(Error::DivisionByZero)?;
    let mut q = w.clone();
    let mut converged = false;
    for _ in 0..64 {
        let f = (eval_mod(&s_series, &q, &modulus) - &w).mod_floor(&modulus);
        if f.is_zero() {
            converged = true;
            break;
        }
        let d = eval_mod(&ds, &q, &modulus);
        let d_inv = arith::mod_inverse(&d, &modulus).ok_or(Error::NotAUnit)?;
        q = (&q - f * d_inv).mod_floor(&modulus);
    }
    if !converged {
        return Err(Error::NoConvergence);
    }

    // independent check: 1/j = (E4^3 - E6^2) / (1728 E4^3)
    let s5 = sigma(5, len);
    let e4x: Vec<Int> = (0..len).map(|n| if n == 0 { Int::one() } else { &s3[n] * 240 }).collect();
    let e6x: Vec<Int> = (0..len).map(|n| if n == 0 { Int::one() } else { -&s5[n] * 504 }).collect();
    let mut num = vec![Int::zero(); len];
    let e4cube_exact = mul_exact(&mul_exact(&e4x, &e4x, len), &e4x, len);
    let e6sq = mul_exact(&e6x, &e6x, len);
    for n in 0..len {
        let diff: Int = &e4cube_exact[n] - &e6sq[n];
        if !(&diff % Int::from(1728)).is_zero() {
            return Err(Error::Inconsistent("E4^3 - E6^2 not divisible by 1728".into()));
        }
        num[n] = (diff / Int::from(1728)).mod_floor(&modulus);
    }
    let e4cube_mod: Vec<Int> = e4cube_exact.iter().map(|c| c.mod_floor(&modulus)).collect();
    let alt = mul_mod(&num, &inv_series(&e4cube_mod, len, &modulus), len, &modulus);
    let gap = (eval_mod(&alt, &q, &modulus) - &w).mod_floor(&modulus);
    let v_gap = arith::vp(&gap, l).map_or(prec, |v| (v as i64).min(prec));
    let residual = v_gap - 2 * m;

    let qp = PadicNumber::from_int_abs(l, &q, prec)?;
    let valuation = qp.valuation().finite().unwrap_or(prec);
    if valuation != m {
        return Err(Error::Inconsistent(alloc::format!("v(q) = {valuation}, expected {m}")));
    }
    Ok(TatePeriod { q: qp, valuation, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periods_of_small_curves() {
        let om = real_period(&Curve::from_i64([0, -1, 1, -10, -20]).unwrap(), 1e-12).unwrap();
        let fine = real_period(&Curve::from_i64([0, -1, 1, -10, -20]).unwrap(), 1e-18).unwrap();
        assert!((fine - om).abs() < 1e-12);
        assert!((om - 1.269_209_304_279_55).abs() < 1e-9, "{om}");
        let om = real_period(&Curve::from_i64([1, 0, 0, -3, 1]).unwrap(), 1e-12).unwrap();
        assert!((om - 4.4956).abs() < 5e-4, "{om}");
    }

    #[test]
    fn period_ratio_for_1225() {
        let o1 = real_period(&Curve::from_i64([1, 1, 1, -8, 6]).unwrap(), 1e-12).unwrap();
        let o2 = real_period(&Curve::from_i64([1, 1, 1, -208083, -36621194]).unwrap(), 1e-12).unwrap();
        assert!((o1 - 4.1353).abs() < 5e-4, "{o1}");
        assert!((o2 - 0.11176).abs() < 5e-5, "{o2}");
        assert!((o1 / o2 - 37.0).abs() < 1e-6, "{}", o1 / o2);
    }

    #[test]
    fn period_invariant_under_translation() {
        let e = Curve::from_i64([1, 0, 0, -3, 1]).unwrap();
        let moved = e.rst(&Int::from(1), &Int::zero(), &Int::zero());
        let a = real_period(&e, 1e-12).unwrap();
        let b = real_period(&moved, 1e-12).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn tate_period_of_eleven_a() {
        let e = Curve::from_i64([0, -1, 1, -10, -20]).unwrap();
        let t = tate_period(&e, 11, 30).unwrap();
        assert_eq!(t.valuation, 5);
        assert!(t.residual >= 10);
        let e = Curve::from_i64([1, 0, 0, -3, 1]).unwrap();
        let t = tate_period(&e, 2, 20).unwrap();
        assert_eq!(t.valuation, 6);
        assert!(t.residual >= 20);
        assert!(tate_period(&Curve::from_i64([0, 0, 0, 4, 0]).unwrap(), 2, 10).is_err());
    }
}
