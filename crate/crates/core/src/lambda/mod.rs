//! The Iwasawa algebra `Z_p[[T]]` truncated to `(p^N, T^K)`.

mod growth;
mod module;
mod prepare;
mod snf;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{self, pow_int};
use crate::padic::{PadicNumber, Valuation};
use crate::{Error, Int, Result};

pub use growth::{growth_fit, growth_fit_bounded, quotient_order, quotient_order_bounded, GrowthParams, QuotientOrder};
pub use module::LambdaModulePresentation;
pub use prepare::{associates_check, fe_solve, weierstrass_prepare, Associates, DistinguishedPoly, FeSolution, Preparation};

/// A power series `sum c_i T^i` with coefficients modulo `p^N`, truncated at `T^K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaElement {
    p: u64,
    n: u32,
    k: usize,
    coeffs: Vec<Int>,
}

impl LambdaElement {
    /// Reduces integer coefficients (ascending powers of `T`) into the truncated algebra.
    pub fn new(p: u64, coeffs: &[Int], n: u32, k: usize) -> Result<Self> {
        arith::require_prime(p)?;
        if n == 0 || k == 0 {
            return Err(Error::Invalid("precision must be positive".into()));
        }
        let m = pow_int(p, n);
        let mut c = vec![Int::zero(); k];
        for (slot, x) in c.iter_mut().zip(coeffs) {
            *slot = x.mod_floor(&m);
        }
        Ok(LambdaElement { p, n, k, coeffs: c })
    }

    pub fn from_i64(p: u64, coeffs: &[i64], n: u32, k: usize) -> Result<Self> {
        let c: Vec<Int> = coeffs.iter().map(|&x| Int::from(x)).collect();
        Self::new(p, &c, n, k)
    }

    pub fn constant(p: u64, c: i64, n: u32, k: usize) -> Result<Self> {
        Self::from_i64(p, &[c], n, k)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeff_precision(&self) -> u32 {
        self.n
    }

    pub fn t_precision(&self) -> usize {
        self.k
    }

    /// Coefficients as residues in `[0, p^N)`.
    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn modulus(&self) -> Int {
        pow_int(self.p, self.n)
    }

    /// Coefficients lifted to `(-p^N/2, p^N/2]`, trailing zeros removed.
    pub fn balanced(&self) -> Vec<Int> {
        let m = self.modulus();
        let mut v: Vec<Int> = self.coeffs.iter().map(|c| arith::balanced(c, &m)).collect();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn compatible(&self, other: &Self) -> Result<(u32, usize)> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok((self.n.min(other.n), self.k.min(other.k)))
    }

    /// Same series at lower precision.
    pub fn truncate(&self, n: u32, k: usize) -> Self {
        let n = n.min(self.n).max(1);
        let k = k.min(self.k).max(1);
        let m = pow_int(self.p, n);
        let coeffs = self.coeffs[..k].iter().map(|c| c.mod_floor(&m)).collect();
        LambdaElement { p: self.p, n, k, coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (n, k) = self.compatible(other)?;
        let m = pow_int(self.p, n);
        let coeffs = (0..k).map(|i| (&self.coeffs[i] + &other.coeffs[i]).mod_floor(&m)).collect();
        Ok(LambdaElement { p: self.p, n, k, coeffs })
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        let coeffs = self.coeffs.iter().map(|c| (-c).mod_floor(&m)).collect();
        LambdaElement { coeffs, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (n, k) = self.compatible(other)?;
        let m = pow_int(self.p, n);
        Ok(LambdaElement { p: self.p, n, k, coeffs: mul_trunc(&self.coeffs, &other.coeffs, k, &m) })
    }

    pub fn scale(&self, s: &Int) -> Self {
        let m = self.modulus();
        let coeffs = self.coeffs.iter().map(|c| (c * s).mod_floor(&m)).collect();
        LambdaElement { coeffs, ..self.clone() }
    }

    /// Multiplicative inverse of a unit (constant term prime to `p`).
    pub fn inverse(&self) -> Result<Self> {
        let m = self.modulus();
        let coeffs = inv_trunc(&self.coeffs, self.k, &m).ok_or(Error::NotAUnit)?;
        Ok(LambdaElement { coeffs, ..self.clone() })
    }

    /// Returns `(mu, lambda)`: the minimal coefficient valuation and the first index attaining it.
    pub fn mu_lambda(&self) -> Result<(u32, usize)> {
        let mut best: Option<(u32, usize)> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if let Some(v) = arith::vp(c, self.p) {
                if best.map_or(true, |(b, _)| v < b) {
                    best = Some((v, i));
                }
            }
        }
        best.ok_or(Error::ZeroSeries)
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.mu_lambda(), Ok((0, 0)))
    }

    /// `f((1+T)^{-1} - 1)`, the image under the involution `gamma -> gamma^{-1}`.
    pub fn involution(&self) -> Self {
        let m = self.modulus();
        let k = self.k;
        // (1+T)^{-1} - 1 = -T + T^2 - T^3 + ...
        let iota: Vec<Int> = (0..k)
            .map(|i| match i {
                0 => Int::zero(),
                _ if i % 2 == 1 => (Int::from(-1)).mod_floor(&m),
                _ => Int::one(),
            })
            .collect();
        let mut acc = vec![Int::zero(); k];
        for c in self.coeffs.iter().rev() {
            acc = mul_trunc(&acc, &iota, k, &m);
            acc[0] = (&acc[0] + c).mod_floor(&m);
        }
        LambdaElement { coeffs: acc, ..self.clone() }
    }

    /// For `mu(f) = 0`, the exponent `lambda` with `f ≡ unit * T^lambda (mod p)`.
    pub fn mod_p_shape(&self) -> Result<usize> {
        let (mu, lambda) = self.mu_lambda()?;
        if mu > 0 {
            return Err(Error::Invalid("mod_p_shape needs mu = 0".into()));
        }
        let reduced: Vec<Int> = self.coeffs.iter().map(|c| c % self.p).collect();
        // every nonzero series over a field is T^lambda times a unit: check the split
        debug_assert!(reduced[..lambda].iter().all(|c| c.is_zero()));
        debug_assert!(!reduced[lambda].is_zero());
        Ok(lambda)
    }

    /// Evaluates at a p-adic integer `t` with `v(t) >= 1`; the result is known
    /// modulo `p^min(N, K*v(t), abs(t))`.
    pub fn eval(&self, t: &PadicNumber) -> Result<PadicNumber> {
        if t.prime() != self.p {
            return Err(Error::PrimeMismatch(self.p, t.prime()));
        }
        let vt = match t.valuation() {
            Valuation::Infinity => i64::MAX,
            Valuation::Finite(v) => v,
        };
        if vt < 1 {
            return Err(Error::Invalid("substituted value must lie in pZ_p".into()));
        }
        let mut prec = self.n as i64;
        if vt != i64::MAX {
            prec = prec.min(vt.saturating_mul(self.k as i64));
        }
        prec = prec.min(t.absolute_precision());
        let m = pow_int(self.p, prec.max(1) as u32);
        let x = t.to_int().unwrap();
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * &x + c).mod_floor(&m);
        }
        PadicNumber::from_int_abs(self.p, &acc, prec)
    }
}

fn mul_trunc(a: &[Int], b: &[Int], k: usize, m: &Int) -> Vec<Int> {
    let mut out = vec![Int::zero(); k];
    for (i, x) in a.iter().enumerate().take(k) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k - i) {
            out[i + j] += x * y;
        }
    }
    for c in out.iter_mut() {
        *c = c.mod_floor(m);
    }
    out
}

fn inv_trunc(a: &[Int], k: usize, m: &Int) -> Option<Vec<Int>> {
    let c0 = arith::mod_inverse(a.first()?, m)?;
    let mut out = vec![Int::zero(); k];
    out[0] = c0.clone();
    for i in 1..k {
        let mut s = Int::zero();
        for j in 1..=i.min(a.len() - 1) {
            s += &a[j] * &out[i - j];
        }
        out[i] = (-s * &c0).mod_floor(m);
    }
    Some(out)
}

/// `theta_n = (1+T)^{p^n} - 1` as exact integer coefficients.
pub fn theta_poly(n: u32, p: u64) -> Vec<Int> {
    let deg = num_traits::pow(p, n as usize);
    let mut c: Vec<Int> = (0..=deg).map(|i| arith::binomial(deg, i)).collect();
    c[0] = Int::zero();
    c
}

/// `theta_n` in the truncated algebra, with a flag set when `p^n >= K` cuts it off.
pub fn theta(n: u32, p: u64, digits: u32, k: usize) -> Result<(LambdaElement, bool)> {
    arith::require_prime(p)?;
    let deg = p.checked_pow(n).ok_or(Error::BoundExceeded { what: "p^n", value: u64::MAX, bound: k as u64 })?;
    let truncated = deg as usize >= k;
    let c = if truncated {
        (0..k as u64).map(|i| if i == 0 { Int::zero() } else { arith::binomial(deg, i) }).collect()
    } else {
        theta_poly(n, p)
    };
    Ok((LambdaElement::new(p, &c, digits, k)?, truncated))
}

/// Default topological generator `kappa(gamma)` of `1 + qZ_p`.
pub fn default_kappa(p: u64, digits: u32) -> Result<PadicNumber> {
    PadicNumber::from_i64(p, if p == 2 { 5 } else { 1 + p as i64 }, digits)
}

/// `f(kappa^{s-1} - 1)`, the value of the analytic function attached to `f` at `s`.
pub fn evaluate_lp(f: &LambdaElement, s: &PadicNumber, kappa: &PadicNumber) -> Result<PadicNumber> {
    let p = f.p;
    if s.prime() != p || kappa.prime() != p {
        return Err(Error::PrimeMismatch(p, if s.prime() != p { s.prime() } else { kappa.prime() }));
    }
    let one = PadicNumber::one(p, kappa.precision().max(1))?;
    let need = if p == 2 { 2 } else { 1 };
    let disp = kappa.sub(&one)?;
    if kappa.valuation() != Valuation::Finite(0) || disp.valuation() != Valuation::Finite(need) {
        return Err(Error::Invalid("kappa must generate 1 + qZ_p".into()));
    }
    if matches!(s.valuation(), Valuation::Finite(v) if v < 0) {
        return Err(Error::Invalid("s must be a p-adic integer".into()));
    }
    let s1 = s.sub(&PadicNumber::one(p, s.precision().max(kappa.precision()).max(1))?)?;
    let t0 = s1.mul(&kappa.iwasawa_log()?)?.exp()?.sub(&one)?;
    f.eval(&t0)
}

impl fmt::Display for LambdaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.balanced().iter().map(|x| x.to_string()).collect();
        write!(f, "p={} N={} K={} coeffs=[{}]", self.p, self.n, self.k, c.join(","))
    }
}

impl FromStr for LambdaElement {
    type Err = Error;

    /// Parses `p=3 N=30 K=40 coeffs=[3,3,1]`; `N` and `K` are optional.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut n = crate::DEFAULT_DIGITS;
        let mut k = crate::DEFAULT_T_PRECISION;
        let bad = |what: &str| Error::Parse(what.to_string());
        let s = s.trim();
        let (head, list) = match s.find("coeffs=") {
            Some(i) => (&s[..i], &s[i + 7..]),
            None => return Err(bad("missing coeffs=[...]")),
        };
        for tok in head.split_whitespace() {
            let (key, val) = tok.split_once('=').ok_or_else(|| bad(tok))?;
            match key {
                "p" => p = Some(val.parse::<u64>().map_err(|_| bad(tok))?),
                "N" => n = val.parse().map_err(|_| bad(tok))?,
                "K" => k = val.parse().map_err(|_| bad(tok))?,
                _ => return Err(bad(tok)),
            }
        }
        let list = list.trim();
        let inner = list
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("coeffs must be a bracketed list"))?;
        let mut v = Vec::new();
        for part in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            v.push(part.parse::<Int>().map_err(|_| bad(part))?);
        }
        if v.len() > k {
            return Err(bad("more coefficients than K"));
        }
        let p = p.ok_or_else(|| bad("missing p"))?;
        LambdaElement::new(p, &v, n, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(p: u64, c: &[i64]) -> LambdaElement {
        LambdaElement::from_i64(p, c, 30, 40).unwrap()
    }

    #[test]
    fn invariants_of_examples() {
        assert_eq!(el(5, &[5]).mu_lambda().unwrap(), (1, 0));
        assert_eq!(el(3, &[3, 3, 1]).mu_lambda().unwrap(), (0, 2));
        assert!(el(7, &[1]).is_unit());
        assert_eq!(el(3, &[0]).mu_lambda(), Err(Error::ZeroSeries));
    }

    #[test]
    fn theta_expansions() {
        let (t0, tr) = theta(0, 5, 30, 40).unwrap();
        assert!(!tr);
        assert_eq!(t0, el(5, &[0, 1]));
        assert_eq!(theta(1, 3, 30, 40).unwrap().0, el(3, &[0, 3, 3, 1]));
        assert_eq!(theta(1, 2, 30, 40).unwrap().0, el(2, &[0, 2, 1]));
        assert!(theta(4, 3, 30, 40).unwrap().1);
    }

    #[test]
    fn involution_examples() {
        let t = el(3, &[0, 1]);
        assert_eq!(t.involution().balanced()[..4], [0, -1, 1, -1].map(Int::from));
        // ι(T²+3T+3) = (1+T)^{-2} (T²+3T+3)
        let f = el(3, &[3, 3, 1]);
        let inv_sq = el(3, &[1, 2, 1]).inverse().unwrap();
        assert_eq!(f.involution(), f.mul(&inv_sq).unwrap());
        let g = el(2, &[2, 1]);
        assert_eq!(g.involution(), g.mul(&el(2, &[1, 1]).inverse().unwrap()).unwrap());
    }

    #[test]
    fn reduction_shapes() {
        assert_eq!(el(3, &[3, 3, 1]).mod_p_shape().unwrap(), 2);
        assert_eq!(el(7, &[1, 7]).mod_p_shape().unwrap(), 0);
        assert_eq!(el(2, &[2, 1]).mod_p_shape().unwrap(), 1);
        assert!(el(3, &[3]).mod_p_shape().is_err());
    }

    #[test]
    fn lp_values() {
        let kappa = default_kappa(5, 30).unwrap();
        let t = el(5, &[0, 1]);
        let one = PadicNumber::from_i64(5, 1, 30).unwrap();
        let two = PadicNumber::from_i64(5, 2, 30).unwrap();
        assert!(evaluate_lp(&t, &one, &kappa).unwrap().is_zero());
        assert_eq!(evaluate_lp(&t, &two, &kappa).unwrap().to_int().unwrap(), Int::from(5));
        let c = el(5, &[5]);
        assert_eq!(evaluate_lp(&c, &PadicNumber::from_i64(5, 17, 30).unwrap(), &kappa).unwrap().to_int().unwrap(), Int::from(5));
        let bad = PadicNumber::from_i64(5, 26, 30).unwrap();
        assert!(evaluate_lp(&t, &two, &bad).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let f: LambdaElement = "p=3 N=30 K=40 coeffs=[3,3,1]".parse().unwrap();
        assert_eq!(f, el(3, &[3, 3, 1]));
        assert_eq!(f.to_string(), "p=3 N=30 K=40 coeffs=[3,3,1]");
        let g: LambdaElement = "p=3 coeffs=[-3, 1]".parse().unwrap();
        assert_eq!(g.to_string(), "p=3 N=30 K=40 coeffs=[-3,1]");
        assert!("p=4 coeffs=[1]".parse::<LambdaElement>().is_err());
        assert!("p=3 coeffs=1".parse::<LambdaElement>().is_err());
    }
}
