//! p-adic numbers at a fixed digit budget.
//!
//! A nonzero value is `p^v * u` with `u` a unit known modulo `p^N` (`N` is the
//! relative precision). A zero carries its absolute precision in `v`: it is only
//! known to be divisible by `p^v`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, pow_int};
use crate::{Error, Int, Rat, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicNumber {
    p: u64,
    val: i64,
    unit: Int,
    prec: u32,
    zero: bool,
}

impl PadicNumber {
    /// Builds `p^val * unit` with `unit` reduced modulo `p^prec`.
    pub fn new(p: u64, val: i64, unit: &Int, prec: u32) -> Result<Self> {
        arith::require_prime(p)?;
        if prec == 0 {
            return Err(Error::PrecisionExhausted { context: "construction", achieved: 0 });
        }
        let m = pow_int(p, prec);
        let u = unit.mod_floor(&m);
        if (&u % p).is_zero() {
            return Err(Error::NotAUnit);
        }
        Ok(PadicNumber { p, val, unit: u, prec, zero: false })
    }

    /// The zero element known modulo `p^abs_prec`.
    pub fn zero(p: u64, abs_prec: i64) -> Result<Self> {
        arith::require_prime(p)?;
        Ok(Self::zero_unchecked(p, abs_prec))
    }

    fn zero_unchecked(p: u64, abs_prec: i64) -> Self {
        PadicNumber { p, val: abs_prec, unit: Int::zero(), prec: 0, zero: true }
    }

    pub fn one(p: u64, digits: u32) -> Result<Self> {
        Self::new(p, 0, &Int::one(), digits)
    }

    /// An integer with `digits` digits of relative precision. Zero is known mod `p^digits`.
    pub fn from_int(p: u64, n: &Int, digits: u32) -> Result<Self> {
        arith::require_prime(p)?;
        if n.is_zero() {
            return Ok(Self::zero_unchecked(p, digits as i64));
        }
        let (v, u) = arith::split_p(n, p);
        Self::new(p, v as i64, &u, digits)
    }

    pub fn from_i64(p: u64, n: i64, digits: u32) -> Result<Self> {
        Self::from_int(p, &Int::from(n), digits)
    }

    pub fn from_rational(p: u64, x: &Rat, digits: u32) -> Result<Self> {
        arith::require_prime(p)?;
        if x.is_zero() {
            return Ok(Self::zero_unchecked(p, digits as i64));
        }
        let (vn, un) = arith::split_p(x.numer(), p);
        let (vd, ud) = arith::split_p(x.denom(), p);
        let m = pow_int(p, digits);
        let inv = arith::mod_inverse(&ud, &m).ok_or(Error::DivisionByZero)?;
        Self::new(p, vn as i64 - vd as i64, &(un * inv), digits)
    }

    /// A value known modulo `p^abs_prec` (absolute precision), e.g. a series sum.
    pub fn from_int_abs(p: u64, n: &Int, abs_prec: i64) -> Result<Self> {
        arith::require_prime(p)?;
        if abs_prec <= 0 {
            return Ok(Self::zero_unchecked(p, abs_prec));
        }
        let r = n.mod_floor(&pow_int(p, abs_prec as u32));
        if r.is_zero() {
            return Ok(Self::zero_unchecked(p, abs_prec));
        }
        let (v, u) = arith::split_p(&r, p);
        Self::new(p, v as i64, &u, (abs_prec - v as i64) as u32)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn valuation(&self) -> Valuation {
        if self.zero {
            Valuation::Infinity
        } else {
            Valuation::Finite(self.val)
        }
    }

    /// Unit part modulo `p^N`, zero for the zero element.
    pub fn unit(&self) -> &Int {
        &self.unit
    }

    /// Relative precision (significant digits); 0 for zero.
    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// The exponent `a` such that the value is known modulo `p^a`.
    pub fn absolute_precision(&self) -> i64 {
        if self.zero {
            self.val
        } else {
            self.val + self.prec as i64
        }
    }

    /// Exact rational representative `p^v * u`.
    pub fn to_rational(&self) -> Rat {
        if self.zero {
            return Rat::zero();
        }
        let pv = pow_int(self.p, self.val.unsigned_abs() as u32);
        if self.val >= 0 {
            Rat::from_integer(&self.unit * pv)
        } else {
            Rat::new(self.unit.clone(), pv)
        }
    }

    /// Integer representative in `[0, p^a)` where `a` is the absolute precision.
    pub fn to_int(&self) -> Option<Int> {
        if self.zero {
            return Some(Int::zero());
        }
        if self.val < 0 {
            return None;
        }
        Some(&self.unit * pow_int(self.p, self.val as u32))
    }

    /// Integer representative in `(-p^a/2, p^a/2]`.
    pub fn to_balanced_int(&self) -> Option<Int> {
        let x = self.to_int()?;
        let a = self.absolute_precision();
        if a <= 0 {
            return Some(x);
        }
        Some(arith::balanced(&x, &pow_int(self.p, a as u32)))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            Err(Error::PrimeMismatch(self.p, other.p))
        } else {
            Ok(())
        }
    }

    pub fn neg(&self) -> Self {
        if self.zero {
            return self.clone();
        }
        let m = pow_int(self.p, self.prec);
        PadicNumber { unit: (-&self.unit).mod_floor(&m), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let abs = self.absolute_precision().min(other.absolute_precision());
        let low = self.val.min(other.val);
        if abs <= low {
            return Ok(Self::zero_unchecked(self.p, abs));
        }
        let shift = |x: &Self| -> Int {
            if x.zero {
                Int::zero()
            } else {
                &x.unit * pow_int(x.p, (x.val - low) as u32)
            }
        };
        let m = pow_int(self.p, (abs - low) as u32);
        let s = (shift(self) + shift(other)).mod_floor(&m);
        if s.is_zero() {
            return Ok(Self::zero_unchecked(self.p, abs));
        }
        let (v, u) = arith::split_p(&s, self.p);
        Self::new(self.p, low + v as i64, &u, (abs - low - v as i64) as u32)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        match (self.zero, other.zero) {
            (true, true) => return Ok(Self::zero_unchecked(self.p, self.val + other.val)),
            (true, false) => return Ok(Self::zero_unchecked(self.p, self.val + other.val)),
            (false, true) => return Ok(Self::zero_unchecked(self.p, self.val + other.val)),
            _ => {}
        }
        let prec = self.prec.min(other.prec);
        Self::new(self.p, self.val + other.val, &(&self.unit * &other.unit), prec)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.zero {
            return Err(Error::DivisionByZero);
        }
        let m = pow_int(self.p, self.prec);
        let u = arith::mod_inverse(&self.unit, &m).ok_or(Error::DivisionByZero)?;
        Self::new(self.p, -self.val, &u, self.prec)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let inv = other.inv()?;
        if self.zero {
            return Ok(Self::zero_unchecked(self.p, self.val - other.val));
        }
        self.mul(&inv)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        if base.zero {
            return Ok(Self::zero_unchecked(self.p, base.val * e as i64));
        }
        let m = pow_int(self.p, base.prec);
        let u = base.unit.modpow(&Int::from(e), &m);
        Self::new(self.p, base.val * e as i64, &u, base.prec)
    }

    /// Equality modulo the smaller of the two absolute precisions.
    pub fn congruent(&self, other: &Self) -> bool {
        self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Splits a unit into its root-of-unity part and its principal part.
    ///
    /// For odd `p` the first component is the Teichmüller representative of
    /// `x mod p`; for `p = 2` it is `±1` and the principal part lies in `1 + 4Z_2`.
    pub fn unit_decompose(&self) -> Result<(Int, PadicNumber)> {
        if self.zero || self.val != 0 {
            return Err(Error::NotAUnit);
        }
        let n = self.prec;
        let m = pow_int(self.p, n);
        let teich = if self.p == 2 {
            if n < 2 {
                return Err(Error::PrecisionExhausted { context: "unit_decompose", achieved: n });
            }
            if (&self.unit % 4u32) == Int::one() {
                Int::one()
            } else {
                &m - 1
            }
        } else {
            teichmuller(&self.unit, self.p, n)
        };
        let inv = arith::mod_inverse(&teich, &m).ok_or(Error::NotAUnit)?;
        let principal = Self::new(self.p, 0, &(&self.unit * inv), n)?;
        Ok((teich, principal))
    }

    /// Iwasawa's branch of the p-adic logarithm, normalised by `log_p(p) = 0`.
    pub fn iwasawa_log(&self) -> Result<PadicNumber> {
        if self.zero {
            return Err(Error::DivisionByZero);
        }
        let unit = Self::new(self.p, 0, &self.unit, self.prec)?;
        let (_, principal) = unit.unit_decompose()?;
        let n = self.prec;
        let t = principal.unit.clone() - 1u32;
        log_one_plus(self.p, &t, n)
    }

    /// `exp(x)` for `v(x) > 1/(p-1)`; only used internally and as a test oracle.
    pub(crate) fn exp(&self) -> Result<PadicNumber> {
        let p = self.p;
        if self.zero {
            return Self::one(p, self.val.max(1) as u32);
        }
        let need = if p == 2 { 2 } else { 1 };
        if self.val < need {
            return Err(Error::Invalid("exp series does not converge".into()));
        }
        let abs = self.absolute_precision();
        if abs <= 0 {
            return Err(Error::PrecisionExhausted { context: "exp", achieved: 0 });
        }
        let x = self.to_int().unwrap();
        exp_series(p, &x, self.val as u64, abs as u32)
    }
}

/// Teichmüller lift of `a mod p` computed modulo `p^n` by iterating `a -> a^p`.
pub fn teichmuller(a: &Int, p: u64, n: u32) -> Int {
    let m = pow_int(p, n);
    let pb = Int::from(p);
    let mut x = a.mod_floor(&m);
    loop {
        let y = x.modpow(&pb, &m);
        if y == x {
            return x;
        }
        x = y;
    }
}

/// `log(1 + t)` for `t ≡ 0 mod p` (mod 4 if `p = 2`), result known mod `p^n`.
fn log_one_plus(p: u64, t: &Int, n: u32) -> Result<PadicNumber> {
    let modn = pow_int(p, n);
    let t = t.mod_floor(&modn);
    if t.is_zero() {
        return PadicNumber::zero(p, n as i64);
    }
    let vt = arith::vp(&t, p).unwrap() as u64;
    if vt == 0 || (p == 2 && vt < 2) {
        return Err(Error::Invalid("log series does not converge".into()));
    }
    let mut kmax = 1u64;
    while (kmax * vt) < n as u64 + arith::ilog(kmax, p) as u64 {
        kmax += 1;
    }
    let extra = arith::ilog(kmax, p);
    let work = pow_int(p, n + extra);
    let mut sum = Int::zero();
    let mut tk = Int::one();
    for k in 1..kmax {
        tk = (tk * &t).mod_floor(&work);
        let e = arith::vp_u64(k, p);
        let ku = k / num_traits::pow(p, e as usize);
        let term = &tk / pow_int(p, e);
        let inv = arith::mod_inverse(&Int::from(ku), &modn).unwrap();
        let term = (term * inv).mod_floor(&modn);
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    PadicNumber::from_int_abs(p, &sum, n as i64)
}

fn exp_series(p: u64, x: &Int, vx: u64, n: u32) -> Result<PadicNumber> {
    let modn = pow_int(p, n);
    // stop once k*v(x) - (k-1)/(p-1) >= n; that bound dominates v_p(k!)
    let mut kmax = 1u64;
    while (kmax * vx) * (p - 1) < n as u64 * (p - 1) + (kmax - 1) {
        kmax += 1;
    }
    let extra = arith::factorial_vp(kmax, p) as u32;
    let work = pow_int(p, n + extra);
    let mut sum = Int::one();
    let mut xk = Int::one();
    let mut fact_unit = Int::one();
    for k in 1..kmax {
        xk = (xk * x).mod_floor(&work);
        let e = arith::vp_u64(k, p);
        fact_unit = (fact_unit * (k / num_traits::pow(p, e as usize))).mod_floor(&modn);
        let fv = arith::factorial_vp(k, p) as u32;
        let term = &xk / pow_int(p, fv);
        let inv = arith::mod_inverse(&fact_unit, &modn).unwrap();
        sum += term * inv;
    }
    PadicNumber::from_int_abs(p, &sum, n as i64)
}

/// Applies one of the four field operations.
pub fn padic_arith(x: &PadicNumber, y: &PadicNumber, op: Op) -> Result<PadicNumber> {
    match op {
        Op::Add => x.add(y),
        Op::Sub => x.sub(y),
        Op::Mul => x.mul(y),
        Op::Div => x.div(y),
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "O({}^{})", self.p, self.val);
        }
        let m = pow_int(self.p, self.prec);
        let u = arith::balanced(&self.unit, &m);
        if self.val == 0 {
            write!(f, "{u} + O({}^{})", self.p, self.absolute_precision())
        } else {
            let sign = if u.is_negative() { "-" } else { "" };
            write!(f, "{sign}{}^{}*{} + O({}^{})", self.p, self.val, u.abs(), self.p, self.absolute_precision())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;

    fn pn(p: u64, n: i64) -> PadicNumber {
        PadicNumber::from_i64(p, n, 30).unwrap()
    }

    #[test]
    fn inverse_pair() {
        let a = pn(5, 5);
        let b = PadicNumber::from_rational(5, &rat_frac(1, 5), 30).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c.valuation(), Valuation::Finite(0));
        assert_eq!(c.to_int().unwrap(), Int::from(1));
    }

    #[test]
    fn square_of_four() {
        let c = pn(3, 4).mul(&pn(3, 4)).unwrap();
        assert_eq!(c.valuation(), Valuation::Finite(0));
        assert_eq!(c.unit(), &Int::from(16));
    }

    #[test]
    fn sum_gains_valuation() {
        let c = pn(5, 10).add(&pn(5, 15)).unwrap();
        assert_eq!(c.valuation(), Valuation::Finite(2));
        assert_eq!(c.to_int().unwrap(), Int::from(25));
        // absolute precision is kept, relative precision shrinks
        assert_eq!(c.absolute_precision(), 31);
    }

    #[test]
    fn cancellation_gives_zero_with_precision() {
        let c = pn(7, 12).sub(&pn(7, 12)).unwrap();
        assert!(c.is_zero());
        assert_eq!(c.absolute_precision(), 30);
        assert_eq!(pn(7, 1).div(&c), Err(Error::DivisionByZero));
    }

    #[test]
    fn prime_mismatch() {
        assert_eq!(pn(5, 1).add(&pn(7, 1)), Err(Error::PrimeMismatch(5, 7)));
        assert_eq!(PadicNumber::from_i64(6, 1, 10), Err(Error::NotPrime(6)));
    }

    #[test]
    fn teichmuller_of_two_mod_five() {
        let (w, u) = pn(5, 2).unit_decompose().unwrap();
        let m = pow_int(5, 30);
        assert_eq!(&w % 5u32, Int::from(2));
        assert_eq!(w.modpow(&Int::from(4), &m), Int::one());
        assert_eq!((u.unit() - 1u32) % 5u32, Int::zero());
        assert_eq!((w * u.unit()) % &m, Int::from(2));
    }

    #[test]
    fn decompose_trivial_cases() {
        let (w, u) = pn(3, 1).unit_decompose().unwrap();
        assert_eq!((w, u.unit().clone()), (Int::one(), Int::one()));
        let (w, u) = pn(2, -1).unit_decompose().unwrap();
        assert_eq!(w, pow_int(2, 30) - 1u32);
        assert_eq!(u.unit(), &Int::one());
        assert!(pn(3, 3).unit_decompose().is_err());
    }

    #[test]
    fn log_of_p_vanishes() {
        assert!(pn(5, 5).iwasawa_log().unwrap().is_zero());
        assert!(pn(2, 8).iwasawa_log().unwrap().is_zero());
    }

    #[test]
    fn log_kills_roots_of_unity() {
        let (zeta, _) = pn(5, 2).unit_decompose().unwrap();
        let z = PadicNumber::from_int(5, &zeta, 30).unwrap();
        assert!(z.iwasawa_log().unwrap().is_zero());
        assert!(pn(3, -1).iwasawa_log().unwrap().is_zero());
    }

    #[test]
    fn exp_inverts_log() {
        let x = pn(3, 4);
        let l = x.iwasawa_log().unwrap();
        let back = l.exp().unwrap();
        let (w, _) = x.unit_decompose().unwrap();
        let expected = x.div(&PadicNumber::from_int(3, &w, 30).unwrap()).unwrap();
        assert!(back.congruent(&expected));
    }

    #[test]
    fn log_of_one_plus_p() {
        // log(1+p) has valuation exactly 1 for odd p
        assert_eq!(pn(7, 8).iwasawa_log().unwrap().valuation(), Valuation::Finite(1));
        assert_eq!(pn(2, 5).iwasawa_log().unwrap().valuation(), Valuation::Finite(2));
    }
}
