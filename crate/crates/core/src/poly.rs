//! Dense univariate polynomials over `Q`, little-endian coefficient vectors.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

pub type QPoly = Vec<Rat>;

pub fn trim(a: &mut QPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn from_ints(c: &[Int]) -> QPoly {
    let mut v: QPoly = c.iter().map(|x| Rat::from_integer(x.clone())).collect();
    trim(&mut v);
    v
}

pub fn from_i64(c: &[i64]) -> QPoly {
    let v: Vec<Int> = c.iter().map(|&x| Int::from(x)).collect();
    from_ints(&v)
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(a: &[Rat]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[Rat], b: &[Rat]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub fn neg(a: &[Rat]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> QPoly {
    add(a, &neg(b))
}

pub fn scale(a: &[Rat], s: &Rat) -> QPoly {
    let mut out: QPoly = a.iter().map(|c| c * s).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[Rat], b: &[Rat]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division; panics on a zero divisor.
pub fn divrem(a: &[Rat], b: &[Rat]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let lead = b[db].clone();
    let mut q = vec![Rat::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[Rat], b: &[Rat]) -> QPoly {
    divrem(a, b).1
}

pub fn monic(a: &[Rat]) -> QPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(a, &(Rat::one() / &a[d])),
    }
}

/// Monic gcd.
pub fn gcd(a: &[Rat], b: &[Rat]) -> QPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn xgcd(a: &[Rat], b: &[Rat]) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rat::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![Rat::one()]);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    match degree(&r0) {
        None => (r0, s0, t0),
        Some(d) => {
            let inv = Rat::one() / &r0[d];
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn eval(a: &[Rat], x: &Rat) -> Rat {
    a.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// Resultant over `Q` via the Euclidean remainder sequence.
pub fn resultant(a: &[Rat], b: &[Rat]) -> Rat {
    let (Some(da), Some(db)) = (degree(a), degree(b)) else {
        return Rat::zero();
    };
    if db == 0 {
        return num_traits::pow(b[0].clone(), da);
    }
    if da == 0 {
        return num_traits::pow(a[0].clone(), db);
    }
    let r = rem(a, b);
    let Some(dr) = degree(&r) else {
        return Rat::zero();
    };
    let sign = if (da * db) % 2 == 1 { -Rat::one() } else { Rat::one() };
    sign * num_traits::pow(b[db].clone(), da - dr) * resultant(b, &r)
}

/// Formal derivative.
pub fn derivative(a: &[Rat]) -> QPoly {
    let mut out: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
        .collect();
    trim(&mut out);
    out
}

fn divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let fac = crate::arith::factor(&n).unwrap_or_default();
    let mut out = vec![Int::one()];
    for (p, e) in fac {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = Int::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out
}

/// Rational roots by the rational root test on the primitive integer multiple.
pub fn rational_roots(a: &[Rat]) -> Vec<Rat> {
    let Some(d) = degree(a) else { return Vec::new() };
    let den = a.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Int> = a[..=d].iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    let mut out = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        out.push(Rat::zero());
    }
    let ints = &ints[low..];
    if ints.len() == 1 {
        return out;
    }
    let c0 = &ints[0];
    let cn = ints.last().unwrap();
    let q = from_ints(ints);
    for num in divisors(c0) {
        for den in divisors(cn) {
            for s in [Int::one(), -Int::one()] {
                let r = Rat::new(&num * &s, den.clone());
                if eval(&q, &r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

/// Whether a squarefree-tested polynomial of degree at most 4 is irreducible over `Q`.
///
/// Degree 2 and 3 reduce to the rational root test; degree 4 additionally rules
/// out a product of two monic integer quadratics (Gauss's lemma) by trial over the
/// divisors of the constant term.
pub fn is_irreducible_small(a: &[Rat]) -> Option<bool> {
    let d = degree(a)?;
    if d == 0 {
        return Some(false);
    }
    if d == 1 {
        return Some(true);
    }
    if !rational_roots(a).is_empty() {
        return Some(false);
    }
    match d {
        2 | 3 => Some(true),
        4 => {
            let m = monic(a);
            if m.iter().any(|c| !c.is_integer()) {
                return None;
            }
            let c: Vec<Int> = m.iter().map(|x| x.to_integer()).collect();
            // x^4 + c3 x^3 + c2 x^2 + c1 x + c0 = (x^2 + u x + b)(x^2 + v x + e)
            for b in divisors(&c[0]).into_iter().flat_map(|b| [b.clone(), -b]) {
                let e = &c[0] / &b;
                // u + v = c3, uv + b + e = c2, u e + v b = c1
                // v = c3 - u  =>  u (e - b) = c1 - c3 b
                let lhs = &e - &b;
                let rhs = &c[1] - &c[3] * &b;
                let cands: Vec<Int> = if lhs.is_zero() {
                    if !rhs.is_zero() {
                        continue;
                    }
                    // u(c3 - u) = c2 - b - e
                    let disc: Int = &c[3] * &c[3] - (&c[2] - &b - &e) * Int::from(4);
                    if disc.is_negative() || !crate::arith::is_square(&disc) {
                        continue;
                    }
                    let s = disc.sqrt();
                    let mut v = Vec::new();
                    for t in [&c[3] + &s, &c[3] - &s] {
                        if t.is_even() {
                            v.push(t / 2);
                        }
                    }
                    v
                } else if (&rhs % &lhs).is_zero() {
                    vec![&rhs / &lhs]
                } else {
                    continue;
                };
                for u in cands {
                    let v = &c[3] - &u;
                    if &u * &v + &b + &e == c[2] && &u * &e + &v * &b == c[1] {
                        return Some(false);
                    }
                }
            }
            Some(true)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn resultant_of_linears() {
        let a = from_i64(&[-3, 1]);
        let b = from_i64(&[-5, 1]);
        assert_eq!(resultant(&a, &b), rat(-2));
        // Res(x^2+1, x^2-1) = 4
        assert_eq!(resultant(&from_i64(&[1, 0, 1]), &from_i64(&[-1, 0, 1])), rat(4));
    }

    #[test]
    fn gcd_and_xgcd() {
        let a = mul(&from_i64(&[-1, 1]), &from_i64(&[2, 0, 1]));
        let b = mul(&from_i64(&[-1, 1]), &from_i64(&[3, 1]));
        assert_eq!(gcd(&a, &b), from_i64(&[-1, 1]));
        let (g, s, t) = xgcd(&a, &b);
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), g);
    }

    #[test]
    fn irreducibility() {
        assert_eq!(is_irreducible_small(&from_i64(&[1, -3, 0, 1])), Some(true));
        assert_eq!(is_irreducible_small(&from_i64(&[2, 0, -4, 0, 1])), Some(true));
        // (x^2+1)(x^2+2)
        assert_eq!(is_irreducible_small(&from_i64(&[2, 0, 3, 0, 1])), Some(false));
        assert_eq!(is_irreducible_small(&from_i64(&[-2, 0, 1])), Some(true));
        assert_eq!(is_irreducible_small(&from_i64(&[-4, 0, 1])), Some(false));
    }
}
