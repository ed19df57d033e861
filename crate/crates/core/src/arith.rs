//! Elementary integer arithmetic: primality, factoring, valuations, residues.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Int, Rat, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all of `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Miller-Rabin on big integers. Deterministic below 3.3e24 (first 13 prime bases),
/// probabilistic with negligible error above.
pub fn is_prime_big(n: &Int) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    const BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    for &p in &BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = Int::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for &a in &BASES {
        let mut x = Int::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

fn pollard_brent(n: &Int) -> Option<Int> {
    if n.is_even() {
        return Some(Int::from(2));
    }
    let one = Int::one();
    for c in 1u32..64 {
        let c = Int::from(c);
        let f = |x: &Int| (x * x + &c) % n;
        let mut y = Int::from(2);
        let mut r: u64 = 1;
        let mut q = Int::one();
        let m = 128u64;
        let mut g = Int::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            if r > 1 << 24 {
                break;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != one && g != *n {
            return Some(g);
        }
    }
    None
}

/// Prime factorisation of `|n|` (n nonzero), sorted by prime.
pub fn factor(n: &Int) -> Result<Vec<(Int, u32)>> {
    if n.is_zero() {
        return Err(Error::Invalid("cannot factor zero".into()));
    }
    let mut m = n.abs();
    let mut out: Vec<(Int, u32)> = Vec::new();
    for p in primes_up_to(10_000) {
        let pb = Int::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    let mut stack = Vec::new();
    if !m.is_one() {
        stack.push(m);
    }
    while let Some(k) = stack.pop() {
        if k.is_one() {
            continue;
        }
        if is_prime_big(&k) {
            match out.iter_mut().find(|(q, _)| *q == k) {
                Some(entry) => entry.1 += 1,
                None => out.push((k, 1)),
            }
            continue;
        }
        let r = k.sqrt();
        if &r * &r == k {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = pollard_brent(&k).ok_or_else(|| Error::Factorization(alloc::format!("{k}")))?;
        stack.push(&k / &d);
        stack.push(d);
    }
    out.sort();
    Ok(out)
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn vp(n: &Int, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&Int::from(p));
        if !r.is_zero() {
            return Some(e);
        }
        m = q;
        e += 1;
    }
}

pub fn vp_u64(mut n: u64, p: u64) -> u32 {
    assert!(n != 0 && p > 1);
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

pub fn vp_rat(x: &Rat, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(vp(x.numer(), p).unwrap() as i64 - vp(x.denom(), p).unwrap() as i64)
}

/// Divides out every factor of `p` and returns `(e, n / p^e)`.
pub fn split_p(n: &Int, p: u64) -> (u32, Int) {
    let mut m = n.clone();
    let mut e = 0;
    let pb = Int::from(p);
    while !m.is_zero() && (&m % &pb).is_zero() {
        m /= &pb;
        e += 1;
    }
    (e, m)
}

/// Largest `e` with `p^e <= k`.
pub fn ilog(k: u64, p: u64) -> u32 {
    let mut e = 0;
    let mut acc = p;
    while acc <= k {
        e += 1;
        match acc.checked_mul(p) {
            Some(a) => acc = a,
            None => break,
        }
    }
    e
}

pub fn pow_int(p: u64, e: u32) -> Int {
    num_traits::pow(Int::from(p), e as usize)
}

/// Residue in `[0, m)`.
pub fn modulo(a: &Int, m: &Int) -> Int {
    a.mod_floor(m)
}

/// Residue in `(-m/2, m/2]`.
pub fn balanced(a: &Int, m: &Int) -> Int {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Reduction of a rational with `p`-integral denominator modulo `m` (a power of `p`).
pub fn rat_mod(x: &Rat, m: &Int) -> Option<Int> {
    let inv = mod_inverse(x.denom(), m)?;
    Some((x.numer() * inv).mod_floor(m))
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &Int, p: u64) -> i32 {
    let r = a.mod_floor(&Int::from(p)).to_u64().unwrap();
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Whether a nonzero rational is a square in `Q_p`.
pub fn is_square_qp(x: &Rat, p: u64) -> bool {
    let v = vp_rat(x, p).expect("nonzero");
    if v % 2 != 0 {
        return false;
    }
    let (_, n) = split_p(x.numer(), p);
    let (_, d) = split_p(x.denom(), p);
    let u = n * d;
    if p == 2 {
        u.mod_floor(&Int::from(8)) == Int::one()
    } else {
        legendre(&u, p) == 1
    }
}

pub fn is_square(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn is_square_rat(x: &Rat) -> bool {
    !x.is_negative() && is_square(x.numer()) && is_square(x.denom())
}

/// Chinese remaindering of `(residue, modulus)` pairs with pairwise coprime moduli.
pub fn crt(parts: &[(Int, Int)]) -> Result<(Int, Int)> {
    let mut r = Int::zero();
    let mut m = Int::one();
    for (a, n) in parts {
        let inv = mod_inverse(&m, n)
            .ok_or_else(|| Error::Invalid("CRT moduli are not coprime".into()))?;
        let t = ((a - &r) * inv).mod_floor(n);
        r += &m * t;
        m *= n;
    }
    Ok((r.mod_floor(&m), m))
}

pub fn factorial_vp(k: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut q = p;
    while q <= k {
        e += k / q;
        match q.checked_mul(p) {
            Some(n) => q = n,
            None => break,
        }
    }
    e
}

pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut r = Int::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Number of square divisors `d^2 | n` listed as the positive `d`.
pub fn square_divisor_roots(fac: &[(Int, u32)]) -> Vec<Int> {
    let mut out = vec![Int::one()];
    for (p, e) in fac {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = Int::one();
            for _ in 0..=(e / 2) {
                next.push(d * &pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_agrees_with_trial_division() {
        for n in 0u64..5000 {
            let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), naive, "{n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factor_roundtrip() {
        let n: Int = "1000000016000000063".parse().unwrap(); // 1000000007 * 1000000009
        let f = factor(&n).unwrap();
        assert_eq!(f.len(), 2);
        let back: Int = f.iter().map(|(p, e)| num_traits::pow(p.clone(), *e as usize)).product();
        assert_eq!(back, n);
        let f = factor(&Int::from(-(2i64.pow(10) * 3i64.pow(5) * 49))).unwrap();
        assert_eq!(f, vec![(Int::from(2), 10), (Int::from(3), 5), (Int::from(7), 2)]);
    }

    #[test]
    fn crt_small() {
        let (r, m) = crt(&[(Int::from(2), Int::from(3)), (Int::from(3), Int::from(5))]).unwrap();
        assert_eq!((r, m), (Int::from(8), Int::from(15)));
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&Int::from(250), 5), Some(3));
        assert_eq!(vp_rat(&rat_frac(3, 50), 5), Some(-2));
        assert_eq!(factorial_vp(10, 2), 8);
        assert_eq!(ilog(9, 3), 2);
        assert_eq!(ilog(8, 3), 1);
    }

    #[test]
    fn squares_in_qp() {
        assert!(is_square_qp(&rat(17), 2));
        assert!(!is_square_qp(&rat(5), 2));
        assert!(is_square_qp(&rat(4), 5));
        assert!(!is_square_qp(&rat(2), 5));
        assert!(!is_square_qp(&rat(5), 5));
    }
}
