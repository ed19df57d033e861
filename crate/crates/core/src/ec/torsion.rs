//! Rational torsion via a Lutz–Nagell search on the short integral model.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::count::count_points;
use super::point::{Point, RationalPoint};
use super::Curve;
use crate::arith;
use crate::{Error, Int, Rat, Result};

/// Largest order of a rational torsion point over `Q`.
const MAZUR_MAX_ORDER: u64 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionGroup {
    /// Cyclic factor orders, each dividing the next; empty for the trivial group.
    pub invariants: Vec<u64>,
    pub generators: Vec<RationalPoint>,
    /// Every torsion point, including the identity.
    pub points: Vec<RationalPoint>,
    /// gcd of `#E(F_p)` over the auxiliary primes; the order divides it.
    pub search_bound: u64,
}

impl TorsionGroup {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    /// Size of the `p`-primary part.
    pub fn p_part(&self, p: u64) -> u64 {
        let n = self.order();
        p.pow(arith::vp_u64(n, p))
    }

    /// E.g. `Z/2 x Z/4`, or `0` when trivial.
    pub fn structure(&self) -> String {
        if self.invariants.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.invariants.iter().map(|n| alloc::format!("Z/{n}")).collect();
        parts.join(" x ")
    }
}

impl fmt::Display for TorsionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.structure())
    }
}

/// Integer roots of the monic cubic `X^3 + a X + c`.
fn cubic_integer_roots(a: &Int, c: &Int) -> Vec<Int> {
    let g = |x: &Int| x * x * x + a * x + c;
    let bound = Int::one() + a.abs().max(c.abs());
    // monotone pieces split at +-sqrt(-a/3)
    let mut pieces: Vec<(Int, Int, bool)> = Vec::new();
    if !a.is_negative() {
        pieces.push((-&bound, bound.clone(), true));
    } else {
        let q: Int = (-a) / 3;
        let fs = q.sqrt();
        let cs = if Int::from(3) * &fs * &fs == -a { fs.clone() } else { &fs + 1 };
        pieces.push((-&bound, -&cs, true));
        pieces.push((-&fs, fs.clone(), false));
        pieces.push((cs, bound.clone(), true));
    }
    let mut roots = Vec::new();
    for (lo, hi, increasing) in pieces {
        if lo > hi {
            continue;
        }
        // last x in [lo, hi] with g(x) <= 0 (or >= 0 when decreasing)
        let below = |x: &Int| {
            let v = g(x);
            if increasing {
                !v.is_positive()
            } else {
                !v.is_negative()
            }
        };
        if !below(&lo) {
            continue;
        }
        let (mut l, mut h) = (lo, hi);
        while l < h {
            let mid: Int = (&l + &h + Int::one()).div_floor(&Int::from(2));
            if below(&mid) {
                l = mid;
            } else {
                h = mid - 1;
            }
        }
        if g(&l).is_zero() && !roots.contains(&l) {
            roots.push(l);
        }
    }
    roots
}

/// Rational points of order 2.
pub fn two_torsion_points(e: &Curve) -> Vec<RationalPoint> {
    let a = -&e.c4 * 27;
    let b = -&e.c6 * 54;
    let three = Rat::from_integer(Int::from(3));
    let two = Rat::from_integer(Int::from(2));
    cubic_integer_roots(&a, &b)
        .into_iter()
        .map(|xs| {
            let x = (Rat::from_integer(xs) - &three * Rat::from_integer(e.b2.clone())) / Rat::from_integer(Int::from(36));
            let y = -(Rat::from_integer(e.a1.clone()) * &x + Rat::from_integer(e.a3.clone())) / &two;
            Point::Affine(x, y)
        })
        .collect()
}

fn small_good_primes_gcd(e: &Curve) -> Result<u64> {
    let mut g = 0u64;
    let mut found = 0;
    let mut p = 5;
    while found < 3 {
        match count_points(e, p) {
            Ok(n) => {
                g = g.gcd(&n);
                found += 1;
            }
            Err(Error::BadReduction(_)) => {}
            Err(err) => return Err(err),
        }
        p = arith::next_prime(p);
    }
    Ok(g)
}

/// Rational torsion subgroup with verified generators.
pub fn torsion(e: &Curve) -> Result<TorsionGroup> {
    let bound = small_good_primes_gcd(e)?;
    let mut points: Vec<RationalPoint> = alloc::vec![Point::Infinity];
    if bound > 1 {
        // Y^2 = X^3 + A X + B with X = 36x + 3 b2, Y = 108 (2y + a1 x + a3)
        let a = -&e.c4 * 27;
        let b = -&e.c6 * 54;
        // 4A^3 + 27B^2 = -2^8 3^12 disc
        let mut fac = arith::factor(&e.disc)?;
        for (q, extra) in [(2u64, 8u32), (3, 12)] {
            match fac.iter_mut().find(|(f, _)| *f == Int::from(q)) {
                Some(entry) => entry.1 += extra,
                None => fac.push((Int::from(q), extra)),
            }
        }
        let mut ys: Vec<Int> = alloc::vec![Int::zero()];
        for d in arith::square_divisor_roots(&fac) {
            ys.push(-&d);
            ys.push(d);
        }
        let three = Rat::from_integer(Int::from(3));
        let b2 = Rat::from_integer(e.b2.clone());
        for y_short in ys {
            for x_short in cubic_integer_roots(&a, &(&b - &y_short * &y_short)) {
                let x = (Rat::from_integer(x_short) - &three * &b2) / Rat::from_integer(Int::from(36));
                let y = (Rat::from_integer(y_short.clone()) / Rat::from_integer(Int::from(108))
                    - Rat::from_integer(e.a1.clone()) * &x
                    - Rat::from_integer(e.a3.clone()))
                    / Rat::from_integer(Int::from(2));
                let pt = Point::Affine(x, y);
                if !e.contains(&pt) {
                    return Err(Error::Inconsistent("Lutz-Nagell candidate off curve".into()));
                }
                if e.point_order(&pt, MAZUR_MAX_ORDER)?.is_some() && !points.contains(&pt) {
                    points.push(pt);
                }
            }
        }
    }
    let n = points.len() as u64;
    if bound % n != 0 {
        return Err(Error::Inconsistent(alloc::format!("torsion order {n} does not divide {bound}")));
    }
    let mut orders = Vec::with_capacity(points.len());
    for pt in &points {
        orders.push(e.point_order(pt, MAZUR_MAX_ORDER)?.expect("torsion point"));
    }
    let (invariants, generators) = if n == 1 {
        (Vec::new(), Vec::new())
    } else if let Some(i) = orders.iter().position(|&o| o == n) {
        (alloc::vec![n], alloc::vec![points[i].clone()])
    } else {
        // Z/2 x Z/2m
        let half = n / 2;
        let i = orders
            .iter()
            .position(|&o| o == half)
            .ok_or_else(|| Error::Inconsistent("torsion is neither cyclic nor Z/2 x Z/2m".into()))?;
        let gen = &points[i];
        let multiples: Vec<RationalPoint> =
            (0..half).map(|k| e.mul_point_i64(gen, k as i64)).collect::<Result<_>>()?;
        let j = (0..points.len())
            .find(|&j| orders[j] == 2 && !multiples.contains(&points[j]))
            .ok_or_else(|| Error::Inconsistent("missing independent 2-torsion point".into()))?;
        (alloc::vec![2, half], alloc::vec![points[j].clone(), gen.clone()])
    };
    for (g, &o) in generators.iter().zip(&invariants) {
        if e.point_order(g, MAZUR_MAX_ORDER)? != Some(o) {
            return Err(Error::Inconsistent("generator order mismatch".into()));
        }
    }
    Ok(TorsionGroup { invariants, generators, points, search_bound: bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tors(a: [i64; 5]) -> TorsionGroup {
        torsion(&Curve::from_i64(a).unwrap()).unwrap()
    }

    #[test]
    fn known_torsion_structures() {
        assert_eq!(tors([0, -1, 1, -10, -20]).invariants, [5]);
        assert_eq!(tors([0, 0, 0, 4, 0]).invariants, [4]);
        assert_eq!(tors([1, 0, 0, -3, 1]).invariants, [6]);
        assert_eq!(tors([1, 0, 0, -115, 392]).invariants, [2, 4]);
        assert_eq!(tors([0, 1, 1, -12, -21]).invariants, Vec::<u64>::new());
        assert_eq!(tors([1, 1, 1, -5, 2]).invariants, [2, 4]);
    }

    #[test]
    fn two_torsion_of_15a3() {
        let e = Curve::from_i64([1, 1, 1, -5, 2]).unwrap();
        let pts = two_torsion_points(&e);
        assert_eq!(pts.len(), 3);
        for p in &pts {
            assert_eq!(e.point_order(p, 2).unwrap(), Some(2));
        }
        assert!(pts.contains(&Point::Affine(arith::rat_frac(3, 4), arith::rat_frac(-7, 8))));
    }

    #[test]
    fn cubic_roots_found() {
        // (X-1)(X-2)(X+3) = X^3 - 7X + 6
        let mut r = cubic_integer_roots(&Int::from(-7), &Int::from(6));
        r.sort();
        assert_eq!(r, [Int::from(-3), Int::from(1), Int::from(2)]);
        assert_eq!(cubic_integer_roots(&Int::from(0), &Int::from(-8)), [Int::from(2)]);
    }
}
