//! Elliptic curves over `Q` in long Weierstrass form.

mod count;
mod period;
mod point;
mod tate;
mod torsion;

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::{Error, Int, Rat, Result};

pub(crate) use count::count_on_good_model;
pub use count::{ap_count, ap_count_bounded, classify_at_p, count_points, Reduction, DEFAULT_COUNT_BOUND};
pub use period::{real_period, tate_period, TatePeriod, TATE_COEFF_CAP};
pub use point::{Point, RationalPoint};
pub use tate::{tate_local, Kodaira, LocalData, ReductionKind};
pub use torsion::{torsion, two_torsion_points, TorsionGroup};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub a1: Int,
    pub a2: Int,
    pub a3: Int,
    pub a4: Int,
    pub a6: Int,
    pub b2: Int,
    pub b4: Int,
    pub b6: Int,
    pub b8: Int,
    pub c4: Int,
    pub c6: Int,
    pub disc: Int,
    pub j: Rat,
}

/// Change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    pub u: Rat,
    pub r: Rat,
    pub s: Rat,
    pub t: Rat,
}

impl Transform {
    pub fn identity() -> Self {
        Transform { u: Rat::one(), r: Rat::zero(), s: Rat::zero(), t: Rat::zero() }
    }

    pub fn from_ints(u: i64, r: &Int, s: &Int, t: &Int) -> Self {
        Transform {
            u: Rat::from_integer(Int::from(u)),
            r: Rat::from_integer(r.clone()),
            s: Rat::from_integer(s.clone()),
            t: Rat::from_integer(t.clone()),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Transform) -> Transform {
        let u2 = &self.u * &self.u;
        Transform {
            u: &self.u * &next.u,
            r: &self.r + &u2 * &next.r,
            s: &self.s + &self.u * &next.s,
            t: &self.t + &u2 * &self.s * &next.r + &u2 * &self.u * &next.t,
        }
    }

    /// Image of a point of the source curve on the target curve.
    pub fn map_point(&self, pt: &RationalPoint) -> RationalPoint {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = &self.u * &self.u;
                let xp = (x - &self.r) / &u2;
                let yp = (y - &self.s * (x - &self.r) - &self.t) / (&u2 * &self.u);
                Point::Affine(xp, yp)
            }
        }
    }
}

fn rat_int(x: &Rat) -> Option<Int> {
    x.is_integer().then(|| x.to_integer())
}

impl Curve {
    pub fn new(a: [Int; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let b2 = &a1 * &a1 + &a2 * 4;
        let b4 = &a1 * &a3 + &a4 * 2;
        let b6 = &a3 * &a3 + &a6 * 4;
        let b8 = &a1 * &a1 * &a6 + &a2 * &a6 * 4 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let c4 = &b2 * &b2 - &b4 * 24;
        let b2_cubed: Int = &b2 * &b2 * &b2;
        let c6: Int = &b2 * &b4 * 36 - &b6 * 216 - b2_cubed;
        let b2b2b8: Int = &b2 * &b2 * &b8;
        let disc: Int = &b2 * &b4 * &b6 * 9 - b2b2b8 - &b4 * &b4 * &b4 * 8 - &b6 * &b6 * 27;
        if disc.is_zero() {
            return Err(Error::Singular);
        }
        let j = Rat::new(&c4 * &c4 * &c4, disc.clone());
        Ok(Curve { a1, a2, a3, a4, a6, b2, b4, b6, b8, c4, c6, disc, j })
    }

    pub fn from_i64(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(Int::from))
    }

    pub fn ainvs(&self) -> [Int; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    /// Applies `(u, r, s, t)`; fails unless the image is integral.
    pub fn transform(&self, tr: &Transform) -> Result<Curve> {
        let a1 = Rat::from_integer(self.a1.clone());
        let a2 = Rat::from_integer(self.a2.clone());
        let a3 = Rat::from_integer(self.a3.clone());
        let a4 = Rat::from_integer(self.a4.clone());
        let a6 = Rat::from_integer(self.a6.clone());
        let Transform { u, r, s, t } = tr;
        if u.is_zero() {
            return Err(Error::Invalid("u = 0".into()));
        }
        let two = Rat::from_integer(Int::from(2));
        let three = Rat::from_integer(Int::from(3));
        let u2 = u * u;
        let u3 = &u2 * u;
        let n1 = (&a1 + &two * s) / u;
        let n2 = (&a2 - s * &a1 + &three * r - s * s) / &u2;
        let n3 = (&a3 + r * &a1 + &two * t) / &u3;
        let n4 = (&a4 - s * &a3 + &two * r * &a2 - (t + r * s) * &a1 + &three * r * r - &two * s * t) / (&u2 * &u2);
        let n6 = (&a6 + r * &a4 + r * r * &a2 + r * r * r - t * &a3 - t * t - r * t * &a1) / (&u3 * &u3);
        let ints = [n1, n2, n3, n4, n6]
            .iter()
            .map(rat_int)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invalid("transformed model is not integral".into()))?;
        Curve::new([ints[0].clone(), ints[1].clone(), ints[2].clone(), ints[3].clone(), ints[4].clone()])
    }

    /// Integer translation `x = x' + r`, `y = y' + s x' + t`.
    pub fn rst(&self, r: &Int, s: &Int, t: &Int) -> Curve {
        self.transform(&Transform::from_ints(1, r, s, t)).expect("integral translation")
    }

    /// Exact model `y^2 = x^3 - 27 c4 x - 54 c6` (the image under `u = 1/6`).
    pub fn short_model(&self) -> (Curve, Transform) {
        let c = Curve::new([Int::zero(), Int::zero(), Int::zero(), -&self.c4 * 27, -&self.c6 * 54]).expect("nonsingular");
        let tr = Transform {
            u: Rat::new(Int::one(), Int::from(6)),
            r: Rat::new(-&self.b2, Int::from(12)),
            s: Rat::new(-&self.a1, Int::from(2)),
            t: Rat::new(&self.a1 * &self.b2 - &self.a3 * 12, Int::from(24)),
        };
        (c, tr)
    }

    /// `y^2 = x^3 - 27 c4 d^2 x - 54 c6 d^3`, the twist by `Q(sqrt d)`.
    pub fn quadratic_twist(&self, d: &Int) -> Result<Curve> {
        if d.is_zero() {
            return Err(Error::Invalid("twist by zero".into()));
        }
        if !d.abs().is_one() {
            let fac = arith::factor(d)?;
            if fac.iter().any(|(_, e)| *e > 1) {
                return Err(Error::Invalid(alloc::format!("{d} is not squarefree")));
            }
        }
        Curve::new([Int::zero(), Int::zero(), Int::zero(), -&self.c4 * 27 * d * d, -&self.c6 * 54 * d * d * d])
    }

    /// Bad primes: the prime divisors of the discriminant of this model.
    pub fn bad_primes(&self) -> Result<Vec<u64>> {
        arith::factor(&self.disc)?
            .into_iter()
            .map(|(p, _)| p.to_u64().ok_or(Error::BoundExceeded { what: "bad prime", value: u64::MAX, bound: u64::MAX }))
            .collect()
    }

    /// Conductor as the product of `l^f_l` over the bad primes of this model.
    pub fn conductor(&self) -> Result<Int> {
        let mut n = Int::one();
        for l in self.bad_primes()? {
            let ld = tate_local(self, l)?;
            n *= arith::pow_int(l, ld.conductor_exponent);
        }
        Ok(n)
    }

    /// Global minimal model obtained by minimalising at every bad prime in turn.
    pub fn minimal_model(&self) -> Result<(Curve, Transform)> {
        let mut cur = self.clone();
        let mut tr = Transform::identity();
        for l in self.bad_primes()? {
            let ld = tate_local(&cur, l)?;
            if !ld.transform.u.is_one() {
                tr = tr.then(&ld.transform);
                cur = ld.minimal_model.clone();
            }
        }
        Ok((cur, tr))
    }

    /// An isomorphism `(u, r, s, t)` over `Q` carrying `self` onto `other`, if one exists.
    /// Integral model of a curve with rational coefficients, scaled by the
    /// least common denominator `d` of the `a_i` (`X = d^2 x`, `Y = d^3 y`).
    pub fn from_rationals(a: &[Rat; 5]) -> Result<(Curve, Int)> {
        let weights = [1usize, 2, 3, 4, 6];
        // smallest d with d^k a_k integral: per prime, max of ceil(v(den a_k) / k)
        let mut d = Int::one();
        let den = a.iter().fold(Int::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        for (q, _) in arith::factor(&den)? {
            let need = a
                .iter()
                .zip(weights)
                .map(|(x, k)| {
                    let (mut n, mut v) = (x.denom().clone(), 0usize);
                    while (&n % &q).is_zero() {
                        n /= &q;
                        v += 1;
                    }
                    v.div_ceil(k)
                })
                .max()
                .unwrap_or(0);
            d *= num_traits::pow(q, need);
        }
        let scaled: Vec<Int> = a
            .iter()
            .zip(weights)
            .map(|(x, k)| (x * Rat::from_integer(num_traits::pow(d.clone(), k))).to_integer())
            .collect();
        let c = Curve::new([scaled[0].clone(), scaled[1].clone(), scaled[2].clone(), scaled[3].clone(), scaled[4].clone()])?;
        Ok((c, d))
    }

    /// Global minimal model with `a1, a3` in `{0, 1}` and `a2` in `{-1, 0, 1}`; unique per
    /// isomorphism class, so it doubles as a canonical label.
    pub fn reduced_minimal_model(&self) -> Result<(Curve, Transform)> {
        use num_integer::Integer;
        let (m, tr) = self.minimal_model()?;
        let two = Int::from(2);
        let s = -m.a1.div_floor(&two);
        let a2s = &m.a2 - &s * &m.a1 - &s * &s;
        let r = -(a2s + Int::one()).div_floor(&Int::from(3));
        let a3r = &m.a3 + &r * &m.a1;
        let t = -a3r.div_floor(&two);
        let step = Transform::from_ints(1, &r, &s, &t);
        Ok((m.transform(&step)?, tr.then(&step)))
    }

    pub fn isomorphism_to(&self, other: &Curve) -> Option<Transform> {
        if self.j != other.j {
            return None;
        }
        let (c4a, c6a, c4b, c6b) = (&self.c4, &self.c6, &other.c4, &other.c6);
        let mut candidates: Vec<Rat> = Vec::new();
        if c4a.is_zero() {
            // j = 0: u^6 = c6 / c6'
            if let Some(u) = rat_root(&Rat::new(c6a.clone(), c6b.clone()), 6) {
                candidates.push(u);
            }
        } else if c6a.is_zero() {
            if let Some(u) = rat_root(&Rat::new(c4a.clone(), c4b.clone()), 4) {
                candidates.push(u);
            }
        } else if let Some(u) = rat_root(&Rat::new(c6a * c4b, c6b * c4a), 2) {
            candidates.push(u);
        }
        let two = Rat::from_integer(Int::from(2));
        let three = Rat::from_integer(Int::from(3));
        for u0 in candidates {
            for u in [u0.clone(), -u0] {
                let s = (&u * Rat::from_integer(other.a1.clone()) - Rat::from_integer(self.a1.clone())) / &two;
                let r = (&u * &u * Rat::from_integer(other.a2.clone()) - Rat::from_integer(self.a2.clone())
                    + &s * Rat::from_integer(self.a1.clone())
                    + &s * &s)
                    / &three;
                let t = (&u * &u * &u * Rat::from_integer(other.a3.clone())
                    - Rat::from_integer(self.a3.clone())
                    - &r * Rat::from_integer(self.a1.clone()))
                    / &two;
                let tr = Transform { u: u.clone(), r, s, t };
                if self.transform(&tr).ok().as_ref() == Some(other) {
                    return Some(tr);
                }
            }
        }
        None
    }
}

/// Rational `k`-th root with positive sign, if it exists.
pub fn rat_root(x: &Rat, k: u32) -> Option<Rat> {
    if x.is_zero() {
        return Some(Rat::zero());
    }
    if x.is_negative() && k % 2 == 0 {
        return None;
    }
    let root = |n: &Int| -> Option<Int> {
        let r = n.abs().nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == n.abs()).then(|| if n.is_negative() { -r } else { r })
    };
    Some(Rat::new(root(x.numer())?, root(x.denom())?))
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn invariants_of_eleven_a() {
        let e = Curve::from_i64([0, -1, 1, -10, -20]).unwrap();
        assert_eq!(e.disc, Int::from(-161051));
        assert_eq!(arith::vp_rat(&e.j, 11), Some(-5));
        assert_eq!(&e.c4 * &e.c4 * &e.c4 - &e.c6 * &e.c6, &e.disc * 1728);
        assert_eq!(&e.b8 * 4, &e.b2 * &e.b6 - &e.b4 * &e.b4);
    }

    #[test]
    fn invariants_of_small_conductors() {
        let e = Curve::from_i64([0, 0, 0, -4, 0]).unwrap();
        assert!(e.c6.is_zero());
        assert_eq!(e.j, rat(1728));
        let e = Curve::from_i64([1, 0, 0, -3, 1]).unwrap();
        assert!(arith::vp(&e.disc, 2).unwrap() > 0 && arith::vp(&e.disc, 17).unwrap() > 0);
        assert_eq!(Curve::from_i64([0, 0, 0, 0, 0]), Err(Error::Singular));
    }

    #[test]
    fn transforms_compose() {
        let e = Curve::from_i64([1, -1, 0, -1, 1]).unwrap();
        let t1 = Transform::from_ints(1, &Int::from(2), &Int::from(-1), &Int::from(3));
        let t2 = Transform::from_ints(1, &Int::from(-5), &Int::from(4), &Int::from(7));
        let direct = e.transform(&t1).unwrap().transform(&t2).unwrap();
        assert_eq!(e.transform(&t1.then(&t2)).unwrap(), direct);
        let found = e.isomorphism_to(&direct).unwrap();
        assert_eq!(e.transform(&found).unwrap(), direct);
    }

    #[test]
    fn short_model_is_isomorphic() {
        let e = Curve::from_i64([1, 1, 1, -8, 6]).unwrap();
        let (s, tr) = e.short_model();
        assert_eq!(e.transform(&tr).unwrap(), s);
        let p = RationalPoint::from_i64(1, 0);
        assert!(e.contains(&p) == (e.contains(&p)));
    }

    #[test]
    fn reduced_models_are_canonical() {
        let e = Curve::from_i64([1, 1, 1, -8, 6]).unwrap();
        let moved = e.rst(&Int::from(7), &Int::from(-3), &Int::from(11));
        let (a, _) = e.reduced_minimal_model().unwrap();
        let (b, tr) = moved.reduced_minimal_model().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, e);
        assert_eq!(moved.transform(&tr).unwrap(), b);
        let (c, d) = Curve::from_rationals(&[rat(0), rat(0), rat(0), arith::rat_frac(1, 4), rat(0)]).unwrap();
        assert_eq!((c.a4.clone(), d), (Int::from(4), Int::from(2)));
    }

    #[test]
    fn twists_preserve_j() {
        let e = Curve::from_i64([0, -1, 1, -10, -20]).unwrap();
        let t = e.quadratic_twist(&Int::from(-2)).unwrap();
        assert_eq!(t.j, e.j);
        assert!(e.quadratic_twist(&Int::from(12)).is_err());
        let once = e.quadratic_twist(&Int::from(1)).unwrap();
        assert!(e.isomorphism_to(&once).is_some());
    }
}
