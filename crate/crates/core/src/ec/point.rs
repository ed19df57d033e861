//! Chord-tangent group law on a long Weierstrass equation over any [`Field`].

use core::fmt;

use num_traits::{Signed, Zero};

use super::Curve;
use crate::field::Field;
use crate::{Error, Int, Rat, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point<F> {
    Infinity,
    Affine(F, F),
}

pub type RationalPoint = Point<Rat>;

impl<F: Field> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Affine(x, _) => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Affine(_, y) => Some(y),
            Point::Infinity => None,
        }
    }
}

impl RationalPoint {
    pub fn from_i64(x: i64, y: i64) -> Self {
        Point::Affine(Rat::from_integer(Int::from(x)), Rat::from_integer(Int::from(y)))
    }
}

impl<F: fmt::Display> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => f.write_str("O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

struct Coeffs<F> {
    a1: F,
    a2: F,
    a3: F,
    a4: F,
    a6: F,
}

impl Curve {
    fn coeffs_like<F: Field>(&self, model: &F) -> Coeffs<F> {
        Coeffs {
            a1: model.int_like(&self.a1),
            a2: model.int_like(&self.a2),
            a3: model.int_like(&self.a3),
            a4: model.int_like(&self.a4),
            a6: model.int_like(&self.a6),
        }
    }

    /// Whether `P` satisfies the equation exactly.
    pub fn contains<F: Field>(&self, pt: &Point<F>) -> bool {
        let Point::Affine(x, y) = pt else { return true };
        let c = self.coeffs_like(x);
        let lhs = y.square().add(&c.a1.mul(x).mul(y)).add(&c.a3.mul(y));
        let rhs = x.square().mul(x).add(&c.a2.mul(&x.square())).add(&c.a4.mul(x)).add(&c.a6);
        lhs.sub(&rhs).is_zero()
    }

    pub fn neg_point<F: Field>(&self, pt: &Point<F>) -> Point<F> {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let c = self.coeffs_like(x);
                Point::Affine(x.clone(), y.neg().sub(&c.a1.mul(x)).sub(&c.a3))
            }
        }
    }

    fn add_unchecked<F: Field>(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let c = self.coeffs_like(x1);
        let (slope, icept) = if x1 != x2 {
            let dx = x2.sub(x1);
            let l = y2.sub(y1).div(&dx).expect("distinct x");
            let m = y1.mul(x2).sub(&y2.mul(x1)).div(&dx).expect("distinct x");
            (l, m)
        } else {
            let den = y1.add(y1).add(&c.a1.mul(x1)).add(&c.a3);
            if den.is_zero() || *y1 != *y2 {
                return Point::Infinity;
            }
            let three = x1.int_like(&Int::from(3));
            let two = x1.int_like(&Int::from(2));
            let num = three.mul(&x1.square()).add(&two.mul(&c.a2).mul(x1)).add(&c.a4).sub(&c.a1.mul(y1));
            let l = num.div(&den).unwrap();
            let m = x1.square().mul(x1).neg().add(&c.a4.mul(x1)).add(&two.mul(&c.a6)).sub(&c.a3.mul(y1));
            let m = m.div(&den).unwrap();
            (l, m)
        };
        let x3 = slope.square().add(&c.a1.mul(&slope)).sub(&c.a2).sub(x1).sub(x2);
        let y3 = slope.add(&c.a1).mul(&x3).neg().sub(&icept).sub(&c.a3);
        Point::Affine(x3, y3)
    }

    pub fn add_points<F: Field>(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::OffCurve);
        }
        Ok(self.add_unchecked(p, q))
    }

    pub fn mul_point<F: Field>(&self, pt: &Point<F>, n: &Int) -> Result<Point<F>> {
        if !self.contains(pt) {
            return Err(Error::OffCurve);
        }
        let base = if n.is_negative() { self.neg_point(pt) } else { pt.clone() };
        let mut k = n.abs();
        let mut acc = Point::Infinity;
        let mut pow = base;
        while !k.is_zero() {
            if (&k % 2u32) == Int::from(1) {
                acc = self.add_unchecked(&acc, &pow);
            }
            pow = self.add_unchecked(&pow, &pow);
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn mul_point_i64<F: Field>(&self, pt: &Point<F>, n: i64) -> Result<Point<F>> {
        self.mul_point(pt, &Int::from(n))
    }

    /// Exact order of a point if it is at most `bound`, else `None`.
    pub fn point_order<F: Field>(&self, pt: &Point<F>, bound: u64) -> Result<Option<u64>> {
        if !self.contains(pt) {
            return Err(Error::OffCurve);
        }
        let mut acc = pt.clone();
        for k in 1..=bound {
            if acc.is_infinity() {
                return Ok(Some(k));
            }
            acc = self.add_unchecked(&acc, pt);
        }
        Ok(None)
    }
}
