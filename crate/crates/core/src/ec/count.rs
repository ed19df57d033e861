//! Naive point counting over prime fields.

use alloc::vec;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::tate::{tate_local, ReductionKind};
use super::Curve;
use crate::arith;
use crate::{Error, Int, Result};

/// Default largest prime for which `ap_count` enumerates.
pub const DEFAULT_COUNT_BOUND: u64 = 100_000;

fn residue(x: &Int, p: u64) -> u64 {
    x.mod_floor(&Int::from(p)).to_u64().unwrap()
}

/// `#E(F_p)` for a model with good reduction at `p`, including the point at infinity.
pub(crate) fn count_on_good_model(c: &Curve, p: u64) -> u64 {
    if p == 2 {
        let a: [u64; 5] = [&c.a1, &c.a2, &c.a3, &c.a4, &c.a6].map(|x| residue(x, 2));
        let mut n = 1;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = y * y + a[0] * x * y + a[2] * y;
                let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
                if (lhs + rhs) % 2 == 0 {
                    n += 1;
                }
            }
        }
        return n;
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    let m = p as u128;
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for y in 1..p {
        chi[((y as u128 * y as u128) % m) as usize] = 1;
    }
    let b2 = residue(&c.b2, p) as u128;
    let b4 = (2 * residue(&c.b4, p) as u128) % m;
    let b6 = residue(&c.b6, p) as u128;
    let mut total: i64 = 0;
    for x in 0..m {
        let f = (((4 * x + b2) % m * x + b4) % m * x + b6) % m;
        total += 1 + chi[f as usize] as i64;
    }
    1 + total as u64
}

/// Trace of Frobenius `a_p = p + 1 - #E(F_p)`, enumerating up to [`DEFAULT_COUNT_BOUND`].
pub fn ap_count(e: &Curve, p: u64) -> Result<i64> {
    ap_count_bounded(e, p, DEFAULT_COUNT_BOUND)
}

pub fn ap_count_bounded(e: &Curve, p: u64, bound: u64) -> Result<i64> {
    arith::require_prime(p)?;
    if p > bound {
        return Err(Error::BoundExceeded { what: "point-count prime", value: p, bound });
    }
    let model = if arith::vp(&e.disc, p).unwrap_or(0) > 0 {
        let ld = tate_local(e, p)?;
        if ld.kind != ReductionKind::Good {
            return Err(Error::BadReduction(p));
        }
        ld.minimal_model
    } else {
        e.clone()
    };
    let n = count_on_good_model(&model, p);
    let ap = p as i64 + 1 - n as i64;
    if (ap as i128) * (ap as i128) > 4 * p as i128 {
        return Err(Error::Inconsistent(alloc::format!("Hasse bound violated at {p}: a_p = {ap}")));
    }
    Ok(ap)
}

/// `#E(F_p)` at a prime of good reduction.
pub fn count_points(e: &Curve, p: u64) -> Result<u64> {
    Ok((p as i64 + 1 - ap_count(e, p)?) as u64)
}

/// Good-reduction classification at `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub prime: u64,
    pub a_p: i64,
    pub supersingular: bool,
    pub anomalous: bool,
}

impl Reduction {
    pub fn ordinary(&self) -> bool {
        !self.supersingular
    }

    pub fn points(&self) -> u64 {
        (self.prime as i64 + 1 - self.a_p) as u64
    }
}

pub fn classify_at_p(e: &Curve, p: u64) -> Result<Reduction> {
    let a_p = ap_count(e, p)?;
    let r = a_p.rem_euclid(p as i64);
    Ok(Reduction { prime: p, a_p, supersingular: r == 0, anomalous: r == 1 % p as i64 })
}
