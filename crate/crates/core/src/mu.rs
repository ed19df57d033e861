//! Lower bounds and vanishing certificates for the mu-invariant from
//! Galois-stable kernels that are ramified at `p` and odd.
//!
//! For `p = 2` the kernels are generated by rational 2-torsion and classified
//! here; for odd `p` the classification is declared input.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::ec::{classify_at_p, tate_local, two_torsion_points, Curve, Point, RationalPoint, ReductionKind, Transform};
use crate::{Error, Int, Rat, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Classified from a rational 2-torsion point.
    Computed,
    /// Declared by the caller.
    Input,
}

/// A cyclic Galois-stable subgroup of order `prime^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelClass {
    pub prime: u64,
    pub exponent: u32,
    pub ramified: bool,
    pub odd: bool,
    pub provenance: Provenance,
}

impl KernelClass {
    pub fn declared(prime: u64, exponent: u32, ramified: bool, odd: bool) -> Self {
        KernelClass { prime, exponent, ramified, odd, provenance: Provenance::Input }
    }

    pub fn order(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    fn validate(&self) -> Result<()> {
        arith::require_prime(self.prime)?;
        if self.exponent == 0 {
            return Err(Error::Invalid("kernel of order 1".into()));
        }
        if self.provenance == Provenance::Computed && self.prime != 2 {
            return Err(Error::Invalid("computed classifications exist only for 2-torsion".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyEdge {
    pub from: String,
    pub to: String,
    pub degree: u64,
    pub kernel: KernelClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuRule {
    /// No ramified odd kernel and no certificate.
    NoWitness,
    /// A chain of ramified odd kernels; the pull-back of the last one is ramified, odd and cyclic.
    RamifiedOddChain { path: Vec<String> },
    RamifiedNotOdd,
    OddNotRamified,
    /// Both flags set on a kernel of order `p`: only a lower bound.
    RamifiedAndOdd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuVerdict {
    pub lower_bound: u32,
    pub zero_certified: bool,
    pub rule: MuRule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoTorsionClass {
    pub ramified: bool,
    pub odd: bool,
}

fn require_two_torsion(e: &Curve, pt: &RationalPoint) -> Result<(Rat, Rat)> {
    let Point::Affine(x, y) = pt else {
        return Err(Error::NotTwoTorsion);
    };
    if !e.contains(pt) {
        return Err(Error::OffCurve);
    }
    let two_y = Rat::from_integer(Int::from(2)) * y + Rat::from_integer(e.a1.clone()) * x + Rat::from_integer(e.a3.clone());
    if !two_y.is_zero() {
        return Err(Error::NotTwoTorsion);
    }
    Ok((x.clone(), y.clone()))
}

fn require_classifiable_at_two(e: &Curve) -> Result<()> {
    if e.disc.is_even() {
        match tate_local(e, 2)?.kind {
            ReductionKind::Additive => {
                return Err(Error::UnsupportedReduction { prime: 2, detail: "additive reduction at 2" })
            }
            ReductionKind::Good => {}
            _ => return Ok(()),
        }
    }
    if classify_at_p(e, 2)?.supersingular {
        return Err(Error::Supersingular(2));
    }
    Ok(())
}

/// Ramified: `P` reduces to the identity on the 2-minimal model. Odd: `P` is the
/// only real 2-torsion point, or has the strictly smallest `x` of the three.
pub fn classify_two_torsion(e: &Curve, pt: &RationalPoint) -> Result<TwoTorsionClass> {
    let (x0, _) = require_two_torsion(e, pt)?;
    require_classifiable_at_two(e)?;
    let (_, tr) = e.minimal_model()?;
    let Point::Affine(xm, _) = tr.map_point(pt) else { unreachable!("affine stays affine") };
    let ramified = arith::vp_rat(&xm, 2).is_some_and(|v| v < 0);

    let odd = if e.disc.is_negative() {
        true
    } else {
        // 4x^3 + b2 x^2 + 2 b4 x + b6 = 4 (x - x0) (x^2 + s x + t) with s = b2/4 + x0
        let s = Rat::from_integer(e.b2.clone()) / Rat::from_integer(Int::from(4)) + &x0;
        let t = Rat::from_integer(e.b4.clone()) / Rat::from_integer(Int::from(2)) + &s * &x0;
        // both other roots exceed x0: cofactor positive at x0 and vertex right of x0
        let at_x0 = &x0 * &x0 + &s * &x0 + &t;
        let vertex = -&s / Rat::from_integer(Int::from(2));
        at_x0.is_positive() && vertex > x0
    };
    Ok(TwoTorsionClass { ramified, odd })
}

pub fn two_torsion_kernel(e: &Curve, pt: &RationalPoint) -> Result<KernelClass> {
    let c = classify_two_torsion(e, pt)?;
    Ok(KernelClass { prime: 2, exponent: 1, ramified: c.ramified, odd: c.odd, provenance: Provenance::Computed })
}

/// The quotient `E -> E / <P>` by a rational 2-torsion point, landing on the
/// reduced minimal model of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoIsogeny {
    pub source: Curve,
    pub kernel: RationalPoint,
    pub target: Curve,
    v: Rat,
    scale: Int,
    to_target: Transform,
}

pub fn velu_2isogeny(e: &Curve, pt: &RationalPoint) -> Result<TwoIsogeny> {
    let (x0, y0) = require_two_torsion(e, pt)?;
    let r = |n: &Int| Rat::from_integer(n.clone());
    let v = Rat::from_integer(Int::from(3)) * &x0 * &x0 + Rat::from_integer(Int::from(2)) * r(&e.a2) * &x0 + r(&e.a4)
        - r(&e.a1) * &y0;
    let w = &x0 * &v;
    let a4 = r(&e.a4) - Rat::from_integer(Int::from(5)) * &v;
    let a6 = r(&e.a6) - r(&e.b2) * &v - Rat::from_integer(Int::from(7)) * &w;
    let (raw, scale) = Curve::from_rationals(&[r(&e.a1), r(&e.a2), r(&e.a3), a4, a6])?;
    let (target, to_target) = raw.reduced_minimal_model()?;
    Ok(TwoIsogeny { source: e.clone(), kernel: pt.clone(), target, v, scale, to_target })
}

impl TwoIsogeny {
    pub fn apply(&self, pt: &RationalPoint) -> Result<RationalPoint> {
        if !self.source.contains(pt) {
            return Err(Error::OffCurve);
        }
        let (Point::Affine(x, y), Point::Affine(x0, y0)) = (pt, &self.kernel) else {
            return Ok(Point::Infinity);
        };
        if x == x0 {
            // y is forced: P itself
            return Ok(Point::Infinity);
        }
        let dx = x - x0;
        let a1 = Rat::from_integer(self.source.a1.clone());
        let big_x = x + &self.v / &dx;
        let big_y = y - &self.v * (&a1 * &dx + y - y0) / (&dx * &dx);
        let d = Rat::from_integer(self.scale.clone());
        let d2 = &d * &d;
        let image = self.to_target.map_point(&Point::Affine(big_x * &d2, big_y * &d2 * &d));
        debug_assert!(self.target.contains(&image));
        Ok(image)
    }

    /// The dual 2-isogeny, with the isomorphism from its codomain back to the source.
    pub fn dual(&self) -> Result<(TwoIsogeny, Transform)> {
        for q in two_torsion_points(&self.target) {
            let back = velu_2isogeny(&self.target, &q)?;
            if let Some(iso) = back.target.isomorphism_to(&self.source) {
                return Ok((back, iso));
            }
        }
        Err(Error::Inconsistent("no 2-torsion point on the quotient gives the dual".into()))
    }

    /// Checks `dual o self = [2]` on the given points, up to the automorphism `-1`.
    pub fn dual_composition_holds(&self, pts: &[RationalPoint]) -> Result<bool> {
        let (dual, iso) = self.dual()?;
        let mut sign: Option<bool> = None;
        for p in pts {
            let there = self.apply(p)?;
            let back = iso.map_point(&dual.apply(&there)?);
            let doubled = self.source.mul_point_i64(p, 2)?;
            let this = if back == doubled && back == self.source.neg_point(&doubled) {
                continue;
            } else if back == doubled {
                true
            } else if back == self.source.neg_point(&doubled) {
                false
            } else {
                return Ok(false);
            };
            if *sign.get_or_insert(this) != this {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Upper limit on curves in a computed 2-power isogeny class.
pub const MAX_CLASS_SIZE: usize = 16;

/// The 2-isogeny graph reachable from a curve, with every kernel classified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyClass {
    /// Reduced minimal models; `labels[i]` is the display form of `curves[i]`.
    pub curves: Vec<Curve>,
    pub labels: Vec<String>,
    pub edges: Vec<IsogenyEdge>,
}

impl IsogenyClass {
    pub fn index_of(&self, e: &Curve) -> Result<Option<usize>> {
        let (m, _) = e.reduced_minimal_model()?;
        Ok(self.curves.iter().position(|c| *c == m))
    }
}

pub fn two_isogeny_class(e: &Curve) -> Result<IsogenyClass> {
    let (start, _) = e.reduced_minimal_model()?;
    let mut class = IsogenyClass { labels: alloc::vec![start.to_string()], curves: alloc::vec![start], edges: Vec::new() };
    let mut next = 0;
    while next < class.curves.len() {
        let cur = class.curves[next].clone();
        for pt in two_torsion_points(&cur) {
            let kernel = two_torsion_kernel(&cur, &pt)?;
            let phi = velu_2isogeny(&cur, &pt)?;
            let to = match class.curves.iter().position(|c| *c == phi.target) {
                Some(i) => i,
                None => {
                    if class.curves.len() == MAX_CLASS_SIZE {
                        return Err(Error::BoundExceeded { what: "2-isogeny class size", value: 1 + MAX_CLASS_SIZE as u64, bound: MAX_CLASS_SIZE as u64 });
                    }
                    class.labels.push(phi.target.to_string());
                    class.curves.push(phi.target);
                    class.curves.len() - 1
                }
            };
            class.edges.push(IsogenyEdge { from: class.labels[next].clone(), to: class.labels[to].clone(), degree: 2, kernel });
        }
        next += 1;
    }
    Ok(class)
}

fn check_edges(p: u64, edges: &[IsogenyEdge]) -> Result<()> {
    let mut seen: BTreeMap<(&str, &str), &KernelClass> = BTreeMap::new();
    for edge in edges {
        edge.kernel.validate()?;
        if edge.kernel.prime != p {
            return Err(Error::PrimeMismatch(edge.kernel.prime, p));
        }
        if edge.degree != edge.kernel.order() {
            return Err(Error::Invalid(format!("edge {} -> {}: degree {} but kernel order {}", edge.from, edge.to, edge.degree, edge.kernel.order())));
        }
        if let Some(prev) = seen.insert((&edge.from, &edge.to), &edge.kernel) {
            if prev != &edge.kernel {
                return Err(Error::Inconsistent(format!("contradictory kernels on {} -> {}", edge.from, edge.to)));
            }
        }
    }
    Ok(())
}

fn longest_chain<'a>(node: &'a str, edges: &'a [IsogenyEdge], visited: &mut Vec<&'a str>) -> (u32, Vec<String>) {
    visited.push(node);
    let mut best = (0, alloc::vec![node.to_string()]);
    for edge in edges.iter().filter(|e| e.from == node && e.kernel.ramified && e.kernel.odd) {
        if visited.contains(&edge.to.as_str()) {
            continue;
        }
        let (m, path) = longest_chain(&edge.to, edges, visited);
        if m + edge.kernel.exponent > best.0 {
            let mut full = alloc::vec![node.to_string()];
            full.extend(path);
            best = (m + edge.kernel.exponent, full);
        }
    }
    visited.pop();
    best
}

/// `mu_E >= m` where `p^m` is the largest order of a ramified odd kernel reached
/// by chaining such kernels along the edges out of `start`.
pub fn mu_lower_bound(start: &str, p: u64, edges: &[IsogenyEdge]) -> Result<MuVerdict> {
    arith::require_prime(p)?;
    check_edges(p, edges)?;
    let (m, path) = longest_chain(start, edges, &mut Vec::new());
    let rule = if m == 0 { MuRule::NoWitness } else { MuRule::RamifiedOddChain { path } };
    Ok(MuVerdict { lower_bound: m, zero_certified: false, rule })
}

/// [`mu_lower_bound`] at 2 over the computed 2-isogeny class of `e`.
pub fn mu_lower_bound_two(e: &Curve) -> Result<(MuVerdict, IsogenyClass)> {
    let class = two_isogeny_class(e)?;
    let v = mu_lower_bound(&class.labels[0], 2, &class.edges)?;
    Ok((v, class))
}

/// A kernel of order `p` that is ramified or odd but not both forces `mu = 0`.
pub fn mu_zero_certificate(p: u64, kernel: &KernelClass) -> Result<MuVerdict> {
    arith::require_prime(p)?;
    kernel.validate()?;
    if kernel.prime != p || kernel.exponent != 1 {
        return Err(Error::Invalid(format!("certificate needs a kernel of order {p}, got {}", kernel.order())));
    }
    let (lower_bound, zero_certified, rule) = match (kernel.ramified, kernel.odd) {
        (true, false) => (0, true, MuRule::RamifiedNotOdd),
        (false, true) => (0, true, MuRule::OddNotRamified),
        (true, true) => (1, false, MuRule::RamifiedAndOdd),
        (false, false) => (0, false, MuRule::NoWitness),
    };
    Ok(MuVerdict { lower_bound, zero_certified, rule })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KramerInstance {
    pub curve: Curve,
    pub generator: RationalPoint,
}

/// `y^2 + xy = x^3 - a x^2 - 4b x + (4a - 1) b` with the ramified odd point
/// `((4a - 1)/4, (1 - 4a)/8)`.
pub fn kramer_m1(a: &Int, b: &Int) -> Result<KramerInstance> {
    let k: Int = a * 4 - 1;
    if !k.gcd(b).is_one() {
        return Err(Error::Invalid(format!("gcd(4a - 1, b) != 1 for a = {a}, b = {b}")));
    }
    let gap: Int = &k * &k - b * 64;
    if !gap.is_positive() {
        return Err(Error::Invalid(format!("(4a - 1)^2 <= 64 b for a = {a}, b = {b}")));
    }
    if !a.is_negative() && !b.is_negative() {
        return Err(Error::Invalid("one of a, b must be negative".into()));
    }
    let curve = Curve::new([Int::one(), -a, Int::zero(), -b * 4, &k * b])?;
    if curve.disc != b * &gap * &gap {
        return Err(Error::Inconsistent("discriminant differs from b((4a-1)^2 - 64b)^2".into()));
    }
    let generator = Point::Affine(Rat::new(k.clone(), Int::from(4)), Rat::new(-k, Int::from(8)));
    require_two_torsion(&curve, &generator)?;
    Ok(KramerInstance { curve, generator })
}

/// `y^2 = (x + 2c^4 - d^4)(x^2 + 4 c^4 d^4 - 4 c^8)`; the model is not minimal.
pub fn kramer_m4(c: &Int, d: &Int) -> Result<KramerInstance> {
    let positive_odd = |n: &Int| n.is_positive() && n.is_odd();
    if !positive_odd(c) || !positive_odd(d) || c == d {
        return Err(Error::Invalid("c, d must be distinct odd positive integers".into()));
    }
    if !(c - d).mod_floor(&Int::from(4)).is_zero() || !c.gcd(d).is_one() {
        return Err(Error::Invalid("need c = d mod 4 and gcd(c, d) = 1".into()));
    }
    let c4: Int = num_traits::pow(c.clone(), 4);
    let d4: Int = num_traits::pow(d.clone(), 4);
    let a2: Int = &c4 * 2 - &d4;
    let a4: Int = &c4 * &d4 * 4 - &c4 * &c4 * 4;
    let curve = Curve::new([Int::zero(), a2.clone(), Int::zero(), a4.clone(), &a2 * &a4])?;
    let generator = Point::Affine(Rat::from_integer(-a2), Rat::zero());
    require_two_torsion(&curve, &generator)?;
    Ok(KramerInstance { curve, generator })
}

/// `(c^4 - d^4) c^4 d^16 / 16`.
pub fn kramer_m4_minimal_disc(c: &Int, d: &Int) -> Int {
    let c4: Int = num_traits::pow(c.clone(), 4);
    let d4: Int = num_traits::pow(d.clone(), 4);
    (&c4 - &d4) * &c4 * num_traits::pow(d4, 4) / 16
}
