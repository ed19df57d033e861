//! Exact arithmetic in `Q[x]/(g)` and points of curves over such fields.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::{rat, rat_frac};
use crate::ec::{Curve, Point};
use crate::field::Field;
use crate::poly::{self, QPoly};
use crate::{Error, Int, Rat, Result};

/// `Q[x]/(g)` for a monic integer polynomial `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: QPoly,
    /// `false` when the degree is beyond the trial test and irreducibility is the caller's claim.
    pub irreducibility_checked: bool,
}

impl NumberField {
    /// `g` given by integer coefficients, constant term first.
    pub fn new(g: &[i64]) -> Result<Arc<Self>> {
        Self::from_ints(&g.iter().map(|&c| Int::from(c)).collect::<Vec<_>>())
    }

    pub fn from_ints(g: &[Int]) -> Result<Arc<Self>> {
        let modulus = poly::from_ints(g);
        match poly::degree(&modulus) {
            None | Some(0) => return Err(Error::Invalid("defining polynomial must have degree >= 1".into())),
            Some(_) if !modulus.last().unwrap().is_one() => {
                return Err(Error::Invalid("defining polynomial must be monic".into()))
            }
            _ => {}
        }
        let irreducibility_checked = match poly::is_irreducible_small(&modulus) {
            Some(false) => return Err(Error::Invalid("defining polynomial is reducible".into())),
            Some(true) => true,
            None => false,
        };
        Ok(Arc::new(NumberField { modulus, irreducibility_checked }))
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", render_poly(&self.modulus, "x"))
    }
}

fn render_poly(c: &[Rat], var: &str) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (i, a) in c.iter().enumerate().rev() {
        if Zero::is_zero(a) {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.into(),
            _ => format!("{var}^{i}"),
        };
        let coef = if i > 0 && a.is_one() {
            String::new()
        } else if i > 0 && *a == -Rat::one() {
            "-".into()
        } else if i > 0 && !a.is_integer() {
            format!("({a})*")
        } else if i > 0 {
            format!("{a}*")
        } else {
            format!("{a}")
        };
        terms.push(format!("{coef}{mono}"));
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.join(" + ").replace("+ -", "- ")
}

/// A residue class mod `g`, stored reduced and trimmed.
#[derive(Clone, Debug)]
pub struct NfElement {
    field: Arc<NumberField>,
    coeffs: QPoly,
}

impl PartialEq for NfElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for NfElement {}

impl NfElement {
    pub fn new(field: &Arc<NumberField>, coeffs: &[Rat]) -> Self {
        let mut c = poly::rem(coeffs, &field.modulus);
        poly::trim(&mut c);
        NfElement { field: field.clone(), coeffs: c }
    }

    pub fn from_i64(field: &Arc<NumberField>, coeffs: &[i64]) -> Self {
        Self::new(field, &poly::from_i64(coeffs))
    }

    pub fn from_rat(field: &Arc<NumberField>, x: Rat) -> Self {
        Self::new(field, &[x])
    }

    /// The class of `x`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_i64(field, &[0, 1])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Coefficients in the power basis, constant first, trailing zeros removed.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.modulus == other.field.modulus
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(&self.field, &poly::add(&self.coeffs, &other.coeffs)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(&self.field, &poly::sub(&self.coeffs, &other.coeffs)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(&self.field, &poly::mul(&self.coeffs, &other.coeffs)))
    }

    /// Inverse by the extended Euclidean algorithm against `g`.
    pub fn try_inv(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let (d, s, _) = poly::xgcd(&self.coeffs, &self.field.modulus);
        if poly::degree(&d) != Some(0) {
            return Err(Error::Invalid("element shares a factor with the modulus".into()));
        }
        Ok(Self::new(&self.field, &poly::scale(&s, &d[0].recip())))
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = self.one_like();
        for _ in 0..n {
            out = Field::mul(&out, self);
        }
        out
    }
}

impl Field for NfElement {
    fn zero_like(&self) -> Self {
        NfElement { field: self.field.clone(), coeffs: Vec::new() }
    }

    fn one_like(&self) -> Self {
        Self::from_rat(&self.field, Rat::one())
    }

    fn int_like(&self, n: &Int) -> Self {
        Self::from_rat(&self.field, Rat::from_integer(n.clone()))
    }

    // the group law only combines coordinates already checked to share a field
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("field mismatch")
    }

    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("field mismatch")
    }

    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("field mismatch")
    }

    fn neg(&self) -> Self {
        NfElement { field: self.field.clone(), coeffs: poly::neg(&self.coeffs) }
    }

    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(&self.coeffs, "x"))
    }
}

pub type NfPoint = Point<NfElement>;

fn check_points(pts: &[&NfPoint]) -> Result<()> {
    let mut field: Option<&Arc<NumberField>> = None;
    for pt in pts {
        if let Point::Affine(x, y) = pt {
            x.check(y)?;
            match field {
                Some(f) if !(Arc::ptr_eq(f, x.field()) || f.modulus == x.field().modulus) => return Err(Error::FieldMismatch),
                _ => field = Some(x.field()),
            }
        }
    }
    Ok(())
}

pub fn nf_add_points(e: &Curve, p: &NfPoint, q: &NfPoint) -> Result<NfPoint> {
    check_points(&[p, q])?;
    e.add_points(p, q)
}

pub fn nf_mul_point(e: &Curve, p: &NfPoint, n: i64) -> Result<NfPoint> {
    check_points(&[p])?;
    e.mul_point_i64(p, n)
}

/// A field automorphism given by the image `h` of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    image: NfElement,
}

impl Automorphism {
    pub fn new(image: NfElement) -> Result<Self> {
        let sigma = Automorphism { image };
        let g = sigma.image.field().modulus.clone();
        // g(h) = 0 in the field
        let at_h = g.iter().rev().fold(sigma.image.zero_like(), |acc, c| {
            Field::add(&Field::mul(&acc, &sigma.image), &NfElement::from_rat(sigma.image.field(), c.clone()))
        });
        if !at_h.is_zero() {
            return Err(Error::NotAutomorphism);
        }
        Ok(sigma)
    }

    pub fn from_i64(field: &Arc<NumberField>, image: &[i64]) -> Result<Self> {
        Self::new(NfElement::from_i64(field, image))
    }

    pub fn identity(field: &Arc<NumberField>) -> Self {
        Automorphism { image: NfElement::generator(field) }
    }

    pub fn apply(&self, a: &NfElement) -> Result<NfElement> {
        a.check(&self.image)?;
        Ok(a.coeffs.iter().rev().fold(a.zero_like(), |acc, c| {
            Field::add(&Field::mul(&acc, &self.image), &NfElement::from_rat(a.field(), c.clone()))
        }))
    }

    pub fn is_involution(&self) -> bool {
        let gen = NfElement::generator(self.image.field());
        self.apply(&self.image).map(|twice| twice == gen).unwrap_or(false)
    }
}

pub fn galois_apply(pt: &NfPoint, sigma: &Automorphism) -> Result<NfPoint> {
    match pt {
        Point::Infinity => Ok(Point::Infinity),
        Point::Affine(x, y) => Ok(Point::Affine(sigma.apply(x)?, sigma.apply(y)?)),
    }
}

/// `P + sigma(P)` for an involution `sigma`.
pub fn trace_to_subfield(e: &Curve, pt: &NfPoint, sigma: &Automorphism) -> Result<NfPoint> {
    if !sigma.is_involution() {
        return Err(Error::NotInvolution);
    }
    nf_add_points(e, pt, &galois_apply(pt, sigma)?)
}

/// `y^2 = f3 x^3 + f2 x^2 + f1 x + f0` with `f3 != 0`, mapped to the integral
/// Weierstrass model `Y^2 = X^3 + f2 X^2 + f3 f1 X + f3^2 f0` by `X = f3 x`, `Y = f3 y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicModel {
    /// Constant term first.
    pub f: [Int; 4],
}

impl CubicModel {
    pub fn from_i64(f: [i64; 4]) -> Self {
        CubicModel { f: f.map(Int::from) }
    }

    pub fn weierstrass(&self) -> Result<Curve> {
        let [f0, f1, f2, f3] = &self.f;
        if f3.is_zero() {
            return Err(Error::Invalid("cubic model needs a degree-3 term".into()));
        }
        Curve::new([Int::zero(), f2.clone(), Int::zero(), f3 * f1, f3 * f3 * f0])
    }

    pub fn contains<F: Field>(&self, pt: &Point<F>) -> bool {
        let Point::Affine(x, y) = pt else { return true };
        let rhs = self.f.iter().rev().fold(x.zero_like(), |acc, c| acc.mul(x).add(&x.int_like(c)));
        y.square().sub(&rhs).is_zero()
    }

    pub fn to_weierstrass<F: Field>(&self, pt: &Point<F>) -> Point<F> {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let a = x.int_like(&self.f[3]);
                Point::Affine(a.mul(x), a.mul(y))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: &'static str,
    pub field: String,
    pub checks: Vec<Check>,
}

impl Scenario {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, label: impl Into<String>, pass: bool) {
        self.checks.push(Check { label: label.into(), pass });
    }

    fn push_result(&mut self, label: &str, r: Result<bool>) {
        match r {
            Ok(b) => self.push(label, b),
            Err(e) => self.push(format!("{label}: {e}"), false),
        }
    }
}

fn elem(k: &Arc<NumberField>, c: &[i64]) -> NfElement {
    NfElement::from_i64(k, c)
}

fn beta_field() -> Result<Arc<NumberField>> {
    NumberField::new(&[1, -3, 0, 1])
}

fn scenario_beta_point() -> Result<Scenario> {
    let k = beta_field()?;
    let e = Curve::from_i64([1, 0, 0, -3, 1])?;
    let b = NfElement::generator(&k);
    let p = Point::Affine(b.clone(), b.neg());
    let mut s = Scenario { name: "34a1 beta point", field: k.to_string(), checks: Vec::new() };
    s.push("(b, -b) on y^2 + xy = x^3 - 3x + 1", e.contains(&p));
    s.push("point is not rational", !b.is_rational());
    Ok(s)
}

/// The point `Q` over the cubic field with `3Q = (9, 54)` on 306b3.
pub fn division_by_three_point() -> Result<(Curve, NfPoint)> {
    let k = beta_field()?;
    let e = Curve::from_i64([1, -1, 0, -927, 11097])?;
    Ok((e, Point::Affine(elem(&k, &[15, 9, -6]), elem(&k, &[9, -48, 15]))))
}

fn scenario_division_by_three() -> Result<Scenario> {
    let (e, q) = division_by_three_point()?;
    let k = q.x().unwrap().field().clone();
    let target = Point::Affine(NfElement::from_rat(&k, rat(9)), NfElement::from_rat(&k, rat(54)));
    let mut s = Scenario { name: "306b3 division by 3", field: k.to_string(), checks: Vec::new() };
    s.push("Q on curve", e.contains(&q));
    s.push("P = (9, 54) on curve", e.contains(&target));
    s.push_result("3Q = P", nf_mul_point(&e, &q, 3).map(|r| r == target));
    s.push_result("Q is not P", Ok(q != target));
    Ok(s)
}

/// `y^2 = (x - 1)(x - 2)(16x + 49)`.
pub fn model_195() -> CubicModel {
    CubicModel::from_i64([98, -115, 1, 16])
}

fn scenario_quadratic_trace() -> Result<Scenario> {
    let cubic = model_195();
    let e = cubic.weierstrass()?;
    let k = NumberField::new(&[-2, 0, 1])?;
    let raw = Point::Affine(elem(&k, &[0]), elem(&k, &[0, 7]));
    let p = cubic.to_weierstrass(&raw);
    let sigma = Automorphism::from_i64(&k, &[0, -1])?;
    let mut s = Scenario { name: "195 quadratic trace", field: k.to_string(), checks: Vec::new() };
    s.push("f(0) = (0 - 1)(0 - 2)(16 * 0 + 49) = 98", cubic.f[0] == Int::from((0 - 1) * (0 - 2) * 49));
    s.push("(0, 7 sqrt2) on the cubic model", cubic.contains(&raw));
    s.push("image on the Weierstrass model", e.contains(&p));
    let (m, _) = e.reduced_minimal_model()?;
    s.push("minimal model is [1,0,0,-115,392]", m == Curve::from_i64([1, 0, 0, -115, 392])?);
    s.push_result("trace to Q(sqrt2)^sigma is O", trace_to_subfield(&e, &p, &sigma).map(|t| t.is_infinity()));
    Ok(s)
}

/// `K = Q(sqrt(2 + sqrt2))`, the point `Q` on the 195 model and `sigma: x -> -x`.
pub fn quartic_trace_data() -> Result<(CubicModel, NfPoint, Automorphism)> {
    let k = NumberField::new(&[2, 0, -4, 0, 1])?;
    let x = NfElement::generator(&k);
    // sqrt2 = x^2 - 2
    let sqrt2 = elem(&k, &[-2, 0, 1]);
    let qx = Field::add(&NfElement::from_rat(&k, rat(10)), &Field::mul(&sqrt2, &NfElement::from_rat(&k, rat(9))));
    let qy = Field::mul(&Field::add(&NfElement::from_rat(&k, rat(123)), &Field::mul(&sqrt2, &NfElement::from_rat(&k, rat(78)))), &x);
    let sigma = Automorphism::from_i64(&k, &[0, -1])?;
    Ok((model_195(), Point::Affine(qx, qy), sigma))
}

fn scenario_quartic_trace() -> Result<Scenario> {
    let (cubic, raw, sigma) = quartic_trace_data()?;
    let e = cubic.weierstrass()?;
    let k = raw.x().unwrap().field().clone();
    let q = cubic.to_weierstrass(&raw);
    let mut s = Scenario { name: "195 quartic trace kernel", field: k.to_string(), checks: Vec::new() };
    s.push("Q on the cubic model", cubic.contains(&raw));
    s.push("sigma is an involution", sigma.is_involution());
    let sqrt2 = elem(&k, &[-2, 0, 1]);
    s.push_result("sigma fixes sqrt2", sigma.apply(&sqrt2).map(|v| v == sqrt2));
    s.push_result("trace to Q(sqrt2) is O", trace_to_subfield(&e, &q, &sigma).map(|t| t.is_infinity()));
    s.push_result("Q has infinite order up to 12", e.point_order(&q, 12).map(|o| o.is_none()));
    Ok(s)
}

type ScenarioRun = (&'static str, fn() -> Result<Scenario>);

/// The exact number-field point checks, one scenario each.
pub fn verify_scenarios() -> Vec<Scenario> {
    let runs: [ScenarioRun; 4] = [
        ("34a1 beta point", scenario_beta_point),
        ("306b3 division by 3", scenario_division_by_three),
        ("195 quadratic trace", scenario_quadratic_trace),
        ("195 quartic trace kernel", scenario_quartic_trace),
    ];
    runs.iter()
        .map(|(name, run)| {
            run().unwrap_or_else(|e| Scenario {
                name,
                field: String::new(),
                checks: alloc::vec![Check { label: format!("setup failed: {e}"), pass: false }],
            })
        })
        .collect()
}

/// `1/2` in a field, for tests and callers building elements by hand.
pub fn half(k: &Arc<NumberField>) -> NfElement {
    NfElement::from_rat(k, rat_frac(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let k = NumberField::new(&[-2, 0, 1]).unwrap();
        let x = NfElement::generator(&k);
        assert_eq!(Field::mul(&x, &x), NfElement::from_rat(&k, rat(2)));
        assert_eq!(x.try_inv().unwrap(), Field::mul(&x, &half(&k)));
        let c = beta_field().unwrap();
        assert_eq!(NfElement::generator(&c).pow(3), elem(&c, &[-1, 3]));
        assert!(NfElement::from_rat(&k, rat(0)).try_inv().is_err());
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let k = NumberField::new(&[-2, 0, 1]).unwrap();
        let l = NumberField::new(&[-3, 0, 1]).unwrap();
        let a = NfElement::generator(&k);
        let b = NfElement::generator(&l);
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch));
        let e = Curve::from_i64([0, 0, 0, 1, 0]).unwrap();
        let p: NfPoint = Point::Affine(a.clone(), a);
        let q: NfPoint = Point::Affine(b.clone(), b);
        assert_eq!(nf_add_points(&e, &p, &q), Err(Error::FieldMismatch));
    }

    #[test]
    fn reducible_moduli_rejected() {
        assert!(NumberField::new(&[-1, 0, 1]).is_err());
        assert!(NumberField::new(&[1, 0, 2, 0, 1]).is_err());
        assert!(NumberField::new(&[2, 0, -4, 0, 1]).unwrap().irreducibility_checked);
    }

    #[test]
    fn automorphisms() {
        let k = NumberField::new(&[2, 0, -4, 0, 1]).unwrap();
        let sigma = Automorphism::from_i64(&k, &[0, -1]).unwrap();
        let x2 = elem(&k, &[0, 0, 1]);
        assert_eq!(sigma.apply(&x2).unwrap(), x2);
        assert!(sigma.is_involution());
        assert_eq!(Automorphism::from_i64(&k, &[1, 1]).unwrap_err(), Error::NotAutomorphism);
        // x -> x^2 - 2 generates the cyclic cubic field's Galois group
        let c = beta_field().unwrap();
        let rho = Automorphism::from_i64(&c, &[-2, 0, 1]).unwrap();
        assert!(!rho.is_involution());
        let (e, q) = division_by_three_point().unwrap();
        let e_q = nf_add_points(&e, &q, &q).unwrap();
        let lhs = galois_apply(&e_q, &rho).unwrap();
        let rq = galois_apply(&q, &rho).unwrap();
        assert_eq!(lhs, nf_add_points(&e, &rq, &rq).unwrap());
        assert_eq!(trace_to_subfield(&e, &q, &rho), Err(Error::NotInvolution));
    }

    #[test]
    fn scenarios_pass() {
        for s in verify_scenarios() {
            assert!(s.pass(), "{s:?}");
        }
    }

    #[test]
    fn rational_trace_is_doubling() {
        let k = NumberField::new(&[-2, 0, 1]).unwrap();
        let e = Curve::from_i64([1, 0, 0, -3, 1]).unwrap();
        let g = crate::ec::torsion(&e).unwrap().generators[0].clone();
        let Point::Affine(gx, gy) = g else { panic!("trivial generator") };
        let p: NfPoint = Point::Affine(NfElement::from_rat(&k, gx), NfElement::from_rat(&k, gy));
        assert!(e.contains(&p));
        let sigma = Automorphism::from_i64(&k, &[0, -1]).unwrap();
        assert_eq!(trace_to_subfield(&e, &p, &sigma).unwrap(), nf_mul_point(&e, &p, 2).unwrap());
        assert_eq!(nf_add_points(&e, &p, &Point::Infinity).unwrap(), p);
    }
}
