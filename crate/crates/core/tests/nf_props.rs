use std::sync::Arc;

use iwasawa_core::arith::rat;
use iwasawa_core::ec::{Curve, Point};
use iwasawa_core::field::Field;
use iwasawa_core::nf::{
    division_by_three_point, galois_apply, nf_add_points, nf_mul_point, quartic_trace_data, trace_to_subfield,
    Automorphism, NfElement, NfPoint, NumberField,
};

fn lift(k: &Arc<NumberField>, p: &Point<iwasawa_core::Rat>) -> NfPoint {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(NfElement::from_rat(k, x.clone()), NfElement::from_rat(k, y.clone())),
    }
}

/// Small combinations `aQ + bR + cS` of the given points.
fn sample(e: &Curve, gens: &[NfPoint], n: usize) -> Vec<NfPoint> {
    let mut out = Vec::new();
    'outer: for a in -2i64..=2 {
        for b in -1i64..=1 {
            for (i, g) in gens.iter().enumerate() {
                let h = &gens[(i + 1) % gens.len()];
                let p = nf_add_points(e, &nf_mul_point(e, g, a).unwrap(), &nf_mul_point(e, h, b).unwrap()).unwrap();
                out.push(p);
                if out.len() == n {
                    break 'outer;
                }
            }
        }
    }
    out
}

fn associative(e: &Curve, pts: &[NfPoint], triples: usize) {
    let mut count = 0;
    for (i, p) in pts.iter().enumerate() {
        let q = &pts[(i * 7 + 3) % pts.len()];
        let r = &pts[(i * 11 + 5) % pts.len()];
        let lhs = nf_add_points(e, &nf_add_points(e, p, q).unwrap(), r).unwrap();
        let rhs = nf_add_points(e, p, &nf_add_points(e, q, r).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "triple {i}");
        count += 1;
    }
    assert!(count >= triples);
}

fn commutes(e: &Curve, pts: &[NfPoint], sigma: &Automorphism) {
    for (i, p) in pts.iter().enumerate() {
        let q = &pts[(i + 1) % pts.len()];
        let lhs = galois_apply(&nf_add_points(e, p, q).unwrap(), sigma).unwrap();
        let rhs = nf_add_points(e, &galois_apply(p, sigma).unwrap(), &galois_apply(q, sigma).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(e.contains(&galois_apply(p, sigma).unwrap()));
    }
}

#[test]
fn cubic_field_group_law() {
    let (e, q) = division_by_three_point().unwrap();
    let k = q.x().unwrap().field().clone();
    let rho = Automorphism::from_i64(&k, &[-2, 0, 1]).unwrap();
    let rq = galois_apply(&q, &rho).unwrap();
    let rrq = galois_apply(&rq, &rho).unwrap();
    assert_eq!(galois_apply(&rrq, &rho).unwrap(), q);
    let pts = sample(&e, &[q, rq, rrq], 20);
    associative(&e, &pts, 20);
    commutes(&e, &pts, &rho);
}

#[test]
fn quartic_field_group_law_and_trace() {
    let (cubic, raw, sigma) = quartic_trace_data().unwrap();
    let e = cubic.weierstrass().unwrap();
    let q = cubic.to_weierstrass(&raw);
    let k = q.x().unwrap().field().clone();
    let t2 = Point::Affine(NfElement::from_rat(&k, rat(16)), NfElement::from_rat(&k, rat(0)));
    assert!(e.contains(&t2));
    let sq = galois_apply(&q, &sigma).unwrap();
    let pts = sample(&e, &[q.clone(), sq, t2], 20);
    associative(&e, &pts, 20);
    commutes(&e, &pts, &sigma);
    for p in &pts {
        let t = trace_to_subfield(&e, p, &sigma).unwrap();
        assert_eq!(galois_apply(&t, &sigma).unwrap(), t);
    }
}

#[test]
fn quadratic_field_trace_is_fixed() {
    let k = NumberField::new(&[-2, 0, 1]).unwrap();
    let e = Curve::from_i64([0, 0, 0, -2, 0]).unwrap();
    let sigma = Automorphism::from_i64(&k, &[0, -1]).unwrap();
    let p = lift(&k, &Point::Affine(rat(-1), rat(1)));
    let s = NfElement::generator(&k);
    let rhs = Field::sub(&s.pow(3), &Field::mul(&s, &NfElement::from_rat(&k, rat(2))));
    assert!(rhs.is_zero());
    let r: NfPoint = Point::Affine(s, NfElement::from_rat(&k, rat(0)));
    assert!(e.contains(&r));
    let pts = sample(&e, &[p, r], 20);
    associative(&e, &pts, 20);
    commutes(&e, &pts, &sigma);
    for p in &pts {
        let t = trace_to_subfield(&e, p, &sigma).unwrap();
        assert_eq!(galois_apply(&t, &sigma).unwrap(), t);
        if let Point::Affine(x, y) = &t {
            assert!(x.is_rational() && y.is_rational());
        }
    }
}
