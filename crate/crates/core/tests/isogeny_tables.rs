//! The 2-isogeny classes of conductor 15 and 195 at p = 2: torsion, Tamagawa
//! numbers, Euler characteristic and the chained mu bound, per curve.

use iwasawa_core::ec::{tate_local, torsion, Curve};
use iwasawa_core::mu::mu_lower_bound;
use iwasawa_core::mu::two_isogeny_class;
use iwasawa_core::selmer::{euler_char, GlobalAssumptions};

/// (|Sha[2^inf]|, |T|, Tamagawa numbers at the listed primes, f(0) up to units, mu)
type Row = (u64, u64, Vec<u64>, u64, u32);

fn class_rows(seed: [i64; 5], primes: &[u64], sha: &dyn Fn(&Curve) -> u64) -> Vec<Row> {
    let class = two_isogeny_class(&Curve::from_i64(seed).unwrap()).unwrap();
    let mut rows = Vec::new();
    for (curve, label) in class.curves.iter().zip(&class.labels) {
        let t = torsion(curve).unwrap().order();
        let cs: Vec<u64> = primes.iter().map(|&l| tate_local(curve, l).unwrap().tamagawa).collect();
        let s = sha(curve);
        let sel_vp = s.trailing_zeros();
        let total = euler_char(curve, 2, &GlobalAssumptions::finite(sel_vp)).unwrap().total;
        let mu = mu_lower_bound(label, 2, &class.edges).unwrap().lower_bound;
        rows.push((s, t, cs, 1u64 << total, mu));
    }
    rows.sort();
    rows
}

fn sorted(mut rows: Vec<Row>) -> Vec<Row> {
    rows.sort();
    rows
}

#[test]
fn conductor_15_class() {
    let got = class_rows([1, 1, 1, -5, 2], &[3, 5], &|_| 1);
    let want = sorted(vec![
        (1, 8, vec![2, 4], 2, 1),
        (1, 4, vec![2, 2], 4, 2),
        (1, 8, vec![2, 2], 1, 0),
        (1, 8, vec![2, 8], 4, 2),
        (1, 2, vec![2, 1], 8, 3),
        (1, 2, vec![2, 1], 8, 3),
        (1, 4, vec![1, 1], 1, 0),
        (1, 4, vec![1, 1], 1, 0),
    ]);
    assert_eq!(got, want);
}

#[test]
fn conductor_195_class() {
    // the one curve with nontrivial Sha is the one with torsion 2 and c = (1, 4, 1)
    let sha = |c: &Curve| {
        let cs: Vec<u64> = [3, 5, 13].iter().map(|&l| tate_local(c, l).unwrap().tamagawa).collect();
        if cs == [1, 4, 1] { 4 } else { 1 }
    };
    let got = class_rows([1, 0, 0, -115, 392], &[3, 5, 13], &sha);
    let want = sorted(vec![
        (1, 4, vec![4, 1, 1], 4, 0),
        (1, 8, vec![8, 2, 2], 8, 1),
        (1, 8, vec![4, 4, 4], 16, 2),
        (1, 4, vec![16, 1, 1], 16, 2),
        (1, 4, vec![2, 8, 2], 32, 3),
        (1, 4, vec![2, 2, 8], 32, 3),
        (4, 2, vec![1, 4, 1], 64, 4),
        (1, 2, vec![1, 16, 1], 64, 4),
    ]);
    assert_eq!(got, want);
}

fn classify_named_point(seed: [i64; 5], x: (i64, i64), y: (i64, i64)) -> iwasawa_core::mu::TwoTorsionClass {
    use iwasawa_core::arith::rat_frac;
    use iwasawa_core::ec::Point;
    let class = two_isogeny_class(&Curve::from_i64(seed).unwrap()).unwrap();
    let p = Point::Affine(rat_frac(x.0, x.1), rat_frac(y.0, y.1));
    let holder = class.curves.iter().find(|c| c.contains(&p)).expect("point lies on a curve of the class");
    iwasawa_core::mu::classify_two_torsion(holder, &p).unwrap()
}

#[test]
fn named_points_in_the_tables() {
    let c = classify_named_point([1, 1, 1, -5, 2], (-109, 4), (105, 8));
    assert!(c.ramified && c.odd);
    let c = classify_named_point([1, 0, 0, -115, 392], (6, 1), (-3, 1));
    assert!(!c.ramified && !c.odd);
}
