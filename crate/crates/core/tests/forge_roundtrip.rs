use iwasawa_core::arith;
use iwasawa_core::ec::{ap_count, count_points, Curve};
use iwasawa_core::forge::{crt_assemble, deuring_search, forge_verify, irreducibility_witness, ForgeSpec};
use iwasawa_core::Int;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

#[test]
fn seeded_specs_verify() {
    for seed in 0..20 {
        let spec = ForgeSpec::random(seed, 50);
        spec.validate().unwrap();
        let out = crt_assemble(&spec, seed).unwrap_or_else(|e| panic!("seed {seed}: {spec:?}: {e}"));
        assert!(out.ledger.pass(), "seed {seed}: {:?}", out.ledger);
        let again = forge_verify(&out.curve, &spec).unwrap();
        assert!(again.pass(), "seed {seed}: reverify {:?}", again);
        for t in &spec.good {
            assert_eq!(ap_count(&out.curve, t.prime).unwrap(), t.trace);
        }
        // multiplicative places read off ord_l(j) and ord_l(disc) directly
        for m in &spec.multiplicative {
            let oj = arith::vp_rat(&out.curve.j, m.prime).unwrap();
            let od = arith::vp(&out.curve.disc, m.prime).unwrap() as i64;
            assert_eq!(-oj, od, "seed {seed}: not minimal multiplicative at {}", m.prime);
            if m.sign == 1 {
                assert_eq!(od as u64, m.tamagawa);
            }
        }
        assert_eq!(out.ledger.witnesses.len(), spec.irreducible.len());
    }
}

#[test]
fn deuring_search_is_deterministic() {
    for (p, a) in [(5u64, 2i64), (13, -3), (47, 10), (97, 0)] {
        let x = deuring_search(p, a, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let y = deuring_search(p, a, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert_eq!(x, y);
        let c = Curve::new(x.map(Int::from)).unwrap();
        assert_eq!(count_points(&c, p).unwrap() as i64, p as i64 + 1 - a);
    }
}

#[test]
fn witnesses_for_small_q() {
    for q in [2u64, 3, 5, 7] {
        let w = irreducibility_witness(q, &[]).unwrap();
        let c = Curve::new(w.local.map(Int::from)).unwrap();
        assert_eq!(ap_count(&c, w.r).unwrap(), w.a_r);
        // t^2 - a t + r has no root mod q
        let qi = q as i64;
        assert!((0..qi).all(|t| (t * t - w.a_r * t + w.r as i64).rem_euclid(qi) != 0), "q = {q}: {w:?}");
    }
}
