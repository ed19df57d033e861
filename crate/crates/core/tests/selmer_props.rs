use iwasawa_core::arith::{self, primes_up_to};
use iwasawa_core::ec::{classify_at_p, tate_local, torsion, Curve, ReductionKind};
use iwasawa_core::selmer::{
    criterion_infinite, criterion_vanishing, euler_char, local_kernels, p_part, twist_lambda, GlobalAssumptions,
};
use iwasawa_core::{Error, Int};
use proptest::prelude::*;

fn small_curve() -> impl Strategy<Value = Curve> {
    prop::array::uniform5(-15i64..=15).prop_filter_map("singular", |a| Curve::from_i64(a).ok())
}

fn good_ordinary_primes(e: &Curve) -> Vec<u64> {
    primes_up_to(23)
        .into_iter()
        .filter(|&p| p > 2 && arith::vp(&e.disc, p) == Some(0))
        .filter(|&p| classify_at_p(e, p).is_ok_and(|r| r.ordinary()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn vanishing_excludes_infinite(e in small_curve()) {
        let a = GlobalAssumptions::default();
        for p in good_ordinary_primes(&e) {
            let v = criterion_vanishing(&e, p, &a).unwrap();
            match criterion_infinite(&e, p, &a) {
                Ok(inf) => prop_assert!(!(v.holds && inf.holds), "p = {}: {:?} {:?}", p, v, inf),
                Err(Error::TorsionPresent(q)) => prop_assert_eq!(q, p),
                Err(other) => return Err(TestCaseError::fail(other.to_string())),
            }
            if v.selmer_vanishes && torsion(&e).unwrap().order() % p != 0 {
                prop_assert_eq!(euler_char(&e, p, &a).unwrap().total, 0);
            }
        }
    }

    #[test]
    fn ledger_total_is_sum_of_entries(e in small_curve(), sel in 0u32..3) {
        for p in good_ordinary_primes(&e) {
            let r = euler_char(&e, p, &GlobalAssumptions::finite(sel)).unwrap();
            prop_assert_eq!(r.total, r.sum_of_entries());
        }
    }

    #[test]
    fn local_kernels_match_tamagawa_p_parts(e in small_curve()) {
        for p in good_ordinary_primes(&e) {
            for k in local_kernels(&e, p).unwrap() {
                if k.place == p {
                    continue;
                }
                let ld = tate_local(&e, k.place).unwrap();
                if ld.kind == ReductionKind::Additive && p >= 5 {
                    prop_assert_eq!(p_part(ld.tamagawa, p), 1);
                }
                prop_assert_eq!(k.vp, arith::vp_u64(ld.tamagawa, p) as i64, "l = {}", k.place);
            }
        }
    }

    #[test]
    fn twist_parity_is_the_splitting_sign(lambda in 0i64..50, d in -5000i64..-1) {
        let squarefree = arith::factor(&Int::from(d)).unwrap().iter().all(|(_, k)| *k == 1);
        prop_assume!(squarefree && d % 5 != 0);
        let l = twist_lambda(lambda, d).unwrap();
        let eps = i64::from(arith::legendre(&Int::from(d), 11) == 1);
        prop_assert_eq!(l - 2 * lambda, eps);
        prop_assert_eq!(l.rem_euclid(2), eps);
    }
}

#[test]
fn twist_rejects_bad_discriminants() {
    assert!(twist_lambda(0, 3).is_err());
    assert!(twist_lambda(0, -5).is_err());
    assert!(twist_lambda(0, -12).is_err());
}
