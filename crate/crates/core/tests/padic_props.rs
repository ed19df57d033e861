use iwasawa_core::padic::{PadicNumber, Valuation};
use iwasawa_core::Int;
use proptest::prelude::*;

const N: u32 = 20;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11])
}

fn unit(p: u64) -> impl Strategy<Value = i64> {
    (1i64..1_000_000).prop_filter("unit", move |x| x % p as i64 != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn teichmuller_part_is_multiplicative((p, x, y) in prime().prop_flat_map(|p| (Just(p), unit(p), unit(p)))) {
        let px = PadicNumber::from_i64(p, x, N).unwrap();
        let py = PadicNumber::from_i64(p, y, N).unwrap();
        let (tx, _) = px.unit_decompose().unwrap();
        let (ty, _) = py.unit_decompose().unwrap();
        let (txy, _) = px.mul(&py).unwrap().unit_decompose().unwrap();
        let m = num_traits::pow(Int::from(p), N as usize);
        prop_assert_eq!((txy - tx * ty) % &m, Int::from(0));
    }

    #[test]
    fn log_of_power((p, x) in prime().prop_flat_map(|p| (Just(p), unit(p))), k in 1i64..=10) {
        let px = PadicNumber::from_i64(p, x, N).unwrap();
        let lhs = px.pow(k).unwrap().iwasawa_log().unwrap();
        let rhs = px.iwasawa_log().unwrap().mul(&PadicNumber::from_i64(p, k, N).unwrap()).unwrap();
        prop_assert!(lhs.congruent(&rhs), "{:?} vs {:?}", lhs, rhs);
    }

    #[test]
    fn valuation_laws(p in prime(), a in 1i64..100_000, b in 1i64..100_000, sa in 0i64..4, sb in 0i64..4) {
        let pp = p as i64;
        let x = PadicNumber::from_i64(p, a * pp.pow(sa as u32), N).unwrap();
        let y = PadicNumber::from_i64(p, b * pp.pow(sb as u32), N).unwrap();
        let v = |z: &PadicNumber| z.valuation().finite().unwrap();
        prop_assert_eq!(v(&x.mul(&y).unwrap()), v(&x) + v(&y));
        let s = x.add(&y).unwrap();
        match s.valuation() {
            Valuation::Finite(vs) => {
                prop_assert!(vs >= v(&x).min(v(&y)));
                if v(&x) != v(&y) {
                    prop_assert_eq!(vs, v(&x).min(v(&y)));
                }
            }
            Valuation::Infinity => prop_assert_eq!(v(&x), v(&y)),
        }
    }
}
