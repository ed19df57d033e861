//! Curves with prescribed local behaviour: good reduction with a given trace at
//! the primes of `P`, multiplicative reduction of a given type and Tamagawa number
//! at the primes of `L`, and a certificate that `E[q]` is irreducible for `q` in `Q`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arith;
use crate::ec::{ap_count, count_on_good_model, tate_local, Curve, ReductionKind};
use crate::{Error, Int, Result};

/// Largest prime accepted in `P` (each search step counts points over `F_p`).
pub const DEURING_BOUND: u64 = 10_000;
/// Random curves tried per prime before giving up.
pub const DEURING_TRIES: usize = 100_000;
/// Cap on the exponent `t_l` of the congruence imposed at the primes of `L`.
pub const MAX_T: u32 = 64;
/// Witness primes are searched below this bound.
pub const WITNESS_BOUND: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTrace {
    pub prime: u64,
    pub trace: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMultiplicative {
    pub prime: u64,
    /// `+1` split, `-1` nonsplit.
    pub sign: i8,
    pub tamagawa: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForgeSpec {
    pub good: Vec<LocalTrace>,
    pub multiplicative: Vec<LocalMultiplicative>,
    pub irreducible: Vec<u64>,
}

fn hasse_ok(p: u64, a: i64) -> bool {
    (a as i128) * (a as i128) < 4 * p as i128
}

impl ForgeSpec {
    pub fn validate(&self) -> Result<()> {
        let mut used = BTreeSet::new();
        for t in &self.good {
            arith::require_prime(t.prime)?;
            if t.prime > DEURING_BOUND {
                return Err(Error::BoundExceeded { what: "good-reduction prime", value: t.prime, bound: DEURING_BOUND });
            }
            if !hasse_ok(t.prime, t.trace) {
                return Err(Error::Invalid(format!("|a_{}| = |{}| is not below 2 sqrt({})", t.prime, t.trace, t.prime)));
            }
            if !used.insert(t.prime) {
                return Err(Error::Invalid(format!("prime {} listed twice", t.prime)));
            }
        }
        for m in &self.multiplicative {
            arith::require_prime(m.prime)?;
            if m.sign != 1 && m.sign != -1 {
                return Err(Error::Invalid(format!("reduction sign at {} must be +1 or -1", m.prime)));
            }
            if m.tamagawa == 0 || m.tamagawa > MAX_T as u64 / 2 {
                return Err(Error::Invalid(format!("Tamagawa number at {} must lie in 1..={}", m.prime, MAX_T / 2)));
            }
            if m.sign == -1 && m.tamagawa > 2 {
                return Err(Error::Invalid(format!("nonsplit reduction at {} needs c in {{1, 2}}", m.prime)));
            }
            if !used.insert(m.prime) {
                return Err(Error::Invalid(format!("prime {} is in both P and L or listed twice", m.prime)));
            }
        }
        let mut qs = BTreeSet::new();
        for &q in &self.irreducible {
            arith::require_prime(q)?;
            if !qs.insert(q) {
                return Err(Error::Invalid(format!("q = {q} listed twice")));
            }
        }
        if qs.contains(&2) && used.contains(&2) {
            return Err(Error::Invalid("q = 2 together with conditions at 2 is not supported".into()));
        }
        Ok(())
    }

    /// A random valid spec over the primes up to `bound`.
    pub fn random(seed: u64, bound: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut primes = arith::primes_up_to(bound);
        let mut spec = ForgeSpec::default();
        let take = |rng: &mut ChaCha8Rng, primes: &mut Vec<u64>| {
            let i = below(rng, primes.len() as u64) as usize;
            primes.swap_remove(i)
        };
        for _ in 0..below(&mut rng, 3) + 1 {
            if primes.is_empty() {
                break;
            }
            let p = take(&mut rng, &mut primes);
            let span = 2 * (4 * p).isqrt_floor() + 1;
            let mut a = below(&mut rng, span) as i64 - (4 * p).isqrt_floor() as i64;
            while !hasse_ok(p, a) {
                a += if a > 0 { -1 } else { 1 };
            }
            spec.good.push(LocalTrace { prime: p, trace: a });
        }
        for _ in 0..below(&mut rng, 3) + 1 {
            if primes.is_empty() {
                break;
            }
            let l = take(&mut rng, &mut primes);
            let split = rng.next_u32() % 2 == 0;
            let c = if split { 1 + below(&mut rng, 6) } else { 1 + below(&mut rng, 2) };
            spec.multiplicative.push(LocalMultiplicative { prime: l, sign: if split { 1 } else { -1 }, tamagawa: c });
        }
        let mut all = arith::primes_up_to(bound);
        let conditions_at_two = spec.good.iter().any(|t| t.prime == 2) || spec.multiplicative.iter().any(|m| m.prime == 2);
        if conditions_at_two {
            all.retain(|&q| q != 2);
        }
        for _ in 0..below(&mut rng, 3) {
            let q = take(&mut rng, &mut all);
            spec.irreducible.push(q);
        }
        spec
    }
}

trait IsqrtFloor {
    fn isqrt_floor(self) -> u64;
}

impl IsqrtFloor for u64 {
    fn isqrt_floor(self) -> u64 {
        num_integer::Roots::sqrt(&self)
    }
}

fn below(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    rng.next_u64() % n
}

fn small_curve(a: [u64; 5]) -> Option<Curve> {
    Curve::new(a.map(Int::from)).ok()
}

fn good_mod(c: &Curve, p: u64) -> bool {
    !(&c.disc % Int::from(p)).is_zero()
}

/// A curve over `F_p` (a-invariants reduced mod `p`) with trace `a`, by seeded random search.
pub fn deuring_search(p: u64, a: i64, rng: &mut ChaCha8Rng) -> Result<[u64; 5]> {
    arith::require_prime(p)?;
    if p > DEURING_BOUND {
        return Err(Error::BoundExceeded { what: "Deuring search prime", value: p, bound: DEURING_BOUND });
    }
    if !hasse_ok(p, a) {
        return Err(Error::Invalid(format!("|{a}| is not below 2 sqrt({p})")));
    }
    let target = (p as i64 + 1 - a) as u64;
    for _ in 0..DEURING_TRIES {
        let cand = [0; 5].map(|_: u64| below(rng, p));
        let Some(c) = small_curve(cand) else { continue };
        if good_mod(&c, p) && count_on_good_model(&c, p) == target {
            return Ok(cand);
        }
    }
    Err(Error::SearchExhausted(format!("no curve over F_{p} with trace {a} in {DEURING_TRIES} tries")))
}

/// Frobenius data at `r` certifying that `E[q]` has no Galois-stable line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub q: u64,
    pub r: u64,
    /// The local curve, a-invariants mod `r`.
    pub local: [u64; 5],
    pub a_r: i64,
}

/// `t^2 - a t + r` has no root mod `q`; root enumeration and the discriminant test must agree.
pub fn charpoly_irreducible(q: u64, a: i64, r: u64) -> Result<bool> {
    let qi = q as i128;
    let (a_m, r_m) = ((a as i128).rem_euclid(qi), (r as i128).rem_euclid(qi));
    let by_disc = if q == 2 {
        a_m == 1 && r_m == 1
    } else {
        let disc = Int::from(a_m * a_m - 4 * r_m);
        arith::legendre(&disc, q) == -1
    };
    if q <= 100_000 {
        let has_root = (0..qi).any(|t| (t * t - a_m * t + r_m).rem_euclid(qi) == 0);
        if has_root == by_disc {
            return Err(Error::Inconsistent(format!("root enumeration and discriminant disagree for q = {q}")));
        }
    }
    Ok(by_disc)
}

/// Smallest prime `r >= 5` (so short models cover every curve over `F_r`), `r != q`, outside `avoid`, with a curve over `F_r` certifying
/// irreducibility: an irreducible cubic `y^2 = g(x)` for `q = 2`, a supersingular curve
/// with `-r` a non-residue mod `q` otherwise.
pub fn irreducibility_witness(q: u64, avoid: &[u64]) -> Result<Witness> {
    arith::require_prime(q)?;
    let mut r = 5;
    while r <= WITNESS_BOUND {
        if r != q && !avoid.contains(&r) && (q == 2 || arith::legendre(&-Int::from(r), q) == -1) {
            for a4 in 0..r {
                for a6 in 0..r {
                    let local = [0, 0, 0, a4, a6];
                    let Some(c) = small_curve(local) else { continue };
                    if !good_mod(&c, r) {
                        continue;
                    }
                    let wanted = if q == 2 {
                        // no root of x^3 + a4 x + a6 mod r
                        (0..r).all(|x| (x * x % r * x + a4 * x + a6) % r != 0)
                    } else {
                        count_on_good_model(&c, r) == r + 1
                    };
                    if !wanted {
                        continue;
                    }
                    let a_r = r as i64 + 1 - count_on_good_model(&c, r) as i64;
                    if charpoly_irreducible(q, a_r, r)? {
                        return Ok(Witness { q, r, local, a_r });
                    }
                }
            }
        }
        r = arith::next_prime(r);
    }
    Err(Error::SearchExhausted(format!("no witness prime below {WITNESS_BOUND} for q = {q}")))
}

/// `y^2 + xy = x^3 + a2 x^2 + l^n`: type `I_n` at `l`, split iff `x^2 + x - a2` splits mod `l`.
pub fn tate_local_model(l: u64, sign: i8, tamagawa: u64) -> Result<[Int; 5]> {
    arith::require_prime(l)?;
    if sign == -1 && !(1..=2).contains(&tamagawa) {
        return Err(Error::Invalid("nonsplit reduction needs c in {1, 2}".into()));
    }
    if tamagawa == 0 || (sign != 1 && sign != -1) {
        return Err(Error::Invalid("need c >= 1 and sign +1 or -1".into()));
    }
    let a2: u64 = if sign == 1 {
        0
    } else if l == 2 {
        1
    } else {
        // 1 + 4 a2 a non-residue
        (1..l).find(|&a| arith::legendre(&Int::from(1 + 4 * a), l) == -1).expect("non-residues exist")
    };
    let a6 = arith::pow_int(l, tamagawa as u32);
    Ok([Int::from(1), Int::from(a2), Int::zero(), Int::zero(), a6])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgeCheck {
    pub label: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgeLedger {
    pub checks: Vec<ForgeCheck>,
    pub witnesses: Vec<Witness>,
}

impl ForgeLedger {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgeResult {
    pub curve: Curve,
    pub ledger: ForgeLedger,
    /// `(m, t_m)`: the congruence on the a-invariants holds mod `m^t_m`.
    pub exponents: Vec<(u64, u32)>,
}

fn certify_at(e: &Curve, q: u64, r: u64) -> Result<Option<i64>> {
    if !good_mod(e, r) {
        return Ok(None);
    }
    let a = ap_count(e, r)?;
    Ok(charpoly_irreducible(q, a, r)?.then_some(a))
}

fn verify_with_hints(e: &Curve, spec: &ForgeSpec, hints: &[(u64, u64)]) -> Result<ForgeLedger> {
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    for t in &spec.good {
        let (pass, label) = match ap_count(e, t.prime) {
            Ok(a) => (a == t.trace, format!("good at {} with a = {} (want {})", t.prime, a, t.trace)),
            Err(err) => (false, format!("good at {}: {err}", t.prime)),
        };
        checks.push(ForgeCheck { label, pass });
    }
    for m in &spec.multiplicative {
        let ld = tate_local(e, m.prime)?;
        let want = if m.sign == 1 { ReductionKind::SplitMultiplicative } else { ReductionKind::NonsplitMultiplicative };
        checks.push(ForgeCheck {
            label: format!("{} at {} with c = {} (want {} with c = {})", ld.kind.as_str(), m.prime, ld.tamagawa, want.as_str(), m.tamagawa),
            pass: ld.kind == want && ld.tamagawa == m.tamagawa,
        });
    }
    for &q in &spec.irreducible {
        let hinted = hints.iter().filter(|(hq, _)| *hq == q).map(|(_, r)| *r);
        let searched = arith::primes_up_to(WITNESS_BOUND.min(2000)).into_iter().filter(|&r| r != q);
        let mut found = None;
        for r in hinted.chain(searched) {
            if let Some(a_r) = certify_at(e, q, r)? {
                found = Some((r, a_r));
                break;
            }
        }
        match found {
            Some((r, a_r)) => {
                let local = e.ainvs().map(|c| c.mod_floor(&Int::from(r)).to_u64().unwrap());
                witnesses.push(Witness { q, r, local, a_r });
                checks.push(ForgeCheck { label: format!("E[{q}] irreducible: certified at r = {r}, a_r = {a_r}"), pass: true });
            }
            None => checks.push(ForgeCheck { label: format!("E[{q}] irreducible: not certified"), pass: false }),
        }
    }
    Ok(ForgeLedger { checks, witnesses })
}

/// Checks every clause of `spec` on `e`.
pub fn forge_verify(e: &Curve, spec: &ForgeSpec) -> Result<ForgeLedger> {
    verify_with_hints(e, spec, &[])
}

/// Builds a curve meeting `spec` by the Chinese remainder theorem on the a-invariants.
pub fn crt_assemble(spec: &ForgeSpec, seed: u64) -> Result<ForgeResult> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // (modulus prime, exponent, local a-invariants)
    let mut fixed: Vec<(u64, u32, [Int; 5])> = Vec::new();
    for t in &spec.good {
        let local = deuring_search(t.prime, t.trace, &mut rng)?;
        fixed.push((t.prime, 1, local.map(Int::from)));
    }
    let mut avoid: Vec<u64> = spec.good.iter().map(|t| t.prime).chain(spec.multiplicative.iter().map(|m| m.prime)).collect();
    let mut hints = Vec::new();
    for &q in &spec.irreducible {
        let w = irreducibility_witness(q, &avoid)?;
        avoid.push(w.r);
        hints.push((q, w.r));
        fixed.push((w.r, 1, w.local.map(Int::from)));
    }
    let locals: Vec<[Int; 5]> = spec
        .multiplicative
        .iter()
        .map(|m| tate_local_model(m.prime, m.sign, m.tamagawa))
        .collect::<Result<_>>()?;
    let mut t_l = 1u32;
    loop {
        let mut parts: Vec<(u64, u32, &[Int; 5])> = fixed.iter().map(|(p, t, a)| (*p, *t, a)).collect();
        for (m, a) in spec.multiplicative.iter().zip(&locals) {
            parts.push((m.prime, t_l, a));
        }
        let mut ainvs: Vec<Int> = Vec::with_capacity(5);
        let mut modulus = Int::from(1);
        for i in 0..5 {
            let congruences: Vec<(Int, Int)> = parts.iter().map(|(p, t, a)| (a[i].clone(), arith::pow_int(*p, *t))).collect();
            let (x, m) = arith::crt(&congruences)?;
            ainvs.push(x);
            modulus = m;
        }
        // shift a6 by the modulus until the model is nonsingular
        let mut curve = None;
        for k in 0..8 {
            let a6 = &ainvs[4] + &modulus * Int::from(k);
            if let Ok(c) = Curve::new([ainvs[0].clone(), ainvs[1].clone(), ainvs[2].clone(), ainvs[3].clone(), a6]) {
                curve = Some(c);
                break;
            }
        }
        let curve = curve.ok_or(Error::Singular)?;
        let ledger = verify_with_hints(&curve, spec, &hints)?;
        let exponents: Vec<(u64, u32)> = parts.iter().map(|(p, t, _)| (*p, *t)).collect();
        if ledger.pass() {
            return Ok(ForgeResult { curve, ledger, exponents });
        }
        if t_l >= MAX_T || spec.multiplicative.is_empty() {
            let failed: Vec<String> = ledger.checks.iter().filter(|c| !c.pass).map(|c| c.label.clone()).collect();
            return Err(Error::Inconsistent(format!("forge did not verify with t_l = {t_l}: {}", failed.join("; "))));
        }
        t_l *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn deuring_finds_requested_traces() {
        let c = deuring_search(5, 2, &mut rng()).unwrap();
        assert_eq!(count_on_good_model(&small_curve(c).unwrap(), 5), 4);
        let known = small_curve([0, 1, 0, 3, 0]).unwrap();
        assert_eq!(count_on_good_model(&known, 5), 4);
        let c = deuring_search(7, 1, &mut rng()).unwrap();
        assert_eq!(count_on_good_model(&small_curve(c).unwrap(), 7), 7);
        assert!(deuring_search(5, 5, &mut rng()).is_err());
        assert_eq!(deuring_search(13, -3, &mut rng()), deuring_search(13, -3, &mut rng()));
    }

    #[test]
    fn witnesses_for_small_q() {
        let w = irreducibility_witness(3, &[]).unwrap();
        assert_eq!((w.r, w.local, w.a_r), (7, [0, 0, 0, 1, 0], 0));
        let w = irreducibility_witness(2, &[]).unwrap();
        assert_eq!(w.r, 5);
        assert!(w.a_r % 2 != 0);
        let w = irreducibility_witness(5, &[]).unwrap();
        assert_eq!(arith::legendre(&-Int::from(w.r), 5), -1);
        assert_eq!(w.a_r, 0);
        assert_eq!(irreducibility_witness(7, &[]).unwrap().r, 11);
        assert_ne!(irreducibility_witness(3, &[7]).unwrap().r, 7);
    }

    #[test]
    fn charpoly_test_agrees() {
        assert!(charpoly_irreducible(3, 0, 7).unwrap());
        assert!(!charpoly_irreducible(3, 0, 5).unwrap());
        assert!(charpoly_irreducible(2, 1, 5).unwrap());
        assert!(!charpoly_irreducible(2, 0, 5).unwrap());
    }

    #[test]
    fn tate_models() {
        let e = Curve::new(tate_local_model(11, 1, 5).unwrap()).unwrap();
        let ld = tate_local(&e, 11).unwrap();
        assert_eq!((ld.kind, ld.tamagawa, ld.j_valuation), (ReductionKind::SplitMultiplicative, 5, Some(-5)));
        let e = Curve::new(tate_local_model(3, -1, 1).unwrap()).unwrap();
        let ld = tate_local(&e, 3).unwrap();
        assert_eq!((ld.kind, ld.tamagawa), (ReductionKind::NonsplitMultiplicative, 1));
        assert!(tate_local_model(3, -1, 3).is_err());
    }

    #[test]
    fn assemble_small_specs() {
        let spec = ForgeSpec {
            good: alloc::vec![LocalTrace { prime: 5, trace: 2 }],
            multiplicative: alloc::vec![LocalMultiplicative { prime: 3, sign: 1, tamagawa: 2 }],
            irreducible: alloc::vec![7],
        };
        let r = crt_assemble(&spec, 7).unwrap();
        assert!(r.ledger.pass());
        assert_eq!(ap_count(&r.curve, 5), Ok(2));
        assert!(forge_verify(&r.curve, &spec).unwrap().pass());
        let bad = ForgeSpec {
            good: alloc::vec![LocalTrace { prime: 3, trace: 1 }],
            multiplicative: alloc::vec![LocalMultiplicative { prime: 3, sign: 1, tamagawa: 1 }],
            irreducible: Vec::new(),
        };
        assert!(crt_assemble(&bad, 1).is_err());
    }

    #[test]
    fn verify_known_curves() {
        let x011 = Curve::from_i64([0, -1, 1, -10, -20]).unwrap();
        let spec = ForgeSpec {
            multiplicative: alloc::vec![LocalMultiplicative { prime: 11, sign: 1, tamagawa: 5 }],
            ..Default::default()
        };
        assert!(forge_verify(&x011, &spec).unwrap().pass());
        assert!(forge_verify(&x011, &ForgeSpec::default()).unwrap().pass());
        // rational 2-torsion: never certified
        let x032 = Curve::from_i64([0, 0, 0, 4, 0]).unwrap();
        let spec = ForgeSpec { irreducible: alloc::vec![2], ..Default::default() };
        assert!(!forge_verify(&x032, &spec).unwrap().pass());
    }
}
