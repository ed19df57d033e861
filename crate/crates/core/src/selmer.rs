//! Euler characteristic of the Selmer group over the cyclotomic Z_p-extension and
//! the local/global criteria built from the same local data.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith;
use crate::ec::{classify_at_p, tate_local, tate_period, torsion, Curve, LocalData, ReductionKind};
use crate::padic::Valuation;
use crate::{Error, Int, Result, DEFAULT_DIGITS};

/// Global input that is not computed here: the Selmer order over `Q` comes from
/// outside (typically a Sha prediction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalAssumptions {
    /// `v_p(|Sel_E(Q)_p|)`.
    pub sel_vp: u32,
    pub rank: Option<u32>,
    pub sel_finite: bool,
}

impl GlobalAssumptions {
    /// `Sel_E(Q)_p` finite of the given `p`-adic valuation.
    pub fn finite(sel_vp: u32) -> Self {
        GlobalAssumptions { sel_vp, rank: None, sel_finite: true }
    }
}

impl Default for GlobalAssumptions {
    fn default() -> Self {
        Self::finite(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    /// A bad prime different from `p`.
    Bad(u64),
    AtP,
    Selmer,
    Torsion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub place: Place,
    pub label: String,
    pub vp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub prime: u64,
    pub reduction_at_p: ReductionKind,
    pub entries: Vec<LedgerEntry>,
    /// `v_p(f_E(0))`.
    pub total: i64,
    /// Set when the split-multiplicative normalisation constant was used.
    pub convention_dependent: bool,
}

impl EulerReport {
    pub fn sum_of_entries(&self) -> i64 {
        self.entries.iter().map(|e| e.vp).sum()
    }
}

fn vp_u64(n: u64, p: u64) -> i64 {
    arith::vp_u64(n, p) as i64
}

fn bad_local_data(e: &Curve) -> Result<Vec<LocalData>> {
    e.bad_primes()?.into_iter().map(|l| tate_local(e, l)).collect()
}

/// Local data at `p` (Tate's algorithm for bad `p`; a point count otherwise).
fn reduction_at(e: &Curve, p: u64) -> Result<ReductionKind> {
    if arith::vp(&e.disc, p).unwrap_or(0) > 0 {
        Ok(tate_local(e, p)?.kind)
    } else {
        Ok(ReductionKind::Good)
    }
}

/// `v_p` of the local factor at `p`, itemised, for good ordinary or multiplicative reduction.
fn at_p_entries(e: &Curve, p: u64, digits: u32) -> Result<(ReductionKind, Vec<LedgerEntry>, bool)> {
    let kind = reduction_at(e, p)?;
    let at = |label: String, vp: i64| LedgerEntry { place: Place::AtP, label, vp };
    match kind {
        ReductionKind::Good => {
            let r = classify_at_p(e, p)?;
            if r.supersingular {
                return Err(Error::Supersingular(p));
            }
            let n = r.points();
            Ok((kind, alloc::vec![at(format!("|E~(F_{p})_p|^2 with #E~(F_{p}) = {n}"), 2 * vp_u64(n, p))], false))
        }
        ReductionKind::NonsplitMultiplicative => {
            let ld = tate_local(e, p)?;
            Ok((
                kind,
                alloc::vec![at("nonsplit: factor 2".into(), vp_u64(2, p)), at(format!("c_{p} = {}", ld.tamagawa), vp_u64(ld.tamagawa, p))],
                false,
            ))
        }
        ReductionKind::SplitMultiplicative => {
            let ld = tate_local(e, p)?;
            let tp = tate_period(e, p, digits)?;
            let log = tp.q.iwasawa_log()?;
            let v_log = match log.valuation() {
                Valuation::Finite(v) if !log.is_zero() => v,
                _ => return Err(Error::LogVanishes),
            };
            Ok((
                kind,
                alloc::vec![
                    at("v_p(log_p q_E)".into(), v_log),
                    at(format!("-v_p(ord_p q_E), ord_p q_E = {}", tp.valuation), -vp_u64(tp.valuation as u64, p)),
                    at("normalisation 1/(2p)".into(), -vp_u64(2 * p, p)),
                    at(format!("c_{p} = {}", ld.tamagawa), vp_u64(ld.tamagawa, p)),
                ],
                true,
            ))
        }
        ReductionKind::Additive => Err(Error::UnsupportedReduction { prime: p, detail: "additive reduction at p" }),
    }
}

/// `v_p(f_E(0))` from local data, the assumed Selmer order and the rational torsion.
pub fn euler_char(e: &Curve, p: u64, a: &GlobalAssumptions) -> Result<EulerReport> {
    euler_char_with_digits(e, p, a, DEFAULT_DIGITS)
}

pub fn euler_char_with_digits(e: &Curve, p: u64, a: &GlobalAssumptions, digits: u32) -> Result<EulerReport> {
    arith::require_prime(p)?;
    if !a.sel_finite {
        return Err(Error::SelmerNotFinite);
    }
    let (kind, mut entries, convention_dependent) = at_p_entries(e, p, digits)?;
    for ld in bad_local_data(e)? {
        if ld.prime == p || ld.kind == ReductionKind::Good {
            continue;
        }
        entries.push(LedgerEntry {
            place: Place::Bad(ld.prime),
            label: format!("c_{} = {}", ld.prime, ld.tamagawa),
            vp: vp_u64(ld.tamagawa, p),
        });
    }
    entries.push(LedgerEntry { place: Place::Selmer, label: "|Sel_E(Q)_p|".into(), vp: a.sel_vp as i64 });
    let t = torsion(e)?;
    entries.push(LedgerEntry {
        place: Place::Torsion,
        label: format!("|E(Q)_p|^-2 with E(Q)_tors = {}", t.structure()),
        vp: -2 * vp_u64(t.order(), p),
    });
    let total = entries.iter().map(|x| x.vp).sum();
    Ok(EulerReport { prime: p, reduction_at_p: kind, entries, total, convention_dependent })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalKernel {
    pub place: u64,
    /// `v_p` of the kernel order.
    pub vp: i64,
}

/// Orders of the local restriction kernels at the bad primes and at `p`.
///
/// At bad `l != p` the Tamagawa part is recomputed from `ord_l(j)` for
/// multiplicative reduction, independently of the component count in Tate's
/// algorithm; additive places use `c_l <= 4`.
pub fn local_kernels(e: &Curve, p: u64) -> Result<Vec<LocalKernel>> {
    arith::require_prime(p)?;
    let mut out = Vec::new();
    let (_, at_p, _) = at_p_entries(e, p, DEFAULT_DIGITS)?;
    out.push(LocalKernel { place: p, vp: at_p.iter().map(|x| x.vp).sum() });
    for l in e.bad_primes()? {
        if l == p {
            continue;
        }
        let kind = reduction_at(e, l)?;
        let vp = match kind {
            ReductionKind::Good => continue,
            ReductionKind::SplitMultiplicative | ReductionKind::NonsplitMultiplicative => {
                let oj = -arith::vp_rat(&e.j, l).ok_or_else(|| Error::Inconsistent("j = 0 at a multiplicative prime".into()))?;
                let c = if kind == ReductionKind::SplitMultiplicative {
                    oj as u64
                } else if oj % 2 == 0 {
                    2
                } else {
                    1
                };
                vp_u64(c, p)
            }
            ReductionKind::Additive if p >= 5 => 0,
            ReductionKind::Additive => vp_u64(tate_local(e, l)?.tamagawa, p),
        };
        out.push(LocalKernel { place: l, vp });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingVerdict {
    pub holds: bool,
    pub conditions: Vec<Condition>,
    /// `Sel(Q_inf)_p = 0` follows (given `Sel(Q)_p = 0` from the assumptions).
    pub selmer_vanishes: bool,
}

fn require_good_ordinary(e: &Curve, p: u64) -> Result<crate::ec::Reduction> {
    if reduction_at(e, p)? != ReductionKind::Good {
        return Err(Error::BadReduction(p));
    }
    let r = classify_at_p(e, p)?;
    if r.supersingular {
        return Err(Error::Supersingular(p));
    }
    Ok(r)
}

/// Sufficient local conditions for `Sel_E(Q_inf)_p` to vanish when `Sel_E(Q)_p` does.
pub fn criterion_vanishing(e: &Curve, p: u64, a: &GlobalAssumptions) -> Result<VanishingVerdict> {
    let r = require_good_ordinary(e, p)?;
    let mut conditions = alloc::vec![Condition {
        label: format!("p does not divide #E~(F_p) = {}", r.points()),
        holds: r.points() % p != 0,
    }];
    for ld in bad_local_data(e)? {
        if ld.kind == ReductionKind::Good {
            continue;
        }
        conditions.push(Condition { label: format!("p does not divide c_{} = {}", ld.prime, ld.tamagawa), holds: ld.tamagawa % p != 0 });
    }
    let holds = conditions.iter().all(|c| c.holds);
    Ok(VanishingVerdict { holds, conditions, selmer_vanishes: holds && a.sel_finite && a.sel_vp == 0 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteClause {
    SelmerNonzero,
    Anomalous,
    /// `p | c_l` at a bad prime `l`.
    Tamagawa { prime: u64, kind: ReductionKind },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteVerdict {
    pub holds: bool,
    /// Every clause that fires, in the order checked.
    pub clauses: Vec<InfiniteClause>,
}

/// Conditions forcing `Sel_E(Q_inf)_p` to be infinite (no `p`-torsion in `E(Q)`).
pub fn criterion_infinite(e: &Curve, p: u64, a: &GlobalAssumptions) -> Result<InfiniteVerdict> {
    let r = require_good_ordinary(e, p)?;
    if torsion(e)?.order() % p == 0 {
        return Err(Error::TorsionPresent(p));
    }
    let mut clauses = Vec::new();
    if a.sel_vp > 0 || !a.sel_finite {
        clauses.push(InfiniteClause::SelmerNonzero);
    }
    if r.anomalous {
        clauses.push(InfiniteClause::Anomalous);
    }
    for ld in bad_local_data(e)? {
        if ld.kind != ReductionKind::Good && ld.tamagawa % p == 0 {
            clauses.push(InfiniteClause::Tamagawa { prime: ld.prime, kind: ld.kind });
        }
    }
    Ok(InfiniteVerdict { holds: !clauses.is_empty(), clauses })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    /// `sel_corank = lambda (mod 2)`; `None` for `p = 2`.
    pub parity_consistent: Option<bool>,
    /// Lower bound for the Lambda-corank; `None` when potential supersingularity is undecided.
    pub corank_lower_bound: Option<u32>,
    /// Restriction from finite layers to `Q_inf` is injective.
    pub injective: bool,
}

pub fn corank_parity(e: &Curve, p: u64, lambda_e: u32, sel_corank: u32) -> Result<ParityReport> {
    arith::require_prime(p)?;
    let parity_consistent = (p != 2).then_some(sel_corank % 2 == lambda_e % 2);
    let kind = reduction_at(e, p)?;
    let (corank_lower_bound, ordinary_or_mult) = match kind {
        ReductionKind::Good => {
            let r = classify_at_p(e, p)?;
            (Some(u32::from(r.supersingular)), !r.supersingular)
        }
        ReductionKind::SplitMultiplicative | ReductionKind::NonsplitMultiplicative => (Some(0), true),
        ReductionKind::Additive => {
            // potentially multiplicative places are never potentially supersingular
            let pot_mult = arith::vp_rat(&e.j, p).is_some_and(|v| v < 0);
            (pot_mult.then_some(0), false)
        }
    };
    Ok(ParityReport { parity_consistent, corank_lower_bound, injective: p >= 3 && ordinary_or_mult })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityVerdict {
    pub excluded: bool,
    pub reason: String,
    /// Direct anomaly check, cross-checked against the screen.
    pub anomalous: bool,
}

/// `q p > 1 + p + 2 sqrt(p)`, decided exactly.
fn exceeds_hasse(q: u64, p: u64) -> bool {
    let lhs = (q as i128) * (p as i128) - 1 - p as i128;
    lhs > 0 && lhs * lhs > 4 * p as i128
}

/// Rules out `p` as an anomalous prime from rational 2-torsion or a declared
/// rational subgroup of order `q` in the isogeny class.
pub fn density_screen(e: &Curve, p: u64, declared_q: Option<u64>) -> Result<DensityVerdict> {
    let r = classify_at_p(e, p)?;
    let has_two_torsion = torsion(e)?.order() % 2 == 0;
    let (excluded, reason) = if has_two_torsion && p > 5 {
        (true, String::from("rational 2-torsion and p > 5"))
    } else if let Some(q) = declared_q.filter(|&q| q > 2 && p % q != 0 && exceeds_hasse(q, p)) {
        (true, format!("declared subgroup of order {q}: {q}p > 1 + p + 2 sqrt(p)"))
    } else {
        (false, String::from("no applicable hypothesis"))
    };
    if excluded && r.anomalous {
        return Err(Error::Inconsistent(format!("screen excludes {p} but a_p = {} is anomalous", r.a_p)));
    }
    Ok(DensityVerdict { excluded, reason, anomalous: r.anomalous })
}

/// `2 lambda_xi + eps` with `eps = 1` iff 11 splits in `Q(sqrt d)`.
pub fn twist_lambda(lambda_xi: i64, d: i64) -> Result<i64> {
    if d >= 0 {
        return Err(Error::Invalid(format!("twist formula needs an odd character, got d = {d}")));
    }
    if d % 5 == 0 {
        return Err(Error::Invalid(format!("5 divides d = {d}")));
    }
    let fac = arith::factor(&Int::from(d))?;
    if fac.iter().any(|(_, k)| *k > 1) {
        return Err(Error::Invalid(format!("{d} is not squarefree")));
    }
    let eps = i64::from(arith::legendre(&Int::from(d), 11) == 1);
    Ok(2 * lambda_xi + eps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyParity {
    pub prime: u64,
    pub total_source: i64,
    pub total_target: i64,
    /// Declared `v_p(f_target(0)) - v_p(f_source(0))`.
    pub shift: i64,
    /// Finite Selmer groups of square order would make both totals even;
    /// an odd `total_target - total_source - shift` contradicts finiteness.
    pub inconsistent: bool,
}

/// Tests whether finiteness of both Selmer groups is compatible with a declared
/// `p`-power shift between the characteristic series of two isogenous curves.
pub fn isogeny_parity_check(source: &Curve, target: &Curve, p: u64, shift: i64) -> Result<IsogenyParity> {
    // square Selmer orders: any even v_p; use 0
    let a = GlobalAssumptions::finite(0);
    let t1 = euler_char(source, p, &a)?.total;
    let t2 = euler_char(target, p, &a)?.total;
    Ok(IsogenyParity {
        prime: p,
        total_source: t1,
        total_target: t2,
        shift,
        inconsistent: (t2 - t1 - shift).rem_euclid(2) == 1,
    })
}

/// `p`-part of `n`, exposed for report rendering.
pub fn p_part(n: u64, p: u64) -> u64 {
    p.pow(arith::vp_u64(n, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> Curve {
        Curve::from_i64(a).unwrap()
    }

    fn total(a: [i64; 5], p: u64) -> i64 {
        let r = euler_char(&curve(a), p, &GlobalAssumptions::finite(0)).unwrap();
        assert_eq!(r.total, r.sum_of_entries());
        r.total
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(total([0, -1, 1, -10, -20], 5), 1);
        assert_eq!(total([0, 1, 0, -7, 5], 5), 0);
        assert_eq!(total([0, 1, 0, -647, -6555], 5), 1);
        assert_eq!(total([0, 1, 1, -12, -21], 3), 2);
        assert_eq!(total([1, 1, 0, -2124, -60592], 5), 1);
        assert_eq!(total([0, -1, 1, -460, -11577], 7), 1);
        assert_eq!(total([0, -1, 1, -460, -11577], 43), 2);
        assert_eq!(total([1, 0, 0, -3, 1], 3), 1);
    }

    #[test]
    fn refusals() {
        let e = curve([0, 0, 0, 4, 0]);
        assert_eq!(euler_char(&e, 3, &GlobalAssumptions::default()), Err(Error::Supersingular(3)));
        let inf = GlobalAssumptions { sel_vp: 0, rank: Some(1), sel_finite: false };
        assert_eq!(euler_char(&curve([0, -1, 1, -10, -20]), 5, &inf), Err(Error::SelmerNotFinite));
    }

    #[test]
    fn split_multiplicative_at_p() {
        // 11a at 11 is split; the ledger flags the normalisation
        let r = euler_char(&curve([0, -1, 1, -10, -20]), 11, &GlobalAssumptions::default()).unwrap();
        assert!(r.convention_dependent);
        assert_eq!(r.reduction_at_p, ReductionKind::SplitMultiplicative);
    }

    #[test]
    fn local_kernel_orders() {
        let k = local_kernels(&curve([1, 0, 0, -3, 1]), 3).unwrap();
        assert!(k.contains(&LocalKernel { place: 2, vp: 1 }));
        let k = local_kernels(&curve([0, -1, 1, -10, -20]), 5).unwrap();
        assert_eq!(k[0], LocalKernel { place: 5, vp: 2 });
    }

    #[test]
    fn criteria() {
        let e11 = curve([0, -1, 1, -10, -20]);
        let a = GlobalAssumptions::default();
        let v = criterion_vanishing(&e11, 7, &a).unwrap();
        assert!(v.holds && v.selmer_vanishes);
        assert!(!criterion_vanishing(&e11, 5, &a).unwrap().holds);
        assert!(!criterion_vanishing(&curve([0, 1, 0, -647, -6555]), 5, &a).unwrap().holds);
        assert!(!criterion_infinite(&e11, 7, &a).unwrap().holds);

        let e915 = curve([0, -1, 1, -460, -11577]);
        let c = criterion_infinite(&e915, 7, &a).unwrap();
        assert!(c.clauses.contains(&InfiniteClause::Tamagawa { prime: 5, kind: ReductionKind::SplitMultiplicative }));
        let c = criterion_infinite(&curve([0, 1, 1, -12, -21]), 3, &a).unwrap();
        assert_eq!(c.clauses, [InfiniteClause::Anomalous]);
        assert_eq!(criterion_infinite(&e11, 5, &a), Err(Error::TorsionPresent(5)));
    }

    #[test]
    fn parity_and_corank() {
        let r = corank_parity(&curve([0, 1, 1, -12, -21]), 3, 2, 0).unwrap();
        assert_eq!(r.parity_consistent, Some(true));
        let r = corank_parity(&curve([0, 0, 0, 4, 0]), 3, 0, 0).unwrap();
        assert_eq!(r.corank_lower_bound, Some(1));
        let r = corank_parity(&curve([0, 1, 1, -12, -21]), 3, 1, 0).unwrap();
        assert_eq!(r.parity_consistent, Some(false));
    }

    #[test]
    fn density() {
        assert!(density_screen(&curve([0, 0, 0, 4, 0]), 13, None).unwrap().excluded);
        assert!(density_screen(&curve([0, -1, 1, -10, -20]), 7, Some(5)).unwrap().excluded);
        assert!(!density_screen(&curve([0, 1, 1, -12, -21]), 3, None).unwrap().excluded);
    }

    #[test]
    fn twist_formula() {
        assert_eq!(twist_lambda(0, -2), Ok(1));
        assert_eq!(twist_lambda(1, -1), Ok(2));
        assert_eq!(twist_lambda(10, -3624233), Ok(21));
        assert!(twist_lambda(1, 3).is_err());
        assert!(twist_lambda(1, -5).is_err());
    }

    #[test]
    fn isogeny_parity_for_1225() {
        let e1 = curve([1, 1, 1, -8, 6]);
        let e2 = curve([1, 1, 1, -208083, -36621194]);
        let r = isogeny_parity_check(&e1, &e2, 37, 1).unwrap();
        assert!(r.inconsistent);
        assert_eq!((r.total_source % 2, r.total_target % 2), (0, 0));
    }
}
