//! One function per subcommand, each returning a [`Report`].

use anyhow::{anyhow, bail, Context, Result};
use iwasawa_core::arith::{self, rat_frac};
use iwasawa_core::ec::{
    classify_at_p, real_period, tate_local, tate_period, torsion, Curve, LocalData, Point, ReductionKind,
};
use iwasawa_core::forge::{crt_assemble, ForgeSpec, LocalMultiplicative, LocalTrace};
use iwasawa_core::lambda::{associates_check, fe_solve, growth_fit_bounded, Associates, FeSolution, LambdaElement};
use iwasawa_core::mu::{
    classify_two_torsion, mu_lower_bound, mu_lower_bound_two, mu_zero_certificate, two_torsion_kernel, IsogenyEdge,
    MuVerdict,
};
use iwasawa_core::nf::verify_scenarios;
use iwasawa_core::selmer::{
    corank_parity, criterion_infinite, criterion_vanishing, density_screen, euler_char_with_digits, local_kernels,
    EulerReport, GlobalAssumptions,
};
use iwasawa_core::{Int, Rat};
use serde_json::{json, Value};

use crate::dataset::{resolve_curve, Dataset, DatasetEntry, EdgeJson};
use crate::report::{Check, Report};

/// Tolerance handed to the AGM when a period is printed or compared.
pub const PERIOD_AGM_TOL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct Options {
    pub precision_digits: u32,
    pub t_precision: usize,
    pub max_pn: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            precision_digits: iwasawa_core::DEFAULT_DIGITS,
            t_precision: iwasawa_core::DEFAULT_T_PRECISION,
            max_pn: iwasawa_core::DEFAULT_MAX_PN,
        }
    }
}

pub fn int_json(n: &Int) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

pub fn curve_json(e: &Curve) -> Value {
    json!({
        "ainvs": e.ainvs().iter().map(int_json).collect::<Vec<_>>(),
        "disc": int_json(&e.disc),
        "j": e.j.to_string(),
        "c4": int_json(&e.c4),
        "c6": int_json(&e.c6),
    })
}

pub fn kind_short(k: ReductionKind) -> &'static str {
    match k {
        ReductionKind::Good => "good",
        ReductionKind::SplitMultiplicative => "split",
        ReductionKind::NonsplitMultiplicative => "nonsplit",
        ReductionKind::Additive => "additive",
    }
}

fn local_json(ld: &LocalData) -> Value {
    json!({
        "prime": ld.prime,
        "kind": kind_short(ld.kind),
        "kodaira": ld.kodaira.to_string(),
        "tamagawa": ld.tamagawa,
        "conductor_exponent": ld.conductor_exponent,
        "disc_valuation": ld.disc_valuation,
        "j_valuation": ld.j_valuation,
        "a_l": ld.a_l,
    })
}

pub fn euler_json(r: &EulerReport) -> Value {
    json!({
        "prime": r.prime,
        "reduction_at_p": kind_short(r.reduction_at_p),
        "entries": r.entries.iter().map(|e| json!({"label": e.label, "vp": e.vp})).collect::<Vec<_>>(),
        "total": r.total,
        "convention_dependent": r.convention_dependent,
    })
}

fn err_json(component: &str, e: impl std::fmt::Display) -> Value {
    json!({ "error": format!("{component}: {e}") })
}

fn mu_json(v: &MuVerdict) -> Value {
    json!({ "lower_bound": v.lower_bound, "zero_certified": v.zero_certified, "rule": format!("{:?}", v.rule) })
}

/// `v_p` of a user-supplied Selmer order, the dataset's value, or 0.
fn selmer_vp(entry: Option<&DatasetEntry>, p: u64, sel_order: Option<u64>) -> Result<(u32, &'static str)> {
    let (order, source) = match sel_order {
        Some(n) => (n, "--sel-order"),
        None => match entry.and_then(|e| e.expect.euler.iter().find(|x| x.p == p)) {
            Some(x) => (x.sel_order, "dataset"),
            None => (1, "default |Sel| = 1"),
        },
    };
    if order == 0 {
        bail!("--sel-order must be positive");
    }
    Ok((arith::vp_u64(order, p), source))
}

fn require_prime(p: u64) -> Result<()> {
    arith::require_prime(p).map_err(|e| anyhow!("--p {p}: {e}"))
}

fn two_torsion_rat(x: &str, y: &str) -> Result<Point<Rat>> {
    let parse = |s: &str| -> Result<Rat> {
        match s.split_once('/') {
            Some((n, d)) => Ok(rat_frac(n.trim().parse()?, d.trim().parse()?)),
            None => Ok(rat_frac(s.trim().parse()?, 1)),
        }
    };
    Ok(Point::Affine(parse(x)?, parse(y)?))
}

fn mu_bound_at(d: &Dataset, entry: Option<&DatasetEntry>, e: &Curve, p: u64) -> Result<MuVerdict> {
    if p == 2 {
        return Ok(mu_lower_bound_two(e)?.0);
    }
    let label = entry.map(|x| x.label.as_str()).ok_or_else(|| anyhow!("odd-p bounds need a dataset label"))?;
    Ok(mu_lower_bound(label, p, &d.edges_at(p)?)?)
}

/// Every stated value of `entry`, restricted to `p` for the prime-specific ones.
pub fn expectation_checks(d: &Dataset, entry: &DatasetEntry, p: Option<u64>, opts: &Options) -> Vec<Check> {
    let x = &entry.expect;
    let l = &entry.label;
    let mut out = Vec::new();
    let e = match entry.curve() {
        Ok(e) => e,
        Err(err) => return vec![Check::failed(format!("{l} model"), "nonsingular", err)],
    };
    let at = |q: u64| p.map_or(true, |pp| pp == q);
    if let Some(n) = x.conductor {
        out.push(match e.conductor() {
            Ok(c) => Check::eq(format!("{l} conductor"), Int::from(n), c),
            Err(err) => Check::failed(format!("{l} conductor"), n, err),
        });
    }
    if let Some(disc) = &x.disc {
        out.push(Check::eq(format!("{l} disc"), disc.clone(), e.disc.to_string()));
    }
    if let Some(t) = &x.torsion {
        out.push(match torsion(&e) {
            Ok(g) => Check::eq(format!("{l} torsion"), t.clone(), g.structure()),
            Err(err) => Check::failed(format!("{l} torsion"), t, err),
        });
    }
    for (&q, &c) in &x.tamagawa {
        out.push(match tate_local(&e, q) {
            Ok(ld) => Check::eq(format!("{l} c_{q}"), c, ld.tamagawa),
            Err(err) => Check::failed(format!("{l} c_{q}"), c, err),
        });
    }
    for (&q, k) in &x.kinds {
        out.push(match tate_local(&e, q) {
            Ok(ld) => Check::eq(format!("{l} reduction at {q}"), k.as_str(), kind_short(ld.kind)),
            Err(err) => Check::failed(format!("{l} reduction at {q}"), k, err),
        });
    }
    for (&q, &v) in &x.ord_j {
        let got = arith::vp_rat(&e.j, q).map_or_else(|| "j = 0".to_string(), |g| g.to_string());
        out.push(Check::eq(format!("{l} ord_{q}(j)"), v.to_string(), got));
    }
    for (&q, &v) in &x.tate_q {
        out.push(match tate_period(&e, q, opts.precision_digits) {
            Ok(t) => Check::eq(format!("{l} v_{q}(q)"), v, t.valuation),
            Err(err) => Check::failed(format!("{l} v_{q}(q)"), v, err),
        });
    }
    for (&q, &a) in &x.ap {
        out.push(match classify_at_p(&e, q) {
            Ok(r) => Check::eq(format!("{l} a_{q}"), a, r.a_p),
            Err(err) => Check::failed(format!("{l} a_{q}"), a, err),
        });
    }
    for (&q, &n) in &x.points {
        out.push(match classify_at_p(&e, q) {
            Ok(r) => Check::eq(format!("{l} #E(F_{q})"), n, r.points()),
            Err(err) => Check::failed(format!("{l} #E(F_{q})"), n, err),
        });
    }
    for &q in &x.supersingular {
        out.push(match classify_at_p(&e, q) {
            Ok(r) => Check::eq(format!("{l} supersingular at {q}"), true, r.supersingular),
            Err(err) => Check::failed(format!("{l} supersingular at {q}"), true, err),
        });
    }
    if let Some(per) = &x.period {
        out.push(match real_period(&e, PERIOD_AGM_TOL) {
            Ok(w) => Check::within(format!("{l} real period"), per.value, per.tol, w),
            Err(err) => Check::failed(format!("{l} real period"), per.value, err),
        });
    }
    for t in &x.two_torsion {
        let name = format!("{l} 2-torsion ({}, {}) ramified/odd", t.x, t.y);
        let want = format!("{}/{}", t.ramified, t.odd);
        out.push(match two_torsion_rat(&t.x, &t.y).and_then(|pt| Ok(classify_two_torsion(&e, &pt)?)) {
            Ok(c) => Check::eq(name, want, format!("{}/{}", c.ramified, c.odd)),
            Err(err) => Check::failed(name, want, err),
        });
    }
    for eu in x.euler.iter().filter(|eu| at(eu.p)) {
        let name = format!("{l} v_{}(f(0))", eu.p);
        let a = GlobalAssumptions::finite(arith::vp_u64(eu.sel_order, eu.p));
        out.push(match euler_char_with_digits(&e, eu.p, &a, opts.precision_digits) {
            Ok(r) => Check::eq(name, eu.total, r.total),
            Err(err) => Check::failed(name, eu.total, err),
        });
    }
    for v in x.vanishing.iter().filter(|v| at(v.p)) {
        let name = format!("{l} vanishing criterion at {}", v.p);
        out.push(match criterion_vanishing(&e, v.p, &GlobalAssumptions::default()) {
            Ok(r) => Check::eq(name, v.holds, r.holds),
            Err(err) => Check::failed(name, v.holds, err),
        });
    }
    for v in x.infinite.iter().filter(|v| at(v.p)) {
        let name = format!("{l} infinitude criterion at {}", v.p);
        out.push(match criterion_infinite(&e, v.p, &GlobalAssumptions::default()) {
            Ok(r) => Check::eq(name, v.holds, r.holds),
            Err(err) => Check::failed(name, v.holds, err),
        });
    }
    for m in x.mu_at_least.iter().filter(|m| at(m.p)) {
        let name = format!("{l} mu lower bound at {}", m.p);
        out.push(match mu_bound_at(d, Some(entry), &e, m.p) {
            Ok(v) => Check { name, expected: format!(">= {}", m.bound), computed: v.lower_bound.to_string(), pass: v.lower_bound >= m.bound },
            Err(err) => Check::failed(name, format!(">= {}", m.bound), err),
        });
    }
    out
}

fn at_p_json(e: &Curve, p: u64) -> Value {
    if arith::vp(&e.disc, p).unwrap_or(0) > 0 {
        return match tate_local(e, p) {
            Ok(ld) => json!({ "reduction": kind_short(ld.kind), "local": local_json(&ld) }),
            Err(err) => err_json("tate_local", err),
        };
    }
    match classify_at_p(e, p) {
        Ok(r) => json!({
            "reduction": "good",
            "a_p": r.a_p,
            "points": r.points(),
            "supersingular": r.supersingular,
            "anomalous": r.anomalous,
        }),
        Err(err) => err_json("classify_at_p", err),
    }
}

fn criteria_json(e: &Curve, p: u64, a: &GlobalAssumptions) -> Value {
    let vanishing = match criterion_vanishing(e, p, a) {
        Ok(v) => json!({
            "holds": v.holds,
            "selmer_vanishes": v.selmer_vanishes,
            "conditions": v.conditions.iter().map(|c| json!({"label": c.label, "holds": c.holds})).collect::<Vec<_>>(),
        }),
        Err(err) => err_json("criterion_vanishing", err),
    };
    let infinite = match criterion_infinite(e, p, a) {
        Ok(v) => json!({ "holds": v.holds, "clauses": v.clauses.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>() }),
        Err(err) => err_json("criterion_infinite", err),
    };
    let density = match density_screen(e, p, None) {
        Ok(v) => json!({ "excluded": v.excluded, "reason": v.reason, "anomalous": v.anomalous }),
        Err(err) => err_json("density_screen", err),
    };
    let corank = match corank_parity(e, p, 0, 0) {
        Ok(r) => json!({ "corank_lower_bound": r.corank_lower_bound, "restriction_injective": r.injective }),
        Err(err) => err_json("corank_parity", err),
    };
    let kernels = match local_kernels(e, p) {
        Ok(k) => json!(k.iter().map(|k| json!({"place": k.place, "vp": k.vp})).collect::<Vec<_>>()),
        Err(err) => err_json("local_kernels", err),
    };
    json!({ "vanishing": vanishing, "infinite": infinite, "density_screen": density, "corank": corank, "local_kernels": kernels })
}

fn mu_section(d: &Dataset, entry: Option<&DatasetEntry>, e: &Curve, p: u64) -> Value {
    let mut out = serde_json::Map::new();
    if p == 2 {
        let mut points = Vec::new();
        for pt in iwasawa_core::ec::two_torsion_points(e) {
            let Point::Affine(x, y) = &pt else { continue };
            let v = match two_torsion_kernel(e, &pt) {
                Ok(k) => {
                    let cert = mu_zero_certificate(2, &k).map(|v| mu_json(&v)).unwrap_or_else(|err| err_json("mu_zero_certificate", err));
                    json!({"x": x.to_string(), "y": y.to_string(), "ramified": k.ramified, "odd": k.odd, "certificate": cert})
                }
                Err(err) => json!({"x": x.to_string(), "y": y.to_string(), "error": err.to_string()}),
            };
            points.push(v);
        }
        out.insert("two_torsion".into(), json!(points));
        match mu_lower_bound_two(e) {
            Ok((v, class)) => {
                out.insert("class_size".into(), json!(class.curves.len()));
                out.insert("bound".into(), mu_json(&v));
            }
            Err(err) => {
                out.insert("bound".into(), err_json("two_isogeny_class", err));
            }
        }
    } else {
        match mu_bound_at(d, entry, e, p) {
            Ok(v) => out.insert("bound".into(), mu_json(&v)),
            Err(err) => out.insert("bound".into(), err_json("mu_lower_bound", err)),
        };
    }
    Value::Object(out)
}

pub fn analyze(d: &Dataset, curve: &str, p: u64, sel_order: Option<u64>, opts: &Options) -> Result<Report> {
    require_prime(p)?;
    let (entry, e) = resolve_curve(d, curve)?;
    let (sel_vp, sel_source) = selmer_vp(entry.as_ref(), p, sel_order)?;
    let a = GlobalAssumptions::finite(sel_vp);
    let bad = e.bad_primes()?;
    let local: Vec<Value> = bad
        .iter()
        .map(|&l| tate_local(&e, l).map(|ld| local_json(&ld)).unwrap_or_else(|err| err_json(&format!("tate_local at {l}"), err)))
        .collect();
    let tors = match torsion(&e) {
        Ok(t) => json!({"structure": t.structure(), "order": t.order()}),
        Err(err) => err_json("torsion", err),
    };
    let euler = match euler_char_with_digits(&e, p, &a, opts.precision_digits) {
        Ok(r) => euler_json(&r),
        Err(err) => err_json("euler_char", err),
    };
    let body = json!({
        "label": entry.as_ref().map(|x| x.label.clone()),
        "curve": curve_json(&e),
        "conductor": e.conductor().map(|n| int_json(&n)).unwrap_or_else(|err| err_json("conductor", err)),
        "bad_primes": local,
        "p": p,
        "at_p": at_p_json(&e, p),
        "torsion": tors,
        "assumptions": {"sel_vp": sel_vp, "source": sel_source},
        "euler_characteristic": euler,
        "criteria": criteria_json(&e, p, &a),
        "mu": mu_section(d, entry.as_ref(), &e, p),
        "claims": entry.as_ref().map(|x| x.claims.iter().filter(|c| c.p == p || c.p == 0).map(|c| json!({"what": c.what, "value": c.value})).collect::<Vec<_>>()),
        "notes": entry.as_ref().map(|x| x.notes.clone()),
    });
    let mut r = Report::new("analyze", body);
    if let Some(entry) = &entry {
        r.checks = expectation_checks(d, entry, Some(p), opts);
    }
    Ok(r)
}

pub fn euler_char_report(d: &Dataset, curve: &str, p: u64, sel_order: Option<u64>, opts: &Options) -> Result<Report> {
    require_prime(p)?;
    let (entry, e) = resolve_curve(d, curve)?;
    let (sel_vp, sel_source) = selmer_vp(entry.as_ref(), p, sel_order)?;
    let r = euler_char_with_digits(&e, p, &GlobalAssumptions::finite(sel_vp), opts.precision_digits)
        .with_context(|| format!("euler_char at p = {p}"))?;
    let mut body = euler_json(&r);
    body["assumptions"] = json!({"sel_vp": sel_vp, "source": sel_source});
    let mut rep = Report::new("euler-char", body);
    if let Some(want) = entry.as_ref().and_then(|x| x.expect.euler.iter().find(|eu| eu.p == p && arith::vp_u64(eu.sel_order, p) == sel_vp)) {
        rep.checks.push(Check::eq(format!("v_{p}(f(0))"), want.total, r.total));
    }
    Ok(rep)
}

pub fn criteria(d: &Dataset, curve: &str, p: u64, sel_order: Option<u64>) -> Result<Report> {
    require_prime(p)?;
    let (entry, e) = resolve_curve(d, curve)?;
    let (sel_vp, _) = selmer_vp(entry.as_ref(), p, sel_order)?;
    let mut rep = Report::new("criteria", criteria_json(&e, p, &GlobalAssumptions::finite(sel_vp)));
    if let Some(entry) = &entry {
        let a = GlobalAssumptions::default();
        for v in entry.expect.vanishing.iter().filter(|v| v.p == p) {
            let got = criterion_vanishing(&e, p, &a)?.holds;
            rep.checks.push(Check::eq(format!("vanishing criterion at {p}"), v.holds, got));
        }
        for v in entry.expect.infinite.iter().filter(|v| v.p == p) {
            let got = criterion_infinite(&e, p, &a)?.holds;
            rep.checks.push(Check::eq(format!("infinitude criterion at {p}"), v.holds, got));
        }
    }
    Ok(rep)
}

pub fn mu_bound(d: &Dataset, curve: &str, p: u64, edges: Option<Vec<IsogenyEdge>>) -> Result<Report> {
    require_prime(p)?;
    let (entry, e) = resolve_curve(d, curve)?;
    let body = match edges {
        Some(edges) => {
            let label = entry.as_ref().map(|x| x.label.clone()).unwrap_or_else(|| e.to_string());
            let v = mu_lower_bound(&label, p, &edges)?;
            json!({ "bound": mu_json(&v), "edges": edges.iter().map(EdgeJson::from_edge).collect::<Vec<_>>() })
        }
        None => mu_section(d, entry.as_ref(), &e, p),
    };
    let mut rep = Report::new("mu-bound", body);
    if let Some(entry) = &entry {
        for m in entry.expect.mu_at_least.iter().filter(|m| m.p == p) {
            let got = rep.body["bound"]["lower_bound"].as_u64();
            rep.checks.push(Check {
                name: format!("mu lower bound at {p}"),
                expected: format!(">= {}", m.bound),
                computed: got.map_or("none".into(), |g| g.to_string()),
                pass: got.is_some_and(|g| g >= u64::from(m.bound)),
            });
        }
        for t in &entry.expect.two_torsion {
            if p != 2 {
                break;
            }
            let pt = two_torsion_rat(&t.x, &t.y)?;
            let c = classify_two_torsion(&e, &pt)?;
            rep.checks.push(Check::eq(
                format!("({}, {}) ramified/odd", t.x, t.y),
                format!("{}/{}", t.ramified, t.odd),
                format!("{}/{}", c.ramified, c.odd),
            ));
        }
    }
    Ok(rep)
}

/// Parses a series, filling in `N` and `K` from the options when absent.
pub fn parse_series(text: &str, opts: &Options) -> Result<LambdaElement> {
    let mut s = text.trim().to_string();
    if !s.split_whitespace().any(|t| t.starts_with("K=")) {
        s = format!("K={} {s}", opts.t_precision);
    }
    if !s.split_whitespace().any(|t| t.starts_with("N=")) {
        s = format!("N={} {s}", opts.precision_digits);
    }
    s.parse::<LambdaElement>().map_err(|e| anyhow!("series {text:?}: {e}"))
}

pub fn growth(text: &str, n_max: u32, opts: &Options) -> Result<Report> {
    let f = parse_series(text, opts)?;
    let g = growth_fit_bounded(&f, n_max, opts.max_pn)?;
    let (mu_f, lambda_f) = f.mu_lambda()?;
    let body = json!({
        "series": f.to_string(),
        "mu_f": mu_f,
        "lambda_f": lambda_f,
        "lambda": g.lambda,
        "mu": g.mu,
        "nu": g.nu,
        "n0": g.n0,
        "free_rank": g.lambda0,
        "samples": g.samples.iter().map(|s| json!({
            "n": s.n, "free_rank": s.free_rank, "e_n": s.e_n, "resultant_agrees": s.resultant_agrees,
        })).collect::<Vec<_>>(),
    });
    let mut rep = Report::new("growth", body);
    rep.checks.push(Check::eq("fit agrees with lambda(f), mu(f)", true, g.consistent));
    for s in &g.samples {
        if let Some(agrees) = s.resultant_agrees {
            rep.checks.push(Check::eq(format!("e_{} by Smith form and resultant", s.n), true, agrees));
        }
        if s.n >= g.n0 {
            let law = g.lambda * s.n as i64 + g.mu * (f.prime() as i64).pow(s.n) + g.nu;
            rep.checks.push(Check::eq(format!("e_{} on the growth law", s.n), law, s.e_n as i64));
        }
    }
    Ok(rep)
}

pub fn fe(text: &str, opts: &Options) -> Result<Report> {
    let f = parse_series(text, opts)?;
    let fi = f.involution();
    let assoc = associates_check(&f, &fi)?;
    let sol = fe_solve(&f)?;
    let assoc_json = match assoc {
        Associates::Yes { precision } => json!({"associates": true, "precision": precision}),
        Associates::No => json!({"associates": false}),
        Associates::Indeterminate => json!({"associates": null, "indeterminate": true}),
    };
    let sol_json = match &sol {
        FeSolution::Solved { w, c } => json!({"w": w, "c": c.to_string(), "c_int": c.to_balanced_int().map(|x| int_json(&x))}),
        FeSolution::NoSolution => json!("no solution"),
        FeSolution::Indeterminate => json!("indeterminate at this precision"),
    };
    Ok(Report::new("fe", json!({ "series": f.to_string(), "involution": fi.to_string(), "iota_associate": assoc_json, "functional_equation": sol_json })))
}

/// `{"P":[[p,a_p]],"L":[[l,sign,c]],"Q":[q]}`.
pub fn parse_forge_spec(text: &str) -> Result<ForgeSpec> {
    #[derive(serde::Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        #[serde(rename = "P", default)]
        p: Vec<(u64, i64)>,
        #[serde(rename = "L", default)]
        l: Vec<(u64, i8, u64)>,
        #[serde(rename = "Q", default)]
        q: Vec<u64>,
    }
    let raw: Raw = serde_json::from_str(text).context("parsing forge spec")?;
    let spec = ForgeSpec {
        good: raw.p.into_iter().map(|(prime, trace)| LocalTrace { prime, trace }).collect(),
        multiplicative: raw.l.into_iter().map(|(prime, sign, tamagawa)| LocalMultiplicative { prime, sign, tamagawa }).collect(),
        irreducible: raw.q,
    };
    spec.validate()?;
    Ok(spec)
}

pub fn forge(spec_text: &str, seed: u64) -> Result<Report> {
    let spec = parse_forge_spec(spec_text)?;
    let out = crt_assemble(&spec, seed)?;
    let body = json!({
        "seed": seed,
        "curve": curve_json(&out.curve),
        "congruence_exponents": out.exponents.iter().map(|(m, t)| json!([m, t])).collect::<Vec<_>>(),
        "witnesses": out.ledger.witnesses.iter().map(|w| json!({"q": w.q, "r": w.r, "a_r": w.a_r, "local": w.local})).collect::<Vec<_>>(),
    });
    let mut rep = Report::new("forge", body);
    for c in &out.ledger.checks {
        rep.checks.push(Check { name: c.label.clone(), expected: "pass".into(), computed: if c.pass { "pass" } else { "fail" }.into(), pass: c.pass });
    }
    Ok(rep)
}

pub fn verify_points() -> Report {
    let scenarios = verify_scenarios();
    let body = json!(scenarios
        .iter()
        .map(|s| json!({"name": s.name, "field": s.field, "pass": s.pass()}))
        .collect::<Vec<_>>());
    let mut rep = Report::new("verify-points", json!({ "scenarios": body }));
    for s in &scenarios {
        for c in &s.checks {
            rep.checks.push(Check::eq(format!("{}: {}", s.name, c.label), true, c.pass));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data() -> Dataset {
        Dataset::load().unwrap()
    }

    #[test]
    fn analyze_eleven_a() {
        let r = analyze(&data(), "11a", 5, None, &Options::default()).unwrap();
        assert_eq!(r.body["euler_characteristic"]["total"], 1);
        assert!(r.all_pass(), "{:#?}", r.checks);
    }

    #[test]
    fn supersingular_refusal_is_reported() {
        let r = analyze(&data(), "32a", 3, None, &Options::default()).unwrap();
        assert!(r.body["euler_characteristic"]["error"].as_str().unwrap().contains("supersingular"));
        assert_eq!(r.body["criteria"]["corank"]["corank_lower_bound"], 1);
        assert!(r.all_pass());
    }

    #[test]
    fn series_defaults() {
        let f = parse_series("p=3 coeffs=[-3,1]", &Options::default()).unwrap();
        assert_eq!(f.to_string(), "p=3 N=30 K=40 coeffs=[-3,1]");
        let f = parse_series("p=3 N=10 coeffs=[3]", &Options::default()).unwrap();
        assert_eq!(f.coeff_precision(), 10);
    }

    #[test]
    fn forge_spec_json() {
        let s = parse_forge_spec(r#"{"P":[[5,2]],"L":[[3,1,2]],"Q":[7]}"#).unwrap();
        assert_eq!(s.good[0], LocalTrace { prime: 5, trace: 2 });
        assert_eq!(s.multiplicative[0].tamagawa, 2);
        assert!(parse_forge_spec(r#"{"P":[[5,2]],"L":[[5,1,2]]}"#).is_err());
        assert!(parse_forge_spec(r#"{"X":[]}"#).is_err());
    }
}
