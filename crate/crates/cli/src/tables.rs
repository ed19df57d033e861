//! Stated-versus-computed tables over the whole dataset.

use anyhow::Result;
use iwasawa_core::arith;
use iwasawa_core::ec::{ap_count, real_period, tate_local, torsion, Curve};
use iwasawa_core::mu::{mu_lower_bound, two_isogeny_class};
use iwasawa_core::selmer::{euler_char_with_digits, isogeny_parity_check, GlobalAssumptions};
use serde::Serialize;
use serde_json::json;

use crate::commands::{expectation_checks, int_json, Options, PERIOD_AGM_TOL};
use crate::dataset::{ClassColumn, ClassTable, Dataset};
use crate::report::{aligned, Check, Report};

/// One column of a class table next to the class member it was matched with.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub table: String,
    pub label: String,
    pub ainvs: Option<Vec<serde_json::Value>>,
    pub expected: ClassColumn,
    pub computed: Option<ClassColumn>,
    pub matched: bool,
}

struct Member {
    curve: Curve,
    label: String,
    torsion: u64,
    tamagawa: Vec<u64>,
}

/// Matches each stated column to an unused class member with the same torsion
/// order and Tamagawa numbers, then compares `f(0)` and the chained mu bound.
pub fn class_table(t: &ClassTable, d: &Dataset, opts: &Options) -> Result<(Vec<TableRow>, Vec<Check>)> {
    let seed = d.curve(&t.seed)?;
    let class = two_isogeny_class(&seed)?;
    let mut members = Vec::new();
    for (curve, label) in class.curves.iter().zip(&class.labels) {
        let tamagawa = t.primes.iter().map(|&l| tate_local(curve, l).map(|ld| ld.tamagawa)).collect::<Result<Vec<_>, _>>()?;
        members.push(Member { curve: curve.clone(), label: label.clone(), torsion: torsion(curve)?.order(), tamagawa });
    }
    let mut checks = vec![Check::eq(format!("{}: class size", t.name), t.columns.len(), members.len())];
    let mut used = vec![false; members.len()];
    let mut rows = Vec::new();
    for col in &t.columns {
        let hit = (0..members.len()).find(|&i| !used[i] && members[i].torsion == col.torsion && members[i].tamagawa == col.tamagawa);
        let Some(i) = hit else {
            checks.push(Check { name: format!("{} {}", t.name, col.label), expected: "a class member".into(), computed: "none".into(), pass: false });
            rows.push(TableRow { table: t.name.clone(), label: col.label.clone(), ainvs: None, expected: col.clone(), computed: None, matched: false });
            continue;
        };
        used[i] = true;
        let m = &members[i];
        // Sha is stated, so |Sel(Q)_p| = |Sha[p^inf]| here (finite Mordell-Weil)
        let sel_vp = arith::vp_u64(col.sha, t.p);
        let total = euler_char_with_digits(&m.curve, t.p, &GlobalAssumptions::finite(sel_vp), opts.precision_digits)?.total;
        let f0 = t.p.pow(u32::try_from(total).map_err(|_| anyhow::anyhow!("negative Euler characteristic {total}"))?);
        let mu = mu_lower_bound(&m.label, t.p, &class.edges)?.lower_bound;
        let computed = ClassColumn { label: col.label.clone(), sha: col.sha, torsion: m.torsion, tamagawa: m.tamagawa.clone(), f0, mu };
        let matched = computed.f0 == col.f0 && computed.mu == col.mu;
        checks.push(Check::eq(format!("{} {} f(0)", t.name, col.label), col.f0, f0));
        checks.push(Check::eq(format!("{} {} mu", t.name, col.label), col.mu, mu));
        rows.push(TableRow {
            table: t.name.clone(),
            label: col.label.clone(),
            ainvs: Some(m.curve.ainvs().iter().map(int_json).collect()),
            expected: col.clone(),
            computed: Some(computed),
            matched,
        });
    }
    Ok((rows, checks))
}

fn cross_checks(d: &Dataset) -> Vec<Check> {
    let mut out = Vec::new();
    for r in &d.period_ratios {
        let name = format!("period ratio {}/{}", r.numerator, r.denominator);
        let got = d
            .curve(&r.numerator)
            .and_then(|a| Ok(real_period(&a, PERIOD_AGM_TOL)?))
            .and_then(|a| Ok(a / real_period(&d.curve(&r.denominator)?, PERIOD_AGM_TOL)?));
        out.push(match got {
            Ok(v) => Check::within(name, r.ratio, r.tol, v),
            Err(err) => Check::failed(name, r.ratio, err),
        });
    }
    for c in &d.isogeny_parity {
        let name = format!("{} -> {} at {}: finite Selmer groups contradict the shift {}", c.source, c.target, c.p, c.shift);
        let got = d.curve(&c.source).and_then(|a| Ok(isogeny_parity_check(&a, &d.curve(&c.target)?, c.p, c.shift)?));
        out.push(match got {
            Ok(r) => Check::eq(name, c.expect_inconsistent, r.inconsistent),
            Err(err) => Check::failed(name, c.expect_inconsistent, err),
        });
    }
    for c in &d.congruences {
        let name = format!("a_l({}) = a_l({}) mod {} for good l <= {}", c.a, c.b, c.p, c.bound);
        let got = (|| -> Result<Option<u64>> {
            let (a, b) = (d.curve(&c.a)?, d.curve(&c.b)?);
            for l in arith::primes_up_to(c.bound) {
                if l == c.p || arith::vp(&a.disc, l).unwrap_or(0) > 0 || arith::vp(&b.disc, l).unwrap_or(0) > 0 {
                    continue;
                }
                if (ap_count(&a, l)? - ap_count(&b, l)?).rem_euclid(c.p as i64) != 0 {
                    return Ok(Some(l));
                }
            }
            Ok(None)
        })();
        out.push(match got {
            Ok(first_bad) => Check::eq(name, "none".to_string(), first_bad.map_or("none".into(), |l| format!("fails at {l}"))),
            Err(err) => Check::failed(name, "none", err),
        });
    }
    out
}

pub fn tables(d: &Dataset, opts: &Options) -> Result<Report> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for t in &d.class_tables {
        let (r, c) = class_table(t, d, opts)?;
        rows.extend(r);
        checks.extend(c);
    }
    let mut facts = Vec::new();
    for entry in d.entries() {
        let c = expectation_checks(d, entry, None, opts);
        facts.push(json!({ "label": entry.label, "checks": c }));
        checks.extend(c);
    }
    checks.extend(cross_checks(d));
    let claims: Vec<_> = d
        .entries()
        .flat_map(|e| e.claims.iter().map(move |c| json!({"label": e.label, "p": c.p, "what": c.what, "value": c.value})))
        .collect();
    let mut text = String::new();
    for t in &d.class_tables {
        text.push_str(&format!("== {} (p = {}) ==\n", t.name, t.p));
        let primes: Vec<String> = t.primes.iter().map(|l| format!("c_{l}")).collect();
        let tam_head = primes.join(",");
        let cell = |c: &ClassColumn, v: &dyn Fn(&ClassColumn) -> String| v(c);
        let body: Vec<[String; 8]> = rows
            .iter()
            .filter(|r| r.table == t.name)
            .map(|r| {
                let show = |f: &dyn Fn(&ClassColumn) -> String| {
                    let want = cell(&r.expected, f);
                    match &r.computed {
                        Some(c) if cell(c, f) == want => want,
                        Some(c) => format!("{} (stated {want})", cell(c, f)),
                        None => format!("? (stated {want})"),
                    }
                };
                [
                    r.label.clone(),
                    r.ainvs.as_ref().map_or("-".into(), |a| serde_json::to_string(a).unwrap()),
                    show(&|c| c.sha.to_string()),
                    show(&|c| c.torsion.to_string()),
                    show(&|c| c.tamagawa.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
                    show(&|c| c.f0.to_string()),
                    show(&|c| c.mu.to_string()),
                    if r.matched { "ok" } else { "MISMATCH" }.into(),
                ]
            })
            .collect();
        text.push_str(&aligned(&["curve", "model", "|Sha|", "|T|", tam_head.as_str(), "f(0)", "mu", "status"], &body));
        text.push('\n');
    }
    text.push_str("== stated values ==\n");
    let flat: Vec<[String; 4]> = checks
        .iter()
        .map(|c| [if c.pass { "ok" } else { "MISMATCH" }.into(), c.name.clone(), c.expected.clone(), c.computed.clone()])
        .collect();
    text.push_str(&aligned(&["status", "check", "expected", "computed"], &flat));
    if !claims.is_empty() {
        text.push_str("\n== carried as data, not computed ==\n");
        let c: Vec<[String; 3]> = claims
            .iter()
            .map(|c| [c["label"].as_str().unwrap().to_string(), c["what"].as_str().unwrap().to_string(), c["value"].as_str().unwrap().to_string()])
            .collect();
        text.push_str(&aligned(&["curve", "what", "value"], &c));
    }
    let mut rep = Report::new("tables", json!({ "class_rows": rows, "facts": facts, "claims": claims }));
    rep.checks = checks;
    rep.text = Some(text);
    Ok(rep)
}
