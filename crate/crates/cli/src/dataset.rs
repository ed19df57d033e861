//! The embedded curve dataset and its integrity check.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use iwasawa_core::ec::Curve;
use iwasawa_core::mu::{IsogenyEdge, KernelClass, Provenance};
use iwasawa_core::Int;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const RAW: &str = include_str!("../data/curves.json");
const CHECKSUM: &str = include_str!("../data/curves.json.sha256");

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerExpect {
    pub p: u64,
    pub sel_order: u64,
    pub total: i64,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictExpect {
    pub p: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodExpect {
    pub value: f64,
    pub tol: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuExpect {
    pub p: u64,
    pub bound: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoTorsionExpect {
    pub x: String,
    pub y: String,
    pub ramified: bool,
    pub odd: bool,
}

/// Stated values, each checked against a computation. Keys of the maps are primes.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    pub conductor: Option<u64>,
    pub disc: Option<String>,
    pub torsion: Option<String>,
    #[serde(default)]
    pub tamagawa: BTreeMap<u64, u64>,
    #[serde(default)]
    pub kinds: BTreeMap<u64, String>,
    #[serde(default)]
    pub ord_j: BTreeMap<u64, i64>,
    #[serde(default)]
    pub tate_q: BTreeMap<u64, i64>,
    #[serde(default)]
    pub ap: BTreeMap<u64, i64>,
    #[serde(default)]
    pub points: BTreeMap<u64, u64>,
    #[serde(default)]
    pub supersingular: Vec<u64>,
    #[serde(default)]
    pub euler: Vec<EulerExpect>,
    #[serde(default)]
    pub vanishing: Vec<VerdictExpect>,
    #[serde(default)]
    pub infinite: Vec<VerdictExpect>,
    pub period: Option<PeriodExpect>,
    #[serde(default)]
    pub mu_at_least: Vec<MuExpect>,
    #[serde(default)]
    pub two_torsion: Vec<TwoTorsionExpect>,
}

/// A value carried as data only, such as an analytic lambda from outside computations.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    /// 0 when the claim does not concern a particular prime.
    pub p: u64,
    pub what: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetEntry {
    pub label: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub ainvs: [i64; 5],
    #[serde(default)]
    pub expect: Expectations,
    #[serde(default)]
    pub claims: Vec<Claim>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl DatasetEntry {
    pub fn curve(&self) -> Result<Curve> {
        Curve::from_i64(self.ainvs).with_context(|| format!("dataset entry {}", self.label))
    }

    fn answers_to(&self, name: &str) -> bool {
        self.label.eq_ignore_ascii_case(name) || self.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelJson {
    pub order: u64,
    pub ramified: bool,
    pub odd: bool,
    pub provenance: String,
}

/// `{"from","to","degree","kernel":{"order","ramified","odd","provenance"}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub from: String,
    pub to: String,
    pub degree: u64,
    pub kernel: KernelJson,
}

impl EdgeJson {
    pub fn to_edge(&self) -> Result<IsogenyEdge> {
        let fac = iwasawa_core::arith::factor_u64(self.kernel.order);
        let [(prime, exponent)] = fac[..] else {
            bail!("kernel order {} on {} -> {} is not a prime power", self.kernel.order, self.from, self.to);
        };
        let provenance = match self.kernel.provenance.as_str() {
            "input" => Provenance::Input,
            "computed" => Provenance::Computed,
            other => bail!("unknown provenance {other:?}"),
        };
        Ok(IsogenyEdge {
            from: self.from.clone(),
            to: self.to.clone(),
            degree: self.degree,
            kernel: KernelClass { prime, exponent, ramified: self.kernel.ramified, odd: self.kernel.odd, provenance },
        })
    }

    pub fn from_edge(e: &IsogenyEdge) -> Self {
        EdgeJson {
            from: e.from.clone(),
            to: e.to.clone(),
            degree: e.degree,
            kernel: KernelJson {
                order: e.kernel.order(),
                ramified: e.kernel.ramified,
                odd: e.kernel.odd,
                provenance: match e.kernel.provenance {
                    Provenance::Input => "input".into(),
                    Provenance::Computed => "computed".into(),
                },
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodRatio {
    pub numerator: String,
    pub denominator: String,
    pub ratio: f64,
    pub tol: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParityCase {
    pub source: String,
    pub target: String,
    pub p: u64,
    pub shift: i64,
    pub expect_inconsistent: bool,
}

/// `a_l(a) = a_l(b) mod p` at the common good primes up to `bound`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Congruence {
    pub a: String,
    pub b: String,
    pub p: u64,
    pub bound: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassColumn {
    pub label: String,
    pub sha: u64,
    pub torsion: u64,
    pub tamagawa: Vec<u64>,
    pub f0: u64,
    pub mu: u32,
}

/// Stated basic data for a 2-power isogeny class, one column per curve.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassTable {
    pub name: String,
    pub seed: String,
    pub p: u64,
    pub primes: Vec<u64>,
    pub columns: Vec<ClassColumn>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dataset {
    pub curves: Vec<DatasetEntry>,
    #[serde(default)]
    pub extras: Vec<DatasetEntry>,
    #[serde(default)]
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub period_ratios: Vec<PeriodRatio>,
    #[serde(default)]
    pub isogeny_parity: Vec<ParityCase>,
    #[serde(default)]
    pub congruences: Vec<Congruence>,
    #[serde(default)]
    pub class_tables: Vec<ClassTable>,
}

pub fn checksum(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Dataset {
    /// The embedded dataset, after the checksum and a nonsingularity check of every entry.
    pub fn load() -> Result<Self> {
        let got = checksum(RAW.as_bytes());
        if got != CHECKSUM.trim() {
            bail!("dataset integrity failure: sha256 {got} does not match {}", CHECKSUM.trim());
        }
        let d: Dataset = serde_json::from_str(RAW).context("parsing embedded dataset")?;
        d.validate()?;
        Ok(d)
    }

    /// Adds user-supplied entries (`--extra`): either a list of entries or `{"curves": [...]}`.
    pub fn extend_from_json(&mut self, text: &str) -> Result<usize> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Extra {
            List(Vec<DatasetEntry>),
            Wrapped { curves: Vec<DatasetEntry> },
        }
        let added = match serde_json::from_str::<Extra>(text).context("parsing --extra file")? {
            Extra::List(v) | Extra::Wrapped { curves: v } => v,
        };
        let n = added.len();
        for e in added {
            if self.entry(&e.label).is_some() {
                bail!("--extra entry {} clashes with an existing label", e.label);
            }
            e.curve()?;
            self.extras.push(e);
        }
        Ok(n)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for e in self.entries() {
            e.curve()?;
            for name in std::iter::once(&e.label).chain(&e.aliases) {
                if !seen.insert(name.to_ascii_lowercase()) {
                    bail!("duplicate dataset label {name}");
                }
            }
        }
        for edge in &self.edges {
            edge.to_edge()?;
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = &DatasetEntry> {
        self.curves.iter().chain(&self.extras)
    }

    pub fn entry(&self, name: &str) -> Option<&DatasetEntry> {
        self.entries().find(|e| e.answers_to(name))
    }

    pub fn curve(&self, name: &str) -> Result<Curve> {
        self.entry(name).ok_or_else(|| anyhow!("no dataset curve named {name}"))?.curve()
    }

    /// Declared edges at `p`.
    pub fn edges_at(&self, p: u64) -> Result<Vec<IsogenyEdge>> {
        let mut out = Vec::new();
        for e in &self.edges {
            let edge = e.to_edge()?;
            if edge.kernel.prime == p {
                out.push(edge);
            }
        }
        Ok(out)
    }
}

/// A curve given as a dataset label or as `[a1,a2,a3,a4,a6]`.
pub fn resolve_curve(d: &Dataset, spec: &str) -> Result<(Option<DatasetEntry>, Curve)> {
    let s = spec.trim();
    if s.starts_with('[') {
        let inner = s.trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<Int> = inner
            .split(',')
            .map(|t| t.trim().parse::<Int>().map_err(|_| anyhow!("bad a-invariant {t:?}")))
            .collect::<Result<_>>()?;
        let a: [Int; 5] = parts.try_into().map_err(|_| anyhow!("need exactly five a-invariants"))?;
        let curve = Curve::new(a)?;
        // a dataset entry with the same model picks up its annotations
        let entry = d.entries().find(|e| e.curve().is_ok_and(|c| c == curve)).cloned();
        return Ok((entry, curve));
    }
    let entry = d.entry(s).ok_or_else(|| anyhow!("no dataset curve named {s}; pass a label or [a1,a2,a3,a4,a6]"))?;
    Ok((Some(entry.clone()), entry.curve()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_dataset_loads() {
        let d = Dataset::load().unwrap();
        assert_eq!(d.curves.len(), 13);
        assert!(d.entry("X0(11)").is_some());
        assert!(d.entry("15A3").is_some());
        assert_eq!(d.edges_at(5).unwrap().len(), 1);
        assert!(d.edges_at(2).unwrap().is_empty());
    }

    #[test]
    fn tampered_bytes_change_the_checksum() {
        let mut bytes = RAW.as_bytes().to_vec();
        bytes[10] ^= 1;
        assert_ne!(checksum(&bytes), CHECKSUM.trim());
    }

    #[test]
    fn curves_by_label_or_invariants() {
        let d = Dataset::load().unwrap();
        let (e, c) = resolve_curve(&d, "[0,-1,1,-10,-20]").unwrap();
        assert_eq!(e.unwrap().label, "11a");
        assert_eq!(c.disc, Int::from(-161051));
        assert!(resolve_curve(&d, "[0,0,0,0,0]").is_err());
        assert!(resolve_curve(&d, "nope").is_err());
    }

    #[test]
    fn extra_entries() {
        let mut d = Dataset::load().unwrap();
        let n = d.extend_from_json(r#"[{"label": "17a1", "ainvs": [1, -1, 1, -1, -14]}]"#).unwrap();
        assert_eq!(n, 1);
        assert!(d.entry("17a1").is_some());
        assert!(d.extend_from_json(r#"[{"label": "11a", "ainvs": [0, 0, 0, 1, 0]}]"#).is_err());
    }
}
