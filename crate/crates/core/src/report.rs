//! Structured command output and its text, JSON and CSV renderings.
//!
//! JSON documents carry `schema_version` and validate against
//! `schema/report.v1.schema.json`. CSV output has exactly one data row
//! per element of the document's primary JSON array.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::lattice::{CoeffVec, FamilyTag, LatticeSpec};
use crate::oeis::{CheckOutcome, Mismatch};
use crate::shell::{UnitClass, UnitVectorReport};
use crate::symmetry::{self, IntMatrix4};
use crate::tables::{RowStatus, Table, TableId, TableRow};

pub const SCHEMA_VERSION: u32 = 1;
pub const SCHEMA: &str = include_str!("../schema/report.v1.schema.json");

/// Upper bound on closure sizes explored when computing group orders.
pub const GROUP_CAP: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitEntry {
    pub coeffs: CoeffVec,
    pub class: UnitClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub trivial: u64,
    pub diagonal: u64,
    pub other: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub matrix: IntMatrix4,
    pub order: Option<usize>,
    pub preserves_gram: bool,
}

/// Unit-vector report for one lattice, optionally with its symmetry group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_k: Option<u64>,
    #[serde(rename = "D")]
    pub d: u64,
    pub predicted: u64,
    pub enumerated: u64,
    pub counts: ClassCounts,
    pub units: Vec<UnitEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutes_units: Option<bool>,
}

impl LatticeReport {
    pub fn from_units(report: &UnitVectorReport) -> Self {
        let family = report.family();
        let (k, two_k) = match family {
            FamilyTag::MHalf(n) => (None, Some(n)),
            _ => (Some(family.param()), None),
        };
        LatticeReport {
            family: family.name().to_string(),
            k,
            two_k,
            d: report.spec.radicand(),
            predicted: report.predicted,
            enumerated: report.enumerated,
            counts: ClassCounts {
                trivial: report.trivial() as u64,
                diagonal: report.count(UnitClass::Diagonal) as u64,
                other: report.count(UnitClass::Other) as u64,
            },
            units: report.classes.iter().map(|(v, c)| UnitEntry { coeffs: *v, class: *c }).collect(),
            group_order: None,
            generators: None,
            permutes_units: None,
        }
    }

    /// Adds generators, their Gram verdicts, the group order and whether
    /// every group element permutes the unit set.
    pub fn with_symmetry(mut self, spec: &LatticeSpec, report: &UnitVectorReport) -> Self {
        let named = symmetry::named_generators(spec);
        let mats: Vec<IntMatrix4> = named.iter().map(|g| g.matrix).collect();
        let group = symmetry::closure(&mats, GROUP_CAP);
        self.generators = Some(
            named
                .into_iter()
                .map(|g| GeneratorEntry {
                    order: g.matrix.order(GROUP_CAP),
                    preserves_gram: symmetry::preserves_gram(spec, &g.matrix),
                    name: g.name,
                    matrix: g.matrix,
                })
                .collect(),
        );
        self.group_order = group.as_ref().map(|g| g.len());
        self.permutes_units = Some(group.as_ref().is_some_and(|g| symmetry::permutes(g, &report.units)));
        self
    }

    pub fn is_consistent(&self) -> bool {
        self.predicted == self.enumerated && self.counts.other == 0
    }

    pub fn symmetry_ok(&self) -> bool {
        self.group_order.is_some()
            && self.permutes_units == Some(true)
            && self.generators.as_ref().is_some_and(|g| g.iter().all(|g| g.preserves_gram))
    }

    fn label(&self) -> String {
        match (self.k, self.two_k) {
            (_, Some(n)) => format!("{}(2k = {n})", self.family),
            (Some(k), _) => format!("{}({k})", self.family),
            _ => self.family.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub table: TableId,
    pub key: String,
    pub limit: u64,
    pub rows: Vec<TableRow>,
}

impl From<Table> for TableReport {
    fn from(t: Table) -> Self {
        TableReport { table: t.id, key: t.key, limit: t.limit, rows: t.rows }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowestReport {
    pub family: String,
    pub units: u64,
    pub limit: u64,
    pub param: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportDocument {
    Units(LatticeReport),
    Symmetry(LatticeReport),
    Table(TableReport),
    Lowest(LowestReport),
    OeisCheck(CheckOutcome),
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    schema_version: u32,
    #[serde(flatten)]
    doc: ReportDocument,
}

impl ReportDocument {
    /// Exit-status verdict: the command's own check passed.
    pub fn passed(&self) -> bool {
        match self {
            ReportDocument::Units(r) => r.is_consistent(),
            ReportDocument::Symmetry(r) => r.is_consistent() && r.symmetry_ok(),
            ReportDocument::Table(_) => true,
            ReportDocument::Lowest(r) => r.param.is_some(),
            ReportDocument::OeisCheck(o) => o.mismatches.is_empty(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let env = Envelope { schema_version: SCHEMA_VERSION, doc: self.clone() };
        serde_json::to_string_pretty(&env).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str::<Envelope>(text).map(|e| e.doc)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let rows: Vec<Vec<String>> = match self {
            ReportDocument::Units(r) | ReportDocument::Symmetry(r) => {
                w.write_record(["a", "b", "c", "d", "class"]).unwrap();
                r.units
                    .iter()
                    .map(|u| u.coeffs.0.iter().map(|x| x.to_string()).chain([u.class.to_string()]).collect())
                    .collect()
            }
            ReportDocument::Table(t) => {
                w.write_record(["units", t.key.as_str(), "status"]).unwrap();
                t.rows
                    .iter()
                    .map(|row| vec![row.units.to_string(), opt(row.param), status(row.status).to_string()])
                    .collect()
            }
            ReportDocument::Lowest(l) => {
                w.write_record(["family", "units", "limit", "param"]).unwrap();
                vec![vec![l.family.clone(), l.units.to_string(), l.limit.to_string(), opt(l.param)]]
            }
            ReportDocument::OeisCheck(o) => {
                w.write_record(["n", "expected", "computed"]).unwrap();
                o.mismatches.iter().map(mismatch_row).collect()
            }
        };
        for row in rows {
            w.write_record(&row).unwrap();
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            ReportDocument::Units(r) | ReportDocument::Symmetry(r) => {
                let _ = writeln!(out, "{}  D = {}", r.label(), r.d);
                let _ = writeln!(out, "predicted {}  enumerated {}", r.predicted, r.enumerated);
                let _ = writeln!(
                    out,
                    "trivial {}  diagonal {}  other {}",
                    r.counts.trivial, r.counts.diagonal, r.counts.other
                );
                if let ReportDocument::Symmetry(_) = self {
                    for g in r.generators.iter().flatten() {
                        let _ = writeln!(
                            out,
                            "generator {}: {}  order {}  gram {}",
                            g.name,
                            g.matrix,
                            opt(g.order),
                            if g.preserves_gram { "preserved" } else { "NOT preserved" }
                        );
                    }
                    let _ = writeln!(out, "group order {}", opt(r.group_order));
                    let _ = writeln!(
                        out,
                        "unit set {}",
                        if r.permutes_units == Some(true) { "invariant" } else { "NOT invariant" }
                    );
                } else {
                    for u in &r.units {
                        let _ = writeln!(out, "  {}  {}", u.coeffs, u.class);
                    }
                }
                let _ = writeln!(out, "{}", if self.passed() { "OK" } else { "MISMATCH" });
            }
            ReportDocument::Table(t) => {
                let _ = writeln!(out, "table {}  (limit {})", t.table, t.limit);
                let _ = writeln!(out, "{:>8}  {:>14}", "units", t.key);
                for row in &t.rows {
                    let cell = match row.status {
                        RowStatus::Found => opt(row.param),
                        RowStatus::BeyondLimit => format!("> {}", t.limit),
                    };
                    let _ = writeln!(out, "{:>8}  {:>14}", row.units, cell);
                }
            }
            ReportDocument::Lowest(l) => {
                let _ = match l.param {
                    Some(p) => writeln!(out, "{} with {} unit vectors: lowest parameter {p}", l.family, l.units),
                    None => writeln!(out, "{} with {} unit vectors: none up to {}", l.family, l.units, l.limit),
                };
            }
            ReportDocument::OeisCheck(o) => {
                let _ = writeln!(
                    out,
                    "{} ({}) n = {}..{}: {} checked, {} beyond limit, {} mismatches",
                    o.seq,
                    o.source.as_str(),
                    o.range.0,
                    o.range.1,
                    o.checked,
                    o.beyond_limit,
                    o.mismatches.len()
                );
                for m in &o.mismatches {
                    let _ = writeln!(out, "  n = {}: expected {}, computed {}", m.n, m.expected, big_opt(&m.computed));
                }
            }
        }
        out
    }

    /// Length of the array that CSV output mirrors row for row.
    pub fn primary_len(&self) -> usize {
        match self {
            ReportDocument::Units(r) | ReportDocument::Symmetry(r) => r.units.len(),
            ReportDocument::Table(t) => t.rows.len(),
            ReportDocument::Lowest(_) => 1,
            ReportDocument::OeisCheck(o) => o.mismatches.len(),
        }
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn big_opt(x: &Option<BigInt>) -> String {
    x.as_ref().map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn status(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Found => "found",
        RowStatus::BeyondLimit => "beyond-limit",
    }
}

fn mismatch_row(m: &Mismatch) -> Vec<String> {
    vec![m.n.to_string(), m.expected.to_string(), big_opt(&m.computed)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_lattice;
    use crate::shell::unit_vectors;
    use crate::tables::build_table;

    fn units_doc(f: FamilyTag) -> ReportDocument {
        let spec = make_lattice(f).unwrap();
        ReportDocument::Units(LatticeReport::from_units(&unit_vectors(&spec)))
    }

    fn sym_doc(f: FamilyTag) -> ReportDocument {
        let spec = make_lattice(f).unwrap();
        let u = unit_vectors(&spec);
        ReportDocument::Symmetry(LatticeReport::from_units(&u).with_symmetry(&spec, &u))
    }

    fn docs() -> Vec<ReportDocument> {
        vec![
            units_doc(FamilyTag::L(3)),
            units_doc(FamilyTag::MHalf(9)),
            sym_doc(FamilyTag::M(1)),
            ReportDocument::Table(build_table(TableId::Two, 40, 2000).into()),
            ReportDocument::Lowest(LowestReport { family: "L".into(), units: 18, limit: 100, param: Some(3) }),
            ReportDocument::OeisCheck(
                crate::oeis::check_known(&crate::oeis::Known::A004016.vendored(), 50, 1000).unwrap(),
            ),
        ]
    }

    #[test]
    fn json_roundtrip() {
        for d in docs() {
            assert_eq!(ReportDocument::from_json(&d.to_json()).unwrap(), d);
        }
    }

    #[test]
    fn json_validates_against_schema() {
        let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
        let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
        for d in docs() {
            let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
            let errors: Vec<String> = match compiled.validate(&v) {
                Ok(()) => vec![],
                Err(e) => e.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
            };
            assert!(errors.is_empty(), "{errors:?}");
        }
        let mut bad: serde_json::Value = serde_json::from_str(&docs()[0].to_json()).unwrap();
        bad["units"][0]["coeffs"] = serde_json::json!([1, 2, 3]);
        assert!(!compiled.is_valid(&bad));
    }

    #[test]
    fn csv_rows_match_json_arrays() {
        for d in docs() {
            let rows = csv::Reader::from_reader(d.to_csv().as_bytes()).records().count();
            assert_eq!(rows, d.primary_len());
        }
    }

    #[test]
    fn top_level_fields() {
        let v: serde_json::Value = serde_json::from_str(&units_doc(FamilyTag::L(3)).to_json()).unwrap();
        assert_eq!(v["family"], "L");
        assert_eq!(v["k"], 3);
        assert_eq!(v["D"], 33);
        assert_eq!(v["predicted"], 18);
        assert_eq!(v["units"].as_array().unwrap().len(), 18);
        assert_eq!(v["units"][0]["coeffs"].as_array().unwrap().len(), 4);
        assert!(v.get("group_order").is_none());
        let v: serde_json::Value = serde_json::from_str(&units_doc(FamilyTag::MHalf(9)).to_json()).unwrap();
        assert_eq!(v["two_k"], 9);
        assert!(v.get("k").is_none());
        let v: serde_json::Value = serde_json::from_str(&sym_doc(FamilyTag::M(1)).to_json()).unwrap();
        assert_eq!(v["group_order"], 24);
    }

    #[test]
    fn text_carries_json_counts() {
        let d = units_doc(FamilyTag::L(3));
        let t = d.to_text();
        assert!(t.contains("predicted 18  enumerated 18"));
        assert!(t.contains("trivial 12  diagonal 6  other 0"));
        assert!(sym_doc(FamilyTag::M(1)).to_text().contains("group order 24"));
    }

    #[test]
    fn verdicts() {
        assert!(docs().iter().all(|d| d.passed()));
        let none = ReportDocument::Lowest(LowestReport { family: "L".into(), units: 20, limit: 100, param: None });
        assert!(!none.passed());
    }
}
