//! Report documents: JSON (round-trippable), CSV and aligned text tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{ClassificationReport, DessinRecord, MirrorStatus};
use crate::perm::{CycleType, Permutation};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {found:?} (expected {SCHEMA_VERSION:?})")]
    Version { found: String },
    #[error("record {index}: {msg}")]
    Record { index: usize, msg: String },
    #[error("graph section: {0}")]
    Graph(String),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(format!(
                "unknown format {s:?} (expected json, csv or table)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEcho {
    pub name: Option<String>,
    pub e: usize,
    pub alpha: usize,
    pub beta: usize,
    pub black_degrees: Vec<usize>,
    pub white_degrees: Vec<usize>,
    pub aut_group_order: BigUint,
    pub candidate_count: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Passport {
    pub black: CycleType,
    pub white: CycleType,
    pub faces: CycleType,
}

impl std::fmt::Display for Passport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({};{};{})", self.black, self.white, self.faces)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: BigUint,
    pub all_even: bool,
    pub point_stabilizer_order: BigUint,
    pub odd_generators: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordDoc {
    pub orbit_id: usize,
    pub sigma: Permutation,
    pub tau: Permutation,
    pub orbit_length: u64,
    pub aut_order: u64,
    pub aut_generators: Vec<Permutation>,
    pub genus: u32,
    pub passport: Passport,
    pub face_count: usize,
    pub monodromy_order: BigUint,
    pub fingerprint: Fingerprint,
    pub regular: bool,
    pub uniform: bool,
    pub dualizable: bool,
    pub mirror: MirrorStatus,
    pub wilson_target: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportDocument {
    pub schema_version: String,
    pub graph: GraphEcho,
    pub wilson: Option<(i64, i64)>,
    pub records: Vec<RecordDoc>,
    pub genus_histogram: BTreeMap<u32, u64>,
    pub dualizable_histogram: BTreeMap<u32, u64>,
}

fn record_doc(r: &DessinRecord) -> RecordDoc {
    let inv = &r.invariants;
    RecordDoc {
        orbit_id: r.orbit_id,
        sigma: r.representative.sigma.clone(),
        tau: r.representative.tau.clone(),
        orbit_length: r.orbit_length,
        aut_order: r.aut_order,
        aut_generators: r.aut_generators.clone(),
        genus: inv.genus,
        passport: Passport {
            black: inv.passport.black.clone(),
            white: inv.passport.white.clone(),
            faces: inv.passport.faces.clone(),
        },
        face_count: inv.face_count,
        monodromy_order: inv.monodromy_order.clone(),
        fingerprint: Fingerprint {
            order: inv.fingerprint.order.clone(),
            all_even: inv.fingerprint.all_even,
            point_stabilizer_order: inv.fingerprint.point_stabilizer_order.clone(),
            odd_generators: inv.fingerprint.odd_generators,
        },
        regular: inv.regular,
        uniform: inv.uniform,
        dualizable: inv.dualizable,
        mirror: r.mirror,
        wilson_target: r.wilson_target,
    }
}

impl ReportDocument {
    pub fn from_report(report: &ClassificationReport, name: Option<&str>) -> Self {
        let g = &report.graph;
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            graph: GraphEcho {
                name: name.map(str::to_string),
                e: g.edge_count,
                alpha: g.black_count,
                beta: g.white_count,
                black_degrees: g.black_degrees.clone(),
                white_degrees: g.white_degrees.clone(),
                aut_group_order: g.aut_group_order.clone(),
                candidate_count: g.candidate_count.clone(),
            },
            wilson: report.wilson,
            records: report.records.iter().map(record_doc).collect(),
            genus_histogram: report.genus_histogram.clone(),
            dualizable_histogram: report.dualizable_histogram.clone(),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, ReportError> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
            Format::Table => Ok(self.to_table()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&wire::Report::from(self)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, ReportError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(CsvRow::new(self, r))?;
        }
        if self.records.is_empty() {
            w.write_record(CsvRow::HEADER)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| csv::Error::from(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_table(&self) -> String {
        let name = self.graph.name.as_deref().unwrap_or("-");
        let mut header = vec![
            "Orbit",
            "Graph",
            "Genus",
            "Length",
            "MonodromyOrder",
            "AutOrder",
            "Passport",
            "Regular",
            "Mirror",
            "Dualizable",
        ];
        if self.wilson.is_some() {
            header.push("Wilson");
        }
        let yes_no = |b: bool| if b { "yes" } else { "no" }.to_string();
        let rows: Vec<Vec<String>> = self
            .records
            .iter()
            .map(|r| {
                let mut row = vec![
                    r.orbit_id.to_string(),
                    name.to_string(),
                    r.genus.to_string(),
                    r.orbit_length.to_string(),
                    r.monodromy_order.to_string(),
                    r.aut_order.to_string(),
                    r.passport.to_string(),
                    yes_no(r.regular),
                    mirror_text(r.mirror),
                    yes_no(r.dualizable),
                ];
                if self.wilson.is_some() {
                    row.push(r.wilson_target.map_or("-".into(), |t| t.to_string()));
                }
                row
            })
            .collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
            let parts: Vec<String> = cells
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &mut header.iter().copied());
        for row in &rows {
            line(&mut out, &mut row.iter().map(String::as_str));
        }
        let _ = writeln!(
            out,
            "{} orbits; |G| = {}; N = {}",
            self.records.len(),
            self.graph.aut_group_order,
            self.graph.candidate_count
        );
        let hist: Vec<String> = self
            .genus_histogram
            .iter()
            .map(|(g, n)| {
                let d = self.dualizable_histogram.get(g).copied().unwrap_or(0);
                format!("g{g}: {n} ({d} dualizable)")
            })
            .collect();
        if !hist.is_empty() {
            let _ = writeln!(out, "{}", hist.join(", "));
        }
        out
    }
}

fn mirror_text(m: MirrorStatus) -> String {
    match m {
        MirrorStatus::Reflexive => "reflexive".into(),
        MirrorStatus::Chiral { partner } => format!("chiral({partner})"),
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    graph: &'a str,
    orbit_id: usize,
    genus: u32,
    passport: String,
    orbit_length: u64,
    aut_order: u64,
    monodromy_order: String,
    face_count: usize,
    regular: bool,
    uniform: bool,
    dualizable: bool,
    mirror: &'static str,
    partner_orbit_id: Option<usize>,
    wilson_target: Option<usize>,
    sigma: String,
    tau: String,
}

impl<'a> CsvRow<'a> {
    const HEADER: [&'static str; 16] = [
        "graph",
        "orbit_id",
        "genus",
        "passport",
        "orbit_length",
        "aut_order",
        "monodromy_order",
        "face_count",
        "regular",
        "uniform",
        "dualizable",
        "mirror",
        "partner_orbit_id",
        "wilson_target",
        "sigma",
        "tau",
    ];

    fn new(doc: &'a ReportDocument, r: &RecordDoc) -> Self {
        let (mirror, partner_orbit_id) = match r.mirror {
            MirrorStatus::Reflexive => ("reflexive", None),
            MirrorStatus::Chiral { partner } => ("chiral", Some(partner)),
        };
        CsvRow {
            graph: doc.graph.name.as_deref().unwrap_or(""),
            orbit_id: r.orbit_id,
            genus: r.genus,
            passport: r.passport.to_string(),
            orbit_length: r.orbit_length,
            aut_order: r.aut_order,
            monodromy_order: r.monodromy_order.to_string(),
            face_count: r.face_count,
            regular: r.regular,
            uniform: r.uniform,
            dualizable: r.dualizable,
            mirror,
            partner_orbit_id,
            wilson_target: r.wilson_target,
            sigma: r.sigma.to_string(),
            tau: r.tau.to_string(),
        }
    }
}

/// Serializes a classification in the requested format.
pub fn serialize_report(
    report: &ClassificationReport,
    name: Option<&str>,
    format: Format,
) -> Result<String, ReportError> {
    ReportDocument::from_report(report, name).render(format)
}

/// Parses a JSON report, re-reading every permutation from cycle notation.
pub fn parse_report(text: &str) -> Result<ReportDocument, ReportError> {
    let probe: wire::Version = serde_json::from_str(text)?;
    if probe.schema_version != SCHEMA_VERSION {
        return Err(ReportError::Version {
            found: probe.schema_version,
        });
    }
    let raw: wire::Report = serde_json::from_str(text)?;
    raw.into_document()
}

/// On-disk shape: permutations as cycle strings, big integers as decimal
/// strings.
mod wire {
    use super::*;

    #[derive(Deserialize)]
    pub struct Version {
        pub schema_version: String,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Graph {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub name: Option<String>,
        pub e: usize,
        pub alpha: usize,
        pub beta: usize,
        pub black_degrees: Vec<usize>,
        pub white_degrees: Vec<usize>,
        pub aut_group_order: String,
        pub candidate_count: String,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Passport {
        pub black: Vec<usize>,
        pub white: Vec<usize>,
        pub faces: Vec<usize>,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Fingerprint {
        pub order: String,
        pub all_even: bool,
        pub point_stabilizer_order: String,
        pub odd_generators: u8,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Mirror {
        pub status: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub partner_orbit_id: Option<usize>,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Record {
        pub orbit_id: usize,
        pub sigma: String,
        pub tau: String,
        pub orbit_length: u64,
        pub aut_order: u64,
        pub aut_generators: Vec<String>,
        pub genus: u32,
        pub passport: Passport,
        pub face_count: usize,
        pub monodromy_order: String,
        pub fingerprint: Fingerprint,
        pub regular: bool,
        pub uniform: bool,
        pub dualizable: bool,
        pub mirror: Mirror,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub wilson_target: Option<usize>,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Report {
        pub schema_version: String,
        pub graph: Graph,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub wilson: Option<[i64; 2]>,
        pub records: Vec<Record>,
        pub genus_histogram: BTreeMap<u32, u64>,
        pub dualizable_histogram: BTreeMap<u32, u64>,
    }

    impl From<&ReportDocument> for Report {
        fn from(d: &ReportDocument) -> Self {
            let g = &d.graph;
            Report {
                schema_version: d.schema_version.clone(),
                graph: Graph {
                    name: g.name.clone(),
                    e: g.e,
                    alpha: g.alpha,
                    beta: g.beta,
                    black_degrees: g.black_degrees.clone(),
                    white_degrees: g.white_degrees.clone(),
                    aut_group_order: g.aut_group_order.to_string(),
                    candidate_count: g.candidate_count.to_string(),
                },
                wilson: d.wilson.map(|(r, s)| [r, s]),
                records: d.records.iter().map(Record::from).collect(),
                genus_histogram: d.genus_histogram.clone(),
                dualizable_histogram: d.dualizable_histogram.clone(),
            }
        }
    }

    impl From<&RecordDoc> for Record {
        fn from(r: &RecordDoc) -> Self {
            let (status, partner_orbit_id) = match r.mirror {
                MirrorStatus::Reflexive => ("reflexive", None),
                MirrorStatus::Chiral { partner } => ("chiral", Some(partner)),
            };
            Record {
                orbit_id: r.orbit_id,
                sigma: r.sigma.to_string(),
                tau: r.tau.to_string(),
                orbit_length: r.orbit_length,
                aut_order: r.aut_order,
                aut_generators: r.aut_generators.iter().map(|p| p.to_string()).collect(),
                genus: r.genus,
                passport: Passport {
                    black: r.passport.black.lengths().to_vec(),
                    white: r.passport.white.lengths().to_vec(),
                    faces: r.passport.faces.lengths().to_vec(),
                },
                face_count: r.face_count,
                monodromy_order: r.monodromy_order.to_string(),
                fingerprint: Fingerprint {
                    order: r.fingerprint.order.to_string(),
                    all_even: r.fingerprint.all_even,
                    point_stabilizer_order: r.fingerprint.point_stabilizer_order.to_string(),
                    odd_generators: r.fingerprint.odd_generators,
                },
                regular: r.regular,
                uniform: r.uniform,
                dualizable: r.dualizable,
                mirror: Mirror {
                    status: status.to_string(),
                    partner_orbit_id,
                },
                wilson_target: r.wilson_target,
            }
        }
    }

    fn big(text: &str, what: &str) -> Result<BigUint, String> {
        text.parse()
            .map_err(|_| format!("{what}: {text:?} is not a decimal integer"))
    }

    fn cycle_type(lengths: Vec<usize>, e: usize, what: &str) -> Result<CycleType, String> {
        if lengths.contains(&0) {
            return Err(format!("passport {what} has a zero entry"));
        }
        let c = CycleType::new(lengths);
        if c.total() != e {
            return Err(format!(
                "passport {what} sums to {}, expected {e}",
                c.total()
            ));
        }
        Ok(c)
    }

    impl Record {
        fn into_doc(self, e: usize, count: usize) -> Result<RecordDoc, String> {
            let perm = |text: &str, what: &str| {
                Permutation::parse_cycles(text, e).map_err(|err| format!("{what}: {err}"))
            };
            let mirror = match (self.mirror.status.as_str(), self.mirror.partner_orbit_id) {
                ("reflexive", None) => MirrorStatus::Reflexive,
                ("chiral", Some(p)) if p < count => MirrorStatus::Chiral { partner: p },
                (status, partner) => {
                    return Err(format!("invalid mirror status {status:?} / {partner:?}"))
                }
            };
            Ok(RecordDoc {
                orbit_id: self.orbit_id,
                sigma: perm(&self.sigma, "sigma")?,
                tau: perm(&self.tau, "tau")?,
                orbit_length: self.orbit_length,
                aut_order: self.aut_order,
                aut_generators: self
                    .aut_generators
                    .iter()
                    .map(|g| perm(g, "aut generator"))
                    .collect::<Result<_, _>>()?,
                genus: self.genus,
                passport: super::Passport {
                    black: cycle_type(self.passport.black, e, "black")?,
                    white: cycle_type(self.passport.white, e, "white")?,
                    faces: cycle_type(self.passport.faces, e, "faces")?,
                },
                face_count: self.face_count,
                monodromy_order: big(&self.monodromy_order, "monodromy_order")?,
                fingerprint: super::Fingerprint {
                    order: big(&self.fingerprint.order, "fingerprint order")?,
                    all_even: self.fingerprint.all_even,
                    point_stabilizer_order: big(
                        &self.fingerprint.point_stabilizer_order,
                        "fingerprint point_stabilizer_order",
                    )?,
                    odd_generators: self.fingerprint.odd_generators,
                },
                regular: self.regular,
                uniform: self.uniform,
                dualizable: self.dualizable,
                mirror,
                wilson_target: self.wilson_target,
            })
        }
    }

    impl Report {
        pub fn into_document(self) -> Result<ReportDocument, ReportError> {
            let g = self.graph;
            let e = g.e;
            let count = self.records.len();
            let records = self
                .records
                .into_iter()
                .enumerate()
                .map(|(index, r)| {
                    if r.orbit_id != index {
                        return Err(ReportError::Record {
                            index,
                            msg: format!("orbit_id {} out of sequence", r.orbit_id),
                        });
                    }
                    r.into_doc(e, count)
                        .map_err(|msg| ReportError::Record { index, msg })
                })
                .collect::<Result<_, _>>()?;
            Ok(ReportDocument {
                schema_version: self.schema_version,
                graph: GraphEcho {
                    name: g.name,
                    e,
                    alpha: g.alpha,
                    beta: g.beta,
                    black_degrees: g.black_degrees,
                    white_degrees: g.white_degrees,
                    aut_group_order: big(&g.aut_group_order, "aut_group_order")
                        .map_err(ReportError::Graph)?,
                    candidate_count: big(&g.candidate_count, "candidate_count")
                        .map_err(ReportError::Graph)?,
                },
                wilson: self.wilson.map(|[r, s]| (r, s)),
                records,
                genus_histogram: self.genus_histogram,
                dualizable_histogram: self.dualizable_histogram,
            })
        }
    }
}
