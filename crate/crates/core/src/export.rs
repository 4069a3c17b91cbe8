//! JSON and CSV serialization. JSON objects are emitted with sorted keys.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ccop::{CAxis, CCoP, CPoint};
use crate::cop::{axes, CoP};
use crate::expansion::{ExpansionCertificate, ScanRow, VerificationReport};
use crate::surd::SurdLength;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopRecord {
    pub n: u64,
    pub base: String,
    pub weights: Vec<u64>,
    pub real_axes: Vec<[u64; 2]>,
    pub degenerate: Option<[u64; 2]>,
}

impl From<&CoP> for CopRecord {
    fn from(cop: &CoP) -> Self {
        let set = axes(cop);
        CopRecord {
            n: cop.n(),
            base: cop.base().to_string(),
            weights: cop.weights().to_vec(),
            real_axes: set.real.iter().map(|a| [a.low, a.high]).collect(),
            degenerate: set.degenerate.map(|a| [a.low, a.high]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: u64,
    pub sigma: i8,
    pub imag_sq: u64,
}

impl From<&CPoint> for PointRecord {
    fn from(p: &CPoint) -> Self {
        PointRecord {
            x: p.x(),
            sigma: p.sigma().as_i8(),
            imag_sq: p.imag_sq(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisRecord {
    pub p: PointRecord,
    pub q: PointRecord,
    pub degenerate: bool,
}

impl From<&CAxis> for AxisRecord {
    fn from(a: &CAxis) -> Self {
        AxisRecord {
            p: (&a.p()).into(),
            q: (&a.q()).into(),
            degenerate: a.is_degenerate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcopRecord {
    pub n: u64,
    pub base: String,
    pub points: Vec<PointRecord>,
    pub axes: Vec<AxisRecord>,
    pub nu_complex: usize,
}

impl From<&CCoP> for CcopRecord {
    fn from(c: &CCoP) -> Self {
        CcopRecord {
            n: c.n(),
            base: c.source().base().to_string(),
            points: c.points().iter().map(PointRecord::from).collect(),
            axes: c.axes().iter().map(AxisRecord::from).collect(),
            nu_complex: c.nu_complex(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurdRecord {
    pub a: u64,
    pub b: u64,
    pub op: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChordRecord {
    pub surd: SurdRecord,
    pub value: f64,
    pub exact_integer: Option<u64>,
}

impl From<&SurdLength> for ChordRecord {
    fn from(g: &SurdLength) -> Self {
        ChordRecord {
            surd: SurdRecord {
                a: g.a(),
                b: g.b(),
                op: g.op().symbol().to_string(),
            },
            value: g.value(),
            exact_integer: g.exact_integer(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeducedRecord {
    pub low: u64,
    pub high: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub n: u64,
    pub t: u64,
    pub s: u64,
    pub principle: String,
    pub z_low: u64,
    pub w_low: u64,
    pub deduced: DeducedRecord,
    pub sound: bool,
    pub w_high_endpoint: bool,
    pub degenerate_witness: bool,
}

impl CertificateRecord {
    pub fn new(cert: &ExpansionCertificate, sound: bool) -> Self {
        let d = cert.deduced_axis();
        CertificateRecord {
            n: cert.n(),
            t: cert.t(),
            s: cert.s(),
            principle: cert.principle().as_str().to_string(),
            z_low: cert.z_low(),
            w_low: cert.w_re(),
            deduced: DeducedRecord {
                low: d.low,
                high: d.high,
            },
            sound,
            w_high_endpoint: cert.w_high_endpoint(),
            degenerate_witness: cert.degenerate_witness(),
        }
    }
}

fn sorted_string<T: Serialize>(value: &T) -> String {
    // round-tripping through Value sorts object keys
    let v: Value = serde_json::to_value(value).expect("records serialize");
    serde_json::to_string(&v).expect("values serialize")
}

pub fn cop_json(cop: &CoP) -> String {
    sorted_string(&CopRecord::from(cop))
}

pub fn ccop_json(c: &CCoP) -> String {
    sorted_string(&CcopRecord::from(c))
}

pub fn chord_json(g: &SurdLength) -> String {
    sorted_string(&ChordRecord::from(g))
}

/// Certificates with their soundness taken from `report` (in input order).
pub fn certificates_json(certs: &[ExpansionCertificate], report: &VerificationReport) -> String {
    let records: Vec<CertificateRecord> = certs
        .iter()
        .zip(&report.certificate_sound)
        .map(|(c, &sound)| CertificateRecord::new(c, sound))
        .collect();
    sorted_string(&records)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct ReportRecord {
    sound: bool,
    complete: Option<bool>,
    direct_axes: Vec<[u64; 2]>,
    missing: Option<Vec<[u64; 2]>>,
    violations: Vec<String>,
    degenerate_witnesses: usize,
}

pub fn report_json(report: &VerificationReport) -> String {
    let rec = ReportRecord {
        sound: report.sound(),
        complete: report.complete(),
        direct_axes: report.direct_axes.iter().map(|a| [a.low, a.high]).collect(),
        missing: report
            .missing
            .as_ref()
            .map(|m| m.iter().map(|a| [a.low, a.high]).collect()),
        violations: report
            .soundness_violations
            .iter()
            .map(|v| format!("{v:?}"))
            .collect(),
        degenerate_witnesses: report.degenerate_witnesses,
    };
    sorted_string(&rec)
}

pub const SCAN_CSV_HEADER: &str =
    "n,t,s,principle,witnesses,deduced_axes,direct_axes,sound,complete";

/// Scan summary with header, LF line endings. `complete` is `na` where
/// completeness is not claimed.
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let complete = match r.complete {
            Some(true) => "true",
            Some(false) => "false",
            None => "na",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.t,
            r.s,
            r.principle,
            r.witnesses,
            r.deduced_axes,
            r.direct_axes,
            r.sound,
            complete
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct ScanRecord {
    n: u64,
    t: u64,
    s: u64,
    principle: &'static str,
    witnesses: usize,
    deduced_axes: usize,
    direct_axes: usize,
    sound: bool,
    complete: Option<bool>,
    degenerate_witnesses: usize,
}

pub fn scan_json(rows: &[ScanRow]) -> String {
    let records: Vec<ScanRecord> = rows
        .iter()
        .map(|r| ScanRecord {
            n: r.n,
            t: r.t,
            s: r.s,
            principle: r.principle.as_str(),
            witnesses: r.witnesses,
            deduced_axes: r.deduced_axes,
            direct_axes: r.direct_axes,
            sound: r.sound,
            complete: r.complete,
            degenerate_witnesses: r.degenerate_witnesses,
        })
        .collect();
    sorted_string(&records)
}

pub fn parse_cop_json(text: &str) -> serde_json::Result<CopRecord> {
    serde_json::from_str(text)
}
