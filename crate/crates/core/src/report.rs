//! JSON reports. Exact values are written as integer or fraction strings,
//! never as floating point. The layout is documented in `docs/format.md`.

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::developing::{GeodesicEnd, StartFlag, SurfaceGeodesic};
use crate::enumeration::{EscalatedSearch, GeodesicRecord, LatticeEndpoint, MidpointClass};
use crate::point::PlanarPoint;
use crate::scalar::{format_rational, parse_rational, ExactScalar};
use crate::surface::{SolidKind, SurfacePoint};
use crate::symmetry::{FixedSite, RecordCheck, TheoremReport};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A rational serialized as `"13"` or `"13/4"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalString(pub BigRational);

impl Serialize for RationalString {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s)
            .map(RationalString)
            .ok_or_else(|| serde::de::Error::custom(format!("not a rational: {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fixed_points: Vec<FixedSite>,
    /// `[[start, end], [end, start]]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint_images: Option<[[usize; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint: Option<LatticeEndpoint>,
    pub developed_endpoint: PlanarPoint,
    pub squared_length: ExactScalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub midpoint_class: Option<MidpointClass>,
    pub midpoint: SurfacePoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub midpoint_edge: Option<usize>,
    pub end_vertex: usize,
    pub self_geodesic: bool,
    pub edge_running: bool,
    pub faces: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub midpoint_coherent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEntry>,
}

impl RecordEntry {
    pub fn from_record(r: &GeodesicRecord) -> Self {
        RecordEntry {
            endpoint: r.endpoint,
            developed_endpoint: r.developed_endpoint().clone(),
            squared_length: r.squared_length.clone(),
            midpoint_class: r.midpoint_class,
            midpoint: r.midpoint.clone(),
            midpoint_edge: r.midpoint_edge,
            end_vertex: r.end_vertex,
            self_geodesic: r.is_self_geodesic(),
            edge_running: r.geodesic.edge_running,
            faces: r.geodesic.face_sequence(),
            midpoint_coherent: None,
            witness: None,
        }
    }

    pub fn from_check(c: &RecordCheck) -> Self {
        let witness = match &c.witness {
            Ok(w) => WitnessEntry {
                valid: true,
                group_index: Some(w.group_index),
                fixed_points: w.fixed_points.clone(),
                endpoint_images: Some([
                    [w.endpoint_images.0 .0, w.endpoint_images.0 .1],
                    [w.endpoint_images.1 .0, w.endpoint_images.1 .1],
                ]),
                error: None,
            },
            Err(e) => WitnessEntry {
                valid: false,
                group_index: None,
                fixed_points: Vec::new(),
                endpoint_images: None,
                error: Some(e.clone()),
            },
        };
        RecordEntry {
            midpoint_coherent: Some(c.midpoint_coherent),
            witness: Some(witness),
            ..Self::from_record(&c.record)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub summary: String,
    pub record_count: usize,
    pub self_geodesics: usize,
    pub witness_failures: usize,
    pub midpoint_mismatches: usize,
    pub group_order: usize,
}

pub const NO_SELF_GEODESICS: &str = "no self-geodesics";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub escalated: bool,
    pub bound_reached: RationalString,
    pub self_geodesics: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub tool_version: String,
    pub command: String,
    pub solid: SolidKind,
    pub start: StartFlag,
    pub bound_sq: RationalString,
    pub records: Vec<RecordEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
}

impl ReportDocument {
    fn new(
        command: &str,
        solid: SolidKind,
        start: StartFlag,
        bound: &BigRational,
        records: Vec<RecordEntry>,
    ) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            solid,
            start,
            bound_sq: RationalString(bound.clone()),
            records,
            verdict: None,
            search: None,
        }
    }

    pub fn enumeration(
        solid: SolidKind,
        start: StartFlag,
        bound: &BigRational,
        records: &[GeodesicRecord],
    ) -> Self {
        Self::new(
            "enumerate",
            solid,
            start,
            bound,
            records.iter().map(RecordEntry::from_record).collect(),
        )
    }

    pub fn search(
        solid: SolidKind,
        start: StartFlag,
        search: &EscalatedSearch,
        escalated: bool,
    ) -> Self {
        let mut doc = Self::new(
            "search",
            solid,
            start,
            &search.bound_reached,
            search
                .records
                .iter()
                .map(RecordEntry::from_record)
                .collect(),
        );
        doc.search = Some(SearchSummary {
            escalated,
            bound_reached: RationalString(search.bound_reached.clone()),
            self_geodesics: search
                .records
                .iter()
                .filter(|r| r.is_self_geodesic())
                .count(),
        });
        doc
    }

    pub fn theorem(report: &TheoremReport) -> Self {
        let mut doc = Self::new(
            "verify",
            report.solid,
            report.start,
            &report.bound,
            report.checks.iter().map(RecordEntry::from_check).collect(),
        );
        let holds = report.holds();
        doc.verdict = Some(Verdict {
            holds,
            summary: if holds {
                NO_SELF_GEODESICS.to_string()
            } else {
                "counterexample found".to_string()
            },
            record_count: report.checks.len(),
            self_geodesics: report.self_geodesics(),
            witness_failures: report.witness_failures(),
            midpoint_mismatches: report.midpoint_mismatches(),
            group_order: report.group_order,
        });
        doc
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegEntry {
    pub face: usize,
    pub entry: PlanarPoint,
    pub exit: PlanarPoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry_edge: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exit_edge: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum EndEntry {
    Vertex {
        vertex: usize,
        face: usize,
        corner: usize,
    },
    Open {
        point: SurfacePoint,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edge: Option<usize>,
    },
}

/// A single traced geodesic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub schema: u32,
    pub tool_version: String,
    pub command: String,
    pub solid: SolidKind,
    pub start: StartFlag,
    pub displacement: PlanarPoint,
    pub squared_length: ExactScalar,
    pub edge_running: bool,
    pub end: EndEntry,
    pub legs: Vec<LegEntry>,
}

impl TraceDocument {
    pub fn new(solid: SolidKind, g: &SurfaceGeodesic) -> Self {
        TraceDocument {
            schema: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            command: "trace".to_string(),
            solid,
            start: g.start,
            displacement: g.developed_endpoint.clone(),
            squared_length: g.squared_length.clone(),
            edge_running: g.edge_running,
            end: match &g.end {
                GeodesicEnd::Vertex {
                    vertex,
                    face,
                    corner,
                } => EndEntry::Vertex {
                    vertex: *vertex,
                    face: *face,
                    corner: *corner,
                },
                GeodesicEnd::Open { point, edge } => EndEntry::Open {
                    point: point.clone(),
                    edge: *edge,
                },
            },
            legs: g
                .legs
                .iter()
                .map(|l| LegEntry {
                    face: l.face,
                    entry: l.entry.clone(),
                    exit: l.exit.clone(),
                    entry_edge: l.entry_edge,
                    exit_edge: l.exit_edge,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
