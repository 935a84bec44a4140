//! Enumeration of vertex-to-vertex geodesics from one start corner.
//!
//! Square and triangular solids are enumerated through their lattice of
//! developed vertices. Any solid can also be searched by breadth-first
//! expansion of developed face placements, which is the only option for the
//! dodecahedron and doubles as a cross-check on the lattice enumeration.

use std::collections::HashSet;
use std::fmt;

use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::developing::{
    develop, glued_corners, trace, GeodesicEnd, StartFlag, SurfaceGeodesic, TraceError,
};
use crate::point::{orient_same, PlanarPoint};
use crate::scalar::{integer, ExactScalar, QSqrt3, Sign};
use crate::surface::{edge_direction, SolidKind, SolidSpec, SurfacePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    Square,
    /// Basis `v1 = (1, 0)`, `v2 = (1/2, √3/2)`; `v3 = v2 − v1`.
    Triangular,
}

impl LatticeKind {
    pub fn of_solid(kind: SolidKind) -> Option<Self> {
        match kind {
            SolidKind::Cube => Some(LatticeKind::Square),
            SolidKind::Tetrahedron | SolidKind::Octahedron | SolidKind::Icosahedron => {
                Some(LatticeKind::Triangular)
            }
            SolidKind::Dodecahedron => None,
        }
    }

    /// Squared length of `(p, q)` in this lattice.
    pub fn norm(self, p: i64, q: i64) -> i64 {
        match self {
            LatticeKind::Square => p * p + q * q,
            LatticeKind::Triangular => p * p + p * q + q * q,
        }
    }

    pub fn basis_vector(self, direction: EdgeDirection) -> PlanarPoint {
        let r = |x: i64, y: i64| PlanarPoint::rational(integer(x), integer(y));
        let half = BigRational::new(1.into(), 2.into());
        let s = |x: BigRational, y: BigRational| {
            PlanarPoint::sqrt3(
                QSqrt3::from_rational(x),
                QSqrt3::new(BigRational::zero(), y),
            )
        };
        match direction {
            EdgeDirection::Horizontal => r(1, 0),
            EdgeDirection::Vertical => r(0, 1),
            EdgeDirection::V1 => s(integer(1), BigRational::zero()),
            EdgeDirection::V2 => s(half.clone(), half),
            EdgeDirection::V3 => s(-half.clone(), half),
        }
    }
}

/// Developed end point in lattice coordinates: Cartesian for the square
/// lattice, in the basis `{v1, v2}` for the triangular lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeEndpoint {
    pub p: i64,
    pub q: i64,
}

impl LatticeEndpoint {
    pub fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    pub fn is_primitive(self) -> bool {
        self.p.gcd(&self.q) == 1
    }

    /// The developed displacement in the start corner frame.
    pub fn displacement(self, lattice: LatticeKind) -> PlanarPoint {
        match lattice {
            LatticeKind::Square => PlanarPoint::rational(integer(self.p), integer(self.q)),
            LatticeKind::Triangular => {
                let half_q = BigRational::new(self.q.into(), 2.into());
                PlanarPoint::sqrt3(
                    QSqrt3::from_rational(integer(self.p) + &half_q),
                    QSqrt3::new(BigRational::zero(), half_q),
                )
            }
        }
    }

    /// Inverse of [`LatticeEndpoint::displacement`]; `None` off the lattice.
    pub fn from_displacement(lattice: LatticeKind, z: &PlanarPoint) -> Option<Self> {
        let to_int = |r: &BigRational| {
            if r.is_integer() {
                r.to_integer().to_i64()
            } else {
                None
            }
        };
        match (lattice, z) {
            (LatticeKind::Square, PlanarPoint::Rational { x, y }) => {
                Some(Self::new(to_int(x)?, to_int(y)?))
            }
            (LatticeKind::Triangular, PlanarPoint::Sqrt3 { x, y }) => {
                if !x.b.is_zero() || !y.a.is_zero() {
                    return None;
                }
                let q = to_int(&(&y.b * integer(2)))?;
                let p = to_int(&(&x.a - &y.b))?;
                Some(Self::new(p, q))
            }
            _ => None,
        }
    }
}

impl fmt::Display for LatticeEndpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeDirection {
    V1,
    V2,
    V3,
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MidpointClass {
    FaceCenter,
    EdgeMidpoint(EdgeDirection),
}

impl fmt::Display for MidpointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MidpointClass::FaceCenter => write!(f, "face center"),
            MidpointClass::EdgeMidpoint(d) => write!(
                f,
                "edge midpoint ({})",
                match d {
                    EdgeDirection::V1 => "v1",
                    EdgeDirection::V2 => "v2",
                    EdgeDirection::V3 => "v3",
                    EdgeDirection::Horizontal => "horizontal",
                    EdgeDirection::Vertical => "vertical",
                }
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("{0} is not supported here; its faces do not tile the plane")]
    UnsupportedSolid(SolidKind),
    #[error("lattice endpoint {0} is not primitive")]
    NotPrimitive(LatticeEndpoint),
    #[error("trace toward {target} failed: {source}")]
    Trace {
        target: String,
        source: Box<TraceError>,
    },
    #[error("no candidate vertex within squared length {0}")]
    BoundTooSmall(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicRecord {
    pub solid: SolidKind,
    pub start: StartFlag,
    pub endpoint: Option<LatticeEndpoint>,
    pub geodesic: SurfaceGeodesic,
    pub midpoint_class: Option<MidpointClass>,
    /// Surface image of half the developed endpoint.
    pub midpoint: SurfacePoint,
    /// Edge of `midpoint.face` carrying the midpoint, if any.
    pub midpoint_edge: Option<usize>,
    pub end_vertex: usize,
    pub squared_length: ExactScalar,
}

impl GeodesicRecord {
    pub fn developed_endpoint(&self) -> &PlanarPoint {
        &self.geodesic.developed_endpoint
    }

    pub fn is_self_geodesic(&self) -> bool {
        self.end_vertex == self.start.vertex
    }
}

/// Primitive lattice points in the start corner's sector (`p, q ≥ 0`) with
/// squared length at most `max_sq_length`, sorted by squared length then `(p, q)`.
pub fn primitive_endpoints(
    lattice: LatticeKind,
    max_sq_length: &BigRational,
) -> Vec<LatticeEndpoint> {
    if max_sq_length <= &BigRational::zero() {
        return Vec::new();
    }
    let limit = max_sq_length
        .floor()
        .to_integer()
        .to_i64()
        .unwrap_or(i64::MAX / 4);
    let m = limit.sqrt();
    let mut out: Vec<(i64, LatticeEndpoint)> = (0..=m)
        .flat_map(|p| (0..=m).map(move |q| LatticeEndpoint::new(p, q)))
        .filter(|e| e.is_primitive())
        .map(|e| (lattice.norm(e.p, e.q), e))
        .filter(|&(n, _)| n <= limit)
        .collect();
    out.sort();
    out.into_iter().map(|(_, e)| e).collect()
}

pub fn midpoint_class(
    lattice: LatticeKind,
    e: LatticeEndpoint,
) -> Result<MidpointClass, EnumerationError> {
    if !e.is_primitive() {
        return Err(EnumerationError::NotPrimitive(e));
    }
    let (p_odd, q_odd) = (e.p.is_odd(), e.q.is_odd());
    Ok(match (lattice, p_odd, q_odd) {
        (LatticeKind::Square, true, true) => MidpointClass::FaceCenter,
        (LatticeKind::Square, false, _) => MidpointClass::EdgeMidpoint(EdgeDirection::Vertical),
        (LatticeKind::Square, _, false) => MidpointClass::EdgeMidpoint(EdgeDirection::Horizontal),
        (LatticeKind::Triangular, false, _) => MidpointClass::EdgeMidpoint(EdgeDirection::V2),
        (LatticeKind::Triangular, _, false) => MidpointClass::EdgeMidpoint(EdgeDirection::V1),
        (LatticeKind::Triangular, true, true) => MidpointClass::EdgeMidpoint(EdgeDirection::V3),
    })
}

fn trace_error(target: &PlanarPoint, source: TraceError) -> EnumerationError {
    EnumerationError::Trace {
        target: target.to_string(),
        source: Box::new(source),
    }
}

/// Builds the record of a vertex-to-vertex geodesic along `z`.
fn make_record(
    spec: &SolidSpec,
    start: &StartFlag,
    z: &PlanarPoint,
    endpoint: Option<LatticeEndpoint>,
    midpoint_class: Option<MidpointClass>,
) -> Result<GeodesicRecord, EnumerationError> {
    let geodesic = trace(spec, start, z).map_err(|e| trace_error(z, e))?;
    let end_vertex = geodesic
        .end_vertex()
        .ok_or_else(|| trace_error(z, TraceError::OpenEnded))?;
    let half = trace(spec, start, &z.half()).map_err(|e| trace_error(z, e))?;
    let (midpoint, midpoint_edge) = match half.end {
        GeodesicEnd::Open { point, edge } => (point, edge),
        // cannot happen for a geodesic that avoids vertices in its interior
        GeodesicEnd::Vertex { .. } => {
            return Err(trace_error(
                z,
                TraceError::VertexHit {
                    t: Box::new(ExactScalar::from_rational(
                        spec.field(),
                        BigRational::new(1.into(), 2.into()),
                    )),
                    vertex: half.end_vertex().unwrap_or_default(),
                },
            ))
        }
    };
    Ok(GeodesicRecord {
        solid: spec.kind,
        start: *start,
        endpoint,
        squared_length: geodesic.squared_length.clone(),
        geodesic,
        midpoint_class,
        midpoint,
        midpoint_edge,
        end_vertex,
    })
}

fn sort_records(records: &mut [GeodesicRecord]) {
    records.sort_by(|a, b| {
        a.squared_length
            .cmp_real(&b.squared_length)
            .expect("same field")
            .then_with(|| a.developed_endpoint().cmp_lex(b.developed_endpoint()))
    });
}

/// Traces every primitive lattice endpoint in the start sector.
pub fn enumerate_geodesics(
    spec: &SolidSpec,
    start: &StartFlag,
    max_sq_length: &BigRational,
) -> Result<Vec<GeodesicRecord>, EnumerationError> {
    let lattice =
        LatticeKind::of_solid(spec.kind).ok_or(EnumerationError::UnsupportedSolid(spec.kind))?;
    let endpoints = primitive_endpoints(lattice, max_sq_length);
    let mut records = endpoints
        .par_iter()
        .map(|&e| {
            let class = midpoint_class(lattice, e)?;
            make_record(spec, start, &e.displacement(lattice), Some(e), Some(class))
        })
        .collect::<Result<Vec<_>, _>>()?;
    sort_records(&mut records);
    Ok(records)
}

/// A face placed in the developed plane together with the directions from
/// the origin that reach it through the same chain of edges.
struct Corridor {
    face: usize,
    entry_edge: Option<usize>,
    /// Developed corners.
    corners: Vec<PlanarPoint>,
    /// Wedge of directions from `lo` counterclockwise to `hi`.
    lo: PlanarPoint,
    hi: PlanarPoint,
}

fn in_wedge(z: &PlanarPoint, lo: &PlanarPoint, hi: &PlanarPoint) -> bool {
    orient_same(lo, z) != Sign::Negative && orient_same(z, hi) != Sign::Negative
}

/// Exact squared distance from the origin to the unit-length segment `ab`.
fn segment_distance_sq(a: &PlanarPoint, b: &PlanarPoint) -> ExactScalar {
    let e = b - a;
    let t = (-a).dot(&e);
    let one = ExactScalar::one(a.field());
    if t.sign().expect("real") != Sign::Positive {
        a.norm_sq()
    } else if t.cmp_real(&one).expect("real").is_ge() {
        b.norm_sq()
    } else {
        &a.norm_sq() - &(&t * &t)
    }
}

fn within(x: &ExactScalar, bound: &ExactScalar) -> bool {
    x.cmp_real(bound).expect("real").is_le()
}

/// Developed vertex images reachable by a straight segment from the start
/// corner, within the bound, in deterministic order.
fn candidate_points(spec: &SolidSpec, start: &StartFlag, bound: &ExactScalar) -> Vec<PlanarPoint> {
    let n = spec.arity();
    let frame = start.corner_frame(spec);
    let root = Corridor {
        face: start.face,
        entry_edge: None,
        lo: frame.apply(spec.corner(start.face, start.corner + 1)),
        hi: frame.apply(spec.corner(start.face, start.corner + n - 1)),
        corners: (0..n)
            .map(|k| frame.apply(spec.corner(start.face, k)))
            .collect(),
    };
    let mut seen: HashSet<PlanarPoint> = HashSet::new();
    let mut found: Vec<PlanarPoint> = Vec::new();
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        let expanded: Vec<(Vec<PlanarPoint>, Vec<Corridor>)> = frontier
            .par_iter()
            .map(|c| {
                let corners = &c.corners;
                let points = corners
                    .iter()
                    .filter(|z| {
                        !z.is_zero() && within(&z.norm_sq(), bound) && in_wedge(z, &c.lo, &c.hi)
                    })
                    .cloned()
                    .collect();
                let mut children = Vec::new();
                for k in 0..n {
                    if Some(k) == c.entry_edge {
                        continue;
                    }
                    let (a, b) = (&corners[k], &corners[(k + 1) % n]);
                    if orient_same(a, b) != Sign::Positive
                        || !within(&segment_distance_sq(a, b), bound)
                    {
                        continue;
                    }
                    let lo = if orient_same(&c.lo, a) == Sign::Positive {
                        a
                    } else {
                        &c.lo
                    };
                    let hi = if orient_same(b, &c.hi) == Sign::Positive {
                        b
                    } else {
                        &c.hi
                    };
                    if orient_same(lo, hi) != Sign::Positive {
                        continue;
                    }
                    let (g, corners) = glued_corners(spec, c.face, k, corners);
                    children.push(Corridor {
                        face: g.face,
                        entry_edge: Some(g.index),
                        corners,
                        lo: lo.clone(),
                        hi: hi.clone(),
                    });
                }
                (points, children)
            })
            .collect();
        frontier = Vec::new();
        for (points, children) in expanded {
            for z in points {
                if seen.insert(z.clone()) {
                    found.push(z);
                }
            }
            frontier.extend(children);
        }
    }
    found
}

/// Breadth-first search of developed face placements from the start corner.
/// Every developed vertex image in reach is verified by an exact re-trace.
pub fn search_unfolding_tree(
    spec: &SolidSpec,
    start: &StartFlag,
    max_sq_length: &BigRational,
) -> Result<Vec<GeodesicRecord>, EnumerationError> {
    let bound = ExactScalar::from_rational(spec.field(), max_sq_length.clone());
    let candidates = candidate_points(spec, start, &bound);
    if candidates.is_empty() {
        return Err(EnumerationError::BoundTooSmall(max_sq_length.to_string()));
    }
    let lattice = LatticeKind::of_solid(spec.kind);
    let mut records: Vec<GeodesicRecord> = candidates
        .par_iter()
        .filter_map(|z| {
            let g = trace(spec, start, z).ok()?;
            if g.end_vertex().is_none() || &g.developed_endpoint != z {
                return None;
            }
            let endpoint = lattice.and_then(|l| LatticeEndpoint::from_displacement(l, z));
            let class = match (lattice, endpoint) {
                (Some(l), Some(e)) => midpoint_class(l, e).ok(),
                _ => None,
            };
            Some(make_record(spec, start, z, endpoint, class))
        })
        .collect::<Result<Vec<_>, _>>()?;
    sort_records(&mut records);
    Ok(records)
}

/// Outcome of [`search_escalating`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscalatedSearch {
    pub records: Vec<GeodesicRecord>,
    /// Bound of the last search run.
    pub bound_reached: BigRational,
    pub found_self_geodesic: bool,
}

/// Searches with doubling bounds, starting at `initial`, until some record
/// returns to the start vertex or the bound would exceed `cap`.
pub fn search_escalating(
    spec: &SolidSpec,
    start: &StartFlag,
    initial: &BigRational,
    cap: &BigRational,
) -> Result<EscalatedSearch, EnumerationError> {
    let mut bound = initial.clone();
    loop {
        let records = match search_unfolding_tree(spec, start, &bound) {
            Ok(r) => r,
            Err(EnumerationError::BoundTooSmall(_)) => Vec::new(),
            Err(e) => return Err(e),
        };
        let found = records.iter().any(GeodesicRecord::is_self_geodesic);
        let next = &bound * integer(2);
        if found || &next > cap {
            return Ok(EscalatedSearch {
                records,
                bound_reached: bound,
                found_self_geodesic: found,
            });
        }
        bound = next;
    }
}

/// Checks that a record's midpoint sits where its class says: at a face
/// center, or at an edge midpoint whose developed direction is the class tag.
pub fn midpoint_coherent(spec: &SolidSpec, record: &GeodesicRecord) -> bool {
    let Some(class) = record.midpoint_class else {
        return false;
    };
    let m = &record.midpoint;
    match (class, record.midpoint_edge) {
        (MidpointClass::FaceCenter, None) => m.point == spec.face_center(),
        (MidpointClass::EdgeMidpoint(dir), Some(k)) => {
            if m.point != spec.edge_midpoint(m.face, k) {
                return false;
            }
            let Some(lattice) = LatticeKind::of_solid(spec.kind) else {
                return false;
            };
            let Ok(half) = trace(spec, &record.start, &record.developed_endpoint().half()) else {
                return false;
            };
            let dev = develop(spec, &half);
            let place = &dev.placements.last().expect("at least one leg").isometry;
            if place.apply(&m.point) != dev.endpoint {
                return false;
            }
            let along = place.apply_vector(&edge_direction(spec.kind, k));
            orient_same(&along, &lattice.basis_vector(dir)) == Sign::Zero
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_solid;

    fn ep(v: &[(i64, i64)]) -> Vec<LatticeEndpoint> {
        v.iter().map(|&(p, q)| LatticeEndpoint::new(p, q)).collect()
    }

    #[test]
    fn square_bound_five() {
        assert_eq!(
            primitive_endpoints(LatticeKind::Square, &integer(5)),
            ep(&[(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)])
        );
        assert!(!primitive_endpoints(LatticeKind::Square, &integer(100))
            .contains(&LatticeEndpoint::new(2, 2)));
        assert!(primitive_endpoints(LatticeKind::Square, &integer(0)).is_empty());
    }

    #[test]
    fn classes() {
        let sq = LatticeKind::Square;
        let tri = LatticeKind::Triangular;
        assert_eq!(
            midpoint_class(sq, LatticeEndpoint::new(1, 1)),
            Ok(MidpointClass::FaceCenter)
        );
        assert_eq!(
            midpoint_class(sq, LatticeEndpoint::new(2, 3)),
            Ok(MidpointClass::EdgeMidpoint(EdgeDirection::Vertical))
        );
        assert_eq!(
            midpoint_class(sq, LatticeEndpoint::new(3, 2)),
            Ok(MidpointClass::EdgeMidpoint(EdgeDirection::Horizontal))
        );
        assert_eq!(
            midpoint_class(tri, LatticeEndpoint::new(1, 2)),
            Ok(MidpointClass::EdgeMidpoint(EdgeDirection::V1))
        );
        assert_eq!(
            midpoint_class(tri, LatticeEndpoint::new(2, 1)),
            Ok(MidpointClass::EdgeMidpoint(EdgeDirection::V2))
        );
        assert_eq!(
            midpoint_class(tri, LatticeEndpoint::new(1, 1)),
            Ok(MidpointClass::EdgeMidpoint(EdgeDirection::V3))
        );
        assert_eq!(
            midpoint_class(sq, LatticeEndpoint::new(2, 4)),
            Err(EnumerationError::NotPrimitive(LatticeEndpoint::new(2, 4)))
        );
    }

    #[test]
    fn lattice_round_trip() {
        for lattice in [LatticeKind::Square, LatticeKind::Triangular] {
            for e in primitive_endpoints(lattice, &integer(50)) {
                assert_eq!(
                    LatticeEndpoint::from_displacement(lattice, &e.displacement(lattice)),
                    Some(e)
                );
                assert_eq!(
                    e.displacement(lattice).norm_sq(),
                    ExactScalar::from_rational(
                        e.displacement(lattice).field(),
                        integer(lattice.norm(e.p, e.q)),
                    )
                );
            }
        }
    }

    #[test]
    fn cube_small_bound() {
        let cube = build_solid(SolidKind::Cube);
        let start = StartFlag::default_for(&cube);
        let records = enumerate_geodesics(&cube, &start, &integer(2)).unwrap();
        let ends: Vec<_> = records.iter().map(|r| r.endpoint.unwrap()).collect();
        assert_eq!(ends, ep(&[(0, 1), (1, 0), (1, 1)]));
        assert!(records.iter().all(|r| !r.is_self_geodesic()));
        assert!(records.iter().all(|r| midpoint_coherent(&cube, r)));
        let diag = &records[2];
        assert_eq!(diag.midpoint_class, Some(MidpointClass::FaceCenter));
        assert_eq!(diag.midpoint.face, start.face);
    }

    #[test]
    fn tetra_one_one() {
        let tetra = build_solid(SolidKind::Tetrahedron);
        let start = StartFlag::default_for(&tetra);
        let records = enumerate_geodesics(&tetra, &start, &integer(3)).unwrap();
        let r = records
            .iter()
            .find(|r| r.endpoint == Some(LatticeEndpoint::new(1, 1)))
            .unwrap();
        assert_eq!(
            r.midpoint_class,
            Some(MidpointClass::EdgeMidpoint(EdgeDirection::V3))
        );
        assert!(midpoint_coherent(&tetra, r));
    }

    #[test]
    fn dodecahedron_is_not_a_lattice_solid() {
        let d = build_solid(SolidKind::Dodecahedron);
        assert_eq!(
            enumerate_geodesics(&d, &StartFlag::default_for(&d), &integer(4)),
            Err(EnumerationError::UnsupportedSolid(SolidKind::Dodecahedron))
        );
    }

    #[test]
    fn tree_search_matches_lattice_on_cube() {
        let cube = build_solid(SolidKind::Cube);
        let start = StartFlag::default_for(&cube);
        let a = enumerate_geodesics(&cube, &start, &integer(16)).unwrap();
        let b = search_unfolding_tree(&cube, &start, &integer(16)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tiny_bound_has_no_candidates() {
        let cube = build_solid(SolidKind::Cube);
        let start = StartFlag::default_for(&cube);
        assert!(matches!(
            search_unfolding_tree(&cube, &start, &BigRational::new(1.into(), 2.into())),
            Err(EnumerationError::BoundTooSmall(_))
        ));
    }
}
