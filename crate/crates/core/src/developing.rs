//! The developing map and the exact geodesic tracer.
//!
//! A trace starts at a corner and follows a straight segment through the
//! developed plane, one face at a time. The developed frame of a start flag
//! puts the start corner at the origin with the corner's outgoing edge along
//! the positive x-axis, so the corner's sector is the closed angle from the
//! x-axis to the interior angle. For corner 0 this frame is the start chart.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::point::{orient_same, PlanarPoint};
use crate::scalar::{ExactScalar, FieldKind, Sign};
use crate::surface::{edge_direction, FaceIndex, SolidSpec, SurfaceError, SurfacePoint};

/// `x ↦ rotation·x + translation` on complex chart coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Isometry2 {
    pub rotation: PlanarPoint,
    pub translation: PlanarPoint,
}

impl Isometry2 {
    pub fn identity(field: FieldKind) -> Self {
        Self {
            rotation: PlanarPoint::one(field),
            translation: PlanarPoint::zero(field),
        }
    }

    pub fn apply(&self, p: &PlanarPoint) -> PlanarPoint {
        &self.rotation.cmul(p) + &self.translation
    }

    pub fn apply_vector(&self, v: &PlanarPoint) -> PlanarPoint {
        self.rotation.cmul(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry2) -> Isometry2 {
        Isometry2 {
            rotation: self.rotation.cmul(&other.rotation),
            translation: self.apply(&other.translation),
        }
    }

    pub fn inverse(&self) -> Isometry2 {
        let rot = self.rotation.conj();
        Isometry2 {
            translation: -&rot.cmul(&self.translation),
            rotation: rot,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.rotation == PlanarPoint::one(self.rotation.field())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error(transparent)]
    BadId(#[from] SurfaceError),
    #[error("displacement is zero")]
    ZeroDisplacement,
    #[error("displacement lives in {found:?}, the solid's charts in {expected:?}")]
    FieldMismatch {
        expected: FieldKind,
        found: FieldKind,
    },
    #[error("direction leaves the sector of the start corner")]
    SectorViolation,
    #[error("segment passes through vertex {vertex} at t = {t}")]
    VertexHit { t: Box<ExactScalar>, vertex: usize },
    #[error("geodesic does not end at a vertex")]
    OpenEnded,
}

/// A corner to start from: vertex `vertex` seen as corner `corner` of face `face`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StartFlag {
    pub vertex: usize,
    pub face: usize,
    pub corner: usize,
}

impl StartFlag {
    pub fn new(spec: &SolidSpec, face: usize, corner: usize) -> Result<Self, SurfaceError> {
        spec.corner_point(face, corner)?;
        Ok(Self {
            vertex: spec.vertex_at(face, corner),
            face,
            corner,
        })
    }

    /// Corner 0 of face 0.
    pub fn default_for(spec: &SolidSpec) -> Self {
        Self::new(spec, 0, 0).expect("every solid has face 0")
    }

    /// Placement of the start chart in the developed frame of this corner.
    pub fn corner_frame(&self, spec: &SolidSpec) -> Isometry2 {
        let rot = edge_direction(spec.kind, self.corner).conj();
        Isometry2 {
            translation: -&rot.cmul(spec.corner(self.face, self.corner)),
            rotation: rot,
        }
    }

    fn check(&self, spec: &SolidSpec) -> Result<(), SurfaceError> {
        spec.corner_point(self.face, self.corner)?;
        if spec.vertex_at(self.face, self.corner) != self.vertex {
            return Err(SurfaceError::BadVertex(self.vertex));
        }
        Ok(())
    }
}

/// One straight piece of a geodesic inside a face, in that face's chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leg {
    pub face: usize,
    pub entry: PlanarPoint,
    pub exit: PlanarPoint,
    /// Edge crossed on entry; `None` when the leg starts at the start corner.
    pub entry_edge: Option<usize>,
    /// Edge crossed on exit; `None` when the leg ends at the end point.
    pub exit_edge: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum GeodesicEnd {
    /// Ends at corner `corner` of face `face`, which is vertex `vertex`.
    Vertex {
        vertex: usize,
        face: usize,
        corner: usize,
    },
    /// Ends elsewhere; `edge` is set when the end point lies on that edge of its face.
    Open {
        point: SurfacePoint,
        edge: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceGeodesic {
    pub start: StartFlag,
    pub legs: Vec<Leg>,
    pub end: GeodesicEnd,
    /// End point in the developed frame of `start`.
    pub developed_endpoint: PlanarPoint,
    pub squared_length: ExactScalar,
    /// The geodesic runs along an edge of the solid; its leg is assigned to
    /// the face on the left of the travel direction.
    pub edge_running: bool,
}

impl SurfaceGeodesic {
    pub fn end_vertex(&self) -> Option<usize> {
        match self.end {
            GeodesicEnd::Vertex { vertex, .. } => Some(vertex),
            GeodesicEnd::Open { .. } => None,
        }
    }

    pub fn face_sequence(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l.face).collect()
    }
}

/// A face placed in the developed plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub face: usize,
    /// Chart of `face` → developed frame.
    pub isometry: Isometry2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DevelopedSegment {
    pub placements: Vec<Placement>,
    pub endpoint: PlanarPoint,
    pub midpoint: PlanarPoint,
}

/// Isometry carrying the chart of the face glued along `edge` of `face` into
/// the chart of `face`, matching the shared edge pointwise.
pub fn transition(spec: &SolidSpec, face: usize, edge: usize) -> Result<Isometry2, SurfaceError> {
    let other = spec.try_glue(face, edge)?;
    Ok(transition_unchecked(
        spec,
        face,
        edge,
        other.face,
        other.index,
    ))
}

fn transition_unchecked(
    spec: &SolidSpec,
    face: usize,
    edge: usize,
    other: usize,
    other_edge: usize,
) -> Isometry2 {
    // the neighbour's edge direction must land on minus ours
    let ours = edge_direction(spec.kind, edge);
    let theirs = edge_direction(spec.kind, other_edge);
    let rotation = (-&ours).cmul(&theirs.conj());
    // the neighbour's edge starts where ours ends
    let translation = spec.corner(face, edge + 1) - &rotation.cmul(spec.corner(other, other_edge));
    Isometry2 {
        rotation,
        translation,
    }
}

fn next_placement(
    spec: &SolidSpec,
    place: &Isometry2,
    face: usize,
    edge: usize,
) -> (usize, usize, Isometry2) {
    let g = spec.glue(face, edge);
    let t = transition_unchecked(spec, face, edge, g.face, g.index);
    (g.face, g.index, place.compose(&t))
}

/// Follows the straight segment from the start corner along `displacement`
/// (given in the start flag's developed frame).
pub fn trace(
    spec: &SolidSpec,
    start: &StartFlag,
    displacement: &PlanarPoint,
) -> Result<SurfaceGeodesic, TraceError> {
    start.check(spec)?;
    if displacement.field() != spec.field() {
        return Err(TraceError::FieldMismatch {
            expected: spec.field(),
            found: displacement.field(),
        });
    }
    if displacement.is_zero() {
        return Err(TraceError::ZeroDisplacement);
    }
    let n = spec.arity();
    let d = displacement;
    let frame = start.corner_frame(spec);
    let low = frame.apply(spec.corner(start.face, start.corner + 1));
    let high = frame.apply(spec.corner(start.face, start.corner + n - 1));
    let s_low = orient_same(&low, d);
    let s_high = orient_same(d, &high);
    if s_low == Sign::Negative || s_high == Sign::Negative {
        return Err(TraceError::SectorViolation);
    }
    let dd = d.norm_sq();
    if s_low == Sign::Zero {
        return edge_run(spec, start, d, &dd, start.face, start.corner, &frame);
    }
    if s_high == Sign::Zero {
        // the face on the left of this direction is the neighbour across the incoming edge
        let (g, gi, place) = next_placement(spec, &frame, start.face, start.corner + n - 1);
        return edge_run(spec, start, d, &dd, g, gi, &place);
    }

    let mut legs = Vec::new();
    let mut face = start.face;
    let mut q: Vec<PlanarPoint> = (0..n).map(|k| frame.apply(spec.corner(face, k))).collect();
    let mut s: Vec<Sign> = q.iter().map(|qk| orient_same(d, qk)).collect();
    let mut entry = spec.corner(face, start.corner).clone();
    let mut entry_edge: Option<usize> = None;
    let mut start_corner = Some(start.corner);
    loop {
        let mut leg = Leg {
            face,
            entry: entry.clone(),
            exit: entry.clone(),
            entry_edge,
            exit_edge: None,
        };

        if let Some(j) = (0..n).find(|&k| s[k] == Sign::Zero && Some(k) != start_corner) {
            // the line leaves through a corner
            let qj = &q[j];
            let vertex = spec.vertex_at(face, j);
            if qj == d {
                leg.exit = spec.corner(face, j).clone();
                legs.push(leg);
                return Ok(finish(
                    start,
                    legs,
                    GeodesicEnd::Vertex {
                        vertex,
                        face,
                        corner: j,
                    },
                    d,
                    dd,
                    false,
                ));
            }
            if (qj - d).dot(d).sign().expect("real") == Sign::Positive {
                let p = placement_from_corners(&q).inverse().apply(d);
                leg.exit = p.clone();
                legs.push(leg);
                let end = GeodesicEnd::Open {
                    point: SurfacePoint { face, point: p },
                    edge: None,
                };
                return Ok(finish(start, legs, end, d, dd, false));
            }
            let t = &qj.dot(d) * &dd.inv().expect("nonzero");
            return Err(TraceError::VertexHit {
                t: Box::new(t),
                vertex,
            });
        }

        let k = (0..n)
            .find(|&k| s[k] == Sign::Negative && s[(k + 1) % n] == Sign::Positive)
            .expect("a line through a convex polygon leaves through an edge");
        let a = &q[k];
        let e = &q[(k + 1) % n] - a;
        let side = orient_same(&e, &(d - a));
        if side != Sign::Negative {
            let p = placement_from_corners(&q).inverse().apply(d);
            leg.exit = p.clone();
            legs.push(leg);
            let end = GeodesicEnd::Open {
                point: SurfacePoint { face, point: p },
                edge: (side == Sign::Zero).then_some(k),
            };
            return Ok(finish(start, legs, end, d, dd, false));
        }
        // the crossing point is a + u·e, at fraction u along edge k
        let u = &a.cross(d) * &d.cross(&e).inv().expect("the line crosses the edge");
        let dir = edge_direction(spec.kind, k);
        leg.exit = spec.corner(face, k) + &dir.scale(&u);
        leg.exit_edge = Some(k);
        legs.push(leg);
        let (g, next_q) = glued_corners(spec, face, k, &q);
        let rest = &ExactScalar::one(spec.field()) - &u;
        entry = spec.corner(g.face, g.index) + &edge_direction(spec.kind, g.index).scale(&rest);
        s = (0..n)
            .map(|m| match (m + n - g.index) % n {
                0 => Sign::Positive,
                1 => Sign::Negative,
                _ => orient_same(d, &next_q[m]),
            })
            .collect();
        q = next_q;
        face = g.face;
        entry_edge = Some(g.index);
        start_corner = None;
    }
}

/// Chart placement of a face whose developed corners are `q`; chart corner 0
/// is the origin and chart corner 1 is `1`.
fn placement_from_corners(q: &[PlanarPoint]) -> Isometry2 {
    Isometry2 {
        rotation: &q[1] - &q[0],
        translation: q[0].clone(),
    }
}

/// Developed corners of the face glued along edge `k` of a face with
/// developed corners `q`, indexed by that face's own corner numbers.
pub(crate) fn glued_corners(
    spec: &SolidSpec,
    face: usize,
    k: usize,
    q: &[PlanarPoint],
) -> (FaceIndex, Vec<PlanarPoint>) {
    let n = q.len();
    let g = spec.glue(face, k);
    let mut out = vec![PlanarPoint::zero(spec.field()); n];
    out[g.index] = q[(k + 1) % n].clone();
    out[(g.index + 1) % n] = q[k].clone();
    let rotation = (&q[k] - &q[(k + 1) % n]).cmul(&edge_direction(spec.kind, g.index).conj());
    for m in 1..n - 1 {
        let j = (g.index + m) % n;
        let next = &out[j] + &rotation.cmul(&edge_direction(spec.kind, j));
        out[(j + 1) % n] = next;
    }
    (g, out)
}

/// A segment along edge `corner → corner + 1` of `face`, placed by `place`.
fn edge_run(
    spec: &SolidSpec,
    start: &StartFlag,
    d: &PlanarPoint,
    dd: &ExactScalar,
    face: usize,
    corner: usize,
    place: &Isometry2,
) -> Result<SurfaceGeodesic, TraceError> {
    let far = place.apply(spec.corner(face, corner + 1));
    let mut leg = Leg {
        face,
        entry: spec.corner(face, corner).clone(),
        exit: spec.corner(face, corner + 1).clone(),
        entry_edge: None,
        exit_edge: None,
    };
    if &far == d {
        let end = GeodesicEnd::Vertex {
            vertex: spec.vertex_at(face, corner + 1),
            face,
            corner: (corner + 1) % spec.arity(),
        };
        return Ok(finish(start, vec![leg], end, d, dd.clone(), true));
    }
    let one = ExactScalar::one(spec.field());
    if dd.cmp_real(&one).expect("real") == std::cmp::Ordering::Less {
        let p = place.inverse().apply(d);
        leg.exit = p.clone();
        let end = GeodesicEnd::Open {
            point: SurfacePoint { face, point: p },
            edge: Some(corner),
        };
        return Ok(finish(start, vec![leg], end, d, dd.clone(), true));
    }
    let t = &far.dot(d) * &dd.inv().expect("nonzero");
    Err(TraceError::VertexHit {
        t: Box::new(t),
        vertex: spec.vertex_at(face, corner + 1),
    })
}

fn finish(
    start: &StartFlag,
    legs: Vec<Leg>,
    end: GeodesicEnd,
    d: &PlanarPoint,
    dd: ExactScalar,
    edge_running: bool,
) -> SurfaceGeodesic {
    SurfaceGeodesic {
        start: *start,
        legs,
        end,
        developed_endpoint: d.clone(),
        squared_length: dd,
        edge_running,
    }
}

/// Places every leg's face in the developed frame of the start flag.
pub fn develop(spec: &SolidSpec, geodesic: &SurfaceGeodesic) -> DevelopedSegment {
    let n = spec.arity();
    let frame = geodesic.start.corner_frame(spec);
    let mut placements: Vec<Placement> = Vec::with_capacity(geodesic.legs.len());
    for (i, leg) in geodesic.legs.iter().enumerate() {
        let isometry = if i == 0 {
            if leg.face == geodesic.start.face {
                frame.clone()
            } else {
                next_placement(
                    spec,
                    &frame,
                    geodesic.start.face,
                    geodesic.start.corner + n - 1,
                )
                .2
            }
        } else {
            let prev = &geodesic.legs[i - 1];
            let edge = prev.exit_edge.expect("inner legs exit through an edge");
            next_placement(spec, &placements[i - 1].isometry, prev.face, edge).2
        };
        placements.push(Placement {
            face: leg.face,
            isometry,
        });
    }
    let last = placements.last().expect("at least one leg");
    let endpoint = last
        .isometry
        .apply(&geodesic.legs.last().expect("at least one leg").exit);
    DevelopedSegment {
        midpoint: endpoint.half(),
        placements,
        endpoint,
    }
}

/// The same geodesic traversed from its end vertex back to its start.
///
/// The reversed start flag keeps the side convention of the original: a
/// geodesic whose start flag is its leg's face stays that way, and one that
/// starts from the face on the right of an edge-running leg reverses to the
/// face on the right as well.
pub fn reverse(spec: &SolidSpec, g: &SurfaceGeodesic) -> Result<SurfaceGeodesic, TraceError> {
    let GeodesicEnd::Vertex {
        vertex: end_vertex,
        face: end_face,
        corner: end_corner,
    } = g.end
    else {
        return Err(TraceError::OpenEnded);
    };
    let developed = develop(spec, g);
    let n = spec.arity();

    let (legs, end, flag_face, flag_corner, flag_place) = if g.edge_running {
        let leg = &g.legs[0];
        let a = spec
            .corner_of_vertex(leg.face, g.start.vertex)
            .expect("leg starts at the start vertex");
        let (h, b, h_place) = next_placement(spec, &developed.placements[0].isometry, leg.face, a);
        let rev_leg = Leg {
            face: h,
            entry: spec.corner(h, b).clone(),
            exit: spec.corner(h, b + 1).clone(),
            entry_edge: None,
            exit_edge: None,
        };
        let end = GeodesicEnd::Vertex {
            vertex: g.start.vertex,
            face: h,
            corner: (b + 1) % n,
        };
        if g.start.face == leg.face {
            (vec![rev_leg], end, h, b, h_place)
        } else {
            (
                vec![rev_leg],
                end,
                leg.face,
                end_corner,
                developed.placements[0].isometry.clone(),
            )
        }
    } else {
        let legs: Vec<Leg> = g
            .legs
            .iter()
            .rev()
            .map(|l| Leg {
                face: l.face,
                entry: l.exit.clone(),
                exit: l.entry.clone(),
                entry_edge: l.exit_edge,
                exit_edge: l.entry_edge,
            })
            .collect();
        let end = GeodesicEnd::Vertex {
            vertex: g.start.vertex,
            face: g.start.face,
            corner: g.start.corner,
        };
        let place = developed
            .placements
            .last()
            .expect("at least one leg")
            .isometry
            .clone();
        (legs, end, end_face, end_corner, place)
    };

    let start = StartFlag {
        vertex: end_vertex,
        face: flag_face,
        corner: flag_corner,
    };
    // −d, brought into the chart of the flag face, then into the new corner frame
    let in_chart = flag_place.rotation.conj().cmul(&-&g.developed_endpoint);
    let developed_endpoint = edge_direction(spec.kind, flag_corner)
        .conj()
        .cmul(&in_chart);
    Ok(SurfaceGeodesic {
        start,
        legs,
        end,
        developed_endpoint,
        squared_length: g.squared_length.clone(),
        edge_running: g.edge_running,
    })
}
