//! Rotational symmetries of the solids, acting intrinsically on face charts,
//! and the order-2 witness that swaps the two ends of a geodesic.

use std::collections::VecDeque;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::developing::{
    reverse, transition, GeodesicEnd, Isometry2, Leg, StartFlag, SurfaceGeodesic,
};
use crate::enumeration::{
    enumerate_geodesics, midpoint_coherent, EnumerationError, GeodesicRecord,
};
use crate::point::PlanarPoint;
use crate::surface::{chart_corner, edge_direction, FaceIndex, SolidKind, SolidSpec, SurfacePoint};

/// An orientation-preserving symmetry of a solid. Corner `k` of face `f` goes
/// to corner `k + o` of face `g`, where `face_map[f] = (g, o)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub solid: SolidKind,
    pub face_map: Vec<FaceIndex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("automorphism of the {found} applied to the {expected}")]
    IncompatibleSolid {
        expected: SolidKind,
        found: SolidKind,
    },
    #[error("{0} is not covered by the lattice argument")]
    UnsupportedSolid(SolidKind),
    #[error("no symmetry witness: {0}")]
    NoWitness(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

impl Automorphism {
    pub fn identity(spec: &SolidSpec) -> Self {
        Self {
            solid: spec.kind,
            face_map: (0..spec.face_count())
                .map(|f| FaceIndex { face: f, index: 0 })
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.face_map
            .iter()
            .enumerate()
            .all(|(f, m)| m.face == f && m.index == 0)
    }

    fn arity(&self) -> usize {
        self.solid.arity()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let n = self.arity();
        let face_map = other
            .face_map
            .iter()
            .map(|m| {
                let second = self.face_map[m.face];
                FaceIndex {
                    face: second.face,
                    index: (m.index + second.index) % n,
                }
            })
            .collect();
        Automorphism {
            solid: self.solid,
            face_map,
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let n = self.arity();
        let mut face_map = vec![FaceIndex { face: 0, index: 0 }; self.face_map.len()];
        for (f, m) in self.face_map.iter().enumerate() {
            face_map[m.face] = FaceIndex {
                face: f,
                index: (n - m.index) % n,
            };
        }
        Automorphism {
            solid: self.solid,
            face_map,
        }
    }

    /// Smallest `k ≥ 1` with `self^k = id`.
    pub fn order(&self) -> usize {
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = self.compose(&power);
            k += 1;
        }
        k
    }

    /// Chart of `face` → chart of its image face.
    pub fn chart_isometry(&self, face: usize) -> Isometry2 {
        let o = self.face_map[face].index;
        Isometry2 {
            rotation: edge_direction(self.solid, o),
            translation: chart_corner(self.solid, o),
        }
    }

    pub fn map_flag(&self, face: usize, index: usize) -> FaceIndex {
        let m = self.face_map[face];
        FaceIndex {
            face: m.face,
            index: (index + m.index) % self.arity(),
        }
    }

    pub fn map_vertex(&self, spec: &SolidSpec, vertex: usize) -> usize {
        let flag = spec.vertex_cycles[vertex][0];
        let image = self.map_flag(flag.face, flag.index);
        spec.vertex_at(image.face, image.index)
    }

    pub fn map_point(&self, p: &SurfacePoint) -> SurfacePoint {
        SurfacePoint {
            face: self.face_map[p.face].face,
            point: self.chart_isometry(p.face).apply(&p.point),
        }
    }
}

/// Extends `face 0 ↦ image` to a full automorphism if the gluings allow it.
fn extend(spec: &SolidSpec, image: FaceIndex) -> Option<Automorphism> {
    let n = spec.arity();
    let mut map: Vec<Option<FaceIndex>> = vec![None; spec.face_count()];
    map[0] = Some(image);
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let m = map[f].expect("queued faces are mapped");
        for k in 0..n {
            let across = spec.glue(f, k);
            let target = spec.glue(m.face, k + m.index);
            let want = FaceIndex {
                face: target.face,
                index: (target.index + n - across.index) % n,
            };
            match map[across.face] {
                Some(existing) if existing != want => return None,
                Some(_) => {}
                None => {
                    map[across.face] = Some(want);
                    queue.push_back(across.face);
                }
            }
        }
    }
    let face_map: Option<Vec<FaceIndex>> = map.into_iter().collect();
    Some(Automorphism {
        solid: spec.kind,
        face_map: face_map?,
    })
}

/// All orientation-preserving symmetries, identity first.
pub fn rotation_group(spec: &SolidSpec) -> Vec<Automorphism> {
    (0..spec.face_count())
        .flat_map(|g| (0..spec.arity()).map(move |o| FaceIndex { face: g, index: o }))
        .filter_map(|image| extend(spec, image))
        .collect()
}

/// Maps every leg, the start flag and the end of `g` through `aut`. The
/// developed endpoint is unchanged because corner frames map to corner frames.
pub fn apply_automorphism(
    spec: &SolidSpec,
    aut: &Automorphism,
    g: &SurfaceGeodesic,
) -> Result<SurfaceGeodesic, SymmetryError> {
    if aut.solid != spec.kind {
        return Err(SymmetryError::IncompatibleSolid {
            expected: spec.kind,
            found: aut.solid,
        });
    }
    let n = spec.arity();
    let shift = |face: usize, e: Option<usize>| e.map(|k| (k + aut.face_map[face].index) % n);
    let legs = g
        .legs
        .iter()
        .map(|l| {
            let iso = aut.chart_isometry(l.face);
            Leg {
                face: aut.face_map[l.face].face,
                entry: iso.apply(&l.entry),
                exit: iso.apply(&l.exit),
                entry_edge: shift(l.face, l.entry_edge),
                exit_edge: shift(l.face, l.exit_edge),
            }
        })
        .collect();
    let flag = aut.map_flag(g.start.face, g.start.corner);
    let start = StartFlag {
        vertex: aut.map_vertex(spec, g.start.vertex),
        face: flag.face,
        corner: flag.index,
    };
    let end = match &g.end {
        GeodesicEnd::Vertex {
            vertex,
            face,
            corner,
        } => {
            let m = aut.map_flag(*face, *corner);
            GeodesicEnd::Vertex {
                vertex: aut.map_vertex(spec, *vertex),
                face: m.face,
                corner: m.index,
            }
        }
        GeodesicEnd::Open { point, edge } => GeodesicEnd::Open {
            point: aut.map_point(point),
            edge: shift(point.face, *edge),
        },
    };
    Ok(SurfaceGeodesic {
        start,
        legs,
        end,
        developed_endpoint: g.developed_endpoint.clone(),
        squared_length: g.squared_length.clone(),
        edge_running: g.edge_running,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixedSite {
    FaceCenter {
        face: usize,
    },
    /// Edge `edge` of `face`, joining vertices `vertices`.
    EdgeMidpoint {
        face: usize,
        edge: usize,
        vertices: (usize, usize),
    },
    Vertex {
        vertex: usize,
    },
}

impl FixedSite {
    pub fn surface_point(&self, spec: &SolidSpec) -> SurfacePoint {
        match *self {
            FixedSite::FaceCenter { face } => SurfacePoint {
                face,
                point: spec.face_center(),
            },
            FixedSite::EdgeMidpoint { face, edge, .. } => SurfacePoint {
                face,
                point: spec.edge_midpoint(face, edge),
            },
            FixedSite::Vertex { vertex } => {
                let flag = spec.vertex_cycles[vertex][0];
                SurfacePoint {
                    face: flag.face,
                    point: spec.corner(flag.face, flag.index).clone(),
                }
            }
        }
    }
}

/// Fixed points of a non-identity automorphism. A rotation of the surface
/// can only fix face centers, edge midpoints and vertices.
pub fn fixed_sites(spec: &SolidSpec, aut: &Automorphism) -> Vec<FixedSite> {
    let n = spec.arity();
    let mut out = Vec::new();
    for (f, m) in aut.face_map.iter().enumerate() {
        if m.face == f && m.index != 0 {
            out.push(FixedSite::FaceCenter { face: f });
        }
    }
    for f in 0..spec.face_count() {
        for k in 0..n {
            let other = spec.glue(f, k);
            if (other.face, other.index) < (f, k) {
                continue;
            }
            if aut.map_flag(f, k) == other {
                out.push(FixedSite::EdgeMidpoint {
                    face: f,
                    edge: k,
                    vertices: spec.edge_vertices(f, k),
                });
            }
        }
    }
    for v in 0..spec.vertex_count {
        if aut.map_vertex(spec, v) == v {
            out.push(FixedSite::Vertex { vertex: v });
        }
    }
    out
}

/// Whether `aut` fixes `point` (on edge `edge` of its face, if any) and acts
/// there as a half-turn, i.e. with derivative −identity.
pub fn is_half_turn_at(
    spec: &SolidSpec,
    aut: &Automorphism,
    point: &SurfacePoint,
    edge: Option<usize>,
) -> bool {
    let f = point.face;
    let image = aut.face_map[f].face;
    let iso = aut.chart_isometry(f);
    let local = if image == f {
        iso
    } else {
        match edge {
            Some(k) if spec.glue(f, k).face == image => {
                transition(spec, f, k).expect("valid edge").compose(&iso)
            }
            _ => return false,
        }
    };
    local.rotation == -&PlanarPoint::one(spec.field()) && local.apply(&point.point) == point.point
}

fn same_site(
    spec: &SolidSpec,
    site: &FixedSite,
    point: &SurfacePoint,
    edge: Option<usize>,
) -> bool {
    match (*site, edge) {
        (FixedSite::FaceCenter { face }, None) => {
            point.face == face && point.point == spec.face_center()
        }
        (FixedSite::EdgeMidpoint { face, edge: k, .. }, Some(e)) => {
            let ours = FaceIndex {
                face: point.face,
                index: e,
            };
            let theirs = FaceIndex { face, index: k };
            point.point == spec.edge_midpoint(point.face, e)
                && (ours == theirs || spec.glue(face, k) == ours)
        }
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryWitness {
    /// Position in [`rotation_group`].
    pub group_index: usize,
    pub automorphism: Automorphism,
    pub fixed_points: Vec<FixedSite>,
    pub midpoint: SurfacePoint,
    /// `(start ↦ end, end ↦ start)` as vertex ids.
    pub endpoint_images: ((usize, usize), (usize, usize)),
}

/// Every property a witness must have, checked independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChecks {
    pub order_two: bool,
    pub two_fixed_points: bool,
    pub fixes_midpoint: bool,
    pub maps_to_reverse: bool,
    pub fixes_no_vertex: bool,
    pub swaps_endpoints: bool,
    /// Tetrahedron only: the fixed points are midpoints of opposite edges.
    pub opposite_edges: Option<bool>,
}

impl WitnessChecks {
    pub fn all(&self) -> bool {
        self.order_two
            && self.two_fixed_points
            && self.fixes_midpoint
            && self.maps_to_reverse
            && self.fixes_no_vertex
            && self.swaps_endpoints
            && self.opposite_edges.unwrap_or(true)
    }
}

pub fn check_witness(
    spec: &SolidSpec,
    record: &GeodesicRecord,
    aut: &Automorphism,
) -> WitnessChecks {
    let sites = fixed_sites(spec, aut);
    let reversed = reverse(spec, &record.geodesic).ok();
    let mapped = apply_automorphism(spec, aut, &record.geodesic).ok();
    let start = record.start.vertex;
    let end = record.end_vertex;
    let opposite_edges = (spec.kind == SolidKind::Tetrahedron).then(|| match sites.as_slice() {
        [FixedSite::EdgeMidpoint {
            vertices: (a, b), ..
        }, FixedSite::EdgeMidpoint {
            vertices: (c, d), ..
        }] => a != c && a != d && b != c && b != d,
        _ => false,
    });
    WitnessChecks {
        order_two: aut.order() == 2,
        two_fixed_points: sites.len() == 2,
        fixes_midpoint: is_half_turn_at(spec, aut, &record.midpoint, record.midpoint_edge)
            && sites
                .iter()
                .any(|s| same_site(spec, s, &record.midpoint, record.midpoint_edge)),
        maps_to_reverse: reversed.is_some() && mapped == reversed,
        fixes_no_vertex: !sites.iter().any(|s| matches!(s, FixedSite::Vertex { .. })),
        swaps_endpoints: aut.map_vertex(spec, start) == end && aut.map_vertex(spec, end) == start,
        opposite_edges,
    }
}

/// Finds the half-turn about the record's midpoint in `group` and verifies it.
pub fn symmetry_witness(
    spec: &SolidSpec,
    group: &[Automorphism],
    record: &GeodesicRecord,
) -> Result<SymmetryWitness, SymmetryError> {
    let (group_index, aut) = group
        .iter()
        .enumerate()
        .find(|(_, a)| {
            !a.is_identity() && is_half_turn_at(spec, a, &record.midpoint, record.midpoint_edge)
        })
        .ok_or_else(|| {
            SymmetryError::NoWitness("no rotation is a half-turn at the midpoint".into())
        })?;
    let checks = check_witness(spec, record, aut);
    if !checks.all() {
        return Err(SymmetryError::NoWitness(format!(
            "half-turn fails its checks: {checks:?}"
        )));
    }
    Ok(SymmetryWitness {
        group_index,
        automorphism: aut.clone(),
        fixed_points: fixed_sites(spec, aut),
        midpoint: record.midpoint.clone(),
        endpoint_images: (
            (record.start.vertex, record.end_vertex),
            (record.end_vertex, record.start.vertex),
        ),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordCheck {
    pub record: GeodesicRecord,
    pub witness: Result<SymmetryWitness, String>,
    pub midpoint_coherent: bool,
}

impl RecordCheck {
    pub fn passed(&self) -> bool {
        !self.record.is_self_geodesic() && self.witness.is_ok() && self.midpoint_coherent
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub solid: SolidKind,
    pub start: StartFlag,
    pub bound: BigRational,
    pub group_order: usize,
    pub checks: Vec<RecordCheck>,
}

impl TheoremReport {
    pub fn self_geodesics(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.record.is_self_geodesic())
            .count()
    }

    pub fn witness_failures(&self) -> usize {
        self.checks.iter().filter(|c| c.witness.is_err()).count()
    }

    pub fn midpoint_mismatches(&self) -> usize {
        self.checks.iter().filter(|c| !c.midpoint_coherent).count()
    }

    /// No vertex-to-self geodesic, every witness valid, every midpoint coherent.
    pub fn holds(&self) -> bool {
        self.checks.iter().all(RecordCheck::passed)
    }
}

/// Enumerates every geodesic from `start` up to the bound and checks each one.
pub fn verify_theorem(
    spec: &SolidSpec,
    start: &StartFlag,
    max_sq_length: &BigRational,
) -> Result<TheoremReport, SymmetryError> {
    if spec.kind == SolidKind::Dodecahedron {
        return Err(SymmetryError::UnsupportedSolid(spec.kind));
    }
    let group = rotation_group(spec);
    let records = enumerate_geodesics(spec, start, max_sq_length)?;
    let checks = records
        .into_par_iter()
        .map(|record| RecordCheck {
            witness: symmetry_witness(spec, &group, &record).map_err(|e| e.to_string()),
            midpoint_coherent: midpoint_coherent(spec, &record),
            record,
        })
        .collect();
    Ok(TheoremReport {
        solid: spec.kind,
        start: *start,
        bound: max_sq_length.clone(),
        group_order: group.len(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::developing::trace;
    use crate::enumeration::LatticeEndpoint;
    use crate::scalar::integer;
    use crate::surface::build_solid;

    #[test]
    fn group_orders_and_axioms() {
        for (kind, order) in [
            (SolidKind::Tetrahedron, 12),
            (SolidKind::Cube, 24),
            (SolidKind::Octahedron, 24),
            (SolidKind::Dodecahedron, 60),
            (SolidKind::Icosahedron, 60),
        ] {
            let spec = build_solid(kind);
            let group = rotation_group(&spec);
            assert_eq!(group.len(), order, "{kind}");
            assert!(group[0].is_identity());
            for a in &group {
                assert!(group.contains(&a.inverse()));
                assert!(a.compose(&a.inverse()).is_identity());
                for b in group.iter().step_by(5) {
                    assert!(group.contains(&a.compose(b)));
                }
            }
        }
    }

    #[test]
    fn identity_leaves_geodesics_alone() {
        let cube = build_solid(SolidKind::Cube);
        let g = trace(
            &cube,
            &StartFlag::default_for(&cube),
            &LatticeEndpoint::new(2, 3).displacement(crate::enumeration::LatticeKind::Square),
        )
        .unwrap();
        assert_eq!(
            apply_automorphism(&cube, &Automorphism::identity(&cube), &g).unwrap(),
            g
        );
        let tetra = build_solid(SolidKind::Tetrahedron);
        assert!(matches!(
            apply_automorphism(&tetra, &Automorphism::identity(&cube), &g),
            Err(SymmetryError::IncompatibleSolid { .. })
        ));
    }

    fn record(kind: SolidKind, p: i64, q: i64) -> (SolidSpec, GeodesicRecord) {
        let spec = build_solid(kind);
        let start = StartFlag::default_for(&spec);
        let records = enumerate_geodesics(&spec, &start, &integer(p * p + p * q + q * q)).unwrap();
        let r = records
            .into_iter()
            .find(|r| r.endpoint == Some(LatticeEndpoint::new(p, q)))
            .unwrap();
        (spec, r)
    }

    #[test]
    fn cube_diagonal_witness_fixes_two_face_centers() {
        let (cube, r) = record(SolidKind::Cube, 1, 1);
        let w = symmetry_witness(&cube, &rotation_group(&cube), &r).unwrap();
        let faces: Vec<_> = w
            .fixed_points
            .iter()
            .map(|s| match s {
                FixedSite::FaceCenter { face } => *face,
                other => panic!("{other:?}"),
            })
            .collect();
        assert_eq!(faces.len(), 2);
        assert!(faces.contains(&r.start.face));
        // the other face shares no vertex with the start face
        let other = faces.iter().find(|&&f| f != r.start.face).unwrap();
        assert!(cube.faces[*other]
            .vertices
            .iter()
            .all(|v| !cube.faces[r.start.face].vertices.contains(v)));
    }

    #[test]
    fn cube_two_three_witness_fixes_opposite_edge_midpoints() {
        let (cube, r) = record(SolidKind::Cube, 2, 3);
        let w = symmetry_witness(&cube, &rotation_group(&cube), &r).unwrap();
        assert_eq!(w.fixed_points.len(), 2);
        assert!(w
            .fixed_points
            .iter()
            .all(|s| matches!(s, FixedSite::EdgeMidpoint { .. })));
        assert_eq!(w.endpoint_images.0, (r.start.vertex, r.end_vertex));
    }

    #[test]
    fn tetrahedron_witness() {
        let (tetra, r) = record(SolidKind::Tetrahedron, 1, 1);
        let group = rotation_group(&tetra);
        let w = symmetry_witness(&tetra, &group, &r).unwrap();
        assert_eq!(
            check_witness(&tetra, &r, &w.automorphism).opposite_edges,
            Some(true)
        );
    }

    #[test]
    fn dodecahedron_is_rejected() {
        let d = build_solid(SolidKind::Dodecahedron);
        assert_eq!(
            verify_theorem(&d, &StartFlag::default_for(&d), &integer(16)),
            Err(SymmetryError::UnsupportedSolid(SolidKind::Dodecahedron))
        );
    }

    #[test]
    fn small_sweeps_hold() {
        for kind in [
            SolidKind::Cube,
            SolidKind::Tetrahedron,
            SolidKind::Octahedron,
            SolidKind::Icosahedron,
        ] {
            let spec = build_solid(kind);
            let report =
                verify_theorem(&spec, &StartFlag::default_for(&spec), &integer(49)).unwrap();
            for c in &report.checks {
                assert!(
                    c.passed(),
                    "{kind} {:?}: {:?}",
                    c.record.endpoint,
                    c.witness
                );
            }
        }
    }
}
