//! The five platonic solids as regular unit-edge polygons glued along edges.
//!
//! Labeling is fixed. Vertex ids come from sorting the standard vertex
//! coordinates of each solid in decreasing lexicographic order. Every face
//! lists its vertices counterclockwise as seen from outside, starting at its
//! smallest vertex id, and faces are sorted by those lists. Corner `k` of a
//! face chart is its `k`-th vertex; edge `k` runs from corner `k` to corner
//! `k + 1`. Each chart is the regular polygon with corner 0 at the origin and
//! edge 0 along the positive x-axis.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::point::{orient_same, PlanarPoint};
use crate::scalar::{rational, Cyclo5, ExactScalar, FieldKind, QSqrt3, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolidKind {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl SolidKind {
    pub const ALL: [SolidKind; 5] = [
        SolidKind::Tetrahedron,
        SolidKind::Cube,
        SolidKind::Octahedron,
        SolidKind::Dodecahedron,
        SolidKind::Icosahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolidKind::Tetrahedron => "tetrahedron",
            SolidKind::Cube => "cube",
            SolidKind::Octahedron => "octahedron",
            SolidKind::Dodecahedron => "dodecahedron",
            SolidKind::Icosahedron => "icosahedron",
        }
    }

    /// Number of sides of each face.
    pub fn arity(self) -> usize {
        match self {
            SolidKind::Cube => 4,
            SolidKind::Dodecahedron => 5,
            _ => 3,
        }
    }

    pub fn field(self) -> FieldKind {
        match self.arity() {
            3 => FieldKind::Sqrt3,
            4 => FieldKind::Rational,
            _ => FieldKind::Cyclo5,
        }
    }

    pub fn interior_angle_degrees(self) -> u32 {
        180 - 360 / self.arity() as u32
    }

    fn face_table(self) -> &'static [&'static [usize]] {
        match self {
            SolidKind::Tetrahedron => &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 1], &[1, 3, 2]],
            SolidKind::Cube => &[
                &[0, 1, 5, 4],
                &[0, 2, 3, 1],
                &[0, 4, 6, 2],
                &[1, 3, 7, 5],
                &[2, 6, 7, 3],
                &[4, 5, 7, 6],
            ],
            SolidKind::Octahedron => &[
                &[0, 1, 2],
                &[0, 2, 4],
                &[0, 3, 1],
                &[0, 4, 3],
                &[1, 3, 5],
                &[1, 5, 2],
                &[2, 5, 4],
                &[3, 4, 5],
            ],
            SolidKind::Dodecahedron => &[
                &[0, 1, 3, 6, 2],
                &[0, 2, 8, 10, 4],
                &[0, 4, 7, 5, 1],
                &[1, 5, 11, 9, 3],
                &[2, 6, 12, 14, 8],
                &[3, 9, 15, 12, 6],
                &[4, 10, 16, 13, 7],
                &[5, 7, 13, 17, 11],
                &[8, 14, 18, 16, 10],
                &[9, 11, 17, 19, 15],
                &[12, 15, 19, 18, 14],
                &[13, 16, 18, 19, 17],
            ],
            SolidKind::Icosahedron => &[
                &[0, 1, 2],
                &[0, 2, 4],
                &[0, 3, 1],
                &[0, 4, 6],
                &[0, 6, 3],
                &[1, 3, 7],
                &[1, 5, 2],
                &[1, 7, 5],
                &[2, 5, 8],
                &[2, 8, 4],
                &[3, 6, 9],
                &[3, 9, 7],
                &[4, 8, 10],
                &[4, 10, 6],
                &[5, 7, 11],
                &[5, 11, 8],
                &[6, 10, 9],
                &[7, 9, 11],
                &[8, 11, 10],
                &[9, 10, 11],
            ],
        }
    }
}

impl fmt::Display for SolidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolidKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        SolidKind::ALL
            .into_iter()
            .find(|k| k.name() == lower || (lower.len() >= 4 && k.name().starts_with(&lower)))
            .ok_or_else(|| format!("unknown solid {s:?}; expected one of tetrahedron, cube, octahedron, dodecahedron, icosahedron"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("no face {0}")]
    BadFace(usize),
    #[error("face {face} has no corner or edge {index}")]
    BadIndex { face: usize, index: usize },
    #[error("no vertex {0}")]
    BadVertex(usize),
}

/// A `(face, edge)` or `(face, corner)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceIndex {
    pub face: usize,
    pub index: usize,
}

impl fmt::Display for FaceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.face, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceChart {
    pub id: usize,
    /// Vertex id at each corner.
    pub vertices: Vec<usize>,
    pub corners: Vec<PlanarPoint>,
}

impl FaceChart {
    pub fn arity(&self) -> usize {
        self.corners.len()
    }
}

/// A point on the surface, given in the chart of one face.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub face: usize,
    pub point: PlanarPoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolidSpec {
    pub kind: SolidKind,
    pub faces: Vec<FaceChart>,
    /// `gluings[f][k]` is the edge glued to edge `k` of face `f`.
    pub gluings: Vec<Vec<FaceIndex>>,
    /// Counterclockwise cycle of `(face, corner)` flags around each vertex.
    pub vertex_cycles: Vec<Vec<FaceIndex>>,
    pub edge_count: usize,
    pub vertex_count: usize,
}

/// Unit direction of edge `k` in a regular `n`-gon chart: `ω^k` with `ω` the
/// rotation by the exterior angle `360°/n`.
pub fn edge_direction(kind: SolidKind, k: usize) -> PlanarPoint {
    let n = kind.arity();
    let k = k % n;
    match n {
        4 => {
            let (x, y) = [(1, 0), (0, 1), (-1, 0), (0, -1)][k];
            PlanarPoint::rational(rational(x, 1), rational(y, 1))
        }
        3 => {
            let half = || rational(1, 2);
            let (x, y) = match k {
                0 => (QSqrt3::one(), QSqrt3::zero()),
                1 => (
                    QSqrt3::from_rational(-half()),
                    QSqrt3::new(rational(0, 1), half()),
                ),
                _ => (
                    QSqrt3::from_rational(-half()),
                    QSqrt3::new(rational(0, 1), -half()),
                ),
            };
            PlanarPoint::sqrt3(x, y)
        }
        _ => PlanarPoint::Cyclo5(Cyclo5::zeta_pow(k as i64)),
    }
}

/// Corner `k` of the regular unit-edge chart: the sum of the first `k` edge directions.
pub fn chart_corner(kind: SolidKind, k: usize) -> PlanarPoint {
    (0..k % kind.arity()).fold(PlanarPoint::zero(kind.field()), |acc, j| {
        &acc + &edge_direction(kind, j)
    })
}

/// Center of the regular chart, `1 / (1 − ω)`.
pub fn chart_center(kind: SolidKind) -> PlanarPoint {
    let one = PlanarPoint::one(kind.field());
    (&one - &edge_direction(kind, 1)).cinv().expect("ω ≠ 1")
}

pub fn build_solid(kind: SolidKind) -> SolidSpec {
    let table = kind.face_table();
    let n = kind.arity();
    let vertex_count = table
        .iter()
        .flat_map(|f| f.iter())
        .max()
        .map_or(0, |v| v + 1);
    let faces: Vec<FaceChart> = table
        .iter()
        .enumerate()
        .map(|(id, vs)| FaceChart {
            id,
            vertices: vs.to_vec(),
            corners: (0..n).map(|k| chart_corner(kind, k)).collect(),
        })
        .collect();

    // directed edge (a, b) -> (face, edge)
    let mut directed = std::collections::HashMap::new();
    for f in &faces {
        for k in 0..n {
            directed.insert(
                (f.vertices[k], f.vertices[(k + 1) % n]),
                FaceIndex {
                    face: f.id,
                    index: k,
                },
            );
        }
    }
    let gluings: Vec<Vec<FaceIndex>> = faces
        .iter()
        .map(|f| {
            (0..n)
                .map(|k| directed[&(f.vertices[(k + 1) % n], f.vertices[k])])
                .collect()
        })
        .collect();

    let mut vertex_cycles = vec![Vec::new(); vertex_count];
    for (v, cycle) in vertex_cycles.iter_mut().enumerate() {
        let first = faces
            .iter()
            .find_map(|f| {
                f.vertices.iter().position(|&u| u == v).map(|c| FaceIndex {
                    face: f.id,
                    index: c,
                })
            })
            .expect("every vertex lies on a face");
        let mut flag = first;
        loop {
            cycle.push(flag);
            // cross the incoming edge at this corner; the glued edge starts at v
            flag = gluings[flag.face][(flag.index + n - 1) % n];
            if flag == first {
                break;
            }
        }
    }

    let spec = SolidSpec {
        kind,
        edge_count: faces.len() * n / 2,
        faces,
        gluings,
        vertex_cycles,
        vertex_count,
    };
    let report = validate_solid(&spec);
    assert!(
        report.all_passed(),
        "built-in {kind} failed validation:\n{report}"
    );
    spec
}

impl SolidSpec {
    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    pub fn field(&self) -> FieldKind {
        self.kind.field()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    fn check_face(&self, face: usize) -> Result<&FaceChart, SurfaceError> {
        self.faces.get(face).ok_or(SurfaceError::BadFace(face))
    }

    fn check_index(&self, face: usize, index: usize) -> Result<&FaceChart, SurfaceError> {
        let f = self.check_face(face)?;
        if index < f.arity() {
            Ok(f)
        } else {
            Err(SurfaceError::BadIndex { face, index })
        }
    }

    pub fn corner_point(&self, face: usize, corner: usize) -> Result<&PlanarPoint, SurfaceError> {
        Ok(&self.check_index(face, corner)?.corners[corner])
    }

    /// Corner index `k` taken modulo the arity.
    pub fn corner(&self, face: usize, k: usize) -> &PlanarPoint {
        &self.faces[face].corners[k % self.arity()]
    }

    pub fn vertex_at(&self, face: usize, k: usize) -> usize {
        self.faces[face].vertices[k % self.arity()]
    }

    pub fn corner_of_vertex(&self, face: usize, vertex: usize) -> Option<usize> {
        self.faces
            .get(face)?
            .vertices
            .iter()
            .position(|&v| v == vertex)
    }

    pub fn glue(&self, face: usize, edge: usize) -> FaceIndex {
        self.gluings[face][edge % self.arity()]
    }

    pub fn try_glue(&self, face: usize, edge: usize) -> Result<FaceIndex, SurfaceError> {
        self.check_index(face, edge)?;
        Ok(self.gluings[face][edge])
    }

    pub fn edge_midpoint(&self, face: usize, edge: usize) -> PlanarPoint {
        (self.corner(face, edge) + self.corner(face, edge + 1)).half()
    }

    pub fn face_center(&self) -> PlanarPoint {
        chart_center(self.kind)
    }

    /// The two vertex ids of an edge.
    pub fn edge_vertices(&self, face: usize, edge: usize) -> (usize, usize) {
        (self.vertex_at(face, edge), self.vertex_at(face, edge + 1))
    }

    /// Text dump: one line per face, per glued edge pair and per vertex cycle.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "solid {}", self.kind);
        let _ = writeln!(
            out,
            "counts V={} E={} F={}",
            self.vertex_count,
            self.edge_count,
            self.faces.len()
        );
        for f in &self.faces {
            let vs: Vec<String> = f.vertices.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(
                out,
                "face {} n={} vertices {}",
                f.id,
                f.arity(),
                vs.join(" ")
            );
        }
        for (face, row) in self.gluings.iter().enumerate() {
            for (edge, other) in row.iter().enumerate() {
                let this = FaceIndex { face, index: edge };
                if this < *other {
                    let _ = writeln!(out, "glue {this} {other}");
                }
            }
        }
        for (v, cycle) in self.vertex_cycles.iter().enumerate() {
            let flags: Vec<String> = cycle.iter().map(|f| f.to_string()).collect();
            let _ = writeln!(out, "vertex {v} cycle {}", flags.join(" "));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub offenders: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(
                f,
                "{} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
            if !c.offenders.is_empty() {
                write!(f, " [{}]", c.offenders.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, detail: String, offenders: Vec<String>) -> Check {
    Check {
        name,
        passed: offenders.is_empty(),
        detail,
        offenders,
    }
}

pub fn validate_solid(spec: &SolidSpec) -> ValidationReport {
    let n = spec.arity();
    let mut checks = Vec::new();
    let all_edges: Vec<FaceIndex> = (0..spec.faces.len())
        .flat_map(|face| (0..n).map(move |index| FaceIndex { face, index }))
        .collect();
    let shape_ok = spec.gluings.len() == spec.faces.len()
        && spec.gluings.iter().all(|row| row.len() == n)
        && spec
            .faces
            .iter()
            .all(|f| f.vertices.len() == n && f.corners.len() == n);
    checks.push(check(
        "table shape",
        format!("{} faces of arity {n}", spec.faces.len()),
        if shape_ok {
            vec![]
        } else {
            vec!["gluing or face table has the wrong shape".into()]
        },
    ));
    if !shape_ok {
        return ValidationReport { checks };
    }
    let in_range = |e: &FaceIndex| e.face < spec.faces.len() && e.index < n;

    let fixed: Vec<String> = all_edges
        .iter()
        .filter(|e| spec.gluings[e.face][e.index] == **e)
        .map(|e| e.to_string())
        .collect();
    checks.push(check(
        "gluing fixed-point-free",
        "no edge is glued to itself".into(),
        fixed,
    ));

    let not_involution: Vec<String> = all_edges
        .iter()
        .filter(|e| {
            let g = spec.gluings[e.face][e.index];
            !in_range(&g) || spec.gluings[g.face][g.index] != **e
        })
        .map(|e| e.to_string())
        .collect();
    checks.push(check(
        "gluing involution",
        "glue(glue(e)) = e".into(),
        not_involution,
    ));

    let reversed: Vec<String> = all_edges
        .iter()
        .filter(|e| {
            let g = spec.gluings[e.face][e.index];
            !in_range(&g)
                || spec.edge_vertices(e.face, e.index) != {
                    let (a, b) = spec.edge_vertices(g.face, g.index);
                    (b, a)
                }
        })
        .map(|e| e.to_string())
        .collect();
    checks.push(check(
        "gluing orientation",
        "glued edges carry the same vertices in opposite order".into(),
        reversed,
    ));

    // vertex cycles: every flag once, flags carry the vertex, successive flags are glued
    let mut seen = vec![vec![0usize; n]; spec.faces.len()];
    let mut cycle_bad = Vec::new();
    for (v, cycle) in spec.vertex_cycles.iter().enumerate() {
        for (i, flag) in cycle.iter().enumerate() {
            if !in_range(flag) || spec.vertex_at(flag.face, flag.index) != v {
                cycle_bad.push(format!("vertex {v} flag {flag}"));
                continue;
            }
            seen[flag.face][flag.index] += 1;
            let next = cycle[(i + 1) % cycle.len()];
            if spec.gluings[flag.face][(flag.index + n - 1) % n] != next {
                cycle_bad.push(format!("vertex {v} flags {flag} -> {next}"));
            }
        }
    }
    for (face, row) in seen.iter().enumerate() {
        for (index, &count) in row.iter().enumerate() {
            if count != 1 {
                cycle_bad.push(format!("flag {face}.{index} visited {count} times"));
            }
        }
    }
    checks.push(check(
        "vertex cycles",
        "each (face, corner) flag appears once, in gluing order".into(),
        cycle_bad,
    ));

    let v = spec.vertex_cycles.len() as i64;
    let e = spec.edge_count as i64;
    let f = spec.faces.len() as i64;
    let counts_ok = e * 2 == f * n as i64 && v == spec.vertex_count as i64;
    checks.push(check(
        "euler characteristic",
        format!("V − E + F = {v} − {e} + {f} = {}", v - e + f),
        if v - e + f == 2 && counts_ok {
            vec![]
        } else {
            vec![format!("V={v} E={e} F={f}")]
        },
    ));

    let interior = spec.kind.interior_angle_degrees() as usize;
    let angles: Vec<usize> = spec
        .vertex_cycles
        .iter()
        .map(|c| c.len() * interior)
        .collect();
    let cone_bad: Vec<String> = angles
        .iter()
        .enumerate()
        .filter(|(_, &a)| a >= 360 || a != angles[0])
        .map(|(v, a)| format!("vertex {v}: {a}°"))
        .collect();
    let detail = match angles.first() {
        Some(a) if angles.iter().all(|b| b == a) => {
            format!("{a}° at all {} vertices", angles.len())
        }
        _ => "cone angles differ".into(),
    };
    checks.push(check("cone angle", detail, cone_bad));

    let one = ExactScalar::one(spec.field());
    let mut long_edges = Vec::new();
    let mut not_ccw = Vec::new();
    for face in &spec.faces {
        for k in 0..n {
            let a = &face.corners[k];
            let b = &face.corners[(k + 1) % n];
            let c = &face.corners[(k + 2) % n];
            let e0 = b - a;
            if a.field() != spec.field() || e0.norm_sq() != one {
                long_edges.push(format!("{}.{k}", face.id));
                continue;
            }
            if orient_same(&e0, &(c - b)) != Sign::Positive {
                not_ccw.push(format!("{}.{k}", face.id));
            }
        }
    }
    checks.push(check(
        "unit edges",
        "every chart edge has squared length 1".into(),
        long_edges,
    ));
    checks.push(check(
        "counterclockwise charts",
        "every chart turns left at each corner".into(),
        not_ccw,
    ));

    ValidationReport { checks }
}

/// Exact chart coordinates of a corner.
pub fn corner_point(
    spec: &SolidSpec,
    face: usize,
    corner: usize,
) -> Result<PlanarPoint, SurfaceError> {
    spec.corner_point(face, corner).cloned()
}
