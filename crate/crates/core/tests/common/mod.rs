//! Floating-point folding oracle. It walks a straight line over the solid in
//! ordinary 3D coordinates, rotating the direction about each crossed edge,
//! and shares nothing with the exact tracer except the face vertex lists.

#![allow(dead_code)]

use platonic_geodesics::surface::{SolidKind, SolidSpec};

type V3 = [f64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}
fn mul(a: V3, s: f64) -> V3 {
    [a[0] * s, a[1] * s, a[2] * s]
}
fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
fn unit(a: V3) -> V3 {
    mul(a, 1.0 / dot(a, a).sqrt())
}

/// Vertex coordinates in the same order as the face tables, which were
/// generated from these point sets sorted in descending lexicographic order.
pub fn coordinates(kind: SolidKind) -> Vec<V3> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let signs = [1.0, -1.0];
    let mut v: Vec<V3> = match kind {
        SolidKind::Tetrahedron => {
            vec![[1., 1., 1.], [1., -1., -1.], [-1., 1., -1.], [-1., -1., 1.]]
        }
        SolidKind::Cube => cube_corners(),
        SolidKind::Octahedron => vec![
            [1., 0., 0.],
            [-1., 0., 0.],
            [0., 1., 0.],
            [0., -1., 0.],
            [0., 0., 1.],
            [0., 0., -1.],
        ],
        SolidKind::Icosahedron => {
            let mut v = Vec::new();
            for a in signs {
                for b in [phi, -phi] {
                    v.extend([[0., a, b], [a, b, 0.], [b, 0., a]]);
                }
            }
            v
        }
        SolidKind::Dodecahedron => {
            let mut v = cube_corners();
            for a in signs {
                for b in signs {
                    v.extend([
                        [0., a / phi, b * phi],
                        [a / phi, b * phi, 0.],
                        [b * phi, 0., a / phi],
                    ]);
                }
            }
            v
        }
    };
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let edge = v
        .iter()
        .flat_map(|a| v.iter().map(move |b| dot(sub(*a, *b), sub(*a, *b))))
        .filter(|&d| d > 1e-9)
        .fold(f64::INFINITY, f64::min)
        .sqrt();
    v.into_iter().map(|p| mul(p, 1.0 / edge)).collect()
}

fn cube_corners() -> Vec<V3> {
    let mut v = Vec::new();
    for x in [1.0, -1.0] {
        for y in [1.0, -1.0] {
            for z in [1.0, -1.0] {
                v.push([x, y, z]);
            }
        }
    }
    v
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleEnd {
    Vertex(usize),
    Open,
    ThroughVertex,
}

/// Where a folded walk stopped.
pub struct Walk {
    pub end: OracleEnd,
    pub faces: Vec<usize>,
    pub point: V3,
    pub direction: V3,
}

pub struct Folder {
    pub verts: Vec<V3>,
    pub faces: Vec<Vec<usize>>,
}

impl Folder {
    pub fn new(spec: &SolidSpec) -> Self {
        let verts = coordinates(spec.kind);
        let faces: Vec<Vec<usize>> = spec.faces.iter().map(|f| f.vertices.clone()).collect();
        let folder = Folder { verts, faces };
        // the tables must be real faces, counterclockwise seen from outside
        for f in 0..folder.faces.len() {
            let n = folder.normal(f);
            assert!(
                dot(n, folder.centroid(f)) > 0.0,
                "face {f} is not counterclockwise"
            );
            for &v in &folder.faces[f] {
                assert!(
                    dot(sub(folder.verts[v], folder.verts[folder.faces[f][0]]), n).abs() < 1e-9
                );
            }
        }
        folder
    }

    pub fn centroid(&self, f: usize) -> V3 {
        let vs = &self.faces[f];
        mul(
            vs.iter().fold([0.0; 3], |acc, &v| add(acc, self.verts[v])),
            1.0 / vs.len() as f64,
        )
    }

    fn normal(&self, f: usize) -> V3 {
        let vs = &self.faces[f];
        let (a, b, c) = (self.verts[vs[0]], self.verts[vs[1]], self.verts[vs[2]]);
        unit(cross(sub(b, a), sub(c, b)))
    }

    fn neighbour(&self, f: usize, a: usize, b: usize) -> usize {
        (0..self.faces.len())
            .find(|&g| g != f && self.faces[g].contains(&a) && self.faces[g].contains(&b))
            .expect("every edge has two faces")
    }

    /// Walks from corner `corner` of face `face` along `(dx, dy)`, given in the
    /// frame with that corner at the origin and its outgoing edge along +x.
    pub fn fold(&self, face: usize, corner: usize, d: (f64, f64)) -> (OracleEnd, Vec<usize>) {
        let w = self.walk(face, corner, d);
        (w.end, w.faces)
    }

    pub fn walk(&self, face: usize, corner: usize, d: (f64, f64)) -> Walk {
        let n_f = self.faces[face].len();
        let mut p = self.verts[self.faces[face][corner]];
        let e1 = unit(sub(self.verts[self.faces[face][(corner + 1) % n_f]], p));
        let e2 = cross(self.normal(face), e1);
        let mut u = unit(add(mul(e1, d.0), mul(e2, d.1)));
        let mut remaining = (d.0 * d.0 + d.1 * d.1).sqrt();
        let mut f = face;
        let mut seq = Vec::new();
        for _ in 0..100_000 {
            seq.push(f);
            let vs = &self.faces[f];
            let n = self.normal(f);
            let mut best: Option<(f64, f64, usize)> = None;
            for k in 0..vs.len() {
                let a = self.verts[vs[k]];
                let e = sub(self.verts[vs[(k + 1) % vs.len()]], a);
                // p + s·u = a + r·e, solved in the face plane
                let denom = dot(cross(u, e), n);
                if denom.abs() < 1e-12 {
                    continue;
                }
                let w = sub(a, p);
                let s = dot(cross(w, e), n) / denom;
                let r = dot(cross(w, u), n) / denom;
                if s > 1e-9 && (-1e-9..=1.0 + 1e-9).contains(&r) && best.is_none_or(|b| s < b.0) {
                    best = Some((s, r, k));
                }
            }
            let (s, r, k) = best.expect("a ray leaves a convex face");
            if s >= remaining - 1e-9 {
                let end = add(p, mul(u, remaining));
                let end_kind = match self
                    .verts
                    .iter()
                    .position(|&v| dot(sub(v, end), sub(v, end)) < 1e-12)
                {
                    Some(v) => OracleEnd::Vertex(v),
                    None => OracleEnd::Open,
                };
                return Walk {
                    end: end_kind,
                    faces: seq,
                    point: end,
                    direction: u,
                };
            }
            if !(1e-7..=1.0 - 1e-7).contains(&r) {
                return Walk {
                    end: OracleEnd::ThroughVertex,
                    faces: seq,
                    point: p,
                    direction: u,
                };
            }
            let (ia, ib) = (vs[k], vs[(k + 1) % vs.len()]);
            let a = self.verts[ia];
            let t = unit(sub(self.verts[ib], a));
            let g = self.neighbour(f, ia, ib);
            let along = dot(u, t);
            let across = sub(u, mul(t, along));
            let mut inward = cross(self.normal(g), t);
            let mid = add(a, mul(t, 0.5));
            if dot(inward, sub(self.centroid(g), mid)) < 0.0 {
                inward = mul(inward, -1.0);
            }
            u = unit(add(mul(t, along), mul(inward, dot(across, across).sqrt())));
            p = add(a, mul(sub(self.verts[ib], a), r));
            remaining -= s;
            f = g;
        }
        panic!("oracle did not terminate");
    }
}

/// Squared distance between two points.
pub fn dist_sq(a: V3, b: V3) -> f64 {
    dot(sub(a, b), sub(a, b))
}

/// |cos| of the angle between two vectors.
pub fn abs_cos(a: V3, b: V3) -> f64 {
    dot(a, b).abs() / (dot(a, a) * dot(b, b)).sqrt()
}

impl Folder {
    /// Every edge as a vertex pair `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .faces
            .iter()
            .flat_map(|vs| {
                (0..vs.len()).map(move |k| {
                    (
                        vs[k].min(vs[(k + 1) % vs.len()]),
                        vs[k].max(vs[(k + 1) % vs.len()]),
                    )
                })
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The linear map sending each vertex `v` to `perm[v]`, if one exists:
    /// fitted on three independent vertices, then checked on all of them.
    pub fn linear_map(&self, perm: &[usize]) -> Option<[[f64; 3]; 3]> {
        let n = self.verts.len();
        let (a, b, c) = (0..n)
            .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
            .find(|&(i, j, k)| det3(self.verts[i], self.verts[j], self.verts[k]).abs() > 1e-3)?;
        let src = transpose([self.verts[a], self.verts[b], self.verts[c]]);
        let dst = transpose([
            self.verts[perm[a]],
            self.verts[perm[b]],
            self.verts[perm[c]],
        ]);
        let m = matmul(dst, invert(src));
        (0..n)
            .all(|v| dist_sq(apply(m, self.verts[v]), self.verts[perm[v]]) < 1e-12)
            .then_some(m)
    }
}

fn det3(a: V3, b: V3, c: V3) -> f64 {
    dot(a, cross(b, c))
}

pub fn det(m: [[f64; 3]; 3]) -> f64 {
    det3(m[0], m[1], m[2])
}

fn transpose(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i]))
}

pub fn matmul(a: [[f64; 3]; 3], b: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn apply(m: [[f64; 3]; 3], v: V3) -> V3 {
    std::array::from_fn(|i| dot(m[i], v))
}

fn invert(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    // the rows of the inverse are cross products of the columns
    let c = transpose(m);
    let d = det3(c[0], c[1], c[2]);
    [
        mul(cross(c[1], c[2]), 1.0 / d),
        mul(cross(c[2], c[0]), 1.0 / d),
        mul(cross(c[0], c[1]), 1.0 / d),
    ]
}

/// Rotation angle of an orthogonal matrix with determinant one, in degrees.
pub fn rotation_angle(m: [[f64; 3]; 3]) -> f64 {
    let trace = m[0][0] + m[1][1] + m[2][2];
    ((trace - 1.0) / 2.0).clamp(-1.0, 1.0).acos().to_degrees()
}
