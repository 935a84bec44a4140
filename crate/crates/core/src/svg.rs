//! SVG drawings of developed unfoldings.

use std::fmt::Write;

use crate::developing::{develop, SurfaceGeodesic};
use crate::point::PlanarPoint;
use crate::surface::SolidSpec;

/// Fractional digits of every coordinate written.
pub const DECIMALS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkerKind {
    Origin,
    Midpoint,
    Endpoint,
}

impl MarkerKind {
    fn class(self) -> &'static str {
        match self {
            MarkerKind::Origin => "origin",
            MarkerKind::Midpoint => "midpoint",
            MarkerKind::Endpoint => "endpoint",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SvgScene {
    /// Developed faces, labelled with their face ids.
    pub faces: Vec<(usize, Vec<PlanarPoint>)>,
    pub segment: Option<(PlanarPoint, PlanarPoint)>,
    pub markers: Vec<(MarkerKind, PlanarPoint)>,
}

fn fmt_coord(v: f64) -> String {
    let s = format!("{v:.DECIMALS$}");
    // avoid a stray "-0.000000000000"
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn xy(p: &PlanarPoint) -> (f64, f64) {
    let (x, y) = p.to_f64();
    // SVG's y axis points down
    (x, -y)
}

impl SvgScene {
    /// The unfolding of `g` in its developed frame, with the segment from
    /// the origin to the developed endpoint and markers at origin, midpoint
    /// and endpoint.
    pub fn from_geodesic(spec: &SolidSpec, g: &SurfaceGeodesic) -> Self {
        let dev = develop(spec, g);
        let faces = dev
            .placements
            .iter()
            .map(|p| {
                (
                    p.face,
                    (0..spec.arity())
                        .map(|k| p.isometry.apply(spec.corner(p.face, k)))
                        .collect(),
                )
            })
            .collect();
        let origin = PlanarPoint::zero(spec.field());
        SvgScene {
            faces,
            segment: Some((origin.clone(), dev.endpoint.clone())),
            markers: vec![
                (MarkerKind::Origin, origin),
                (MarkerKind::Midpoint, dev.midpoint),
                (MarkerKind::Endpoint, dev.endpoint),
            ],
        }
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let pts = self
            .faces
            .iter()
            .flat_map(|(_, ps)| ps.iter())
            .chain(self.markers.iter().map(|(_, p)| p))
            .map(xy);
        // the axes always show the unit square around the origin
        pts.fold((-1.0, -1.0, 1.0, 1.0), |(x0, y0, x1, y1), (x, y)| {
            (x0.min(x), y0.min(y), x1.max(x), y1.max(y))
        })
    }

    pub fn render(&self) -> String {
        let (x0, y0, x1, y1) = self.bounds();
        let pad = 0.25;
        let (vx, vy, vw, vh) = (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
        let c = fmt_coord;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="{}" height="{}">"#,
            c(vx),
            c(vy),
            c(vw),
            c(vh),
            c(vw * 100.0),
            c(vh * 100.0)
        );
        let _ = writeln!(s, r#"<g fill="none" stroke-width="0.02">"#);
        let _ = writeln!(
            s,
            r##"<path class="axis" stroke="#999999" d="M {} 0 H {} M 0 {} V {}"/>"##,
            c(vx),
            c(vx + vw),
            c(vy),
            c(vy + vh)
        );
        for (face, pts) in &self.faces {
            let points: Vec<String> = pts
                .iter()
                .map(xy)
                .map(|(x, y)| format!("{},{}", c(x), c(y)))
                .collect();
            let _ = writeln!(
                s,
                r##"<polygon class="face" data-face="{face}" stroke="#333333" fill="#eef3fa" points="{}"/>"##,
                points.join(" ")
            );
        }
        if let Some((a, b)) = &self.segment {
            let ((ax, ay), (bx, by)) = (xy(a), xy(b));
            let _ = writeln!(
                s,
                r##"<line class="geodesic" stroke="#c0392b" x1="{}" y1="{}" x2="{}" y2="{}"/>"##,
                c(ax),
                c(ay),
                c(bx),
                c(by)
            );
        }
        for (kind, p) in &self.markers {
            let (x, y) = xy(p);
            let _ = writeln!(
                s,
                r##"<circle class="{}" fill="#c0392b" cx="{}" cy="{}" r="0.05"/>"##,
                kind.class(),
                c(x),
                c(y)
            );
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}
