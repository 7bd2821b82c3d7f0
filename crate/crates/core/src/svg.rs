//! SVG 1.1 pictures of a domain and its Cheeger sets. The `y` axis points up
//! in model coordinates and is flipped on output.

use std::fmt::Write as _;

use crate::analytic::Rectangle;
use crate::classifier::StripClassification;
use crate::geometry::{
    build_cut_corner_rectangle, build_strip_cut_corners, build_strip_polygon,
    build_topped_substrip, build_topped_substrip_on_curve, CurveKind, EdgeTag, GeometryError,
    PolyShape, Ring, StripCurve, Vec2,
};
use crate::solution::{CheegerSolution, SolutionKind};

/// Chords per quarter arc in pictures; finer polygons add nothing visible.
pub const SVG_SEGMENTS: usize = 256;

/// Margin of the unbounded-domain window around the drawn sets.
const WINDOW_MARGIN: f64 = 4.0;

const STYLE: &str = "\
.domain{fill:#f4f4f4;stroke:#222222}\
.domain-window{fill:#f4f4f4;stroke:#222222;stroke-dasharray:4 2}\
.cheeger-set{fill:#2a6fdb;fill-opacity:0.35;stroke:#174ea6}\
.placement-extreme{fill:none;stroke:#174ea6;stroke-dasharray:3 2}\
.alternative{fill:#e8710a;fill-opacity:0.25;stroke:#b35309}";

/// A named, styled polygon.
#[derive(Debug, Clone)]
pub struct Layer {
    pub class: &'static str,
    pub id: String,
    pub shape: PolyShape,
}

/// Serializes layers in order; later layers are drawn on top.
pub fn render_layers(layers: &[Layer]) -> String {
    let (mut lo, mut hi) = (
        Vec2::new(f64::INFINITY, f64::INFINITY),
        Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for l in layers {
        let (a, b) = l.shape.bounding_box();
        lo = Vec2::new(lo.x.min(a.x), lo.y.min(a.y));
        hi = Vec2::new(hi.x.max(b.x), hi.y.max(b.y));
    }
    if !lo.x.is_finite() {
        lo = Vec2::ZERO;
        hi = Vec2::new(1.0, 1.0);
    }
    let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
    let pad = 0.03 * extent;
    let (x0, y0) = (lo.x - pad, -hi.y - pad);
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let px = 1000.0 / w.max(h);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        w * px,
        h * px,
        x0,
        y0,
        w,
        h
    );
    let _ = writeln!(out, "<style type=\"text/css\">{STYLE}</style>");
    let _ = writeln!(
        out,
        r#"<g stroke-width="{:.6}" fill-rule="evenodd">"#,
        0.002 * extent
    );
    for l in layers {
        let _ = writeln!(
            out,
            r#"<path id="{}" class="{}" d="{}"/>"#,
            l.id,
            l.class,
            path_data(&l.shape)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn path_data(shape: &PolyShape) -> String {
    let mut d = String::new();
    for ring in shape.rings() {
        for (k, p) in ring.vertices.iter().enumerate() {
            let _ = write!(d, "{}{:.6} {:.6} ", if k == 0 { 'M' } else { 'L' }, p.x, -p.y);
        }
        d.push_str("Z ");
    }
    d.truncate(d.trim_end().len());
    d
}

fn box_shape(x0: f64, x1: f64) -> PolyShape {
    let mut ring = Ring::new();
    for (x, y) in [(x0, -1.0), (x1, -1.0), (x1, 1.0), (x0, 1.0)] {
        ring.push(Vec2::new(x, y), EdgeTag::Straight);
    }
    PolyShape::new(ring, vec![], 1)
}

/// Anchors drawn for a placement set: the canonical one plus every finite
/// interval endpoint.
fn drawn_anchors(solution: &CheegerSolution) -> Vec<(f64, bool)> {
    let SolutionKind::ToppedSubstrip { placements, .. } = &solution.kind else {
        return vec![];
    };
    let mut out = vec![(placements.canonical, true)];
    for &(a, b) in &placements.intervals {
        for s in [a, b] {
            if s.is_finite() && out.iter().all(|&(t, _)| (t - s).abs() > 1e-9) {
                out.push((s, false));
            }
        }
    }
    out
}

fn solution_layers(
    solution: &CheegerSolution,
    primary: bool,
    tag: &str,
    mut stadium_at: impl FnMut(f64, f64) -> Result<PolyShape, GeometryError>,
    mut cut_corners: impl FnMut(f64) -> Result<PolyShape, GeometryError>,
    whole: &PolyShape,
) -> Result<Vec<Layer>, GeometryError> {
    let class = if primary { "cheeger-set" } else { "alternative" };
    Ok(match solution.kind {
        SolutionKind::CutCorners { r } => vec![Layer {
            class,
            id: format!("{tag}-cut-corners"),
            shape: cut_corners(r)?,
        }],
        SolutionKind::ToppedSubstrip { m, .. } => {
            let mut layers = Vec::new();
            for (k, (s0, canonical)) in drawn_anchors(solution).into_iter().enumerate() {
                layers.push(Layer {
                    class: if canonical { class } else { "placement-extreme" },
                    id: format!("{tag}-placement-{k}"),
                    shape: stadium_at(s0, m)?,
                });
            }
            layers
        }
        SolutionKind::WholeDomain => vec![Layer {
            class,
            id: format!("{tag}-whole-domain"),
            shape: whole.clone(),
        }],
    })
}

fn classification_layers(
    c: &StripClassification,
    domain: Layer,
    stadium_at: impl Fn(f64, f64) -> Result<PolyShape, GeometryError>,
    cut_corners: impl Fn(f64) -> Result<PolyShape, GeometryError>,
    unscale: f64,
) -> Result<String, GeometryError> {
    let mut layers = vec![domain];
    let normalized = |s: &CheegerSolution| {
        if unscale == 1.0 {
            s.clone()
        } else {
            unscale_solution(s, unscale)
        }
    };
    let whole = layers[0].shape.clone();
    let sets: Vec<(CheegerSolution, bool)> = std::iter::once((normalized(&c.solution), true))
        .chain(c.alternatives.iter().map(|a| (normalized(a), false)))
        .collect();
    for (k, (s, primary)) in sets.iter().enumerate() {
        let tag = if *primary { "set".to_string() } else { format!("alternative-{k}") };
        layers.extend(solution_layers(s, *primary, &tag, &stadium_at, &cut_corners, &whole)?);
    }
    if unscale != 1.0 {
        for l in &mut layers {
            l.shape = l.shape.scaled(1.0 / unscale);
        }
    }
    Ok(render_layers(&layers))
}

fn unscale_solution(s: &CheegerSolution, f: f64) -> CheegerSolution {
    let kind = match &s.kind {
        SolutionKind::CutCorners { r } => SolutionKind::CutCorners { r: r * f },
        SolutionKind::ToppedSubstrip { m, placements } => {
            let mut p = placements.clone();
            p.canonical *= f;
            for i in &mut p.intervals {
                *i = (i.0 * f, i.1 * f);
            }
            SolutionKind::ToppedSubstrip { m: m * f, placements: p }
        }
        SolutionKind::WholeDomain => SolutionKind::WholeDomain,
    };
    CheegerSolution { kind, ..s.clone() }
}

/// Picture of a rectangle classification, in the caller's units.
pub fn rectangle_svg(rect: Rectangle, c: &StripClassification) -> Result<String, GeometryError> {
    let length = rect.length();
    let unscale = 1.0 / c.evidence.scale_to_user;
    let (domain, offset) = if length.is_finite() {
        (
            Layer {
                class: "domain",
                id: "domain".into(),
                shape: box_shape(-0.5 * length, 0.5 * length),
            },
            -0.5 * length,
        )
    } else {
        let half = 0.5 * c.evidence.m + 1.0 + WINDOW_MARGIN;
        (
            Layer {
                class: "domain-window",
                id: "domain".into(),
                shape: box_shape(-half, half),
            },
            0.0,
        )
    };
    classification_layers(
        c,
        domain,
        |s0, m| Ok(build_topped_substrip(m, SVG_SEGMENTS)?.translated(Vec2::new(offset + s0 + 0.5 * m, 0.0))),
        |r| build_cut_corner_rectangle(length, r, SVG_SEGMENTS),
        unscale,
    )
}

/// Picture of a strip or annulus classification. Unbounded spines are drawn
/// over the window the classifier worked on.
pub fn curve_svg(curve: &StripCurve, c: &StripClassification) -> Result<String, GeometryError> {
    if curve.is_straight() && curve.kind() == CurveKind::Infinite {
        return rectangle_svg(Rectangle::infinite(), c);
    }
    let working = if curve.kind().is_unbounded() {
        let len = c
            .evidence
            .truncated_length
            .unwrap_or(c.evidence.m + 2.0 + 2.0 * WINDOW_MARGIN);
        curve.window(len)?
    } else {
        curve.clone()
    };
    let domain = Layer {
        class: if curve.kind().is_unbounded() { "domain-window" } else { "domain" },
        id: "domain".into(),
        shape: build_strip_polygon(&working)?,
    };
    classification_layers(
        c,
        domain,
        |s0, m| build_topped_substrip_on_curve(&working, s0, m, SVG_SEGMENTS),
        |r| build_strip_cut_corners(&working, r, SVG_SEGMENTS),
        1.0,
    )
}
