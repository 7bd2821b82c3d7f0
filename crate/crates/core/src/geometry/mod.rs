//! Polygonal stand-ins for the candidate sets and domains: builders, measures,
//! strip spines and containment tests.

mod curve;
mod polygon;
mod shapes;
mod spline;
mod strip;

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use curve::{
    CurveError, CurveFile, CurveKind, CurveSource, Frame, PrimitiveCurve, SampledCurve, StripCurve,
    Violation, CURVATURE_TOLERANCE, DEFAULT_INTERVALS,
};
pub use polygon::{convex_hull, ContainmentIndex, EdgeTag, Measure, PolyShape, Ring};
pub use shapes::{build_cut_corner_rectangle, build_topped_substrip, fill_cut_corner_ring};
pub use strip::{
    build_strip_cut_corners, build_strip_polygon, build_topped_substrip_on_curve,
    fit_tolerance, fit_topped_substrip, fit_topped_substrip_with, strip_discretization_error,
    Annulus, FitOptions, FitResult, DEFAULT_CAP_SEGMENTS,
};

/// Default number of segments used to discretize a quarter circle.
pub const DEFAULT_SEGMENTS_PER_ARC: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("polygon ring has {0} vertices, at least 3 are required")]
    Degenerate(usize),
    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: String,
    },
    #[error("at least 4 segments per arc are required, got {0}")]
    Resolution(usize),
    #[error("strip offsets intersect: edge {first} meets edge {second}")]
    NotInjective { first: usize, second: usize },
    #[error("operation needs a {expected} curve, got {found:?}")]
    WrongKind {
        expected: &'static str,
        found: CurveKind,
    },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A point or vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    /// Rotation by +90°.
    #[inline]
    pub fn perp(self) -> Self {
        Self {
            x: -self.y,
            y: self.x,
        }
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn distance(self, o: Vec2) -> f64 {
        (self - o).norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm2();
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Closed-segment intersection test (touching counts).
pub fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let o1 = (b - a).cross(c - a);
    let o2 = (b - a).cross(d - a);
    let o3 = (d - c).cross(a - c);
    let o4 = (d - c).cross(b - c);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    let on = |p: Vec2, q: Vec2, r: Vec2, o: f64| {
        o == 0.0
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.y >= p.y.min(q.y)
            && r.y <= p.y.max(q.y)
    };
    on(a, b, c, o1) || on(a, b, d, o2) || on(c, d, a, o3) || on(c, d, b, o4)
}

/// Signed curvature of the circle through three points.
pub fn three_point_curvature(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    let ab = a.distance(b);
    let bc = b.distance(c);
    let ca = c.distance(a);
    let denom = ab * bc * ca;
    if denom == 0.0 {
        return 0.0;
    }
    2.0 * (b - a).cross(c - a) / denom
}
