//! Unit-speed spines of strips and annuli, sampled at uniform arclength.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::spline::CubicSpline2;
use super::{strip, three_point_curvature, Vec2};

/// Number of arclength intervals used when the caller does not choose one.
pub const DEFAULT_INTERVALS: usize = 2048;

/// Allowed excess of the sampled curvature over 1.
pub const CURVATURE_TOLERANCE: f64 = 1e-6;

/// Default window for semi-infinite and infinite spines given without a length.
const DEFAULT_WINDOW: f64 = 64.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Finite,
    SemiInfinite,
    Infinite,
    Annulus,
}

impl CurveKind {
    pub fn is_open(self) -> bool {
        !matches!(self, CurveKind::Annulus)
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, CurveKind::SemiInfinite | CurveKind::Infinite)
    }
}

/// Position, unit tangent and left unit normal of the spine at one arclength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub point: Vec2,
    pub tangent: Vec2,
    pub normal: Vec2,
}

impl Frame {
    fn new(point: Vec2, tangent: Vec2) -> Self {
        Self {
            point,
            tangent,
            normal: tangent.perp(),
        }
    }

    /// `Ψ(s, t) = γ(s) + t ν(s)` at this frame's `s`.
    #[inline]
    pub fn offset(&self, t: f64) -> Vec2 {
        self.point + self.normal * t
    }
}

/// How frames away from the samples are evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveSource {
    Segment {
        origin: Vec2,
        direction: Vec2,
    },
    /// Circle of `radius` about `center`; `sign = +1` turns left, `-1` right.
    Arc {
        center: Vec2,
        radius: f64,
        start_angle: f64,
        sign: f64,
    },
    /// Cubic Hermite interpolation of the samples.
    Sampled,
}

/// A violated spine invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    TooFewSamples(usize),
    UnitSpeed { index: usize, norm: f64 },
    NormalNotOrthogonal { index: usize, dot: f64 },
    UnevenSpacing { index: usize, spacing: f64, step: f64 },
    Curvature { index: usize, curvature: f64 },
    NotClosed { gap: f64 },
    NotInjective { first: usize, second: usize },
}

impl Violation {
    /// Short name of the invariant.
    pub fn invariant(&self) -> &'static str {
        match self {
            Violation::TooFewSamples(_) => "sample_count",
            Violation::UnitSpeed { .. } => "unit_speed",
            Violation::NormalNotOrthogonal { .. } => "normal_orthogonal",
            Violation::UnevenSpacing { .. } => "uniform_arclength",
            Violation::Curvature { .. } => "curvature_bound",
            Violation::NotClosed { .. } => "closed",
            Violation::NotInjective { .. } => "injective_offsets",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.invariant())?;
        match self {
            Violation::TooFewSamples(n) => write!(f, "{n} samples, at least 3 needed"),
            Violation::UnitSpeed { index, norm } => {
                write!(f, "|tangent| = {norm} at sample {index}")
            }
            Violation::NormalNotOrthogonal { index, dot } => {
                write!(f, "normal . tangent = {dot} at sample {index}")
            }
            Violation::UnevenSpacing {
                index,
                spacing,
                step,
            } => write!(
                f,
                "spacing {spacing} after sample {index} differs from the step {step}"
            ),
            Violation::Curvature { index, curvature } => {
                write!(f, "|curvature| = {curvature} > 1 at sample {index}")
            }
            Violation::NotClosed { gap } => write!(f, "first and last samples differ by {gap}"),
            Violation::NotInjective { first, second } => write!(
                f,
                "offset boundary edges {first} and {second} intersect"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("cannot read curve file: {0}")]
    Io(String),
    #[error("malformed curve document: {0}")]
    Parse(String),
    #[error("bad curve parameter: {0}")]
    Parameter(String),
    #[error("curve rejected: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

/// A unit-speed spine `γ` with its normals, sampled at a uniform step.
#[derive(Debug, Clone)]
pub struct StripCurve {
    frames: Vec<Frame>,
    step: f64,
    length: f64,
    kind: CurveKind,
    source: CurveSource,
}

impl StripCurve {
    /// Straight spine from the origin along `+x`.
    pub fn segment(length: f64, kind: CurveKind) -> Result<Self, CurveError> {
        Self::segment_with(length, kind, DEFAULT_INTERVALS)
    }

    pub fn segment_with(length: f64, kind: CurveKind, intervals: usize) -> Result<Self, CurveError> {
        if kind == CurveKind::Annulus {
            return Err(CurveError::Parameter("a segment cannot be closed".into()));
        }
        positive("length", length)?;
        let source = CurveSource::Segment {
            origin: Vec2::ZERO,
            direction: Vec2::new(1.0, 0.0),
        };
        Self::from_source(source, length, kind, intervals)
    }

    /// Circular arc starting at the origin heading along `+x`.
    pub fn arc(radius: f64, length: f64, clockwise: bool) -> Result<Self, CurveError> {
        Self::arc_with(radius, length, clockwise, DEFAULT_INTERVALS)
    }

    pub fn arc_with(
        radius: f64,
        length: f64,
        clockwise: bool,
        intervals: usize,
    ) -> Result<Self, CurveError> {
        positive("radius", radius)?;
        positive("length", length)?;
        if length >= 2.0 * PI * radius {
            return Err(CurveError::Parameter(format!(
                "arc length {length} wraps the circle of radius {radius}; use a circle"
            )));
        }
        let sign = if clockwise { -1.0 } else { 1.0 };
        let source = CurveSource::Arc {
            center: Vec2::new(0.0, sign * radius),
            radius,
            start_angle: -sign * PI / 2.0,
            sign,
        };
        Self::from_source(source, length, CurveKind::Finite, intervals)
    }

    /// Counterclockwise circle about the origin: the spine of a circular annulus.
    pub fn circle(radius: f64) -> Result<Self, CurveError> {
        Self::circle_with(radius, DEFAULT_INTERVALS)
    }

    pub fn circle_with(radius: f64, intervals: usize) -> Result<Self, CurveError> {
        positive("radius", radius)?;
        let source = CurveSource::Arc {
            center: Vec2::ZERO,
            radius,
            start_angle: 0.0,
            sign: 1.0,
        };
        Self::from_source(source, 2.0 * PI * radius, CurveKind::Annulus, intervals)
    }

    /// Spine through ordered points, interpolated by a cubic spline (periodic
    /// for annuli) and resampled at uniform arclength.
    pub fn from_points(points: &[Vec2], kind: CurveKind) -> Result<Self, CurveError> {
        Self::from_points_with(points, kind, DEFAULT_INTERVALS)
    }

    pub fn from_points_with(
        points: &[Vec2],
        kind: CurveKind,
        intervals: usize,
    ) -> Result<Self, CurveError> {
        check_intervals(intervals)?;
        let mut pts: Vec<Vec2> = Vec::with_capacity(points.len());
        for &p in points {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(CurveError::Parameter("non-finite sample".into()));
            }
            if pts.last().map_or(true, |q: &Vec2| q.distance(p) > 0.0) {
                pts.push(p);
            }
        }
        let closed = kind == CurveKind::Annulus;
        if closed && pts.len() > 1 && pts[0].distance(*pts.last().unwrap()) <= 1e-9 {
            pts.pop();
        }
        let needed = if closed { 3 } else { 2 };
        if pts.len() < needed {
            return Err(CurveError::Invalid(vec![Violation::TooFewSamples(pts.len())]));
        }
        let spline = if closed {
            CubicSpline2::periodic(&pts)
        } else {
            CubicSpline2::natural(&pts)
        };
        let table = ArclengthTable::new(&spline);
        let length = table.total();
        let step = length / intervals as f64;
        let frames = (0..=intervals)
            .map(|k| {
                let s = if k == intervals { length } else { step * k as f64 };
                let (p, d) = spline.eval(table.param_at(&spline, s));
                Frame::new(p, d.normalized())
            })
            .collect();
        Self::finish(frames, step, length, kind, CurveSource::Sampled)
    }

    /// Spine with prescribed signed curvature `κ(s)`, starting at the origin
    /// heading along `+x`.
    pub fn from_curvature(
        length: f64,
        kind: CurveKind,
        intervals: usize,
        curvature: impl Fn(f64) -> f64,
    ) -> Result<Self, CurveError> {
        positive("length", length)?;
        check_intervals(intervals)?;
        let step = length / intervals as f64;
        const SUB: usize = 16;
        let h = step / SUB as f64;
        let mut frames = Vec::with_capacity(intervals + 1);
        let mut theta = 0.0;
        let mut p = Vec2::ZERO;
        frames.push(Frame::new(p, Vec2::from_angle(theta)));
        for k in 0..intervals {
            for j in 0..SUB {
                let s0 = step * k as f64 + h * j as f64;
                // Simpson for the turning angle, then for the position
                let k0 = curvature(s0);
                let km = curvature(s0 + 0.5 * h);
                let k1 = curvature(s0 + h);
                let th_m = theta + h / 24.0 * (5.0 * k0 + 8.0 * km - k1);
                let th_1 = theta + h / 6.0 * (k0 + 4.0 * km + k1);
                p = p + (Vec2::from_angle(theta)
                    + Vec2::from_angle(th_m) * 4.0
                    + Vec2::from_angle(th_1))
                    * (h / 6.0);
                theta = th_1;
            }
            frames.push(Frame::new(p, Vec2::from_angle(theta)));
        }
        Self::finish(frames, step, length, kind, CurveSource::Sampled)
    }

    fn from_source(
        source: CurveSource,
        length: f64,
        kind: CurveKind,
        intervals: usize,
    ) -> Result<Self, CurveError> {
        check_intervals(intervals)?;
        let step = length / intervals as f64;
        let frames = (0..=intervals)
            .map(|k| {
                let s = if k == intervals { length } else { step * k as f64 };
                analytic_frame(&source, s)
            })
            .collect();
        Self::finish(frames, step, length, kind, source)
    }

    fn finish(
        frames: Vec<Frame>,
        step: f64,
        length: f64,
        kind: CurveKind,
        source: CurveSource,
    ) -> Result<Self, CurveError> {
        let curve = Self {
            frames,
            step,
            length,
            kind,
            source,
        };
        let violations = curve.violations();
        if violations.is_empty() {
            Ok(curve)
        } else {
            Err(CurveError::Invalid(violations))
        }
    }

    /// Reads a curve document from disk.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, CurveError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| CurveError::Io(format!("{}: {e}", path.as_ref().display())))?;
        CurveFile::parse(&text)?.build()
    }

    /// The same spine restricted to a window of length `window` (from the
    /// start for semi-infinite spines, centered otherwise). Analytic spines
    /// are regenerated at that length; sampled ones are cut, never extended.
    pub fn window(&self, window: f64) -> Result<Self, CurveError> {
        positive("window", window)?;
        let intervals = self.frames.len() - 1;
        match self.source {
            CurveSource::Segment { .. } => Self::from_source(self.source, window, self.kind, intervals),
            _ => {
                if self.kind == CurveKind::Annulus || window >= self.length {
                    return Ok(self.clone());
                }
                let start = match self.kind {
                    CurveKind::SemiInfinite => 0.0,
                    _ => 0.5 * (self.length - window),
                };
                let step = window / intervals as f64;
                let frames = (0..=intervals)
                    .map(|k| self.frame_at(start + step * k as f64))
                    .collect();
                let source = match self.source {
                    CurveSource::Arc {
                        center,
                        radius,
                        start_angle,
                        sign,
                    } => CurveSource::Arc {
                        center,
                        radius,
                        start_angle: start_angle + sign * start / radius,
                        sign,
                    },
                    other => other,
                };
                Self::finish(frames, step, window, self.kind, source)
            }
        }
    }

    #[inline]
    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.length
    }

    #[inline]
    pub fn step(&self) -> f64 {
        self.step
    }

    #[inline]
    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    #[inline]
    pub fn source(&self) -> CurveSource {
        self.source
    }

    /// Frame at arclength `s`; periodic for annuli, extrapolated past the
    /// ends of open spines.
    pub fn frame_at(&self, s: f64) -> Frame {
        let s = if self.kind == CurveKind::Annulus {
            s.rem_euclid(self.length)
        } else {
            s
        };
        match self.source {
            CurveSource::Sampled => self.hermite(s),
            _ => analytic_frame(&self.source, s),
        }
    }

    fn hermite(&self, s: f64) -> Frame {
        let n = self.frames.len() - 1;
        if s <= 0.0 || s >= self.length {
            let f = if s <= 0.0 { self.frames[0] } else { self.frames[n] };
            let ds = if s <= 0.0 { s } else { s - self.length };
            return Frame::new(f.point + f.tangent * ds, f.tangent);
        }
        let i = ((s / self.step).floor() as usize).min(n - 1);
        let t = (s - self.step * i as f64) / self.step;
        let (f0, f1) = (self.frames[i], self.frames[i + 1]);
        let h = self.step;
        let (t2, t3) = (t * t, t * t * t);
        let p = f0.point * (2.0 * t3 - 3.0 * t2 + 1.0)
            + f0.tangent * (h * (t3 - 2.0 * t2 + t))
            + f1.point * (-2.0 * t3 + 3.0 * t2)
            + f1.tangent * (h * (t3 - t2));
        let d = f0.point * ((6.0 * t2 - 6.0 * t) / h)
            + f0.tangent * (3.0 * t2 - 4.0 * t + 1.0)
            + f1.point * ((-6.0 * t2 + 6.0 * t) / h)
            + f1.tangent * (3.0 * t2 - 2.0 * t);
        Frame::new(p, d.normalized())
    }

    /// Three-point curvature at every sample (zero at the ends of open spines).
    pub fn curvatures(&self) -> Vec<f64> {
        let n = self.frames.len();
        let p = |i: usize| self.frames[i].point;
        (0..n)
            .map(|i| {
                if self.kind == CurveKind::Annulus {
                    // the last sample repeats the first
                    let m = n - 1;
                    let j = i % m;
                    three_point_curvature(p((j + m - 1) % m), p(j), p((j + 1) % m))
                } else if i == 0 || i + 1 == n {
                    0.0
                } else {
                    three_point_curvature(p(i - 1), p(i), p(i + 1))
                }
            })
            .collect()
    }

    pub fn max_abs_curvature(&self) -> f64 {
        self.curvatures().into_iter().fold(0.0, |a, k| a.max(k.abs()))
    }

    /// Whether the spine is a straight segment.
    pub fn is_straight(&self) -> bool {
        match self.source {
            CurveSource::Segment { .. } => true,
            CurveSource::Arc { .. } => false,
            CurveSource::Sampled => {
                let first = self.frames[0];
                self.kind.is_open()
                    && self.frames.iter().all(|f| {
                        f.tangent.distance(first.tangent) <= 1e-12
                            && (f.point - first.point).cross(first.tangent).abs()
                                <= 1e-12 * self.length
                    })
            }
        }
    }

    /// Every violated invariant; empty for a valid spine.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.frames.len();
        if n < 3 {
            out.push(Violation::TooFewSamples(n));
            return out;
        }
        for (i, f) in self.frames.iter().enumerate() {
            let norm = f.tangent.norm();
            if (norm - 1.0).abs() > 1e-8 || !norm.is_finite() {
                out.push(Violation::UnitSpeed { index: i, norm });
                break;
            }
            let dot = f.tangent.dot(f.normal);
            if dot.abs() > 1e-8 || (f.normal.norm() - 1.0).abs() > 1e-8 {
                out.push(Violation::NormalNotOrthogonal { index: i, dot });
                break;
            }
        }
        for i in 0..n - 1 {
            let spacing = self.frames[i].point.distance(self.frames[i + 1].point);
            if spacing > self.step * (1.0 + 1e-8) || spacing < self.step * (1.0 - 1e-3) {
                out.push(Violation::UnevenSpacing {
                    index: i,
                    spacing,
                    step: self.step,
                });
                break;
            }
        }
        if let Some((index, curvature)) = self
            .curvatures()
            .into_iter()
            .enumerate()
            .find(|(_, k)| k.abs() > 1.0 + CURVATURE_TOLERANCE)
        {
            out.push(Violation::Curvature { index, curvature });
        }
        if self.kind == CurveKind::Annulus {
            let (a, b) = (self.frames[0], self.frames[n - 1]);
            let gap = a.point.distance(b.point).max(a.tangent.distance(b.tangent));
            if gap > 1e-8 {
                out.push(Violation::NotClosed { gap });
            }
        }
        if out.is_empty() {
            let shape = strip::strip_polygon_unchecked(self);
            if let Some((first, second)) = shape.first_self_intersection() {
                out.push(Violation::NotInjective { first, second });
            }
        }
        out
    }
}

fn analytic_frame(source: &CurveSource, s: f64) -> Frame {
    match *source {
        CurveSource::Segment { origin, direction } => Frame::new(origin + direction * s, direction),
        CurveSource::Arc {
            center,
            radius,
            start_angle,
            sign,
        } => {
            let phi = start_angle + sign * s / radius;
            let radial = Vec2::from_angle(phi);
            Frame::new(center + radial * radius, radial.perp() * sign)
        }
        CurveSource::Sampled => unreachable!("sampled spines are interpolated"),
    }
}

fn positive(what: &str, v: f64) -> Result<(), CurveError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CurveError::Parameter(format!(
            "{what} must be positive and finite, got {v}"
        )))
    }
}

fn check_intervals(n: usize) -> Result<(), CurveError> {
    if n < 4 {
        Err(CurveError::Parameter(format!(
            "at least 4 arclength intervals are needed, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Cumulative arclength of a spline at its knots, with inversion.
struct ArclengthTable {
    cumulative: Vec<f64>,
}

const GAUSS5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

fn speed_integral(spline: &CubicSpline2, a: f64, b: f64) -> f64 {
    const PIECES: usize = 4;
    let h = (b - a) / PIECES as f64;
    let mut acc = 0.0;
    for k in 0..PIECES {
        let mid = a + h * (k as f64 + 0.5);
        for &(x, w) in &GAUSS5 {
            acc += w * spline.eval(mid + 0.5 * h * x).1.norm();
        }
    }
    acc * 0.5 * h
}

impl ArclengthTable {
    fn new(spline: &CubicSpline2) -> Self {
        let knots = spline.knots();
        let mut cumulative = Vec::with_capacity(knots.len());
        cumulative.push(0.0);
        for w in knots.windows(2) {
            let last = *cumulative.last().unwrap();
            cumulative.push(last + speed_integral(spline, w[0], w[1]));
        }
        Self { cumulative }
    }

    fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    fn param_at(&self, spline: &CubicSpline2, s: f64) -> f64 {
        let knots = spline.knots();
        let i = match self
            .cumulative
            .binary_search_by(|c| c.partial_cmp(&s).unwrap_or(std::cmp::Ordering::Less))
        {
            Ok(i) => return knots[i],
            Err(i) => i.clamp(1, knots.len() - 1) - 1,
        };
        let (u0, u1) = (knots[i], knots[i + 1]);
        let (s0, s1) = (self.cumulative[i], self.cumulative[i + 1]);
        let target = s - s0;
        let mut u = u0 + (u1 - u0) * (target / (s1 - s0));
        for _ in 0..8 {
            let err = speed_integral(spline, u0, u) - target;
            let speed = spline.eval(u).1.norm();
            let next = (u - err / speed).clamp(u0, u1);
            if (next - u).abs() <= 1e-15 * u1.abs().max(1.0) {
                u = next;
                break;
            }
            u = next;
        }
        u
    }
}

/// Parsed curve document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveFile {
    Primitive(PrimitiveCurve),
    Samples(SampledCurve),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "primitive", rename_all = "snake_case", deny_unknown_fields)]
pub enum PrimitiveCurve {
    Segment {
        #[serde(default)]
        length: Option<f64>,
        #[serde(default)]
        kind: Option<CurveKind>,
        #[serde(default)]
        intervals: Option<usize>,
    },
    Circle {
        radius: f64,
        #[serde(default)]
        intervals: Option<usize>,
    },
    Arc {
        radius: f64,
        #[serde(default)]
        length: Option<f64>,
        #[serde(default)]
        angle: Option<f64>,
        #[serde(default)]
        clockwise: bool,
        #[serde(default)]
        intervals: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampledCurve {
    pub samples: Vec<[f64; 2]>,
    pub kind: CurveKind,
    #[serde(default)]
    pub intervals: Option<usize>,
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<Self, CurveError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CurveError::Parse(e.to_string()))?;
        let parsed = if value.get("primitive").is_some() {
            serde_json::from_value(value).map(CurveFile::Primitive)
        } else if value.get("samples").is_some() {
            serde_json::from_value(value).map(CurveFile::Samples)
        } else {
            return Err(CurveError::Parse(
                "expected a \"primitive\" or a \"samples\" field".into(),
            ));
        };
        parsed.map_err(|e| CurveError::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<StripCurve, CurveError> {
        match self {
            CurveFile::Primitive(PrimitiveCurve::Segment {
                length,
                kind,
                intervals,
            }) => {
                let kind = kind.unwrap_or(CurveKind::Finite);
                let length = match (length, kind) {
                    (Some(l), _) => *l,
                    (None, CurveKind::Finite) => {
                        return Err(CurveError::Parameter("a finite segment needs a length".into()))
                    }
                    (None, _) => DEFAULT_WINDOW,
                };
                StripCurve::segment_with(length, kind, intervals.unwrap_or(DEFAULT_INTERVALS))
            }
            CurveFile::Primitive(PrimitiveCurve::Circle { radius, intervals }) => {
                StripCurve::circle_with(*radius, intervals.unwrap_or(DEFAULT_INTERVALS))
            }
            CurveFile::Primitive(PrimitiveCurve::Arc {
                radius,
                length,
                angle,
                clockwise,
                intervals,
            }) => {
                let length = match (length, angle) {
                    (Some(l), None) => *l,
                    (None, Some(a)) => a * radius,
                    _ => {
                        return Err(CurveError::Parameter(
                            "an arc needs exactly one of length or angle".into(),
                        ))
                    }
                };
                StripCurve::arc_with(
                    *radius,
                    length,
                    *clockwise,
                    intervals.unwrap_or(DEFAULT_INTERVALS),
                )
            }
            CurveFile::Samples(sampled) => {
                let pts: Vec<Vec2> = sampled.samples.iter().map(|p| Vec2::new(p[0], p[1])).collect();
                StripCurve::from_points_with(
                    &pts,
                    sampled.kind,
                    sampled.intervals.unwrap_or(DEFAULT_INTERVALS),
                )
            }
        }
    }
}
