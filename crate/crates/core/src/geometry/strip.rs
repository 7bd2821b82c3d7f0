//! Strip and annulus polygons, topped substrips placed along a spine, and
//! the placement scan.

use rayon::prelude::*;

use super::{
    ContainmentIndex, CurveKind, CurveSource, EdgeTag, Frame, GeometryError, PolyShape, Ring, StripCurve,
    Vec2,
};

/// Cap segments per quarter circle used by the placement scan by default.
pub const DEFAULT_CAP_SEGMENTS: usize = 64;

/// Relative part of the containment tolerance.
pub const RELATIVE_FIT_TOLERANCE: f64 = 1e-9;

/// A closed strip: spine of kind [`CurveKind::Annulus`].
#[derive(Debug, Clone)]
pub struct Annulus {
    pub spine: StripCurve,
    pub spine_length: f64,
}

impl Annulus {
    pub fn new(spine: StripCurve) -> Result<Self, GeometryError> {
        if spine.kind() != CurveKind::Annulus {
            return Err(GeometryError::WrongKind {
                expected: "annulus",
                found: spine.kind(),
            });
        }
        let spine_length = spine.length();
        Ok(Self {
            spine,
            spine_length,
        })
    }
}

fn offset_tag(curve: &StripCurve, t: f64) -> EdgeTag {
    match curve.source() {
        CurveSource::Arc {
            center,
            radius,
            sign,
            ..
        } => EdgeTag::Arc {
            center,
            radius: radius - sign * t,
        },
        _ => EdgeTag::Offset,
    }
}

/// Strip polygon vertices per spine sample interval.
pub const STRIP_REFINEMENT: usize = 4;

fn stations(curve: &StripCurve) -> Vec<Frame> {
    let n = (curve.frames().len() - 1) * STRIP_REFINEMENT;
    let h = curve.length() / n as f64;
    (0..=n)
        .map(|k| {
            if k % STRIP_REFINEMENT == 0 {
                curve.frames()[k / STRIP_REFINEMENT]
            } else {
                curve.frame_at(h * k as f64)
            }
        })
        .collect()
}

/// Strip polygon without the injectivity check.
pub(crate) fn strip_polygon_unchecked(curve: &StripCurve) -> PolyShape {
    let frames = stations(curve);
    let frames = &frames[..];
    let segments = frames.len() - 1;
    if curve.kind() == CurveKind::Annulus {
        let ring_at = |t: f64| {
            let tag = offset_tag(curve, t);
            let mut r = Ring::new();
            for f in &frames[..frames.len() - 1] {
                r.push(f.offset(t), tag);
            }
            r
        };
        let (a, b) = (ring_at(1.0), ring_at(-1.0));
        let (outer, inner) = if a.signed_area().abs() >= b.signed_area().abs() {
            (a, b)
        } else {
            (b, a)
        };
        return PolyShape::new(outer, vec![inner], segments);
    }
    let mut r = Ring::new();
    let (lower, upper) = (offset_tag(curve, -1.0), offset_tag(curve, 1.0));
    for (i, f) in frames.iter().enumerate() {
        let tag = if i + 1 == frames.len() {
            EdgeTag::Straight
        } else {
            lower
        };
        r.push(f.offset(-1.0), tag);
    }
    for (i, f) in frames.iter().enumerate().rev() {
        let tag = if i == 0 { EdgeTag::Straight } else { upper };
        r.push(f.offset(1.0), tag);
    }
    PolyShape::new(r, vec![], segments)
}

/// The strip `Ψ([0, L] × [−1, 1])` as a polygon: one loop for open spines,
/// an outer loop and a hole for annuli.
pub fn build_strip_polygon(curve: &StripCurve) -> Result<PolyShape, GeometryError> {
    let shape = strip_polygon_unchecked(curve);
    match shape.first_self_intersection() {
        Some((first, second)) => Err(GeometryError::NotInjective { first, second }),
        None => Ok(shape),
    }
}

/// Largest gap between the strip polygon and the exact offset curves.
pub fn strip_discretization_error(curve: &StripCurve) -> f64 {
    if matches!(curve.source(), CurveSource::Segment { .. }) {
        return 0.0;
    }
    let frames = stations(curve);
    let h = curve.length() / (frames.len() - 1) as f64;
    let mut worst: f64 = 0.0;
    for i in 0..frames.len() - 1 {
        let mid = curve.frame_at(h * (i as f64 + 0.5));
        for t in [-1.0, 1.0] {
            let chord_mid = (frames[i].offset(t) + frames[i + 1].offset(t)) * 0.5;
            worst = worst.max(chord_mid.distance(mid.offset(t)));
        }
    }
    worst
}

/// Containment tolerance for a spine: the relative floor or twice the
/// polygon discretization error, whichever is larger.
pub fn fit_tolerance(curve: &StripCurve) -> f64 {
    (RELATIVE_FIT_TOLERANCE * curve.length()).max(2.0 * strip_discretization_error(curve))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Anchor spacing; defaults to the spine step.
    pub step: Option<f64>,
    pub cap_segments: usize,
    /// Defaults to [`fit_tolerance`].
    pub tolerance: Option<f64>,
    /// Bisect each interval endpoint between a feasible and an infeasible anchor.
    pub refine: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            step: None,
            cap_segments: DEFAULT_CAP_SEGMENTS,
            tolerance: None,
            refine: true,
        }
    }
}

/// Feasible anchors `s₀` of topped substrips of length `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub m: f64,
    pub step: f64,
    pub tolerance: f64,
    pub scanned: usize,
    /// Feasible scan anchors, ascending.
    pub anchors: Vec<f64>,
    /// Maximal feasible intervals; on annuli an interval may end past `L`.
    pub intervals: Vec<(f64, f64)>,
    /// Annulus spine on which every anchor is feasible.
    pub all_anchors: bool,
}

impl FitResult {
    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    pub fn total_extent(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    /// Midpoint of the longest feasible interval.
    pub fn canonical(&self) -> Option<f64> {
        self.intervals
            .iter()
            .max_by(|x, y| (x.1 - x.0).total_cmp(&(y.1 - y.0)))
            .map(|(a, b)| 0.5 * (a + b))
    }
}

/// Boundary points of the two caps of the placement at `s0`, counterclockwise.
fn cap_points(curve: &StripCurve, s0: f64, m: f64, segments: usize) -> Vec<Vec2> {
    let n = 2 * segments;
    let back = curve.frame_at(s0);
    let front = curve.frame_at(s0 + m);
    let mut pts = Vec::with_capacity(2 * (n + 1));
    for k in 0..=n {
        let phi = std::f64::consts::PI * k as f64 / n as f64;
        let (s, c) = phi.sin_cos();
        pts.push(back.point + back.normal * c - back.tangent * s);
        pts.push(front.point - front.normal * c + front.tangent * s);
    }
    pts
}

/// Strip coordinate of `p` near `guess`: a root of the tangential offset,
/// found by secant steps seeded with one fixed-point step.
fn project(curve: &StripCurve, p: Vec2, guess: f64) -> f64 {
    let offset = |s: f64| {
        let f = curve.frame_at(s);
        (p - f.point).dot(f.tangent)
    };
    let eps = 1e-13 * curve.length().max(1.0);
    let (mut s0, mut g0) = (guess, offset(guess));
    let mut s1 = s0 + g0;
    for _ in 0..100 {
        let g1 = offset(s1);
        if g1.abs() <= eps || g1 == g0 {
            break;
        }
        let next = s1 - g1 * (s1 - s0) / (g1 - g0);
        (s0, g0, s1) = (s1, g1, next);
    }
    s1
}

/// Arclength the caps reach beyond the body: `(back, front)`.
fn cap_extents(curve: &StripCurve, s0: f64, m: f64, segments: usize) -> (f64, f64) {
    let back = curve.frame_at(s0);
    let front = curve.frame_at(s0 + m);
    let n = 2 * segments;
    let (mut eb, mut ef) = (0.0_f64, 0.0_f64);
    for k in 0..=n {
        let phi = std::f64::consts::PI * k as f64 / n as f64;
        let (s, c) = phi.sin_cos();
        let pb = back.point + back.normal * c - back.tangent * s;
        eb = eb.max(s0 - project(curve, pb, s0 - s));
        let pf = front.point - front.normal * c + front.tangent * s;
        ef = ef.max(project(curve, pf, s0 + m + s) - s0 - m);
    }
    (eb, ef)
}

struct Scan<'a> {
    curve: &'a StripCurve,
    index: ContainmentIndex,
    m: f64,
    segments: usize,
    tol: f64,
}

impl Scan<'_> {
    fn fits(&self, s0: f64) -> bool {
        let inside = cap_points(self.curve, s0, self.m, self.segments)
            .into_iter()
            .all(|p| self.index.contains_with_tolerance(p, self.tol));
        if !inside {
            return false;
        }
        if self.curve.kind() == CurveKind::Annulus {
            let (eb, ef) = cap_extents(self.curve, s0, self.m, self.segments);
            return eb + self.m + ef <= self.curve.length() + self.tol;
        }
        true
    }

    /// Boundary between a feasible `good` and an infeasible `bad` anchor.
    fn refine(&self, mut good: f64, mut bad: f64) -> f64 {
        for _ in 0..60 {
            if (good - bad).abs() <= 1e-13 * self.curve.length() {
                break;
            }
            let mid = 0.5 * (good + bad);
            if self.fits(mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        good
    }
}

/// Scans anchors `s₀` for topped substrips of length `m` that fit in the strip.
pub fn fit_topped_substrip(curve: &StripCurve, m: f64) -> FitResult {
    fit_topped_substrip_with(curve, m, &FitOptions::default())
}

pub fn fit_topped_substrip_with(curve: &StripCurve, m: f64, options: &FitOptions) -> FitResult {
    let step = options.step.unwrap_or_else(|| curve.step());
    let tolerance = options.tolerance.unwrap_or_else(|| fit_tolerance(curve));
    let length = curve.length();
    let closed = curve.kind() == CurveKind::Annulus;
    let mut empty = FitResult {
        m,
        step,
        tolerance,
        scanned: 0,
        anchors: vec![],
        intervals: vec![],
        all_anchors: false,
    };
    if !(m >= 0.0 && m.is_finite()) || (!closed && m > length) {
        return empty;
    }
    let grid: Vec<f64> = if closed {
        let n = (length / step).round().max(1.0) as usize;
        let h = length / n as f64;
        (0..n).map(|k| h * k as f64).collect()
    } else {
        let span = length - m;
        let n = (span / step).floor() as usize;
        let mut g: Vec<f64> = (0..=n).map(|k| step * k as f64).collect();
        if span - step * n as f64 > 1e-12 * length {
            g.push(span);
        }
        g
    };
    empty.scanned = grid.len();
    let scan = Scan {
        curve,
        index: ContainmentIndex::new(&strip_polygon_unchecked(curve)),
        m,
        segments: options.cap_segments.max(1),
        tol: tolerance,
    };
    let ok: Vec<bool> = grid.par_iter().map(|&s| scan.fits(s)).collect();
    let anchors: Vec<f64> = grid
        .iter()
        .zip(&ok)
        .filter_map(|(&s, &f)| f.then_some(s))
        .collect();
    if anchors.is_empty() {
        return empty;
    }
    let n = grid.len();
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        if ok[i] {
            let j0 = i;
            while i + 1 < n && ok[i + 1] {
                i += 1;
            }
            runs.push((j0, i));
        }
        i += 1;
    }
    let all_anchors = closed && anchors.len() == n;
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    if all_anchors {
        intervals.push((0.0, length));
    } else {
        let prev = |k: usize| {
            if k > 0 {
                Some(grid[k - 1])
            } else if closed {
                Some(grid[n - 1] - length)
            } else {
                None
            }
        };
        let next = |k: usize| {
            if k + 1 < n {
                Some(grid[k + 1])
            } else if closed {
                Some(grid[0] + length)
            } else {
                None
            }
        };
        for &(a, b) in &runs {
            let lo = match (options.refine, prev(a)) {
                (true, Some(bad)) => scan.refine(grid[a], bad),
                _ => grid[a],
            };
            let hi = match (options.refine, next(b)) {
                (true, Some(bad)) => scan.refine(grid[b], bad),
                _ => grid[b],
            };
            intervals.push((lo, hi));
        }
        // a run through s = 0 on an annulus continues past L
        if closed && intervals.len() > 1 && ok[0] && ok[n - 1] {
            let first = intervals.remove(0);
            let last = intervals.last_mut().unwrap();
            last.1 = first.1 + length;
        }
        if closed {
            for iv in &mut intervals {
                if iv.0 < 0.0 {
                    *iv = (iv.0 + length, iv.1 + length);
                }
            }
            intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
        }
    }
    FitResult {
        anchors,
        intervals,
        all_anchors,
        ..empty
    }
}

fn offset_run(ring: &mut Ring, curve: &StripCurve, s_from: f64, s_to: f64, t: f64, pieces: usize) {
    let tag = offset_tag(curve, t);
    for k in 0..pieces {
        let s = s_from + (s_to - s_from) * k as f64 / pieces as f64;
        ring.push(curve.frame_at(s).offset(t), tag);
    }
}

fn pieces_for(curve: &StripCurve, span: f64) -> usize {
    ((span.abs() * STRIP_REFINEMENT as f64 / curve.step()).ceil() as usize).max(1)
}

/// The topped substrip `Ψ([s₀, s₀ + m] × [−1, 1])` with its two unit caps.
pub fn build_topped_substrip_on_curve(
    curve: &StripCurve,
    s0: f64,
    m: f64,
    segments: usize,
) -> Result<PolyShape, GeometryError> {
    if segments < 4 {
        return Err(GeometryError::Resolution(segments));
    }
    if !(m.is_finite() && m >= 0.0) {
        return Err(GeometryError::OutOfRange {
            what: "M",
            value: m,
            range: "[0, inf)".into(),
        });
    }
    let s1 = s0 + m;
    let (back, front) = (curve.frame_at(s0), curve.frame_at(s1));
    let n = pieces_for(curve, m);
    let mut ring = Ring::new();
    if m > 0.0 {
        offset_run(&mut ring, curve, s0, s1, -1.0, n);
    }
    let start = (-front.normal).angle();
    ring.push_arc(front.point, 1.0, start, std::f64::consts::PI, 2 * segments);
    if m > 0.0 {
        offset_run(&mut ring, curve, s1, s0, 1.0, n);
    }
    let start = back.normal.angle();
    ring.push_arc(back.point, 1.0, start, std::f64::consts::PI, 2 * segments);
    Ok(PolyShape::new(ring, vec![], segments))
}

/// Spine arclength of the center of a corner disk of radius `t` tangent to
/// the offset line `t = ±1` (center level `q`) and to the normal end segment
/// at `end`, whose inward direction is `inward`.
fn corner_center(curve: &StripCurve, end: f64, inward: f64, q: f64, t: f64) -> f64 {
    let e = curve.frame_at(end);
    let dir = e.tangent * inward;
    let g = |s: f64| (curve.frame_at(s).offset(q) - e.point).dot(dir) - t;
    // g(end) = -t < 0; march inward to the first sign change
    let h = 0.05_f64.min(0.25 * curve.length());
    let mut bad = end;
    let mut good = end + inward * h;
    while g(good) < 0.0 {
        bad = good;
        good += inward * h;
        if (good - end).abs() > curve.length() {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (good + bad);
        if g(mid) >= 0.0 {
            good = mid;
        } else {
            bad = mid;
        }
        if (good - bad).abs() <= 1e-15 * curve.length().max(1.0) {
            break;
        }
    }
    0.5 * (good + bad)
}

fn ccw_sweep(center: Vec2, from: Vec2, to: Vec2) -> (f64, f64) {
    let a = (from - center).angle();
    let b = (to - center).angle();
    (a, (b - a).rem_euclid(2.0 * std::f64::consts::PI))
}

/// An open strip with its four corners replaced by arcs of radius `t`, each
/// tangent to an offset line and to a normal end segment.
pub fn build_strip_cut_corners(
    curve: &StripCurve,
    t: f64,
    segments: usize,
) -> Result<PolyShape, GeometryError> {
    if segments < 4 {
        return Err(GeometryError::Resolution(segments));
    }
    if !curve.kind().is_open() {
        return Err(GeometryError::WrongKind {
            expected: "open",
            found: curve.kind(),
        });
    }
    if !(t > 0.0 && t <= 1.0) {
        return Err(GeometryError::OutOfRange {
            what: "t",
            value: t,
            range: "(0, 1]".into(),
        });
    }
    let length = curve.length();
    let q = 1.0 - t;
    let (f0, f1) = (curve.frame_at(0.0), curve.frame_at(length));
    let sb0 = corner_center(curve, 0.0, 1.0, -q, t);
    let st0 = corner_center(curve, 0.0, 1.0, q, t);
    let sb1 = corner_center(curve, length, -1.0, -q, t);
    let st1 = corner_center(curve, length, -1.0, q, t);
    if sb0 >= sb1 || st0 >= st1 {
        return Err(GeometryError::OutOfRange {
            what: "t",
            value: t,
            range: "radius leaving room between the corners".into(),
        });
    }
    let c_br = curve.frame_at(sb1).offset(-q);
    let c_tr = curve.frame_at(st1).offset(q);
    let c_tl = curve.frame_at(st0).offset(q);
    let c_bl = curve.frame_at(sb0).offset(-q);
    let foot_br = c_br + f1.tangent * t;
    let foot_tr = c_tr + f1.tangent * t;
    let foot_tl = c_tl - f0.tangent * t;
    let foot_bl = c_bl - f0.tangent * t;
    let n_off = curve.frames().len() - 1;
    let gap = 1e-12 * length.max(1.0);

    let mut ring = Ring::new();
    offset_run(&mut ring, curve, sb0, sb1, -1.0, n_off);
    let (a, sw) = ccw_sweep(c_br, curve.frame_at(sb1).offset(-1.0), foot_br);
    ring.push_arc(c_br, t, a, sw, segments);
    if foot_br.distance(foot_tr) > gap {
        ring.push(foot_br, EdgeTag::Straight);
    }
    let (a, sw) = ccw_sweep(c_tr, foot_tr, curve.frame_at(st1).offset(1.0));
    ring.push_arc(c_tr, t, a, sw, segments);
    offset_run(&mut ring, curve, st1, st0, 1.0, n_off);
    let (a, sw) = ccw_sweep(c_tl, curve.frame_at(st0).offset(1.0), foot_tl);
    ring.push_arc(c_tl, t, a, sw, segments);
    if foot_tl.distance(foot_bl) > gap {
        ring.push(foot_tl, EdgeTag::Straight);
    }
    let (a, sw) = ccw_sweep(c_bl, foot_bl, curve.frame_at(sb0).offset(-1.0));
    ring.push_arc(c_bl, t, a, sw, segments);
    Ok(PolyShape::new(ring, vec![], segments))
}
