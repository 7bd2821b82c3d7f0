use super::{point_segment_distance, segments_intersect, GeometryError, Vec2};

/// Provenance of a polygon edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeTag {
    Straight,
    /// Chord of a circular arc.
    Arc { center: Vec2, radius: f64 },
    /// Chord of an offset of a strip spine.
    Offset,
}

/// A closed polygonal loop; edge `i` joins vertex `i` to vertex `i + 1` (mod n).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ring {
    pub vertices: Vec<Vec2>,
    pub tags: Vec<EdgeTag>,
}

impl Ring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a vertex whose outgoing edge has provenance `tag`.
    pub fn push(&mut self, p: Vec2, tag: EdgeTag) {
        self.vertices.push(p);
        self.tags.push(tag);
    }

    /// Appends the arc of `center`/`radius` from angle `start` sweeping `sweep`
    /// radians in `segments` chords. The end point is not pushed.
    pub fn push_arc(&mut self, center: Vec2, radius: f64, start: f64, sweep: f64, segments: usize) {
        let tag = EdgeTag::Arc { center, radius };
        self.vertices.reserve(segments);
        self.tags.reserve(segments);
        for k in 0..segments {
            let theta = start + sweep * (k as f64) / (segments as f64);
            self.push(center + Vec2::from_angle(theta) * radius, tag);
        }
    }

    pub fn clear(&mut self) {
        self.vertices.clear();
        self.tags.clear();
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Shoelace sum about the first vertex, so that far-off rings keep their precision.
    pub fn signed_area(&self) -> f64 {
        let o = self.vertices.first().copied().unwrap_or(Vec2::ZERO);
        0.5 * self.edges().map(|(a, b)| (a - o).cross(b - o)).sum::<f64>()
    }

    pub fn length(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    /// Signed area and length in one pass over the edges.
    pub fn measure(&self) -> Measure {
        let o = self.vertices.first().copied().unwrap_or(Vec2::ZERO);
        let (cross, perimeter) = self.edges().fold((0.0, 0.0), |(c, l), (a, b)| {
            (c + (a - o).cross(b - o), l + a.distance(b))
        });
        Measure {
            area: 0.5 * cross,
            perimeter,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let v = &self.vertices;
        let closing = match (v.last(), v.first()) {
            (Some(&a), Some(&b)) => Some((a, b)),
            _ => None,
        };
        v.windows(2).map(|w| (w[0], w[1])).chain(closing)
    }

    pub fn reverse(&mut self) {
        // keep each tag attached to its edge under the reversal
        let n = self.vertices.len();
        if n == 0 {
            return;
        }
        self.vertices.reverse();
        let mut tags: Vec<EdgeTag> = self.tags.clone();
        tags.reverse();
        tags.rotate_left(1);
        self.tags = tags;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Measure {
    pub area: f64,
    pub perimeter: f64,
}

/// A polygonal region: a counterclockwise outer ring and clockwise holes.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyShape {
    pub outer: Ring,
    pub holes: Vec<Ring>,
    pub segments_per_arc: usize,
}

impl PolyShape {
    /// Wraps rings, fixing their orientation (outer CCW, holes CW).
    pub fn new(mut outer: Ring, mut holes: Vec<Ring>, segments_per_arc: usize) -> Self {
        if outer.signed_area() < 0.0 {
            outer.reverse();
        }
        for h in &mut holes {
            if h.signed_area() > 0.0 {
                h.reverse();
            }
        }
        Self {
            outer,
            holes,
            segments_per_arc,
        }
    }

    pub fn rings(&self) -> impl Iterator<Item = &Ring> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }

    pub fn vertex_count(&self) -> usize {
        self.rings().map(Ring::len).sum()
    }

    /// Shoelace area (outer minus holes) and total boundary length.
    pub fn measure(&self) -> Result<Measure, GeometryError> {
        for r in self.rings() {
            if r.len() < 3 {
                return Err(GeometryError::Degenerate(r.len()));
            }
        }
        Ok(Measure {
            area: self.rings().map(Ring::signed_area).sum(),
            perimeter: self.rings().map(Ring::length).sum(),
        })
    }

    pub fn translated(&self, d: Vec2) -> Self {
        self.map_points(|p| p + d, |c, r| (c + d, r))
    }

    /// Homothety about the origin.
    pub fn scaled(&self, s: f64) -> Self {
        self.map_points(|p| p * s, |c, r| (c * s, r * s.abs()))
    }

    fn map_points(&self, f: impl Fn(Vec2) -> Vec2, g: impl Fn(Vec2, f64) -> (Vec2, f64)) -> Self {
        let map_ring = |r: &Ring| Ring {
            vertices: r.vertices.iter().map(|&p| f(p)).collect(),
            tags: r
                .tags
                .iter()
                .map(|t| match *t {
                    EdgeTag::Arc { center, radius } => {
                        let (center, radius) = g(center, radius);
                        EdgeTag::Arc { center, radius }
                    }
                    other => other,
                })
                .collect(),
        };
        Self {
            outer: map_ring(&self.outer),
            holes: self.holes.iter().map(map_ring).collect(),
            segments_per_arc: self.segments_per_arc,
        }
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in self.rings().flat_map(|r| r.vertices.iter()) {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    /// Largest vertex-to-vertex distance of the outer ring, by rotating
    /// calipers on its convex hull.
    pub fn diameter(&self) -> f64 {
        let hull = convex_hull(&self.outer.vertices);
        let n = hull.len();
        if n < 3 {
            return if n == 2 { hull[0].distance(hull[1]) } else { 0.0 };
        }
        let mut best: f64 = 0.0;
        let mut j = 1;
        for i in 0..n {
            let a = hull[i];
            let b = hull[(i + 1) % n];
            let edge = b - a;
            while edge.cross(hull[(j + 1) % n] - a) > edge.cross(hull[j] - a) {
                j = (j + 1) % n;
            }
            best = best.max(a.distance(hull[j])).max(b.distance(hull[j]));
        }
        best
    }

    /// Even-odd containment over all rings. Boundary points may go either way.
    pub fn contains(&self, p: Vec2) -> bool {
        let mut inside = false;
        for r in self.rings() {
            for (a, b) in r.edges() {
                if crosses_ray(p, a, b) {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn boundary_distance(&self, p: Vec2) -> f64 {
        self.rings()
            .flat_map(|r| r.edges())
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `p` lies in the closed region, up to `tol` outside.
    pub fn contains_with_tolerance(&self, p: Vec2, tol: f64) -> bool {
        self.contains(p) || self.boundary_distance(p) <= tol
    }

    /// First pair of non-adjacent edges that touch, as global edge indices
    /// (rings numbered in [`PolyShape::rings`] order).
    pub fn first_self_intersection(&self) -> Option<(usize, usize)> {
        struct E {
            id: usize,
            ring: usize,
            local: usize,
            ring_len: usize,
            a: Vec2,
            b: Vec2,
            xmin: f64,
            xmax: f64,
        }
        let mut edges = Vec::new();
        let mut id = 0;
        for (ri, r) in self.rings().enumerate() {
            for (k, (a, b)) in r.edges().enumerate() {
                edges.push(E {
                    id,
                    ring: ri,
                    local: k,
                    ring_len: r.len(),
                    a,
                    b,
                    xmin: a.x.min(b.x),
                    xmax: a.x.max(b.x),
                });
                id += 1;
            }
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by(|&i, &j| edges[i].xmin.total_cmp(&edges[j].xmin));
        let mut found: Option<(usize, usize)> = None;
        let mut active: Vec<usize> = Vec::new();
        for &i in &order {
            let e = &edges[i];
            active.retain(|&j| edges[j].xmax >= e.xmin);
            for &j in &active {
                let f = &edges[j];
                if e.ring == f.ring {
                    let n = e.ring_len;
                    let d = (e.local + n - f.local) % n;
                    if d == 1 || d == n - 1 || d == 0 {
                        continue;
                    }
                }
                let (ylo_e, yhi_e) = (e.a.y.min(e.b.y), e.a.y.max(e.b.y));
                let (ylo_f, yhi_f) = (f.a.y.min(f.b.y), f.a.y.max(f.b.y));
                if yhi_e < ylo_f || yhi_f < ylo_e {
                    continue;
                }
                if segments_intersect(e.a, e.b, f.a, f.b) {
                    let pair = (e.id.min(f.id), e.id.max(f.id));
                    if found.map_or(true, |q| pair < q) {
                        found = Some(pair);
                    }
                }
            }
            active.push(i);
        }
        found
    }

    pub fn is_simple(&self) -> bool {
        self.first_self_intersection().is_none()
    }
}

/// Counterclockwise convex hull (monotone chain), collinear points dropped.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Vec2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Vec2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if (b - a).cross(p - a) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

#[inline]
fn crosses_ray(p: Vec2, a: Vec2, b: Vec2) -> bool {
    if (a.y > p.y) != (b.y > p.y) {
        let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
        x > p.x
    } else {
        false
    }
}

/// Edge buckets by horizontal band for repeated containment queries.
#[derive(Debug, Clone)]
pub struct ContainmentIndex {
    edges: Vec<(Vec2, Vec2)>,
    bands: Vec<Vec<u32>>,
    y0: f64,
    band_height: f64,
}

impl ContainmentIndex {
    pub fn new(shape: &PolyShape) -> Self {
        let edges: Vec<(Vec2, Vec2)> = shape.rings().flat_map(|r| r.edges()).collect();
        let (lo, hi) = shape.bounding_box();
        let nb = (edges.len() / 4).clamp(1, 4096);
        let height = ((hi.y - lo.y) / nb as f64).max(f64::MIN_POSITIVE);
        let mut bands = vec![Vec::new(); nb];
        for (k, (a, b)) in edges.iter().enumerate() {
            let i0 = band_of(a.y.min(b.y), lo.y, height, nb);
            let i1 = band_of(a.y.max(b.y), lo.y, height, nb);
            for band in &mut bands[i0..=i1] {
                band.push(k as u32);
            }
        }
        Self {
            edges,
            bands,
            y0: lo.y,
            band_height: height,
        }
    }

    fn band(&self, y: f64) -> usize {
        band_of(y, self.y0, self.band_height, self.bands.len())
    }

    pub fn contains(&self, p: Vec2) -> bool {
        let y_top = self.y0 + self.band_height * self.bands.len() as f64;
        if p.y < self.y0 || p.y > y_top {
            return false;
        }
        let mut inside = false;
        for &k in &self.bands[self.band(p.y)] {
            let (a, b) = self.edges[k as usize];
            if crosses_ray(p, a, b) {
                inside = !inside;
            }
        }
        inside
    }

    /// Whether the boundary passes within `tol` of `p`.
    pub fn near_boundary(&self, p: Vec2, tol: f64) -> bool {
        let i0 = self.band(p.y - tol);
        let i1 = self.band(p.y + tol);
        for band in &self.bands[i0..=i1] {
            for &k in band {
                let (a, b) = self.edges[k as usize];
                if p.x < a.x.min(b.x) - tol || p.x > a.x.max(b.x) + tol {
                    continue;
                }
                if point_segment_distance(p, a, b) <= tol {
                    return true;
                }
            }
        }
        false
    }

    pub fn contains_with_tolerance(&self, p: Vec2, tol: f64) -> bool {
        self.contains(p) || self.near_boundary(p, tol)
    }
}

fn band_of(y: f64, y0: f64, h: f64, n: usize) -> usize {
    let i = ((y - y0) / h).floor();
    if i <= 0.0 {
        0
    } else {
        (i as usize).min(n - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_square() -> PolyShape {
        let mut r = Ring::new();
        for p in [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)] {
            r.push(Vec2::new(p.0, p.1), EdgeTag::Straight);
        }
        PolyShape::new(r, vec![], 1)
    }

    fn regular_polygon(n: usize) -> PolyShape {
        let mut r = Ring::new();
        r.push_arc(Vec2::ZERO, 1.0, 0.0, 2.0 * PI, n);
        PolyShape::new(r, vec![], n / 4)
    }

    #[test]
    fn unit_square_measure() {
        let m = unit_square().measure().unwrap();
        assert_eq!(m.area, 1.0);
        assert_eq!(m.perimeter, 4.0);
    }

    #[test]
    fn regular_polygon_converges_to_disk() {
        let m = regular_polygon(10_000).measure().unwrap();
        assert!((m.area - PI).abs() < 1e-6);
        assert!((m.perimeter - 2.0 * PI).abs() < 1e-6);
    }

    #[test]
    fn degenerate_ring_is_rejected() {
        let mut r = Ring::new();
        r.push(Vec2::ZERO, EdgeTag::Straight);
        r.push(Vec2::new(1.0, 0.0), EdgeTag::Straight);
        let s = PolyShape {
            outer: r,
            holes: vec![],
            segments_per_arc: 1,
        };
        assert_eq!(s.measure(), Err(GeometryError::Degenerate(2)));
    }

    #[test]
    fn orientation_is_normalized() {
        let mut r = Ring::new();
        for p in [(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)] {
            r.push(Vec2::new(p.0, p.1), EdgeTag::Straight);
        }
        let s = PolyShape::new(r, vec![], 1);
        assert!(s.outer.signed_area() > 0.0);
    }

    #[test]
    fn reversal_keeps_arc_tags_on_their_edges() {
        let mut r = Ring::new();
        r.push(Vec2::new(0.0, 0.0), EdgeTag::Straight);
        r.push(Vec2::new(1.0, 0.0), EdgeTag::Offset);
        r.push(Vec2::new(1.0, 1.0), EdgeTag::Straight);
        r.reverse();
        // edge (1,0)->(0,0) was the Straight edge (0,0)->(1,0)
        assert_eq!(r.vertices[1], Vec2::new(1.0, 0.0));
        assert_eq!(r.tags[1], EdgeTag::Straight);
        assert_eq!(r.vertices[0], Vec2::new(1.0, 1.0));
        assert_eq!(r.tags[0], EdgeTag::Offset);
    }

    #[test]
    fn annulus_with_hole() {
        let mut outer = Ring::new();
        outer.push_arc(Vec2::ZERO, 3.0, 0.0, 2.0 * PI, 4000);
        let mut inner = Ring::new();
        inner.push_arc(Vec2::ZERO, 1.0, 0.0, 2.0 * PI, 4000);
        let s = PolyShape::new(outer, vec![inner], 1000);
        let m = s.measure().unwrap();
        assert!((m.area - 8.0 * PI).abs() < 1e-4);
        assert!((m.perimeter - 8.0 * PI).abs() < 1e-4);
        assert!(!s.contains(Vec2::ZERO));
        assert!(s.contains(Vec2::new(2.0, 0.1)));
        let idx = ContainmentIndex::new(&s);
        assert!(!idx.contains(Vec2::ZERO));
        assert!(idx.contains(Vec2::new(2.0, 0.1)));
        assert!(idx.contains_with_tolerance(Vec2::new(3.0 + 1e-7, 0.0), 1e-6));
        assert!(!idx.contains_with_tolerance(Vec2::new(3.1, 0.0), 1e-6));
        assert!(s.is_simple());
    }

    #[test]
    fn diameter_by_calipers() {
        assert!((unit_square().diameter() - 2f64.sqrt()).abs() < 1e-15);
        let d = regular_polygon(1000).diameter();
        assert!((d - 2.0).abs() < 1e-12);
        let pts: Vec<Vec2> = (0..50)
            .map(|i| Vec2::new((i as f64 * 0.37).sin() * 3.0, (i as f64 * 1.91).cos()))
            .collect();
        let brute = pts
            .iter()
            .flat_map(|a| pts.iter().map(move |b| a.distance(*b)))
            .fold(0.0, f64::max);
        let mut r = Ring::new();
        for p in &pts {
            r.push(*p, EdgeTag::Straight);
        }
        let s = PolyShape { outer: r, holes: vec![], segments_per_arc: 1 };
        assert!((s.diameter() - brute).abs() < 1e-12);
    }

    #[test]
    fn bow_tie_is_not_simple() {
        let mut r = Ring::new();
        for p in [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)] {
            r.push(Vec2::new(p.0, p.1), EdgeTag::Straight);
        }
        let s = PolyShape {
            outer: r,
            holes: vec![],
            segments_per_arc: 1,
        };
        assert_eq!(s.first_self_intersection(), Some((0, 2)));
        assert!(unit_square().is_simple());
    }

    #[test]
    fn index_agrees_with_brute_force() {
        let s = regular_polygon(64);
        let idx = ContainmentIndex::new(&s);
        for i in 0..40 {
            for j in 0..40 {
                let p = Vec2::new(-1.2 + 0.06 * i as f64, -1.2 + 0.06 * j as f64);
                assert_eq!(idx.contains(p), s.contains(p), "{p:?}");
                assert_eq!(
                    idx.near_boundary(p, 0.05),
                    s.boundary_distance(p) <= 0.05,
                    "{p:?}"
                );
            }
        }
    }
}
