use std::f64::consts::{FRAC_PI_2, PI};

use super::{EdgeTag, GeometryError, PolyShape, Ring, Vec2};

fn check_resolution(segments: usize) -> Result<(), GeometryError> {
    if segments < 4 {
        Err(GeometryError::Resolution(segments))
    } else {
        Ok(())
    }
}

/// `R_L = (−L/2, L/2) × (−1, 1)` with its four corners replaced by quarter
/// circles of radius `t`, each discretized into `segments` chords.
pub fn build_cut_corner_rectangle(
    length: f64,
    t: f64,
    segments: usize,
) -> Result<PolyShape, GeometryError> {
    let mut ring = Ring::new();
    fill_cut_corner_ring(length, t, segments, &mut ring)?;
    Ok(PolyShape::new(ring, vec![], segments))
}

/// Refills `ring` with the counterclockwise boundary of the cut-corner
/// rectangle, reusing its storage across repeated evaluations.
pub fn fill_cut_corner_ring(
    length: f64,
    t: f64,
    segments: usize,
    ring: &mut Ring,
) -> Result<(), GeometryError> {
    check_resolution(segments)?;
    if !(length.is_finite() && length >= 2.0) {
        return Err(GeometryError::OutOfRange {
            what: "L",
            value: length,
            range: "[2, inf)".into(),
        });
    }
    let t_max = 1f64.min(length / 2.0);
    if !(t > 0.0 && t <= t_max) {
        return Err(GeometryError::OutOfRange {
            what: "t",
            value: t,
            range: format!("(0, {t_max}]"),
        });
    }
    let hx = length / 2.0;
    let (cx, cy) = (hx - t, 1.0 - t);
    // corner centers in counterclockwise order, starting bottom right
    let corners = [
        (Vec2::new(cx, -cy), -FRAC_PI_2),
        (Vec2::new(cx, cy), 0.0),
        (Vec2::new(-cx, cy), FRAC_PI_2),
        (Vec2::new(-cx, -cy), PI),
    ];
    ring.clear();
    for (k, &(center, start)) in corners.iter().enumerate() {
        // straight side leading into this corner
        let prev = corners[(k + 3) % 4];
        let side_start = prev.0 + Vec2::from_angle(prev.1 + FRAC_PI_2) * t;
        let side_end = center + Vec2::from_angle(start) * t;
        if side_start.distance(side_end) > 1e-12 * length {
            ring.push(side_start, EdgeTag::Straight);
        }
        ring.push_arc(center, t, start, FRAC_PI_2, segments);
    }
    Ok(())
}

/// A `M × 2` rectangle centered at the origin topped by two unit half-disks.
/// Each half-disk uses `2 · segments` chords.
pub fn build_topped_substrip(m: f64, segments: usize) -> Result<PolyShape, GeometryError> {
    check_resolution(segments)?;
    if !(m.is_finite() && m >= 0.0) {
        return Err(GeometryError::OutOfRange {
            what: "M",
            value: m,
            range: "[0, inf)".into(),
        });
    }
    let h = m / 2.0;
    let mut ring = Ring::new();
    if m > 0.0 {
        ring.push(Vec2::new(-h, -1.0), EdgeTag::Straight);
    }
    ring.push_arc(Vec2::new(h, 0.0), 1.0, -FRAC_PI_2, PI, 2 * segments);
    if m > 0.0 {
        ring.push(Vec2::new(h, 1.0), EdgeTag::Straight);
    }
    ring.push_arc(Vec2::new(-h, 0.0), 1.0, FRAC_PI_2, PI, 2 * segments);
    Ok(PolyShape::new(ring, vec![], segments))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{cut_corner_area, cut_corner_perimeter};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn refilled_ring_matches_fresh_build() {
        let mut ring = Ring::new();
        fill_cut_corner_ring(9.0, 0.9, 64, &mut ring).unwrap();
        fill_cut_corner_ring(5.0, 0.4, 64, &mut ring).unwrap();
        let fresh = build_cut_corner_rectangle(5.0, 0.4, 64).unwrap();
        assert_eq!(ring, fresh.outer);
        assert_eq!(ring.measure(), fresh.measure().unwrap());
    }

    #[test]
    fn cut_corner_matches_closed_form() {
        let s = build_cut_corner_rectangle(6.0, 0.5, 10_000).unwrap();
        let m = s.measure().unwrap();
        assert!(rel(m.area, 12.0 - (4.0 - PI) / 4.0) < 1e-7);
        assert!(rel(m.perimeter, 16.0 - (8.0 - 2.0 * PI) / 2.0) < 1e-7);
        assert!(rel(m.area, cut_corner_area(6.0, 0.5)) < 1e-7);
        assert!(rel(m.perimeter, cut_corner_perimeter(6.0, 0.5)) < 1e-7);
        assert!(s.is_simple());
    }

    #[test]
    fn tiny_radius_is_nearly_the_rectangle() {
        let m = build_cut_corner_rectangle(5.0, 1e-9, 16)
            .unwrap()
            .measure()
            .unwrap();
        assert!((m.area - 10.0).abs() < 1e-12);
        assert!((m.perimeter - 14.0).abs() < 1e-8);
    }

    #[test]
    fn full_radius_on_square_is_a_disk() {
        let s = build_cut_corner_rectangle(2.0, 1.0, 2500).unwrap();
        assert_eq!(s.outer.len(), 10_000);
        let m = s.measure().unwrap();
        assert!(rel(m.area, PI) < 1e-6);
        assert!(rel(m.perimeter, 2.0 * PI) < 1e-6);
    }

    #[test]
    fn stadium_closed_forms() {
        let m = build_topped_substrip(PI, 10_000).unwrap().measure().unwrap();
        assert!(rel(m.area, 3.0 * PI) < 1e-7);
        assert!(rel(m.perimeter, 4.0 * PI) < 1e-7);
        let disk = build_topped_substrip(0.0, 5000).unwrap().measure().unwrap();
        assert!(rel(disk.area, PI) < 1e-7);
        assert!(rel(disk.perimeter, 2.0 * PI) < 1e-7);
    }

    #[test]
    fn builder_errors() {
        assert!(build_cut_corner_rectangle(6.0, 0.0, 100).is_err());
        assert!(build_cut_corner_rectangle(6.0, 1.5, 100).is_err());
        assert!(build_cut_corner_rectangle(1.0, 0.5, 100).is_err());
        assert!(build_cut_corner_rectangle(6.0, 0.5, 3).is_err());
        assert!(build_topped_substrip(-1.0, 100).is_err());
    }

    #[test]
    fn second_order_convergence() {
        let exact = cut_corner_area(6.0, 0.7);
        let err = |n| {
            let m = build_cut_corner_rectangle(6.0, 0.7, n)
                .unwrap()
                .measure()
                .unwrap();
            (m.area - exact).abs()
        };
        let (e1, e2, e3) = (err(100), err(1000), err(10_000));
        let order1 = (e1 / e2).log10();
        let order2 = (e2 / e3).log10();
        assert!(order1 >= 1.9 && order2 >= 1.9, "{order1} {order2}");
    }
}
