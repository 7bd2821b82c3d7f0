//! Closed forms for the α-Cheeger problem in rectangles, strips and annuli.
//!
//! Everything here is a pure function of `α` and a handful of geometric
//! parameters. Rectangles are normalized to half-width 1, i.e.
//! `R_L = (−L/2, L/2) × (−1, 1)` with `L ≥ 2`; `L = +∞` stands for the
//! infinite rectangle.

use std::cmp::Ordering;
use std::f64::consts::PI;

use thiserror::Error;

use crate::alpha::{scaling_exponent, Alpha};

/// Relative tolerance used to decide `L = M(α) + 2`.
pub const CASE_TOLERANCE: f64 = 1e-9;

/// Relative tolerance for the annulus tie `substrip ratio = annulus ratio`.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Minimal spine length of strips and annuli the classifier decides.
pub const MIN_STRIP_LENGTH: f64 = 4.5 * PI;

const DISCRIMINANT_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("rectangle length must satisfy L >= 2 after normalization, got {0}")]
    ShortRectangle(f64),
    #[error("rectangle sides must be positive and finite, got {0} x {1}")]
    Sides(f64, f64),
    #[error(
        "L = {length} exceeds M(alpha) + 2 = {threshold}: the cut-corner radius only exists below the stadium threshold; classify the rectangle instead"
    )]
    NotCutCornerCase { length: f64, threshold: f64 },
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
}

/// A rectangle normalized to half-width 1, with the factor mapping it back to
/// the caller's rectangle (`user = scale_to_user · R_L`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    length: f64,
    scale_to_user: f64,
}

impl Rectangle {
    /// `R_L` itself; `length` may be `f64::INFINITY`.
    pub fn normalized(length: f64) -> Result<Self, AnalyticError> {
        if length.is_nan() || length < 2.0 {
            return Err(AnalyticError::ShortRectangle(length));
        }
        Ok(Self {
            length,
            scale_to_user: 1.0,
        })
    }

    pub fn infinite() -> Self {
        Self {
            length: f64::INFINITY,
            scale_to_user: 1.0,
        }
    }

    /// An `a × b` rectangle in either orientation; the long side becomes horizontal.
    pub fn from_sides(a: f64, b: f64) -> Result<Self, AnalyticError> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
            return Err(AnalyticError::Sides(a, b));
        }
        let (long, short) = if a >= b { (a, b) } else { (b, a) };
        Ok(Self {
            length: 2.0 * long / short,
            scale_to_user: short / 2.0,
        })
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.length
    }

    #[inline]
    pub fn scale_to_user(&self) -> f64 {
        self.scale_to_user
    }

    #[inline]
    pub fn is_infinite(&self) -> bool {
        self.length.is_infinite()
    }
}

/// The three regimes of the rectangle classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RectangleCase {
    /// `L < M(α) + 2`: unique set, corners cut with radius `r < 1`.
    CutCorners,
    /// `L = M(α) + 2` (within [`CASE_TOLERANCE`]): unique set, radius exactly 1.
    Boundary,
    /// `L > M(α) + 2`: every stadium of length `M(α)` that fits.
    Stadium,
}

/// Limits of the exponent that cannot be represented by [`Alpha`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentLimit {
    /// `α → 1⁺`, the standard Cheeger problem.
    One,
    /// `α → 2⁻`, the critical exponent in the plane.
    Critical,
}

/// Outcome of comparing a stadium of length `M(α)` against a whole annulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnulusOrdering {
    SubstripBetter,
    AnnulusBetter,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AnnulusComparison {
    /// `(2π + 2M)/(2M + π)^{1/α}`.
    pub substrip_ratio: f64,
    /// `2L/(2L)^{1/α}`.
    pub annulus_ratio: f64,
    pub tolerance: f64,
    pub ordering: AnnulusOrdering,
}

/// Optimal stadium length `M(α) = π/2 · (2−α)/(α−1)`.
pub fn m_of_alpha(alpha: Alpha) -> f64 {
    debug_assert_eq!(alpha.dimension(), 2);
    let a = alpha.value();
    0.5 * PI * (2.0 - a) / (a - 1.0)
}

/// The exponent at which `R_L` switches from cut corners to stadiums.
pub fn alpha_bar(length: f64) -> Result<f64, AnalyticError> {
    if length.is_nan() || length < 2.0 {
        return Err(AnalyticError::ShortRectangle(length));
    }
    if length.is_infinite() {
        return Ok(1.0);
    }
    Ok(2.0 * (PI + length - 2.0) / (PI + 2.0 * length - 4.0))
}

/// Which regime `R_L` falls into.
pub fn rectangle_case(length: f64, alpha: Alpha) -> Result<RectangleCase, AnalyticError> {
    if length.is_nan() || length < 2.0 {
        return Err(AnalyticError::ShortRectangle(length));
    }
    if length.is_infinite() {
        return Ok(RectangleCase::Stadium);
    }
    let threshold = m_of_alpha(alpha) + 2.0;
    let gap = length - threshold;
    Ok(if gap.abs() <= CASE_TOLERANCE * threshold {
        RectangleCase::Boundary
    } else if gap < 0.0 {
        RectangleCase::CutCorners
    } else {
        RectangleCase::Stadium
    })
}

/// Perimeter of `R_L` with its corners rounded by quarter circles of radius `t`.
#[inline]
pub fn cut_corner_perimeter(length: f64, t: f64) -> f64 {
    2.0 * length + 4.0 - (8.0 - 2.0 * PI) * t
}

/// Area of `R_L` with its corners rounded by quarter circles of radius `t`.
#[inline]
pub fn cut_corner_area(length: f64, t: f64) -> f64 {
    2.0 * length - (4.0 - PI) * t * t
}

#[inline]
pub fn cut_corner_ratio(length: f64, t: f64, alpha: Alpha) -> f64 {
    cut_corner_perimeter(length, t) / cut_corner_area(length, t).powf(alpha.inv())
}

#[inline]
pub fn stadium_area(m: f64) -> f64 {
    2.0 * m + PI
}

#[inline]
pub fn stadium_perimeter(m: f64) -> f64 {
    2.0 * m + 2.0 * PI
}

#[inline]
pub fn stadium_ratio(m: f64, alpha: Alpha) -> f64 {
    stadium_perimeter(m) / stadium_area(m).powf(alpha.inv())
}

/// `α (π/(α−1))^{1−1/α}`: the ratio of the optimal stadium, hence the
/// constant of every long enough rectangle and of `R_∞`.
pub fn h_alpha_stadium(alpha: Alpha) -> f64 {
    let a = alpha.value();
    a * (PI / (a - 1.0)).powf(1.0 - 1.0 / a)
}

/// Minimizer of the cut-corner ratio, valid for `2 ≤ L ≤ M(α) + 2`.
///
/// Evaluated in the rationalized form `2αL / ((L+2) + √D)` with
/// `D = (L+2)² − 2(4−π)(2−α)αL`, which is algebraically identical to the
/// textbook root but has no cancellation as `α → 2`.
pub fn corner_radius(length: f64, alpha: Alpha) -> Result<f64, AnalyticError> {
    match rectangle_case(length, alpha)? {
        RectangleCase::Boundary => Ok(1.0),
        RectangleCase::Stadium => Err(AnalyticError::NotCutCornerCase {
            length,
            threshold: m_of_alpha(alpha) + 2.0,
        }),
        RectangleCase::CutCorners => Ok(corner_radius_unchecked(length, alpha.value())),
    }
}

/// The cut-corner root without the case check; `alpha` may be any real in `[1, 2]`.
pub fn corner_radius_unchecked(length: f64, alpha: f64) -> f64 {
    let p = length + 2.0;
    let mut disc = p * p - 2.0 * (4.0 - PI) * (2.0 - alpha) * alpha * length;
    if disc < 0.0 && disc > -DISCRIMINANT_CLAMP * p * p {
        disc = 0.0;
    }
    2.0 * alpha * length / (p + disc.sqrt())
}

/// Second branch of the rectangle constant, evaluated at the cut-corner radius
/// regardless of which regime `L` is in.
pub fn h_alpha_cut_corner_branch(length: f64, alpha: Alpha) -> f64 {
    let r = corner_radius_unchecked(length, alpha.value()).min(1.0);
    cut_corner_ratio(length, r, alpha)
}

/// `h_α(R_L)`; `L = +∞` is allowed.
pub fn h_alpha_rectangle(length: f64, alpha: Alpha) -> Result<f64, AnalyticError> {
    Ok(match rectangle_case(length, alpha)? {
        RectangleCase::CutCorners => {
            let r = corner_radius_unchecked(length, alpha.value());
            cut_corner_ratio(length, r, alpha)
        }
        RectangleCase::Boundary | RectangleCase::Stadium => h_alpha_stadium(alpha),
    })
}

/// Volume of the unit ball in `R^n` (`ω_0 = 1`, `ω_1 = 2`, `ω_n = 2π/n · ω_{n−2}`).
pub fn unit_ball_volume(n: u32) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / f64::from(n) * unit_ball_volume(n - 2),
    }
}

/// α-Cheeger ratio `n ω_n^{1−1/α} r^{n−1−n/α}` of a ball of radius `r`.
///
/// Takes a raw exponent so the critical value `α = n/(n−1)` can be inspected.
pub fn ball_ratio(n: u32, r: f64, alpha: f64) -> f64 {
    let omega = unit_ball_volume(n);
    f64::from(n) * omega.powf(1.0 - 1.0 / alpha) * r.powf(scaling_exponent(n, alpha))
}

/// Constant of `t·Ω` given the constant `h` of `Ω`.
pub fn scale_constant(h: f64, t: f64, alpha: Alpha) -> f64 {
    scale_constant_at(h, t, alpha.dimension(), alpha.value())
}

/// [`scale_constant`] for a raw exponent; at `α = n/(n−1)` the factor is 1.
pub fn scale_constant_at(h: f64, t: f64, n: u32, alpha: f64) -> f64 {
    h * t.powf(scaling_exponent(n, alpha))
}

/// Radius `α/h · |C|^{1−1/α}` of the free boundary arcs of a set with
/// constant `h` and area `|C|`.
pub fn free_boundary_radius(h: f64, area: f64, alpha: Alpha) -> Result<f64, AnalyticError> {
    free_boundary_radius_at(h, area, alpha.value())
}

/// [`free_boundary_radius`] for a raw exponent; `α = 1` gives `1/h`.
pub fn free_boundary_radius_at(h: f64, area: f64, alpha: f64) -> Result<f64, AnalyticError> {
    if !(h > 0.0) {
        return Err(AnalyticError::NonPositive {
            what: "h",
            value: h,
        });
    }
    if !(area > 0.0) {
        return Err(AnalyticError::NonPositive {
            what: "area",
            value: area,
        });
    }
    Ok(alpha / h * area.powf(1.0 - 1.0 / alpha))
}

/// Upper bound `½ h_∞^{α/(α−1)}` on the diameter of α-Cheeger sets of
/// rectangles and strips, `h_∞` being the optimal stadium ratio.
pub fn diameter_bound(alpha: Alpha) -> f64 {
    let a = alpha.value();
    (a / (a - 1.0) * h_alpha_stadium(alpha).ln()).exp() * 0.5
}

/// Window length to which unbounded strips are cut: α-Cheeger sets have
/// diameter at most [`diameter_bound`], so four times that, and never less
/// than [`MIN_STRIP_LENGTH`].
pub fn truncation_length(alpha: Alpha) -> f64 {
    (4.0 * diameter_bound(alpha)).max(MIN_STRIP_LENGTH)
}

/// Ratio `(2L)^{1−1/α}` of a whole annulus with spine length `L`.
pub fn annulus_ratio(length: f64, alpha: Alpha) -> f64 {
    (2.0 * length).powf(1.0 - alpha.inv())
}

/// Compares the optimal stadium against the whole annulus of spine length `L`.
pub fn annulus_substrip_wins(length: f64, alpha: Alpha) -> AnnulusComparison {
    annulus_comparison_with_tolerance(length, alpha, TIE_TOLERANCE)
}

pub fn annulus_comparison_with_tolerance(
    length: f64,
    alpha: Alpha,
    tolerance: f64,
) -> AnnulusComparison {
    let m = m_of_alpha(alpha);
    compare_ratios(
        stadium_ratio(m, alpha),
        annulus_ratio(length, alpha),
        tolerance,
    )
}

/// The annulus comparison in the limits `α → 1⁺` and `α → 2⁻`.
///
/// As `α → 1⁺` both ratios tend to 1 and the leading-order difference is
/// `(α−1)·(ln(π/(α−1)) − ln 2L)`, positive for every finite `L`: the whole
/// annulus wins. At `α = 2` the stadium degenerates to the unit disk and the
/// comparison reads `2√π` against `√(2L)`.
pub fn annulus_substrip_wins_limit(length: f64, limit: ExponentLimit) -> AnnulusComparison {
    match limit {
        ExponentLimit::One => AnnulusComparison {
            substrip_ratio: 1.0,
            annulus_ratio: 1.0,
            tolerance: TIE_TOLERANCE,
            ordering: AnnulusOrdering::AnnulusBetter,
        },
        ExponentLimit::Critical => {
            compare_ratios(2.0 * PI.sqrt(), (2.0 * length).sqrt(), TIE_TOLERANCE)
        }
    }
}

fn compare_ratios(substrip: f64, annulus: f64, tolerance: f64) -> AnnulusComparison {
    let scale = substrip.abs().max(annulus.abs());
    let ordering = if (substrip - annulus).abs() <= tolerance * scale {
        AnnulusOrdering::Tie
    } else {
        match substrip.partial_cmp(&annulus) {
            Some(Ordering::Less) => AnnulusOrdering::SubstripBetter,
            _ => AnnulusOrdering::AnnulusBetter,
        }
    };
    AnnulusComparison {
        substrip_ratio: substrip,
        annulus_ratio: annulus,
        tolerance,
        ordering,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    #[test]
    fn m_of_alpha_simple_values() {
        assert!((m_of_alpha(a(4.0 / 3.0)) - PI).abs() < 1e-14);
        assert!((m_of_alpha(a(1.5)) - PI / 2.0).abs() < 1e-14);
        let near_two = m_of_alpha(a(2.0 - 1e-6));
        assert!(near_two > 0.0 && near_two < 1e-5);
    }

    #[test]
    fn alpha_bar_endpoints() {
        assert_eq!(alpha_bar(2.0).unwrap(), 2.0);
        assert_eq!(alpha_bar(f64::INFINITY).unwrap(), 1.0);
        assert!((alpha_bar(1e12).unwrap() - 1.0).abs() < 1e-11);
        assert!(alpha_bar(1.999).is_err());
        let l = PI / 2.0 + 2.0;
        assert!((alpha_bar(l).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn corner_radius_is_one_on_the_threshold() {
        for &v in &[1.1, 1.3, 1.5, 1.9] {
            let al = a(v);
            let l = m_of_alpha(al) + 2.0;
            assert_eq!(corner_radius(l, al).unwrap(), 1.0);
            // the unrounded root also lands on 1 there
            assert!((corner_radius_unchecked(l, v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn corner_radius_rejects_stadium_case() {
        let err = corner_radius(10.0, a(1.5)).unwrap_err();
        assert!(matches!(err, AnalyticError::NotCutCornerCase { .. }));
        assert!(corner_radius(1.0, a(1.5)).is_err());
    }

    #[test]
    fn rationalized_root_matches_textbook_root() {
        for &v in &[1.05, 1.2, 1.5, 1.8] {
            for &l in &[2.0, 2.5, 3.0] {
                let c = (4.0 - PI) * (2.0 - v);
                let p = l + 2.0;
                let textbook = (p - (p * p - 2.0 * c * v * l).sqrt()) / c;
                let ours = corner_radius_unchecked(l, v);
                assert!((textbook - ours).abs() < 1e-12, "{v} {l}");
            }
        }
    }

    #[test]
    fn rectangle_branches_agree_at_crossover() {
        for &l in &[2.5, 3.0, 5.0, 8.0, 13.0] {
            let ab = alpha_bar(l).unwrap();
            let al = a(ab);
            let first = h_alpha_stadium(al);
            let second = h_alpha_cut_corner_branch(l, al);
            assert!(((first - second) / first).abs() < 1e-10, "L = {l}");
        }
    }

    #[test]
    fn unit_ball_volumes() {
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn ball_ratio_planar() {
        // 2π / π^{1/1.5}
        let expect = 2.0 * PI / PI.powf(1.0 / 1.5);
        assert!((ball_ratio(2, 1.0, 1.5) - expect).abs() < 1e-13);
        assert!((ball_ratio(2, 1.0, 1.5) - 2.0 * PI.cbrt()).abs() < 1e-13);
        // at the critical exponent the radius does not matter
        let r1 = ball_ratio(2, 0.3, 2.0);
        let r2 = ball_ratio(2, 7.0, 2.0);
        assert!((r1 - r2).abs() < 1e-13);
        assert!((r1 - 2.0 * PI.sqrt()).abs() < 1e-13);
        // below it, bigger balls are better
        assert!(ball_ratio(3, 2.0, 1.2) < ball_ratio(3, 1.0, 1.2));
    }

    #[test]
    fn scale_constant_identities() {
        let al = a(1.5);
        assert_eq!(scale_constant(3.7, 1.0, al), 3.7);
        let f = scale_constant(1.0, 2.0, al);
        assert!((f - 2f64.powf(-1.0 / 3.0)).abs() < 1e-15);
        let back = scale_constant(scale_constant(3.7, 2.5, al), 1.0 / 2.5, al);
        assert!((back - 3.7).abs() < 1e-14);
        assert!((scale_constant_at(3.7, 9.0, 2, 2.0) - 3.7).abs() < 1e-15);
    }

    #[test]
    fn free_boundary_radius_limits() {
        assert!((free_boundary_radius_at(2.0, 5.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        let al = a(1.3);
        let m = m_of_alpha(al);
        let r = free_boundary_radius(h_alpha_stadium(al), stadium_area(m), al).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        assert!(free_boundary_radius(0.0, 1.0, al).is_err());
        assert!(free_boundary_radius(1.0, -1.0, al).is_err());
    }

    #[test]
    fn diameter_bound_near_critical() {
        let d = diameter_bound(a(2.0 - 1e-6));
        assert!(d.is_finite() && d >= 2.0);
        assert!((d - 2.0 * PI).abs() < 1e-3);
    }

    #[test]
    fn annulus_limits() {
        let c = annulus_substrip_wins_limit(4.5 * PI, ExponentLimit::Critical);
        assert_eq!(c.ordering, AnnulusOrdering::SubstripBetter);
        assert!((c.substrip_ratio - 3.5449077018110318).abs() < 1e-12);
        let c = annulus_substrip_wins_limit(1e6, ExponentLimit::One);
        assert_eq!(c.ordering, AnnulusOrdering::AnnulusBetter);
        // near one the strictly valid comparison agrees with the limit
        let c = annulus_substrip_wins(20.0, Alpha::with_guard(1.0001, 2, 1e-9).unwrap());
        assert_eq!(c.ordering, AnnulusOrdering::AnnulusBetter);
    }

    #[test]
    fn rectangle_normalization() {
        let r = Rectangle::from_sides(3.0, 6.0).unwrap();
        assert_eq!(r.length(), 4.0);
        assert_eq!(r.scale_to_user(), 1.5);
        assert!(Rectangle::from_sides(0.0, 1.0).is_err());
        assert!(Rectangle::normalized(1.5).is_err());
        assert!(Rectangle::infinite().is_infinite());
    }
}
