//! Numerical ground truth: polygon ratios and one-parameter minimization over
//! the candidate shape families.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::alpha::Alpha;
use crate::analytic::{
    cut_corner_area, cut_corner_perimeter, m_of_alpha, rectangle_case, stadium_area,
    stadium_perimeter, truncation_length, AnalyticError, RectangleCase,
};
use crate::geometry::{
    build_cut_corner_rectangle, build_strip_cut_corners, build_strip_polygon,
    build_topped_substrip, build_topped_substrip_on_curve, fill_cut_corner_ring,
    fit_topped_substrip_with,
    ContainmentIndex, CurveError, CurveKind, FitOptions, GeometryError, Measure, PolyShape,
    Ring, StripCurve,
};
use crate::solution::{CheegerSolution, Placements, SolutionKind};

/// Samples in the unimodality pre-scan.
pub const PRESCAN_SAMPLES: usize = 64;

/// Scan points for searches whose every evaluation builds a polygon.
pub const POLYGON_PRESCAN: usize = 16;

/// Bracket width at which polygon searches stop; the constant's error is
/// quadratic in the parameter error, so this is far below polygon noise.
pub const POLYGON_TOLERANCE: f64 = 1e-8;

/// Iteration cap of the golden-section search.
pub const MAX_ITERATIONS: usize = 200;

/// Smallest cut-corner radius searched.
pub const MIN_CORNER_RADIUS: f64 = 1e-9;

/// Relative margin below which the two rectangle families count as equal.
pub const FAMILY_TIE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("shape area must be positive, got {0}")]
    NonPositiveArea(f64),
    #[error("empty bracket [{a}, {b}]")]
    EmptyBracket { a: f64, b: f64 },
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error("objective is not unimodal: it rises before x = {rise} and falls again near x = {fall}")]
    NonUnimodal { rise: f64, fall: f64 },
    #[error("at least 1000 Monte Carlo samples are required, got {0}")]
    TooFewSamples(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// `P / A^{1/α}` from measures.
#[inline]
pub fn ratio_of(m: Measure, alpha: Alpha) -> f64 {
    m.perimeter / m.area.powf(alpha.inv())
}

/// α-Cheeger ratio of a polygon.
pub fn ratio(shape: &PolyShape, alpha: Alpha) -> Result<f64, OracleError> {
    let m = shape.measure()?;
    if !(m.area > 0.0) {
        return Err(OracleError::NonPositiveArea(m.area));
    }
    Ok(ratio_of(m, alpha))
}

/// A one-dimensional objective. `compare` may be overridden with an
/// evaluation that stays accurate when the two values nearly coincide.
pub trait Objective {
    fn eval(&self, x: f64) -> f64;

    /// Ordering of `f(x1)` against `f(x2)`.
    fn compare(&self, x1: f64, x2: f64) -> Ordering {
        self.eval(x1).total_cmp(&self.eval(x2))
    }
}

impl<F: Fn(f64) -> f64> Objective for F {
    fn eval(&self, x: f64) -> f64 {
        self(x)
    }
}

/// Ratio of a family with `P(x) = p0 + p1·x + p2·x²` and `A(x) = a0 + a1·x + a2·x²`.
/// Differences are formed in closed form before taking logarithms.
#[derive(Debug, Clone, Copy)]
pub struct QuadraticRatio {
    pub perimeter: [f64; 3],
    pub area: [f64; 3],
    pub alpha: Alpha,
}

impl QuadraticRatio {
    /// Cut-corner rectangle `R_L` with corner radius `x`.
    pub fn cut_corner(length: f64, alpha: Alpha) -> Self {
        Self {
            perimeter: [2.0 * length + 4.0, -(8.0 - 2.0 * PI), 0.0],
            area: [2.0 * length, 0.0, -(4.0 - PI)],
            alpha,
        }
    }

    /// Stadium with body length `x`.
    pub fn stadium(alpha: Alpha) -> Self {
        Self {
            perimeter: [2.0 * PI, 2.0, 0.0],
            area: [PI, 2.0, 0.0],
            alpha,
        }
    }

    fn poly(c: &[f64; 3], x: f64) -> f64 {
        c[0] + x * (c[1] + x * c[2])
    }

    /// `q(x1) − q(x2)` for a quadratic, factored through `x1 − x2`.
    fn diff(c: &[f64; 3], x1: f64, x2: f64) -> f64 {
        (x1 - x2) * (c[1] + c[2] * (x1 + x2))
    }
}

impl Objective for QuadraticRatio {
    fn eval(&self, x: f64) -> f64 {
        Self::poly(&self.perimeter, x) / Self::poly(&self.area, x).powf(self.alpha.inv())
    }

    fn compare(&self, x1: f64, x2: f64) -> Ordering {
        let p2 = Self::poly(&self.perimeter, x2);
        let a2 = Self::poly(&self.area, x2);
        let dp = Self::diff(&self.perimeter, x1, x2) / p2;
        let da = Self::diff(&self.area, x1, x2) / a2;
        let log_ratio = dp.ln_1p() - self.alpha.inv() * da.ln_1p();
        log_ratio.total_cmp(&0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimizer of a unimodal `f` on `[a, b]`.
///
/// A coarse scan of [`PRESCAN_SAMPLES`] points first checks unimodality and
/// narrows the bracket; the endpoints themselves are candidates, so
/// minimizers on the boundary are returned exactly.
pub fn golden_section_min<F: Objective + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Minimum, OracleError> {
    golden_section_min_scan(f, a, b, tol, PRESCAN_SAMPLES)
}

/// [`golden_section_min`] with `prescan ≥ 3` scan points.
pub fn golden_section_min_scan<F: Objective + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    prescan: usize,
) -> Result<Minimum, OracleError> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(OracleError::EmptyBracket { a, b });
    }
    if !(tol > 0.0) {
        return Err(OracleError::Tolerance(tol));
    }
    let n = prescan.max(3);
    let xs: Vec<f64> = (0..n)
        .map(|k| if k + 1 == n { b } else { a + (b - a) * k as f64 / (n - 1) as f64 })
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
    let best = (0..n)
        .min_by(|&i, &j| fs[i].total_cmp(&fs[j]))
        .unwrap_or(0);
    let scale = fs.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let noise = 1e-10 * scale;
    for k in 0..n - 1 {
        let step = fs[k + 1] - fs[k];
        let bad = if k < best { step > noise } else { step < -noise };
        if bad {
            let rise = if k < best { xs[k] } else { xs[best] };
            return Err(OracleError::NonUnimodal {
                rise,
                fall: xs[k + 1],
            });
        }
    }
    let mut lo = xs[best.saturating_sub(1)];
    let mut hi = xs[(best + 1).min(n - 1)];
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_ITERATIONS {
        if hi - lo <= 4.0 * f64::EPSILON * (lo.abs() + hi.abs()) {
            break;
        }
        iterations += 1;
        if f.compare(c, d) != Ordering::Greater {
            hi = d;
            d = c;
            c = hi - INV_PHI * (hi - lo);
        } else {
            lo = c;
            c = d;
            d = lo + INV_PHI * (hi - lo);
        }
    }
    let mut x = 0.5 * (lo + hi);
    for (edge, at_edge) in [(a, best == 0), (b, best + 1 == n)] {
        if at_edge && f.compare(edge, x) != Ordering::Greater {
            x = edge;
        }
    }
    Ok(Minimum {
        x,
        value: f.eval(x),
        iterations,
    })
}

/// A one-parameter family of candidate shapes.
#[derive(Clone)]
pub enum Family {
    CutCorner { length: f64 },
    ToppedSubstrip,
    Custom(Arc<dyn Fn(f64) -> Result<PolyShape, GeometryError> + Send + Sync>),
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::CutCorner { length } => write!(f, "CutCorner {{ length: {length} }}"),
            Family::ToppedSubstrip => write!(f, "ToppedSubstrip"),
            Family::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// Minimization of the α-Cheeger ratio over one family.
#[derive(Debug, Clone)]
pub struct RatioProblem {
    family: Family,
    alpha: Alpha,
    lower: f64,
    upper: f64,
    tolerance: f64,
}

impl RatioProblem {
    pub fn new(
        family: Family,
        alpha: Alpha,
        lower: f64,
        upper: f64,
        tolerance: f64,
    ) -> Result<Self, OracleError> {
        if !(lower < upper) {
            return Err(OracleError::EmptyBracket {
                a: lower,
                b: upper,
            });
        }
        if !(tolerance > 0.0) {
            return Err(OracleError::Tolerance(tolerance));
        }
        Ok(Self {
            family,
            alpha,
            lower,
            upper,
            tolerance,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Closed-form families use [`QuadraticRatio`]; custom ones go through polygons.
    pub fn solve(&self) -> Result<Minimum, OracleError> {
        let (a, b, tol) = (self.lower, self.upper, self.tolerance);
        match &self.family {
            Family::CutCorner { length } => {
                golden_section_min(&QuadraticRatio::cut_corner(*length, self.alpha), a, b, tol)
            }
            Family::ToppedSubstrip => {
                golden_section_min(&QuadraticRatio::stadium(self.alpha), a, b, tol)
            }
            Family::Custom(build) => {
                let alpha = self.alpha;
                let f = |x: f64| {
                    build(x)
                        .ok()
                        .and_then(|s| ratio(&s, alpha).ok())
                        .unwrap_or(f64::INFINITY)
                };
                golden_section_min(&f, a, b, tol)
            }
        }
    }
}

/// Best member of one family, measured on its polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyMinimum {
    pub parameter: f64,
    pub h: f64,
    pub measure: Measure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRectangle {
    pub solution: CheegerSolution,
    pub cut_corner: FamilyMinimum,
    /// Present when the stadium of length `M(α)` fits.
    pub stadium: Option<FamilyMinimum>,
}

fn cut_corner_diameter(length: f64, t: f64) -> f64 {
    2.0 * (0.5 * length - t).hypot(1.0 - t) + 2.0 * t
}

/// Polygon oracle for `R_L`: minimizes both candidate families and keeps the
/// better one. Ties within [`FAMILY_TIE`] go to the cut-corner family.
pub fn oracle_rectangle(
    length: f64,
    alpha: Alpha,
    segments: usize,
) -> Result<OracleRectangle, OracleError> {
    if !(length.is_finite() && length >= 2.0) {
        return Err(AnalyticError::ShortRectangle(length).into());
    }
    let ring = RefCell::new(Ring::new());
    let polygon_ratio = |t: f64| {
        let mut ring = ring.borrow_mut();
        match fill_cut_corner_ring(length, t, segments, &mut ring) {
            Ok(()) if ring.len() >= 3 => {
                let m = ring.measure();
                if m.area > 0.0 {
                    ratio_of(m, alpha)
                } else {
                    f64::INFINITY
                }
            }
            _ => f64::INFINITY,
        }
    };
    let t_max = 1f64.min(length / 2.0);
    let best = golden_section_min_scan(
        &polygon_ratio,
        MIN_CORNER_RADIUS,
        t_max,
        POLYGON_TOLERANCE,
        POLYGON_PRESCAN,
    )?;
    let cut_measure = build_cut_corner_rectangle(length, best.x, segments)?.measure()?;
    let cut_corner = FamilyMinimum {
        parameter: best.x,
        h: ratio_of(cut_measure, alpha),
        measure: cut_measure,
    };
    let m = m_of_alpha(alpha);
    let stadium_fits = rectangle_case(length, alpha)? != RectangleCase::CutCorners;
    let stadium = if stadium_fits {
        let sm = build_topped_substrip(m, segments)?.measure()?;
        Some(FamilyMinimum {
            parameter: m,
            h: ratio_of(sm, alpha),
            measure: sm,
        })
    } else {
        None
    };
    let solution = match stadium {
        Some(st) if st.h < cut_corner.h * (1.0 - FAMILY_TIE) => {
            let lo = 1.0;
            let hi = (length - m - 1.0).max(lo);
            let placements = Placements {
                intervals: vec![(lo, hi)],
                canonical: 0.5 * (length - m),
            };
            CheegerSolution::from_measures(
                SolutionKind::ToppedSubstrip { m, placements },
                st.measure.area,
                st.measure.perimeter,
                m + 2.0,
                alpha,
            )
        }
        _ => CheegerSolution::from_measures(
            SolutionKind::CutCorners { r: cut_corner.parameter },
            cut_measure.area,
            cut_measure.perimeter,
            cut_corner_diameter(length, cut_corner.parameter),
            alpha,
        ),
    };
    Ok(OracleRectangle {
        solution,
        cut_corner,
        stadium,
    })
}

/// Closed-form cut-corner family minimum of `R_L`, for comparison with the polygons.
pub fn closed_form_cut_corner(length: f64, alpha: Alpha) -> Result<FamilyMinimum, OracleError> {
    let problem = RatioProblem::new(
        Family::CutCorner { length },
        alpha,
        MIN_CORNER_RADIUS,
        1f64.min(length / 2.0),
        1e-12,
    )?;
    let best = problem.solve()?;
    let measure = Measure {
        area: cut_corner_area(length, best.x),
        perimeter: cut_corner_perimeter(length, best.x),
    };
    Ok(FamilyMinimum {
        parameter: best.x,
        h: ratio_of(measure, alpha),
        measure,
    })
}

/// Closed-form stadium family minimum over `m ∈ [0, upper]`.
pub fn closed_form_stadium(alpha: Alpha, upper: f64) -> Result<FamilyMinimum, OracleError> {
    let best = RatioProblem::new(Family::ToppedSubstrip, alpha, 0.0, upper, 1e-12)?.solve()?;
    let measure = Measure {
        area: stadium_area(best.x),
        perimeter: stadium_perimeter(best.x),
    };
    Ok(FamilyMinimum {
        parameter: best.x,
        h: ratio_of(measure, alpha),
        measure,
    })
}

/// Best strip with rounded corners: golden-section search over the corner
/// radius, each candidate measured as a polygon. Also returns the diameter
/// of the optimal polygon.
pub fn strip_cut_corner_min(
    curve: &StripCurve,
    alpha: Alpha,
    segments: usize,
) -> Result<(FamilyMinimum, f64), OracleError> {
    let f = |t: f64| {
        build_strip_cut_corners(curve, t, segments)
            .ok()
            .and_then(|s| ratio(&s, alpha).ok())
            .unwrap_or(f64::INFINITY)
    };
    let best =
        golden_section_min_scan(&f, MIN_CORNER_RADIUS, 1.0, POLYGON_TOLERANCE, POLYGON_PRESCAN)?;
    let shape = build_strip_cut_corners(curve, best.x, segments)?;
    let measure = shape.measure()?;
    Ok((
        FamilyMinimum {
            parameter: best.x,
            h: ratio_of(measure, alpha),
            measure,
        },
        shape.diameter(),
    ))
}

/// Which candidate produced an oracle value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateFamily {
    CutCorners,
    ToppedSubstrip,
    WholeDomain,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveOracle {
    pub h: f64,
    pub family: CandidateFamily,
}

/// Polygon oracle for strips and annuli: the smallest ratio among the
/// stadium at a feasible placement, the best rounded-corner strip (open
/// spines) and the whole annulus (closed spines).
pub fn oracle_curve(
    curve: &StripCurve,
    alpha: Alpha,
    segments: usize,
    fit: &FitOptions,
) -> Result<CurveOracle, OracleError> {
    let m = m_of_alpha(alpha);
    if curve.is_straight() {
        if curve.kind() == CurveKind::Finite {
            let o = oracle_rectangle(curve.length(), alpha, segments)?;
            let family = match o.solution.kind {
                SolutionKind::CutCorners { .. } => CandidateFamily::CutCorners,
                _ => CandidateFamily::ToppedSubstrip,
            };
            return Ok(CurveOracle {
                h: o.solution.h_alpha,
                family,
            });
        }
        return Ok(CurveOracle {
            h: ratio(&build_topped_substrip(m, segments)?, alpha)?,
            family: CandidateFamily::ToppedSubstrip,
        });
    }
    let working = if curve.kind().is_unbounded() {
        curve.window(truncation_length(alpha))?
    } else {
        curve.clone()
    };
    let mut candidates: Vec<(f64, CandidateFamily)> = Vec::new();
    let placements = fit_topped_substrip_with(&working, m, fit);
    if let Some(s0) = placements.canonical() {
        let shape = build_topped_substrip_on_curve(&working, s0, m, segments)?;
        candidates.push((ratio(&shape, alpha)?, CandidateFamily::ToppedSubstrip));
    }
    if working.kind() == CurveKind::Annulus {
        let whole = build_strip_polygon(&working)?;
        candidates.push((ratio(&whole, alpha)?, CandidateFamily::WholeDomain));
    } else {
        let (best, _) = strip_cut_corner_min(&working, alpha, segments)?;
        candidates.push((best.h, CandidateFamily::CutCorners));
    }
    let (h, family) = candidates
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one candidate");
    Ok(CurveOracle { h, family })
}

/// Rejection-sampled area over the bounding box, with its binomial standard error.
pub fn monte_carlo_area(
    shape: &PolyShape,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64), OracleError> {
    if samples < 1000 {
        return Err(OracleError::TooFewSamples(samples));
    }
    let index = ContainmentIndex::new(shape);
    let (lo, hi) = shape.bounding_box();
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let p = crate::geometry::Vec2::new(lo.x + w * rng.gen::<f64>(), lo.y + h * rng.gen::<f64>());
        if index.contains(p) {
            hits += 1;
        }
    }
    let box_area = w * h;
    let p = hits as f64 / samples as f64;
    Ok((
        box_area * p,
        box_area * (p * (1.0 - p) / samples as f64).sqrt(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{corner_radius, h_alpha_rectangle, h_alpha_stadium};

    fn alpha(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    #[test]
    fn parabola_minimum() {
        let m = golden_section_min(&|x: f64| (x - 1.0) * (x - 1.0), 0.0, 3.0, 1e-10).unwrap();
        assert!((m.x - 1.0).abs() < 1e-10);
        assert!(m.iterations <= MAX_ITERATIONS);
    }

    #[test]
    fn boundary_minimum_is_exact() {
        let m = golden_section_min(&|x: f64| -x, 0.0, 1.0, 1e-12).unwrap();
        assert_eq!(m.x, 1.0);
        let m = golden_section_min(&|x: f64| x, 0.0, 1.0, 1e-12).unwrap();
        assert_eq!(m.x, 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        let f = |x: f64| x * x;
        assert!(matches!(
            golden_section_min(&f, 1.0, 1.0, 1e-6),
            Err(OracleError::EmptyBracket { .. })
        ));
        assert!(golden_section_min(&f, 0.0, 1.0, 0.0).is_err());
        let wavy = |x: f64| (3.0 * x).sin();
        assert!(matches!(
            golden_section_min(&wavy, 0.0, 10.0, 1e-6),
            Err(OracleError::NonUnimodal { .. })
        ));
    }

    #[test]
    fn accurate_comparator_recovers_corner_radius() {
        let a = alpha(1.2);
        let m = golden_section_min(&QuadraticRatio::cut_corner(4.0, a), 1e-9, 1.0, 1e-12).unwrap();
        assert!((m.x - corner_radius(4.0, a).unwrap()).abs() < 1e-10, "{}", m.x);
    }

    #[test]
    fn stadium_family_recovers_m() {
        let a = alpha(1.5);
        let m = closed_form_stadium(a, 100.0).unwrap();
        assert!((m.parameter - PI / 2.0).abs() < 1e-9);
        assert!((m.h - h_alpha_stadium(a)).abs() < 1e-12);
    }

    #[test]
    fn disk_ratio() {
        let a = alpha(1.5);
        let disk = build_topped_substrip(0.0, 5000).unwrap();
        let r = ratio(&disk, a).unwrap();
        assert!((r - 2.0 * PI / PI.powf(2.0 / 3.0)).abs() < 1e-6);
    }

    #[test]
    fn rectangle_oracle_picks_the_right_family() {
        let a = alpha(1.5);
        let sq = oracle_rectangle(2.0, a, 2000).unwrap();
        assert!(matches!(sq.solution.kind, SolutionKind::CutCorners { .. }));
        assert!(sq.stadium.is_none());
        let h = h_alpha_rectangle(2.0, a).unwrap();
        assert!(((sq.solution.h_alpha - h) / h).abs() < 1e-5);
        let long = oracle_rectangle(20.0, a, 2000).unwrap();
        assert!(matches!(long.solution.kind, SolutionKind::ToppedSubstrip { .. }));
        assert!(((long.solution.h_alpha - h_alpha_stadium(a)) / h_alpha_stadium(a)).abs() < 1e-5);
    }

    #[test]
    fn custom_family() {
        let a = alpha(1.3);
        let p = RatioProblem::new(
            Family::Custom(Arc::new(|t| build_cut_corner_rectangle(5.0, t, 500))),
            a,
            1e-6,
            1.0,
            1e-9,
        )
        .unwrap();
        let best = p.solve().unwrap();
        assert!((best.x - corner_radius(5.0, a).unwrap()).abs() < 1e-4);
        assert!(RatioProblem::new(Family::ToppedSubstrip, a, 1.0, 0.0, 1e-9).is_err());
    }

    #[test]
    fn monte_carlo_disk() {
        let s = build_topped_substrip(0.0, 500).unwrap();
        let (est, err) = monte_carlo_area(&s, 100_000, 7).unwrap();
        let exact = s.measure().unwrap().area;
        assert!((est - exact).abs() <= 4.0 * err, "{est} {err}");
        assert_eq!(monte_carlo_area(&s, 100_000, 7).unwrap(), (est, err));
        assert_ne!(monte_carlo_area(&s, 100_000, 8).unwrap(), (est, err));
        assert!(monte_carlo_area(&s, 999, 7).is_err());
    }

    #[test]
    fn curve_oracle_on_annulus() {
        let c = StripCurve::circle(5.0).unwrap();
        let a = alpha(1.01);
        let o = oracle_curve(&c, a, 200, &FitOptions::default()).unwrap();
        assert_eq!(o.family, CandidateFamily::WholeDomain);
        let exact = (20.0 * PI).powf(1.0 - 1.0 / 1.01);
        assert!(((o.h - exact) / exact).abs() < 1e-6);
    }
}
