//! Decision procedures for rectangles, open strips and annuli.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::alpha::Alpha;
use crate::analytic::{
    annulus_ratio, annulus_substrip_wins, corner_radius_unchecked, cut_corner_area,
    cut_corner_perimeter, free_boundary_radius, h_alpha_cut_corner_branch, h_alpha_stadium, m_of_alpha,
    rectangle_case, stadium_area, stadium_perimeter, truncation_length, AnalyticError,
    AnnulusComparison, AnnulusOrdering, Rectangle, RectangleCase, CASE_TOLERANCE,
    MIN_STRIP_LENGTH,
};
use crate::geometry::{
    build_strip_polygon, build_topped_substrip_on_curve,
    fit_topped_substrip_with, Annulus, CurveError, CurveKind, FitOptions, FitResult,
    GeometryError, StripCurve, DEFAULT_SEGMENTS_PER_ARC,
};
use crate::oracle::{strip_cut_corner_min, OracleError};
use crate::solution::{CheegerSolution, Placements, SolutionKind};

/// Segments per quarter arc when measuring stadium placements for their diameter.
const PLACEMENT_SEGMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error(
        "spine length {length} is below {minimum}; strips and annuli need L >= 9π/2"
    )]
    TooShort { length: f64, minimum: f64 },
    #[error("expected an {expected} spine, got {found:?}")]
    WrongKind {
        expected: &'static str,
        found: CurveKind,
    },
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    UniqueCutCorners,
    UniqueBoundaryCase,
    ToppedFamily,
    AnnulusWhole,
    AnnulusFamily,
    AnnulusTie,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::UniqueCutCorners => "unique_cut_corners",
            CaseTag::UniqueBoundaryCase => "unique_boundary_case",
            CaseTag::ToppedFamily => "topped_family",
            CaseTag::AnnulusWhole => "annulus_whole",
            CaseTag::AnnulusFamily => "annulus_family",
            CaseTag::AnnulusTie => "annulus_tie",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitSummary {
    pub scanned: usize,
    pub feasible: usize,
    pub step: f64,
    pub tolerance: f64,
    pub intervals: Vec<(f64, f64)>,
    pub extent: f64,
}

impl From<&FitResult> for FitSummary {
    fn from(f: &FitResult) -> Self {
        Self {
            scanned: f.scanned,
            feasible: f.anchors.len(),
            step: f.step,
            tolerance: f.tolerance,
            intervals: f.intervals.clone(),
            extent: f.total_extent(),
        }
    }
}

/// The comparisons behind a decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub alpha: f64,
    /// Length of the (possibly truncated) spine that was examined.
    pub length: f64,
    pub m: f64,
    /// `M(α) + 2`.
    pub stadium_threshold: f64,
    /// `M(α) + π`, above which a stadium always fits in a strip.
    pub wide_threshold: Option<f64>,
    pub case_tolerance: f64,
    pub truncated_length: Option<f64>,
    pub fit: Option<FitSummary>,
    pub annulus: Option<AnnulusComparison>,
    pub cut_corner_value: Option<f64>,
    pub stadium_value: Option<f64>,
    pub whole_value: Option<f64>,
    /// `|r − α/h · A^{1−1/α}|` for numerically found radii.
    pub curvature_residual: Option<f64>,
    pub scale_to_user: f64,
    pub notes: Vec<String>,
}

impl Evidence {
    fn new(alpha: Alpha, length: f64) -> Self {
        let m = m_of_alpha(alpha);
        Self {
            alpha: alpha.value(),
            length,
            m,
            stadium_threshold: m + 2.0,
            wide_threshold: None,
            case_tolerance: CASE_TOLERANCE,
            truncated_length: None,
            fit: None,
            annulus: None,
            cut_corner_value: None,
            stadium_value: None,
            whole_value: None,
            curvature_residual: None,
            scale_to_user: 1.0,
            notes: vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StripClassification {
    pub case: CaseTag,
    pub solution: CheegerSolution,
    /// Further optimal sets, reported for ties.
    pub alternatives: Vec<CheegerSolution>,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    /// Resolution of the polygons used for numerically found sets.
    pub segments_per_arc: usize,
    pub fit: FitOptions,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            segments_per_arc: DEFAULT_SEGMENTS_PER_ARC,
            fit: FitOptions::default(),
        }
    }
}

fn cut_corner_diameter(length: f64, r: f64) -> f64 {
    2.0 * (0.5 * length - r).hypot(1.0 - r) + 2.0 * r
}

fn rectangle_cut_corners(length: f64, r: f64, alpha: Alpha) -> CheegerSolution {
    CheegerSolution::from_measures(
        SolutionKind::CutCorners { r },
        cut_corner_area(length, r),
        cut_corner_perimeter(length, r),
        cut_corner_diameter(length, r),
        alpha,
    )
}

fn stadium_solution(m: f64, placements: Placements, diameter: f64, alpha: Alpha) -> CheegerSolution {
    CheegerSolution::from_measures(
        SolutionKind::ToppedSubstrip { m, placements },
        stadium_area(m),
        stadium_perimeter(m),
        diameter,
        alpha,
    )
}

/// Classifies a rectangle; results are expressed in the caller's units.
pub fn classify_rectangle(
    rect: Rectangle,
    alpha: Alpha,
) -> Result<StripClassification, ClassifyError> {
    let length = rect.length();
    let case = rectangle_case(length, alpha)?;
    let mut evidence = Evidence::new(alpha, length);
    let m = evidence.m;
    evidence.stadium_value = Some(h_alpha_stadium(alpha));
    if length.is_finite() {
        evidence.cut_corner_value = Some(h_alpha_cut_corner_branch(length, alpha));
    }
    let (tag, solution) = match case {
        RectangleCase::CutCorners => (
            CaseTag::UniqueCutCorners,
            rectangle_cut_corners(length, corner_radius_unchecked(length, alpha.value()), alpha),
        ),
        RectangleCase::Boundary => (
            CaseTag::UniqueBoundaryCase,
            rectangle_cut_corners(length, 1.0, alpha),
        ),
        RectangleCase::Stadium => {
            let placements = if length.is_infinite() {
                Placements {
                    intervals: vec![(f64::NEG_INFINITY, f64::INFINITY)],
                    canonical: -0.5 * m,
                }
            } else {
                Placements {
                    intervals: vec![(1.0, length - m - 1.0)],
                    canonical: 0.5 * (length - m),
                }
            };
            (
                CaseTag::ToppedFamily,
                stadium_solution(m, placements, m + 2.0, alpha),
            )
        }
    };
    let scale = rect.scale_to_user();
    evidence.scale_to_user = scale;
    Ok(StripClassification {
        case: tag,
        solution: solution.scaled(scale, alpha),
        alternatives: vec![],
        evidence,
    })
}

/// [`classify_rectangle`] on `R_L`.
pub fn classify_rectangle_length(
    length: f64,
    alpha: Alpha,
) -> Result<StripClassification, ClassifyError> {
    classify_rectangle(Rectangle::normalized(length)?, alpha)
}

fn placement_diameter(curve: &StripCurve, s0: f64, m: f64) -> Result<f64, ClassifyError> {
    Ok(build_topped_substrip_on_curve(curve, s0, m, PLACEMENT_SEGMENTS)?.diameter())
}

fn placements_from_fit(fit: &FitResult) -> Placements {
    Placements {
        intervals: fit.intervals.clone(),
        canonical: fit.canonical().unwrap_or(f64::NAN),
    }
}

/// Classifies the strip around an open spine.
pub fn classify_open_strip(
    curve: &StripCurve,
    alpha: Alpha,
    options: &ClassifyOptions,
) -> Result<StripClassification, ClassifyError> {
    let kind = curve.kind();
    if !kind.is_open() {
        return Err(ClassifyError::WrongKind {
            expected: "open",
            found: kind,
        });
    }
    if curve.length() < MIN_STRIP_LENGTH {
        return Err(ClassifyError::TooShort {
            length: curve.length(),
            minimum: MIN_STRIP_LENGTH,
        });
    }
    if curve.is_straight() {
        return match kind {
            CurveKind::Finite => classify_rectangle_length(curve.length(), alpha),
            CurveKind::Infinite => classify_rectangle(Rectangle::infinite(), alpha),
            _ => {
                let mut c = classify_rectangle(Rectangle::infinite(), alpha)?;
                if let SolutionKind::ToppedSubstrip { placements, .. } = &mut c.solution.kind {
                    *placements = Placements {
                        intervals: vec![(1.0, f64::INFINITY)],
                        canonical: 1.0,
                    };
                }
                Ok(c)
            }
        };
    }
    let mut evidence = Evidence::new(alpha, curve.length());
    let m = evidence.m;
    evidence.wide_threshold = Some(m + std::f64::consts::PI);
    let working = if kind.is_unbounded() {
        let want = truncation_length(alpha);
        let w = curve.window(want)?;
        if w.length() < want {
            evidence.notes.push(format!(
                "sampled window of length {} is shorter than the truncation length {want}",
                w.length()
            ));
        }
        evidence.truncated_length = Some(w.length());
        evidence.length = w.length();
        w
    } else {
        curve.clone()
    };
    let fit = fit_topped_substrip_with(&working, m, &options.fit);
    evidence.fit = Some(FitSummary::from(&fit));
    evidence.stadium_value = Some(h_alpha_stadium(alpha));
    if !fit.is_empty() {
        let placements = placements_from_fit(&fit);
        let diameter = placement_diameter(&working, placements.canonical, m)?;
        return Ok(StripClassification {
            case: CaseTag::ToppedFamily,
            solution: stadium_solution(m, placements, diameter, alpha),
            alternatives: vec![],
            evidence,
        });
    }
    if working.length() > m + std::f64::consts::PI {
        evidence.notes.push(format!(
            "no stadium fits although L = {} exceeds M(alpha) + pi",
            working.length()
        ));
    }
    let (best, diameter) = strip_cut_corner_min(&working, alpha, options.segments_per_arc)?;
    let solution = CheegerSolution::from_measures(
        SolutionKind::CutCorners { r: best.parameter },
        best.measure.area,
        best.measure.perimeter,
        diameter,
        alpha,
    );
    let implied = free_boundary_radius(solution.h_alpha, solution.area, alpha)?;
    let residual = (best.parameter - implied).abs();
    evidence.cut_corner_value = Some(solution.h_alpha);
    evidence.curvature_residual = Some(residual);
    let case = match solution.kind {
        SolutionKind::CutCorners { r } if r >= 1.0 => CaseTag::UniqueBoundaryCase,
        _ => CaseTag::UniqueCutCorners,
    };
    Ok(StripClassification {
        case,
        solution,
        alternatives: vec![],
        evidence,
    })
}

/// Classifies a generalized annulus.
pub fn classify_annulus(
    annulus: &Annulus,
    alpha: Alpha,
    options: &ClassifyOptions,
) -> Result<StripClassification, ClassifyError> {
    let length = annulus.spine_length;
    if length < MIN_STRIP_LENGTH {
        return Err(ClassifyError::TooShort {
            length,
            minimum: MIN_STRIP_LENGTH,
        });
    }
    let mut evidence = Evidence::new(alpha, length);
    let m = evidence.m;
    let whole_diameter = build_strip_polygon(&annulus.spine)?.diameter();
    let whole = CheegerSolution {
        kind: SolutionKind::WholeDomain,
        h_alpha: annulus_ratio(length, alpha),
        area: 2.0 * length,
        perimeter: 2.0 * length,
        unique: true,
        diameter: whole_diameter,
    };
    let comparison = annulus_substrip_wins(length, alpha);
    evidence.annulus = Some(comparison);
    evidence.whole_value = Some(whole.h_alpha);
    evidence.stadium_value = Some(comparison.substrip_ratio);
    let fit = fit_topped_substrip_with(&annulus.spine, m, &options.fit);
    evidence.fit = Some(FitSummary::from(&fit));
    if fit.is_empty() {
        return Ok(StripClassification {
            case: CaseTag::AnnulusWhole,
            solution: whole,
            alternatives: vec![],
            evidence,
        });
    }
    let placements = placements_from_fit(&fit);
    let diameter = placement_diameter(&annulus.spine, placements.canonical, m)?;
    let family = stadium_solution(m, placements, diameter, alpha);
    let (case, solution, alternatives) = match comparison.ordering {
        AnnulusOrdering::SubstripBetter => (CaseTag::AnnulusFamily, family, vec![]),
        AnnulusOrdering::AnnulusBetter => (CaseTag::AnnulusWhole, whole, vec![]),
        AnnulusOrdering::Tie => {
            let mut whole = whole;
            whole.unique = false;
            (CaseTag::AnnulusTie, whole, vec![family])
        }
    };
    Ok(StripClassification {
        case,
        solution,
        alternatives,
        evidence,
    })
}

/// Dispatches on the spine kind.
pub fn classify_curve(
    curve: &StripCurve,
    alpha: Alpha,
    options: &ClassifyOptions,
) -> Result<StripClassification, ClassifyError> {
    if curve.kind() == CurveKind::Annulus {
        classify_annulus(&Annulus::new(curve.clone())?, alpha, options)
    } else {
        classify_open_strip(curve, alpha, options)
    }
}
