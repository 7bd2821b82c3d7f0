use serde::Serialize;

use crate::alpha::Alpha;

/// Arclength positions `s₀` of the left end of a stadium body.
///
/// For a finite rectangle or strip `s₀` is measured from the left end of the
/// spine; for `R_∞` it is the `x` coordinate of the left end of the body.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Placements {
    pub intervals: Vec<(f64, f64)>,
    pub canonical: f64,
}

impl Placements {
    pub fn single(s0: f64) -> Self {
        Self {
            intervals: vec![(s0, s0)],
            canonical: s0,
        }
    }

    /// Total length of the feasible set; infinite for unbounded intervals.
    pub fn extent(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn is_unbounded(&self) -> bool {
        self.intervals
            .iter()
            .any(|(a, b)| a.is_infinite() || b.is_infinite())
    }

    fn scaled(&self, s: f64) -> Self {
        Self {
            intervals: self.intervals.iter().map(|(a, b)| (a * s, b * s)).collect(),
            canonical: self.canonical * s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SolutionKind {
    /// Domain with its corners rounded by arcs of radius `r`.
    CutCorners { r: f64 },
    /// Stadium of body length `m` and unit caps, at any of `placements`.
    ToppedSubstrip { m: f64, placements: Placements },
    WholeDomain,
}

/// An α-Cheeger set description with its constant and measures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerSolution {
    pub kind: SolutionKind,
    pub h_alpha: f64,
    pub area: f64,
    pub perimeter: f64,
    pub unique: bool,
    pub diameter: f64,
}

impl CheegerSolution {
    /// Builds a solution whose constant is `perimeter / area^{1/α}`.
    pub fn from_measures(
        kind: SolutionKind,
        area: f64,
        perimeter: f64,
        diameter: f64,
        alpha: Alpha,
    ) -> Self {
        let unique = match &kind {
            SolutionKind::ToppedSubstrip { placements, .. } => !(placements.extent() > 0.0),
            _ => true,
        };
        Self {
            h_alpha: perimeter / area.powf(alpha.inv()),
            kind,
            area,
            perimeter,
            unique,
            diameter,
        }
    }

    /// The same set after the homothety `x ↦ s·x`.
    pub fn scaled(&self, s: f64, alpha: Alpha) -> Self {
        if s == 1.0 {
            return self.clone();
        }
        let kind = match &self.kind {
            SolutionKind::CutCorners { r } => SolutionKind::CutCorners { r: r * s },
            SolutionKind::ToppedSubstrip { m, placements } => SolutionKind::ToppedSubstrip {
                m: m * s,
                placements: placements.scaled(s),
            },
            SolutionKind::WholeDomain => SolutionKind::WholeDomain,
        };
        Self {
            kind,
            h_alpha: self.h_alpha * s.powf(alpha.scaling_exponent()),
            area: self.area * s * s,
            perimeter: self.perimeter * s,
            unique: self.unique,
            diameter: self.diameter * s,
        }
    }

    /// Radius of the free boundary arcs, when the set has any.
    pub fn arc_radius(&self) -> Option<f64> {
        match self.kind {
            SolutionKind::CutCorners { r } => Some(r),
            SolutionKind::ToppedSubstrip { .. } => Some(1.0),
            SolutionKind::WholeDomain => None,
        }
    }

    /// `r` for cut corners, `M` for stadiums, `NaN` for the whole domain.
    pub fn radius_or_m(&self) -> f64 {
        match self.kind {
            SolutionKind::CutCorners { r } => r,
            SolutionKind::ToppedSubstrip { m, .. } => m,
            SolutionKind::WholeDomain => f64::NAN,
        }
    }
}
