//! C ABI over `alpha_cheeger`.
//!
//! Every fallible call returns an [`AcStatus`]; on failure the message is
//! available from [`ac_last_error_message`] on the same thread. Handles are
//! owned by the caller and released with [`ac_classification_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use alpha_cheeger::alpha::{Alpha, AlphaError};
use alpha_cheeger::analytic::{self, AnalyticError, Rectangle};
use alpha_cheeger::classifier::{
    classify_curve, classify_rectangle, CaseTag, ClassifyError, ClassifyOptions,
    StripClassification,
};
use alpha_cheeger::geometry::{CurveError, CurveFile, GeometryError};
use alpha_cheeger::oracle::{oracle_rectangle, OracleError};
use alpha_cheeger::report;
use alpha_cheeger::solution::SolutionKind;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidAlpha = 3,
    InvalidCurve = 4,
    Geometry = 5,
    Numerical = 6,
    OutOfBounds = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcCase {
    UniqueCutCorners = 0,
    UniqueBoundaryCase = 1,
    ToppedFamily = 2,
    AnnulusWhole = 3,
    AnnulusFamily = 4,
    AnnulusTie = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcSetKind {
    CutCorners = 0,
    ToppedSubstrip = 1,
    WholeDomain = 2,
}

/// Opaque classification handle.
pub struct AcClassification {
    inner: StripClassification,
    report: CString,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(AcStatus, String);

impl From<AlphaError> for Failure {
    fn from(e: AlphaError) -> Self {
        Self(AcStatus::InvalidAlpha, e.to_string())
    }
}

impl From<AnalyticError> for Failure {
    fn from(e: AnalyticError) -> Self {
        Self(AcStatus::InvalidArgument, e.to_string())
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        Self(AcStatus::InvalidCurve, e.to_string())
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Self(AcStatus::Geometry, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Self(AcStatus::Numerical, e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        let status = match &e {
            ClassifyError::TooShort { .. } | ClassifyError::WrongKind { .. } => {
                AcStatus::InvalidArgument
            }
            ClassifyError::Analytic(_) => AcStatus::InvalidArgument,
            ClassifyError::Geometry(_) => AcStatus::Geometry,
            ClassifyError::Curve(_) => AcStatus::InvalidCurve,
            ClassifyError::Oracle(_) => AcStatus::Numerical,
        };
        Self(status, e.to_string())
    }
}

/// Runs `f`, records any failure or panic, and maps it to a status.
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> AcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            AcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            AcStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(AcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn into_handle(c: StripClassification) -> Result<*mut AcClassification, Failure> {
    let report = CString::new(report::render(&c)).unwrap_or_default();
    let json = serde_json::to_string(&c)
        .map_err(|e| Failure(AcStatus::Numerical, e.to_string()))
        .map(|s| CString::new(s).unwrap_or_default())?;
    Ok(Box::into_raw(Box::new(AcClassification {
        inner: c,
        report,
        json,
    })))
}

unsafe fn handle<'a>(c: *const AcClassification) -> Option<&'a AcClassification> {
    c.as_ref()
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn ac_status_message(status: AcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        AcStatus::Ok => c"ok",
        AcStatus::NullPointer => c"null pointer argument",
        AcStatus::InvalidArgument => c"invalid argument",
        AcStatus::InvalidAlpha => c"alpha outside the admissible range",
        AcStatus::InvalidCurve => c"invalid curve",
        AcStatus::Geometry => c"geometry failure",
        AcStatus::Numerical => c"numerical failure",
        AcStatus::OutOfBounds => c"index out of bounds",
        AcStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ac_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Classifies `R_L`; pass `INFINITY` for the infinite strip.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classify_rectangle(
    length: f64,
    alpha: f64,
    out: *mut *mut AcClassification,
) -> AcStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null());
        }
        let alpha = Alpha::new(alpha)?;
        let rect = if length == f64::INFINITY {
            Rectangle::infinite()
        } else {
            Rectangle::normalized(length)?
        };
        let h = into_handle(classify_rectangle(rect, alpha)?)?;
        write_out(out, h)
    })
}

/// Classifies the rectangle with sides `a` and `b`, in its own units.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classify_sides(
    a: f64,
    b: f64,
    alpha: f64,
    out: *mut *mut AcClassification,
) -> AcStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null());
        }
        let alpha = Alpha::new(alpha)?;
        let h = into_handle(classify_rectangle(Rectangle::from_sides(a, b)?, alpha)?)?;
        write_out(out, h)
    })
}

/// Classifies the strip or annulus around a spine given as curve-file JSON.
/// `segments` is the polygon resolution; 0 selects the default.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ac_classify_curve_json(
    json: *const c_char,
    alpha: f64,
    segments: usize,
    out: *mut *mut AcClassification,
) -> AcStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(AcStatus::InvalidCurve, e.to_string()))?;
        let alpha = Alpha::new(alpha)?;
        let curve = CurveFile::parse(text)?.build()?;
        let mut options = ClassifyOptions::default();
        if segments != 0 {
            options.segments_per_arc = segments;
        }
        let h = into_handle(classify_curve(&curve, alpha, &options)?)?;
        write_out(out, h)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `c` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_free(c: *mut AcClassification) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_case(
    c: *const AcClassification,
    out: *mut AcCase,
) -> AcStatus {
    guarded(|| {
        let c = handle(c).ok_or_else(null)?;
        let case = match c.inner.case {
            CaseTag::UniqueCutCorners => AcCase::UniqueCutCorners,
            CaseTag::UniqueBoundaryCase => AcCase::UniqueBoundaryCase,
            CaseTag::ToppedFamily => AcCase::ToppedFamily,
            CaseTag::AnnulusWhole => AcCase::AnnulusWhole,
            CaseTag::AnnulusFamily => AcCase::AnnulusFamily,
            CaseTag::AnnulusTie => AcCase::AnnulusTie,
        };
        write_out(out, case)
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_set_kind(
    c: *const AcClassification,
    out: *mut AcSetKind,
) -> AcStatus {
    guarded(|| {
        let c = handle(c).ok_or_else(null)?;
        let kind = match c.inner.solution.kind {
            SolutionKind::CutCorners { .. } => AcSetKind::CutCorners,
            SolutionKind::ToppedSubstrip { .. } => AcSetKind::ToppedSubstrip,
            SolutionKind::WholeDomain => AcSetKind::WholeDomain,
        };
        write_out(out, kind)
    })
}

/// `P / |E|^{1/α}` of the reported set. NaN for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_h_alpha(c: *const AcClassification) -> f64 {
    handle(c).map_or(f64::NAN, |h| {
        let s = &h.inner.solution;
        s.h_alpha
    })
}

/// Area of the reported set. NaN for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_area(c: *const AcClassification) -> f64 {
    handle(c).map_or(f64::NAN, |h| {
        let s = &h.inner.solution;
        s.area
    })
}

/// Relative perimeter of the reported set. NaN for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_perimeter(c: *const AcClassification) -> f64 {
    handle(c).map_or(f64::NAN, |h| {
        let s = &h.inner.solution;
        s.perimeter
    })
}

/// Diameter of the reported set. NaN for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_diameter(c: *const AcClassification) -> f64 {
    handle(c).map_or(f64::NAN, |h| {
        let s = &h.inner.solution;
        s.diameter
    })
}

/// Corner radius for cut corners, body length for stadiums, NaN otherwise. NaN for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_radius_or_m(c: *const AcClassification) -> f64 {
    handle(c).map_or(f64::NAN, |h| {
        let s = &h.inner.solution;
        s.radius_or_m()
    })
}

/// Whether the reported set is the only Cheeger set. False for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_unique(c: *const AcClassification) -> bool {
    handle(c).is_some_and(|h| h.inner.solution.unique)
}

/// Number of placement intervals; 0 unless the set is a stadium.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_placement_count(c: *const AcClassification) -> usize {
    match handle(c).map(|h| &h.inner.solution.kind) {
        Some(SolutionKind::ToppedSubstrip { placements, .. }) => placements.intervals.len(),
        _ => 0,
    }
}

/// Bounds of placement interval `index`. Unbounded ends are infinite.
///
/// # Safety
/// `c` must be a live handle; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_placement(
    c: *const AcClassification,
    index: usize,
    lo: *mut f64,
    hi: *mut f64,
) -> AcStatus {
    guarded(|| {
        let c = handle(c).ok_or_else(null)?;
        if lo.is_null() || hi.is_null() {
            return Err(null());
        }
        let SolutionKind::ToppedSubstrip { placements, .. } = &c.inner.solution.kind else {
            return Err(Failure(AcStatus::OutOfBounds, "set has no placements".into()));
        };
        let &(a, b) = placements.intervals.get(index).ok_or_else(|| {
            Failure(
                AcStatus::OutOfBounds,
                format!("placement {index} of {}", placements.intervals.len()),
            )
        })?;
        write_out(lo, a)?;
        write_out(hi, b)
    })
}

/// Text report owned by the handle.
///
/// # Safety
/// `c` must be null or a live handle; the string dies with the handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_report(c: *const AcClassification) -> *const c_char {
    handle(c).map_or(std::ptr::null(), |h| h.report.as_ptr())
}

/// JSON rendering owned by the handle.
///
/// # Safety
/// `c` must be null or a live handle; the string dies with the handle.
#[no_mangle]
pub unsafe extern "C" fn ac_classification_json(c: *const AcClassification) -> *const c_char {
    handle(c).map_or(std::ptr::null(), |h| h.json.as_ptr())
}

/// Body length of the optimal stadium.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ac_m_of_alpha(alpha: f64, out: *mut f64) -> AcStatus {
    guarded(|| write_out(out, analytic::m_of_alpha(Alpha::new(alpha)?)))
}

/// Exponent at which `R_L` switches between its two regimes.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ac_alpha_bar(length: f64, out: *mut f64) -> AcStatus {
    guarded(|| write_out(out, analytic::alpha_bar(length)?))
}

/// Corner radius of the cut-corner Cheeger set of `R_L`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ac_corner_radius(length: f64, alpha: f64, out: *mut f64) -> AcStatus {
    guarded(|| write_out(out, analytic::corner_radius(length, Alpha::new(alpha)?)?))
}

/// `h_α(R_L)`; `INFINITY` selects the infinite strip.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ac_h_alpha_rectangle(length: f64, alpha: f64, out: *mut f64) -> AcStatus {
    guarded(|| write_out(out, analytic::h_alpha_rectangle(length, Alpha::new(alpha)?)?))
}

/// Polygon-oracle estimate of `h_α(R_L)` at `segments` chords per quarter arc.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ac_oracle_rectangle(
    length: f64,
    alpha: f64,
    segments: usize,
    out: *mut f64,
) -> AcStatus {
    guarded(|| {
        let o = oracle_rectangle(length, Alpha::new(alpha)?, segments)?;
        write_out(out, o.solution.h_alpha)
    })
}
