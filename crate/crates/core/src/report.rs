//! Text, table and CSV rendering of classifications. Numbers are printed with
//! 12 significant digits independently of the locale.

use std::fmt::Write as _;

use crate::classifier::StripClassification;
use crate::solution::{CheegerSolution, SolutionKind};

/// Column order of sweep CSV output.
pub const CSV_HEADER: &str = "L,alpha,case,h_alpha,radius_or_M,area,perimeter,unique,oracle_h,gap";

/// Formats `x` with 12 significant digits, trailing zeros removed;
/// scientific notation outside `[1e-5, 1e12)`.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_interval((a, b): (f64, f64)) -> String {
    format!("[{}, {}]", fmt_g(a), fmt_g(b))
}

fn kind_name(s: &CheegerSolution) -> &'static str {
    match s.kind {
        SolutionKind::CutCorners { .. } => "cut_corners",
        SolutionKind::ToppedSubstrip { .. } => "topped_substrip",
        SolutionKind::WholeDomain => "whole_domain",
    }
}

fn write_solution(out: &mut String, s: &CheegerSolution, indent: &str) {
    let _ = writeln!(out, "{indent}kind: {}", kind_name(s));
    match &s.kind {
        SolutionKind::CutCorners { r } => {
            let _ = writeln!(out, "{indent}r: {}", fmt_g(*r));
        }
        SolutionKind::ToppedSubstrip { m, placements } => {
            let _ = writeln!(out, "{indent}M: {}", fmt_g(*m));
            let list: Vec<String> = placements.intervals.iter().map(|&i| fmt_interval(i)).collect();
            let _ = writeln!(out, "{indent}placements: {}", list.join(" "));
            let _ = writeln!(out, "{indent}canonical_placement: {}", fmt_g(placements.canonical));
        }
        SolutionKind::WholeDomain => {}
    }
    let _ = writeln!(out, "{indent}h_alpha: {}", fmt_g(s.h_alpha));
    let _ = writeln!(out, "{indent}area: {}", fmt_g(s.area));
    let _ = writeln!(out, "{indent}perimeter: {}", fmt_g(s.perimeter));
    let _ = writeln!(out, "{indent}unique: {}", s.unique);
    let _ = writeln!(out, "{indent}diameter: {}", fmt_g(s.diameter));
}

/// Multi-line report of a classification and its evidence.
pub fn render(c: &StripClassification) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "case: {}", c.case);
    write_solution(&mut out, &c.solution, "");
    for (i, alt) in c.alternatives.iter().enumerate() {
        let _ = writeln!(out, "alternative {}:", i + 1);
        write_solution(&mut out, alt, "  ");
    }
    let e = &c.evidence;
    let _ = writeln!(out, "evidence:");
    let _ = writeln!(out, "  alpha: {}", fmt_g(e.alpha));
    let _ = writeln!(out, "  length: {}", fmt_g(e.length));
    let _ = writeln!(out, "  M(alpha): {}", fmt_g(e.m));
    let _ = writeln!(out, "  M(alpha)+2: {}", fmt_g(e.stadium_threshold));
    if let Some(w) = e.wide_threshold {
        let _ = writeln!(out, "  M(alpha)+pi: {}", fmt_g(w));
    }
    let _ = writeln!(out, "  case_tolerance: {}", fmt_g(e.case_tolerance));
    if let Some(t) = e.truncated_length {
        let _ = writeln!(out, "  truncated_length: {}", fmt_g(t));
    }
    if e.scale_to_user != 1.0 {
        let _ = writeln!(out, "  scale_to_user: {}", fmt_g(e.scale_to_user));
    }
    if let Some(v) = e.cut_corner_value {
        let _ = writeln!(out, "  cut_corner_value: {}", fmt_g(v));
    }
    if let Some(v) = e.stadium_value {
        let _ = writeln!(out, "  stadium_value: {}", fmt_g(v));
    }
    if let Some(v) = e.whole_value {
        let _ = writeln!(out, "  whole_value: {}", fmt_g(v));
    }
    if let Some(a) = &e.annulus {
        let _ = writeln!(
            out,
            "  annulus_comparison: substrip {} vs annulus {} ({:?}, tolerance {})",
            fmt_g(a.substrip_ratio),
            fmt_g(a.annulus_ratio),
            a.ordering,
            fmt_g(a.tolerance)
        );
    }
    if let Some(f) = &e.fit {
        let list: Vec<String> = f.intervals.iter().map(|&i| fmt_interval(i)).collect();
        let _ = writeln!(
            out,
            "  fit: {} of {} anchors feasible (step {}, tolerance {}) intervals {}",
            f.feasible,
            f.scanned,
            fmt_g(f.step),
            fmt_g(f.tolerance),
            if list.is_empty() {
                "none".to_string()
            } else {
                list.join(" ")
            }
        );
    }
    if let Some(r) = e.curvature_residual {
        let _ = writeln!(out, "  curvature_residual: {}", fmt_g(r));
    }
    for n in &e.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    out
}

/// Oracle comparison appended to a report.
pub fn render_verification(h: f64, oracle: f64) -> String {
    format!(
        "oracle_h: {}\ngap_abs: {}\ngap_rel: {}\n",
        fmt_g(oracle),
        fmt_g((h - oracle).abs()),
        fmt_g(relative_gap(h, oracle))
    )
}

pub fn relative_gap(h: f64, oracle: f64) -> f64 {
    ((h - oracle) / oracle).abs()
}

/// One sweep cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub length: f64,
    pub alpha: f64,
    pub classification: StripClassification,
    pub oracle_h: Option<f64>,
}

impl SweepRow {
    pub fn gap(&self) -> Option<f64> {
        self.oracle_h
            .map(|o| relative_gap(self.classification.solution.h_alpha, o))
    }

    fn fields(&self) -> [String; 10] {
        let s = &self.classification.solution;
        let opt = |v: Option<f64>| v.map(fmt_g).unwrap_or_default();
        [
            fmt_g(self.length),
            fmt_g(self.alpha),
            self.classification.case.to_string(),
            fmt_g(s.h_alpha),
            fmt_g(s.radius_or_m()),
            fmt_g(s.area),
            fmt_g(s.perimeter),
            s.unique.to_string(),
            opt(self.oracle_h),
            opt(self.gap()),
        ]
    }
}

/// CSV with [`CSV_HEADER`]; rows are sorted by `(L, α)`.
pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in sorted(rows) {
        out.push_str(&r.fields().join(","));
        out.push('\n');
    }
    out
}

/// Column-aligned table with the same columns as the CSV.
pub fn render_table(rows: &[SweepRow]) -> String {
    let header: Vec<String> = CSV_HEADER.split(',').map(str::to_string).collect();
    let body: Vec<[String; 10]> = sorted(rows).iter().map(|r| r.fields()).collect();
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in &body {
        for (w, f) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(f.len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(&header);
    out.push('\n');
    for row in &body {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

fn sorted(rows: &[SweepRow]) -> Vec<&SweepRow> {
    let mut v: Vec<&SweepRow> = rows.iter().collect();
    v.sort_by(|a, b| {
        a.length
            .total_cmp(&b.length)
            .then(a.alpha.total_cmp(&b.alpha))
    });
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::Alpha;
    use crate::classifier::classify_rectangle_length;

    #[test]
    fn general_format() {
        assert_eq!(fmt_g(1.0), "1");
        assert_eq!(fmt_g(0.1 + 0.2), "0.3");
        assert_eq!(fmt_g(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_g(-2.5e-7), "-2.5e-7");
        assert_eq!(fmt_g(1.5e15), "1.5e15");
        assert_eq!(fmt_g(123456.0), "123456");
        assert_eq!(fmt_g(9.9999999999999), "10");
        assert_eq!(fmt_g(f64::INFINITY), "inf");
        assert_eq!(fmt_g(0.0), "0");
    }

    #[test]
    fn csv_rows_are_sorted() {
        let row = |l: f64, a: f64| SweepRow {
            length: l,
            alpha: a,
            classification: classify_rectangle_length(l, Alpha::new(a).unwrap()).unwrap(),
            oracle_h: None,
        };
        let rows = vec![row(5.0, 1.5), row(2.0, 1.9), row(2.0, 1.2)];
        let csv = render_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("2,1.2,"));
        assert!(lines[2].starts_with("2,1.9,"));
        assert!(lines[3].starts_with("5,1.5,topped_family,"));
        assert!(lines[3].ends_with(",false,,"));
        assert_eq!(render_table(&rows).lines().count(), 4);
    }

    #[test]
    fn report_mentions_case_and_constant() {
        let c = classify_rectangle_length(10.0, Alpha::new(1.5).unwrap()).unwrap();
        let text = render(&c);
        assert!(text.starts_with("case: topped_family\n"));
        assert!(text.contains("placements: [1, 7.42920367321]"));
        assert!(text.contains("unique: false"));
    }
}
