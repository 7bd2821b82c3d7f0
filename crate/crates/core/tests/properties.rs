use alpha_cheeger::alpha::Alpha;
use alpha_cheeger::analytic::{
    alpha_bar, corner_radius, diameter_bound, free_boundary_radius, h_alpha_cut_corner_branch,
    h_alpha_rectangle, h_alpha_stadium, m_of_alpha, scale_constant, Rectangle,
};
use alpha_cheeger::classifier::{classify_rectangle, classify_rectangle_length, CaseTag};
use alpha_cheeger::geometry::{build_cut_corner_rectangle, build_topped_substrip, Vec2};
use alpha_cheeger::oracle::monte_carlo_area;
use alpha_cheeger::solution::SolutionKind;
use proptest::prelude::*;

fn a(v: f64) -> Alpha {
    Alpha::new(v).unwrap()
}

fn rel(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

fn alphas() -> impl Strategy<Value = f64> {
    1.01f64..1.99
}

fn lengths() -> impl Strategy<Value = f64> {
    2.0f64..200.0
}

proptest! {
    #[test]
    fn constant_is_nonincreasing_in_length(al in alphas(), l in lengths(), dl in 0.0f64..50.0) {
        let alpha = a(al);
        let h0 = h_alpha_rectangle(l, alpha).unwrap();
        let h1 = h_alpha_rectangle(l + dl, alpha).unwrap();
        prop_assert!(h1 <= h0 * (1.0 + 1e-12));
    }

    #[test]
    fn constant_plateaus_past_the_stadium_threshold(al in alphas(), extra in 0.0f64..100.0) {
        let alpha = a(al);
        let l = m_of_alpha(alpha) + 2.0 + extra;
        let h = h_alpha_rectangle(l, alpha).unwrap();
        prop_assert!(rel(h, h_alpha_stadium(alpha)) < 1e-12);
    }

    #[test]
    fn constant_is_increasing_in_alpha(l in lengths(), al in 1.01f64..1.98, da in 1e-3f64..0.01) {
        let h0 = h_alpha_rectangle(l, a(al)).unwrap();
        let h1 = h_alpha_rectangle(l, a(al + da)).unwrap();
        prop_assert!(h1 > h0);
    }

    #[test]
    fn sides_follow_the_scaling_law(al in alphas(), l in lengths(), short in 0.05f64..20.0) {
        let alpha = a(al);
        let scale = short / 2.0;
        let base = classify_rectangle_length(l, alpha).unwrap();
        let user = classify_rectangle(Rectangle::from_sides(short, l * scale).unwrap(), alpha).unwrap();
        prop_assert_eq!(user.case, base.case);
        prop_assert!(rel(user.solution.h_alpha, scale_constant(base.solution.h_alpha, scale, alpha)) < 1e-11);
        prop_assert!(rel(user.solution.area, base.solution.area * scale * scale) < 1e-12);
        // orientation does not matter
        let swapped = classify_rectangle(Rectangle::from_sides(l * scale, short).unwrap(), alpha).unwrap();
        prop_assert_eq!(swapped, user);
    }

    #[test]
    fn free_arcs_satisfy_the_curvature_relation(al in alphas(), l in lengths()) {
        let alpha = a(al);
        let c = classify_rectangle_length(l, alpha).unwrap();
        let s = &c.solution;
        let expected = free_boundary_radius(s.h_alpha, s.area, alpha).unwrap();
        let radius = s.arc_radius().unwrap();
        prop_assert!((radius - expected).abs() < 1e-9 * expected.max(1.0), "r {radius} vs {expected}");
    }

    #[test]
    fn diameter_respects_the_bound(al in alphas(), l in lengths()) {
        let alpha = a(al);
        let c = classify_rectangle_length(l, alpha).unwrap();
        prop_assert!(c.solution.diameter <= diameter_bound(alpha) * (1.0 + 1e-12));
        prop_assert!(c.solution.diameter <= l.hypot(2.0) * (1.0 + 1e-12));
    }

    #[test]
    fn polygon_measures_are_translation_invariant(
        l in 2.0f64..40.0,
        t in 0.05f64..1.0,
        dx in -1e3f64..1e3,
        dy in -1e3f64..1e3,
    ) {
        let shape = build_cut_corner_rectangle(l, t, 64).unwrap();
        let m0 = shape.measure().unwrap();
        let m1 = shape.translated(Vec2::new(dx, dy)).measure().unwrap();
        let drift = 1e-13 * (dx.abs() + dy.abs() + l);
        prop_assert!((m1.area - m0.area).abs() <= 1e-12 * m0.area + drift);
        prop_assert!((m1.perimeter - m0.perimeter).abs() <= 1e-12 * m0.perimeter + drift);
    }

    #[test]
    fn threshold_round_trips(al in alphas()) {
        let alpha = a(al);
        let threshold = m_of_alpha(alpha) + 2.0;
        prop_assert!((alpha_bar(threshold).unwrap() - al).abs() < 1e-12);
        prop_assert!((corner_radius(threshold, alpha).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn branches_meet_at_the_crossover(l in 2.01f64..1e4) {
        let alpha = a(alpha_bar(l).unwrap());
        let cut = h_alpha_cut_corner_branch(l, alpha);
        prop_assert!(rel(cut, h_alpha_stadium(alpha)) < 1e-10);
    }

    #[test]
    fn evidence_matches_the_decision(al in alphas(), l in lengths()) {
        let alpha = a(al);
        let c = classify_rectangle_length(l, alpha).unwrap();
        let e = &c.evidence;
        prop_assert_eq!(e.m, m_of_alpha(alpha));
        prop_assert_eq!(e.stadium_threshold, e.m + 2.0);
        prop_assert_eq!(e.stadium_value, Some(h_alpha_stadium(alpha)));
        let gap = (l - e.stadium_threshold) / e.stadium_threshold;
        if gap > e.case_tolerance {
            prop_assert_eq!(c.case, CaseTag::ToppedFamily);
            prop_assert!(!c.solution.unique);
        } else if gap < -e.case_tolerance {
            prop_assert_eq!(c.case, CaseTag::UniqueCutCorners);
            prop_assert!(c.solution.unique);
            // a stadium that does not fit is only approached from above
            prop_assert!(e.cut_corner_value.unwrap() >= e.stadium_value.unwrap());
            prop_assert!(rel(c.solution.h_alpha, e.cut_corner_value.unwrap()) < 1e-13);
        }
        if c.case == CaseTag::ToppedFamily {
            prop_assert!(rel(c.solution.h_alpha, e.stadium_value.unwrap()) < 1e-13);
        }
        if let SolutionKind::ToppedSubstrip { m, placements } = &c.solution.kind {
            prop_assert_eq!(*m, e.m);
            let (lo, hi) = placements.intervals[0];
            prop_assert!(lo <= placements.canonical && placements.canonical <= hi);
            prop_assert!(hi + m + 1.0 <= l * (1.0 + 1e-12));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn monte_carlo_is_seeded_and_unbiased(m in 0.0f64..6.0, seed in any::<u64>()) {
        let shape = build_topped_substrip(m, 128).unwrap();
        let first = monte_carlo_area(&shape, 20_000, seed).unwrap();
        prop_assert_eq!(monte_carlo_area(&shape, 20_000, seed).unwrap(), first);
        let exact = shape.measure().unwrap().area;
        prop_assert!((first.0 - exact).abs() <= 6.0 * first.1);
    }
}
