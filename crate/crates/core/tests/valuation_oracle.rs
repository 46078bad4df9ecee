use powsum_core::exact::{is_nth_power, perfect_power_witnesses, power_sum_t};
use powsum_core::valuation::{
    exponent_bound, predict_v2_t, predict_v3_s, predict_v3_t, sharpest_exponent_bound,
    verify_valuation_predictors, BoundKind, NOT_COVERED,
};

#[test]
fn full_grid_has_no_mismatches_and_hits_every_branch() {
    let report = verify_valuation_predictors(2000, 13);
    assert!(report.mismatches.is_empty(), "{}", report.mismatches_json_lines());
    // 12 + 7 + 4 branch labels across the three predictors
    assert_eq!(report.branch_hits.len(), 23, "{:#?}", report.branch_hits);
    for (label, hits) in &report.branch_hits {
        assert!(*hits >= 50, "{label}: {hits}");
        assert!(!label.ends_with(NOT_COVERED));
    }
    assert!(report.uncovered > 0);
}

#[test]
fn uncovered_classes_are_exactly_the_open_ones() {
    for x in 1..=300u64 {
        for k in 1..=13 {
            assert_eq!(!predict_v2_t(x, k).covered(), x % 32 == 1 && k >= 4, "x={x} k={k}");
            assert_eq!(!predict_v3_t(x, k).covered(), x % 9 == 5 && k % 2 == 0, "x={x} k={k}");
            assert!(predict_v3_s(x, k).covered());
        }
    }
}

#[test]
fn no_solution_classes() {
    for x in 1..=200u64 {
        for k in 1..=24u32 {
            let expect_none = (x % 8 == 4 && (k == 1 || k % 2 == 0))
                || (x % 8 == 1 && k == 1)
                || (x % 8 == 5 && k % 2 == 0);
            if expect_none {
                assert_eq!(exponent_bound(x, k).kind, BoundKind::NoSolutionForNGe2, "x={x} k={k}");
            }
        }
    }
}

#[test]
fn bounds_respect_actual_perfect_powers() {
    for x in 1..=200u64 {
        for k in 1..=10u32 {
            let t = power_sum_t(k, x).unwrap();
            let witnesses = perfect_power_witnesses(&t, 2, t.bits() as u32).unwrap_or_default();
            for b in [exponent_bound(x, k), sharpest_exponent_bound(x, k)] {
                match b.kind {
                    BoundKind::UpperBound(m) => {
                        assert!(witnesses.iter().all(|(_, n)| *n <= m), "x={x} k={k}")
                    }
                    BoundKind::NoSolutionForNGe2 => assert!(witnesses.is_empty(), "x={x} k={k}"),
                    BoundKind::NotCovered => {}
                }
            }
        }
    }
    // T_2(2) = 25 is the lone small square, outside every covered class
    assert!(is_nth_power(&power_sum_t(2, 2).unwrap(), 2).unwrap().is_some());
    assert_eq!(exponent_bound(2, 2).kind, BoundKind::NotCovered);
}
