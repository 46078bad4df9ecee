use powsum_core::baker::{
    certify_bound, compare_tables, hprime_reconciliation, Case, BAKER_XS,
};
use powsum_core::directed::DEFAULT_DIGITS;

#[test]
fn every_printed_entry_is_sound_and_close() {
    let checks = compare_tables(DEFAULT_DIGITS).unwrap();
    assert_eq!(checks.len(), 3 * 6 * 8);
    for c in &checks {
        assert!(c.sound, "{} x={} {}: printed {} computed {:.6}", c.case, c.x, c.field, c.printed, c.computed);
        assert!(c.agrees, "{} x={} {}: deviation {}", c.case, c.x, c.field, c.deviation);
    }
    let worst = checks.iter().map(|c| c.deviation).fold(0.0, f64::max);
    eprintln!("largest deviation from the printed tables: {worst:.2e}");
}

#[test]
fn every_published_bound_certifies() {
    for case in Case::ALL {
        for x in BAKER_XS {
            let r = certify_bound(x, case, DEFAULT_DIGITS).unwrap();
            assert!(r.reproduced, "{case} x={x}: {:?}", r.certificate.failure);
            let d = r.derived_bound.unwrap();
            assert!(d <= r.published_bound_value);
            eprintln!(
                "{case:>3} x={x:>2}: published {:>8}, RHS({}) = {:.2}, derived {d}",
                r.published_bound_value,
                r.published_bound_value + 1,
                r.certificate.rhs_at_v0
            );
        }
    }
}

#[test]
fn hprime_offsets_reconcile_up_to_a_few_units() {
    for r in hprime_reconciliation(DEFAULT_DIGITS).unwrap() {
        eprintln!("{} x={}: discrepancy {:+.2e}", r.case, r.x, r.discrepancy);
        assert!(r.discrepancy.abs() < 2e-4);
    }
}
