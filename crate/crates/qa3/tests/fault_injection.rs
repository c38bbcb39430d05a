use qa3::pipeline::verify::{criterion_8_with, criterion_9_with, Faults};

#[test]
fn flipped_corner_breaks_determinant_cross_check() {
    let r = criterion_8_with(Faults {
        flipped_corner: true,
        ..Faults::default()
    });
    assert!(r.regression(), "{}", r.line());
    assert!(r.detail.contains("mismatches 200/200"), "{}", r.detail);
}

#[test]
fn closed_coset_range_breaks_coset_count() {
    let r = criterion_9_with(Faults {
        closed_coset_range: true,
        ..Faults::default()
    });
    assert!(r.regression(), "{}", r.line());
    assert!(!r.detail.contains(" 0 coset count errors"), "{}", r.detail);
}

#[test]
fn unfaulted_checks_pass() {
    assert!(criterion_8_with(Faults::default()).passed);
}
