//! Kept in its own binary: the cap is process-wide.

mod common;

use projlat::groebner::{basis_cap, set_basis_cap, DEFAULT_BASIS_CAP};

#[test]
fn basis_cap_is_a_hard_error() {
    assert_eq!(basis_cap(), DEFAULT_BASIS_CAP);
    let r = common::qq(&["x", "y", "z"]);
    let i = common::ideal(&r, &["x^3 - y*z^2", "y^3 - x*z^2", "x^2*y - z^3"]);
    set_basis_cap(2);
    let capped = i.groebner_basis().map(|b| b.len());
    assert!(matches!(capped, Err(projlat::Error::BasisCap { .. })), "{capped:?}");
    set_basis_cap(DEFAULT_BASIS_CAP);
    let j = common::ideal(&r, &["x^3 - y*z^2", "y^3 - x*z^2", "x^2*y - z^3"]);
    assert!(j.groebner_basis().unwrap().len() > 2);
}
