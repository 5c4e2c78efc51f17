//! Gröbner bases for homogeneous ideals and graded submodules of shifted free
//! modules, plus every ideal operation the rest of the crate consumes.

mod engine;
mod ideal;
mod module;

use std::sync::atomic::{AtomicUsize, Ordering};

pub use ideal::HomogeneousIdeal;
pub use module::{FreeSubmodule, GradedVector};

/// Default guard on the number of basis elements a single run may create.
pub const DEFAULT_BASIS_CAP: usize = 10_000;

static BASIS_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_BASIS_CAP);

/// Current basis-size guard. Runs exceeding it fail with
/// [`Error::BasisCap`](crate::Error::BasisCap) instead of truncating.
pub fn basis_cap() -> usize {
    BASIS_CAP.load(Ordering::Relaxed)
}

pub fn set_basis_cap(cap: usize) {
    BASIS_CAP.store(cap.max(1), Ordering::Relaxed);
}
