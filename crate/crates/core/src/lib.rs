//! Executable classification machinery for projective schemes over weighted
//! graded polynomial rings: Gröbner bases, finitely presented graded modules,
//! supports on `Proj A`, tensor Serre subcategories as support data, finite
//! spectral models and degree-zero section rings.

pub mod error;
pub mod field;
pub mod finite;
pub mod groebner;
pub mod grmodules;
pub mod poly;
pub mod proj;
pub mod report;
pub mod serre;
pub mod session;
pub mod sheaf;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use groebner::{FreeSubmodule, GradedVector, HomogeneousIdeal};
pub use grmodules::ModulePresentation;
pub use poly::{GradedRing, Monomial, Polynomial};
pub use proj::{ClosedLocus, ThomasonDatum};
pub use report::Report;
pub use serre::SerreSupport;
pub use sheaf::{BasicOpen, SectionElement};
