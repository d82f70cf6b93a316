//! Exact derivations and biderivations of finite-dimensional algebras over the
//! rationals, the Lie brackets on right and left biderivations, and suites that
//! check the identities relating them.

pub mod algebra;
pub mod biderivations;
pub mod bilinear;
pub mod brackets;
pub mod derivations;
pub mod error;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod sampling;
pub mod scalar_class;
pub mod suite;

pub use algebra::{Algebra, Element, Identity, IdentityFailure, Kind, KindReport, BUILTIN_CATALOG};
pub use bilinear::BilinearTensor;
pub use brackets::{lhd, rhd, PolyLeftMap, PolyRightMap, Side};
pub use error::{Error, Result};
pub use linalg::{Rational, RationalMatrix, SubspaceBasis};
pub use poly::{MultiIndex, ScalarPoly};
pub use report::{CheckOutcome, Status};
pub use scalar_class::ScalarTimesDerivation;
