//! Exact-arithmetic toolkit for plane line arrangements and reduced plane
//! curves: intersection lattices and their combinatorial invariants, the
//! Hilbert function of the Milnor algebra, minimal degrees of Jacobian
//! syzygies, freeness data, the arrangement spectrum and the combinatorial
//! middle-degree bound `nu'`, together with verdict engines that compare the
//! algebraic and combinatorial sides on concrete arrangements.
//!
//! All linear algebra runs over `Q` or a cyclotomic field `Q(zeta_n)`; there
//! is no floating point anywhere.

pub mod analysis;
pub mod arrangement;
pub mod catalog;
pub mod conjectures;
pub mod error;
pub mod jacobian;
pub mod polyring;
pub mod scalars;
pub mod spectrum;

pub use analysis::{Analysis, AnalysisOptions};
pub use arrangement::{Arrangement, IntersectionPoint, LatticeSummary, TypeTag};
pub use catalog::CatalogSpec;
pub use conjectures::{LatticeCertificate, Status, Verdict};
pub use error::Error;
pub use jacobian::{FreenessClassification, FreenessStatus, JacobianProfile};
pub use scalars::{cyclotomic_context, FieldContext, Int, Rational, Scalar, ScalarMatrix};
pub use spectrum::{Exactness, NuPrimeResult, SpectrumTable};

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
