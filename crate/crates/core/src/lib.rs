//! Exact linear algebra for Lefschetz properties of Artinian quotients, with closed forms
//! for ideals generated by powers of linear forms.
//!
//! Layers, bottom up: [`linalg`] (exact ranks), [`poly`] (graded polynomials), [`quotient`]
//! (graded pieces of `S/I`), [`binary`] (two-variable power ideals), [`splitting`]
//! (restriction to a line and WLP prediction) and [`lefschetz`] (direct rank checks).

pub mod binary;
pub mod error;
pub mod lefschetz;
pub mod linalg;
pub mod poly;
pub mod quotient;
pub mod splitting;

pub use binary::{BinaryPowerSpec, Resolution2};
pub use error::{Error, Result};
pub use lefschetz::sampler::SamplerConfig;
pub use lefschetz::{LefschetzReport, LefschetzRow, SlpReport, Verdict};
pub use linalg::{ExactMatrix, Scalar};
pub use poly::{GradedPoly, LinearForm, MonomialBasis};
pub use quotient::ideal::{Generator, IdealSpec};
pub use quotient::{GradedQuotient, HilbertFunction, QuotientBasis};
pub use splitting::{SplittingType, WlpPrediction};
