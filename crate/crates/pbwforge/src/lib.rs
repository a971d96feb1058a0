//! Exact computer algebra for skew PBW extensions over finitely presented
//! coefficient algebras.
//!
//! The crate builds rings of the shape `A = σ(R)⟨x_1,…,x_n⟩`: a coefficient
//! algebra `R` presented by an oriented, confluence-checked rewriting system,
//! extended by variables `x_i` that commute past coefficients through
//! endomorphisms `σ_i` and twisted derivations `δ_i`, with cross relations
//! `x_j x_i = d_ij x_i x_j + lower order`. On top of the normal-form
//! arithmetic it provides:
//!
//! - the total-degree filtration of such an extension and the verdict
//!   machinery deciding whether the extension is σ-filtered
//!   ([`skewext::SigmaFilteredReport`]),
//! - homogenization to a graded skew PBW extension over the homogenized
//!   coefficient algebra, plus the two specializations that recover the
//!   original algebra and its associated graded algebra ([`homog`]),
//! - exact graded dimension tables (Hilbert functions), filtration
//!   dimensions, the Rees/homogenization comparison, and regularity evidence
//!   for the homogenizing variable ([`graded`]),
//! - a line-oriented presentation DSL with located diagnostics ([`dsl`]), a
//!   built-in catalog of classical examples ([`catalog`]), and a JSON report
//!   driver ([`report`]) behind the `pbwforge` command-line tool.
//!
//! All arithmetic is exact over the rationals; there is no floating point in
//! the core. Every value is immutable after construction, so elements and
//! presentations can be shared freely across threads.
//!
//! # Example
//!
//! ```
//! use pbwforge::{catalog, dsl, graded, homog};
//!
//! // x t = t x + 1 over K[t]
//! let weyl = catalog::load("weyl-1")?.extension.unwrap();
//! assert!(weyl.check_sigma_filtered().verdict);
//!
//! let f = dsl::evaluate_element(&weyl, "x*t^2").unwrap();
//! assert_eq!(weyl.display(&f).to_string(), "t^2*x + 2*t");
//! assert_eq!(weyl.tdeg(&f)?, 3);
//!
//! // homogenize, then count dimensions of the graded pieces
//! let h = homog::homogenize_extension(&weyl)?;
//! let dims = graded::hilbert_extension(&h, 4)?;
//! assert_eq!(dims.dims(), &[1, 3, 6, 10, 15]);
//! # Ok::<(), pbwforge::Error>(())
//! ```

pub mod catalog;
pub mod coeffring;
pub mod dsl;
pub mod freealg;
pub mod graded;
pub mod homog;
pub mod report;
pub mod scalar;
pub mod skewext;

pub use coeffring::{DerivSpec, EndoSpec, RElement, RingPresentation};
pub use freealg::{Alphabet, FreePoly, GenId, Word};
pub use homog::{GradedExtensionPresentation, GradedPresentation};
pub use scalar::Scalar;
pub use skewext::{AElement, ExtensionPresentation, Monomial};

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operands live over different generator alphabets.
    #[error("operands are over different alphabets")]
    AlphabetMismatch,

    /// A degree query was made on the zero element.
    #[error("the zero element has no degree")]
    ZeroDegree,

    /// A structural invariant of a presentation or element was violated.
    #[error("{0}")]
    Structural(String),

    /// A rewriting rule violates orientation or degree constraints.
    #[error("invalid rule `{rule}`: {reason}")]
    InvalidRule { rule: String, reason: String },

    /// The rewriting system has an unresolved overlap ambiguity.
    #[error("rewriting system is not confluent: {0}")]
    NotConfluent(String),

    /// Generator images do not extend to a well-defined endomorphism.
    #[error("endomorphism images do not annihilate the defining relations: {0}")]
    IllFormedEndo(String),

    /// Generator images do not extend to a well-defined twisted derivation.
    #[error("derivation images do not annihilate the defining relations: {0}")]
    IllFormedDeriv(String),

    /// Supplied inverse images do not invert the endomorphism.
    #[error("inverse images do not invert the endomorphism: {0}")]
    BadInverse(String),

    /// An operation required a σ-filtered extension.
    #[error("extension is not σ-filtered: {0}")]
    NotSigmaFiltered(String),

    /// An operation required verified bijectivity data.
    #[error("extension is not verified bijective: {0}")]
    NotBijective(String),

    /// An element lies outside the requested filtration level.
    #[error("element of total degree {found} is not in filtration level {level}")]
    NotInFiltration { level: usize, found: usize },

    /// A graded presentation was expected but a rule is inhomogeneous.
    #[error("rule `{0}` is not degree-homogeneous")]
    NotHomogeneous(String),

    /// Unknown catalog entry.
    #[error("unknown catalog entry `{name}`; available: {available}")]
    UnknownEntry { name: String, available: String },

    /// The DSL input failed to parse or validate.
    #[error("{}", dsl::render_diagnostics(.0))]
    Parse(Vec<dsl::Diagnostic>),
}
