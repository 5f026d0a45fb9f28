//! Construction and verification of multi-resolution-analysis filter
//! sequences from square-integrable seed functions.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`seed`] — seed functions h(x) / ĥ(p), built-in families or tabulated.
//! 2. [`overlap`] — lattice overlap coefficients, the spectral series
//!    S(0,p) with a positivity certificate, Poisson-summation cross-checks
//!    and summation rules.
//! 3. [`synthesis`] — synthesis weights (1D and 2D), the orthonormalized
//!    function H(P), and the filter coefficients H_n.
//! 4. [`relevance`] — verification that {H_n} is a relevant sequence:
//!    orthonormality of even translates, quadratic tail decay, sum √2, and
//!    a non-vanishing symbol.
//!
//! [`seqtools`] supplies the sequence algebra (convolution, ℓ_p norms,
//! decay classification) used along the way, and [`catalog`] packages the
//! built-in worked examples with their expected outcomes.

pub mod catalog;
pub mod error;
pub mod jsonout;
pub mod lattice;
pub mod overlap;
pub mod quad;
pub mod relevance;
pub mod report;
pub mod seed;
pub mod seqtools;
pub mod synthesis;

pub use error::{Error, Result};
pub use lattice::{LatticeConfig, LATTICE_A};
pub use seed::{SeedFamily, SeedFunction};
