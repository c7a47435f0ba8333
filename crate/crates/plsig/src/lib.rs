//! Exact computation with piecewise linear paths and surfaces over the rationals.
//!
//! A piecewise linear path is a word of edge vectors; a piecewise linear
//! surface is a word of *kites* (a tail path together with a planar loop).
//! This crate computes their signatures — the path signature as a truncated
//! tensor series, the surface signature as a pair (boundary path signature,
//! closed polynomial 2-current) — entirely in exact rational arithmetic, and
//! decides thin homotopy equivalence of surfaces exactly via compatible
//! triangulation and chain matching.
//!
//! The main entry points are:
//!
//! * [`plpath::PlWord`] — paths as words of vectors, with confluent reduction
//!   to the unique minimal representative,
//! * [`tensor::TruncatedTensor`] and [`tensor::path_signature`],
//! * [`plsurface::KiteWord`] and [`plsurface::surface_signature`],
//! * [`triangulate::compatible_triangulation`] — the common-refinement
//!   machinery for simplicial complexes in `V`,
//! * [`decide::thin_equiv`] / [`decide::is_null`] — the exact decision
//!   procedure, with machine-checkable reports.
//!
//! Everything is immutable and pure; values may be shared freely across
//! threads. See the crate examples for runnable walkthroughs of each
//! capability.

pub mod currents;
pub mod decide;
pub mod doc;
pub mod geom;
pub mod linalg;
pub mod plpath;
pub mod plsurface;
pub mod rat;
pub mod selfcheck;
pub mod tensor;
pub mod triangulate;
pub mod xlie;

pub use geom::{AffineLine, AffinePlane, Triangle};
pub use linalg::RatVec;
pub use plpath::PlWord;
pub use plsurface::{Kite, KiteWord, SurfaceSignature};
pub use rat::Rat;

use std::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different ambient dimensions or have inconsistent shapes.
    DimMismatch { expected: usize, found: usize },
    /// A triangle whose edge vectors are linearly dependent where a
    /// nondegenerate one is required.
    DegenerateTriangle,
    /// A word with nonzero endpoint where a loop is required.
    NotALoop,
    /// A loop whose span exceeds dimension two where a planar loop is required.
    NotPlanar,
    /// Tensor inversion or logarithm applied to a series with the wrong
    /// constant term.
    BadConstantTerm,
    /// Basis indices violating the required ordering constraint.
    IndexOrder(String),
    /// Malformed input document or rational literal.
    Parse(String),
    /// Anything else the caller handed us that cannot be processed.
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::DegenerateTriangle => write!(f, "degenerate triangle"),
            Error::NotALoop => write!(f, "word is not a loop (nonzero endpoint)"),
            Error::NotPlanar => write!(f, "loop is not planar (span dimension > 2)"),
            Error::BadConstantTerm => write!(f, "series has the wrong constant term"),
            Error::IndexOrder(s) => write!(f, "index ordering violated: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
