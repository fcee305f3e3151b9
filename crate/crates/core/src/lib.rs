//! Exact computation of the cohomology of decorated graph complexes.
//!
//! The library builds finite-dimensional trigraded chain complexes spanned
//! by isomorphism classes of decorated, hairy or two-colored graphs,
//! computes their cohomology with exact rational arithmetic, decomposes the
//! result into irreducible GL_g representations, and cross-checks the
//! vanishing, concentration, stabilization and quadratic-presentation
//! statements the complexes are known to satisfy.

pub mod error;
pub mod exactla;
pub mod graphs;

pub mod diff;
pub mod osp;

pub use error::GcxError;
