//! opforge: an exact symbolic engine for operadic calculus at finite
//! truncation.
//!
//! Everything is computed over ℚ with no floating point: symmetric sequences
//! with signed symmetric-group actions, composition products, operads and
//! cooperads with preset families, Koszul duals, bar and cobar complexes,
//! convolution Lie algebras, Maurer–Cartan correspondences, and deformation
//! complexes of operad maps out of the little-discs homology operads.

pub mod rat;
pub mod matrix;
pub mod chain;
pub mod perm;
pub mod space;
pub mod symseq;
pub mod composite;
pub mod shift;
pub mod lie;
pub mod en;
