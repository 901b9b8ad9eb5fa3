//! Colorings of simplicial complexes and their characteristic-class splitting
//! certificates in the Stanley–Reisner ring.
//!
//! * [`complex`]: facet-encoded simplicial complexes, parsing, standard families.
//! * [`algebra`]: exact arithmetic in `ℤ[K]`, total Chern and Pontrjagin classes.
//! * [`coloring`]: validity, greedy and exact search, chromatic number.
//! * [`splitting`]: coloring ⇄ splitting-certificate conversion and verification.
//! * [`moment_angle`]: numerical audit of the fiberwise isomorphism over `Z_K`.
//! * [`cli`]: the `djsplit` command-line driver.

pub mod algebra;
pub mod cli;
pub mod coloring;
pub mod complex;
pub mod moment_angle;
pub mod splitting;

pub use algebra::{Monomial, Polynomial, SrElement};
pub use coloring::Coloring;
pub use complex::{Face, SimplicialComplex};
pub use splitting::{Mode, SplittingCertificate};
