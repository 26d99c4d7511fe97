//! Symmetry detection for rational canal surfaces.
//!
//! A canal surface is the envelope of a one-parameter family of spheres with
//! centers on a rational spine curve `c(t)` and radii `r(t)`. This crate
//! decides which Euclidean isometries map such a surface onto itself, working
//! in exact rational arithmetic wherever the data allows it:
//!
//! - [`ratpoly`]: rationals, uni/bivariate polynomials, rational functions,
//!   real root isolation.
//! - [`moebius`]: Möbius transformations and the bilinear factors of a
//!   bivariate polynomial.
//! - [`curves`]: rational space curves, curvature and torsion, isometries.
//! - [`canal`]: the radius-condition polynomial and the symmetry search.
//! - [`dupin`]: conic classification and symmetry groups of Dupin cyclides.
//! - [`blend`]: symmetric Bézier spines, radii and blends.
//! - [`mesh`]: floating-point tessellation and OBJ export.

pub mod blend;
pub mod canal;
pub mod curves;
pub mod dupin;
pub mod error;
pub mod group;
pub mod isometry;
pub mod linalg;
pub mod mesh;
pub mod moebius;
pub mod ratpoly;

pub use error::{Error, Result};
pub use ratpoly::{BiPoly, RatFunc, Rat, UniPoly};
