//! Quadrature rules built from Bernstein–Bézier domain points on triangles
//! and from scattered points on simple polygons, together with the tooling
//! needed to check them: an adaptive reference integrator, a triangulator,
//! and Marcinkiewicz–Zygmund ratio ensembles.
//!
//! ```
//! use mzquad::geometry::Triangle;
//! use mzquad::tri_rule::triangle_weights;
//!
//! let t = Triangle::from_coords([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
//! let rule = triangle_weights(&t, 3).unwrap();
//! assert!(rule.all_positive());
//! let q = rule.apply(|p| p.x * p.x * p.y).unwrap();
//! assert!((q - 1.0 / 60.0).abs() < 1e-14);
//! ```

pub mod bb_basis;
pub mod commands;
mod delaunay;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod mesh;
pub mod mz_verify;
pub mod oracle;
pub mod poly_rule;
pub mod repro;
pub mod sum;
pub mod tri_rule;

pub use error::{Error, Result};
