//! Constrained Delaunay triangulation of a non-convex polygon with interior
//! points, then uniform refinement.
//!
//! `cargo run --example triangulation`

use mzquad::geometry::{Point2, Polygon};
use mzquad::mesh::{refine_uniform, triangulate, ScatteredSet};

fn main() -> mzquad::Result<()> {
    let polygon = Polygon::from_coords(&[[0.0, 0.0], [3.0, 0.0], [3.0, 1.0], [1.0, 1.0], [1.0, 3.0], [0.0, 3.0]])?;
    let interior = vec![Point2::new(0.5, 0.5), Point2::new(2.0, 0.5), Point2::new(0.5, 2.0)];
    let s = ScatteredSet::new(polygon, interior)?;
    let mesh = triangulate(&s)?;
    for level in 0..4 {
        let m = refine_uniform(&mesh, level);
        let metrics = m.metrics();
        println!(
            "level {level}: {:5} vertices {:5} triangles  |mesh| {:.4}  gamma {:.3}  conforming {}",
            m.vertices().len(),
            metrics.count,
            metrics.size,
            metrics.gamma,
            m.check_conforming().is_ok()
        );
    }
    println!("\nlevel 0 triangles (vertex indices, polygon first):");
    for t in mesh.triangles() {
        println!("  {t:?}");
    }
    Ok(())
}
