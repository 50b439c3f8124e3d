//! Error decay of the triangle rules on shrinking equilateral triangles and
//! of the polygon rule under uniform refinement.
//!
//! `cargo run --release --example convergence`

use mzquad::expr::f3;
use mzquad::geometry::{Point2, Triangle};
use mzquad::io::standin_scattered;
use mzquad::mesh::{refine_uniform, triangulate};
use mzquad::oracle::{integrate_polygon, integrate_triangle, OracleConfig};
use mzquad::poly_rule::polygon_weights;
use mzquad::tri_rule::triangle_weights;

fn main() -> mzquad::Result<()> {
    let cfg = OracleConfig::with_tolerance(1e-14);
    println!("triangle rules, f3, side h:");
    for d in 1..=5 {
        let mut prev: Option<f64> = None;
        let mut line = format!("d={d}");
        for k in 0..5 {
            let t = Triangle::equilateral(Point2::new(0.3, 0.2), 0.5f64.powi(k))?;
            let exact = integrate_triangle(&t, |p| f3(p.x, p.y), &cfg)?.value;
            let err = (exact - triangle_weights(&t, d)?.apply(|p| f3(p.x, p.y))?).abs();
            match prev {
                Some(e) => line += &format!("  {err:.2e} ({:.2})", (e / err).log2()),
                None => line += &format!("  {err:.2e}"),
            }
            prev = Some(err);
        }
        println!("{line}");
    }

    println!("\npolygon rule, f3, stand-in polygon:");
    let base = triangulate(&standin_scattered())?;
    let exact = integrate_polygon(&base, |p| f3(p.x, p.y), &OracleConfig::with_tolerance(1e-13))?.value;
    let mut prev: Option<(f64, f64)> = None;
    for level in 0..=5 {
        let m = refine_uniform(&base, level);
        let err = (exact - polygon_weights(&m).apply(|p| f3(p.x, p.y))?).abs();
        let order = prev.map(|(e, h)| (e / err).ln() / (h / m.size()).ln());
        println!(
            "level {level}: {:6} triangles  |mesh| {:.4}  error {err:.3e}{}",
            m.count(),
            m.size(),
            order.map(|o| format!("  order {o:.2}")).unwrap_or_default()
        );
        prev = Some((err, m.size()));
    }
    Ok(())
}
