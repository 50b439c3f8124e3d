//! Scattered-point quadrature on the bundled stand-in polygon, with and
//! without the three interior points.
//!
//! `cargo run --release --example polygon_quadrature`

use mzquad::oracle::OracleConfig;
use mzquad::poly_rule::{exactness_check_p1, polygon_weights};
use mzquad::repro::{fmt_sig5, table2};
use mzquad::io::standin_scattered;
use mzquad::mesh::triangulate;

fn main() -> mzquad::Result<()> {
    let s = standin_scattered();
    let mesh = triangulate(&s)?;
    let rule = polygon_weights(&mesh);
    let m = mesh.metrics();
    println!(
        "{} points, {} triangles, |mesh| = {:.3}, gamma = {:.2}, area = {:.4}",
        rule.len(),
        m.count,
        m.size,
        m.gamma,
        mesh.total_area()
    );
    println!("P1 exactness {:.1e}", exactness_check_p1(&rule));
    for (p, w) in rule.points().iter().zip(rule.weights()).skip(s.polygon().len()) {
        println!("interior point ({:.2}, {:.2}) weight {:.4}", p.x, p.y, w);
    }

    let t = table2(&OracleConfig::with_tolerance(1e-12))?;
    println!("\n{:<20} {:>6} {:>9} {:>11} {:>11} {:>11}", "configuration", "points", "triangles", "f1", "f2", "f3");
    for r in &t.rows {
        let [a, b, c] = r.rel_err.map(fmt_sig5);
        println!("{:<20} {:>6} {:>9} {a:>11} {b:>11} {c:>11}", r.configuration, r.points, r.triangles);
    }
    Ok(())
}
