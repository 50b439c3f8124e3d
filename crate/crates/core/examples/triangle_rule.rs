//! Domain-point weights on one triangle, their sign pattern, and exactness.
//!
//! `cargo run --example triangle_rule`

use mzquad::geometry::Triangle;
use mzquad::tri_rule::{exactness_check, triangle_weights};

fn main() -> mzquad::Result<()> {
    let t = Triangle::from_coords([[0.0, 0.0], [2.0, 0.5], [0.5, 1.5]])?;
    println!("triangle area {:.4}", t.area());
    for d in 1..=8 {
        let rule = triangle_weights(&t, d)?;
        let min = rule.weights().iter().cloned().fold(f64::INFINITY, f64::min) / t.area();
        println!(
            "d={d:2}  points {:3}  min w/A {:+.4e}  positive {:5}  exactness {:.1e}  cond {:.1e}",
            rule.len(),
            min,
            rule.all_positive(),
            exactness_check(&rule),
            rule.condition()
        );
    }
    let rule = triangle_weights(&t, 2)?;
    println!("\nd=2 nodes and weights:");
    for (p, w) in rule.points().iter().zip(rule.weights()) {
        println!("  ({:.3}, {:.3})  {:+.6}", p.x, p.y, w);
    }
    Ok(())
}
