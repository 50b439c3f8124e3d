//! Adaptive reference integration: smooth, kinked, and L^p / sup norms.
//!
//! `cargo run --release --example oracle`

use mzquad::expr::{f1, f2, f3};
use mzquad::oracle::{integrate_triangle, lp_norm, OracleConfig};
use mzquad::repro::table1_triangle;
use mzquad::Error;

fn main() -> mzquad::Result<()> {
    let t = table1_triangle();
    for (name, f) in [("f1", f1 as fn(f64, f64) -> f64), ("f3", f3), ("f2", f2)] {
        for tol in [1e-6, 1e-9, 1e-12] {
            let cfg = OracleConfig::with_tolerance(tol);
            match integrate_triangle(&t, |p| f(p.x, p.y), &cfg) {
                Ok(e) => println!("{name} tol {tol:.0e}: {:.15e} ± {:.1e} ({} elements)", e.value, e.error_estimate, e.elements),
                Err(Error::OracleBudgetExceeded { value, error_estimate }) => {
                    println!("{name} tol {tol:.0e}: {value:.15e} ± {error_estimate:.1e} (budget reached)")
                }
                Err(e) => return Err(e),
            }
        }
    }
    let cfg = OracleConfig::default();
    for p in [1.0, 2.0, 4.0, f64::INFINITY] {
        println!("||f3||_{p} = {:.12}", lp_norm(&t, |q| f3(q.x, q.y), p, &cfg)?);
    }
    Ok(())
}
