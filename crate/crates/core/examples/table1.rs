//! Relative errors of the triangle rules for f1, f2, f3 on the right
//! triangle {(0,0), (0,1), (1,0)}.
//!
//! `cargo run --release --example table1`

use mzquad::oracle::OracleConfig;
use mzquad::repro::{fmt_sig5, table1, TABLE1_DEGREES};

fn main() -> mzquad::Result<()> {
    let t = table1(&TABLE1_DEGREES, &OracleConfig::with_tolerance(1e-12))?;
    for r in &t.references {
        println!(
            "reference {} = {:.15e} (estimate {:.1e}{})",
            r.function,
            r.value,
            r.error_estimate,
            if r.converged { "" } else { ", budget reached" }
        );
    }
    println!("\n  d  {:>11} {:>11} {:>11}", "f1", "f2", "f3");
    for row in &t.rows {
        let [a, b, c] = row.rel_err.map(fmt_sig5);
        println!("{:3}  {a:>11} {b:>11} {c:>11}", row.degree);
    }
    Ok(())
}
