//! Marcinkiewicz-Zygmund ratio ensembles on a triangle and along a polygon
//! refinement sweep, written as CSV.
//!
//! `cargo run --release --example mz_ensemble`

use mzquad::io::standin_scattered;
use mzquad::mesh::{refine_uniform, triangulate};
use mzquad::mz_verify::{ensemble_oracle, mz_ensemble, reports_to_csv, RuleDescriptor};
use mzquad::repro::table1_triangle;

fn main() -> mzquad::Result<()> {
    let cfg = ensemble_oracle();
    let mut reports = Vec::new();
    for d in [1, 3, 5] {
        let rule = RuleDescriptor::Triangle { triangle: table1_triangle(), degree: d };
        for p in [2.0, f64::INFINITY] {
            reports.push(mz_ensemble(&rule, p, d, 100, 1, &cfg)?);
        }
    }
    let base = triangulate(&standin_scattered())?;
    for level in 0..=3 {
        let rule = RuleDescriptor::polygon(&refine_uniform(&base, level), format!("standin-r{level}"));
        reports.push(mz_ensemble(&rule, f64::INFINITY, 4, 100, 1, &cfg)?);
    }
    print!("{}", reports_to_csv(&reports)?);
    Ok(())
}
