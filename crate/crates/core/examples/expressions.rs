//! Parsing user integrands, printing them back, and integrating them.
//!
//! `cargo run --example expressions -- "exp(-x^2-y^2)"`

use mzquad::expr::{parse, Integrand};
use mzquad::oracle::{integrate_triangle, OracleConfig};
use mzquad::repro::{fmt_sig5, relative_error, table1_triangle};
use mzquad::tri_rule::triangle_weights;

fn main() -> mzquad::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let sources = if args.is_empty() {
        vec!["x^2*y".to_string(), "exp(-x^2-y^2)".into(), "2^3^2".into(), "-x^2".into(), "sqrt(abs(x-y))".into()]
    } else {
        args
    };
    let t = table1_triangle();
    for src in &sources {
        let e = match parse(src) {
            Ok(e) => e,
            Err(err) => {
                println!("{src:?}: {err}");
                continue;
            }
        };
        let f = Integrand::from_spec(src)?;
        let exact = integrate_triangle(&t, |p| f.at(p), &OracleConfig::with_tolerance(1e-10));
        print!("{src:?} -> {e}  at (0.5, 0.25) = {}", e.eval(0.5, 0.25));
        if let Ok(exact) = exact {
            let errs: Vec<String> = [1, 3, 5]
                .iter()
                .map(|&d| {
                    let q = triangle_weights(&t, d).and_then(|r| r.apply(|p| f.at(p)));
                    q.map(|q| fmt_sig5(relative_error(exact.value, q))).unwrap_or_else(|e| e.to_string())
                })
                .collect();
            print!("  rel. errors d=1,3,5: {}", errs.join(" "));
        } else if let Err(e) = exact {
            print!("  ({e})");
        }
        println!();
    }
    Ok(())
}
