//! The two benchmark tables: relative quadrature errors for `f1`, `f2`,
//! `f3` on the right triangle `{(0,0), (0,1), (1,0)}` for odd degrees, and
//! on the stand-in polygon with and without interior points.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{builtin, Integrand};
use crate::geometry::{Point2, Triangle};
use crate::io::standin_scattered;
use crate::mesh::{triangulate, ScatteredSet};
use crate::oracle::{integrate_triangles, OracleConfig};
use crate::poly_rule::polygon_weights;
use crate::tri_rule::triangle_weights;

pub const TABLE1_DEGREES: [usize; 6] = [1, 3, 5, 7, 9, 11];
pub const TABLE_FUNCTIONS: [&str; 3] = ["f1", "f2", "f3"];

pub fn table1_triangle() -> Triangle {
    Triangle::from_coords([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).expect("fixed triangle")
}

/// `|exact - approx| / |exact|`.
pub fn relative_error(exact: f64, approx: f64) -> f64 {
    (exact - approx).abs() / exact.abs()
}

/// Five significant digits with a signed two-digit exponent, `1.9108e-02`.
pub fn fmt_sig5(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{v:.4e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

/// An oracle value used as the exact integral.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reference {
    pub function: String,
    pub value: f64,
    pub error_estimate: f64,
    /// False when the element budget ran out first; the value is then the
    /// best estimate available.
    pub converged: bool,
}

pub fn reference_integral(tris: &[Triangle], f: &Integrand, cfg: &OracleConfig) -> Result<Reference> {
    let (value, error_estimate, converged) = match integrate_triangles(tris, |p: Point2| f.at(p), cfg) {
        Ok(e) => (e.value, e.error_estimate, true),
        Err(Error::OracleBudgetExceeded { value, error_estimate }) => (value, error_estimate, false),
        Err(e) => return Err(e),
    };
    Ok(Reference {
        function: f.name().to_owned(),
        value,
        error_estimate,
        converged,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub degree: usize,
    pub rel_err: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1 {
    pub references: Vec<Reference>,
    pub rows: Vec<Table1Row>,
}

pub fn table1(degrees: &[usize], cfg: &OracleConfig) -> Result<Table1> {
    let t = table1_triangle();
    let fs: Vec<Integrand> = TABLE_FUNCTIONS.iter().map(|n| builtin(n).expect("registered")).collect();
    let references = fs
        .iter()
        .map(|f| reference_integral(&[t], f, cfg))
        .collect::<Result<Vec<_>>>()?;
    let rows = degrees
        .iter()
        .map(|&d| {
            let rule = triangle_weights(&t, d)?;
            let mut rel_err = [0.0; 3];
            for (k, f) in fs.iter().enumerate() {
                rel_err[k] = relative_error(references[k].value, rule.apply(|p| f.at(p))?);
            }
            Ok(Table1Row { degree: d, rel_err })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table1 { references, rows })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table2Row {
    pub configuration: String,
    pub points: usize,
    pub triangles: usize,
    pub rel_err: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2 {
    pub references: Vec<Reference>,
    pub rows: Vec<Table2Row>,
}

/// Rows for `boundary` (polygon vertices only) and `boundary+interior`.
pub fn table2_for(s: &ScatteredSet, cfg: &OracleConfig) -> Result<Table2> {
    let configs = [
        ("boundary", ScatteredSet::boundary_only(s.polygon().clone())),
        ("boundary+interior", s.clone()),
    ];
    let meshes = configs
        .iter()
        .map(|(_, c)| triangulate(c))
        .collect::<Result<Vec<_>>>()?;
    let fs: Vec<Integrand> = TABLE_FUNCTIONS.iter().map(|n| builtin(n).expect("registered")).collect();
    let tris: Vec<Triangle> = meshes[0].iter_triangles().collect();
    let references = fs
        .iter()
        .map(|f| reference_integral(&tris, f, cfg))
        .collect::<Result<Vec<_>>>()?;
    let rows = configs
        .iter()
        .zip(&meshes)
        .map(|((name, set), m)| {
            let rule = polygon_weights(m);
            let mut rel_err = [0.0; 3];
            for (k, f) in fs.iter().enumerate() {
                rel_err[k] = relative_error(references[k].value, rule.apply(|p| f.at(p))?);
            }
            Ok(Table2Row {
                configuration: (*name).to_owned(),
                points: set.len(),
                triangles: m.count(),
                rel_err,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table2 { references, rows })
}

pub fn table2(cfg: &OracleConfig) -> Result<Table2> {
    table2_for(&standin_scattered(), cfg)
}

pub fn table1_csv(t: &Table1) -> String {
    let mut s = String::from("d,f1,f2,f3\n");
    for r in &t.rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            r.degree,
            fmt_sig5(r.rel_err[0]),
            fmt_sig5(r.rel_err[1]),
            fmt_sig5(r.rel_err[2])
        ));
    }
    s
}

pub fn table2_csv(t: &Table2) -> String {
    let mut s = String::from("configuration,points,triangles,f1,f2,f3\n");
    for r in &t.rows {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.configuration,
            r.points,
            r.triangles,
            fmt_sig5(r.rel_err[0]),
            fmt_sig5(r.rel_err[1]),
            fmt_sig5(r.rel_err[2])
        ));
    }
    s
}

pub fn references_csv(refs: &[Reference]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in refs {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_sig5(3.0 / 157.0), "1.9108e-02");
        assert_eq!(fmt_sig5(7.2652646e-8), "7.2653e-08");
        assert_eq!(fmt_sig5(12345.678), "1.2346e+04");
        assert_eq!(fmt_sig5(0.0), "0.0000e+00");
    }

    #[test]
    fn first_row_of_table_one() {
        let t = table1(&[1], &OracleConfig::with_tolerance(1e-8)).unwrap();
        assert_eq!(fmt_sig5(t.rows[0].rel_err[0]), "1.9108e-02");
        assert!(t.references[0].converged && t.references[2].converged);
        assert!(table1_csv(&t).starts_with("d,f1,f2,f3\n1,1.9108e-02,"));
    }
}
