//! Quadrature on a triangulated polygon using only the mesh vertices.
//!
//! Vertex `j` gets one third of the area of every triangle it belongs to.
//! Summed triangle by triangle this is the degree-1 triangle rule, so the
//! rule is exact for affine functions and converges like `|△|²` for smooth
//! integrands.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::mesh::Mesh;
use crate::sum::KahanSum;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolygonRule {
    #[serde(skip)]
    mesh: Mesh,
    points: Vec<Point2>,
    weights: Vec<f64>,
}

impl PolygonRule {
    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn apply(&self, f: impl Fn(Point2) -> f64) -> Result<f64> {
        apply_polygon_rule(self, f)
    }
}

pub fn polygon_weights(m: &Mesh) -> PolygonRule {
    let mut acc = vec![KahanSum::new(); m.vertices().len()];
    for (k, t) in m.triangles().iter().enumerate() {
        let third = m.triangle(k).area() / 3.0;
        for &v in t {
            acc[v].add(third);
        }
    }
    PolygonRule {
        mesh: m.clone(),
        points: m.vertices().to_vec(),
        weights: acc.iter().map(KahanSum::value).collect(),
    }
}

/// `Σ w_j f(x_j, y_j)`.
pub fn apply_polygon_rule(r: &PolygonRule, f: impl Fn(Point2) -> f64) -> Result<f64> {
    let mut sum = KahanSum::new();
    for (&p, &w) in r.points.iter().zip(&r.weights) {
        let v = f(p);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { point: p });
        }
        sum.add(w * v);
    }
    Ok(sum.value())
}

/// Largest relative error over `1, x, y` against the boundary-formula
/// moments of the polygon. Moments that vanish are compared absolutely,
/// scaled by the area times the domain extent.
pub fn exactness_check_p1(r: &PolygonRule) -> f64 {
    let domain = r.mesh.domain();
    let (m0, mx, my) = domain.moments();
    let (lo, hi) = domain.bbox();
    let scale = m0 * lo.x.abs().max(hi.x.abs()).max(lo.y.abs()).max(hi.y.abs());
    let q = |f: &dyn Fn(Point2) -> f64| apply_polygon_rule(r, f).expect("affine samples are finite");
    let rel = |got: f64, exact: f64, floor: f64| (got - exact).abs() / exact.abs().max(floor);
    rel(q(&|_| 1.0), m0, 0.0)
        .max(rel(q(&|p| p.x), mx, scale * 1e-3))
        .max(rel(q(&|p| p.y), my, scale * 1e-3))
}
