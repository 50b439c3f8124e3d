//! Quadrature on a single triangle at the domain points of degree `d`.
//!
//! The weight of domain point `ξ_ijk` is `A_T / C(d+2,2)` times the `ijk`-th
//! column sum of the inverse collocation matrix. Column sums of `B^{-1}` are
//! the solution `s` of `Bᵀ s = 1`, so the inverse is never formed. The rule
//! integrates every polynomial of total degree `≤ d` exactly.

use std::sync::OnceLock;

use serde::Serialize;

use crate::bb_basis::{self, binomial, eval_basis_bary, BForm, IndexOrder, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::geometry::{Point2, Triangle};
use crate::linalg::{residual, DenseMatrix, Lu};
use crate::sum::KahanSum;

/// Condition estimates above this are treated as singular.
pub const MAX_CONDITION: f64 = 1e13;
/// Maximum accepted residual of the weight solve.
pub const SOLVE_RESIDUAL_TOL: f64 = 1e-10;

/// `B[(ijk, lmn)] = B_lmn(ξ_ijk)`, rows and columns in [`IndexOrder`].
///
/// The barycentric coordinates of `ξ_ijk` are `(i, j, k)/d` on every
/// triangle, so the entries depend on `d` only.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationMatrix {
    degree: usize,
    entries: DenseMatrix,
}

impl CollocationMatrix {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.size()
    }
}

pub fn collocation_matrix(_t: &Triangle, d: usize) -> Result<CollocationMatrix> {
    build_collocation(d)
}

fn build_collocation(d: usize) -> Result<CollocationMatrix> {
    let order = IndexOrder::new(d)?;
    let idx = order.as_slice();
    let df = d as f64;
    let entries = DenseMatrix::from_fn(idx.len(), |r, c| {
        let row = idx[r];
        let bary = [row.i as f64 / df, row.j as f64 / df, row.k as f64 / df];
        eval_basis_bary(idx[c], bary)
    });
    Ok(CollocationMatrix { degree: d, entries })
}

/// The degree-`d` rule expressed on barycentric coordinates with weights
/// normalised by the triangle area. Shared by every triangle.
#[derive(Debug, Clone)]
pub(crate) struct ReferenceRule {
    pub bary: Vec<[f64; 3]>,
    /// `w_ijk / A_T`
    pub weights: Vec<f64>,
    pub condition: f64,
    pub residual: f64,
}

pub(crate) fn reference_rule(d: usize) -> Result<&'static ReferenceRule> {
    static CACHE: OnceLock<Vec<OnceLock<Result<ReferenceRule>>>> = OnceLock::new();
    bb_basis::check_degree(d)?;
    let cache = CACHE.get_or_init(|| (0..=MAX_DEGREE).map(|_| OnceLock::new()).collect());
    cache[d].get_or_init(|| solve_reference_rule(d)).as_ref().map_err(Clone::clone)
}

fn solve_reference_rule(d: usize) -> Result<ReferenceRule> {
    let b = build_collocation(d)?;
    let n = b.size();
    let lu = Lu::factor(b.entries()).map_err(|_| Error::IllConditionedCollocation {
        condition: f64::INFINITY,
    })?;
    let condition = lu.condition_1();
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::IllConditionedCollocation { condition });
    }
    let ones = vec![1.0; n];
    let sigma = lu.solve_transpose(&ones);
    let res = residual(&b.entries().transpose(), &sigma, &ones)
        .iter()
        .fold(0.0f64, |m, r| m.max(r.abs()));
    if res > SOLVE_RESIDUAL_TOL {
        return Err(Error::IllConditionedCollocation { condition });
    }
    let scale = 1.0 / binomial(d + 2, 2);
    let df = d as f64;
    let order = IndexOrder::new(d)?;
    Ok(ReferenceRule {
        bary: order
            .iter()
            .map(|m| [m.i as f64 / df, m.j as f64 / df, m.k as f64 / df])
            .collect(),
        weights: sigma.iter().map(|s| s * scale).collect(),
        condition,
        residual: res,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleRule {
    #[serde(skip)]
    triangle: Triangle,
    degree: usize,
    points: Vec<Point2>,
    weights: Vec<f64>,
    #[serde(skip)]
    all_positive: bool,
    #[serde(skip)]
    condition: f64,
    #[serde(skip)]
    solve_residual: f64,
}

impl TriangleRule {
    pub fn triangle(&self) -> &Triangle {
        &self.triangle
    }

    pub fn degree(&self) -> usize {
        self.degree
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

    pub fn all_positive(&self) -> bool {
        self.all_positive
    }

    /// 1-norm condition estimate of the collocation matrix.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// Max-norm residual of the solve `Bᵀ s = 1`.
    pub fn solve_residual(&self) -> f64 {
        self.solve_residual
    }

    /// Column sums of `B^{-1}`, recovered as `w · C(d+2,2) / A_T`.
    pub fn column_sums(&self) -> Vec<f64> {
        let s = binomial(self.degree + 2, 2) / self.triangle.area();
        self.weights.iter().map(|w| w * s).collect()
    }

    pub fn apply(&self, f: impl Fn(Point2) -> f64) -> Result<f64> {
        apply_rule(self, f)
    }
}

pub fn triangle_weights(t: &Triangle, d: usize) -> Result<TriangleRule> {
    let reference = reference_rule(d)?;
    let area = t.area();
    let weights: Vec<f64> = reference.weights.iter().map(|w| w * area).collect();
    Ok(TriangleRule {
        triangle: *t,
        degree: d,
        points: reference.bary.iter().map(|&b| t.point_at(b)).collect(),
        all_positive: weights.iter().all(|&w| w > 0.0),
        weights,
        condition: reference.condition,
        solve_residual: reference.residual,
    })
}

/// `Σ w_ijk f(ξ_ijk)`.
pub fn apply_rule(rule: &TriangleRule, f: impl Fn(Point2) -> f64) -> Result<f64> {
    let mut sum = KahanSum::new();
    for (&p, &w) in rule.points.iter().zip(&rule.weights) {
        let v = f(p);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { point: p });
        }
        sum.add(w * v);
    }
    Ok(sum.value())
}

/// Degree-`d` polynomial interpolant of `values` (given at the domain
/// points, in index order), in B-form.
pub fn interpolate(t: &Triangle, d: usize, values: &[f64]) -> Result<BForm> {
    let b = build_collocation(d)?;
    if values.len() != b.size() {
        return Err(Error::LengthMismatch {
            expected: b.size(),
            got: values.len(),
        });
    }
    let lu = Lu::factor(b.entries()).map_err(|_| Error::IllConditionedCollocation {
        condition: f64::INFINITY,
    })?;
    let coeffs = lu.solve(values);
    BForm::new(*t, d, coeffs)
}

/// `∫_T x^a y^b`, by mapping to the reference triangle and expanding the
/// monomial; reference integrals are `m! n! / (m+n+2)!`.
pub fn monomial_integral(t: &Triangle, a: u32, b: u32) -> f64 {
    let [v1, v2, v3] = t.vertices();
    // x = x3 + s (x1 - x3) + u (x2 - x3), likewise for y
    let xs = [v3.x, v1.x - v3.x, v2.x - v3.x];
    let ys = [v3.y, v1.y - v3.y, v2.y - v3.y];
    let px = trinomial_powers(xs, a);
    let py = trinomial_powers(ys, b);
    let mut total = KahanSum::new();
    for &(ms, mu, cx) in &px {
        for &(ns, nu, cy) in &py {
            total.add(cx * cy * reference_monomial(ms + ns, mu + nu));
        }
    }
    2.0 * t.area() * total.value()
}

// Terms (power of s, power of u, coefficient) of (c0 + c1 s + c2 u)^n.
fn trinomial_powers(c: [f64; 3], n: u32) -> Vec<(u32, u32, f64)> {
    let mut out = Vec::new();
    for ps in 0..=n {
        for pu in 0..=(n - ps) {
            let p0 = n - ps - pu;
            let coeff = factorial(n) / (factorial(p0) * factorial(ps) * factorial(pu));
            out.push((ps, pu, coeff * c[0].powi(p0 as i32) * c[1].powi(ps as i32) * c[2].powi(pu as i32)));
        }
    }
    out
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn reference_monomial(m: u32, n: u32) -> f64 {
    factorial(m) * factorial(n) / factorial(m + n + 2)
}

/// Error of the rule on `x^a y^b`, scaled by `A_T · max |f|` over the
/// rule points.
pub fn monomial_error(rule: &TriangleRule, a: u32, b: u32) -> f64 {
    let f = |p: Point2| p.x.powi(a as i32) * p.y.powi(b as i32);
    let exact = monomial_integral(&rule.triangle, a, b);
    let approx = apply_rule(rule, f).unwrap_or(f64::NAN);
    let scale = rule.triangle.area() * rule.points.iter().map(|&p| f(p).abs()).fold(0.0, f64::max);
    (approx - exact).abs() / scale.max(f64::MIN_POSITIVE)
}

/// Worst scaled error over all monomials `x^a y^b` with `a + b ≤ d`.
pub fn exactness_check(rule: &TriangleRule) -> f64 {
    let d = rule.degree as u32;
    (0..=d)
        .flat_map(|a| (0..=(d - a)).map(move |b| (a, b)))
        .map(|(a, b)| monomial_error(rule, a, b))
        .fold(0.0, f64::max)
}
