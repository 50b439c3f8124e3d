//! Reference integration by adaptive quartering.
//!
//! Every element carries the base-rule estimate on itself and on its four
//! children; the difference is its error indicator. Elements are split in
//! order of decreasing indicator until the summed indicators drop below the
//! requested tolerance or the budget runs out. The final value is summed in
//! element-slot order with compensation, so it does not depend on anything
//! but the inputs.
//!
//! Sup-norms are estimated by sampling instead (a barycentric lattice on
//! each triangle followed by two rounds of local zooming around the best
//! samples). The sampled maximum never exceeds the true one.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Point2, Triangle};
use crate::mesh::Mesh;
use crate::sum::{compensated_sum, KahanSum};
use crate::tri_rule::reference_rule;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Target relative error.
    pub tolerance: f64,
    /// Deepest quartering level of any element.
    pub max_subdivisions: u32,
    /// Degree of the base rule, one of 1, 3, 5.
    pub base_degree: usize,
    /// Maximum number of live elements.
    pub max_elements: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_subdivisions: 22,
            base_degree: 5,
            max_elements: 1_000_000,
        }
    }
}

impl OracleConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidArgument(format!("oracle tolerance must be positive, got {}", self.tolerance)));
        }
        if ![1, 3, 5].contains(&self.base_degree) {
            return Err(Error::InvalidArgument(format!(
                "oracle base degree must be 1, 3 or 5, got {}",
                self.base_degree
            )));
        }
        if self.max_elements == 0 {
            return Err(Error::InvalidArgument("oracle element budget must be positive".into()));
        }
        Ok(())
    }
}

/// Result of a converged adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error_estimate: f64,
    /// Live elements at termination.
    pub elements: usize,
}

struct BaseRule {
    bary: &'static [[f64; 3]],
    weights: &'static [f64],
}

impl BaseRule {
    fn new(degree: usize) -> Result<Self> {
        let r = reference_rule(degree)?;
        Ok(Self {
            bary: &r.bary,
            weights: &r.weights,
        })
    }

    fn apply(&self, t: &Triangle, f: &impl Fn(Point2) -> f64) -> Result<f64> {
        let mut s = KahanSum::new();
        for (b, w) in self.bary.iter().zip(self.weights) {
            let p = t.point_at(*b);
            let v = f(p);
            if !v.is_finite() {
                return Err(Error::NonFiniteSample { point: p });
            }
            s.add(w * v);
        }
        Ok(s.value() * t.area())
    }
}

struct Element {
    tri: Triangle,
    children: [f64; 4],
    fine: f64,
    error: f64,
    depth: u32,
}

impl Element {
    fn new(tri: Triangle, coarse: f64, depth: u32, rule: &BaseRule, f: &impl Fn(Point2) -> f64) -> Result<Self> {
        let kids = tri.quarter();
        let mut children = [0.0; 4];
        for (c, k) in children.iter_mut().zip(&kids) {
            *c = rule.apply(k, f)?;
        }
        let fine = compensated_sum(children);
        Ok(Self {
            tri,
            children,
            fine,
            error: (coarse - fine).abs(),
            depth,
        })
    }
}

#[derive(PartialEq)]
struct Ranked {
    error: f64,
    created: u64,
    slot: usize,
}

impl Eq for Ranked {}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.created.cmp(&self.created))
    }
}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Adaptive integral over the union of `tris` with one shared budget.
pub fn integrate_triangles(tris: &[Triangle], f: impl Fn(Point2) -> f64, cfg: &OracleConfig) -> Result<Estimate> {
    cfg.validate()?;
    let rule = BaseRule::new(cfg.base_degree)?;
    let mut elements: Vec<Element> = Vec::with_capacity(tris.len());
    let mut heap = BinaryHeap::new();
    let mut created = 0u64;
    for t in tris {
        let coarse = rule.apply(t, &f)?;
        let e = Element::new(*t, coarse, 0, &rule, &f)?;
        heap.push(Ranked {
            error: e.error,
            created,
            slot: elements.len(),
        });
        created += 1;
        elements.push(e);
    }

    let totals = |els: &[Element]| {
        let value = compensated_sum(els.iter().map(|e| e.fine));
        let magnitude = compensated_sum(els.iter().map(|e| e.fine.abs()));
        let error = compensated_sum(els.iter().map(|e| e.error));
        (value, magnitude, error)
    };
    let (mut value, mut magnitude, mut error) = totals(&elements);
    loop {
        if error <= cfg.tolerance * value.abs().max(magnitude * f64::EPSILON.sqrt()) || error == 0.0 {
            // running sums drift; confirm with a clean pass
            let (v, m, e) = totals(&elements);
            (value, magnitude, error) = (v, m, e);
            if e <= cfg.tolerance * v.abs().max(m * f64::EPSILON.sqrt()) || e == 0.0 {
                return Ok(Estimate {
                    value: v,
                    error_estimate: e,
                    elements: elements.len(),
                });
            }
        }
        let Some(top) = heap.pop() else {
            break;
        };
        if elements.len() + 3 > cfg.max_elements {
            break;
        }
        let parent = &elements[top.slot];
        if parent.depth >= cfg.max_subdivisions {
            // frozen at the depth limit: stays in the sum, never split
            continue;
        }
        let (kids, coarse, depth) = (parent.tri.quarter(), parent.children, parent.depth + 1);
        value -= parent.fine;
        magnitude -= parent.fine.abs();
        error -= parent.error;
        for (i, k) in kids.iter().enumerate() {
            let e = Element::new(*k, coarse[i], depth, &rule, &f)?;
            value += e.fine;
            magnitude += e.fine.abs();
            error += e.error;
            // the first child reuses the parent's slot
            let slot = if i == 0 {
                elements[top.slot] = e;
                top.slot
            } else {
                elements.push(e);
                elements.len() - 1
            };
            heap.push(Ranked {
                error: elements[slot].error,
                created,
                slot,
            });
            created += 1;
        }
    }
    let (value, _, error_estimate) = totals(&elements);
    Err(Error::OracleBudgetExceeded { value, error_estimate })
}

pub fn integrate_triangle(t: &Triangle, f: impl Fn(Point2) -> f64, cfg: &OracleConfig) -> Result<Estimate> {
    integrate_triangles(std::slice::from_ref(t), f, cfg)
}

/// All mesh triangles share one adaptive queue, so the budget flows to
/// wherever the integrand is hardest.
pub fn integrate_polygon(mesh: &Mesh, f: impl Fn(Point2) -> f64, cfg: &OracleConfig) -> Result<Estimate> {
    let tris: Vec<Triangle> = mesh.iter_triangles().collect();
    integrate_triangles(&tris, f, cfg)
}

/// A region an `L^p` norm can be taken over.
#[derive(Debug, Clone, Copy)]
pub enum Domain<'a> {
    Triangle(&'a Triangle),
    Mesh(&'a Mesh),
}

impl<'a> From<&'a Triangle> for Domain<'a> {
    fn from(t: &'a Triangle) -> Self {
        Domain::Triangle(t)
    }
}

impl<'a> From<&'a Mesh> for Domain<'a> {
    fn from(m: &'a Mesh) -> Self {
        Domain::Mesh(m)
    }
}

impl Domain<'_> {
    pub fn triangles(&self) -> Vec<Triangle> {
        match self {
            Domain::Triangle(t) => vec![**t],
            Domain::Mesh(m) => m.iter_triangles().collect(),
        }
    }
}

/// `∫|f|^p` with the adaptive integrator. `p = 2` integrates `f²` directly
/// so polynomial integrands stay polynomial.
pub fn integrate_abs_pow<'a>(
    domain: impl Into<Domain<'a>>,
    f: impl Fn(Point2) -> f64,
    p: f64,
    cfg: &OracleConfig,
) -> Result<Estimate> {
    check_p(p)?;
    if p.is_infinite() {
        return Err(Error::InvalidArgument("p = inf has no integral form".into()));
    }
    let tris = domain.into().triangles();
    let g = |q: Point2| {
        let v = f(q);
        if p == 1.0 {
            v.abs()
        } else if p == 2.0 {
            v * v
        } else {
            v.abs().powf(p)
        }
    };
    integrate_triangles(&tris, g, cfg)
}

/// `‖f‖_p` for `1 ≤ p < ∞`, or the sampled sup-norm for `p = ∞`.
pub fn lp_norm<'a>(domain: impl Into<Domain<'a>>, f: impl Fn(Point2) -> f64, p: f64, cfg: &OracleConfig) -> Result<f64> {
    check_p(p)?;
    let domain = domain.into();
    if p.is_infinite() {
        return sup_norm(&domain.triangles(), f);
    }
    let e = integrate_abs_pow(domain, f, p, cfg)?;
    Ok(e.value.max(0.0).powf(1.0 / p))
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("p must be at least 1, got {p}")))
    }
}

const SUP_LATTICE: usize = 32;
const SUP_CANDIDATES: usize = 8;
const SUP_ZOOM: i32 = 8;
const SUP_ROUNDS: usize = 2;

#[derive(Clone, Copy)]
struct Sample {
    value: f64,
    tri: usize,
    bary: [f64; 3],
}

struct Best(Vec<Sample>);

impl Best {
    fn offer(&mut self, s: Sample) {
        if self.0.len() < SUP_CANDIDATES {
            self.0.push(s);
        } else if s.value > self.0[SUP_CANDIDATES - 1].value {
            self.0[SUP_CANDIDATES - 1] = s;
        } else {
            return;
        }
        self.0.sort_by(|a, b| b.value.total_cmp(&a.value));
    }
}

/// Lower estimate of `max |f|` over the triangles. The lattice gets coarser
/// per triangle as the count grows so the total work stays bounded.
pub fn sup_norm(tris: &[Triangle], f: impl Fn(Point2) -> f64) -> Result<f64> {
    if tris.is_empty() {
        return Err(Error::InvalidArgument("no triangles to sample".into()));
    }
    let n = ((SUP_LATTICE as f64 / (tris.len() as f64).sqrt()).ceil() as usize).max(6);
    let eval = |ti: usize, bary: [f64; 3]| -> Result<Sample> {
        let p = tris[ti].point_at(bary);
        let v = f(p);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { point: p });
        }
        Ok(Sample {
            value: v.abs(),
            tri: ti,
            bary,
        })
    };
    let mut best = Best(Vec::new());
    for ti in 0..tris.len() {
        for i in 0..=n {
            for j in 0..=(n - i) {
                let k = n - i - j;
                best.offer(eval(ti, [i as f64 / n as f64, j as f64 / n as f64, k as f64 / n as f64])?);
            }
        }
    }
    let mut span = 1.0 / n as f64;
    for _ in 0..SUP_ROUNDS {
        let step = span / SUP_ZOOM as f64;
        let centres = best.0.clone();
        for c in centres {
            for a in -SUP_ZOOM..=SUP_ZOOM {
                for b in -SUP_ZOOM..=SUP_ZOOM {
                    let b1 = c.bary[0] + a as f64 * step;
                    let b2 = c.bary[1] + b as f64 * step;
                    let b3 = 1.0 - b1 - b2;
                    if b1 < 0.0 || b2 < 0.0 || b3 < 0.0 {
                        continue;
                    }
                    best.offer(eval(c.tri, [b1, b2, b3])?);
                }
            }
        }
        span = step;
    }
    Ok(best.0[0].value)
}
