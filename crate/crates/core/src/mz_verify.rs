//! Empirical Marcinkiewicz–Zygmund ratios for random polynomials.
//!
//! For a rule with nodes `x_j` and weights `w_j` and a polynomial `χ` the
//! ratio is `Σ w_j |χ(x_j)|^p / ∫|χ|^p` for finite `p`, and
//! `max_j |χ(x_j)| / ‖χ‖_∞` for `p = ∞`. Ensembles report the spread of the
//! ratio over seeded random polynomials.
//!
//! # Random polynomials
//!
//! Coefficients are i.i.d. uniform on `[-1, 1]` in the monomial basis
//! `x^a y^b`, ordered by total degree `t = 0..=N` and, within a degree, by
//! decreasing `a`. Each coefficient consumes one output `u` of SplitMix64
//! (state seeded with the 64-bit seed as is):
//!
//! ```text
//! state += 0x9e3779b97f4a7c15
//! z = state
//! z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//! z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//! u = z ^ (z >> 31)
//! c = 2 * ((u >> 11) * 2^-53) - 1
//! ```
//!
//! Trial `i` of an ensemble with seed `s` uses seed `s ^ i`. Ensembles
//! evaluate the monomials in coordinates centred on the bounding box of the
//! rule's domain and scaled by its half extent.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bb_basis::dim;
use crate::error::{Error, Result};
use crate::geometry::{Point2, Triangle};
use crate::mesh::Mesh;
use crate::oracle::{integrate_triangles, sup_norm, OracleConfig};
use crate::poly_rule::PolygonRule;
use crate::sum::KahanSum;
use crate::tri_rule::{triangle_weights, TriangleRule};

/// Norms below this make a ratio meaningless.
pub const DEGENERATE_NORM: f64 = 1e-14;
/// A denominator whose oracle error estimate exceeds this fraction of its
/// value is not trusted, and the trial is discarded.
pub const DISCARD_REL: f64 = 1e-6;

/// Oracle settings used for ensemble denominators.
pub fn ensemble_oracle() -> OracleConfig {
    OracleConfig {
        tolerance: 1e-10,
        max_elements: 5_000,
        ..OracleConfig::default()
    }
}

/// A bivariate polynomial of total degree at most `N` in monomial form,
/// `Σ c_ab u^a v^b` with `u = (x - x0)/s`, `v = (y - y0)/s`. The frame
/// `(x0, y0, s)` defaults to the identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolySample {
    degree: usize,
    coeffs: Vec<f64>,
    origin: Point2,
    scale: f64,
}

impl PolySample {
    pub fn new(degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != dim(degree) {
            return Err(Error::LengthMismatch {
                expected: dim(degree),
                got: coeffs.len(),
            });
        }
        if coeffs.iter().all(|&c| c == 0.0) {
            return Err(Error::DegeneratePolynomial { norm: 0.0 });
        }
        Ok(Self {
            degree,
            coeffs,
            origin: Point2::new(0.0, 0.0),
            scale: 1.0,
        })
    }

    /// Same coefficients in the frame centred at `origin` with unit length
    /// `scale`.
    pub fn with_frame(mut self, origin: Point2, scale: f64) -> Self {
        self.origin = origin;
        self.scale = scale;
        self
    }

    /// Frame centred on the bounding box of `tris`, scaled by its half
    /// extent, so the sampled polynomials are well scaled on the domain.
    pub fn frame_for(tris: &[Triangle]) -> (Point2, f64) {
        let pts: Vec<Point2> = tris.iter().flat_map(|t| t.vertices()).collect();
        let (lo, hi) = crate::geometry::bbox(&pts);
        let half = 0.5 * (hi.x - lo.x).max(hi.y - lo.y);
        (lo.midpoint(&hi), half)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Exponents `(a, b)` in coefficient order.
    pub fn exponents(degree: usize) -> impl Iterator<Item = (i32, i32)> {
        (0..=degree as i32).flat_map(|t| (0..=t).rev().map(move |a| (a, t - a)))
    }

    pub fn eval(&self, p: Point2) -> f64 {
        let (u, v) = ((p.x - self.origin.x) / self.scale, (p.y - self.origin.y) / self.scale);
        Self::exponents(self.degree)
            .zip(&self.coeffs)
            .map(|((a, b), c)| c * u.powi(a) * v.powi(b))
            .sum()
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
            ..self.clone()
        }
    }
}

pub fn sample_polynomial(n: usize, seed: u64) -> PolySample {
    let mut rng = SplitMix64::seed_from_u64(seed);
    loop {
        let coeffs: Vec<f64> = (0..dim(n))
            .map(|_| 2.0 * ((rng.next_u64() >> 11) as f64 * (-53f64).exp2()) - 1.0)
            .collect();
        // all zeros has probability 2^-53 per coefficient; draw again
        if let Ok(s) = PolySample::new(n, coeffs) {
            return s;
        }
    }
}

fn abs_pow(v: f64, p: f64) -> f64 {
    if p == 2.0 {
        v * v
    } else {
        v.abs().powf(p)
    }
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("p must be at least 1, got {p}")))
    }
}

// `Σ w_j |χ(x_j)|^p / ∫|χ|^p`, or the sup-norm version.
fn ratio(points: &[Point2], weights: &[f64], tris: &[Triangle], p: f64, chi: &PolySample, cfg: &OracleConfig) -> Result<f64> {
    check_p(p)?;
    let values: Vec<f64> = points.iter().map(|&q| chi.eval(q)).collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteSample { point: points[i] });
    }
    let f = |q: Point2| chi.eval(q);
    if p.is_infinite() {
        let discrete = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        // the sampled sup is a lower bound; the nodes are samples too
        let norm = sup_norm(tris, f)?.max(discrete);
        if norm < DEGENERATE_NORM {
            return Err(Error::DegeneratePolynomial { norm });
        }
        return Ok(discrete / norm);
    }
    let mut sum = KahanSum::new();
    for (v, w) in values.iter().zip(weights) {
        sum.add(w * abs_pow(*v, p));
    }
    let integral = trusted_integral(tris, f, p, cfg)?;
    let norm = integral.max(0.0).powf(1.0 / p);
    if norm < DEGENERATE_NORM {
        return Err(Error::DegeneratePolynomial { norm });
    }
    Ok(sum.value() / integral)
}

// Budget exhaustion is tolerated while the estimate stays below DISCARD_REL.
fn trusted_integral(tris: &[Triangle], f: impl Fn(Point2) -> f64, p: f64, cfg: &OracleConfig) -> Result<f64> {
    match integrate_triangles(tris, |q| abs_pow(f(q), p), cfg) {
        Ok(e) => Ok(e.value),
        Err(Error::OracleBudgetExceeded { value, error_estimate }) if error_estimate <= DISCARD_REL * value.abs() => Ok(value),
        Err(e) => Err(e),
    }
}

pub fn mz_ratio_triangle(t: &Triangle, d: usize, p: f64, chi: &PolySample, cfg: &OracleConfig) -> Result<f64> {
    if ![1, 3, 5].contains(&d) {
        return Err(Error::InvalidArgument(format!(
            "MZ ratios need a positive rule; degree must be 1, 3 or 5, got {d}"
        )));
    }
    let rule = triangle_weights(t, d)?;
    mz_ratio_triangle_rule(&rule, p, chi, cfg)
}

fn mz_ratio_triangle_rule(rule: &TriangleRule, p: f64, chi: &PolySample, cfg: &OracleConfig) -> Result<f64> {
    ratio(rule.points(), rule.weights(), &[*rule.triangle()], p, chi, cfg)
}

pub fn mz_ratio_polygon(r: &PolygonRule, p: f64, chi: &PolySample, cfg: &OracleConfig) -> Result<f64> {
    let tris: Vec<Triangle> = r.mesh().iter_triangles().collect();
    ratio(r.points(), r.weights(), &tris, p, chi, cfg)
}

/// Which rule an ensemble runs on.
#[derive(Debug, Clone)]
pub enum RuleDescriptor {
    Triangle { triangle: Triangle, degree: usize },
    Polygon { rule: PolygonRule, mesh_id: String },
}

impl RuleDescriptor {
    pub fn polygon(mesh: &Mesh, mesh_id: impl Into<String>) -> Self {
        RuleDescriptor::Polygon {
            rule: crate::poly_rule::polygon_weights(mesh),
            mesh_id: mesh_id.into(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            RuleDescriptor::Triangle { degree, .. } => format!("tri-d{degree}"),
            RuleDescriptor::Polygon { mesh_id, .. } => mesh_id.clone(),
        }
    }
}

fn serialize_p<S: Serializer>(p: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if p.is_infinite() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*p)
    }
}

/// Summary of one ensemble; serialises to one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MZReport {
    #[serde(serialize_with = "serialize_p")]
    pub p: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub rule: String,
    pub mesh_size: Option<f64>,
    pub mesh_count: Option<usize>,
    pub trials: usize,
    pub ratio_min: f64,
    pub ratio_mean: f64,
    pub ratio_max: f64,
    /// `max(ratio_max - 1, 1 - ratio_min)`
    pub eta_observed: f64,
    /// Trials skipped for a degenerate polynomial or an untrusted denominator.
    pub discarded: usize,
}

/// Runs `trials` seeded samples in parallel and aggregates them in trial
/// order, so the report does not depend on the thread count.
pub fn mz_ensemble(
    rule: &RuleDescriptor,
    p: f64,
    n: usize,
    trials: usize,
    seed: u64,
    cfg: &OracleConfig,
) -> Result<MZReport> {
    check_p(p)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let tri_rule = match rule {
        RuleDescriptor::Triangle { triangle, degree } => {
            if ![1, 3, 5].contains(degree) {
                return Err(Error::InvalidArgument(format!(
                    "MZ ratios need a positive rule; degree must be 1, 3 or 5, got {degree}"
                )));
            }
            Some(triangle_weights(triangle, *degree)?)
        }
        RuleDescriptor::Polygon { .. } => None,
    };
    let tris: Vec<Triangle> = match (rule, &tri_rule) {
        (RuleDescriptor::Polygon { rule, .. }, _) => rule.mesh().iter_triangles().collect(),
        (_, Some(r)) => vec![*r.triangle()],
        _ => unreachable!("triangle rule built above"),
    };
    let (origin, scale) = PolySample::frame_for(&tris);
    let results: Vec<Result<f64>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let chi = sample_polynomial(n, seed ^ i).with_frame(origin, scale);
            match (rule, &tri_rule) {
                (RuleDescriptor::Polygon { rule, .. }, _) => mz_ratio_polygon(rule, p, &chi, cfg),
                (_, Some(r)) => mz_ratio_triangle_rule(r, p, &chi, cfg),
                _ => unreachable!("triangle rule built above"),
            }
        })
        .collect();

    let mut kept = Vec::with_capacity(trials);
    let mut discarded = 0;
    for r in results {
        match r {
            Ok(v) => kept.push(v),
            Err(Error::DegeneratePolynomial { .. } | Error::OracleBudgetExceeded { .. }) => discarded += 1,
            Err(e) => return Err(e),
        }
    }
    let (ratio_min, ratio_max, ratio_mean) = if kept.is_empty() {
        (f64::NAN, f64::NAN, f64::NAN)
    } else {
        let min = kept.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = kept.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mean = kept.iter().copied().collect::<KahanSum>().value() / kept.len() as f64;
        (min, max, mean.clamp(min, max))
    };
    let (mesh_size, mesh_count) = match rule {
        RuleDescriptor::Polygon { rule, .. } => (Some(rule.mesh().size()), Some(rule.mesh().count())),
        RuleDescriptor::Triangle { triangle, .. } => (Some(triangle.longest_edge()), Some(1)),
    };
    Ok(MZReport {
        p,
        n,
        rule: rule.label(),
        mesh_size,
        mesh_count,
        trials,
        ratio_min,
        ratio_mean,
        ratio_max,
        eta_observed: (ratio_max - 1.0).max(1.0 - ratio_min),
        discarded,
    })
}

/// CSV text with a header row, one line per report.
pub fn reports_to_csv(reports: &[MZReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
