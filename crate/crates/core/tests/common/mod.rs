//! Shared fixtures for the integration and acceptance tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use mzquad::geometry::{Point2, Polygon, Triangle};
use mzquad::mesh::ScatteredSet;
use mzquad::tri_rule::monomial_integral;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub struct Rng(SplitMix64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(SplitMix64::seed_from_u64(seed))
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * ((self.0.next_u64() >> 11) as f64 * (-53f64).exp2())
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }
}

/// A triangle with vertices in `[lo, hi]²` and shape parameter at most 40.
pub fn random_triangle(rng: &mut Rng, lo: f64, hi: f64) -> Triangle {
    loop {
        let p = |r: &mut Rng| Point2::new(r.uniform(lo, hi), r.uniform(lo, hi));
        let (a, b, c) = (p(rng), p(rng), p(rng));
        if let Ok(t) = Triangle::new(a, b, c) {
            if t.shape_param() < 40.0 {
                return t;
            }
        }
    }
}

/// Star-shaped polygon around `centre` with `n` vertices at sorted random
/// angles and random radii in `[0.4, 1] * radius`.
pub fn random_polygon(rng: &mut Rng, n: usize, centre: Point2, radius: f64) -> Polygon {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.uniform(0.0, TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let gaps_ok = angles.windows(2).all(|w| w[1] - w[0] > 1e-3) && angles[0] + TAU - angles[n - 1] > 1e-3;
        if !gaps_ok {
            continue;
        }
        let pts: Vec<Point2> = angles
            .iter()
            .map(|a| {
                let r = radius * rng.uniform(0.4, 1.0);
                Point2::new(centre.x + r * a.cos(), centre.y + r * a.sin())
            })
            .collect();
        if let Ok(p) = Polygon::new(pts) {
            return p;
        }
    }
}

/// Random polygon plus up to `interior` rejection-sampled inside points.
pub fn random_scattered(rng: &mut Rng, boundary: usize, interior: usize) -> ScatteredSet {
    let centre = Point2::new(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
    let radius = rng.uniform(0.5, 3.0);
    let poly = random_polygon(rng, boundary, centre, radius);
    let (lo, hi) = poly.bbox();
    let mut pts = Vec::new();
    let mut tries = 0;
    while pts.len() < interior && tries < 100 * interior {
        tries += 1;
        let q = Point2::new(rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y));
        if poly.locate(q) == mzquad::geometry::Location::Inside {
            pts.push(q);
        }
    }
    loop {
        match ScatteredSet::new(poly.clone(), pts.clone()) {
            Ok(s) => return s,
            Err(_) => {
                pts.pop();
            }
        }
    }
}

/// An integrand with a closed-form integral over a given triangle.
pub struct Analytic {
    pub name: String,
    pub triangle: Triangle,
    pub f: Box<dyn Fn(Point2) -> f64 + Sync>,
    pub exact: f64,
}

// (a + ib)
#[derive(Clone, Copy)]
struct C(f64, f64);

impl C {
    fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C) -> C {
        let d = o.0 * o.0 + o.1 * o.1;
        C((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn exp(self) -> C {
        let m = self.0.exp();
        C(m * self.1.cos(), m * self.1.sin())
    }
}

// ∫_T exp(z(x,y)) for affine complex z: 2|T| times the second divided
// difference of exp at the vertex values (which must be distinct).
fn exp_affine_integral(t: &Triangle, z: impl Fn(Point2) -> C) -> C {
    let zs = t.vertices().map(z);
    let mut s = C(0.0, 0.0);
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let term = zs[i].exp().div(zs[i].sub(zs[j]).mul(zs[i].sub(zs[k])));
        s = C(s.0 + term.0, s.1 + term.1);
    }
    C(2.0 * t.area() * s.0, 2.0 * t.area() * s.1)
}

/// Thirty integrands with known integrals: monomials on a fixed triangle,
/// and exponentials and sines/cosines of affine functions on random ones.
pub fn analytic_library() -> Vec<Analytic> {
    let mut out = Vec::new();
    let base = Triangle::from_coords([[0.1, 0.2], [1.3, 0.4], [0.5, 1.1]]).unwrap();
    for (a, b) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 1), (2, 3), (5, 2), (4, 4), (7, 1), (0, 9), (6, 5), (3, 8), (10, 2)] {
        out.push(Analytic {
            name: format!("x^{a} y^{b}"),
            triangle: base,
            f: Box::new(move |p: Point2| p.x.powi(a) * p.y.powi(b)),
            exact: monomial_integral(&base, a as u32, b as u32),
        });
    }
    let mut rng = Rng::new(2024);
    while out.len() < 30 {
        let t = random_triangle(&mut rng, -1.0, 1.0);
        let (al, be, ga) = (rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0));
        let vals = t.vertices().map(|v| al * v.x + be * v.y);
        let separated = (0..3).all(|i| (vals[i] - vals[(i + 1) % 3]).abs() > 0.05);
        if !separated {
            continue;
        }
        match out.len() % 3 {
            0 => {
                let exact = exp_affine_integral(&t, |p| C(al * p.x + be * p.y + ga, 0.0)).0;
                out.push(Analytic {
                    name: format!("exp({al:.3}x + {be:.3}y + {ga:.3})"),
                    triangle: t,
                    f: Box::new(move |p: Point2| (al * p.x + be * p.y + ga).exp()),
                    exact,
                });
            }
            1 => {
                let exact = exp_affine_integral(&t, |p| C(0.0, al * p.x + be * p.y + ga)).1;
                out.push(Analytic {
                    name: format!("sin({al:.3}x + {be:.3}y + {ga:.3})"),
                    triangle: t,
                    f: Box::new(move |p: Point2| (al * p.x + be * p.y + ga).sin()),
                    exact,
                });
            }
            _ => {
                let exact = exp_affine_integral(&t, |p| C(0.0, al * p.x + be * p.y + ga)).0;
                out.push(Analytic {
                    name: format!("cos({al:.3}x + {be:.3}y + {ga:.3})"),
                    triangle: t,
                    f: Box::new(move |p: Point2| (al * p.x + be * p.y + ga).cos()),
                    exact,
                });
            }
        }
    }
    out
}

pub const EXPRESSION_CORPUS: &[&str] = &[
    "x",
    "y",
    "1",
    "0.5",
    "1e-3",
    "2.5e10",
    "x+y",
    "x-y",
    "x*y",
    "x/y",
    "x^2",
    "x^-1",
    "2^3^2",
    "-x",
    "-x^2",
    "--x",
    "-(x+y)",
    "x-y-1",
    "x/y/2",
    "x-(y-1)",
    "x/(y/2)",
    "(x+y)*(x-y)",
    "x+2*y",
    "x*2+y",
    "(x+2*y-7)^2+(2*x+y-5)^2",
    "100*sqrt(abs(y-0.01*x^2))+0.01*abs(x+10)",
    "sin(x+y)+(x-y)^2-1.5*x+2.5*y+1",
    "sin(x)",
    "cos(y)",
    "exp(-x^2-y^2)",
    "sqrt(x^2+y^2)",
    "abs(x-y)",
    "log(1+x*x)",
    "sin(cos(exp(x)))",
    "exp(sin(x)*cos(y))",
    "x^y",
    "(x^y)^2",
    "x^(y^2)",
    "2*-x",
    "x*-y^2",
    "-2^-2",
    "1/(1+x^2+y^2)",
    "3*x^3-2*x^2*y+x*y^2-7*y^3",
    "((((x))))",
    "x + y * 3 - 4 / 2",
    "  x\t+\ny ",
    "abs(-x)",
    "sqrt(abs(x))*log(2+y)",
    "0.001*x^10",
    "exp(x)-exp(-x)",
    "sin(x)^2+cos(x)^2",
    "1.5*x+2.5*y",
    "(x-0.5)*(y-0.25)*(x+y-1)",
];
