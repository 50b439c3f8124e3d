mod common;

use common::{random_triangle, Rng};
use mzquad::bb_basis::{basis_integral, domain_points, eval_basis, index_order};
use mzquad::expr::f3;
use mzquad::geometry::{Point2, Triangle};
use mzquad::mz_verify::sample_polynomial;
use mzquad::oracle::{integrate_triangle, OracleConfig};
use mzquad::tri_rule::{exactness_check, interpolate, monomial_error, triangle_weights};
use proptest::prelude::*;

fn triangle_strategy() -> impl Strategy<Value = Triangle> {
    let coord = -3.0..3.0f64;
    [(coord.clone(), coord.clone()), (coord.clone(), coord.clone()), (coord.clone(), coord)]
        .prop_filter_map("degenerate or too thin", |[(a, b), (c, d), (e, f)]| {
            Triangle::from_coords([[a, b], [c, d], [e, f]]).ok().filter(|t| t.shape_param() < 30.0)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rules_are_exact_up_to_their_degree(t in triangle_strategy(), d in 1usize..=6) {
        let rule = triangle_weights(&t, d).unwrap();
        prop_assert!(exactness_check(&rule) <= 1e-9);
        let total: f64 = rule.weights().iter().sum();
        prop_assert!((total - t.area()).abs() <= 1e-12 * t.area());
    }

    #[test]
    fn normalised_weights_are_affine_invariant(
        t in triangle_strategy(),
        d in 1usize..=8,
        m in prop::array::uniform4(-2.0..2.0f64),
        shift in prop::array::uniform2(-5.0..5.0f64),
    ) {
        let image = t.affine_image([[m[0], m[1]], [m[2], m[3]]], shift);
        prop_assume!(image.as_ref().map(|s| s.shape_param() < 100.0).unwrap_or(false));
        let image = image.unwrap();
        let a = triangle_weights(&t, d).unwrap();
        let b = triangle_weights(&image, d).unwrap();
        for (wa, wb) in a.weights().iter().zip(b.weights()) {
            prop_assert!((wa / t.area() - wb / image.area()).abs() <= 1e-10);
        }
    }
}

#[test]
fn degree_two_rule_misses_cubics() {
    let t = Triangle::from_coords([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
    let rule = triangle_weights(&t, 2).unwrap();
    for (a, b) in [(3, 0), (2, 1), (1, 2), (0, 3)] {
        assert!(monomial_error(&rule, a, b) > 1e-6, "x^{a} y^{b}");
    }
}

#[test]
fn basis_integrals_agree_with_oracle() {
    let t = Triangle::from_coords([[0.2, 0.1], [1.5, 0.4], [0.3, 1.2]]).unwrap();
    let cfg = OracleConfig::default();
    for d in [1, 2, 4, 7] {
        let want = basis_integral(&t, d).unwrap();
        for &idx in index_order(d).unwrap().iter() {
            let got = integrate_triangle(&t, |p| eval_basis(&t, d, idx, p).unwrap(), &cfg).unwrap().value;
            assert!((got - want).abs() <= 1e-10 * want, "d={d} {idx:?}: {got} vs {want}");
        }
    }
}

#[test]
fn interpolant_reproduces_polynomials() {
    let mut rng = Rng::new(3);
    for d in 1..=7 {
        let t = random_triangle(&mut rng, -1.0, 2.0);
        let chi = sample_polynomial(d, 40 + d as u64);
        let values: Vec<f64> = domain_points(&t, d).unwrap().into_iter().map(|p| chi.eval(p)).collect();
        let bform = interpolate(&t, d, &values).unwrap();
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for _ in 0..100 {
            let (r, s) = (rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0));
            let (r, s) = if r + s > 1.0 { (1.0 - r, 1.0 - s) } else { (r, s) };
            let p = t.point_at([1.0 - r - s, r, s]);
            assert!((bform.eval(p) - chi.eval(p)).abs() <= 1e-9 * scale.max(1.0), "d={d}");
        }
    }
}

#[test]
fn interpolation_error_decays_with_triangle_size() {
    // h = 1 is still pre-asymptotic for even d, so the fit starts at h = 1/2
    for d in 1..=5 {
        let mut errs = Vec::new();
        for k in 1..5 {
            let h = 0.5f64.powi(k);
            let t = Triangle::equilateral(Point2::new(0.3, 0.2), h).unwrap();
            let values: Vec<f64> = domain_points(&t, d).unwrap().into_iter().map(|p| f3(p.x, p.y)).collect();
            let bform = interpolate(&t, d, &values).unwrap();
            let n = 40;
            let mut err: f64 = 0.0;
            for i in 0..=n {
                for j in 0..=n - i {
                    let b = [i as f64 / n as f64, j as f64 / n as f64, (n - i - j) as f64 / n as f64];
                    let p = t.point_at(b);
                    err = err.max((bform.eval(p) - f3(p.x, p.y)).abs());
                }
            }
            errs.push(err);
        }
        let ls: Vec<f64> = errs.iter().map(|e| e.log2()).collect();
        // least-squares slope against k = 0, 1, 2, 3
        let order = -(3.0 * (ls[3] - ls[0]) + (ls[2] - ls[1])) / 10.0;
        assert!(order >= d as f64 + 0.8, "d={d}: order {order:.2}, errors {errs:?}");
    }
}
