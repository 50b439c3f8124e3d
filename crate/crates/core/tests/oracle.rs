mod common;

use common::{analytic_library, random_triangle, Rng};
use mzquad::expr::{f1, f2, f3};
use mzquad::geometry::{Polygon, Triangle};
use mzquad::mesh::{triangulate, ScatteredSet};
use mzquad::mz_verify::sample_polynomial;
use mzquad::oracle::{integrate_polygon, integrate_triangle, lp_norm, sup_norm, OracleConfig};
use mzquad::repro::table1_triangle;
use mzquad::Error;

// independent high-precision evaluation, frozen
const F2_ON_TABLE_TRIANGLE: f64 = 26.584_353_177_578_63;

#[test]
fn analytic_library_agreement() {
    let cfg = OracleConfig::default();
    for a in analytic_library() {
        let e = integrate_triangle(&a.triangle, &a.f, &cfg).unwrap();
        let rel = (e.value - a.exact).abs() / a.exact.abs();
        assert!(rel <= 1e-10, "{}: {} vs {}", a.name, e.value, a.exact);
    }
}

#[test]
fn f1_closed_form() {
    let e = integrate_triangle(&table1_triangle(), |p| f1(p.x, p.y), &OracleConfig::default()).unwrap();
    assert!((e.value - 157.0 / 6.0).abs() <= 1e-12 * 157.0 / 6.0);
}

#[test]
fn f3_on_the_unit_square() {
    let square = Polygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
    let mesh = triangulate(&ScatteredSet::boundary_only(square)).unwrap();
    let exact = 2.0 * 1f64.sin() - 2f64.sin() + 1.0 / 6.0 + 1.5;
    let e = integrate_polygon(&mesh, |p| f3(p.x, p.y), &OracleConfig::default()).unwrap();
    assert!((e.value - exact).abs() <= 1e-10 * exact);
}

#[test]
fn f2_converges_and_is_self_consistent() {
    let t = table1_triangle();
    let coarse = integrate_triangle(&t, |p| f2(p.x, p.y), &OracleConfig::with_tolerance(1e-8)).unwrap();
    let fine = integrate_triangle(&t, |p| f2(p.x, p.y), &OracleConfig::with_tolerance(5e-9)).unwrap();
    assert!(coarse.error_estimate <= 1e-8 * coarse.value);
    assert!((coarse.value - fine.value).abs() <= coarse.error_estimate);
    assert!((fine.value - F2_ON_TABLE_TRIANGLE).abs() <= 1e-8 * F2_ON_TABLE_TRIANGLE);
}

#[test]
fn budget_exhaustion_reports_the_estimate() {
    let cfg = OracleConfig { max_elements: 200, ..OracleConfig::default() };
    match integrate_triangle(&table1_triangle(), |p| f2(p.x, p.y), &cfg) {
        Err(Error::OracleBudgetExceeded { value, error_estimate }) => {
            assert!((value - F2_ON_TABLE_TRIANGLE).abs() < 1e-2 * F2_ON_TABLE_TRIANGLE);
            assert!(error_estimate > 0.0);
        }
        other => panic!("expected budget exhaustion, got {other:?}"),
    }
}

#[test]
fn lp_norms_of_x() {
    let t = Triangle::from_coords([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
    let cfg = OracleConfig::default();
    assert!((lp_norm(&t, |p| p.x, 2.0, &cfg).unwrap() - (1.0f64 / 12.0).sqrt()).abs() <= 1e-12);
    assert!((lp_norm(&t, |p| p.x, 1.0, &cfg).unwrap() - 1.0 / 6.0).abs() <= 1e-12);
    assert_eq!(lp_norm(&t, |p| p.x, f64::INFINITY, &cfg).unwrap(), 1.0);
}

#[test]
fn sup_sampler_matches_brute_force() {
    let mut rng = Rng::new(77);
    for case in 0..8 {
        let t = random_triangle(&mut rng, -2.0, 2.0);
        let chi = sample_polynomial(1 + case % 3, 500 + case as u64);
        let sampled = sup_norm(&[t], |p| chi.eval(p)).unwrap();
        let n = 1412;
        let mut brute: f64 = 0.0;
        for i in 0..=n {
            for j in 0..=n - i {
                let b = [i as f64 / n as f64, j as f64 / n as f64, (n - i - j) as f64 / n as f64];
                brute = brute.max(chi.eval(t.point_at(b)).abs());
            }
        }
        assert!(sampled >= brute * (1.0 - 1e-6), "case {case}: sampled {sampled} < brute force {brute}");
        assert!(sampled <= brute * (1.0 + 1e-6), "case {case}: sampled {sampled} > brute force {brute}");
    }
}
