mod common;

use common::{random_scattered, Rng};
use mzquad::geometry::{Point2, Polygon};
use mzquad::mesh::{refine_uniform, triangulate, ScatteredSet};
use mzquad::poly_rule::{exactness_check_p1, polygon_weights};
use proptest::prelude::*;

fn check(s: &ScatteredSet) {
    let m = triangulate(s).unwrap();
    m.check_conforming().unwrap();
    let area = s.polygon().area();
    assert!((m.total_area() - area).abs() <= 1e-10 * area);
    assert_eq!(m.vertices().len(), s.len());
    // Euler: T = 2V - B - 2 for a simply connected triangulated polygon
    assert_eq!(m.count(), 2 * s.len() - s.polygon().len() - 2);
    assert!(m.metrics().gamma >= 2.0 * 3f64.sqrt() - 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_sets_triangulate_conformingly(seed in any::<u64>(), boundary in 3usize..50, interior in 0usize..150) {
        let mut rng = Rng::new(seed);
        check(&random_scattered(&mut rng, boundary, interior));
    }

    #[test]
    fn refinement_keeps_area_and_p1_exactness(seed in any::<u64>(), levels in 0usize..3) {
        let mut rng = Rng::new(seed);
        let s = random_scattered(&mut rng, 12, 10);
        let m = refine_uniform(&triangulate(&s).unwrap(), levels);
        prop_assert_eq!(m.count(), (2 * s.len() - 14) * 4usize.pow(levels as u32));
        m.check_conforming().unwrap();
        prop_assert!(exactness_check_p1(&polygon_weights(&m)) <= 1e-11);
    }
}

#[test]
fn comb_polygon() {
    // deep non-convex teeth force many constrained edges
    let mut v = vec![Point2::new(0.0, 0.0), Point2::new(10.0, 0.0), Point2::new(10.0, 5.0)];
    for i in (0..5).rev() {
        let x = 2.0 * i as f64;
        v.push(Point2::new(x + 1.5, 5.0));
        v.push(Point2::new(x + 1.0, 0.5));
        v.push(Point2::new(x + 0.5, 5.0));
    }
    v.push(Point2::new(0.0, 5.0));
    check(&ScatteredSet::boundary_only(Polygon::new(v).unwrap()));
}

#[test]
fn cocircular_grid() {
    let square = Polygon::from_coords(&[[0.0, 0.0], [4.0, 0.0], [4.0, 4.0], [0.0, 4.0]]).unwrap();
    let interior = (1..4).flat_map(|i| (1..4).map(move |j| Point2::new(i as f64, j as f64))).collect();
    let s = ScatteredSet::new(square, interior).unwrap();
    check(&s);
    let a = triangulate(&s).unwrap();
    let b = triangulate(&s).unwrap();
    assert_eq!(a.triangles(), b.triangles());
}

#[test]
fn points_near_the_boundary() {
    let tri = Polygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
    let interior = vec![Point2::new(0.5, 1e-9), Point2::new(0.25, 0.25), Point2::new(1e-9, 0.5), Point2::new(0.49, 0.5 - 2e-9)];
    check(&ScatteredSet::new(tri, interior).unwrap());
}

#[test]
fn stand_in_polygon() {
    let s = mzquad::io::standin_scattered();
    check(&s);
    check(&ScatteredSet::boundary_only(s.polygon().clone()));
}
