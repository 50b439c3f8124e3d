//! Planar primitives: points, triangles, simple polygons, and the exact-sign
//! predicates the meshing code relies on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold below which a triangle is considered flat:
/// `|signed area| <= DEGENERACY_TOL * longest_edge^2`.
pub const DEGENERACY_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn midpoint(&self, other: &Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    fn coord(self) -> robust::Coord<f64> {
        robust::Coord { x: self.x, y: self.y }
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Point2::new(x, y)
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2::new(x, y)
    }
}

/// Twice the signed area of `abc`, with the sign computed exactly.
/// Positive when `abc` turns counter-clockwise.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> f64 {
    robust::orient2d(a.coord(), b.coord(), c.coord())
}

/// Positive when `d` lies strictly inside the circumcircle of the
/// counter-clockwise triangle `abc`; the sign is exact.
pub fn incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    robust::incircle(a.coord(), b.coord(), c.coord(), d.coord())
}

/// `p` lies on the closed segment `ab` (exact).
pub fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    orient2d(a, b, p) == 0.0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Closed segments `ab` and `cd` share at least one point (exact).
pub fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Open segments `ab` and `cd` cross at a single interior point of both (exact).
pub fn segments_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Barycentric {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

impl Barycentric {
    pub fn as_array(&self) -> [f64; 3] {
        [self.b1, self.b2, self.b3]
    }

    pub fn is_inside(&self) -> bool {
        self.as_array().iter().all(|b| (0.0..=1.0).contains(b))
    }
}

/// A non-degenerate triangle stored counter-clockwise, with its metrics
/// computed once at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    v: [Point2; 3],
    area: f64,
    longest_edge: f64,
    inradius: f64,
}

impl Triangle {
    /// Builds a triangle, swapping `v2` and `v3` if the input is clockwise.
    pub fn new(v1: Point2, v2: Point2, v3: Point2) -> Result<Self> {
        if !(v1.is_finite() && v2.is_finite() && v3.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        let edges = [v2.dist(&v3), v3.dist(&v1), v1.dist(&v2)];
        let longest_edge = edges.iter().cloned().fold(0.0, f64::max);
        let signed_area = 0.5 * orient2d(v1, v2, v3);
        if signed_area.abs() <= DEGENERACY_TOL * longest_edge * longest_edge {
            return Err(Error::DegenerateTriangle { signed_area });
        }
        let v = if signed_area > 0.0 { [v1, v2, v3] } else { [v1, v3, v2] };
        let area = signed_area.abs();
        let semiperimeter = 0.5 * edges.iter().sum::<f64>();
        Ok(Self {
            v,
            area,
            longest_edge,
            inradius: area / semiperimeter,
        })
    }

    pub fn from_coords(coords: [[f64; 2]; 3]) -> Result<Self> {
        Self::new(coords[0].into(), coords[1].into(), coords[2].into())
    }

    /// Equilateral triangle with side `side` and lower-left vertex at `origin`.
    pub fn equilateral(origin: Point2, side: f64) -> Result<Self> {
        Self::new(
            origin,
            Point2::new(origin.x + side, origin.y),
            Point2::new(origin.x + 0.5 * side, origin.y + 0.5 * 3f64.sqrt() * side),
        )
    }

    pub fn vertices(&self) -> [Point2; 3] {
        self.v
    }

    pub fn v1(&self) -> Point2 {
        self.v[0]
    }

    pub fn v2(&self) -> Point2 {
        self.v[1]
    }

    pub fn v3(&self) -> Point2 {
        self.v[2]
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Length of the longest edge, `|T|`.
    pub fn longest_edge(&self) -> f64 {
        self.longest_edge
    }

    /// Radius of the inscribed circle.
    pub fn inradius(&self) -> f64 {
        self.inradius
    }

    /// Longest edge over inradius. Equals `2*sqrt(3)` for equilateral
    /// triangles and is larger for every other shape.
    pub fn shape_param(&self) -> f64 {
        self.longest_edge / self.inradius
    }

    pub fn centroid(&self) -> Point2 {
        let [a, b, c] = self.v;
        Point2::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
    }

    /// Barycentric coordinates of `p`, by Cramer's rule on the 2x2 system
    /// obtained from eliminating `b3 = 1 - b1 - b2`.
    pub fn barycentric(&self, p: Point2) -> Barycentric {
        let [a, b, c] = self.v;
        let (e1x, e1y) = (a.x - c.x, a.y - c.y);
        let (e2x, e2y) = (b.x - c.x, b.y - c.y);
        let (rx, ry) = (p.x - c.x, p.y - c.y);
        let det = e1x * e2y - e1y * e2x;
        let b1 = (rx * e2y - ry * e2x) / det;
        let b2 = (e1x * ry - e1y * rx) / det;
        Barycentric {
            b1,
            b2,
            b3: 1.0 - b1 - b2,
        }
    }

    /// The point with the given barycentric coordinates.
    pub fn point_at(&self, b: [f64; 3]) -> Point2 {
        let [p, q, r] = self.v;
        Point2::new(
            b[0] * p.x + b[1] * q.x + b[2] * r.x,
            b[0] * p.y + b[1] * q.y + b[2] * r.y,
        )
    }

    /// Closed containment test with exact predicates.
    pub fn contains(&self, p: Point2) -> bool {
        let [a, b, c] = self.v;
        orient2d(a, b, p) >= 0.0 && orient2d(b, c, p) >= 0.0 && orient2d(c, a, p) >= 0.0
    }

    /// The four congruent children obtained by joining edge midpoints.
    /// Children are similar to the parent.
    pub fn quarter(&self) -> [Triangle; 4] {
        let [a, b, c] = self.v;
        let (ab, bc, ca) = (a.midpoint(&b), b.midpoint(&c), c.midpoint(&a));
        let child = |p: Point2, q: Point2, r: Point2| Triangle::from_parts(p, q, r, self.area / 4.0);
        [
            child(a, ab, ca),
            child(ab, b, bc),
            child(ca, bc, c),
            child(bc, ca, ab),
        ]
    }

    // Children of a valid triangle are valid; skip the degeneracy check but
    // recompute metrics from the actual coordinates.
    fn from_parts(v1: Point2, v2: Point2, v3: Point2, area_hint: f64) -> Triangle {
        let edges = [v2.dist(&v3), v3.dist(&v1), v1.dist(&v2)];
        let longest_edge = edges.iter().cloned().fold(0.0, f64::max);
        let area = {
            let a = 0.5 * orient2d(v1, v2, v3);
            if a > 0.0 {
                a
            } else {
                area_hint
            }
        };
        Triangle {
            v: [v1, v2, v3],
            area,
            longest_edge,
            inradius: area / (0.5 * edges.iter().sum::<f64>()),
        }
    }

    /// Image of the triangle under `p -> m p + t`, keeping vertex order
    /// (orientation is re-normalised by [`Triangle::new`]).
    pub fn affine_image(&self, m: [[f64; 2]; 2], t: [f64; 2]) -> Result<Triangle> {
        let map = |p: Point2| affine_point(p, m, t);
        Triangle::new(map(self.v[0]), map(self.v[1]), map(self.v[2]))
    }
}

pub fn affine_point(p: Point2, m: [[f64; 2]; 2], t: [f64; 2]) -> Point2 {
    Point2::new(
        m[0][0] * p.x + m[0][1] * p.y + t[0],
        m[1][0] * p.x + m[1][1] * p.y + t[1],
    )
}

/// Where a point sits relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

/// A simple polygon without holes, stored counter-clockwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    /// Validates and orients a vertex loop (no closing repeat).
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::NotSimple(format!("need at least 3 vertices, got {n}")));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if a == b {
                return Err(Error::NotSimple(format!("vertices {i} and {} coincide", (i + 1) % n)));
            }
            if orient2d(a, b, c) == 0.0 {
                return Err(Error::NotSimple(format!(
                    "vertices {i}, {}, {} are collinear",
                    (i + 1) % n,
                    (i + 2) % n
                )));
            }
        }
        check_simple(&vertices)?;
        if shoelace(&vertices) < 0.0 {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    pub fn from_coords(coords: &[[f64; 2]]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| c.into()).collect())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace area; positive because the loop is stored counter-clockwise.
    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    /// `(∫1, ∫x, ∫y)` over the polygon via boundary (shoelace-type) formulas.
    pub fn moments(&self) -> (f64, f64, f64) {
        let (mut a, mut mx, mut my) = (0.0, 0.0, 0.0);
        for (p, q) in self.edges() {
            let cross = p.x * q.y - q.x * p.y;
            a += cross;
            mx += (p.x + q.x) * cross;
            my += (p.y + q.y) * cross;
        }
        (0.5 * a, mx / 6.0, my / 6.0)
    }

    pub fn locate(&self, p: Point2) -> Location {
        if self.edges().any(|(a, b)| on_segment(a, b, p)) {
            return Location::OnBoundary;
        }
        // winding number with exact orientation tests
        let mut winding = 0i32;
        for (a, b) in self.edges() {
            if a.y <= p.y {
                if b.y > p.y && orient2d(a, b, p) > 0.0 {
                    winding += 1;
                }
            } else if b.y <= p.y && orient2d(a, b, p) < 0.0 {
                winding -= 1;
            }
        }
        if winding != 0 {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bbox(&self) -> (Point2, Point2) {
        bbox(&self.vertices)
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|p| Point2::new(p.x + dx, p.y + dy)).collect(),
        }
    }
}

pub(crate) fn bbox(points: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

fn shoelace(v: &[Point2]) -> f64 {
    let n = v.len();
    0.5 * (0..n)
        .map(|i| {
            let (p, q) = (v[i], v[(i + 1) % n]);
            p.x * q.y - q.x * p.y
        })
        .sum::<f64>()
}

// O(n^2) sweep over non-adjacent edge pairs.
fn check_simple(v: &[Point2]) -> Result<()> {
    let n = v.len();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (v[j], v[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // shared endpoint only; a fold-back would make the other ends collinear-overlapping
                let (shared, other_a, other_c) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if orient2d(other_a, shared, other_c) == 0.0
                    && (on_segment(shared, other_a, other_c) || on_segment(shared, other_c, other_a))
                {
                    return Err(Error::NotSimple(format!("edges {i} and {j} overlap")));
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return Err(Error::NotSimple(format!("edges {i} and {j} intersect")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn unit_right() -> Triangle {
        Triangle::from_coords([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn barycentric_vertex_and_centroid() {
        let t = unit_right();
        assert_eq!(t.barycentric(Point2::new(0.0, 0.0)).as_array(), [1.0, 0.0, 0.0]);
        let c = t.barycentric(Point2::new(1.0 / 3.0, 1.0 / 3.0));
        for b in c.as_array() {
            assert_relative_eq!(b, 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn barycentric_edge_midpoint() {
        let t = Triangle::from_coords([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]).unwrap();
        let b = t.barycentric(Point2::new(1.0, 0.0)).as_array();
        assert_eq!(b, [0.5, 0.5, 0.0]);
    }

    #[test]
    fn degenerate_triangle_rejected() {
        let e = Triangle::from_coords([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]).unwrap_err();
        assert!(matches!(e, Error::DegenerateTriangle { .. }));
        let e = Triangle::from_coords([[0.0, 0.0], [1.0, 0.0], [0.5, 1e-16]]).unwrap_err();
        assert!(matches!(e, Error::DegenerateTriangle { .. }));
    }

    #[test]
    fn clockwise_input_is_reoriented() {
        let t = Triangle::from_coords([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(orient2d(t.v1(), t.v2(), t.v3()) > 0.0);
        assert_eq!(t.v2(), Point2::new(1.0, 0.0));
        assert_eq!(t.area(), 0.5);
    }

    #[test]
    fn metrics() {
        let t = unit_right();
        assert_eq!(t.area(), 0.5);
        assert_relative_eq!(t.longest_edge(), 2f64.sqrt());
        assert_relative_eq!(t.inradius(), 0.5 / (1.0 + 0.5 * 2f64.sqrt()));
        let eq = Triangle::equilateral(Point2::new(0.3, -2.0), 1.7).unwrap();
        assert_relative_eq!(eq.shape_param(), 2.0 * 3f64.sqrt(), max_relative = 1e-14);
        assert!(t.shape_param() > 2.0 * 3f64.sqrt());
    }

    #[test]
    fn polygon_areas() {
        let sq = Polygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert_eq!(sq.area(), 1.0);
        let tri = Polygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(tri.area(), 0.5);
        let l = Polygon::from_coords(&[
            [0.0, 0.0],
            [2.0, 0.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 2.0],
            [0.0, 2.0],
        ])
        .unwrap();
        assert_eq!(l.area(), 3.0);
        // clockwise input is reversed
        let cw = Polygon::from_coords(&[[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(cw.area(), 1.0);
    }

    #[test]
    fn polygon_moments_of_square() {
        let sq = Polygon::from_coords(&[[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]]).unwrap();
        let (a, mx, my) = sq.moments();
        assert_eq!(a, 2.0);
        assert_relative_eq!(mx, 2.0);
        assert_relative_eq!(my, 1.0);
    }

    #[test]
    fn polygon_rejections() {
        let bowtie = Polygon::from_coords(&[[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(bowtie, Err(Error::NotSimple(_))));
        let dup = Polygon::from_coords(&[[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(dup, Err(Error::NotSimple(_))));
        let collinear = Polygon::from_coords(&[[0.0, 0.0], [0.5, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(collinear, Err(Error::NotSimple(_))));
        let touching = Polygon::from_coords(&[
            [0.0, 0.0],
            [4.0, 0.0],
            [4.0, 4.0],
            [2.0, 0.0],
            [0.0, 4.0],
        ]);
        assert!(matches!(touching, Err(Error::NotSimple(_))));
    }

    #[test]
    fn locate_points() {
        let sq = Polygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert_eq!(sq.locate(Point2::new(0.5, 0.5)), Location::Inside);
        assert_eq!(sq.locate(Point2::new(1.0, 0.5)), Location::OnBoundary);
        assert_eq!(sq.locate(Point2::new(0.0, 0.0)), Location::OnBoundary);
        assert_eq!(sq.locate(Point2::new(1.5, 0.5)), Location::Outside);
    }

    fn tri_strategy() -> impl Strategy<Value = Triangle> {
        prop::array::uniform6(-10.0f64..10.0)
            .prop_filter_map("degenerate", |c| {
                let t = Triangle::from_coords([[c[0], c[1]], [c[2], c[3]], [c[4], c[5]]]).ok()?;
                (t.shape_param() < 1e3).then_some(t)
            })
    }

    proptest! {
        #[test]
        fn barycentric_reconstructs_point(t in tri_strategy(), x in -20.0f64..20.0, y in -20.0f64..20.0) {
            let p = Point2::new(x, y);
            let b = t.barycentric(p);
            let q = t.point_at(b.as_array());
            let scale = t.longest_edge().max(p.x.abs()).max(p.y.abs());
            prop_assert!((q.x - x).abs() <= 1e-12 * scale);
            prop_assert!((q.y - y).abs() <= 1e-12 * scale);
            prop_assert!((b.b1 + b.b2 + b.b3 - 1.0).abs() < 1e-12);
        }

        #[test]
        fn barycentric_affine_invariant(
            t in tri_strategy(),
            m in prop::array::uniform4(-3.0f64..3.0),
            s in prop::array::uniform2(-5.0f64..5.0),
            u in 0.0f64..1.0, v in 0.0f64..1.0,
        ) {
            let mat = [[m[0], m[1]], [m[2], m[3]]];
            let det = m[0] * m[3] - m[1] * m[2];
            prop_assume!(det.abs() > 0.1);
            // keep vertex order: map the raw vertices, do not let new() reorder
            let img = [t.v1(), t.v2(), t.v3()].map(|p| affine_point(p, mat, s));
            let timg = if det > 0.0 {
                Triangle::new(img[0], img[1], img[2]).unwrap()
            } else {
                // reflection flips orientation; compare with the swapped labelling
                Triangle::new(img[0], img[2], img[1]).unwrap()
            };
            let p = t.point_at([u * 0.5, v * 0.5, 1.0 - 0.5 * (u + v)]);
            let b0 = t.barycentric(p).as_array();
            let b1 = timg.barycentric(affine_point(p, mat, s)).as_array();
            let b1 = if det > 0.0 { b1 } else { [b1[0], b1[2], b1[1]] };
            for k in 0..3 {
                prop_assert!((b0[k] - b1[k]).abs() < 1e-10, "{:?} vs {:?}", b0, b1);
            }
        }

        #[test]
        fn barycentric_vanishes_on_opposite_edge(t in tri_strategy(), s in 0.0f64..1.0) {
            let v = t.vertices();
            for i in 0..3 {
                let (a, b) = (v[(i + 1) % 3], v[(i + 2) % 3]);
                let p = Point2::new(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y));
                let bc = t.barycentric(p).as_array();
                prop_assert!(bc[i].abs() <= 1e-12, "b{} = {}", i + 1, bc[i]);
            }
        }

        #[test]
        fn polygon_area_is_rigid_and_scales(
            theta in 0.0f64..std::f64::consts::TAU,
            dx in -100.0f64..100.0, dy in -100.0f64..100.0, s in 0.01f64..100.0,
        ) {
            let l = [[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]];
            let (c, sn) = (theta.cos(), theta.sin());
            let moved: Vec<[f64; 2]> = l.iter().map(|p| [c * p[0] - sn * p[1] + dx, sn * p[0] + c * p[1] + dy]).collect();
            let scaled: Vec<[f64; 2]> = l.iter().map(|p| [s * p[0], s * p[1]]).collect();
            let a0 = Polygon::from_coords(&l).unwrap().area();
            prop_assert!((Polygon::from_coords(&moved).unwrap().area() - a0).abs() < 1e-10 * a0.max(1.0) * (1.0 + dx.abs() + dy.abs()));
            prop_assert!((Polygon::from_coords(&scaled).unwrap().area() - s * s * a0).abs() < 1e-12 * s * s * a0);
        }
    }
}
