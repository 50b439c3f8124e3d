//! Conforming triangulations of simple polygons over user-supplied
//! scattered points, and the mesh quantities used by the error and
//! Marcinkiewicz–Zygmund estimates.

use std::collections::HashMap;

use serde::Serialize;

use crate::delaunay::constrained_delaunay;
use crate::error::{Error, Result};
use crate::geometry::{bbox, on_segment, orient2d, segments_intersect, Location, Point2, Polygon, Triangle};

/// Relative closeness (to the bounding-box diagonal) below which two
/// points are considered duplicates.
pub const DUPLICATE_TOL: f64 = 1e-12;

/// A polygon plus extra points strictly inside it. The polygon vertices are
/// part of the point set.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteredSet {
    polygon: Polygon,
    interior: Vec<Point2>,
}

impl ScatteredSet {
    pub fn new(polygon: Polygon, interior: Vec<Point2>) -> Result<Self> {
        if interior.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        for &p in &interior {
            match polygon.locate(p) {
                Location::Inside => {}
                Location::OnBoundary => return Err(Error::PointOnBoundary { point: p }),
                Location::Outside => return Err(Error::PointOutside { point: p }),
            }
        }
        let set = Self { polygon, interior };
        if let Some(point) = find_duplicate(&set.points()) {
            return Err(Error::DuplicatePoint { point });
        }
        Ok(set)
    }

    /// Just the polygon vertices.
    pub fn boundary_only(polygon: Polygon) -> Self {
        Self {
            polygon,
            interior: Vec::new(),
        }
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn interior(&self) -> &[Point2] {
        &self.interior
    }

    /// Polygon vertices first, then the interior points.
    pub fn points(&self) -> Vec<Point2> {
        self.polygon.vertices().iter().chain(&self.interior).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.polygon.len() + self.interior.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn find_duplicate(points: &[Point2]) -> Option<Point2> {
    let (lo, hi) = bbox(points);
    let tol = DUPLICATE_TOL * lo.dist(&hi);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x));
    for (n, &i) in order.iter().enumerate() {
        for &j in &order[n + 1..] {
            if points[j].x - points[i].x > tol {
                break;
            }
            if points[i].dist(&points[j]) <= tol {
                return Some(points[j]);
            }
        }
    }
    None
}

/// `(|△|, #△, γ_△)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshMetrics {
    /// Longest edge over all triangles.
    pub size: f64,
    pub count: usize,
    /// `size / inradius` of the smallest-area triangle.
    pub gamma: f64,
}

/// Triangles over a fixed vertex set, counter-clockwise index triples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mesh {
    vertices: Vec<Point2>,
    triangles: Vec<[usize; 3]>,
    #[serde(skip)]
    domain: Polygon,
}

impl Mesh {
    /// Builds a mesh from raw parts, checking orientation and index range.
    /// The domain boundary is recovered from the edges used only once.
    pub fn from_parts(vertices: Vec<Point2>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        if triangles.is_empty() {
            return Err(Error::DegenerateInput("mesh has no triangles".into()));
        }
        for t in &triangles {
            if t.iter().any(|&i| i >= vertices.len()) {
                return Err(Error::InvalidArgument(format!("triangle {t:?} indexes past the vertex list")));
            }
            let [a, b, c] = t.map(|i| vertices[i]);
            if orient2d(a, b, c) <= 0.0 {
                return Err(Error::InvalidArgument(format!("triangle {t:?} is not counter-clockwise")));
            }
        }
        let domain = boundary_loop(&vertices, &triangles)?;
        Ok(Self {
            vertices,
            triangles,
            domain,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// The polygon covered by the mesh.
    pub fn domain(&self) -> &Polygon {
        &self.domain
    }

    pub fn triangle(&self, i: usize) -> Triangle {
        let [a, b, c] = self.triangles[i].map(|v| self.vertices[v]);
        Triangle::new(a, b, c).expect("mesh triangles are validated on construction")
    }

    pub fn iter_triangles(&self) -> impl Iterator<Item = Triangle> + '_ {
        (0..self.triangles.len()).map(|i| self.triangle(i))
    }

    pub fn count(&self) -> usize {
        self.triangles.len()
    }

    pub fn size(&self) -> f64 {
        self.iter_triangles().map(|t| t.longest_edge()).fold(0.0, f64::max)
    }

    pub fn total_area(&self) -> f64 {
        crate::sum::compensated_sum(self.iter_triangles().map(|t| t.area()))
    }

    pub fn metrics(&self) -> MeshMetrics {
        mesh_metrics(self)
    }

    pub fn refine_uniform(&self, levels: usize) -> Mesh {
        refine_uniform(self, levels)
    }

    /// Exhaustive pairwise check that any two triangles meet in nothing, a
    /// shared vertex, or a full shared edge. Also requires every vertex to
    /// be used.
    pub fn check_conforming(&self) -> std::result::Result<(), String> {
        let mut used = vec![false; self.vertices.len()];
        for t in &self.triangles {
            for &v in t {
                used[v] = true;
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(format!("vertex {v} is not used by any triangle"));
        }
        let boxes: Vec<(Point2, Point2)> = self
            .triangles
            .iter()
            .map(|t| bbox(&t.map(|i| self.vertices[i])))
            .collect();
        let mut order: Vec<usize> = (0..self.triangles.len()).collect();
        order.sort_by(|&a, &b| boxes[a].0.x.total_cmp(&boxes[b].0.x));
        for (n, &i) in order.iter().enumerate() {
            for &j in &order[n + 1..] {
                if boxes[j].0.x > boxes[i].1.x {
                    break;
                }
                if boxes[j].0.y > boxes[i].1.y || boxes[j].1.y < boxes[i].0.y {
                    continue;
                }
                self.check_pair(i, j)?;
            }
        }
        Ok(())
    }

    fn check_pair(&self, i: usize, j: usize) -> std::result::Result<(), String> {
        let (ti, tj) = (self.triangles[i], self.triangles[j]);
        let shared = ti.iter().filter(|v| tj.contains(v)).count();
        if shared == 3 {
            return Err(format!("triangles {i} and {j} coincide"));
        }
        let p = |v: usize| self.vertices[v];
        // vertices of one triangle must not touch the other unless shared
        for (a, b, ia, ib) in [(ti, tj, i, j), (tj, ti, j, i)] {
            let tri = b.map(p);
            for &v in &a {
                if b.contains(&v) {
                    continue;
                }
                let q = p(v);
                let inside = orient2d(tri[0], tri[1], q) >= 0.0
                    && orient2d(tri[1], tri[2], q) >= 0.0
                    && orient2d(tri[2], tri[0], q) >= 0.0;
                if inside {
                    return Err(format!("vertex {v} of triangle {ia} touches triangle {ib}"));
                }
            }
        }
        for e in 0..3 {
            let (a, b) = (ti[e], ti[(e + 1) % 3]);
            for f in 0..3 {
                let (c, d) = (tj[f], tj[(f + 1) % 3]);
                let common = [a, b].iter().filter(|v| [c, d].contains(v)).count();
                match common {
                    2 => continue,
                    1 => {
                        // sharing one endpoint: only collinear overlap is illegal
                        let (s, x, y) = if a == c {
                            (a, b, d)
                        } else if a == d {
                            (a, b, c)
                        } else if b == c {
                            (b, a, d)
                        } else {
                            (b, a, c)
                        };
                        if orient2d(p(s), p(x), p(y)) == 0.0
                            && (on_segment(p(s), p(x), p(y)) || on_segment(p(s), p(y), p(x)))
                        {
                            return Err(format!("edges of triangles {i} and {j} overlap"));
                        }
                    }
                    _ => {
                        if segments_intersect(p(a), p(b), p(c), p(d)) {
                            return Err(format!("edges of triangles {i} and {j} intersect"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

// Walks the edges used by exactly one triangle; drops exactly collinear
// vertices so refined meshes map back to the original polygon.
fn boundary_loop(vertices: &[Point2], triangles: &[[usize; 3]]) -> Result<Polygon> {
    let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
    for t in triangles {
        for e in 0..3 {
            *directed.entry((t[e], t[(e + 1) % 3])).or_default() += 1;
        }
    }
    let mut next: HashMap<usize, usize> = HashMap::new();
    for (&(a, b), &count) in &directed {
        if count > 1 {
            return Err(Error::InvalidArgument(format!("edge ({a},{b}) used twice in the same direction")));
        }
        if !directed.contains_key(&(b, a)) && next.insert(a, b).is_some() {
            return Err(Error::InvalidArgument(format!("boundary is not a single loop at vertex {a}")));
        }
    }
    let start = *next
        .keys()
        .min()
        .ok_or_else(|| Error::InvalidArgument("mesh has no boundary".into()))?;
    let mut loop_ = vec![start];
    let mut cur = next[&start];
    while cur != start {
        loop_.push(cur);
        if loop_.len() > next.len() {
            return Err(Error::InvalidArgument("boundary loop does not close".into()));
        }
        cur = *next
            .get(&cur)
            .ok_or_else(|| Error::InvalidArgument(format!("boundary breaks at vertex {cur}")))?;
    }
    if loop_.len() != next.len() {
        return Err(Error::InvalidArgument("mesh boundary has several loops (holes are unsupported)".into()));
    }
    let pts: Vec<Point2> = loop_.iter().map(|&i| vertices[i]).collect();
    let n = pts.len();
    let kept: Vec<Point2> = (0..n)
        .filter(|&i| orient2d(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]) != 0.0)
        .map(|i| pts[i])
        .collect();
    Polygon::new(kept)
}

/// Constrained Delaunay triangulation over exactly the scattered points.
pub fn triangulate(s: &ScatteredSet) -> Result<Mesh> {
    let points = s.points();
    let area = s.polygon().area();
    let (lo, hi) = bbox(&points);
    if area.is_nan() || area <= 1e-14 * lo.dist(&hi).powi(2) {
        return Err(Error::DegenerateInput("polygon has no area".into()));
    }
    let triangles = constrained_delaunay(&points, s.polygon().len())?;
    let mesh = Mesh {
        vertices: points,
        triangles,
        domain: s.polygon().clone(),
    };
    let total = mesh.total_area();
    if (total - area).abs() > 1e-10 * area {
        return Err(Error::Triangulation(format!(
            "triangle areas sum to {total}, polygon area is {area}"
        )));
    }
    if mesh.triangles.iter().flatten().collect::<std::collections::HashSet<_>>().len() != mesh.vertices.len() {
        return Err(Error::Triangulation("some points are not mesh vertices".into()));
    }
    Ok(mesh)
}

pub fn mesh_metrics(m: &Mesh) -> MeshMetrics {
    let tris: Vec<Triangle> = m.iter_triangles().collect();
    let size = tris.iter().map(|t| t.longest_edge()).fold(0.0, f64::max);
    let smallest = tris
        .iter()
        .min_by(|a, b| a.area().total_cmp(&b.area()))
        .expect("mesh has triangles");
    MeshMetrics {
        size,
        count: tris.len(),
        gamma: size / smallest.inradius(),
    }
}

/// Splits every triangle into four through its edge midpoints, `levels`
/// times. Old vertices keep their indices; midpoints are appended.
pub fn refine_uniform(m: &Mesh, levels: usize) -> Mesh {
    let mut vertices = m.vertices.clone();
    let mut triangles = m.triangles.clone();
    for _ in 0..levels {
        let mut mids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(4 * triangles.len());
        for &[a, b, c] in &triangles {
            let mut mid = |u: usize, v: usize| {
                *mids.entry((u.min(v), u.max(v))).or_insert_with(|| {
                    vertices.push(vertices[u].midpoint(&vertices[v]));
                    vertices.len() - 1
                })
            };
            let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
            next.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [bc, ca, ab]]);
        }
        triangles = next;
    }
    Mesh {
        vertices,
        triangles,
        domain: m.domain.clone(),
    }
}
