//! Constrained Delaunay triangulation of a simple polygon over a fixed
//! point set (no Steiner points).
//!
//! 1. Bowyer–Watson insertion of every point, in index order, inside a
//!    large super-triangle.
//! 2. Each polygon edge missing from the triangulation is recovered by
//!    flipping the edges that cross it.
//! 3. Lawson flips restore the Delaunay property away from constrained edges.
//! 4. Triangles reachable from the super-triangle without crossing a
//!    constrained edge are discarded.
//!
//! All orientation and in-circle decisions use exact-sign predicates, so
//! the flip loops cannot cycle on rounding errors.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::geometry::{bbox, incircle, orient2d, segments_cross, Point2};

struct Builder {
    pts: Vec<Point2>,
    tris: Vec<[usize; 3]>,
    alive: Vec<bool>,
    /// directed edge (a, b) -> triangle having it in counter-clockwise order
    edges: HashMap<(usize, usize), usize>,
}

impl Builder {
    fn add_tri(&mut self, v: [usize; 3]) -> usize {
        debug_assert!(orient2d(self.pts[v[0]], self.pts[v[1]], self.pts[v[2]]) > 0.0);
        let id = self.tris.len();
        self.tris.push(v);
        self.alive.push(true);
        for e in 0..3 {
            self.edges.insert((v[e], v[(e + 1) % 3]), id);
        }
        id
    }

    fn kill_tri(&mut self, id: usize) {
        let v = self.tris[id];
        self.alive[id] = false;
        for e in 0..3 {
            if self.edges.get(&(v[e], v[(e + 1) % 3])) == Some(&id) {
                self.edges.remove(&(v[e], v[(e + 1) % 3]));
            }
        }
    }

    /// Triangle on the other side of directed edge `(a, b)`.
    fn across(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.get(&(b, a)).copied()
    }

    fn locate(&self, p: Point2) -> Option<usize> {
        (0..self.tris.len()).find(|&t| {
            self.alive[t] && {
                let [a, b, c] = self.tris[t].map(|i| self.pts[i]);
                orient2d(a, b, p) >= 0.0 && orient2d(b, c, p) >= 0.0 && orient2d(c, a, p) >= 0.0
            }
        })
    }

    fn in_circumcircle(&self, t: usize, p: Point2) -> bool {
        let [a, b, c] = self.tris[t].map(|i| self.pts[i]);
        incircle(a, b, c, p) > 0.0
    }

    fn insert(&mut self, pi: usize) -> Result<()> {
        let p = self.pts[pi];
        let start = self
            .locate(p)
            .ok_or_else(|| Error::Triangulation(format!("point {pi} outside the super-triangle")))?;
        let mut bad = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            let v = self.tris[t];
            for e in 0..3 {
                if let Some(nb) = self.across(v[e], v[(e + 1) % 3]) {
                    if !bad.contains(&nb) && self.in_circumcircle(nb, p) {
                        bad.insert(nb);
                        stack.push(nb);
                    }
                }
            }
        }
        let mut cavity = Vec::new();
        let mut bad_sorted: Vec<usize> = bad.iter().copied().collect();
        bad_sorted.sort_unstable();
        for &t in &bad_sorted {
            let v = self.tris[t];
            for e in 0..3 {
                let (a, b) = (v[e], v[(e + 1) % 3]);
                let outside = self.across(a, b).is_none_or(|nb| !bad.contains(&nb));
                if outside {
                    cavity.push((a, b));
                }
            }
        }
        for &t in &bad_sorted {
            self.kill_tri(t);
        }
        for (a, b) in cavity {
            if orient2d(self.pts[a], self.pts[b], p) <= 0.0 {
                return Err(Error::Triangulation(format!(
                    "cavity of point {pi} is not star-shaped"
                )));
            }
            self.add_tri([a, b, pi]);
        }
        Ok(())
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains_key(&(a, b)) || self.edges.contains_key(&(b, a))
    }

    /// Flips undirected edge `{a, b}` shared by `(a, b, c)` and `(b, a, d)`
    /// into `{c, d}`. Returns `(c, d)`.
    fn flip(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let t1 = *self.edges.get(&(a, b))?;
        let t2 = *self.edges.get(&(b, a))?;
        let c = third(self.tris[t1], a, b);
        let d = third(self.tris[t2], b, a);
        self.kill_tri(t1);
        self.kill_tri(t2);
        self.add_tri([c, a, d]);
        self.add_tri([d, b, c]);
        Some((c, d))
    }

    fn opposite(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        let t1 = *self.edges.get(&(a, b))?;
        let t2 = *self.edges.get(&(b, a))?;
        Some((third(self.tris[t1], a, b), third(self.tris[t2], b, a)))
    }

    fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges
            .keys()
            .filter(|(a, b)| a < b || !self.edges.contains_key(&(*b, *a)))
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn enforce(&mut self, a: usize, b: usize) -> Result<Vec<(usize, usize)>> {
        let (pa, pb) = (self.pts[a], self.pts[b]);
        let mut queue: VecDeque<(usize, usize)> = self
            .undirected_edges()
            .into_iter()
            .filter(|&(u, v)| u != a && u != b && v != a && v != b)
            .filter(|&(u, v)| segments_cross(pa, pb, self.pts[u], self.pts[v]))
            .collect();
        let mut created = Vec::new();
        let mut stalls = 0usize;
        while let Some((u, v)) = queue.pop_front() {
            let (c, d) = self
                .opposite(u, v)
                .ok_or_else(|| Error::Triangulation(format!("edge ({u},{v}) lost during recovery")))?;
            let convex = segments_cross(self.pts[u], self.pts[v], self.pts[c], self.pts[d]);
            if !convex {
                queue.push_back((u, v));
                stalls += 1;
                if stalls > 4 * (queue.len() + 1) * (queue.len() + 1) {
                    return Err(Error::Triangulation(format!("could not recover edge ({a},{b})")));
                }
                continue;
            }
            stalls = 0;
            let (c, d) = self.flip(u, v).expect("edge checked above");
            let crosses = c != a && c != b && d != a && d != b && segments_cross(pa, pb, self.pts[c], self.pts[d]);
            if crosses {
                queue.push_back((c, d));
            } else {
                created.push((c, d));
            }
        }
        if !self.has_edge(a, b) {
            return Err(Error::Triangulation(format!("edge ({a},{b}) missing after recovery")));
        }
        Ok(created)
    }

    fn restore_delaunay(&mut self, fixed: &HashSet<(usize, usize)>, skip_vertex: impl Fn(usize) -> bool) {
        let mut stack: Vec<(usize, usize)> = self.undirected_edges();
        stack.reverse();
        let mut guard = 0usize;
        let limit = 100 * (self.tris.len() + 10) * (self.tris.len() + 10);
        while let Some((u, v)) = stack.pop() {
            guard += 1;
            if guard > limit {
                break;
            }
            if fixed.contains(&(u.min(v), u.max(v))) || skip_vertex(u) || skip_vertex(v) {
                continue;
            }
            let Some(t1) = self.edges.get(&(u, v)).copied() else {
                continue;
            };
            let Some((c, d)) = self.opposite(u, v) else {
                continue;
            };
            if skip_vertex(c) || skip_vertex(d) {
                continue;
            }
            if self.in_circumcircle(t1, self.pts[d]) {
                self.flip(u, v);
                stack.extend([(u, c), (c, v), (v, d), (d, u)].map(|(x, y)| (x.min(y), x.max(y))));
            }
        }
    }
}

fn third(t: [usize; 3], a: usize, b: usize) -> usize {
    t.into_iter().find(|&v| v != a && v != b).expect("triangle has three distinct vertices")
}

/// Triangulates the polygon whose boundary loop is `points[0..n_boundary]`
/// (counter-clockwise), with `points[n_boundary..]` strictly inside.
/// Returns counter-clockwise index triples.
pub(crate) fn constrained_delaunay(points: &[Point2], n_boundary: usize) -> Result<Vec<[usize; 3]>> {
    let n = points.len();
    let (lo, hi) = bbox(points);
    let extent = (hi.x - lo.x).max(hi.y - lo.y);
    if extent.is_nan() || extent <= 0.0 {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    let c = Point2::new(0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y));
    let k = 100.0 * extent;
    let mut pts = points.to_vec();
    pts.push(Point2::new(c.x - 2.0 * k, c.y - k));
    pts.push(Point2::new(c.x + 2.0 * k, c.y - k));
    pts.push(Point2::new(c.x, c.y + 2.0 * k));
    let mut b = Builder {
        pts,
        tris: Vec::new(),
        alive: Vec::new(),
        edges: HashMap::new(),
    };
    b.add_tri([n, n + 1, n + 2]);
    for i in 0..n {
        b.insert(i)?;
    }

    let constrained: HashSet<(usize, usize)> = (0..n_boundary)
        .map(|i| {
            let j = (i + 1) % n_boundary;
            (i.min(j), i.max(j))
        })
        .collect();
    for i in 0..n_boundary {
        let j = (i + 1) % n_boundary;
        if !b.has_edge(i, j) {
            b.enforce(i, j)?;
        }
    }
    b.restore_delaunay(&constrained, |v| v >= n);

    // flood the exterior from the super-triangle without crossing the boundary
    let mut exterior = vec![false; b.tris.len()];
    let mut queue: VecDeque<usize> = (0..b.tris.len())
        .filter(|&t| b.alive[t] && b.tris[t].iter().any(|&v| v >= n))
        .collect();
    for &t in &queue {
        exterior[t] = true;
    }
    while let Some(t) = queue.pop_front() {
        let v = b.tris[t];
        for e in 0..3 {
            let (x, y) = (v[e], v[(e + 1) % 3]);
            if constrained.contains(&(x.min(y), x.max(y))) {
                continue;
            }
            if let Some(nb) = b.across(x, y) {
                if !exterior[nb] {
                    exterior[nb] = true;
                    queue.push_back(nb);
                }
            }
        }
    }
    let mut out: Vec<[usize; 3]> = (0..b.tris.len())
        .filter(|&t| b.alive[t] && !exterior[t])
        .map(|t| canonical(b.tris[t]))
        .collect();
    out.sort_unstable();
    Ok(out)
}

// rotate so the smallest index comes first (orientation kept)
fn canonical(t: [usize; 3]) -> [usize; 3] {
    let m = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[m], t[(m + 1) % 3], t[(m + 2) % 3]]
}
