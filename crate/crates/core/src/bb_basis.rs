//! Bernstein–Bézier polynomials of degree `d` on a triangle.
//!
//! Multi-indices `(i, j, k)` with `i + j + k = d` are always enumerated in
//! [`IndexOrder`]: `i` descending, then `j` descending. Vertex `v1` (index
//! `(d, 0, 0)`) therefore comes first and `v3` last.

use crate::error::{Error, Result};
use crate::geometry::{Point2, Triangle};

/// Largest supported degree. Factorials up to `12!` are exact in `f64`.
pub const MAX_DEGREE: usize = 12;

const FACTORIALS: [f64; MAX_DEGREE + 1] = {
    let mut table = [1.0; MAX_DEGREE + 1];
    let mut n = 1;
    while n <= MAX_DEGREE {
        table[n] = table[n - 1] * n as f64;
        n += 1;
    }
    table
};

pub(crate) fn check_degree(d: usize) -> Result<()> {
    if d < 1 {
        Err(Error::BadDegree(d))
    } else if d > MAX_DEGREE {
        Err(Error::DegreeTooLarge(d))
    } else {
        Ok(())
    }
}

/// `(d+1)(d+2)/2`, the dimension of bivariate polynomials of total degree `d`.
pub const fn dim(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// `C(n, 2)`-style binomial used for the closed-form basis integral.
pub fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl MultiIndex {
    pub const fn new(i: usize, j: usize, k: usize) -> Self {
        Self { i, j, k }
    }

    pub const fn degree(&self) -> usize {
        self.i + self.j + self.k
    }

    /// `d! / (i! j! k!)`.
    pub fn multinomial(&self) -> f64 {
        FACTORIALS[self.degree()] / (FACTORIALS[self.i] * FACTORIALS[self.j] * FACTORIALS[self.k])
    }
}

/// All multi-indices of one degree, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexOrder {
    degree: usize,
    indices: Vec<MultiIndex>,
}

impl IndexOrder {
    pub fn new(d: usize) -> Result<Self> {
        check_degree(d)?;
        let indices = (0..=d)
            .rev()
            .flat_map(|i| (0..=d - i).rev().map(move |j| MultiIndex::new(i, j, d - i - j)))
            .collect();
        Ok(Self { degree: d, indices })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn as_slice(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiIndex> {
        self.indices.iter()
    }

    /// Position of `idx` in the ordering.
    pub fn position(&self, idx: MultiIndex) -> Option<usize> {
        if idx.degree() != self.degree {
            return None;
        }
        // rows before i: sum over i' > i of (d - i' + 1)
        let d = self.degree;
        let before: usize = ((idx.i + 1)..=d).map(|ip| d - ip + 1).sum();
        Some(before + (d - idx.i - idx.j))
    }
}

impl<'a> IntoIterator for &'a IndexOrder {
    type Item = &'a MultiIndex;
    type IntoIter = std::slice::Iter<'a, MultiIndex>;

    fn into_iter(self) -> Self::IntoIter {
        self.indices.iter()
    }
}

pub fn index_order(d: usize) -> Result<IndexOrder> {
    IndexOrder::new(d)
}

/// Evaluates `B_ijk` from precomputed barycentric coordinates.
#[inline]
pub fn eval_basis_bary(idx: MultiIndex, b: [f64; 3]) -> f64 {
    idx.multinomial() * b[0].powi(idx.i as i32) * b[1].powi(idx.j as i32) * b[2].powi(idx.k as i32)
}

/// `B_ijk(p) = d!/(i!j!k!) b1^i b2^j b3^k`.
pub fn eval_basis(t: &Triangle, d: usize, idx: MultiIndex, p: Point2) -> Result<f64> {
    check_degree(d)?;
    if idx.degree() != d {
        return Err(Error::IndexDegreeMismatch {
            i: idx.i,
            j: idx.j,
            k: idx.k,
            degree: d,
        });
    }
    Ok(eval_basis_bary(idx, t.barycentric(p).as_array()))
}

/// Domain points `(i v1 + j v2 + k v3) / d`, in index order.
pub fn domain_points(t: &Triangle, d: usize) -> Result<Vec<Point2>> {
    let order = IndexOrder::new(d)?;
    let df = d as f64;
    Ok(order
        .iter()
        .map(|m| t.point_at([m.i as f64 / df, m.j as f64 / df, m.k as f64 / df]))
        .collect())
}

/// `∫_T B_ijk = A_T / C(d+2, 2)`, the same for every index.
pub fn basis_integral(t: &Triangle, d: usize) -> Result<f64> {
    check_degree(d)?;
    Ok(t.area() / binomial(d + 2, 2))
}

/// A polynomial in B-form: coefficients against the BB basis of `triangle`.
#[derive(Debug, Clone, PartialEq)]
pub struct BForm {
    triangle: Triangle,
    order: IndexOrder,
    coeffs: Vec<f64>,
}

impl BForm {
    pub fn new(triangle: Triangle, d: usize, coeffs: Vec<f64>) -> Result<Self> {
        let order = IndexOrder::new(d)?;
        if coeffs.len() != order.len() {
            return Err(Error::LengthMismatch {
                expected: order.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self {
            triangle,
            order,
            coeffs,
        })
    }

    pub fn degree(&self) -> usize {
        self.order.degree()
    }

    pub fn triangle(&self) -> &Triangle {
        &self.triangle
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, p: Point2) -> f64 {
        let b = self.triangle.barycentric(p).as_array();
        self.order
            .iter()
            .zip(&self.coeffs)
            .map(|(&idx, c)| c * eval_basis_bary(idx, b))
            .sum()
    }
}

pub fn eval_bform(f: &BForm, p: Point2) -> f64 {
    f.eval(p)
}
