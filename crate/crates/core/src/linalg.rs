//! Small dense linear algebra: LU with partial pivoting, one step of
//! iterative refinement, and a Hager-style 1-norm condition estimate.

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)])
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn norm_1(&self) -> f64 {
        (0..self.n)
            .map(|c| (0..self.n).map(|r| self[(r, c)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.n + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.n + c]
    }
}

/// Packed `PA = LU` factorisation.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: DenseMatrix,
    perm: Vec<usize>,
    original: DenseMatrix,
}

/// Returned when a zero pivot is met.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singular;

impl Lu {
    pub fn factor(a: &DenseMatrix) -> Result<Self, Singular> {
        let n = a.size();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| lu[(x, col)].abs().total_cmp(&lu[(y, col)].abs()))
                .unwrap_or(col);
            if lu[(pivot, col)] == 0.0 || !lu[(pivot, col)].is_finite() {
                return Err(Singular);
            }
            if pivot != col {
                for c in 0..n {
                    lu.data.swap(pivot * n + c, col * n + c);
                }
                perm.swap(pivot, col);
            }
            let p = lu[(col, col)];
            for r in (col + 1)..n {
                let factor = lu[(r, col)] / p;
                lu[(r, col)] = factor;
                if factor != 0.0 {
                    for c in (col + 1)..n {
                        lu[(r, c)] -= factor * lu[(col, c)];
                    }
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            original: a.clone(),
        })
    }

    fn solve_raw(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.size();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let s: f64 = (0..r).map(|c| self.lu[(r, c)] * x[c]).sum();
            x[r] -= s;
        }
        for r in (0..n).rev() {
            let s: f64 = ((r + 1)..n).map(|c| self.lu[(r, c)] * x[c]).sum();
            x[r] = (x[r] - s) / self.lu[(r, r)];
        }
        x
    }

    // A^T x = b  with  A = P^T L U  =>  U^T L^T P x = b
    fn solve_transpose_raw(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.size();
        let mut z = b.to_vec();
        for r in 0..n {
            let s: f64 = (0..r).map(|c| self.lu[(c, r)] * z[c]).sum();
            z[r] = (z[r] - s) / self.lu[(r, r)];
        }
        for r in (0..n).rev() {
            let s: f64 = ((r + 1)..n).map(|c| self.lu[(c, r)] * z[c]).sum();
            z[r] -= s;
        }
        let mut x = vec![0.0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = z[i];
        }
        x
    }

    /// Solves `A x = b` with one step of iterative refinement.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = self.solve_raw(b);
        let r = residual(&self.original, &x, b);
        let dx = self.solve_raw(&r);
        x.iter_mut().zip(dx).for_each(|(xi, d)| *xi += d);
        x
    }

    /// Solves `A^T x = b` with one step of iterative refinement.
    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        let at = self.original.transpose();
        let mut x = self.solve_transpose_raw(b);
        let r = residual(&at, &x, b);
        let dx = self.solve_transpose_raw(&r);
        x.iter_mut().zip(dx).for_each(|(xi, d)| *xi += d);
        x
    }

    /// Estimate of `||A||_1 ||A^-1||_1` (Hager / Higham).
    pub fn condition_1(&self) -> f64 {
        let n = self.lu.size();
        let mut x = vec![1.0 / n as f64; n];
        let mut est = 0.0;
        for _ in 0..5 {
            let y = self.solve_raw(&x);
            let new_est: f64 = y.iter().map(|v| v.abs()).sum();
            let xi: Vec<f64> = y.iter().map(|&v| if v >= 0.0 { 1.0 } else { -1.0 }).collect();
            let z = self.solve_transpose_raw(&xi);
            let (jmax, zmax) = z
                .iter()
                .enumerate()
                .map(|(j, v)| (j, v.abs()))
                .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| a * b).sum();
            if new_est <= est || zmax <= ztx {
                est = est.max(new_est);
                break;
            }
            est = new_est;
            x = vec![0.0; n];
            x[jmax] = 1.0;
        }
        est * self.original.norm_1()
    }
}

/// `b - A x`, accumulated with compensated summation.
pub fn residual(a: &DenseMatrix, x: &[f64], b: &[f64]) -> Vec<f64> {
    (0..a.size())
        .map(|r| {
            let mut s = crate::sum::KahanSum::new();
            s.add(b[r]);
            for (aij, xj) in a.row(r).iter().zip(x) {
                s.add(-aij * xj);
            }
            s.value()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hilbert(n: usize) -> DenseMatrix {
        DenseMatrix::from_fn(n, |r, c| 1.0 / (r + c + 1) as f64)
    }

    #[test]
    fn solves_and_transposed_solves() {
        let a = DenseMatrix::from_fn(4, |r, c| if r == c { 4.0 } else { (r as f64 - c as f64) * 0.3 });
        let lu = Lu::factor(&a).unwrap();
        let x_true = [1.0, -2.0, 0.5, 3.0];
        let b = a.mul_vec(&x_true);
        let x = lu.solve(&b);
        let bt = a.transpose().mul_vec(&x_true);
        let xt = lu.solve_transpose(&bt);
        for i in 0..4 {
            assert!((x[i] - x_true[i]).abs() < 1e-14);
            assert!((xt[i] - x_true[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn pivoting_needed() {
        let a = DenseMatrix::from_fn(2, |r, c| [[0.0, 1.0], [1.0, 0.0]][r][c]);
        let x = Lu::factor(&a).unwrap().solve(&[2.0, 3.0]);
        assert_eq!(x, vec![3.0, 2.0]);
    }

    #[test]
    fn singular_detected() {
        let a = DenseMatrix::from_fn(3, |r, c| (r * c) as f64);
        assert_eq!(Lu::factor(&a).unwrap_err(), Singular);
    }

    #[test]
    fn condition_estimate_is_reasonable() {
        assert!((Lu::factor(&DenseMatrix::identity(5)).unwrap().condition_1() - 1.0).abs() < 1e-12);
        // exact 1-norm condition of the 6x6 Hilbert matrix is about 2.9e7
        let c = Lu::factor(&hilbert(6)).unwrap().condition_1();
        assert!(c > 1e7 && c < 1e8, "{c}");
    }
}
