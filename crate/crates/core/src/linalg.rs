//! Small dense complex matrices and a cyclic Jacobi eigensolver for
//! self-adjoint input.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix in row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(ComplexMatrix { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        ComplexMatrix { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest |a_ij - conj(a_ji)| together with its location.
    pub fn hermitian_defect(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for i in 0..self.n {
            for j in 0..=i {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Spectral decomposition `M = V diag(values) V*` of a self-adjoint matrix.
#[derive(Clone, Debug)]
pub struct Eigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: ComplexMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.dim()).map(|i| self.vectors[(i, k)]).collect()
    }

    /// Spectral norm of the decomposed matrix.
    pub fn spectral_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Largest `‖M v - λ v‖` over all eigenpairs.
    pub fn max_residual(&self, m: &ComplexMatrix) -> f64 {
        (0..self.values.len())
            .map(|k| {
                let v = self.vector(k);
                let mv = m.mul_vec(&v);
                mv.iter().zip(&v).map(|(a, b)| (a - b * self.values[k]).norm_sqr()).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    }
}

const SELF_ADJOINT_TOL: f64 = 1e-9;
const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a self-adjoint matrix by cyclic complex Jacobi
/// rotations.
pub fn hermitian_eigen(input: &ComplexMatrix) -> Result<Eigen> {
    let n = input.dim();
    let (defect, i, j) = input.hermitian_defect();
    if defect > SELF_ADJOINT_TOL {
        return Err(Error::NotSelfAdjoint(i, j));
    }
    // Symmetrize so that rounding in the input cannot leak into the rotations.
    let mut a = input.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in 0..i {
            let avg = (input[(i, j)] + input[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 =
            (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).map(|(p, q)| a[(p, q)].norm_sqr()).sum::<f64>().sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, k)];
        }
    }
    Ok(Eigen { values, vectors })
}

/// Annihilates `a[p][q]` with the unitary `U = diag-phase · rotation` acting on
/// coordinates p and q, and accumulates `V ← V U`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let phase = apq / r; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // Columns of U restricted to (p, q).
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = -phase.conj() * s;
    let uqq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn swap_matrix() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        assert!(e.max_residual(&m) < 1e-13);
    }

    #[test]
    fn all_ones_minus_identity() {
        let rows: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| if i == j { 0.0 } else { 1.0 }).collect()).collect();
        let m = ComplexMatrix::from_real_rows(&rows).unwrap();
        let e = hermitian_eigen(&m).unwrap();
        for (got, want) in e.values.iter().zip([-1.0, -1.0, 2.0]) {
            assert!((got - want).abs() < 1e-13);
        }
    }

    #[test]
    fn complex_hermitian_residual_and_orthonormality() {
        let rows = vec![
            vec![c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5), c(0.3, 0.0)],
            vec![c(1.0, 1.0), c(-1.0, 0.0), c(0.2, 0.2), c(0.0, -2.0)],
            vec![c(0.0, -0.5), c(0.2, -0.2), c(0.5, 0.0), c(1.5, 0.5)],
            vec![c(0.3, 0.0), c(0.0, 2.0), c(1.5, -0.5), c(0.0, 0.0)],
        ];
        let m = ComplexMatrix::from_rows(&rows).unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!(e.max_residual(&m) <= 1e-12 * e.spectral_norm());
        let vh_v = e.vectors.adjoint().matmul(&e.vectors);
        assert!(vh_v.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-13);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let trace: f64 = (0..4).map(|i| m[(i, i)].re).sum();
        assert!((e.values.iter().sum::<f64>() - trace).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.5, 0.0), c(0.0, 0.0)]]).unwrap();
        assert_eq!(hermitian_eigen(&m).unwrap_err(), Error::NotSelfAdjoint(1, 0));
    }

    #[test]
    fn empty_and_scalar() {
        let e = hermitian_eigen(&ComplexMatrix::zeros(0)).unwrap();
        assert!(e.values.is_empty());
        let m = ComplexMatrix::from_real_rows(&[vec![3.5]]).unwrap();
        assert_eq!(hermitian_eigen(&m).unwrap().values, vec![3.5]);
    }
}
