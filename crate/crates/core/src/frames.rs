//! Gram matrices of Seidel matrices, frame vectors, equiangular tight frame
//! verification, and the bounds on equiangular line systems.
//!
//! For a Seidel matrix `S` with least eigenvalue `-λ`, `G = I + S/λ` is
//! positive semidefinite with unit diagonal and off-diagonal modulus
//! `1/λ`; its factorization `G = U*U` gives unit vectors with that common
//! coherence.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};
use crate::seidel::SeidelMatrix;

pub const DEFAULT_RANK_TOL: f64 = 1e-8;
pub const DEFAULT_ETF_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub entries: ComplexMatrix,
    /// `-λ_min` of the Seidel matrix the Gram matrix was built from.
    pub seidel_scale: f64,
    /// Common off-diagonal modulus, `1 / seidel_scale`.
    pub coherence: f64,
    /// Eigenvalues of `entries`, ascending.
    pub eigenvalues: Vec<f64>,
    pub rank: usize,
    pub rank_tol: f64,
    /// Eigensolver residual on the Seidel matrix.
    pub eigen_residual: f64,
    pub seidel_norm: f64,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.dim()
    }
}

fn rank_threshold(values: &[f64], n: usize, rank_tol: f64) -> f64 {
    let top = values.iter().copied().fold(0.0, f64::max);
    rank_tol * n as f64 * top.max(1.0)
}

/// `G = I + S/α` with `α = -λ_min(S)`.
pub fn gram_from_seidel(s: &SeidelMatrix) -> Result<GramMatrix> {
    gram_from_seidel_with_tol(s, DEFAULT_RANK_TOL)
}

pub fn gram_from_seidel_with_tol(s: &SeidelMatrix, rank_tol: f64) -> Result<GramMatrix> {
    let n = s.dim();
    if n < 2 {
        return Err(Error::Domain("Gram matrix needs n >= 2".into()));
    }
    let sm = s.to_complex();
    let eig = hermitian_eigen(&sm)?;
    let alpha = -eig.values[0];
    let mut entries = sm.scale(1.0 / alpha);
    for i in 0..n {
        entries[(i, i)] = Complex64::new(1.0, 0.0);
    }
    let eigenvalues: Vec<f64> = eig.values.iter().map(|l| 1.0 + l / alpha).collect();
    let threshold = rank_threshold(&eigenvalues, n, rank_tol);
    let rank = eigenvalues.iter().filter(|&&v| v > threshold).count();
    Ok(GramMatrix {
        entries,
        seidel_scale: alpha,
        coherence: 1.0 / alpha,
        eigenvalues,
        rank,
        rank_tol,
        eigen_residual: eig.max_residual(&sm),
        seidel_norm: eig.spectral_norm(),
    })
}

/// Wraps an arbitrary self-adjoint matrix as a Gram matrix; the coherence is
/// the largest off-diagonal modulus.
pub fn gram_from_matrix(entries: ComplexMatrix, rank_tol: f64) -> Result<GramMatrix> {
    let n = entries.dim();
    let eig = hermitian_eigen(&entries)?;
    let threshold = rank_threshold(&eig.values, n, rank_tol);
    let rank = eig.values.iter().filter(|&&v| v > threshold).count();
    let mut coherence: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                coherence = coherence.max(entries[(i, j)].norm());
            }
        }
    }
    Ok(GramMatrix {
        seidel_scale: 1.0 / coherence,
        coherence,
        eigenvalues: eig.values,
        rank,
        rank_tol,
        eigen_residual: 0.0,
        seidel_norm: 0.0,
        entries,
    })
}

/// Unit vectors `z_1..z_n` in ℂ^k.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameSystem {
    pub k: usize,
    pub alpha: f64,
    pub vectors: Vec<Vec<Complex64>>,
}

impl FrameSystem {
    pub fn new(k: usize, alpha: f64, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != k) {
            return Err(Error::DimensionMismatch { expected: k, found: v.len() });
        }
        Ok(FrameSystem { k, alpha, vectors })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `⟨z_i, z_j⟩`, conjugate-linear in the first argument.
    pub fn inner(&self, i: usize, j: usize) -> Complex64 {
        self.vectors[i].iter().zip(&self.vectors[j]).map(|(a, b)| a.conj() * b).sum()
    }

    /// Matrix of inner products.
    pub fn gram(&self) -> ComplexMatrix {
        let n = self.len();
        let mut g = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.inner(i, j);
            }
        }
        g
    }

    /// Frame operator `Σ z_i z_i*` (k × k).
    pub fn frame_operator(&self) -> ComplexMatrix {
        let mut f = ComplexMatrix::zeros(self.k);
        for z in &self.vectors {
            for r in 0..self.k {
                for c in 0..self.k {
                    f[(r, c)] += z[r] * z[c].conj();
                }
            }
        }
        f
    }
}

/// Factors `G = U*U` through its nonzero eigenpairs; column `i` of `U` is `z_i`.
pub fn frame_vectors(g: &GramMatrix) -> Result<FrameSystem> {
    let n = g.dim();
    let eig = hermitian_eigen(&g.entries)?;
    let threshold = rank_threshold(&eig.values, n, g.rank_tol);
    if let Some(&v) = eig.values.iter().find(|&&v| v < -threshold) {
        return Err(Error::Indefinite(v));
    }
    let keep: Vec<usize> = (0..n).filter(|&r| eig.values[r] > threshold).collect();
    if keep.is_empty() {
        return Err(Error::Domain("Gram matrix has rank 0".into()));
    }
    let k = keep.len();
    let mut vectors = vec![vec![Complex64::new(0.0, 0.0); k]; n];
    for (row, &r) in keep.iter().enumerate() {
        let col = eig.vector(r);
        // Gauge: first nonzero coordinate of each eigenvector real and positive.
        let phase =
            col.iter().find(|z| z.norm() > 1e-12).map(|z| z.conj() / z.norm()).unwrap_or(Complex64::new(1.0, 0.0));
        let root = eig.values[r].sqrt();
        for i in 0..n {
            vectors[i][row] = (col[i] * phase).conj() * root;
        }
    }
    Ok(FrameSystem { k, alpha: g.coherence, vectors })
}

/// Largest entry of `U*U - G`.
pub fn reconstruction_residual(f: &FrameSystem, g: &GramMatrix) -> f64 {
    f.gram().max_abs_diff(&g.entries)
}

/// `sqrt((n-k) / (k(n-1)))`.
pub fn welch_bound(n: usize, k: usize) -> Result<f64> {
    let r = welch_bound_squared(n, k)?;
    Ok((*r.numer() as f64 / *r.denom() as f64).sqrt())
}

/// The square of the Welch bound as an exact fraction.
pub fn welch_bound_squared(n: usize, k: usize) -> Result<Rational64> {
    if k == 0 || n < 2 || n < k {
        return Err(Error::Domain(format!("Welch bound needs n >= k >= 1 and n >= 2, got n={n}, k={k}")));
    }
    Ok(Rational64::new((n - k) as i64, (k * (n - 1)) as i64))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EtfReport {
    pub n: usize,
    pub k: usize,
    pub tol: f64,
    pub unit_norm: bool,
    pub max_norm_error: f64,
    pub equiangular: bool,
    /// Midpoint of the smallest and largest off-diagonal moduli.
    pub alpha: f64,
    pub alpha_spread: f64,
    pub tight: bool,
    pub frame_constant: f64,
    /// `max |Σ z_i z_i* - (n/k) I|`.
    pub tightness_residual: f64,
    /// `max |G² - (n/k) G|`, the same condition seen through the Gram matrix.
    pub gram_square_residual: f64,
    pub tight_via_gram: bool,
    pub welch_bound: Option<f64>,
    pub welch_equality: bool,
    pub is_etf: bool,
}

/// Checks unit norms, equiangularity, tightness and Welch-bound equality.
pub fn verify_etf(f: &FrameSystem, tol: f64) -> EtfReport {
    let n = f.len();
    let k = f.k;
    let g = f.gram();
    let max_norm_error = (0..n).map(|i| (g[(i, i)].re.sqrt() - 1.0).abs()).fold(0.0, f64::max);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..n {
        for j in i + 1..n {
            let a = g[(i, j)].norm();
            lo = lo.min(a);
            hi = hi.max(a);
        }
    }
    if n < 2 {
        lo = 0.0;
    }
    let alpha = (lo + hi) / 2.0;
    let alpha_spread = hi - lo;

    let frame_constant = if k == 0 { f64::INFINITY } else { n as f64 / k as f64 };
    let target = ComplexMatrix::identity(k).scale(frame_constant);
    let tightness_residual = f.frame_operator().max_abs_diff(&target);
    let gram_square_residual = g.matmul(&g).max_abs_diff(&g.scale(frame_constant));
    let welch = welch_bound(n, k).ok();
    let welch_equality = welch.is_some_and(|w| (alpha - w).abs() <= tol);

    let unit_norm = max_norm_error <= tol;
    let equiangular = alpha_spread / 2.0 <= tol;
    let tight = tightness_residual <= tol;
    EtfReport {
        n,
        k,
        tol,
        unit_norm,
        max_norm_error,
        equiangular,
        alpha,
        alpha_spread,
        tight,
        frame_constant,
        tightness_residual,
        gram_square_residual,
        tight_via_gram: gram_square_residual <= tol,
        welch_bound: welch,
        welch_equality,
        is_etf: unit_norm && equiangular && tight && welch_equality,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelativeBound {
    pub value: f64,
    pub holds: bool,
    pub equality: bool,
    /// Seidel spectrum forced by equality: `(-1/α, n-k)` and `((n-k)/(kα), k)`.
    pub predicted_spectrum: Option<[(f64, usize); 2]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
    pub absolute_bound: usize,
    pub absolute_holds: bool,
    pub absolute_slack: i64,
    /// `None` when `α⁻² ≤ k`, where the relative bound does not apply.
    pub relative: Option<RelativeBound>,
    pub welch_bound: Option<f64>,
}

/// Absolute bound `n ≤ k²` and, when `α⁻² > k`, the relative bound
/// `n ≤ (k - kα²) / (1 - kα²)`.
pub fn bound_report(n: usize, k: usize, alpha: f64) -> Result<BoundReport> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Domain(format!("coherence must lie in [0, 1), got {alpha}")));
    }
    if k == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    let kf = k as f64;
    let a2 = alpha * alpha;
    let relative = (kf * a2 < 1.0).then(|| {
        let value = (kf - kf * a2) / (1.0 - kf * a2);
        let equality = (n as f64 - value).abs() <= 1e-9;
        let predicted_spectrum =
            (equality && alpha > 0.0 && n >= k).then(|| [(-1.0 / alpha, n - k), ((n - k) as f64 / (kf * alpha), k)]);
        RelativeBound { value, holds: n as f64 <= value + 1e-9, equality, predicted_spectrum }
    });
    Ok(BoundReport {
        n,
        k,
        alpha,
        absolute_bound: k * k,
        absolute_holds: n <= k * k,
        absolute_slack: (k * k) as i64 - n as i64,
        relative,
        welch_bound: welch_bound(n, k).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn etf96_gram_and_frame() {
        let g = gram_from_seidel(&data::etf96_matrix()).unwrap();
        assert!((g.seidel_scale - 4.0).abs() < 1e-12);
        assert!((g.coherence - 0.25).abs() < 1e-12);
        assert_eq!(g.rank, 6);
        for (i, v) in g.eigenvalues.iter().enumerate() {
            let want = if i < 3 { 0.0 } else { 1.5 };
            assert!((v - want).abs() < 1e-12);
        }
        let f = frame_vectors(&g).unwrap();
        assert_eq!((f.len(), f.k), (9, 6));
        assert!(reconstruction_residual(&f, &g) <= 1e-8);
        let r = verify_etf(&f, 1e-8);
        assert!(r.is_etf, "{r:?}");
        assert!((r.alpha - 0.25).abs() < 1e-9);
        assert!((r.frame_constant - 1.5).abs() < 1e-15);
        assert!(r.tight_via_gram);
    }

    #[test]
    fn all_ones_gram_is_rank_one() {
        let g = gram_from_seidel(&SeidelMatrix::all_ones(2, 3).unwrap()).unwrap();
        assert!((g.seidel_scale - 1.0).abs() < 1e-12);
        assert_eq!(g.rank, 1);
        let f = frame_vectors(&g).unwrap();
        assert_eq!(f.k, 1);
        for i in 0..3 {
            assert!((f.inner(0, i).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn star_gram_has_unit_diagonal() {
        let g = gram_from_seidel(&SeidelMatrix::from_graph(&data::star_graph())).unwrap();
        assert!(g.eigenvalues[0] > -1e-12);
        for i in 0..6 {
            assert_eq!(g.entries[(i, i)], Complex64::new(1.0, 0.0));
        }
        let f = frame_vectors(&g).unwrap();
        assert!(reconstruction_residual(&f, &g) <= 1e-8);
    }

    #[test]
    fn orthonormal_basis_is_trivial_etf() {
        let k = 4;
        let vectors =
            (0..k).map(|i| (0..k).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect()).collect();
        let r = verify_etf(&FrameSystem::new(k, 0.0, vectors).unwrap(), 1e-12);
        assert!(r.is_etf);
        assert_eq!(r.alpha, 0.0);
    }

    #[test]
    fn equiangular_but_not_tight() {
        // z1 = (1, 0), z2 = (0.6, 0.8), z3 = (0.6, 0.8 e^{iφ}) with φ chosen
        // so that |<z2, z3>| = 0.6 as well; 0.6 exceeds the Welch bound 0.5.
        let phi = ((0.36f64 - 0.36 * 0.36 - 0.64 * 0.64) / (2.0 * 0.36 * 0.64)).acos();
        let v = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)],
            vec![Complex64::new(0.6, 0.0), Complex64::from_polar(0.8, phi)],
        ];
        let frame = FrameSystem::new(2, 0.6, v).unwrap();
        assert!((frame.inner(1, 2).norm() - 0.6).abs() < 1e-12);
        let r = verify_etf(&frame, 1e-9);
        assert!(r.unit_norm && r.equiangular);
        assert!((r.alpha - 0.6).abs() < 1e-12);
        assert_eq!(r.welch_bound, Some(0.5));
        assert!(!r.welch_equality && !r.tight && !r.is_etf);
    }

    #[test]
    fn welch_values() {
        assert!((welch_bound(9, 6).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(welch_bound(5, 5).unwrap(), 0.0);
        assert!((welch_bound(3, 2).unwrap() - 0.5).abs() < 1e-15);
        assert!(welch_bound(2, 3).is_err());
        for n in 2..20usize {
            for k in 1..=n {
                let w2 = welch_bound_squared(n, k).unwrap();
                assert_eq!(
                    w2 * Rational64::from_integer((k * (n - 1)) as i64),
                    Rational64::from_integer((n - k) as i64)
                );
            }
        }
    }

    #[test]
    fn bound_examples() {
        let r = bound_report(9, 6, 0.25).unwrap();
        assert!(r.absolute_holds && r.absolute_bound == 36);
        let rel = r.relative.unwrap();
        assert!((rel.value - 9.0).abs() < 1e-9 && rel.equality);
        let [(a, ma), (b, mb)] = rel.predicted_spectrum.unwrap();
        assert!((a + 4.0).abs() < 1e-12 && ma == 3);
        assert!((b - 2.0).abs() < 1e-12 && mb == 6);

        let r = bound_report(4, 2, 1.0 / 3f64.sqrt()).unwrap().relative.unwrap();
        assert!((r.value - 4.0).abs() < 1e-9 && r.equality);

        let r = bound_report(5, 6, 0.1).unwrap();
        let rel = r.relative.unwrap();
        assert!((rel.value - 5.94 / 0.94).abs() < 1e-12 && !rel.equality && rel.holds);

        assert!(bound_report(9, 6, 0.5).unwrap().relative.is_none());
        assert!(bound_report(9, 6, 1.0).is_err());
    }
}
