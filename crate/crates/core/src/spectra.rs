//! Two-eigenvalue certificates, the neighborhood regularity test and the
//! strongly-regular-graph check for real two-graphs.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::cyclotomic::{CyclotomicInteger, CyclotomicRing};
use crate::error::{Error, Result};
use crate::seidel::{SeidelMatrix, SimpleGraph};

pub use crate::linalg::{hermitian_eigen, ComplexMatrix, Eigen};

/// Absolute gap separating numeric eigenvalue clusters.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Proof that `S² = μS + (n-1)I`, so `S` has exactly two eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCertificate {
    pub n: usize,
    /// `λ₁ + λ₂`, a real element of ℤ[ζ].
    pub mu: CyclotomicInteger,
    pub mu_value: f64,
    /// `λ₁ < λ₂`, roots of `x² - μx - (n-1)`.
    pub lambda: [f64; 2],
    /// Set when μ is a rational integer with square discriminant; the
    /// eigenvalues are then the integers in `lambda_exact`.
    pub exact: bool,
    pub lambda_exact: Option<[BigInt; 2]>,
    pub mult: [usize; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certification {
    Regular(SpectralCertificate),
    /// First pair `(i, j)`, `i < j`, where `(S²)_ij ≠ μ s_ij` (0-based).
    Refused {
        witness: (usize, usize),
    },
}

impl Certification {
    pub fn is_regular(&self) -> bool {
        matches!(self, Certification::Regular(_))
    }

    pub fn certificate(&self) -> Option<&SpectralCertificate> {
        match self {
            Certification::Regular(c) => Some(c),
            Certification::Refused { .. } => None,
        }
    }
}

/// `(S²)_ij · conj(s_ij)` as a histogram of root exponents, for `i != j`.
fn square_entry_over_s(s: &SeidelMatrix, i: usize, j: usize, counts: &mut [i64]) {
    let m = s.order();
    counts.iter_mut().for_each(|c| *c = 0);
    let back = (m - s.exponent(i, j)) % m;
    for k in 0..s.dim() {
        if k != i && k != j {
            counts[((s.exponent(i, k) + s.exponent(k, j) + back) % m) as usize] += 1;
        }
    }
}

/// Exact test that `s` has two distinct eigenvalues.
pub fn two_eigenvalue_certificate(s: &SeidelMatrix) -> Result<Certification> {
    let n = s.dim();
    if n < 2 {
        return Err(Error::Domain("certificate needs n >= 2".into()));
    }
    let ring = CyclotomicRing::new(s.order())?;
    let mut counts = vec![0i64; s.order() as usize];
    square_entry_over_s(s, 0, 1, &mut counts);
    let mu = ring.from_root_counts(&counts);
    if !mu.is_real() {
        return Ok(Certification::Refused { witness: (0, 1) });
    }
    for i in 0..n {
        for j in i + 1..n {
            square_entry_over_s(s, i, j, &mut counts);
            if ring.from_root_counts(&counts) != mu {
                return Ok(Certification::Refused { witness: (i, j) });
            }
        }
    }
    Ok(Certification::Regular(certificate_from_mu(n, mu)?))
}

fn certificate_from_mu(n: usize, mu: CyclotomicInteger) -> Result<SpectralCertificate> {
    let mu_value = mu.embed().re;
    let c = (n - 1) as f64;
    let disc = (mu_value * mu_value + 4.0 * c).sqrt();
    let mut lambda = [(mu_value - disc) / 2.0, (mu_value + disc) / 2.0];

    let mut lambda_exact = None;
    if let Some(u) = mu.to_integer() {
        let d2: BigInt = &u * &u + BigInt::from(4 * (n - 1));
        let d = d2.sqrt();
        if &d * &d == d2 {
            let lo: BigInt = (&u - &d) / 2;
            let hi: BigInt = (&u + &d) / 2;
            lambda = [lo.to_f64().unwrap_or(f64::NAN), hi.to_f64().unwrap_or(f64::NAN)];
            lambda_exact = Some([lo, hi]);
        }
    }

    // Trace zero: m1 λ1 + m2 λ2 = 0, m1 + m2 = n.
    let mult = match &lambda_exact {
        Some([lo, hi]) => {
            let num = BigInt::from(n) * hi;
            let den = hi - lo;
            if (&num % &den) != BigInt::from(0) || !num.is_positive() {
                return Err(Error::Internal(format!("multiplicity {num}/{den} is not a positive integer")));
            }
            let m1 = (num / den).to_usize().unwrap_or(0);
            [m1, n - m1.min(n)]
        }
        None => {
            let m1 = n as f64 * lambda[1] / (lambda[1] - lambda[0]);
            let r = m1.round();
            if (m1 - r).abs() > 1e-6 {
                return Err(Error::Internal(format!("multiplicity {m1} is not an integer")));
            }
            [r as usize, n - (r as usize).min(n)]
        }
    };
    if mult[0] == 0 || mult[1] == 0 {
        return Err(Error::Internal(format!("multiplicities {mult:?} are not positive")));
    }
    Ok(SpectralCertificate { n, mu, mu_value, exact: lambda_exact.is_some(), lambda, lambda_exact, mult })
}

/// Groups ascending eigenvalues whose neighbours differ by at most `tol`;
/// returns `(mean, count)` per group.
pub fn eigenvalue_clusters(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((sum, count, last)) if v - *last <= tol => {
                *sum += v;
                *count += 1;
                *last = v;
            }
            _ => out.push((v, 1, v)),
        }
    }
    out.into_iter().map(|(sum, count, _)| (sum / count as f64, count)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct NeighborhoodReport {
    /// Size of the neighborhood matrix, one less than the input.
    pub size: usize,
    /// Common row sum of the neighborhood, if every row agrees and the sum is real.
    pub mu: Option<CyclotomicInteger>,
    pub mu_value: Option<f64>,
    /// First row (0-based, in the neighborhood) whose sum differs from row 0,
    /// or row 0 itself when its sum is not real.
    pub row_sum_witness: Option<usize>,
    /// Numeric spectrum of the neighborhood as `(value, multiplicity)`.
    pub spectrum: Vec<(f64, usize)>,
    /// The eigenvalues predicted for the full matrix, roots of `x² - μx - (n-1)`.
    pub lambda: Option<[f64; 2]>,
    /// Spectrum is `{μ, λ₁, λ₂}` with μ simple.
    pub spectrum_ok: bool,
    pub regular: bool,
    pub certificate: Certification,
    /// The neighborhood verdict matches the certificate verdict.
    pub agrees: bool,
    pub eigen_residual: f64,
}

/// Isolates vertex 0 by switching, removes it, and tests the remaining
/// matrix for constant row sums and the spectrum `{μ, λ₁, λ₂}`.
pub fn regular_neighborhood_test(s: &SeidelMatrix) -> Result<NeighborhoodReport> {
    let n = s.dim();
    if n < 3 {
        return Err(Error::Domain("neighborhood test needs n >= 3".into()));
    }
    let certificate = two_eigenvalue_certificate(s)?;
    let a = s.standard_form().0.neighborhood(0)?;
    let ring = CyclotomicRing::new(s.order())?;
    let m = s.order();
    let row_sum = |i: usize| {
        let mut counts = vec![0i64; m as usize];
        for j in 0..a.dim() {
            if j != i {
                counts[a.exponent(i, j) as usize] += 1;
            }
        }
        ring.from_root_counts(&counts)
    };
    let first = row_sum(0);
    let mut witness = if first.is_real() { None } else { Some(0) };
    if witness.is_none() {
        witness = (1..a.dim()).find(|&i| row_sum(i) != first);
    }

    let complex = a.to_complex();
    let eig = hermitian_eigen(&complex)?;
    let eigen_residual = eig.max_residual(&complex);
    let spectrum = eigenvalue_clusters(&eig.values, CLUSTER_TOL);

    let (mu, mu_value, lambda, spectrum_ok) = if witness.is_none() {
        let mu_value = first.embed().re;
        let disc = (mu_value * mu_value + 4.0 * (n - 1) as f64).sqrt();
        let lambda = [(mu_value - disc) / 2.0, (mu_value + disc) / 2.0];
        let near = |x: f64, y: f64| (x - y).abs() <= CLUSTER_TOL * (1.0 + y.abs());
        let mu_count: usize = spectrum.iter().filter(|(v, _)| near(*v, mu_value)).map(|c| c.1).sum();
        let others_ok = spectrum.iter().all(|&(v, _)| near(v, mu_value) || near(v, lambda[0]) || near(v, lambda[1]));
        (Some(first), Some(mu_value), Some(lambda), mu_count == 1 && others_ok)
    } else {
        (None, None, None, false)
    };
    let regular = witness.is_none() && spectrum_ok;
    let agrees = regular == certificate.is_regular();
    Ok(NeighborhoodReport {
        size: a.dim(),
        mu,
        mu_value,
        row_sum_witness: witness,
        spectrum,
        lambda,
        spectrum_ok,
        regular,
        certificate,
        agrees,
        eigen_residual,
    })
}

/// Parameters `(n, k, a, c)` of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrgParameters {
    pub n: usize,
    pub k: usize,
    pub a: usize,
    pub c: usize,
}

impl SrgParameters {
    pub fn is_consistent(&self) -> bool {
        self.k * (self.k - self.a - 1) == (self.n - self.k - 1) * self.c
    }
}

/// `Some` iff `g` is regular, neither complete nor edgeless, with constant
/// common-neighbour counts on adjacent and on non-adjacent pairs.
pub fn srg_parameters(g: &SimpleGraph) -> Option<SrgParameters> {
    let n = g.order();
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in g.edges() {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let k = adj.first()?.iter().filter(|&&x| x).count();
    if k == 0 || k + 1 >= n || adj.iter().any(|r| r.iter().filter(|&&x| x).count() != k) {
        return None;
    }
    let (mut a, mut c) = (None, None);
    for u in 0..n {
        for v in u + 1..n {
            let common = (0..n).filter(|&w| adj[u][w] && adj[v][w]).count();
            let slot = if adj[u][v] { &mut a } else { &mut c };
            match *slot {
                None => *slot = Some(common),
                Some(x) if x != common => return None,
                _ => {}
            }
        }
    }
    Some(SrgParameters { n, k, a: a?, c: c? })
}

/// Strongly regular with `k = 2c`: the two-graph on `n + 1` vertices with
/// neighborhood `g` is regular.
pub fn regular_two_graph_via_srg(g: &SimpleGraph) -> bool {
    srg_parameters(g).is_some_and(|p| p.k == 2 * p.c)
}
