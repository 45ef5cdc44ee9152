//! Seidel matrices over m-th roots of unity and the graph objects that
//! produce them.
//!
//! A [`SeidelMatrix`] is Hermitian with zero diagonal and off-diagonal
//! entries `ζ_m^e`. Only the exponents of the strict upper triangle are
//! stored; the lower triangle is implied by conjugation. Vertex indices in
//! the Rust API are 0-based. The JSON formats and CLI use 1-based labels.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Default tolerance for [`validate`].
pub const DEFAULT_VALIDATE_TOL: f64 = 1e-9;

/// One entry of a root-of-unity Seidel matrix: `ζ^e`, or the structural zero
/// on the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootExponent {
    Diag,
    Power(u32),
}

/// Position of the entry `(i, j)`, `i < j`, in the row-major upper triangle.
#[inline]
pub fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeidelMatrix {
    m: u32,
    n: usize,
    upper: Vec<u32>,
}

impl SeidelMatrix {
    pub fn new(m: u32, n: usize, upper: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder(m));
        }
        if upper.len() != pair_count(n) {
            return Err(Error::DimensionMismatch { expected: pair_count(n), found: upper.len() });
        }
        if let Some(&value) = upper.iter().find(|&&e| e >= m) {
            return Err(Error::ExponentOutOfRange { value, m });
        }
        Ok(SeidelMatrix { m, n, upper })
    }

    /// Builds from a full exponent table; only the strict upper triangle is read.
    pub fn from_fn(m: u32, n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Result<Self> {
        let mut upper = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in i + 1..n {
                upper.push(f(i, j) % m.max(1));
            }
        }
        Self::new(m, n, upper)
    }

    /// `J - I`: every off-diagonal entry 1.
    pub fn all_ones(m: u32, n: usize) -> Result<Self> {
        Self::new(m, n, vec![0; pair_count(n)])
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn upper(&self) -> &[u32] {
        &self.upper
    }

    /// Exponent of entry `(i, j)`, `i != j`, with the conjugate read for `i > j`.
    #[inline]
    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i != j);
        if i < j {
            self.upper[upper_index(self.n, i, j)]
        } else {
            (self.m - self.upper[upper_index(self.n, j, i)]) % self.m
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> RootExponent {
        if i == j {
            RootExponent::Diag
        } else {
            RootExponent::Power(self.exponent(i, j))
        }
    }

    /// Exponent of the oriented cycle product `s_ij s_jk s_ki`.
    #[inline]
    pub fn cycle_product(&self, i: usize, j: usize, k: usize) -> u32 {
        (self.exponent(i, j) + self.exponent(j, k) + self.exponent(k, i)) % self.m
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        let roots = root_table(self.m);
        let mut out = ComplexMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    out[(i, j)] = roots[self.exponent(i, j) as usize];
                }
            }
        }
        out
    }

    /// Conjugation by the diagonal matrix of `d`: entry `(i, j)` becomes
    /// `ζ^{d_i} s_ij ζ^{-d_j}`.
    pub fn switch(&self, d: &SwitchVector) -> Result<SeidelMatrix> {
        if d.m != self.m {
            return Err(Error::IncompatibleOrder(self.m, d.m));
        }
        if d.diag.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: d.diag.len() });
        }
        let m = self.m;
        let mut upper = Vec::with_capacity(self.upper.len());
        for i in 0..self.n {
            for j in i + 1..self.n {
                upper.push((d.diag[i] + self.exponent(i, j) + m - d.diag[j]) % m);
            }
        }
        Ok(SeidelMatrix { m, n: self.n, upper })
    }

    /// The member of the switching class with first row and column all ones,
    /// and the switch that produces it.
    pub fn standard_form(&self) -> (SeidelMatrix, SwitchVector) {
        let diag = (0..self.n).map(|j| if j == 0 { 0 } else { self.exponent(0, j) }).collect();
        let d = SwitchVector { m: self.m, diag };
        let s = self.switch(&d).expect("switch built from own dimensions");
        (s, d)
    }

    pub fn is_standard_form(&self) -> bool {
        (1..self.n).all(|j| self.exponent(0, j) == 0)
    }

    /// `P S Pᵀ` with `perm[i]` the old index placed at new position `i`.
    pub fn permute(&self, perm: &[usize]) -> Result<SeidelMatrix> {
        check_permutation(perm, self.n)?;
        Self::from_fn(self.m, self.n, |i, j| self.exponent(perm[i], perm[j]))
    }

    /// Borders the matrix with a new vertex 0 joined to every old vertex by 1.
    pub fn cone(&self) -> SeidelMatrix {
        let n = self.n + 1;
        let mut upper = vec![0; n - 1];
        upper.extend_from_slice(&self.upper);
        SeidelMatrix { m: self.m, n, upper }
    }

    /// Switches so that row `v` is all ones, then removes vertex `v`.
    pub fn neighborhood(&self, v: usize) -> Result<SeidelMatrix> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if self.n < 2 {
            return Err(Error::Domain("neighborhood needs at least two vertices".into()));
        }
        let rest: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Self::from_fn(self.m, self.n - 1, |i, j| self.cycle_product(v, rest[i], rest[j]))
    }

    /// Seidel matrix of a simple graph, `J - I - 2A` at m = 2.
    pub fn from_graph(g: &SimpleGraph) -> SeidelMatrix {
        let n = g.n;
        let mut upper = vec![0; pair_count(n)];
        for &(i, j) in &g.edges {
            upper[upper_index(n, i, j)] = 1;
        }
        SeidelMatrix { m: 2, n, upper }
    }

    /// Inverse of [`SeidelMatrix::from_graph`] for m = 2.
    pub fn to_graph(&self) -> Result<SimpleGraph> {
        if self.m != 2 {
            return Err(Error::UnsupportedOrder { expected: 2, found: self.m });
        }
        let mut edges = BTreeSet::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.exponent(i, j) == 1 {
                    edges.insert((i, j));
                }
            }
        }
        Ok(SimpleGraph { n: self.n, edges })
    }

    /// Cube-root matrix of a digraph: ω for a single arc i→j, ω² for a single
    /// arc j→i, 1 for no arc or both arcs.
    pub fn from_digraph(g: &Digraph) -> SeidelMatrix {
        let n = g.n;
        let upper = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| match (g.arcs.contains(&(i, j)), g.arcs.contains(&(j, i))) {
                (true, false) => 1,
                (false, true) => 2,
                _ => 0,
            })
            .collect();
        SeidelMatrix { m: 3, n, upper }
    }

    /// Complete digraph of a cube-root matrix; weight 1 becomes a double arc.
    pub fn to_digraph(&self) -> Result<Digraph> {
        if self.m != 3 {
            return Err(Error::UnsupportedOrder { expected: 3, found: self.m });
        }
        let mut arcs = BTreeSet::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                match self.exponent(i, j) {
                    1 => {
                        arcs.insert((i, j));
                    }
                    2 => {
                        arcs.insert((j, i));
                    }
                    _ => {
                        arcs.insert((i, j));
                        arcs.insert((j, i));
                    }
                }
            }
        }
        Ok(Digraph { n: self.n, arcs })
    }
}

impl fmt::Debug for SeidelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeidelMatrix(m={}, n={}, {:?})", self.m, self.n, self.upper)
    }
}

impl fmt::Display for SeidelMatrix {
    /// Exponent table, `.` on the diagonal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| match self.entry(i, j) {
                    RootExponent::Diag => ".".to_string(),
                    RootExponent::Power(e) => e.to_string(),
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn root_table(m: u32) -> Vec<Complex64> {
    let step = 2.0 * std::f64::consts::PI / m as f64;
    (0..m).map(|e| Complex64::from_polar(1.0, step * e as f64)).collect()
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: perm.len() });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Domain(format!("{perm:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// A diagonal switching matrix, entry `i` being `ζ^{diag[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SwitchVector {
    m: u32,
    diag: Vec<u32>,
}

impl SwitchVector {
    pub fn new(m: u32, diag: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder(m));
        }
        if let Some(&value) = diag.iter().find(|&&e| e >= m) {
            return Err(Error::ExponentOutOfRange { value, m });
        }
        Ok(SwitchVector { m, diag })
    }

    pub fn identity(m: u32, n: usize) -> Self {
        SwitchVector { m, diag: vec![0; n] }
    }

    /// Switch on a vertex subset at m = 2 (entries -1 on the subset).
    pub fn on_subset(n: usize, subset: &[usize]) -> Result<Self> {
        let mut diag = vec![0; n];
        for &v in subset {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            diag[v] = 1;
        }
        Ok(SwitchVector { m: 2, diag })
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn diag(&self) -> &[u32] {
        &self.diag
    }

    pub fn inverse(&self) -> Self {
        SwitchVector { m: self.m, diag: self.diag.iter().map(|&e| (self.m - e) % self.m).collect() }
    }

    /// Same switch with the global phase removed so that the first entry is 0.
    pub fn normalized(&self) -> Self {
        let first = self.diag.first().copied().unwrap_or(0);
        SwitchVector { m: self.m, diag: self.diag.iter().map(|&e| (e + self.m - first) % self.m).collect() }
    }
}

/// Simple graph on vertices `0..n`; edges stored as `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    /// Edges may be given in either orientation; loops and repeats are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n || !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidEdge(a, b));
            }
        }
        Ok(SimpleGraph { n, edges: set })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn cycle(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle on n >= 3 vertices")
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph { n, edges: BTreeSet::new() }
    }
}

/// Directed graph on `0..n`; both `(u, v)` and `(v, u)` may be present.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in arcs {
            if a == b || a >= n || b >= n || !set.insert((a, b)) {
                return Err(Error::InvalidEdge(a, b));
            }
        }
        Ok(Digraph { n, arcs: set })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    /// Replaces every arc-free pair by a double arc, giving a complete digraph.
    pub fn completed(&self) -> Digraph {
        let mut arcs = self.arcs.clone();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !arcs.contains(&(i, j)) && !arcs.contains(&(j, i)) {
                    arcs.insert((i, j));
                    arcs.insert((j, i));
                }
            }
        }
        Digraph { n: self.n, arcs }
    }
}

/// Why a raw complex matrix is not a root-of-unity Seidel matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectKind {
    NotSquare,
    NonZeroDiagonal,
    NonHermitian,
    BadModulus,
    NotRoot,
}

impl DefectKind {
    /// Machine-readable reason code.
    pub fn code(self) -> &'static str {
        match self {
            DefectKind::NotSquare => "not-square",
            DefectKind::NonZeroDiagonal => "nonzero-diagonal",
            DefectKind::NonHermitian => "non-hermitian",
            DefectKind::BadModulus => "bad-modulus",
            DefectKind::NotRoot => "not-a-root",
        }
    }
}

/// Located validation failure; `(i, j)` are 0-based.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Defect {
    pub kind: DefectKind,
    pub i: usize,
    pub j: usize,
    pub value: Complex64,
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({}, {}): {}{:+}i", self.kind.code(), self.i + 1, self.j + 1, self.value.re, self.value.im)
    }
}

/// Accepts a complex matrix as an m-th-root Seidel matrix within `tol`.
///
/// Entries are scanned row-major; the first failure is reported. For
/// `i < j` modulus and root membership are tested, for `i > j` the entry
/// is compared with `conj(s_ji)`.
pub fn validate(raw: &[Vec<Complex64>], m: u32, tol: f64) -> std::result::Result<SeidelMatrix, Defect> {
    let n = raw.len();
    let zero = Complex64::new(0.0, 0.0);
    if m == 0 {
        return Err(Defect { kind: DefectKind::NotRoot, i: 0, j: 0, value: zero });
    }
    if let Some(i) = raw.iter().position(|r| r.len() != n) {
        return Err(Defect { kind: DefectKind::NotSquare, i, j: 0, value: zero });
    }
    let roots = root_table(m);
    let step = 2.0 * std::f64::consts::PI / m as f64;
    let mut upper = Vec::with_capacity(pair_count(n));
    for (i, row) in raw.iter().enumerate() {
        for (j, &z) in row.iter().enumerate() {
            let defect = |kind| Defect { kind, i, j, value: z };
            if i == j {
                if z.norm() > tol {
                    return Err(defect(DefectKind::NonZeroDiagonal));
                }
            } else if i < j {
                if (z.norm() - 1.0).abs() > tol {
                    return Err(defect(DefectKind::BadModulus));
                }
                let e = ((z.arg() / step).round() as i64).rem_euclid(m as i64) as u32;
                if (z - roots[e as usize]).norm() > tol {
                    return Err(defect(DefectKind::NotRoot));
                }
                upper.push(e);
            } else if (z - raw[j][i].conj()).norm() > tol {
                return Err(defect(DefectKind::NonHermitian));
            }
        }
    }
    Ok(SeidelMatrix { m, n, upper })
}
