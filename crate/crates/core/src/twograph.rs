//! Triple-class data of a Seidel matrix.
//!
//! Every 3-subset `{i < j < k}` gets the exponent of its cycle product
//! `s_ij s_jk conj(s_ik)`. This class does not change under switching, and a
//! class function comes from some Seidel matrix exactly when it satisfies the
//! cocycle condition on every 4-subset.

use crate::error::{Error, Result};
use crate::seidel::SeidelMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoGraphData {
    m: u32,
    n: usize,
    /// Classes of the ascending triples, in lexicographic order.
    classes: Vec<u32>,
}

/// A 4-subset (0-based, ascending) where a check fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertices: [usize; 4],
    /// Weight or class responsible, for checks that are per weight.
    pub weight: Option<u32>,
}

pub fn triple_count(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Lexicographic rank of the ascending triple `i < j < k` among all triples of `0..n`.
pub fn triple_rank(n: usize, i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k && k < n);
    let pairs_after = |a: usize| (n - 1 - a) * (n - 2 - a) / 2;
    let before_i: usize = (0..i).map(pairs_after).sum();
    let before_j: usize = (i + 1..j).map(|b| n - 1 - b).sum();
    before_i + before_j + (k - j - 1)
}

/// All ascending triples of `0..n` in lexicographic order.
pub fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k])))
}

/// All ascending 4-subsets of `0..n` in lexicographic order.
pub fn quads(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| (j + 1..n).flat_map(move |k| (k + 1..n).map(move |l| [i, j, k, l])))
    })
}

impl TwoGraphData {
    pub fn new(m: u32, n: usize, classes: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder(m));
        }
        if classes.len() != triple_count(n) {
            return Err(Error::DimensionMismatch { expected: triple_count(n), found: classes.len() });
        }
        if let Some(&value) = classes.iter().find(|&&c| c >= m) {
            return Err(Error::ExponentOutOfRange { value, m });
        }
        Ok(TwoGraphData { m, n, classes })
    }

    pub fn from_fn(m: u32, n: usize, mut f: impl FnMut([usize; 3]) -> u32) -> Result<Self> {
        Self::new(m, n, triples(n).map(&mut f).collect())
    }

    pub fn from_seidel(s: &SeidelMatrix) -> Self {
        let classes = triples(s.dim()).map(|[i, j, k]| s.cycle_product(i, j, k)).collect();
        TwoGraphData { m: s.order(), n: s.dim(), classes }
    }

    /// For m = 2: the triples in `odd` get class 1, every other triple class 0.
    pub fn from_odd_triples(n: usize, odd: &[[usize; 3]]) -> Result<Self> {
        let mut classes = vec![0; triple_count(n)];
        for t in odd {
            let mut t = *t;
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] || t[2] >= n {
                return Err(Error::Domain(format!("invalid triple {t:?}")));
            }
            classes[triple_rank(n, t[0], t[1], t[2])] = 1;
        }
        Ok(TwoGraphData { m: 2, n, classes })
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[u32] {
        &self.classes
    }

    /// Class of the ascending triple `i < j < k`.
    pub fn class(&self, i: usize, j: usize, k: usize) -> u32 {
        self.classes[triple_rank(self.n, i, j, k)]
    }

    /// The triples of class `w`.
    pub fn delta(&self, w: u32) -> Vec<[usize; 3]> {
        triples(self.n).zip(&self.classes).filter(|(_, &c)| c == w).map(|(t, _)| t).collect()
    }

    /// Standard-form Seidel matrix with `pivot` joined to everything by 1.
    ///
    /// Fails with the lexicographically least violating 4-set if the data is
    /// not realizable.
    pub fn to_seidel(&self, pivot: usize) -> Result<SeidelMatrix> {
        if pivot >= self.n {
            return Err(Error::VertexOutOfRange { vertex: pivot, n: self.n });
        }
        if let Err(v) = self.validate_cocycle() {
            return Err(Error::NotRealizable(v.vertices));
        }
        let m = self.m;
        // Entry (i, j) must make the oriented cycle (pivot, i, j) carry the
        // triple's class; the orientation flips when the pivot sits between.
        SeidelMatrix::from_fn(m, self.n, |i, j| {
            if i == pivot || j == pivot {
                return 0;
            }
            let mut t = [pivot, i, j];
            t.sort_unstable();
            let c = self.class(t[0], t[1], t[2]);
            if i < pivot && pivot < j {
                (m - c) % m
            } else {
                c
            }
        })
    }

    /// `c(ijk) + c(ikl) = c(ijl) + c(jkl)` (mod m) on every 4-set `i<j<k<l`.
    pub fn validate_cocycle(&self) -> std::result::Result<(), Violation> {
        let m = self.m;
        for [i, j, k, l] in quads(self.n) {
            let lhs = self.class(i, j, k) + self.class(i, k, l);
            let rhs = self.class(i, j, l) + self.class(j, k, l);
            if lhs % m != rhs % m {
                return Err(Violation { vertices: [i, j, k, l], weight: None });
            }
        }
        Ok(())
    }

    /// Literal parity axiom: each 4-set holds an even number of triples of
    /// every class.
    pub fn validate_paper_axiom(&self) -> std::result::Result<(), Violation> {
        for q in quads(self.n) {
            let mut counts = vec![0u32; self.m as usize];
            for t in faces(q) {
                counts[self.class(t[0], t[1], t[2]) as usize] += 1;
            }
            if let Some(w) = counts.iter().position(|c| c % 2 == 1) {
                return Err(Violation { vertices: q, weight: Some(w as u32) });
            }
        }
        Ok(())
    }
}

/// The four triangles of a 4-set, each ascending.
fn faces([i, j, k, l]: [usize; 4]) -> [[usize; 3]; 4] {
    [[i, j, k], [i, j, l], [i, k, l], [j, k, l]]
}

/// For every 4-set and weight `w`, the number of its triangles with an odd
/// count of `w`-weighted edges must be even. Edge weights are read from the
/// upper triangle.
pub fn weight_parity_check(s: &SeidelMatrix) -> std::result::Result<(), Violation> {
    for q in quads(s.dim()) {
        for w in 0..s.order() {
            let odd = faces(q)
                .iter()
                .filter(|[a, b, c]| {
                    [(a, b), (a, c), (b, c)].iter().filter(|&&(&x, &y)| s.exponent(x, y) == w).count() % 2 == 1
                })
                .count();
            if odd % 2 == 1 {
                return Err(Violation { vertices: q, weight: Some(w) });
            }
        }
    }
    Ok(())
}
