//! Exhaustive enumeration of Seidel matrices and class counting under
//! switching, switching plus permutation, and permutation alone.
//!
//! Matrices of order `m` and size `n` are indexed by their upper exponent
//! sequence read as a base-`m` number, first entry most significant, so
//! index order is lexicographic order.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seidel::{pair_count, upper_index, SeidelMatrix};

pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Largest `n` accepted by [`canonical_form`] and [`isomorphism_key`].
pub const MAX_CANONICAL_N: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest index space an enumeration may walk.
    pub budget: u64,
    /// Worker threads.
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        EnumOptions { budget: DEFAULT_BUDGET, jobs }
    }
}

impl EnumOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        EnumOptions { jobs: jobs.max(1), ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// Same switching class.
    Switching,
    /// Switching followed by a vertex permutation.
    Equivalence,
    /// Vertex permutation only.
    Isomorphism,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::Switching, Relation::Equivalence, Relation::Isomorphism];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Switching => "switching",
            Relation::Equivalence => "equivalence",
            Relation::Isomorphism => "isomorphism",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown relation '{s}'")))
    }
}

/// `m^p` if it fits in the budget.
fn space_size(m: u32, p: usize, budget: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidOrder(m));
    }
    let mut size: u128 = 1;
    for _ in 0..p {
        size = size.saturating_mul(m as u128);
    }
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { required: size, budget });
    }
    Ok(size as u64)
}

/// Number of matrices walked by an exhaustive count of `relation`.
///
/// Equivalence counting only visits standard forms, so its space is
/// `m^((n-1)(n-2)/2)`; the other relations visit all `m^(n(n-1)/2)` matrices.
pub fn search_space(m: u32, n: usize, relation: Relation) -> u128 {
    let p = match relation {
        Relation::Equivalence => pair_count(n.saturating_sub(1)),
        _ => pair_count(n),
    };
    (0..p).fold(1u128, |acc, _| acc.saturating_mul(m as u128))
}

/// Writes the base-`m` digits of `x` into `digits`, most significant first.
fn decode(m: u32, mut x: u64, digits: &mut [u32]) {
    for d in digits.iter_mut().rev() {
        *d = (x % m as u64) as u32;
        x /= m as u64;
    }
}

/// Lexicographic successor in place.
fn increment(m: u32, digits: &mut [u32]) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < m {
            return;
        }
        *d = 0;
    }
}

fn encode(m: u32, digits: &[u32]) -> u64 {
    digits.iter().fold(0u64, |acc, &d| acc * m as u64 + d as u64)
}

/// Every Seidel matrix of the given order and size, in lexicographic order.
pub struct Enumeration {
    m: u32,
    n: usize,
    next: u64,
    total: u64,
    digits: Vec<u32>,
}

impl Iterator for Enumeration {
    type Item = SeidelMatrix;

    fn next(&mut self) -> Option<SeidelMatrix> {
        if self.next >= self.total {
            return None;
        }
        if self.next > 0 {
            increment(self.m, &mut self.digits);
        }
        self.next += 1;
        Some(SeidelMatrix::new(self.m, self.n, self.digits.clone()).expect("digits below m"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

pub fn enumerate_all(m: u32, n: usize, budget: u64) -> Result<Enumeration> {
    let total = space_size(m, pair_count(n), budget)?;
    Ok(Enumeration { m, n, next: 0, total, digits: vec![0; pair_count(n)] })
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| Error::Internal(e.to_string()))
}

/// Splits `0..total` into contiguous blocks, maps each on the pool and
/// combines the results in block order.
fn par_blocks<T, F, R>(total: u64, jobs: usize, map: F, reduce: R, init: T) -> Result<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    let blocks = (jobs.max(1) as u64 * 8).min(total.max(1));
    let step = total.div_ceil(blocks).max(1);
    let ranges: Vec<(u64, u64)> =
        (0..blocks).map(|b| (b * step, ((b + 1) * step).min(total))).filter(|(lo, hi)| lo < hi).collect();
    let parts: Vec<T> = pool(jobs)?.install(|| ranges.par_iter().map(|&(lo, hi)| map(lo, hi)).collect());
    Ok(parts.into_iter().fold(init, reduce))
}

/// Index of the standard form of `upper` within the `m^((n-1)(n-2)/2)` space
/// of standard forms.
fn standard_form_index(m: u32, n: usize, upper: &[u32]) -> u64 {
    let mut key = 0u64;
    for i in 1..n {
        let d_i = upper[upper_index(n, 0, i)];
        for j in i + 1..n {
            let d_j = upper[upper_index(n, 0, j)];
            let t = (d_i + upper[upper_index(n, i, j)] + m - d_j) % m;
            key = key * m as u64 + t as u64;
        }
    }
    key
}

/// Number of distinct standard forms over all matrices.
pub fn count_switching_classes(m: u32, n: usize, opts: &EnumOptions) -> Result<u64> {
    Ok(switching_class_sizes(m, n, opts)?.len() as u64)
}

/// Number of matrices in each switching class, keyed by the standard-form
/// index.
pub fn switching_class_sizes(m: u32, n: usize, opts: &EnumOptions) -> Result<BTreeMap<u64, u64>> {
    let p = pair_count(n);
    let total = space_size(m, p, opts.budget)?;
    let map = |lo: u64, hi: u64| {
        let mut digits = vec![0; p];
        decode(m, lo, &mut digits);
        let mut counts: HashMap<u64, u64> = HashMap::new();
        for x in lo..hi {
            if x > lo {
                increment(m, &mut digits);
            }
            *counts.entry(standard_form_index(m, n, &digits)).or_default() += 1;
        }
        counts
    };
    let merged = par_blocks(
        total,
        opts.jobs,
        map,
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
        HashMap::new(),
    )?;
    Ok(merged.into_iter().collect())
}

/// Histogram of class sizes: size -> number of classes of that size.
pub fn class_size_histogram(sizes: &BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for &s in sizes.values() {
        *hist.entry(s).or_default() += 1;
    }
    hist
}

/// Canonical representative of a class, ordered by its upper sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub m: u32,
    pub n: usize,
    pub upper: Vec<u32>,
}

impl CanonicalKey {
    pub fn to_matrix(&self) -> SeidelMatrix {
        SeidelMatrix::new(self.m, self.n, self.upper.clone()).expect("key built from a valid matrix")
    }
}

/// Depth-first search over vertex orderings for the lexicographically least
/// relabelled upper sequence.
struct PermSearch {
    m: u32,
    n: usize,
    /// Oriented exponents, `e[i * n + j]`.
    e: Vec<u32>,
    switching: bool,
    perm: Vec<usize>,
    used: Vec<bool>,
    key: Vec<u32>,
    best: Vec<u32>,
    have_best: bool,
    /// When set, `best` is a fixed target and the search stops at the first
    /// strictly smaller key.
    fixed: bool,
    beaten: bool,
}

impl PermSearch {
    fn new(m: u32, n: usize, upper: &[u32], switching: bool) -> Self {
        let mut e = vec![0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let x = upper[upper_index(n, i, j)];
                e[i * n + j] = x;
                e[j * n + i] = (m - x) % m;
            }
        }
        let p = pair_count(n);
        PermSearch {
            m,
            n,
            e,
            switching,
            perm: Vec::with_capacity(n),
            used: vec![false; n],
            key: vec![0; p],
            best: vec![0; p],
            have_best: false,
            fixed: false,
            beaten: false,
        }
    }

    #[inline]
    fn ex(&self, a: usize, b: usize) -> u32 {
        self.e[a * self.n + b]
    }

    /// Key entry for new positions `a < b` under the current prefix.
    #[inline]
    fn entry(&self, a: usize, b: usize) -> u32 {
        let (pa, pb) = (self.perm[a], self.perm[b]);
        if !self.switching {
            return self.ex(pa, pb);
        }
        if a == 0 {
            return 0;
        }
        let p0 = self.perm[0];
        (self.ex(p0, pa) + self.ex(pa, pb) + self.ex(pb, p0)) % self.m
    }

    fn leading_row(&self) -> usize {
        usize::from(self.switching)
    }

    /// Compares the known part of the leading row with the best key.
    fn prefix_order(&self, k: usize) -> std::cmp::Ordering {
        let row = self.leading_row();
        for b in row + 1..=k {
            let idx = upper_index(self.n, row, b);
            match self.key[idx].cmp(&self.best[idx]) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    }

    fn run(&mut self) {
        let n = self.n;
        let k = self.perm.len();
        if k == n {
            if !self.have_best {
                self.best.clone_from(&self.key);
                self.have_best = true;
            } else if self.key < self.best {
                if self.fixed {
                    self.beaten = true;
                } else {
                    self.best.clone_from(&self.key);
                }
            }
            return;
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            self.perm.push(v);
            self.used[v] = true;
            for a in 0..k {
                self.key[upper_index(n, a, k)] = self.entry(a, k);
            }
            let go = if self.have_best && k > self.leading_row() {
                match self.prefix_order(k) {
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Less if self.fixed => {
                        self.beaten = true;
                        false
                    }
                    _ => true,
                }
            } else {
                true
            };
            if go {
                self.run();
            }
            self.used[v] = false;
            self.perm.pop();
            if self.beaten {
                return;
            }
        }
    }

    fn minimum(mut self) -> Vec<u32> {
        if self.n == 0 {
            return Vec::new();
        }
        self.run();
        self.best
    }

    /// Whether `target` (already in the searched form) is the minimum.
    fn confirms_minimum(mut self, target: &[u32]) -> bool {
        self.best.copy_from_slice(target);
        self.have_best = true;
        self.fixed = true;
        self.run();
        !self.beaten
    }
}

fn check_canonical_size(n: usize) -> Result<()> {
    if n > MAX_CANONICAL_N {
        return Err(Error::TooLarge { n, max: MAX_CANONICAL_N });
    }
    Ok(())
}

/// Least standard form over all vertex permutations: equal keys exactly for
/// switching-equivalent matrices.
pub fn canonical_form(s: &SeidelMatrix) -> Result<CanonicalKey> {
    check_canonical_size(s.dim())?;
    let upper = PermSearch::new(s.order(), s.dim(), s.upper(), true).minimum();
    Ok(CanonicalKey { m: s.order(), n: s.dim(), upper })
}

/// Least upper sequence over all vertex permutations, without switching.
pub fn isomorphism_key(s: &SeidelMatrix) -> Result<CanonicalKey> {
    check_canonical_size(s.dim())?;
    let upper = PermSearch::new(s.order(), s.dim(), s.upper(), false).minimum();
    Ok(CanonicalKey { m: s.order(), n: s.dim(), upper })
}

/// Key of `s` under `relation`.
pub fn class_key(s: &SeidelMatrix, relation: Relation) -> Result<CanonicalKey> {
    match relation {
        Relation::Switching => {
            let (std, _) = s.standard_form();
            Ok(CanonicalKey { m: s.order(), n: s.dim(), upper: std.upper().to_vec() })
        }
        Relation::Equivalence => canonical_form(s),
        Relation::Isomorphism => isomorphism_key(s),
    }
}

/// Counts classes by testing every candidate for being its own canonical
/// representative. Candidates are all matrices (permutation orbits) or all
/// standard forms (switching-equivalence orbits).
fn count_canonical(m: u32, n: usize, switching: bool, opts: &EnumOptions) -> Result<u64> {
    check_canonical_size(n)?;
    if n < 2 {
        return Ok(1);
    }
    let free = if switching { pair_count(n - 1) } else { pair_count(n) };
    let total = space_size(m, free, opts.budget)?;
    let p = pair_count(n);
    let map = |lo: u64, hi: u64| {
        let mut digits = vec![0; free];
        decode(m, lo, &mut digits);
        let mut upper = vec![0; p];
        let mut count = 0u64;
        for x in lo..hi {
            if x > lo {
                increment(m, &mut digits);
            }
            // Standard forms carry zeros in row 0.
            upper[p - free..].copy_from_slice(&digits);
            if PermSearch::new(m, n, &upper, switching).confirms_minimum(&upper) {
                count += 1;
            }
        }
        count
    };
    par_blocks(total, opts.jobs, map, |a, b| a + b, 0)
}

pub fn count_equivalence_classes(m: u32, n: usize, opts: &EnumOptions) -> Result<u64> {
    count_canonical(m, n, true, opts)
}

pub fn count_isomorphism_classes(m: u32, n: usize, opts: &EnumOptions) -> Result<u64> {
    count_canonical(m, n, false, opts)
}

pub fn count_classes(m: u32, n: usize, relation: Relation, opts: &EnumOptions) -> Result<u64> {
    match relation {
        Relation::Switching => count_switching_classes(m, n, opts),
        Relation::Equivalence => count_equivalence_classes(m, n, opts),
        Relation::Isomorphism => count_isomorphism_classes(m, n, opts),
    }
}

/// Distinct keys of a matrix collection under `relation`, by direct hashing.
/// Slow but independent of the canonical-representative counting above.
pub fn distinct_keys<'a>(
    matrices: impl IntoIterator<Item = &'a SeidelMatrix>,
    relation: Relation,
) -> Result<HashSet<CanonicalKey>> {
    matrices.into_iter().map(|s| class_key(s, relation)).collect()
}

/// Standard-form representatives of every switching class, in index order.
pub fn switching_representatives(m: u32, n: usize, budget: u64) -> Result<Vec<SeidelMatrix>> {
    let free = pair_count(n.saturating_sub(1));
    let total = space_size(m, free, budget)?;
    let p = pair_count(n);
    let mut digits = vec![0; free];
    let mut out = Vec::with_capacity(total as usize);
    for x in 0..total {
        if x > 0 {
            increment(m, &mut digits);
        }
        let mut upper = vec![0; p];
        upper[p - free..].copy_from_slice(&digits);
        out.push(SeidelMatrix::new(m, n, upper)?);
    }
    Ok(out)
}

/// Index of a matrix in the enumeration order.
pub fn matrix_index(s: &SeidelMatrix) -> u64 {
    encode(s.order(), s.upper())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::seidel::SwitchVector;

    fn opts() -> EnumOptions {
        EnumOptions::with_jobs(2)
    }

    #[test]
    fn enumeration_sizes_and_order() {
        let all: Vec<_> = enumerate_all(2, 3, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(all.len(), 8);
        assert!(all.windows(2).all(|w| w[0].upper() < w[1].upper()));
        assert_eq!(enumerate_all(3, 4, DEFAULT_BUDGET).unwrap().count(), 729);
        for (i, s) in enumerate_all(3, 4, DEFAULT_BUDGET).unwrap().enumerate() {
            assert_eq!(matrix_index(&s), i as u64);
        }
    }

    #[test]
    fn budget_is_enforced() {
        match enumerate_all(3, 6, 1000) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!(required, 14_348_907);
                assert_eq!(budget, 1000);
            }
            other => panic!("{:?}", other.map(|_| ())),
        }
        assert!(enumerate_all(3, 6, DEFAULT_BUDGET).is_ok());
    }

    #[test]
    fn small_switching_counts() {
        assert_eq!(count_switching_classes(3, 3, &opts()).unwrap(), 3);
        assert_eq!(count_switching_classes(3, 4, &opts()).unwrap(), 27);
        assert_eq!(count_switching_classes(2, 5, &opts()).unwrap(), 64);
    }

    #[test]
    fn class_sizes_are_uniform() {
        for n in 2..=5 {
            let sizes = switching_class_sizes(3, n, &opts()).unwrap();
            let hist = class_size_histogram(&sizes);
            assert_eq!(hist.len(), 1);
            assert_eq!(*hist.keys().next().unwrap(), 3u64.pow(n as u32 - 1));
        }
    }

    #[test]
    fn canonical_counts_match_hashing() {
        for (m, n) in [(2, 4), (2, 5), (3, 3), (3, 4)] {
            let all: Vec<_> = enumerate_all(m, n, DEFAULT_BUDGET).unwrap().collect();
            for rel in Relation::ALL {
                let hashed = distinct_keys(&all, rel).unwrap().len() as u64;
                assert_eq!(count_classes(m, n, rel, &opts()).unwrap(), hashed, "{m} {n} {rel}");
            }
        }
    }

    #[test]
    fn small_table_values() {
        assert_eq!(count_isomorphism_classes(2, 4, &opts()).unwrap(), 11);
        assert_eq!(count_isomorphism_classes(3, 3, &opts()).unwrap(), 7);
        assert_eq!(count_equivalence_classes(2, 5, &opts()).unwrap(), 7);
        assert_eq!(count_equivalence_classes(3, 4, &opts()).unwrap(), 4);
        assert_eq!(count_equivalence_classes(3, 5, &opts()).unwrap(), 14);
    }

    #[test]
    fn trivial_sizes() {
        for rel in Relation::ALL {
            assert_eq!(count_classes(3, 1, rel, &opts()).unwrap(), 1);
            assert_eq!(count_classes(3, 0, rel, &opts()).unwrap(), 1);
        }
        assert_eq!(count_classes(3, 2, Relation::Isomorphism, &opts()).unwrap(), 2);
        assert_eq!(count_classes(3, 2, Relation::Equivalence, &opts()).unwrap(), 1);
    }

    #[test]
    fn star_variants_share_a_key() {
        let s = SeidelMatrix::from_graph(&data::star_graph());
        let t = s.switch(&SwitchVector::on_subset(6, &[1, 2]).unwrap()).unwrap();
        assert_eq!(canonical_form(&s).unwrap(), canonical_form(&t).unwrap());
    }

    #[test]
    fn canonical_form_is_a_class_member() {
        let s = data::etf96_matrix();
        let key = canonical_form(&s).unwrap();
        assert!(key.to_matrix().is_standard_form());
        assert!(key.upper.as_slice() <= s.upper());
        assert!(canonical_form(&SeidelMatrix::all_ones(2, 11).unwrap()).is_err());
    }

    #[test]
    fn relation_names_round_trip() {
        for r in Relation::ALL {
            assert_eq!(r.name().parse::<Relation>().unwrap(), r);
        }
        assert!("orbit".parse::<Relation>().is_err());
    }
}
