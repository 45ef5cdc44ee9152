//! Closed-form class counts as sums over integer partitions, and the
//! combined table of formula and brute-force counts.
//!
//! `euler_graph_count(n)` is the number of Euler graphs on `n` unlabelled
//! vertices, which is also the number of two-graphs on `n` vertices up to
//! isomorphism. `complete_digraph_count(n)` counts complete digraphs up to
//! isomorphism, which are in bijection with cube-root Seidel matrices up to
//! permutation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::orbits::{self, EnumOptions, Relation};

/// A partition of `j`, stored as part size -> multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPartition {
    j: u32,
    mult: BTreeMap<u32, u32>,
}

impl IntegerPartition {
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for &p in parts {
            if p == 0 {
                return Err(Error::Domain("parts must be positive".into()));
            }
            *mult.entry(p).or_insert(0) += 1;
        }
        Ok(IntegerPartition { j: parts.iter().sum(), mult })
    }

    pub fn total(&self) -> u32 {
        self.j
    }

    /// Multiplicity of part size `k`, zero when absent.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.mult.get(&k).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<u32, u32> {
        &self.mult
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<u32> {
        self.mult.iter().rev().flat_map(|(&k, &c)| std::iter::repeat_n(k, c as usize)).collect()
    }

    pub fn len(&self) -> u32 {
        self.mult.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `j` in reverse lexicographic order, `(j)` first.
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = IntegerPartition;

    fn next(&mut self) -> Option<IntegerPartition> {
        let parts = self.current.take()?;
        let out = IntegerPartition::from_parts(&parts).expect("positive parts");
        self.current = successor(parts);
        Some(out)
    }
}

/// Next partition in reverse lexicographic order.
fn successor(mut parts: Vec<u32>) -> Option<Vec<u32>> {
    // Drop trailing ones, decrement the last part larger than one, and
    // refill greedily with parts no larger than it.
    let mut ones = 0;
    while parts.last() == Some(&1) {
        parts.pop();
        ones += 1;
    }
    let last = parts.last_mut()?;
    *last -= 1;
    let cap = *last;
    let mut rest = ones + 1;
    while rest > 0 {
        let p = rest.min(cap);
        parts.push(p);
        rest -= p;
    }
    Some(parts)
}

pub fn partitions(j: u32) -> Partitions {
    Partitions { current: Some(if j == 0 { Vec::new() } else { vec![j] }) }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `∏ k^{j_k} j_k!`, the size of the centralizer of a permutation of cycle type `p`.
fn centralizer(p: &IntegerPartition) -> BigInt {
    p.multiplicities().iter().fold(BigInt::one(), |acc, (&k, &c)| acc * BigInt::from(k).pow(c) * factorial(c))
}

fn pow_rational(base: i64, e: i64) -> BigRational {
    let b = BigInt::from(base);
    if e >= 0 {
        BigRational::from_integer(b.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), b.pow((-e) as u32))
    }
}

fn whole(total: BigRational, what: &str, n: u32) -> Result<BigUint> {
    if !total.is_integer() {
        return Err(Error::Internal(format!("{what}({n}) evaluated to non-integer {total}")));
    }
    total.to_integer().to_biguint().ok_or_else(|| Error::Internal(format!("{what}({n}) is negative")))
}

/// Exponent `v(j) - λ(j)` of the Euler-graph summand.
///
/// `v(j) = Σ_{i<k} j_i j_k gcd(i,k) + Σ_i i (j_{2i} + j_{2i+1} + C(j_i, 2))`
/// and `λ(j) = Σ j_i - sgn(Σ_{i≥0} j_{2i+1})`, the second sum including `j_1`.
pub fn euler_exponent(p: &IntegerPartition) -> i64 {
    let j = |i: u32| p.multiplicity(i) as i64;
    let sizes: Vec<u32> = p.multiplicities().keys().copied().collect();
    let mut v = 0i64;
    for (a, &i) in sizes.iter().enumerate() {
        for &k in &sizes[a + 1..] {
            v += j(i) * j(k) * i.gcd(&k) as i64;
        }
    }
    for i in 1..=p.total() {
        v += i as i64 * (j(2 * i) + j(2 * i + 1) + binomial(j(i), 2));
    }
    let odd_parts: i64 = (0..=p.total() / 2).map(|i| j(2 * i + 1)).sum();
    let lambda = p.len() as i64 - i64::from(odd_parts > 0);
    v - lambda
}

/// Number of Euler graphs on `n` unlabelled vertices.
pub fn euler_graph_count(n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let total = partitions(n).fold(BigRational::zero(), |acc, p| {
        acc + pow_rational(2, euler_exponent(&p)) / BigRational::from_integer(centralizer(&p))
    });
    whole(total, "euler_graph_count", n)
}

/// Exponent `a(n) = Σ_k (⌊(k-1)/2⌋ n_k + k C(n_k, 2)) + Σ_{r<s} gcd(r,s) n_r n_s`.
pub fn digraph_exponent(p: &IntegerPartition) -> u64 {
    let entries: Vec<(u64, u64)> = p.multiplicities().iter().map(|(&k, &c)| (k as u64, c as u64)).collect();
    let mut a = 0u64;
    for (idx, &(k, c)) in entries.iter().enumerate() {
        a += (k - 1) / 2 * c + k * binomial(c, 2);
        for &(s, d) in &entries[idx + 1..] {
            a += k.gcd(&s) * c * d;
        }
    }
    a
}

/// Number of complete digraphs on `n` unlabelled vertices.
pub fn complete_digraph_count(n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let total = partitions(n).fold(BigRational::zero(), |acc, p| {
        let three = BigInt::from(3).pow(digraph_exponent(&p) as u32);
        acc + BigRational::new(three, centralizer(&p))
    });
    whole(total, "complete_digraph_count", n)
}

/// `m^((n-1)(n-2)/2)`.
pub fn switching_class_count(m: u32, n: u32) -> BigUint {
    let e = if n < 2 { 0 } else { (n - 1) * (n - 2) / 2 };
    BigUint::from(m).pow(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Formula,
    BruteForce,
    /// Brute force was out of budget and no formula is available.
    Skipped,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::BruteForce => "brute-force",
            Method::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: u32,
    pub quantity: &'static str,
    pub value: Option<BigUint>,
    pub method: Method,
}

/// Default index-space budget for brute-force table cells.
pub const TABLE_BUDGET: u64 = 1_000_000;

/// Real columns (non-isomorphic, switching classes, equivalence classes)
/// and cube-root columns (non-isomorphic, switching classes, equivalence
/// classes) for `n = 3..=n_max`.
pub fn table_report(n_max: u32, opts: &EnumOptions) -> Result<Vec<TableRow>> {
    if n_max < 3 {
        return Err(Error::Domain("n_max must be at least 3".into()));
    }
    let brute = |m: u32, n: u32, rel: Relation| -> Result<TableRow> {
        let quantity = quantity_name(m, rel);
        if orbits::search_space(m, n as usize, rel) > opts.budget as u128 {
            return Ok(TableRow { n, quantity, value: None, method: Method::Skipped });
        }
        let v = orbits::count_classes(m, n as usize, rel, opts)?;
        Ok(TableRow { n, quantity, value: Some(BigUint::from(v)), method: Method::BruteForce })
    };
    let formula = |n: u32, m: u32, rel: Relation, value: BigUint| TableRow {
        n,
        quantity: quantity_name(m, rel),
        value: Some(value),
        method: Method::Formula,
    };
    let mut rows = Vec::new();
    for n in 3..=n_max {
        rows.push(brute(2, n, Relation::Isomorphism)?);
        rows.push(formula(n, 2, Relation::Switching, switching_class_count(2, n)));
        rows.push(formula(n, 2, Relation::Equivalence, euler_graph_count(n)?));
        rows.push(formula(n, 3, Relation::Isomorphism, complete_digraph_count(n)?));
        rows.push(formula(n, 3, Relation::Switching, switching_class_count(3, n)));
        rows.push(brute(3, n, Relation::Equivalence)?);
    }
    Ok(rows)
}

pub fn quantity_name(m: u32, rel: Relation) -> &'static str {
    match (m, rel) {
        (2, Relation::Isomorphism) => "real-nonisomorphic",
        (2, Relation::Switching) => "real-switching-classes",
        (2, Relation::Equivalence) => "real-equivalence-classes",
        (3, Relation::Isomorphism) => "cube-nonisomorphic",
        (3, Relation::Switching) => "cube-switching-classes",
        (3, Relation::Equivalence) => "cube-equivalence-classes",
        (_, Relation::Isomorphism) => "nonisomorphic",
        (_, Relation::Switching) => "switching-classes",
        (_, Relation::Equivalence) => "equivalence-classes",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// p(n) by the pentagonal-number recurrence.
    fn partition_numbers(max: usize) -> Vec<i64> {
        let mut p = vec![0i64; max + 1];
        p[0] = 1;
        for n in 1..=max {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[n] += sign * p[n - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= n {
                    p[n] += sign * p[n - g2];
                }
                k += 1;
            }
        }
        p
    }

    #[test]
    fn partition_counts_and_order() {
        let p = partition_numbers(20);
        for j in 0..=20u32 {
            assert_eq!(partitions(j).count() as i64, p[j as usize], "p({j})");
        }
        let four: Vec<Vec<u32>> = partitions(4).map(|p| p.parts()).collect();
        assert_eq!(four, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        let one: Vec<_> = partitions(1).collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].multiplicity(1), 1);
        for part in partitions(10) {
            assert_eq!(part.parts().iter().sum::<u32>(), 10);
        }
    }

    #[test]
    fn euler_counts() {
        let got: Vec<u64> = (1..=10).map(|n| euler_graph_count(n).unwrap().try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 3, 7, 16, 54, 243, 2038, 33120]);
    }

    #[test]
    fn digraph_counts() {
        let got: Vec<u64> = (1..=7).map(|n| complete_digraph_count(n).unwrap().try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 2, 7, 42, 582, 21480, 2142288]);
    }

    #[test]
    fn odd_part_sum_must_include_ones() {
        // Dropping j_1 from the sign term breaks integrality already at n = 3.
        let total = partitions(3).fold(BigRational::zero(), |acc, p| {
            let mut e = euler_exponent(&p);
            let any_odd = p.multiplicity(1) + p.multiplicity(3) > 0;
            let odd_above_one = p.multiplicity(3) > 0;
            e += i64::from(any_odd) - i64::from(odd_above_one);
            acc + pow_rational(2, e) / BigRational::from_integer(centralizer(&p))
        });
        assert!(!total.is_integer());
    }

    #[test]
    fn zero_is_rejected() {
        assert!(euler_graph_count(0).is_err());
        assert!(complete_digraph_count(0).is_err());
    }

    #[test]
    fn small_table() {
        let rows = table_report(4, &EnumOptions::with_jobs(2)).unwrap();
        let get = |n: u32, q: &str| rows.iter().find(|r| r.n == n && r.quantity == q).unwrap().clone();
        assert_eq!(get(4, "real-nonisomorphic").value, Some(BigUint::from(11u32)));
        assert_eq!(get(4, "real-nonisomorphic").method, Method::BruteForce);
        assert_eq!(get(3, "cube-equivalence-classes").value, Some(BigUint::from(2u32)));
        assert_eq!(get(4, "cube-switching-classes").value, Some(BigUint::from(27u32)));
        assert_eq!(rows.len(), 12);
    }
}
