//! Graded monomial basis of the truncated Hardy space H²(𝕊ₙ).
//!
//! The monomials z^α with |α| ≤ D form an orthogonal (not orthonormal) basis
//! of the truncation. Their Gram weights under the normalized surface measure,
//!
//!   ω(α) = ∫ |z^α|² dσ = (n−1)! α! / (n−1+|α|)!,
//!
//! are kept as exact rationals so that operator identities downstream are
//! exact matrix equalities.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{factorial, Rat};
use num::bigint::BigInt;

/// A multi-index α = (α₁, …, αₙ) of monomial exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    exps: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    /// The zero multi-index in dimension `n`.
    pub fn zero(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    /// The standard unit multi-index e_j (0-based `j`).
    pub fn unit(n: usize, j: usize) -> Self {
        let mut exps = vec![0; n];
        exps[j] = 1;
        Self { exps }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, j: usize) -> u32 {
        self.exps[j]
    }

    /// |α| = Σ αⱼ.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn plus_unit(&self, j: usize) -> MultiIndex {
        let mut exps = self.exps.clone();
        exps[j] += 1;
        MultiIndex::new(exps)
    }

    /// α − β when β ≤ α componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.len() != other.len() {
            return None;
        }
        let mut exps = Vec::with_capacity(self.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex::new(exps))
    }

    /// α! = Π αⱼ!.
    pub fn factorial(&self) -> BigInt {
        self.exps
            .iter()
            .map(|&a| factorial(u64::from(a)))
            .product()
    }

    /// Graded order: by total degree first, then lexicographic.
    pub fn graded_lex_cmp(&self, other: &MultiIndex) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// ω(α) = ∫_{𝕊ₙ} |z^α|² dσ as an exact rational.
pub fn monomial_norm_sq(alpha: &MultiIndex, n: usize) -> Result<Rat> {
    if alpha.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: alpha.len(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let num = factorial(n as u64 - 1) * alpha.factorial();
    let den = factorial(n as u64 - 1 + u64::from(alpha.degree()));
    Ok(Rat::new(num, den))
}

/// The graded monomial basis of degree ≤ D in dimension n, with Gram weights.
///
/// Immutable after construction; ordering is ascending degree and, within a
/// degree, ascending lexicographic on the exponent tuple.
#[derive(Debug)]
pub struct BasisTable {
    dim: usize,
    max_degree: u32,
    indices: Vec<MultiIndex>,
    position: HashMap<MultiIndex, usize>,
    weights: Vec<Rat>,
    /// block_starts[d] = first position of degree d; sentinel entry at the end.
    block_starts: Vec<usize>,
}

impl BasisTable {
    /// Enumerate the basis. Panics if `n == 0`; every other input is valid.
    pub fn new(n: usize, max_degree: u32) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        let mut indices = Vec::new();
        let mut block_starts = Vec::with_capacity(max_degree as usize + 2);
        for d in 0..=max_degree {
            block_starts.push(indices.len());
            let mut block = Vec::new();
            gen_degree(n, d, &mut Vec::with_capacity(n), &mut block);
            block.sort();
            indices.extend(block);
        }
        block_starts.push(indices.len());
        let position = indices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let weights = indices
            .iter()
            .map(|a| monomial_norm_sq(a, n).expect("index has table dimension"))
            .collect();
        Self {
            dim: n,
            max_degree,
            indices,
            position,
            weights,
            block_starts,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Number of basis monomials, C(D+n, n).
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn multi_index(&self, i: usize) -> &MultiIndex {
        &self.indices[i]
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn index_of(&self, alpha: &MultiIndex) -> Option<usize> {
        self.position.get(alpha).copied()
    }

    /// ω at position `i`.
    pub fn weight(&self, i: usize) -> &Rat {
        &self.weights[i]
    }

    pub fn weight_of(&self, alpha: &MultiIndex) -> Option<&Rat> {
        self.index_of(alpha).map(|i| &self.weights[i])
    }

    /// Number of basis monomials of degree ≤ `deg` (0 when `deg < 0`).
    pub fn block_len(&self, deg: i32) -> usize {
        if deg < 0 {
            return 0;
        }
        let d = (deg as u32).min(self.max_degree) as usize;
        self.block_starts[d + 1]
    }

    /// Degree of the basis element at position `i`.
    pub fn degree_at(&self, i: usize) -> u32 {
        self.indices[i].degree()
    }
}

fn gen_degree(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if n == 1 {
        prefix.push(d);
        out.push(MultiIndex::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for first in 0..=d {
        prefix.push(first);
        gen_degree(n - 1, d - first, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn norm_sq_of_constant_is_one() {
        // the measure is normalized: sigma(S_n) = 1
        for n in 1..=4 {
            let w = monomial_norm_sq(&MultiIndex::zero(n), n).unwrap();
            assert_eq!(w, rat_int(1));
        }
    }

    #[test]
    fn norm_sq_on_circle_is_always_one() {
        for k in 0..20 {
            let w = monomial_norm_sq(&MultiIndex::new(vec![k]), 1).unwrap();
            assert_eq!(w, rat_int(1));
        }
    }

    #[test]
    fn norm_sq_first_coordinate_n2() {
        let w = monomial_norm_sq(&MultiIndex::new(vec![1, 0]), 2).unwrap();
        assert_eq!(w, rat(1, 2));
    }

    #[test]
    fn norm_sq_dimension_mismatch() {
        let err = monomial_norm_sq(&MultiIndex::new(vec![1, 0]), 3).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(BasisTable::new(1, 3).len(), 4);
        assert_eq!(BasisTable::new(2, 2).len(), 6);
        // C(11, 3) = 165
        assert_eq!(BasisTable::new(3, 8).len(), 165);
    }

    #[test]
    fn basis_n1_d3_order() {
        let b = BasisTable::new(1, 3);
        let got: Vec<u32> = b.indices().iter().map(|a| a.exp(0)).collect();
        assert_eq!(got, vec![0, 1, 2, 3]);
    }

    #[test]
    fn basis_is_graded_then_lexicographic() {
        let b = BasisTable::new(2, 3);
        for w in b.indices().windows(2) {
            assert_eq!(w[0].graded_lex_cmp(&w[1]), std::cmp::Ordering::Less);
        }
        // spot-check the degree-2 block on S_2
        let deg2: Vec<&MultiIndex> = b
            .indices()
            .iter()
            .filter(|a| a.degree() == 2)
            .collect();
        assert_eq!(
            deg2,
            vec![
                &MultiIndex::new(vec![0, 2]),
                &MultiIndex::new(vec![1, 1]),
                &MultiIndex::new(vec![2, 0])
            ]
        );
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = BasisTable::new(3, 5);
        let b = BasisTable::new(3, 5);
        assert_eq!(a.indices(), b.indices());
    }

    #[test]
    fn block_lengths() {
        let b = BasisTable::new(2, 4);
        assert_eq!(b.block_len(-1), 0);
        assert_eq!(b.block_len(0), 1);
        assert_eq!(b.block_len(1), 3);
        assert_eq!(b.block_len(4), b.len());
        assert_eq!(b.block_len(99), b.len());
    }

    #[test]
    fn weight_recurrence_sums_to_parent() {
        // sum_j omega(alpha + e_j) = omega(alpha): the matrix form of the
        // co-isometry identity, used implicitly by the phi module.
        for n in 1..=3 {
            let b = BasisTable::new(n, 5);
            for alpha in b.indices().iter().filter(|a| a.degree() < 5) {
                let parent = monomial_norm_sq(alpha, n).unwrap();
                let sum: Rat = (0..n)
                    .map(|j| monomial_norm_sq(&alpha.plus_unit(j), n).unwrap())
                    .sum();
                assert_eq!(sum, parent);
            }
        }
    }

    proptest! {
        #[test]
        fn weight_is_symmetric_under_permutation(mut exps in proptest::collection::vec(0u32..6, 2..4)) {
            let n = exps.len();
            let w1 = monomial_norm_sq(&MultiIndex::new(exps.clone()), n).unwrap();
            exps.reverse();
            let w2 = monomial_norm_sq(&MultiIndex::new(exps), n).unwrap();
            prop_assert_eq!(w1, w2);
        }

        #[test]
        fn weight_is_positive(exps in proptest::collection::vec(0u32..8, 1..4)) {
            let n = exps.len();
            let w = monomial_norm_sq(&MultiIndex::new(exps), n).unwrap();
            prop_assert!(w > Rat::from_integer(0.into()));
        }
    }
}
