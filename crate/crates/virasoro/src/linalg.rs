//! Sparse vectors over an ordered key set and exact linear algebra.
//!
//! [`FreeVec`] is the workhorse value type of the crate: a finite formal
//! linear combination of basis keys with no stored zero coefficients.
//! [`RowSpace`] keeps a reduced row echelon basis of a subspace and is used
//! for cyclic closures, quotient reductions and rank arguments. Dense
//! routines cover the small graded pieces (Gram determinants, kernels).

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

/// Finite linear combination of keys `K` with exact coefficients.
///
/// Invariant: no zero coefficient is ever stored, so `==` is semantic
/// equality of combinations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeVec<K: Ord + Clone, S: Scalar> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord + Clone, S: Scalar> Default for FreeVec<K, S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone, S: Scalar> FreeVec<K, S> {
    pub fn zero() -> Self {
        FreeVec {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(key: K, coeff: S) -> Self {
        let mut v = Self::zero();
        v.add_term(key, coeff);
        v
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    pub fn get(&self, key: &K) -> Option<&S> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> std::collections::btree_map::Iter<'_, K, S> {
        self.terms.iter()
    }

    pub fn keys(&self) -> std::collections::btree_map::Keys<'_, K, S> {
        self.terms.keys()
    }

    /// Largest key with nonzero coefficient.
    pub fn leading(&self) -> Option<(&K, &S)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, key: K, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &S, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, s) in other.iter() {
            self.add_term(k.clone(), c.clone() * s.clone());
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (k, s) in other.iter() {
            self.add_term(k.clone(), s.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreeVec {
            terms: self
                .terms
                .iter()
                .map(|(k, s)| (k.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn scale_in_place(&mut self, c: &S) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for s in self.terms.values_mut() {
            *s = c.clone() * s.clone();
        }
    }

    /// Keep only the terms whose key satisfies the predicate.
    pub fn filter_keys(&self, mut pred: impl FnMut(&K) -> bool) -> Self {
        FreeVec {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, s)| (k.clone(), s.clone()))
                .collect(),
        }
    }

    /// Apply a linear map given on basis keys.
    pub fn map_terms<K2: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K, &S) -> FreeVec<K2, S>,
    ) -> FreeVec<K2, S> {
        let mut out = FreeVec::zero();
        for (k, s) in self.iter() {
            out.add_assign_ref(&f(k, s));
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, S)>) -> Self {
        let mut v = Self::zero();
        for (k, s) in terms {
            v.add_term(k, s);
        }
        v
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, S)> {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone, S: Scalar> Add for &FreeVec<K, S> {
    type Output = FreeVec<K, S>;
    fn add(self, rhs: Self) -> FreeVec<K, S> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<K: Ord + Clone, S: Scalar> Sub for &FreeVec<K, S> {
    type Output = FreeVec<K, S>;
    fn sub(self, rhs: Self) -> FreeVec<K, S> {
        let mut out = self.clone();
        out.add_scaled(&-S::one(), rhs);
        out
    }
}

impl<K: Ord + Clone, S: Scalar> Neg for FreeVec<K, S> {
    type Output = FreeVec<K, S>;
    fn neg(mut self) -> FreeVec<K, S> {
        for s in self.terms.values_mut() {
            *s = -s.clone();
        }
        self
    }
}

/// Reduced row echelon basis of a subspace of the free module on `K`.
///
/// Each stored row is normalized to leading coefficient one and rows are
/// mutually reduced, so reduction against a `RowSpace` yields a canonical
/// residue. Insertion order does not affect the final basis.
#[derive(Clone, Debug)]
pub struct RowSpace<K: Ord + Clone, S: Scalar> {
    rows: BTreeMap<K, FreeVec<K, S>>,
}

impl<K: Ord + Clone, S: Scalar> Default for RowSpace<K, S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone, S: Scalar> RowSpace<K, S> {
    pub fn new() -> Self {
        RowSpace {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical residue of `v` modulo the subspace.
    pub fn reduce(&self, mut v: FreeVec<K, S>) -> FreeVec<K, S> {
        loop {
            // Largest key of v that is a pivot; eliminating it only touches
            // strictly smaller keys, so the scan terminates.
            let hit = v
                .iter()
                .rev()
                .find_map(|(k, c)| self.rows.contains_key(k).then(|| (k.clone(), c.clone())));
            match hit {
                Some((k, c)) => {
                    let row = self.rows.get(&k).expect("pivot row");
                    v.add_scaled(&-c, row);
                }
                None => return v,
            }
        }
    }

    pub fn contains(&self, v: &FreeVec<K, S>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Insert a vector; returns `true` if the rank grew.
    pub fn insert(&mut self, v: FreeVec<K, S>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.leading().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        r.scale_in_place(&(S::one() / lead));
        // Keep existing rows reduced against the new pivot.
        let affected: Vec<K> = self
            .rows
            .iter()
            .filter(|(_, row)| row.get(&pivot).is_some())
            .map(|(p, _)| p.clone())
            .collect();
        for p in affected {
            let mut row = self.rows.remove(&p).expect("row");
            let c = row.coeff(&pivot);
            row.add_scaled(&-c, &r);
            self.rows.insert(p, row);
        }
        self.rows.insert(pivot, r);
        true
    }

    /// The reduced basis rows in ascending pivot order.
    pub fn basis(&self) -> impl Iterator<Item = &FreeVec<K, S>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Does this space contain every vector of `other`?
    pub fn contains_space(&self, other: &RowSpace<K, S>) -> bool {
        other.basis().all(|r| self.contains(r))
    }
}

/// Determinant of a square matrix by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn determinant<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut det = S::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return S::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..n {
                let delta = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
    }
    det
}

/// Basis of the right kernel `{x : A x = 0}` of an `rows x cols` matrix.
///
/// The basis is the canonical one obtained from the reduced row echelon
/// form: one vector per free column, with a `1` in that column.
#[allow(clippy::needless_range_loop)]
pub fn kernel_basis<S: Scalar>(a: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let mut m: Vec<Vec<S>> = a.to_vec();
    let rows = m.len();
    debug_assert!(m.iter().all(|row| row.len() == cols));
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = S::one() / m[row][col].clone();
        for c in col..cols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = factor.clone() * m[row][c].clone();
                    m[r][c] = m[r][c].clone() - delta;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut x = vec![S::zero(); cols];
        x[free] = S::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = -m[r][free].clone();
        }
        kernel.push(x);
    }
    kernel
}

/// Rank of a rectangular matrix.
pub fn rank<S: Scalar>(a: &[Vec<S>], cols: usize) -> usize {
    if a.is_empty() {
        return 0;
    }
    cols - kernel_basis(a, cols).len()
}
