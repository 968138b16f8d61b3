//! PBW monomials and the shared normal-ordering engine.
//!
//! The highest-weight, Whittaker and induced families all have bases indexed
//! by monomials in generators `d_j` with `j` at most a family-specific bound,
//! applied to a cyclic vector. Applying an arbitrary `d_k` is the classical
//! straightening computation: commute `d_k` into position with the bracket
//! and resolve generators beyond the bound by the family's defining relations
//! at the cyclic vector. Families supply those relations through the
//! crate-internal `PbwRules` trait.

use crate::algebra::GenIndex;
use crate::linalg::FreeVec;
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent map of a PBW basis monomial; the empty monomial is the cyclic
/// vector itself.
///
/// The canonical word lists factors by descending generator index, so e.g.
/// the map `{-1: 2, -3: 1}` is the word `d_{-1} d_{-1} d_{-3}` (applied right
/// to left). No zero exponents are stored.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct PbwMonomial(BTreeMap<GenIndex, u32>);

impl PbwMonomial {
    /// The empty monomial (the cyclic vector).
    pub fn identity() -> Self {
        PbwMonomial(BTreeMap::new())
    }

    pub fn generator(i: GenIndex) -> Self {
        PbwMonomial(BTreeMap::from([(i, 1)]))
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (GenIndex, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (i, e) in exps {
            if e > 0 {
                *m.entry(i).or_insert(0) += e;
            }
        }
        PbwMonomial(m)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, i: GenIndex) -> u32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    /// Exponent pairs by descending generator index (canonical word order).
    pub fn iter_desc(&self) -> impl Iterator<Item = (GenIndex, u32)> + '_ {
        self.0.iter().rev().map(|(&i, &e)| (i, e))
    }

    /// Total number of factors.
    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    /// Largest generator index present.
    pub fn leading_index(&self) -> Option<GenIndex> {
        self.0.keys().next_back().copied()
    }

    /// Weighted degree with letter `d_j` weighing `char_start - j`; for the
    /// highest-weight alphabet (`char_start = 0`) this is the usual level.
    pub fn level(&self, char_start: i64) -> u32 {
        debug_assert!(
            self.leading_index().is_none_or(|i| i < char_start),
            "monomial {self} has letters at or above the character start {char_start}"
        );
        self.0
            .iter()
            .map(|(&i, &e)| (char_start - i) as u64 * e as u64)
            .sum::<u64>() as u32
    }

    /// Monomial with one more `d_i` factor.
    pub fn times(&self, i: GenIndex) -> Self {
        let mut m = self.0.clone();
        *m.entry(i).or_insert(0) += 1;
        PbwMonomial(m)
    }

    /// Monomial with one `d_i` factor removed; `None` if absent.
    pub fn divide(&self, i: GenIndex) -> Option<Self> {
        let mut m = self.0.clone();
        match m.get_mut(&i) {
            Some(e) if *e > 1 => {
                *e -= 1;
            }
            Some(_) => {
                m.remove(&i);
            }
            None => return None,
        }
        Some(PbwMonomial(m))
    }
}

impl Ord for PbwMonomial {
    /// Lexicographic on exponent vectors read at descending generator index;
    /// `d_{-1}^2 > d_{-2}`, and for any alphabet the pure power of the
    /// highest letter is the largest monomial of its level.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((ia, ea)), Some((ib, eb))) => {
                    if ia != ib {
                        return ia.cmp(ib);
                    }
                    if ea != eb {
                        return ea.cmp(eb);
                    }
                }
            }
        }
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, e) in self.iter_desc() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "d_{{{i}}}")?;
            } else {
                write!(f, "d_{{{i}}}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A PBW vector: linear combination of monomials applied to the cyclic
/// vector.
pub type PbwVector<S> = FreeVec<PbwMonomial, S>;

/// Defining data of a PBW family: which generators are free letters and what
/// the remaining ones do to the cyclic vector.
pub(crate) trait PbwRules<S: Scalar> {
    /// Letters are the `d_j` with `j <= letter_max()`.
    fn letter_max(&self) -> GenIndex;

    /// Central charge.
    fn theta(&self) -> S;

    /// `d_k` applied to the cyclic vector for `k > letter_max()`.
    fn boundary(&self, k: GenIndex) -> PbwVector<S>;
}

/// `d_k` applied to a basis monomial, in exact PBW normal form.
pub(crate) fn pbw_act<S: Scalar, R: PbwRules<S>>(
    rules: &R,
    k: GenIndex,
    m: &PbwMonomial,
) -> PbwVector<S> {
    let Some(j) = m.leading_index() else {
        return if k <= rules.letter_max() {
            FreeVec::basis(PbwMonomial::generator(k))
        } else {
            rules.boundary(k)
        };
    };
    if k <= rules.letter_max() && k >= j {
        return FreeVec::basis(m.times(k));
    }
    // d_k d_j = d_j d_k + (j - k) d_{k+j} + delta_{k,-j} (k^3 - k)/12 c
    let m1 = m.divide(j).expect("leading letter present");
    let mut out = PbwVector::zero();
    for (t, c) in pbw_act(rules, k, &m1).iter() {
        let mut image = pbw_act(rules, j, t);
        image.scale_in_place(c);
        out.add_assign_ref(&image);
    }
    if j != k {
        let mut image = pbw_act(rules, k + j, &m1);
        image.scale_in_place(&S::from_i64(j - k));
        out.add_assign_ref(&image);
    }
    if k + j == 0 {
        let ks = S::from_i64(k);
        let central =
            (ks.clone() * ks.clone() * ks.clone() - ks) / S::from_i64(12) * rules.theta();
        out.add_term(m1, central);
    }
    out
}

fn partitions_into(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    let top = max_part.min(n);
    for part in (1..=top).rev() {
        prefix.push(part);
        partitions_into(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// All monomials of exact weighted level `level` over the alphabet
/// `{d_j : j < char_start}`, sorted descending (pure power of the highest
/// letter first). Level zero yields the identity monomial alone.
pub fn monomials_of_level(char_start: i64, level: u32) -> Vec<PbwMonomial> {
    let mut parts = Vec::new();
    partitions_into(level, level, &mut Vec::new(), &mut parts);
    let mut monos: Vec<PbwMonomial> = parts
        .into_iter()
        .map(|partition| {
            PbwMonomial::from_exponents(
                partition
                    .into_iter()
                    .map(|part| (char_start - part as i64, 1)),
            )
        })
        .collect();
    monos.sort_unstable_by(|a, b| b.cmp(a));
    monos
}

/// All monomials of weighted level at most `cap`, grouped by level.
pub fn monomials_up_to_level(char_start: i64, cap: u32) -> Vec<(u32, Vec<PbwMonomial>)> {
    (0..=cap)
        .map(|lvl| (lvl, monomials_of_level(char_start, lvl)))
        .collect()
}
