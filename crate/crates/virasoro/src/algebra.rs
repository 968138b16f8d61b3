//! The Virasoro Lie bracket, free enveloping-algebra elements and the
//! generic module-action contract.
//!
//! Basis: central element `c` and generators `d_i`, `i` an integer, with
//! `[d_i, d_j] = (j - i) d_{i+j} + delta_{i,-j} (i^3 - i)/12 c`. Note the
//! sign of the linear term: this convention is kept verbatim throughout the
//! crate and is the mirror image of the common `[L_m, L_n] = (m-n) L_{m+n}`.
//!
//! Words are kept free here — no normal form is imposed at this layer.
//! Normal ordering is each module family's own responsibility.

use crate::linalg::FreeVec;
use crate::scalar::{binomial, int_pow, Scalar};

/// Index of a generator `d_i`; any integer is permitted.
pub type GenIndex = i64;

/// A word in the free enveloping algebra: an ordered product of generators
/// and a power of the central element.
///
/// `factors` are listed left to right in product order, so a word acts on a
/// vector right to left: the last factor is applied first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct UeaWord {
    pub factors: Vec<GenIndex>,
    pub central_power: u32,
}

impl UeaWord {
    /// The empty word (multiplicative identity).
    pub fn identity() -> Self {
        UeaWord {
            factors: Vec::new(),
            central_power: 0,
        }
    }

    pub fn generator(i: GenIndex) -> Self {
        UeaWord {
            factors: vec![i],
            central_power: 0,
        }
    }

    pub fn central() -> Self {
        UeaWord {
            factors: Vec::new(),
            central_power: 1,
        }
    }

    pub fn product(factors: impl Into<Vec<GenIndex>>) -> Self {
        UeaWord {
            factors: factors.into(),
            central_power: 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty() && self.central_power == 0
    }
}

/// Finite linear combination of [`UeaWord`]s with exact coefficients.
pub type UeaElement<S> = FreeVec<UeaWord, S>;

/// The Lie bracket `[d_i, d_j]` as an enveloping-algebra element:
/// `(j - i) d_{i+j}` plus, when `i = -j`, the central term `(i^3 - i)/12 c`.
pub fn bracket<S: Scalar>(i: GenIndex, j: GenIndex) -> UeaElement<S> {
    let mut out = UeaElement::zero();
    out.add_term(UeaWord::generator(i + j), S::from_i64(j - i));
    if i == -j {
        let i_s = S::from_i64(i);
        let coeff = (i_s.clone() * i_s.clone() * i_s.clone() - i_s) / S::from_i64(12);
        out.add_term(UeaWord::central(), coeff);
    }
    out
}

/// The quadratic element
/// `sum_{i=0}^{s} C(s,i) (-1)^{s-i} d_{l-m-i} d_{m+i}`
/// used to separate module families.
pub fn omega_operator<S: Scalar>(s: u32, l: GenIndex, m: GenIndex) -> UeaElement<S> {
    let mut out = UeaElement::zero();
    for i in 0..=s {
        let sign = if (s - i).is_multiple_of(2) { S::one() } else { -S::one() };
        let coeff = sign * binomial::<S>(s, i);
        let word = UeaWord::product([l - m - i as i64, m + i as i64]);
        out.add_term(word, coeff);
    }
    out
}

/// A module over the Virasoro algebra with a distinguished basis.
///
/// `act_basis` gives the action of `d_k` on a basis key; the action extends
/// linearly and the central element acts as the fixed scalar
/// `central_charge`. All implementations are pure functions over immutable
/// values.
pub trait VirasoroModule<S: Scalar> {
    /// Basis key for the family's vectors.
    type Key: Ord + Clone + std::fmt::Debug;

    /// The scalar by which the central element acts.
    fn central_charge(&self) -> S;

    /// `d_k` applied to a basis vector.
    fn act_basis(&self, k: GenIndex, key: &Self::Key) -> FreeVec<Self::Key, S>;

    /// `d_k` applied to an arbitrary vector (linear extension).
    fn act(&self, k: GenIndex, v: &FreeVec<Self::Key, S>) -> FreeVec<Self::Key, S> {
        let mut out = FreeVec::zero();
        for (key, c) in v.iter() {
            let mut image = self.act_basis(k, key);
            image.scale_in_place(c);
            out.add_assign_ref(&image);
        }
        out
    }

    /// Apply a single word: factors right to left, then the central power
    /// contributes `central_charge^power`.
    fn apply_word(&self, word: &UeaWord, v: &FreeVec<Self::Key, S>) -> FreeVec<Self::Key, S> {
        let mut out = v.clone();
        for &i in word.factors.iter().rev() {
            out = self.act(i, &out);
        }
        if word.central_power > 0 {
            let c = int_pow(&self.central_charge(), word.central_power as i64);
            out.scale_in_place(&c);
        }
        out
    }

    /// Scalar-linear extension of `apply_word` to an element.
    fn apply_element(&self, e: &UeaElement<S>, v: &FreeVec<Self::Key, S>) -> FreeVec<Self::Key, S> {
        let mut out = FreeVec::zero();
        for (word, c) in e.iter() {
            let mut image = self.apply_word(word, v);
            image.scale_in_place(c);
            out.add_assign_ref(&image);
        }
        out
    }

    /// `d_i d_j v - d_j d_i v - [d_i, d_j] v`; zero certifies the module
    /// axioms on `v`.
    fn commutator_defect(
        &self,
        i: GenIndex,
        j: GenIndex,
        v: &FreeVec<Self::Key, S>,
    ) -> FreeVec<Self::Key, S> {
        let ij = self.act(i, &self.act(j, v));
        let ji = self.act(j, &self.act(i, v));
        let br = self.apply_element(&bracket(i, j), v);
        &(&ij - &ji) - &br
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn bracket_basic_values() {
        // [d_1, d_{-1}] = -2 d_0
        let b = bracket::<Q>(1, -1);
        assert_eq!(b, UeaElement::term(UeaWord::generator(0), q(-2)));

        // [d_2, d_{-2}] = -4 d_0 + (1/2) c
        let b = bracket::<Q>(2, -2);
        let mut expect = UeaElement::term(UeaWord::generator(0), q(-4));
        expect.add_term(UeaWord::central(), Q::from_fraction(1, 2));
        assert_eq!(b, expect);

        // [d_i, d_i] = 0
        for i in -5..=5 {
            assert!(bracket::<Q>(i, i).is_zero());
        }
    }

    #[test]
    fn bracket_antisymmetry_exact() {
        for i in -50..=50i64 {
            for j in -50..=50i64 {
                let left = bracket::<Q>(i, j);
                let right = bracket::<Q>(j, i);
                assert!((&left + &right).is_zero(), "bracket({i},{j}) not antisymmetric");
            }
        }
    }

    #[test]
    fn apply_element_examples() {
        use crate::highest_weight::Verma;
        use crate::pbw::{PbwMonomial, PbwVector};

        let theta = Q::from_fraction(1, 3);
        let h = Q::from_fraction(-2, 5);
        let m = Verma::new(theta.clone(), h.clone());
        let vh: PbwVector<Q> = PbwVector::basis(PbwMonomial::identity());
        let v: PbwVector<Q> = PbwVector::from_terms([
            (PbwMonomial::generator(-1), q(2)),
            (PbwMonomial::generator(-3), Q::from_fraction(1, 2)),
        ]);

        // the identity word acts as the identity
        let e = UeaElement::basis(UeaWord::identity());
        assert_eq!(m.apply_element(&e, &v), v);

        // 2 d_0 acts as twice d_0
        let e = UeaElement::term(UeaWord::generator(0), q(2));
        assert_eq!(m.apply_element(&e, &v), m.act(0, &v).scale(&q(2)));

        // [d_1, d_{-1}] acts on the cyclic vector as -2h
        let e = bracket(1, -1);
        assert_eq!(m.apply_element(&e, &vh), vh.scale(&(q(-2) * h)));

        // a central power contributes theta^power
        let e = UeaElement::basis(UeaWord {
            factors: vec![],
            central_power: 2,
        });
        assert_eq!(
            m.apply_element(&e, &v),
            v.scale(&(theta.clone() * theta))
        );
    }

    #[test]
    fn apply_element_is_additive_and_homogeneous() {
        use crate::highest_weight::Verma;
        use crate::pbw::{PbwMonomial, PbwVector};
        use crate::rng::SplitMix64;

        let mut rng = SplitMix64::new(0xB111);
        let m = Verma::new(q(2), Q::from_fraction(1, 7));
        let random_element = |rng: &mut SplitMix64| -> UeaElement<Q> {
            let mut e = UeaElement::zero();
            for _ in 0..=rng.range_i64(0, 2) {
                let len = rng.range_i64(0, 2);
                let word = UeaWord {
                    factors: (0..len).map(|_| rng.range_i64(-3, 3)).collect(),
                    central_power: rng.range_i64(0, 1) as u32,
                };
                e.add_term(word, rng.rational(4, 3));
            }
            e
        };
        let random_vector = |rng: &mut SplitMix64| -> PbwVector<Q> {
            let mut v = PbwVector::zero();
            for _ in 0..=rng.range_i64(0, 2) {
                let letters: Vec<(i64, u32)> = (0..rng.range_i64(0, 2))
                    .map(|_| (rng.range_i64(-3, -1), 1))
                    .collect();
                v.add_term(PbwMonomial::from_exponents(letters), rng.rational(4, 3));
            }
            v
        };

        for _ in 0..25 {
            let e1 = random_element(&mut rng);
            let e2 = random_element(&mut rng);
            let v1 = random_vector(&mut rng);
            let v2 = random_vector(&mut rng);
            let c: Q = rng.rational(4, 3);

            // additive and homogeneous in the element
            assert_eq!(
                m.apply_element(&(&e1 + &e2), &v1),
                &m.apply_element(&e1, &v1) + &m.apply_element(&e2, &v1)
            );
            assert_eq!(
                m.apply_element(&e1.scale(&c), &v1),
                m.apply_element(&e1, &v1).scale(&c)
            );
            // additive and homogeneous in the vector
            assert_eq!(
                m.apply_element(&e1, &(&v1 + &v2)),
                &m.apply_element(&e1, &v1) + &m.apply_element(&e1, &v2)
            );
            assert_eq!(
                m.apply_element(&e1, &v1.scale(&c)),
                m.apply_element(&e1, &v1).scale(&c)
            );
        }
    }

    #[test]
    fn omega_operator_expansions() {
        // s = 0: single word d_{l-m} d_m
        let w = omega_operator::<Q>(0, 3, 1);
        assert_eq!(w, UeaElement::term(UeaWord::product([2, 1]), q(1)));

        // s = 2: d_{l-m} d_m - 2 d_{l-m-1} d_{m+1} + d_{l-m-2} d_{m+2}
        let w = omega_operator::<Q>(2, 5, 1);
        let mut expect = UeaElement::term(UeaWord::product([4, 1]), q(1));
        expect.add_term(UeaWord::product([3, 2]), q(-2));
        expect.add_term(UeaWord::product([2, 3]), q(1));
        assert_eq!(w, expect);

        // s = 1, l = m = 0: -d_0 d_0 + d_{-1} d_1
        let w = omega_operator::<Q>(1, 0, 0);
        let mut expect = UeaElement::term(UeaWord::product([0, 0]), q(-1));
        expect.add_term(UeaWord::product([-1, 1]), q(1));
        assert_eq!(w, expect);
    }
}
