//! Whittaker modules: induced from a character of the subalgebra spanned by
//! `d_j`, `j >= n`, sending `d_j` to `lambda_j` for `n <= j <= 2n` and to
//! zero beyond.
//!
//! The PBW alphabet is `{d_j : j <= n-1}`; the classical Whittaker module is
//! the `n = 1` member of the family.

use crate::algebra::{GenIndex, VirasoroModule};
use crate::pbw::{pbw_act, PbwMonomial, PbwRules, PbwVector};
use crate::scalar::Scalar;
use crate::simplicity::{KacWitness, Simplicity};

/// The Whittaker module with index `n >= 1`, central charge `theta` and
/// character values `lambda_n, ..., lambda_{2n}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Whittaker<S: Scalar> {
    n: u32,
    theta: S,
    lambdas: Vec<S>,
}

impl<S: Scalar> Whittaker<S> {
    pub fn new(n: u32, theta: S, lambdas: Vec<S>) -> Self {
        assert!(n >= 1, "n must be positive");
        assert_eq!(
            lambdas.len(),
            n as usize + 1,
            "expected lambda_n..lambda_2n ({} values)",
            n + 1
        );
        Whittaker { n, theta, lambdas }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn theta(&self) -> &S {
        &self.theta
    }

    pub fn lambdas(&self) -> &[S] {
        &self.lambdas
    }

    /// Character value on `d_j`, defined for `j >= n`.
    pub fn character(&self, j: GenIndex) -> S {
        debug_assert!(j >= self.n as i64);
        if j <= 2 * self.n as i64 {
            self.lambdas[(j - self.n as i64) as usize].clone()
        } else {
            S::zero()
        }
    }

    /// Simple exactly when `lambda_{2n-1} != 0` or `lambda_{2n} != 0`.
    pub fn is_simple(&self) -> Simplicity {
        let tail_prev = &self.lambdas[self.n as usize - 1];
        let tail = &self.lambdas[self.n as usize];
        if tail_prev.is_zero() && tail.is_zero() {
            Simplicity::NotSimple(Some(KacWitness::ZeroParameter(
                "lambda_{2n-1} and lambda_{2n}",
            )))
        } else {
            Simplicity::Simple
        }
    }
}

impl<S: Scalar> PbwRules<S> for Whittaker<S> {
    fn letter_max(&self) -> GenIndex {
        self.n as i64 - 1
    }

    fn theta(&self) -> S {
        self.theta.clone()
    }

    fn boundary(&self, k: GenIndex) -> PbwVector<S> {
        PbwVector::term(PbwMonomial::identity(), self.character(k))
    }
}

impl<S: Scalar> VirasoroModule<S> for Whittaker<S> {
    type Key = PbwMonomial;

    fn central_charge(&self) -> S {
        self.theta.clone()
    }

    fn act_basis(&self, k: GenIndex, key: &PbwMonomial) -> PbwVector<S> {
        pbw_act(self, k, key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::monomials_of_level;
    use crate::rng::SplitMix64;
    use crate::Q;

    fn q(s: &str) -> Q {
        Q::parse_str(s).unwrap()
    }

    fn classical(l1: &str, l2: &str) -> Whittaker<Q> {
        Whittaker::new(1, q("1/2"), vec![q(l1), q(l2)])
    }

    #[test]
    fn cyclic_vector_eigenvalues() {
        let m = classical("3", "-1/2");
        let v = PbwVector::basis(PbwMonomial::identity());
        // d_1 v = lambda_1 v, d_2 v = lambda_2 v, d_j v = 0 for j > 2
        assert_eq!(m.act(1, &v), v.scale(&q("3")));
        assert_eq!(m.act(2, &v), v.scale(&q("-1/2")));
        for j in 3..=8 {
            assert!(m.act(j, &v).is_zero(), "d_{j} v");
        }

        // n = 2: d_j v = lambda_j v for 2 <= j <= 4, zero beyond
        let m = Whittaker::new(2, q("1"), vec![q("5"), q("0"), q("-7/3")]);
        assert_eq!(m.act(2, &v), v.scale(&q("5")));
        assert!(m.act(3, &v).is_zero());
        assert_eq!(m.act(4, &v), v.scale(&q("-7/3")));
        for j in 5..=10 {
            assert!(m.act(j, &v).is_zero(), "d_{j} v");
        }
    }

    #[test]
    fn action_on_degree_one_monomial() {
        // d_2 (d_0 v) = lambda_2 d_0 v - 2 lambda_2 v
        let m = classical("0", "5/3");
        let image = m.act_basis(2, &PbwMonomial::generator(0));
        let mut expect = PbwVector::term(PbwMonomial::generator(0), q("5/3"));
        expect.add_term(PbwMonomial::identity(), q("-10/3"));
        assert_eq!(image, expect);
    }

    #[test]
    fn letters_raise_filtration_degree_by_one() {
        let m = Whittaker::new(2, q("1"), vec![q("1"), q("0"), q("-2")]);
        for level in 0..=4u32 {
            for key in monomials_of_level(2, level) {
                let d = key.degree();
                for j in [-3i64, -1, 0, 1] {
                    let image = m.act_basis(j, &key);
                    let top = image.keys().map(|k| k.degree()).max().unwrap_or(0);
                    assert_eq!(top, d + 1, "letter {j} on {key}");
                }
                for k in [2i64, 3, 5] {
                    let image = m.act_basis(k, &key);
                    let top = image.keys().map(|m2| m2.degree()).max().unwrap_or(0);
                    assert!(top <= d, "character index {k} on {key}");
                }
            }
        }
    }

    #[test]
    fn simplicity_criterion() {
        assert_eq!(classical("0", "1").is_simple(), Simplicity::Simple);
        assert!(classical("0", "0").is_simple().is_definitely_not_simple());
        let n2 = Whittaker::new(2, q("7"), vec![q("5"), q("0"), q("0")]);
        assert!(n2.is_simple().is_definitely_not_simple());
        let n2 = Whittaker::new(2, q("7"), vec![q("0"), q("1"), q("0")]);
        assert_eq!(n2.is_simple(), Simplicity::Simple);
    }

    #[test]
    fn commutator_defect_vanishes_on_sampled_basis() {
        let mut rng = SplitMix64::new(0x57A7);
        for n in [1u32, 2] {
            let lambdas: Vec<Q> = (0..=n).map(|_| rng.rational(4, 3)).collect();
            let theta: Q = rng.rational(4, 3);
            let m = Whittaker::new(n, theta, lambdas);
            for level in 0..=4u32 {
                for key in monomials_of_level(n as i64, level) {
                    let v = PbwVector::basis(key);
                    for i in -6..=6i64 {
                        for j in i..=6i64 {
                            assert!(
                                m.commutator_defect(i, j, &v).is_zero(),
                                "n={n}, (i,j)=({i},{j})"
                            );
                        }
                    }
                }
            }
        }
    }
}
