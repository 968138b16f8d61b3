//! The polynomial module on `C[∂]` with the closed-form action
//! `d_n ∂^j = λ^n (∂ + n(b-1)) (∂ - n)^j` and trivial central action.

use crate::algebra::{GenIndex, VirasoroModule};
use crate::error::VirasoroError;
use crate::linalg::FreeVec;
use crate::scalar::{binomial, int_pow, Scalar};

/// Polynomial in `∂`, stored sparsely by degree.
pub type Poly<S> = FreeVec<u32, S>;

/// The module `Ω(λ, b)` on `C[∂]`. Requires `λ != 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Omega<S: Scalar> {
    lambda: S,
    b: S,
}

impl<S: Scalar> Omega<S> {
    pub fn new(lambda: S, b: S) -> Self {
        assert!(!lambda.is_zero(), "lambda must be nonzero");
        Omega { lambda, b }
    }

    pub fn lambda(&self) -> &S {
        &self.lambda
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    /// Irreducible exactly when `b != 1`.
    pub fn is_simple(&self) -> bool {
        !(self.b.clone() - S::one()).is_zero()
    }
}

impl<S: Scalar> VirasoroModule<S> for Omega<S> {
    type Key = u32;

    fn central_charge(&self) -> S {
        S::zero()
    }

    fn act_basis(&self, k: GenIndex, key: &u32) -> Poly<S> {
        let j = *key;
        let lam_k = int_pow(&self.lambda, k);
        let shift = S::from_i64(k) * (self.b.clone() - S::one());
        let minus_k = S::from_i64(-k);
        // (∂ - k)^j = sum_t C(j,t) (-k)^{j-t} ∂^t, then multiply by
        // λ^k (∂ + k(b-1)).
        let mut out = Poly::zero();
        for t in 0..=j {
            let c = binomial::<S>(j, t) * int_pow(&minus_k, (j - t) as i64) * lam_k.clone();
            out.add_term(t + 1, c.clone());
            out.add_term(t, c * shift.clone());
        }
        out
    }
}

/// Degree of a polynomial; `None` for zero.
pub fn degree<S: Scalar>(p: &Poly<S>) -> Option<u32> {
    p.leading().map(|(d, _)| *d)
}

/// The intertwiner from the codimension-one submodule `∂ C[∂]` of
/// `Ω(λ, 1)` onto `Ω(λ, 0)`: divides by `∂`.
///
/// Fails when the constant term is nonzero (the input is then not in the
/// submodule).
pub fn b1_submodule_map<S: Scalar>(p: &Poly<S>) -> Result<Poly<S>, VirasoroError> {
    if p.get(&0).is_some() {
        return Err(VirasoroError::NonzeroConstantTerm);
    }
    Ok(Poly::from_terms(
        p.iter().map(|(d, c)| (d - 1, c.clone())),
    ))
}
