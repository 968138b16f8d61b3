//! Exact-arithmetic engine for modules over the Virasoro algebra.
//!
//! The algebra has basis `{c, d_i : i integer}` with
//! `[d_i, d_j] = (j - i) d_{i+j} + delta_{i,-j} (i^3 - i)/12 c` and central
//! `c`. The crate implements, over exact rational scalars:
//!
//! * the polynomial modules `Ω(λ, b)` on `C[∂]` ([`omega`]);
//! * Verma modules with the contravariant form, Kac factors, singular-vector
//!   search and the vacuum-type and simple quotients ([`highest_weight`]);
//! * Whittaker modules ([`whittaker`]);
//! * the induced family over the subalgebras spanned by
//!   `d_k - λ^{k-n+1} d_{n-1}` ([`induced`]), with exact parameter maps to
//!   tensor-product form and a window-scale isomorphism verifier;
//! * tensor products `Ω(λ, b) ⊗ V` with irreducibility and isomorphism
//!   criteria, truncated cyclic-closure search and submodule-shape reports
//!   ([`tensor`]).
//!
//! All values are immutable after construction and the actions are pure
//! functions, so independent evaluations may run concurrently. Every test
//! and criterion in the crate is exact: there are no tolerances because
//! there is no floating point.

pub mod algebra;
pub mod error;
pub mod highest_weight;
pub mod induced;
pub mod json;
pub mod linalg;
pub mod omega;
pub mod pbw;
pub mod rng;
pub mod scalar;
pub mod simplicity;
pub mod tensor;
pub mod whittaker;

pub use algebra::{bracket, omega_operator, GenIndex, UeaElement, UeaWord, VirasoroModule};
pub use error::VirasoroError;
pub use highest_weight::{
    gram_matrix, kac_factor, level_basis, singular_vectors, vacuum_is_simple, verma_is_simple,
    SimpleQuotient, VacuumModule, Verma, DEFAULT_KAC_BOUND,
};
pub use induced::{inverse_param_map, Induced, IsoReport};
pub use linalg::{FreeVec, RowSpace};
pub use omega::{b1_submodule_map, Omega};
pub use pbw::{monomials_of_level, PbwMonomial, PbwVector};
pub use scalar::Scalar;
pub use simplicity::{KacWitness, Simplicity};
pub use tensor::{Factor, FactorClass, ShapeReport, Tensor, TensorKey, TensorVector, Truncation};
pub use whittaker::Whittaker;

/// The default exact scalar: arbitrary-precision rational.
pub type Q = num_rational::BigRational;

/// Polynomial in `∂` over [`Q`].
pub type QPoly = omega::Poly<Q>;

/// PBW vector over [`Q`].
pub type QPbwVector = pbw::PbwVector<Q>;

/// Tensor vector over [`Q`].
pub type QTensorVector = tensor::TensorVector<Q>;

/// Enveloping-algebra element over [`Q`].
pub type QUeaElement = algebra::UeaElement<Q>;
