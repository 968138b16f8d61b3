//! Tensor products of the polynomial module with a catalog factor, and the
//! window-scale evidence machinery built on them: cyclic closures, submodule
//! shape reports and the quadratic-operator separation tests.
//!
//! A tensor vector is a finite sum of `∂^i ⊗ v` terms keyed by the pair
//! (∂-degree, factor basis key). The action is the Leibniz rule
//! `d_n (p ⊗ v) = (d_n p) ⊗ v + p ⊗ (d_n v)`; the central charge is the
//! factor's (the polynomial side contributes zero).

use crate::algebra::{GenIndex, VirasoroModule};
use crate::error::VirasoroError;
use crate::highest_weight::{verma_is_simple, SimpleQuotient, VacuumModule, Verma};
use crate::linalg::{FreeVec, RowSpace};
use crate::omega::Omega;
use crate::pbw::{monomials_of_level, PbwMonomial, PbwVector};
use crate::rng::SplitMix64;
use crate::scalar::Scalar;
use crate::simplicity::{KacWitness, Simplicity};
use crate::whittaker::Whittaker;

/// A catalog module usable as the right-hand factor of a tensor product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Factor<S: Scalar> {
    Verma(Verma<S>),
    Vacuum(VacuumModule<S>),
    SimpleQuotient(SimpleQuotient<S>),
    Whittaker(Whittaker<S>),
}

/// Isomorphism class of a catalog factor: highest-weight modules are
/// classified by `(theta, h)`, Whittaker modules by `(n, theta, lambdas)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FactorClass<S: Scalar> {
    HighestWeight { theta: S, h: S },
    Whittaker { n: u32, theta: S, lambdas: Vec<S> },
}

impl<S: Scalar> Factor<S> {
    pub fn family_name(&self) -> &'static str {
        match self {
            Factor::Verma(_) => "verma",
            Factor::Vacuum(_) => "vacuum",
            Factor::SimpleQuotient(_) => "simple-quotient",
            Factor::Whittaker(_) => "whittaker",
        }
    }

    /// One above the largest free letter of the family's PBW alphabet.
    pub fn char_start(&self) -> i64 {
        match self {
            Factor::Verma(_) | Factor::Vacuum(_) | Factor::SimpleQuotient(_) => 0,
            Factor::Whittaker(w) => w.n() as i64,
        }
    }

    /// Weighted level of a basis key in the family's grading.
    pub fn level(&self, key: &PbwMonomial) -> u32 {
        key.level(self.char_start())
    }

    /// Largest index whose action on the cyclic vector may be nonzero.
    fn character_top(&self) -> i64 {
        match self {
            Factor::Whittaker(w) => 2 * w.n() as i64,
            _ => 0,
        }
    }

    /// Simplicity of the factor; Verma factors use the bounded Kac scan.
    pub fn is_simple(&self, kac_bound: u32) -> Simplicity {
        match self {
            Factor::Verma(v) => verma_is_simple(v.theta(), v.h(), kac_bound),
            Factor::Vacuum(v) => v.is_simple(),
            // The simple quotient is irreducible by construction.
            Factor::SimpleQuotient(_) => Simplicity::Simple,
            Factor::Whittaker(w) => w.is_simple(),
        }
    }

    pub fn class(&self) -> FactorClass<S> {
        match self {
            Factor::Verma(v) => FactorClass::HighestWeight {
                theta: v.theta().clone(),
                h: v.h().clone(),
            },
            Factor::Vacuum(v) => FactorClass::HighestWeight {
                theta: v.theta().clone(),
                h: S::zero(),
            },
            Factor::SimpleQuotient(v) => FactorClass::HighestWeight {
                theta: v.theta().clone(),
                h: v.h().clone(),
            },
            Factor::Whittaker(w) => FactorClass::Whittaker {
                n: w.n(),
                theta: w.theta().clone(),
                lambdas: w.lambdas().to_vec(),
            },
        }
    }

    /// Least index `B` such that `d_l` annihilates `v` for every `l >= B`.
    ///
    /// Starts from the structural bound (character top plus level plus one,
    /// valid because every commutator chain only lowers the incoming index
    /// by the total weight of the letters it passes) and tightens by direct
    /// scan.
    pub fn annihilation_bound(&self, v: &PbwVector<S>) -> i64 {
        let structural = v
            .keys()
            .map(|m| self.character_top() + self.level(m) as i64 + 1)
            .max()
            .unwrap_or(1)
            .max(1);
        let mut bound = structural;
        while bound > 1 && self.act(bound - 1, v).is_zero() {
            bound -= 1;
        }
        bound
    }

    /// Basis vectors of the window subspace of levels `0..=cap`, by level.
    ///
    /// Free families enumerate monomials; quotient families enumerate
    /// canonical residues.
    pub fn window_basis(&self, cap: u32) -> Result<Vec<PbwVector<S>>, VirasoroError> {
        let mut out = Vec::new();
        for level in 0..=cap {
            match self {
                Factor::Verma(_) | Factor::Whittaker(_) => {
                    for m in monomials_of_level(self.char_start(), level) {
                        out.push(PbwVector::basis(m));
                    }
                }
                Factor::Vacuum(v) => out.extend(v.level_basis(level)),
                Factor::SimpleQuotient(v) => out.extend(v.level_basis(level)?),
            }
        }
        Ok(out)
    }
}

impl<S: Scalar> VirasoroModule<S> for Factor<S> {
    type Key = PbwMonomial;

    fn central_charge(&self) -> S {
        match self {
            Factor::Verma(v) => v.central_charge(),
            Factor::Vacuum(v) => v.central_charge(),
            Factor::SimpleQuotient(v) => v.central_charge(),
            Factor::Whittaker(w) => w.central_charge(),
        }
    }

    fn act_basis(&self, k: GenIndex, key: &PbwMonomial) -> PbwVector<S> {
        match self {
            Factor::Verma(v) => v.act_basis(k, key),
            Factor::Vacuum(v) => v.act_basis(k, key),
            Factor::SimpleQuotient(v) => v.act_basis(k, key),
            Factor::Whittaker(w) => w.act_basis(k, key),
        }
    }
}

/// Key of a tensor term: (∂-degree, factor basis key).
pub type TensorKey = (u32, PbwMonomial);

/// `sum_i ∂^i ⊗ v_i` with exact coefficients.
pub type TensorVector<S> = FreeVec<TensorKey, S>;

/// Truncation window for closure and shape computations: ∂-degree cap `D`,
/// factor level cap `L`, operator index range `[-K, K]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Truncation {
    pub partial_cap: u32,
    pub level_cap: u32,
    pub index_bound: i64,
}

impl Truncation {
    pub fn new(partial_cap: u32, level_cap: u32, index_bound: i64) -> Self {
        assert!(
            partial_cap >= 1 && level_cap >= 1 && index_bound >= 1,
            "window bounds must be at least 1"
        );
        Truncation {
            partial_cap,
            level_cap,
            index_bound,
        }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::new(6, 4, 6)
    }
}

/// The tensor product `Ω(λ, b) ⊗ V` for a catalog factor `V`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor<S: Scalar> {
    omega: Omega<S>,
    factor: Factor<S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn new(lambda: S, b: S, factor: Factor<S>) -> Self {
        Tensor {
            omega: Omega::new(lambda, b),
            factor,
        }
    }

    pub fn lambda(&self) -> &S {
        self.omega.lambda()
    }

    pub fn b(&self) -> &S {
        self.omega.b()
    }

    pub fn omega(&self) -> &Omega<S> {
        &self.omega
    }

    pub fn factor(&self) -> &Factor<S> {
        &self.factor
    }

    /// `1 ⊗ v` for the factor's cyclic vector.
    pub fn unit_tensor(&self) -> TensorVector<S> {
        TensorVector::basis((0, PbwMonomial::identity()))
    }

    /// `∂^degree ⊗ v` for a factor basis key.
    pub fn pure_tensor(&self, degree: u32, key: PbwMonomial) -> TensorVector<S> {
        TensorVector::basis((degree, key))
    }

    /// `p ⊗ x` for a polynomial `p` and factor vector `x`.
    pub fn product(&self, p: &crate::omega::Poly<S>, x: &PbwVector<S>) -> TensorVector<S> {
        let mut out = TensorVector::zero();
        for (i, c) in p.iter() {
            for (f, d) in x.iter() {
                out.add_term((*i, f.clone()), c.clone() * d.clone());
            }
        }
        out
    }

    /// Irreducibility per the tensor criterion: `b != 1` and the factor
    /// simple (all catalog factors are locally finite under `d_k` for large
    /// `k`). Verma factors inherit the scan bound qualifier.
    pub fn is_simple(&self, kac_bound: u32) -> Simplicity {
        if (self.b().clone() - S::one()).is_zero() {
            return Simplicity::NotSimple(Some(KacWitness::ZeroParameter("b = 1")));
        }
        self.factor.is_simple(kac_bound)
    }

    /// Isomorphism-class comparison for two tensor modules, valid when both
    /// are irreducible: equal `(λ, b)` and isomorphic factors (same family
    /// class and parameters).
    pub fn same_isomorphism_class(&self, other: &Tensor<S>) -> bool {
        self.lambda() == other.lambda()
            && self.b() == other.b()
            && self.factor.class() == other.factor.class()
    }

    /// Apply the quadratic operator `ω^{(s)}_{l,m}`.
    pub fn apply_omega_operator(
        &self,
        s: u32,
        l: GenIndex,
        m: GenIndex,
        t: &TensorVector<S>,
    ) -> TensorVector<S> {
        self.apply_element(&crate::algebra::omega_operator(s, l, m), t)
    }

    /// Restrict to the window: ∂-degree and factor level within caps.
    pub fn project_window(&self, t: &Truncation, v: &TensorVector<S>) -> TensorVector<S> {
        v.filter_keys(|(i, f)| *i <= t.partial_cap && self.factor.level(f) <= t.level_cap)
    }

    fn in_window(&self, t: &Truncation, v: &TensorVector<S>) -> bool {
        v.keys()
            .all(|(i, f)| *i <= t.partial_cap && self.factor.level(f) <= t.level_cap)
    }

    /// Iterate `d_k`, `k` in `[-K, K]`, on the span of the generators,
    /// discarding terms outside the window, until the span stabilizes.
    ///
    /// The result is a reduced basis of a subspace that is a lower bound for
    /// the intersection of the generated submodule with the window; every
    /// conclusion drawn from it is relative to the window.
    pub fn cyclic_closure(
        &self,
        generators: &[TensorVector<S>],
        t: &Truncation,
    ) -> Result<RowSpace<TensorKey, S>, VirasoroError> {
        for g in generators {
            if !self.in_window(t, g) {
                return Err(VirasoroError::WindowTooSmall(format!(
                    "generator has a term outside the window (D={}, L={})",
                    t.partial_cap, t.level_cap
                )));
            }
        }
        let mut space = RowSpace::new();
        for g in generators {
            space.insert(g.clone());
        }
        loop {
            let rows: Vec<TensorVector<S>> = space.basis().cloned().collect();
            let mut grew = false;
            for row in &rows {
                for k in -t.index_bound..=t.index_bound {
                    let image = self.project_window(t, &self.act(k, row));
                    if space.insert(image) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return Ok(space);
            }
        }
    }

    /// Slices of a closure by ∂-degree, as factor vectors.
    fn slice(v: &TensorVector<S>, degree: u32) -> PbwVector<S> {
        PbwVector::from_terms(
            v.iter()
                .filter(|((i, _), _)| *i == degree)
                .map(|((_, f), c)| (f.clone(), c.clone())),
        )
    }

    /// Analyze the shape of a closed subspace against the expected
    /// submodule forms of the tensor product.
    ///
    /// For `b != 1` every submodule is of pure form `Ω ⊗ X`; the report
    /// checks that every product of a window power of `∂` with a vector of
    /// the factor projection `X` lies in the closure, inside an inner margin
    /// window. For `b = 1` submodules decompose as `∂Ω ⊗ X_1 + Ω ⊗ X_2` and
    /// both summands are checked the same way.
    pub fn submodule_shape(
        &self,
        closure: &RowSpace<TensorKey, S>,
        t: &Truncation,
        margin: u32,
    ) -> Result<ShapeReport<S>, VirasoroError> {
        if margin >= t.partial_cap || margin >= t.level_cap {
            return Err(VirasoroError::Inconclusive(format!(
                "margin {margin} consumes the whole window ({}, {})",
                t.partial_cap, t.level_cap
            )));
        }
        let d_inner = t.partial_cap - margin;
        let l_inner = t.level_cap - margin;
        let b_is_one = (self.b().clone() - S::one()).is_zero();

        let mut zero_slices: RowSpace<PbwMonomial, S> = RowSpace::new();
        let mut positive_slices: RowSpace<PbwMonomial, S> = RowSpace::new();
        for row in closure.basis() {
            for i in 0..=t.partial_cap {
                let s = Self::slice(row, i);
                if s.is_zero() {
                    continue;
                }
                if i == 0 {
                    zero_slices.insert(s);
                } else {
                    positive_slices.insert(s);
                }
            }
        }

        let mut failures = Vec::new();
        let mut checked = 0usize;
        let inner_rows = |space: &RowSpace<PbwMonomial, S>| -> Vec<PbwVector<S>> {
            space
                .basis()
                .filter(|x| x.keys().all(|f| self.factor.level(f) <= l_inner))
                .cloned()
                .collect()
        };

        if !b_is_one {
            // All slices span X; the closure should contain ∂^i ⊗ X.
            let mut x: RowSpace<PbwMonomial, S> = RowSpace::new();
            for r in zero_slices.basis().chain(positive_slices.basis()) {
                x.insert(r.clone());
            }
            for xv in inner_rows(&x) {
                for i in 0..=d_inner {
                    checked += 1;
                    let product = self.product(&crate::omega::Poly::basis(i), &xv);
                    if !closure.contains(&product) {
                        failures.push(format!("∂^{i} ⊗ ({}) missing", describe(&xv)));
                    }
                }
            }
            let holds = failures.is_empty();
            return Ok(ShapeReport {
                b_is_one: false,
                holds,
                factor_space: x,
                zero_slice_space: None,
                checked_products: checked,
                failures,
            });
        }

        // b = 1: zero-degree slices generate the Ω ⊗ X_2 summand, positive
        // ones the ∂Ω ⊗ X_1 summand.
        for xv in inner_rows(&zero_slices) {
            for i in 0..=d_inner {
                checked += 1;
                let product = self.product(&crate::omega::Poly::basis(i), &xv);
                if !closure.contains(&product) {
                    failures.push(format!("∂^{i} ⊗ ({}) missing from Ω ⊗ X2", describe(&xv)));
                }
            }
        }
        for xv in inner_rows(&positive_slices) {
            for i in 1..=d_inner {
                checked += 1;
                let product = self.product(&crate::omega::Poly::basis(i), &xv);
                if !closure.contains(&product) {
                    failures.push(format!("∂^{i} ⊗ ({}) missing from ∂Ω ⊗ X1", describe(&xv)));
                }
            }
        }
        let holds = failures.is_empty();
        Ok(ShapeReport {
            b_is_one: true,
            holds,
            factor_space: positive_slices,
            zero_slice_space: Some(zero_slices),
            checked_products: checked,
            failures,
        })
    }

    /// Reproducible pseudo-random nonzero vectors inside the window.
    pub fn seeded_window_vectors(
        &self,
        t: &Truncation,
        count: usize,
        seed: u64,
    ) -> Result<Vec<TensorVector<S>>, VirasoroError> {
        let factor_basis = self.factor.window_basis(t.level_cap)?;
        let mut rng = SplitMix64::new(seed);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let mut v = TensorVector::zero();
            for i in 0..=t.partial_cap {
                for x in &factor_basis {
                    if rng.next_u64().is_multiple_of(4) {
                        let c: S = rng.rational(3, 2);
                        v.add_assign_ref(&self.product(&crate::omega::Poly::term(i, c), x));
                    }
                }
            }
            if !v.is_zero() {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// ∂-degrees of the iterates `d_g^k (1 ⊗ v)`: strictly growing degrees
    /// witness that no finite-dimensional subspace containing `1 ⊗ v` is
    /// invariant under `d_g`.
    pub fn iterated_degree_growth(&self, g: GenIndex, iterations: u32) -> Vec<u32> {
        let mut degrees = Vec::with_capacity(iterations as usize + 1);
        let mut w = self.unit_tensor();
        degrees.push(0);
        for _ in 0..iterations {
            w = self.act(g, &w);
            let top = w.keys().map(|(i, _)| *i).max().unwrap_or(0);
            degrees.push(top);
        }
        degrees
    }
}

fn describe<S: Scalar>(v: &PbwVector<S>) -> String {
    let terms: Vec<String> = v.iter().map(|(k, c)| format!("{c}·{k}")).collect();
    terms.join(" + ")
}

/// Outcome of a [`Tensor::submodule_shape`] analysis.
#[derive(Clone, Debug)]
pub struct ShapeReport<S: Scalar> {
    pub b_is_one: bool,
    /// Whether the closure matches the predicted shape inside the margin.
    pub holds: bool,
    /// The factor projection `X` (for `b != 1`), or the span `X_1` of the
    /// positive-degree slices (for `b = 1`).
    pub factor_space: RowSpace<PbwMonomial, S>,
    /// The span `X_2` of the degree-zero slices (`b = 1` only).
    pub zero_slice_space: Option<RowSpace<PbwMonomial, S>>,
    pub checked_products: usize,
    pub failures: Vec<String>,
}

impl<S: Scalar> VirasoroModule<S> for Tensor<S> {
    type Key = TensorKey;

    fn central_charge(&self) -> S {
        self.factor.central_charge()
    }

    fn act_basis(&self, k: GenIndex, key: &TensorKey) -> TensorVector<S> {
        let (i, f) = key;
        let mut out = TensorVector::zero();
        for (deg, c) in self.omega.act_basis(k, i).iter() {
            out.add_term((*deg, f.clone()), c.clone());
        }
        for (f2, c) in self.factor.act_basis(k, f).iter() {
            out.add_term((*i, f2.clone()), c.clone());
        }
        out
    }
}
