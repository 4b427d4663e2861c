//! Complete, Lipschitz, invariant embeddings of `ℂⁿ` under finite cyclic
//! unitary actions, including circular translation.
//!
//! The construction has three stages:
//!
//! 1. [`invariants`]: a separating set of `n(n+1)/2` invariant monomials for
//!    a diagonal action of `ℤ_m`, giving the polynomial map `F_T`.
//! 2. [`embed`]: a seeded generic linear map `ℓ` that reduces `F_T` to
//!    `2n+1` coordinates (`2n` when `T = ωI`), and the sphere-normalized map
//!    `Φ(x) = ‖x‖ ℓ(F_T(x/‖x‖))`, which is Lipschitz with constant `3m‖ℓ‖`.
//! 3. [`analysis`]: sampling suites that check invariance, separation, the
//!    upper Lipschitz bound, non-parallelism and the lack of a lower bound.
//!
//! ```
//! use orbit_embed::{CyclicAction, Pipeline, TargetDim, ComplexSignal};
//!
//! let action = CyclicAction::diagonal(12, &[6, 3, 4, 2, 2]).unwrap();
//! let pipeline = Pipeline::new(action.clone(), TargetDim::Auto, 42).unwrap();
//! assert_eq!(pipeline.target_dim(), 11);
//!
//! let x = ComplexSignal::from_real(&[0.1, -0.4, 0.3, 0.8, 0.2]);
//! let gx = action.act(5, &x).unwrap();
//! let (a, b) = (pipeline.embed(&x).unwrap(), pipeline.embed(&gx).unwrap());
//! assert!(orbit_embed::action::distance(&a, &b) < 1e-12);
//! ```

pub mod action;
pub mod analysis;
pub mod cli;
pub mod embed;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod sampling;

pub use action::{dft, idft, ActionForm, ComplexSignal, CyclicAction, Dft};
pub use embed::{
    auto_target_dim, eval_gradient, eval_invariants, operator_norm, Jacobian, LipschitzBound,
    Pipeline, Reducer, ReducerKind, TargetDim,
};
pub use error::{Error, Result};
pub use invariants::{
    coordinate_order, is_homogeneous, is_invariant_monomial, pair_exponents, separating_set,
    Monomial, SeparatingSet,
};
