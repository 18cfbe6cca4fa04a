//! Exact-arithmetic differential algebra.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`]: rationals, sparse polynomials, rational functions, linear algebra.
//! - [`groebner`]: Buchberger's algorithm, normal forms, ideal dimension, rational points.
//! - [`diff_ring`]: differential polynomials, the orderly ranking, Ritt reduction.
//! - [`initial_sets`]: leader exponents, initial sets, dimension functions,
//!   removable points and the codimension-one prolongation bound.
//! - [`prolongation`]: prolongation frames, prolonged ideals, affine fibers and D-variety data.
//! - [`dvariety`]: polynomial vector fields, invariant subvarieties, Darboux polynomials,
//!   first integrals and logarithmic derivatives.
//! - [`exterior`]: exterior algebra and executable checks of two wedge-product lemmas.
//! - [`heights`]: heights on `Q(t)` and rational solutions of `P(x, x') = 0`.
//! - [`cli`]: the problem-file language and the batch command runner.

pub mod algebra;
pub mod groebner;
pub mod diff_ring;
pub mod initial_sets;
pub mod prolongation;
pub mod dvariety;
pub mod exterior;
pub mod heights;
pub mod cli;
