//! Exact computation of the graded Lie algebra of infinitesimal CR
//! automorphisms of polynomial model hypersurfaces
//!
//! ```text
//!     M_P = { (z, w) in C^n x C : Im w = P(z, conj z) }
//! ```
//!
//! where `P` is weighted homogeneous of degree one with respect to rational
//! weights `mu = (mu_1, ..., mu_n)`. An infinitesimal automorphism is a
//! holomorphic vector field `X = sum_j f_j(z,w) d/dz_j + g(z,w) d/dw` whose
//! real part is tangent to `M_P`:
//!
//! ```text
//!     Re X (Im w - P) = 0   on M_P.
//! ```
//!
//! The crate enumerates the admissible weighted degrees, solves the tangency
//! condition degree by degree as an exact rational linear system, and derives
//! structure verdicts from the resulting kernel bases: absence of rotations
//! with real or nilpotent parts, vanishing of rigid intermediate symmetries,
//! sum-of-squares grading shapes, and the jet-determination order.
//!
//! All core arithmetic is exact (arbitrary-precision rationals and Gaussian
//! rationals); floating point only appears in optional numeric cross-checks.
//!
//! Entry points:
//! * [`model::Model::validate`] / [`model::Model::build_sos`] — construct a model,
//! * [`solver::full_grading`] — compute the graded symmetry algebra,
//! * [`analysis::structure_verdict`] — match the grading against the known
//!   structure theorems,
//! * [`cli`] — expression parser, model zoo and report generation used by the
//!   `crsym` binary.
//!
//! All values are immutable after construction and safe to share between
//! threads; every operation is a pure function of its inputs.

pub mod analysis;
pub mod arith;
pub mod cli;
pub mod fields;
pub mod linalg;
pub mod model;
pub mod ring;
pub mod solver;

pub use arith::{GaussRat, MultiIndex, Rat};
pub use fields::{GradedVField, VField};
pub use model::Model;
pub use ring::{HoloPoly, MixedPoly, RealPoly, WeightVector};
pub use solver::GradingReport;
