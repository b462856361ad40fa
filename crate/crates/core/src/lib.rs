//! Exact computer algebra for formal deformations of the plane and of
//! Euclidean four-space.
//!
//! Everything is computed over a two-level scalar tower:
//!
//! * [`RadicalScalar`] — finite Q-linear combinations of square roots of
//!   squarefree positive integers, with exact arithmetic;
//! * [`HSeries`] — polynomials in the deformation parameter `h` truncated at
//!   a fixed order, with `RadicalScalar` coefficients.
//!
//! On top of the tower sit quantum arithmetic ([`qarith`]), noncommutative
//! polynomial algebras with confluent rewriting ([`ncalg`]), deformed sl2
//! representation data and Clebsch-Gordan tables ([`rep`]), ordering
//! prescriptions between commutative and deformed algebras ([`ordering`]),
//! and star products with their symmetry actions ([`star`]). The [`verify`]
//! module packages the consistency suites used by the CLI.
//!
//! All results are exact: equality of truncated series means coefficient-wise
//! identity of exact scalars, never a numerical tolerance.

pub mod error;
pub mod ncalg;
pub mod ordering;
pub mod qarith;
pub mod rep;
pub mod scalar;
pub mod star;
pub mod verify;

pub use error::{Error, Result};
pub use ncalg::{
    monomials_of_degree, normal_form, parse_poly, qdet, AlgebraDescriptor, AlgebraKind, Mono,
    NCPoly, RewriteStrategy,
};
pub use ordering::{
    m2_irred_basis, m2_irred_expand, m2_monomial_coords, m2_product_formula_check,
    m2_sympres_ordering, plane_irred_basis, plane_ordering, GradedMatrix, OrderingKind,
    OrderingMap, ProductFormulaReport,
};
pub use qarith::{hexp, hexp_int, qbinom, qfact, qnum, qnum_int, HalfInt};
pub use rep::{
    alpha_inv, cg_table, coproduct_action, irrep_classical, irrep_deformed, weight_twist, CGTable,
    CopySide, RepMatrix, SlGen, SymbolicOperator,
};
pub use scalar::{HSeries, RadicalScalar, Rational};
pub use star::{
    classical_action, invariance_report, star, transferred_action, InvarianceReport, StarAlgebra,
};
pub use verify::{run_suite, Check, Suite, SuiteReport, VerifyConfig};
