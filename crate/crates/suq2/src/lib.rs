//! Exact computer algebra for the quantum SU(2) group.
//!
//! The crate implements, over an exact coefficient field, the standard
//! machinery of `SU_q(2)` representation theory for a deformation parameter
//! `q` in `[-1,1] \ {0}`:
//!
//! - [`qscalar`]: the coefficient field `Q(i)(s)` with `s^2 = q_0 = |q|`,
//!   extended by formal square roots of q-integer products, together with
//!   q-special functions (q-integers, q-Pochhammer symbols, Gauss binomials,
//!   little q-Jacobi polynomials) and a certified numeric backend.
//! - [`ncalg`]: the coordinate *-algebra of `SU_q(2)` as normal-ordered
//!   noncommutative polynomials, with coproduct, counit, antipode, Haar
//!   state and torus actions.
//! - [`corep`]: the irreducible corepresentation matrices `w(pi_nu)`, their
//!   F-matrices, Haar orthogonality and the `U_q(su2)` differential actions.
//! - [`clebsch`]: quantum Clebsch-Gordan coefficients, highest weight
//!   vectors, eigenvector products `Psi_l` and their closed forms.
//! - [`coideal`]: quantum spheres, the infinite-dihedral and order-two
//!   coideals, and the elimination systems ruling out the remaining types.
//! - [`graphkit`]: the norm-2 graph catalogue, Perron-Frobenius checks,
//!   fusion rules and McKay diagrams of closed subgroups.
//! - [`qminus1`]: the Kac case `q = -1` with its Pauli-matrix
//!   representations and sharp subgroups.
//! - [`report`]: structured pass/fail reports shared by all verifiers.

pub mod qscalar;
pub mod ncalg;
pub mod corep;
pub mod clebsch;
pub mod coideal;
pub mod graphkit;
pub mod qminus1;
pub mod report;

pub use qscalar::{Ctx, HalfInt, QParam, Scalar, Sign};
pub use report::{Report, ReportItem, Status};
