//! Truncated generalized Hermite polynomials, their zeros, and the equilibrium problems
//! describing the zeros for large degree.
//!
//! The weight is `|x|^{2λ} e^{−x²}` restricted either to `[a, ∞)` or to `|x| ≥ a`.
//!
//! - [`recurrence`] builds the orthonormal three-term recurrence by a discretized Stieltjes
//!   procedure.
//! - [`polynomials`] evaluates `H_n` and the lowering relation / second-order equation.
//! - [`zeros`] gives the zeros as Jacobi-matrix eigenvalues and their empirical measure.
//! - [`equilibrium`] holds the explicit equilibrium densities of `x² + 2α log(1/|x|)`.
//! - [`energy`] evaluates discrete electrostatic energies at the zeros.
//! - [`cli`] is the command-line front end behind the `hermite-eq` binary.

pub mod cli;
pub mod energy;
pub mod equilibrium;
pub mod error;
pub mod format;
pub(crate) mod gauss;
pub mod polynomials;
pub mod recurrence;
pub mod weights;
pub mod zeros;

pub use equilibrium::{solve_endpoints, CaseTag, EquilibriumMeasure, FieldSpec};
pub use error::{Error, Result};
pub use polynomials::{eval_poly, ode_coefficients, ode_residual, LadderForm, OdeCoefficients};
pub use recurrence::{build_table, RecurrenceTable};
pub use weights::{QuadratureScheme, SupportKind, WeightSpec};
pub use zeros::{compute_zeros, ks_distance, EmpiricalCdf, ZeroSet};
