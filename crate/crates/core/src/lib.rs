//! Stokes matrices from Teichmüller shear coordinates.
//!
//! This crate constructs unit upper-triangular Stokes matrices whose entries
//! are geodesic length functions on two families of surfaces (a sphere with
//! one hole and `n` order-two orbifold points, and a genus-`g` surface with
//! one or two holes), verifies that the Goldman bracket on shear coordinates
//! closes into the Dubrovin–Ugaglia quadratic algebra, certifies the Jordan
//! profile and symplectic-leaf dimension of `S^{-T}S`, and checks the
//! Hamiltonian isomonodromic flow together with its Painlevé VI reduction.
//!
//! Module map:
//! - [`laurent`]: exact Laurent-polynomial scalars over Gaussian rationals in
//!   quarter-exponentials of shear coordinates.
//! - [`mat2`]: 2×2 matrices over a generic ring, plus word evaluation.
//! - [`surfaces`]: the two surface families, generator words, Stokes matrices.
//! - [`poisson`]: incidence forms, the Goldman bracket, the reference
//!   quadratic bracket, calibration, skein and Casimir checks.
//! - [`leaves`]: numeric linear algebra on `S^{-T}S` (Jordan profiles, leaf
//!   dimensions, determinant identities, the Minkowski model, the
//!   isospectral solver).
//! - [`isomonodromy`]: the flow on skew matrices `V`, dual residues,
//!   monodromy matrices, and the Painlevé VI residual check.
//! - [`report`]: serializable report records with stable identity tags.

pub mod isomonodromy;
pub mod laurent;
pub mod leaves;
pub mod mat2;
pub mod numeric;
pub mod poisson;
pub mod report;
pub mod sampling;
pub mod surfaces;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("variable `{0}` has no assigned value")]
    MissingAssignment(String),
    #[error("variable `{0}` is assigned zero but occurs with a negative exponent")]
    ZeroAtNegativeExponent(String),
    #[error("non-finite value produced while evaluating `{0}`")]
    NonFiniteValue(String),
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("substitution requires even exponents in `{0}`, found exponent {1}")]
    OddExponent(String, i32),
    #[error("{family} family requires n >= {min}, got {n}")]
    BadSize {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("coordinate vector length mismatch: expected {expected}, got {got}")]
    BadPoint { expected: usize, got: usize },
    #[error("index pair ({0}, {1}) out of range for n = {2}")]
    BadIndices(usize, usize, usize),
    #[error("incidence form failed validation: {0}")]
    IncidenceInvalid(String),
    #[error("calibration system is infeasible: {0}")]
    CalibrationInfeasible(String),
    #[error("matrix is numerically singular ({0})")]
    Singular(String),
    #[error("parameter q is too close to a root of det(qS + S^T)")]
    BadDualParameter,
    #[error("points u_{0} and u_{1} collide")]
    CoincidentPoints(usize, usize),
    #[error("Newton iteration failed to converge: residual {0:.3e}")]
    NewtonDiverged(f64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
