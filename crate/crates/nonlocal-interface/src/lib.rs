//! Energy-based nonlocal diffusion across a 1D material interface.
//!
//! Two materials with conductivities `kappa1`, `kappa2` meet at an interface
//! inside the interval `(a, b)`. Instead of a classical flux-matching
//! condition, the materials talk to each other through horizon kernels: every
//! point interacts with a ball of radius `delta1` (left side) or `delta2`
//! (right side), and the interface condition emerges from the energy itself.
//! The library builds the volume-constrained linear systems for this problem,
//! solves them with a banded Cholesky factorization, and measures how the
//! nonlocal solutions behave as the horizons and the mesh are refined.
//!
//! What is in the box:
//!
//! * [`geometry`] — domain layout, interaction regions around the interface,
//!   and interface-fitted uniform meshes with a double node at the interface.
//! * [`kernels`] — the four interface kernel families `K1`–`K4` and the
//!   matching 2D constant sets.
//! * [`assembly`] — banded symmetric stiffness matrices, load vectors, and
//!   elimination of the volume-constrained degrees of freedom.
//! * [`solver`] — banded Cholesky factorization and triangular solves.
//! * [`local`] — the classical (local) interface problem: closed-form
//!   reference solution and a nodally exact finite element oracle.
//! * [`analysis`] — L² error measures, horizon/mesh convergence studies,
//!   interface-jump studies, pointwise operator checks, the nonlocal
//!   integration-by-parts identity, and strong-form residual diagnostics.
//! * [`problem`] — one-call pipeline from a problem description to a solved
//!   nonlocal solution.
//! * [`cli`] — the `nli` command line: `solve`, `study`, `verify`.
//!
//! Each capability has a runnable demonstration under `examples/`:
//!
//! ```text
//! cargo run --example solve_interface       # solve one configuration end to end
//! cargo run --example kernel_gallery        # the four kernel families, 1D and 2D
//! cargo run --example delta_convergence     # L2 error as both horizons shrink
//! cargo run --example h_convergence         # mesh refinement at fixed horizons
//! cargo run --example jump_saturation       # interface jump vs h: saturation
//! cargo run --example jump_decay            # interface jump vs horizons: first order
//! cargo run --example local_reference       # the classical reference problem
//! cargo run --example operator_local_limit  # pointwise operator -> kappa u'' at rate 2
//! cargo run --example green_identity        # nonlocal integration by parts, to roundoff
//! cargo run --example strong_form_residual  # pointwise residual diagnostics
//! cargo run --example material_contrast     # high-contrast and mixed-horizon profiles
//! ```
//!
//! The same functionality is scriptable through the thin `nli` binary; see
//! the README for flags, file formats, and exit codes.

pub mod analysis;
pub mod assembly;
pub mod cli;
pub mod geometry;
pub mod kernels;
pub mod local;
pub mod problem;
pub mod quadrature;
pub mod rng;
pub mod solver;

use std::fmt;

pub use assembly::{
    apply_constraints, assemble_load, assemble_stiffness, BandedSymmetricMatrix, ConstraintData,
    ConstrainedSystem, QuadraticPoly, SourceTerm,
};
pub use geometry::{build_mesh, DomainLayout, Interval, Mesh1D, Region, RegionSet, Side};
pub use kernels::{kernel_constants_2d, make_kernel, Kernel, KernelConstants2D, KernelFamily, Material};
pub use local::{local_exact, local_fem_solve, LocalFemSolution, LocalSolution};
pub use problem::{InterfaceProblem, NonlocalSolution};
pub use solver::{factor, solve, BandedCholeskyFactor};

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A required length ratio (horizon, subdomain width, ...) over `h` is not
    /// an integer, so an interface-fitted uniform mesh cannot be built.
    NonCommensurate { quantity: &'static str, ratio: f64 },
    /// A coordinate lies outside the closed computational domain.
    OutOfDomain { x: f64, lo: f64, hi: f64 },
    /// A model parameter violates its validity constraint.
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    /// A leading pivot of the Cholesky factorization is not strictly positive.
    NotPositiveDefinite { index: usize, pivot: f64 },
    /// Vector or matrix dimensions disagree.
    DimensionMismatch { expected: usize, found: usize },
    /// The constrained system has no free unknowns or cannot be factorized.
    SingularSystem,
    /// An interaction ball reaches outside the declared evaluation domain.
    QuadratureDomainClipped { x: f64, delta: f64 },
    /// Two solutions live on meshes that cannot be compared.
    IncompatibleMeshes,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonCommensurate { quantity, ratio } => write!(
                f,
                "{quantity} = {ratio} must be a positive integer for an interface-fitted mesh"
            ),
            Error::OutOfDomain { x, lo, hi } => {
                write!(f, "coordinate {x} lies outside the domain [{lo}, {hi}]")
            }
            Error::InvalidParameter {
                name,
                value,
                requirement,
            } => write!(f, "parameter {name} = {value} violates: {requirement}"),
            Error::NotPositiveDefinite { index, pivot } => write!(
                f,
                "matrix is not positive definite: pivot {pivot} at index {index}"
            ),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::SingularSystem => write!(f, "constrained system is singular"),
            Error::QuadratureDomainClipped { x, delta } => write!(
                f,
                "interaction ball of radius {delta} at {x} leaves the declared domain"
            ),
            Error::IncompatibleMeshes => {
                write!(f, "solutions live on meshes with different layouts")
            }
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
