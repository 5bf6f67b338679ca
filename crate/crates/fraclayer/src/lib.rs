//! Semi-analytic and numerical machinery for the boundary-layer structure of
//! singularly perturbed Caputo fractional two-point boundary value problems.
//!
//! The crate covers two model problems on `[0, 1]` with a small parameter
//! `eps` multiplying a Caputo derivative of order `2 - alpha`, `alpha` in
//! `(0, 1)`:
//!
//! * convection-diffusion: `-eps D^{2-alpha} u - u' = f`, whose layer at
//!   `x = 0` decays only algebraically and approaches the profile
//!   `1 - sqrt(x0)` as `eps -> 0`;
//! * reaction-diffusion: `-eps D^{2-alpha} u + u = f`, with an algebraically
//!   decaying layer at `x = 0` and an exponentially decaying one at `x = 1`.
//!
//! Modules:
//!
//! * [`specfun`] — Gamma, erfc/erfcx and the two-parameter Mittag-Leffler
//!   function with regime-switched evaluation.
//! * [`laplace`] — numerical inverse Laplace transform on a deformed contour
//!   plus constructors for the transforms of the layer functions; the
//!   independent oracle for every layer profile.
//! * [`layers`] — closed/series/Mittag-Leffler forms of the layer functions,
//!   the shooting slope `theta`, the interaction value `mu`, and their
//!   asymptotic scalings.
//! * [`mesh`], [`caputo`] — graded meshes and the discrete Caputo operator
//!   of order `beta = 2 - alpha` on arbitrary meshes.
//! * [`solver`] — assembly and direct Hessenberg elimination for the model
//!   problems, plus convergence studies.
//! * [`verify`] — the quantitative verification suite behind the `verify`
//!   command-line subcommand.
//!
//! All numerical kernels are data-parallel over mesh rows and evaluation
//! grids. The `parallel` feature (on by default) backs them with rayon;
//! disabling it falls back to sequential loops with identical results.

pub mod caputo;
pub(crate) mod dd;
pub mod laplace;
pub mod layers;
pub mod mesh;
pub mod parallel;
pub mod solver;
pub mod specfun;
pub mod verify;

pub use caputo::{build_operator, CaputoError, CaputoOperator};
pub use laplace::{talbot_invert, LaplaceError, TransformFn};
pub use layers::LayersError;
pub use mesh::{GradeSide, Mesh, MeshError, MeshKind};
pub use solver::{solve_bvp, ProblemKind, ProblemSpec, Solution, SolverError};
pub use specfun::{mittag_leffler, MLParams, SpecfunError};
