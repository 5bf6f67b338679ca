//! Default tolerances of the verification suite, one table, each with its
//! origin. All are overridable by name through [`super::VerifyConfig`].

/// Mittag-Leffler identity suite (exp, cos, erfc, recurrence): the
/// evaluator is contracted to 1e-10 relative inside its accuracy domain,
/// one digit of slack for the identity arithmetic.
pub const ML_IDENTITY: f64 = 1e-9;

/// Series vs closed form of the layer profile on [0, 30], scaled by
/// 1 + |V*|; the series oracle carries ~1e-12 after compensated summation.
pub const VSTAR_EQUIV: f64 = 1e-8;

/// Closed form vs Mittag-Leffler form of the layer profile on [0, 25].
pub const VSTAR_ML_FORM: f64 = 1e-9;

/// Contour inversion of the layer transform against the eigenfunction form.
pub const TRANSFORM_ORACLE: f64 = 1e-6;

/// Relative movement allowed when doubling the contour node count 64 -> 128.
pub const TALBOT_REFINE: f64 = 1e-8;

/// Relative deviation of eps*V*(1/eps^2) from 2/sqrt(pi) and of
/// theta(eps)/eps from -sqrt(pi)/2 at the smallest verified eps; the next
/// asymptotic correction is O(eps), so 1e-3 holds for eps <= 1e-4.
pub const THETA_SCALING: f64 = 1e-3;

/// Upper bound on |theta(eps)|/eps over the verified eps range (the limit
/// constant is sqrt(pi)/2 ~ 0.886).
pub const THETA_BOUND: f64 = 1.0;

/// Pointwise distance of the layer correction from its limit 1 - sqrt(x0);
/// the deviation is 0.886*eps*(1 - sqrt(x0)), below 0.01 for eps <= 1e-2.
pub const LIMIT_LAW: f64 = 0.01;

/// Minimum decrease factor of the limit-law deviation per tenfold eps
/// reduction (the deviation is asymptotically linear in eps).
pub const LIMIT_LAW_DECREASE: f64 = 5.0;

/// Minimum max-norm misfit of the best least-squares exponential fit to the
/// layer correction: the profile is algebraic, not exponential.
pub const NONEXP_MISFIT: f64 = 0.05;

/// Window around 1 for V0(xi)*sqrt(pi*xi) on xi in [1e2, 1e4].
pub const REAC_DECAY: f64 = 0.01;

/// Window around 1 for mu(eps)*eps^{-1/3}*sqrt(pi) at eps = 1e-6.
pub const MU_SCALING: f64 = 0.01;

/// Allowed deviation of mu(1e-3)/mu(1e-6) from the eps^{1/3} ratio 10.
pub const MU_RATIO: f64 = 0.5;

/// Polynomial exactness (degree <= 2) of the discrete Caputo operator.
pub const CAPUTO_EXACT: f64 = 1e-11;

/// Minimum error-reduction factor per mesh doubling for u = x^{2.5}.
pub const CAPUTO_REFINE: f64 = 1.5;

/// Max nodal error of the convection-diffusion solve at N = 1024 against
/// the exact semi-analytic solution.
pub const SOLVER_CONV_ERR: f64 = 0.05;

/// Relative residual ||A u - b||_inf / ||b||_inf after any solve.
pub const SOLVER_RESIDUAL: f64 = 1e-10;

/// Allowed excursion of reaction-diffusion interior values outside [-1, 0].
pub const REAC_RANGE: f64 = 0.0;

/// Minimum self-convergence factor per doubling for the reaction solve.
pub const REAC_SELFCONV: f64 = 1.4;

/// The right-layer indicator may exceed 0.1 only within this many layer
/// widths eps^{2/3} of x = 1.
pub const REAC_LAYER_WIDTH: f64 = 15.0;
