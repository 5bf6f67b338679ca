//! Semi-analytic layer functions of the two model problems.
//!
//! Convection-diffusion: the stretched layer profile `V*(xi)` (power series,
//! erfcx closed form, Mittag-Leffler form), the shooting slope
//! `theta(eps) = -1/V*(1/eps^2)`, the layer correction
//! `V(x) = 1 - V*(x/eps^2)/V*(1/eps^2)` and its eps -> 0 limit
//! `1 - sqrt(x0)`.
//!
//! Reaction-diffusion: the algebraically decaying left branch `V0` (two-term
//! Mittag-Leffler eigenfunction form cross-checked against Laplace
//! inversion), the interaction value `mu = V0` at `x = 1`, and the
//! exponential right-layer model `(1-mu) exp(-(1-x)/eps^{1/(2-alpha)})`.
//!
//! The closed erfcx form is the production path for `V*` (overflow-free for
//! any argument); the power series is retained as the validation oracle and
//! is summed in double-double arithmetic because its terms reach `e^xi`
//! while the sum stays `O(sqrt(xi))`.

use crate::dd::{dd_sqrt, Dd};
use crate::laplace::{self, LaplaceError};
use crate::specfun::{erfcx, ml};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LayersError {
    #[error("series argument xi = {xi} beyond usable range {max} (use the closed form)")]
    SeriesRange { xi: f64, max: f64 },
    #[error(
        "layer-branch regimes disagree at xi = {xi}: eigenfunction {ml:e} vs transform {transform:e}"
    )]
    RegimeMismatch { xi: f64, ml: f64, transform: f64 },
    #[error("parameter out of range: {what}")]
    Param { what: String },
    #[error(transparent)]
    Laplace(#[from] LaplaceError),
}

/// Largest xi accepted by the power series.
pub const VSTAR_SERIES_MAX_XI: f64 = 30.0;
/// Dual-evaluation window of the reaction layer branch.
pub const REAC_OVERLAP_WINDOW: (f64, f64) = (2.0, 8.0);
/// Relative agreement required of the two reaction-layer routes inside the window.
pub const REAC_OVERLAP_TOL: f64 = 1e-5;
const REAC_TALBOT_M: usize = 64;

/// Stretching exponents and derived layer scalars for one (alpha, eps) pair.
#[derive(Debug, Clone, Copy)]
pub struct LayerContext {
    pub alpha: f64,
    pub eps: f64,
    /// x -> xi = x / eps^stretch_conv with stretch_conv = 1/(1-alpha).
    pub stretch_conv: f64,
    /// x -> xi = x / eps^stretch_reac with stretch_reac = 1/(2-alpha).
    pub stretch_reac: f64,
    /// Shooting slope of the convection layer IVP.
    pub theta: f64,
    /// Value of the decaying reaction branch at x = 1.
    pub mu: f64,
}

impl LayerContext {
    pub fn new(alpha: f64, eps: f64) -> Result<Self, LayersError> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(LayersError::Param {
                what: format!("eps = {eps} not in (0, 1)"),
            });
        }
        if !(0.0..1.0).contains(&alpha) {
            return Err(LayersError::Param {
                what: format!("alpha = {alpha} not in [0, 1)"),
            });
        }
        let theta = if alpha == 0.0 {
            // classical layer: V = e^{-xi}, slope -1
            -1.0
        } else if (alpha - 0.5).abs() < 1e-12 {
            fit_theta_conv(eps)
        } else {
            fit_theta_conv_general(eps, alpha)?
        };
        let mu = if alpha == 0.0 {
            (-1.0 / eps).exp()
        } else {
            mu_reac(eps, alpha)?
        };
        if !(mu > 0.0 && mu < 1.0) {
            return Err(LayersError::Param {
                what: format!("computed mu = {mu} outside (0, 1)"),
            });
        }
        Ok(LayerContext {
            alpha,
            eps,
            stretch_conv: 1.0 / (1.0 - alpha),
            stretch_reac: 1.0 / (2.0 - alpha),
            theta,
            mu,
        })
    }
}

/// Solution of the reduced convection problem `-U' = -1, U(1) = 0`.
pub fn reduced_solution(x: f64) -> f64 {
    x - 1.0
}

/// Classical (alpha = 0) exponential layer
/// `V = (e^{-x/eps} - e^{-1/eps}) / (1 - e^{-1/eps})`.
pub fn classical_conv_layer(x: f64, eps: f64) -> f64 {
    debug_assert!(eps > 0.0 && eps < 1.0);
    let tail = (-1.0 / eps).exp(); // underflow to 0 is fine
    (((-x / eps).exp()) - tail) / (1.0 - tail)
}

/// Result of a truncated power-series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    pub value: f64,
    /// True when the last added term fell below 1e-15 of the sum.
    pub converged: bool,
}

// Gamma(5/2) to double-double accuracy.
const GAMMA_2_5: Dd = Dd {
    hi: 1.329340388179137,
    lo: -1.9882475174356644e-18,
};

/// Power series of the stretched convection layer profile,
/// `V*(xi) = sum_{k>=1} xi^k/k! - sum_{k>=1} xi^{k+1/2}/Gamma(k+3/2)`,
/// both sums truncated at `n_terms`.
///
/// Terms of the two sums are paired and accumulated in double-double
/// arithmetic; in plain f64 the cancellation across k would cost up to
/// twelve digits at xi = 30.
pub fn vstar_half_series(xi: f64, n_terms: usize) -> Result<SeriesEval, LayersError> {
    if !(xi >= 0.0) {
        return Err(LayersError::Param {
            what: format!("xi = {xi} must be nonnegative"),
        });
    }
    if xi > VSTAR_SERIES_MAX_XI {
        return Err(LayersError::SeriesRange {
            xi,
            max: VSTAR_SERIES_MAX_XI,
        });
    }
    if n_terms == 0 {
        return Err(LayersError::Param {
            what: "n_terms must be positive".into(),
        });
    }
    if xi == 0.0 {
        return Ok(SeriesEval {
            value: 0.0,
            converged: true,
        });
    }
    let xi_dd = Dd::from_f64(xi);
    // t_k = xi^k / k!, starting at k = 1
    let mut t = xi_dd;
    // s_k = xi^{k+1/2} / Gamma(k+3/2), starting at k = 1
    let mut s = xi_dd.mul(dd_sqrt(xi)).div(GAMMA_2_5);
    let mut acc = Dd::from_f64(0.0);
    let mut converged = false;
    for k in 1..=n_terms {
        let pair = t.sub(s);
        acc = acc.add(pair);
        if pair.to_f64().abs() < 1e-15 * acc.to_f64().abs() && k > 2 {
            converged = true;
            break;
        }
        let kf = k as f64;
        t = t.mul_f64(xi).div_f64(kf + 1.0);
        s = s.mul_f64(xi).div_f64(kf + 1.5);
    }
    Ok(SeriesEval {
        value: acc.to_f64(),
        converged,
    })
}

/// Closed form of the layer profile,
/// `V*(xi) = erfcx(sqrt(xi)) + 2 sqrt(xi/pi) - 1`,
/// overflow-free for all xi >= 0.
///
/// Asymptotically `V*(xi) = 2 sqrt(xi/pi) - 1 + 1/sqrt(pi xi) + O(xi^{-3/2})`.
pub fn vstar_half_closed(xi: f64) -> f64 {
    debug_assert!(xi >= 0.0);
    if xi == 0.0 {
        return 0.0;
    }
    erfcx(xi.sqrt()) + 2.0 * (xi / PI).sqrt() - 1.0
}

/// Shooting slope `theta(eps) = -1/V*(1/eps^2)` of the alpha = 1/2
/// convection layer; negative, `O(eps)` as eps -> 0.
pub fn fit_theta_conv(eps: f64) -> f64 {
    debug_assert!(eps > 0.0 && eps < 1.0);
    -1.0 / vstar_half_closed(1.0 / (eps * eps))
}

/// Layer correction `V(x) = 1 - V*(x/eps^2)/V*(1/eps^2)` of the alpha = 1/2
/// convection-diffusion problem. Exactly 1 at x = 0 and 0 at x = 1.
pub fn conv_layer_correction(x: f64, eps: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x) && eps > 0.0 && eps < 1.0);
    let inv = 1.0 / (eps * eps);
    1.0 - vstar_half_closed(x * inv) / vstar_half_closed(inv)
}

/// Pointwise eps -> 0 limit of the layer correction: `1 - sqrt(x0)`.
pub fn conv_layer_limit(x0: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x0));
    1.0 - x0.sqrt()
}

/// Decaying reaction layer branch `V0(xi)` for order `beta = 2 - alpha`:
/// the eigenfunction form `E_{beta,1}(xi^beta) - xi E_{beta,2}(xi^beta)`
/// for small and moderate xi, the inverted reduced transform for large xi
/// (where the eigenfunction difference cancels catastrophically). Inside
/// the overlap window both routes are evaluated and must agree.
pub fn reac_layer0(xi: f64, alpha: f64) -> Result<f64, LayersError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(LayersError::Param {
            what: format!("alpha = {alpha} not in (0, 1)"),
        });
    }
    if !(xi >= 0.0) {
        return Err(LayersError::Param {
            what: format!("xi = {xi} must be nonnegative"),
        });
    }
    if xi == 0.0 {
        return Ok(1.0);
    }
    let (lo, hi) = REAC_OVERLAP_WINDOW;
    let eigen = |xi: f64| {
        let beta = 2.0 - alpha;
        let arg = xi.powf(beta);
        ml(beta, 1.0, arg) - xi * ml(beta, 2.0, arg)
    };
    let transform = |xi: f64| -> Result<f64, LayersError> {
        let f = laplace::reac_layer0_transform_reduced(alpha)?;
        Ok(laplace::talbot_invert(&f, xi, REAC_TALBOT_M)?)
    };
    if xi < lo {
        Ok(eigen(xi))
    } else if xi <= hi {
        let a = eigen(xi);
        let b = transform(xi)?;
        if (a - b).abs() > REAC_OVERLAP_TOL * a.abs().max(b.abs()) {
            return Err(LayersError::RegimeMismatch {
                xi,
                ml: a,
                transform: b,
            });
        }
        Ok(a)
    } else {
        transform(xi)
    }
}

/// Interaction value `mu(eps) = V0(1/eps^{1/(2-alpha)})`; lies in (0, 1)
/// and scales like `eps^{(1-alpha)/(2-alpha)}`.
pub fn mu_reac(eps: f64, alpha: f64) -> Result<f64, LayersError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(LayersError::Param {
            what: format!("eps = {eps} not in (0, 1)"),
        });
    }
    reac_layer0(eps.powf(-1.0 / (2.0 - alpha)), alpha)
}

/// Exponential right-layer model `(1-mu) exp(-(1-x)/eps^{1/(2-alpha)})`;
/// equals `1-mu` at x = 1 and decays toward the interior.
pub fn reac_layer1_model(x: f64, eps: f64, alpha: f64, mu: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x) && eps > 0.0 && eps < 1.0);
    (1.0 - mu) * (-(1.0 - x) / eps.powf(1.0 / (2.0 - alpha))).exp()
}

/// Shooting slope for general alpha in (0, 1), from the truncated-domain
/// condition `V(1/eps^{1/(1-alpha)}) = 0`. The transform is affine in
/// theta, so one linear solve on two inverted values suffices.
pub fn fit_theta_conv_general(eps: f64, alpha: f64) -> Result<f64, LayersError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(LayersError::Param {
            what: format!("eps = {eps} not in (0, 1)"),
        });
    }
    let xi_r = eps.powf(-1.0 / (1.0 - alpha));
    let base = laplace::conv_layer_transform(alpha, 0.0)?;
    let slope = laplace::conv_layer_theta_sensitivity(alpha)?;
    let a = laplace::talbot_invert(&base, xi_r, 64)?;
    let b = laplace::talbot_invert(&slope, xi_r, 64)?;
    Ok(-a / b)
}

/// Layer correction for general alpha via Laplace inversion of the
/// stretched IVP transform with the fitted slope.
pub fn conv_layer_correction_general(x: f64, eps: f64, alpha: f64) -> Result<f64, LayersError> {
    if x <= 0.0 {
        return Ok(1.0);
    }
    if x >= 1.0 {
        return Ok(0.0);
    }
    let theta = fit_theta_conv_general(eps, alpha)?;
    let xi = x * eps.powf(-1.0 / (1.0 - alpha));
    let f = laplace::conv_layer_transform(alpha, theta)?;
    Ok(laplace::talbot_invert(&f, xi, 64)?)
}

/// Evaluates the alpha = 1/2 layer correction on a grid (parallel map).
pub fn conv_layer_profile(eps: f64, xs: &[f64]) -> Vec<f64> {
    crate::parallel::par_map_slice(xs, |&x| conv_layer_correction(x, eps))
}
