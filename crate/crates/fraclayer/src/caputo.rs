//! Discrete Caputo differentiation of order beta in (1, 2) on arbitrary
//! meshes.
//!
//! The operator discretizes
//!
//! ```text
//! D^beta u(x_i) = 1/Gamma(2-beta) * integral_0^{x_i} (x_i - t)^{1-beta} u''(t) dt
//! ```
//!
//! by replacing u'' on each interval (x_{j-1}, x_j) with twice the second
//! divided difference over (x_{j-1}, x_j, x_{j+1}) and integrating the
//! kernel exactly:
//!
//! ```text
//! kappa_ij = [(x_i - x_{j-1})^{2-beta} - (x_i - x_j)^{2-beta}] / Gamma(3-beta).
//! ```
//!
//! Row i therefore reaches node i+1 (lower-Hessenberg band); the final row
//! falls back to the one-sided difference over (x_{N-2}, x_{N-1}, x_N). The
//! piecewise representation of u'' is exact for quadratics and the kernel
//! integration is exact, so the operator annihilates constants and linears
//! and reproduces `D^beta x^2` to rounding.
//!
//! Rows are independent and built in parallel. Node 0 has no history; its
//! output is defined as 0 and never used by the BVP assembler.

use crate::mesh::Mesh;
use crate::parallel::par_map_indexed;
use crate::specfun::lanczos_gamma;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CaputoError {
    #[error("beta = {beta} outside (1, 2)")]
    BetaRange { beta: f64 },
    #[error("mesh needs at least 2 intervals for the second-difference stencil")]
    MeshTooSmall,
    #[error("value vector has length {got}, mesh has {want} nodes")]
    LengthMismatch { got: usize, want: usize },
}

/// Dense per-node weight rows of the discrete operator.
#[derive(Debug, Clone)]
pub struct CaputoOperator {
    beta: f64,
    mesh: Mesh,
    /// rows[i] holds weights for nodes 0..=min(i+1, N).
    rows: Vec<Vec<f64>>,
}

/// Weight row of node `i`; length `min(i+2, N+1)`, all zeros for i = 0.
///
/// Public so callers (benchmarks, parallel assembly) can build rows
/// independently.
pub fn operator_row(mesh: &Mesh, beta: f64, i: usize) -> Vec<f64> {
    let x = mesh.nodes();
    let n = mesh.n_intervals();
    let support = (i + 2).min(n + 1);
    let mut w = vec![0.0; support];
    if i == 0 {
        return w;
    }
    let xi = x[i];
    let inv_gamma3mb = 1.0 / lanczos_gamma(3.0 - beta);
    let p = 2.0 - beta;
    for j in 1..=i {
        let kappa = ((xi - x[j - 1]).powf(p) - (xi - x[j]).powf(p)) * inv_gamma3mb;
        // second divided difference nodes: (x_{j-1}, x_j, x_{j+1}),
        // shifted left one place on the final interval of the last row
        let (l, c, rn) = if j < n { (j - 1, j, j + 1) } else { (n - 2, n - 1, n) };
        let span = x[rn] - x[l];
        let a = 2.0 / (span * (x[c] - x[l]));
        let b = 2.0 / (span * (x[rn] - x[c]));
        w[l] += kappa * a;
        w[c] -= kappa * (a + b);
        w[rn] += kappa * b;
    }
    w
}

/// Builds the operator on `mesh` for order `beta` in (1, 2).
pub fn build_operator(mesh: &Mesh, beta: f64) -> Result<CaputoOperator, CaputoError> {
    if !(beta > 1.0 && beta < 2.0) {
        return Err(CaputoError::BetaRange { beta });
    }
    if mesh.n_intervals() < 2 {
        return Err(CaputoError::MeshTooSmall);
    }
    let n = mesh.n_intervals();
    let rows = par_map_indexed(n + 1, |i| operator_row(mesh, beta, i));
    Ok(CaputoOperator {
        beta,
        mesh: mesh.clone(),
        rows,
    })
}

impl CaputoOperator {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    /// Weight row of node i.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    /// Applies the operator to nodal values.
    pub fn apply(&self, values: &[f64]) -> Result<Vec<f64>, CaputoError> {
        let want = self.mesh.nodes().len();
        if values.len() != want {
            return Err(CaputoError::LengthMismatch {
                got: values.len(),
                want,
            });
        }
        Ok(par_map_indexed(self.rows.len(), |i| {
            self.rows[i]
                .iter()
                .zip(values)
                .map(|(w, v)| w * v)
                .sum::<f64>()
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::GradeSide;
    use crate::specfun::lanczos_gamma;

    /// Caputo power rule `D^beta x^p = Gamma(p+1)/Gamma(p+1-beta) x^{p-beta}`.
    fn power_rule(p: f64, beta: f64, x: f64) -> f64 {
        lanczos_gamma(p + 1.0) / lanczos_gamma(p + 1.0 - beta) * x.powf(p - beta)
    }

    /// Brute-force quadrature oracle for beta = 3/2: with t = x sin^2(phi)
    /// the defining integral becomes smooth,
    /// D^{3/2} u(x) = 2 sqrt(x)/Gamma(1/2) * integral_0^{pi/2} u''(x sin^2 phi) sin(phi) dphi,
    /// and composite Simpson converges fast.
    fn quadrature_oracle_beta_3_2(u_dd: impl Fn(f64) -> f64, x: f64) -> f64 {
        let m = 4096;
        let h = std::f64::consts::FRAC_PI_2 / m as f64;
        let g = |phi: f64| {
            let s = phi.sin();
            u_dd(x * s * s) * s
        };
        let mut acc = g(0.0) + g(std::f64::consts::FRAC_PI_2);
        for k in 1..m {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * g(k as f64 * h);
        }
        let integral = acc * h / 3.0;
        2.0 * x.sqrt() / lanczos_gamma(0.5) * integral
    }

    fn meshes(n: usize) -> Vec<Mesh> {
        vec![
            Mesh::uniform(n, 1.0).unwrap(),
            Mesh::graded(n, 1.0, 2.0, GradeSide::Left).unwrap(),
            Mesh::graded(n, 1.0, 2.0, GradeSide::Both).unwrap(),
        ]
    }

    #[test]
    fn annihilates_constants_and_linears() {
        for n in [16usize, 64, 256] {
            for mesh in meshes(n) {
                for beta in [1.2, 1.5, 1.8] {
                    let op = build_operator(&mesh, beta).unwrap();
                    let ones = vec![1.0; n + 1];
                    let lin: Vec<f64> = mesh.nodes().to_vec();
                    for v in op.apply(&ones).unwrap() {
                        assert!(v.abs() < 1e-11, "const: beta {beta} n {n}: {v}");
                    }
                    for v in op.apply(&lin).unwrap() {
                        assert!(v.abs() < 1e-11, "linear: beta {beta} n {n}: {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn exact_on_quadratics() {
        for n in [16usize, 64, 256] {
            for mesh in meshes(n) {
                for beta in [1.2, 1.5, 1.8] {
                    let op = build_operator(&mesh, beta).unwrap();
                    let sq: Vec<f64> = mesh.nodes().iter().map(|&x| x * x).collect();
                    let out = op.apply(&sq).unwrap();
                    for (i, &x) in mesh.nodes().iter().enumerate().skip(1) {
                        let want = power_rule(2.0, beta, x);
                        assert!(
                            (out[i] - want).abs() < 1e-11 * (1.0 + want.abs()),
                            "beta {beta} n {n} x {x}: {} vs {want}",
                            out[i]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_value_at_one_matches_reference() {
        // D^{3/2} x^2 at x = 1 equals 2/Gamma(3/2) = 2.2567583341910251
        let mesh = Mesh::uniform(64, 1.0).unwrap();
        let op = build_operator(&mesh, 1.5).unwrap();
        let sq: Vec<f64> = mesh.nodes().iter().map(|&x| x * x).collect();
        let out = op.apply(&sq).unwrap();
        assert!((out[64] - 2.2567583341910251).abs() < 1e-12);
    }

    #[test]
    fn power_rule_validated_by_quadrature() {
        // the defining-integral oracle reproduces the closed power rule
        for p in [2.0, 2.5, 3.0] {
            let u_dd = move |t: f64| p * (p - 1.0) * t.powf(p - 2.0);
            for x in [0.5, 1.0] {
                let q = quadrature_oracle_beta_3_2(u_dd, x);
                let w = power_rule(p, 1.5, x);
                assert!((q - w).abs() < 1e-9 * (1.0 + w.abs()), "p {p} x {x}: {q} vs {w}");
            }
        }
    }

    #[test]
    fn cubic_converges_to_power_rule() {
        // u = x^3, beta = 3/2: first-kind truncation, value at x = 1
        // approaches Gamma(4)/Gamma(5/2) = 4.5135166683820503
        let want = 4.5135166683820503;
        let mut prev = f64::INFINITY;
        for n in [128usize, 256, 512] {
            let mesh = Mesh::uniform(n, 1.0).unwrap();
            let op = build_operator(&mesh, 1.5).unwrap();
            let cube: Vec<f64> = mesh.nodes().iter().map(|&x| x * x * x).collect();
            let out = op.apply(&cube).unwrap();
            let err = (out[n] - want).abs();
            assert!(err < prev, "n = {n}: {err}");
            prev = err;
        }
        assert!(prev < 2e-2);
    }

    #[test]
    fn refinement_consistency_x_2_5() {
        // max nodal error against the power rule drops by >= 1.5 per doubling
        let beta = 1.5;
        let mut errs = Vec::new();
        for n in [64usize, 128, 256, 512] {
            let mesh = Mesh::uniform(n, 1.0).unwrap();
            let op = build_operator(&mesh, beta).unwrap();
            let vals: Vec<f64> = mesh.nodes().iter().map(|&x| x.powf(2.5)).collect();
            let out = op.apply(&vals).unwrap();
            let err = mesh
                .nodes()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| (out[i] - power_rule(2.5, beta, x)).abs())
                .fold(0.0f64, f64::max);
            errs.push(err);
        }
        for w in errs.windows(2) {
            assert!(w[0] / w[1] >= 1.5, "errors {errs:?}");
        }
    }

    #[test]
    fn scale_covariance() {
        // rescaling the mesh by c scales D^beta of the rescaled monomial by c^{-beta}
        let beta = 1.4;
        let c = 7.0;
        let base = Mesh::uniform(128, 1.0).unwrap();
        let scaled = Mesh::uniform(128, c).unwrap();
        let op1 = build_operator(&base, beta).unwrap();
        let op2 = build_operator(&scaled, beta).unwrap();
        let f1: Vec<f64> = base.nodes().iter().map(|&x| x * x).collect();
        let f2: Vec<f64> = scaled.nodes().iter().map(|&x| (x / c) * (x / c)).collect();
        let d1 = op1.apply(&f1).unwrap();
        let d2 = op2.apply(&f2).unwrap();
        for i in 1..d1.len() {
            let want = d1[i] * c.powf(-beta);
            assert!((d2[i] - want).abs() < 1e-12 * (1.0 + want.abs()), "i = {i}");
        }
    }

    #[test]
    fn node_zero_and_errors() {
        let mesh = Mesh::uniform(8, 1.0).unwrap();
        let op = build_operator(&mesh, 1.5).unwrap();
        assert!(op.row(0).iter().all(|&w| w == 0.0));
        assert!(matches!(
            build_operator(&mesh, 2.0),
            Err(CaputoError::BetaRange { .. })
        ));
        assert!(matches!(
            op.apply(&[1.0; 4]),
            Err(CaputoError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn lower_hessenberg_support() {
        let mesh = Mesh::graded(32, 1.0, 2.0, GradeSide::Left).unwrap();
        let op = build_operator(&mesh, 1.7).unwrap();
        for i in 0..=32 {
            assert_eq!(op.row(i).len(), (i + 2).min(33));
        }
    }
}
