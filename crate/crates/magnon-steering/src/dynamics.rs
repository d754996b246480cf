//! Drift and diffusion matrices, dynamical stability, and the steady-state
//! Lyapunov solver with an independent time-integration oracle.
//!
//! Quadrature ordering is `(x_a, y_a, X₁, Y₁, X₂, Y₂)` and every entry is in
//! units of `κ_a`, so time below means `κ_a t`. The steady-state covariance
//! matrix solves `AΣ + ΣAᵀ = −F`; the solver vectorizes this to a dense 36×36
//! linear system (exact at this size — note the O(n⁶) scaling wall for larger
//! mode networks) while [`integrate_to_steady_state`] reaches the same fixed
//! point by explicit adaptive time stepping, giving a structurally independent
//! cross-check.

use nalgebra::{DMatrix, DVector, Matrix6, SMatrix};
use thiserror::Error;

use crate::model::{BathMoments, SystemSpec};

/// Specs with |margin| below this (in κ_a units) sit numerically on the
/// stability boundary: steady-state determinants blow up and sweep points are
/// flagged marginal instead of evaluated.
pub const STABILITY_EPSILON: f64 = 1e-10;

/// Relative Frobenius residual above which a Lyapunov solve is declared
/// numerically singular.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("system is not stable (stability margin {margin:.6e} κ_a ≥ -{STABILITY_EPSILON:e})")]
    UnstableSystem { margin: f64 },
    #[error(
        "Lyapunov system is numerically singular (relative residual {residual:.3e}); \
         the spec sits at the stability boundary"
    )]
    SingularSolve { residual: f64 },
    #[error(
        "no steady state within {steps} integration steps (‖Σ‖_F = {sigma_norm:.3e}); \
         the system is diverging or marginally stable"
    )]
    MaxStepsExceeded { steps: usize, sigma_norm: f64 },
}

/// The 6×6 drift matrix A of the linearized quadrature dynamics, κ_a units.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftMatrix(pub Matrix6<f64>);

/// The 6×6 diffusion (noise input) matrix F, κ_a units.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionMatrix(pub Matrix6<f64>);

/// Symmetrized steady-state second moments Σ_ij = ½⟨v_i v_j + v_j v_i⟩ in the
/// convention x = (a† + a)/√2, so the vacuum variance is ½.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix(pub Matrix6<f64>);

impl DriftMatrix {
    pub fn as_matrix(&self) -> &Matrix6<f64> {
        &self.0
    }

    /// Row-major CSV rendering for debugging, 17 significant digits.
    pub fn to_csv(&self) -> String {
        matrix_csv(&self.0)
    }
}

impl DiffusionMatrix {
    pub fn as_matrix(&self) -> &Matrix6<f64> {
        &self.0
    }

    pub fn to_csv(&self) -> String {
        matrix_csv(&self.0)
    }
}

impl CovarianceMatrix {
    pub fn as_matrix(&self) -> &Matrix6<f64> {
        &self.0
    }

    pub fn to_csv(&self) -> String {
        matrix_csv(&self.0)
    }

    /// Smallest eigenvalue of the Hermitian matrix Σ + (i/2)Ω, where Ω is the
    /// symplectic form. Physical states have a nonnegative floor (up to
    /// roundoff); −1e-9 is the working tolerance.
    ///
    /// Computed through the real symmetric 12×12 embedding
    /// `[[Σ, −C], [C, Σ]]` with `C = Ω/2`, whose spectrum equals that of
    /// Σ + iC with every eigenvalue doubled in multiplicity.
    pub fn symplectic_floor(&self) -> f64 {
        let omega = symplectic_form();
        let mut embed = SMatrix::<f64, 12, 12>::zeros();
        for i in 0..6 {
            for j in 0..6 {
                let c = 0.5 * omega[(i, j)];
                embed[(i, j)] = self.0[(i, j)];
                embed[(i + 6, j + 6)] = self.0[(i, j)];
                embed[(i, j + 6)] = -c;
                embed[(i + 6, j)] = c;
            }
        }
        embed.symmetric_eigen().eigenvalues.min()
    }

    pub fn is_physical(&self, tolerance: f64) -> bool {
        self.symplectic_floor() >= -tolerance
    }
}

/// Block-diagonal symplectic form Ω with 2×2 blocks [[0, 1], [−1, 0]].
pub fn symplectic_form() -> Matrix6<f64> {
    let mut omega = Matrix6::zeros();
    for mode in 0..3 {
        omega[(2 * mode, 2 * mode + 1)] = 1.0;
        omega[(2 * mode + 1, 2 * mode)] = -1.0;
    }
    omega
}

fn matrix_csv(m: &Matrix6<f64>) -> String {
    (0..6)
        .map(|i| {
            (0..6)
                .map(|j| format!("{:.16e}", m[(i, j)]))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Builds the drift matrix A from the spec (κ_a units).
///
/// The OPA enters only the cavity block (gain 2Λ at phase φ); each magnon
/// couples to the cavity through the skew pattern `±Γ_k` and never directly
/// to the other magnon.
pub fn drift_matrix(spec: &SystemSpec) -> DriftMatrix {
    let (g1, g2) = (spec.gamma_1, spec.gamma_2);
    let (k1, k2) = (spec.kappa_1, spec.kappa_2);
    let (da, d1, d2) = (spec.delta_a(), spec.delta_1(), spec.delta_2());
    let lam = spec.lambda_opa;
    let (sin_phi, cos_phi) = spec.phi_opa.sin_cos();
    let (lc, ls) = (2.0 * lam * cos_phi, 2.0 * lam * sin_phi);
    DriftMatrix(Matrix6::from_row_slice(&[
        -1.0 + lc, da + ls, 0.0, g1, 0.0, g2, //
        -da + ls, -1.0 - lc, -g1, 0.0, -g2, 0.0, //
        0.0, g1, -k1, d1, 0.0, 0.0, //
        -g1, 0.0, -d1, -k1, 0.0, 0.0, //
        0.0, g2, 0.0, 0.0, -k2, d2, //
        -g2, 0.0, 0.0, 0.0, -d2, -k2,
    ]))
}

/// Builds the diffusion matrix F from the spec and its bath moments
/// (κ_a units).
///
/// Cavity block `[[α⁺, β], [β, α⁻]]` with `α± = (±2 Re M + 2N + 1)κ_a` and
/// `β = i(M* − M)κ_a = 2κ_a Im M = 2κ_a (1 + 2n̄_a) sinh r cosh r sin θ`
/// (always real); magnon diagonals `κ_k(2n̄_k + 1)`.
pub fn diffusion_matrix(spec: &SystemSpec, bath: &BathMoments) -> DiffusionMatrix {
    let alpha_plus = 2.0 * bath.big_m.re + 2.0 * bath.big_n + 1.0;
    let alpha_minus = -2.0 * bath.big_m.re + 2.0 * bath.big_n + 1.0;
    let beta = 2.0 * bath.big_m.im;
    let m1 = spec.kappa_1 * (2.0 * bath.n_1 + 1.0);
    let m2 = spec.kappa_2 * (2.0 * bath.n_2 + 1.0);
    let mut f = Matrix6::zeros();
    f[(0, 0)] = alpha_plus;
    f[(1, 1)] = alpha_minus;
    f[(0, 1)] = beta;
    f[(1, 0)] = beta;
    f[(2, 2)] = m1;
    f[(3, 3)] = m1;
    f[(4, 4)] = m2;
    f[(5, 5)] = m2;
    DiffusionMatrix(f)
}

/// Stability verdict for a drift matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    /// True iff `margin < −STABILITY_EPSILON`.
    pub is_stable: bool,
    /// Spectral abscissa: the largest real part among the eigenvalues of A,
    /// in κ_a units. Negative for decaying dynamics.
    pub margin: f64,
}

/// Classifies the dynamics by the spectral abscissa of A.
pub fn stability(a: &DriftMatrix) -> StabilityReport {
    let margin = a
        .0
        .complex_eigenvalues()
        .iter()
        .map(|ev| ev.re)
        .fold(f64::NEG_INFINITY, f64::max);
    StabilityReport {
        is_stable: margin < -STABILITY_EPSILON,
        margin,
    }
}

/// Relative Lyapunov residual ‖AΣ + ΣAᵀ + F‖_F / ‖F‖_F.
pub fn lyapunov_residual(a: &DriftMatrix, f: &DiffusionMatrix, sigma: &CovarianceMatrix) -> f64 {
    let r = a.0 * sigma.0 + sigma.0 * a.0.transpose() + f.0;
    r.norm() / f.0.norm()
}

/// Solves `AΣ + ΣAᵀ = −F` for the steady-state covariance matrix.
///
/// The equation is vectorized row-major into `(A⊗I + I⊗A) vec(Σ) = −vec(F)`
/// and solved by dense LU with partial pivoting, then symmetrized to scrub
/// roundoff asymmetry before any downstream determinant is taken. Solutions
/// whose relative residual exceeds [`RESIDUAL_TOLERANCE`] are rejected as
/// singular rather than returned as garbage.
pub fn steady_state_cm(
    a: &DriftMatrix,
    f: &DiffusionMatrix,
) -> Result<CovarianceMatrix, DynamicsError> {
    let report = stability(a);
    if !report.is_stable {
        return Err(DynamicsError::UnstableSystem {
            margin: report.margin,
        });
    }

    let a_dyn = DMatrix::from_fn(6, 6, |i, j| a.0[(i, j)]);
    let eye = DMatrix::<f64>::identity(6, 6);
    // Row-major vec: vec(AΣ) = (A⊗I)vec(Σ), vec(ΣAᵀ) = (I⊗A)vec(Σ).
    let system = a_dyn.kronecker(&eye) + eye.kronecker(&a_dyn);
    let rhs = DVector::from_fn(36, |idx, _| -f.0[(idx / 6, idx % 6)]);

    let solution = system
        .lu()
        .solve(&rhs)
        .ok_or(DynamicsError::SingularSolve {
            residual: f64::INFINITY,
        })?;

    let raw = Matrix6::from_fn(|i, j| solution[i * 6 + j]);
    let sigma = CovarianceMatrix(0.5 * (raw + raw.transpose()));

    let residual = lyapunov_residual(a, f, &sigma);
    if !(residual <= RESIDUAL_TOLERANCE) {
        return Err(DynamicsError::SingularSolve { residual });
    }
    Ok(sigma)
}

/// Options for the time-integration oracle.
#[derive(Debug, Clone, Copy)]
pub struct IntegratorOptions {
    /// Hard cap on accepted + rejected steps before giving up.
    pub max_steps: usize,
    /// Divergence guard: abort once ‖Σ‖_F exceeds this.
    pub max_norm: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            max_steps: 2_000_000,
            max_norm: 1e12,
        }
    }
}

/// Independent steady-state oracle: integrates `Σ̇ = AΣ + ΣAᵀ + F` from
/// `Σ(0) = ½·I` with an adaptive Dormand–Prince 5(4) stepper until
/// `‖Σ̇‖_F < tol·‖F‖_F`, and returns the limit.
///
/// Shares no code path with [`steady_state_cm`] beyond the matrix type, which
/// is the point: agreement between the two is a strong correctness check.
pub fn integrate_to_steady_state(
    a: &DriftMatrix,
    f: &DiffusionMatrix,
    tol: f64,
) -> Result<CovarianceMatrix, DynamicsError> {
    integrate_to_steady_state_with(a, f, tol, IntegratorOptions::default())
}

pub fn integrate_to_steady_state_with(
    a: &DriftMatrix,
    f: &DiffusionMatrix,
    tol: f64,
    options: IntegratorOptions,
) -> Result<CovarianceMatrix, DynamicsError> {
    // Dormand–Prince 5(4) tableau.
    const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    const A_TAB: [[f64; 6]; 7] = [
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];

    let derivative =
        |sigma: &Matrix6<f64>| -> Matrix6<f64> { a.0 * sigma + sigma * a.0.transpose() + f.0 };

    let f_norm = f.0.norm();
    let stop_norm = tol * f_norm;
    let mut sigma = Matrix6::identity() * 0.5;
    // ‖Σ̇(0)‖ may already be under the stop threshold (e.g. the vacuum fixed
    // point); check before stepping.
    if derivative(&sigma).norm() < stop_norm {
        return Ok(CovarianceMatrix(sigma));
    }

    let mut dt = (0.01 / a.0.norm().max(1e-6)).min(0.1);
    let mut stages: [Matrix6<f64>; 7] = [Matrix6::zeros(); 7];
    let mut deriv_start = derivative(&sigma);

    for step in 0..options.max_steps {
        stages[0] = deriv_start;
        for s in 1..7 {
            let mut arg = sigma;
            for (j, stage) in stages.iter().enumerate().take(s) {
                if A_TAB[s][j] != 0.0 {
                    arg += stage * (dt * A_TAB[s][j]);
                }
            }
            let _ = C; // stage times are implicit: the ODE is autonomous
            stages[s] = derivative(&arg);
        }

        let mut high = sigma;
        let mut low = sigma;
        for s in 0..7 {
            if B5[s] != 0.0 {
                high += stages[s] * (dt * B5[s]);
            }
            if B4[s] != 0.0 {
                low += stages[s] * (dt * B4[s]);
            }
        }

        // Per-step error budget: three orders below the stop threshold, so
        // the noise accepted over many steps cannot floor ‖Σ̇‖ above it, yet
        // far enough above the ~ulp·‖Σ‖ roundoff floor of the estimate that
        // the controller cannot spiral into rejecting every genuine step.
        let scale = (tol * 1e-3) * sigma.norm().max(1.0);
        let error = (high - low).norm();

        if error <= scale {
            sigma = 0.5 * (high + high.transpose());
            deriv_start = derivative(&sigma);
            if deriv_start.norm() < stop_norm {
                return Ok(CovarianceMatrix(sigma));
            }
            if !sigma.norm().is_finite() || sigma.norm() > options.max_norm {
                return Err(DynamicsError::MaxStepsExceeded {
                    steps: step + 1,
                    sigma_norm: sigma.norm(),
                });
            }
        }

        let shrink = if error > 0.0 {
            0.9 * (scale / error).powf(0.2)
        } else {
            5.0
        };
        dt *= shrink.clamp(0.2, 5.0);
        if !dt.is_finite() || dt <= 0.0 {
            return Err(DynamicsError::MaxStepsExceeded {
                steps: step + 1,
                sigma_norm: sigma.norm(),
            });
        }
    }

    Err(DynamicsError::MaxStepsExceeded {
        steps: options.max_steps,
        sigma_norm: sigma.norm(),
    })
}
