//! Zeroth-order fluxes of the Curtiss Maxwellian for molecules with internal
//! rotation, and the constitutive algebra of an inviscid nematic fluid.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::GasConstants;
use crate::rules;
use crate::tensor::{double_dot, levi_civita, Mat3, Vec3};

/// Hermite nodes per dimension for the Curtiss moments; integrands are
/// polynomials of degree <= 3 times the Gaussian, so this is exact.
const CURTISS_NODES: usize = 6;

/// Eigenvalues below this fraction of the largest are treated as zero.
const NULL_EIGENVALUE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurtissMacro {
    pub rho: f64,
    pub u: Vec3,
    pub theta: f64,
    /// Macroscopic angular velocity.
    pub gamma: Vec3,
    /// Intrinsic angular momentum density `N gamma` per unit mass (informative).
    pub mu: Vec3,
    /// Molecular inertia tensor `N`, symmetric positive semidefinite.
    pub inertia: Mat3,
}

impl CurtissMacro {
    pub fn new(rho: f64, u: Vec3, theta: f64, gamma: Vec3, inertia: Mat3) -> Result<Self> {
        if !(rho > 0.0 && theta > 0.0) {
            return Err(Error::InvalidArgument(format!("rho and theta must be positive, got ({rho}, {theta})")));
        }
        if (inertia - inertia.transpose()).amax() > 1e-12 * inertia.amax().max(1.0) {
            return Err(Error::InvalidArgument("inertia tensor must be symmetric".into()));
        }
        let eig = SymmetricEigen::new(inertia);
        let top = eig.eigenvalues.amax();
        if eig.eigenvalues.min() < -NULL_EIGENVALUE * top.max(1.0) {
            return Err(Error::InvalidArgument("inertia tensor must be positive semidefinite".into()));
        }
        Ok(CurtissMacro { rho, u, theta, gamma, mu: inertia * gamma, inertia })
    }

    pub fn pressure(&self, c: &GasConstants) -> f64 {
        self.rho * c.r_s() * self.theta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoupleFluxSet {
    pub stress: Mat3,
    pub heat_flux: Vec3,
    pub couple_stress: Mat3,
}

/// `T = -int m V V f`, `Q = int (m/2 |V|^2 + 1/2 W.NW) V f`,
/// `M = -int V (N W) f` over the Curtiss Maxwellian, with `V = v - u` and
/// `W = omega - gamma`. Angular directions in the null space of `N` carry no
/// energy and are integrated out.
pub fn curtiss_zeroth_fluxes(state: &CurtissMacro, c: &GasConstants) -> Result<CoupleFluxSet> {
    let eig = SymmetricEigen::new(state.inertia);
    let top = eig.eigenvalues.amax();
    let kt = c.k_b() * state.theta;
    // active rotational modes: (eigenvector, eigenvalue)
    let modes: Vec<(Vec3, f64)> = (0..3)
        .filter(|&i| eig.eigenvalues[i] > NULL_EIGENVALUE * top)
        .map(|i| (eig.eigenvectors.column(i).into(), eig.eigenvalues[i]))
        .collect();
    if modes.is_empty() {
        return Err(Error::InvalidArgument("inertia tensor has no positive eigenvalue".into()));
    }
    let rule = rules::gauss_hermite_probabilists(CURTISS_NODES);
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let w1: Vec<f64> = rule.weights.iter().map(|w| w * norm).collect();
    let sv = (kt / c.m()).sqrt();
    let so: Vec<f64> = modes.iter().map(|(_, l)| (kt / l).sqrt()).collect();
    let dims = 3 + modes.len();
    let n = CURTISS_NODES;
    let total = n.pow(dims as u32);
    let number_density = state.rho / c.m();

    let mut t = Mat3::zeros();
    let mut q = Vec3::zeros();
    let mut m = Mat3::zeros();
    let mut idx = vec![0usize; dims];
    for _ in 0..total {
        let mut w = number_density;
        for &i in &idx {
            w *= w1[i];
        }
        let v = Vec3::new(rule.nodes[idx[0]], rule.nodes[idx[1]], rule.nodes[idx[2]]) * sv;
        let mut om = Vec3::zeros();
        for (k, (vec, _)) in modes.iter().enumerate() {
            om += vec * (rule.nodes[idx[3 + k]] * so[k]);
        }
        let n_om = state.inertia * om;
        let energy = 0.5 * c.m() * v.norm_squared() + 0.5 * om.dot(&n_om);
        t -= v * v.transpose() * (c.m() * w);
        q += v * (energy * w);
        m -= v * n_om.transpose() * w;
        for d in idx.iter_mut() {
            *d += 1;
            if *d < n {
                break;
            }
            *d = 0;
        }
    }
    Ok(CoupleFluxSet { stress: t, heat_flux: q, couple_stress: m })
}

/// Director, its gradient `(grad n)_ij = d_j n_i`, and the inertia
/// coefficient of `N = lambda (I - n n^T)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NematicField {
    pub n: Vec3,
    pub grad_n: Mat3,
    pub lambda_inertia: f64,
}

impl NematicField {
    pub fn new(n: Vec3, grad_n: Mat3, lambda_inertia: f64) -> Result<Self> {
        if (n.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("director must be a unit vector, |n| = {}", n.norm())));
        }
        let drift = grad_n.transpose() * n;
        if drift.norm() > 1e-10 * grad_n.norm().max(1.0) {
            return Err(Error::InvalidArgument(
                "director gradient must be orthogonal to n (unit-length constraint)".into(),
            ));
        }
        if !(lambda_inertia >= 0.0 && lambda_inertia.is_finite()) {
            return Err(Error::InvalidArgument(format!("inertia coefficient must be >= 0, got {lambda_inertia}")));
        }
        Ok(NematicField { n, grad_n, lambda_inertia })
    }

    /// Normalize `n` and project `grad_n` onto the tangent space of the
    /// unit sphere.
    pub fn projected(n: Vec3, grad_n: Mat3, lambda_inertia: f64) -> Result<Self> {
        let n = n.normalize();
        let p = Mat3::identity() - n * n.transpose();
        Self::new(n, p * grad_n, lambda_inertia)
    }

    pub fn inertia(&self) -> Mat3 {
        (Mat3::identity() - self.n * self.n.transpose()) * self.lambda_inertia
    }
}

fn energy_with_gradient(theta: f64, rho: f64, lambda: f64, grad_n: &Mat3, c: &GasConstants) -> f64 {
    let rt = c.r_s() * theta;
    2.5 * rt + 0.5 * lambda * rho * rt * double_dot(grad_n, grad_n)
}

/// `e = 5/2 R_s theta + lambda/2 rho R_s theta tr(grad_n^T grad_n)`.
pub fn nematic_internal_energy(theta: f64, rho: f64, field: &NematicField, c: &GasConstants) -> f64 {
    energy_with_gradient(theta, rho, field.lambda_inertia, &field.grad_n, c)
}

/// Analytic `de/d(grad n) = lambda rho R_s theta grad n`.
pub fn energy_gradient(theta: f64, rho: f64, field: &NematicField, c: &GasConstants) -> Mat3 {
    field.grad_n * (field.lambda_inertia * rho * c.r_s() * theta)
}

/// Central finite-difference approximation of `de/d(grad n)`.
pub fn energy_gradient_fd(theta: f64, rho: f64, field: &NematicField, c: &GasConstants, h: f64) -> Mat3 {
    let mut out = Mat3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let mut gp = field.grad_n;
            let mut gm = field.grad_n;
            gp[(i, j)] += h;
            gm[(i, j)] -= h;
            let ep = energy_with_gradient(theta, rho, field.lambda_inertia, &gp, c);
            let em = energy_with_gradient(theta, rho, field.lambda_inertia, &gm, c);
            out[(i, j)] = (ep - em) / (2.0 * h);
        }
    }
    out
}

/// `X_ij = eps_iqp n_q G_jp`, the row-wise cross product `n x G`.
fn director_cross(n: &Vec3, g: &Mat3) -> Mat3 {
    Mat3::from_fn(|i, j| {
        let mut s = 0.0;
        for q in 0..3 {
            for p in 0..3 {
                s += levi_civita(i, q, p) * n[q] * g[(j, p)];
            }
        }
        s
    })
}

/// `T* = -(de/d grad n)^T grad n`, `M* = n x (de/d grad n)`.
pub fn ericksen_fluxes(field: &NematicField, theta: f64, rho: f64, c: &GasConstants) -> (Mat3, Mat3) {
    let g = energy_gradient(theta, rho, field, c);
    (-(g.transpose() * field.grad_n), director_cross(&field.n, &g))
}

/// `(-T - G^T grad n) : grad v + (-M + n x G) : grad omega`, with
/// `G = de/d(grad n)`.
#[allow(clippy::too_many_arguments)]
pub fn variational_residual(
    t: &Mat3,
    m: &Mat3,
    field: &NematicField,
    theta: f64,
    rho: f64,
    grad_v: &Mat3,
    grad_omega: &Mat3,
    c: &GasConstants,
) -> f64 {
    let g = energy_gradient(theta, rho, field, c);
    double_dot(&(-t - g.transpose() * field.grad_n), grad_v)
        + double_dot(&(-m + director_cross(&field.n, &g)), grad_omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeslieComparison {
    /// `-T* = G^T grad n`.
    pub derivative_stress: Mat3,
    /// `p lambda/2 grad n^T grad n`.
    pub printed_stress: Mat3,
    pub coefficient_derivative: f64,
    pub coefficient_printed: f64,
    /// `coefficient_derivative / coefficient_printed`; `None` when degenerate.
    pub coefficient_ratio: Option<f64>,
    /// `<-T*, printed> / |printed|^2`; `None` when degenerate.
    pub tensor_ratio: Option<f64>,
    pub degenerate: bool,
}

/// Compare the stress implied by differentiating the internal energy with
/// the `p lambda/2 grad n^T grad n` stress of the inviscid nematic momentum
/// equation.
pub fn leslie_stress_comparison(field: &NematicField, theta: f64, rho: f64, c: &GasConstants) -> LeslieComparison {
    let p = rho * c.r_s() * theta;
    let (t_star, _) = ericksen_fluxes(field, theta, rho, c);
    let derivative_stress = -t_star;
    let gg = field.grad_n.transpose() * field.grad_n;
    let coefficient_printed = p * field.lambda_inertia / 2.0;
    let coefficient_derivative = p * field.lambda_inertia;
    let printed_stress = gg * coefficient_printed;
    let pn = printed_stress.norm_squared();
    let degenerate = pn == 0.0 || coefficient_printed == 0.0;
    LeslieComparison {
        derivative_stress,
        printed_stress,
        coefficient_derivative,
        coefficient_printed,
        coefficient_ratio: (!degenerate).then(|| coefficient_derivative / coefficient_printed),
        tensor_ratio: (!degenerate).then(|| double_dot(&derivative_stress, &printed_stress) / pn),
        degenerate,
    }
}
