//! Closure selection by constrained entropy-production maximization, the
//! minimal-relaxation-time dual, the linear irreversible closure and the
//! Euler limit.
//!
//! Fluxes and affinities are handled as flat 8-vectors: five coordinates of
//! a symmetric traceless tensor in an orthonormal basis followed by three
//! vector components. With that layout `J . A` equals
//! `(T + pI)^d : Dd + Q . g`, where `g = -grad(theta)/theta`.

pub mod kkt;
pub mod producer;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chapman_enskog::TransportCoefficients;
use crate::error::{Error, Result};
use crate::quadrature::GasConstants;
use crate::tensor::{deviator, Mat3, Vec3};
use crate::thermo::{AffinitySet, FluxSet};

pub use kkt::{KktOptions, KktSolution, LogRelaxationTime, MaxProduction};
pub use producer::{Flat, Producer, QuadraticProducer, QuarticProducer, ShiftedProducer, FLAT_DIM};

const S2: f64 = std::f64::consts::SQRT_2;

/// Orthonormal basis of symmetric traceless 3x3 tensors.
fn basis() -> [Mat3; 5] {
    let s6 = 6.0_f64.sqrt();
    [
        Mat3::from_diagonal(&Vec3::new(1.0, -1.0, 0.0)) / S2,
        Mat3::from_diagonal(&Vec3::new(1.0, 1.0, -2.0)) / s6,
        Mat3::new(0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0) / S2,
        Mat3::new(0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0) / S2,
        Mat3::new(0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0) / S2,
    ]
}

/// Coordinates of the deviatoric part of `m` (the trace is dropped).
pub fn flatten_deviator(m: &Mat3) -> [f64; 5] {
    let d = deviator(&crate::tensor::symmetric_part(m));
    basis().map(|b| crate::tensor::double_dot(&b, &d))
}

pub fn unflatten_deviator(c: &[f64]) -> Mat3 {
    basis().iter().zip(c).fold(Mat3::zeros(), |acc, (b, x)| acc + b * *x)
}

fn join(t: [f64; 5], v: &Vec3) -> Flat {
    Flat::from_fn(|i, _| if i < 5 { t[i] } else { v[i - 5] })
}

fn tail(f: &Flat) -> Vec3 {
    Vec3::new(f[5], f[6], f[7])
}

/// `A = (Dd, g)`.
pub fn flatten_affinities(a: &AffinitySet) -> Flat {
    join(flatten_deviator(&a.dd), &a.g_theta)
}

/// Affinities from a flat vector; `D` is taken traceless.
pub fn unflatten_affinities(a: &Flat) -> AffinitySet {
    let dd = unflatten_deviator(a.as_slice());
    AffinitySet { dd, d_full: dd, g_theta: tail(a) }
}

/// `J = ((T + pI)^d, Q)`.
pub fn flatten_fluxes(f: &FluxSet, p: f64) -> Flat {
    join(flatten_deviator(&(f.stress + Mat3::identity() * p)), &f.heat_flux)
}

pub fn unflatten_fluxes(j: &Flat, p: f64) -> FluxSet {
    FluxSet { stress: unflatten_deviator(j.as_slice()) - Mat3::identity() * p, heat_flux: tail(j) }
}

/// Closed-form maximizer for the quadratic producer: `T = -pI + 2 nu Dd`,
/// `Q = kappa theta g = -kappa grad(theta)`.
pub fn rs_closure_quadratic(a: &AffinitySet, coeffs: &TransportCoefficients, theta: f64, p: f64) -> FluxSet {
    FluxSet { stress: -Mat3::identity() * p + a.dd * (2.0 * coeffs.nu), heat_flux: a.g_theta * (coeffs.kappa * theta) }
}

/// Feasible starting point along the producer's preferred direction.
fn feasible_start(p: &dyn Producer, a: &Flat) -> Result<Flat> {
    let d = p.initial_direction(a);
    let s = p.ray_scale(&d, a).ok_or(Error::Convergence { iterations: 0, residual: f64::INFINITY })?;
    Ok(d * s)
}

/// Maximize `P(J)` subject to `P(J) = J . A` by Newton iteration on the KKT
/// system. `A = 0` returns `J = 0`.
pub fn rs_closure_numeric(p: &dyn Producer, a: &Flat, opts: &KktOptions) -> Result<KktSolution> {
    p.validate()?;
    if a.iter().all(|x| *x == 0.0) {
        return Ok(KktSolution { j: Flat::zeros(), multiplier: 0.0, iterations: 0, residual: 0.0, feasibility: 0.0 });
    }
    let j0 = feasible_start(p, a)?;
    kkt::solve(&MaxProduction(p), p, a, &j0, opts)
}

/// Producer together with the relaxation exponent and the numerator `iota`
/// of `theta xi_hat = iota(A) / tau^alpha`.
pub struct ProducerSpec<'a> {
    pub producer: &'a dyn Producer,
    pub alpha: f64,
    pub iota: &'a dyn Fn(&Flat) -> f64,
}

impl ProducerSpec<'_> {
    /// `tau(J) = (iota / P(J))^{1/alpha}`.
    pub fn relaxation_time(&self, j: &Flat, a: &Flat) -> f64 {
        ((self.iota)(a) / self.producer.value(j)).powf(1.0 / self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinRelaxation {
    pub j: Flat,
    pub tau_star: f64,
    pub solution: KktSolution,
}

/// Minimize `tau(J)` over the admissible set.
pub fn min_relaxation_closure(spec: &ProducerSpec<'_>, a: &Flat, opts: &KktOptions) -> Result<MinRelaxation> {
    spec.producer.validate()?;
    if !(spec.alpha > 0.0 && spec.alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {}", spec.alpha)));
    }
    if a.iter().all(|x| *x == 0.0) {
        return Err(Error::InvalidArgument("relaxation time is undefined at zero affinities".into()));
    }
    let iota = (spec.iota)(a);
    if !(iota > 0.0 && iota.is_finite()) {
        return Err(Error::InvalidArgument(format!("iota must be positive, got {iota}")));
    }
    let j0 = feasible_start(spec.producer, a)?;
    let obj = LogRelaxationTime { producer: spec.producer, alpha: spec.alpha, iota };
    let solution = kkt::solve(&obj, spec.producer, a, &j0, opts)?;
    Ok(MinRelaxation { j: solution.j, tau_star: spec.relaxation_time(&solution.j, a), solution })
}

/// Affinity-space form: maximize `iota_hat(A) = A^T N A` with
/// `N = diag(2 nu, kappa theta)` subject to `iota_hat(A) = J . A` for fixed
/// `J`; returns the affinities selected for `J`.
pub fn rs_affinity_closure(j: &Flat, coeffs: &TransportCoefficients, theta: f64, opts: &KktOptions) -> Result<Flat> {
    let mut diag = Flat::zeros();
    for i in 0..5 {
        diag[i] = 4.0 * coeffs.nu;
    }
    for i in 5..8 {
        diag[i] = 2.0 * coeffs.kappa * theta;
    }
    let p = QuadraticProducer { diag };
    Ok(rs_closure_numeric(&p, j, opts)?.j)
}

/// `theta xi = 2 nu Dd:Dd + kappa theta |g|^2` as a function of flat affinities.
pub fn quadratic_production(a: &Flat, coeffs: &TransportCoefficients, theta: f64) -> f64 {
    let s: f64 = a.iter().take(5).map(|x| x * x).sum();
    2.0 * coeffs.nu * s + coeffs.kappa * theta * tail(a).norm_squared()
}

/// Linear closure `J = L A` with `L` recovered by polarization of the
/// production quadratic form.
pub fn linear_irreversible_closure(a: &AffinitySet, coeffs: &TransportCoefficients, theta: f64, p: f64) -> FluxSet {
    let q = |x: &Flat| quadratic_production(x, coeffs, theta);
    let e = |i: usize| Flat::from_fn(|k, _| if k == i { 1.0 } else { 0.0 });
    let mut l = producer::FlatMat::zeros();
    for i in 0..FLAT_DIM {
        l[(i, i)] = q(&e(i));
        for k in 0..i {
            let v = 0.5 * (q(&(e(i) + e(k))) - q(&e(i)) - q(&e(k)));
            l[(i, k)] = v;
            l[(k, i)] = v;
        }
    }
    unflatten_fluxes(&(l * flatten_affinities(a)), p)
}

/// First-order closure of the family `T + pI = 2 nu Dd - alpha grad(theta) grad(theta)^T`,
/// `Q = -kappa grad(theta) - alpha theta D grad(theta)`, which has the same
/// entropy production as the Navier-Stokes-Fourier closure.
pub fn alternative_closure(a: &AffinitySet, coeffs: &TransportCoefficients, alpha: f64, theta: f64, p: f64) -> FluxSet {
    let gt = a.grad_theta(theta);
    FluxSet {
        stress: -Mat3::identity() * p + a.dd * (2.0 * coeffs.nu) - gt * gt.transpose() * alpha,
        heat_flux: -gt * coeffs.kappa - a.d_full * gt * (alpha * theta),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearityReport {
    /// `|F(A1 + A2) - F(A1) - F(A2)| / scale` on the flat flux part.
    pub additivity_defect: f64,
    /// `|F(s A) - s F(A)| / scale`.
    pub homogeneity_defect: f64,
    pub linear: bool,
}

/// Probe whether `f` is linear in the affinities; the pressure is removed
/// before comparing.
pub fn linearity_report<F: Fn(&AffinitySet) -> FluxSet>(
    f: F,
    a1: &AffinitySet,
    a2: &AffinitySet,
    s: f64,
    p: f64,
    tolerance: f64,
) -> LinearityReport {
    let fl = |a: &AffinitySet| flatten_fluxes(&f(a), p);
    let sum = AffinitySet { dd: a1.dd + a2.dd, d_full: a1.d_full + a2.d_full, g_theta: a1.g_theta + a2.g_theta };
    let scaled = AffinitySet { dd: a1.dd * s, d_full: a1.d_full * s, g_theta: a1.g_theta * s };
    let (j1, j2) = (fl(a1), fl(a2));
    let scale = (j1.norm() + j2.norm()).max(f64::MIN_POSITIVE);
    let additivity_defect = (fl(&sum) - j1 - j2).norm() / scale;
    let homogeneity_defect = (fl(&scaled) - j1 * s).norm() / (scale * s.abs().max(1.0));
    LinearityReport {
        additivity_defect,
        homogeneity_defect,
        linear: additivity_defect <= tolerance && homogeneity_defect <= tolerance,
    }
}

/// `tau = 1 / (C_B rho sqrt(R_s theta))`.
pub fn bgk_relaxation_time_model(rho: f64, theta: f64, c: &GasConstants, c_b: f64) -> Result<f64> {
    if !(rho > 0.0 && theta > 0.0 && c_b > 0.0) {
        return Err(Error::Domain(format!(
            "relaxation-time model needs positive rho, theta, C_B, got ({rho}, {theta}, {c_b})"
        )));
    }
    Ok(1.0 / (c_b * rho * (c.r_s() * theta).sqrt()))
}

/// Inverse of [`bgk_relaxation_time_model`]: `theta = (C_B rho tau)^{-2} / R_s`.
pub fn temperature_from_relaxation_time(rho: f64, tau: f64, c: &GasConstants, c_b: f64) -> Result<f64> {
    if !(rho > 0.0 && tau > 0.0 && c_b > 0.0) {
        return Err(Error::Domain(format!(
            "inverse relaxation-time model needs positive rho, tau, C_B, got ({rho}, {tau}, {c_b})"
        )));
    }
    Ok((c_b * rho * tau).powi(-2) / c.r_s())
}

/// Hard-sphere numerator `iota = 2/(C_B^2 rho) Dd:Dd + 5 R_s/(2 C_B^2 rho) |grad theta|^2/theta`
/// in flat coordinates.
pub fn hard_sphere_iota(a: &Flat, rho: f64, theta: f64, c: &GasConstants, c_b: f64) -> f64 {
    let k = 1.0 / (c_b * c_b * rho);
    let s: f64 = a.iter().take(5).map(|x| x * x).sum();
    // |grad theta|^2 / theta = theta |g|^2
    2.0 * k * s + 2.5 * c.r_s() * k * theta * tail(a).norm_squared()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerLimitReport {
    pub kn: Vec<f64>,
    pub tau: Vec<f64>,
    /// `|T + pI|` at each Knudsen number.
    pub stress_deviation: Vec<f64>,
    pub heat_flux_norm: Vec<f64>,
    /// Linear extrapolation to `Kn = 0` from the two smallest Knudsen numbers.
    pub limit: FluxSet,
    /// Distance of the limit from `(-pI, 0)`.
    pub limit_defect: f64,
}

/// Evaluate the quadratic closure along a decreasing Knudsen sequence with
/// `tau = Kn L / V_theta`, `V_theta = sqrt(2 R_s theta)`, and extrapolate.
pub fn euler_limit(
    a: &AffinitySet,
    p: f64,
    theta: f64,
    length: f64,
    c: &GasConstants,
    kn: &[f64],
) -> Result<EulerLimitReport> {
    if kn.len() < 2 {
        return Err(Error::InvalidArgument("need at least two Knudsen numbers".into()));
    }
    let v_theta = (2.0 * c.r_s() * theta).sqrt();
    let mut tau = Vec::new();
    let mut flux = Vec::new();
    for &k in kn {
        let t = k * length / v_theta;
        let coeffs = crate::chapman_enskog::transport_coefficients(t, p, c)?;
        tau.push(t);
        flux.push(rs_closure_quadratic(a, &coeffs, theta, p));
    }
    let mut order: Vec<usize> = (0..kn.len()).collect();
    order.sort_by(|&i, &j| kn[i].total_cmp(&kn[j]));
    let (i0, i1) = (order[0], order[1]);
    let (k0, k1) = (kn[i0], kn[i1]);
    let w = k0 / (k1 - k0);
    let limit = FluxSet {
        stress: flux[i0].stress - (flux[i1].stress - flux[i0].stress) * w,
        heat_flux: flux[i0].heat_flux - (flux[i1].heat_flux - flux[i0].heat_flux) * w,
    };
    let euler = FluxSet::euler(p);
    let limit_defect = ((limit.stress - euler.stress).norm() + limit.heat_flux.norm()) / p.max(f64::MIN_POSITIVE);
    Ok(EulerLimitReport {
        kn: kn.to_vec(),
        tau,
        stress_deviation: flux.iter().map(|f| (f.stress + Mat3::identity() * p).norm()).collect(),
        heat_flux_norm: flux.iter().map(|f| f.heat_flux.norm()).collect(),
        limit,
        limit_defect,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceResult {
    pub best_value: f64,
    pub best_j: Flat,
    pub feasible_samples: usize,
}

/// Random unit direction restricted to the coordinates in `subspace`.
fn random_direction<R: Rng + ?Sized>(rng: &mut R, subspace: &[usize]) -> Flat {
    loop {
        let mut d = Flat::zeros();
        for &i in subspace {
            d[i] = rng.random_range(-1.0..1.0);
        }
        let n = d.norm();
        if n > 1e-3 && n <= 1.0 {
            return d / n;
        }
    }
}

/// Sample `n` admissible points (rays with `d . A > 0`, scaled onto the
/// constraint) and keep the largest production.
pub fn brute_force_max<R: Rng + ?Sized>(
    p: &dyn Producer,
    a: &Flat,
    subspace: &[usize],
    n: usize,
    rng: &mut R,
) -> BruteForceResult {
    let mut best = BruteForceResult { best_value: f64::NEG_INFINITY, best_j: Flat::zeros(), feasible_samples: 0 };
    while best.feasible_samples < n {
        let mut d = random_direction(rng, subspace);
        if d.dot(a) < 0.0 {
            d = -d;
        }
        if let Some(s) = p.ray_scale(&d, a) {
            let j = d * s;
            let v = p.value(&j);
            best.feasible_samples += 1;
            if v > best.best_value {
                best.best_value = v;
                best.best_j = j;
            }
        }
    }
    best
}

/// As [`brute_force_max`] but keeping the smallest relaxation time.
pub fn brute_force_min_tau<R: Rng + ?Sized>(
    spec: &ProducerSpec<'_>,
    a: &Flat,
    subspace: &[usize],
    n: usize,
    rng: &mut R,
) -> BruteForceResult {
    let mut best = BruteForceResult { best_value: f64::INFINITY, best_j: Flat::zeros(), feasible_samples: 0 };
    while best.feasible_samples < n {
        let mut d = random_direction(rng, subspace);
        if d.dot(a) < 0.0 {
            d = -d;
        }
        if let Some(s) = spec.producer.ray_scale(&d, a) {
            let j = d * s;
            let t = spec.relaxation_time(&j, a);
            best.feasible_samples += 1;
            if t < best.best_value {
                best.best_value = t;
                best.best_j = j;
            }
        }
    }
    best
}

/// Coordinates of the reduced instance: diagonal deviatoric stress and the
/// heat-flux vector.
pub const REDUCED_SUBSPACE: [usize; 5] = [0, 1, 5, 6, 7];
