//! First-order Chapman-Enskog solution of the BGK equation: the local
//! Maxwellian, its correction `f1`, solvability checks, fluxes, entropy
//! production and transport coefficients.

use ndarray::{Array3, ArrayView3, Zip};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{self, GasConstants, MacroState, VelocityGrid, ENTROPY_FLOOR};
use crate::tensor::{deviator, double_dot, symmetric_part, Mat3, Vec3};
use crate::thermo::{self, AffinitySet, FluxSet};

/// Velocity and energy gradients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradientState {
    pub d_full: Mat3,
    pub grad_e: Vec3,
}

impl GradientState {
    /// The velocity gradient is symmetrized on construction.
    pub fn new(d_full: Mat3, grad_e: Vec3) -> Self {
        GradientState { d_full: symmetric_part(&d_full), grad_e }
    }

    pub fn zero() -> Self {
        GradientState { d_full: Mat3::zeros(), grad_e: Vec3::zeros() }
    }

    /// Build from a temperature gradient, `grad e = 3/2 R_s grad theta`.
    pub fn from_grad_theta(d_full: Mat3, grad_theta: Vec3, c: &GasConstants) -> Self {
        Self::new(d_full, grad_theta * (1.5 * c.r_s()))
    }

    pub fn dd(&self) -> Mat3 {
        deviator(&self.d_full)
    }

    pub fn grad_theta(&self, c: &GasConstants) -> Vec3 {
        self.grad_e * (2.0 / (3.0 * c.r_s()))
    }

    pub fn scaled(&self, s: f64) -> Self {
        GradientState { d_full: self.d_full * s, grad_e: self.grad_e * s }
    }

    pub fn affinities(&self, theta: f64, c: &GasConstants) -> Result<AffinitySet> {
        AffinitySet::new(self.d_full, self.grad_theta(c), theta)
    }
}

/// Macroscopic state, gradients and relaxation scales; `tau = Kn * tau_tilde`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CEState {
    pub macro_state: MacroState,
    pub grads: GradientState,
    pub tau_tilde: f64,
    pub kn: f64,
}

impl CEState {
    pub fn new(macro_state: MacroState, grads: GradientState, tau_tilde: f64, kn: f64) -> Result<Self> {
        if !(tau_tilde > 0.0 && tau_tilde.is_finite()) {
            return Err(Error::InvalidArgument(format!("tau_tilde must be positive, got {tau_tilde}")));
        }
        if !(kn >= 0.0 && kn.is_finite()) {
            return Err(Error::InvalidArgument(format!("Knudsen number must be non-negative, got {kn}")));
        }
        Ok(CEState { macro_state, grads, tau_tilde, kn })
    }

    pub fn tau(&self) -> f64 {
        self.kn * self.tau_tilde
    }

    pub fn with_kn(&self, kn: f64) -> Result<Self> {
        CEState::new(self.macro_state, self.grads, self.tau_tilde, kn)
    }

    pub fn theta(&self, c: &GasConstants) -> f64 {
        2.0 * self.macro_state.e / (3.0 * c.r_s())
    }

    pub fn pressure(&self) -> f64 {
        2.0 / 3.0 * self.macro_state.rho * self.macro_state.e
    }

    pub fn affinities(&self, c: &GasConstants) -> Result<AffinitySet> {
        self.grads.affinities(self.theta(c), c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportCoefficients {
    pub nu: f64,
    pub kappa: f64,
}

/// `nu = tau p`, `kappa = 5/2 R_s tau p`.
pub fn transport_coefficients(tau: f64, p: f64, c: &GasConstants) -> Result<TransportCoefficients> {
    if !(tau >= 0.0 && tau.is_finite() && p >= 0.0 && p.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "relaxation time and pressure must be non-negative, got tau={tau}, p={p}"
        )));
    }
    Ok(TransportCoefficients { nu: tau * p, kappa: 2.5 * c.r_s() * tau * p })
}

pub fn eval_maxwellian(state: &MacroState, c: &GasConstants, v: &Vec3) -> f64 {
    quadrature::maxwellian(state, c, v)
}

/// `f1 / f0 = -tau_tilde [3/(2e) w.Dd.w + (3/4 |w|^2/e - 5/2) w.grad(e)/e]`.
fn f1_ratio(state: &CEState, dd: &Mat3, v: &Vec3) -> f64 {
    let e = state.macro_state.e;
    let w = v - state.macro_state.u;
    let shear = 1.5 / e * w.dot(&(dd * w));
    let heat = (0.75 * w.norm_squared() / e - 2.5) * w.dot(&state.grads.grad_e) / e;
    -state.tau_tilde * (shear + heat)
}

pub fn eval_f1(state: &CEState, c: &GasConstants, v: &Vec3) -> f64 {
    let dd = state.grads.dd();
    eval_maxwellian(&state.macro_state, c, v) * f1_ratio(state, &dd, v)
}

/// `f0` and `f1` sampled on a grid.
pub fn sample_f0_f1(state: &CEState, grid: &VelocityGrid, c: &GasConstants) -> (Array3<f64>, Array3<f64>) {
    let f0 = grid.sample(|v| eval_maxwellian(&state.macro_state, c, v));
    let dd = state.grads.dd();
    let mut f1 = Array3::zeros(grid.shape());
    Zip::indexed(&mut f1).and(&f0).for_each(|(i, j, k), out, &m| {
        *out = m * f1_ratio(state, &dd, &grid.node(i, j, k));
    });
    (f0, f1)
}

/// `f0 + Kn f1` on a grid.
pub fn sample_first_order(state: &CEState, grid: &VelocityGrid, c: &GasConstants) -> Array3<f64> {
    let (f0, f1) = sample_f0_f1(state, grid, c);
    let kn = state.kn;
    f0 + &(f1 * kn)
}

/// Largest `|f1/f0|` over the grid nodes (per unit Knudsen number).
pub fn max_relative_correction(state: &CEState, grid: &VelocityGrid) -> f64 {
    let dd = state.grads.dd();
    let (ni, nj, nk) = grid.shape();
    let mut m = 0.0_f64;
    for i in 0..ni {
        for j in 0..nj {
            for k in 0..nk {
                m = m.max(f1_ratio(state, &dd, &grid.node(i, j, k)).abs());
            }
        }
    }
    m
}

/// Knudsen number for which `max |Kn f1/f0| = bound` on the grid. Zero
/// gradients give `Kn = 1`.
pub fn near_equilibrium_kn(state: &CEState, grid: &VelocityGrid, bound: f64) -> f64 {
    let m = max_relative_correction(state, grid);
    if m > 0.0 {
        bound / m
    } else {
        1.0
    }
}

/// Residuals of the five collision-invariant moments of `f1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolvabilityReport {
    /// `(int m f1, int m v f1, int m/2 |v|^2 f1)`.
    pub residuals: [f64; 5],
    /// Same moments in the peculiar velocity `w = v - u`.
    pub peculiar_residuals: [f64; 5],
    /// Residuals divided by the matching moment of `|f1|`.
    pub normalized: [f64; 5],
    pub tolerance: f64,
    pub pass: bool,
}

fn invariant_moments(grid: &VelocityGrid, f: ArrayView3<f64>, shift: &Vec3, m: f64, abs: bool) -> [f64; 5] {
    let mut out = [0.0; 5];
    for ((i, j, k), &fv) in f.indexed_iter() {
        let v = grid.node(i, j, k) - shift;
        let a = grid.weight(i, j, k) * m * if abs { fv.abs() } else { fv };
        let phi = [1.0, v.x, v.y, v.z, 0.5 * v.norm_squared()];
        for (o, p) in out.iter_mut().zip(phi) {
            *o += a * if abs { p.abs() } else { p };
        }
    }
    out
}

pub fn check_solvability(state: &CEState, grid: &VelocityGrid, c: &GasConstants, tolerance: f64) -> SolvabilityReport {
    let (_, f1) = sample_f0_f1(state, grid, c);
    let zero = Vec3::zeros();
    let residuals = invariant_moments(grid, f1.view(), &zero, c.m(), false);
    let peculiar_residuals = invariant_moments(grid, f1.view(), &state.macro_state.u, c.m(), false);
    let scale = invariant_moments(grid, f1.view(), &zero, c.m(), true);
    let mut normalized = [0.0; 5];
    for i in 0..5 {
        normalized[i] = if scale[i] > 0.0 { residuals[i].abs() / scale[i] } else { residuals[i].abs() };
    }
    let pass = normalized.iter().all(|r| *r < tolerance);
    SolvabilityReport { residuals, peculiar_residuals, normalized, tolerance, pass }
}

/// Differences of the conserved moments and entropy between `f0 + Kn f1`
/// and `f0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub moment_deltas: [f64; 5],
    /// Deltas relative to `(rho, rho |u| + rho sqrt(e), rho e + rho |u|^2/2)`.
    pub relative_deltas: [f64; 5],
    /// `rho eta(f0 + Kn f1) - rho eta(f0)`; `None` if `f0 + Kn f1` is negative
    /// somewhere on the grid.
    pub entropy_delta: Option<f64>,
}

pub fn expansion_independence_report(state: &CEState, grid: &VelocityGrid, c: &GasConstants) -> ExpansionReport {
    let (f0, f1) = sample_f0_f1(state, grid, c);
    let f = &f0 + &(&f1 * state.kn);
    let zero = Vec3::zeros();
    let m0 = invariant_moments(grid, f0.view(), &zero, c.m(), false);
    let m1 = invariant_moments(grid, f.view(), &zero, c.m(), false);
    let ms = &state.macro_state;
    let mom_scale = ms.rho * (ms.u.norm() + ms.e.sqrt());
    let scale = [ms.rho, mom_scale, mom_scale, mom_scale, ms.total_energy()];
    let mut moment_deltas = [0.0; 5];
    let mut relative_deltas = [0.0; 5];
    for i in 0..5 {
        moment_deltas[i] = m1[i] - m0[i];
        relative_deltas[i] = moment_deltas[i].abs() / scale[i];
    }
    let entropy_delta = match (grid.entropy_density(f.view(), c), grid.entropy_density(f0.view(), c)) {
        (Ok(a), Ok(b)) => Some(a - b),
        _ => None,
    };
    ExpansionReport { moment_deltas, relative_deltas, entropy_delta }
}

/// Stress and heat flux of `f0 + Kn f1` by quadrature.
pub fn first_order_fluxes(state: &CEState, grid: &VelocityGrid, c: &GasConstants) -> Result<FluxSet> {
    let f = sample_first_order(state, grid, c);
    let u = state.macro_state.u;
    Ok(FluxSet { stress: grid.stress_tensor(f.view(), &u, c)?, heat_flux: grid.heat_flux(f.view(), &u, c)? })
}

/// Closed-form Navier-Stokes-Fourier fluxes for the state.
pub fn nsf_closed_form(state: &CEState, c: &GasConstants) -> Result<FluxSet> {
    let p = state.pressure();
    let theta = state.theta(c);
    let tc = transport_coefficients(state.tau(), p, c)?;
    Ok(thermo::nsf_fluxes(&state.affinities(c)?, p, tc.nu, tc.kappa, theta))
}

/// `(Kn^2 / tau) int k_B f1^2 / f0 dv`.
pub fn entropy_production_quadrature(state: &CEState, grid: &VelocityGrid, c: &GasConstants) -> Result<f64> {
    let tau = state.tau();
    if tau <= 0.0 {
        return Err(Error::InvalidArgument("entropy production needs Kn > 0".into()));
    }
    let (f0, f1) = sample_f0_f1(state, grid, c);
    let mut s = 0.0;
    for ((i, j, k), &a) in f1.indexed_iter() {
        s += grid.weight(i, j, k) * a * a / f0[[i, j, k]];
    }
    Ok(state.kn * state.kn / tau * c.k_b() * s)
}

/// `xi = 2 nu Dd:Dd / theta + kappa |grad theta|^2 / theta^2`.
pub fn entropy_production_closed_form(state: &CEState, c: &GasConstants) -> Result<f64> {
    let theta = state.theta(c);
    let tc = transport_coefficients(state.tau(), state.pressure(), c)?;
    let dd = state.grads.dd();
    let gt = state.grads.grad_theta(c);
    Ok((2.0 * tc.nu * double_dot(&dd, &dd) + tc.kappa * gt.norm_squared() / theta) / theta)
}

/// Both integral forms of the BGK entropy production.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BgkEntropyProduction {
    /// `(1/tau) int k_B (f - f_eq) log f`.
    pub xi: f64,
    /// `(1/tau) int k_B (f - f_eq)(log f - log f_eq)`, non-negative pointwise.
    pub xi_symmetric: f64,
}

impl BgkEntropyProduction {
    pub fn relative_gap(&self) -> f64 {
        (self.xi - self.xi_symmetric).abs() / self.xi_symmetric.abs().max(f64::MIN_POSITIVE)
    }
}

/// BGK entropy production of `f` relative to a given equilibrium `f_eq`
/// sampled on the same grid.
pub fn bgk_entropy_production_against(
    grid: &VelocityGrid,
    f: ArrayView3<f64>,
    f_eq: ArrayView3<f64>,
    tau: f64,
    c: &GasConstants,
    tolerance: f64,
) -> Result<BgkEntropyProduction> {
    grid.check_shape(&f)?;
    grid.check_shape(&f_eq)?;
    if !(tau > 0.0) {
        return Err(Error::InvalidArgument(format!("relaxation time must be positive, got {tau}")));
    }
    let mut a = 0.0;
    let mut b = 0.0;
    let mut scale = 0.0;
    for ((i, j, k), &fv) in f.indexed_iter() {
        if fv < 0.0 || fv.is_nan() {
            return Err(Error::InvalidDistribution { node: [i, j, k], value: fv });
        }
        let w = grid.weight(i, j, k);
        let fe = f_eq[[i, j, k]];
        let lf = fv.max(ENTROPY_FLOOR).ln();
        let d = fv - fe;
        a += w * d * lf;
        b += w * d * (lf - fe.max(ENTROPY_FLOOR).ln());
        scale += w * (fv * lf).abs();
    }
    let k = c.k_b() / tau;
    let out = BgkEntropyProduction { xi: k * a, xi_symmetric: k * b };
    if out.xi_symmetric < -tolerance * (k * scale).max(f64::MIN_POSITIVE) {
        return Err(Error::NumericalConsistency(format!("negative entropy production {:e}", out.xi_symmetric)));
    }
    Ok(out)
}

/// BGK entropy production of `f` relative to the continuous Maxwellian of
/// `macro_state`.
pub fn bgk_entropy_production(
    f: &quadrature::DistributionGrid<'_>,
    macro_state: &MacroState,
    tau: f64,
    c: &GasConstants,
) -> Result<BgkEntropyProduction> {
    let grid = f.grid();
    let feq = grid.sample(|v| eval_maxwellian(macro_state, c, v));
    bgk_entropy_production_against(grid, f.values(), feq.view(), tau, c, 1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::DistributionGrid;
    use approx::assert_relative_eq;

    fn unit() -> GasConstants {
        GasConstants::default()
    }

    fn base_macro() -> MacroState {
        MacroState::new(1.0, Vec3::zeros(), 1.5).unwrap()
    }

    #[test]
    fn maxwellian_peak_value() {
        let v = eval_maxwellian(&base_macro(), &unit(), &Vec3::zeros());
        assert_relative_eq!(v, (2.0 * std::f64::consts::PI).powf(-1.5), max_relative = 1e-15);
        assert_relative_eq!(v, 0.0634936, max_relative = 1e-6);
    }

    #[test]
    fn maxwellian_log_form() {
        let s = MacroState::new(1.7, Vec3::new(0.3, -0.2, 1.0), 2.2).unwrap();
        let c = GasConstants::new(1.4, 0.9).unwrap();
        let v = Vec3::new(1.0, 0.5, -0.7);
        let w = v - s.u;
        let gamma = (s.rho / c.m()).ln() - 1.5 * (4.0 * std::f64::consts::PI * s.e / 3.0).ln();
        let expect = gamma - w.norm_squared() / (4.0 / 3.0 * s.e);
        assert_relative_eq!(eval_maxwellian(&s, &c, &v).ln(), expect, max_relative = 1e-14);
    }

    #[test]
    fn f1_vanishes_without_gradients() {
        let st = CEState::new(base_macro(), GradientState::zero(), 1.0, 0.1).unwrap();
        assert_eq!(eval_f1(&st, &unit(), &Vec3::new(1.0, 2.0, 3.0)), 0.0);
        let g = VelocityGrid::for_macro(&st.macro_state).unwrap();
        let rep = check_solvability(&st, &g, &unit(), 1e-8);
        assert_eq!(rep.residuals, [0.0; 5]);
        assert!(rep.pass);
    }

    #[test]
    fn f1_parity_structure() {
        // Dd = diag(1,-1,0) (pure shear), grad e along z
        let grads = GradientState::new(Mat3::from_diagonal(&Vec3::new(1.0, -1.0, 0.0)), Vec3::new(0.0, 0.0, 0.6));
        let st = CEState::new(base_macro(), grads, 1.0, 1.0).unwrap();
        let c = unit();
        let w = Vec3::new(0.0, 0.0, 1.0);
        let f0 = eval_maxwellian(&st.macro_state, &c, &w);
        // only the heat term: -(3/4 * 1/1.5 - 5/2) * 0.6/1.5
        let expect = -f0 * (0.75 / 1.5 - 2.5) * 0.6 / 1.5;
        assert_relative_eq!(eval_f1(&st, &c, &w), expect, max_relative = 1e-14);
        assert_relative_eq!(eval_f1(&st, &c, &-w), -expect, max_relative = 1e-14);
        // in-plane node: shear term even, heat term absent
        let w2 = Vec3::new(1.0, 0.0, 0.0);
        assert_relative_eq!(eval_f1(&st, &c, &w2), eval_f1(&st, &c, &-w2), max_relative = 1e-14);
    }

    #[test]
    fn transport_coefficient_values() {
        let c = unit();
        let t = transport_coefficients(1.0, 1.0, &c).unwrap();
        assert_eq!((t.nu, t.kappa), (1.0, 2.5));
        let t0 = transport_coefficients(0.0, 3.0, &c).unwrap();
        assert_eq!((t0.nu, t0.kappa), (0.0, 0.0));
        assert!(transport_coefficients(-1.0, 1.0, &c).is_err());
    }

    #[test]
    fn nsf_reference_fluxes() {
        let c = unit();
        // p = 1, tau = 0.1
        let grads = GradientState::new(Mat3::from_diagonal(&Vec3::new(1.0, -0.5, -0.5)), Vec3::zeros());
        let st = CEState::new(base_macro(), grads, 1.0, 0.1).unwrap();
        let g = VelocityGrid::for_macro(&st.macro_state).unwrap();
        let f = first_order_fluxes(&st, &g, &c).unwrap();
        let expect = -Mat3::identity() + Mat3::from_diagonal(&Vec3::new(1.0, -0.5, -0.5)) * 0.2;
        assert!((f.stress - expect).amax() < 1e-12);

        let grads = GradientState::from_grad_theta(Mat3::zeros(), Vec3::new(1.0, 0.0, 0.0), &c);
        let st = CEState::new(base_macro(), grads, 1.0, 0.1).unwrap();
        let f = first_order_fluxes(&st, &g, &c).unwrap();
        assert!((f.heat_flux - Vec3::new(-0.25, 0.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn euler_fluxes_without_gradients() {
        let c = unit();
        let st =
            CEState::new(MacroState::new(2.0, Vec3::new(1.0, 1.0, 0.0), 3.0).unwrap(), GradientState::zero(), 1.0, 0.3)
                .unwrap();
        let g = VelocityGrid::for_macro(&st.macro_state).unwrap();
        let f = first_order_fluxes(&st, &g, &c).unwrap();
        assert!((f.stress + Mat3::identity() * 4.0).amax() < 1e-12);
        assert!(f.heat_flux.norm() < 1e-12);
    }

    #[test]
    fn closed_form_production_reference() {
        // nu = 0.1, kappa = 0.25, theta = 1, Dd:Dd = 2, |grad theta|^2 = 1
        let c = unit();
        let grads = GradientState::from_grad_theta(
            Mat3::from_diagonal(&Vec3::new(1.0, -1.0, 0.0)),
            Vec3::new(0.0, 1.0, 0.0),
            &c,
        );
        let st = CEState::new(base_macro(), grads, 1.0, 0.1).unwrap();
        assert_relative_eq!(entropy_production_closed_form(&st, &c).unwrap(), 0.65, max_relative = 1e-14);
        let g = VelocityGrid::for_macro(&st.macro_state).unwrap();
        assert_relative_eq!(entropy_production_quadrature(&st, &g, &c).unwrap(), 0.65, max_relative = 1e-10);
        let f = first_order_fluxes(&st, &g, &c).unwrap();
        let xi = thermo::clausius_duhem_production(&f, &st.affinities(&c).unwrap(), st.pressure(), 1.0).unwrap();
        assert_relative_eq!(xi, 0.65, max_relative = 1e-10);
    }

    #[test]
    fn production_is_quadratic_in_gradients() {
        let c = unit();
        let grads =
            GradientState::new(Mat3::new(0.2, 0.1, -0.3, 0.1, -0.4, 0.0, -0.3, 0.0, 0.1), Vec3::new(0.5, -0.2, 0.1));
        let st = CEState::new(base_macro(), grads, 1.0, 0.01).unwrap();
        let st2 = CEState { grads: grads.scaled(2.0), ..st };
        let g = VelocityGrid::for_macro(&st.macro_state).unwrap();
        let a = entropy_production_quadrature(&st, &g, &c).unwrap();
        let b = entropy_production_quadrature(&st2, &g, &c).unwrap();
        assert_relative_eq!(b, 4.0 * a, max_relative = 1e-12);
    }

    #[test]
    fn expansion_deltas_vanish() {
        let c = unit();
        let grads =
            GradientState::new(Mat3::new(0.2, 0.1, -0.3, 0.1, -0.4, 0.0, -0.3, 0.0, 0.1), Vec3::new(0.5, -0.2, 0.1));
        let st = CEState::new(MacroState::new(1.3, Vec3::new(0.4, 0.0, -0.2), 2.0).unwrap(), grads, 1.0, 1.0).unwrap();
        let g = VelocityGrid::for_macro(&st.macro_state).unwrap();
        let st = st.with_kn(near_equilibrium_kn(&st, &g, 0.1)).unwrap();
        let rep = expansion_independence_report(&st, &g, &c);
        assert!(rep.relative_deltas.iter().all(|d| *d < 1e-12));
        assert!(rep.entropy_delta.unwrap() < 0.0);
        let rep0 = expansion_independence_report(&st.with_kn(0.0).unwrap(), &g, &c);
        assert_eq!(rep0.moment_deltas, [0.0; 5]);
        assert_eq!(rep0.entropy_delta, Some(0.0));
    }

    #[test]
    fn bgk_production_of_maxwellian_is_zero() {
        let c = unit();
        let s = base_macro();
        let g = VelocityGrid::for_macro(&s).unwrap();
        let f = quadrature::sample_maxwellian(&g, &s, &c);
        let xi = bgk_entropy_production(&f, &s, 0.5, &c).unwrap();
        assert_eq!(xi.xi, 0.0);
        assert_eq!(xi.xi_symmetric, 0.0);
    }

    #[test]
    fn bgk_production_of_bimodal_mixture() {
        let c = unit();
        let s = base_macro();
        // two Maxwellians drifting +-d along x with the same total energy
        let d = 0.8;
        let e_c = s.e - 0.5 * d * d;
        let plus = MacroState::new(0.5, Vec3::new(d, 0.0, 0.0), e_c).unwrap();
        let minus = MacroState::new(0.5, Vec3::new(-d, 0.0, 0.0), e_c).unwrap();
        let g = VelocityGrid::hermite(Vec3::zeros(), s.thermal_sigma(), 48).unwrap();
        let f = DistributionGrid::from_fn(&g, |v| eval_maxwellian(&plus, &c, v) + eval_maxwellian(&minus, &c, v));
        let m = quadrature::conserved_moments(&f, &c).unwrap();
        assert_relative_eq!(m.rho, 1.0, max_relative = 1e-12);
        assert_relative_eq!(m.energy, 1.5, max_relative = 1e-12);
        let xi = bgk_entropy_production(&f, &s, 0.5, &c).unwrap();
        assert!(xi.xi > 0.0);
        assert!(xi.relative_gap() < 1e-8, "gap {}", xi.relative_gap());
    }

    #[test]
    fn negative_distribution_rejected() {
        let c = unit();
        let s = base_macro();
        let g = VelocityGrid::hermite(Vec3::zeros(), 1.0, 4).unwrap();
        let mut v = g.sample(|x| eval_maxwellian(&s, &c, x));
        v[[0, 0, 0]] = -1.0;
        let f = DistributionGrid::new(&g, v).unwrap();
        assert!(matches!(bgk_entropy_production(&f, &s, 1.0, &c), Err(Error::InvalidDistribution { .. })));
    }
}
