//! Randomized property suites over the library's closed-form oracles.
//!
//! Every metric function returns the worst observed value; [`run_suite`]
//! turns the metrics into pass/fail [`Check`]s against default tolerances
//! multiplied by a user scale.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chapman_enskog::{self as ce, CEState};
use crate::closure::{
    self, brute_force_max, flatten_fluxes, linear_irreversible_closure, min_relaxation_closure, quadratic_production,
    rs_closure_numeric, unflatten_affinities, Flat, KktOptions, Producer, ProducerSpec, QuadraticProducer,
    REDUCED_SUBSPACE,
};
use crate::curtiss::{self, CurtissMacro, NematicField};
use crate::error::{Error, Result};
use crate::kernel::{self, FrequencySource, KernelSpec};
use crate::quadrature::{self, GasConstants, MacroState, VelocityGrid};
use crate::sampling::{random_gradients, random_macro, random_vec};
use crate::tensor::{rel_diff_mat, rel_diff_vec, Mat3};
use crate::thermo::{self, AffinitySet};

pub const DEFAULT_SEED: u64 = 20240611;

pub const SUITES: [&str; 6] = ["maxwellian", "chapman-enskog", "thermo", "closure", "curtiss", "scaling"];

/// Bound on `max |Kn f1 / f0|` used to pick the Knudsen number of random
/// near-equilibrium states.
pub const NEAR_EQUILIBRIUM_BOUND: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value <= tolerance`.
    pub fn at_most(id: &str, description: &str, value: f64, tolerance: f64) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            value,
            expected: 0.0,
            tolerance,
            pass: value <= tolerance,
        }
    }

    /// Passes when `value >= bound`; the bound is reported as `expected`.
    pub fn at_least(id: &str, description: &str, value: f64, bound: f64) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            value,
            expected: bound,
            tolerance: 0.0,
            pass: value >= bound,
        }
    }

    /// Passes when `|value - expected| <= tolerance`.
    pub fn near(id: &str, description: &str, value: f64, expected: f64, tolerance: f64) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            value,
            expected,
            tolerance,
            pass: (value - expected).abs() <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub tolerance_scale: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: DEFAULT_SEED, tolerance_scale: 1.0 }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gas constants with `m, k_B` in `[0.5, 2]`.
pub fn random_gas<R: Rng + ?Sized>(rng: &mut R) -> GasConstants {
    GasConstants::new(rng.random_range(0.5..2.0), rng.random_range(0.5..2.0)).expect("positive constants")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

// ---------------------------------------------------------------- maxwellian

/// Largest relative error of `(rho, rho u, rho (e + |u|^2/2))` recovered by
/// the default Hermite grid from sampled Maxwellians.
pub fn maxwellian_moment_error<R: Rng + ?Sized>(rng: &mut R, n_states: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n_states {
        let c = random_gas(rng);
        let s = random_macro(rng);
        let grid = VelocityGrid::for_macro(&s)?;
        let f = quadrature::sample_maxwellian(&grid, &s, &c);
        let m = quadrature::conserved_moments(&f, &c)?;
        let scale_p = s.rho * (s.u.norm() + s.e.sqrt());
        worst = worst
            .max(rel(m.rho, s.rho))
            .max((m.momentum - s.u * s.rho).amax() / scale_p)
            .max(rel(m.energy, s.total_energy()));
    }
    Ok(worst)
}

/// Random non-negative distribution: a Maxwellian envelope times independent
/// uniform factors in `[0, 2)` at every node.
pub fn random_distribution<R: Rng + ?Sized>(
    rng: &mut R,
    grid: &VelocityGrid,
    s: &MacroState,
    c: &GasConstants,
) -> ndarray::Array3<f64> {
    grid.sample(|v| quadrature::maxwellian(s, c, v) * rng.random_range(0.0..2.0))
}

/// Largest relative violation of `-tr(T)/3 = 2/3 rho e` over random
/// non-Maxwellian distributions.
pub fn stokes_identity_error<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let c = random_gas(rng);
        let s = random_macro(rng);
        let grid = VelocityGrid::for_macro(&s)?;
        let f = random_distribution(rng, &grid, &s, &c);
        let m = grid.conserved_moments(f.view(), &c)?;
        let t = grid.stress_tensor(f.view(), &m.velocity(), &c)?;
        let lhs = -thermo::mechanical_pressure(&t);
        worst = worst.max(rel(lhs, 2.0 / 3.0 * m.rho * m.internal_energy()));
    }
    Ok(worst)
}

/// Largest `|Q| / (p sqrt(R_s theta))` over sampled Maxwellians.
pub fn maxwellian_heat_flux<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let c = random_gas(rng);
        let s = random_macro(rng);
        let grid = VelocityGrid::for_macro(&s)?;
        let f = quadrature::sample_maxwellian(&grid, &s, &c);
        let q = quadrature::heat_flux(&f, &s.u, &c)?;
        let p = 2.0 / 3.0 * s.rho * s.e;
        worst = worst.max(q.norm() / (p * (2.0 * s.e / 3.0).sqrt()));
    }
    Ok(worst)
}

// ------------------------------------------------------------ chapman-enskog

/// Random near-equilibrium state with its default grid: random macro state
/// and gradients, `tau_tilde` in `[0.5, 2]`, `Kn` chosen so that
/// `max |Kn f1/f0| = 0.1` on the grid.
pub fn random_ce_state<R: Rng + ?Sized>(rng: &mut R, c: &GasConstants) -> Result<(CEState, VelocityGrid)> {
    let s = random_macro(rng);
    let g = random_gradients(rng, c);
    let grid = VelocityGrid::for_macro(&s)?;
    let st = CEState::new(s, g, rng.random_range(0.5..2.0), 1.0)?;
    let kn = ce::near_equilibrium_kn(&st, &grid, NEAR_EQUILIBRIUM_BOUND);
    Ok((st.with_kn(kn)?, grid))
}

/// Largest relative gap between the quadrature of `(Kn^2/tau) int k_B f1^2/f0`
/// and the closed form.
pub fn entropy_production_error<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let c = random_gas(rng);
        let (st, grid) = random_ce_state(rng, &c)?;
        let q = ce::entropy_production_quadrature(&st, &grid, &c)?;
        let cf = ce::entropy_production_closed_form(&st, &c)?;
        worst = worst.max(rel(q, cf));
    }
    Ok(worst)
}

/// Largest relative error of the quadrature stress deviation `T + pI` and heat
/// flux of `f0 + Kn f1` against the Navier-Stokes-Fourier closed form.
pub fn nsf_flux_error<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let c = random_gas(rng);
        let (st, grid) = random_ce_state(rng, &c)?;
        let q = ce::first_order_fluxes(&st, &grid, &c)?;
        let cf = ce::nsf_closed_form(&st, &c)?;
        let pi = Mat3::identity() * st.pressure();
        worst = worst.max(rel_diff_mat(&(q.stress + pi), &(cf.stress + pi), 0.0)).max(rel_diff_vec(
            &q.heat_flux,
            &cf.heat_flux,
            0.0,
        ));
    }
    Ok(worst)
}

/// Largest `|kappa/(R_s nu) - 5/2|` over random relaxation times, pressures
/// and gas constants.
pub fn prandtl_ratio_error<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let c = random_gas(rng);
        let tc = ce::transport_coefficients(rng.random_range(1e-3..1.0), rng.random_range(0.1..5.0), &c)?;
        worst = worst.max((tc.kappa / (c.r_s() * tc.nu) - 2.5).abs());
    }
    Ok(worst)
}

/// Largest normalized collision-invariant moment of `f1`.
pub fn solvability_residual<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let c = random_gas(rng);
        let (st, grid) = random_ce_state(rng, &c)?;
        let r = ce::check_solvability(&st, &grid, &c, 1.0);
        worst = r.normalized.iter().fold(worst, |m, x| m.max(*x));
    }
    Ok(worst)
}

/// Defects of `f0 + Kn f1` at one Knudsen number: the entropy change
/// `|rho eta(f0 + Kn f1) - rho eta(f0)|` and `|Phi - Q/theta|`.
pub fn second_order_defects(st: &CEState, grid: &VelocityGrid, c: &GasConstants) -> Result<(f64, f64)> {
    let report = ce::expansion_independence_report(st, grid, c);
    let entropy = report.entropy_delta.ok_or_else(|| Error::Domain("f0 + Kn f1 is negative on the grid".into()))?.abs();
    let f = ce::sample_first_order(st, grid, c);
    let u = st.macro_state.u;
    let phi = grid.entropy_flux(f.view(), &u, c)?;
    let q = grid.heat_flux(f.view(), &u, c)?;
    Ok((entropy, (phi - q / st.theta(c)).norm()))
}

/// Smallest defect reduction factor per halving of `Kn`, over `n` random
/// states and `halvings` successive halvings starting at the near-equilibrium
/// Knudsen number. Returns `(entropy, entropy flux)` factors.
pub fn kn_halving_factors<R: Rng + ?Sized>(rng: &mut R, n: usize, halvings: usize) -> Result<(f64, f64)> {
    let mut worst = (f64::INFINITY, f64::INFINITY);
    for _ in 0..n {
        let c = random_gas(rng);
        let (st, grid) = random_ce_state(rng, &c)?;
        let mut prev = second_order_defects(&st, &grid, &c)?;
        let mut kn = st.kn;
        for _ in 0..halvings {
            kn *= 0.5;
            let d = second_order_defects(&st.with_kn(kn)?, &grid, &c)?;
            worst.0 = worst.0.min(prev.0 / d.0);
            worst.1 = worst.1.min(prev.1 / d.1);
            prev = d;
        }
    }
    Ok(worst)
}

// -------------------------------------------------------------------- thermo

/// Largest relative error of `e -> eta -> e`.
pub fn entropy_round_trip_error<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let c = random_gas(rng);
        let s = random_macro(rng);
        let eta = thermo::equilibrium_entropy(s.rho, s.e, &c)?;
        worst = worst.max(rel(thermo::internal_energy_from_entropy(s.rho, eta, &c)?, s.e));
    }
    Ok(worst)
}

/// Largest relative gap between `d eta/de` (central difference) and
/// `1/theta`, and between `-rho^2 theta d eta/d rho` and `p`.
pub fn gibbs_relation_error<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let c = random_gas(rng);
        let s = random_macro(rng);
        let pt = thermo::ThermoPoint::new(s.rho, s.e, &c)?;
        let he = 1e-5 * s.e;
        let d_e = (thermo::equilibrium_entropy(s.rho, s.e + he, &c)?
            - thermo::equilibrium_entropy(s.rho, s.e - he, &c)?)
            / (2.0 * he);
        let hr = 1e-5 * s.rho;
        let d_r = (thermo::equilibrium_entropy(s.rho + hr, s.e, &c)?
            - thermo::equilibrium_entropy(s.rho - hr, s.e, &c)?)
            / (2.0 * hr);
        worst = worst.max(rel(d_e, 1.0 / pt.theta)).max(rel(-s.rho * s.rho * pt.theta * d_r, pt.p));
    }
    Ok(worst)
}

/// Largest relative gap between `p` and `rho R_s theta`.
pub fn pressure_identity_error<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let c = random_gas(rng);
        let s = random_macro(rng);
        let pt = thermo::ThermoPoint::new(s.rho, s.e, &c)?;
        worst = worst.max(rel(pt.p, s.rho * c.r_s() * pt.theta));
    }
    Ok(worst)
}

fn random_affinities<R: Rng + ?Sized>(rng: &mut R, theta: f64) -> Result<AffinitySet> {
    let d = Mat3::from_fn(|_, _| rng.random_range(-1.0..1.0));
    AffinitySet::new(d, random_vec(rng, 1.0), theta)
}

/// Smallest Clausius-Duhem production of the NSF closure relative to its
/// closed form (`1` when they agree); and the largest `|xi|` of the
/// zero-production counterexample relative to the NSF value.
pub fn clausius_duhem_checks<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<(f64, f64)> {
    let mut nsf_gap = 0.0_f64;
    let mut counter = 0.0_f64;
    for _ in 0..n {
        let theta = rng.random_range(0.5..2.0);
        let p = rng.random_range(0.5..2.0);
        let (nu, kappa) = (rng.random_range(0.1..2.0), rng.random_range(0.1..2.0));
        let a = random_affinities(rng, theta)?;
        let f = thermo::nsf_fluxes(&a, p, nu, kappa, theta);
        let xi = thermo::clausius_duhem_production(&f, &a, p, theta)?;
        let gt = a.grad_theta(theta);
        let expect = (2.0 * nu * crate::tensor::double_dot(&a.dd, &a.dd) + kappa * gt.norm_squared() / theta) / theta;
        nsf_gap = nsf_gap.max(rel(xi, expect));
        let fc = thermo::counterexample_fluxes(&a, p, rng.random_range(0.1..2.0), theta);
        counter = counter.max(thermo::clausius_duhem_production(&fc, &a, p, theta)?.abs() / expect);
    }
    Ok((nsf_gap, counter))
}

// ------------------------------------------------------------------- closure

/// Random quadratic instance: coefficients, temperature, affinities.
pub struct QuadraticInstance {
    pub coeffs: ce::TransportCoefficients,
    pub theta: f64,
    pub a: Flat,
}

pub fn random_quadratic_instance<R: Rng + ?Sized>(rng: &mut R) -> QuadraticInstance {
    QuadraticInstance {
        coeffs: ce::TransportCoefficients { nu: rng.random_range(0.05..2.0), kappa: rng.random_range(0.05..2.0) },
        theta: rng.random_range(0.5..2.0),
        a: Flat::from_fn(|_, _| rng.random_range(-1.0..1.0)),
    }
}

/// Largest relative difference between the numeric maximizer, the linear
/// irreversible closure and the minimal-relaxation-time minimizer, and the
/// largest relative error of the recovered `tau*`.
pub fn closure_equivalence_error<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<(f64, f64)> {
    let opts = KktOptions::default();
    let mut flux_err = 0.0_f64;
    let mut tau_err = 0.0_f64;
    for _ in 0..n {
        let inst = random_quadratic_instance(rng);
        let prod = QuadraticProducer::from_coefficients(inst.coeffs.nu, inst.coeffs.kappa, inst.theta)?;
        let rs = rs_closure_numeric(&prod, &inst.a, &opts)?.j;
        let lin = flatten_fluxes(
            &linear_irreversible_closure(&unflatten_affinities(&inst.a), &inst.coeffs, inst.theta, 0.0),
            0.0,
        );
        let tau0: f64 = rng.random_range(0.1..2.0);
        let alpha = rng.random_range(0.5..3.0);
        let (coeffs, theta) = (inst.coeffs, inst.theta);
        let iota = move |a: &Flat| quadratic_production(a, &coeffs, theta) * tau0.powf(alpha);
        let spec = ProducerSpec { producer: &prod, alpha, iota: &iota };
        let mr = min_relaxation_closure(&spec, &inst.a, &opts)?;
        let scale = lin.norm();
        flux_err = flux_err.max((rs - lin).norm() / scale).max((mr.j - lin).norm() / scale);
        tau_err = tau_err.max(rel(mr.tau_star, tau0));
    }
    Ok((flux_err, tau_err))
}

/// Relative excess of the best of `samples` feasible random fluxes over the
/// KKT optimum on the reduced instance (negative when the optimum wins).
pub fn brute_force_excess<R: Rng + ?Sized>(rng: &mut R, samples: usize) -> Result<f64> {
    let inst = random_quadratic_instance(rng);
    let prod = QuadraticProducer::from_coefficients(inst.coeffs.nu, inst.coeffs.kappa, inst.theta)?;
    let a = Flat::from_fn(|i, _| if REDUCED_SUBSPACE.contains(&i) { inst.a[i] } else { 0.0 });
    let sol = rs_closure_numeric(&prod, &a, &KktOptions::default())?;
    let star = prod.value(&sol.j);
    let bf = brute_force_max(&prod, &a, &REDUCED_SUBSPACE, samples, rng);
    Ok((bf.best_value - star) / star)
}

/// Largest relative defect of additivity for the linear closure over pairs
/// of random affinities.
pub fn linear_closure_additivity<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let inst = random_quadratic_instance(rng);
        let a1 = unflatten_affinities(&inst.a);
        let a2 = unflatten_affinities(&Flat::from_fn(|_, _| rng.random_range(-1.0..1.0)));
        let r = closure::linearity_report(
            |a| linear_irreversible_closure(a, &inst.coeffs, inst.theta, 1.0),
            &a1,
            &a2,
            rng.random_range(-3.0..3.0),
            1.0,
            1e-12,
        );
        worst = worst.max(r.additivity_defect).max(r.homogeneity_defect);
    }
    Ok(worst)
}

// ------------------------------------------------------------------- curtiss

/// Worst scaled isotropy defects of the zeroth-order Curtiss fluxes:
/// `(off-diagonal stress / p, |T + p I| / p, |Q| / (p sqrt(R_s theta)),
/// |M| / (p sqrt(N_max / m)))`.
pub fn curtiss_isotropy<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<[f64; 4]> {
    let mut worst = [0.0_f64; 4];
    for k in 0..n {
        let c = random_gas(rng);
        let rho = rng.random_range(0.5..2.0);
        let theta = rng.random_range(0.5..2.0);
        let inertia = if k % 2 == 0 {
            let dir = random_vec(rng, 1.0).normalize();
            (Mat3::identity() - dir * dir.transpose()) * rng.random_range(0.1..2.0)
        } else {
            let b = Mat3::from_fn(|_, _| rng.random_range(-1.0..1.0));
            b * b.transpose() + Mat3::identity() * 0.1
        };
        let st = CurtissMacro::new(rho, random_vec(rng, 1.0), theta, random_vec(rng, 1.0), inertia)?;
        let f = curtiss::curtiss_zeroth_fluxes(&st, &c)?;
        let p = st.pressure(&c);
        let off = f.stress - Mat3::from_diagonal(&f.stress.diagonal());
        let n_max = nalgebra::SymmetricEigen::new(inertia).eigenvalues.amax();
        worst[0] = worst[0].max(off.amax() / p);
        worst[1] = worst[1].max((f.stress + Mat3::identity() * p).amax() / p);
        worst[2] = worst[2].max(f.heat_flux.norm() / (p * (c.r_s() * theta).sqrt()));
        worst[3] = worst[3].max(f.couple_stress.norm() / (p * (n_max / c.m()).sqrt()));
    }
    Ok(worst)
}

pub fn random_nematic<R: Rng + ?Sized>(rng: &mut R) -> Result<NematicField> {
    let n = random_vec(rng, 1.0);
    let g = Mat3::from_fn(|_, _| rng.random_range(-1.0..1.0));
    NematicField::projected(n, g, rng.random_range(0.1..2.0))
}

/// Largest variational residual of the Ericksen fluxes over random fields
/// and virtual velocity / rotation gradients, relative to the size of its
/// two terms (floored at 1).
pub fn ericksen_variational_residual<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..n {
        let c = random_gas(rng);
        let field = random_nematic(rng)?;
        let (theta, rho) = (rng.random_range(0.5..2.0), rng.random_range(0.5..2.0));
        let (t, m) = curtiss::ericksen_fluxes(&field, theta, rho, &c);
        let gv = Mat3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let go = Mat3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let r = curtiss::variational_residual(&t, &m, &field, theta, rho, &gv, &go, &c);
        let scale = (t.norm() * gv.norm() + m.norm() * go.norm()).max(1.0);
        worst = worst.max(r.abs() / scale);
    }
    Ok(worst)
}

/// Largest deviation from 2 of the energy-derivative vs. printed stress
/// coefficient ratio, and of the tensor ratio, over random fields.
pub fn leslie_ratio_deviation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<(f64, f64)> {
    let mut worst = (0.0_f64, 0.0_f64);
    for _ in 0..n {
        let c = random_gas(rng);
        let field = random_nematic(rng)?;
        let cmp = curtiss::leslie_stress_comparison(&field, rng.random_range(0.5..2.0), rng.random_range(0.5..2.0), &c);
        let (Some(cr), Some(tr)) = (cmp.coefficient_ratio, cmp.tensor_ratio) else {
            continue;
        };
        worst.0 = worst.0.max((cr - 2.0).abs());
        worst.1 = worst.1.max((tr - 2.0).abs());
    }
    Ok(worst)
}

// ------------------------------------------------------------------- scaling

pub const SCALING_LAMBDAS: [f64; 4] = [0.0, 1.0, 2.0, 3.0];

/// `|fitted exponent - lambda/2|` for the quadrature collision frequency.
pub fn temperature_exponent_error(lambda: f64, c: &GasConstants) -> Result<f64> {
    let spec = KernelSpec::new(lambda, 1.0)?;
    Ok((kernel::fit_temperature_exponent(&spec, c, FrequencySource::Quadrature)? - lambda / 2.0).abs())
}

// ------------------------------------------------------------------- suites

fn maxwellian_suite(r: &mut ChaCha8Rng, s: f64) -> Result<Vec<Check>> {
    Ok(vec![
        Check::at_most(
            "maxwellian.moments",
            "conserved moments of sampled Maxwellians on the 24^3 Hermite grid (50 states, max rel. err.)",
            maxwellian_moment_error(r, 50)?,
            1e-8 * s,
        ),
        Check::at_most(
            "maxwellian.stokes",
            "-tr(T)/3 = 2/3 rho e for random distributions (max rel. err.)",
            stokes_identity_error(r, 50)?,
            1e-8 * s,
        ),
        Check::at_most(
            "maxwellian.heat_flux",
            "heat flux of Maxwellians, |Q| / (p sqrt(R_s theta))",
            maxwellian_heat_flux(r, 50)?,
            1e-8 * s,
        ),
    ])
}

fn chapman_enskog_suite(r: &mut ChaCha8Rng, s: f64) -> Result<Vec<Check>> {
    let (fe, ff) = kn_halving_factors(r, 5, 3)?;
    Ok(vec![
        Check::at_most(
            "chapman_enskog.solvability",
            "collision-invariant moments of f1, normalized",
            solvability_residual(r, 20)?,
            1e-10 * s,
        ),
        Check::at_most(
            "chapman_enskog.entropy_production",
            "quadrature vs closed-form entropy production (100 states, max rel. err.)",
            entropy_production_error(r, 100)?,
            1e-6 * s,
        ),
        Check::at_most(
            "chapman_enskog.nsf_fluxes",
            "stress deviation and heat flux of f0 + Kn f1 vs NSF (max rel. err.)",
            nsf_flux_error(r, 50)?,
            1e-6 * s,
        ),
        Check::near(
            "chapman_enskog.prandtl_ratio",
            "kappa / (R_s nu)",
            2.5 + prandtl_ratio_error(r, 100)?,
            2.5,
            4.0 * f64::EPSILON * s,
        ),
        Check::at_least("chapman_enskog.entropy_order", "entropy defect reduction per Kn halving (min)", fe, 3.5 / s),
        Check::at_least("chapman_enskog.flux_order", "|Phi - Q/theta| reduction per Kn halving (min)", ff, 3.5 / s),
    ])
}

fn thermo_suite(r: &mut ChaCha8Rng, s: f64) -> Result<Vec<Check>> {
    let (nsf, counter) = clausius_duhem_checks(r, 100)?;
    Ok(vec![
        Check::at_most(
            "thermo.round_trip",
            "e -> eta -> e (max rel. err.)",
            entropy_round_trip_error(r, 100)?,
            1e-12 * s,
        ),
        Check::at_most(
            "thermo.gibbs",
            "d eta/de = 1/theta and p from d eta/d rho (max rel. err.)",
            gibbs_relation_error(r, 100)?,
            1e-6 * s,
        ),
        Check::at_most(
            "thermo.pressure",
            "p = rho R_s theta (max rel. err.)",
            pressure_identity_error(r, 100)?,
            1e-14 * s,
        ),
        Check::at_most(
            "thermo.nsf_production",
            "Clausius-Duhem production of NSF fluxes vs closed form",
            nsf,
            1e-12 * s,
        ),
        Check::at_most(
            "thermo.counterexample",
            "production of the zero-dissipation counterexample (relative)",
            counter,
            1e-12 * s,
        ),
    ])
}

fn closure_suite(r: &mut ChaCha8Rng, s: f64) -> Result<Vec<Check>> {
    let (flux, tau) = closure_equivalence_error(r, 100)?;
    Ok(vec![
        Check::at_most(
            "closure.equivalence",
            "maximizer, linear closure and min-relaxation minimizer (100 instances, max rel. err.)",
            flux,
            1e-8 * s,
        ),
        Check::at_most("closure.tau_star", "recovered relaxation time (max rel. err.)", tau, 1e-8 * s),
        Check::at_most(
            "closure.brute_force",
            "best of 10^6 feasible samples over the KKT optimum, reduced 5-D instance (relative excess)",
            brute_force_excess(r, 1_000_000)?,
            1e-6 * s,
        ),
        Check::at_most(
            "closure.linearity",
            "additivity and homogeneity of the linear closure",
            linear_closure_additivity(r, 50)?,
            1e-12 * s,
        ),
    ])
}

fn curtiss_suite(r: &mut ChaCha8Rng, s: f64) -> Result<Vec<Check>> {
    let iso = curtiss_isotropy(r, 20)?;
    let (coef, tensor) = leslie_ratio_deviation(r, 20)?;
    Ok(vec![
        Check::at_most("curtiss.offdiagonal", "off-diagonal zeroth-order stress / p", iso[0], 1e-10 * s),
        Check::at_most("curtiss.pressure", "|T + rho R_s theta I| / p", iso[1], 1e-10 * s),
        Check::at_most("curtiss.heat_flux", "scaled zeroth-order heat flux", iso[2], 1e-8 * s),
        Check::at_most("curtiss.couple_stress", "scaled zeroth-order couple stress", iso[3], 1e-8 * s),
        Check::at_most(
            "curtiss.variational",
            "variational residual of the Ericksen fluxes",
            ericksen_variational_residual(r, 50)?,
            1e-12 * s,
        ),
        Check::near("curtiss.leslie_ratio", "energy-derivative / printed stress coefficient", 2.0 + coef, 2.0, 0.0),
        Check::at_most("curtiss.leslie_tensor", "|tensor ratio - 2|", tensor, 1e-12 * s),
    ])
}

fn scaling_suite(s: f64) -> Result<Vec<Check>> {
    let c = GasConstants::default();
    let mut out = Vec::new();
    for lambda in SCALING_LAMBDAS {
        out.push(Check::at_most(
            &format!("scaling.temperature_exponent.lambda_{lambda}"),
            &format!("|fitted exponent - lambda/2| at lambda = {lambda}"),
            temperature_exponent_error(lambda, &c)?,
            1e-3 * s,
        ));
    }
    for lambda in [1.0, 1.5, 2.0, 3.0] {
        let t = kernel::transport_scaling_exponent(lambda)?;
        let flag = if t.within_validity_range { "inside" } else { "outside" };
        out.push(Check::near(
            &format!("scaling.transport_exponent.lambda_{lambda}"),
            &format!("transport exponent 1 - 2/lambda at lambda = {lambda} ({flag} 1 <= lambda < 2)"),
            t.exponent,
            1.0 - 2.0 / lambda,
            0.0,
        ));
    }
    Ok(out)
}

/// Run the named suite.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let s = opts.tolerance_scale;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance scale must be positive, got {s}")));
    }
    let mut r = rng(opts.seed);
    match name {
        "maxwellian" => maxwellian_suite(&mut r, s),
        "chapman-enskog" => chapman_enskog_suite(&mut r, s),
        "thermo" => thermo_suite(&mut r, s),
        "closure" => closure_suite(&mut r, s),
        "curtiss" => curtiss_suite(&mut r, s),
        "scaling" => scaling_suite(s),
        other => Err(Error::InvalidArgument(format!("unknown suite '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        for name in ["thermo", "scaling", "curtiss"] {
            let checks = run_suite(name, &SuiteOptions::default()).unwrap();
            for c in &checks {
                assert!(c.pass, "{c:?}");
            }
        }
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(matches!(run_suite("bogus", &SuiteOptions::default()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn check_constructors() {
        assert!(Check::at_most("a", "", 1.0, 1.0).pass);
        assert!(!Check::at_least("a", "", 3.0, 3.5).pass);
        assert!(Check::near("a", "", 2.0, 2.0, 0.0).pass);
    }
}
