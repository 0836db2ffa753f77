//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line to stderr
//! (bypassing output capture) before asserting.

use std::io::Write;
use std::time::{Duration, Instant};

use kinclose::kernel;
use kinclose::sim::{self, Boundary, InitialCondition, SimConfig, TauModel, VelocityGridSpec};
use kinclose::verify::{self, DEFAULT_SEED};
use kinclose::GasConstants;

fn report(n: u32, name: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "acceptance {n:>2} [{tag}] {name}: {detail}");
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

#[test]
fn c01_maxwellian_moment_fidelity() {
    let start = Instant::now();
    let err = verify::maxwellian_moment_error(&mut verify::rng(DEFAULT_SEED), 50).unwrap();
    let dt = start.elapsed();
    report(
        1,
        "Maxwellian moments on 24^3 Hermite grid, 50 states",
        err < 1e-8 && dt < Duration::from_secs(10),
        format!("max rel err {err:.3e} (< 1e-8), runtime {:.2} s (< 10 s)", dt.as_secs_f64()),
    );
}

#[test]
fn c02_stokes_identity() {
    let err = verify::stokes_identity_error(&mut verify::rng(DEFAULT_SEED + 1), 100).unwrap();
    report(
        2,
        "-tr(T)/3 = 2/3 rho e for random distributions",
        err < 1e-8,
        format!("max rel err {err:.3e} (< 1e-8) over 100 distributions"),
    );
}

#[test]
fn c03_entropy_production_oracle() {
    let err = verify::entropy_production_error(&mut verify::rng(DEFAULT_SEED + 2), 100).unwrap();
    report(
        3,
        "entropy production quadrature vs closed form",
        err < 1e-6,
        format!("max rel err {err:.3e} (< 1e-6) over 100 near-equilibrium states"),
    );
}

#[test]
fn c04_nsf_flux_recovery() {
    let mut rng = verify::rng(DEFAULT_SEED + 3);
    let err = verify::nsf_flux_error(&mut rng, 100).unwrap();
    let ratio = verify::prandtl_ratio_error(&mut rng, 1000).unwrap();
    let c = GasConstants::default();
    let tc = kinclose::chapman_enskog::transport_coefficients(0.37, 1.3, &c).unwrap();
    let unit_ratio = tc.kappa / (c.r_s() * tc.nu);
    report(
        4,
        "NSF flux recovery and kappa/(R_s nu)",
        err < 1e-6 && ratio <= 4.0 * f64::EPSILON && (unit_ratio - 2.5).abs() <= 4.0 * f64::EPSILON,
        format!("max rel flux err {err:.3e} (< 1e-6); kappa/(R_s nu) = {unit_ratio}, max deviation {ratio:.1e} over random constants (<= 4 eps)"),
    );
}

#[test]
fn c05_closure_equivalence() {
    let mut rng = verify::rng(DEFAULT_SEED + 4);
    let (flux, tau) = verify::closure_equivalence_error(&mut rng, 100).unwrap();
    let excess = verify::brute_force_excess(&mut rng, 1_000_000).unwrap();
    report(
        5,
        "maximizer = linear closure = min-relaxation minimizer; KKT vs 10^6 samples",
        flux < 1e-8 && tau < 1e-8 && excess <= 1e-6,
        format!(
            "max flux rel err {flux:.3e} (< 1e-8), tau* rel err {tau:.3e}, best sample excess {excess:.3e} (<= 1e-6)"
        ),
    );
}

#[test]
fn c06_h_theorem() {
    let cfg = SimConfig {
        n_cells: 64,
        domain_length: 1.0,
        v_grid: VelocityGridSpec { n_per_axis: 16, half_width: 6.0, center: [0.0; 3] },
        tau_model: TauModel::Constant { tau: 0.05 },
        cfl: 0.9,
        t_end: None,
        n_steps: Some(2000),
        dt: None,
        boundary: Boundary::Periodic,
        initial: InitialCondition::Bimodal { rho: 1.0, theta: 1.0, modulation: 0.5, drift: 1.5 },
        output_every: 100,
        gas: GasConstants::default(),
    };
    let start = Instant::now();
    let res = sim::run(cfg).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let s = &res.summary;
    let min_xi = res.records.iter().map(|r| r.min_xi).fold(f64::INFINITY, f64::min);
    report(
        6,
        "H-theorem, 64 cells x 16^3, bimodal, 2000 steps",
        s.n_steps == 2000
            && s.min_relative_entropy_change >= -1e-10
            && s.max_conservation_drift() < 1e-12
            && secs < 300.0,
        format!(
            "min dH/|H| {:.3e} (>= -1e-10), drift {:.3e} (< 1e-12), min xi {min_xi:.3e}, runtime {secs:.1} s (< 300 s)",
            s.min_relative_entropy_change,
            s.max_conservation_drift()
        ),
    );
}

#[test]
fn c07_shear_wave_viscosity() {
    let mut lines = Vec::new();
    let mut pass = true;
    for tau in [0.005, 0.01, 0.02] {
        let cfg = SimConfig {
            n_cells: 64,
            domain_length: 1.0,
            v_grid: VelocityGridSpec { n_per_axis: 12, half_width: 5.0, center: [0.0; 3] },
            tau_model: TauModel::Constant { tau },
            cfl: 0.9,
            t_end: Some(1.5),
            n_steps: None,
            dt: None,
            boundary: Boundary::Periodic,
            initial: InitialCondition::ShearWave { rho: 1.0, theta: 1.0, amplitude: 0.01 },
            output_every: 1,
            gas: GasConstants::default(),
        };
        let s = sim::viscosity_study(&cfg).unwrap();
        pass &= s.relative_error < 0.1;
        lines.push(format!(
            "tau {tau}: nu_eff {:.5} vs tau p {:.5} (rel err {:.3})",
            s.nu_effective, s.nu_expected, s.relative_error
        ));
    }
    report(7, "shear-wave viscosity after zero-tau control", pass, lines.join("; "));
}

#[test]
fn c08_kernel_scaling() {
    let c = GasConstants::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for lambda in verify::SCALING_LAMBDAS {
        let err = verify::temperature_exponent_error(lambda, &c).unwrap();
        pass &= err < 1e-3;
        parts.push(format!("lambda {lambda}: |slope - lambda/2| {err:.1e}"));
    }
    for (lambda, flag) in [(1.0, true), (1.5, true), (2.0, false), (3.0, false)] {
        let t = kernel::transport_scaling_exponent(lambda).unwrap();
        pass &= t.exponent == 1.0 - 2.0 / lambda && t.within_validity_range == flag;
        parts.push(format!("transport exponent({lambda}) = {} [valid: {}]", t.exponent, t.within_validity_range));
    }
    report(8, "kernel temperature and transport exponents", pass, parts.join("; "));
}

#[test]
fn c09_curtiss_isotropy() {
    let mut rng = verify::rng(DEFAULT_SEED + 8);
    let iso = verify::curtiss_isotropy(&mut rng, 20).unwrap();
    let resid = verify::ericksen_variational_residual(&mut rng, 100).unwrap();
    let (coef, _) = verify::leslie_ratio_deviation(&mut rng, 20).unwrap();
    report(
        9,
        "Curtiss zeroth-order isotropy and Ericksen closure",
        iso[0] < 1e-10 && iso[2] < 1e-8 && iso[3] < 1e-8 && resid < 1e-12 && coef == 0.0,
        format!(
            "off-diag/p {:.1e}, scaled Q {:.1e}, scaled M {:.1e}, variational residual {resid:.1e}, coefficient ratio {}",
            iso[0],
            iso[2],
            iso[3],
            2.0 + coef
        ),
    );
}

#[test]
fn c10_second_order_defects() {
    let (fe, ff) = verify::kn_halving_factors(&mut verify::rng(DEFAULT_SEED + 9), 10, 3).unwrap();
    report(
        10,
        "O(Kn^2) entropy and entropy-flux defects",
        fe >= 3.5 && ff >= 3.5,
        format!(
            "min reduction per halving: entropy {fe:.3}, Phi - Q/theta {ff:.3} (>= 3.5, three halvings, 10 states)"
        ),
    );
}
