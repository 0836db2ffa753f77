use std::path::Path;

use clap::Args;
use kinclose::chapman_enskog::{transport_coefficients, TransportCoefficients};
use kinclose::closure::{
    self, bgk_relaxation_time_model, flatten_affinities, hard_sphere_iota, unflatten_fluxes, Flat, KktOptions,
    Producer, ProducerSpec, QuadraticProducer, QuarticProducer,
};
use kinclose::tensor::{symmetric_from_components, Mat3, Vec3};
use kinclose::thermo::AffinitySet;
use kinclose::GasConstants;
use serde::Serialize;

use crate::{emit, json, CliError};

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let v: Vec<f64> =
        s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"))).collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}

#[derive(Args, Debug)]
pub struct ClosureArgs {
    /// Symmetric velocity gradient D as xx,yy,zz,xy,xz,yz (its deviator is used).
    #[arg(long, value_parser = parse_list::<6>, default_value = "0,0,0,0,0,0", allow_hyphen_values = true)]
    dd: [f64; 6],
    /// Temperature gradient as x,y,z.
    #[arg(long, value_parser = parse_list::<3>, default_value = "0,0,0", allow_hyphen_values = true)]
    grad_theta: [f64; 3],
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    /// Shear viscosity; defaults to tau p with the hard-sphere relaxation time.
    #[arg(long)]
    nu: Option<f64>,
    /// Heat conductivity; defaults to 5/2 R_s tau p.
    #[arg(long)]
    kappa: Option<f64>,
    /// Hard-sphere constant of `1/tau = C_B rho sqrt(R_s theta)`.
    #[arg(long, default_value_t = 2.0)]
    c_b: f64,
    /// Exponent of `theta xi = iota / tau^alpha` in the relaxation-time dual.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Add a quartic term `eps |J|^4` to the quadratic producer (eps >= 0).
    #[arg(long, allow_hyphen_values = true)]
    quartic_eps: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    k_b: f64,
}

#[derive(Serialize)]
struct Inputs {
    d: [[f64; 3]; 3],
    grad_theta: [f64; 3],
    theta: f64,
    rho: f64,
    pressure: f64,
    nu: f64,
    kappa: f64,
    c_b: f64,
    alpha: f64,
    quartic_eps: Option<f64>,
}

#[derive(Serialize)]
struct ClosureReport {
    schema_version: u32,
    inputs: Inputs,
    stress: [[f64; 3]; 3],
    stress_deviation: [[f64; 3]; 3],
    heat_flux: [f64; 3],
    /// `theta xi = J . A` at the selected fluxes.
    theta_xi: f64,
    /// `|P(J) - J . A|`.
    constraint_residual: f64,
    multiplier: f64,
    kkt_iterations: usize,
    /// Minimal relaxation time; `null` at zero affinities.
    tau_star: Option<f64>,
    /// `tau` of the hard-sphere model at `(rho, theta)`.
    tau_model: f64,
}

fn rows(m: &Mat3) -> [[f64; 3]; 3] {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| m[(i, j)]))
}

pub fn run(args: &ClosureArgs, out: Option<&Path>) -> Result<bool, CliError> {
    let c = GasConstants::new(args.mass, args.k_b)?;
    if !(args.theta > 0.0 && args.rho > 0.0) {
        return Err(CliError::Usage("--theta and --rho must be positive".into()));
    }
    let p = args.rho * c.r_s() * args.theta;
    let tau = bgk_relaxation_time_model(args.rho, args.theta, &c, args.c_b)?;
    let defaults = transport_coefficients(tau, p, &c)?;
    let coeffs =
        TransportCoefficients { nu: args.nu.unwrap_or(defaults.nu), kappa: args.kappa.unwrap_or(defaults.kappa) };

    let d = symmetric_from_components(args.dd);
    let a = AffinitySet::new(d, Vec3::from(args.grad_theta), args.theta)?;
    let af = flatten_affinities(&a);
    let base = QuadraticProducer::from_coefficients(coeffs.nu, coeffs.kappa, args.theta)?;
    let quartic;
    let producer: &dyn Producer = match args.quartic_eps {
        Some(eps) => {
            quartic = QuarticProducer { base, eps };
            &quartic
        }
        None => &base,
    };
    let opts = KktOptions::default();
    let sol = closure::rs_closure_numeric(producer, &af, &opts)?;
    let fluxes = unflatten_fluxes(&sol.j, p);

    let zero = af.iter().all(|x| *x == 0.0);
    let tau_star = if zero {
        None
    } else {
        let (rho, theta, c_b) = (args.rho, args.theta, args.c_b);
        let iota = move |x: &Flat| hard_sphere_iota(x, rho, theta, &c, c_b);
        let spec = ProducerSpec { producer, alpha: args.alpha, iota: &iota };
        Some(closure::min_relaxation_closure(&spec, &af, &opts)?.tau_star)
    };
    let theta_xi = sol.j.dot(&af);
    let report = ClosureReport {
        schema_version: json::SCHEMA_VERSION,
        inputs: Inputs {
            d: rows(&d),
            grad_theta: args.grad_theta,
            theta: args.theta,
            rho: args.rho,
            pressure: p,
            nu: coeffs.nu,
            kappa: coeffs.kappa,
            c_b: args.c_b,
            alpha: args.alpha,
            quartic_eps: args.quartic_eps,
        },
        stress: rows(&fluxes.stress),
        stress_deviation: rows(&(fluxes.stress + Mat3::identity() * p)),
        heat_flux: fluxes.heat_flux.into(),
        theta_xi,
        constraint_residual: (producer.value(&sol.j) - theta_xi).abs(),
        multiplier: sol.multiplier,
        kkt_iterations: sol.iterations,
        tau_star,
        tau_model: tau,
    };
    emit(out, "closure.json", &json::to_string(&report))?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list::<3>("1, -2,3.5").unwrap(), [1.0, -2.0, 3.5]);
        assert!(parse_list::<3>("1,2").is_err());
        assert!(parse_list::<3>("1,x,2").is_err());
    }
}
