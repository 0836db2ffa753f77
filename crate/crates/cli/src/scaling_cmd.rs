use std::path::Path;

use kinclose::kernel::{self, FrequencySource, KernelSpec, FIT_TEMPERATURES};
use kinclose::GasConstants;
use serde::Serialize;

use crate::{emit, json, CliError};

#[derive(Serialize)]
struct FrequencyPoint {
    theta: f64,
    collision_frequency: f64,
}

#[derive(Serialize)]
struct ScalingReport {
    schema_version: u32,
    lambda: f64,
    b_bar: f64,
    frequencies: Vec<FrequencyPoint>,
    fitted_exponent: f64,
    fitted_exponent_closed_form: f64,
    expected_exponent: f64,
    transport_exponent: Option<f64>,
    within_validity_range: bool,
}

pub fn run(lambda: f64, b_bar: f64, out: Option<&Path>) -> Result<bool, CliError> {
    let c = GasConstants::default();
    let spec = KernelSpec::new(lambda, b_bar)?;
    let frequencies = FIT_TEMPERATURES
        .iter()
        .map(|&theta| {
            Ok(FrequencyPoint {
                theta,
                collision_frequency: kernel::collision_frequency_quadrature(&spec, 1.0, theta, &c)?,
            })
        })
        .collect::<kinclose::Result<Vec<_>>>()?;
    let transport = kernel::transport_scaling_exponent(lambda).ok();
    let report = ScalingReport {
        schema_version: json::SCHEMA_VERSION,
        lambda,
        b_bar,
        frequencies,
        fitted_exponent: kernel::fit_temperature_exponent(&spec, &c, FrequencySource::Quadrature)?,
        fitted_exponent_closed_form: kernel::fit_temperature_exponent(&spec, &c, FrequencySource::ClosedForm)?,
        expected_exponent: lambda / 2.0,
        transport_exponent: transport.map(|t| t.exponent),
        within_validity_range: transport.is_some_and(|t| t.within_validity_range),
    };
    emit(out, "scaling.json", &json::to_string(&report))?;
    Ok(true)
}
