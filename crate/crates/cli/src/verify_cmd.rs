use std::path::Path;
use std::time::Instant;

use kinclose::verify::{self, Check, SuiteOptions};
use serde::Serialize;

use crate::{emit, json, CliError};

#[derive(Serialize)]
struct Report<'a> {
    schema_version: u32,
    suite: &'a str,
    seed: u64,
    tolerance_scale: f64,
    checks: Vec<Check>,
    pass: bool,
}

pub fn run(
    label: &str,
    suites: &[&str],
    seed: u64,
    tolerance_scale: f64,
    out: Option<&Path>,
) -> Result<bool, CliError> {
    let start = Instant::now();
    let opts = SuiteOptions { seed, tolerance_scale };
    let mut checks = Vec::new();
    for name in suites {
        checks.extend(verify::run_suite(name, &opts).map_err(|e| CliError::Failure(format!("suite {name}: {e}")))?);
    }
    let pass = checks.iter().all(|c| c.pass);
    for c in checks.iter().filter(|c| !c.pass) {
        eprintln!("FAIL {}: value {:e}, expected {:e}, tolerance {:e}", c.id, c.value, c.expected, c.tolerance);
    }
    let report = Report { schema_version: json::SCHEMA_VERSION, suite: label, seed, tolerance_scale, checks, pass };
    emit(out, &format!("verify_{label}.json"), &json::to_string(&report))?;
    eprintln!("{label}: {} in {:.2} s", if pass { "pass" } else { "FAIL" }, start.elapsed().as_secs_f64());
    Ok(pass)
}
