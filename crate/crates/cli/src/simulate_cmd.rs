use std::path::Path;
use std::time::Instant;

use kinclose::sim::{self, InitialCondition, Record, RunSummary, SimConfig, ViscosityStudy};
use serde::Serialize;

use crate::{json, write_file, CliError};

pub const SERIES_COLUMNS: [&str; 9] = ["t", "mass", "px", "py", "pz", "energy", "H", "min_xi", "amp_shear"];

#[derive(Serialize)]
struct Summary {
    schema_version: u32,
    config: SimConfig,
    run: RunSummary,
    max_conservation_drift: f64,
    /// Present for the shear-wave preset when the decay fit succeeded.
    shear: Option<ViscosityStudy>,
    /// Reason the shear fit was not possible.
    shear_error: Option<String>,
}

fn series_csv(records: &[Record]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Failure(format!("writing CSV: {e}"));
    w.write_record(SERIES_COLUMNS).map_err(fail)?;
    for r in records {
        let row =
            [r.t, r.mass, r.momentum[0], r.momentum[1], r.momentum[2], r.energy, r.entropy, r.min_xi, r.amp_shear];
        w.write_record(row.map(json::fmt_f64)).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failure(format!("writing CSV: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failure(e.to_string()))
}

pub fn run(config: &Path, out: Option<&Path>) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(config)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", config.display())))?;
    let cfg = SimConfig::from_toml(&text).map_err(|e| CliError::Usage(format!("{}: {e}", config.display())))?;
    let out = out.unwrap_or(Path::new("."));
    let start = Instant::now();
    let res = sim::run(cfg.clone())?;
    let (shear, shear_error) = match cfg.initial {
        InitialCondition::ShearWave { .. } => match sim::viscosity_from_records(&cfg, &res.records) {
            Ok(s) => (Some(s), None),
            Err(e @ kinclose::Error::InsufficientSignal(_)) => (None, Some(e.to_string())),
            Err(e) => return Err(e.into()),
        },
        _ => (None, None),
    };
    write_file(out, "series.csv", &series_csv(&res.records)?)?;
    let summary = Summary {
        schema_version: json::SCHEMA_VERSION,
        max_conservation_drift: res.summary.max_conservation_drift(),
        config: cfg,
        run: res.summary,
        shear,
        shear_error,
    };
    write_file(out, "summary.json", &json::to_string(&summary))?;
    eprintln!("{} steps in {:.2} s; wrote {}", summary.run.n_steps, start.elapsed().as_secs_f64(), out.display());
    Ok(true)
}
