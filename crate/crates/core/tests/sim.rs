use kinclose::sim::{self, discrete_equilibrium, SimConfig, Simulation};

fn config(body: &str) -> SimConfig {
    SimConfig::from_toml(body).unwrap()
}

const BIMODAL_CELL: &str = r#"
n_cells = 4
domain_length = 1.0
cfl = 0.5
n_steps = 6
dt = 0.01

[v_grid]
n_per_axis = 10
half_width = 5.0

[tau_model]
kind = "constant"
tau = 0.02

[initial]
preset = "bimodal"
rho = 1.0
theta = 1.0
modulation = 0.0
drift = 1.2
"#;

fn distance_to_equilibrium(s: &Simulation) -> f64 {
    let c = s.config().gas;
    let eq = discrete_equilibrium(&s.cell_moments(0), s.grid(), &c).unwrap();
    let mut buf = vec![0.0; s.distribution().ncols()];
    eq.fill(&mut buf);
    s.distribution().row(0).iter().zip(&buf).map(|(f, e)| (f - e).powi(2)).sum::<f64>().sqrt()
}

#[test]
fn homogeneous_relaxation_is_geometric() {
    let mut s = Simulation::new(config(BIMODAL_CELL)).unwrap();
    let factor = 1.0 / (1.0 + s.dt() / 0.02);
    let mut d = distance_to_equilibrium(&s);
    assert!(d > 1e-3);
    for _ in 0..5 {
        s.step().unwrap();
        let next = distance_to_equilibrium(&s);
        assert!((next / d - factor).abs() < 1e-8, "ratio {} vs {factor}", next / d);
        d = next;
    }
}

#[test]
fn single_step_conserves() {
    let cfg =
        config(&BIMODAL_CELL.replace("n_cells = 4", "n_cells = 8").replace("modulation = 0.0", "modulation = 0.4"));
    let mut s = Simulation::new(cfg).unwrap();
    s.step().unwrap();
    assert!(s.summary().max_conservation_drift() < 1e-13);
    assert!(s.summary().min_xi >= 0.0);
}

#[test]
fn hard_sphere_shear_run() {
    let cfg = config(
        r#"
n_cells = 16
domain_length = 1.0
cfl = 0.9
t_end = 0.2

[v_grid]
n_per_axis = 8
half_width = 5.0

[tau_model]
kind = "hard_sphere"
c_b = 50.0

[initial]
preset = "shear_wave"
rho = 1.0
theta = 1.0
amplitude = 0.01
"#,
    );
    let res = sim::run(cfg).unwrap();
    assert!(res.summary.max_conservation_drift() < 1e-12);
    assert!(res.summary.min_relative_entropy_change >= -1e-14);
    assert!((res.summary.final_time - 0.2).abs() < 1e-12);
    let amps: Vec<f64> = res.records.iter().map(|r| r.amp_shear).collect();
    assert!(amps.last().unwrap() < &amps[0]);
}

#[test]
fn output_every_thins_records() {
    let cfg = config(&BIMODAL_CELL.replace("n_steps = 6", "n_steps = 7\noutput_every = 3"));
    let res = sim::run(cfg).unwrap();
    let steps: Vec<usize> = res.records.iter().map(|r| r.step).collect();
    assert_eq!(steps, vec![0, 3, 6, 7]);
}

#[test]
fn config_round_trips_through_file() {
    let dir = std::env::temp_dir().join(format!("kinclose-sim-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    let cfg = config(BIMODAL_CELL);
    std::fs::write(&path, cfg.to_toml().unwrap()).unwrap();
    let again = SimConfig::from_toml(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(again, cfg);
    std::fs::remove_dir_all(&dir).unwrap();
}
