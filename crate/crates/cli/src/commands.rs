//! Subcommand implementations.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use qmarket_core::{
    check_ruzzi, eigendecompose, expectation, g_alpha_values, gaussian_state, hamiltonian_at, integrate_tdse,
    most_probable_return, op_price, op_rate_of_return, op_trend, EvolutionParams, GridSpec, HermitianOperator64,
    Method, PotentialSpec, ThetaGaussianSpec, Trajectory64,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::format::num;
use crate::svg::bar_chart;

/// Deviation above which `check-ruzzi` reports a numeric failure.
pub const RUZZI_TOL: f64 = 1e-10;

pub struct SimulationOutput {
    pub trajectory_csv: String,
    pub summary_csv: String,
    pub svgs: Vec<(String, String)>,
}

pub fn run_simulation(cfg: &RunConfig) -> Result<SimulationOutput, CliError> {
    cfg.validate()?;
    let grid = GridSpec::from_signed(cfg.q)?;
    let params = EvolutionParams::new(cfg.mu, cfg.beta, cfg.omega, cfg.dt, cfg.method()?)?;
    let potential = if cfg.beta == 0.0 {
        PotentialSpec::None
    } else {
        params.potential()
    };
    let psi0 = gaussian_state(&ThetaGaussianSpec::new(cfg.alpha, grid)?)?;
    let traj = integrate_tdse(grid, &params, &potential, &psi0, &cfg.times)?;
    render(cfg, grid, &traj)
}

fn render(cfg: &RunConfig, grid: GridSpec, traj: &Trajectory64) -> Result<SimulationOutput, CliError> {
    let r_op = op_rate_of_return::<f64>(grid);
    let price_op = cfg.price_base.map(|p| op_price(grid, p)).transpose()?;

    let mut trajectory_csv = String::from("t,n,return,prob\n");
    let mut summary_csv = String::from("t,argmax_n,tied_n,expected_return,expected_price,norm_drift\n");
    let mut svgs = Vec::new();
    for (i, (&t, state)) in traj.sample_times.iter().zip(&traj.states).enumerate() {
        let probs = traj.probabilities(i);
        for (n, p) in grid.indices().zip(&probs) {
            let _ = writeln!(trajectory_csv, "{},{n},{},{}", num(t), num(grid.value(n)), num(*p));
        }
        let mp = most_probable_return(state)?;
        let tied: Vec<String> = mp.tied.iter().map(|n| n.to_string()).collect();
        let price = match &price_op {
            Some(op) => num(expectation(op, state)?),
            None => String::new(),
        };
        let _ = writeln!(
            summary_csv,
            "{},{},{},{},{},{}",
            num(t),
            mp.argmax,
            tied.join(";"),
            num(expectation(&r_op, state)?),
            price,
            num(traj.drift_at_samples[i])
        );
        if cfg.emit_svg {
            let bars: Vec<(f64, f64)> = grid.indices().zip(&probs).map(|(n, &p)| (grid.value(n), p)).collect();
            let pmax = probs.iter().cloned().fold(0.0, f64::max);
            let y_max = ((pmax / 0.05).ceil() * 0.05).max(0.25);
            let svg = bar_chart(&format!("t = {} s", num(t)), "probability", &bars, y_max);
            svgs.push((format!("distribution_t{}.svg", num(t)), svg));
        }
    }
    Ok(SimulationOutput {
        trajectory_csv,
        summary_csv,
        svgs,
    })
}

pub fn simulate(cfg: &RunConfig) -> Result<(), CliError> {
    let out = run_simulation(cfg)?;
    let dir = &cfg.output_dir;
    fs::create_dir_all(dir)?;
    fs::write(dir.join("trajectory.csv"), &out.trajectory_csv)?;
    fs::write(dir.join("summary.csv"), &out.summary_csv)?;
    let mut echo = serde_json::to_string_pretty(cfg).map_err(|e| CliError::Invalid(e.to_string()))?;
    echo.push('\n');
    fs::write(dir.join("run.json"), echo)?;
    for (name, svg) in &out.svgs {
        fs::write(dir.join(name), svg)?;
    }
    println!("wrote {} sample times to {}", cfg.times.len(), dir.display());
    print!("{}", out.summary_csv);
    Ok(())
}

pub fn gaussian_csv(q: i64, alpha: f64) -> Result<(String, Vec<(f64, f64)>), CliError> {
    let grid = GridSpec::from_signed(q)?;
    let spec = ThetaGaussianSpec::new(alpha, grid)?;
    let g = g_alpha_values(&spec)?;
    let gamma = gaussian_state(&spec)?;
    let mut csv = String::from("n,g,gamma,gamma_sq\n");
    let mut bars = Vec::with_capacity(grid.dim());
    for ((n, amp), gn) in gamma.iter().zip(&g) {
        let _ = writeln!(csv, "{n},{},{},{}", num(*gn), num(amp.re), num(amp.re * amp.re));
        bars.push((grid.value(n), amp.re));
    }
    Ok((csv, bars))
}

pub fn gaussian(q: i64, alpha: f64, output: Option<&Path>, svg: bool) -> Result<(), CliError> {
    if svg && output.is_none() {
        return Err(CliError::Invalid("--svg needs --output to name the chart file".into()));
    }
    let (csv, bars) = gaussian_csv(q, alpha)?;
    match output {
        Some(path) => {
            fs::write(path, &csv)?;
            if svg {
                let chart = bar_chart(&format!("gamma, alpha = {}", num(alpha)), "amplitude", &bars, 1.0);
                fs::write(path.with_extension("svg"), chart)?;
            }
        }
        None => std::io::stdout().write_all(csv.as_bytes())?,
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OperatorName {
    #[value(name = "R")]
    Return,
    #[value(name = "T")]
    Trend,
    #[value(name = "price")]
    Price,
    #[value(name = "H-at-t")]
    HamiltonianAt,
}

#[derive(Debug, Clone, Default)]
pub struct SpectrumParams {
    pub price_base: Option<f64>,
    pub mu: Option<f64>,
    pub beta: Option<f64>,
    pub omega: Option<f64>,
    pub t: Option<f64>,
}

/// Returns the matrix CSV and, for R/T/price, the eigenvalue line.
pub fn spectrum_csv(q: i64, name: OperatorName, p: &SpectrumParams) -> Result<(String, Option<String>), CliError> {
    let grid = GridSpec::from_signed(q)?;
    let require =
        |v: Option<f64>, flag: &str| v.ok_or_else(|| CliError::Invalid(format!("operator {name:?} needs --{flag}")));
    let op: HermitianOperator64 = match name {
        OperatorName::Return => op_rate_of_return(grid),
        OperatorName::Trend => op_trend(grid),
        OperatorName::Price => op_price(grid, require(p.price_base, "price-base")?)?,
        OperatorName::HamiltonianAt => {
            let params = EvolutionParams::new(
                require(p.mu, "mu")?,
                require(p.beta, "beta")?,
                require(p.omega, "omega")?,
                1.0,
                Method::UnitaryMidpoint,
            )?;
            hamiltonian_at(grid, &params, &params.potential(), require(p.t, "t")?)?
        }
    };
    let mut csv = String::from("n,m,re,im\n");
    for (n, m, z) in op.to_csv_rows() {
        let _ = writeln!(csv, "{n},{m},{},{}", num(z.re), num(z.im));
    }
    let eig_line = match name {
        OperatorName::HamiltonianAt => None,
        _ => {
            let es = eigendecompose(&op)?;
            let vals: Vec<String> = es.eigenvalues().iter().map(|&x| num(x)).collect();
            Some(format!("# eigenvalues: {}", vals.join(" ")))
        }
    };
    Ok((csv, eig_line))
}

pub fn spectrum(q: i64, name: OperatorName, p: &SpectrumParams, output: Option<&PathBuf>) -> Result<(), CliError> {
    let (csv, eig) = spectrum_csv(q, name, p)?;
    match output {
        Some(path) => fs::write(path, &csv)?,
        None => std::io::stdout().write_all(csv.as_bytes())?,
    }
    if let Some(line) = eig {
        println!("{line}");
    }
    Ok(())
}

pub fn ruzzi_report(alphas: &[f64], qs: &[i64]) -> Result<(String, f64), CliError> {
    let mut out = String::from("alpha,q,max_deviation\n");
    let mut worst = 0.0f64;
    for &q in qs {
        let grid = GridSpec::from_signed(q)?;
        for &a in alphas {
            let dev = check_ruzzi(a, grid)?;
            worst = worst.max(dev);
            let _ = writeln!(out, "{},{q},{}", num(a), num(dev));
        }
    }
    Ok((out, worst))
}

pub fn ruzzi(alphas: &[f64], qs: &[i64]) -> Result<(), CliError> {
    let (report, worst) = ruzzi_report(alphas, qs)?;
    print!("{report}");
    if worst > RUZZI_TOL {
        return Err(CliError::Numeric(format!(
            "Fourier self-duality deviation {worst:e} exceeds {RUZZI_TOL:e}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rows_are_symmetric() {
        let (csv, _) = gaussian_csv(10, 0.2).unwrap();
        let rows: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(rows.len(), 21);
        let gamma: Vec<f64> = rows
            .iter()
            .map(|r| r.split(',').nth(2).unwrap().parse().unwrap())
            .collect();
        for i in 0..10 {
            assert_eq!(gamma[i], gamma[20 - i]);
        }
        assert!(gamma.iter().all(|&g| g <= gamma[10]));
    }

    #[test]
    fn spectrum_requires_parameters() {
        let missing = SpectrumParams::default();
        assert!(matches!(
            spectrum_csv(10, OperatorName::Price, &missing),
            Err(CliError::Invalid(_))
        ));
        assert!(matches!(
            spectrum_csv(10, OperatorName::HamiltonianAt, &missing),
            Err(CliError::Invalid(_))
        ));
    }

    #[test]
    fn return_spectrum_q1() {
        let (csv, eig) = spectrum_csv(1, OperatorName::Return, &SpectrumParams::default()).unwrap();
        assert_eq!(
            csv,
            "n,m,re,im\n-1,-1,-0.01,0\n-1,0,0,0\n-1,1,0,0\n0,-1,0,0\n0,0,0,0\n0,1,0,0\n1,-1,0,0\n1,0,0,0\n1,1,0.01,0\n"
        );
        assert_eq!(eig.unwrap(), "# eigenvalues: -0.01 0 0.01");
    }

    #[test]
    fn summary_reports_price_only_when_requested() {
        let cfg = RunConfig {
            times: vec![0.0, 10.0],
            ..RunConfig::default()
        };
        let out = run_simulation(&cfg).unwrap();
        let row = out.summary_csv.lines().nth(1).unwrap();
        assert_eq!(row.split(',').nth(4).unwrap(), "");
        let cfg = RunConfig {
            price_base: Some(100.0),
            ..cfg
        };
        let out = run_simulation(&cfg).unwrap();
        let row = out.summary_csv.lines().nth(1).unwrap();
        let price: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
        assert!((price - 100.0).abs() < 1e-9);
    }
}
