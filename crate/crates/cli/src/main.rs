use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use strapdown_attitude::coning::{coning_true_quat, run_interval, synth_batch, AlgoConfig, ConingParams, NoiseParams};
use strapdown_attitude::fit::{fit_cheb, fit_normal, SampleKind};
use strapdown_attitude::sweep::{csv_string, emit_csv, preset, run_sweep, SweepConfig, PRESETS};
use strapdown_attitude::{attitude_error, Algorithm, StopRule};

/// Strapdown attitude algorithms under classical coning motion.
#[derive(Debug, Parser)]
#[command(name = "attsweep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Sweep config file (key=value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output CSV path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Noise seed, replacing any seed list in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print fitted angular-velocity coefficients for one synthetic interval.
    Fit {
        #[command(flatten)]
        scenario: Scenario,
        #[arg(long, value_enum, default_value_t = Basis::Cheb)]
        basis: Basis,
        /// Fit degree; N-1 when omitted.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Run one update interval from the true attitude.
    Step {
        #[command(flatten)]
        scenario: Scenario,
        #[arg(long, default_value = "QuatFIter")]
        algorithm: Algorithm,
        /// Truncation degree; the algorithm's default when omitted.
        #[arg(long)]
        mt: Option<usize>,
        #[arg(long, default_value = "dpc:1e-14")]
        stop: StopRule,
    },
    /// Run the sweep described by --config.
    Sweep,
    /// Run a built-in scenario.
    Preset {
        /// One of fig3, fig5, fig6, fig7, fig9, fig10, fig12.
        name: String,
        /// Print the preset as config text instead of running it.
        #[arg(long)]
        print_config: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Basis {
    Normal,
    Cheb,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Increment,
    Rate,
}

#[derive(Debug, Args)]
struct Scenario {
    /// Coning frequency, Hz.
    #[arg(long, default_value_t = 10.0)]
    fc: f64,
    /// Sampling frequency, Hz.
    #[arg(long, default_value_t = 1000.0)]
    fs: f64,
    /// Coning half-angle, deg.
    #[arg(long, default_value_t = 1.0)]
    alpha_deg: f64,
    /// Samples per update interval.
    #[arg(short = 'N', long = "samples", default_value_t = 8)]
    samples: usize,
    /// Update interval index.
    #[arg(long, default_value_t = 0)]
    interval: usize,
    #[arg(long, value_enum, default_value_t = Kind::Increment)]
    kind: Kind,
    /// Angle random walk, deg/sqrt(h).
    #[arg(long, default_value_t = 0.0)]
    arw: f64,
}

impl Scenario {
    fn params(&self) -> Result<ConingParams> {
        let duration = (self.interval + 1) as f64 * self.samples as f64 / self.fs;
        Ok(ConingParams::new(self.alpha_deg.to_radians(), self.fc, self.fs, self.samples, duration)?)
    }

    fn kind(&self) -> SampleKind {
        match self.kind {
            Kind::Increment => SampleKind::Increment,
            Kind::Rate => SampleKind::Rate,
        }
    }
}

fn write_rows(cfg: &SweepConfig, out: Option<PathBuf>, jobs: usize) -> Result<()> {
    let rows = run_sweep(cfg, jobs)?;
    match out.or_else(|| cfg.out.clone()) {
        Some(path) => {
            emit_csv(&rows, &path)?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => std::io::stdout().write_all(csv_string(&rows).as_bytes())?,
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::Fit { scenario, basis, degree } => {
            let p = scenario.params()?;
            let noise = NoiseParams::from_deg_per_root_hour(scenario.arw, seed);
            let batch = synth_batch(&p, scenario.interval, scenario.kind(), &noise)?;
            let degree = degree.unwrap_or(batch.full_degree());
            let coeffs = match basis {
                Basis::Normal => fit_normal(&batch, degree)?.into_coeffs(),
                Basis::Cheb => fit_cheb(&batch, degree)?.coeffs().to_vec(),
            };
            for (i, c) in coeffs.iter().enumerate() {
                println!("{i} {c}");
            }
        }
        Command::Step { scenario, algorithm, mt, stop } => {
            let mut p = scenario.params()?;
            if let Some(n) = algorithm.fixed_samples() {
                p.samples = n;
            }
            let noise = NoiseParams::from_deg_per_root_hour(scenario.arw, seed);
            let batch = synth_batch(&p, scenario.interval, scenario.kind(), &noise)?;
            let mut cfg = AlgoConfig::new(algorithm, p.samples).with_stop(stop);
            if let Some(m) = mt {
                cfg.m_t = m;
            }
            let start = scenario.interval * p.samples;
            let q0 = coning_true_quat(&p, p.sample_time(start));
            let out = run_interval(&batch, &cfg, q0).with_context(|| format!("{algorithm} step"))?;
            let truth = coning_true_quat(&p, p.sample_time(start + p.samples));
            println!("quaternion {}", out.attitude);
            println!("truth      {truth}");
            println!("error_rad  {:e}", attitude_error(truth, out.attitude));
            println!("iterations {}", out.iterations);
        }
        Command::Sweep => {
            let Some(path) = cli.config else {
                bail!("sweep needs --config <path>");
            };
            let mut cfg = SweepConfig::from_file(&path)?;
            if let Some(s) = cli.seed {
                cfg.seeds = vec![s];
            }
            write_rows(&cfg, cli.out, cli.jobs)?;
        }
        Command::Preset { name, print_config } => {
            let mut cfg = preset(&name).with_context(|| format!("known presets: {}", PRESETS.join(", ")))?;
            if let Some(s) = cli.seed {
                cfg.seeds = vec![s];
            }
            if print_config {
                print!("{cfg}");
            } else {
                write_rows(&cfg, cli.out, cli.jobs)?;
            }
        }
    }
    Ok(())
}
