use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use psf_harness::{experiment, output, presets, HarnessError, RunConfig};

/// Phase space filter experiments.
#[derive(Parser, Debug)]
#[command(name = "psf", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// TOML run configuration
    #[arg(long, global = true, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in configuration: schrodinger, euler or maxwell
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Same box at twice the resolution
    #[arg(long, global = true)]
    paper_scale: bool,
    /// Write branch weights and spatial cutoffs of every filter
    #[arg(long, global = true)]
    dump_filters: bool,
    /// Output directory
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads for sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One run, with the reference comparison if configured
    Run {
        #[arg(long)]
        k: Option<f64>,
        #[arg(long)]
        t_final: Option<f64>,
    },
    /// Final-time error for each pulse frequency
    SweepK {
        #[arg(long, value_delimiter = ',')]
        k: Vec<f64>,
    },
    /// Final-time error over the (delta, k) product
    SweepDelta {
        #[arg(long, value_delimiter = ',')]
        deltas: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        k: Vec<f64>,
    },
    /// Norm at every filter time of a long run
    Stability {
        #[arg(long, default_value_t = 2000.0)]
        t_final: f64,
    },
    /// Interior relative difference of two snapshots (relative to B)
    Compare { a: PathBuf, b: PathBuf },
}

fn load_config(common: &Common) -> Result<RunConfig, HarnessError> {
    let mut cfg = match (&common.config, &common.preset) {
        (Some(path), _) => RunConfig::load(path)?,
        (None, Some(name)) => presets::preset(name)?,
        (None, None) => return Err(HarnessError::Config("one of --config or --preset is required".into())),
    };
    if common.paper_scale {
        cfg = cfg.at_paper_scale();
    }
    if common.dump_filters {
        cfg.output.dump_filters = true;
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<(), HarnessError> {
    let common = &cli.common;
    if let Command::Compare { a, b } = &cli.command {
        let (l2, linf) = experiment::compare(a, b)?;
        println!("rel_l2 {l2:.6e} rel_linf {linf:.6e}");
        return Ok(());
    }
    let mut cfg = load_config(common)?;
    std::fs::create_dir_all(&common.out)?;
    match cli.command {
        Command::Run { k, t_final } => {
            if let Some(k) = k {
                cfg.initial.set_k(k);
            }
            if let Some(t) = t_final {
                cfg.time.t_final = t;
            }
            let outcome = experiment::run(&cfg, Some(&common.out))?;
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", outcome.summary(&cfg.run_id));
        }
        Command::SweepK { k } => {
            let ks = if k.is_empty() {
                (1..=20).map(f64::from).collect()
            } else {
                k
            };
            let rows = experiment::sweep_k(&cfg, &ks, common.jobs)?;
            let path = common.out.join(format!("{}_sweep_k.csv", cfg.run_id));
            output::write_sweep_csv(&path, &rows)?;
            for r in &rows {
                println!(
                    "K {:>5} rel_l2 {:.3e} rel_linf {:.3e}",
                    r.k, r.rel_err_l2, r.rel_err_linf
                );
            }
        }
        Command::SweepDelta { deltas, k } => {
            let deltas = if deltas.is_empty() {
                (1..=12).map(|e| 10f64.powi(-e)).collect()
            } else {
                deltas
            };
            let ks = if k.is_empty() { vec![cfg.initial.k()] } else { k };
            let rows = experiment::sweep_delta(&cfg, &deltas, &ks, common.jobs)?;
            let path = common.out.join(format!("{}_sweep_delta.csv", cfg.run_id));
            output::write_sweep_csv(&path, &rows)?;
            for r in &rows {
                match r.w {
                    Some(w) => println!("delta {:.0e} k {} w {w} rel_l2 {:.3e}", r.delta, r.k, r.rel_err_l2),
                    None => println!("delta {:.0e} k {} infeasible on this box", r.delta, r.k),
                }
            }
        }
        Command::Stability { t_final } => {
            let rows = experiment::stability(&cfg, t_final)?;
            let path = common.out.join(format!("{}_stability.csv", cfg.run_id));
            output::write_norms_csv(&path, &rows)?;
            let last = rows.last().map_or(0.0, |r| r.1);
            let first = rows.first().map_or(0.0, |r| r.1);
            println!(
                "{} filter times, norm {first:.6e} -> {last:.6e}, non-increasing",
                rows.len()
            );
        }
        Command::Compare { .. } => unreachable!(),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
