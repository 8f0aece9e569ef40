use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectralab::circuits::{gen_random_universal, gen_sparse_iqp, CouplingRule, PhaseRule, RandomCircuitSpec, SparseIqpSpec};
use spectralab_cli::config::{AttackParams, Fig1Params, Fig23Params, Sampler, XebParams};
use spectralab_cli::output::default_out;
use spectralab_cli::{run_experiment, CliError, CliResult, ExperimentConfig, Params};

#[derive(Parser)]
#[command(name = "spectralab", version, about = "Noisy-circuit Fourier experiments")]
struct Cli {
    /// JSON experiment document; command-line flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (or file, for the generators).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Master seed; replaces the config's seed list.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy of sparse IQP outputs across γ.
    Fig1(Fig1Args),
    /// Trajectory-averaged spectra across an ε sweep.
    #[command(name = "fig2-fig3")]
    Fig2Fig3(Fig23Args),
    /// Low-weight reconstruction of a noisy IQP output.
    Attack(AttackArgs),
    /// Cross-entropy fidelity of a noisy random circuit.
    Xeb(XebArgs),
    /// Write one sparse IQP diagonal as JSON.
    GenIqp(GenIqpArgs),
    /// Write one random universal circuit as JSON.
    GenCircuit(GenCircuitArgs),
}

#[derive(Args)]
struct Fig1Args {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    gammas: Option<Vec<f64>>,
    #[arg(long)]
    instances: Option<usize>,
}

#[derive(Args)]
struct Fig23Args {
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    /// Two-qubit error rates.
    #[arg(long, value_delimiter = ',')]
    eps: Option<Vec<f64>>,
    #[arg(long)]
    trajectories: Option<usize>,
    #[arg(long)]
    instances: Option<usize>,
    /// Start from the 5×4 grid instead of 4×3.
    #[arg(long)]
    full_scale: bool,
}

#[derive(Args)]
struct AttackArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    fail_prob: Option<f64>,
    #[arg(long)]
    samples: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SamplerArg {
    Noisy,
    Ideal,
    Uniform,
}

#[derive(Args)]
struct XebArgs {
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    eps1: Option<f64>,
    #[arg(long)]
    eps2: Option<f64>,
    #[arg(long)]
    trajectories: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum)]
    sampler: Option<SamplerArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AngleRule {
    None,
    Eighths,
    Continuous,
}

#[derive(Args)]
struct GenIqpArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    gamma: f64,
    #[arg(long, value_enum, default_value = "eighths")]
    phases: AngleRule,
    /// `eighths` is not accepted here; `none` means CZ.
    #[arg(long, value_enum, default_value = "none")]
    couplings: AngleRule,
}

#[derive(Args)]
struct GenCircuitArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long)]
    depth: usize,
}

macro_rules! set {
    ($field:expr, $value:expr) => {
        if let Some(v) = $value {
            $field = v;
        }
    };
}

fn base_config(cli: &Cli, name: &str, default: Params) -> CliResult<ExperimentConfig> {
    let cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::new(default),
    };
    if cfg.params.name() != name {
        return Err(CliError::Config(format!(
            "config describes `{}` but the command is `{name}`",
            cfg.params.name()
        )));
    }
    Ok(cfg)
}

fn build_config(cli: &Cli) -> CliResult<ExperimentConfig> {
    let mut cfg = match &cli.command {
        Command::Fig1(a) => {
            let mut cfg = base_config(cli, "fig1", Params::Fig1(Fig1Params::default()))?;
            if let Params::Fig1(p) = &mut cfg.params {
                set!(p.n, a.n);
                set!(p.gammas, a.gammas.clone());
                set!(p.instances, a.instances);
            }
            cfg
        }
        Command::Fig2Fig3(a) => {
            let default = if a.full_scale {
                Fig23Params::full_scale()
            } else {
                Fig23Params::default()
            };
            let mut cfg = base_config(cli, "fig2_fig3", Params::Fig2Fig3(default))?;
            if let Params::Fig2Fig3(p) = &mut cfg.params {
                if a.full_scale {
                    p.rows = 5;
                    p.cols = 4;
                }
                set!(p.rows, a.rows);
                set!(p.cols, a.cols);
                set!(p.depth, a.depth);
                set!(p.eps, a.eps.clone());
                set!(p.trajectories, a.trajectories);
                set!(p.instances, a.instances);
            }
            cfg
        }
        Command::Attack(a) => {
            let mut cfg = base_config(cli, "attack", Params::Attack(AttackParams::default()))?;
            if let Params::Attack(p) = &mut cfg.params {
                set!(p.n, a.n);
                set!(p.gamma, a.gamma);
                set!(p.eps, a.eps);
                if a.l.is_some() {
                    p.l = a.l;
                }
                set!(p.eta, a.eta);
                set!(p.fail_prob, a.fail_prob);
                if a.samples.is_some() {
                    p.samples = a.samples;
                }
            }
            cfg
        }
        Command::Xeb(a) => {
            let mut cfg = base_config(cli, "xeb", Params::Xeb(XebParams::default()))?;
            if let Params::Xeb(p) = &mut cfg.params {
                set!(p.rows, a.rows);
                set!(p.cols, a.cols);
                set!(p.depth, a.depth);
                set!(p.eps1, a.eps1);
                set!(p.eps2, a.eps2);
                set!(p.trajectories, a.trajectories);
                set!(p.samples, a.samples);
                set!(
                    p.sampler,
                    a.sampler.map(|s| match s {
                        SamplerArg::Noisy => Sampler::Noisy,
                        SamplerArg::Ideal => Sampler::Ideal,
                        SamplerArg::Uniform => Sampler::Uniform,
                    })
                );
            }
            cfg
        }
        Command::GenIqp(_) | Command::GenCircuit(_) => unreachable!("generators take no config"),
    };
    if let Some(s) = cli.seed {
        cfg.seeds = vec![s];
    }
    if cli.threads.is_some() {
        cfg.threads = cli.threads;
    }
    if cli.out.is_some() {
        cfg.out = cli.out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn generate(cli: &Cli) -> CliResult<()> {
    let seed = cli.seed.unwrap_or(0);
    let json = match &cli.command {
        Command::GenIqp(a) => {
            let spec = SparseIqpSpec {
                n: a.n,
                gamma: a.gamma,
                seed,
                phase_rule: match a.phases {
                    AngleRule::None => PhaseRule::None,
                    AngleRule::Eighths => PhaseRule::UniformEighths,
                    AngleRule::Continuous => PhaseRule::UniformContinuous,
                },
                coupling_rule: match a.couplings {
                    AngleRule::None => CouplingRule::Cz,
                    AngleRule::Continuous => CouplingRule::UniformContinuous,
                    AngleRule::Eighths => {
                        return Err(CliError::Config("couplings are `none` (CZ) or `continuous`".into()))
                    }
                },
            };
            gen_sparse_iqp(&spec)?.to_json()?
        }
        Command::GenCircuit(a) => {
            gen_random_universal(&RandomCircuitSpec::new(a.rows, a.cols, a.depth, seed))?.to_json()?
        }
        _ => unreachable!(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, json + "\n")?,
        None => {
            // A closed pipe (e.g. `| head`) is not an error.
            if let Err(e) = writeln!(std::io::stdout().lock(), "{json}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    if matches!(cli.command, Command::GenIqp(_) | Command::GenCircuit(_)) {
        return generate(cli);
    }
    let cfg = build_config(cli)?;
    let out = default_out(&cfg);
    let manifest = run_experiment(&cfg, &out)?;
    for w in &manifest.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "{} finished in {:.1} s; outputs in {}",
        manifest.experiment,
        manifest.elapsed_seconds,
        out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = serde_json::to_string(&e.report()).unwrap_or_else(|_| format!("{{\"error\":\"{}\"}}", e.kind()));
            eprintln!("{body}");
            ExitCode::from(2)
        }
    }
}
