use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qgwb::{load_batch, parse_param, run, run_batch, RunError, Scenario};

#[derive(Parser)]
#[command(name = "qgwb", version, about = "Quantum group workbench scenario runner")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Parent preset for an inline scenario.
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Structure-constant document for an inline scenario.
    #[arg(long, global = true)]
    document: Option<PathBuf>,
    /// Experiment id for an inline scenario.
    #[arg(long)]
    experiment: Option<String>,
    /// Scenario name, used as the report file stem.
    #[arg(long)]
    name: Option<String>,
    /// Experiment parameter `k=v`; `v` is JSON or plain text.
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Multiplies every default tolerance.
    #[arg(long, global = true)]
    tol_scale: Option<f64>,
    /// Seed of randomised test families.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Runs a scenario file holding one scenario or an array of them.
    Run { scenario: PathBuf },
    /// Lists built-in presets and documents in `QGWB_PRESET_DIR`.
    ListPresets,
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code.clamp(0, 255) as u8)
}

fn schema(e: RunError) -> ExitCode {
    eprintln!("{e}");
    exit(e.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Some(Command::ListPresets) => {
            print!("{}", qgwb::format_preset_table(&qgwb::preset_table()));
            exit(0)
        }
        Some(Command::Run { scenario }) => {
            let text = match std::fs::read_to_string(&scenario) {
                Ok(t) => t,
                Err(e) => return schema(RunError::Schema(format!("cannot read {}: {e}", scenario.display()))),
            };
            let mut batch = match load_batch(&text) {
                Ok(b) => b,
                Err(e) => return schema(e),
            };
            for sc in &mut batch {
                sc.tol_scale = cli.tol_scale.or(sc.tol_scale);
                sc.seed = cli.seed.or(sc.seed);
            }
            exit(run_batch(&batch, &cli.out))
        }
        None => {
            let Some(experiment) = cli.experiment else {
                return schema(RunError::Schema("give `run <scenario.json>`, `list-presets` or --experiment".into()));
            };
            let mut params = std::collections::BTreeMap::new();
            for kv in &cli.params {
                match parse_param(kv) {
                    Ok((k, v)) => {
                        params.insert(k, v);
                    }
                    Err(e) => return schema(e),
                }
            }
            let sc = Scenario {
                name: cli.name.unwrap_or_else(|| experiment.clone()),
                preset: cli.preset,
                document: cli.document,
                experiment,
                params,
                out: None,
                tol_scale: cli.tol_scale,
                seed: cli.seed,
            };
            exit(run(&sc, &cli.out))
        }
    }
}
