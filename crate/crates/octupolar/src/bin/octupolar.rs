use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use octupolar::commands::{self, AngleUnits, GridAxis, Input, PlotKind, SweepSpec};
use octupolar::config::Config;

#[derive(Parser)]
#[command(
    name = "octupolar",
    version,
    about = "Critical points and phases of octupolar tensors"
)]
struct Cli {
    /// TOML configuration file; falls back to $OCTUPOLAR_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Read and write angles in degrees.
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Cylinder coordinates of the oriented tensor.
    #[arg(long, num_args = 3, value_names = ["K", "RHO", "CHI"], allow_negative_numbers = true)]
    cylinder: Option<Vec<f64>>,
    /// Components alpha0 alpha1 alpha2 alpha3 beta1 beta2 beta3.
    #[arg(long, num_args = 7, value_name = "X", allow_negative_numbers = true)]
    raw: Option<Vec<f64>>,
    /// File holding the seven components.
    #[arg(long)]
    tensor: Option<PathBuf>,
}

impl InputArgs {
    fn input(&self) -> Input {
        if let Some(c) = &self.cylinder {
            Input::Cylinder {
                k: c[0],
                rho: c[1],
                chi: c[2],
            }
        } else if let Some(r) = &self.raw {
            let mut a = [0.0; 7];
            a.copy_from_slice(r);
            Input::Raw(a)
        } else {
            Input::TensorFile(self.tensor.clone().expect("clap enforces one input"))
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the full spectrum.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the symmetry group and phase on one line.
    Phase {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Classify every cell of a (K, rho, chi) grid.
    Sweep {
        /// lo:hi:n
        #[arg(long, allow_hyphen_values = true)]
        k: GridAxis,
        #[arg(long, allow_hyphen_values = true)]
        rho: GridAxis,
        #[arg(long, allow_hyphen_values = true)]
        chi: GridAxis,
        #[arg(long, short)]
        out: PathBuf,
        /// Defaults to OUT.ckpt.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Trace the separatrix surface.
    Separatrix {
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<GridAxis>,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<GridAxis>,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Export plot data.
    Plotdata {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "contour")]
        kind: PlotKind,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Print the tetrahedral group data.
    Group {
        #[arg(long)]
        verify: bool,
    },
    /// Spectrum from the brute-force grid solver.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> octupolar::Result<(String, bool)> {
    let cfg = Config::resolve(cli.config.as_deref())?;
    let units = AngleUnits {
        degrees: cli.degrees,
    };
    let text = match cli.command {
        Command::Analyze { input, json } => {
            commands::analyze(&input.input(), &cfg, units, json.as_deref())?
        }
        Command::Phase { input } => commands::phase(&input.input(), &cfg, units)?,
        Command::Sweep {
            k,
            rho,
            chi,
            out,
            checkpoint,
        } => commands::sweep(
            &SweepSpec { k, rho, chi },
            &cfg,
            units,
            &out,
            checkpoint.as_deref(),
        )?,
        Command::Separatrix { chi, rho, out } => commands::separatrix(chi, rho, &cfg, units, &out)?,
        Command::Plotdata {
            input,
            kind,
            resolution,
            out,
        } => commands::plotdata(&input.input(), kind, resolution, &cfg, units, &out)?,
        Command::Group { verify } => return Ok(commands::group(verify)),
        Command::Oracle { input, json } => {
            commands::oracle(&input.input(), &cfg, units, json.as_deref())?
        }
    };
    Ok((text, true))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("octupolar: {e}");
            ExitCode::FAILURE
        }
    }
}
