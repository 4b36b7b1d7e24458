use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gadsim::channel::{apply_channel, gad_closed_form, gad_kraus, GadParams};
use gadsim::circuit::{gad_simulator_circuit, simulate_gad, WIRE_Q};
use gadsim::dilation::{attenuator_model, canonical_dilation, reduce};
use gadsim::experiments::{
    self, parse_grid, parse_input_state, run_sweep, SweepSpec, SweptParam, RENORMALIZE_WARN_TOL,
    VERIFY_TOL,
};
use gadsim::qasm::{self, WireMapping};
use gadsim::{DensityOperator, Error, PureState};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

/// Relative output paths are resolved against this directory when set.
const OUT_DIR_ENV: &str = "GADSIM_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "gadsim",
    version,
    about = "Qubit thermal noise (generalized amplitude damping) simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the channel to one input state and print the output density matrix.
    Apply {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        gamma: f64,
        /// 0, 1, +, -, +i, -i, or amplitudes `re:im,re:im`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        input: String,
        #[arg(long, value_enum, default_value_t = Via::Circuit)]
        via: Via,
    },
    /// Sweep p or gamma and write measured probabilities as CSV.
    Sweep {
        #[arg(long)]
        vary: String,
        /// Value of the other parameter, as `p=0.5` or `0.5`.
        #[arg(long)]
        fixed: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        input: String,
        /// Measurement reference state; defaults to the input state.
        #[arg(long, allow_hyphen_values = true)]
        reference: Option<String>,
        /// `start:stop:step`, endpoints inclusive.
        #[arg(long, default_value = "0:1:0.1")]
        grid: String,
        #[arg(long, default_value_t = 0)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; CSV goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the simulator circuit as OpenQASM 2.0.
    Qasm {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        gamma: f64,
        /// Append a measurement of the principal qubit.
        #[arg(long)]
        measure: bool,
        /// Physical qubit for wires Q,E,A, e.g. `2,0,1`.
        #[arg(long)]
        mapping: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that Kraus, closed-form, canonical-dilation and circuit forms agree.
    Verify {
        /// Grid points per parameter on [0, 1].
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Kraus,
    ClosedForm,
    Dilation,
    Attenuator,
    Circuit,
}

enum Failure {
    Usage(String),
    Verify(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read_state(s: &str) -> Result<PureState, Failure> {
    let (state, norm) = parse_input_state(s)?;
    if (norm - 1.0).abs() > RENORMALIZE_WARN_TOL {
        eprintln!("warning: state `{s}` had norm {norm}; normalized");
    }
    Ok(state)
}

fn resolve_out(path: PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path,
    }
}

fn write_output(out: Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let path = resolve_out(path);
            std::fs::write(&path, text)
                .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_fixed(vary: SweptParam, fixed: &str) -> Result<f64, Failure> {
    let (name, value) = match fixed.split_once('=') {
        Some((n, v)) => (Some(n.trim().parse::<SweptParam>()?), v),
        None => (None, fixed),
    };
    if name == Some(vary) {
        return Err(Failure::Usage(format!(
            "--fixed names `{vary}`, which is the swept parameter"
        )));
    }
    value
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("cannot parse fixed value `{value}`")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Apply {
            p,
            gamma,
            input,
            via,
        } => {
            let params = GadParams::new(p, gamma)?;
            let rho = read_state(&input)?.to_density();
            let out: DensityOperator = match via {
                Via::Kraus => apply_channel(&gad_kraus(params), &rho)?,
                Via::ClosedForm => gad_closed_form(params, &rho)?,
                Via::Dilation => reduce(&canonical_dilation(&gad_kraus(params))?, &rho)?,
                Via::Attenuator => reduce(&attenuator_model(params)?, &rho)?,
                Via::Circuit => simulate_gad(params, &rho)?,
            };
            print!("{}", out.matrix());
        }
        Command::Sweep {
            vary,
            fixed,
            input,
            reference,
            grid,
            shots,
            seed,
            out,
        } => {
            let swept: SweptParam = vary.parse()?;
            let spec = SweepSpec {
                swept,
                grid: parse_grid(&grid)?,
                fixed: parse_fixed(swept, &fixed)?,
                input_state: read_state(&input)?,
                reference_state: reference.as_deref().map(read_state).transpose()?,
                shots,
                seed,
            };
            let result = run_sweep(&spec)?;
            match out {
                Some(path) => experiments::export_csv(&result, &resolve_out(path))?,
                None => experiments::write_csv(&result, std::io::stdout().lock())
                    .map_err(|e| Failure::Io(e.to_string()))?,
            }
        }
        Command::Qasm {
            p,
            gamma,
            measure,
            mapping,
            out,
        } => {
            let mapping = match mapping {
                Some(m) => {
                    let wires = m
                        .split(',')
                        .map(|t| t.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| Failure::Usage(format!("cannot parse mapping `{m}`")))?;
                    WireMapping::new(wires)?
                }
                None => WireMapping::simulator_default(),
            };
            let circuit = gad_simulator_circuit(GadParams::new(p, gamma)?)?;
            let measured = [WIRE_Q];
            let text = qasm::emit(&circuit, &mapping, measure.then_some(&measured[..]))?;
            write_output(out, &text)?;
        }
        Command::Verify { points, seed } => {
            let report = experiments::verify_equivalence(points, seed)?;
            for (pair, r) in &report.pair_residuals {
                println!("{pair:<32} {r:.3e}");
            }
            println!(
                "max residual {:.3e} over {} parameter points x {} inputs",
                report.max_residual(),
                report.points,
                report.inputs
            );
            if !report.passes(VERIFY_TOL) {
                return Err(Failure::Verify(format!(
                    "residual {:.3e} exceeds {VERIFY_TOL:e}",
                    report.max_residual()
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
