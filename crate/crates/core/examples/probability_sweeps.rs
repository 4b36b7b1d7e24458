//! Parameter sweeps with exact, closed-form and shot-sampled probabilities,
//! written as CSV to stdout.

use gadsim::experiments::{run_sweep, unit_grid, write_csv, SweepSpec, SweptParam};
use gadsim::PureState;

fn main() -> gadsim::Result<()> {
    let sweeps = [
        (
            "gamma sweep, p = 1/2, input |0>",
            SweptParam::Gamma,
            0.5,
            PureState::zero(),
        ),
        (
            "p sweep, gamma = 0.8, input |0>",
            SweptParam::P,
            0.8,
            PureState::zero(),
        ),
        (
            "gamma sweep, p = 3/4, input |+>",
            SweptParam::Gamma,
            0.75,
            PureState::plus(),
        ),
    ];
    for (title, swept, fixed, input) in sweeps {
        let spec = SweepSpec {
            swept,
            grid: unit_grid(11),
            fixed,
            input_state: input,
            reference_state: None,
            shots: 10_000,
            seed: 2024,
        };
        println!("## {title}");
        write_csv(&run_sweep(&spec)?, std::io::stdout().lock()).expect("stdout");
        println!();
    }
    Ok(())
}
