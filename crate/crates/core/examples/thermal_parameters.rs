//! Derive (p, gamma) from a bath temperature and an interaction time.

use gadsim::channel::{gamma_from_time, p_from_temperature, RelaxationSpec, ThermalBathSpec};

fn main() -> gadsim::Result<()> {
    println!("{:>8} {:>10}", "kT/gap", "p");
    for kt in [0.05, 0.25, 0.5, 1.0, 2.0, 10.0] {
        let p = p_from_temperature(&ThermalBathSpec::new(1.0, kt))?;
        println!("{kt:>8} {p:>10.6}");
    }

    // A 5 GHz transition at 50 mK.
    let gap = 6.626_070_15e-34 * 5e9;
    let p = p_from_temperature(&ThermalBathSpec::si(gap, 0.05))?;
    println!("5 GHz qubit at 50 mK: p = {p:.6}");

    println!("\n{:>8} {:>10}", "t/tau1", "gamma");
    for t in [0.0, 0.1, 0.5, 1.0, 3.0] {
        let gamma = gamma_from_time(&RelaxationSpec {
            interaction_time: t,
            tau1: 1.0,
        })?;
        println!("{t:>8} {gamma:>10.6}");
    }
    Ok(())
}
