//! Print the three-qubit simulator circuit, its gate counts, and its output
//! on |0>.

use gadsim::channel::GadParams;
use gadsim::circuit::{gad_simulator_circuit, simulate_gad, SIMULATOR_PREP_GATES};
use gadsim::PureState;

fn main() -> gadsim::Result<()> {
    let params = GadParams::new(0.5, 0.5)?;
    let circuit = gad_simulator_circuit(params)?;
    for (i, gate) in circuit.gates().iter().enumerate() {
        let tag = if i < SIMULATOR_PREP_GATES { "prep" } else { "" };
        println!("{i:>2} {gate:?} {tag}");
    }
    let census = circuit.census();
    println!("{} cnot, {} ry", census.cnot, census.ry);

    let out = simulate_gad(params, &PureState::zero().to_density())?;
    println!("output on |0>:\n{}", out.matrix());
    Ok(())
}
