//! Export the simulator circuit as OpenQASM 2.0, parse it back, and compare
//! the simulated outputs.

use gadsim::channel::GadParams;
use gadsim::circuit::{gad_simulator_circuit, simulate_channel, WIRE_Q};
use gadsim::qasm::{self, WireMapping};
use gadsim::PureState;

fn main() -> gadsim::Result<()> {
    let mapping = WireMapping::simulator_default();
    let circuit = gad_simulator_circuit(GadParams::new(0.75, 0.3)?)?;
    let text = qasm::emit(&circuit, &mapping, Some(&[WIRE_Q]))?;
    print!("{text}");

    let restored = qasm::to_circuit(&qasm::parse(&text)?, &mapping)?;
    let rho = PureState::plus().to_density();
    let env = PureState::basis(2, 0)?;
    let a = simulate_channel(&circuit, &rho, WIRE_Q, &env)?;
    let b = simulate_channel(&restored, &rho, WIRE_Q, &env)?;
    println!("round-trip residual: {:.1e}", a.max_abs_diff(&b)?);

    let composer =
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nry(pi/2) q[0];\ncx q[0],q[1];\n";
    let bell = qasm::to_circuit(&qasm::parse(composer)?, &WireMapping::identity(2))?;
    println!("parsed symbolic-angle program: {:?}", bell.gates());

    match qasm::parse("OPENQASM 2.0;\nqreg q[2];\ncz q[0],q[1];\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
