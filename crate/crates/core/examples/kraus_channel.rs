//! Apply thermal noise to a few input states through the Kraus operators and
//! the closed form, and print the output density matrices.

use gadsim::channel::{apply_channel, gad_closed_form, gad_kraus, GadParams};
use gadsim::PureState;

fn main() -> gadsim::Result<()> {
    let params = GadParams::new(0.75, 0.36)?;
    let channel = gad_kraus(params);
    println!("completeness residual: {:.2e}", channel.report().residual);
    for (k, op) in channel.operators().iter().enumerate() {
        println!("L{}:\n{op}", k + 1);
    }

    for (name, state) in [
        ("|0>", PureState::zero()),
        ("|1>", PureState::one()),
        ("|+>", PureState::plus()),
    ] {
        let rho = state.to_density();
        let out = apply_channel(&channel, &rho)?;
        let closed = gad_closed_form(params, &rho)?;
        println!(
            "{name} ->\n{}  (differs from closed form by {:.1e})",
            out.matrix(),
            out.max_abs_diff(&closed)?
        );
    }
    Ok(())
}
