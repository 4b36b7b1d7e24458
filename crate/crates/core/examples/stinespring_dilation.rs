//! Build dilations of the channel and check that tracing out the environment
//! reproduces the Kraus action.

use gadsim::channel::{apply_channel, gad_kraus, GadParams};
use gadsim::dilation::{attenuator_model, canonical_dilation, check_subspace_property, reduce};
use gadsim::linalg::is_unitary;
use gadsim::state::random_pure_state;
use gadsim::PureState;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gadsim::Result<()> {
    let params = GadParams::new(0.6, 0.4)?;
    let kraus = gad_kraus(params);
    let canonical = canonical_dilation(&kraus)?;
    let attenuator = attenuator_model(params)?;
    println!(
        "canonical unitary is {}x{}, unitary: {}",
        canonical.joint_unitary().rows(),
        canonical.joint_unitary().cols(),
        is_unitary(canonical.joint_unitary(), 1e-12)?
    );

    let rho = PureState::plus_i().to_density();
    let direct = apply_channel(&kraus, &rho)?;
    println!("Kraus output:\n{}", direct.matrix());
    println!(
        "canonical dilation residual: {:.1e}",
        reduce(&canonical, &rho)?.max_abs_diff(&direct)?
    );
    println!(
        "attenuator model residual:   {:.1e}",
        reduce(&attenuator, &rho)?.max_abs_diff(&direct)?
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let inputs = (0..20)
        .map(|_| random_pure_state(&mut rng, 1))
        .collect::<gadsim::Result<Vec<_>>>()?;
    println!(
        "image avoids |011> and |101> for 20 random inputs: {}",
        check_subspace_property(&kraus, &inputs)
    );
    Ok(())
}
