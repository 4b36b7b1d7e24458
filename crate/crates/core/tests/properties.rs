use gadsim::channel::{apply_channel, gad_closed_form, gad_kraus, GadParams};
use gadsim::circuit::{simulate_channel, WIRE_Q};
use gadsim::experiments::sample_shots;
use gadsim::linalg::{partial_trace, ComplexMatrix};
use gadsim::qasm::{self, WireMapping};
use gadsim::state::{equilibrium_state, random_density};
use gadsim::{gad_simulator_circuit, Complex, DensityOperator, PureState};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(1.0), 0.0..=1.0]
}

fn density(seed: u64, qubits: usize) -> DensityOperator {
    random_density(&mut ChaCha8Rng::seed_from_u64(seed), qubits).unwrap()
}

/// Bloch-vector oracle for the channel: populations relax towards `p`,
/// coherences shrink by `√(1−γ)`.
fn bloch_oracle(p: f64, gamma: f64, rho: &DensityOperator) -> (f64, Complex) {
    let r00 = rho.entry(0, 0).re;
    (
        r00 + gamma * (p - r00),
        rho.entry(0, 1) * (1.0 - gamma).sqrt(),
    )
}

proptest! {
    #[test]
    fn closed_form_matches_kraus(p in unit(), gamma in unit(), seed in any::<u64>()) {
        let params = GadParams::new(p, gamma).unwrap();
        let rho = density(seed, 1);
        let kraus = apply_channel(&gad_kraus(params), &rho).unwrap();
        let closed = gad_closed_form(params, &rho).unwrap();
        prop_assert!(kraus.max_abs_diff(&closed).unwrap() < 1e-12);
        let (r00, r01) = bloch_oracle(p, gamma, &rho);
        prop_assert!((kraus.entry(0, 0).re - r00).abs() < 1e-12);
        prop_assert!((kraus.entry(0, 1) - r01).norm() < 1e-12);
    }

    #[test]
    fn semigroup_composition(p in unit(), g1 in unit(), g2 in unit(), seed in any::<u64>()) {
        let rho = density(seed, 1);
        let step = |g: f64, r: &DensityOperator| {
            apply_channel(&gad_kraus(GadParams::new(p, g).unwrap()), r).unwrap()
        };
        let twice = step(g2, &step(g1, &rho));
        let once = step(1.0 - (1.0 - g1) * (1.0 - g2), &rho);
        prop_assert!(twice.max_abs_diff(&once).unwrap() < 1e-12);
    }

    #[test]
    fn equilibrium_is_fixed(p in unit(), gamma in unit()) {
        let eq = equilibrium_state(p).unwrap();
        let out = apply_channel(&gad_kraus(GadParams::new(p, gamma).unwrap()), &eq).unwrap();
        prop_assert!(out.max_abs_diff(&eq).unwrap() < 1e-12);
    }

    #[test]
    fn distance_to_equilibrium_contracts(p in unit(), gamma in unit(), seed in any::<u64>()) {
        let rho = density(seed, 1);
        let eq = equilibrium_state(p).unwrap();
        let out = gad_closed_form(GadParams::new(p, gamma).unwrap(), &rho).unwrap();
        let before = rho.max_abs_diff(&eq).unwrap();
        let after = out.max_abs_diff(&eq).unwrap();
        prop_assert!(after <= before + 1e-12);
    }

    #[test]
    fn partial_trace_preserves_trace(seed in any::<u64>(), keep in 0usize..3) {
        let rho = density(seed, 3);
        let reduced = partial_trace(rho.matrix(), &[2, 2, 2], &[keep]).unwrap();
        prop_assert_eq!(reduced.rows(), 2);
        prop_assert!((reduced.trace().unwrap() - rho.matrix().trace().unwrap()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product(a in any::<u64>(), b in any::<u64>()) {
        let ra = density(a, 1);
        let rb = density(b, 2);
        let joint = ra.matrix().kron(rb.matrix());
        let left = partial_trace(&joint, &[2, 2, 2], &[0]).unwrap();
        let right = partial_trace(&joint, &[2, 2, 2], &[1, 2]).unwrap();
        prop_assert!(left.max_abs_diff(ra.matrix()).unwrap() < 1e-12);
        prop_assert!(right.max_abs_diff(rb.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn qasm_round_trip(p in unit(), gamma in unit(), seed in any::<u64>()) {
        let mapping = WireMapping::simulator_default();
        let c = gad_simulator_circuit(GadParams::new(p, gamma).unwrap()).unwrap();
        let text = qasm::emit(&c, &mapping, Some(&[WIRE_Q])).unwrap();
        let program = qasm::parse(&text).unwrap();
        prop_assert_eq!(program.to_text(), text);
        let restored = qasm::to_circuit(&program, &mapping).unwrap();
        prop_assert_eq!(restored.gates(), c.gates());
        let rho = density(seed, 1);
        let env = PureState::basis(2, 0).unwrap();
        let a = simulate_channel(&c, &rho, WIRE_Q, &env).unwrap();
        let b = simulate_channel(&restored, &rho, WIRE_Q, &env).unwrap();
        prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
    }

    #[test]
    fn kraus_completeness(p in unit(), gamma in unit()) {
        let ch = gad_kraus(GadParams::new(p, gamma).unwrap());
        let mut sum = ComplexMatrix::zeros(2, 2);
        for k in ch.operators() {
            sum = sum.add(&k.adjoint().matmul(k).unwrap()).unwrap();
        }
        prop_assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < 1e-14);
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    (v[n / 2 - 1] + v[n / 2]) / 2.0
}

#[test]
fn sampling_error_shrinks_with_shots() {
    let q = 0.75;
    let error = |shots: u64| {
        median(
            (0..50)
                .map(|seed| (sample_shots(q, shots, seed).unwrap() as f64 / shots as f64 - q).abs())
                .collect(),
        )
    };
    let coarse = error(100);
    let fine = error(1_000_000);
    assert!(
        fine < coarse,
        "median error {fine} at 1e6 shots vs {coarse} at 1e2"
    );
}

#[test]
fn sampling_is_reproducible_per_seed() {
    assert_eq!(
        sample_shots(0.3, 10_000, 5).unwrap(),
        sample_shots(0.3, 10_000, 5).unwrap()
    );
    assert_eq!(sample_shots(1.0, 123, 0).unwrap(), 123);
    assert_eq!(sample_shots(0.0, 123, 0).unwrap(), 0);
}
