//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` gives a summary.

use std::time::{Duration, Instant};

use gadsim::channel::{p_from_temperature, ThermalBathSpec};
use gadsim::circuit::{
    circuit_unitary, pauli_x, ry_matrix, simulate_channel, u_thermal_circuit, xi_from_gamma,
    GateCensus, SIMULATOR_PREP_GATES, WIRE_E, WIRE_Q,
};
use gadsim::dilation::{kraus_isometry, subspace_leakage, u_tilde};
use gadsim::experiments::{run_sweep, unit_grid, verify_equivalence, SweepSpec, SweptParam};
use gadsim::linalg::{hermitian_eigenvalues, ComplexMatrix};
use gadsim::qasm::{self, WireMapping};
use gadsim::state::{equilibrium_state, random_density, random_pure_state};
use gadsim::{
    apply_channel, canonical_dilation, gad_closed_form, gad_kraus, gad_simulator_circuit,
    simulate_gad, Complex, DensityOperator, GadParams, PureState,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {n:>2} {name:<28} {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn params(p: f64, gamma: f64) -> GadParams {
    GadParams::new(p, gamma).unwrap()
}

fn sweep(
    swept: SweptParam,
    fixed: f64,
    input: PureState,
    shots: u64,
    seed: u64,
) -> Vec<(f64, f64, f64, Option<f64>)> {
    let spec = SweepSpec {
        swept,
        grid: unit_grid(11),
        fixed,
        input_state: input,
        reference_state: None,
        shots,
        seed,
    };
    run_sweep(&spec)
        .unwrap()
        .rows
        .into_iter()
        .map(|r| (r.param, r.exact, r.theory, r.sampled_freq))
        .collect()
}

/// Worst deviation of the swept probabilities (exact and theory columns)
/// from `oracle(param)`.
fn sweep_error(rows: &[(f64, f64, f64, Option<f64>)], oracle: impl Fn(f64) -> f64) -> f64 {
    rows.iter()
        .map(|&(x, exact, theory, _)| (exact - oracle(x)).abs().max((theory - oracle(x)).abs()))
        .fold(0.0, f64::max)
}

#[test]
fn criterion_01_four_way_equivalence() {
    let start = Instant::now();
    let report = verify_equivalence(11, 7).unwrap();
    let elapsed = start.elapsed();
    let ok = report.points == 121
        && report.inputs == 6
        && report.max_residual() < 1e-12
        && elapsed < Duration::from_secs(5);
    verdict(
        1,
        "four-way equivalence",
        ok,
        &format!(
            "max residual {:.2e} over {} points x {} inputs in {:.2?}",
            report.max_residual(),
            report.points,
            report.inputs,
            elapsed
        ),
    );
}

#[test]
fn criterion_02_gamma_sweep_ground_state() {
    let rows = sweep(SweptParam::Gamma, 0.5, PureState::zero(), 0, 0);
    let err = sweep_error(&rows, |g| 1.0 - g / 2.0);
    verdict(
        2,
        "gamma sweep, p=1/2, |0>",
        rows.len() == 11 && err < 1e-12,
        &format!("max error {err:.2e}"),
    );
}

#[test]
fn criterion_03_p_sweep_ground_state() {
    let rows = sweep(SweptParam::P, 0.8, PureState::zero(), 0, 0);
    let err = sweep_error(&rows, |p| 0.8 * p + 0.2);
    verdict(
        3,
        "p sweep, gamma=0.8, |0>",
        rows.len() == 11 && err < 1e-12,
        &format!("max error {err:.2e}"),
    );
}

#[test]
fn criterion_04_gamma_sweep_plus_state() {
    let rows = sweep(SweptParam::Gamma, 0.75, PureState::plus(), 0, 0);
    let err = sweep_error(&rows, |g| (1.0 + (1.0 - g).sqrt()) / 2.0);
    verdict(
        4,
        "gamma sweep, p=3/4, |+>",
        rows.len() == 11 && err < 1e-12,
        &format!("max error {err:.2e}"),
    );
}

#[test]
fn criterion_05_shot_statistics() {
    let shots = 10_000u64;
    let mut trials = 0;
    let mut inside = 0;
    for seed in 0..20 {
        for (_, exact, _, freq) in sweep(SweptParam::Gamma, 0.5, PureState::zero(), shots, seed) {
            let sigma = (exact * (1.0 - exact) / shots as f64).sqrt();
            trials += 1;
            if (freq.unwrap() - exact).abs() <= 3.0 * sigma {
                inside += 1;
            }
        }
    }
    let fraction = inside as f64 / trials as f64;
    verdict(
        5,
        "shot statistics within 3 sigma",
        trials == 220 && fraction >= 0.95,
        &format!("{inside}/{trials} = {:.3}", fraction),
    );
}

#[test]
fn criterion_06a_census_after_prep() {
    let c = gad_simulator_circuit(params(0.5, 0.5)).unwrap();
    let after = GateCensus::of(&c.gates()[SIMULATOR_PREP_GATES..]);
    let ok = after.cnot == 5 && after.ry == 2 && after.x == 0 && after.controlled_u == 0;
    verdict(
        6,
        "census after prep 5 cx + 2 ry",
        ok,
        &format!("{} cx + {} ry after prep", after.cnot, after.ry),
    );
}

/// Literal clause: 6 CNOT-class and 3 RY-class gates including preparation,
/// counted both on the circuit and on its emitted QASM.
#[test]
fn criterion_06b_census_including_prep() {
    let c = gad_simulator_circuit(params(0.5, 0.5)).unwrap();
    let total = c.census();
    let text = qasm::emit(&c, &WireMapping::simulator_default(), None).unwrap();
    let cx_lines = text.lines().filter(|l| l.starts_with("cx ")).count();
    let ry_lines = text.lines().filter(|l| l.starts_with("ry(")).count();
    let ok = total.cnot == 6 && total.ry == 3 && cx_lines == 6 && ry_lines == 3;
    verdict(
        6,
        "census incl. prep 6 cx + 3 ry",
        ok,
        &format!(
            "circuit has {} cx + {} ry, QASM has {cx_lines} cx + {ry_lines} ry",
            total.cnot, total.ry
        ),
    );
}

#[test]
fn criterion_07_decomposition_identities() {
    let x = pauli_x();
    let mut worst = 0.0f64;
    for gamma in unit_grid(11) {
        let xi = xi_from_gamma(gamma).unwrap();
        let s = gamma.sqrt();
        let c = (1.0 - gamma).sqrt();
        let tilde = ComplexMatrix::from_real(2, 2, &[c, s, -s, c]).unwrap();
        let via_x = ry_matrix(xi)
            .matmul(&x)
            .unwrap()
            .matmul(&ry_matrix(-xi))
            .unwrap()
            .matmul(&x)
            .unwrap();
        #[rustfmt::skip]
        let uth = ComplexMatrix::from_real(4, 4, &[
            1.0, 0.0, 0.0, 0.0,
            0.0, c,   s,   0.0,
            0.0, -s,  c,   0.0,
            0.0, 0.0, 0.0, 1.0,
        ])
        .unwrap();
        let circuit = circuit_unitary(&u_thermal_circuit(gamma, WIRE_Q, WIRE_E).unwrap());
        worst = worst
            .max(via_x.max_abs_diff(&tilde).unwrap())
            .max(ry_matrix(2.0 * xi).max_abs_diff(&tilde).unwrap())
            .max(u_tilde(gamma).unwrap().max_abs_diff(&tilde).unwrap())
            .max(circuit.max_abs_diff(&uth).unwrap());
    }
    verdict(
        7,
        "decomposition identities",
        worst < 1e-12,
        &format!("max residual {worst:.2e}"),
    );
}

#[test]
fn criterion_08_subspace_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let inputs: Vec<PureState> = (0..100)
        .map(|_| random_pure_state(&mut rng, 1).unwrap())
        .collect();
    let mut worst = 0.0f64;
    let mut checked = 0;
    for &p in &grid {
        for &gamma in &grid {
            let kraus = gad_kraus(params(p, gamma));
            let dilation = canonical_dilation(&kraus).unwrap();
            let env = PureState::basis(2, 0).unwrap();
            for q in &inputs {
                // Σ_k Λ_k|q⟩ ⊗ |k⟩ assembled by hand.
                let mut image = [Complex::new(0.0, 0.0); 8];
                for (k, op) in kraus.operators().iter().enumerate() {
                    let out = op.apply(q.vector()).unwrap();
                    for i in 0..2 {
                        image[i * 4 + k] = out[i];
                    }
                }
                let unitary_image = dilation
                    .joint_unitary()
                    .apply(q.tensor(&env).unwrap().vector())
                    .unwrap();
                let isometry_image = kraus_isometry(&kraus).apply(q.vector()).unwrap();
                for idx in [0b011, 0b101] {
                    worst = worst
                        .max(image[idx].norm())
                        .max(unitary_image[idx].norm())
                        .max(isometry_image[idx].norm());
                }
                worst = worst.max(subspace_leakage(&kraus, q).unwrap());
                checked += 1;
            }
        }
    }
    verdict(
        8,
        "subspace property",
        checked == 2500 && worst < 1e-12,
        &format!("max amplitude on |011>,|101> {worst:.2e} over {checked} cases"),
    );
}

#[test]
fn criterion_09_cptp() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut inputs: Vec<DensityOperator> = [
        PureState::zero(),
        PureState::one(),
        PureState::plus(),
        PureState::minus(),
        PureState::plus_i(),
    ]
    .iter()
    .map(PureState::to_density)
    .collect();
    inputs.push(random_density(&mut rng, 1).unwrap());
    let (mut completeness, mut trace, mut herm, mut min_eig) =
        (0.0f64, 0.0f64, 0.0f64, f64::INFINITY);
    for p in unit_grid(11) {
        for gamma in unit_grid(11) {
            let kraus = gad_kraus(params(p, gamma));
            let mut sum = ComplexMatrix::zeros(2, 2);
            for op in kraus.operators() {
                sum = sum.add(&op.adjoint().matmul(op).unwrap()).unwrap();
            }
            completeness = completeness.max(sum.max_abs_diff(&ComplexMatrix::identity(2)).unwrap());
            for rho in &inputs {
                let out = apply_channel(&kraus, rho).unwrap();
                let m = out.matrix();
                trace = trace.max((m.trace().unwrap() - 1.0).norm());
                herm = herm.max(m.max_abs_diff(&m.adjoint()).unwrap());
                let eigs = hermitian_eigenvalues(&m.hermitian_part().unwrap()).unwrap();
                min_eig = min_eig.min(eigs[0]);
            }
        }
    }
    let ok = completeness < 1e-14 && trace < 1e-12 && herm < 1e-12 && min_eig >= -1e-9;
    verdict(
        9,
        "CPTP suite",
        ok,
        &format!(
            "completeness {completeness:.2e}, trace {trace:.2e}, hermiticity {herm:.2e}, min eigenvalue {min_eig:.2e}"
        ),
    );
}

#[test]
fn criterion_10_fixed_point_and_contraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut fixed = 0.0f64;
    let mut contraction = 0.0f64;
    for p in unit_grid(11) {
        let eq = equilibrium_state(p).unwrap();
        for gamma in unit_grid(11) {
            let par = params(p, gamma);
            fixed = fixed
                .max(
                    apply_channel(&gad_kraus(par), &eq)
                        .unwrap()
                        .max_abs_diff(&eq)
                        .unwrap(),
                )
                .max(simulate_gad(par, &eq).unwrap().max_abs_diff(&eq).unwrap());
            let rho = random_density(&mut rng, 1).unwrap();
            let out = apply_channel(&gad_kraus(par), &rho).unwrap();
            let expected = rho.entry(0, 1) * (1.0 - gamma).sqrt();
            contraction = contraction.max((out.entry(0, 1) - expected).norm());
        }
    }
    verdict(
        10,
        "fixed point and contraction",
        fixed < 1e-12 && contraction < 1e-12,
        &format!("fixed point {fixed:.2e}, coherence scaling {contraction:.2e}"),
    );
}

#[test]
fn criterion_11_boltzmann_map() {
    let at_ln3 = p_from_temperature(&ThermalBathSpec::new(3f64.ln(), 1.0)).unwrap();
    let temps: Vec<f64> = (1..=50).map(|i| 0.1 * i as f64).collect();
    let ps: Vec<f64> = temps
        .iter()
        .map(|&t| p_from_temperature(&ThermalBathSpec::new(1.0, t)).unwrap())
        .collect();
    let monotone = ps.windows(2).all(|w| w[1] < w[0]);
    let cold = p_from_temperature(&ThermalBathSpec::new(1.0, 1e-3)).unwrap();
    let hot = p_from_temperature(&ThermalBathSpec::new(1.0, 1e13)).unwrap();
    let ok = (at_ln3 - 0.75).abs() < 1e-12
        && monotone
        && (cold - 1.0).abs() < 1e-12
        && (hot - 0.5).abs() < 1e-12;
    verdict(
        11,
        "Boltzmann map",
        ok,
        &format!(
            "p(ln 3) = {at_ln3}, monotone over 50 temperatures: {monotone}, cold {cold}, hot {hot}"
        ),
    );
}

const GOLDEN: [(f64, f64, &str); 3] = [
    (
        0.5,
        0.5,
        include_str!("../fixtures/qasm/gad_p0.5_g0.5.qasm"),
    ),
    (1.0, 0.3, include_str!("../fixtures/qasm/gad_p1_g0.3.qasm")),
    (
        0.75,
        0.8,
        include_str!("../fixtures/qasm/gad_p0.75_g0.8.qasm"),
    ),
];

#[test]
fn criterion_12_qasm_round_trip() {
    let mapping = WireMapping::simulator_default();
    let env = PureState::basis(2, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let inputs: Vec<DensityOperator> = (0..4)
        .map(|_| random_density(&mut rng, 1).unwrap())
        .chain([PureState::plus_i().to_density()])
        .collect();
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for p in [0.0, 0.5, 1.0] {
        for gamma in [0.0, 0.3, 1.0] {
            let original = gad_simulator_circuit(params(p, gamma)).unwrap();
            let text = qasm::emit(&original, &mapping, None).unwrap();
            let restored = qasm::to_circuit(&qasm::parse(&text).unwrap(), &mapping).unwrap();
            for rho in &inputs {
                let a = simulate_channel(&original, rho, WIRE_Q, &env).unwrap();
                let b = simulate_channel(&restored, rho, WIRE_Q, &env).unwrap();
                worst = worst.max(a.max_abs_diff(&b).unwrap());
            }
            pairs += 1;
        }
    }
    let golden_mismatch: Vec<String> = GOLDEN
        .iter()
        .filter(|(p, gamma, expected)| {
            let c = gad_simulator_circuit(params(*p, *gamma)).unwrap();
            qasm::emit(&c, &mapping, None).unwrap() != *expected
        })
        .map(|(p, gamma, _)| format!("({p}, {gamma})"))
        .collect();
    verdict(
        12,
        "QASM round trip and golden",
        pairs == 9 && worst < 1e-12 && golden_mismatch.is_empty(),
        &format!(
            "round-trip residual {worst:.2e} over {pairs} pairs, golden mismatches {golden_mismatch:?}"
        ),
    );
}

#[test]
fn criterion_13_semigroup() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let states: Vec<DensityOperator> = (0..10)
        .map(|_| random_density(&mut rng, 1).unwrap())
        .collect();
    let mut worst = 0.0f64;
    for p in [0.0, 0.3, 0.5, 0.9, 1.0] {
        for g1 in unit_grid(6) {
            for g2 in unit_grid(6) {
                let combined = params(p, 1.0 - (1.0 - g1) * (1.0 - g2));
                for rho in &states {
                    let twice = apply_channel(
                        &gad_kraus(params(p, g2)),
                        &apply_channel(&gad_kraus(params(p, g1)), rho).unwrap(),
                    )
                    .unwrap();
                    let once = apply_channel(&gad_kraus(combined), rho).unwrap();
                    let closed = gad_closed_form(combined, rho).unwrap();
                    worst = worst
                        .max(twice.max_abs_diff(&once).unwrap())
                        .max(twice.max_abs_diff(&closed).unwrap());
                }
            }
        }
    }
    verdict(
        13,
        "semigroup property",
        worst < 1e-12,
        &format!("max residual {worst:.2e}"),
    );
}
