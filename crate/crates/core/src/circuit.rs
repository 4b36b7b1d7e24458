//! Gate-level circuits and dense simulation.
//!
//! Gates apply in list order, so the circuit unitary is `G_n ⋯ G_2 G_1`.
//! Wire 0 is the most significant tensor factor. The thermal-noise simulator
//! uses wires Q = 0 (principal), E = 1 (environment), A = 2 (auxiliary).

use crate::channel::GadParams;
use crate::dilation::{self, DilatedModel};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector, UNITARY_TOL};
use crate::state::{check_probability, DensityOperator, PureState};

pub const MAX_WIDTH: usize = 3;

/// Principal qubit wire of the simulator circuit.
pub const WIRE_Q: usize = 0;
/// Environment qubit wire of the simulator circuit.
pub const WIRE_E: usize = 1;
/// Auxiliary qubit wire; carries `|p⟩` and purifies the environment.
pub const WIRE_A: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    X {
        wire: usize,
    },
    Ry {
        wire: usize,
        angle: f64,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    /// Arbitrary controlled single-qubit unitary; only used to build oracles.
    ControlledU {
        control: usize,
        target: usize,
        u: ComplexMatrix,
    },
}

impl Gate {
    pub fn wires(&self) -> Vec<usize> {
        match *self {
            Gate::X { wire } | Gate::Ry { wire, .. } => vec![wire],
            Gate::Cnot { control, target }
            | Gate::ControlledU {
                control, target, ..
            } => {
                vec![control, target]
            }
        }
    }

    fn target_matrix(&self) -> ComplexMatrix {
        match self {
            Gate::X { .. } | Gate::Cnot { .. } => pauli_x(),
            Gate::Ry { angle, .. } => ry_matrix(*angle),
            Gate::ControlledU { u, .. } => u.clone(),
        }
    }

    /// Full `2^width` matrix of this gate.
    pub fn embed(&self, width: usize) -> ComplexMatrix {
        let (control, target) = match *self {
            Gate::X { wire } | Gate::Ry { wire, .. } => (None, wire),
            Gate::Cnot { control, target }
            | Gate::ControlledU {
                control, target, ..
            } => (Some(control), target),
        };
        let u = self.target_matrix();
        let dim = 1usize << width;
        let bit = |wire: usize| 1usize << (width - 1 - wire);
        let mut entries = vec![linalg::ZERO; dim * dim];
        for col in 0..dim {
            if control.is_some_and(|c| col & bit(c) == 0) {
                entries[col * dim + col] = linalg::ONE;
                continue;
            }
            let in_bit = usize::from(col & bit(target) != 0);
            for out_bit in 0..2 {
                let row = (col & !bit(target)) | (out_bit * bit(target));
                entries[row * dim + col] = u[(out_bit, in_bit)];
            }
        }
        ComplexMatrix::new(dim, dim, entries).expect("finite")
    }
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("finite")
}

/// `R_y(ξ) = [[cos ξ/2, −sin ξ/2], [sin ξ/2, cos ξ/2]]`
pub fn ry_matrix(xi: f64) -> ComplexMatrix {
    let (s, c) = (xi / 2.0).sin_cos();
    ComplexMatrix::from_real(2, 2, &[c, -s, s, c]).expect("finite angle")
}

/// `ξ = −arcsin √γ`, in `[−π/2, 0]`.
pub fn xi_from_gamma(gamma: f64) -> Result<f64> {
    check_probability("gamma", gamma)?;
    Ok(-gamma.sqrt().asin())
}

/// `ξ_p = 2 arccos √p`, in `[0, π]`; `R_y(ξ_p)|0⟩ = √p|0⟩ + √(1−p)|1⟩`.
pub fn xi_p_from_p(p: f64) -> Result<f64> {
    check_probability("p", p)?;
    Ok(2.0 * p.sqrt().acos())
}

/// Gate counts by kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCensus {
    pub x: usize,
    pub ry: usize,
    pub cnot: usize,
    pub controlled_u: usize,
}

impl GateCensus {
    pub fn of(gates: &[Gate]) -> Self {
        gates.iter().fold(Self::default(), |mut acc, g| {
            match g {
                Gate::X { .. } => acc.x += 1,
                Gate::Ry { .. } => acc.ry += 1,
                Gate::Cnot { .. } => acc.cnot += 1,
                Gate::ControlledU { .. } => acc.controlled_u += 1,
            }
            acc
        })
    }
}

/// Ordered gate list over `width` wires.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Result<Self> {
        if !(1..=MAX_WIDTH).contains(&width) {
            return Err(Error::InvalidCircuit(format!(
                "width {width} outside 1..={MAX_WIDTH}"
            )));
        }
        Ok(Self {
            width,
            gates: Vec::new(),
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        let wires = gate.wires();
        if let Some(&w) = wires.iter().find(|&&w| w >= self.width) {
            return Err(Error::InvalidCircuit(format!(
                "wire {w} outside circuit of width {}",
                self.width
            )));
        }
        if wires.len() == 2 && wires[0] == wires[1] {
            return Err(Error::InvalidCircuit(format!(
                "control and target are both wire {}",
                wires[0]
            )));
        }
        match &gate {
            Gate::Ry { angle, .. } if !angle.is_finite() => {
                return Err(Error::InvalidCircuit(format!("non-finite angle {angle}")));
            }
            Gate::ControlledU { u, .. }
                if u.rows() != 2 || !linalg::is_unitary(u, UNITARY_TOL)? =>
            {
                return Err(Error::InvalidCircuit(
                    "controlled gate must be a 2x2 unitary".into(),
                ));
            }
            _ => {}
        }
        self.gates.push(gate);
        Ok(self)
    }

    /// Appends every gate of `other`, which must have the same width.
    pub fn extend(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.width != self.width {
            return Err(Error::InvalidCircuit(format!(
                "cannot append width {} circuit to width {}",
                other.width, self.width
            )));
        }
        for g in &other.gates {
            self.push(g.clone())?;
        }
        Ok(self)
    }

    pub fn census(&self) -> GateCensus {
        GateCensus::of(&self.gates)
    }
}

fn distinct_wires(a: usize, b: usize) -> Result<()> {
    if a == b {
        Err(Error::InvalidCircuit(format!(
            "wires must differ, both are {a}"
        )))
    } else {
        Ok(())
    }
}

fn width_for(wires: &[usize]) -> usize {
    wires.iter().max().map_or(1, |&w| (w + 1).max(2))
}

/// Controlled `Ũ = R_y(2ξ) = R_y(ξ) X R_y(−ξ) X` from two CNOTs and two rotations.
///
/// Applied order: CNOT, `R_y(−ξ)` on target, CNOT, `R_y(ξ)` on target. With the
/// control at `|0⟩` the rotations cancel.
pub fn controlled_u_circuit(xi: f64, control: usize, target: usize) -> Result<Circuit> {
    distinct_wires(control, target)?;
    let mut c = Circuit::new(width_for(&[control, target]))?;
    c.push(Gate::Cnot { control, target })?
        .push(Gate::Ry {
            wire: target,
            angle: -xi,
        })?
        .push(Gate::Cnot { control, target })?
        .push(Gate::Ry {
            wire: target,
            angle: xi,
        })?;
    Ok(c)
}

/// `U_th(γ)` on (Q, E): CNOT(Q→E), controlled-Ũ with E controlling Q, CNOT(Q→E).
pub fn u_thermal_circuit(gamma: f64, qwire: usize, ewire: usize) -> Result<Circuit> {
    distinct_wires(qwire, ewire)?;
    let xi = xi_from_gamma(gamma)?;
    let swap_in = Gate::Cnot {
        control: qwire,
        target: ewire,
    };
    let mut c = Circuit::new(width_for(&[qwire, ewire]))?;
    c.push(swap_in.clone())?;
    let cu = controlled_u_circuit(xi, ewire, qwire)?;
    for g in cu.gates {
        c.push(g)?;
    }
    c.push(swap_in)?;
    Ok(c)
}

/// The interaction part of the simulator: `U_th(γ)` on (Q, E) inside a
/// three-wire circuit, with no state preparation. Pair with an externally
/// prepared (E, A) environment state.
pub fn gad_interaction_circuit(gamma: f64) -> Result<Circuit> {
    let inner = u_thermal_circuit(gamma, WIRE_Q, WIRE_E)?;
    let mut c = Circuit::new(3)?;
    for g in inner.gates {
        c.push(g)?;
    }
    Ok(c)
}

/// Full three-qubit thermal-noise simulator on (Q, E, A).
///
/// Gate 0 is the preparation `R_y(ξ_p)` on A. The rest is the purification
/// CNOT(A→E) followed by `U_th(γ)` on (Q, E): five CNOTs and two rotations.
/// E and A must start in `|00⟩`.
pub fn gad_simulator_circuit(params: GadParams) -> Result<Circuit> {
    let mut c = Circuit::new(3)?;
    c.push(Gate::Ry {
        wire: WIRE_A,
        angle: xi_p_from_p(params.p())?,
    })?
    .push(Gate::Cnot {
        control: WIRE_A,
        target: WIRE_E,
    })?;
    c.extend(&gad_interaction_circuit(params.gamma())?)?;
    Ok(c)
}

/// Number of leading state-preparation gates in [`gad_simulator_circuit`].
pub const SIMULATOR_PREP_GATES: usize = 1;

/// Product of the embedded gates in application order.
pub fn circuit_unitary(c: &Circuit) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(1 << c.width);
    for g in &c.gates {
        u = g.embed(c.width).matmul(&u).expect("same dimension");
    }
    u
}

/// Runs `input_rho` on wire `principal` with the other wires starting in
/// `env_init` (in ascending wire order), then traces those wires out.
pub fn simulate_channel(
    c: &Circuit,
    input_rho: &DensityOperator,
    principal: usize,
    env_init: &PureState,
) -> Result<DensityOperator> {
    if principal >= c.width {
        return Err(Error::Dimension(format!(
            "principal wire {principal} outside width {}",
            c.width
        )));
    }
    if input_rho.dim() != 2 {
        return Err(Error::Dimension("principal input must be one qubit".into()));
    }
    if c.width < 2 || env_init.num_qubits() != c.width - 1 {
        return Err(Error::Dimension(format!(
            "environment of {} qubits does not fill a width {} circuit",
            env_init.num_qubits(),
            c.width
        )));
    }
    let model = DilatedModel::new(
        env_init.vector().clone(),
        circuit_unitary(c),
        vec![2; c.width],
        principal,
    )?;
    dilation::reduce(&model, input_rho)
}

/// Runs the simulator circuit with E and A in `|00⟩`.
pub fn simulate_gad(params: GadParams, rho: &DensityOperator) -> Result<DensityOperator> {
    let c = gad_simulator_circuit(params)?;
    simulate_channel(&c, rho, WIRE_Q, &PureState::basis(2, 0)?)
}

/// Pure-state output of a circuit on a product input; used by examples.
pub fn run_statevector(c: &Circuit, input: &PureState) -> Result<ComplexVector> {
    if input.num_qubits() != c.width {
        return Err(Error::Dimension(format!(
            "{}-qubit input to width {} circuit",
            input.num_qubits(),
            c.width
        )));
    }
    circuit_unitary(c).apply(input.vector())
}
