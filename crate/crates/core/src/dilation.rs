//! Stinespring dilations of the thermal channel.
//!
//! Two inequivalent dilations are provided: the canonical one built from the
//! Kraus operators (environment `|e_k⟩ = |00⟩, |01⟩, |10⟩, |11⟩` for
//! `k = 1..4`), and the thermal-attenuator one whose environment qubit is
//! purified by an auxiliary qubit. Both reduce to the same channel.

use crate::channel::{GadParams, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{self, split_index, ComplexMatrix, ComplexVector, UNITARY_TOL};
use crate::state::{check_probability, DensityOperator, PureState};

/// Joint unitary plus pure environment state; the principal system sits at
/// `system_index` among `subsystem_dims`, the environment fills the rest in order.
#[derive(Clone, Debug, PartialEq)]
pub struct DilatedModel {
    environment_initial: ComplexVector,
    joint_unitary: ComplexMatrix,
    subsystem_dims: Vec<usize>,
    system_index: usize,
}

impl DilatedModel {
    pub fn new(
        environment_initial: ComplexVector,
        joint_unitary: ComplexMatrix,
        subsystem_dims: Vec<usize>,
        system_index: usize,
    ) -> Result<Self> {
        if system_index >= subsystem_dims.len() || subsystem_dims.contains(&0) {
            return Err(Error::Dimension(format!(
                "system index {system_index} invalid for subsystems {subsystem_dims:?}"
            )));
        }
        let total: usize = subsystem_dims.iter().product();
        let env_dim = total / subsystem_dims[system_index];
        if environment_initial.dim() != env_dim {
            return Err(Error::Dimension(format!(
                "environment state has dimension {}, expected {env_dim}",
                environment_initial.dim()
            )));
        }
        if (environment_initial.norm() - 1.0).abs() > crate::state::NORM_TOL {
            return Err(Error::InvalidState(
                "environment state is not normalized".into(),
            ));
        }
        if joint_unitary.rows() != total || !linalg::is_unitary(&joint_unitary, UNITARY_TOL)? {
            return Err(Error::InvalidParameter(format!(
                "joint operator is not a {total}x{total} unitary"
            )));
        }
        Ok(Self {
            environment_initial,
            joint_unitary,
            subsystem_dims,
            system_index,
        })
    }

    pub fn environment_initial(&self) -> &ComplexVector {
        &self.environment_initial
    }

    pub fn joint_unitary(&self) -> &ComplexMatrix {
        &self.joint_unitary
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    pub fn system_index(&self) -> usize {
        self.system_index
    }

    pub fn system_dim(&self) -> usize {
        self.subsystem_dims[self.system_index]
    }
}

/// Builds `ρ ⊗ |e⟩⟨e|` with the system factor at `system_index`.
pub(crate) fn embed_with_environment(
    rho: &ComplexMatrix,
    env: &ComplexVector,
    dims: &[usize],
    system_index: usize,
) -> ComplexMatrix {
    let total: usize = dims.iter().product();
    let env_dims: Vec<usize> = dims
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != system_index)
        .map(|(_, &d)| d)
        .collect();
    let locate = |flat: usize, digits: &mut [usize]| {
        split_index(flat, dims, digits);
        let env_flat = digits
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != system_index)
            .zip(&env_dims)
            .fold(0, |acc, ((_, &d), &size)| acc * size + d);
        (digits[system_index], env_flat)
    };
    let mut row_digits = vec![0; dims.len()];
    let mut col_digits = vec![0; dims.len()];
    let mut entries = Vec::with_capacity(total * total);
    for i in 0..total {
        let (si, ei) = locate(i, &mut row_digits);
        for j in 0..total {
            let (sj, ej) = locate(j, &mut col_digits);
            entries.push(rho[(si, sj)] * env[ei] * env[ej].conj());
        }
    }
    ComplexMatrix::new(total, total, entries).expect("finite")
}

/// `tr_E[U (ρ ⊗ |e₀⟩⟨e₀|) U†]`
pub fn reduce(model: &DilatedModel, rho: &DensityOperator) -> Result<DensityOperator> {
    if rho.dim() != model.system_dim() {
        return Err(Error::Dimension(format!(
            "state of dimension {} does not match system dimension {}",
            rho.dim(),
            model.system_dim()
        )));
    }
    let joint = embed_with_environment(
        rho.matrix(),
        &model.environment_initial,
        &model.subsystem_dims,
        model.system_index,
    );
    let evolved = model.joint_unitary.conjugate(&joint)?;
    let reduced = linalg::partial_trace(&evolved, &model.subsystem_dims, &[model.system_index])?;
    DensityOperator::new(reduced)
}

/// The isometry `|j⟩ ↦ Σ_k Λ_k|j⟩ ⊗ |e_k⟩`, one column per system basis state.
pub fn kraus_isometry(channel: &KrausChannel) -> ComplexMatrix {
    let d = channel.dim();
    let k = channel.len();
    let columns: Vec<ComplexVector> = (0..d)
        .map(|j| {
            let mut col = vec![linalg::ZERO; d * k];
            for (kk, op) in channel.operators().iter().enumerate() {
                for i in 0..d {
                    col[i * k + kk] = op[(i, j)];
                }
            }
            ComplexVector::new(col).expect("finite")
        })
        .collect();
    ComplexMatrix::from_columns(&columns).expect("equal-length columns")
}

/// Canonical dilation: environment of dimension K starting in `|e₀⟩ = |0…0⟩`.
///
/// The joint unitary maps `|j⟩⊗|e₀⟩` to the `j`-th column of the Kraus
/// isometry. Its remaining columns come from deterministic completion and carry
/// no meaning beyond unitarity.
pub fn canonical_dilation(channel: &KrausChannel) -> Result<DilatedModel> {
    let d = channel.dim();
    let k = channel.len();
    let v = kraus_isometry(channel);
    let completed = linalg::complete_isometry_to_unitary(&v)
        .map_err(|e| Error::InvalidChannel(format!("Kraus isometry: {e}")))?;

    // Completion puts the isometry columns first; move column j to index j·K.
    let n = d * k;
    let mut targets: Vec<usize> = (0..d).map(|j| j * k).collect();
    targets.extend((0..n).filter(|idx| idx % k != 0));
    let mut columns = vec![completed.column(0); n];
    for (src, &dst) in targets.iter().enumerate() {
        columns[dst] = completed.column(src);
    }
    let unitary = ComplexMatrix::from_columns(&columns)?;

    let subsystem_dims = if d == 2 && k.is_power_of_two() {
        std::iter::repeat_n(2, 1 + k.trailing_zeros() as usize).collect()
    } else {
        vec![d, k]
    };
    DilatedModel::new(ComplexVector::basis(k, 0)?, unitary, subsystem_dims, 0)
}

/// Two-level matrix `[[√(1−γ), √γ], [−√γ, √(1−γ)]]`.
pub fn u_tilde(gamma: f64) -> Result<ComplexMatrix> {
    check_probability("gamma", gamma)?;
    let (s, c) = (gamma.sqrt(), (1.0 - gamma).sqrt());
    ComplexMatrix::from_real(2, 2, &[c, s, -s, c])
}

/// Thermal-attenuator interaction on (Q, E): `u_tilde` on span{|01⟩, |10⟩},
/// identity on |00⟩ and |11⟩.
pub fn u_thermal(gamma: f64) -> Result<ComplexMatrix> {
    let t = u_tilde(gamma)?;
    let mut m = vec![0.0; 16];
    m[0] = 1.0;
    m[15] = 1.0;
    m[5] = t[(0, 0)].re;
    m[6] = t[(0, 1)].re;
    m[9] = t[(1, 0)].re;
    m[10] = t[(1, 1)].re;
    ComplexMatrix::from_real(4, 4, &m)
}

/// `√p|00⟩ + √(1−p)|11⟩`, purifying `diag(p, 1−p)`.
pub fn purified_environment(p: f64) -> Result<ComplexVector> {
    check_probability("p", p)?;
    ComplexVector::from_real(&[p.sqrt(), 0.0, 0.0, (1.0 - p).sqrt()])
}

/// Three-qubit dilation on (Q, E, A): joint unitary `U_th(γ) ⊗ I₂`,
/// environment (E, A) in `√p|00⟩ + √(1−p)|11⟩`.
pub fn attenuator_model(params: GadParams) -> Result<DilatedModel> {
    let unitary = u_thermal(params.gamma())?.kron(&ComplexMatrix::identity(2));
    DilatedModel::new(purified_environment(params.p())?, unitary, vec![2, 2, 2], 0)
}

/// Largest amplitude that `Σ Λ_k|q⟩⊗|e_k⟩` places on `|011⟩` or `|101⟩`.
///
/// `None` when the channel is not a four-operator qubit channel.
pub fn subspace_leakage(channel: &KrausChannel, q: &PureState) -> Option<f64> {
    if channel.dim() != 2 || channel.len() != 4 || q.dim() != 2 {
        return None;
    }
    let image = kraus_isometry(channel).apply(q.vector()).ok()?;
    Some(image[0b011].norm().max(image[0b101].norm()))
}

/// True when every input's image avoids `|011⟩` and `|101⟩` to within 1e-12.
pub fn check_subspace_property(channel: &KrausChannel, inputs: &[PureState]) -> bool {
    inputs
        .iter()
        .all(|q| subspace_leakage(channel, q).is_some_and(|leak| leak < 1e-12))
}
