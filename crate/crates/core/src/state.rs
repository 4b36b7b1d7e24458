//! Pure states and density operators on one to three qubits.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, Complex, ComplexMatrix, ComplexVector, HERMITIAN_TOL, PSD_TOL};

/// Normalization tolerance for pure states and trace tolerance for density operators.
pub const NORM_TOL: f64 = 1e-10;

/// Overlap probabilities further than this outside `[0, 1]` are rejected rather than clamped.
const PROBABILITY_SLACK: f64 = 1e-8;

const MAX_QUBITS: usize = 3;

fn qubit_count(dim: usize) -> Option<usize> {
    (1..=MAX_QUBITS).find(|&n| 1usize << n == dim)
}

pub(crate) fn check_probability(name: &str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} = {value} is outside [0, 1]"
        )))
    }
}

/// Normalized state vector on 1–3 qubits. Stored as given, no phase convention.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    vector: ComplexVector,
}

impl PureState {
    pub fn new(vector: ComplexVector) -> Result<Self> {
        if qubit_count(vector.dim()).is_none() {
            return Err(Error::InvalidState(format!(
                "dimension {} is not 2, 4 or 8",
                vector.dim()
            )));
        }
        let norm = vector.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(Self { vector })
    }

    pub fn from_amplitudes(amplitudes: &[Complex]) -> Result<Self> {
        Self::new(ComplexVector::new(amplitudes.to_vec())?)
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm, returning the state
    /// and the norm of the input.
    pub fn normalized(amplitudes: &[Complex]) -> Result<(Self, f64)> {
        let v = ComplexVector::new(amplitudes.to_vec())?;
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let state = Self::new(v.scale(Complex::new(1.0 / norm, 0.0)))?;
        Ok((state, norm))
    }

    /// Computational basis state `|index⟩` on `num_qubits` qubits.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&num_qubits) {
            return Err(Error::InvalidState(format!(
                "{num_qubits} qubits not supported"
            )));
        }
        Self::new(ComplexVector::basis(1 << num_qubits, index)?)
    }

    pub fn zero() -> Self {
        Self::real(&[1.0, 0.0])
    }

    pub fn one() -> Self {
        Self::real(&[0.0, 1.0])
    }

    /// `(|0⟩ + |1⟩)/√2`
    pub fn plus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::real(&[s, s])
    }

    /// `(|0⟩ − |1⟩)/√2`
    pub fn minus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::real(&[s, -s])
    }

    /// `(|0⟩ + i|1⟩)/√2`
    pub fn plus_i() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            vector: ComplexVector::new(vec![Complex::new(s, 0.0), Complex::new(0.0, s)])
                .expect("finite"),
        }
    }

    fn real(amplitudes: &[f64]) -> Self {
        Self {
            vector: ComplexVector::from_real(amplitudes).expect("finite"),
        }
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vector
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    pub fn num_qubits(&self) -> usize {
        qubit_count(self.dim()).expect("validated at construction")
    }

    /// `|self⟩ ⊗ |other⟩`, failing if the result exceeds three qubits.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        PureState::new(self.vector.kron(&other.vector))
    }

    pub fn to_density(&self) -> DensityOperator {
        pure_to_density(self)
    }
}

/// Hermitian, trace-one, positive-semidefinite matrix on 1–3 qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || qubit_count(matrix.rows()).is_none() {
            return Err(Error::InvalidState(format!(
                "{}x{} is not a 1-3 qubit density matrix shape",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !linalg::is_hermitian(&matrix, HERMITIAN_TOL)? {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let trace = matrix.trace()?;
        if (trace - Complex::new(1.0, 0.0)).norm() > NORM_TOL {
            return Err(Error::InvalidState(format!("trace {trace} is not 1")));
        }
        if !linalg::is_psd(&matrix, PSD_TOL)? {
            return Err(Error::InvalidState(
                "matrix is not positive semidefinite".into(),
            ));
        }
        Ok(Self { matrix })
    }

    /// Builds a single-qubit density operator from `ρ₀₀` and `ρ₀₁`.
    pub fn qubit(rho00: f64, rho01: Complex) -> Result<Self> {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex::new(rho00, 0.0),
                rho01,
                rho01.conj(),
                Complex::new(1.0 - rho00, 0.0),
            ],
        )?;
        Self::new(m)
    }

    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&num_qubits) {
            return Err(Error::InvalidState(format!(
                "{num_qubits} qubits not supported"
            )));
        }
        let n = 1usize << num_qubits;
        Self::new(ComplexMatrix::identity(n).scale(Complex::new(1.0 / n as f64, 0.0)))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_qubits(&self) -> usize {
        qubit_count(self.dim()).expect("validated at construction")
    }

    /// Entry `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> Complex {
        self.matrix[(row, col)]
    }

    pub fn max_abs_diff(&self, other: &DensityOperator) -> Result<f64> {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

/// `|s⟩⟨s|`
pub fn pure_to_density(s: &PureState) -> DensityOperator {
    DensityOperator {
        matrix: s.vector.outer(&s.vector),
    }
}

/// `√p|0⟩ + √(1−p)|1⟩`
pub fn ket_p(p: f64) -> Result<PureState> {
    check_probability("p", p)?;
    Ok(PureState::real(&[p.sqrt(), (1.0 - p).sqrt()]))
}

/// The thermal equilibrium state `diag(p, 1−p)`.
pub fn equilibrium_state(p: f64) -> Result<DensityOperator> {
    check_probability("p", p)?;
    Ok(DensityOperator {
        matrix: ComplexMatrix::from_real(2, 2, &[p, 0.0, 0.0, 1.0 - p])?,
    })
}

/// `⟨reference|state|reference⟩`, clamped to `[0, 1]`.
pub fn overlap_probability(state: &DensityOperator, reference: &PureState) -> Result<f64> {
    if state.dim() != reference.dim() {
        return Err(Error::Dimension(format!(
            "state of dimension {} measured against reference of dimension {}",
            state.dim(),
            reference.dim()
        )));
    }
    let projected = state.matrix.apply(&reference.vector)?;
    let value = reference.vector.inner(&projected)?.re;
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&value) {
        return Err(Error::InvalidState(format!(
            "overlap probability {value} is outside [0, 1]"
        )));
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Haar-distributed pure state on `num_qubits` qubits.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, num_qubits: usize) -> Result<PureState> {
    if !(1..=MAX_QUBITS).contains(&num_qubits) {
        return Err(Error::InvalidState(format!(
            "{num_qubits} qubits not supported"
        )));
    }
    let amps: Vec<Complex> = (0..1usize << num_qubits)
        .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    Ok(PureState::normalized(&amps)?.0)
}

/// Full-rank random mixed state `G G† / tr(G G†)` with Gaussian `G`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, num_qubits: usize) -> Result<DensityOperator> {
    if !(1..=MAX_QUBITS).contains(&num_qubits) {
        return Err(Error::InvalidState(format!(
            "{num_qubits} qubits not supported"
        )));
    }
    let n = 1usize << num_qubits;
    let g = ComplexMatrix::new(
        n,
        n,
        (0..n * n)
            .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect(),
    )?;
    let gg = g.matmul(&g.adjoint())?;
    let trace = gg.trace()?.re;
    // Symmetrize to remove rounding asymmetry from the product.
    let m = gg.hermitian_part()?.scale(Complex::new(1.0 / trace, 0.0));
    DensityOperator::new(m)
}
