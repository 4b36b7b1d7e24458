//! The generalized amplitude damping (qubit thermal noise) channel.
//!
//! The channel has two parameters: `p`, the ground-state population of the
//! bath's equilibrium state, and `gamma`, the qubit-bath coupling. It is
//! available as a four-element Kraus set and in closed form; the two must
//! agree to rounding.

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix};
use crate::state::{check_probability, DensityOperator};

/// Completeness residual above which a Kraus set is rejected.
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// Boltzmann constant in J/K.
pub const BOLTZMANN_SI: f64 = 1.380649e-23;

/// Channel parameters, both in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GadParams {
    p: f64,
    gamma: f64,
}

impl GadParams {
    pub fn new(p: f64, gamma: f64) -> Result<Self> {
        check_probability("p", p)?;
        check_probability("gamma", gamma)?;
        Ok(Self { p, gamma })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Result of a completeness check on a Kraus set.
#[derive(Clone, Debug, PartialEq)]
pub struct CptpReport {
    /// `max |Σ Λ†Λ − I|` over entries.
    pub residual: f64,
    /// Frobenius norm of each operator.
    pub operator_norms: Vec<f64>,
}

impl CptpReport {
    pub fn passes(&self) -> bool {
        self.residual <= COMPLETENESS_TOL
    }
}

/// Checks trace preservation of a Kraus set.
pub fn validate_cptp(operators: &[ComplexMatrix]) -> Result<CptpReport> {
    let Some(first) = operators.first() else {
        return Err(Error::InvalidChannel("no Kraus operators".into()));
    };
    let dim = first.rows();
    if operators
        .iter()
        .any(|op| !op.is_square() || op.rows() != dim)
    {
        return Err(Error::Dimension(
            "Kraus operators must be square and of equal dimension".into(),
        ));
    }
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for op in operators {
        sum = sum.add(&op.adjoint().matmul(op)?)?;
    }
    let residual = sum.max_abs_diff(&ComplexMatrix::identity(dim))?;
    let operator_norms = operators
        .iter()
        .map(|op| {
            op.entries()
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    Ok(CptpReport {
        residual,
        operator_norms,
    })
}

/// Ordered Kraus operators satisfying `Σ Λ†Λ = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let report = validate_cptp(&operators)?;
        if !report.passes() {
            return Err(Error::InvalidChannel(format!(
                "completeness residual {:e} exceeds {COMPLETENESS_TOL:e}",
                report.residual
            )));
        }
        Ok(Self { operators })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            operators: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.operators[0].rows()
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn report(&self) -> CptpReport {
        validate_cptp(&self.operators).expect("validated at construction")
    }
}

/// The four thermal-noise Kraus operators `Λ₁..Λ₄`, in that order.
///
/// Zero operators (at `p = 0` or `p = 1`) are kept so the set always has four members.
pub fn gad_kraus(params: GadParams) -> KrausChannel {
    let GadParams { p, gamma } = params;
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    let (sg, sd) = (gamma.sqrt(), (1.0 - gamma).sqrt());
    let real = |e: [f64; 4]| ComplexMatrix::from_real(2, 2, &e).expect("finite");
    KrausChannel {
        operators: vec![
            real([sp, 0.0, 0.0, sp * sd]),
            real([0.0, sp * sg, 0.0, 0.0]),
            real([sq * sd, 0.0, 0.0, sq]),
            real([0.0, 0.0, sq * sg, 0.0]),
        ],
    }
}

/// `Σ Λ ρ Λ†`
pub fn apply_channel(channel: &KrausChannel, rho: &DensityOperator) -> Result<DensityOperator> {
    if channel.dim() != rho.dim() {
        return Err(Error::Dimension(format!(
            "channel on dimension {} applied to state of dimension {}",
            channel.dim(),
            rho.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(rho.dim(), rho.dim());
    for op in &channel.operators {
        out = out.add(&op.conjugate(rho.matrix())?)?;
    }
    DensityOperator::new(out)
}

/// Closed-form channel output for a single qubit:
/// `ρ′₀₀ = (1−γ)ρ₀₀ + γp`, `ρ′₀₁ = √(1−γ) ρ₀₁`.
pub fn gad_closed_form(params: GadParams, rho: &DensityOperator) -> Result<DensityOperator> {
    if rho.dim() != 2 {
        return Err(Error::Dimension(format!(
            "closed form needs a single-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    let GadParams { p, gamma } = params;
    let rho00 = rho.entry(0, 0).re;
    let rho01 = rho.entry(0, 1);
    let out00 = (1.0 - gamma) * rho00 + gamma * p;
    let out01 = rho01 * (1.0 - gamma).sqrt();
    let m = ComplexMatrix::new(
        2,
        2,
        vec![
            Complex::new(out00, 0.0),
            out01,
            out01.conj(),
            Complex::new(1.0 - out00, 0.0),
        ],
    )?;
    DensityOperator::new(m)
}

/// Thermal bath described by its level spacing and temperature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalBathSpec {
    pub energy_gap: f64,
    pub temperature: f64,
    pub boltzmann_constant: f64,
}

impl ThermalBathSpec {
    /// Dimensionless bath (`k_B = 1`).
    pub fn new(energy_gap: f64, temperature: f64) -> Self {
        Self {
            energy_gap,
            temperature,
            boltzmann_constant: 1.0,
        }
    }

    /// Bath in SI units: gap in joules, temperature in kelvin.
    pub fn si(energy_gap_joules: f64, temperature_kelvin: f64) -> Self {
        Self {
            energy_gap: energy_gap_joules,
            temperature: temperature_kelvin,
            boltzmann_constant: BOLTZMANN_SI,
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        positive("temperature", self.temperature)?;
        positive("energy gap", self.energy_gap)?;
        positive("Boltzmann constant", self.boltzmann_constant)
    }
}

/// Ground-state equilibrium population from the Boltzmann distribution.
pub fn p_from_temperature(bath: &ThermalBathSpec) -> Result<f64> {
    bath.validate()?;
    let ratio = bath.energy_gap / (bath.boltzmann_constant * bath.temperature);
    Ok(1.0 / (1.0 + (-ratio).exp()))
}

/// Interaction time and relaxation constant, in the same units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelaxationSpec {
    pub interaction_time: f64,
    pub tau1: f64,
}

/// `γ = 1 − exp(−t/τ₁)`
pub fn gamma_from_time(rel: &RelaxationSpec) -> Result<f64> {
    let RelaxationSpec {
        interaction_time: t,
        tau1,
    } = *rel;
    if !(tau1.is_finite() && tau1 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tau1 must be positive and finite, got {tau1}"
        )));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "interaction time must be nonnegative and finite, got {t}"
        )));
    }
    Ok(-(-t / tau1).exp_m1())
}
