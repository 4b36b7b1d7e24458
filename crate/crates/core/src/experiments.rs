//! Parameter sweeps of the measured survival probability `⟨Q|N(|Q⟩⟨Q|)|Q⟩`,
//! finite-shot sampling, CSV export and the four-way equivalence check.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::channel::{apply_channel, gad_closed_form, gad_kraus, GadParams};
use crate::circuit::simulate_gad;
use crate::dilation::{canonical_dilation, reduce};
use crate::error::{Error, Result};
use crate::linalg::Complex;
use crate::state::{
    check_probability, overlap_probability, random_density, DensityOperator, PureState,
};

/// Norm deviation above which parsed amplitudes are reported as renormalized.
pub const RENORMALIZE_WARN_TOL: f64 = 1e-6;

/// Residual above which the equivalence check fails.
pub const VERIFY_TOL: f64 = 1e-10;

/// Snapping distance for grid endpoints.
const GRID_SNAP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweptParam {
    P,
    Gamma,
}

impl SweptParam {
    pub fn name(self) -> &'static str {
        match self {
            SweptParam::P => "p",
            SweptParam::Gamma => "gamma",
        }
    }
}

impl FromStr for SweptParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(SweptParam::P),
            "gamma" | "g" => Ok(SweptParam::Gamma),
            other => Err(Error::InvalidParameter(format!(
                "unknown parameter `{other}` (expected `p` or `gamma`)"
            ))),
        }
    }
}

impl fmt::Display for SweptParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub swept: SweptParam,
    pub grid: Vec<f64>,
    /// Value of the parameter that is not swept.
    pub fixed: f64,
    pub input_state: PureState,
    /// Measurement reference; `None` measures against the input state.
    pub reference_state: Option<PureState>,
    pub shots: u64,
    pub seed: u64,
}

impl SweepSpec {
    fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::InvalidParameter("empty grid".into()));
        }
        for &v in &self.grid {
            check_probability(self.swept.name(), v)?;
        }
        let other = match self.swept {
            SweptParam::P => "gamma",
            SweptParam::Gamma => "p",
        };
        check_probability(other, self.fixed)?;
        if self.input_state.num_qubits() != 1 {
            return Err(Error::InvalidState(
                "input state must be a single qubit".into(),
            ));
        }
        if self
            .reference_state
            .as_ref()
            .is_some_and(|r| r.num_qubits() != 1)
        {
            return Err(Error::InvalidState(
                "reference state must be a single qubit".into(),
            ));
        }
        Ok(())
    }

    fn params_at(&self, value: f64) -> Result<GadParams> {
        match self.swept {
            SweptParam::P => GadParams::new(value, self.fixed),
            SweptParam::Gamma => GadParams::new(self.fixed, value),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    /// Probability from simulating the gate-level circuit.
    pub exact: f64,
    /// Probability from the closed-form channel.
    pub theory: f64,
    /// Relative frequency over `shots` draws, when sampling was requested.
    pub sampled_freq: Option<f64>,
    pub shots: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub swept: SweptParam,
    pub seed: u64,
    pub rows: Vec<SweepRow>,
}

/// Evaluates every grid point. Point `i` samples from RNG stream `i` of `seed`,
/// so rows do not depend on evaluation order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let input = spec.input_state.to_density();
    let reference = spec.reference_state.as_ref().unwrap_or(&spec.input_state);
    let rows = spec
        .grid
        .iter()
        .enumerate()
        .map(|(idx, &value)| {
            let params = spec.params_at(value)?;
            let exact = overlap_probability(&simulate_gad(params, &input)?, reference)?;
            let theory = overlap_probability(&gad_closed_form(params, &input)?, reference)?;
            let sampled_freq = if spec.shots > 0 {
                let count = sample_shots_on_stream(exact, spec.shots, spec.seed, idx as u64)?;
                Some(count as f64 / spec.shots as f64)
            } else {
                None
            };
            Ok(SweepRow {
                param: value,
                exact,
                theory,
                sampled_freq,
                shots: spec.shots,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        swept: spec.swept,
        seed: spec.seed,
        rows,
    })
}

/// Binomial draw of `shots` two-outcome measurements with success probability
/// `probability`. Drawing the binomial directly is equivalent to simulating
/// each shot's collapse for a single qubit measurement.
pub fn sample_shots(probability: f64, shots: u64, seed: u64) -> Result<u64> {
    sample_shots_on_stream(probability, shots, seed, 0)
}

/// As [`sample_shots`], on an independent ChaCha stream of the same seed.
pub fn sample_shots_on_stream(probability: f64, shots: u64, seed: u64, stream: u64) -> Result<u64> {
    check_probability("probability", probability)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let dist = Binomial::new(shots, probability)
        .map_err(|e| Error::InvalidParameter(format!("binomial: {e}")))?;
    Ok(dist.sample(&mut rng))
}

/// Fixed-point decimal with 12 significant digits; always `.` as separator.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.11}", 0.0);
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Writes the CSV body. A `# seed=` comment line precedes the header when
/// the result contains sampled frequencies.
pub fn write_csv<W: Write>(result: &SweepResult, mut out: W) -> std::io::Result<()> {
    if result.rows.iter().any(|r| r.sampled_freq.is_some()) {
        writeln!(out, "# seed={}", result.seed)?;
    }
    writeln!(out, "param,exact,theory,sampled_freq,shots")?;
    for r in &result.rows {
        let sampled = r.sampled_freq.map(format_sig12).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{}",
            format_sig12(r.param),
            format_sig12(r.exact),
            format_sig12(r.theory),
            sampled,
            r.shots
        )?;
    }
    Ok(())
}

pub fn export_csv(result: &SweepResult, path: &Path) -> Result<()> {
    if result.rows.is_empty() {
        return Err(Error::InvalidParameter("nothing to export".into()));
    }
    let mut buf = Vec::new();
    write_csv(result, &mut buf).expect("writing to memory");
    fs::write(path, buf).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses `start:stop:step`, inclusive of `stop` when it lies on the grid.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidParameter(format!("grid `{spec}` is not start:stop:step"));
    let [start, stop, step] = parts.as_slice() else {
        return Err(bad());
    };
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(bad());
    }
    let mut grid = Vec::new();
    for i in 0.. {
        let v = start + i as f64 * step;
        if v > stop + GRID_SNAP {
            break;
        }
        grid.push(if (v - stop).abs() <= GRID_SNAP {
            stop
        } else {
            v
        });
    }
    Ok(grid)
}

/// `n` evenly spaced points covering `[0, 1]` inclusive.
pub fn unit_grid(points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![0.0],
        n => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
    }
}

/// Named states `0`, `1`, `+`, `-`, `+i`, `-i`, or two complex amplitudes
/// `re:im,re:im`. Returns the state and the norm of the given amplitudes.
pub fn parse_input_state(s: &str) -> Result<(PureState, f64)> {
    match s.trim() {
        "0" => return Ok((PureState::zero(), 1.0)),
        "1" => return Ok((PureState::one(), 1.0)),
        "+" => return Ok((PureState::plus(), 1.0)),
        "-" => return Ok((PureState::minus(), 1.0)),
        "+i" => return Ok((PureState::plus_i(), 1.0)),
        "-i" => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let st = PureState::from_amplitudes(&[Complex::new(s, 0.0), Complex::new(0.0, -s)])?;
            return Ok((st, 1.0));
        }
        _ => {}
    }
    let bad = || Error::InvalidState(format!("cannot parse state `{s}`"));
    let amps = s
        .split(',')
        .map(|tok| {
            let (re, im) = tok.split_once(':').unwrap_or((tok, "0"));
            let re: f64 = re.trim().parse().map_err(|_| bad())?;
            let im: f64 = im.trim().parse().map_err(|_| bad())?;
            Ok(Complex::new(re, im))
        })
        .collect::<Result<Vec<_>>>()?;
    if amps.len() != 2 {
        return Err(bad());
    }
    PureState::normalized(&amps)
}

/// Largest pairwise residual between the channel representations.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub points: usize,
    pub inputs: usize,
    /// `(pair label, max entrywise residual)` for each of the six pairs.
    pub pair_residuals: Vec<(&'static str, f64)>,
}

impl EquivalenceReport {
    pub fn max_residual(&self) -> f64 {
        self.pair_residuals
            .iter()
            .map(|&(_, r)| r)
            .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// Input states used by the equivalence check: `|0⟩, |1⟩, |+⟩, |−⟩,
/// (|0⟩+i|1⟩)/√2` and one random mixed state drawn from `seed`.
pub fn equivalence_inputs(seed: u64) -> Result<Vec<DensityOperator>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(vec![
        PureState::zero().to_density(),
        PureState::one().to_density(),
        PureState::plus().to_density(),
        PureState::minus().to_density(),
        PureState::plus_i().to_density(),
        random_density(&mut rng, 1)?,
    ])
}

/// Compares Kraus application, closed form, canonical-dilation reduction and
/// circuit simulation over the `points × points` grid on `[0, 1]²`.
pub fn verify_equivalence(points: usize, seed: u64) -> Result<EquivalenceReport> {
    // Pairs in (i, j > i) order over [kraus, closed form, canonical dilation, circuit].
    const PAIR_LABELS: [&str; 6] = [
        "kraus~closed_form",
        "kraus~canonical_dilation",
        "kraus~circuit",
        "closed_form~canonical_dilation",
        "closed_form~circuit",
        "canonical_dilation~circuit",
    ];
    let inputs = equivalence_inputs(seed)?;
    let grid = unit_grid(points);
    let mut worst = [[0.0f64; 4]; 4];
    for &p in &grid {
        for &gamma in &grid {
            let params = GadParams::new(p, gamma)?;
            let kraus = gad_kraus(params);
            let dilation = canonical_dilation(&kraus)?;
            for rho in &inputs {
                let outs = [
                    apply_channel(&kraus, rho)?,
                    gad_closed_form(params, rho)?,
                    reduce(&dilation, rho)?,
                    simulate_gad(params, rho)?,
                ];
                for i in 0..4 {
                    for j in i + 1..4 {
                        let r = outs[i].max_abs_diff(&outs[j])?;
                        worst[i][j] = worst[i][j].max(r);
                    }
                }
            }
        }
    }
    let pair_residuals = worst
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row[i + 1..].iter().copied())
        .zip(PAIR_LABELS)
        .map(|(r, label)| (label, r))
        .collect();
    Ok(EquivalenceReport {
        points: grid.len() * grid.len(),
        inputs: inputs.len(),
        pair_residuals,
    })
}
