//! Scripted drivers reproducing the reference experiments as data:
//! three-model pulse response, drive-strength study with the coherence
//! curve, the four single-parameter sweeps, and the pulse-duration sweep.
//!
//! A sweep is a list of independent (value, model) jobs executed on a rayon
//! pool with a configurable worker count; results are keyed and sorted, so
//! the assembled output is independent of scheduling and two runs of the
//! same spec produce bit-identical summaries.

use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

use crate::analysis::{coherence_integral, oscillation_contrast, peak_separation};
use crate::error::{Error, Result};
use crate::hilbert::build_operators;
use crate::quantum::evolve_master;
use crate::semiclassical::{
    classical_as_trace, estimate_peak_photon, evolve_linear_with, evolve_nonlinear_with,
};
use crate::types::{ghz_to_angular, DriveNorm, Model, PulseSpec, SystemParams, TimeGrid, TimeTrace};

/// Which single parameter a sweep varies. Rates and detunings are swept in
/// rad/ps, `Fwhm` in ps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptParameter {
    G,
    Kappa,
    Delta,
    GammaD,
    Fwhm,
    Omega0,
}

impl SweptParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweptParameter::G => "g",
            SweptParameter::Kappa => "kappa",
            SweptParameter::Delta => "delta",
            SweptParameter::GammaD => "gamma_d",
            SweptParameter::Fwhm => "fwhm",
            SweptParameter::Omega0 => "omega0",
        }
    }

    /// True when swept values are times in ps rather than angular frequencies.
    pub fn is_time(&self) -> bool {
        matches!(self, SweptParameter::Fwhm)
    }
}

impl fmt::Display for SweptParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweptParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "g" => Ok(SweptParameter::G),
            "kappa" => Ok(SweptParameter::Kappa),
            "delta" => Ok(SweptParameter::Delta),
            "gamma_d" => Ok(SweptParameter::GammaD),
            "fwhm" => Ok(SweptParameter::Fwhm),
            "omega0" => Ok(SweptParameter::Omega0),
            other => Err(Error::invalid(
                "parameter",
                format!("unknown sweep parameter `{other}` (expected g|kappa|delta|gamma_d|fwhm|omega0)"),
            )),
        }
    }
}

/// Full description of a sweep: what to vary, over which values, on which
/// base system, and with which models.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweptParameter,
    pub values: Vec<f64>,
    pub base_params: SystemParams,
    pub base_pulse: PulseSpec,
    pub grid: TimeGrid,
    pub models: Vec<Model>,
    /// Fock truncation for quantum jobs; raised automatically when the
    /// drive's bare-cavity photon estimate calls for more (capped at
    /// [`N_MAX_CAP`]).
    pub n_max: usize,
    pub drive_norm: DriveNorm,
    /// Worker threads for the job pool; 0 means the rayon default.
    pub workers: usize,
}

/// Hard ceiling on the automatic truncation growth (dimension 82).
pub const N_MAX_CAP: usize = 40;

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::invalid("values", "sweep values must be non-empty"));
        }
        if !self.values.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::invalid(
                "values",
                "sweep values must be strictly increasing",
            ));
        }
        if self.models.is_empty() {
            return Err(Error::invalid("models", "at least one model required"));
        }
        if self.n_max < 1 {
            return Err(Error::invalid("n_max", "must be ≥ 1"));
        }
        self.base_params.validate()?;
        self.base_pulse.validate()?;
        self.grid.validate()?;
        for &v in &self.values {
            let (p, pu, _) = self.apply(v);
            p.validate()?;
            pu.validate()?;
        }
        Ok(())
    }

    /// Materialize the system for one swept value. A `Delta` sweep keeps the
    /// laser on the bare cavity and moves the QD (Δa = Δc − δ); an `Fwhm`
    /// sweep widens the grid start to keep at least 4·fwhm of lead-in before
    /// the pulse center.
    pub fn apply(&self, value: f64) -> (SystemParams, PulseSpec, TimeGrid) {
        let mut params = self.base_params;
        let mut pulse = self.base_pulse;
        let mut grid = self.grid;
        match self.parameter {
            SweptParameter::G => params.g = value,
            SweptParameter::Kappa => params.kappa = value,
            SweptParameter::Delta => params.delta_a = params.delta_c - value,
            SweptParameter::GammaD => params.gamma_d = value,
            SweptParameter::Fwhm => {
                pulse.fwhm = value;
                let lead_in = pulse.t_center - 4.0 * value;
                if lead_in < grid.t_start {
                    grid.t_start = lead_in;
                }
            }
            SweptParameter::Omega0 => pulse.omega0 = value,
        }
        (params, pulse, grid)
    }
}

/// One computed trace of a sweep.
#[derive(Debug, Clone)]
pub struct SweepTrace {
    pub value: f64,
    pub model: Model,
    pub trace: TimeTrace,
}

/// Per-value summary metrics, taken from the quantum trace when present and
/// from the first listed model otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub value: f64,
    pub peak_separation: Option<f64>,
    pub oscillation_contrast: f64,
    /// Integrated coherence measure; quantum traces only.
    pub coherence_integral: Option<f64>,
    /// Largest ⟨a†a⟩ over the grid.
    pub peak_cavity_photon: f64,
    /// κ·max⟨a†a⟩ — proportional to the emitted peak flux. Unlike the stored
    /// photon number this grows with κ for a fixed drive.
    pub peak_output_flux: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub traces: Vec<SweepTrace>,
    pub summaries: Vec<SweepSummary>,
}

impl SweepResult {
    /// All traces of one model, in sweep-value order.
    pub fn model_traces(&self, model: Model) -> Vec<&SweepTrace> {
        self.traces.iter().filter(|t| t.model == model).collect()
    }

    /// The trace for an exact (value, model) pair.
    pub fn trace_for(&self, value: f64, model: Model) -> Option<&TimeTrace> {
        self.traces
            .iter()
            .find(|t| t.model == model && t.value == value)
            .map(|t| &t.trace)
    }
}

/// Truncation for one quantum job: the configured floor, raised if the
/// bare-cavity photon estimate for this drive needs more headroom.
fn effective_n_max(
    base: usize,
    params: &SystemParams,
    pulse: &PulseSpec,
    grid: &TimeGrid,
) -> Result<usize> {
    let n_est = estimate_peak_photon(params, pulse, grid)?;
    let needed = (n_est + 7.0 * n_est.sqrt() + 7.0).ceil() as usize;
    Ok(base.max(needed).min(N_MAX_CAP))
}

/// Run a single model over one parameter point.
pub fn run_model(
    model: Model,
    params: &SystemParams,
    pulse: &PulseSpec,
    grid: &TimeGrid,
    n_max: usize,
    drive_norm: DriveNorm,
) -> Result<TimeTrace> {
    match model {
        Model::Quantum => {
            let ops = build_operators(n_max)?;
            evolve_master(&ops, params, pulse, grid)
        }
        Model::Linear => evolve_linear_with(params, pulse, grid, drive_norm),
        Model::Nonlinear => evolve_nonlinear_with(params, pulse, grid, drive_norm),
        Model::Classical => classical_as_trace(params, pulse, grid),
    }
}

/// Execute every (value, model) job of the sweep and assemble ordered traces
/// and per-value summaries.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;

    let mut jobs: Vec<(usize, usize)> = Vec::new();
    for vi in 0..spec.values.len() {
        for mi in 0..spec.models.len() {
            jobs.push((vi, mi));
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::invalid("workers", e.to_string()))?;

    let mut traces: Vec<(usize, usize, SweepTrace)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(vi, mi)| {
                let value = spec.values[vi];
                let model = spec.models[mi];
                let (params, pulse, grid) = spec.apply(value);
                let n_max = effective_n_max(spec.n_max, &params, &pulse, &grid)?;
                let trace = run_model(model, &params, &pulse, &grid, n_max, spec.drive_norm)?;
                Ok((vi, mi, SweepTrace { value, model, trace }))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    traces.sort_by_key(|&(vi, mi, _)| (vi, mi));

    let summary_model = if spec.models.contains(&Model::Quantum) {
        Model::Quantum
    } else {
        spec.models[0]
    };
    let mut summaries = Vec::with_capacity(spec.values.len());
    for (vi, &value) in spec.values.iter().enumerate() {
        let trace = &traces
            .iter()
            .find(|&&(tvi, mi, _)| tvi == vi && spec.models[mi] == summary_model)
            .expect("summary trace present by construction")
            .2
            .trace;
        let (params, pulse, _) = spec.apply(value);
        let peak = trace.peak_cavity_photon();
        summaries.push(SweepSummary {
            value,
            peak_separation: peak_separation(trace),
            oscillation_contrast: oscillation_contrast(trace),
            coherence_integral: (summary_model == Model::Quantum)
                .then(|| coherence_integral(trace, pulse.omega0)),
            peak_cavity_photon: peak,
            peak_output_flux: params.kappa * peak,
        });
    }

    Ok(SweepResult {
        spec: spec.clone(),
        traces: traces.into_iter().map(|(_, _, t)| t).collect(),
        summaries,
    })
}

/// Reference parameters: g/2π = 25 GHz, κ/2π = 29 GHz, γ/2π = 1 GHz, no
/// dephasing, both detunings zero.
pub fn reference_params() -> SystemParams {
    SystemParams::from_ghz(25.0, 29.0, 1.0, 0.0, 0.0, 0.0)
}

/// Reference drive: Ω0/2π = 1 GHz, 5 ps Gaussian centered at t = 0.
pub fn reference_pulse() -> PulseSpec {
    PulseSpec::from_ghz(1.0, 5.0, 0.0)
}

/// Default output grid: [−20, +200] ps at 0.1 ps sampling; the tail is long
/// enough for the cavity output to decay below 1e−6 of its peak.
pub fn reference_grid() -> TimeGrid {
    TimeGrid {
        t_start: -20.0,
        t_end: 200.0,
        dt: 0.1,
    }
}

/// Three-model comparison at a single drive: quantum, linear and nonlinear
/// traces of the same pulse response.
pub fn run_fig1(params: &SystemParams, pulse: &PulseSpec, grid: &TimeGrid) -> Result<SweepResult> {
    let spec = SweepSpec {
        parameter: SweptParameter::Omega0,
        values: vec![pulse.omega0],
        base_params: *params,
        base_pulse: *pulse,
        grid: *grid,
        models: vec![Model::Quantum, Model::Linear, Model::Nonlinear],
        n_max: 20,
        drive_norm: DriveNorm::Hamiltonian,
        workers: 0,
    };
    run_sweep(&spec)
}

/// Default drive-strength scan for the quantum/nonlinear comparison: decade
/// points 1, 10, 100 GHz for the trace comparison plus intermediate points
/// for the coherence curve.
pub fn fig2_default_omega0s() -> Vec<f64> {
    [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0]
        .iter()
        .map(|&f| ghz_to_angular(f))
        .collect()
}

/// Drive-strength study: quantum and nonlinear traces per Ω0 plus the
/// coherence integral per Ω0 (in the summaries). High-drive points raise the
/// Fock truncation automatically.
pub fn run_fig2(
    params: &SystemParams,
    pulse: &PulseSpec,
    grid: &TimeGrid,
    omega0_list: &[f64],
) -> Result<SweepResult> {
    let spec = SweepSpec {
        parameter: SweptParameter::Omega0,
        values: omega0_list.to_vec(),
        base_params: *params,
        base_pulse: *pulse,
        grid: *grid,
        models: vec![Model::Quantum, Model::Nonlinear],
        n_max: 20,
        drive_norm: DriveNorm::Hamiltonian,
        workers: 0,
    };
    run_sweep(&spec)
}

/// The four single-parameter sweep panels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fig3Panel {
    G,
    Kappa,
    Delta,
    GammaD,
}

impl FromStr for Fig3Panel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" | "3a" | "g" => Ok(Fig3Panel::G),
            "b" | "3b" | "kappa" => Ok(Fig3Panel::Kappa),
            "c" | "3c" | "delta" => Ok(Fig3Panel::Delta),
            "d" | "3d" | "gamma_d" => Ok(Fig3Panel::GammaD),
            other => Err(Error::invalid(
                "panel",
                format!("unknown sweep panel `{other}` (expected 3a|3b|3c|3d)"),
            )),
        }
    }
}

fn linspace_ghz(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| ghz_to_angular(lo + (hi - lo) * i as f64 / (n - 1) as f64))
        .collect()
}

/// Default sweep for one panel. Base values per panel: (a) κ/2π = 20 GHz
/// sweeping g ∈ [10, 40] GHz; (b) g/2π = 20 GHz sweeping κ ∈ [10, 40];
/// (c) g = κ = 20 GHz sweeping δ ∈ [−80, 80]; (d) g = κ = 20 GHz sweeping
/// γ_d ∈ [0, 20]. Everywhere: γ/2π = 1 GHz, low drive Ω0/2π = 2 GHz, 5 ps
/// pulse, 20 sweep points, quantum model.
pub fn fig3_spec(panel: Fig3Panel) -> SweepSpec {
    let gamma = 1.0;
    let omega0 = 2.0;
    let (parameter, values, base) = match panel {
        Fig3Panel::G => (
            SweptParameter::G,
            linspace_ghz(10.0, 40.0, 20),
            SystemParams::from_ghz(20.0, 20.0, gamma, 0.0, 0.0, 0.0),
        ),
        Fig3Panel::Kappa => (
            SweptParameter::Kappa,
            linspace_ghz(10.0, 40.0, 20),
            SystemParams::from_ghz(20.0, 20.0, gamma, 0.0, 0.0, 0.0),
        ),
        Fig3Panel::Delta => (
            SweptParameter::Delta,
            linspace_ghz(-80.0, 80.0, 21),
            SystemParams::from_ghz(20.0, 20.0, gamma, 0.0, 0.0, 0.0),
        ),
        Fig3Panel::GammaD => (
            SweptParameter::GammaD,
            linspace_ghz(0.0, 20.0, 11),
            SystemParams::from_ghz(20.0, 20.0, gamma, 0.0, 0.0, 0.0),
        ),
    };
    SweepSpec {
        parameter,
        values,
        base_params: base,
        base_pulse: PulseSpec::from_ghz(omega0, 5.0, 0.0),
        grid: TimeGrid {
            t_start: -20.0,
            t_end: 200.0,
            dt: 0.25,
        },
        models: vec![Model::Quantum],
        n_max: 20,
        drive_norm: DriveNorm::Hamiltonian,
        workers: 0,
    }
}

/// Run one sweep panel with its defaults.
pub fn run_fig3(panel: Fig3Panel) -> Result<SweepResult> {
    run_sweep(&fig3_spec(panel))
}

/// Run one sweep panel with custom values (still in rad/ps, or ps for fwhm).
pub fn run_fig3_with_values(panel: Fig3Panel, values: Vec<f64>) -> Result<SweepResult> {
    let mut spec = fig3_spec(panel);
    spec.values = values;
    run_sweep(&spec)
}

/// Default pulse-duration list: 5 … 50 ps.
pub fn fig4_default_fwhms() -> Vec<f64> {
    vec![5.0, 10.0, 20.0, 30.0, 40.0, 50.0]
}

/// Pulse-duration sweep of the quantum model at the reference parameters.
/// The grid lead-in stretches with the pulse automatically.
pub fn run_fig4(fwhm_list: &[f64]) -> Result<SweepResult> {
    let spec = SweepSpec {
        parameter: SweptParameter::Fwhm,
        values: fwhm_list.to_vec(),
        base_params: reference_params(),
        base_pulse: reference_pulse(),
        grid: TimeGrid {
            t_start: -20.0,
            t_end: 220.0,
            dt: 0.1,
        },
        models: vec![Model::Quantum],
        n_max: 20,
        drive_norm: DriveNorm::Hamiltonian,
        workers: 0,
    };
    run_sweep(&spec)
}
