//! Physical parameters, pulse envelope, time grids, and sampled observable traces.
//!
//! Unit convention: every quantity inside the library is an angular frequency in
//! rad/ps or a time in ps. Human-facing boundaries (config files, CLI flags, CSV
//! file names) speak ordinary frequencies in GHz and times in ps; the conversion
//! lives in [`ghz_to_angular`] / [`angular_to_ghz`] and nowhere else.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Convert an ordinary frequency f in GHz to an angular frequency ω = 2π·f·10⁻³ in rad/ps.
pub fn ghz_to_angular(f_ghz: f64) -> f64 {
    2.0 * PI * f_ghz * 1.0e-3
}

/// Inverse of [`ghz_to_angular`].
pub fn angular_to_ghz(omega: f64) -> f64 {
    omega / (2.0 * PI * 1.0e-3)
}

/// Physical rates and detunings of the coupled dot-cavity system, all in rad/ps.
///
/// `kappa` is the cavity *field* decay rate and `gamma` the dipole decay rate;
/// the master equation uses `2κ L[a]` and `2γ L[σ]`, so photon number and QD
/// population decay at `2κ` and `2γ` respectively. `delta_c` and `delta_a` are
/// the detunings of the cavity and the QD from the drive laser.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub g: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub gamma_d: f64,
    pub delta_c: f64,
    pub delta_a: f64,
}

impl SystemParams {
    /// Build from ordinary frequencies in GHz (`g/2π` etc., as usually quoted).
    pub fn from_ghz(
        g: f64,
        kappa: f64,
        gamma: f64,
        gamma_d: f64,
        delta_c: f64,
        delta_a: f64,
    ) -> Self {
        Self {
            g: ghz_to_angular(g),
            kappa: ghz_to_angular(kappa),
            gamma: ghz_to_angular(gamma),
            gamma_d: ghz_to_angular(gamma_d),
            delta_c: ghz_to_angular(delta_c),
            delta_a: ghz_to_angular(delta_a),
        }
    }

    /// Dot-cavity detuning δ = Δc − Δa.
    pub fn delta(&self) -> f64 {
        self.delta_c - self.delta_a
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("g", self.g),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
            ("gamma_d", self.gamma_d),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::invalid(name, format!("must be ≥ 0, got {v}")));
            }
        }
        for (name, v) in [("delta_c", self.delta_c), ("delta_a", self.delta_a)] {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// Gaussian drive pulse Ω(t) = Ω0·p(t) with p(t) = exp(−(t − t_center)²/(2s²)),
/// s = fwhm / (2√(2 ln 2)). `omega0` is in rad/ps, `fwhm` and `t_center` in ps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    pub omega0: f64,
    pub fwhm: f64,
    pub t_center: f64,
}

impl PulseSpec {
    pub fn from_ghz(omega0_ghz: f64, fwhm_ps: f64, t_center_ps: f64) -> Self {
        Self {
            omega0: ghz_to_angular(omega0_ghz),
            fwhm: fwhm_ps,
            t_center: t_center_ps,
        }
    }

    /// Gaussian width s = fwhm / (2√(2 ln 2)).
    pub fn sigma(&self) -> f64 {
        self.fwhm / (2.0 * (2.0 * std::f64::consts::LN_2).sqrt())
    }

    /// Dimensionless envelope p(t) ∈ (0, 1], p(t_center) = 1.
    pub fn envelope(&self, t: f64) -> f64 {
        let s = self.sigma();
        let x = (t - self.t_center) / s;
        (-0.5 * x * x).exp()
    }

    /// Instantaneous drive strength Ω(t) = Ω0·p(t) in rad/ps.
    pub fn drive(&self, t: f64) -> f64 {
        self.omega0 * self.envelope(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 >= 0.0) || !self.omega0.is_finite() {
            return Err(Error::invalid(
                "omega0",
                format!("must be ≥ 0, got {}", self.omega0),
            ));
        }
        if !(self.fwhm > 0.0) || !self.fwhm.is_finite() {
            return Err(Error::invalid(
                "fwhm",
                format!("must be > 0, got {}", self.fwhm),
            ));
        }
        if !self.t_center.is_finite() {
            return Err(Error::invalid("t_center", "must be finite"));
        }
        Ok(())
    }
}

/// Uniform output sampling grid: t_i = t_start + i·dt up to (and including) the
/// last point ≤ t_end + dt/2. The integrator adapts its internal step freely and
/// lands exactly on these samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub dt: f64,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, dt: f64) -> Result<Self> {
        let grid = Self { t_start, t_end, dt };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.t_start.is_finite() || !self.t_end.is_finite() {
            return Err(Error::invalid("grid", "t_start/t_end must be finite"));
        }
        if self.t_end <= self.t_start {
            return Err(Error::invalid(
                "grid",
                format!("t_end ({}) must exceed t_start ({})", self.t_end, self.t_start),
            ));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::invalid(
                "sample_dt",
                format!("must be > 0, got {}", self.dt),
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        ((self.t_end - self.t_start) / self.dt + 0.5).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.t_start + i as f64 * self.dt).collect()
    }

    pub fn span(&self) -> f64 {
        self.t_end - self.t_start
    }
}

/// Sampled time series of the observables shared by all models.
///
/// For the quantum model the entries are master-equation expectation values;
/// the semiclassical models fill them with their factorized counterparts,
/// e.g. `cross_coherence = ⟨a⟩*·⟨σ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeTrace {
    pub times: Vec<f64>,
    /// ⟨a†a⟩
    pub cavity_photon: Vec<f64>,
    /// ⟨σ†σ⟩
    pub qd_population: Vec<f64>,
    pub mean_a: Vec<C64>,
    pub mean_sigma: Vec<C64>,
    pub mean_sigma_z: Vec<f64>,
    /// ⟨a†σ⟩
    pub cross_coherence: Vec<C64>,
}

impl TimeTrace {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            times: Vec::with_capacity(n),
            cavity_photon: Vec::with_capacity(n),
            qd_population: Vec::with_capacity(n),
            mean_a: Vec::with_capacity(n),
            mean_sigma: Vec::with_capacity(n),
            mean_sigma_z: Vec::with_capacity(n),
            cross_coherence: Vec::with_capacity(n),
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    #[allow(clippy::too_many_arguments)]
    pub fn push(
        &mut self,
        t: f64,
        cavity_photon: f64,
        qd_population: f64,
        mean_a: C64,
        mean_sigma: C64,
        mean_sigma_z: f64,
        cross_coherence: C64,
    ) {
        self.times.push(t);
        self.cavity_photon.push(cavity_photon);
        self.qd_population.push(qd_population);
        self.mean_a.push(mean_a);
        self.mean_sigma.push(mean_sigma);
        self.mean_sigma_z.push(mean_sigma_z);
        self.cross_coherence.push(cross_coherence);
    }

    /// Largest ⟨a†a⟩ on the grid (0 for an empty trace).
    pub fn peak_cavity_photon(&self) -> f64 {
        self.cavity_photon.iter().cloned().fold(0.0_f64, f64::max)
    }

    /// Range checks on the stored observables: photon number and population
    /// non-negative (to 1e−8), population ≤ 1, ⟨σ_z⟩ within [−1, 1].
    pub fn validate_ranges(&self) -> Result<()> {
        const EPS: f64 = 1e-8;
        for (i, &t) in self.times.iter().enumerate() {
            if self.cavity_photon[i] < -EPS {
                return Err(Error::InvariantViolation {
                    quantity: "cavity_photon >= 0",
                    t,
                    value: self.cavity_photon[i],
                    limit: -EPS,
                });
            }
            let p = self.qd_population[i];
            if !(-EPS..=1.0 + EPS).contains(&p) {
                return Err(Error::InvariantViolation {
                    quantity: "qd_population in [0, 1]",
                    t,
                    value: p,
                    limit: EPS,
                });
            }
            let sz = self.mean_sigma_z[i];
            if !(-1.0 - EPS..=1.0 + EPS).contains(&sz) {
                return Err(Error::InvariantViolation {
                    quantity: "mean_sigma_z in [-1, 1]",
                    t,
                    value: sz,
                    limit: EPS,
                });
            }
        }
        Ok(())
    }
}

/// Which dynamical model produced (or should produce) a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Quantum,
    Linear,
    Nonlinear,
    Classical,
}

impl Model {
    pub const ALL: [Model; 4] = [Model::Quantum, Model::Linear, Model::Nonlinear, Model::Classical];

    pub fn name(&self) -> &'static str {
        match self {
            Model::Quantum => "quantum",
            Model::Linear => "linear",
            Model::Nonlinear => "nonlinear",
            Model::Classical => "classical",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "quantum" => Ok(Model::Quantum),
            "linear" => Ok(Model::Linear),
            "nonlinear" => Ok(Model::Nonlinear),
            "classical" => Ok(Model::Classical),
            other => Err(Error::invalid(
                "model",
                format!("unknown model `{other}` (expected quantum|linear|nonlinear|classical)"),
            )),
        }
    }
}

/// Drive-term normalization for the semiclassical models.
///
/// `Hamiltonian` (default) uses the drive derived from the driven Hamiltonian,
/// −Ω(t) in d⟨a⟩/dt. `SqrtKappa` scales the semiclassical drive by √κ,
/// matching the input-coupling form −√κ·Ω(t) sometimes used for mean-field
/// equations. The quantum engine always drives through the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DriveNorm {
    #[default]
    Hamiltonian,
    SqrtKappa,
}

impl DriveNorm {
    /// Multiplicative factor applied to Ω(t) in the semiclassical ⟨a⟩ equation.
    pub fn factor(&self, kappa: f64) -> f64 {
        match self {
            DriveNorm::Hamiltonian => 1.0,
            DriveNorm::SqrtKappa => kappa.sqrt(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DriveNorm::Hamiltonian => "hamiltonian",
            DriveNorm::SqrtKappa => "sqrt_kappa",
        }
    }
}

impl fmt::Display for DriveNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DriveNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "hamiltonian" => Ok(DriveNorm::Hamiltonian),
            "sqrt_kappa" => Ok(DriveNorm::SqrtKappa),
            other => Err(Error::invalid(
                "drive_norm",
                format!("unknown drive normalization `{other}` (expected hamiltonian|sqrt_kappa)"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_conversion_matches_definition() {
        // g/2π = 25 GHz must become 2π·0.025 rad/ps.
        let g = ghz_to_angular(25.0);
        assert!((g - 2.0 * PI * 0.025).abs() < 1e-15);
        assert!((angular_to_ghz(g) - 25.0).abs() < 1e-12);
    }

    #[test]
    fn pulse_envelope_peaks_at_one() {
        let p = PulseSpec::from_ghz(1.0, 5.0, 3.0);
        assert!((p.envelope(3.0) - 1.0).abs() < 1e-15);
        // Intensity FWHM: p(t_center ± fwhm/2) = 1/2.
        assert!((p.envelope(3.0 + 2.5) - 0.5).abs() < 1e-12);
        assert!((p.envelope(3.0 - 2.5) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn grid_len_and_times() {
        let g = TimeGrid::new(-1.0, 1.0, 0.5).unwrap();
        assert_eq!(g.len(), 5);
        let ts = g.times();
        assert_eq!(ts.len(), 5);
        assert!((ts[4] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negative_rate_rejected() {
        let p = SystemParams::from_ghz(25.0, -1.0, 1.0, 0.0, 0.0, 0.0);
        assert!(p.validate().is_err());
    }

    #[test]
    fn model_round_trip() {
        for m in Model::ALL {
            assert_eq!(m.name().parse::<Model>().unwrap(), m);
        }
        assert!("quantum2".parse::<Model>().is_err());
    }
}
