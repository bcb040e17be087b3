//! Configuration files and CSV output.
//!
//! The config format is flat `key = value` under `[section]` headers, with
//! `#` comments. Humans write GHz and ps here; [`RunConfig`] stores exactly
//! those boundary-unit numbers (so serialize → parse round-trips bit for
//! bit) and converts to internal rad/ps only in its accessors.
//!
//! ```text
//! [system]
//! g_ghz = 25            # coherent coupling g/2π
//! kappa_ghz = 29        # cavity field decay κ/2π
//! gamma_ghz = 1         # dipole decay γ/2π
//! gamma_d_ghz = 0       # pure dephasing γ_d/2π
//! delta_c_ghz = 0       # cavity-laser detuning Δc/2π
//! delta_a_ghz = 0       # QD-laser detuning Δa/2π
//!
//! [pulse]
//! omega0_ghz = 1        # peak drive Ω0/2π
//! fwhm_ps = 5
//! t_center_ps = 0
//!
//! [grid]
//! t_start_ps = -20
//! t_end_ps = 200
//! sample_dt_ps = 0.1
//!
//! [run]
//! models = quantum,linear,nonlinear
//! n_max = 20
//! drive_norm = hamiltonian    # or sqrt_kappa
//! output_prefix = out/run
//! workers = 0                 # 0 = all cores
//!
//! [sweep]                     # optional
//! parameter = g               # g|kappa|delta|gamma_d|fwhm|omega0
//! values = 10,15,20,25,30     # GHz (ps when parameter = fwhm)
//! models = quantum
//! ```
//!
//! Unknown or duplicate keys are errors, every diagnostic carries the line
//! and field name, and missing optional keys fall back to the defaults shown
//! above ([system]/[pulse] rates are required).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;

use crate::analysis::SpectrumTrace;
use crate::error::{Error, Result};
use crate::experiments::{SweepResult, SweepSpec, SweptParameter};
use crate::types::{
    angular_to_ghz, ghz_to_angular, DriveNorm, Model, PulseSpec, SystemParams, TimeGrid, TimeTrace,
};

/// Sweep block of a [`RunConfig`], in boundary units (GHz, or ps for fwhm).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub parameter: SweptParameter,
    pub values: Vec<f64>,
    /// Overrides the run-level model list when present.
    pub models: Option<Vec<Model>>,
}

/// A fully parsed run configuration in boundary units.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub g_ghz: f64,
    pub kappa_ghz: f64,
    pub gamma_ghz: f64,
    pub gamma_d_ghz: f64,
    pub delta_c_ghz: f64,
    pub delta_a_ghz: f64,
    pub omega0_ghz: f64,
    pub fwhm_ps: f64,
    pub t_center_ps: f64,
    pub t_start_ps: f64,
    pub t_end_ps: f64,
    pub sample_dt_ps: f64,
    pub models: Vec<Model>,
    pub n_max: usize,
    pub drive_norm: DriveNorm,
    pub output_prefix: String,
    pub workers: usize,
    pub sweep: Option<SweepConfig>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            g_ghz: 25.0,
            kappa_ghz: 29.0,
            gamma_ghz: 1.0,
            gamma_d_ghz: 0.0,
            delta_c_ghz: 0.0,
            delta_a_ghz: 0.0,
            omega0_ghz: 1.0,
            fwhm_ps: 5.0,
            t_center_ps: 0.0,
            t_start_ps: -20.0,
            t_end_ps: 200.0,
            sample_dt_ps: 0.1,
            models: vec![Model::Quantum],
            n_max: 20,
            drive_norm: DriveNorm::Hamiltonian,
            output_prefix: "run".to_string(),
            workers: 0,
            sweep: None,
        }
    }
}

impl RunConfig {
    /// System rates/detunings converted to rad/ps.
    pub fn params(&self) -> SystemParams {
        SystemParams::from_ghz(
            self.g_ghz,
            self.kappa_ghz,
            self.gamma_ghz,
            self.gamma_d_ghz,
            self.delta_c_ghz,
            self.delta_a_ghz,
        )
    }

    pub fn pulse(&self) -> PulseSpec {
        PulseSpec::from_ghz(self.omega0_ghz, self.fwhm_ps, self.t_center_ps)
    }

    pub fn grid(&self) -> TimeGrid {
        TimeGrid {
            t_start: self.t_start_ps,
            t_end: self.t_end_ps,
            dt: self.sample_dt_ps,
        }
    }

    /// Materialize the sweep block (values converted to internal units).
    pub fn sweep_spec(&self) -> Option<SweepSpec> {
        let sweep = self.sweep.as_ref()?;
        let values = if sweep.parameter.is_time() {
            sweep.values.clone()
        } else {
            sweep.values.iter().map(|&v| ghz_to_angular(v)).collect()
        };
        Some(SweepSpec {
            parameter: sweep.parameter,
            values,
            base_params: self.params(),
            base_pulse: self.pulse(),
            grid: self.grid(),
            models: sweep.models.clone().unwrap_or_else(|| self.models.clone()),
            n_max: self.n_max,
            drive_norm: self.drive_norm,
            workers: self.workers,
        })
    }

    /// Serialize back to the config text format; `parse_config` of the output
    /// yields an equal `RunConfig`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[system]");
        let _ = writeln!(s, "g_ghz = {}", self.g_ghz);
        let _ = writeln!(s, "kappa_ghz = {}", self.kappa_ghz);
        let _ = writeln!(s, "gamma_ghz = {}", self.gamma_ghz);
        let _ = writeln!(s, "gamma_d_ghz = {}", self.gamma_d_ghz);
        let _ = writeln!(s, "delta_c_ghz = {}", self.delta_c_ghz);
        let _ = writeln!(s, "delta_a_ghz = {}", self.delta_a_ghz);
        let _ = writeln!(s, "\n[pulse]");
        let _ = writeln!(s, "omega0_ghz = {}", self.omega0_ghz);
        let _ = writeln!(s, "fwhm_ps = {}", self.fwhm_ps);
        let _ = writeln!(s, "t_center_ps = {}", self.t_center_ps);
        let _ = writeln!(s, "\n[grid]");
        let _ = writeln!(s, "t_start_ps = {}", self.t_start_ps);
        let _ = writeln!(s, "t_end_ps = {}", self.t_end_ps);
        let _ = writeln!(s, "sample_dt_ps = {}", self.sample_dt_ps);
        let _ = writeln!(s, "\n[run]");
        let models: Vec<&str> = self.models.iter().map(|m| m.name()).collect();
        let _ = writeln!(s, "models = {}", models.join(","));
        let _ = writeln!(s, "n_max = {}", self.n_max);
        let _ = writeln!(s, "drive_norm = {}", self.drive_norm);
        let _ = writeln!(s, "output_prefix = {}", self.output_prefix);
        let _ = writeln!(s, "workers = {}", self.workers);
        if let Some(sweep) = &self.sweep {
            let _ = writeln!(s, "\n[sweep]");
            let _ = writeln!(s, "parameter = {}", sweep.parameter);
            let values: Vec<String> = sweep.values.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "values = {}", values.join(","));
            if let Some(models) = &sweep.models {
                let names: Vec<&str> = models.iter().map(|m| m.name()).collect();
                let _ = writeln!(s, "models = {}", names.join(","));
            }
        }
        s
    }
}

const SECTIONS: [&str; 5] = ["system", "pulse", "grid", "run", "sweep"];

fn config_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("line {line}: {msg}"))
}

/// Raw key table: (section, key) → (value, line).
struct RawConfig {
    entries: BTreeMap<(String, String), (String, usize)>,
}

impl RawConfig {
    fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut section: Option<String> = None;
        for (i, raw_line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = match raw_line.split_once('#') {
                Some((head, _)) => head.trim(),
                None => raw_line.trim(),
            };
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let name = name.trim().to_string();
                if !SECTIONS.contains(&name.as_str()) {
                    return Err(config_err(
                        lineno,
                        format!("unknown section `[{name}]` (expected one of {SECTIONS:?})"),
                    ));
                }
                section = Some(name);
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(config_err(lineno, format!("expected `key = value`, got `{line}`")));
            };
            let Some(section) = section.clone() else {
                return Err(config_err(
                    lineno,
                    "key before any [section] header".to_string(),
                ));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if let Some((_, first_line)) =
                entries.insert((section.clone(), key.clone()), (value, lineno))
            {
                return Err(Error::Config(format!(
                    "duplicate key `{key}` in [{section}] (lines {first_line} and {lineno})"
                )));
            }
        }
        Ok(Self { entries })
    }

    fn take(&mut self, section: &str, key: &str) -> Option<(String, usize)> {
        self.entries.remove(&(section.to_string(), key.to_string()))
    }

    fn take_f64(&mut self, section: &str, key: &str) -> Result<Option<(f64, usize)>> {
        match self.take(section, key) {
            None => Ok(None),
            Some((v, line)) => {
                let parsed: f64 = v.parse().map_err(|_| {
                    config_err(line, format!("`{key}`: expected a number, got `{v}`"))
                })?;
                if !parsed.is_finite() {
                    return Err(config_err(line, format!("`{key}`: must be finite")));
                }
                Ok(Some((parsed, line)))
            }
        }
    }

    fn finish(self) -> Result<()> {
        if let Some(((section, key), (_, line))) = self.entries.into_iter().next() {
            return Err(config_err(
                line,
                format!("unknown key `{key}` in [{section}]"),
            ));
        }
        Ok(())
    }
}

fn require(
    entry: Result<Option<(f64, usize)>>,
    section: &str,
    key: &str,
) -> Result<(f64, usize)> {
    entry?.ok_or_else(|| Error::Config(format!("missing required key `{key}` in [{section}]")))
}

fn non_negative(value: (f64, usize), key: &str) -> Result<f64> {
    if value.0 < 0.0 {
        return Err(config_err(
            value.1,
            format!("`{key}`: must be ≥ 0, got {}", value.0),
        ));
    }
    Ok(value.0)
}

/// Parse and fully validate a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut raw = RawConfig::parse(text)?;
    let defaults = RunConfig::default();

    let g = non_negative(require(raw.take_f64("system", "g_ghz"), "system", "g_ghz")?, "g_ghz")?;
    let kappa = non_negative(
        require(raw.take_f64("system", "kappa_ghz"), "system", "kappa_ghz")?,
        "kappa_ghz",
    )?;
    let gamma = non_negative(
        require(raw.take_f64("system", "gamma_ghz"), "system", "gamma_ghz")?,
        "gamma_ghz",
    )?;
    let gamma_d = match raw.take_f64("system", "gamma_d_ghz")? {
        Some(v) => non_negative(v, "gamma_d_ghz")?,
        None => defaults.gamma_d_ghz,
    };
    let delta_c = raw
        .take_f64("system", "delta_c_ghz")?
        .map_or(defaults.delta_c_ghz, |(v, _)| v);
    let delta_a = raw
        .take_f64("system", "delta_a_ghz")?
        .map_or(defaults.delta_a_ghz, |(v, _)| v);

    let omega0 = non_negative(
        require(raw.take_f64("pulse", "omega0_ghz"), "pulse", "omega0_ghz")?,
        "omega0_ghz",
    )?;
    let fwhm = require(raw.take_f64("pulse", "fwhm_ps"), "pulse", "fwhm_ps")?;
    if fwhm.0 <= 0.0 {
        return Err(config_err(fwhm.1, format!("`fwhm_ps`: must be > 0, got {}", fwhm.0)));
    }
    let t_center = raw
        .take_f64("pulse", "t_center_ps")?
        .map_or(defaults.t_center_ps, |(v, _)| v);

    let t_start = raw
        .take_f64("grid", "t_start_ps")?
        .map_or(defaults.t_start_ps, |(v, _)| v);
    let (t_end, t_end_line) = raw
        .take_f64("grid", "t_end_ps")?
        .map_or((defaults.t_end_ps, 0), |(v, l)| (v, l));
    if t_end <= t_start {
        return Err(config_err(
            t_end_line,
            format!("`t_end_ps`: must exceed t_start_ps ({t_start}), got {t_end}"),
        ));
    }
    let sample_dt = match raw.take_f64("grid", "sample_dt_ps")? {
        Some((v, line)) if v <= 0.0 => {
            return Err(config_err(line, format!("`sample_dt_ps`: must be > 0, got {v}")));
        }
        Some((v, _)) => v,
        None => defaults.sample_dt_ps,
    };

    let models = match raw.take("run", "models") {
        Some((v, line)) => parse_model_list(&v, line)?,
        None => defaults.models.clone(),
    };
    let n_max = match raw.take("run", "n_max") {
        Some((v, line)) => {
            let n: usize = v
                .parse()
                .map_err(|_| config_err(line, format!("`n_max`: expected an integer, got `{v}`")))?;
            if n < 1 {
                return Err(config_err(line, "`n_max`: must be ≥ 1"));
            }
            n
        }
        None => defaults.n_max,
    };
    let drive_norm = match raw.take("run", "drive_norm") {
        Some((v, line)) => v
            .parse()
            .map_err(|e: Error| config_err(line, e.to_string()))?,
        None => defaults.drive_norm,
    };
    let output_prefix = raw
        .take("run", "output_prefix")
        .map_or(defaults.output_prefix.clone(), |(v, _)| v);
    let workers = match raw.take("run", "workers") {
        Some((v, line)) => v
            .parse()
            .map_err(|_| config_err(line, format!("`workers`: expected an integer, got `{v}`")))?,
        None => defaults.workers,
    };

    let sweep = match raw.take("sweep", "parameter") {
        None => {
            // A values/models key without a parameter is an error surfaced by
            // the unknown-key check below.
            None
        }
        Some((pname, pline)) => {
            let parameter: SweptParameter = pname
                .parse()
                .map_err(|e: Error| config_err(pline, e.to_string()))?;
            let (vals, vline) = raw.take("sweep", "values").ok_or_else(|| {
                Error::Config("missing required key `values` in [sweep]".to_string())
            })?;
            let mut values = Vec::new();
            for item in vals.split(',') {
                let v: f64 = item.trim().parse().map_err(|_| {
                    config_err(vline, format!("`values`: expected numbers, got `{item}`"))
                })?;
                values.push(v);
            }
            if !values.windows(2).all(|w| w[1] > w[0]) {
                return Err(config_err(
                    vline,
                    "`values`: must be strictly increasing".to_string(),
                ));
            }
            let models = match raw.take("sweep", "models") {
                Some((v, line)) => Some(parse_model_list(&v, line)?),
                None => None,
            };
            Some(SweepConfig {
                parameter,
                values,
                models,
            })
        }
    };

    raw.finish()?;

    let cfg = RunConfig {
        g_ghz: g,
        kappa_ghz: kappa,
        gamma_ghz: gamma,
        gamma_d_ghz: gamma_d,
        delta_c_ghz: delta_c,
        delta_a_ghz: delta_a,
        omega0_ghz: omega0,
        fwhm_ps: fwhm.0,
        t_center_ps: t_center,
        t_start_ps: t_start,
        t_end_ps: t_end,
        sample_dt_ps: sample_dt,
        models,
        n_max,
        drive_norm,
        output_prefix,
        workers,
        sweep,
    };
    // Belt and braces: the converted values must satisfy the domain types.
    cfg.params().validate()?;
    cfg.pulse().validate()?;
    cfg.grid().validate()?;
    Ok(cfg)
}

fn parse_model_list(text: &str, line: usize) -> Result<Vec<Model>> {
    let mut models = Vec::new();
    for item in text.split(',') {
        let model: Model = item
            .trim()
            .parse()
            .map_err(|e: Error| config_err(line, e.to_string()))?;
        if !models.contains(&model) {
            models.push(model);
        }
    }
    if models.is_empty() {
        return Err(config_err(line, "`models`: list must be non-empty"));
    }
    Ok(models)
}

/// Read a config file from disk.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

pub const TRACE_CSV_HEADER: &str =
    "t_ps,cavity_photon,qd_population,re_a,im_a,re_sigma,im_sigma,sigma_z,re_adag_sigma,im_adag_sigma";

/// Write a trace as CSV: one row per sample, full-precision (round-trip)
/// decimal floats, byte-deterministic for identical traces.
pub fn write_trace_csv(trace: &TimeTrace, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| Error::io(path, e))?;
        }
    }
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let res: std::io::Result<()> = (|| {
        writeln!(w, "{TRACE_CSV_HEADER}")?;
        for i in 0..trace.len() {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                trace.times[i],
                trace.cavity_photon[i],
                trace.qd_population[i],
                trace.mean_a[i].re,
                trace.mean_a[i].im,
                trace.mean_sigma[i].re,
                trace.mean_sigma[i].im,
                trace.mean_sigma_z[i],
                trace.cross_coherence[i].re,
                trace.cross_coherence[i].im,
            )?;
        }
        w.flush()
    })();
    res.map_err(|e| Error::io(path, e))
}

/// Parse a trace CSV written by [`write_trace_csv`].
pub fn read_trace_csv(path: &Path) -> Result<TimeTrace> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == TRACE_CSV_HEADER => {}
        other => {
            return Err(Error::Config(format!(
                "{}: unexpected trace header {:?}",
                path.display(),
                other
            )));
        }
    }
    let mut trace = TimeTrace::with_capacity(16);
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(Error::Config(format!(
                "{}: row {} has {} fields, expected 10",
                path.display(),
                i + 2,
                fields.len()
            )));
        }
        let nums: Vec<f64> = fields
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Config(format!("{}: row {}: {e}", path.display(), i + 2)))?;
        trace.push(
            nums[0],
            nums[1],
            nums[2],
            C64::new(nums[3], nums[4]),
            C64::new(nums[5], nums[6]),
            nums[7],
            C64::new(nums[8], nums[9]),
        );
    }
    Ok(trace)
}

/// Write a transmission spectrum (detuning axis converted to GHz).
pub fn write_spectrum_csv(spectrum: &SpectrumTrace, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let res: std::io::Result<()> = (|| {
        writeln!(w, "detuning_ghz,transmission")?;
        for i in 0..spectrum.detunings.len() {
            writeln!(
                w,
                "{},{}",
                angular_to_ghz(spectrum.detunings[i]),
                spectrum.transmission[i]
            )?;
        }
        w.flush()
    })();
    res.map_err(|e| Error::io(path, e))
}

/// Write the drive envelope sampled on a grid.
pub fn write_pulse_csv(pulse: &PulseSpec, grid: &TimeGrid, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let res: std::io::Result<()> = (|| {
        writeln!(w, "t_ps,envelope")?;
        for t in grid.times() {
            writeln!(w, "{},{}", t, pulse.envelope(t))?;
        }
        w.flush()
    })();
    res.map_err(|e| Error::io(path, e))
}

/// Boundary-unit value of a swept parameter for file names and summaries.
fn sweep_value_out(parameter: SweptParameter, value: f64) -> f64 {
    if parameter.is_time() {
        value
    } else {
        angular_to_ghz(value)
    }
}

/// Write every trace of a sweep plus a summary table. Returns the paths
/// written; trace files are named `{prefix}_{parameter}_{value}_{model}.csv`
/// with the value in GHz (ps for fwhm sweeps).
pub fn write_sweep_csvs(result: &SweepResult, prefix: &str) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let param = result.spec.parameter;
    for st in &result.traces {
        let value = sweep_value_out(param, st.value);
        let path = PathBuf::from(format!("{prefix}_{param}_{value:.4}_{}.csv", st.model));
        write_trace_csv(&st.trace, &path)?;
        written.push(path);
    }
    let summary_path = PathBuf::from(format!("{prefix}_{param}_summary.csv"));
    let unit = if param.is_time() { "ps" } else { "ghz" };
    let file = fs::File::create(&summary_path).map_err(|e| Error::io(&summary_path, e))?;
    let mut w = BufWriter::new(file);
    let res: std::io::Result<()> = (|| {
        writeln!(
            w,
            "{param}_{unit},peak_separation_ps,oscillation_contrast,coherence_integral,peak_cavity_photon,peak_output_flux"
        )?;
        for s in &result.summaries {
            let sep = s.peak_separation.map_or(String::new(), |v| v.to_string());
            let coh = s
                .coherence_integral
                .map_or(String::new(), |v| v.to_string());
            writeln!(
                w,
                "{},{},{},{},{},{}",
                sweep_value_out(param, s.value),
                sep,
                s.oscillation_contrast,
                coh,
                s.peak_cavity_photon,
                s.peak_output_flux
            )?;
        }
        w.flush()
    })();
    res.map_err(|e| Error::io(&summary_path, e))?;
    written.push(summary_path);
    Ok(written)
}
