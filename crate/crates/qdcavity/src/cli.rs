//! Command-line interface: single runs, sweeps, spectra, eigenvalues, the
//! figure experiment drivers, and a self-check suite.

use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

use crate::analysis::{
    max_normalized_deviation, peak_separation, polariton_eigenvalues, transmission_spectrum,
    is_strong_coupling,
};
use crate::error::{Error, Result};
use crate::experiments::{
    fig2_default_omega0s, fig3_spec, fig4_default_fwhms, run_fig1, run_fig2, run_fig4, run_model,
    run_sweep, Fig3Panel, SweepResult,
};
use crate::hilbert::build_operators;
use crate::io::{load_config, write_pulse_csv, write_spectrum_csv, write_sweep_csvs, write_trace_csv};
use crate::linalg::max_abs;
use crate::quantum::{
    check_truncation, evolve_master_with_report, HERMITICITY_TOL, MIN_EIGENVALUE_FLOOR, TRACE_TOL,
};
use crate::types::{
    angular_to_ghz, ghz_to_angular, Model, PulseSpec, SystemParams, TimeGrid,
};

#[derive(Parser)]
#[command(
    name = "qdcavity",
    version,
    about = "Pulse-driven strongly coupled quantum dot-cavity dynamics: quantum and semiclassical models, sweeps, spectra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SystemFlags {
    /// Coherent coupling g/2π in GHz
    #[arg(long, default_value_t = 25.0)]
    g: f64,
    /// Cavity field decay κ/2π in GHz
    #[arg(long, default_value_t = 29.0)]
    kappa: f64,
    /// Dipole decay γ/2π in GHz
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Pure dephasing γ_d/2π in GHz
    #[arg(long, default_value_t = 0.0)]
    gamma_d: f64,
    /// Dot-cavity detuning δ/2π in GHz (laser stays on the cavity)
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
}

impl SystemFlags {
    fn params(&self) -> SystemParams {
        SystemParams::from_ghz(self.g, self.kappa, self.gamma, self.gamma_d, 0.0, -self.delta)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured models once and write one trace CSV per model
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's output prefix
        #[arg(long)]
        out_prefix: Option<String>,
    },
    /// Run the sweep block of a config file
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_prefix: Option<String>,
        /// Override the config's worker count
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Weak-probe transmission spectrum of the coupled system
    Spectrum {
        #[command(flatten)]
        system: SystemFlags,
        /// Half-width of the detuning scan in GHz
        #[arg(long, default_value_t = 80.0)]
        span: f64,
        #[arg(long, default_value_t = 2001)]
        points: usize,
        #[arg(long, default_value = "spectrum.csv")]
        out: PathBuf,
    },
    /// Dressed eigenfrequencies and the polariton splitting
    Eigen {
        #[command(flatten)]
        system: SystemFlags,
    },
    /// Reproduce a figure experiment: 1, 2, 3a, 3b, 3c, 3d or 4
    Fig {
        /// Which experiment: 1 | 2 | 3a | 3b | 3c | 3d | 4
        which: String,
        #[arg(long)]
        out_prefix: Option<String>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Output sampling step in ps
        #[arg(long)]
        sample_dt: Option<f64>,
        /// End of the integration window in ps
        #[arg(long)]
        t_end: Option<f64>,
        /// Drive strengths Ω0/2π in GHz (fig 2)
        #[arg(long, value_delimiter = ',')]
        drives: Option<Vec<f64>>,
        /// Sweep values in GHz (fig 3 panels)
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        /// Pulse durations in ps (fig 4)
        #[arg(long, value_delimiter = ',')]
        fwhms: Option<Vec<f64>>,
    },
    /// Run the invariant and convergence self-checks
    Check {
        /// Use coarser grids for a faster pass
        #[arg(long)]
        fast: bool,
    },
}

/// Entry point shared by the binary and the tests; returns the exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Simulate { config, out_prefix } => {
            let cfg = load_config(&config)?;
            let prefix = out_prefix.unwrap_or_else(|| cfg.output_prefix.clone());
            let (params, pulse, grid) = (cfg.params(), cfg.pulse(), cfg.grid());
            for model in &cfg.models {
                let trace = run_model(*model, &params, &pulse, &grid, cfg.n_max, cfg.drive_norm)?;
                let path = PathBuf::from(format!("{prefix}_{model}.csv"));
                write_trace_csv(&trace, &path)?;
                println!(
                    "{model}: wrote {} ({} samples, peak <a†a> = {:.4e})",
                    path.display(),
                    trace.len(),
                    trace.peak_cavity_photon()
                );
            }
            Ok(0)
        }
        Command::Sweep {
            config,
            out_prefix,
            workers,
        } => {
            let cfg = load_config(&config)?;
            let mut spec = cfg.sweep_spec().ok_or_else(|| {
                Error::Config("config has no [sweep] section".to_string())
            })?;
            if let Some(w) = workers {
                spec.workers = w;
            }
            let prefix = out_prefix.unwrap_or_else(|| cfg.output_prefix.clone());
            let result = run_sweep(&spec)?;
            let written = write_sweep_csvs(&result, &prefix)?;
            print_summaries(&result);
            println!("wrote {} files under {prefix}_*", written.len());
            Ok(0)
        }
        Command::Spectrum {
            system,
            span,
            points,
            out,
        } => {
            let params = system.params();
            let span = ghz_to_angular(span);
            let n = points.max(3);
            let detunings: Vec<f64> = (0..n)
                .map(|i| span * (2.0 * i as f64 / (n - 1) as f64 - 1.0))
                .collect();
            let spectrum = transmission_spectrum(&params, &detunings)?;
            write_spectrum_csv(&spectrum, &out)?;
            let pol = polariton_eigenvalues(&params);
            println!("wrote {} ({} points)", out.display(), n);
            println!(
                "strong coupling: {}; Re splitting / 2pi = {:.4} GHz",
                if is_strong_coupling(&params) { "yes" } else { "no" },
                angular_to_ghz(pol.splitting())
            );
            Ok(0)
        }
        Command::Eigen { system } => {
            let params = system.params();
            let pol = polariton_eigenvalues(&params);
            let (p, m) = (pol.omega_plus, pol.omega_minus);
            println!(
                "omega_plus/2pi  = {:+.4} {:+.4}i GHz",
                angular_to_ghz(p.re),
                angular_to_ghz(p.im)
            );
            println!(
                "omega_minus/2pi = {:+.4} {:+.4}i GHz",
                angular_to_ghz(m.re),
                angular_to_ghz(m.im)
            );
            println!("splitting/2pi   = {:.4} GHz", angular_to_ghz(pol.splitting()));
            println!(
                "strong coupling: {}",
                if is_strong_coupling(&params) { "yes" } else { "no" }
            );
            Ok(0)
        }
        Command::Fig {
            which,
            out_prefix,
            workers,
            sample_dt,
            t_end,
            drives,
            values,
            fwhms,
        } => run_fig_command(
            &which, out_prefix, workers, sample_dt, t_end, drives, values, fwhms,
        ),
        Command::Check { fast } => run_check(fast),
    }
}

fn print_summaries(result: &SweepResult) {
    let param = result.spec.parameter;
    println!("{param:>10}  peak_sep_ps  contrast  peak_photon");
    for s in &result.summaries {
        let value = if param.is_time() {
            s.value
        } else {
            angular_to_ghz(s.value)
        };
        let sep = s
            .peak_separation
            .map_or("    -   ".to_string(), |v| format!("{v:8.2}"));
        println!(
            "{value:10.3}  {sep}  {:8.4}  {:.4e}",
            s.oscillation_contrast, s.peak_cavity_photon
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn run_fig_command(
    which: &str,
    out_prefix: Option<String>,
    workers: usize,
    sample_dt: Option<f64>,
    t_end: Option<f64>,
    drives: Option<Vec<f64>>,
    values: Option<Vec<f64>>,
    fwhms: Option<Vec<f64>>,
) -> Result<i32> {
    let params = crate::experiments::reference_params();
    let pulse = crate::experiments::reference_pulse();
    let mut grid = crate::experiments::reference_grid();
    if let Some(dt) = sample_dt {
        grid.dt = dt;
    }
    if let Some(te) = t_end {
        grid.t_end = te;
    }

    match which {
        "1" => {
            let prefix = out_prefix.unwrap_or_else(|| "fig1".to_string());
            let result = run_fig1(&params, &pulse, &grid)?;
            for model in [Model::Quantum, Model::Linear, Model::Nonlinear] {
                let trace = result.trace_for(pulse.omega0, model).expect("model ran");
                let path = PathBuf::from(format!("{prefix}_{model}.csv"));
                write_trace_csv(trace, &path)?;
                println!("wrote {}", path.display());
            }
            let path = PathBuf::from(format!("{prefix}_pulse.csv"));
            write_pulse_csv(&pulse, &grid, &path)?;
            println!("wrote {}", path.display());

            let q = result.trace_for(pulse.omega0, Model::Quantum).unwrap();
            let l = result.trace_for(pulse.omega0, Model::Linear).unwrap();
            let n = result.trace_for(pulse.omega0, Model::Nonlinear).unwrap();
            println!(
                "max pairwise deviation (normalized): q/l {:.4}, q/n {:.4}, l/n {:.4}",
                max_normalized_deviation(q, l),
                max_normalized_deviation(q, n),
                max_normalized_deviation(l, n)
            );
            if let Some(sep) = peak_separation(q) {
                println!("quantum oscillation period: {sep:.2} ps");
            }
            Ok(0)
        }
        "2" => {
            let prefix = out_prefix.unwrap_or_else(|| "fig2".to_string());
            let omega0s: Vec<f64> = drives
                .map(|ds| ds.into_iter().map(ghz_to_angular).collect())
                .unwrap_or_else(fig2_default_omega0s);
            let mut spec_grid = grid;
            spec_grid.dt = sample_dt.unwrap_or(0.25);
            let result = run_fig2(&params, &pulse, &spec_grid, &omega0s)?;
            let written = write_sweep_csvs(&result, &prefix)?;
            println!("omega0_ghz  deviation(q,nl)  coherence");
            for s in &result.summaries {
                let q = result.trace_for(s.value, Model::Quantum).unwrap();
                let n = result.trace_for(s.value, Model::Nonlinear).unwrap();
                println!(
                    "{:10.2}  {:15.4}  {:.6e}",
                    angular_to_ghz(s.value),
                    max_normalized_deviation(q, n),
                    s.coherence_integral.unwrap_or(0.0)
                );
            }
            println!("wrote {} files", written.len());
            Ok(0)
        }
        "3a" | "3b" | "3c" | "3d" => {
            let prefix = out_prefix.unwrap_or_else(|| format!("fig{which}"));
            let panel: Fig3Panel = which.parse()?;
            let mut spec = fig3_spec(panel);
            spec.workers = workers;
            if let Some(dt) = sample_dt {
                spec.grid.dt = dt;
            }
            if let Some(te) = t_end {
                spec.grid.t_end = te;
            }
            if let Some(vals) = values {
                spec.values = vals.into_iter().map(ghz_to_angular).collect();
            }
            let result = run_sweep(&spec)?;
            let written = write_sweep_csvs(&result, &prefix)?;
            print_summaries(&result);
            println!("wrote {} files", written.len());
            Ok(0)
        }
        "4" => {
            let prefix = out_prefix.unwrap_or_else(|| "fig4".to_string());
            let list = fwhms.unwrap_or_else(fig4_default_fwhms);
            let result = run_fig4(&list)?;
            let written = write_sweep_csvs(&result, &prefix)?;
            print_summaries(&result);
            println!("wrote {} files", written.len());
            Ok(0)
        }
        other => Err(Error::invalid(
            "fig",
            format!("unknown figure `{other}` (expected 1|2|3a|3b|3c|3d|4)"),
        )),
    }
}

fn check_line(name: &str, pass: bool, detail: String) -> bool {
    println!("[{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn run_check(fast: bool) -> Result<i32> {
    let mut all = true;
    let params = crate::experiments::reference_params();
    let pulse = crate::experiments::reference_pulse();
    let dt = if fast { 0.5 } else { 0.1 };
    let t_end = if fast { 120.0 } else { 200.0 };
    let grid = TimeGrid {
        t_start: -20.0,
        t_end,
        dt,
    };

    // Operator identities on the default truncation.
    let ops = build_operators(20)?;
    let identity_err = {
        let e1 = max_abs(&(&ops.sigma_dag.dot(&ops.sigma) + &ops.sigma.dot(&ops.sigma_dag) - &ops.identity));
        let e2 = max_abs(&(&ops.sigma_dag.dot(&ops.sigma) - &ops.sigma.dot(&ops.sigma_dag) - &ops.sigma_z));
        let e3 = max_abs(&ops.sigma.dot(&ops.sigma));
        e1.max(e2).max(e3)
    };
    all &= check_line(
        "two-level operator identities",
        identity_err == 0.0,
        format!("max deviation {identity_err:.1e}"),
    );

    // Conservation on a reference quantum run.
    let (_, report) = evolve_master_with_report(&ops, &params, &pulse, &grid)?;
    all &= check_line(
        "trace conservation",
        report.max_trace_error < TRACE_TOL,
        format!("max |Tr ρ − 1| = {:.2e} (limit {TRACE_TOL:.0e})", report.max_trace_error),
    );
    all &= check_line(
        "hermiticity",
        report.max_hermiticity_error < HERMITICITY_TOL,
        format!(
            "max |ρ − ρ†| = {:.2e} (limit {HERMITICITY_TOL:.0e})",
            report.max_hermiticity_error
        ),
    );
    all &= check_line(
        "positivity",
        report.min_eigenvalue > MIN_EIGENVALUE_FLOOR,
        format!(
            "min eigenvalue = {:.2e} (floor {MIN_EIGENVALUE_FLOOR:.0e})",
            report.min_eigenvalue
        ),
    );

    // Truncation convergence at low drive.
    let pulse2 = PulseSpec::from_ghz(2.0, 5.0, 0.0);
    let conv_grid = TimeGrid {
        t_start: -20.0,
        t_end: if fast { 80.0 } else { 150.0 },
        dt: if fast { 0.5 } else { 0.25 },
    };
    let drift = check_truncation(&params, &pulse2, &conv_grid, 20)?;
    all &= check_line(
        "truncation convergence (n_max 20 vs 24)",
        drift < 1e-6,
        format!("max |Δ<a†a>| = {drift:.2e} (limit 1e-6)"),
    );

    // Decoupled cavity stays coherent: <a†a> = |<a>|².
    let mut bare = params;
    bare.g = 0.0;
    let small_ops = build_operators(6)?;
    let (trace, _) = evolve_master_with_report(&small_ops, &bare, &pulse, &grid)?;
    let coherent_err = (0..trace.len())
        .map(|i| (trace.cavity_photon[i] - trace.mean_a[i].norm_sqr()).abs())
        .fold(0.0_f64, f64::max);
    all &= check_line(
        "coherent-state identity at g = 0",
        coherent_err < 1e-8,
        format!("max |<a†a> − |<a>|²| = {coherent_err:.2e} (limit 1e-8)"),
    );

    // Detuning mirror symmetry.
    let delta = ghz_to_angular(20.0);
    let mut plus = params;
    plus.delta_c = 0.5 * delta;
    plus.delta_a = -0.5 * delta;
    let mut minus = params;
    minus.delta_c = -0.5 * delta;
    minus.delta_a = 0.5 * delta;
    let ops12 = build_operators(12)?;
    let (tp, _) = evolve_master_with_report(&ops12, &plus, &pulse, &grid)?;
    let (tm, _) = evolve_master_with_report(&ops12, &minus, &pulse, &grid)?;
    let sym_err = (0..tp.len())
        .map(|i| (tp.cavity_photon[i] - tm.cavity_photon[i]).abs())
        .fold(0.0_f64, f64::max);
    all &= check_line(
        "detuning mirror symmetry",
        sym_err < 1e-6,
        format!("max |Δ<a†a>| = {sym_err:.2e} (limit 1e-6)"),
    );

    Ok(if all { 0 } else { 1 })
}
