//! Temporal dynamics of a resonantly pulse-driven, strongly coupled quantum
//! dot-cavity system.
//!
//! The crate integrates the full Lindblad master equation of the driven
//! Jaynes-Cummings system on a truncated Fock ⊗ two-level space and, next to
//! it, two semiclassical mean-field closures (linear and nonlinear) plus the
//! classical coupled-oscillator envelope model the linear closure maps onto.
//! Analysis helpers extract polariton eigenvalues, weak-probe transmission
//! spectra, oscillation periods/contrast and the integrated quantum-coherence
//! measure; the sweep engine reproduces the standard figure experiments as
//! CSV data.
//!
//! Units: angular frequencies in rad/ps and times in ps internally; configs,
//! CLI flags and file names speak GHz (f = ω/2π) and ps.
//!
//! ## Examples
//!
//! One runnable example per major capability:
//!
//! - **`vacuum_rabi_oscillation`** — three-model pulse response; the beat in
//!   the cavity output and the model agreement at weak drive
//! - **`drive_strength_comparison`** — quantum vs nonlinear closure from weak
//!   to saturating drive; the coherence measure that explains the gap
//! - **`parameter_sweeps`** — g, κ, δ and γ_d sweeps of the quantum model
//! - **`pulse_duration_sweep`** — apparent oscillation period vs pulse length
//! - **`transmission_spectrum`** — polariton doublet, bare-cavity reference,
//!   pulse/doublet spectral overlap
//! - **`classical_analogy`** — the linear model against two coupled damped
//!   classical oscillators
//! - **`truncation_convergence`** — Fock-basis convergence diagnostics
//!
//! ```bash
//! cargo run --release --example vacuum_rabi_oscillation
//! cargo run --release --example parameter_sweeps -- all
//! ```
//!
//! ## Quick start (library)
//!
//! ```
//! use qdcavity::{build_operators, evolve_master, peak_separation};
//! use qdcavity::types::{PulseSpec, SystemParams, TimeGrid};
//!
//! let params = SystemParams::from_ghz(25.0, 29.0, 1.0, 0.0, 0.0, 0.0);
//! let pulse = PulseSpec::from_ghz(1.0, 5.0, 0.0);
//! let grid = TimeGrid::new(-20.0, 120.0, 0.5)?;
//! let ops = build_operators(10)?;
//! let trace = evolve_master(&ops, &params, &pulse, &grid)?;
//! assert!(trace.peak_cavity_photon() > 0.0);
//! # qdcavity::Result::Ok(())
//! ```
//!
//! There is also a thin `qdcavity` binary exposing the same machinery as
//! subcommands (`simulate`, `sweep`, `spectrum`, `eigen`, `fig`, `check`);
//! see the README.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod ode;
pub mod quantum;
pub mod semiclassical;
pub mod types;

pub use analysis::{
    coherence_integral, oscillation_contrast, peak_separation, polariton_eigenvalues,
    pulse_spectrum_overlap, transmission_spectrum, PolaritonPair, SpectrumTrace,
};
pub use error::{Error, Result};
pub use experiments::{
    run_fig1, run_fig2, run_fig3, run_fig4, run_sweep, Fig3Panel, SweepResult, SweepSpec,
    SweepSummary, SweptParameter,
};
pub use hilbert::{build_operators, kron, CMat, OperatorSet};
pub use io::{parse_config, RunConfig};
pub use quantum::{check_truncation, evolve_master, ConservationReport, DensityMatrix};
pub use semiclassical::{
    evolve_classical, evolve_linear, evolve_nonlinear, ClassicalEnvelope, ClassicalOscParams,
    MeanFieldState,
};
pub use types::{DriveNorm, Model, PulseSpec, SystemParams, TimeGrid, TimeTrace};
