//! The weak-drive dynamics is that of two coupled classical oscillators.
//!
//! Mapping Γ1 = 2κ, Γ2 = 2γ, G = 2ω0·g puts the classical envelope
//! equations in one-to-one correspondence with the linear mean-field model
//! (up to a common phase from the coupling self-terms), so both show the
//! same beat.
//!
//! ```bash
//! cargo run --release --example classical_analogy
//! ```

use qdcavity::analysis::peak_separation;
use qdcavity::experiments::{reference_params, reference_pulse};
use qdcavity::semiclassical::{classical_as_trace, evolve_classical, evolve_linear, ClassicalOscParams};
use qdcavity::types::TimeGrid;

fn main() -> qdcavity::Result<()> {
    let params = reference_params();
    let pulse = reference_pulse();
    let grid = TimeGrid {
        t_start: -20.0,
        t_end: 150.0,
        dt: 0.05,
    };

    let linear = evolve_linear(&params, &pulse, &grid)?;
    let classical = classical_as_trace(&params, &pulse, &grid)?;

    let sep_lin = peak_separation(&linear);
    let sep_cls = peak_separation(&classical);
    println!("beat period, linear mean-field model: {:?} ps", sep_lin.map(|s| (s * 100.0).round() / 100.0));
    println!("beat period, classical oscillators:   {:?} ps", sep_cls.map(|s| (s * 100.0).round() / 100.0));

    // Energy of the classical pair decays monotonically once the drive is gone.
    let osc = ClassicalOscParams::from_system(&params, 1.0);
    let env = evolve_classical(&osc, &pulse, &grid)?;
    let energy: Vec<f64> = (0..env.times.len())
        .map(|i| env.x1_env[i].norm_sqr() + env.x2_env[i].norm_sqr())
        .collect();
    let peak = energy.iter().cloned().fold(0.0_f64, f64::max);
    let end = energy.last().unwrap();
    println!(
        "classical energy: peak {:.3e}, end of window {:.1e} of peak",
        peak,
        end / peak
    );
    Ok(())
}
