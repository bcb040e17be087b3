//! Quantum vs nonlinear semiclassical dynamics across drive strengths.
//!
//! The two models agree at low drive (QD barely excited) and at high drive
//! (QD saturated), but differ at intermediate drive where quantum coherence
//! between the QD and the cavity matters. The integrated coherence measure
//! |∫(⟨a†σ⟩ − ⟨a†⟩⟨σ⟩)dt|/Ω0² peaks in the same intermediate window.
//!
//! ```bash
//! cargo run --release --example drive_strength_comparison
//! ```

use qdcavity::analysis::max_normalized_deviation;
use qdcavity::experiments::{fig2_default_omega0s, reference_params, reference_pulse, run_fig2};
use qdcavity::io::write_sweep_csvs;
use qdcavity::types::{angular_to_ghz, Model, TimeGrid};

fn main() -> qdcavity::Result<()> {
    let params = reference_params();
    let pulse = reference_pulse();
    let grid = TimeGrid {
        t_start: -20.0,
        t_end: 200.0,
        dt: 0.25,
    };
    let omega0s = fig2_default_omega0s();

    println!("running {} drive strengths × 2 models...", omega0s.len());
    let result = run_fig2(&params, &pulse, &grid, &omega0s)?;

    println!("Ω0/2π GHz   max deviation   coherence integral");
    for s in &result.summaries {
        let quantum = result.trace_for(s.value, Model::Quantum).unwrap();
        let nonlinear = result.trace_for(s.value, Model::Nonlinear).unwrap();
        println!(
            "{:9.1}   {:13.4}   {:.6e}",
            angular_to_ghz(s.value),
            max_normalized_deviation(quantum, nonlinear),
            s.coherence_integral.unwrap_or(0.0),
        );
    }

    let written = write_sweep_csvs(&result, "drive")?;
    println!("wrote {} CSV files under drive_omega0_*", written.len());
    Ok(())
}
