//! Cavity response versus pulse duration, 5 … 50 ps.
//!
//! A short pulse has enough bandwidth to feed both polaritons, so the output
//! beats at the full splitting; longer pulses see less of the split doublet
//! and the apparent oscillation slows down.
//!
//! ```bash
//! cargo run --release --example pulse_duration_sweep
//! ```

use qdcavity::analysis::pulse_spectrum_overlap;
use qdcavity::experiments::{fig4_default_fwhms, reference_params, run_fig4};
use qdcavity::io::write_sweep_csvs;
use qdcavity::types::PulseSpec;

fn main() -> qdcavity::Result<()> {
    let fwhms = fig4_default_fwhms();
    println!("running {} pulse durations (quantum model)...", fwhms.len());
    let result = run_fig4(&fwhms)?;

    let params = reference_params();
    println!("fwhm_ps  peak_sep_ps  spectral_overlap");
    for s in &result.summaries {
        let pulse = PulseSpec {
            omega0: 1.0,
            fwhm: s.value,
            t_center: 0.0,
        };
        let overlap = pulse_spectrum_overlap(&pulse, &params)?;
        let sep = s
            .peak_separation
            .map_or("      -".to_string(), |v| format!("{v:7.2}"));
        println!("{:7.0}  {sep}  {overlap:.4}", s.value);
    }

    let written = write_sweep_csvs(&result, "pulse")?;
    println!("wrote {} CSV files under pulse_fwhm_*", written.len());
    Ok(())
}
