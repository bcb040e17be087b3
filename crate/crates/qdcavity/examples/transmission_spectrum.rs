//! Weak-probe transmission spectrum of the coupled system and the dressed
//! eigenfrequencies behind it.
//!
//! With the QD coupled, the bare cavity Lorentzian splits into two polariton
//! resonances roughly 2g apart. The example also prints how much of the
//! doublet a 5 ps vs a 40 ps pulse can address.
//!
//! ```bash
//! cargo run --release --example transmission_spectrum
//! ```

use qdcavity::analysis::{
    is_strong_coupling, polariton_eigenvalues, pulse_spectrum_overlap, transmission_spectrum,
};
use qdcavity::experiments::reference_params;
use qdcavity::io::write_spectrum_csv;
use qdcavity::types::{angular_to_ghz, ghz_to_angular, PulseSpec};
use std::path::PathBuf;

fn main() -> qdcavity::Result<()> {
    let params = reference_params();

    let span = ghz_to_angular(80.0);
    let n = 2001;
    let detunings: Vec<f64> = (0..n)
        .map(|i| span * (2.0 * i as f64 / (n - 1) as f64 - 1.0))
        .collect();

    let coupled = transmission_spectrum(&params, &detunings)?;
    write_spectrum_csv(&coupled, &PathBuf::from("spectrum_coupled.csv"))?;

    let mut bare = params;
    bare.g = 0.0;
    let empty = transmission_spectrum(&bare, &detunings)?;
    write_spectrum_csv(&empty, &PathBuf::from("spectrum_bare.csv"))?;
    println!("wrote spectrum_coupled.csv and spectrum_bare.csv ({n} points each)");

    let pol = polariton_eigenvalues(&params);
    println!(
        "dressed modes: Re ω±/2π = ±{:.2} GHz, linewidths {:.2} / {:.2} GHz",
        angular_to_ghz(0.5 * pol.splitting()),
        -angular_to_ghz(pol.omega_plus.im),
        -angular_to_ghz(pol.omega_minus.im),
    );
    println!(
        "strong coupling: {}",
        if is_strong_coupling(&params) { "yes" } else { "no" }
    );

    for fwhm in [5.0, 40.0] {
        let pulse = PulseSpec::from_ghz(1.0, fwhm, 0.0);
        let overlap = pulse_spectrum_overlap(&pulse, &params)?;
        println!("{fwhm:4.0} ps pulse ↔ polariton doublet overlap: {overlap:.4}");
    }
    Ok(())
}
