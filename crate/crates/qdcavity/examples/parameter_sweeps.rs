//! Single-parameter sweeps of the quantum model: coupling g, cavity decay κ,
//! dot-cavity detuning δ, and pure dephasing γ_d.
//!
//! Trends: the oscillation speeds up with g, depends only weakly on κ (while
//! the emitted peak flux grows with κ), speeds up and fades with |δ|, and
//! washes out with dephasing.
//!
//! ```bash
//! cargo run --release --example parameter_sweeps -- a      # g sweep
//! cargo run --release --example parameter_sweeps -- all    # all four panels
//! ```

use qdcavity::experiments::{fig3_spec, run_sweep, Fig3Panel};
use qdcavity::io::write_sweep_csvs;
use qdcavity::types::angular_to_ghz;

fn run_panel(panel: Fig3Panel, label: &str) -> qdcavity::Result<()> {
    let spec = fig3_spec(panel);
    println!(
        "panel {label}: sweeping {} over {} values...",
        spec.parameter,
        spec.values.len()
    );
    let result = run_sweep(&spec)?;
    println!("  {:>10}  {:>11}  {:>8}  {:>11}", spec.parameter, "peak_sep_ps", "contrast", "flux");
    for s in &result.summaries {
        let sep = s
            .peak_separation
            .map_or("     -".to_string(), |v| format!("{v:6.1}"));
        println!(
            "  {:10.2}  {:>11}  {:8.4}  {:.4e}",
            angular_to_ghz(s.value),
            sep,
            s.oscillation_contrast,
            s.peak_output_flux
        );
    }
    let written = write_sweep_csvs(&result, &format!("sweep_{label}"))?;
    println!("  wrote {} files", written.len());
    Ok(())
}

fn main() -> qdcavity::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "a".to_string());
    let panels: Vec<(Fig3Panel, &str)> = match arg.as_str() {
        "a" => vec![(Fig3Panel::G, "a")],
        "b" => vec![(Fig3Panel::Kappa, "b")],
        "c" => vec![(Fig3Panel::Delta, "c")],
        "d" => vec![(Fig3Panel::GammaD, "d")],
        "all" => vec![
            (Fig3Panel::G, "a"),
            (Fig3Panel::Kappa, "b"),
            (Fig3Panel::Delta, "c"),
            (Fig3Panel::GammaD, "d"),
        ],
        other => {
            eprintln!("unknown panel `{other}` (expected a|b|c|d|all)");
            std::process::exit(2);
        }
    };
    for (panel, label) in panels {
        run_panel(panel, label)?;
    }
    Ok(())
}
