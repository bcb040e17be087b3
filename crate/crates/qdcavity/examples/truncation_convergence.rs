//! Fock-truncation convergence of the master-equation engine.
//!
//! Compares ⟨a†a⟩(t) at a given n_max against n_max + 4. At weak drive the
//! default basis of 20 photons is converged far below any tolerance in this
//! crate; strong drive needs (and automatically gets) a larger basis in the
//! sweep drivers.
//!
//! ```bash
//! cargo run --release --example truncation_convergence
//! ```

use qdcavity::experiments::reference_params;
use qdcavity::quantum::check_truncation;
use qdcavity::types::{PulseSpec, TimeGrid};

fn main() -> qdcavity::Result<()> {
    let params = reference_params();
    let grid = TimeGrid {
        t_start: -20.0,
        t_end: 120.0,
        dt: 0.25,
    };

    println!("omega0_ghz  n_max  max |<a†a>_n − <a†a>_(n+4)|");
    for (omega0_ghz, n_max) in [(1.0, 5), (1.0, 9), (2.0, 20), (20.0, 20), (50.0, 20)] {
        let pulse = PulseSpec::from_ghz(omega0_ghz, 5.0, 0.0);
        let drift = check_truncation(&params, &pulse, &grid, n_max)?;
        println!("{omega0_ghz:10.1}  {n_max:5}  {drift:.3e}");
    }
    Ok(())
}
