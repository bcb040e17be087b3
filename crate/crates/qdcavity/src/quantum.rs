//! Full quantum model: the driven rotating-frame Hamiltonian, the Lindblad
//! right-hand side, and adaptive integration of the density matrix over a
//! drive pulse.
//!
//! The master equation is
//!
//! dρ/dt = −i[H, ρ] + 2κ L[a]ρ + 2γ L[σ]ρ + 2γ_d L[σ†σ]ρ,
//!
//! with H = Δc a†a + Δa σ†σ + ig(a†σ − aσ†) + iΩ(t)(a − a†) and the
//! dissipator L[D]ρ = DρD† − ½D†Dρ − ½ρD†D. κ is the cavity *field* decay
//! rate and γ the dipole decay rate, so the photon number decays at 2κ. The
//! pure-dephasing channel 2γ_d L[σ†σ] destroys QD coherence without moving
//! population.
//!
//! Evolution starts from the joint ground state |0, g⟩⟨0, g| and enforces the
//! density-matrix invariants (unit trace, Hermiticity, approximate
//! positivity) at every output sample, aborting with a diagnostic if any is
//! violated. The caller's grid should start no later than t_center − 4·fwhm
//! and keep a tail of at least 10/κ after the pulse so the output has decayed.

use ndarray::linalg::general_mat_mul;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{CMat, OperatorSet};
use crate::linalg::{hermiticity_error, min_hermitian_eigenvalue, trace, trace_product};
use crate::ode::{DormandPrince, OdeState};
use crate::types::{PulseSpec, SystemParams, TimeGrid, TimeTrace};

/// |Tr ρ − 1| allowed during evolution.
pub const TRACE_TOL: f64 = 1e-8;
/// max |ρ − ρ†| allowed during evolution.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Smallest admissible eigenvalue of ρ at output samples.
pub const MIN_EIGENVALUE_FLOOR: f64 = -1e-7;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// The full quantum state ρ on the composite space.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub rho: CMat,
}

impl DensityMatrix {
    /// Joint ground state |0, g⟩⟨0, g| on a space of the given dimension.
    pub fn ground(dim: usize) -> Self {
        let mut rho = CMat::zeros((dim, dim));
        rho[[0, 0]] = ONE;
        Self { rho }
    }

    pub fn trace_error(&self) -> f64 {
        (trace(&self.rho) - ONE).norm()
    }

    pub fn hermiticity_error(&self) -> f64 {
        hermiticity_error(&self.rho)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_hermitian_eigenvalue(&self.rho)
    }

    /// Check unit trace, Hermiticity and approximate positivity against the
    /// crate tolerances; `t` only labels the diagnostic.
    pub fn validate(&self, t: f64) -> Result<()> {
        validate_density(&self.rho, t).map(|_| ())
    }
}

/// Returns (trace error, hermiticity error, min eigenvalue) or the first
/// violated invariant as an error.
fn validate_density(rho: &CMat, t: f64) -> Result<(f64, f64, f64)> {
    let tr_err = (trace(rho) - ONE).norm();
    if tr_err > TRACE_TOL {
        return Err(Error::InvariantViolation {
            quantity: "trace",
            t,
            value: tr_err,
            limit: TRACE_TOL,
        });
    }
    let herm = hermiticity_error(rho);
    if herm > HERMITICITY_TOL {
        return Err(Error::InvariantViolation {
            quantity: "hermiticity",
            t,
            value: herm,
            limit: HERMITICITY_TOL,
        });
    }
    let min_eig = min_hermitian_eigenvalue(rho);
    if min_eig < MIN_EIGENVALUE_FLOOR {
        return Err(Error::InvariantViolation {
            quantity: "positivity",
            t,
            value: min_eig,
            limit: MIN_EIGENVALUE_FLOOR,
        });
    }
    Ok((tr_err, herm, min_eig))
}

/// Worst-case conservation diagnostics over all output samples of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationReport {
    pub max_trace_error: f64,
    pub max_hermiticity_error: f64,
    pub min_eigenvalue: f64,
}

/// H = Δc a†a + Δa σ†σ + ig(a†σ − aσ†) + iΩ(a − a†) for an instantaneous
/// drive strength Ω = Ω(t). Hermitian by construction.
pub fn hamiltonian(ops: &OperatorSet, params: &SystemParams, drive: f64) -> CMat {
    let mut h = ops.photon_number() * C64::new(params.delta_c, 0.0);
    h.scaled_add(C64::new(params.delta_a, 0.0), &ops.qd_population());
    let coupling = &ops.a_dag.dot(&ops.sigma) - &ops.a.dot(&ops.sigma_dag);
    h.scaled_add(I * params.g, &coupling);
    let drive_op = &ops.a - &ops.a_dag;
    h.scaled_add(I * drive, &drive_op);
    h
}

/// Lindblad dissipator L[D]ρ = DρD† − ½D†Dρ − ½ρD†D.
pub fn lindblad_dissipator(collapse: &CMat, rho: &CMat) -> CMat {
    let d_dag = crate::linalg::dagger(collapse);
    let dd = d_dag.dot(collapse);
    let mut out = collapse.dot(rho).dot(&d_dag);
    out.scaled_add(C64::new(-0.5, 0.0), &dd.dot(rho));
    out.scaled_add(C64::new(-0.5, 0.0), &rho.dot(&dd));
    out
}

/// dρ/dt at a given instantaneous drive strength, assembled directly from
/// [`hamiltonian`] and [`lindblad_dissipator`]. The evolution engine uses an
/// algebraically identical fused form; the two are cross-checked in tests.
pub fn master_rhs(ops: &OperatorSet, params: &SystemParams, drive: f64, rho: &CMat) -> CMat {
    let h = hamiltonian(ops, params, drive);
    let mut out = (h.dot(rho) - rho.dot(&h)) * (-I);
    out.scaled_add(C64::new(2.0 * params.kappa, 0.0), &lindblad_dissipator(&ops.a, rho));
    out.scaled_add(C64::new(2.0 * params.gamma, 0.0), &lindblad_dissipator(&ops.sigma, rho));
    if params.gamma_d != 0.0 {
        out.scaled_add(
            C64::new(2.0 * params.gamma_d, 0.0),
            &lindblad_dissipator(&ops.qd_population(), rho),
        );
    }
    out
}

/// Precomputed operators for the fused master-equation right-hand side.
///
/// Grouping the Hamiltonian with the anticommutator halves of the dissipators
/// gives dρ/dt = −i(H_eff ρ − ρ H_eff†) + 2κ aρa† + 2γ σρσ† + 2γ_d nρn with
/// H_eff = H − i(κ a†a + (γ + γ_d) σ†σ); only the jump terms remain separate.
struct MasterContext {
    heff0: CMat,
    heff0_dag: CMat,
    /// Drive operator i(a − a†), Hermitian; H_eff(t) = heff0 + Ω(t)·hd.
    hd: CMat,
    a: CMat,
    a_dag: CMat,
    sigma: CMat,
    sigma_dag: CMat,
    two_kappa: f64,
    two_gamma: f64,
    two_gamma_d: f64,
    // Observable operators.
    n_op: CMat,
    pop_op: CMat,
    sigma_z: CMat,
    adag_sigma: CMat,
    a_obs: CMat,
    sigma_obs: CMat,
}

impl MasterContext {
    fn new(ops: &OperatorSet, params: &SystemParams) -> Self {
        let n_op = ops.photon_number();
        let pop_op = ops.qd_population();
        let mut heff0 = hamiltonian(ops, params, 0.0);
        heff0.scaled_add(-I * params.kappa, &n_op);
        heff0.scaled_add(-I * (params.gamma + params.gamma_d), &pop_op);
        let heff0_dag = crate::linalg::dagger(&heff0);
        let hd = (&ops.a - &ops.a_dag) * I;
        Self {
            heff0,
            heff0_dag,
            hd,
            a: ops.a.clone(),
            a_dag: ops.a_dag.clone(),
            sigma: ops.sigma.clone(),
            sigma_dag: ops.sigma_dag.clone(),
            two_kappa: 2.0 * params.kappa,
            two_gamma: 2.0 * params.gamma,
            two_gamma_d: 2.0 * params.gamma_d,
            n_op,
            pop_op,
            sigma_z: ops.sigma_z.clone(),
            adag_sigma: ops.a_dag.dot(&ops.sigma),
            a_obs: ops.a.clone(),
            sigma_obs: ops.sigma.clone(),
        }
    }

    /// Fused right-hand side; `heff`, `heff_dag` and `tmp` are caller scratch.
    fn rhs(
        &self,
        drive: f64,
        rho: &CMat,
        out: &mut CMat,
        heff: &mut CMat,
        heff_dag: &mut CMat,
        tmp: &mut CMat,
    ) {
        heff.assign(&self.heff0);
        OdeState::axpy(heff, drive, &self.hd);
        heff_dag.assign(&self.heff0_dag);
        OdeState::axpy(heff_dag, drive, &self.hd);

        general_mat_mul(-I, heff, rho, ZERO, out);
        general_mat_mul(I, rho, heff_dag, ONE, out);
        if self.two_kappa != 0.0 {
            general_mat_mul(ONE, &self.a, rho, ZERO, tmp);
            general_mat_mul(C64::new(self.two_kappa, 0.0), tmp, &self.a_dag, ONE, out);
        }
        if self.two_gamma != 0.0 {
            general_mat_mul(ONE, &self.sigma, rho, ZERO, tmp);
            general_mat_mul(C64::new(self.two_gamma, 0.0), tmp, &self.sigma_dag, ONE, out);
        }
        if self.two_gamma_d != 0.0 {
            // σ†σ on the composite space is diagonal (1 on QD-excited rows),
            // so the jump term nρn only touches odd-odd index pairs.
            let n = rho.nrows();
            for i in (1..n).step_by(2) {
                for j in (1..n).step_by(2) {
                    out[[i, j]] += self.two_gamma_d * rho[[i, j]];
                }
            }
        }
    }
}

/// Integrate the master equation over the pulse and sample observables on the
/// output grid, starting from the joint ground state |0, g⟩⟨0, g|.
pub fn evolve_master(
    ops: &OperatorSet,
    params: &SystemParams,
    pulse: &PulseSpec,
    grid: &TimeGrid,
) -> Result<TimeTrace> {
    evolve_master_with_report(ops, params, pulse, grid).map(|(trace, _)| trace)
}

/// [`evolve_master`] plus the worst-case conservation diagnostics of the run.
pub fn evolve_master_with_report(
    ops: &OperatorSet,
    params: &SystemParams,
    pulse: &PulseSpec,
    grid: &TimeGrid,
) -> Result<(TimeTrace, ConservationReport)> {
    let rho0 = DensityMatrix::ground(ops.dim()).rho;
    evolve_master_from(ops, params, pulse, grid, rho0)
}

/// Evolution from an arbitrary initial density matrix. The standard entry
/// point is [`evolve_master`]; this exists for diagnostics and tests that
/// need a prepared initial state.
pub fn evolve_master_from(
    ops: &OperatorSet,
    params: &SystemParams,
    pulse: &PulseSpec,
    grid: &TimeGrid,
    rho0: CMat,
) -> Result<(TimeTrace, ConservationReport)> {
    params.validate()?;
    pulse.validate()?;
    grid.validate()?;
    if rho0.dim() != (ops.dim(), ops.dim()) {
        return Err(Error::invalid(
            "rho0",
            format!("dimension {:?} does not match operator dimension {}", rho0.dim(), ops.dim()),
        ));
    }

    let ctx = MasterContext::new(ops, params);
    let dim = ops.dim();
    let mut heff = CMat::zeros((dim, dim));
    let mut heff_dag = CMat::zeros((dim, dim));
    let mut tmp = CMat::zeros((dim, dim));

    let mut trace_out = TimeTrace::with_capacity(grid.len());
    let mut report = ConservationReport {
        max_trace_error: 0.0,
        max_hermiticity_error: 0.0,
        min_eigenvalue: f64::INFINITY,
    };

    let solver = DormandPrince::default();
    solver.integrate(
        |t, rho: &CMat, out: &mut CMat| {
            ctx.rhs(pulse.drive(t), rho, out, &mut heff, &mut heff_dag, &mut tmp);
        },
        rho0,
        grid,
        |_idx, t, rho| {
            let (tr_err, herm, min_eig) = validate_density(rho, t)?;
            report.max_trace_error = report.max_trace_error.max(tr_err);
            report.max_hermiticity_error = report.max_hermiticity_error.max(herm);
            report.min_eigenvalue = report.min_eigenvalue.min(min_eig);

            let photon = trace_product(&ctx.n_op, rho).re;
            let pop = trace_product(&ctx.pop_op, rho).re;
            let mean_a = trace_product(&ctx.a_obs, rho);
            let mean_sigma = trace_product(&ctx.sigma_obs, rho);
            let sigma_z = trace_product(&ctx.sigma_z, rho).re;
            let cross = trace_product(&ctx.adag_sigma, rho);
            trace_out.push(t, photon, pop, mean_a, mean_sigma, sigma_z, cross);
            Ok(())
        },
    )?;

    trace_out.validate_ranges()?;
    Ok((trace_out, report))
}

/// Truncation-convergence diagnostic: max over the grid of
/// |⟨a†a⟩(n_max) − ⟨a†a⟩(n_max + 4)|. Small values validate the default
/// truncation for the given drive strength.
pub fn check_truncation(
    params: &SystemParams,
    pulse: &PulseSpec,
    grid: &TimeGrid,
    n_max: usize,
) -> Result<f64> {
    if n_max < 2 {
        return Err(Error::invalid("n_max", format!("must be ≥ 2, got {n_max}")));
    }
    let ops_lo = crate::hilbert::build_operators(n_max)?;
    let ops_hi = crate::hilbert::build_operators(n_max + 4)?;
    let lo = evolve_master(&ops_lo, params, pulse, grid)?;
    let hi = evolve_master(&ops_hi, params, pulse, grid)?;
    Ok(lo
        .cavity_photon
        .iter()
        .zip(&hi.cavity_photon)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::build_operators;
    use crate::linalg::{dagger, max_abs};
    use proptest::prelude::*;

    fn params_zero() -> SystemParams {
        SystemParams {
            g: 0.0,
            kappa: 0.0,
            gamma: 0.0,
            gamma_d: 0.0,
            delta_c: 0.0,
            delta_a: 0.0,
        }
    }

    fn fig1_params() -> SystemParams {
        SystemParams::from_ghz(25.0, 29.0, 1.0, 0.0, 0.0, 0.0)
    }

    #[test]
    fn hamiltonian_vanishes_without_coupling_and_drive() {
        let ops = build_operators(3).unwrap();
        let h = hamiltonian(&ops, &params_zero(), 0.0);
        assert_eq!(max_abs(&h), 0.0);
    }

    #[test]
    fn single_excitation_block_eigenvalues() {
        // On resonance with no drive, the block spanned by |0,e⟩ and |1,g⟩ is
        // [[0, −ig], [ig, 0]] with eigenvalues ±g (analytic 2×2).
        let mut p = params_zero();
        p.g = 0.7;
        let ops = build_operators(1).unwrap();
        let h = hamiltonian(&ops, &p, 0.0);
        // Basis index 1 = |0,e⟩, index 2 = |1,g⟩.
        assert!((h[[2, 1]] - C64::new(0.0, 0.7)).norm() < 1e-15);
        assert!((h[[1, 2]] - C64::new(0.0, -0.7)).norm() < 1e-15);
        let block = CMat::from_shape_vec(
            (2, 2),
            vec![h[[1, 1]], h[[1, 2]], h[[2, 1]], h[[2, 2]]],
        )
        .unwrap();
        let mut eig = crate::linalg::hermitian_eigenvalues(&block);
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eig[0] + 0.7).abs() < 1e-12);
        assert!((eig[1] - 0.7).abs() < 1e-12);
    }

    #[test]
    fn dissipator_of_zero_collapse_is_zero() {
        let ops = build_operators(2).unwrap();
        let zero = CMat::zeros((ops.dim(), ops.dim()));
        let mut rho = CMat::zeros((ops.dim(), ops.dim()));
        rho[[2, 2]] = C64::new(1.0, 0.0);
        assert_eq!(max_abs(&lindblad_dissipator(&zero, &rho)), 0.0);
    }

    #[test]
    fn dissipator_hand_evaluation() {
        // D = a on ρ = |1⟩⟨1| ⊗ |g⟩⟨g| gives |0,g⟩⟨0,g| − |1,g⟩⟨1,g|.
        let ops = build_operators(2).unwrap();
        let dim = ops.dim();
        let mut rho = CMat::zeros((dim, dim));
        rho[[2, 2]] = C64::new(1.0, 0.0); // |1,g⟩⟨1,g|
        let l = lindblad_dissipator(&ops.a, &rho);
        let mut expect = CMat::zeros((dim, dim));
        expect[[0, 0]] = C64::new(1.0, 0.0);
        expect[[2, 2]] = C64::new(-1.0, 0.0);
        assert!(max_abs(&(&l - &expect)) < 1e-14);
    }

    #[test]
    fn ground_state_is_stationary() {
        let ops = build_operators(4).unwrap();
        let p = fig1_params();
        let rho = DensityMatrix::ground(ops.dim()).rho;
        let rhs = master_rhs(&ops, &p, 0.0, &rho);
        assert_eq!(max_abs(&rhs), 0.0);
    }

    /// Deterministic pseudo-random Hermitian unit-trace positive matrix.
    fn random_density(dim: usize, seed: u64) -> CMat {
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let m = CMat::from_shape_fn((dim, dim), |_| C64::new(next(), next()));
        let mut rho = m.dot(&dagger(&m)); // positive semidefinite
        let tr = trace(&rho);
        rho.mapv_inplace(|z| z / tr);
        rho
    }

    #[test]
    fn master_rhs_is_traceless() {
        let ops = build_operators(3).unwrap();
        let mut p = fig1_params();
        p.gamma_d = crate::types::ghz_to_angular(2.0);
        p.delta_a = crate::types::ghz_to_angular(-5.0);
        for seed in [1u64, 2, 3] {
            let rho = random_density(ops.dim(), seed);
            let rhs = master_rhs(&ops, &p, 0.3, &rho);
            assert!(trace(&rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn fused_rhs_matches_direct_assembly() {
        let ops = build_operators(3).unwrap();
        let mut p = fig1_params();
        p.gamma_d = crate::types::ghz_to_angular(1.5);
        p.delta_c = crate::types::ghz_to_angular(3.0);
        p.delta_a = crate::types::ghz_to_angular(-4.0);
        let ctx = MasterContext::new(&ops, &p);
        let dim = ops.dim();
        let (mut heff, mut heff_dag, mut tmp, mut out) = (
            CMat::zeros((dim, dim)),
            CMat::zeros((dim, dim)),
            CMat::zeros((dim, dim)),
            CMat::zeros((dim, dim)),
        );
        for seed in [7u64, 8, 9] {
            let rho = random_density(dim, seed);
            let drive = 0.42;
            ctx.rhs(drive, &rho, &mut out, &mut heff, &mut heff_dag, &mut tmp);
            let direct = master_rhs(&ops, &p, drive, &rho);
            assert!(max_abs(&(&out - &direct)) < 1e-13);
        }
    }

    #[test]
    fn pure_dephasing_closed_form() {
        // γ_d alone: ⟨σ⟩(t) = ⟨σ⟩(0)·e^{−γ_d t} with populations untouched.
        let ops = build_operators(1).unwrap();
        let mut p = params_zero();
        p.gamma_d = 0.35;
        let dim = ops.dim();
        // ρ(0) = |ψ⟩⟨ψ| with ψ = (|0,g⟩ + |0,e⟩)/√2.
        let mut rho0 = CMat::zeros((dim, dim));
        for i in 0..2 {
            for j in 0..2 {
                rho0[[i, j]] = C64::new(0.5, 0.0);
            }
        }
        let pulse = PulseSpec {
            omega0: 0.0,
            fwhm: 1.0,
            t_center: 0.0,
        };
        let grid = TimeGrid::new(0.0, 6.0, 0.25).unwrap();
        let (trace, _) = evolve_master_from(&ops, &p, &pulse, &grid, rho0).unwrap();
        for (i, &t) in trace.times.iter().enumerate() {
            let expect = 0.5 * (-p.gamma_d * t).exp();
            assert!(
                (trace.mean_sigma[i].norm() - expect).abs() < 1e-7,
                "t={t}: {} vs {expect}",
                trace.mean_sigma[i].norm()
            );
            assert!((trace.qd_population[i] - 0.5).abs() < 1e-8);
        }
    }

    #[test]
    fn undriven_system_stays_dark() {
        let ops = build_operators(2).unwrap();
        let p = fig1_params();
        let pulse = PulseSpec {
            omega0: 0.0,
            fwhm: 5.0,
            t_center: 0.0,
        };
        let grid = TimeGrid::new(-20.0, 30.0, 1.0).unwrap();
        let (trace, report) = evolve_master_with_report(&ops, &p, &pulse, &grid).unwrap();
        assert!(trace.cavity_photon.iter().all(|&x| x.abs() < 1e-12));
        assert!(trace.qd_population.iter().all(|&x| x.abs() < 1e-12));
        assert!(report.max_trace_error < 1e-12);
    }

    #[test]
    fn driven_empty_cavity_matches_one_dimensional_oracle() {
        // g = 0 decouples the QD: d⟨a⟩/dt = −(κ + iΔc)⟨a⟩ − Ω(t), and the
        // state stays coherent so ⟨a†a⟩ = |⟨a⟩|² exactly. The oracle is a
        // fine-step fixed RK4 on the scalar ODE, independent of the engine.
        let mut p = fig1_params();
        p.g = 0.0;
        p.gamma = crate::types::ghz_to_angular(3.0); // arbitrary, must not matter
        let pulse = PulseSpec::from_ghz(1.0, 5.0, 0.0);
        let grid = TimeGrid::new(-15.0, 40.0, 0.5).unwrap();
        let ops = build_operators(6).unwrap();
        let (trace, _) = evolve_master_with_report(&ops, &p, &pulse, &grid).unwrap();

        // Scalar RK4 oracle, 2000 fixed steps per output interval so the
        // comparison lands exactly on the sample times.
        let f = |t: f64, a: C64| -C64::new(p.kappa, p.delta_c) * a - pulse.drive(t);
        let times = grid.times();
        let steps = 2000;
        let dt = grid.dt / steps as f64;
        let mut a = C64::new(0.0, 0.0);
        let mut worst_a = 0.0_f64;
        let mut worst_n = 0.0_f64;
        for idx in 0..times.len() {
            worst_a = worst_a.max((trace.mean_a[idx] - a).norm());
            worst_n = worst_n.max((trace.cavity_photon[idx] - a.norm_sqr()).abs());
            if idx + 1 == times.len() {
                break;
            }
            for k in 0..steps {
                let t = times[idx] + k as f64 * dt;
                let k1 = f(t, a);
                let k2 = f(t + 0.5 * dt, a + 0.5 * dt * k1);
                let k3 = f(t + 0.5 * dt, a + 0.5 * dt * k2);
                let k4 = f(t + dt, a + dt * k3);
                a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
        assert!(worst_a < 1e-8, "⟨a⟩ deviation {worst_a}");
        assert!(worst_n < 1e-8, "⟨a†a⟩ deviation {worst_n}");
    }

    #[test]
    fn truncation_rejects_small_n_max() {
        let p = fig1_params();
        let pulse = PulseSpec::from_ghz(1.0, 5.0, 0.0);
        let grid = TimeGrid::new(-20.0, 50.0, 1.0).unwrap();
        assert!(check_truncation(&p, &pulse, &grid, 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn hamiltonian_is_hermitian(g in 0.0..2.0f64, dc in -2.0..2.0f64,
                                    da in -2.0..2.0f64, drive in -1.0..1.0f64) {
            let ops = build_operators(3).unwrap();
            let p = SystemParams { g, kappa: 0.1, gamma: 0.05, gamma_d: 0.0, delta_c: dc, delta_a: da };
            let h = hamiltonian(&ops, &p, drive);
            prop_assert!(hermiticity_error(&h) < 1e-12);
        }

        #[test]
        fn dissipator_is_traceless(seed in 1u64..500) {
            let ops = build_operators(2).unwrap();
            let rho = random_density(ops.dim(), seed);
            for d in [&ops.a, &ops.sigma] {
                let l = lindblad_dissipator(d, &rho);
                prop_assert!(trace(&l).norm() < 1e-13);
            }
        }
    }
}
