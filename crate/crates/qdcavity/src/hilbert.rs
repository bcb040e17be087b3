//! Truncated composite Hilbert space (Fock ⊗ two-level) and its operators.
//!
//! Index convention, fixed once for the whole crate: the composite basis is
//! |n, s⟩ with the photon number n slow and the QD state s fast, i.e.
//! row/column index = 2n + s, where s = 0 ↦ |g⟩ and s = 1 ↦ |e⟩. Composite
//! operators are therefore `a = a_fock ⊗ I₂` and `σ = I_fock ⊗ σ₂`.
//!
//! Everything is a dense complex matrix; at dimension ≤ 64 dense is simpler
//! and fast enough. Matrix elements are exact (integers and √n promoted to
//! floating complex), so the operator identities below hold exactly, not
//! approximately.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Dense complex matrix on the (composite) Hilbert space.
pub type CMat = Array2<C64>;

/// Kronecker product with the crate's index ordering:
/// `kron(x, y)[i·p + k, j·q + l] = x[i, j] · y[k, l]` for y of shape (p, q).
pub fn kron(lhs: &CMat, rhs: &CMat) -> CMat {
    let (m, n) = lhs.dim();
    let (p, q) = rhs.dim();
    let mut out = CMat::zeros((m * p, n * q));
    for i in 0..m {
        for j in 0..n {
            let x = lhs[[i, j]];
            if x == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..p {
                for l in 0..q {
                    out[[i * p + k, j * q + l]] = x * rhs[[k, l]];
                }
            }
        }
    }
    out
}

/// The operators of the driven Jaynes–Cummings system on the truncated
/// composite space of dimension 2·(n_max + 1).
#[derive(Debug, Clone)]
pub struct OperatorSet {
    /// Photon truncation: Fock states |0⟩ … |n_max⟩ are kept.
    pub n_max: usize,
    pub a: CMat,
    pub a_dag: CMat,
    pub sigma: CMat,
    pub sigma_dag: CMat,
    pub sigma_z: CMat,
    pub identity: CMat,
}

impl OperatorSet {
    pub fn dim(&self) -> usize {
        2 * (self.n_max + 1)
    }

    /// Photon number operator a†a.
    pub fn photon_number(&self) -> CMat {
        self.a_dag.dot(&self.a)
    }

    /// QD excited-state population operator σ†σ.
    pub fn qd_population(&self) -> CMat {
        self.sigma_dag.dot(&self.sigma)
    }
}

/// Build the composite-space operators for a given photon truncation.
///
/// On the truncated space `[a, a†] = I` everywhere except the highest-photon
/// block, where the photon-space commutator's bottom-right element is −n_max
/// instead of 1 (the standard truncation artifact).
pub fn build_operators(n_max: usize) -> Result<OperatorSet> {
    if n_max < 1 {
        return Err(Error::invalid("n_max", format!("must be ≥ 1, got {n_max}")));
    }
    let nf = n_max + 1;

    let mut a_fock = CMat::zeros((nf, nf));
    for n in 1..=n_max {
        // ⟨n−1| a |n⟩ = √n, exact square roots of integers.
        a_fock[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    let id_fock = CMat::eye(nf);
    let id2 = CMat::eye(2);

    // Two-level operators in the (|g⟩, |e⟩) ordering.
    let mut sigma2 = CMat::zeros((2, 2));
    sigma2[[0, 1]] = C64::new(1.0, 0.0); // σ = |g⟩⟨e|
    let mut sigma_z2 = CMat::zeros((2, 2));
    sigma_z2[[0, 0]] = C64::new(-1.0, 0.0);
    sigma_z2[[1, 1]] = C64::new(1.0, 0.0); // σ_z = |e⟩⟨e| − |g⟩⟨g|

    let a = kron(&a_fock, &id2);
    let a_dag = crate::linalg::dagger(&a);
    let sigma = kron(&id_fock, &sigma2);
    let sigma_dag = crate::linalg::dagger(&sigma);
    let sigma_z = kron(&id_fock, &sigma_z2);
    let identity = CMat::eye(2 * nf);

    Ok(OperatorSet {
        n_max,
        a,
        a_dag,
        sigma,
        sigma_dag,
        sigma_z,
        identity,
    })
}
