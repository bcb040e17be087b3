//! Small dense complex-matrix helpers: adjoints, traces, expectation values,
//! and a Hermitian eigensolver sized for the ≤ 64-dimensional operators this
//! crate works with.
//!
//! The eigensolver reduces a complex Hermitian matrix to a real symmetric
//! tridiagonal one with Householder reflectors (off-diagonal phases are
//! removed by a diagonal unitary similarity) and then runs implicit-shift QL
//! on the tridiagonal form. Eigenvalues only; this crate never needs vectors.

use ndarray::s;
use num_complex::Complex64 as C64;

use crate::hilbert::CMat;

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

/// Tr(m).
pub fn trace(m: &CMat) -> C64 {
    m.diag().iter().sum()
}

/// Tr(a·b) without forming the product: Σ_ij a[i,j]·b[j,i]. O(n²).
pub fn trace_product(a: &CMat, b: &CMat) -> C64 {
    let n = a.nrows();
    debug_assert_eq!(a.dim(), (n, b.nrows()));
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..a.ncols() {
            acc += a[[i, j]] * b[[j, i]];
        }
    }
    acc
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// max_ij |m[i,j] − conj(m[j,i])|, zero iff m is exactly Hermitian.
pub fn hermiticity_error(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[[i, j]] - m[[j, i]].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix, in no particular order.
///
/// The input is assumed Hermitian; only the lower triangle and the real part
/// of the diagonal are referenced through the reduction.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let (mut d, mut e) = tridiagonalize(m);
    tridiagonal_eigenvalues(&mut d, &mut e);
    d
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_hermitian_eigenvalue(m: &CMat) -> f64 {
    hermitian_eigenvalues(m)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
/// form; returns (diagonal, subdiagonal) with `e[i] = |T[i+1, i]|`.
fn tridiagonalize(m: &CMat) -> (Vec<f64>, Vec<f64>) {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigensolver needs a square matrix");
    let mut a = m.clone();

    for k in 0..n.saturating_sub(2) {
        // Column below the subdiagonal: x = a[k+1.., k].
        let x: Vec<C64> = (k + 1..n).map(|i| a[[i, k]]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
        let alpha = -phase * norm;

        // Reflector direction w ∝ x − α·e₁.
        let mut w = x;
        w[0] -= alpha;
        let wnorm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if wnorm < f64::EPSILON * norm {
            // x is already α·e₁; nothing to do for this column.
            a[[k + 1, k]] = alpha;
            a[[k, k + 1]] = alpha.conj();
            continue;
        }
        for z in w.iter_mut() {
            *z /= wnorm;
        }

        // The reflector maps the coupling column to α·e₁ exactly.
        a[[k + 1, k]] = alpha;
        a[[k, k + 1]] = alpha.conj();
        for i in k + 2..n {
            a[[i, k]] = C64::new(0.0, 0.0);
            a[[k, i]] = C64::new(0.0, 0.0);
        }

        // Hermitian rank-2 update of the trailing block:
        // A ← A − 2wq† − 2qw† with p = Aw, c = Re(w†p), q = p − c·w.
        let nb = n - (k + 1);
        let sub = a.slice(s![k + 1.., k + 1..]);
        let mut p = vec![C64::new(0.0, 0.0); nb];
        for i in 0..nb {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..nb {
                acc += sub[[i, j]] * w[j];
            }
            p[i] = acc;
        }
        let c: f64 = w
            .iter()
            .zip(&p)
            .map(|(wi, pi)| (wi.conj() * pi).re)
            .sum();
        let q: Vec<C64> = p.iter().zip(&w).map(|(pi, wi)| pi - c * wi).collect();
        let mut sub = a.slice_mut(s![k + 1.., k + 1..]);
        for i in 0..nb {
            for j in 0..nb {
                sub[[i, j]] -= 2.0 * (w[i] * q[j].conj() + q[i] * w[j].conj());
            }
        }
    }

    let d: Vec<f64> = (0..n).map(|i| a[[i, i]].re).collect();
    // A diagonal phase similarity turns the (generally complex) subdiagonal
    // into its modulus without touching the spectrum.
    let e: Vec<f64> = (0..n.saturating_sub(1)).map(|i| a[[i + 1, i]].norm()).collect();
    (d, e)
}

/// Implicit-shift QL iteration for a real symmetric tridiagonal matrix.
/// `d` holds the diagonal (becomes the eigenvalues), `e` the subdiagonal.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut Vec<f64>) {
    let n = d.len();
    if n <= 1 {
        return;
    }
    e.push(0.0); // e[n-1] used as workspace

    // Absolute deflation floor: density matrices cluster many eigenvalues
    // near zero, where a purely relative test never fires. Deflating at
    // ε·‖T‖ perturbs each eigenvalue by at most that much.
    let anorm = (0..n)
        .map(|i| d[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 })
        .fold(0.0_f64, f64::max);
    let floor = f64::EPSILON * anorm;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Find the first negligible subdiagonal element at or after l.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd + floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 60, "tridiagonal QL failed to converge");

            // Wilkinson-style shift.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0_f64, 1.0_f64);
            let mut p = 0.0_f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    e.pop();
}
