//! Embedded Dormand–Prince 5(4) integrator over complex states.
//!
//! One stepper drives every model in the crate: the master-equation engine
//! (state = density matrix) and the mean-field/classical models (state = a
//! few complex amplitudes). Error control is per entry with mixed
//! absolute/relative weights; output is sampled exactly on a [`TimeGrid`] by
//! clamping steps to the sample boundaries. The first-same-as-last property
//! of the pair saves one derivative evaluation per accepted step.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::CMat;
use crate::types::TimeGrid;

/// Vector-space operations the stepper needs from a state type.
pub trait OdeState: Clone {
    fn zeros_like(&self) -> Self;
    fn copy_from(&mut self, src: &Self);
    fn scale(&mut self, c: f64);
    /// self += c · other
    fn axpy(&mut self, c: f64, other: &Self);
    /// RMS of |err_i| / (atol + rtol·max(|y0_i|, |y1_i|)) over entries.
    fn weighted_error_norm(err: &Self, y0: &Self, y1: &Self, atol: f64, rtol: f64) -> f64;
}

impl OdeState for CMat {
    fn zeros_like(&self) -> Self {
        CMat::zeros(self.raw_dim())
    }

    fn copy_from(&mut self, src: &Self) {
        self.assign(src);
    }

    fn scale(&mut self, c: f64) {
        self.mapv_inplace(|z| z * c);
    }

    fn axpy(&mut self, c: f64, other: &Self) {
        self.zip_mut_with(other, |y, &x| *y += c * x);
    }

    fn weighted_error_norm(err: &Self, y0: &Self, y1: &Self, atol: f64, rtol: f64) -> f64 {
        let mut acc = 0.0_f64;
        let n = err.len();
        for ((e, a), b) in err.iter().zip(y0.iter()).zip(y1.iter()) {
            let sc = atol + rtol * a.norm().max(b.norm());
            let r = e.norm() / sc;
            acc += r * r;
        }
        (acc / n as f64).sqrt()
    }
}

impl<const N: usize> OdeState for [C64; N] {
    fn zeros_like(&self) -> Self {
        [C64::new(0.0, 0.0); N]
    }

    fn copy_from(&mut self, src: &Self) {
        *self = *src;
    }

    fn scale(&mut self, c: f64) {
        for z in self.iter_mut() {
            *z *= c;
        }
    }

    fn axpy(&mut self, c: f64, other: &Self) {
        for (y, x) in self.iter_mut().zip(other.iter()) {
            *y += c * x;
        }
    }

    fn weighted_error_norm(err: &Self, y0: &Self, y1: &Self, atol: f64, rtol: f64) -> f64 {
        let mut acc = 0.0_f64;
        for i in 0..N {
            let sc = atol + rtol * y0[i].norm().max(y1[i].norm());
            let r = err[i].norm() / sc;
            acc += r * r;
        }
        (acc / N as f64).sqrt()
    }
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    // Last row equals the 5th-order weights: stage 7 is evaluated at the
    // accepted solution (FSAL).
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// 5th-order minus embedded 4th-order weights (error estimator).
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 5.0;

/// Adaptive Dormand-Prince 5(4) stepper.
#[derive(Debug, Clone, Copy)]
pub struct DormandPrince {
    pub atol: f64,
    pub rtol: f64,
    /// A rejected step proposing h below this fraction of the grid span aborts.
    pub min_step_fraction: f64,
}

impl Default for DormandPrince {
    fn default() -> Self {
        Self {
            atol: 1e-10,
            rtol: 1e-8,
            min_step_fraction: 1e-6,
        }
    }
}

impl DormandPrince {
    /// Integrate dy/dt = rhs(t, y) across `grid`, invoking `observe` at every
    /// sample (including the first, with the initial state). `observe` may
    /// return an error to abort, e.g. on an invariant violation.
    pub fn integrate<S, F, O>(&self, mut rhs: F, y0: S, grid: &TimeGrid, mut observe: O) -> Result<()>
    where
        S: OdeState,
        F: FnMut(f64, &S, &mut S),
        O: FnMut(usize, f64, &S) -> Result<()>,
    {
        grid.validate()?;
        let times = grid.times();
        let span = grid.span();
        let floor = self.min_step_fraction * span;

        let mut y = y0;
        let mut k: Vec<S> = (0..7).map(|_| y.zeros_like()).collect();
        let mut stage = y.zeros_like();
        let mut err_state = y.zeros_like();

        observe(0, times[0], &y)?;

        let mut t = times[0];
        rhs(t, &y, &mut k[0]);
        let mut h = grid.dt.min(span * 1e-2).max(floor);

        for (idx, &t_target) in times.iter().enumerate().skip(1) {
            while t < t_target - 1e-14 * span {
                // A step clamped to land on a sample boundary must not drag
                // the adapted step size down with it.
                let mut boundary_limited = (t_target - t) < h;
                let mut h_try = h.min(t_target - t);
                loop {
                    // Stages 2..7; the last lands on the 5th-order solution.
                    for i in 1..7 {
                        stage.copy_from(&y);
                        for (j, kj) in k.iter().enumerate().take(i) {
                            let a = A[i - 1][j];
                            if a != 0.0 {
                                stage.axpy(h_try * a, kj);
                            }
                        }
                        if i == 6 {
                            break;
                        }
                        let (head, tail) = k.split_at_mut(i);
                        let _ = head;
                        rhs(t + C[i] * h_try, &stage, &mut tail[0]);
                    }
                    // stage now holds y5; evaluate the FSAL derivative there.
                    rhs(t + h_try, &stage, &mut k[6]);

                    err_state.copy_from(&k[0]);
                    err_state.scale(h_try * E[0]);
                    for i in 1..7 {
                        if E[i] != 0.0 {
                            err_state.axpy(h_try * E[i], &k[i]);
                        }
                    }
                    let err = S::weighted_error_norm(&err_state, &y, &stage, self.atol, self.rtol);

                    if err <= 1.0 {
                        t += h_try;
                        std::mem::swap(&mut y, &mut stage);
                        k.swap(0, 6); // FSAL
                        let fac = (SAFETY * err.max(1e-300).powf(-0.2)).clamp(FAC_MIN, FAC_MAX);
                        let h_new = (h_try * fac).max(floor);
                        h = if boundary_limited { h.max(h_new) } else { h_new };
                        break;
                    }
                    boundary_limited = false;
                    let fac = (SAFETY * err.powf(-0.2)).clamp(FAC_MIN, 1.0);
                    h_try *= fac;
                    if h_try < floor {
                        return Err(Error::StepSizeUnderflow {
                            t,
                            dt: h_try,
                            floor,
                        });
                    }
                }
            }
            t = t_target;
            observe(idx, t, &y)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solver() -> DormandPrince {
        DormandPrince::default()
    }

    #[test]
    fn exponential_decay_matches_closed_form() {
        let grid = TimeGrid::new(0.0, 2.0, 0.1).unwrap();
        let mut last = C64::new(0.0, 0.0);
        solver()
            .integrate(
                |_t, y: &[C64; 1], dy| dy[0] = -y[0],
                [C64::new(1.0, 0.0)],
                &grid,
                |_i, _t, y| {
                    last = y[0];
                    Ok(())
                },
            )
            .unwrap();
        assert!((last.re - (-2.0_f64).exp()).abs() < 1e-9);
        assert!(last.im.abs() < 1e-12);
    }

    #[test]
    fn complex_rotation_preserves_modulus() {
        let omega = 3.0;
        let grid = TimeGrid::new(0.0, 10.0, 0.5).unwrap();
        let mut worst = 0.0_f64;
        let mut last = C64::new(0.0, 0.0);
        solver()
            .integrate(
                |_t, y: &[C64; 1], dy| dy[0] = C64::new(0.0, omega) * y[0],
                [C64::new(1.0, 0.0)],
                &grid,
                |_i, _t, y| {
                    worst = worst.max((y[0].norm() - 1.0).abs());
                    last = y[0];
                    Ok(())
                },
            )
            .unwrap();
        assert!(worst < 1e-6);
        let expect = C64::from_polar(1.0, omega * 10.0);
        assert!((last - expect).norm() < 1e-6);
    }

    #[test]
    fn harmonic_oscillator_two_vars() {
        // y'' = −y as a first-order pair; y(t) = cos t.
        let grid = TimeGrid::new(0.0, 6.0, 0.25).unwrap();
        let mut worst = 0.0_f64;
        solver()
            .integrate(
                |_t, y: &[C64; 2], dy| {
                    dy[0] = y[1];
                    dy[1] = -y[0];
                },
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                &grid,
                |_i, t, y| {
                    worst = worst.max((y[0].re - t.cos()).abs());
                    Ok(())
                },
            )
            .unwrap();
        assert!(worst < 1e-8, "worst deviation {worst}");
    }

    #[test]
    fn gaussian_pulse_area() {
        // Quadrature check: integrating the envelope over a wide window gives
        // s·√(2π).
        let pulse = crate::types::PulseSpec::from_ghz(1.0, 5.0, 0.0);
        let s = pulse.sigma();
        let grid = TimeGrid::new(-12.0 * s, 12.0 * s, s / 4.0).unwrap();
        let mut last = 0.0;
        solver()
            .integrate(
                |t, _y: &[C64; 1], dy| dy[0] = C64::new(pulse.envelope(t), 0.0),
                [C64::new(0.0, 0.0)],
                &grid,
                |_i, _t, y| {
                    last = y[0].re;
                    Ok(())
                },
            )
            .unwrap();
        let expect = s * (2.0 * std::f64::consts::PI).sqrt();
        assert!((last - expect).abs() < 1e-8 * expect);
    }

    #[test]
    fn singular_rhs_underflows_step_size() {
        let grid = TimeGrid::new(0.0, 2.0, 0.1).unwrap();
        let res = solver().integrate(
            |t, _y: &[C64; 1], dy| dy[0] = C64::new(1.0 / (1.0 - t), 0.0),
            [C64::new(0.0, 0.0)],
            &grid,
            |_i, _t, _y| Ok(()),
        );
        assert!(matches!(res, Err(Error::StepSizeUnderflow { .. })), "{res:?}");
    }

    #[test]
    fn observer_error_aborts() {
        let grid = TimeGrid::new(0.0, 1.0, 0.1).unwrap();
        let res = solver().integrate(
            |_t, y: &[C64; 1], dy| dy[0] = -y[0],
            [C64::new(1.0, 0.0)],
            &grid,
            |i, t, _y| {
                if i >= 3 {
                    Err(Error::InvariantViolation {
                        quantity: "test",
                        t,
                        value: 0.0,
                        limit: 0.0,
                    })
                } else {
                    Ok(())
                }
            },
        );
        assert!(matches!(res, Err(Error::InvariantViolation { .. })));
    }
}
