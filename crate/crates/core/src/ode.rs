//! Adaptive Dormand-Prince 5(4) stepping with cubic-Hermite dense output.
//!
//! The stepper exposes one accepted step at a time so callers can cap steps
//! at forcing breakpoints, localize events on the dense output, and land on
//! target times exactly. Supports both time directions.

use crate::error::{Error, Result};
use crate::real::Real;

/// Right-hand side of a (possibly time-dependent) system y' = f(t, y).
pub trait OdeSystem<R: Real, const N: usize> {
    fn rhs(&self, t: R, y: &[R; N]) -> [R; N];

    /// Per-component error scale. `running_max` tracks the largest |y_i|
    /// seen along the trajectory so components passing through zero keep a
    /// sensible scale.
    fn error_scale(&self, y: &[R; N], running_max: &[R; N], atol: R, rtol: R) -> [R; N] {
        let mut s = [R::zero(); N];
        for i in 0..N {
            s[i] = atol + rtol * y[i].abs().max(running_max[i]);
        }
        s
    }
}

/// Tolerances and guards for one integration.
#[derive(Debug, Clone, Copy)]
pub struct OdeConfig<R> {
    pub rel_tol: R,
    pub abs_tol: R,
    pub max_step: R,
}

impl<R: Real> Default for OdeConfig<R> {
    fn default() -> Self {
        Self {
            rel_tol: R::of(1e-10),
            abs_tol: R::of(1e-12),
            max_step: R::infinity(),
        }
    }
}

/// One accepted step; `eval` interpolates with the cubic Hermite built from
/// the endpoint values and derivatives.
#[derive(Debug, Clone, Copy)]
pub struct DenseStep<R, const N: usize> {
    pub t0: R,
    pub t1: R,
    pub y0: [R; N],
    pub y1: [R; N],
    pub f0: [R; N],
    pub f1: [R; N],
}

impl<R: Real, const N: usize> DenseStep<R, N> {
    pub fn eval(&self, t: R) -> [R; N] {
        let h = self.t1 - self.t0;
        let u = (t - self.t0) / h;
        let u2 = u * u;
        let u3 = u2 * u;
        let three = R::of(3.0);
        let two = R::of(2.0);
        let h00 = two * u3 - three * u2 + R::one();
        let h10 = u3 - two * u2 + u;
        let h01 = -two * u3 + three * u2;
        let h11 = u3 - u2;
        let mut y = [R::zero(); N];
        for i in 0..N {
            y[i] = h00 * self.y0[i] + h10 * h * self.f0[i] + h01 * self.y1[i] + h11 * h * self.f1[i];
        }
        y
    }

    pub fn eval_component(&self, i: usize, t: R) -> R {
        self.eval(t)[i]
    }
}

// Dormand-Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// The 5th-order weights are the last row of A (FSAL); the embedded 4th-order
// weights below give the error estimate.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Driver for one trajectory. `dir` is +1 or -1.
pub struct Stepper<'a, R: Real, S: OdeSystem<R, N>, const N: usize> {
    sys: &'a S,
    cfg: OdeConfig<R>,
    pub t: R,
    pub y: [R; N],
    f: [R; N],
    h: R,
    dir: R,
    running_max: [R; N],
    pub n_accepted: usize,
    pub n_rejected: usize,
    a: [[R; 6]; 6],
    c: [R; 6],
    b4: [R; 7],
}

impl<'a, R: Real, S: OdeSystem<R, N>, const N: usize> Stepper<'a, R, S, N> {
    pub fn new(sys: &'a S, t0: R, y0: [R; N], dir: R, cfg: OdeConfig<R>) -> Self {
        let f = sys.rhs(t0, &y0);
        let mut running_max = [R::zero(); N];
        for i in 0..N {
            running_max[i] = y0[i].abs();
        }
        let mut a = [[R::zero(); 6]; 6];
        for (i, row) in A.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                a[i][j] = R::of(v);
            }
        }
        let mut c = [R::zero(); 6];
        for (i, &v) in C.iter().enumerate() {
            c[i] = R::of(v);
        }
        let mut b4 = [R::zero(); 7];
        for (i, &v) in B4.iter().enumerate() {
            b4[i] = R::of(v);
        }
        let mut s = Self {
            sys,
            cfg,
            t: t0,
            y: y0,
            f,
            h: R::zero(),
            dir,
            running_max,
            n_accepted: 0,
            n_rejected: 0,
            a,
            c,
            b4,
        };
        s.h = s.initial_step();
        s
    }

    /// Forces a fresh RHS evaluation at the current point (used after the
    /// forcing profile changed across a breakpoint).
    pub fn refresh_rhs(&mut self) {
        self.f = self.sys.rhs(self.t, &self.y);
    }

    fn initial_step(&self) -> R {
        let scale = self
            .sys
            .error_scale(&self.y, &self.running_max, self.cfg.abs_tol, self.cfg.rel_tol);
        let mut d0 = R::zero();
        let mut d1 = R::zero();
        for i in 0..N {
            d0 = d0.max((self.y[i] / scale[i]).abs());
            d1 = d1.max((self.f[i] / scale[i]).abs());
        }
        let h0 = if d1 > R::of(1e-10) {
            (d0.max(R::of(1e-5)) / d1) * R::of(0.01)
        } else {
            R::of(1e-6)
        };
        h0.min(self.cfg.max_step)
    }

    /// Takes one accepted step, never moving past `t_cap`. When a step lands
    /// on the cap the final time is set to `t_cap` exactly.
    pub fn step_toward(&mut self, t_cap: R) -> Result<DenseStep<R, N>> {
        let dir = self.dir;
        let span = (t_cap - self.t) * dir;
        if !(span > R::zero()) {
            return Err(Error::Domain(format!(
                "step_toward target {t_cap:e} is not ahead of t = {:e}",
                self.t
            )));
        }
        loop {
            let mut h = self.h.min(self.cfg.max_step).min(span);
            let capped = h >= span;
            if capped {
                h = span;
            }
            let floor = R::of(1e-14) * self.t.abs().max(R::one());
            if h < floor {
                return Err(Error::StepSizeUnderflow {
                    t: self.t.as_f64(),
                    context: format!("h = {h:e}"),
                });
            }
            let hs = h * dir;
            let mut k = [[R::zero(); N]; 7];
            k[0] = self.f;
            for s in 1..6 {
                let mut ys = self.y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    let aij = self.a[s - 1][j];
                    if aij != R::zero() {
                        for i in 0..N {
                            ys[i] += hs * aij * kj[i];
                        }
                    }
                }
                k[s] = self.sys.rhs(self.t + hs * self.c[s - 1], &ys);
            }
            // 5th-order solution (A row 5 doubles as the weight vector).
            let mut y5 = self.y;
            for (j, kj) in k.iter().enumerate().take(6) {
                let bj = self.a[5][j];
                if bj != R::zero() {
                    for i in 0..N {
                        y5[i] += hs * bj * kj[i];
                    }
                }
            }
            let t_new = if capped { t_cap } else { self.t + hs };
            k[6] = self.sys.rhs(t_new, &y5);
            let mut y4 = self.y;
            for (j, kj) in k.iter().enumerate() {
                let bj = self.b4[j];
                if bj != R::zero() {
                    for i in 0..N {
                        y4[i] += hs * bj * kj[i];
                    }
                }
            }
            let scale = self
                .sys
                .error_scale(&self.y, &self.running_max, self.cfg.abs_tol, self.cfg.rel_tol);
            let mut err = R::zero();
            for i in 0..N {
                let e = (y5[i] - y4[i]) / scale[i];
                err += e * e;
            }
            err = (err / R::of_usize(N)).sqrt();
            if !err.is_finite() || y5.iter().any(|v| !v.is_finite()) {
                if self.y.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Overflow {
                        t: self.t.as_f64(),
                        context: "state became non-finite".into(),
                    });
                }
                self.h = h * R::of(0.25);
                self.n_rejected += 1;
                continue;
            }
            if err <= R::one() {
                let step = DenseStep {
                    t0: self.t,
                    t1: t_new,
                    y0: self.y,
                    y1: y5,
                    f0: self.f,
                    f1: k[6],
                };
                self.t = t_new;
                self.y = y5;
                self.f = k[6];
                for i in 0..N {
                    self.running_max[i] = self.running_max[i].max(y5[i].abs());
                }
                self.n_accepted += 1;
                let factor = if err == R::zero() {
                    R::of(5.0)
                } else {
                    (R::of(0.9) * err.powf(R::of(-0.2))).min(R::of(5.0)).max(R::of(0.2))
                };
                self.h = (h * factor).min(self.cfg.max_step);
                return Ok(step);
            }
            self.n_rejected += 1;
            let factor = (R::of(0.9) * err.powf(R::of(-0.2))).max(R::of(0.1));
            self.h = h * factor;
        }
    }

    /// Integrates until `t_end` (in the stepper's direction), discarding the
    /// dense output.
    pub fn run_to(&mut self, t_end: R) -> Result<()> {
        while (t_end - self.t) * self.dir > R::zero() {
            self.step_toward(t_end)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Harmonic;

    impl OdeSystem<f64, 2> for Harmonic {
        fn rhs(&self, _t: f64, y: &[f64; 2]) -> [f64; 2] {
            [y[1], -y[0]]
        }
    }

    struct Scalar;

    impl OdeSystem<f64, 1> for Scalar {
        fn rhs(&self, _t: f64, y: &[f64; 1]) -> [f64; 1] {
            [-2.0 * y[0]]
        }
    }

    #[test]
    fn harmonic_oscillator_full_turn() {
        let cfg = OdeConfig { rel_tol: 1e-12, abs_tol: 1e-14, max_step: f64::INFINITY };
        let mut s = Stepper::new(&Harmonic, 0.0, [1.0, 0.0], 1.0, cfg);
        let t_end = 2.0 * std::f64::consts::PI;
        s.run_to(t_end).unwrap();
        assert_eq!(s.t, t_end);
        assert!((s.y[0] - 1.0).abs() < 1e-10, "x={}", s.y[0]);
        assert!(s.y[1].abs() < 1e-10, "y={}", s.y[1]);
    }

    #[test]
    fn exponential_decay_and_backward_return() {
        let cfg = OdeConfig { rel_tol: 1e-11, abs_tol: 1e-14, max_step: f64::INFINITY };
        let mut s = Stepper::new(&Scalar, 0.0, [3.0], 1.0, cfg);
        s.run_to(2.0).unwrap();
        assert!((s.y[0] - 3.0 * (-4.0f64).exp()).abs() < 1e-10);
        let mut back = Stepper::new(&Scalar, s.t, s.y, -1.0, cfg);
        back.run_to(0.0).unwrap();
        assert!((back.y[0] - 3.0).abs() < 1e-9, "back={}", back.y[0]);
    }

    #[test]
    fn dense_output_accuracy() {
        let cfg = OdeConfig { rel_tol: 1e-10, abs_tol: 1e-13, max_step: f64::INFINITY };
        let mut s = Stepper::new(&Harmonic, 0.0, [1.0, 0.0], 1.0, cfg);
        let mut worst: f64 = 0.0;
        while s.t < 3.0 {
            let step = s.step_toward(3.0).unwrap();
            let tm = 0.5 * (step.t0 + step.t1);
            let y = step.eval(tm);
            worst = worst.max((y[0] - tm.cos()).abs());
        }
        // Cubic Hermite interpolation is O(h^4); events re-polish later.
        assert!(worst < 1e-7, "worst dense error {worst:e}");
    }

    #[test]
    fn fifth_order_convergence() {
        // Halving a fixed max_step should shrink the endpoint error ~ 2^5.
        let err_for = |hmax: f64| {
            let cfg = OdeConfig { rel_tol: 1e-2, abs_tol: 1e-2, max_step: hmax };
            let mut s = Stepper::new(&Harmonic, 0.0, [1.0, 0.0], 1.0, cfg);
            s.run_to(1.0).unwrap();
            (s.y[0] - 1.0f64.cos()).abs()
        };
        let e1 = err_for(0.1);
        let e2 = err_for(0.05);
        let order = (e1 / e2).log2();
        assert!(order > 4.0, "observed order {order}");
    }

    #[test]
    fn lands_exactly_on_cap() {
        let cfg = OdeConfig::default();
        let mut s = Stepper::new(&Harmonic, 0.0, [1.0, 0.0], 1.0, cfg);
        let cap = 0.123456789;
        loop {
            let step = s.step_toward(cap).unwrap();
            if step.t1 >= cap {
                break;
            }
        }
        assert_eq!(s.t, cap);
    }
}
