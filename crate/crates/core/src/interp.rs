//! Cubic-Hermite interpolation on uniform grids, finite-difference slope
//! estimation, and the tensor-product patch used by the chart tables.

use crate::real::Real;

/// Uniform grid x_i = x0 + i*dx, i = 0..n-1.
#[derive(Debug, Clone)]
pub struct UniformGrid<R> {
    pub x0: R,
    pub dx: R,
    pub n: usize,
}

impl<R: Real> UniformGrid<R> {
    pub fn new(x0: R, x_end: R, n: usize) -> Self {
        assert!(n >= 2);
        let dx = (x_end - x0) / R::of_usize(n - 1);
        Self { x0, dx, n }
    }

    pub fn x_end(&self) -> R {
        self.x0 + self.dx * R::of_usize(self.n - 1)
    }

    pub fn point(&self, i: usize) -> R {
        self.x0 + self.dx * R::of_usize(i)
    }

    pub fn contains(&self, x: R) -> bool {
        x >= self.x0 && x <= self.x_end()
    }

    /// Interval index and local coordinate u in [0, 1]; clamps to the edge
    /// intervals so slightly-out-of-range queries extrapolate.
    pub fn locate(&self, x: R) -> (usize, R) {
        let s = (x - self.x0) / self.dx;
        let max_i = R::of_usize(self.n - 2);
        let i = s.floor().max(R::zero()).min(max_i);
        let idx = i.to_usize().unwrap_or(0).min(self.n - 2);
        (idx, s - R::of_usize(idx))
    }
}

/// Cubic Hermite on one interval; slopes are in value-per-x units.
#[inline]
pub fn hermite<R: Real>(v0: R, v1: R, d0: R, d1: R, dx: R, u: R) -> R {
    let u2 = u * u;
    let u3 = u2 * u;
    let three = R::of(3.0);
    let two = R::of(2.0);
    let h00 = two * u3 - three * u2 + R::one();
    let h10 = u3 - two * u2 + u;
    let h01 = -two * u3 + three * u2;
    let h11 = u3 - u2;
    h00 * v0 + h10 * dx * d0 + h01 * v1 + h11 * dx * d1
}

/// Derivative of the Hermite interpolant with respect to x.
#[inline]
pub fn hermite_deriv<R: Real>(v0: R, v1: R, d0: R, d1: R, dx: R, u: R) -> R {
    let u2 = u * u;
    let six = R::of(6.0);
    let three = R::of(3.0);
    let four = R::of(4.0);
    let two = R::of(2.0);
    let dh00 = six * u2 - six * u;
    let dh10 = three * u2 - four * u + R::one();
    let dh01 = -six * u2 + six * u;
    let dh11 = three * u2 - two * u;
    (dh00 * v0 + dh01 * v1) / dx + dh10 * d0 + dh11 * d1
}

/// Fourth-order finite-difference slopes on a uniform grid (5-point stencils,
/// one-sided at the boundary). Requires n >= 5.
pub fn fd_slopes<R: Real>(v: &[R], dx: R) -> Vec<R> {
    let n = v.len();
    assert!(n >= 5, "need at least 5 nodes for 4th-order slopes");
    let w = R::of(12.0) * dx;
    let mut d = vec![R::zero(); n];
    d[0] = (-R::of(25.0) * v[0] + R::of(48.0) * v[1] - R::of(36.0) * v[2] + R::of(16.0) * v[3]
        - R::of(3.0) * v[4])
        / w;
    d[1] = (-R::of(3.0) * v[0] - R::of(10.0) * v[1] + R::of(18.0) * v[2] - R::of(6.0) * v[3]
        + v[4])
        / w;
    for i in 2..n - 2 {
        d[i] = (v[i - 2] - R::of(8.0) * v[i - 1] + R::of(8.0) * v[i + 1] - v[i + 2]) / w;
    }
    d[n - 2] = (R::of(3.0) * v[n - 1] + R::of(10.0) * v[n - 2] - R::of(18.0) * v[n - 3]
        + R::of(6.0) * v[n - 4]
        - v[n - 5])
        / w;
    d[n - 1] = (R::of(25.0) * v[n - 1] - R::of(48.0) * v[n - 2] + R::of(36.0) * v[n - 3]
        - R::of(16.0) * v[n - 4]
        + R::of(3.0) * v[n - 5])
        / w;
    d
}

/// Fritsch-Carlson safeguard: scales slopes so the Hermite interpolant of
/// monotone data stays monotone. Returns the number of adjusted slopes.
pub fn enforce_monotone<R: Real>(v: &[R], d: &mut [R], dx: R) -> usize {
    let mut adjusted = 0;
    let three = R::of(3.0);
    for i in 0..v.len() - 1 {
        let secant = (v[i + 1] - v[i]) / dx;
        if secant == R::zero() {
            if d[i] != R::zero() || d[i + 1] != R::zero() {
                d[i] = R::zero();
                d[i + 1] = R::zero();
                adjusted += 1;
            }
            continue;
        }
        let a = d[i] / secant;
        let b = d[i + 1] / secant;
        if a < R::zero() {
            d[i] = R::zero();
            adjusted += 1;
        }
        if b < R::zero() {
            d[i + 1] = R::zero();
            adjusted += 1;
        }
        let s = a * a + b * b;
        if s > R::of(9.0) {
            let t = three / s.sqrt();
            d[i] = t * a * secant;
            d[i + 1] = t * b * secant;
            adjusted += 1;
        }
    }
    adjusted
}

/// Monotone 1-D Hermite table on a uniform grid with a Newton-based inverse.
#[derive(Debug, Clone)]
pub struct HermiteTable<R> {
    pub grid: UniformGrid<R>,
    pub values: Vec<R>,
    pub slopes: Vec<R>,
}

impl<R: Real> HermiteTable<R> {
    pub fn new(grid: UniformGrid<R>, values: Vec<R>, slopes: Vec<R>) -> Self {
        assert_eq!(grid.n, values.len());
        assert_eq!(grid.n, slopes.len());
        Self { grid, values, slopes }
    }

    pub fn eval(&self, x: R) -> R {
        let (i, u) = self.grid.locate(x);
        hermite(self.values[i], self.values[i + 1], self.slopes[i], self.slopes[i + 1], self.grid.dx, u)
    }

    pub fn eval_deriv(&self, x: R) -> R {
        let (i, u) = self.grid.locate(x);
        hermite_deriv(self.values[i], self.values[i + 1], self.slopes[i], self.slopes[i + 1], self.grid.dx, u)
    }

    /// Solves eval(x) = y on interval `i` by Newton with bisection fallback.
    /// The table must be strictly monotone increasing.
    pub fn invert_in_interval(&self, i: usize, y: R) -> R {
        let mut lo = R::zero();
        let mut hi = R::one();
        let mut u = R::of(0.5);
        let dx = self.grid.dx;
        let (v0, v1, d0, d1) = (self.values[i], self.values[i + 1], self.slopes[i], self.slopes[i + 1]);
        for _ in 0..60 {
            let f = hermite(v0, v1, d0, d1, dx, u) - y;
            if f == R::zero() {
                break;
            }
            if f > R::zero() {
                hi = u;
            } else {
                lo = u;
            }
            let df = hermite_deriv(v0, v1, d0, d1, dx, u) * dx;
            let mut next = u - f / df;
            if !(next > lo && next < hi) {
                next = (lo + hi) * R::of(0.5);
            }
            if (next - u).abs() <= R::of(1e-16) * u.abs().max(R::one()) {
                u = next;
                break;
            }
            u = next;
        }
        self.grid.point(i) + u * dx
    }

    /// Global inverse via binary search over node values (increasing table).
    pub fn invert(&self, y: R) -> R {
        let i = match self
            .values
            .binary_search_by(|v| v.partial_cmp(&y).expect("NaN in table"))
        {
            Ok(i) => i.min(self.grid.n - 2),
            Err(i) => i.saturating_sub(1).min(self.grid.n - 2),
        };
        self.invert_in_interval(i, y)
    }
}

/// Tensor-product cubic Hermite patch evaluation for one scalar table.
///
/// `v`, `vt` (d/dtheta), `vh` (d/dlnh), `vth` (cross) are row-major
/// [n_h x n_theta]; `jh`, `it` index the lower-left corner; `u`, `w` are the
/// local coordinates along lnh and theta.
#[allow(clippy::too_many_arguments)]
#[inline]
pub fn bicubic<R: Real>(
    v: &[R],
    vt: &[R],
    vh: &[R],
    vth: &[R],
    n_theta: usize,
    jh: usize,
    it: usize,
    dh: R,
    dt: R,
    u: R,
    w: R,
) -> R {
    let idx = |j: usize, i: usize| j * n_theta + i;
    let c00 = idx(jh, it);
    let c01 = idx(jh, it + 1);
    let c10 = idx(jh + 1, it);
    let c11 = idx(jh + 1, it + 1);
    // Interpolate along theta at both h-nodes: values and d/dlnh.
    let val0 = hermite(v[c00], v[c01], vt[c00], vt[c01], dt, w);
    let val1 = hermite(v[c10], v[c11], vt[c10], vt[c11], dt, w);
    let dh0 = hermite(vh[c00], vh[c01], vth[c00], vth[c01], dt, w);
    let dh1 = hermite(vh[c10], vh[c11], vth[c10], vth[c11], dt, w);
    hermite(val0, val1, dh0, dh1, dh, u)
}
