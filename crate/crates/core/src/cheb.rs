//! Chebyshev series on an interval: adaptive fit, Clenshaw evaluation, and
//! exact antiderivative. Used to memoize the potential's moment integrals.

use crate::error::{Error, Result};
use crate::real::Real;

/// f(x) = sum_{k=0}^{N} c_k T_k(u), u the affine map of [a, b] onto [-1, 1].
#[derive(Debug, Clone)]
pub struct ChebSeries<R> {
    pub a: R,
    pub b: R,
    pub coeffs: Vec<R>,
}

impl<R: Real> ChebSeries<R> {
    /// Interpolates `f` at Chebyshev-Lobatto points, doubling the degree until
    /// the tail of the coefficient sequence drops below `tol` relative to the
    /// largest coefficient.
    pub fn fit<F: Fn(R) -> R>(f: F, a: R, b: R, tol: R, max_degree: usize) -> Result<Self> {
        assert!(b > a, "degenerate interval");
        let mut n = 16usize;
        loop {
            let coeffs = Self::coeffs_at_degree(&f, a, b, n);
            let scale = coeffs.iter().fold(R::zero(), |m, c| m.max(c.abs()));
            let tail = coeffs.iter().rev().take(4).fold(R::zero(), |m, c| m.max(c.abs()));
            if scale == R::zero() || tail <= tol * scale {
                let mut s = Self { a, b, coeffs };
                s.trim(tol * scale);
                return Ok(s);
            }
            n *= 2;
            if n > max_degree {
                return Err(Error::Numerical(format!(
                    "Chebyshev fit on [{a}, {b}] did not converge by degree {max_degree}"
                )));
            }
        }
    }

    fn coeffs_at_degree<F: Fn(R) -> R>(f: &F, a: R, b: R, n: usize) -> Vec<R> {
        let half = R::of(0.5);
        let mid = (a + b) * half;
        let rad = (b - a) * half;
        let pi = R::PI();
        let nf = R::of_usize(n);
        // Lobatto samples x_i = cos(pi i / n).
        let vals: Vec<R> = (0..=n)
            .map(|i| {
                let u = (pi * R::of_usize(i) / nf).cos();
                f(mid + rad * u)
            })
            .collect();
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let kf = R::of_usize(k);
            let mut s = half * (vals[0] + vals[n] * if k % 2 == 0 { R::one() } else { -R::one() });
            for (i, v) in vals.iter().enumerate().take(n).skip(1) {
                s += *v * (pi * kf * R::of_usize(i) / nf).cos();
            }
            let mut c = s * R::of(2.0) / nf;
            if k == 0 || k == n {
                c = c * half;
            }
            coeffs.push(c);
        }
        coeffs
    }

    fn trim(&mut self, floor: R) {
        while self.coeffs.len() > 2 && self.coeffs.last().map_or(false, |c| c.abs() <= floor) {
            self.coeffs.pop();
        }
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: R) -> R {
        let half = R::of(0.5);
        let u = (x - (self.a + self.b) * half) / ((self.b - self.a) * half);
        let two_u = u + u;
        let mut b1 = R::zero();
        let mut b2 = R::zero();
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + two_u * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + u * b1 - b2
    }

    /// Antiderivative with F(a) = 0, as another Chebyshev series.
    pub fn antiderivative(&self) -> Self {
        let n = self.coeffs.len() - 1;
        let c = |k: usize| -> R {
            if k <= n {
                self.coeffs[k]
            } else {
                R::zero()
            }
        };
        let half = R::of(0.5);
        let rad = (self.b - self.a) * half;
        let mut b = vec![R::zero(); n + 2];
        b[1] = (c(0) - c(2) * half) * rad;
        for (j, bj) in b.iter_mut().enumerate().skip(2) {
            *bj = (c(j - 1) - c(j + 1)) / R::of_usize(2 * j) * rad;
        }
        // Fix the constant so the antiderivative vanishes at the left endpoint.
        let mut at_left = R::zero();
        for (j, bj) in b.iter().enumerate().skip(1) {
            let sign = if j % 2 == 0 { R::one() } else { -R::one() };
            at_left += sign * *bj;
        }
        b[0] = -at_left;
        Self { a: self.a, b: self.b, coeffs: b }
    }
}
