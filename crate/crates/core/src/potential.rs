//! The coefficient a(x) (a positive, even cosine series) and the potential
//! G(x) = int_0^x a(s) s^{2n+1} ds with its derivatives and growth bounds.
//!
//! G is evaluated through a memoized Chebyshev decomposition: inside the
//! first period a power-factored interpolant keeps full relative accuracy
//! near zero, and beyond it the integral over [kP, kP+r] is expanded in
//! period-aligned moment integrals, so every evaluation is O(1) regardless
//! of |x| and free of cancellation (all terms are nonnegative).

use serde::{Deserialize, Serialize};

use crate::cheb::ChebSeries;
use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::quad;
use crate::real::Real;

/// Wire format: {"n":int, "m":int, "period":float, "cos_coeffs":[float,...]}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub n: u32,
    pub m: u32,
    pub period: f64,
    pub cos_coeffs: Vec<f64>,
}

#[derive(Debug, Clone)]
struct GCache<R> {
    /// W0(r) = int_0^1 a(r v) v^{2n+1} dv, so G(r) = r^{2n+2} W0(r) on [0, P].
    w0: ChebSeries<R>,
    /// M_i(r) = int_0^r a(u) u^i du on [0, P] for i = 0..=2n+1.
    moments: Vec<ChebSeries<R>>,
    /// Binomial coefficients C(2n+1, i).
    binom: Vec<R>,
    /// G(k P) for k = 0..prefix.len().
    prefix: Vec<R>,
}

/// A(x) = c_0 + sum_j c_j cos(2 pi j x / P) and the induced potential.
#[derive(Debug, Clone)]
pub struct PotentialModel<R> {
    params: EquationParams,
    coeffs: Vec<R>,
    period: R,
    a_min: R,
    a_max: R,
    cache: Option<GCache<R>>,
}

const DEFAULT_COVERAGE: f64 = 2048.0;
const MAX_PREFIX_LEN: usize = 1 << 21;

impl<R: Real> PotentialModel<R> {
    pub fn new(params: EquationParams, cos_coeffs: Vec<R>, period: R) -> Result<Self> {
        Self::with_coverage(params, cos_coeffs, period, R::of(DEFAULT_COVERAGE))
    }

    /// `x_cover`: |x| range over which the prefix table makes G O(1); beyond
    /// it evaluation falls back to a per-period summation loop.
    pub fn with_coverage(
        params: EquationParams,
        cos_coeffs: Vec<R>,
        period: R,
        x_cover: R,
    ) -> Result<Self> {
        if cos_coeffs.is_empty() {
            return Err(Error::Config("cosine series needs at least c_0".into()));
        }
        if !(period > R::zero()) || !period.is_finite() {
            return Err(Error::Config(format!("period must be positive, got {period}")));
        }
        if cos_coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Config("non-finite cosine coefficient".into()));
        }
        let tail: R = cos_coeffs.iter().skip(1).fold(R::zero(), |s, c| s + c.abs());
        let a_min = cos_coeffs[0] - tail;
        let a_max = cos_coeffs[0] + tail;
        if !(a_min > R::zero()) {
            return Err(Error::Config(format!(
                "positivity certificate failed: c_0 - sum|c_j| = {a_min} must be > 0"
            )));
        }
        let mut model = Self {
            params,
            coeffs: cos_coeffs,
            period,
            a_min,
            a_max,
            cache: None,
        };
        if model.coeffs.len() > 1 {
            model.cache = Some(model.build_cache(x_cover)?);
        }
        Ok(model)
    }

    pub fn from_spec(spec: &PotentialSpec) -> Result<Self> {
        let params = EquationParams::new(spec.n, spec.m)?;
        Self::new(
            params,
            spec.cos_coeffs.iter().map(|&c| R::of(c)).collect(),
            R::of(spec.period),
        )
    }

    pub fn to_spec(&self) -> PotentialSpec {
        PotentialSpec {
            n: self.params.n(),
            m: self.params.m(),
            period: self.period.as_f64(),
            cos_coeffs: self.coeffs.iter().map(|c| c.as_f64()).collect(),
        }
    }

    pub fn params(&self) -> EquationParams {
        self.params
    }

    pub fn period(&self) -> R {
        self.period
    }

    /// Certified lower bound on a(x): c_0 - sum|c_j|.
    pub fn a_min(&self) -> R {
        self.a_min
    }

    /// Certified upper bound on a(x): c_0 + sum|c_j|.
    pub fn a_max(&self) -> R {
        self.a_max
    }

    pub fn eval_a(&self, x: R) -> R {
        let two_pi = R::PI() + R::PI();
        let base = two_pi * x / self.period;
        let mut v = self.coeffs[0];
        for (j, &c) in self.coeffs.iter().enumerate().skip(1) {
            v += c * (base * R::of_usize(j)).cos();
        }
        v
    }

    pub fn eval_a_prime(&self, x: R) -> R {
        let two_pi = R::PI() + R::PI();
        let base = two_pi * x / self.period;
        let mut v = R::zero();
        for (j, &c) in self.coeffs.iter().enumerate().skip(1) {
            let jf = R::of_usize(j);
            v -= c * jf * two_pi / self.period * (base * jf).sin();
        }
        v
    }

    /// G(x); even in x, O(1) per call within the covered range.
    pub fn eval_g(&self, x: R) -> R {
        let x = x.abs();
        if x == R::zero() {
            return R::zero();
        }
        let q = self.params.restoring_power() + 1; // 2n+2
        match &self.cache {
            None => self.coeffs[0] * x.powi(q) / R::of_usize(q as usize),
            Some(cache) => {
                if x <= self.period {
                    return x.powi(q) * cache.w0.eval(x);
                }
                let k = (x / self.period).floor();
                let r = x - k * self.period;
                let ki = k.to_usize().unwrap_or(usize::MAX);
                if ki < cache.prefix.len() {
                    cache.prefix[ki] + self.segment_sum(cache, k * self.period, r)
                } else {
                    // Beyond the prefix table: accumulate period by period.
                    let k0 = cache.prefix.len() - 1;
                    let mut g = cache.prefix[k0];
                    let mut kk = R::of_usize(k0);
                    while kk < k {
                        g += self.segment_sum(cache, kk * self.period, self.period);
                        kk += R::one();
                    }
                    g + self.segment_sum(cache, k * self.period, r)
                }
            }
        }
    }

    /// int_{base}^{base+r} a(u) u^{2n+1} du for base a multiple of the period.
    fn segment_sum(&self, cache: &GCache<R>, base: R, r: R) -> R {
        let top = self.params.restoring_power() as usize; // 2n+1
        let mut sum = R::zero();
        let mut base_pow = R::one(); // base^{2n+1-i} built downward
        // Evaluate from i = 2n+1 down to 0 so powers of `base` grow by one
        // multiplication per term.
        for i in (0..=top).rev() {
            sum += cache.binom[i] * base_pow * cache.moments[i].eval(r);
            base_pow *= base;
        }
        sum
    }

    /// G'(x) = a(x) x^{2n+1}, odd.
    pub fn eval_g1(&self, x: R) -> R {
        self.eval_a(x) * x.powi(self.params.restoring_power())
    }

    /// G''(x) = a'(x) x^{2n+1} + (2n+1) a(x) x^{2n}, even.
    pub fn eval_g2(&self, x: R) -> R {
        let p = self.params.restoring_power();
        self.eval_a_prime(x) * x.powi(p)
            + R::of_usize(p as usize) * self.eval_a(x) * x.powi(p - 1)
    }

    fn build_cache(&self, x_cover: R) -> Result<GCache<R>> {
        let top = self.params.restoring_power() as usize;
        let q = top + 1;
        let tol = R::of(1e-15);
        let max_deg = 1 << 14;

        // Power-factored interpolant for the first period: W0 via 64-point
        // Gauss-Legendre in the inner integral (the integrand is entire).
        let gl = gauss_legendre_64::<R>();
        let w0 = ChebSeries::fit(
            |r: R| {
                let mut s = R::zero();
                for &(node, weight) in &gl {
                    s += weight * self.eval_a(r * node) * node.powi(top as i32);
                }
                s
            },
            R::zero(),
            self.period,
            tol,
            max_deg,
        )?;

        let mut moments = Vec::with_capacity(q);
        for i in 0..=top {
            let fitted = ChebSeries::fit(
                |u: R| self.eval_a(u) * u.powi(i as i32),
                R::zero(),
                self.period,
                tol,
                max_deg,
            )?;
            moments.push(fitted.antiderivative());
        }

        let binom: Vec<R> = (0..=top).map(|i| R::of_usize(binomial(top, i))).collect();

        let n_periods = (x_cover / self.period)
            .ceil()
            .to_usize()
            .unwrap_or(MAX_PREFIX_LEN)
            .min(MAX_PREFIX_LEN);
        let mut prefix = Vec::with_capacity(n_periods + 1);
        prefix.push(R::zero());
        let cache_stub = GCache {
            w0: w0.clone(),
            moments: moments.clone(),
            binom: binom.clone(),
            prefix: Vec::new(),
        };
        let mut g = R::zero();
        for k in 0..n_periods {
            g += self.segment_sum(&cache_stub, R::of_usize(k) * self.period, self.period);
            prefix.push(g);
        }
        Ok(GCache { w0, moments, binom, prefix })
    }

    /// Direct adaptive quadrature of the defining integral; the slow
    /// reference route used by tests and the cache-free fallback.
    pub fn eval_g_quadrature(&self, x: R, rel_tol: R) -> Result<R> {
        let x = x.abs();
        quad::integrate(
            &|s: R| self.eval_a(s) * s.powi(self.params.restoring_power()),
            R::zero(),
            x,
            rel_tol,
        )
    }

    /// Empirical constants for the five growth inequalities of the potential
    /// over log-spaced samples of |x| in [x_lo, x_hi], both signs.
    pub fn check_growth_bounds(&self, x_lo: R, x_hi: R, samples: usize) -> Result<BoundReport> {
        if !(x_lo >= R::one()) {
            return Err(Error::Domain(format!(
                "growth-bound range must exclude |x| < 1, got x_lo = {x_lo}"
            )));
        }
        if !(x_hi > x_lo) || samples < 2 {
            return Err(Error::Domain("need x_hi > x_lo and at least 2 samples".into()));
        }
        let q = self.params.restoring_power(); // 2n+1
        let names = [
            "G/x^{2n+2}",
            "|G'|/|x|^{2n+1}",
            "|G''|/(|x|^{2n+1}+x^{2n})",
            "|G/G'|/|x|",
            "|G G''/G'^2|/(|x|+1)",
        ];
        let two_sided = [true, true, false, true, false];
        let mut rows: Vec<BoundRow> = names
            .iter()
            .zip(two_sided)
            .map(|(name, ts)| BoundRow {
                name: name.to_string(),
                c_low: f64::INFINITY,
                c_high: f64::NEG_INFINITY,
                two_sided: ts,
            })
            .collect();
        let ratio_l = (x_hi / x_lo).ln();
        for s in 0..samples {
            let mag = x_lo * (ratio_l * R::of_usize(s) / R::of_usize(samples - 1)).exp();
            for sign in [R::one(), -R::one()] {
                let x = mag * sign;
                let g = self.eval_g(x);
                let g1 = self.eval_g1(x);
                let g2 = self.eval_g2(x);
                let ax = x.abs();
                let ratios = [
                    g / ax.powi(q + 1),
                    g1.abs() / ax.powi(q),
                    g2.abs() / (ax.powi(q) + ax.powi(q - 1)),
                    (g / g1).abs() / ax,
                    (g * g2 / (g1 * g1)).abs() / (ax + R::one()),
                ];
                for (row, ratio) in rows.iter_mut().zip(ratios) {
                    let r = ratio.as_f64();
                    if !r.is_finite() {
                        return Err(Error::LemmaViolation(format!(
                            "ratio {} is not finite at x = {x}",
                            row.name
                        )));
                    }
                    if row.two_sided && r <= 0.0 {
                        return Err(Error::LemmaViolation(format!(
                            "two-sided ratio {} is not positive at x = {x} (got {r})",
                            row.name
                        )));
                    }
                    row.c_low = row.c_low.min(r);
                    row.c_high = row.c_high.max(r);
                }
            }
        }
        Ok(BoundReport { rows })
    }
}

/// Empirical bound constants for each growth inequality.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundRow {
    pub name: String,
    pub c_low: f64,
    pub c_high: f64,
    pub two_sided: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut num = 1usize;
    let mut den = 1usize;
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// 64-point Gauss-Legendre nodes/weights on [0, 1], generated by Newton
/// iteration on the Legendre polynomial at first use.
fn gauss_legendre_64<R: Real>() -> Vec<(R, R)> {
    let n = 64usize;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Initial guess (Chebyshev approximation to the roots).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x).
            let mut p0 = 1.0f64;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        // Map from [-1, 1] to [0, 1].
        out.push((R::of(0.5 * (x + 1.0)), R::of(0.5 * w)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pure_power() -> PotentialModel<f64> {
        let p = EquationParams::new(3, 2).unwrap();
        PotentialModel::new(p, vec![1.0], 1.0).unwrap()
    }

    fn wobbly() -> PotentialModel<f64> {
        let p = EquationParams::new(3, 2).unwrap();
        PotentialModel::new(p, vec![1.5, 1.0], 1.0).unwrap()
    }

    #[test]
    fn constant_coefficient() {
        let m = pure_power();
        assert_eq!(m.eval_a(17.3), 1.0);
        assert_eq!(m.eval_g(2.0), 32.0); // 2^8 / 8
        assert_eq!(m.eval_g(0.0), 0.0);
        assert_eq!(m.eval_g1(2.0), 128.0); // 2^7
        assert_eq!(m.eval_g1(0.0), 0.0);
    }

    #[test]
    fn cosine_series_values() {
        let m = wobbly();
        assert!((m.eval_a(0.0) - 2.5).abs() < 1e-15);
        assert!((m.eval_a(0.5) - 0.5).abs() < 1e-15);
        assert!((m.eval_g1(1.0) - 2.5).abs() < 1e-12); // a(1) * 1^7
        assert_eq!(m.a_min(), 0.5);
        assert_eq!(m.a_max(), 2.5);
    }

    /// Independent oracle: composite Simpson on a fixed 10^6-point grid.
    fn simpson_oracle(m: &PotentialModel<f64>, x: f64) -> f64 {
        let n = 1_000_000usize; // even
        let h = x / n as f64;
        let f = |s: f64| m.eval_a(s) * s.powi(7);
        let mut acc = f(0.0) + f(x);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn wobbly_g_matches_fixed_grid_oracle() {
        let m = wobbly();
        // Computed independently: G(1) = 3/16 + int_0^1 s^7 cos(2 pi s) ds.
        let frozen = 0.271027412292383384;
        let oracle = simpson_oracle(&m, 1.0);
        assert!((oracle - frozen).abs() < 1e-12, "oracle={oracle}");
        assert!((m.eval_g(1.0) - frozen).abs() < 1e-13, "g={}", m.eval_g(1.0));
    }

    #[test]
    fn g_matches_adaptive_quadrature_across_scales() {
        let m = wobbly();
        for &x in &[0.3, 0.97, 1.0, 2.7, 9.99, 55.5, 137.45, 411.0] {
            let direct = m.eval_g_quadrature(x, 1e-13).unwrap();
            let cached = m.eval_g(x);
            let rel = ((cached - direct) / direct).abs();
            assert!(rel < 1e-11, "x={x} rel={rel:e}");
        }
    }

    #[test]
    fn g_accurate_near_zero() {
        let m = wobbly();
        // Leading behavior G(x) ~ a(0) x^8 / 8 = 2.5 x^8 / 8 as x -> 0.
        for &x in &[1e-6, 1e-3] {
            let g = m.eval_g(x);
            let lead = 2.5 * x.powi(8) / 8.0;
            assert!((g / lead - 1.0).abs() < 0.01, "x={x} g={g:e} lead={lead:e}");
        }
        // Full relative accuracy against direct quadrature at tiny x.
        for &x in &[1e-6, 1e-3, 0.05, 0.41] {
            let g = m.eval_g(x);
            let direct = m.eval_g_quadrature(x, 1e-13).unwrap();
            assert!(((g - direct) / direct).abs() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn evenness_and_derivative_consistency() {
        let m = wobbly();
        let mut x = 0.1f64;
        while x < 10.0 {
            assert_eq!(m.eval_g(x), m.eval_g(-x));
            let dh = 1e-5 * x.max(0.1);
            let fd = (m.eval_g(x + dh) - m.eval_g(x - dh)) / (2.0 * dh);
            let rel = ((fd - m.eval_g1(x)) / m.eval_g1(x)).abs();
            assert!(rel < 1e-6, "x={x} rel={rel:e}");
            // Second derivative by differencing G'.
            let fd2 = (m.eval_g1(x + dh) - m.eval_g1(x - dh)) / (2.0 * dh);
            let scale = m.eval_g2(x).abs().max(1.0);
            assert!((fd2 - m.eval_g2(x)).abs() / scale < 1e-6, "x={x}");
            x *= 1.37;
        }
    }

    #[test]
    fn positivity_certificate() {
        let p = EquationParams::new(3, 2).unwrap();
        assert!(PotentialModel::<f64>::new(p, vec![1.0, 1.0], 1.0).is_err());
        assert!(PotentialModel::<f64>::new(p, vec![1.0, 0.5, 0.5], 1.0).is_err());
        let m = PotentialModel::<f64>::new(p, vec![2.0, 0.5, 0.25], 1.0).unwrap();
        // Dense grid minimum respects the certificate.
        let mut min_a = f64::INFINITY;
        for i in 0..10_000 {
            min_a = min_a.min(m.eval_a(i as f64 * 1e-4));
        }
        assert!(min_a >= m.a_min());
    }

    #[test]
    fn power_law_envelope() {
        let m = wobbly();
        let mut x = 1.0f64;
        while x <= 100.0 {
            let ratio = m.eval_g(x) / x.powi(8);
            assert!(ratio >= m.a_min() / 8.0 - 1e-12, "x={x} ratio={ratio}");
            assert!(ratio <= m.a_max() / 8.0 + 1e-12, "x={x} ratio={ratio}");
            x *= 1.1;
        }
    }

    #[test]
    fn growth_bounds_pure_power() {
        let m = pure_power();
        let report = m.check_growth_bounds(1.0, 100.0, 40).unwrap();
        let g_row = &report.rows[0];
        assert!((g_row.c_low - 0.125).abs() < 1e-12);
        assert!((g_row.c_high - 0.125).abs() < 1e-12);
    }

    #[test]
    fn growth_bounds_wobbly() {
        let m = wobbly();
        let report = m.check_growth_bounds(1.0, 200.0, 120).unwrap();
        let g_row = &report.rows[0];
        assert!(g_row.c_low >= 0.5 / 8.0 - 1e-12);
        assert!(g_row.c_high <= 2.5 / 8.0 + 1e-12);
        // Mean-value bound: G/G' = [a(xi)/a(x)] * x/(2n+2), so the ratio over
        // |x| sits inside [m/M, M/m] scaled by 1/(2n+2) = 1/8.
        let r = &report.rows[3];
        assert!(r.c_low >= 0.2 / 8.0 - 1e-12 && r.c_high <= 5.0 / 8.0 + 1e-12, "{r:?}");
        // Upper-bound-only rows must at least be finite with positive c_high.
        for row in &report.rows {
            assert!(row.c_high.is_finite() && row.c_high > 0.0, "{row:?}");
        }
    }

    #[test]
    fn growth_bounds_domain_check() {
        let m = wobbly();
        assert!(m.check_growth_bounds(0.5, 10.0, 8).is_err());
    }

    #[test]
    fn spec_round_trip_bit_exact() {
        let m = wobbly();
        let spec = m.to_spec();
        let js = serde_json::to_string(&spec).unwrap();
        let back: PotentialSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(spec, back);
        assert_eq!(js, serde_json::to_string(&back).unwrap());
        let m2: PotentialModel<f64> = PotentialModel::from_spec(&back).unwrap();
        assert_eq!(m2.eval_g(3.7), m.eval_g(3.7));
    }
}
