//! Degree indices of the equation x'' + a(x) x^{2n+1} + p(t) x^{2m+1} = 0
//! and the exponents derived from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Degree pair (n, m) with the admissibility constraint n+2 <= 2m+1 < 2n+1.
///
/// All scaling exponents of the construction are rational functions of n and
/// m; they are exposed as methods so call sites never re-derive them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationParams {
    n: u32,
    m: u32,
}

impl EquationParams {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config(format!("n must be >= 3, got {n}")));
        }
        let lhs = n + 2;
        let mid = 2 * m + 1;
        let rhs = 2 * n + 1;
        if !(lhs <= mid && mid < rhs) {
            return Err(Error::Config(format!(
                "degrees must satisfy n+2 <= 2m+1 < 2n+1; got n={n}, m={m} ({lhs} <= {mid} < {rhs} fails)"
            )));
        }
        let p = Self { n, m };
        debug_assert!(p.growth_base() > 1.0);
        debug_assert!(p.action_rate_exponent() > 1.0);
        debug_assert!(p.cycle_gain_exponent() > 0.0 && p.cycle_gain_exponent() < 1.0);
        debug_assert!(p.frequency_exponent() > 0.0 && p.frequency_exponent() < 1.0);
        Ok(p)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Restoring-force power 2n+1.
    pub fn restoring_power(&self) -> i32 {
        (2 * self.n + 1) as i32
    }

    /// Forcing power 2m+1.
    pub fn forcing_power(&self) -> i32 {
        (2 * self.m + 1) as i32
    }

    /// alpha = n/(n+2): frequency grows like I^alpha, cycle times shrink like I^-alpha.
    pub fn frequency_exponent(&self) -> f64 {
        self.n as f64 / (self.n as f64 + 2.0)
    }

    /// beta = (2m+2)/(n+2): exponent of the action rate dI/dt.
    pub fn action_rate_exponent(&self) -> f64 {
        (2.0 * self.m as f64 + 2.0) / (self.n as f64 + 2.0)
    }

    /// gamma = (2m+2-n)/(n+2): per-cycle action gain scales like sigma * I^gamma.
    pub fn cycle_gain_exponent(&self) -> f64 {
        (2.0 * self.m as f64 + 2.0 - self.n as f64) / (self.n as f64 + 2.0)
    }

    /// delta = (2m+1-n)/(n+2): exponent of the angle-rate perturbation.
    pub fn angle_perturbation_exponent(&self) -> f64 {
        (2.0 * self.m as f64 + 1.0 - self.n as f64) / (self.n as f64 + 2.0)
    }

    /// l = (2m+1)/(n+2) + 1/(2(n+2)) > 1: base of the stage-wise
    /// double-exponential growth floor I_{j_k} >= c * I_0^{l^k}.
    pub fn growth_base(&self) -> f64 {
        (2.0 * self.m as f64 + 1.0) / (self.n as f64 + 2.0) + 0.5 / (self.n as f64 + 2.0)
    }

    /// 1/(n+2): amplitude scales like I^{1/(n+2)}.
    pub fn amplitude_exponent(&self) -> f64 {
        1.0 / (self.n as f64 + 2.0)
    }

    /// (2n+2)/(n+2): energy in terms of action, h ~ I^{(2n+2)/(n+2)}.
    pub fn energy_exponent(&self) -> f64 {
        (2.0 * self.n as f64 + 2.0) / (self.n as f64 + 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_pair_accepted() {
        let p = EquationParams::new(3, 2).unwrap();
        assert_eq!(p.restoring_power(), 7);
        assert_eq!(p.forcing_power(), 5);
        assert!((p.frequency_exponent() - 0.6).abs() < 1e-15);
        assert!((p.action_rate_exponent() - 1.2).abs() < 1e-15);
        assert!((p.cycle_gain_exponent() - 0.6).abs() < 1e-15);
        assert!((p.angle_perturbation_exponent() - 0.4).abs() < 1e-15);
        assert!((p.growth_base() - 1.1).abs() < 1e-15);
        assert!((p.energy_exponent() - 1.6).abs() < 1e-15);
    }

    #[test]
    fn constraint_rejections() {
        // n=2 admits no m at all, and n >= 3 is required anyway.
        assert!(EquationParams::new(2, 1).is_err());
        // 2m+1 = 2n+1 violates the strict upper bound.
        assert!(EquationParams::new(3, 3).is_err());
        // 2m+1 < n+2 violates the lower bound.
        assert!(EquationParams::new(5, 2).is_err());
        // Larger valid pairs.
        assert!(EquationParams::new(5, 3).is_ok());
        assert!(EquationParams::new(5, 4).is_ok());
        assert!(EquationParams::new(4, 3).is_ok());
    }
}
