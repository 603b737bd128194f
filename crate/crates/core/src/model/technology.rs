//! Pluggable primitives: the employment function, production and utility.
//!
//! The model only talks to these through the traits below. The shipped
//! implementations are the rate-based employment function, Cobb-Douglas
//! production and CARA utility; [`LinearEmployment`] exists mainly for
//! checking the welfare concavity condition on a function with `s'' = 0`.

use crate::error::{Error, Result};
use std::fmt::Debug;

/// Employment probability as a function of the same-education friend measure.
pub trait Employment: Debug + Send + Sync {
    fn prob(&self, x: f64) -> Result<f64>;
    fn derivative(&self, x: f64) -> f64;
    fn second_derivative(&self, x: f64) -> f64;
}

/// Constant-returns production of the single good from effective A and B labor.
pub trait Production: Debug + Send + Sync {
    fn output(&self, l_a: f64, l_b: f64) -> f64;
    /// Marginal products `(∂F/∂L_A, ∂F/∂L_B)`, i.e. the competitive wages.
    fn marginal_products(&self, l_a: f64, l_b: f64) -> Result<(f64, f64)>;
}

/// Utility of consumption; must satisfy `U(0) = 0`.
pub trait Utility: Debug + Send + Sync {
    fn utility(&self, w: f64) -> Result<f64>;
}

/// `s(x) = c(x) / (1 + c(x))` with `c(x) = c0 + c1 x`: the stationary employment
/// share of a worker who loses her job at rate 1 and finds one at rate `c(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEmployment {
    pub c0: f64,
    pub c1: f64,
}

impl RateEmployment {
    pub fn arrival_rate(&self, x: f64) -> f64 {
        self.c0 + self.c1 * x
    }
}

impl Employment for RateEmployment {
    fn prob(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Domain { what: "friend measure", value: x });
        }
        let c = self.arrival_rate(x);
        Ok(c / (1.0 + c))
    }

    fn derivative(&self, x: f64) -> f64 {
        let d = 1.0 + self.arrival_rate(x);
        self.c1 / (d * d)
    }

    fn second_derivative(&self, x: f64) -> f64 {
        let d = 1.0 + self.arrival_rate(x);
        -2.0 * self.c1 * self.c1 / (d * d * d)
    }
}

/// `s(x) = intercept + slope * x`, capped below 1 by the caller's domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearEmployment {
    pub intercept: f64,
    pub slope: f64,
}

impl Employment for LinearEmployment {
    fn prob(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Domain { what: "friend measure", value: x });
        }
        let s = self.intercept + self.slope * x;
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Domain { what: "linear employment probability", value: s });
        }
        Ok(s)
    }

    fn derivative(&self, _x: f64) -> f64 {
        self.slope
    }

    fn second_derivative(&self, _x: f64) -> f64 {
        0.0
    }
}

/// `F(L_A, L_B) = θ L_A^α L_B^(1-α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CobbDouglas {
    pub theta: f64,
    pub alpha: f64,
}

impl Production for CobbDouglas {
    fn output(&self, l_a: f64, l_b: f64) -> f64 {
        self.theta * l_a.powf(self.alpha) * l_b.powf(1.0 - self.alpha)
    }

    fn marginal_products(&self, l_a: f64, l_b: f64) -> Result<(f64, f64)> {
        if !(l_a > 0.0 && l_b > 0.0) {
            return Err(Error::SingularSupply { l_a, l_b });
        }
        let ratio = l_b / l_a;
        let w_a = self.theta * self.alpha * ratio.powf(1.0 - self.alpha);
        let w_b = self.theta * (1.0 - self.alpha) * ratio.powf(-self.alpha);
        Ok((w_a, w_b))
    }
}

/// Constant absolute risk aversion, `U(w) = 1 - exp(-ρ w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cara {
    pub rho: f64,
}

impl Utility for Cara {
    fn utility(&self, w: f64) -> Result<f64> {
        if !(w >= 0.0) {
            return Err(Error::Domain { what: "wage", value: w });
        }
        Ok(-(-self.rho * w).exp_m1())
    }
}
