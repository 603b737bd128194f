//! Closed-form model objects: tie probabilities, employment rates, labor
//! supplies, wages and payoffs at a strategy profile.

pub mod diagnostics;
pub mod technology;

use crate::error::{Error, Result};
use serde::Serialize;
use std::sync::Arc;
pub use technology::{
    Cara, CobbDouglas, Employment, LinearEmployment, Production, RateEmployment, Utility,
};

/// Absolute tolerance for comparisons against zero.
pub const ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Group {
    Red,
    Green,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Education {
    A,
    B,
}

impl Group {
    pub fn other(self) -> Group {
        match self {
            Group::Red => Group::Green,
            Group::Green => Group::Red,
        }
    }
}

/// How the tie parameters are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TieForm {
    /// `p`, `kappa`, `lambda` are genuine tie probabilities with `p + kappa + lambda <= 1`.
    Probabilities,
    /// Only the products `c1 (p + kappa)` and `c1 lambda` are known. They are stored
    /// in `p` and `lambda` with `c1 = 1` and `kappa = 0`.
    RateProducts,
}

/// Structural parameters of the network, labor-market, production and utility blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    p: f64,
    kappa: f64,
    lambda: f64,
    c0: f64,
    c1: f64,
    theta: f64,
    alpha: f64,
    rho: f64,
    form: TieForm,
}

impl ModelParams {
    /// Parameters with an explicit tie-probability split.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p: f64,
        kappa: f64,
        lambda: f64,
        c0: f64,
        c1: f64,
        theta: f64,
        alpha: f64,
        rho: f64,
    ) -> Result<Self> {
        let params = ModelParams {
            p,
            kappa,
            lambda,
            c0,
            c1,
            theta,
            alpha,
            rho,
            form: TieForm::Probabilities,
        };
        params.validate()?;
        Ok(params)
    }

    /// Parameters given only through the identified products `c1 (p + kappa)`
    /// and `c1 lambda`.
    pub fn from_products(
        c0: f64,
        c1_p_kappa: f64,
        c1_lambda: f64,
        theta: f64,
        alpha: f64,
        rho: f64,
    ) -> Result<Self> {
        let params = ModelParams {
            p: c1_p_kappa,
            kappa: 0.0,
            lambda: c1_lambda,
            c0,
            c1: 1.0,
            theta,
            alpha,
            rho,
            form: TieForm::RateProducts,
        };
        params.validate()?;
        Ok(params)
    }

    /// The calibrated parameter set at `alpha = 0.5`.
    pub fn calibrated() -> Self {
        Self::from_products(9.5, 4.75, 14.25, 80_000.0, 0.5, 1e-4).expect("calibrated parameters are valid")
    }

    fn validate(&self) -> Result<()> {
        let finite = [
            self.p, self.kappa, self.lambda, self.c0, self.c1, self.theta, self.alpha, self.rho,
        ]
        .iter()
        .all(|v| v.is_finite());
        let bad = |msg: &str| Err(Error::InvalidParams(msg.to_string()));
        if !finite {
            return bad("all parameters must be finite");
        }
        if self.p < 0.0 || self.kappa < 0.0 {
            return bad("p and kappa must be non-negative");
        }
        if self.lambda <= 0.0 {
            return bad("lambda must be strictly positive");
        }
        if self.c0 <= 0.0 || self.c1 < 0.0 {
            return bad("c0 must be positive and c1 non-negative");
        }
        if self.theta <= 0.0 || self.rho <= 0.0 {
            return bad("theta and rho must be positive");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad("alpha must lie in (0, 1)");
        }
        if self.form == TieForm::Probabilities && self.p + self.kappa + self.lambda > 1.0 + ZERO_TOL {
            return bad("p + kappa + lambda must not exceed 1");
        }
        Ok(())
    }

    fn rebuilt(mut self, edit: impl FnOnce(&mut Self)) -> Result<Self> {
        edit(&mut self);
        self.validate()?;
        Ok(self)
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        self.rebuilt(|p| p.alpha = alpha)
    }

    pub fn with_rho(self, rho: f64) -> Result<Self> {
        self.rebuilt(|p| p.rho = rho)
    }

    pub fn with_theta(self, theta: f64) -> Result<Self> {
        self.rebuilt(|p| p.theta = theta)
    }

    pub fn with_c0(self, c0: f64) -> Result<Self> {
        self.rebuilt(|p| p.c0 = c0)
    }

    /// Changes `kappa` holding `p` and `lambda` fixed.
    pub fn with_kappa(self, kappa: f64) -> Result<Self> {
        self.rebuilt(|p| p.kappa = kappa)
    }

    /// Rescales the tie parameters so that `c1 (p + kappa)` becomes `value`,
    /// keeping the `p : kappa` proportions.
    pub fn with_c1_p_kappa(self, value: f64) -> Result<Self> {
        let current = self.c1_p_kappa();
        if current <= 0.0 {
            return self.rebuilt(|p| p.p = value / p.c1);
        }
        let scale = value / current;
        self.rebuilt(|p| {
            p.p *= scale;
            p.kappa *= scale;
        })
    }

    pub fn with_c1_lambda(self, value: f64) -> Result<Self> {
        self.rebuilt(|p| p.lambda = value / p.c1)
    }

    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn c0(&self) -> f64 {
        self.c0
    }
    pub fn c1(&self) -> f64 {
        self.c1
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn rho(&self) -> f64 {
        self.rho
    }
    pub fn form(&self) -> TieForm {
        self.form
    }

    /// Employment probability with direct search only, `c0 / (1 + c0)`.
    pub fn s0(&self) -> f64 {
        self.c0 / (1.0 + self.c0)
    }
    pub fn c1_p_kappa(&self) -> f64 {
        self.c1 * (self.p + self.kappa)
    }
    pub fn c1_lambda(&self) -> f64 {
        self.c1 * self.lambda
    }

    /// Threshold `lambda / (2 (p + kappa + lambda))` that decides the sign of the
    /// equilibrium wage gap relative to the wage-crossing share.
    pub fn wage_gap_threshold(&self) -> f64 {
        self.lambda / (2.0 * (self.p + self.kappa + self.lambda))
    }

    /// Tie probability between two workers.
    pub fn tie_probability(&self, same_group: bool, same_education: bool) -> f64 {
        let mut q = self.p;
        if same_group {
            q += self.lambda;
        }
        if same_education {
            q += self.kappa;
        }
        q
    }

    pub fn employment(&self) -> RateEmployment {
        RateEmployment { c0: self.c0, c1: self.c1 }
    }
    pub fn production(&self) -> CobbDouglas {
        CobbDouglas { theta: self.theta, alpha: self.alpha }
    }
    pub fn utility(&self) -> Cara {
        Cara { rho: self.rho }
    }
}

/// Shares `(mu_R, mu_G)` of Reds and Greens choosing education A.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct StrategyProfile {
    mu_r: f64,
    mu_g: f64,
}

impl StrategyProfile {
    /// Builds a profile, clamping both shares to `[0, 1]`.
    pub fn new(mu_r: f64, mu_g: f64) -> Self {
        debug_assert!(!mu_r.is_nan() && !mu_g.is_nan(), "NaN strategy share");
        StrategyProfile { mu_r: mu_r.clamp(0.0, 1.0), mu_g: mu_g.clamp(0.0, 1.0) }
    }

    pub fn symmetric(mu: f64) -> Self {
        Self::new(mu, mu)
    }

    pub fn mu_r(&self) -> f64 {
        self.mu_r
    }
    pub fn mu_g(&self) -> f64 {
        self.mu_g
    }
    pub fn mu(&self, group: Group) -> f64 {
        match group {
            Group::Red => self.mu_r,
            Group::Green => self.mu_g,
        }
    }
    pub fn mu_bar(&self) -> f64 {
        0.5 * (self.mu_r + self.mu_g)
    }

    /// Relabels the groups.
    pub fn swapped(&self) -> Self {
        StrategyProfile { mu_r: self.mu_g, mu_g: self.mu_r }
    }

    pub fn with(&self, group: Group, mu: f64) -> Self {
        match group {
            Group::Red => Self::new(mu, self.mu_g),
            Group::Green => Self::new(self.mu_r, mu),
        }
    }

    pub fn distance(&self, other: &StrategyProfile) -> f64 {
        (self.mu_r - other.mu_r).abs().max((self.mu_g - other.mu_g).abs())
    }

    /// Both labor supplies vanish only at these two corners.
    pub fn is_singular_corner(&self) -> bool {
        (self.mu_r == 0.0 && self.mu_g == 0.0) || (self.mu_r == 1.0 && self.mu_g == 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmploymentRates {
    pub s_ar: f64,
    pub s_ag: f64,
    pub s_br: f64,
    pub s_bg: f64,
}

impl EmploymentRates {
    pub fn get(&self, group: Group, education: Education) -> f64 {
        match (group, education) {
            (Group::Red, Education::A) => self.s_ar,
            (Group::Green, Education::A) => self.s_ag,
            (Group::Red, Education::B) => self.s_br,
            (Group::Green, Education::B) => self.s_bg,
        }
    }
}

/// Everything derived from a profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarketState {
    pub s_ar: f64,
    pub s_ag: f64,
    pub s_br: f64,
    pub s_bg: f64,
    pub l_a: f64,
    pub l_b: f64,
    pub w_a: f64,
    pub w_b: f64,
    pub pi_ar: f64,
    pub pi_ag: f64,
    pub pi_br: f64,
    pub pi_bg: f64,
    pub d_pi_r: f64,
    pub d_pi_g: f64,
}

impl MarketState {
    pub fn payoff(&self, group: Group, education: Education) -> f64 {
        match (group, education) {
            (Group::Red, Education::A) => self.pi_ar,
            (Group::Green, Education::A) => self.pi_ag,
            (Group::Red, Education::B) => self.pi_br,
            (Group::Green, Education::B) => self.pi_bg,
        }
    }

    pub fn payoff_gap(&self, group: Group) -> f64 {
        match group {
            Group::Red => self.d_pi_r,
            Group::Green => self.d_pi_g,
        }
    }

    pub fn employment(&self) -> EmploymentRates {
        EmploymentRates { s_ar: self.s_ar, s_ag: self.s_ag, s_br: self.s_br, s_bg: self.s_bg }
    }
}

/// The evaluable model: parameters plus employment, production and utility
/// primitives. Cheap to clone; safe to share across threads.
#[derive(Debug, Clone)]
pub struct Model {
    params: ModelParams,
    employment: Arc<dyn Employment>,
    production: Arc<dyn Production>,
    utility: Arc<dyn Utility>,
}

impl From<ModelParams> for Model {
    fn from(params: ModelParams) -> Self {
        Model::new(params)
    }
}

impl Model {
    /// Rate-based employment, Cobb-Douglas production and CARA utility.
    pub fn new(params: ModelParams) -> Self {
        Model {
            params,
            employment: Arc::new(params.employment()),
            production: Arc::new(params.production()),
            utility: Arc::new(params.utility()),
        }
    }

    /// Model with custom primitives. Only the tie parameters of `params` are
    /// used by the network block; `theta`, `alpha`, `rho`, `c0`, `c1` are ignored
    /// in favour of the supplied objects.
    pub fn with_technology(
        params: ModelParams,
        employment: Arc<dyn Employment>,
        production: Arc<dyn Production>,
        utility: Arc<dyn Utility>,
    ) -> Self {
        Model { params, employment, production, utility }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn employment_fn(&self) -> &dyn Employment {
        self.employment.as_ref()
    }

    pub fn employment_prob(&self, x: f64) -> Result<f64> {
        self.employment.prob(x)
    }

    pub fn utility(&self, w: f64) -> Result<f64> {
        self.utility.utility(w)
    }

    pub fn wages(&self, l_a: f64, l_b: f64) -> Result<(f64, f64)> {
        self.production.marginal_products(l_a, l_b)
    }

    pub fn output(&self, l_a: f64, l_b: f64) -> f64 {
        self.production.output(l_a, l_b)
    }

    /// `s((p + kappa + lambda) / 2)`: employment of a fully specialized group.
    pub fn s_high(&self) -> f64 {
        let q = &self.params;
        self.employment.prob(0.5 * (q.p + q.kappa + q.lambda)).expect("non-negative measure")
    }

    /// `s((p + kappa) / 2)`: employment of a lone deviator at complete segregation.
    pub fn s_low(&self) -> f64 {
        let q = &self.params;
        self.employment.prob(0.5 * (q.p + q.kappa)).expect("non-negative measure")
    }

    /// Same-education friend measures `(x_AR, x_AG, x_BR, x_BG)`.
    pub fn friend_measures(&self, profile: &StrategyProfile) -> [f64; 4] {
        let q = &self.params;
        let pk = q.p + q.kappa;
        let mu_bar = profile.mu_bar();
        let (mr, mg) = (profile.mu_r(), profile.mu_g());
        [
            pk * mu_bar + 0.5 * q.lambda * mr,
            pk * mu_bar + 0.5 * q.lambda * mg,
            pk * (1.0 - mu_bar) + 0.5 * q.lambda * (1.0 - mr),
            pk * (1.0 - mu_bar) + 0.5 * q.lambda * (1.0 - mg),
        ]
    }

    pub fn group_employment_rates(&self, profile: &StrategyProfile) -> EmploymentRates {
        let [x_ar, x_ag, x_br, x_bg] = self.friend_measures(profile);
        let s = |x: f64| self.employment.prob(x).expect("friend measures are non-negative");
        EmploymentRates { s_ar: s(x_ar), s_ag: s(x_ag), s_br: s(x_br), s_bg: s(x_bg) }
    }

    /// Effective supplies `(L_A, L_B)`: measures of employed A- and B-workers.
    pub fn labor_supplies(&self, profile: &StrategyProfile) -> (f64, f64) {
        let s = self.group_employment_rates(profile);
        supplies_from_rates(profile, &s)
    }

    pub fn market_state(&self, profile: &StrategyProfile) -> Result<MarketState> {
        let s = self.group_employment_rates(profile);
        let (l_a, l_b) = supplies_from_rates(profile, &s);
        let (w_a, w_b) = self.wages(l_a, l_b)?;
        let (u_a, u_b) = (self.utility(w_a)?, self.utility(w_b)?);
        let (pi_ar, pi_ag) = (s.s_ar * u_a, s.s_ag * u_a);
        let (pi_br, pi_bg) = (s.s_br * u_b, s.s_bg * u_b);
        Ok(MarketState {
            s_ar: s.s_ar,
            s_ag: s.s_ag,
            s_br: s.s_br,
            s_bg: s.s_bg,
            l_a,
            l_b,
            w_a,
            w_b,
            pi_ar,
            pi_ag,
            pi_br,
            pi_bg,
            d_pi_r: pi_ar - pi_br,
            d_pi_g: pi_ag - pi_bg,
        })
    }

    /// `(ΔΠ^R, ΔΠ^G)` at a profile with positive supplies.
    pub fn payoff_gaps(&self, profile: &StrategyProfile) -> Result<(f64, f64)> {
        let m = self.market_state(profile)?;
        Ok((m.d_pi_r, m.d_pi_g))
    }

    /// `G = 1 - w_B / w_A`.
    pub fn wage_gap(&self, profile: &StrategyProfile) -> Result<f64> {
        let (l_a, l_b) = self.labor_supplies(profile);
        let (w_a, w_b) = self.wages(l_a, l_b)?;
        Ok(1.0 - w_b / w_a)
    }
}

fn supplies_from_rates(profile: &StrategyProfile, s: &EmploymentRates) -> (f64, f64) {
    let (mr, mg) = (profile.mu_r(), profile.mu_g());
    let l_a = 0.5 * (mr * s.s_ar + mg * s.s_ag);
    let l_b = 0.5 * ((1.0 - mr) * s.s_br + (1.0 - mg) * s.s_bg);
    (l_a, l_b)
}
