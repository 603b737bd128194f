use netseg::model::{Cara, Employment, RateEmployment, Utility};
use netseg::{Education, Error, Group, Model, ModelParams, StrategyProfile};
use proptest::prelude::*;

fn calibrated(alpha: f64) -> Model {
    Model::new(ModelParams::calibrated().with_alpha(alpha).unwrap())
}

fn split(p: f64, kappa: f64, lambda: f64) -> ModelParams {
    ModelParams::new(p, kappa, lambda, 9.5, 25.0, 80_000.0, 0.5, 1e-4).unwrap()
}

/// Friend measure by summing tie probability times mass over every
/// (group, education) cell with the agent's education.
fn friend_measure_by_partition(q: &ModelParams, profile: &StrategyProfile, group: Group, ed: Education) -> f64 {
    let mut x = 0.0;
    for other in [Group::Red, Group::Green] {
        let mass_a = profile.mu(other) / 2.0;
        let mass = if ed == Education::A { mass_a } else { 0.5 - mass_a };
        x += mass * q.tie_probability(other == group, true);
    }
    x
}

#[test]
fn tie_probability_table() {
    let q = split(0.09, 0.10, 0.57);
    let close = |a: f64, b: f64| (a - b).abs() < 1e-15;
    assert!(close(q.tie_probability(true, true), 0.76));
    assert!(close(q.tie_probability(true, false), 0.66));
    assert!(close(q.tie_probability(false, true), 0.19));
    assert!(close(q.tie_probability(false, false), 0.09));
}

#[test]
fn split_exceeding_one_is_rejected() {
    assert!(matches!(ModelParams::new(0.3, 0.2, 0.6, 9.5, 25.0, 8e4, 0.5, 1e-4), Err(Error::InvalidParams(_))));
    assert!(ModelParams::new(0.1, 0.1, 0.0, 9.5, 25.0, 8e4, 0.5, 1e-4).is_err());
}

#[test]
fn employment_function_reference_points() {
    let m = calibrated(0.5);
    assert!((m.employment_prob(0.0).unwrap() - 19.0 / 21.0).abs() < 1e-15);
    assert!((m.employment_prob(9.5).unwrap() - 0.95).abs() < 1e-15);
    assert!((m.employment_prob(2.375).unwrap() - 11.875 / 12.875).abs() < 1e-15);
    assert!(matches!(m.employment_prob(-0.1), Err(Error::Domain { .. })));
}

#[test]
fn employment_rates_at_complete_segregation() {
    let r = calibrated(0.5).group_employment_rates(&StrategyProfile::new(1.0, 0.0));
    assert!((r.s_ar - 0.95).abs() < 1e-15 && (r.s_bg - 0.95).abs() < 1e-15);
    assert!((r.s_br - 0.922_330_097_087_378_6).abs() < 1e-15);
    assert!((r.s_ag - 0.922_330_097_087_378_6).abs() < 1e-15);
}

#[test]
fn employment_rates_match_partition_oracle() {
    let q = split(0.09, 0.10, 0.57);
    let m = Model::new(q);
    let s = RateEmployment { c0: 9.5, c1: 25.0 };
    for profile in [StrategyProfile::new(1.0, 0.3), StrategyProfile::new(0.2, 0.9), StrategyProfile::symmetric(0.4)] {
        let rates = m.group_employment_rates(&profile);
        for g in [Group::Red, Group::Green] {
            for e in [Education::A, Education::B] {
                let want = s.prob(friend_measure_by_partition(&q, &profile, g, e)).unwrap();
                assert!((rates.get(g, e) - want).abs() < 1e-14, "{g:?} {e:?} at {profile:?}");
            }
        }
    }
}

#[test]
fn market_state_at_reference_profile() {
    // high-precision reference values
    let st = calibrated(0.7).market_state(&StrategyProfile::new(1.0, 0.3)).unwrap();
    let close = |a: f64, b: f64| ((a - b) / b).abs() < 1e-13;
    assert!(close(st.s_ar, 0.951_719_975_859_987_9));
    assert!(close(st.s_ag, 0.936_406_995_230_524_6));
    assert!(close(st.s_br, 0.917_780_061_664_953_7));
    assert!(close(st.s_bg, 0.941_690_962_099_125_4));
    assert!(close(st.l_a, 0.616_321_037_214_572_7));
    assert!(close(st.l_b, 0.329_591_836_734_693_9));
    assert!(close(st.w_a, 46_412.916_914_630_47));
    assert!(close(st.w_b, 37_195.690_337_619_54));
}

#[test]
fn labor_supplies_at_corners() {
    let m = calibrated(0.5);
    let (la, lb) = m.labor_supplies(&StrategyProfile::new(1.0, 0.0));
    assert!((la - 0.475).abs() < 1e-15 && (lb - 0.475).abs() < 1e-15);
    assert_eq!(m.labor_supplies(&StrategyProfile::new(0.0, 0.0)).0, 0.0);
    assert_eq!(m.labor_supplies(&StrategyProfile::new(1.0, 1.0)).1, 0.0);
}

#[test]
fn wages_and_wage_gap() {
    let m = calibrated(0.5);
    assert_eq!(m.wages(0.4, 0.4).unwrap(), (40_000.0, 40_000.0));
    assert!(matches!(m.wages(0.0, 0.4), Err(Error::SingularSupply { .. })));
    for alpha in [0.55, 0.590_414_050_955_106_4, 0.8] {
        let m = calibrated(alpha);
        let corner = StrategyProfile::new(1.0, 0.0);
        let st = m.market_state(&corner).unwrap();
        assert!((st.w_a - 80_000.0 * alpha).abs() < 1e-9);
        assert!((st.w_b - 80_000.0 * (1.0 - alpha)).abs() < 1e-9);
        assert!((m.wage_gap(&corner).unwrap() - (2.0 - 1.0 / alpha)).abs() < 1e-14);
    }
    assert_eq!(calibrated(0.5).wage_gap(&StrategyProfile::new(1.0, 0.0)).unwrap(), 0.0);
}

#[test]
fn cara_utility() {
    let u = Cara { rho: 1e-4 };
    assert_eq!(u.utility(0.0).unwrap(), 0.0);
    // 1 - e^{-4} to 17 digits
    assert!((u.utility(40_000.0).unwrap() - 0.981_684_361_111_265_8).abs() < 1e-16);
    assert!(u.utility(47_233.0).unwrap() > u.utility(32_767.0).unwrap());
    assert!(matches!(u.utility(-1.0), Err(Error::Domain { .. })));
}

#[test]
fn payoff_gaps_at_complete_segregation() {
    let corner = StrategyProfile::new(1.0, 0.0);
    assert!(calibrated(0.5).market_state(&corner).unwrap().d_pi_g < 0.0);
    assert!(calibrated(0.7).market_state(&corner).unwrap().d_pi_g > 0.0);
    let half = calibrated(0.5).market_state(&StrategyProfile::symmetric(0.5)).unwrap();
    assert_eq!((half.d_pi_r, half.d_pi_g), (0.0, 0.0));
}

#[test]
fn own_share_curvature_exceeds_cross_curvature() {
    let q = ModelParams::calibrated();
    assert!(q.c1_lambda() < 2.0 * (1.0 + q.c0()));
    let m = Model::new(q);
    let h = 1e-3;
    let la = |r: f64, g: f64| m.labor_supplies(&StrategyProfile::new(r, g)).0;
    for mu in [0.2, 0.35, 0.5, 0.65, 0.8] {
        let own = (la(mu + h, mu) - 2.0 * la(mu, mu) + la(mu - h, mu)) / (h * h);
        let cross = (la(mu + h, mu + h) - la(mu + h, mu - h) - la(mu - h, mu + h) + la(mu - h, mu - h)) / (4.0 * h * h);
        assert!(own > cross, "mu = {mu}: {own} <= {cross}");
    }
}

#[test]
fn wages_move_along_the_diagonal() {
    let m = calibrated(0.6);
    let mut prev = m.market_state(&StrategyProfile::symmetric(0.05)).unwrap();
    for i in 2..20 {
        let st = m.market_state(&StrategyProfile::symmetric(i as f64 * 0.05)).unwrap();
        assert!(st.w_a < prev.w_a && st.w_b > prev.w_b);
        prev = st;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn more_a_choosers_raise_a_employment(mu_r in 0.0..1.0f64, mu_g in 0.0..1.0f64) {
        prop_assume!((mu_r - mu_g).abs() > 1e-9);
        let r = calibrated(0.5).group_employment_rates(&StrategyProfile::new(mu_r, mu_g));
        if mu_r > mu_g {
            prop_assert!(r.s_ar > r.s_ag && r.s_br < r.s_bg);
        } else {
            prop_assert!(r.s_ag > r.s_ar && r.s_bg < r.s_br);
        }
    }

    #[test]
    fn education_homophily_never_flips_orderings(
        mu_r in 0.0..1.0f64, mu_g in 0.0..1.0f64, kappa in 0.0..0.3f64,
    ) {
        prop_assume!((mu_r - mu_g).abs() > 1e-9);
        let p = StrategyProfile::new(mu_r, mu_g);
        let base = Model::new(split(0.09, 0.10, 0.57)).group_employment_rates(&p);
        let moved = Model::new(split(0.09, kappa, 0.57)).group_employment_rates(&p);
        prop_assert_eq!((base.s_ar - base.s_ag).signum(), (moved.s_ar - moved.s_ag).signum());
        prop_assert_eq!((base.s_br - base.s_bg).signum(), (moved.s_br - moved.s_bg).signum());
    }

    #[test]
    fn supplies_respond_to_shares(mu_r in 0.01..0.99f64, mu_g in 0.01..0.99f64) {
        let m = calibrated(0.5);
        let h = 1e-6;
        let at = |r: f64, g: f64| m.labor_supplies(&StrategyProfile::new(r, g));
        let (la_r, lb_r) = {
            let (u, d) = (at(mu_r + h, mu_g), at(mu_r - h, mu_g));
            ((u.0 - d.0) / (2.0 * h), (u.1 - d.1) / (2.0 * h))
        };
        let (la_g, lb_g) = {
            let (u, d) = (at(mu_r, mu_g + h), at(mu_r, mu_g - h));
            ((u.0 - d.0) / (2.0 * h), (u.1 - d.1) / (2.0 * h))
        };
        prop_assert!(la_r > 0.0 && la_g > 0.0 && lb_r < 0.0 && lb_g < 0.0);
    }

    #[test]
    fn market_state_is_consistent(mu_r in 0.0..1.0f64, mu_g in 0.0..1.0f64, alpha in 0.5..0.95f64) {
        let p = StrategyProfile::new(mu_r, mu_g);
        prop_assume!(!p.is_singular_corner());
        let m = calibrated(alpha);
        let st = m.market_state(&p).unwrap();
        prop_assert_eq!(st, m.market_state(&p).unwrap());
        let x = m.friend_measures(&p);
        let s = m.employment_fn();
        prop_assert_eq!(st.s_ar, s.prob(x[0]).unwrap());
        prop_assert_eq!(st.s_ag, s.prob(x[1]).unwrap());
        prop_assert_eq!(st.s_br, s.prob(x[2]).unwrap());
        prop_assert_eq!(st.s_bg, s.prob(x[3]).unwrap());
        prop_assert_eq!(st.d_pi_r, st.pi_ar - st.pi_br);
        prop_assert_eq!(st.d_pi_g, st.pi_ag - st.pi_bg);
        prop_assert!(st.l_a <= p.mu_bar() + 1e-15 && st.l_b <= 1.0 - p.mu_bar() + 1e-15);
    }
}
