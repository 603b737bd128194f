use netseg::equilibrium::{
    check_equilibrium, classify_regime, enumerate_equilibria, find_mu_hat, regime_ratio, simulate_dynamics,
    solve_partial, solve_symmetric, stability, DynamicsOptions, EquilibriumKind, EquilibriumReport, Regime, Stability,
    DEFAULT_FD_STEP, DEFAULT_TOL,
};
use netseg::{Model, ModelParams, StrategyProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ALPHA_HAT: f64 = 0.590_414_050_955_106_4;

fn calibrated(alpha: f64) -> Model {
    Model::new(ModelParams::calibrated().with_alpha(alpha).unwrap())
}

#[test]
fn corner_condition_on_either_side_of_the_threshold() {
    let corner = StrategyProfile::new(1.0, 0.0);
    assert!(check_equilibrium(&calibrated(0.5), &corner, DEFAULT_TOL).satisfied());
    assert!(!check_equilibrium(&calibrated(0.7), &corner, DEFAULT_TOL).satisfied());
    let m = calibrated(0.6);
    let mu = solve_symmetric(&m, 1e-12).unwrap().mu_s;
    assert!(check_equilibrium(&m, &StrategyProfile::symmetric(mu), DEFAULT_TOL).satisfied());
}

#[test]
fn regime_boundary_is_a_ratio_identity() {
    assert_eq!(classify_regime(&calibrated(0.55)).unwrap(), Regime::Complete);
    assert_eq!(classify_regime(&calibrated(0.7)).unwrap(), Regime::Partial);
    let (ratio, threshold) = regime_ratio(&calibrated(ALPHA_HAT)).unwrap();
    assert!((ratio - threshold).abs() < 1e-6);
}

#[test]
fn partial_share_agrees_with_a_fine_scan() {
    let m = calibrated(0.7);
    let mu = solve_partial(&m, 1e-12).unwrap();
    let gap = |g: f64| m.payoff_gaps(&StrategyProfile::new(1.0, g)).unwrap().1;
    let step = 1e-5;
    let cell = (0..100_000).find(|&i| gap(i as f64 * step) > 0.0 && gap((i + 1) as f64 * step) <= 0.0).unwrap();
    let lo = cell as f64 * step;
    assert!(mu >= lo && mu <= lo + step, "{mu} not in [{lo}, {}]", lo + step);
    assert!((mu - 0.421_200_170_629_206_6).abs() < 1e-9);
    assert!(check_equilibrium(&m, &StrategyProfile::new(1.0, mu), DEFAULT_TOL).satisfied());
}

#[test]
fn partial_share_is_continuous_at_the_threshold() {
    let mu = solve_partial(&calibrated(ALPHA_HAT + 1e-6), 1e-12).unwrap();
    assert!(mu < 1e-3, "{mu}");
    assert!(solve_partial(&calibrated(0.55), 1e-12).is_err());
}

#[test]
fn wage_crossing_at_equal_alpha_equalizes_supplies() {
    let m = calibrated(0.5);
    let mu = find_mu_hat(&m, 1e-12).unwrap();
    let (la, lb) = m.labor_supplies(&StrategyProfile::new(1.0, mu));
    assert!((la - lb).abs() < 1e-9);
}

#[test]
fn wage_crossing_threshold_is_three_eighths() {
    let q = ModelParams::calibrated();
    assert!((q.wage_gap_threshold() - 0.375).abs() < 1e-15);
}

fn orderings_at_partial(alpha: f64) -> (f64, netseg::MarketState) {
    let m = calibrated(alpha);
    let mu = solve_partial(&m, 1e-12).unwrap();
    (find_mu_hat(&m, 1e-12).unwrap(), m.market_state(&StrategyProfile::new(1.0, mu)).unwrap())
}

#[test]
fn wage_gap_sign_below_threshold() {
    let (mu_hat, s) = orderings_at_partial(0.65);
    assert!(mu_hat < 0.375);
    assert!(s.s_ar > s.s_bg && s.s_bg > s.s_ag && s.s_ag > s.s_br);
    assert!(s.w_a > s.w_b);
}

#[test]
fn wage_gap_sign_above_threshold() {
    let (mu_hat, s) = orderings_at_partial(0.7);
    assert!((mu_hat - 0.395_405_424_522_859_85).abs() < 1e-9);
    assert!(mu_hat > 0.375);
    assert!(s.s_ar > s.s_ag && s.s_ag > s.s_bg && s.s_bg > s.s_br);
    assert!(s.w_b > s.w_a);
}

#[test]
fn symmetric_equilibrium() {
    assert_eq!(solve_symmetric(&calibrated(0.5), 1e-12).unwrap().mu_s, 0.5);
    let m = calibrated(0.7);
    let sol = solve_symmetric(&m, 1e-12).unwrap();
    assert!(!sol.is_multiple());
    assert!((sol.mu_s - 0.836_650_417_367_043).abs() < 1e-9);
    let st = m.market_state(&StrategyProfile::symmetric(sol.mu_s)).unwrap();
    let pis = [st.pi_ar, st.pi_ag, st.pi_br, st.pi_bg];
    assert!(pis.iter().all(|p| (p - pis[0]).abs() < 1e-10));
}

#[test]
fn stability_verdicts() {
    let m = calibrated(0.55);
    let r = stability(&m, &StrategyProfile::new(1.0, 0.0), DEFAULT_FD_STEP, DEFAULT_TOL);
    assert_eq!(r.stability, Stability::Stable);
    let m = calibrated(0.7);
    let mu_s = solve_symmetric(&m, 1e-12).unwrap().mu_s;
    let r = stability(&m, &StrategyProfile::symmetric(mu_s), DEFAULT_FD_STEP, DEFAULT_TOL);
    assert_eq!(r.stability, Stability::Unstable);
    assert!(r.det < 0.0);
    let mu = solve_partial(&m, 1e-12).unwrap();
    let r = stability(&m, &StrategyProfile::new(1.0, mu), DEFAULT_FD_STEP, DEFAULT_TOL);
    assert_eq!(r.stability, Stability::Stable);
}

fn stable_profiles(eqs: &[EquilibriumReport]) -> Vec<StrategyProfile> {
    eqs.iter().filter(|r| r.is_stable()).map(|r| r.profile).collect()
}

#[test]
fn enumeration_in_the_partial_regime() {
    let m = calibrated(0.7);
    let eqs = enumerate_equilibria(&m, 200).unwrap();
    let mu = solve_partial(&m, 1e-12).unwrap();
    let stable = stable_profiles(&eqs);
    assert_eq!(stable.len(), 2);
    assert!(stable[0].distance(&StrategyProfile::new(mu, 1.0)) < 1e-9);
    assert!(stable[1].distance(&StrategyProfile::new(1.0, mu)) < 1e-9);
    assert!(eqs.iter().all(|r| r.kind != EquilibriumKind::Other));
    let sym: Vec<_> = eqs.iter().filter(|r| r.kind == EquilibriumKind::SymmetricInterior).collect();
    assert_eq!(sym.len(), 1);
    assert!(sym[0].stability == Stability::Unstable && sym[0].det_jacobian < 0.0);
}

#[test]
fn equilibrium_sets_are_swap_symmetric() {
    for alpha in [0.5, 0.55, 0.62, 0.7, 0.85] {
        let eqs = enumerate_equilibria(&calibrated(alpha), 100).unwrap();
        let set: Vec<StrategyProfile> = eqs.iter().map(|r| r.profile).collect();
        let mut swapped: Vec<StrategyProfile> = set.iter().map(|p| p.swapped()).collect();
        swapped.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(set, swapped, "alpha = {alpha}");
    }
}

#[test]
fn random_starts_reach_partial_segregation() {
    let m = calibrated(0.7);
    let mu = solve_partial(&m, 1e-12).unwrap();
    let targets = [StrategyProfile::new(1.0, mu), StrategyProfile::new(mu, 1.0)];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut converged = 0;
    for _ in 0..100 {
        let start = StrategyProfile::new(rng.random_range(0.01..0.99), rng.random_range(0.01..0.99));
        let t = simulate_dynamics(&m, start, &DynamicsOptions::default()).unwrap();
        assert!(t.samples.iter().all(|(_, p)| (0.0..=1.0).contains(&p.mu_r()) && (0.0..=1.0).contains(&p.mu_g())));
        if t.converged {
            converged += 1;
            assert!(targets.iter().any(|e| e.distance(&t.terminal) < 1e-6), "{start:?} -> {:?}", t.terminal);
        }
    }
    assert!(converged >= 95, "{converged}");
}

#[test]
fn adjustment_speed_only_rescales_time() {
    let m = calibrated(0.7);
    let start = StrategyProfile::new(0.3, 0.6);
    let slow = DynamicsOptions { velocity_tol: 1e-13, horizon: 20_000.0, ..Default::default() };
    let fast = DynamicsOptions { k: 10.0, ..slow };
    let a = simulate_dynamics(&m, start, &slow).unwrap();
    let b = simulate_dynamics(&m, start, &fast).unwrap();
    assert!(a.converged && b.converged);
    assert!(a.terminal.distance(&b.terminal) < 1e-8);
}

#[test]
fn payoff_and_employment_orderings_across_alpha() {
    for i in 0..50 {
        let alpha = 0.5 + 0.45 * i as f64 / 49.0;
        let m = calibrated(alpha);
        let threshold = m.params().wage_gap_threshold();
        let regime = classify_regime(&m).unwrap();
        for r in enumerate_equilibria(&m, 100).unwrap().iter().filter(|r| r.is_stable()) {
            let p = r.profile;
            let s = r.market.unwrap();
            // relabel so that Reds specialize in A
            let (pi_ar, pi_ag, pi_br, pi_bg, s_ar, s_ag, s_br, s_bg, mu) = if p.mu_r() == 1.0 {
                (s.pi_ar, s.pi_ag, s.pi_br, s.pi_bg, s.s_ar, s.s_ag, s.s_br, s.s_bg, p.mu_g())
            } else {
                assert_eq!(p.mu_g(), 1.0);
                (s.pi_ag, s.pi_ar, s.pi_bg, s.pi_br, s.s_ag, s.s_ar, s.s_bg, s.s_br, p.mu_r())
            };
            match regime {
                Regime::Complete => {
                    assert_eq!(r.kind, EquilibriumKind::CompleteSegregation);
                    assert!(pi_ar >= pi_bg - 1e-12 && pi_bg >= pi_ag - 1e-12 && pi_ag >= pi_br - 1e-12, "{alpha}");
                }
                Regime::Partial => {
                    assert_eq!(r.kind, EquilibriumKind::PartialSegregation);
                    assert!(pi_ar > pi_bg && (pi_bg - pi_ag).abs() < 1e-9 && pi_ag > pi_br, "{alpha}");
                    // the specializing group out-employs both halves of the mixing group
                    assert!(s_ar > s_ag.max(s_bg), "{alpha}");
                    let mu_hat = find_mu_hat(&m, 1e-12).unwrap();
                    let (w_a, w_b) = (s.w_a, s.w_b);
                    if mu_hat < threshold {
                        assert!(s_ar > s_bg && s_bg > s_ag && s_ag > s_br && w_a > w_b, "{alpha}");
                    } else {
                        assert!(s_ar > s_ag && s_ag > s_bg && s_bg > s_br && w_b > w_a, "{alpha}");
                    }
                    assert!(mu > 0.0 && mu < 1.0);
                }
            }
        }
    }
}

#[test]
fn equilibria_next_to_the_full_corner_are_kept_apart() {
    let m = calibrated(0.95);
    let eqs = enumerate_equilibria(&m, 200).unwrap();
    let mu = solve_partial(&m, 1e-12).unwrap();
    assert!(1.0 - mu < 1e-7);
    let stable = stable_profiles(&eqs);
    assert_eq!(stable.len(), 2);
    assert!(stable[1].distance(&StrategyProfile::new(1.0, mu)) < 1e-10);
    assert_eq!(eqs.len(), 3);
}
