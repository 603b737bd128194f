use super::config::RunConfig;
use super::output::{Cell, Table};
use super::CliError;
use crate::calibration::find_alpha_hat;
use crate::equilibrium::{classify_regime, enumerate_equilibria, laissez_faire_mu, probed_gap, Regime};
use crate::model::{Group, Model, StrategyProfile};
use crate::netmc::{generate_population, simulate_labor};
use crate::sensitivity::elasticities;
use crate::welfare::{second_best, welfare_report};
use rayon::prelude::*;

const SOLVER_TOL: f64 = 1e-12;

fn model(cfg: &RunConfig) -> Result<Model, CliError> {
    Ok(Model::new(cfg.params().map_err(CliError::Config)?))
}

fn kind_name<T: std::fmt::Debug>(v: T) -> String {
    format!("{v:?}")
}

fn profile_text(p: &StrategyProfile) -> String {
    format!("{}:{}", p.mu_r(), p.mu_g())
}

pub fn equilibria(cfg: &RunConfig) -> Result<Vec<Table>, CliError> {
    if cfg.grid < 100 {
        return Err(CliError::Config(format!("grid must be at least 100, got {}", cfg.grid)));
    }
    let m = model(cfg)?;
    let mut t = Table::new(
        "equilibria",
        &[
            "mu_r", "mu_g", "kind", "satisfies_conditions", "stability", "j_rr", "j_rg", "j_gr", "j_gg",
            "det_jacobian", "s_ar", "s_ag", "s_br", "s_bg", "l_a", "l_b", "w_a", "w_b", "pi_ar", "pi_ag",
            "pi_br", "pi_bg", "d_pi_r", "d_pi_g",
        ],
    );
    for r in enumerate_equilibria(&m, cfg.grid)? {
        if cfg.stable_only && !r.is_stable() {
            continue;
        }
        let j = r.jacobian;
        let mut row: Vec<Cell> = vec![
            r.profile.mu_r().into(),
            r.profile.mu_g().into(),
            kind_name(r.kind).into(),
            r.satisfies_conditions.into(),
            kind_name(r.stability).into(),
            j[0][0].into(),
            j[0][1].into(),
            j[1][0].into(),
            j[1][1].into(),
            r.det_jacobian.into(),
        ];
        let market = match r.market {
            Some(s) => [
                s.s_ar, s.s_ag, s.s_br, s.s_bg, s.l_a, s.l_b, s.w_a, s.w_b, s.pi_ar, s.pi_ag, s.pi_br, s.pi_bg,
                s.d_pi_r, s.d_pi_g,
            ],
            None => [f64::NAN; 14],
        };
        row.extend(market.into_iter().map(Cell::from));
        t.push(row);
    }
    Ok(vec![t])
}

struct SweepPoint {
    alpha: f64,
    gaps: Vec<(f64, f64)>,
    regime: Regime,
    mu_star: f64,
    market: crate::model::MarketState,
    second: crate::welfare::SecondBest,
}

fn sweep_point(cfg: &RunConfig, alpha: f64) -> Result<SweepPoint, CliError> {
    let q = cfg.params().map_err(CliError::Config)?.with_alpha(alpha)?;
    let m = Model::new(q);
    let last = cfg.mu_points - 1;
    let gaps = (0..=last)
        .map(|i| {
            let mu = i as f64 / last as f64;
            (mu, probed_gap(&m, &StrategyProfile::new(1.0, mu), Group::Green))
        })
        .collect();
    let mu_star = laissez_faire_mu(&m, SOLVER_TOL)?;
    Ok(SweepPoint {
        alpha,
        gaps,
        regime: classify_regime(&m)?,
        mu_star,
        market: m.market_state(&StrategyProfile::new(1.0, mu_star))?,
        second: second_best(&m)?,
    })
}

pub fn sweep(cfg: &RunConfig) -> Result<Vec<Table>, CliError> {
    if cfg.mu_points < 2 {
        return Err(CliError::Config("mu_points must be at least 2".into()));
    }
    let alphas = cfg.alpha_grid().map_err(CliError::Config)?;
    let points: Vec<SweepPoint> = alphas.par_iter().map(|&a| sweep_point(cfg, a)).collect::<Result<_, _>>()?;

    let mut fig1 = Table::new("fig1", &["alpha", "mu_g", "d_pi_g"]);
    let mut fig2 = Table::new("fig2", &["alpha", "regime", "mu_star", "w_a", "w_b", "wage_gap"]);
    let mut fig3 = Table::new("fig3", &["alpha", "mu_star", "s_ar", "s_ag", "s_br", "s_bg"]);
    let mut fig4 = Table::new(
        "fig4",
        &["alpha", "mu_s", "mu_star", "welfare_integrated", "welfare_segregated", "integration_gain", "multiple_roots"],
    );
    let mut fig5 = Table::new("fig5", &["alpha", "pi_bg_integrated", "pi_bg_segregated", "maximin_gain"]);
    for p in &points {
        for &(mu, gap) in &p.gaps {
            fig1.push(vec![p.alpha.into(), mu.into(), gap.into()]);
        }
        let s = &p.market;
        fig2.push(vec![
            p.alpha.into(),
            kind_name(p.regime).into(),
            p.mu_star.into(),
            s.w_a.into(),
            s.w_b.into(),
            (1.0 - s.w_b / s.w_a).into(),
        ]);
        fig3.push(vec![p.alpha.into(), p.mu_star.into(), s.s_ar.into(), s.s_ag.into(), s.s_br.into(), s.s_bg.into()]);
        let sb = &p.second;
        fig4.push(vec![
            p.alpha.into(),
            sb.mu_s.into(),
            sb.mu_star.into(),
            sb.welfare_integrated.into(),
            sb.welfare_segregated.into(),
            sb.integration_gain.into(),
            sb.multiple_symmetric_roots.into(),
        ]);
        fig5.push(vec![
            p.alpha.into(),
            sb.pi_bg_integrated.into(),
            sb.pi_bg_segregated.into(),
            sb.maximin_gain.into(),
        ]);
    }
    Ok(vec![fig1, fig2, fig3, fig4, fig5])
}

pub fn welfare(cfg: &RunConfig) -> Result<Vec<Table>, CliError> {
    if cfg.grid < 200 {
        return Err(CliError::Config(format!("grid must be at least 200, got {}", cfg.grid)));
    }
    let m = model(cfg)?;
    let profile = cfg.profile().map_err(CliError::Config)?;
    let r = welfare_report(&m, &profile, cfg.grid)?;
    let ties: Vec<String> = r.first_best_ties.iter().map(profile_text).collect();
    let mut t = Table::new(
        "welfare",
        &[
            "mu_r", "mu_g", "welfare", "first_best_mu_r", "first_best_mu_g", "first_best_kind", "first_best_ties",
            "concavity_condition_holds", "integration_gain", "maximin_gain",
        ],
    );
    t.push(vec![
        profile.mu_r().into(),
        profile.mu_g().into(),
        r.w_value.into(),
        r.first_best_profile.mu_r().into(),
        r.first_best_profile.mu_g().into(),
        kind_name(r.first_best_kind).into(),
        ties.join(";").into(),
        r.concavity_condition_holds.into(),
        r.integration_gain.into(),
        r.maximin_gain.into(),
    ]);
    Ok(vec![t])
}

pub fn calibrate(cfg: &RunConfig) -> Result<Vec<Table>, CliError> {
    let q = cfg.params().map_err(CliError::Config)?;
    let split = cfg.split_params().map_err(CliError::Config)?;
    let alpha_hat = find_alpha_hat(&q, SOLVER_TOL)?;
    let at_hat = Model::new(q.with_alpha(alpha_hat)?);
    let corner = at_hat.market_state(&StrategyProfile::new(1.0, 0.0))?;
    let m = Model::new(q);
    let mut t = Table::new("calibration", &["parameter", "value"]);
    let rows: [(&str, f64); 18] = [
        ("c0", q.c0()),
        ("s0", q.s0()),
        ("c1_p_kappa", q.c1_p_kappa()),
        ("c1_lambda", q.c1_lambda()),
        ("theta", q.theta()),
        ("rho", q.rho()),
        ("s_high", m.s_high()),
        ("s_low", m.s_low()),
        ("alpha_hat", alpha_hat),
        ("wage_gap_at_alpha_hat", 1.0 - corner.w_b / corner.w_a),
        ("w_a_at_alpha_hat", corner.w_a),
        ("w_b_at_alpha_hat", corner.w_b),
        ("wage_gap_threshold", q.c1_lambda() / (2.0 * (q.c1_p_kappa() + q.c1_lambda()))),
        ("split_c1", split.c1()),
        ("split_p", split.p()),
        ("split_kappa", split.kappa()),
        ("split_lambda", split.lambda()),
        ("informal_share", 1.0 - q.c0() / (q.c0() + 0.5 * (q.c1_p_kappa() + q.c1_lambda()))),
    ];
    for (name, v) in rows {
        t.push(vec![name.into(), v.into()]);
    }
    Ok(vec![t])
}

pub fn sensitivity(cfg: &RunConfig) -> Result<Vec<Table>, CliError> {
    if !(1e-4..=1e-1).contains(&cfg.rel_step) {
        return Err(CliError::Config(format!("rel_step must lie in [1e-4, 0.1], got {}", cfg.rel_step)));
    }
    let q = cfg.params().map_err(CliError::Config)?;
    let table = elasticities(&q, cfg.rel_step)?;
    let mut t = Table::new(
        "sensitivity",
        &["parameter", "value", "alpha_hat", "wage_gap", "alpha_hat_forward", "wage_gap_forward", "disagree"],
    );
    for r in &table.rows {
        t.push(vec![
            r.parameter.name().into(),
            r.parameter.value(&q).into(),
            r.alpha_hat.into(),
            r.wage_gap.into(),
            r.alpha_hat_forward.into(),
            r.wage_gap_forward.into(),
            r.disagree.into(),
        ]);
    }
    Ok(vec![t])
}

pub fn mc(cfg: &RunConfig) -> Result<Vec<Table>, CliError> {
    let split = cfg.split_params().map_err(CliError::Config)?;
    let profile = cfg.profile().map_err(CliError::Config)?;
    let pop = generate_population(cfg.n, &profile, &split, cfg.seed, cfg.probes)?;
    let res = simulate_labor(&pop, &split, cfg.burn_in, cfg.horizon, cfg.replications)?;
    let rates = Model::new(split).group_employment_rates(&profile);
    let mut t = Table::new(
        "mc",
        &[
            "group", "education", "agents", "probe", "mean", "half_width", "mean_x", "s_at_mean_x",
            "steady_state_mean", "jensen_gap", "reduced_form",
        ],
    );
    for c in &res.cells {
        t.push(vec![
            kind_name(c.group).into(),
            kind_name(c.education).into(),
            c.agents.into(),
            c.probe.into(),
            c.mean.into(),
            c.half_width.into(),
            c.mean_x.into(),
            c.s_at_mean_x.into(),
            c.steady_state_mean.into(),
            c.jensen_gap().into(),
            rates.get(c.group, c.education).into(),
        ]);
    }
    Ok(vec![t])
}
