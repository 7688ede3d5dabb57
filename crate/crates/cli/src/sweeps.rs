//! One function per subcommand. Grid sweeps run on a rayon pool and keep grid order.

use rayon::prelude::*;

use phasecov::single::optimal_theta;
use phasecov::strategy::{deltas, m_saturation_curve, strategy_report, Strategy};
use phasecov::two::{optimal_alphas, ratio_from_optima};
use phasecov::{ChannelParams, Target};

use crate::config::SweepConfig;
use crate::error::CliError;
use crate::output::{Table, Value};

pub fn params(phi: f64, kappa: f64) -> Result<ChannelParams, CliError> {
    Ok(ChannelParams::new(phi, kappa)?)
}

/// Evaluates `f` at every grid point on `threads` workers; rows come back in grid order.
pub fn par_grid<F>(cfg: &SweepConfig, f: F) -> Result<Vec<Vec<Value>>, CliError>
where
    F: Fn(ChannelParams) -> Result<Vec<Value>, CliError> + Sync,
{
    let points = cfg.grid();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Validation(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        points
            .par_iter()
            .map(|&(phi, kappa)| f(params(phi, kappa)?))
            .collect()
    })
}

fn grid_table(cfg: &SweepConfig, columns: &[&'static str], f: impl Fn(ChannelParams) -> Result<Vec<Value>, CliError> + Sync) -> Result<Table, CliError> {
    let mut table = Table::new(columns);
    for row in par_grid(cfg, f)? {
        table.push(row);
    }
    Ok(table)
}

pub fn scalars(p: ChannelParams) -> Table {
    let s = p.scalars();
    let mut t = Table::new(&[
        "phi", "kappa", "b", "c_re", "c_im", "lambda_par", "lambda_perp", "g", "db_dphi", "db_dkappa",
        "dc_dphi_re", "dc_dphi_im", "dc_dkappa_re", "dc_dkappa_im",
    ]);
    t.push(vec![
        p.phi.into(),
        p.kappa.into(),
        s.b.into(),
        s.c.re.into(),
        s.c.im.into(),
        s.lambda_par.into(),
        s.lambda_perp.into(),
        s.g.into(),
        s.db_dphi.into(),
        s.db_dkappa.into(),
        s.dc_dphi.re.into(),
        s.dc_dphi.im.into(),
        s.dc_dkappa.re.into(),
        s.dc_dkappa.im.into(),
    ]);
    t
}

pub fn single_map(cfg: &SweepConfig) -> Result<Table, CliError> {
    grid_table(cfg, &["phi", "kappa", "theta_opt_sim", "theta_opt_kappa", "R1"], |p| {
        let phi = optimal_theta(p, Target::Phi);
        let kappa = optimal_theta(p, Target::Kappa);
        let sim = optimal_theta(p, Target::Simultaneous);
        let r1 = (phi.variance + kappa.variance) / (0.5 * sim.variance);
        Ok(vec![p.phi.into(), p.kappa.into(), sim.theta.into(), kappa.theta.into(), r1.into()])
    })
}

pub fn two_map(cfg: &SweepConfig) -> Result<Table, CliError> {
    grid_table(cfg, &["phi", "kappa", "alpha_phi", "alpha_kappa", "alpha_sim", "R2"], |p| {
        let opt = optimal_alphas(p);
        Ok(vec![
            p.phi.into(),
            p.kappa.into(),
            opt[0].alpha.into(),
            opt[1].alpha.into(),
            opt[2].alpha.into(),
            ratio_from_optima(&opt).into(),
        ])
    })
}

pub fn ghz_curves(p: ChannelParams, n_max: usize) -> Result<Table, CliError> {
    let rows: Result<Vec<_>, _> = (1..=n_max).into_par_iter().map(|n| deltas(n, p)).collect();
    let mut t = Table::new(&["N", "delta_ind", "delta_sim", "delta_sql", "R"]);
    for r in rows? {
        t.push(vec![r.n.into(), r.individual.into(), r.simultaneous.into(), r.sql.into(), r.ratio.into()]);
    }
    Ok(t)
}

pub fn nopt_map(cfg: &SweepConfig) -> Result<Table, CliError> {
    let n_max = cfg.n_max;
    grid_table(cfg, &["phi", "kappa", "n_opt", "delta_min", "winner", "case_label"], |p| {
        let rep = strategy_report(p, n_max)?;
        let delta = rep.nopt.n_opt.map(|_| rep.nopt.delta_min);
        Ok(vec![
            p.phi.into(),
            p.kappa.into(),
            rep.nopt.n_opt.into(),
            delta.into(),
            rep.nopt.winner.map(Strategy::as_str).into(),
            rep.case.to_string().as_str().into(),
        ])
    })
}

pub fn msat(p: ChannelParams, n_total: usize, strategy: Option<Strategy>) -> Result<Table, CliError> {
    let curve = m_saturation_curve(p, n_total, strategy)?;
    let mut t = Table::new(&["M", "delta", "ratio_to_full"]);
    for pt in &curve.points {
        t.push(vec![pt.m.into(), pt.delta.into(), pt.ratio.into()]);
    }
    Ok(t)
}
