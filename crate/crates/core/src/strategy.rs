//! Strategy comparison at equal resources.
//!
//! With `2N` probe qubits in total:
//!
//! * individual: one `N`-qubit GHZ state per parameter,
//!   `Delta_ind(2N) = 1/F_phiphi(N) + 1/F_kappakappa(N)`;
//! * simultaneous: two `N`-qubit GHZ states both used for both parameters,
//!   `Delta_sim(2N) = Tr F(N)^-1 / 2`;
//! * classical: `2N` independent optimal single qubits,
//!   `Delta_SQL(2N) = Delta_sim(1) / 2N`.

use std::fmt;

use crate::channel::{ChannelParams, ChannelScalars};
use crate::error::Result;
use crate::ghz::{qfim_ghz_scalars, qfim_hybrid};
use crate::qfim::QfiMatrix;
use crate::single::single_sim_variance;

pub const DEFAULT_N_MAX: usize = 2000;
/// `R` is not inspected below this `N` when classifying.
pub const MIN_CLASSIFY_N: usize = 5;
const EXIT_FACTOR: f64 = 2.0;
const EXIT_RUN: usize = 100;
pub const SATURATION_LEVEL: f64 = 1.05;
const MONOTONE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Individual,
    Simultaneous,
}

impl Strategy {
    pub fn variance(self, f: &QfiMatrix) -> f64 {
        match self {
            Strategy::Individual => f.individual_variance_sum(),
            Strategy::Simultaneous => 0.5 * f.trace_inverse(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Individual => "individual",
            Strategy::Simultaneous => "simultaneous",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Regime of the GHZ strategy comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    /// The individual strategy reaches the lower minimum error.
    A,
    /// Simultaneous wins overall, but individual is better over a range of `N`.
    B,
    /// Simultaneous is better at every relevant `N`.
    C,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::A => "A",
            CaseLabel::B => "B",
            CaseLabel::C => "C",
        })
    }
}

/// Errors of the three strategies with `2N` qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaRow {
    pub n: usize,
    pub individual: f64,
    pub simultaneous: f64,
    pub sql: f64,
    /// `individual / simultaneous`
    pub ratio: f64,
}

/// `Delta_sim(1)`: `Tr F^-1` of the best single-qubit probe.
pub fn sql_reference(params: ChannelParams) -> f64 {
    single_sim_variance(params)
}

fn row(n: usize, s: &ChannelScalars, sql1: f64) -> Result<DeltaRow> {
    let f = qfim_ghz_scalars(n, s)?;
    let individual = Strategy::Individual.variance(&f);
    let simultaneous = Strategy::Simultaneous.variance(&f);
    Ok(DeltaRow {
        n,
        individual,
        simultaneous,
        sql: sql1 / (2 * n) as f64,
        ratio: individual / simultaneous,
    })
}

pub fn deltas(n: usize, params: ChannelParams) -> Result<DeltaRow> {
    row(n, &params.scalars(), sql_reference(params))
}

pub fn ratio_r(n: usize, params: ChannelParams) -> Result<f64> {
    Ok(deltas(n, params)?.ratio)
}

/// Rows for `N = 1..=n_max`, stopping early once both quantum curves have stayed
/// above twice their running minimum for 100 consecutive `N`.
pub fn scan(params: ChannelParams, n_max: usize) -> Result<Vec<DeltaRow>> {
    let s = params.scalars();
    let sql1 = sql_reference(params);
    let mut rows = Vec::new();
    let (mut min_ind, mut min_sim) = (f64::INFINITY, f64::INFINITY);
    let mut run = 0;
    for n in 1..=n_max {
        let r = row(n, &s, sql1)?;
        min_ind = min_ind.min(r.individual);
        min_sim = min_sim.min(r.simultaneous);
        if r.individual > EXIT_FACTOR * min_ind && r.simultaneous > EXIT_FACTOR * min_sim {
            run += 1;
        } else {
            run = 0;
        }
        rows.push(r);
        if run >= EXIT_RUN {
            break;
        }
    }
    Ok(rows)
}

/// A local minimum of a sequence indexed by `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalMin {
    pub n: usize,
    pub value: f64,
}

/// First interior `i >= from` with `v[i] < v[i-1]` and `v[i] <= v[i+1]`.
pub fn first_local_min(values: &[f64], from: usize) -> Option<usize> {
    (from.max(1)..values.len().saturating_sub(1))
        .find(|&i| values[i] < values[i - 1] && values[i] <= values[i + 1])
}

fn curve_min(rows: &[DeltaRow], pick: impl Fn(&DeltaRow) -> f64) -> Option<LocalMin> {
    let v: Vec<f64> = rows.iter().map(&pick).collect();
    first_local_min(&v, 0).map(|i| LocalMin {
        n: rows[i].n,
        value: v[i],
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NOptResult {
    /// `N` at the winning strategy's first local minimum.
    pub n_opt: Option<usize>,
    /// Infinite when neither curve has a local minimum in range.
    pub delta_min: f64,
    pub winner: Option<Strategy>,
    pub individual: Option<LocalMin>,
    pub simultaneous: Option<LocalMin>,
    /// The winning minimum does not beat the classical strategy (or does not exist).
    pub classical_dominated: bool,
    /// No local minimum was found before the scan ended.
    pub scan_limited: bool,
}

fn nopt_from_rows(rows: &[DeltaRow]) -> NOptResult {
    let individual = curve_min(rows, |r| r.individual);
    let simultaneous = curve_min(rows, |r| r.simultaneous);
    let value = |m: Option<LocalMin>| m.map_or(f64::INFINITY, |m| m.value);
    let (winner, best) = match (individual, simultaneous) {
        (None, None) => (None, None),
        _ if value(individual) < value(simultaneous) => (Some(Strategy::Individual), individual),
        _ => (Some(Strategy::Simultaneous), simultaneous),
    };
    let classical_dominated = match best {
        Some(m) => m.value >= rows[m.n - 1].sql,
        None => true,
    };
    NOptResult {
        n_opt: best.map(|m| m.n),
        delta_min: value(best),
        winner,
        individual,
        simultaneous,
        classical_dominated,
        scan_limited: best.is_none(),
    }
}

pub fn find_nopt(params: ChannelParams, n_max: usize) -> Result<NOptResult> {
    Ok(nopt_from_rows(&scan(params, n_max)?))
}

/// Value of `R` used for the B/C decision: its first local minimum at
/// `N >= max(5, first N where a quantum curve beats the SQL)`, or the smallest
/// value in that range when there is none.
pub fn relevant_ratio_min(rows: &[DeltaRow]) -> Option<LocalMin> {
    let dip = rows
        .iter()
        .position(|r| r.individual.min(r.simultaneous) < r.sql)
        .unwrap_or(0);
    let from = dip.max(MIN_CLASSIFY_N - 1);
    if from >= rows.len() {
        return None;
    }
    let v: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    let i = first_local_min(&v, from).unwrap_or_else(|| {
        (from..v.len())
            .min_by(|&a, &b| v[a].total_cmp(&v[b]))
            .unwrap_or(from)
    });
    Some(LocalMin {
        n: rows[i].n,
        value: v[i],
    })
}

fn classify_rows(rows: &[DeltaRow], nopt: &NOptResult) -> CaseLabel {
    let value = |m: Option<LocalMin>| m.map_or(f64::INFINITY, |m| m.value);
    if value(nopt.individual) < value(nopt.simultaneous) {
        return CaseLabel::A;
    }
    match relevant_ratio_min(rows) {
        Some(m) if m.value < 1.0 => CaseLabel::B,
        _ => CaseLabel::C,
    }
}

pub fn classify_case(params: ChannelParams, n_max: usize) -> Result<CaseLabel> {
    Ok(strategy_report(params, n_max)?.case)
}

/// Everything the planner knows about one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyReport {
    pub params: ChannelParams,
    pub rows: Vec<DeltaRow>,
    pub nopt: NOptResult,
    pub ratio_min: Option<LocalMin>,
    pub case: CaseLabel,
}

pub fn strategy_report(params: ChannelParams, n_max: usize) -> Result<StrategyReport> {
    let rows = scan(params, n_max)?;
    let nopt = nopt_from_rows(&rows);
    let case = classify_rows(&rows, &nopt);
    Ok(StrategyReport {
        params,
        ratio_min: relevant_ratio_min(&rows),
        rows,
        nopt,
        case,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MPoint {
    pub m: usize,
    pub delta: f64,
    /// `delta / delta(M = n_total)`
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MSaturation {
    pub strategy: Strategy,
    pub n_total: usize,
    /// One entry per divisor `M` of `n_total`, ascending.
    pub points: Vec<MPoint>,
    /// Smallest `M` whose error is within 5% of the fully parallel error.
    pub threshold: Option<usize>,
    /// `delta` never increases (beyond relative 1e-9) from the first divisor `M >= 2` on.
    pub monotone: bool,
}

/// Error of the hybrid scheme for each divisor `M` of `n_total` under `strategy`;
/// `None` picks the winner of [`find_nopt`].
pub fn m_saturation_curve(
    params: ChannelParams,
    n_total: usize,
    strategy: Option<Strategy>,
) -> Result<MSaturation> {
    if n_total < 1 {
        return crate::error::domain("n_total must be at least 1");
    }
    let strategy = match strategy {
        Some(s) => s,
        None => find_nopt(params, DEFAULT_N_MAX)?
            .winner
            .unwrap_or(Strategy::Simultaneous),
    };
    let divisors: Vec<usize> = (1..=n_total).filter(|m| n_total % m == 0).collect();
    let mut deltas = Vec::with_capacity(divisors.len());
    for &m in &divisors {
        deltas.push(strategy.variance(&qfim_hybrid(m, n_total, params)?));
    }
    let full = *deltas.last().expect("n_total divides itself");
    let points: Vec<MPoint> = divisors
        .iter()
        .zip(&deltas)
        .map(|(&m, &delta)| MPoint {
            m,
            delta,
            ratio: delta / full,
        })
        .collect();
    let threshold = points
        .iter()
        .find(|p| p.ratio <= SATURATION_LEVEL)
        .map(|p| p.m);
    let monotone = points
        .iter()
        .skip_while(|p| p.m < 2)
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[1].delta <= w[0].delta * (1.0 + MONOTONE_SLACK));
    Ok(MSaturation {
        strategy,
        n_total,
        points,
        threshold,
        monotone,
    })
}
