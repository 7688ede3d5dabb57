use phasecov::strategy::{
    classify_case, find_nopt, m_saturation_curve, scan, strategy_report, Strategy, DEFAULT_N_MAX,
};
use phasecov::{CaseLabel, ChannelParams};

fn params(phi: f64, kappa: f64) -> ChannelParams {
    ChannelParams::new(phi, kappa).unwrap()
}

#[test]
fn quantum_curves_dip_below_sql_then_lose_to_it() {
    let rows = scan(params(0.15, 3.0), DEFAULT_N_MAX).unwrap();
    assert!(rows.iter().any(|r| r.individual < r.sql));
    let last = rows.last().unwrap();
    assert!(last.sql < last.individual && last.sql < last.simultaneous);
}

#[test]
fn classification_is_stable_under_a_longer_scan() {
    for (phi, kappa) in [(0.15, 3.0), (0.312, 4.31), (0.11, 1.7)] {
        let p = params(phi, kappa);
        let short = strategy_report(p, DEFAULT_N_MAX).unwrap();
        let n_opt = short.nopt.n_opt.unwrap();
        let long = classify_case(p, (4 * n_opt).max(DEFAULT_N_MAX) + 500).unwrap();
        assert_eq!(short.case, long, "({phi}, {kappa})");
        let tight = classify_case(p, 2 * n_opt + 1).unwrap();
        assert_eq!(short.case, tight, "({phi}, {kappa}) at n_max = 2 N_opt");
    }
}

#[test]
fn nopt_reports_winner_and_both_minima() {
    let r = find_nopt(params(0.11, 1.7), DEFAULT_N_MAX).unwrap();
    assert_eq!(r.winner, Some(Strategy::Individual));
    let ind = r.individual.unwrap();
    let sim = r.simultaneous.unwrap();
    assert!(ind.value < sim.value);
    assert_eq!(r.delta_min, ind.value);
    assert!(!r.classical_dominated && !r.scan_limited);
}

#[test]
fn report_table_is_consistent() {
    let rep = strategy_report(params(0.312, 4.31), 300).unwrap();
    assert_eq!(rep.case, CaseLabel::B);
    for (i, r) in rep.rows.iter().enumerate() {
        assert_eq!(r.n, i + 1);
        assert!(r.individual > 0.0 && r.simultaneous > 0.0 && r.sql > 0.0);
        assert!((r.ratio - r.individual / r.simultaneous).abs() < 1e-15 * r.ratio);
    }
}

#[test]
fn hybrid_curve_is_defined_for_every_divisor() {
    let m = m_saturation_curve(params(0.2, 2.0), 36, Some(Strategy::Individual)).unwrap();
    assert_eq!(m.points.len(), 9);
    assert!(m.points.iter().all(|p| p.delta.is_finite() && p.delta > 0.0));
    assert_eq!(m.points.last().unwrap().ratio, 1.0);
}
