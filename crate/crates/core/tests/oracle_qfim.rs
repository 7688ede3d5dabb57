//! Closed-form QFIMs against finite differences of brute-force evolved states.

use phasecov::ghz::{qfim_ghz, qfim_hybrid};
use phasecov::oracle::{ghz_builder, pure_builder, qfim_fd, DEFAULT_STEP};
use phasecov::single::qfim_single;
use phasecov::two::qfim_two;
use phasecov::{ChannelParams, QfiMatrix, SingleProbe, TwoQubitProbe};

const TOL: f64 = 1e-6;

fn grid() -> Vec<ChannelParams> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            let phi = 0.05 + 0.65 * i as f64 / 4.0;
            let kappa = 0.5 + 9.5 * j as f64 / 4.0;
            out.push(ChannelParams::new(phi, kappa).unwrap());
        }
    }
    out
}

fn check(label: &str, closed: QfiMatrix, fd: QfiMatrix) {
    let d = closed.relative_difference(&fd);
    assert!(d < TOL, "{label}: {closed:?} vs {fd:?} ({d:e})");
}

#[test]
fn single_qubit() {
    for theta in [0.0, 0.7, std::f64::consts::FRAC_PI_2] {
        let probe = SingleProbe::new(theta, 0.3).unwrap();
        let psi = [
            num_complex::Complex64::new((theta / 2.0).cos(), 0.0),
            num_complex::Complex64::from_polar((theta / 2.0).sin(), 0.3),
        ];
        for p in grid() {
            let fd = qfim_fd(pure_builder(psi.to_vec()), p, DEFAULT_STEP).unwrap();
            check(&format!("theta {theta} {p:?}"), qfim_single(&probe, p).unwrap(), fd);
        }
    }
}

#[test]
fn two_qubit_family() {
    for alpha in [0.5, 0.6, std::f64::consts::FRAC_1_SQRT_2] {
        let probe = TwoQubitProbe::new(alpha).unwrap();
        for p in grid() {
            let fd = qfim_fd(pure_builder(probe.state_vector().to_vec()), p, DEFAULT_STEP).unwrap();
            check(&format!("alpha {alpha} {p:?}"), qfim_two(&probe, p).unwrap(), fd);
        }
    }
}

#[test]
fn ghz_up_to_six_qubits() {
    for n in 1..=6 {
        for p in grid() {
            let fd = qfim_fd(ghz_builder(n, 1), p, DEFAULT_STEP).unwrap();
            check(&format!("N {n} {p:?}"), qfim_ghz(n, p).unwrap(), fd);
        }
    }
}

#[test]
fn hybrid_scheme() {
    for (m, reps) in [(1, 3), (2, 2), (2, 3), (3, 2), (4, 1)] {
        for p in grid() {
            let fd = qfim_fd(ghz_builder(m, reps), p, DEFAULT_STEP).unwrap();
            let n_total = m * reps as usize;
            check(&format!("M {m} x {reps} {p:?}"), qfim_hybrid(m, n_total, p).unwrap(), fd);
        }
    }
}
