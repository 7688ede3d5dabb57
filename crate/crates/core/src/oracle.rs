//! Brute-force reference implementations used to check the closed forms.
//!
//! Nothing here is fast: states are dense `2^N x 2^N` matrices, the channel is
//! evaluated by quadrature over the rotation axis, and QFIMs come from central
//! differences.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::channel::{liouville_matrix, ChannelParams, ChannelScalars, LiouvilleMatrix};
use crate::error::{domain, Error, Result};
use crate::linalg::{CMatrix, HermitianOperator};
use crate::qfim::{qfim, QfiMatrix};

pub const MAX_QUBITS: usize = 6;
pub const MIN_NODES: usize = 64;
pub const DEFAULT_STEP: f64 = 1e-5;
const NEG_EIG_TOL: f64 = 1e-10;
const FD_AGREEMENT: f64 = 1e-5;

/// A validated density matrix on at most [`MAX_QUBITS`] qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n_qubits: usize,
    rho: CMatrix,
}

impl DenseState {
    pub fn new(rho: CMatrix) -> Result<Self> {
        let dim = rho.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return domain(format!("dimension {dim} is not a qubit register"));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_size(n_qubits)?;
        let op = HermitianOperator::new(rho)?;
        let tr = op.trace();
        if (tr - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let low = op.eigh()?.values[0];
        if low < -NEG_EIG_TOL {
            return Err(Error::InvalidState(format!("eigenvalue {low:e}")));
        }
        Ok(DenseState {
            n_qubits,
            rho: op.into_matrix(),
        })
    }

    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        Self::new(CMatrix::outer(psi))
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_size(n)?;
        let dim = 1 << n;
        Self::new(CMatrix::identity(dim).scale_re(1.0 / dim as f64))
    }

    pub fn ghz(n: usize) -> Result<Self> {
        check_size(n)?;
        Self::pure(&ghz_vector(n))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return domain(format!("oracle handles 1..={MAX_QUBITS} qubits, got {n}"));
    }
    Ok(())
}

/// `(|0...0> + |1...1>)/sqrt 2`
pub fn ghz_vector(n: usize) -> Vec<Complex64> {
    let dim = 1usize << n;
    let mut psi = vec![Complex64::new(0.0, 0.0); dim];
    psi[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    psi[dim - 1] = psi[0];
    psi
}

/// Applies a single-qubit superoperator to qubit `q` (qubit 0 is the most significant bit).
pub fn apply_to_qubit(rho: &CMatrix, l: &LiouvilleMatrix, q: usize, n: usize) -> CMatrix {
    let bit = 1usize << (n - 1 - q);
    let dim = rho.dim();
    let mut out = CMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let (a, b) = ((i & bit != 0) as usize, (j & bit != 0) as usize);
            let (i0, j0) = (i & !bit, j & !bit);
            let mut acc = Complex64::new(0.0, 0.0);
            for a0 in 0..2 {
                for b0 in 0..2 {
                    let src = (i0 | (a0 * bit), j0 | (b0 * bit));
                    acc += l.0[2 * a + b][2 * a0 + b0] * rho[src];
                }
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// `(Lambda^reps)^{(x)N}` applied to an arbitrary matrix, without validation.
pub fn evolve_matrix(rho: &CMatrix, s: &ChannelScalars, reps: u32) -> CMatrix {
    let n = rho.dim().trailing_zeros() as usize;
    let l = liouville_matrix(s).power(reps);
    (0..n).fold(rho.clone(), |acc, q| apply_to_qubit(&acc, &l, q, n))
}

/// Every qubit passes through the channel `reps` times.
pub fn evolve_dense(rho0: &DenseState, s: &ChannelScalars, reps: u32) -> Result<DenseState> {
    if reps < 1 {
        return domain("at least one channel application is required");
    }
    DenseState::new(evolve_matrix(&rho0.rho, s, reps))
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `P_n(x)` and its derivative.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Averages `U rho0 U^dag` over the random axis, `U = cos(phi) I - i sin(phi) n.sigma`.
///
/// Gauss-Legendre in `cos(theta)` with `nodes` points, trapezoid in azimuth with `2 nodes`.
pub fn channel_quadrature(rho0: &CMatrix, params: ChannelParams, nodes: usize) -> Result<CMatrix> {
    if nodes < MIN_NODES {
        return domain(format!("need at least {MIN_NODES} quadrature nodes, got {nodes}"));
    }
    if rho0.dim() != 2 {
        return domain("quadrature acts on single-qubit states");
    }
    let ChannelParams { phi, kappa } = params;
    // p(x) = kappa e^{kappa x} / (4 pi sinh kappa), rewritten to avoid overflow
    let norm = kappa / (2.0 * PI * -(-2.0 * kappa).exp_m1());
    let (xs, ws) = gauss_legendre(nodes);
    let n_az = 2 * nodes;
    let d_az = 2.0 * PI / n_az as f64;
    let (sp, cp) = phi.sin_cos();
    let i = Complex64::i();

    let mut acc = CMatrix::zeros(2);
    for (&x, &w) in xs.iter().zip(&ws) {
        let weight = w * norm * (kappa * (x - 1.0)).exp() * d_az;
        let st = (1.0 - x * x).max(0.0).sqrt();
        for k in 0..n_az {
            let (sa, ca) = (k as f64 * d_az).sin_cos();
            let (nx, ny, nz) = (st * ca, st * sa, x);
            let u = CMatrix::from_rows(&[
                &[cp - i * sp * nz, -i * sp * Complex64::new(nx, -ny)],
                &[-i * sp * Complex64::new(nx, ny), cp + i * sp * nz],
            ]);
            let term = u.matmul(rho0).matmul(&u.adjoint());
            acc = &acc + &term.scale_re(weight);
        }
    }
    Ok(acc)
}

/// QFIM from central differences of `builder`, checked against half the step.
pub fn qfim_fd(
    builder: impl Fn(ChannelParams) -> Result<CMatrix>,
    params: ChannelParams,
    step: f64,
) -> Result<QfiMatrix> {
    if !(1e-7..=1e-3).contains(&step) {
        return domain(format!("finite-difference step {step} outside [1e-7, 1e-3]"));
    }
    let coarse = fd_once(&builder, params, step)?;
    let fine = fd_once(&builder, params, 0.5 * step)?;
    let change = fine.relative_difference(&coarse);
    let scale = fine.phi_phi.abs().max(fine.kappa_kappa.abs());
    if scale > 0.0 && change > FD_AGREEMENT {
        return Err(Error::FdConvergence(change));
    }
    Ok(fine)
}

fn fd_once(
    builder: &impl Fn(ChannelParams) -> Result<CMatrix>,
    params: ChannelParams,
    h: f64,
) -> Result<QfiMatrix> {
    let ChannelParams { phi, kappa } = params;
    let at = |p: f64, k: f64| builder(ChannelParams::new(p, k)?);
    let rho = at(phi, kappa)?;
    let d_phi = (&at(phi + h, kappa)? - &at(phi - h, kappa)?).scale_re(0.5 / h);
    let d_kappa = (&at(phi, kappa + h)? - &at(phi, kappa - h)?).scale_re(0.5 / h);
    qfim(
        &HermitianOperator::new(rho)?,
        &HermitianOperator::new(d_phi.hermitian_part())?,
        &HermitianOperator::new(d_kappa.hermitian_part())?,
    )
}

/// State builder for `M` qubits in a GHZ state, each through the channel `reps` times.
pub fn ghz_builder(m: usize, reps: u32) -> impl Fn(ChannelParams) -> Result<CMatrix> {
    move |p| {
        let rho0 = DenseState::ghz(m)?;
        Ok(evolve_dense(&rho0, &p.scalars(), reps)?.rho)
    }
}

/// State builder for an arbitrary pure input through one channel per qubit.
pub fn pure_builder(psi: Vec<Complex64>) -> impl Fn(ChannelParams) -> Result<CMatrix> {
    move |p| {
        let rho0 = DenseState::pure(&psi)?;
        Ok(evolve_dense(&rho0, &p.scalars(), 1)?.rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{bloch_to_density, density_to_bloch};
    use approx::assert_relative_eq;

    fn params(phi: f64, kappa: f64) -> ChannelParams {
        ChannelParams::new(phi, kappa).unwrap()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(64);
        assert_relative_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-13);
        let i: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
        assert_relative_eq!(i, 2.0 / 11.0, epsilon = 1e-13);
        let (_, w5) = gauss_legendre(5);
        assert_relative_eq!(w5[2], 128.0 / 225.0, epsilon = 1e-14);
    }

    #[test]
    fn mixed_state_is_a_fixed_point() {
        let s = params(0.4, 1.3).scalars();
        for n in 1..=4 {
            let rho = DenseState::maximally_mixed(n).unwrap();
            let out = evolve_dense(&rho, &s, 2).unwrap();
            assert!((out.matrix() - rho.matrix()).max_abs() < 1e-15);
        }
        let half = CMatrix::identity(2).scale_re(0.5);
        let q = channel_quadrature(&half, params(0.4, 1.3), 64).unwrap();
        assert!((&q - &half).max_abs() < 1e-13);
    }

    #[test]
    fn quadrature_reproduces_the_reference_bloch_value() {
        let plus = bloch_to_density([1.0, 0.0, 0.0]);
        let out = channel_quadrature(&plus, params(std::f64::consts::FRAC_PI_2, 1.0), 128).unwrap();
        assert!((density_to_bloch(&out)[0] + 0.373_929_429_001_337_6).abs() < 1e-8);
    }

    #[test]
    fn dimension_cap_is_enforced() {
        assert!(DenseState::ghz(7).is_err());
        assert!(DenseState::ghz(0).is_err());
        assert!(channel_quadrature(&CMatrix::identity(2), params(0.1, 1.0), 10).is_err());
    }

    #[test]
    fn constant_builder_has_no_information() {
        let f = qfim_fd(|_| Ok(CMatrix::identity(2).scale_re(0.5)), params(0.3, 2.0), DEFAULT_STEP).unwrap();
        assert_eq!(f, QfiMatrix::zero());
    }

    #[test]
    fn step_is_validated() {
        let b = |_| Ok(CMatrix::identity(2).scale_re(0.5));
        assert!(qfim_fd(b, params(0.3, 2.0), 1e-2).is_err());
        assert!(qfim_fd(b, params(0.3, 2.0), 1e-9).is_err());
    }

    #[test]
    fn evolution_commutes_with_qubit_swap() {
        let s = params(0.3, 3.0).scalars();
        let out = evolve_dense(&DenseState::ghz(3).unwrap(), &s, 1).unwrap();
        // swap qubits 0 and 2
        let perm = |x: usize| ((x & 1) << 2) | (x & 2) | ((x >> 2) & 1);
        let swapped = CMatrix::from_fn(8, |i, j| out.matrix()[(perm(i), perm(j))]);
        assert!((out.matrix() - &swapped).max_abs() < 1e-15);
    }
}
