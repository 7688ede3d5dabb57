//! Mixed-state quantum Fisher information for the two parameters `(phi, kappa)`.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::linalg::{CMatrix, Eigh, HermitianOperator};

/// Relative support cutoff: pairs with `lambda_i + lambda_j <= EPS_REL * lambda_max`
/// are treated as outside the support.
pub const EPS_REL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const NEG_EIG_TOL: f64 = 1e-10;
const TRACELESS_TOL: f64 = 1e-10;

/// Symmetric 2x2 QFIM indexed by `(phi, kappa)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QfiMatrix {
    pub phi_phi: f64,
    pub kappa_kappa: f64,
    pub phi_kappa: f64,
}

impl QfiMatrix {
    pub fn new(phi_phi: f64, kappa_kappa: f64, phi_kappa: f64) -> Self {
        QfiMatrix {
            phi_phi,
            kappa_kappa,
            phi_kappa,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Entry `(mu, nu)` with index 0 = phi, 1 = kappa.
    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        match (mu, nu) {
            (0, 0) => self.phi_phi,
            (1, 1) => self.kappa_kappa,
            (0, 1) | (1, 0) => self.phi_kappa,
            _ => panic!("QFIM index out of range: ({mu}, {nu})"),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        QfiMatrix::new(s * self.phi_phi, s * self.kappa_kappa, s * self.phi_kappa)
    }

    pub fn add(&self, other: &QfiMatrix) -> Self {
        QfiMatrix::new(
            self.phi_phi + other.phi_phi,
            self.kappa_kappa + other.kappa_kappa,
            self.phi_kappa + other.phi_kappa,
        )
    }

    pub fn determinant(&self) -> f64 {
        self.phi_phi * self.kappa_kappa - self.phi_kappa * self.phi_kappa
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let mean = 0.5 * (self.phi_phi + self.kappa_kappa);
        let half_gap = (0.25 * (self.phi_phi - self.kappa_kappa).powi(2)
            + self.phi_kappa * self.phi_kappa)
            .sqrt();
        [mean - half_gap, mean + half_gap]
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.eigenvalues()[0] >= -tol
    }

    /// `1/F_phiphi + 1/F_kappakappa`; infinite when a diagonal entry vanishes.
    pub fn individual_variance_sum(&self) -> f64 {
        inv(self.phi_phi) + inv(self.kappa_kappa)
    }

    /// `Tr F^-1` written as the two Schur complements
    /// `(F_pp - F_pk^2/F_kk)^-1 + (F_kk - F_pk^2/F_pp)^-1`.
    pub fn trace_inverse(&self) -> f64 {
        if !(self.phi_phi > 0.0) || !(self.kappa_kappa > 0.0) {
            return f64::INFINITY;
        }
        let off2 = self.phi_kappa * self.phi_kappa;
        inv(self.phi_phi - off2 / self.kappa_kappa) + inv(self.kappa_kappa - off2 / self.phi_phi)
    }

    /// Largest entrywise difference scaled by the diagonal: `|A_mn - B_mn| / sqrt(B_mm B_nn)`.
    /// Falls back to an absolute difference when the reference diagonal is zero.
    pub fn relative_difference(&self, reference: &QfiMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for (mu, nu) in [(0, 0), (1, 1), (0, 1)] {
            let scale = (reference.get(mu, mu) * reference.get(nu, nu)).abs().sqrt();
            let diff = (self.get(mu, nu) - reference.get(mu, nu)).abs();
            worst = worst.max(if scale > 0.0 { diff / scale } else { diff });
        }
        worst
    }
}

fn inv(x: f64) -> f64 {
    if x > 0.0 {
        1.0 / x
    } else {
        f64::INFINITY
    }
}

fn cutoff(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(0.0, f64::max);
    EPS_REL * max
}

/// Validates a density matrix and returns its eigendecomposition.
pub fn check_density(rho: &HermitianOperator) -> Result<Eigh> {
    let tr = rho.trace();
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
    }
    let e = rho.eigh()?;
    if e.values[0] < -NEG_EIG_TOL {
        return Err(Error::InvalidState(format!(
            "negative eigenvalue {:e}",
            e.values[0]
        )));
    }
    Ok(e)
}

fn check_derivative(rho: &HermitianOperator, drho: &HermitianOperator) -> Result<()> {
    if drho.dim() != rho.dim() {
        return domain("state and derivative dimensions differ");
    }
    let tr = drho.trace();
    if tr.abs() > TRACELESS_TOL * drho.frobenius_norm().max(1.0) {
        return domain(format!("state derivative is not traceless (trace {tr:e})"));
    }
    Ok(())
}

/// SLD in a precomputed eigenbasis of the state.
pub fn sld_from_eigh(e: &Eigh, drho: &CMatrix) -> CMatrix {
    let d = e.to_eigenbasis(drho);
    let eps = cutoff(&e.values);
    let n = e.values.len();
    let l = CMatrix::from_fn(n, |i, j| {
        let s = e.values[i] + e.values[j];
        if s > eps {
            d[(i, j)] * (2.0 / s)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    e.from_eigenbasis(&l).hermitian_part()
}

/// Symmetric logarithmic derivative `L` solving `drho = (rho L + L rho) / 2` on the
/// support of `rho`.
pub fn sld(rho: &HermitianOperator, drho: &HermitianOperator) -> Result<HermitianOperator> {
    let e = check_density(rho)?;
    check_derivative(rho, drho)?;
    HermitianOperator::new(sld_from_eigh(&e, drho))
}

/// Spectral double sum
/// `sum_{l_i + l_j > eps} 2 Re[<i|d_mu rho|j><j|d_nu rho|i>] / (l_i + l_j)`.
///
/// No trace condition is imposed, so this also serves orthogonal blocks of a
/// direct sum (subnormalised states).
pub fn qfim_spectral(e: &Eigh, drho: [&CMatrix; 2]) -> QfiMatrix {
    let d = [e.to_eigenbasis(drho[0]), e.to_eigenbasis(drho[1])];
    let eps = cutoff(&e.values);
    let n = e.values.len();
    let mut f = [[0.0; 2]; 2];
    for i in 0..n {
        for j in 0..n {
            let s = e.values[i] + e.values[j];
            if s <= eps {
                continue;
            }
            for (mu, row) in f.iter_mut().enumerate() {
                for (nu, entry) in row.iter_mut().enumerate().skip(mu) {
                    *entry += 2.0 * (d[mu][(i, j)] * d[nu][(j, i)]).re / s;
                }
            }
        }
    }
    QfiMatrix::new(f[0][0], f[1][1], f[0][1])
}

/// QFIM of a block given as a plain matrix, without density-matrix validation.
pub fn qfim_block(rho: &CMatrix, drho: [&CMatrix; 2]) -> Result<QfiMatrix> {
    let e = crate::linalg::eigh(rho)?;
    Ok(qfim_spectral(&e, drho))
}

/// `F_mu_nu = Re Tr(rho L_mu L_nu)` assembled from the SLDs.
pub fn qfim_from_slds(rho: &CMatrix, l_phi: &CMatrix, l_kappa: &CMatrix) -> QfiMatrix {
    let rl_phi = rho.matmul(l_phi);
    let rl_kappa = rho.matmul(l_kappa);
    let pp = rl_phi.trace_product(l_phi).re;
    let kk = rl_kappa.trace_product(l_kappa).re;
    // Re Tr(rho L_p L_k) = Re Tr(rho L_k L_p) for Hermitian operands
    let pk = rl_phi.trace_product(l_kappa).re;
    QfiMatrix::new(pp, kk, pk)
}

/// QFIM of a density matrix from its analytic derivatives, via the SLD trace formula.
pub fn qfim(
    rho: &HermitianOperator,
    drho_phi: &HermitianOperator,
    drho_kappa: &HermitianOperator,
) -> Result<QfiMatrix> {
    let e = check_density(rho)?;
    check_derivative(rho, drho_phi)?;
    check_derivative(rho, drho_kappa)?;
    let l_phi = sld_from_eigh(&e, drho_phi);
    let l_kappa = sld_from_eigh(&e, drho_kappa);
    Ok(qfim_from_slds(rho, &l_phi, &l_kappa))
}

/// Same matrix as [`qfim`], evaluated through [`qfim_spectral`].
pub fn qfim_via_spectral(
    rho: &HermitianOperator,
    drho_phi: &HermitianOperator,
    drho_kappa: &HermitianOperator,
) -> Result<QfiMatrix> {
    let e = check_density(rho)?;
    check_derivative(rho, drho_phi)?;
    check_derivative(rho, drho_kappa)?;
    Ok(qfim_spectral(&e, [drho_phi.matrix(), drho_kappa.matrix()]))
}

/// `Im Tr(rho L_phi L_kappa)`; zero means a single measurement is optimal for both parameters.
pub fn compat_functional(rho: &CMatrix, l_phi: &CMatrix, l_kappa: &CMatrix) -> f64 {
    rho.matmul(l_phi).trace_product(l_kappa).im
}

/// Builds SLDs for a state and returns `Im Tr(rho L_phi L_kappa)`.
pub fn compat_of_state(
    rho: &HermitianOperator,
    drho_phi: &HermitianOperator,
    drho_kappa: &HermitianOperator,
) -> Result<f64> {
    let e = check_density(rho)?;
    let l_phi = sld_from_eigh(&e, drho_phi);
    let l_kappa = sld_from_eigh(&e, drho_kappa);
    Ok(compat_functional(rho, &l_phi, &l_kappa))
}
