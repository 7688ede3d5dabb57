//! Symmetric two-qubit probes `alpha(|00> + |11>) + beta(|01> + |10>)` with
//! `alpha^2 + beta^2 = 1/2`, sent through one copy of the channel per qubit.
//!
//! With `xi = 2b(1-b)(alpha^2 - beta^2)` the evolved state in the basis
//! `|00>, |01>, |10>, |11>` is
//!
//! ```text
//! [ a^2 - xi     a b c       a b c       a^2 c^2  ]
//! [ a b c*       b^2 + xi    b^2 |c|^2   a b c    ]
//! [ a b c*       b^2 |c|^2   b^2 + xi    a b c    ]
//! [ a^2 c*^2     a b c*      a b c*      a^2 - xi ]
//! ```

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::channel::{ChannelParams, ChannelScalars};
use crate::error::{domain, Result};
use crate::linalg::{eigh, CMatrix, HermitianOperator};
use crate::qfim::{qfim_spectral, QfiMatrix};
use crate::search::{linspace, refine_on_grid};
use crate::Target;

const ALPHA_GRID: usize = 512;
const ALPHA_TOL: f64 = 1e-7;
/// Optima closer than this to either end of the search range count as boundary optima.
const INTERIOR_MARGIN: f64 = 1e-5;

/// Lower end of the search range: the product state `|+>|+>`.
pub const ALPHA_PRODUCT: f64 = 0.5;
/// Upper end of the search range: the Bell state `(|00> + |11>)/sqrt 2`.
pub const ALPHA_BELL: f64 = FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitProbe {
    pub alpha: f64,
}

impl TwoQubitProbe {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=ALPHA_BELL + 1e-15).contains(&alpha) {
            return domain(format!("alpha = {alpha} outside [0, 1/sqrt 2]"));
        }
        Ok(TwoQubitProbe {
            alpha: alpha.min(ALPHA_BELL),
        })
    }

    pub fn beta(&self) -> f64 {
        (0.5 - self.alpha * self.alpha).max(0.0).sqrt()
    }

    /// Amplitudes in the computational basis.
    pub fn state_vector(&self) -> [Complex64; 4] {
        let a = Complex64::new(self.alpha, 0.0);
        let b = Complex64::new(self.beta(), 0.0);
        [a, b, b, a]
    }
}

fn assemble(alpha: f64, beta: f64, diag: [f64; 2], c: Complex64, cc: Complex64, pop: f64) -> CMatrix {
    // diag = [corner diagonal, middle diagonal]; c = coherence, cc = corner coherence,
    // pop = middle off-diagonal
    let ab = c * (alpha * beta);
    let abs = ab.conj();
    let corner = cc * (alpha * alpha);
    let re = |x: f64| Complex64::new(x, 0.0);
    CMatrix::from_rows(&[
        &[re(diag[0]), ab, ab, corner],
        &[abs, re(diag[1]), re(pop), ab],
        &[abs, re(pop), re(diag[1]), ab],
        &[corner.conj(), abs, abs, re(diag[0])],
    ])
}

/// Evolved state and its partial derivatives `[d/dphi, d/dkappa]`.
pub fn evolved_two_with_derivatives(probe: &TwoQubitProbe, s: &ChannelScalars) -> (CMatrix, [CMatrix; 2]) {
    let a = probe.alpha;
    let b = probe.beta();
    let a2 = a * a;
    let b2 = b * b;
    let xi = 2.0 * s.b * (1.0 - s.b) * (a2 - b2);
    let rho = assemble(a, b, [a2 - xi, b2 + xi], s.c, s.c * s.c, b2 * s.c.norm_sqr());

    let derivs = [0, 1].map(|mu| {
        let db = s.db()[mu];
        let dc = s.dc()[mu];
        let dxi = 2.0 * (1.0 - 2.0 * s.b) * (a2 - b2) * db;
        let dpop = 2.0 * b2 * (s.c.conj() * dc).re;
        assemble(a, b, [-dxi, dxi], dc, 2.0 * s.c * dc, dpop)
    });
    (rho, derivs)
}

/// The evolved two-qubit state.
pub fn evolved_two(probe: &TwoQubitProbe, s: &ChannelScalars) -> HermitianOperator {
    let (rho, _) = evolved_two_with_derivatives(probe, s);
    HermitianOperator::new(rho).expect("evolved two-qubit state is Hermitian by construction")
}

fn qfim_two_scalars(probe: &TwoQubitProbe, s: &ChannelScalars) -> Result<QfiMatrix> {
    let (rho, d) = evolved_two_with_derivatives(probe, s);
    let e = eigh(&rho)?;
    Ok(qfim_spectral(&e, [&d[0], &d[1]]))
}

pub fn qfim_two(probe: &TwoQubitProbe, params: ChannelParams) -> Result<QfiMatrix> {
    qfim_two_scalars(probe, &params.scalars())
}

/// Result of [`optimal_alpha`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaOptimum {
    pub alpha: f64,
    /// `1/F_phiphi`, `1/F_kappakappa` or `Tr F^-1`, depending on the target.
    pub variance: f64,
    /// True when the optimum lies strictly inside `(1/2, 1/sqrt 2)`.
    pub interior: bool,
}

fn objective(f: &QfiMatrix, target: Target) -> f64 {
    let v = match target {
        Target::Phi => 1.0 / f.phi_phi,
        Target::Kappa => 1.0 / f.kappa_kappa,
        Target::Simultaneous => f.trace_inverse(),
    };
    if v.is_finite() && v > 0.0 {
        v
    } else {
        f64::INFINITY
    }
}

/// Optimal `alpha` for all three targets, sharing one grid of QFIM evaluations.
///
/// Returned in the order `[Phi, Kappa, Simultaneous]`. Ties go to the Bell state.
pub fn optimal_alphas(params: ChannelParams) -> [AlphaOptimum; 3] {
    let s = params.scalars();
    let eval = |alpha: f64| {
        qfim_two_scalars(&TwoQubitProbe { alpha }, &s).unwrap_or(QfiMatrix::zero())
    };
    let grid = linspace(ALPHA_PRODUCT, ALPHA_BELL, ALPHA_GRID);
    let fisher: Vec<QfiMatrix> = grid.iter().map(|&a| eval(a)).collect();

    [Target::Phi, Target::Kappa, Target::Simultaneous].map(|target| {
        let values: Vec<f64> = fisher.iter().map(|f| objective(f, target)).collect();
        let m = refine_on_grid(
            |a| objective(&eval(a), target),
            &grid,
            &values,
            ALPHA_TOL,
            Some(ALPHA_BELL),
        );
        AlphaOptimum {
            alpha: m.x,
            variance: m.value,
            interior: m.x - ALPHA_PRODUCT > INTERIOR_MARGIN && ALPHA_BELL - m.x > INTERIOR_MARGIN,
        }
    })
}

pub fn optimal_alpha(params: ChannelParams, target: Target) -> AlphaOptimum {
    let [phi, kappa, sim] = optimal_alphas(params);
    match target {
        Target::Phi => phi,
        Target::Kappa => kappa,
        Target::Simultaneous => sim,
    }
}

/// `R = (1/F_phiphi + 1/F_kappakappa) / (Tr F^-1 / 2)`, each term at its own optimal `alpha`.
pub fn ratio_two(params: ChannelParams) -> f64 {
    ratio_from_optima(&optimal_alphas(params))
}

pub fn ratio_from_optima(optima: &[AlphaOptimum; 3]) -> f64 {
    (optima[0].variance + optima[1].variance) / (0.5 * optima[2].variance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::liouville_matrix;
    use crate::qfim::{compat_of_state, qfim};
    use crate::single::{qfim_single, SingleProbe};
    use approx::assert_relative_eq;

    fn params(phi: f64, kappa: f64) -> ChannelParams {
        ChannelParams::new(phi, kappa).unwrap()
    }

    fn herm(m: CMatrix) -> HermitianOperator {
        HermitianOperator::new(m).unwrap()
    }

    #[test]
    fn probe_is_normalised() {
        for alpha in [0.0, 0.3, 0.5, 0.6, ALPHA_BELL] {
            let p = TwoQubitProbe::new(alpha).unwrap();
            let norm: f64 = p.state_vector().iter().map(|z| z.norm_sqr()).sum();
            assert_relative_eq!(norm, 1.0, epsilon = 1e-15);
        }
        assert!(TwoQubitProbe::new(0.75).is_err());
        assert!(TwoQubitProbe::new(-0.1).is_err());
    }

    #[test]
    fn product_input_gives_product_output() {
        let s = params(0.4, 2.0).scalars();
        let rho = evolved_two(&TwoQubitProbe::new(0.5).unwrap(), &s);
        let plus = CMatrix::from_fn(2, |_, _| Complex64::new(0.5, 0.0));
        let one = liouville_matrix(&s).apply_density(&plus);
        let expected = one.kron(&one);
        assert!((rho.matrix() - &expected).max_abs() < 1e-14);
    }

    #[test]
    fn noiseless_bell_state_stays_pure() {
        let s = ChannelScalars::noiseless(0.3);
        let rho = evolved_two(&TwoQubitProbe::new(ALPHA_BELL).unwrap(), &s);
        let e = rho.eigh().unwrap();
        let mut v = e.values.clone();
        v.sort_by(f64::total_cmp);
        assert!(v[..3].iter().all(|x| x.abs() < 1e-14));
        assert_relative_eq!(v[3], 1.0, epsilon = 1e-14);
        // corner coherence picks up twice the single-qubit phase
        assert_relative_eq!(rho[(0, 3)].arg(), -4.0 * 0.3, epsilon = 1e-14);
    }

    #[test]
    fn state_is_a_density_matrix_and_swap_symmetric() {
        let s = params(0.7, 0.8).scalars();
        for alpha in [0.5, 0.6, ALPHA_BELL] {
            let rho = evolved_two(&TwoQubitProbe::new(alpha).unwrap(), &s);
            assert_relative_eq!(rho.trace(), 1.0, epsilon = 1e-14);
            assert!(rho.eigh().unwrap().values.iter().all(|&l| l > -1e-14));
            let swap = [0usize, 2, 1, 3];
            let swapped = CMatrix::from_fn(4, |i, j| rho[(swap[i], swap[j])]);
            assert!((rho.matrix() - &swapped).max_abs() < 1e-15);
        }
    }

    #[test]
    fn derivatives_match_central_differences() {
        let probe = TwoQubitProbe::new(0.62).unwrap();
        let (phi, kappa) = (0.3, 3.0);
        let (_, d) = evolved_two_with_derivatives(&probe, &params(phi, kappa).scalars());
        let h = 1e-6;
        let at = |p: f64, k: f64| evolved_two(&probe, &params(p, k).scalars()).into_matrix();
        let fd = [
            (&at(phi + h, kappa) - &at(phi - h, kappa)).scale_re(0.5 / h),
            (&at(phi, kappa + h) - &at(phi, kappa - h)).scale_re(0.5 / h),
        ];
        for mu in 0..2 {
            assert!((&d[mu] - &fd[mu]).max_abs() < 1e-8, "mu = {mu}");
        }
    }

    #[test]
    fn product_probe_is_twice_the_single_qubit_qfim() {
        let p = params(0.35, 4.0);
        let two = qfim_two(&TwoQubitProbe::new(0.5).unwrap(), p).unwrap();
        let one = qfim_single(&SingleProbe::equatorial(), p).unwrap().scale(2.0);
        assert!(two.relative_difference(&one) < 1e-10, "{two:?} vs {one:?}");
    }

    #[test]
    fn spectral_route_agrees_with_sld_route() {
        let p = params(0.3, 3.0);
        let probe = TwoQubitProbe::new(0.65).unwrap();
        let (rho, d) = evolved_two_with_derivatives(&probe, &p.scalars());
        let [d0, d1] = d;
        let via_sld = qfim(&herm(rho), &herm(d0), &herm(d1)).unwrap();
        let via_spectral = qfim_two(&probe, p).unwrap();
        assert!(via_sld.relative_difference(&via_spectral) < 1e-10);
    }

    #[test]
    fn family_is_compatible() {
        for (phi, kappa) in [(0.1, 0.5), (0.3, 3.0), (0.65, 9.0)] {
            let s = params(phi, kappa).scalars();
            for alpha in [0.5, 0.58, 0.66, ALPHA_BELL] {
                let (rho, [d0, d1]) = evolved_two_with_derivatives(&TwoQubitProbe::new(alpha).unwrap(), &s);
                let g = compat_of_state(&herm(rho), &herm(d0), &herm(d1)).unwrap();
                assert!(g.abs() < 1e-9, "({phi}, {kappa}, {alpha}): {g}");
            }
        }
    }

    #[test]
    fn weak_noise_prefers_bell_state() {
        let opt = optimal_alpha(params(0.05, 0.5), Target::Simultaneous);
        assert_eq!(opt.alpha, ALPHA_BELL);
        assert!(!opt.interior);
    }

    #[test]
    fn strong_noise_moves_towards_product_state() {
        // the optimum sits within a few percent of alpha = 1/2, not exactly on it
        for opt in optimal_alphas(params(0.7, 0.5)) {
            assert!(opt.alpha < 0.54, "{opt:?}");
        }
        let phi = optimal_alpha(params(1.0, 0.5), Target::Kappa);
        assert!((phi.alpha - ALPHA_PRODUCT).abs() < 1e-3, "{phi:?}");
    }

    #[test]
    fn ratio_is_between_one_and_two() {
        for (phi, kappa) in [(0.05, 0.5), (0.3, 3.0), (0.7, 10.0), (0.5, 1.0)] {
            let r = ratio_two(params(phi, kappa));
            assert!(r > 1.0 && r <= 2.0 + 1e-9, "({phi}, {kappa}): {r}");
        }
    }
}
