//! Single-qubit probes in closed form.
//!
//! A pure probe with Bloch vector `r0` is mapped to `r`, and everything follows from
//! `r` and its partials: the QFIM `F_mn = dr_m . dr_n + (r . dr_m)(r . dr_n) / (1 - |r|^2)`,
//! the SLD and the compatibility triple product `r . (dr_phi x dr_kappa)`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::channel::{map_bloch, map_bloch_derivative, ChannelParams, ChannelScalars};
use crate::error::{domain, Error, Result};
use crate::linalg::{pauli, CMatrix, HermitianOperator};
use crate::qfim::QfiMatrix;
use crate::search::grid_golden_min;
use crate::{Parameter, Target};

/// Below this value of `1 - |r|^2` the mapped state is treated as pure.
const PURITY_TOL: f64 = 1e-14;
const THETA_GRID: usize = 256;
const THETA_TOL: f64 = 1e-6;

/// A pure single-qubit probe `cos(theta0/2)|0> + e^{i azimuth0} sin(theta0/2)|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleProbe {
    pub theta0: f64,
    pub azimuth0: f64,
}

impl SingleProbe {
    pub fn new(theta0: f64, azimuth0: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta0) || !azimuth0.is_finite() {
            return domain(format!("invalid probe angles ({theta0}, {azimuth0})"));
        }
        Ok(SingleProbe { theta0, azimuth0 })
    }

    pub fn equatorial() -> Self {
        SingleProbe {
            theta0: FRAC_PI_2,
            azimuth0: 0.0,
        }
    }

    pub fn polar() -> Self {
        SingleProbe {
            theta0: 0.0,
            azimuth0: 0.0,
        }
    }

    pub fn bloch(&self) -> [f64; 3] {
        // sin(pi/2 - theta) keeps the equator exactly at z = 0
        let (st, ct) = (self.theta0.sin(), (FRAC_PI_2 - self.theta0).sin());
        let (sa, ca) = self.azimuth0.sin_cos();
        [st * ca, st * sa, ct]
    }
}

/// Mapped Bloch vector and its partials `[d/dphi, d/dkappa]`.
#[derive(Debug, Clone, Copy)]
pub struct MappedBloch {
    pub r: [f64; 3],
    pub dr: [[f64; 3]; 2],
}

impl MappedBloch {
    pub fn new(probe: &SingleProbe, s: &ChannelScalars) -> Self {
        let r0 = probe.bloch();
        MappedBloch {
            r: map_bloch(r0, s.c, s.b),
            dr: [
                map_bloch_derivative(r0, s.dc_dphi, s.db_dphi),
                map_bloch_derivative(r0, s.dc_dkappa, s.db_dkappa),
            ],
        }
    }

    fn purity_gap(&self) -> f64 {
        1.0 - dot(&self.r, &self.r)
    }

    pub fn qfim(&self) -> Result<QfiMatrix> {
        let gap = self.purity_gap();
        let proj = [dot(&self.r, &self.dr[0]), dot(&self.r, &self.dr[1])];
        let mixed_term = |m: usize, n: usize| -> Result<f64> {
            if gap > PURITY_TOL {
                Ok(proj[m] * proj[n] / gap)
            } else if proj[m] == 0.0 || proj[n] == 0.0 {
                Ok(0.0)
            } else {
                Err(Error::Unbounded)
            }
        };
        let entry = |m: usize, n: usize| -> Result<f64> {
            Ok(dot(&self.dr[m], &self.dr[n]) + mixed_term(m, n)?)
        };
        Ok(QfiMatrix::new(entry(0, 0)?, entry(1, 1)?, entry(0, 1)?))
    }

    pub fn triple_product(&self) -> f64 {
        dot(&self.r, &cross(&self.dr[0], &self.dr[1]))
    }

    pub fn density(&self) -> CMatrix {
        crate::linalg::bloch_to_density(self.r)
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn pauli_combination(v: &[f64; 3]) -> CMatrix {
    let [x, y, z] = pauli();
    let s = |m: &CMatrix, a: f64| m.scale_re(a);
    &(&s(&x, v[0]) + &s(&y, v[1])) + &s(&z, v[2])
}

/// QFIM of a single-qubit probe through the channel with the given scalars.
pub fn qfim_single_scalars(probe: &SingleProbe, s: &ChannelScalars) -> Result<QfiMatrix> {
    MappedBloch::new(probe, s).qfim()
}

pub fn qfim_single(probe: &SingleProbe, params: ChannelParams) -> Result<QfiMatrix> {
    qfim_single_scalars(probe, &params.scalars())
}

/// `L = [r . dr / (1 - |r|^2)] (-I + r . sigma) + dr . sigma`.
pub fn sld_single(
    probe: &SingleProbe,
    params: ChannelParams,
    parameter: Parameter,
) -> Result<HermitianOperator> {
    let m = MappedBloch::new(probe, &params.scalars());
    let gap = m.purity_gap();
    if gap <= PURITY_TOL {
        return Err(Error::Unbounded);
    }
    let dr = &m.dr[parameter.index()];
    let weight = dot(&m.r, dr) / gap;
    let shifted = &pauli_combination(&m.r) - &CMatrix::identity(2);
    let l = &shifted.scale_re(weight) + &pauli_combination(dr);
    HermitianOperator::new(l)
}

/// `r . (dr_phi x dr_kappa)`; zero exactly when `Im Tr(rho L_phi L_kappa)` vanishes.
pub fn compat_triple(probe: &SingleProbe, params: ChannelParams) -> f64 {
    MappedBloch::new(probe, &params.scalars()).triple_product()
}

/// QFI of the equatorial probe: `|dc|^2 + Re(c* dc)^2 / (1 - |c|^2)`.
pub fn equatorial_information(s: &ChannelScalars, parameter: Parameter) -> f64 {
    let dc: Complex64 = s.dc()[parameter.index()];
    let radial = (s.c.conj() * dc).re;
    dc.norm_sqr() + radial * radial / (1.0 - s.c.norm_sqr())
}

/// Polar-probe information: `(db)^2 / (b (1 - b))`.
pub fn polar_information(s: &ChannelScalars, parameter: Parameter) -> f64 {
    let db = s.db()[parameter.index()];
    if db == 0.0 {
        return 0.0;
    }
    db * db / (s.b * (1.0 - s.b))
}

/// Optimal polar angle (azimuth fixed to 0) and the variance bound it achieves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaOptimum {
    pub theta: f64,
    /// `1/F_phiphi`, `1/F_kappakappa` or `Tr F^-1`, depending on the target.
    pub variance: f64,
}

fn theta_objective(params: ChannelParams, target: Target) -> impl Fn(f64) -> f64 {
    let s = params.scalars();
    move |theta: f64| {
        let probe = SingleProbe {
            theta0: theta,
            azimuth0: 0.0,
        };
        match qfim_single_scalars(&probe, &s) {
            Ok(f) => match target {
                Target::Phi => 1.0 / f.phi_phi,
                Target::Kappa => 1.0 / f.kappa_kappa,
                Target::Simultaneous => f.trace_inverse(),
            },
            Err(_) => f64::INFINITY,
        }
    }
}

/// Best single-qubit probe for the given target over `theta in [0, pi/2]`.
///
/// For `phi` alone the equator is always optimal; for `kappa` alone the optimum
/// is either the equator or the pole; the simultaneous case is searched.
pub fn optimal_theta(params: ChannelParams, target: Target) -> ThetaOptimum {
    let objective = theta_objective(params, target);
    match target {
        Target::Phi => ThetaOptimum {
            theta: FRAC_PI_2,
            variance: objective(FRAC_PI_2),
        },
        Target::Kappa => {
            let eq = objective(FRAC_PI_2);
            let pole = objective(0.0);
            if pole < eq {
                ThetaOptimum {
                    theta: 0.0,
                    variance: pole,
                }
            } else {
                ThetaOptimum {
                    theta: FRAC_PI_2,
                    variance: eq,
                }
            }
        }
        Target::Simultaneous => {
            let m = grid_golden_min(
                &objective,
                0.0,
                FRAC_PI_2,
                THETA_GRID,
                THETA_TOL,
                Some(FRAC_PI_2),
            );
            ThetaOptimum {
                theta: m.x,
                variance: m.value,
            }
        }
    }
}

/// `Tr F^-1` of the best single-qubit simultaneous probe.
pub fn single_sim_variance(params: ChannelParams) -> f64 {
    optimal_theta(params, Target::Simultaneous).variance
}

/// Two uncorrelated single qubits: `R = Delta_ind / Delta_sim` with each strategy
/// using its own optimal probes.
pub fn ratio_single(params: ChannelParams) -> f64 {
    let ind = optimal_theta(params, Target::Phi).variance + optimal_theta(params, Target::Kappa).variance;
    let sim = 0.5 * single_sim_variance(params);
    ind / sim
}
