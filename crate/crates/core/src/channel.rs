//! The vMF-averaged phase channel.
//!
//! A qubit is rotated by `U_n = exp(-i phi n.sigma)` with the axis `n` drawn from
//! a von Mises–Fisher distribution concentrated around `z`. Averaging gives a
//! unital phase-covariant channel described by two scalars:
//!
//! * `b = 2 sin^2(phi) (kappa coth(kappa) - 1) / kappa^2`, the population flip weight,
//! * `c = cos(2 phi) + b - i sin(2 phi) (kappa coth(kappa) - 1) / kappa`, the factor
//!   multiplying the coherence `rho_01`.
//!
//! The second form of `c` is `cos 2phi + b (1 - i kappa cot phi)` with the cotangent
//! pole cancelled analytically, so `c(0, kappa) = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::CMatrix;

/// Below this concentration `(kappa coth kappa - 1) / kappa^2` and its derivative
/// are taken from their series.
pub const SMALL_KAPPA: f64 = 0.1;
/// Above this concentration `coth` is replaced by `1 + 2 exp(-2 kappa)`.
pub const LARGE_KAPPA: f64 = 30.0;

/// Taylor coefficients of `(kappa coth kappa - 1) / kappa^2` in powers of `kappa^2`.
const H_SERIES: [f64; 7] = [
    1.0 / 3.0,
    -1.0 / 45.0,
    2.0 / 945.0,
    -1.0 / 4725.0,
    2.0 / 93555.0,
    -1382.0 / 638512875.0,
    4.0 / 18243225.0,
];

/// The two estimation targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Phase shift in radians.
    pub phi: f64,
    /// vMF concentration, dimensionless and strictly positive.
    pub kappa: f64,
}

impl ChannelParams {
    pub fn new(phi: f64, kappa: f64) -> Result<Self> {
        if !phi.is_finite() {
            return domain(format!("phi must be finite, got {phi}"));
        }
        if !(kappa > 0.0) || !kappa.is_finite() {
            return domain(format!("kappa must be positive and finite, got {kappa}"));
        }
        Ok(ChannelParams { phi, kappa })
    }

    pub fn scalars(&self) -> ChannelScalars {
        channel_scalars(*self)
    }
}

/// Channel scalars and their partial derivatives with respect to `phi` and `kappa`.
///
/// `c` multiplies `rho_01`; the Liouville entry `lambda_perp e^{-i g}` equals `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelScalars {
    pub b: f64,
    pub c: Complex64,
    pub lambda_par: f64,
    pub lambda_perp: f64,
    /// Rotation angle about `z`; `g = 2 phi` without noise.
    pub g: f64,
    pub db_dphi: f64,
    pub db_dkappa: f64,
    pub dc_dphi: Complex64,
    pub dc_dkappa: Complex64,
}

impl ChannelScalars {
    /// Assembles the scalars from `b`, `c` and their partials.
    pub fn from_parts(b: f64, c: Complex64, db: [f64; 2], dc: [Complex64; 2]) -> Self {
        ChannelScalars {
            b,
            c,
            lambda_par: 1.0 - 2.0 * b,
            lambda_perp: c.norm(),
            g: (-c.im).atan2(c.re),
            db_dphi: db[0],
            db_dkappa: db[1],
            dc_dphi: dc[0],
            dc_dkappa: dc[1],
        }
    }

    /// `[db/dphi, db/dkappa]`
    pub fn db(&self) -> [f64; 2] {
        [self.db_dphi, self.db_dkappa]
    }

    /// `[dc/dphi, dc/dkappa]`
    pub fn dc(&self) -> [Complex64; 2] {
        [self.dc_dphi, self.dc_dkappa]
    }

    /// The noiseless channel: a pure rotation by `2 phi` (derivatives in `phi` only).
    pub fn noiseless(phi: f64) -> Self {
        let c = Complex64::from_polar(1.0, -2.0 * phi);
        let dc = Complex64::new(0.0, -2.0) * c;
        Self::from_parts(0.0, c, [0.0, 0.0], [dc, Complex64::new(0.0, 0.0)])
    }
}

/// `(kappa coth kappa - 1) / kappa^2` and its derivative.
fn shape_factor(kappa: f64) -> (f64, f64) {
    let k2 = kappa * kappa;
    let series = |k: f64| {
        let x = k * k;
        let mut h = 0.0;
        let mut dh = 0.0;
        let mut pow = 1.0;
        for (n, &a) in H_SERIES.iter().enumerate() {
            h += a * pow;
            if n > 0 {
                dh += 2.0 * n as f64 * a * pow / k;
            }
            pow *= x;
        }
        (h, dh)
    };
    if kappa < SMALL_KAPPA {
        return series(kappa);
    }
    let (coth, csch2) = if kappa > LARGE_KAPPA {
        let e = (-2.0 * kappa).exp();
        (1.0 + 2.0 * e, 4.0 * e)
    } else {
        let s = kappa.sinh();
        (1.0 / kappa.tanh(), 1.0 / (s * s))
    };
    let h = (kappa * coth - 1.0) / k2;
    let dh = (coth - kappa * csch2) / k2 - 2.0 * (kappa * coth - 1.0) / (k2 * kappa);
    (h, dh)
}

/// vMF density per unit solid angle at polar angle `theta`.
pub fn vmf_density(theta: f64, kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return domain(format!("kappa must be positive and finite, got {kappa}"));
    }
    if !(0.0..=PI).contains(&theta) {
        return domain(format!("theta must lie in [0, pi], got {theta}"));
    }
    if kappa > LARGE_KAPPA {
        // 4 pi sinh k = 2 pi e^k (1 - e^{-2k})
        let log_p = kappa.ln() + kappa * (theta.cos() - 1.0)
            - (2.0 * PI).ln()
            - (-(-2.0 * kappa).exp()).ln_1p();
        Ok(log_p.exp())
    } else {
        Ok(kappa * (kappa * theta.cos()).exp() / (4.0 * PI * kappa.sinh()))
    }
}

/// Exact channel scalars with analytic partial derivatives.
pub fn channel_scalars(params: ChannelParams) -> ChannelScalars {
    let ChannelParams { phi, kappa } = params;
    let (h, dh) = shape_factor(kappa);
    // s = (kappa coth kappa - 1) / kappa = b kappa cot(phi) / sin(2 phi)
    let s = kappa * h;
    let ds = h + kappa * dh;
    let (sin_p, _) = phi.sin_cos();
    let (sin2, cos2) = (2.0 * phi).sin_cos();

    let b = 2.0 * sin_p * sin_p * h;
    let db_dphi = 2.0 * sin2 * h;
    let db_dkappa = 2.0 * sin_p * sin_p * dh;

    let c = Complex64::new(cos2 + b, -sin2 * s);
    let dc_dphi = Complex64::new(-2.0 * sin2 + db_dphi, -2.0 * cos2 * s);
    let dc_dkappa = Complex64::new(db_dkappa, -sin2 * ds);

    ChannelScalars::from_parts(b, c, [db_dphi, db_dkappa], [dc_dphi, dc_dkappa])
}

/// Scalars of the `k`-fold composition of the channel with itself.
pub fn compose_scalars(scalars: &ChannelScalars, k: u32) -> Result<ChannelScalars> {
    if k < 1 {
        return domain("composition order must be at least 1");
    }
    if k == 1 {
        return Ok(*scalars);
    }
    let lam = 1.0 - 2.0 * scalars.b;
    let lam_km1 = lam.powi(k as i32 - 1);
    let b = 0.5 * (1.0 - lam_km1 * lam);
    // d/dx (1 - lam^k)/2 = k lam^{k-1} db/dx
    let kf = k as f64;
    let db = scalars.db().map(|d| kf * lam_km1 * d);
    let c_km1 = scalars.c.powi(k as i32 - 1);
    let c = c_km1 * scalars.c;
    let dc = scalars.dc().map(|d| kf * c_km1 * d);
    Ok(ChannelScalars::from_parts(b, c, db, dc))
}

/// Liouville (superoperator) matrix acting on `(rho00, rho01, rho10, rho11)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvilleMatrix(pub [[Complex64; 4]; 4]);

impl LiouvilleMatrix {
    pub fn apply(&self, v: [Complex64; 4]) -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row.iter().zip(v.iter()).map(|(a, x)| a * x).sum();
        }
        out
    }

    pub fn apply_density(&self, rho: &CMatrix) -> CMatrix {
        assert_eq!(rho.dim(), 2, "Liouville matrix acts on qubits");
        let out = self.apply([rho[(0, 0)], rho[(0, 1)], rho[(1, 0)], rho[(1, 1)]]);
        CMatrix::from_rows(&[&[out[0], out[1]], &[out[2], out[3]]])
    }

    pub fn compose(&self, other: &LiouvilleMatrix) -> LiouvilleMatrix {
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..4).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        LiouvilleMatrix(m)
    }

    pub fn power(&self, k: u32) -> LiouvilleMatrix {
        let mut id = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = Complex64::new(1.0, 0.0);
        }
        (0..k).fold(LiouvilleMatrix(id), |acc, _| acc.compose(self))
    }

    /// Choi matrix `sum_ij |i><j| (x) Lambda(|i><j|)`, indexed `(2 i + a, 2 j + b)`.
    pub fn choi(&self) -> CMatrix {
        CMatrix::from_fn(4, |r, s| {
            let (i, a) = (r / 2, r % 2);
            let (j, b) = (s / 2, s % 2);
            // output slot (a, b) from input slot (i, j)
            self.0[2 * a + b][2 * i + j]
        })
    }
}

/// The Liouville matrix with entries `(1 +- lambda_par)/2` and `lambda_perp e^{-+ i g}`.
pub fn liouville_matrix(s: &ChannelScalars) -> LiouvilleMatrix {
    let z = Complex64::new(0.0, 0.0);
    let keep = Complex64::new((1.0 + s.lambda_par) / 2.0, 0.0);
    let flip = Complex64::new((1.0 - s.lambda_par) / 2.0, 0.0);
    let coh = Complex64::from_polar(s.lambda_perp, -s.g);
    LiouvilleMatrix([
        [keep, z, z, flip],
        [z, coh, z, z],
        [z, z, coh.conj(), z],
        [flip, z, z, keep],
    ])
}

/// Maps an input Bloch vector through the channel: the `xy` plane is multiplied
/// by `c` (as `x - i y`) and `z` by `1 - 2b`.
pub fn apply_channel_bloch(r0: [f64; 3], s: &ChannelScalars) -> Result<[f64; 3]> {
    let norm = r0.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm <= 1.0 + 1e-12) {
        return domain(format!("Bloch vector norm {norm} exceeds 1"));
    }
    Ok(map_bloch(r0, s.c, s.b))
}

/// `r1 = Re(c) x + Im(c) y`, `r2 = Re(c) y - Im(c) x`, `r3 = (1 - 2b) z`.
pub(crate) fn map_bloch(r0: [f64; 3], c: Complex64, b: f64) -> [f64; 3] {
    let [x, y, z] = r0;
    [c.re * x + c.im * y, c.re * y - c.im * x, (1.0 - 2.0 * b) * z]
}

/// Partial derivative of the mapped Bloch vector given `db` and `dc` for one parameter.
pub(crate) fn map_bloch_derivative(r0: [f64; 3], dc: Complex64, db: f64) -> [f64; 3] {
    let [x, y, z] = r0;
    [dc.re * x + dc.im * y, dc.re * y - dc.im * x, -2.0 * db * z]
}
