//! GHZ probes `(|0...0> + |1...1>)/sqrt 2` after one channel per qubit.
//!
//! The evolved state is a direct sum of a 2x2 corner block on
//! `span{|0...0>, |1...1>}` and a diagonal part. Every basis string of Hamming
//! weight `m` (with `0 < m < N`) carries the same population
//! `p_m = (b^m (1-b)^(N-m) + b^(N-m) (1-b)^m) / 2`, so the diagonal part is
//! stored per weight with its binomial multiplicity. The QFIM splits the same
//! way: a block term plus a classical Fisher sum over weights.

use num_complex::Complex64;

use crate::channel::{compose_scalars, ChannelParams, ChannelScalars};
use crate::error::{domain, Result};
use crate::linalg::CMatrix;
use crate::qfim::{qfim_block, QfiMatrix};

/// Populations below this are dropped from the Fisher sum.
const MIN_POPULATION: f64 = 1e-300;
/// Largest register [`GhzEvolvedState::dense`] will build.
pub const MAX_DENSE_QUBITS: usize = 10;

/// All basis strings of one Hamming weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightClass {
    pub weight: usize,
    /// `ln C(N, m)`
    pub ln_degeneracy: f64,
    /// Population of a single string, `p_m` (may underflow for large `N`).
    pub mass: f64,
    pub d_mass: [f64; 2],
    /// `C(N, m) p_m`, evaluated in log space.
    pub total: f64,
    pub d_total: [f64; 2],
}

impl WeightClass {
    pub fn degeneracy(&self) -> f64 {
        self.ln_degeneracy.exp().round()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GhzEvolvedState {
    pub n_qubits: usize,
    pub corner: [[Complex64; 2]; 2],
    /// `[d/dphi, d/dkappa]` of the corner block.
    pub d_corner: [[[Complex64; 2]; 2]; 2],
    /// Weights `1..N-1` with nonzero population, ascending.
    pub populations: Vec<WeightClass>,
}

fn block(d: f64, z: Complex64) -> [[Complex64; 2]; 2] {
    [[Complex64::new(d, 0.0), z], [z.conj(), Complex64::new(d, 0.0)]]
}

fn to_matrix(b: &[[Complex64; 2]; 2]) -> CMatrix {
    CMatrix::from_rows(&[&b[0], &b[1]])
}

/// Structured form of the evolved `N`-qubit GHZ state.
pub fn ghz_blocks(n: usize, s: &ChannelScalars) -> Result<GhzEvolvedState> {
    if n < 1 {
        return domain("GHZ probe needs at least one qubit");
    }
    if n > i32::MAX as usize {
        return domain(format!("N = {n} is too large"));
    }
    let b = s.b;
    let nf = n as f64;
    let ni = n as i32;
    let db = s.db();
    let dc = s.dc();

    let d = 0.5 * (b.powi(ni) + (1.0 - b).powi(ni));
    let dd_db = 0.5 * nf * (b.powi(ni - 1) - (1.0 - b).powi(ni - 1));
    let cn = s.c.powi(ni);
    let dcn = s.c.powi(ni - 1) * nf;
    let corner = block(d, 0.5 * cn);
    let d_corner = [0, 1].map(|mu| block(dd_db * db[mu], 0.5 * dcn * dc[mu]));

    let ln_b = b.ln();
    let ln_nb = (1.0 - b).ln();
    let mut populations = Vec::new();
    let mut ln_binom = 0.0;
    for m in 1..n {
        ln_binom += ((n - m + 1) as f64 / m as f64).ln();
        let (mf, rf) = (m as f64, (n - m) as f64);
        let e1 = mf * ln_b + rf * ln_nb;
        let e2 = rf * ln_b + mf * ln_nb;
        let (t1, t2) = ((ln_binom + e1).exp(), (ln_binom + e2).exp());
        let total = 0.5 * (t1 + t2);
        let mass = 0.5 * (e1.exp() + e2.exp());
        if total == 0.0 && mass == 0.0 {
            continue;
        }
        // d/db of b^m (1-b)^(N-m) is that term times u
        let u1 = mf / b - rf / (1.0 - b);
        let u2 = rf / b - mf / (1.0 - b);
        let weighted = |x: f64, u: f64| if x > 0.0 { x * u } else { 0.0 };
        let d_total_db = 0.5 * (weighted(t1, u1) + weighted(t2, u2));
        let d_mass_db = 0.5 * (weighted(e1.exp(), u1) + weighted(e2.exp(), u2));
        populations.push(WeightClass {
            weight: m,
            ln_degeneracy: ln_binom,
            mass,
            d_mass: [d_mass_db * db[0], d_mass_db * db[1]],
            total,
            d_total: [d_total_db * db[0], d_total_db * db[1]],
        });
    }

    Ok(GhzEvolvedState {
        n_qubits: n,
        corner,
        d_corner,
        populations,
    })
}

impl GhzEvolvedState {
    pub fn trace(&self) -> f64 {
        2.0 * self.corner[0][0].re + self.populations.iter().map(|w| w.total).sum::<f64>()
    }

    pub fn corner_matrix(&self) -> CMatrix {
        to_matrix(&self.corner)
    }

    /// QFIM of the direct sum: corner block plus `sum_m (C dp_m)^2 / (C p_m)`.
    pub fn qfim(&self) -> Result<QfiMatrix> {
        let d = [to_matrix(&self.d_corner[0]), to_matrix(&self.d_corner[1])];
        let mut f = qfim_block(&self.corner_matrix(), [&d[0], &d[1]])?;
        for w in &self.populations {
            if w.total < MIN_POPULATION {
                continue;
            }
            let [dp, dk] = w.d_total;
            f = f.add(&QfiMatrix::new(dp * dp / w.total, dk * dk / w.total, dp * dk / w.total));
        }
        Ok(f)
    }

    /// The full `2^N x 2^N` matrix; index bit `N-1-q` is qubit `q`.
    pub fn dense(&self) -> Result<CMatrix> {
        self.expand(&self.corner, |w| w.mass)
    }

    /// Full-matrix `[d/dphi, d/dkappa]`.
    pub fn dense_derivatives(&self) -> Result<[CMatrix; 2]> {
        Ok([
            self.expand(&self.d_corner[0], |w| w.d_mass[0])?,
            self.expand(&self.d_corner[1], |w| w.d_mass[1])?,
        ])
    }

    fn expand(&self, corner: &[[Complex64; 2]; 2], diag: impl Fn(&WeightClass) -> f64) -> Result<CMatrix> {
        let n = self.n_qubits;
        if n > MAX_DENSE_QUBITS {
            return domain(format!("dense GHZ state limited to {MAX_DENSE_QUBITS} qubits, got {n}"));
        }
        let dim = 1usize << n;
        let last = dim - 1;
        let mut by_weight = vec![0.0; n + 1];
        for w in &self.populations {
            by_weight[w.weight] = diag(w);
        }
        let mut m = CMatrix::zeros(dim);
        for x in 1..last {
            m[(x, x)] = Complex64::new(by_weight[x.count_ones() as usize], 0.0);
        }
        m[(0, 0)] = corner[0][0];
        m[(0, last)] = corner[0][1];
        m[(last, 0)] = corner[1][0];
        m[(last, last)] = corner[1][1];
        Ok(m)
    }
}

pub fn qfim_ghz_scalars(n: usize, s: &ChannelScalars) -> Result<QfiMatrix> {
    ghz_blocks(n, s)?.qfim()
}

pub fn qfim_ghz(n: usize, params: ChannelParams) -> Result<QfiMatrix> {
    qfim_ghz_scalars(n, &params.scalars())
}

/// `M`-qubit GHZ probe where each qubit passes through the channel `N_total / M`
/// times in sequence.
pub fn qfim_hybrid(m: usize, n_total: usize, params: ChannelParams) -> Result<QfiMatrix> {
    if m == 0 || n_total == 0 || n_total % m != 0 {
        return domain(format!("M = {m} must be a positive divisor of N = {n_total}"));
    }
    let reps = u32::try_from(n_total / m).or_else(|_| domain("too many sequential passes"))?;
    let s = compose_scalars(&params.scalars(), reps)?;
    qfim_ghz_scalars(m, &s)
}
