//! Multiparameter estimation of a phase `phi` imprinted by a qubit rotation whose
//! generator axis is drawn from a von Mises–Fisher distribution of concentration
//! `kappa`.
//!
//! The crate is organised bottom-up:
//!
//! * [`channel`] evaluates the averaged channel exactly (scalars `b`, `c`, their
//!   partial derivatives, the Liouville matrix and the Bloch-vector map).
//! * [`linalg`] and [`qfim`] hold the dense Hermitian machinery: Jacobi
//!   eigendecomposition, symmetric logarithmic derivatives and the quantum
//!   Fisher information matrix.
//! * [`single`], [`two`] and [`ghz`] build the probe families (single qubit,
//!   symmetric two-qubit, N-qubit GHZ and the hybrid sequential/parallel scheme).
//! * [`strategy`] compares individual, simultaneous and classical strategies.
//! * [`oracle`] is an independent brute-force path used for verification.

pub mod channel;
pub mod error;
pub mod ghz;
pub mod linalg;
pub mod oracle;
pub mod qfim;
pub mod search;
pub mod single;
pub mod strategy;
pub mod two;

pub use channel::{ChannelParams, ChannelScalars, LiouvilleMatrix};
pub use error::{Error, Result};
pub use ghz::GhzEvolvedState;
pub use linalg::{CMatrix, HermitianOperator};
pub use qfim::QfiMatrix;
pub use single::SingleProbe;
pub use strategy::{CaseLabel, NOptResult, Strategy, StrategyReport};
pub use two::TwoQubitProbe;

/// Which quantity a probe optimisation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// Estimate `phi` alone (maximise `F_phiphi`).
    Phi,
    /// Estimate `kappa` alone (maximise `F_kappakappa`).
    Kappa,
    /// Estimate both at once (minimise `Tr F^-1`).
    Simultaneous,
}

/// One of the two estimated parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    Phi,
    Kappa,
}

impl Parameter {
    /// Row/column index in a [`QfiMatrix`].
    pub fn index(self) -> usize {
        match self {
            Parameter::Phi => 0,
            Parameter::Kappa => 1,
        }
    }
}
