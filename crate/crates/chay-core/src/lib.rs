//! Numerical laboratory for the memristive Chay model of excitable cells.
//!
//! The model is a three-variable ODE system (membrane voltage `V`, potassium
//! gate activation `n`, intracellular calcium `Ca`) whose two gated potassium
//! channels are first-order voltage-controlled memristors and whose mixed
//! Na/Ca channel is a memoryless nonlinear resistor. This crate provides:
//!
//! - the ODE right-hand side and its analytic Jacobian ([`model`]),
//! - the three channels as standalone drivable elements with
//!   pinched-hysteresis fingerprint metrics ([`channels`]),
//! - DC equilibrium analysis and the voltage/conductance locus ([`equilibrium`]),
//! - small-signal linearization and the composite rational admittance
//!   `Y(s; Vm)` ([`smallsignal`]),
//! - poles, zeros, and Jacobian eigenvalues ([`spectra`]),
//! - local-activity / edge-of-chaos / Hopf boundary location ([`regimes`]),
//! - time-domain integration and attractor classification ([`dynamics`]).

use thiserror::Error;

pub mod channels;
pub mod dynamics;
pub mod equilibrium;
pub mod gating;
pub mod io;
pub mod model;
pub mod params;
pub mod reference;
pub mod regimes;
pub mod smallsignal;
pub mod spectra;

pub use channels::{ChannelElement, ChannelKind, DriveConfig, HysteresisLoop};
pub use dynamics::{AttractorKind, AttractorLabel, ProbeOutcome, Trajectory};
pub use equilibrium::EquilibriumPoint;
pub use gating::GateKinetics;
pub use params::{ChayDeriv, ChayParams, ChayState};
pub use regimes::{BoundaryKind, BoundaryPoint, RegimeKind, RegimeLabel};
pub use smallsignal::{ElementLinearization, MixedLinearization, RationalAdmittance};
pub use spectra::SpectralSet;

#[derive(Debug, Error)]
pub enum ChayError {
    /// A numeric precondition was violated (non-finite input, out-of-range state).
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation was applied to a value it is not defined for.
    #[error("contract violation: {0}")]
    Contract(String),
    /// Invalid run configuration (step sizes, sample counts, ranges).
    #[error("configuration error: {0}")]
    Config(String),
    /// A linearized element has no finite equivalent circuit at this point.
    #[error("degenerate element: {0}")]
    Degenerate(String),
    /// The algebraic inversion is singular at this voltage.
    #[error("singular inversion: {0}")]
    SingularInversion(String),
    /// Trajectory left the trusted state region.
    #[error("trajectory blow-up at t = {t} s: {message}")]
    BlowUp { t: f64, message: String },
    /// Not enough data to decide; rerun with a longer horizon.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    /// A root bracket could not be established; carries the scanned profile.
    #[error("bracket failure: {message} ({} scan points attached)", profile.len())]
    BracketFailure {
        message: String,
        profile: Vec<(f64, f64)>,
    },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, ChayError>;
