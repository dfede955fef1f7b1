//! Model parameters and dynamical state.

use serde::{Deserialize, Serialize};

use crate::{ChayError, Result};

/// All model constants. Defaults are the published parameter set; `g_kca`
/// (the calcium-sensitive potassium conductance) is the free parameter of
/// every analysis in this crate and may be negative.
///
/// Conductances are pre-divided by the membrane capacitance, so they carry
/// units of 1/s and the voltage equation is a pure rate balance. Time is in
/// seconds, voltages in mV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ChayParams {
    /// Membrane capacitance (normalized to 1).
    pub c_m: f64,
    /// Potassium reversal potential (mV).
    pub e_k: f64,
    /// Mixed Na/Ca reversal potential (mV).
    pub e_i: f64,
    /// Leak reversal potential (mV).
    pub e_l: f64,
    /// Calcium reversal potential (mV).
    pub e_ca: f64,
    /// Mixed-channel conductance rate (1/s).
    pub g_i: f64,
    /// Voltage-gated potassium conductance rate (1/s).
    pub g_kv: f64,
    /// Leak conductance rate (1/s).
    pub g_l: f64,
    /// Calcium-sensitive potassium conductance rate (1/s). Free parameter;
    /// unconstrained in sign.
    pub g_kca: f64,
    /// Calcium efflux rate constant.
    pub k_ca: f64,
    /// Calcium influx scale (1/(mV·s)).
    pub rho: f64,
    /// Gate-rate scale (dimensionless).
    pub lambda_n: f64,
    /// External stimulus current; zero in every published analysis.
    pub i_ext: f64,
}

impl Default for ChayParams {
    fn default() -> Self {
        Self {
            c_m: 1.0,
            e_k: -75.0,
            e_i: 100.0,
            e_l: -40.0,
            e_ca: 100.0,
            g_i: 1800.0,
            g_kv: 1700.0,
            g_l: 7.0,
            // Free parameter; 10/s sits in the period-1 spiking regime and is
            // the usual demonstration value.
            g_kca: 10.0,
            k_ca: 3.3 / 18.0,
            rho: 0.27,
            lambda_n: 230.0,
            i_ext: 0.0,
        }
    }
}

impl ChayParams {
    /// Default parameter set with the given `g_kca`.
    pub fn with_gkca(g_kca: f64) -> Self {
        Self {
            g_kca,
            ..Self::default()
        }
    }

    /// Check the structural invariants: fixed conductances, rate scales, and
    /// capacitance strictly positive. `g_kca` is deliberately unconstrained.
    pub fn validate(&self) -> Result<()> {
        let positives = [
            ("c_m", self.c_m),
            ("g_i", self.g_i),
            ("g_kv", self.g_kv),
            ("g_l", self.g_l),
            ("k_ca", self.k_ca),
            ("rho", self.rho),
            ("lambda_n", self.lambda_n),
        ];
        for (name, value) in positives {
            if !value.is_finite() || value <= 0.0 {
                return Err(ChayError::Domain(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        let finites = [
            self.e_k, self.e_i, self.e_l, self.e_ca, self.g_kca, self.i_ext,
        ];
        if finites.iter().any(|v| !v.is_finite()) {
            return Err(ChayError::Domain("non-finite parameter".into()));
        }
        Ok(())
    }
}

/// Dynamical state of the three-variable system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChayState {
    /// Membrane potential (mV).
    pub v: f64,
    /// Potassium gate activation, in [0, 1].
    pub n: f64,
    /// Intracellular calcium concentration (dimensionless).
    pub ca: f64,
}

impl ChayState {
    pub fn new(v: f64, n: f64, ca: f64) -> Self {
        Self { v, n, ca }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.n.is_finite() && self.ca.is_finite()
    }
}

/// Time derivative of [`ChayState`]: (mV/s, 1/s, 1/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChayDeriv {
    pub dv: f64,
    pub dn: f64,
    pub dca: f64,
}
