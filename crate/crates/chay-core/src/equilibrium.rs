//! DC analysis: equilibrium gate/calcium values, the explicit DC current
//! formula, and the voltage <-> g_kca equilibrium correspondence.
//!
//! Setting all three derivatives to zero reduces the system to closed forms
//! for the gate and calcium values at any voltage, leaving one scalar
//! equation I(V) for the external current. At I = 0 that equation is affine
//! in `g_kca`, so the conductance pairing each equilibrium voltage has a
//! closed-form inversion.

use serde::Serialize;

use crate::gating::{m3h, n_inf};
use crate::model::{ionic_current, rhs, rhs_scales};
use crate::{ChayError, ChayParams, ChayState, Result};

/// A DC operating point: voltage, stationary gate and calcium values, the
/// conductance that makes it an I = 0 equilibrium, and the residual of the
/// full right-hand side there.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EquilibriumPoint {
    pub v_q: f64,
    pub n_q: f64,
    pub ca_q: f64,
    pub g_kca: f64,
    /// max |rhs| over the three components, each in its natural scale.
    pub residual: f64,
}

impl EquilibriumPoint {
    /// Build the I = 0 equilibrium at voltage `v`, deriving the paired
    /// conductance via [`gkca_at_equilibrium`].
    pub fn at(v: f64, params: &ChayParams) -> Result<Self> {
        let g_kca = gkca_at_equilibrium(v, params)?;
        Self::with_gkca(v, g_kca, params)
    }

    /// Build the stationary point at voltage `v` for an explicit `g_kca`.
    /// The gate and calcium equations are stationary by construction; the
    /// residual reports how far the voltage equation is from balance.
    pub fn with_gkca(v: f64, g_kca: f64, params: &ChayParams) -> Result<Self> {
        let (n_q, ca_q) = equilibrium_gates(v, params)?;
        let p = ChayParams { g_kca, ..*params };
        let state = ChayState::new(v, n_q, ca_q);
        let d = rhs(&state, &p)?;
        let s = rhs_scales(&state, &p);
        let residual = (d.dv.abs() / s[0])
            .max(d.dn.abs() / s[1])
            .max(d.dca.abs() / s[2]);
        Ok(Self {
            v_q: v,
            n_q,
            ca_q,
            g_kca,
            residual,
        })
    }

    pub fn state(&self) -> ChayState {
        ChayState::new(self.v_q, self.n_q, self.ca_q)
    }
}

/// Stationary gate activation and calcium concentration at voltage `v`.
///
/// The calcium value is negative for v above the calcium reversal; that is
/// legal DC algebra (the curves extend there) but not a physical
/// concentration, and callers that require positivity must check.
pub fn equilibrium_gates(v: f64, params: &ChayParams) -> Result<(f64, f64)> {
    if !v.is_finite() {
        return Err(ChayError::Domain(format!("non-finite voltage {v}")));
    }
    let n_hat = n_inf(v);
    let ca_hat = -m3h(v) * (v - params.e_ca) / params.k_ca;
    Ok((n_hat, ca_hat))
}

/// External DC current required to hold the membrane at voltage `v` with the
/// given `g_kca`: the ionic current evaluated at the stationary gate values.
pub fn dc_current(v: f64, g_kca: f64, params: &ChayParams) -> Result<f64> {
    let (n_hat, ca_hat) = equilibrium_gates(v, params)?;
    let p = ChayParams { g_kca, ..*params };
    Ok(ionic_current(v, n_hat, ca_hat, &p))
}

/// The unique `g_kca` making `v` an I = 0 equilibrium. The DC current is
/// affine in `g_kca`, so this is a single division; it is singular where the
/// calcium-channel weight vanishes (v at the potassium reversal, or zero
/// stationary calcium).
pub fn gkca_at_equilibrium(v: f64, params: &ChayParams) -> Result<f64> {
    let (n_hat, ca_hat) = equilibrium_gates(v, params)?;
    let weight = ca_hat / (1.0 + ca_hat) * (v - params.e_k);
    if weight.abs() < 1e-300 || !weight.is_finite() {
        return Err(ChayError::SingularInversion(format!(
            "calcium-branch weight vanishes at V = {v} mV"
        )));
    }
    let base = ionic_current(
        v,
        n_hat,
        ca_hat,
        &ChayParams {
            g_kca: 0.0,
            ..*params
        },
    );
    Ok(-base / weight)
}

/// All roots of dc_current(V, g_kca) = i inside `bracket`, in ascending
/// order. A dense scan locates sign changes; each is then closed by
/// bisection to 1e-12 mV. An empty result means no roots, not an error.
pub fn solve_v(i: f64, g_kca: f64, bracket: [f64; 2], params: &ChayParams) -> Result<Vec<f64>> {
    let [lo, hi] = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(ChayError::Domain(format!("bad bracket [{lo}, {hi}]")));
    }
    const SCAN: usize = 10_000;
    let f = |v: f64| -> Result<f64> { Ok(dc_current(v, g_kca, params)? - i) };
    let mut roots = Vec::new();
    let step = (hi - lo) / SCAN as f64;
    let mut v_prev = lo;
    let mut f_prev = f(v_prev)?;
    if f_prev == 0.0 {
        roots.push(v_prev);
    }
    for k in 1..=SCAN {
        let v_next = lo + step * k as f64;
        let f_next = f(v_next)?;
        if f_next == 0.0 {
            roots.push(v_next);
        } else if f_prev != 0.0 && f_prev.signum() != f_next.signum() {
            roots.push(bisect(&f, v_prev, v_next, f_prev, 1e-12)?);
        }
        v_prev = v_next;
        f_prev = f_next;
    }
    Ok(roots)
}

fn bisect(
    f: &dyn Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    tol: f64,
) -> Result<f64> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // step below f64 resolution
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_lo.signum() != f_mid.signum() {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Uniformly sampled DC V-I curve at fixed `g_kca`.
pub fn dc_curve(
    g_kca: f64,
    v_range: [f64; 2],
    samples: usize,
    params: &ChayParams,
) -> Result<Vec<(f64, f64)>> {
    sample_curve(v_range, samples, |v| dc_current(v, g_kca, params))
}

/// Uniformly sampled equilibrium conductance curve g_kca(V) on the I = 0
/// locus. Errors if the range touches a singular inversion point.
pub fn gkca_curve(
    v_range: [f64; 2],
    samples: usize,
    params: &ChayParams,
) -> Result<Vec<(f64, f64)>> {
    sample_curve(v_range, samples, |v| gkca_at_equilibrium(v, params))
}

fn sample_curve(
    v_range: [f64; 2],
    samples: usize,
    f: impl Fn(f64) -> Result<f64>,
) -> Result<Vec<(f64, f64)>> {
    if samples < 2 {
        return Err(ChayError::Config(format!(
            "curve sampling needs at least 2 samples, got {samples}"
        )));
    }
    let [lo, hi] = v_range;
    let step = (hi - lo) / (samples - 1) as f64;
    let mut out = Vec::with_capacity(samples);
    for k in 0..samples {
        let v = if k + 1 == samples {
            hi
        } else {
            lo + step * k as f64
        };
        out.push((v, f(v)?));
    }
    Ok(out)
}
