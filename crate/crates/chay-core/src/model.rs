//! The ODE right-hand side and its analytic Jacobian.

use crate::gating::{alpha_n, beta_n, d_alpha_n, d_beta_n, d_m3h, m3h};
use crate::{ChayDeriv, ChayError, ChayParams, ChayState, Result};

/// Total ionic current leaving the membrane node (1/s · mV units).
pub fn ionic_current(v: f64, n: f64, ca: f64, p: &ChayParams) -> f64 {
    let n2 = n * n;
    p.g_i * m3h(v) * (v - p.e_i)
        + p.g_kv * n2 * n2 * (v - p.e_k)
        + p.g_kca * ca / (1.0 + ca) * (v - p.e_k)
        + p.g_l * (v - p.e_l)
}

/// Time derivative of the state: four-current balance over `C_m`, gate
/// relaxation toward `n_inf`, and calcium influx/efflux.
pub fn rhs(state: &ChayState, p: &ChayParams) -> Result<ChayDeriv> {
    if !state.is_finite() {
        return Err(ChayError::Domain(format!("non-finite state {state:?}")));
    }
    let ChayState { v, n, ca } = *state;
    let dv = (p.i_ext - ionic_current(v, n, ca, p)) / p.c_m;
    // (n_inf - n) / tau_n with tau_n = 1/(lambda_n (alpha_n + beta_n))
    let dn = p.lambda_n * (alpha_n(v) * (1.0 - n) - beta_n(v) * n);
    let dca = -p.rho * (m3h(v) * (v - p.e_ca) + p.k_ca * ca);
    Ok(ChayDeriv { dv, dn, dca })
}

/// Per-component magnitude scales of the right-hand side at a state, used to
/// express residuals relative to the size of the competing terms.
pub fn rhs_scales(state: &ChayState, p: &ChayParams) -> [f64; 3] {
    let ChayState { v, n, ca } = *state;
    let n2 = n * n;
    let s_v = (p.g_i * m3h(v) * (v - p.e_i)).abs()
        + (p.g_kv * n2 * n2 * (v - p.e_k)).abs()
        + (p.g_kca * ca / (1.0 + ca) * (v - p.e_k)).abs()
        + (p.g_l * (v - p.e_l)).abs()
        + p.i_ext.abs();
    let s_n = p.lambda_n * (alpha_n(v) + beta_n(v));
    let s_ca = p.rho * ((m3h(v) * (v - p.e_ca)).abs() + p.k_ca * ca.abs());
    [s_v.max(1.0), s_n.max(1.0), s_ca.max(1.0)]
}

/// Analytic Jacobian d(rhs)/d(V, n, Ca), row-major.
pub fn jacobian(state: &ChayState, p: &ChayParams) -> Result<[[f64; 3]; 3]> {
    if !state.is_finite() {
        return Err(ChayError::Domain(format!("non-finite state {state:?}")));
    }
    let ChayState { v, n, ca } = *state;
    let n2 = n * n;
    let one_ca = 1.0 + ca;

    let dv_dv = -(p.g_i * (d_m3h(v) * (v - p.e_i) + m3h(v))
        + p.g_kv * n2 * n2
        + p.g_kca * ca / one_ca
        + p.g_l)
        / p.c_m;
    let dv_dn = -4.0 * p.g_kv * n2 * n * (v - p.e_k) / p.c_m;
    let dv_dca = -p.g_kca * (v - p.e_k) / (one_ca * one_ca) / p.c_m;

    let dn_dv = p.lambda_n * (d_alpha_n(v) * (1.0 - n) - d_beta_n(v) * n);
    let dn_dn = -p.lambda_n * (alpha_n(v) + beta_n(v));

    let dca_dv = -p.rho * (d_m3h(v) * (v - p.e_ca) + m3h(v));
    let dca_dca = -p.rho * p.k_ca;

    Ok([
        [dv_dv, dv_dn, dv_dca],
        [dn_dv, dn_dn, 0.0],
        [dca_dv, 0.0, dca_dca],
    ])
}
