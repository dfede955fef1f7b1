//! Gating kinetics: the six opening/closing rates, steady-state activations,
//! and their voltage derivatives.
//!
//! Two of the rate laws contain the factor `x / (1 - exp(-x))`, which has a
//! removable singularity at x = 0 (V = -20 mV for the n gate, V = -25 mV for
//! the m gate). Those are evaluated through a short series near the
//! singularity so the functions are smooth everywhere.

use serde::Serialize;

use crate::{ChayError, ChayParams, Result};

/// x / (1 - e^(-x)), continued across x = 0 by its series.
///
/// The cutoff 1e-4 keeps the direct formula out of the cancellation zone; the
/// quadratic series term bounds the truncation error below 1e-17 there.
pub fn exprel(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x / 2.0 + x * x / 12.0
    } else {
        x / (1.0 - (-x).exp())
    }
}

/// d/dx of [`exprel`].
pub fn exprel_deriv(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        0.5 + x / 6.0
    } else {
        let e = (-x).exp();
        let d = 1.0 - e;
        (d - x * e) / (d * d)
    }
}

pub fn alpha_n(v: f64) -> f64 {
    0.1 * exprel(0.1 * (v + 20.0))
}

pub fn beta_n(v: f64) -> f64 {
    0.125 * (-(v + 30.0) / 80.0).exp()
}

pub fn alpha_m(v: f64) -> f64 {
    exprel(0.1 * (v + 25.0))
}

pub fn beta_m(v: f64) -> f64 {
    4.0 * (-(v + 50.0) / 18.0).exp()
}

pub fn alpha_h(v: f64) -> f64 {
    0.07 * (-(v + 50.0) / 20.0).exp()
}

pub fn beta_h(v: f64) -> f64 {
    1.0 / (1.0 + (-0.1 * (v + 20.0)).exp())
}

pub fn d_alpha_n(v: f64) -> f64 {
    0.01 * exprel_deriv(0.1 * (v + 20.0))
}

pub fn d_beta_n(v: f64) -> f64 {
    -beta_n(v) / 80.0
}

pub fn d_alpha_m(v: f64) -> f64 {
    0.1 * exprel_deriv(0.1 * (v + 25.0))
}

pub fn d_beta_m(v: f64) -> f64 {
    -beta_m(v) / 18.0
}

pub fn d_alpha_h(v: f64) -> f64 {
    -alpha_h(v) / 20.0
}

pub fn d_beta_h(v: f64) -> f64 {
    let b = beta_h(v);
    0.1 * b * (1.0 - b)
}

fn steady(alpha: f64, beta: f64) -> f64 {
    alpha / (alpha + beta)
}

fn d_steady(alpha: f64, beta: f64, d_alpha: f64, d_beta: f64) -> f64 {
    let s = alpha + beta;
    (d_alpha * beta - alpha * d_beta) / (s * s)
}

pub fn n_inf(v: f64) -> f64 {
    steady(alpha_n(v), beta_n(v))
}

pub fn m_inf(v: f64) -> f64 {
    steady(alpha_m(v), beta_m(v))
}

pub fn h_inf(v: f64) -> f64 {
    steady(alpha_h(v), beta_h(v))
}

pub fn d_n_inf(v: f64) -> f64 {
    d_steady(alpha_n(v), beta_n(v), d_alpha_n(v), d_beta_n(v))
}

pub fn d_m_inf(v: f64) -> f64 {
    d_steady(alpha_m(v), beta_m(v), d_alpha_m(v), d_beta_m(v))
}

pub fn d_h_inf(v: f64) -> f64 {
    d_steady(alpha_h(v), beta_h(v), d_alpha_h(v), d_beta_h(v))
}

/// m_inf(V)^3 * h_inf(V), the open fraction of the mixed channel.
pub fn m3h(v: f64) -> f64 {
    let m = m_inf(v);
    m * m * m * h_inf(v)
}

/// d/dV of [`m3h`].
pub fn d_m3h(v: f64) -> f64 {
    let m = m_inf(v);
    let m2 = m * m;
    3.0 * m2 * d_m_inf(v) * h_inf(v) + m2 * m * d_h_inf(v)
}

/// All six rates, the three steady-state activations, and the n-gate time
/// constant at membrane potential `v`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GateKinetics {
    pub alpha_n: f64,
    pub beta_n: f64,
    pub alpha_m: f64,
    pub beta_m: f64,
    pub alpha_h: f64,
    pub beta_h: f64,
    pub n_inf: f64,
    pub m_inf: f64,
    pub h_inf: f64,
    /// Gate time constant 1 / (lambda_n * (alpha_n + beta_n)), in seconds.
    pub tau_n: f64,
}

pub fn gate_kinetics(v: f64, params: &ChayParams) -> Result<GateKinetics> {
    if !v.is_finite() {
        return Err(ChayError::Domain(format!(
            "membrane potential must be finite, got {v}"
        )));
    }
    let (an, bn) = (alpha_n(v), beta_n(v));
    let (am, bm) = (alpha_m(v), beta_m(v));
    let (ah, bh) = (alpha_h(v), beta_h(v));
    Ok(GateKinetics {
        alpha_n: an,
        beta_n: bn,
        alpha_m: am,
        beta_m: bm,
        alpha_h: ah,
        beta_h: bh,
        n_inf: steady(an, bn),
        m_inf: steady(am, bm),
        h_inf: steady(ah, bh),
        tau_n: 1.0 / (params.lambda_n * (an + bn)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: ChayParams = ChayParams {
        c_m: 1.0,
        e_k: -75.0,
        e_i: 100.0,
        e_l: -40.0,
        e_ca: 100.0,
        g_i: 1800.0,
        g_kv: 1700.0,
        g_l: 7.0,
        g_kca: 10.0,
        k_ca: 3.3 / 18.0,
        rho: 0.27,
        lambda_n: 230.0,
        i_ext: 0.0,
    };

    #[test]
    fn exponent_zero_values() {
        // Points where one rate's exponent vanishes give exact closed values.
        assert!((beta_n(-30.0) - 0.125).abs() < 1e-15);
        assert!((beta_m(-50.0) - 4.0).abs() < 1e-15);
        assert!((alpha_h(-50.0) - 0.07).abs() < 1e-15);
        assert!((beta_h(-20.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn removable_singularities() {
        assert!((alpha_n(-20.0) - 0.1).abs() < 1e-12);
        assert!((alpha_m(-25.0) - 1.0).abs() < 1e-12);
        // Continuity across the singular points.
        for dv in [-1e-7, 1e-7] {
            assert!((alpha_n(-20.0 + dv) - 0.1).abs() < 1e-6);
            assert!((alpha_m(-25.0 + dv) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn steady_states_bounded_and_tau_positive() {
        let mut v = -200.0;
        while v <= 200.0 {
            let k = gate_kinetics(v, &P).unwrap();
            for s in [k.n_inf, k.m_inf, k.h_inf] {
                assert!(s > 0.0 && s < 1.0, "steady state {s} out of (0,1) at V={v}");
            }
            assert!(k.tau_n > 0.0);
            for r in [
                k.alpha_n, k.beta_n, k.alpha_m, k.beta_m, k.alpha_h, k.beta_h,
            ] {
                assert!(r >= 0.0);
            }
            v += 0.5;
        }
    }

    #[test]
    #[allow(clippy::type_complexity)]
    fn rate_derivatives_match_finite_differences() {
        let h = 1e-6;
        let fns: [(fn(f64) -> f64, fn(f64) -> f64); 6] = [
            (alpha_n, d_alpha_n),
            (beta_n, d_beta_n),
            (alpha_m, d_alpha_m),
            (beta_m, d_beta_m),
            (alpha_h, d_alpha_h),
            (beta_h, d_beta_h),
        ];
        for v in [-80.0, -50.0, -30.0, -25.0, -20.0, 0.0, 20.0] {
            for (f, df) in fns {
                let fd = (f(v + h) - f(v - h)) / (2.0 * h);
                let an = df(v);
                assert!(
                    (fd - an).abs() <= 1e-5 * an.abs().max(1e-3),
                    "derivative mismatch at V={v}: fd={fd}, analytic={an}"
                );
            }
            let fd = (m3h(v + h) - m3h(v - h)) / (2.0 * h);
            assert!((fd - d_m3h(v)).abs() <= 1e-5 * d_m3h(v).abs().max(1e-6));
        }
    }

    #[test]
    fn non_finite_voltage_rejected() {
        assert!(gate_kinetics(f64::NAN, &P).is_err());
        assert!(gate_kinetics(f64::INFINITY, &P).is_err());
    }
}
