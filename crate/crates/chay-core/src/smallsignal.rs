//! Small-signal linearization at a DC operating point.
//!
//! Each memristive channel linearizes to a two-coefficient current relation
//! `di = a11·dx + a12·dv` and a state relation `d(dx)/dt = b11·dx + b12·dv`,
//! which is the admittance of an inductor in series with a resistor, in
//! parallel with a second resistor. The memoryless mixed channel reduces to
//! a single resistor. Composing the three elements with the membrane
//! capacitance and leak yields a degree-3/2 rational admittance in the
//! complex frequency s.

use num_complex::Complex64;
use serde::Serialize;

use crate::equilibrium::equilibrium_gates;
use crate::gating::{alpha_n, beta_n, d_beta_n, d_m3h, exprel_deriv, m3h, n_inf};
use crate::{ChayError, ChayParams, Result};

/// Taylor coefficients of one first-order memristive channel at an operating
/// point, with the equivalent inductance/resistance triple where it exists.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ElementLinearization {
    /// d(current)/d(internal state).
    pub a11: f64,
    /// d(current)/d(voltage): the instantaneous memductance.
    pub a12: f64,
    /// d(state rate)/d(state); the branch pole.
    pub b11: f64,
    /// d(state rate)/d(voltage).
    pub b12: f64,
    /// Series-branch inductance 1/(a11 b12), absent when a11·b12 = 0.
    pub l: Option<f64>,
    /// Series-branch resistance -b11/(a11 b12).
    pub r1: Option<f64>,
    /// Parallel resistance 1/a12, absent when a12 = 0.
    pub r2: Option<f64>,
}

impl ElementLinearization {
    fn from_coefficients(a11: f64, a12: f64, b11: f64, b12: f64) -> Self {
        let lb = a11 * b12;
        let (l, r1) = if lb != 0.0 && lb.is_finite() {
            (Some(1.0 / lb), Some(-b11 / lb))
        } else {
            (None, None)
        };
        let r2 = if a12 != 0.0 { Some(1.0 / a12) } else { None };
        Self {
            a11,
            a12,
            b11,
            b12,
            l,
            r1,
            r2,
        }
    }

    /// True when the L/R equivalent does not exist (zero a11·b12 or a12).
    pub fn is_degenerate(&self) -> bool {
        self.l.is_none() || self.r2.is_none()
    }

    /// Branch admittance a12 + a11·b12/(s - b11), valid with or without the
    /// L/R equivalent.
    pub fn admittance(&self, s: Complex64) -> Complex64 {
        self.a12 + self.a11 * self.b12 / (s - self.b11)
    }
}

/// Linearization of the memoryless mixed channel: a single conductance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MixedLinearization {
    /// Slope of the channel's i(v) curve at the operating point.
    pub a12: f64,
    /// Equivalent resistance 1/a12; `None` flags infinite resistance.
    pub r1: Option<f64>,
}

/// Mixed-channel slope at membrane voltage `v_m` (element voltage
/// v = v_m - e_i): d(G(v)·v)/dv.
pub fn mixed_linearization(v_m: f64, params: &ChayParams) -> Result<MixedLinearization> {
    if !v_m.is_finite() {
        return Err(ChayError::Domain(format!("non-finite voltage {v_m}")));
    }
    let a12 = params.g_i * (m3h(v_m) + (v_m - params.e_i) * d_m3h(v_m));
    let r1 = if a12 != 0.0 { Some(1.0 / a12) } else { None };
    Ok(MixedLinearization { a12, r1 })
}

/// Voltage-gated potassium channel linearization at membrane voltage `v_m`.
pub fn kv_linearization(v_m: f64, params: &ChayParams) -> Result<ElementLinearization> {
    if !v_m.is_finite() {
        return Err(ChayError::Domain(format!("non-finite voltage {v_m}")));
    }
    let n = n_inf(v_m);
    let n3 = n * n * n;
    let v_elem = v_m - params.e_k;
    let a11 = 4.0 * params.g_kv * n3 * v_elem;
    let a12 = params.g_kv * n3 * n;
    let b11 = -params.lambda_n * (alpha_n(v_m) + beta_n(v_m));
    // d/dv of the gate rate at fixed n = n_inf:
    // lambda_n [ alpha_n'(V)(1 - n) - beta_n'(V) n ].
    let d_alpha = 0.01 * exprel_deriv(0.1 * (v_m + 20.0));
    let b12 = params.lambda_n * (d_alpha * (1.0 - n) - d_beta_n(v_m) * n);
    Ok(ElementLinearization::from_coefficients(a11, a12, b11, b12))
}

/// Calcium-sensitive potassium channel linearization at membrane voltage
/// `v_m` with conductance `g_kca`.
pub fn kca_linearization(
    v_m: f64,
    g_kca: f64,
    params: &ChayParams,
) -> Result<ElementLinearization> {
    let (_, ca) = equilibrium_gates(v_m, params)?;
    if (1.0 + ca).abs() < 1e-12 {
        return Err(ChayError::Degenerate(format!(
            "memductance pole: stationary calcium = -1 at V = {v_m} mV"
        )));
    }
    let one_ca = 1.0 + ca;
    let v_elem = v_m - params.e_k;
    let a11 = g_kca * v_elem / (one_ca * one_ca);
    let a12 = g_kca * ca / one_ca;
    let b11 = -params.rho * params.k_ca;
    let b12 = -params.rho * (d_m3h(v_m) * (v_m - params.e_ca) + m3h(v_m));
    Ok(ElementLinearization::from_coefficients(a11, a12, b11, b12))
}

/// Rational small-signal admittance
/// Y(s) = (b3 s^3 + b2 s^2 + b1 s + b0) / (a2 s^2 + a1 s + a0)
/// of the composite membrane circuit at the operating point (v_m, g_kca).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RationalAdmittance {
    /// Numerator coefficients, highest degree first: [b3, b2, b1, b0].
    pub b: [f64; 4],
    /// Denominator coefficients, highest degree first: [a2, a1, a0].
    pub a: [f64; 3],
    pub v_m: f64,
    pub g_kca: f64,
}

impl RationalAdmittance {
    /// Evaluate the rational form at complex frequency `s`.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let [b3, b2, b1, b0] = self.b;
        let [a2, a1, a0] = self.a;
        (((s * b3 + b2) * s + b1) * s + b0) / ((s * a2 + a1) * s + a0)
    }
}

/// Assemble the composite admittance from the three element linearizations,
/// the membrane capacitance, and the leak conductance.
///
/// The coefficients are the literal circuit products over the equivalent
/// inductances and resistances, so a degenerate element (no finite L/R) is
/// an error naming the element.
pub fn composite_admittance(
    v_m: f64,
    g_kca: f64,
    params: &ChayParams,
) -> Result<RationalAdmittance> {
    let kv = kv_linearization(v_m, params)?;
    let kca = kca_linearization(v_m, g_kca, params)?;
    let mixed = mixed_linearization(v_m, params)?;
    let (lv, rv1, rv2) = match (kv.l, kv.r1, kv.r2) {
        (Some(l), Some(r1), Some(r2)) => (l, r1, r2),
        _ => {
            return Err(ChayError::Degenerate(format!(
                "voltage-gated potassium element has no finite equivalent at V = {v_m} mV"
            )))
        }
    };
    let (lc, rc1, rc2) = match (kca.l, kca.r1, kca.r2) {
        (Some(l), Some(r1), Some(r2)) => (l, r1, r2),
        _ => {
            return Err(ChayError::Degenerate(format!(
                "calcium-sensitive potassium element has no finite equivalent at V = {v_m} mV"
            )))
        }
    };
    let ri = mixed.r1.ok_or_else(|| {
        ChayError::Degenerate(format!(
            "mixed element has infinite resistance at V = {v_m} mV"
        ))
    })?;

    let cm = params.c_m;
    let gl = params.g_l;
    let cross = lv * rc1 + lc * rv1;

    let a2 = lv * lc * ri * rv2 * rc2;
    let a1 = cross * ri * rv2 * rc2;
    let a0 = ri * rv1 * rc1 * rv2 * rc2;

    let b3 = a2 * cm;
    let b2 = cross * ri * rv2 * rc2 * cm
        + lv * lc * rv2 * rc2
        + lv * lc * ri * rc2
        + lv * lc * ri * rv2
        + lv * lc * ri * rv2 * rc2 * gl;
    let b1 = ri * rv1 * rc1 * rv2 * rc2 * cm
        + lc * ri * rv2 * rc2
        + lv * ri * rv2 * rc2
        + cross * rv2 * rc2
        + cross * ri * rc2
        + cross * ri * rv2
        + cross * ri * rv2 * rc2 * gl;
    let b0 = ri * rc1 * rv2 * rc2
        + ri * rv1 * rv2 * rc2
        + rv1 * rc1 * rv2 * rc2
        + ri * rv1 * rc1 * rc2
        + ri * rv1 * rc1 * rv2
        + ri * rv1 * rc1 * rv2 * rc2 * gl;

    Ok(RationalAdmittance {
        b: [b3, b2, b1, b0],
        a: [a2, a1, a0],
        v_m,
        g_kca,
    })
}

/// Direct evaluation of the composite admittance as a sum of branch
/// admittances: s·C + 1/(sL+R1) + 1/R2 per memristor, 1/R_mixed, and G_L.
/// Independent route used to cross-check the rational coefficients.
pub fn admittance_direct(
    v_m: f64,
    g_kca: f64,
    s: Complex64,
    params: &ChayParams,
) -> Result<Complex64> {
    let kv = kv_linearization(v_m, params)?;
    let kca = kca_linearization(v_m, g_kca, params)?;
    let mixed = mixed_linearization(v_m, params)?;
    let branch = |e: &ElementLinearization| -> Result<Complex64> {
        match (e.l, e.r1, e.r2) {
            (Some(l), Some(r1), Some(r2)) => Ok(1.0 / (s * l + r1) + Complex64::new(1.0 / r2, 0.0)),
            _ => Err(ChayError::Degenerate(
                "element has no finite equivalent circuit".into(),
            )),
        }
    };
    let ri = mixed
        .r1
        .ok_or_else(|| ChayError::Degenerate("mixed element has infinite resistance".into()))?;
    Ok(s * params.c_m + branch(&kv)? + branch(&kca)? + Complex64::new(1.0 / ri + params.g_l, 0.0))
}

/// Real and imaginary parts of Y(i·omega) from the rational coefficients.
pub fn frequency_response(y: &RationalAdmittance, omega: f64) -> Result<(f64, f64)> {
    if omega.is_nan() || omega < 0.0 {
        return Err(ChayError::Domain(format!(
            "angular frequency must be >= 0, got {omega}"
        )));
    }
    let [b3, b2, b1, b0] = y.b;
    let [a2, a1, a0] = y.a;
    let w2 = omega * omega;
    let num_a = a0 - a2 * w2;
    let den = num_a * num_a + a1 * a1 * w2;
    if den == 0.0 {
        return Err(ChayError::Domain(format!(
            "admittance pole on the imaginary axis at omega = {omega}"
        )));
    }
    let re = ((b0 - b2 * w2) * num_a + a1 * w2 * (b1 - b3 * w2)) / den;
    let im = omega * ((b1 - b3 * w2) * num_a - a1 * (b0 - b2 * w2)) / den;
    Ok((re, im))
}

/// Log-spaced angular-frequency grid used by the sweep and minimization
/// routines: 600 points spanning 1e-3 to 1e6 rad/s.
pub fn default_omega_grid() -> Vec<f64> {
    log_grid(1e-3, 1e6, 600)
}

pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..points)
        .map(|k| (llo + (lhi - llo) * k as f64 / (points - 1) as f64).exp())
        .collect()
}

/// Nyquist locus (omega, Re Y, Im Y) over a frequency grid.
pub fn frequency_sweep(y: &RationalAdmittance, omegas: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
    omegas
        .iter()
        .map(|&w| frequency_response(y, w).map(|(re, im)| (w, re, im)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{element_current, ChannelElement};
    use crate::equilibrium::{dc_current, gkca_at_equilibrium};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn p() -> ChayParams {
        ChayParams::default()
    }

    #[test]
    fn mixed_slope_matches_current_finite_difference() {
        let mut rng = StdRng::seed_from_u64(11);
        let params = p();
        let elem = ChannelElement::mixed(params);
        let h = 1e-6;
        for _ in 0..20 {
            let v_m = rng.gen_range(-60.0..0.0);
            let v = v_m - params.e_i;
            let fd = (element_current(&elem, v + h).unwrap()
                - element_current(&elem, v - h).unwrap())
                / (2.0 * h);
            let a12 = mixed_linearization(v_m, &params).unwrap().a12;
            assert!(
                (fd - a12).abs() <= 1e-5 * a12.abs().max(1e-6),
                "V_m={v_m}: fd={fd} a12={a12}"
            );
        }
    }

    #[test]
    fn mixed_resistance_inverts_slope_exactly() {
        for v_m in [-60.0, -40.0, -24.5, 0.0] {
            let lin = mixed_linearization(v_m, &p()).unwrap();
            assert_eq!(lin.r1.unwrap() * lin.a12, 1.0);
        }
    }

    #[test]
    fn mixed_slope_has_negative_region() {
        // The mixed channel's i(v) curve has a negative-slope stretch; the
        // slope is positive far below it and negative inside it.
        let params = p();
        let deep = mixed_linearization(-70.0, &params).unwrap().a12;
        let inside = mixed_linearization(-24.5, &params).unwrap().a12;
        assert!(inside < 0.0, "expected negative slope, got {inside}");
        assert!(deep.is_finite() && deep != 0.0);
        // Sign change exists across a wide bracket.
        let far = mixed_linearization(60.0, &params).unwrap().a12;
        assert!(
            far * inside < 0.0,
            "no sign change: far={far} inside={inside}"
        );
    }

    #[test]
    fn kv_branch_pole_is_negative_everywhere() {
        let params = p();
        let mut v = -120.0;
        while v <= 60.0 {
            let lin = kv_linearization(v, &params).unwrap();
            assert!(lin.b11 < 0.0);
            v += 1.0;
        }
    }

    #[test]
    fn kv_memductance_at_reference_point() {
        let lin = kv_linearization(-50.0, &p()).unwrap();
        // Exactly the fourth power of the stationary gate...
        assert_eq!(lin.a12, 1700.0 * n_inf(-50.0).powi(4));
        // ...and within print rounding (amplified by the fourth power) of
        // the value implied by the three-decimal reference gate.
        let expected = 1700.0 * 0.089_f64.powi(4);
        assert!(
            (lin.a12 - expected).abs() < 0.01 * expected,
            "a12 = {}, expected about {expected}",
            lin.a12
        );
    }

    #[test]
    fn kv_voltage_slope_matches_gate_rate_finite_difference() {
        // b12 against d/dv of the element's state rate at frozen n.
        let params = p();
        let h = 1e-6;
        for v_m in [-60.0, -50.0, -35.0, -25.0] {
            let n = n_inf(v_m);
            let rate = |v_elem: f64| {
                let vv = v_elem + params.e_k;
                params.lambda_n * (alpha_n(vv) * (1.0 - n) - beta_n(vv) * n)
            };
            let v_elem = v_m - params.e_k;
            let fd = (rate(v_elem + h) - rate(v_elem - h)) / (2.0 * h);
            let b12 = kv_linearization(v_m, &params).unwrap().b12;
            assert!((fd - b12).abs() <= 1e-5 * b12.abs().max(1e-6));
        }
    }

    #[test]
    fn kca_state_pole_is_constant() {
        for v_m in [-55.0, -40.0, -26.0] {
            let lin = kca_linearization(v_m, 17.0, &p()).unwrap();
            assert!((lin.b11 - (-0.27 * 3.3 / 18.0)).abs() < 1e-15);
            assert!((lin.b11 + 0.0495).abs() < 1e-12);
        }
    }

    #[test]
    fn kca_voltage_slope_matches_finite_difference() {
        let params = p();
        let h = 1e-6;
        for v_m in [-55.0, -40.0, -26.0] {
            let (_, ca) = equilibrium_gates(v_m, &params).unwrap();
            let rate = |v_elem: f64| {
                let vv = v_elem + params.e_k;
                -params.rho * (m3h(vv) * (vv - params.e_ca) + params.k_ca * ca)
            };
            let v_elem = v_m - params.e_k;
            let fd = (rate(v_elem + h) - rate(v_elem - h)) / (2.0 * h);
            let b12 = kca_linearization(v_m, 17.0, &params).unwrap().b12;
            assert!((fd - b12).abs() <= 1e-5 * b12.abs().max(1e-9));
        }
    }

    #[test]
    fn kca_state_coupling_sign() {
        // a11 carries the sign of g_kca (V - E_K); stationary calcium keeps
        // (1+Ca)^2 positive.
        let params = p();
        for (v_m, g) in [(-50.0, 30.0), (-50.0, -30.0), (-26.0, -7.8)] {
            let lin = kca_linearization(v_m, g, &params).unwrap();
            let expected = (g * (v_m - params.e_k)).signum();
            assert_eq!(lin.a11.signum(), expected);
        }
    }

    #[test]
    fn element_partial_fraction_identity() {
        // 1/(sL+R1) + 1/R2 equals a12 + a11 b12/(s - b11) wherever defined.
        let params = p();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..25 {
            let v_m = rng.gen_range(-60.0..-22.0);
            let s = Complex64::new(rng.gen_range(-50.0..50.0), rng.gen_range(-200.0..200.0));
            for lin in [
                kv_linearization(v_m, &params).unwrap(),
                kca_linearization(v_m, 13.0, &params).unwrap(),
            ] {
                let via_lr = 1.0 / (s * lin.l.unwrap() + lin.r1.unwrap())
                    + Complex64::new(1.0 / lin.r2.unwrap(), 0.0);
                let via_pf = lin.admittance(s);
                assert!(
                    (via_lr - via_pf).norm() <= 1e-12 * via_pf.norm().max(1.0),
                    "partial fraction mismatch at V_m={v_m}, s={s}"
                );
            }
        }
    }

    #[test]
    fn rational_and_direct_forms_agree() {
        let params = p();
        let mut rng = StdRng::seed_from_u64(37);
        // Pinned point first.
        let s0 = Complex64::new(1.0, 2.0);
        let y = composite_admittance(-50.0, 54.068, &params).unwrap();
        let direct = admittance_direct(-50.0, 54.068, s0, &params).unwrap();
        assert!((y.eval(s0) - direct).norm() <= 1e-10 * direct.norm());
        for _ in 0..20 {
            let v_m = rng.gen_range(-60.0..-22.0);
            let g = rng.gen_range(-40.0..50.0);
            let s = Complex64::new(rng.gen_range(-10.0..10.0), rng.gen_range(-100.0..100.0));
            let y = composite_admittance(v_m, g, &params).unwrap();
            let direct = admittance_direct(v_m, g, s, &params).unwrap();
            assert!(
                (y.eval(s) - direct).norm() <= 1e-10 * direct.norm().max(1e-12),
                "mismatch at V_m={v_m}, g={g}, s={s}"
            );
        }
    }

    #[test]
    fn coefficients_reconstruct_from_branch_polynomials() {
        // Expand (sC + GL + a12I)(s-b11v)(s-b11c) + branches symbolically and
        // compare against the circuit-product coefficients up to the common
        // leading-denominator scale.
        let params = p();
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..5 {
            let v_m = rng.gen_range(-55.0..-23.0);
            let g = rng.gen_range(-30.0..40.0);
            let y = composite_admittance(v_m, g, &params).unwrap();
            let kv = kv_linearization(v_m, &params).unwrap();
            let kca = kca_linearization(v_m, g, &params).unwrap();
            let mixed = mixed_linearization(v_m, &params).unwrap();
            let g0 = mixed.a12 + params.g_l + kv.a12 + kca.a12;
            // Monic denominator (s - b11v)(s - b11c).
            let d1 = -(kv.b11 + kca.b11);
            let d0 = kv.b11 * kca.b11;
            // Numerator = (s Cm + g0)(s^2 + d1 s + d0)
            //           + a11v b12v (s - b11c) + a11c b12c (s - b11v).
            let n3 = params.c_m;
            let n2 = g0 + params.c_m * d1;
            let n1 = g0 * d1 + params.c_m * d0 + kv.a11 * kv.b12 + kca.a11 * kca.b12;
            let n0 = g0 * d0 - kv.a11 * kv.b12 * kca.b11 - kca.a11 * kca.b12 * kv.b11;
            let scale = y.a[0]; // circuit products = scale * monic form
            for (ours, monic) in [
                (y.b[0], n3),
                (y.b[1], n2),
                (y.b[2], n1),
                (y.b[3], n0),
                (y.a[0], 1.0),
                (y.a[1], d1),
                (y.a[2], d0),
            ] {
                assert!(
                    (ours - monic * scale).abs() <= 1e-10 * ours.abs().max(1e-9),
                    "coefficient mismatch at V_m={v_m}, g={g}: {ours} vs {}",
                    monic * scale
                );
            }
        }
    }

    #[test]
    fn zero_frequency_limit_equals_dc_slope() {
        let params = p();
        let h = 1e-6;
        for k in 0..10 {
            let v_m = -54.0 + 3.0 * k as f64; // 10 locus points in [-54, -27]
            let g = gkca_at_equilibrium(v_m, &params).unwrap();
            let y = composite_admittance(v_m, g, &params).unwrap();
            let y0 = y.b[3] / y.a[2];
            let fd = (dc_current(v_m + h, g, &params).unwrap()
                - dc_current(v_m - h, g, &params).unwrap())
                / (2.0 * h);
            assert!(
                (y0 - fd).abs() <= 1e-6 * fd.abs().max(1e-9),
                "V_m={v_m}: Y(0)={y0}, dc slope={fd}"
            );
            let (re, im) = frequency_response(&y, 0.0).unwrap();
            assert_eq!(im, 0.0);
            assert!((re - y0).abs() < 1e-12 * y0.abs().max(1.0));
        }
    }

    #[test]
    fn high_frequency_limit_is_capacitive() {
        let params = p();
        for v_m in [-50.0, -40.0, -26.75527972] {
            let g = gkca_at_equilibrium(v_m, &params).unwrap();
            let y = composite_admittance(v_m, g, &params).unwrap();
            assert!(
                ((y.b[0] / y.a[0]) - params.c_m).abs() < 1e-12,
                "b3/a2 != C_m at V_m={v_m}"
            );
            let s = Complex64::new(0.0, 1e9);
            let ratio = y.eval(s) / s;
            assert!((ratio.re - 1.0).abs() < 1e-6 && ratio.im.abs() < 1e-3);
        }
    }

    #[test]
    fn response_parity_in_omega() {
        // Re Y is even, Im Y odd: re(12c at w) matches complex evaluation at
        // -w conjugated.
        let params = p();
        let y = composite_admittance(-47.5332788572, 27.25111606, &params).unwrap();
        let mut rng = StdRng::seed_from_u64(53);
        for _ in 0..40 {
            let w = rng.gen_range(1e-3_f64..1e5).abs();
            let (re, im) = frequency_response(&y, w).unwrap();
            let plus = y.eval(Complex64::new(0.0, w));
            let minus = y.eval(Complex64::new(0.0, -w));
            assert!((plus.re - minus.re).abs() <= 1e-12 * plus.re.abs().max(1.0));
            assert!((plus.im + minus.im).abs() <= 1e-12 * plus.im.abs().max(1.0));
            assert!((re - plus.re).abs() <= 1e-12 * plus.re.abs().max(1.0));
            assert!((im - plus.im).abs() <= 1e-12 * plus.im.abs().max(1.0));
        }
    }

    #[test]
    fn negative_real_part_exists_at_first_hopf_point() {
        let params = p();
        let y = composite_admittance(-26.75527972, -7.79022731, &params).unwrap();
        let min_re = default_omega_grid()
            .iter()
            .map(|&w| frequency_response(&y, w).unwrap().0)
            .fold(f64::INFINITY, f64::min);
        assert!(min_re < 0.0, "min Re Y = {min_re}");
    }

    #[test]
    fn degenerate_at_potassium_reversal() {
        let params = p();
        let err = composite_admittance(params.e_k, 10.0, &params).unwrap_err();
        assert!(matches!(err, ChayError::Degenerate(_)));
    }
}
