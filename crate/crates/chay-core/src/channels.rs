//! The three circuit elements as standalone drivable components.
//!
//! The two gated potassium channels obey a state-dependent Ohm's law
//! i = G(x)·v with a first-order state equation in x, which is the defining
//! form of a voltage-controlled generic memristor. The mixed Na/Ca channel
//! has no state: its current is a pure function of the instantaneous
//! element voltage. Driving an element with a sinusoid and recording the
//! v-i locus exposes the memristor fingerprints: loops pinched at the
//! origin that shrink toward a single-valued curve as frequency grows.

use serde::Serialize;

use crate::gating::{alpha_n, beta_n, m3h, n_inf};
use crate::{ChayError, ChayParams, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChannelKind {
    /// Voltage-gated potassium memristor; internal state is the gate n.
    KvMemristor,
    /// Calcium-sensitive potassium memristor; internal state is Ca.
    KcaMemristor,
    /// Memoryless mixed Na/Ca nonlinear resistor.
    MixedResistor,
}

/// One channel element with its parameter set and scalar internal state
/// (absent for the mixed resistor).
#[derive(Debug, Clone, Copy)]
pub struct ChannelElement {
    pub kind: ChannelKind,
    pub params: ChayParams,
    pub state: Option<f64>,
}

impl ChannelElement {
    /// Potassium memristor, initialized at its v = 0 rest state.
    pub fn kv(params: ChayParams) -> Self {
        let n0 = n_inf(params.e_k);
        Self {
            kind: ChannelKind::KvMemristor,
            params,
            state: Some(n0),
        }
    }

    /// Calcium-sensitive memristor, initialized at its v = 0 rest state.
    pub fn kca(params: ChayParams) -> Self {
        let ca0 = -m3h(params.e_k) * (params.e_k - params.e_ca) / params.k_ca;
        Self {
            kind: ChannelKind::KcaMemristor,
            params,
            state: Some(ca0),
        }
    }

    pub fn mixed(params: ChayParams) -> Self {
        Self {
            kind: ChannelKind::MixedResistor,
            params,
            state: None,
        }
    }

    /// Stationary internal state at zero element voltage; `None` for the
    /// memoryless element.
    pub fn rest_state(&self) -> Option<f64> {
        match self.kind {
            ChannelKind::KvMemristor => Some(n_inf(self.params.e_k)),
            ChannelKind::KcaMemristor => Some(
                -m3h(self.params.e_k) * (self.params.e_k - self.params.e_ca) / self.params.k_ca,
            ),
            ChannelKind::MixedResistor => None,
        }
    }
}

/// Memductance of the voltage-gated potassium channel: g_kv · n^4.
pub fn memductance_kv(n: f64, params: &ChayParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&n) {
        return Err(ChayError::Domain(format!(
            "gate activation must lie in [0, 1], got {n}"
        )));
    }
    let n2 = n * n;
    Ok(params.g_kv * n2 * n2)
}

/// Memductance of the calcium-sensitive channel: g_kca · Ca/(1+Ca).
pub fn memductance_kca(ca: f64, g_kca: f64) -> Result<f64> {
    if ca.is_nan() || ca < 0.0 {
        return Err(ChayError::Domain(format!(
            "calcium concentration must be >= 0, got {ca}"
        )));
    }
    Ok(g_kca * ca / (1.0 + ca))
}

/// Conductance of the mixed channel at element voltage `v_i`: a pure
/// function of the instantaneous voltage, bounded by (0, g_i).
pub fn mixed_conductance(v_i: f64, params: &ChayParams) -> Result<f64> {
    if !v_i.is_finite() {
        return Err(ChayError::Domain(format!("non-finite voltage {v_i}")));
    }
    Ok(params.g_i * m3h(v_i + params.e_i))
}

/// State-dependent Ohm's law: element current at element voltage `v`.
/// Does not advance the internal state.
pub fn element_current(element: &ChannelElement, v: f64) -> Result<f64> {
    if !v.is_finite() {
        return Err(ChayError::Domain(format!("non-finite voltage {v}")));
    }
    let g = match element.kind {
        ChannelKind::KvMemristor => {
            let n = element
                .state
                .ok_or_else(|| ChayError::Domain("memristor element missing state".into()))?;
            memductance_kv(n, &element.params)?
        }
        ChannelKind::KcaMemristor => {
            let ca = element
                .state
                .ok_or_else(|| ChayError::Domain("memristor element missing state".into()))?;
            memductance_kca(ca, element.params.g_kca)?
        }
        ChannelKind::MixedResistor => mixed_conductance(v, &element.params)?,
    };
    Ok(g * v)
}

/// Time derivative of the element's internal state under element voltage
/// `v`. Contract error for the memoryless mixed element.
pub fn element_state_rate(element: &ChannelElement, v: f64) -> Result<f64> {
    if !v.is_finite() {
        return Err(ChayError::Domain(format!("non-finite voltage {v}")));
    }
    let p = &element.params;
    match element.kind {
        ChannelKind::KvMemristor => {
            let n = element
                .state
                .ok_or_else(|| ChayError::Domain("memristor element missing state".into()))?;
            let v_mem = v + p.e_k;
            Ok(p.lambda_n * (alpha_n(v_mem) * (1.0 - n) - beta_n(v_mem) * n))
        }
        ChannelKind::KcaMemristor => {
            let ca = element
                .state
                .ok_or_else(|| ChayError::Domain("memristor element missing state".into()))?;
            let v_mem = v + p.e_k;
            Ok(-p.rho * (m3h(v_mem) * (v_mem - p.e_ca) + p.k_ca * ca))
        }
        ChannelKind::MixedResistor => Err(ChayError::Contract(
            "the mixed resistor carries no internal state".into(),
        )),
    }
}

/// Sinusoidal drive protocol for [`drive_sinusoid`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DriveConfig {
    /// Peak voltage (mV), > 0.
    pub amplitude: f64,
    /// Drive frequency (Hz), > 0.
    pub frequency: f64,
    /// Total cycles to integrate; all but the last two are warm-up.
    pub cycles: usize,
    /// Recorded points per cycle; also the integrator step count per cycle.
    pub samples_per_cycle: usize,
}

impl DriveConfig {
    pub fn new(amplitude: f64, frequency: f64, cycles: usize) -> Self {
        Self {
            amplitude,
            frequency,
            cycles,
            samples_per_cycle: 1000,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.amplitude.is_finite() || self.amplitude <= 0.0 {
            return Err(ChayError::Config(format!(
                "amplitude must be positive, got {}",
                self.amplitude
            )));
        }
        if !self.frequency.is_finite() || self.frequency <= 0.0 {
            return Err(ChayError::Config(format!(
                "frequency must be positive, got {}",
                self.frequency
            )));
        }
        if self.cycles < 3 {
            return Err(ChayError::Config(format!(
                "need at least 3 drive cycles, got {}",
                self.cycles
            )));
        }
        if self.samples_per_cycle < 200 {
            return Err(ChayError::Config(format!(
                "step-size/frequency mismatch: {} samples per cycle (need >= 200)",
                self.samples_per_cycle
            )));
        }
        Ok(())
    }
}

/// One recorded drive sample.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LoopSample {
    pub t: f64,
    pub v: f64,
    pub i: f64,
}

/// Fingerprint metrics of a steady-state v-i loop.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LoopMetrics {
    /// Largest |i| among samples with |v| below 1e-9 mV: the pinching
    /// residual at the origin.
    pub origin_residual: f64,
    /// Signed shoelace area of the final cycle's v-i polygon.
    pub lobe_area: f64,
    /// Largest |i| difference between same-voltage sample pairs on the
    /// rising and falling sweeps of the final cycle.
    pub multivalue_spread: f64,
    /// Largest |i| over the recorded samples.
    pub max_abs_i: f64,
}

/// Steady-state hysteresis loop: the last two drive cycles plus metrics.
#[derive(Debug, Clone, Serialize)]
pub struct HysteresisLoop {
    pub samples: Vec<LoopSample>,
    pub frequency: f64,
    pub amplitude: f64,
    pub metrics: LoopMetrics,
}

/// Drive an element with v(t) = A·sin(2π f t), integrating its state ODE
/// with fixed-step RK4, discarding all but the last two cycles, and
/// returning the steady-state loop with its fingerprint metrics.
///
/// `initial_state` overrides the element's stored state; pass
/// [`ChannelElement::rest_state`] for the standard protocol. The sample
/// count per cycle is even so each recorded phase has a partner at the same
/// drive voltage on the opposite sweep.
pub fn drive_sinusoid(
    element: &ChannelElement,
    config: DriveConfig,
    initial_state: Option<f64>,
) -> Result<HysteresisLoop> {
    config.validate()?;
    let spc = config.samples_per_cycle + config.samples_per_cycle % 2;
    let period = 1.0 / config.frequency;
    let h = period / spc as f64;
    let total_steps = spc * config.cycles;
    let recorded_from = total_steps - 2 * spc;

    let drive =
        |t: f64| config.amplitude * (2.0 * std::f64::consts::PI * config.frequency * t).sin();

    let mut elem = *element;
    if elem.kind != ChannelKind::MixedResistor {
        elem.state = match initial_state {
            Some(x) => Some(x),
            None => elem.state.or_else(|| elem.rest_state()),
        };
        if elem.state.is_none() {
            return Err(ChayError::Domain("memristor element missing state".into()));
        }
    }

    let mut samples = Vec::with_capacity(2 * spc + 1);
    for step in 0..=total_steps {
        if step >= recorded_from {
            let t = step as f64 * h;
            let v = drive(t);
            samples.push(LoopSample {
                t,
                v,
                i: element_current(&elem, v)?,
            });
        }
        if step == total_steps {
            break;
        }
        let t = step as f64 * h;
        if elem.kind != ChannelKind::MixedResistor {
            let x = elem.state.unwrap();
            let f = |x: f64, t: f64| -> Result<f64> {
                let mut probe = elem;
                probe.state = Some(x);
                element_state_rate(&probe, drive(t))
            };
            let k1 = f(x, t)?;
            let k2 = f(x + 0.5 * h * k1, t + 0.5 * h)?;
            let k3 = f(x + 0.5 * h * k2, t + 0.5 * h)?;
            let k4 = f(x + h * k3, t + h)?;
            elem.state = Some(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
        }
    }

    let metrics = loop_metrics(&samples, spc)?;
    Ok(HysteresisLoop {
        samples,
        frequency: config.frequency,
        amplitude: config.amplitude,
        metrics,
    })
}

/// Metrics over the final cycle of a recorded loop. `spc` is the (even)
/// sample count per cycle; `samples` holds the last two cycles.
fn loop_metrics(samples: &[LoopSample], spc: usize) -> Result<LoopMetrics> {
    if samples.len() < spc + 1 {
        return Err(ChayError::Config("too few samples for loop metrics".into()));
    }
    let last = &samples[samples.len() - (spc + 1)..];

    let max_abs_i = samples.iter().map(|s| s.i.abs()).fold(0.0, f64::max);

    let origin_residual = samples
        .iter()
        .filter(|s| s.v.abs() < 1e-9)
        .map(|s| s.i.abs())
        .fold(0.0, f64::max);

    // Shoelace signed area over the closed final cycle.
    let mut area = 0.0;
    for k in 0..spc {
        let (a, b) = (&last[k], &last[k + 1]);
        area += a.v * b.i - b.v * a.i;
    }
    area *= 0.5;

    // Pair each phase k with spc/2 - k (mod spc): identical drive voltage,
    // opposite sweep direction. Multi-valuedness is the largest current
    // mismatch over those pairs.
    let mut spread = 0.0_f64;
    for k in 0..spc {
        let partner = (3 * spc / 2 - k) % spc;
        if partner <= k {
            continue;
        }
        let d = (last[k].i - last[partner].i).abs();
        spread = spread.max(d);
    }

    Ok(LoopMetrics {
        origin_residual,
        lobe_area: area,
        multivalue_spread: spread,
        max_abs_i,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> ChayParams {
        ChayParams::default()
    }

    #[test]
    fn kv_memductance_values() {
        assert_eq!(memductance_kv(0.0, &p()).unwrap(), 0.0);
        assert_eq!(memductance_kv(1.0, &p()).unwrap(), 1700.0);
        assert!((memductance_kv(0.5, &p()).unwrap() - 106.25).abs() < 1e-12);
        assert!(memductance_kv(-0.1, &p()).is_err());
        assert!(memductance_kv(1.1, &p()).is_err());
    }

    #[test]
    fn kca_memductance_values() {
        assert_eq!(memductance_kca(0.0, 10.0).unwrap(), 0.0);
        assert!((memductance_kca(1.0, 10.0).unwrap() - 5.0).abs() < 1e-12);
        let asymptote = memductance_kca(1e9, 10.0).unwrap();
        assert!((asymptote - 10.0).abs() < 1e-6 * 10.0);
        assert!(memductance_kca(-1e-9, 10.0).is_err());
    }

    #[test]
    fn mixed_conductance_bounded_and_consistent() {
        let params = p();
        let mut v_i = -250.0;
        while v_i <= 150.0 {
            let g = mixed_conductance(v_i, &params).unwrap();
            assert!(g > 0.0 && g < params.g_i, "G = {g} at v_i = {v_i}");
            // Same formula as the full model's gate product at the shifted
            // membrane voltage.
            let direct = params.g_i * m3h(v_i + params.e_i);
            assert!((g - direct).abs() <= 1e-12 * direct.abs());
            v_i += 2.5;
        }
    }

    #[test]
    fn mixed_conductance_at_gate_singularity() {
        // v_i = -125 puts the membrane voltage on the m-gate's removable
        // singularity; the two evaluation routes must agree there.
        let params = p();
        let g = mixed_conductance(-125.0, &params).unwrap();
        let m = crate::gating::m_inf(-25.0);
        let h = crate::gating::h_inf(-25.0);
        assert!((g - params.g_i * m * m * m * h).abs() < 1e-12 * g);
    }

    #[test]
    fn current_is_state_dependent_ohms_law() {
        let params = p();
        for elem in [
            ChannelElement::kv(params),
            ChannelElement::kca(ChayParams::with_gkca(10.0)),
            ChannelElement::mixed(params),
        ] {
            assert_eq!(element_current(&elem, 0.0).unwrap(), 0.0);
        }
        let mut kv = ChannelElement::kv(params);
        kv.state = Some(1.0);
        assert!((element_current(&kv, 10.0).unwrap() - 17000.0).abs() < 1e-9);
        let mut kca = ChannelElement::kca(ChayParams::with_gkca(10.0));
        kca.state = Some(1.0);
        assert!((element_current(&kca, -2.0).unwrap() - -10.0).abs() < 1e-12);
    }

    #[test]
    fn state_rate_roots() {
        let params = p();
        // KV: gate stationary at n_inf of the membrane voltage.
        let v = 25.0; // membrane at -50 mV
        let mut kv = ChannelElement::kv(params);
        kv.state = Some(n_inf(v + params.e_k));
        assert!(element_state_rate(&kv, v).unwrap().abs() < 1e-13);
        // Reference equilibrium: rounded gate value leaves a small residual.
        kv.state = Some(0.089);
        let rate = element_state_rate(&kv, 25.0).unwrap();
        assert!(rate.abs() < 1e-2 * params.lambda_n * (alpha_n(-50.0) + beta_n(-50.0)));
        // KCa: stationary calcium from the closed form.
        let mut kca = ChannelElement::kca(ChayParams::with_gkca(10.0));
        let v_mem = v + params.e_k;
        kca.state = Some(-m3h(v_mem) * (v_mem - params.e_ca) / params.k_ca);
        assert!(element_state_rate(&kca, v).unwrap().abs() < 1e-13);
    }

    #[test]
    fn mixed_element_has_no_state_rate() {
        let err = element_state_rate(&ChannelElement::mixed(p()), 1.0).unwrap_err();
        assert!(matches!(err, ChayError::Contract(_)));
    }

    #[test]
    fn drive_config_validation() {
        let elem = ChannelElement::kv(p());
        let mut cfg = DriveConfig::new(100.0, 1e5, 6);
        cfg.samples_per_cycle = 150;
        assert!(matches!(
            drive_sinusoid(&elem, cfg, None),
            Err(ChayError::Config(_))
        ));
        assert!(drive_sinusoid(&elem, DriveConfig::new(100.0, 1e5, 2), None).is_err());
        assert!(drive_sinusoid(&elem, DriveConfig::new(-1.0, 1e5, 6), None).is_err());
        assert!(drive_sinusoid(&elem, DriveConfig::new(100.0, 0.0, 6), None).is_err());
    }

    #[test]
    fn kv_loops_shrink_with_frequency() {
        let elem = ChannelElement::kv(p());
        let mut areas = Vec::new();
        let mut spreads = Vec::new();
        for f in [1e5, 5e5, 2e6] {
            let lp = drive_sinusoid(&elem, DriveConfig::new(100.0, f, 6), None).unwrap();
            assert!(
                lp.metrics.origin_residual <= 1e-6 * lp.metrics.max_abs_i,
                "pinching violated at f={f}"
            );
            areas.push(lp.metrics.lobe_area.abs());
            spreads.push(lp.metrics.multivalue_spread);
        }
        assert!(
            areas[0] > areas[1] && areas[1] > areas[2],
            "areas {areas:?}"
        );
        assert!(
            spreads[2] < 0.05 * spreads[0],
            "spread ratio {} not below 5%",
            spreads[2] / spreads[0]
        );
    }

    #[test]
    fn kca_loops_shrink_with_frequency() {
        let elem = ChannelElement::kca(ChayParams::with_gkca(10.0));
        let mut areas = Vec::new();
        for f in [10.0, 30.0, 150.0] {
            let lp = drive_sinusoid(&elem, DriveConfig::new(100.0, f, 6), None).unwrap();
            assert!(lp.metrics.origin_residual <= 1e-6 * lp.metrics.max_abs_i);
            areas.push(lp.metrics.lobe_area.abs());
        }
        assert!(
            areas[0] > areas[1] && areas[1] > areas[2],
            "areas {areas:?}"
        );
    }

    #[test]
    fn mixed_curve_is_frequency_invariant() {
        let elem = ChannelElement::mixed(p());
        for f in [100.0, 200.0, 1000.0] {
            let lp = drive_sinusoid(&elem, DriveConfig::new(100.0, f, 6), None).unwrap();
            assert!(
                lp.metrics.multivalue_spread <= 1e-9 * lp.metrics.max_abs_i,
                "memoryless element multivalued at f={f}: {} vs {}",
                lp.metrics.multivalue_spread,
                lp.metrics.max_abs_i
            );
        }
    }

    #[test]
    fn pinching_is_pointwise() {
        // i vanishes with v on every sample close to the origin.
        let elem = ChannelElement::kv(p());
        let lp = drive_sinusoid(&elem, DriveConfig::new(100.0, 1e5, 6), None).unwrap();
        for s in lp.samples.iter().filter(|s| s.v.abs() < 1e-9) {
            assert!(s.i.abs() <= 1700.0 * s.v.abs() + 1e-300);
        }
        // And such samples exist: the phase grid hits v = 0 exactly.
        assert!(lp.samples.iter().any(|s| s.v.abs() < 1e-9));
    }

    #[test]
    fn mixed_current_ignores_history() {
        // Two different drive histories ending at the same voltage give the
        // exact same current.
        let elem = ChannelElement::mixed(p());
        let i1 = element_current(&elem, 37.5).unwrap();
        let _ = drive_sinusoid(&elem, DriveConfig::new(80.0, 50.0, 4), None).unwrap();
        let i2 = element_current(&elem, 37.5).unwrap();
        assert_eq!(i1, i2);
    }
}
