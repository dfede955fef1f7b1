//! Time-domain integration and attractor classification.
//!
//! Integration is classic fixed-step 4th-order Runge-Kutta; a step-halving
//! validation mode reruns at dt/2 and reports the terminal difference.
//! Attractors are classified from the calcium peak sequence (period
//! structure is far more legible in Ca than in V) plus a spike-train gap
//! statistic on V for bursting.

use serde::Serialize;

use crate::equilibrium::{equilibrium_gates, solve_v};
use crate::model::rhs;
use crate::{ChayError, ChayParams, ChayState, Result};

/// Blow-up detector thresholds; no trajectory of the published parameter
/// set approaches either bound.
const V_BLOWUP_MV: f64 = 500.0;
const CA_BLOWUP: f64 = 100.0;

/// Terminal |dV/dt| below which a trajectory counts as settled (mV/s).
const EQUILIBRIUM_DRIFT_MV_S: f64 = 1e-4;

/// Peak-to-peak V above which a sustained oscillation counts as spiking
/// rather than a small near-sinusoidal limit cycle (mV).
const SPIKE_AMPLITUDE_MV: f64 = 15.0;

/// A uniformly sampled trajectory of the three-variable system.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub v: Vec<f64>,
    pub n: Vec<f64>,
    pub ca: Vec<f64>,
    pub params: ChayParams,
    pub dt: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn state_at(&self, idx: usize) -> ChayState {
        ChayState::new(self.v[idx], self.n[idx], self.ca[idx])
    }

    pub fn terminal_state(&self) -> ChayState {
        self.state_at(self.len() - 1)
    }

    /// The gate variable must stay inside [0, 1] without clamping; this is
    /// an emergent property of the kinetics, checked by the test suites on
    /// every stored trajectory.
    pub fn gate_in_bounds(&self) -> bool {
        self.n.iter().all(|&n| (0.0..=1.0).contains(&n))
    }
}

/// Fixed-step RK4 integration from `initial` over `[0, t_final]`.
pub fn integrate(
    initial: &ChayState,
    params: &ChayParams,
    dt: f64,
    t_final: f64,
) -> Result<Trajectory> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(ChayError::Config(format!("dt must be positive, got {dt}")));
    }
    if !t_final.is_finite() || t_final <= dt {
        return Err(ChayError::Config(format!(
            "horizon must exceed dt, got T = {t_final}, dt = {dt}"
        )));
    }
    if !initial.is_finite() {
        return Err(ChayError::Domain(format!("non-finite initial {initial:?}")));
    }
    params.validate()?;

    let steps = (t_final / dt).round() as usize;
    let mut traj = Trajectory {
        t: Vec::with_capacity(steps + 1),
        v: Vec::with_capacity(steps + 1),
        n: Vec::with_capacity(steps + 1),
        ca: Vec::with_capacity(steps + 1),
        params: *params,
        dt,
    };

    let mut state = *initial;
    for step in 0..=steps {
        let t = step as f64 * dt;
        if !state.is_finite() || state.v.abs() >= V_BLOWUP_MV || state.ca >= CA_BLOWUP {
            return Err(ChayError::BlowUp {
                t,
                message: format!("state left the trusted region: {state:?}"),
            });
        }
        traj.t.push(t);
        traj.v.push(state.v);
        traj.n.push(state.n);
        traj.ca.push(state.ca);
        if step == steps {
            break;
        }
        state = rk4_step(&state, params, dt)?;
    }
    Ok(traj)
}

fn rk4_step(state: &ChayState, params: &ChayParams, dt: f64) -> Result<ChayState> {
    let add = |s: &ChayState, d: &crate::ChayDeriv, h: f64| {
        ChayState::new(s.v + h * d.dv, s.n + h * d.dn, s.ca + h * d.dca)
    };
    let k1 = rhs(state, params)?;
    let k2 = rhs(&add(state, &k1, 0.5 * dt), params)?;
    let k3 = rhs(&add(state, &k2, 0.5 * dt), params)?;
    let k4 = rhs(&add(state, &k3, dt), params)?;
    Ok(ChayState::new(
        state.v + dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv),
        state.n + dt / 6.0 * (k1.dn + 2.0 * k2.dn + 2.0 * k3.dn + k4.dn),
        state.ca + dt / 6.0 * (k1.dca + 2.0 * k2.dca + 2.0 * k3.dca + k4.dca),
    ))
}

/// Step-halving validation: run at `dt` and `dt/2` and report both the
/// coarse trajectory and the terminal membrane-voltage difference.
pub fn integrate_with_validation(
    initial: &ChayState,
    params: &ChayParams,
    dt: f64,
    t_final: f64,
) -> Result<(Trajectory, f64)> {
    let coarse = integrate(initial, params, dt, t_final)?;
    let fine = integrate(initial, params, dt / 2.0, t_final)?;
    let dv = (coarse.terminal_state().v - fine.terminal_state().v).abs();
    Ok((coarse, dv))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AttractorKind {
    Equilibrium,
    PeriodK(u32),
    Chaotic,
    Bursting,
}

/// Classification evidence: peak statistics over the post-transient window.
#[derive(Debug, Clone, Serialize)]
pub struct AttractorEvidence {
    pub peak_count: usize,
    pub cluster_count: usize,
    /// Representative height of each peak-level cluster, ascending.
    pub distinct_peak_levels: Vec<f64>,
    /// Terminal |dV/dt| (mV/s).
    pub final_drift: f64,
    /// Mean short / long inter-spike intervals when bursting structure was
    /// probed (s).
    pub isi_short_mean: Option<f64>,
    pub isi_long_mean: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AttractorLabel {
    pub kind: AttractorKind,
    pub evidence: AttractorEvidence,
}

/// Minimum calcium peaks in the window for a periodicity verdict.
const MIN_PEAKS: usize = 30;
/// Cluster count beyond which the peak structure counts as chaotic.
const MAX_CLUSTERS: usize = 16;
/// Bimodality ratio of inter-spike intervals that flags bursting.
const BURST_ISI_RATIO: f64 = 5.0;

/// Classify the attractor reached by `traj`, discarding the leading
/// `transient_fraction` of samples (0.5 by default protocols).
pub fn classify_attractor(traj: &Trajectory, transient_fraction: f64) -> Result<AttractorLabel> {
    if !(0.0..1.0).contains(&transient_fraction) {
        return Err(ChayError::Config(format!(
            "transient fraction must lie in [0, 1), got {transient_fraction}"
        )));
    }
    if traj.len() < 16 {
        return Err(ChayError::Inconclusive("trajectory too short".into()));
    }
    let start = ((traj.len() as f64) * transient_fraction) as usize;
    let window = start..traj.len();

    let final_drift = rhs(&traj.terminal_state(), &traj.params)?.dv.abs();

    let ca_peaks = local_maxima(&traj.t[window.clone()], &traj.ca[window.clone()], None);

    if final_drift < EQUILIBRIUM_DRIFT_MV_S {
        return Ok(AttractorLabel {
            kind: AttractorKind::Equilibrium,
            evidence: AttractorEvidence {
                peak_count: ca_peaks.len(),
                cluster_count: 0,
                distinct_peak_levels: vec![],
                final_drift,
                isi_short_mean: None,
                isi_long_mean: None,
            },
        });
    }

    // Bursting probe: V spikes grouped with long quiescent gaps. This
    // reads the spike-train gap statistic, not peak-height periodicity,
    // so it does not need the full peak budget below.
    let v_window = &traj.v[window.clone()];
    let v_min = v_window.iter().cloned().fold(f64::INFINITY, f64::min);
    let v_max = v_window.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let spike_floor = v_min + 0.5 * (v_max - v_min);
    let spikes = local_maxima(&traj.t[window.clone()], v_window, Some(spike_floor));
    let isi_split = bimodal_isi_split(&spikes);
    if let Some((short_mean, long_mean, long_count)) = isi_split {
        if long_mean > BURST_ISI_RATIO * short_mean && long_count >= 2 {
            let (levels, _) = cluster_heights(&ca_peaks);
            return Ok(AttractorLabel {
                kind: AttractorKind::Bursting,
                evidence: AttractorEvidence {
                    peak_count: ca_peaks.len(),
                    cluster_count: levels.len(),
                    distinct_peak_levels: levels,
                    final_drift,
                    isi_short_mean: Some(short_mean),
                    isi_long_mean: Some(long_mean),
                },
            });
        }
    }

    if ca_peaks.len() < MIN_PEAKS {
        return Err(ChayError::Inconclusive(format!(
            "only {} calcium peaks in the analysis window and no equilibrium; \
             rerun with a longer horizon",
            ca_peaks.len()
        )));
    }

    let (levels, assignment) = cluster_heights(&ca_peaks);
    let k = levels.len();
    let kind = if k > MAX_CLUSTERS {
        AttractorKind::Chaotic
    } else if is_periodic(&assignment, k) {
        AttractorKind::PeriodK(k as u32)
    } else {
        AttractorKind::Chaotic
    };
    Ok(AttractorLabel {
        kind,
        evidence: AttractorEvidence {
            peak_count: ca_peaks.len(),
            cluster_count: k,
            distinct_peak_levels: levels,
            final_drift,
            isi_short_mean: isi_split.map(|s| s.0),
            isi_long_mean: isi_split.map(|s| s.1),
        },
    })
}

/// (t, height) of strict local maxima, optionally above a floor. Each peak
/// is refined by the parabola through its three bracketing samples, which
/// removes the O(dt^2) height jitter of grid-aligned sampling; without it
/// every peak of a perfectly periodic orbit lands in its own cluster.
fn local_maxima(t: &[f64], x: &[f64], floor: Option<f64>) -> Vec<(f64, f64)> {
    let mut peaks = Vec::new();
    for i in 1..x.len().saturating_sub(1) {
        if x[i] > x[i - 1] && x[i] >= x[i + 1] && floor.is_none_or(|f| x[i] >= f) {
            let (a, b, c) = (x[i - 1], x[i], x[i + 1]);
            let curvature = a - 2.0 * b + c;
            let (dt_frac, height) = if curvature < 0.0 {
                let delta = 0.5 * (a - c) / curvature;
                (delta, b - 0.25 * (a - c) * delta)
            } else {
                (0.0, b)
            };
            let dt = t[i] - t[i - 1];
            peaks.push((t[i] + dt_frac * dt, height));
        }
    }
    peaks
}

/// Group peak heights into clusters separated by gaps larger than
/// 1e-3 of the height range (floored at 1e-9 so equilibrium-adjacent ripple
/// collapses into one level). Returns representative levels (ascending) and
/// the per-peak cluster assignment in temporal order.
fn cluster_heights(peaks: &[(f64, f64)]) -> (Vec<f64>, Vec<usize>) {
    if peaks.is_empty() {
        return (vec![], vec![]);
    }
    let mut heights: Vec<f64> = peaks.iter().map(|p| p.1).collect();
    heights.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let range = heights[heights.len() - 1] - heights[0];
    let eps = (1e-3 * range).max(1e-9);

    // Cluster boundaries where the sorted gap exceeds eps.
    let mut boundaries = vec![heights[0]];
    let mut reps = Vec::new();
    let mut cluster_start = 0;
    for i in 1..heights.len() {
        if heights[i] - heights[i - 1] > eps {
            reps.push(mean(&heights[cluster_start..i]));
            boundaries.push(0.5 * (heights[i - 1] + heights[i]));
            cluster_start = i;
        }
    }
    reps.push(mean(&heights[cluster_start..]));
    boundaries.remove(0);

    let assignment = peaks
        .iter()
        .map(|&(_, h)| boundaries.iter().take_while(|&&b| h > b).count())
        .collect();
    (reps, assignment)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn is_periodic(assignment: &[usize], k: usize) -> bool {
    if k == 0 || assignment.len() <= k {
        return false;
    }
    assignment
        .iter()
        .zip(assignment.iter().skip(k))
        .all(|(a, b)| a == b)
}

/// Split the inter-spike intervals at their largest multiplicative gap.
/// Returns (short mean, long mean, long count) when both groups exist.
fn bimodal_isi_split(spikes: &[(f64, f64)]) -> Option<(f64, f64, usize)> {
    if spikes.len() < 6 {
        return None;
    }
    let mut isis: Vec<f64> = spikes.windows(2).map(|w| w[1].0 - w[0].0).collect();
    isis.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut split = 0;
    let mut best_ratio = 1.0;
    for i in 0..isis.len() - 1 {
        let ratio = isis[i + 1] / isis[i];
        if ratio > best_ratio {
            best_ratio = ratio;
            split = i + 1;
        }
    }
    if split == 0 || split == isis.len() {
        return None;
    }
    let short = &isis[..split];
    let long = &isis[split..];
    Some((mean(short), mean(long), long.len()))
}

/// Three-way outcome of a bifurcation probe run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProbeOutcome {
    ConvergesToEquilibrium,
    StableLimitCycle,
    Spikes,
}

/// Integrate from `initial` at conductance `g_kca` and reduce the attractor
/// to the three-way probe outcome. Near the bifurcation points transients
/// decay on 100 s scales, so the oscillation-amplitude trend over the last
/// half of the run decides between a settling equilibrium and a sustained
/// cycle; sustained large-excursion oscillations count as spikes.
pub fn hopf_probe(
    g_kca: f64,
    initial: &ChayState,
    t_final: f64,
    dt: f64,
    params: &ChayParams,
) -> Result<ProbeOutcome> {
    let p = ChayParams { g_kca, ..*params };
    let traj = integrate(initial, &p, dt, t_final)?;

    if let Ok(label) = classify_attractor(&traj, 0.5) {
        if label.kind == AttractorKind::Equilibrium {
            return Ok(ProbeOutcome::ConvergesToEquilibrium);
        }
    }

    let len = traj.len();
    let amp = |a: f64, b: f64| -> f64 {
        let lo = (len as f64 * a) as usize;
        let hi = ((len as f64 * b) as usize).min(len);
        let w = &traj.v[lo..hi];
        let min = w.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        max - min
    };
    let amp_mid = amp(0.50, 0.75);
    let amp_fin = amp(0.75, 1.0);

    if amp_fin < 1e-6 {
        return Ok(ProbeOutcome::ConvergesToEquilibrium);
    }
    if amp_fin < 0.9 * amp_mid {
        // Still shrinking measurably per quarter-run: a decaying transient.
        // A saturated cycle holds its amplitude to much better than 10%.
        return Ok(ProbeOutcome::ConvergesToEquilibrium);
    }
    if amp_fin > SPIKE_AMPLITUDE_MV {
        Ok(ProbeOutcome::Spikes)
    } else {
        Ok(ProbeOutcome::StableLimitCycle)
    }
}

/// Standard probe start: the I = 0 equilibrium state for `g_kca`, displaced
/// by `delta_v` in voltage with the gate and calcium left at their
/// stationary values.
pub fn equilibrium_initial(g_kca: f64, delta_v: f64, params: &ChayParams) -> Result<ChayState> {
    let roots = solve_v(0.0, g_kca, [-55.0, -21.0], params)?;
    let v_q = *roots.first().ok_or_else(|| {
        ChayError::Domain(format!(
            "no equilibrium for g_kca = {g_kca} in [-55, -21] mV"
        ))
    })?;
    let (n_q, ca_q) = equilibrium_gates(v_q, params)?;
    Ok(ChayState::new(v_q + delta_v, n_q, ca_q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::EquilibriumPoint;

    fn p(g: f64) -> ChayParams {
        ChayParams::with_gkca(g)
    }

    #[test]
    fn integration_config_errors() {
        let s = ChayState::new(-50.0, 0.1, 0.48);
        assert!(integrate(&s, &p(10.0), 0.0, 1.0).is_err());
        assert!(integrate(&s, &p(10.0), 1e-4, 0.0).is_err());
        assert!(integrate(&ChayState::new(f64::NAN, 0.1, 0.1), &p(10.0), 1e-4, 1.0).is_err());
    }

    #[test]
    fn stable_equilibrium_stays_put() {
        let params = p(54.068);
        let q = EquilibriumPoint::at(-50.0, &ChayParams::default()).unwrap();
        let traj = integrate(&q.state(), &params, 1e-4, 10.0).unwrap();
        let end = traj.terminal_state();
        assert!((end.v - q.v_q).abs() < 1e-4, "drifted to {}", end.v);
        assert!((end.n - q.n_q).abs() < 1e-4);
        assert!((end.ca - q.ca_q).abs() < 1e-4);
        assert!(traj.gate_in_bounds());
    }

    #[test]
    fn gate_stays_in_bounds_from_extreme_starts() {
        for n0 in [0.0, 1.0] {
            let traj = integrate(&ChayState::new(-50.0, n0, 0.48), &p(10.0), 1e-4, 5.0).unwrap();
            assert!(traj.gate_in_bounds());
        }
    }

    #[test]
    fn step_halving_agreement_on_period_one_orbit() {
        let initial = ChayState::new(-50.0, 0.1, 0.48);
        let (traj, dv) = integrate_with_validation(&initial, &p(10.0), 1e-4, 20.0).unwrap();
        let v_min = traj.v.iter().cloned().fold(f64::INFINITY, f64::min);
        let v_max = traj.v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(
            dv < 1e-5 * (v_max - v_min),
            "terminal dv = {dv}, amplitude = {}",
            v_max - v_min
        );
    }

    #[test]
    fn determinism_is_bitwise() {
        let initial = ChayState::new(-50.0, 0.1, 0.48);
        let a = integrate(&initial, &p(11.0), 1e-4, 2.0).unwrap();
        let b = integrate(&initial, &p(11.0), 1e-4, 2.0).unwrap();
        assert_eq!(a.v, b.v);
        assert_eq!(a.n, b.n);
        assert_eq!(a.ca, b.ca);
    }

    #[test]
    fn synthetic_periodic_peaks_classify() {
        // Hand-built trajectories exercise the classifier without long
        // integrations: sinusoid -> period-1, alternating envelope ->
        // period-2.
        let dt = 1e-3;
        let n = 100_000;
        let mk = |f: &dyn Fn(f64) -> f64| {
            let t: Vec<f64> = (0..n).map(|i| i as f64 * dt).collect();
            let ca: Vec<f64> = t.iter().map(|&t| f(t)).collect();
            Trajectory {
                v: t.iter().map(|&t| -45.0 + 5.0 * (6.0 * t).sin()).collect(),
                n: vec![0.2; n],
                ca,
                t,
                params: p(10.0),
                dt,
            }
        };
        let period1 = mk(&|t| 1.0 + 0.3 * (6.0 * t).sin());
        let label = classify_attractor(&period1, 0.5).unwrap();
        assert_eq!(
            label.kind,
            AttractorKind::PeriodK(1),
            "{:?}",
            label.evidence
        );

        let period2 = mk(&|t| 1.0 + (0.3 + 0.1 * (3.0 * t).cos().signum()) * (6.0 * t).sin());
        let label = classify_attractor(&period2, 0.5).unwrap();
        assert_eq!(
            label.kind,
            AttractorKind::PeriodK(2),
            "{:?}",
            label.evidence
        );
    }

    #[test]
    fn too_few_peaks_is_inconclusive() {
        let dt = 1e-3;
        let n = 2000;
        let t: Vec<f64> = (0..n).map(|i| i as f64 * dt).collect();
        let traj = Trajectory {
            v: t.iter().map(|&t| -45.0 + 5.0 * (3.0 * t).sin()).collect(),
            n: vec![0.2; n],
            ca: t.iter().map(|&t| 1.0 + 0.3 * (3.0 * t).sin()).collect(),
            t,
            params: p(10.0),
            dt,
        };
        assert!(matches!(
            classify_attractor(&traj, 0.5),
            Err(ChayError::Inconclusive(_))
        ));
    }

    #[test]
    fn converging_probe_far_from_bifurcation() {
        let params = ChayParams::default();
        let initial = equilibrium_initial(-8.0, 0.5, &params).unwrap();
        let outcome = hopf_probe(-8.0, &initial, 200.0, 1e-3, &params).unwrap();
        assert_eq!(outcome, ProbeOutcome::ConvergesToEquilibrium);
    }
}
