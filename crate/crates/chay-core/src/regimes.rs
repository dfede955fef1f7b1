//! Regime classification along the equilibrium locus and location of the
//! four analysis boundaries: two local-activity edges (where the minimum of
//! Re Y(iw) over frequency crosses zero) and two Hopf bifurcations (where
//! the complex zero pair of the admittance crosses the imaginary axis).

use serde::Serialize;

use crate::equilibrium::gkca_at_equilibrium;
use crate::smallsignal::{composite_admittance, default_omega_grid, frequency_response};
use crate::spectra::spectral_set_on_locus;
use crate::{ChayError, ChayParams, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegimeKind {
    /// Re Y(iw) >= 0 for every frequency: the equilibrium cannot amplify.
    LocallyPassive,
    /// Locally active and asymptotically stable: all zeros in the open
    /// left half-plane while some frequency sees Re Y < 0.
    EdgeOfChaos,
    /// Locally active with a right-half-plane zero: unstable equilibrium.
    UnstableLocallyActive,
    /// Locally active with a zero exactly on the imaginary axis (the
    /// measure-zero boundary case).
    LocallyActiveOnly,
}

/// Classification of one equilibrium, with the quantities that decided it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegimeLabel {
    pub kind: RegimeKind,
    pub min_re_y: f64,
    /// Frequency achieving the Re Y minimum (rad/s).
    pub argmin_omega: f64,
    /// Largest real part among the admittance zeros.
    pub max_re_zero: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryKind {
    LocalActivityEdge,
    HopfSupercritical,
    HopfSubcritical,
}

/// One located boundary along the equilibrium locus.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundaryPoint {
    pub kind: BoundaryKind,
    pub v_m: f64,
    pub g_kca: f64,
    /// Value of the crossing function at the reported point.
    pub crossing_value: f64,
    /// |Im| of the crossing zero pair at a Hopf point (rad/s).
    pub hopf_frequency: Option<f64>,
}

/// Angular-frequency band probed for local activity. Near both activity
/// edges Re Y decreases monotonically toward its high-frequency limit, so
/// the boundary voltages are fixed by the band's upper end; the published
/// boundary values lie on the ReY(2000 rad/s) = 0 locus to ten digits.
pub const ACTIVITY_OMEGA_MAX: f64 = 2000.0;

/// Global minimum of Re Y(iw) over w in [0, ACTIVITY_OMEGA_MAX] rad/s at
/// the I = 0 equilibrium with voltage `v_m`: coarse log-grid scan, then
/// golden-section refinement of the bracketing interval to a relative
/// width of 1e-10.
pub fn min_re_y(v_m: f64, params: &ChayParams) -> Result<(f64, f64)> {
    let g_kca = gkca_at_equilibrium(v_m, params)?;
    let y = composite_admittance(v_m, g_kca, params)?;
    let re_at = |w: f64| frequency_response(&y, w).map(|(re, _)| re);

    let mut grid = vec![0.0];
    grid.extend(
        default_omega_grid()
            .into_iter()
            .filter(|&w| w < ACTIVITY_OMEGA_MAX),
    );
    grid.push(ACTIVITY_OMEGA_MAX);
    let mut best_idx = 0;
    let mut best_val = f64::INFINITY;
    for (idx, &w) in grid.iter().enumerate() {
        let re = re_at(w)?;
        if re < best_val {
            best_val = re;
            best_idx = idx;
        }
    }

    let lo = if best_idx == 0 {
        grid[0]
    } else {
        grid[best_idx - 1]
    };
    let hi = if best_idx + 1 == grid.len() {
        grid[best_idx]
    } else {
        grid[best_idx + 1]
    };
    if lo == hi {
        return Ok((grid[best_idx], best_val));
    }
    let (w_star, re_star) = golden_min(&re_at, lo, hi)?;
    if re_star <= best_val {
        Ok((w_star, re_star))
    } else {
        Ok((grid[best_idx], best_val))
    }
}

/// Golden-section minimization with a relative-width stopping rule.
fn golden_min(f: &dyn Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    // Relative on the midpoint; absolute fallback for brackets touching 0.
    while hi - lo > 1e-10 * (0.5 * (lo + hi)).abs().max(1e-16) {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
        if hi - lo < f64::EPSILON * hi.abs().max(1e-300) {
            break;
        }
    }
    if f1 <= f2 {
        Ok((x1, f1))
    } else {
        Ok((x2, f2))
    }
}

/// Largest real part over the admittance zeros at the locus point `v_m`,
/// preferring the complex pair where one exists (the Hopf crossing
/// function); falls back to all zeros when the pair has merged into reals,
/// which only happens deep inside the positive region.
fn hopf_crossing(v_m: f64, params: &ChayParams) -> Result<(f64, f64)> {
    let set = spectral_set_on_locus(v_m, params)?;
    let complex: Vec<_> = set
        .zeros
        .iter()
        .filter(|z| z.im.abs() > 1e-9 * (1.0 + z.norm()))
        .collect();
    let (re, im) = if complex.is_empty() {
        let z = set
            .zeros
            .iter()
            .max_by(|a, b| a.re.partial_cmp(&b.re).unwrap())
            .unwrap();
        (z.re, z.im.abs())
    } else {
        let z = complex
            .iter()
            .max_by(|a, b| a.re.partial_cmp(&b.re).unwrap())
            .unwrap();
        (z.re, z.im.abs())
    };
    Ok((re, im))
}

/// Classify the I = 0 equilibrium at `v_m`.
pub fn classify(v_m: f64, params: &ChayParams) -> Result<RegimeLabel> {
    let (argmin_omega, min_re) = min_re_y(v_m, params)?;
    let (max_re_zero, _) = hopf_crossing(v_m, params)?;
    let kind = if min_re >= 0.0 {
        RegimeKind::LocallyPassive
    } else if max_re_zero < 0.0 {
        RegimeKind::EdgeOfChaos
    } else if max_re_zero > 0.0 {
        RegimeKind::UnstableLocallyActive
    } else {
        RegimeKind::LocallyActiveOnly
    };
    Ok(RegimeLabel {
        kind,
        min_re_y: min_re,
        argmin_omega,
        max_re_zero,
    })
}

/// One row of a regime scan table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanRow {
    pub v_m: f64,
    pub g_kca: f64,
    pub label: RegimeKind,
    pub min_re_y: f64,
    pub argmin_omega: f64,
    pub max_re_zero: f64,
}

/// Classify a uniform grid of locus voltages.
pub fn regime_scan(v_range: [f64; 2], samples: usize, params: &ChayParams) -> Result<Vec<ScanRow>> {
    if samples < 2 {
        return Err(ChayError::Config(format!(
            "scan needs at least 2 samples, got {samples}"
        )));
    }
    let [lo, hi] = v_range;
    let step = (hi - lo) / (samples - 1) as f64;
    let mut rows = Vec::with_capacity(samples);
    for k in 0..samples {
        let v_m = if k + 1 == samples {
            hi
        } else {
            lo + step * k as f64
        };
        let g_kca = gkca_at_equilibrium(v_m, params)?;
        let label = classify(v_m, params)?;
        rows.push(ScanRow {
            v_m,
            g_kca,
            label: label.kind,
            min_re_y: label.min_re_y,
            argmin_omega: label.argmin_omega,
            max_re_zero: label.max_re_zero,
        });
    }
    Ok(rows)
}

/// Search window for [`find_boundaries`], covering the full analysis band.
const BOUNDARY_BRACKET: [f64; 2] = [-55.0, -20.0];
const BOUNDARY_SCAN: usize = 700;

/// Locate the four analysis boundaries by bisection on `v_m` to 1e-10 mV:
/// the two zero crossings of min Re Y (local-activity edges) and the two
/// zero crossings of the complex-pair real part (Hopf points). Returned in
/// descending voltage; the higher-voltage Hopf point is the super-critical
/// one.
pub fn find_boundaries(params: &ChayParams) -> Result<Vec<BoundaryPoint>> {
    let [lo, hi] = BOUNDARY_BRACKET;
    let step = (hi - lo) / BOUNDARY_SCAN as f64;

    let f_act = |v: f64| -> Result<f64> { min_re_y(v, params).map(|(_, re)| re) };
    let f_hopf = |v: f64| -> Result<f64> { hopf_crossing(v, params).map(|(re, _)| re) };

    let mut act_profile = Vec::with_capacity(BOUNDARY_SCAN + 1);
    let mut hopf_profile = Vec::with_capacity(BOUNDARY_SCAN + 1);
    for k in 0..=BOUNDARY_SCAN {
        let v = if k == BOUNDARY_SCAN {
            hi
        } else {
            lo + step * k as f64
        };
        act_profile.push((v, f_act(v)?));
        hopf_profile.push((v, f_hopf(v)?));
    }

    let act_roots = bisect_sign_changes(&f_act, &act_profile)?;
    let hopf_roots = bisect_sign_changes(&f_hopf, &hopf_profile)?;
    if act_roots.len() != 2 {
        return Err(ChayError::BracketFailure {
            message: format!(
                "expected 2 local-activity edges in [{lo}, {hi}], found {}",
                act_roots.len()
            ),
            profile: act_profile,
        });
    }
    if hopf_roots.len() != 2 {
        return Err(ChayError::BracketFailure {
            message: format!(
                "expected 2 Hopf crossings in [{lo}, {hi}], found {}",
                hopf_roots.len()
            ),
            profile: hopf_profile,
        });
    }

    let mut points = Vec::with_capacity(4);
    for v in act_roots {
        points.push(BoundaryPoint {
            kind: BoundaryKind::LocalActivityEdge,
            v_m: v,
            g_kca: gkca_at_equilibrium(v, params)?,
            crossing_value: f_act(v)?,
            hopf_frequency: None,
        });
    }
    // Higher-voltage Hopf crossing spawns the stable small limit cycle.
    let v_super = hopf_roots[0].max(hopf_roots[1]);
    for v in hopf_roots {
        let (re, im) = hopf_crossing(v, params)?;
        points.push(BoundaryPoint {
            kind: if v == v_super {
                BoundaryKind::HopfSupercritical
            } else {
                BoundaryKind::HopfSubcritical
            },
            v_m: v,
            g_kca: gkca_at_equilibrium(v, params)?,
            crossing_value: re,
            hopf_frequency: Some(im),
        });
    }
    points.sort_by(|a, b| b.v_m.partial_cmp(&a.v_m).unwrap());
    Ok(points)
}

fn bisect_sign_changes(f: &dyn Fn(f64) -> Result<f64>, profile: &[(f64, f64)]) -> Result<Vec<f64>> {
    let mut roots = Vec::new();
    for w in profile.windows(2) {
        let [(v_lo, f_lo), (v_hi, f_hi)] = [w[0], w[1]];
        if f_lo == 0.0 {
            roots.push(v_lo);
            continue;
        }
        if f_hi != 0.0 && f_lo.signum() != f_hi.signum() {
            let (mut lo, mut hi, mut fl) = (v_lo, v_hi, f_lo);
            while hi - lo > 1e-10 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = f(mid)?;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fl.signum() != fm.signum() {
                    hi = mid;
                } else {
                    lo = mid;
                    fl = fm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    Ok(roots)
}
