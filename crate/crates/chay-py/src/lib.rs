//! Python bindings: the model's main types and operations exposed as plain
//! functions returning dicts/lists, plus a `Params` class for parameter
//! overrides.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use chay_core::channels::{drive_sinusoid, ChannelElement, DriveConfig};
use chay_core::dynamics::{self, AttractorKind, ProbeOutcome};
use chay_core::equilibrium;
use chay_core::gating;
use chay_core::model;
use chay_core::regimes;
use chay_core::smallsignal;
use chay_core::spectra;
use chay_core::{ChayError, ChayParams, ChayState};

fn err(e: ChayError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Model parameter set. Constructed with published defaults; `gkca` is the
/// free parameter. Other fields are reachable through `set`.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Params {
    inner: ChayParams,
}

#[pymethods]
impl Params {
    #[new]
    #[pyo3(signature = (gkca=None))]
    fn new(gkca: Option<f64>) -> Self {
        let mut inner = ChayParams::default();
        if let Some(g) = gkca {
            inner.g_kca = g;
        }
        Self { inner }
    }

    #[getter]
    fn gkca(&self) -> f64 {
        self.inner.g_kca
    }

    #[setter]
    fn set_gkca(&mut self, value: f64) {
        self.inner.g_kca = value;
    }

    /// Override one parameter by field name (e.g. "e_k", "g_l", "rho").
    fn set(&mut self, name: &str, value: f64) -> PyResult<()> {
        match name {
            "c_m" => self.inner.c_m = value,
            "e_k" => self.inner.e_k = value,
            "e_i" => self.inner.e_i = value,
            "e_l" => self.inner.e_l = value,
            "e_ca" => self.inner.e_ca = value,
            "g_i" => self.inner.g_i = value,
            "g_kv" => self.inner.g_kv = value,
            "g_l" => self.inner.g_l = value,
            "g_kca" => self.inner.g_kca = value,
            "k_ca" => self.inner.k_ca = value,
            "rho" => self.inner.rho = value,
            "lambda_n" => self.inner.lambda_n = value,
            "i_ext" => self.inner.i_ext = value,
            _ => return Err(PyValueError::new_err(format!("unknown parameter {name}"))),
        }
        self.inner.validate().map_err(err)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        d.set_item("c_m", self.inner.c_m)?;
        d.set_item("e_k", self.inner.e_k)?;
        d.set_item("e_i", self.inner.e_i)?;
        d.set_item("e_l", self.inner.e_l)?;
        d.set_item("e_ca", self.inner.e_ca)?;
        d.set_item("g_i", self.inner.g_i)?;
        d.set_item("g_kv", self.inner.g_kv)?;
        d.set_item("g_l", self.inner.g_l)?;
        d.set_item("g_kca", self.inner.g_kca)?;
        d.set_item("k_ca", self.inner.k_ca)?;
        d.set_item("rho", self.inner.rho)?;
        d.set_item("lambda_n", self.inner.lambda_n)?;
        d.set_item("i_ext", self.inner.i_ext)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Params(gkca={})", self.inner.g_kca)
    }
}

fn resolve(params: Option<&Params>, gkca: Option<f64>) -> ChayParams {
    let mut p = params.map(|p| p.inner).unwrap_or_default();
    if let Some(g) = gkca {
        p.g_kca = g;
    }
    p
}

/// Gate opening/closing rates, steady states, and tau_n at voltage `v` (mV).
#[pyfunction]
#[pyo3(signature = (v, params=None))]
fn gate_kinetics<'py>(
    py: Python<'py>,
    v: f64,
    params: Option<&Params>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = resolve(params, None);
    let k = gating::gate_kinetics(v, &p).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("alpha_n", k.alpha_n)?;
    d.set_item("beta_n", k.beta_n)?;
    d.set_item("alpha_m", k.alpha_m)?;
    d.set_item("beta_m", k.beta_m)?;
    d.set_item("alpha_h", k.alpha_h)?;
    d.set_item("beta_h", k.beta_h)?;
    d.set_item("n_inf", k.n_inf)?;
    d.set_item("m_inf", k.m_inf)?;
    d.set_item("h_inf", k.h_inf)?;
    d.set_item("tau_n", k.tau_n)?;
    Ok(d)
}

/// Time derivative (dV/dt, dn/dt, dCa/dt) at a state.
#[pyfunction]
#[pyo3(signature = (v, n, ca, gkca=None, params=None))]
fn rhs(
    v: f64,
    n: f64,
    ca: f64,
    gkca: Option<f64>,
    params: Option<&Params>,
) -> PyResult<(f64, f64, f64)> {
    let p = resolve(params, gkca);
    let d = model::rhs(&ChayState::new(v, n, ca), &p).map_err(err)?;
    Ok((d.dv, d.dn, d.dca))
}

/// Analytic Jacobian of the right-hand side, row-major 3x3.
#[pyfunction]
#[pyo3(signature = (v, n, ca, gkca=None, params=None))]
fn jacobian(
    v: f64,
    n: f64,
    ca: f64,
    gkca: Option<f64>,
    params: Option<&Params>,
) -> PyResult<Vec<Vec<f64>>> {
    let p = resolve(params, gkca);
    let j = model::jacobian(&ChayState::new(v, n, ca), &p).map_err(err)?;
    Ok(j.iter().map(|row| row.to_vec()).collect())
}

/// Stationary gate activation and calcium concentration at voltage `v`.
#[pyfunction]
#[pyo3(signature = (v, params=None))]
fn equilibrium_gates(v: f64, params: Option<&Params>) -> PyResult<(f64, f64)> {
    equilibrium::equilibrium_gates(v, &resolve(params, None)).map_err(err)
}

/// External DC current holding the membrane at `v` for the given `gkca`.
#[pyfunction]
#[pyo3(signature = (v, gkca, params=None))]
fn dc_current(v: f64, gkca: f64, params: Option<&Params>) -> PyResult<f64> {
    equilibrium::dc_current(v, gkca, &resolve(params, None)).map_err(err)
}

/// The conductance making `v` an I = 0 equilibrium.
#[pyfunction]
#[pyo3(signature = (v, params=None))]
fn gkca_at_equilibrium(v: f64, params: Option<&Params>) -> PyResult<f64> {
    equilibrium::gkca_at_equilibrium(v, &resolve(params, None)).map_err(err)
}

/// All DC roots of I(V) = i inside [lo, hi], ascending.
#[pyfunction]
#[pyo3(signature = (i, gkca, lo, hi, params=None))]
fn solve_v(i: f64, gkca: f64, lo: f64, hi: f64, params: Option<&Params>) -> PyResult<Vec<f64>> {
    equilibrium::solve_v(i, gkca, [lo, hi], &resolve(params, None)).map_err(err)
}

/// Rational admittance coefficients at (vm, gkca); gkca defaults to the
/// I = 0 locus pairing.
#[pyfunction]
#[pyo3(signature = (vm, gkca=None, params=None))]
fn admittance<'py>(
    py: Python<'py>,
    vm: f64,
    gkca: Option<f64>,
    params: Option<&Params>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = resolve(params, None);
    let g = match gkca {
        Some(g) => g,
        None => equilibrium::gkca_at_equilibrium(vm, &p).map_err(err)?,
    };
    let y = smallsignal::composite_admittance(vm, g, &p).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("b3", y.b[0])?;
    d.set_item("b2", y.b[1])?;
    d.set_item("b1", y.b[2])?;
    d.set_item("b0", y.b[3])?;
    d.set_item("a2", y.a[0])?;
    d.set_item("a1", y.a[1])?;
    d.set_item("a0", y.a[2])?;
    d.set_item("Vm", y.v_m)?;
    d.set_item("gKCa", y.g_kca)?;
    Ok(d)
}

/// (Re Y, Im Y) at angular frequency `omega` for the operating point.
#[pyfunction]
#[pyo3(signature = (vm, omega, gkca=None, params=None))]
fn frequency_response(
    vm: f64,
    omega: f64,
    gkca: Option<f64>,
    params: Option<&Params>,
) -> PyResult<(f64, f64)> {
    let p = resolve(params, None);
    let g = match gkca {
        Some(g) => g,
        None => equilibrium::gkca_at_equilibrium(vm, &p).map_err(err)?,
    };
    let y = smallsignal::composite_admittance(vm, g, &p).map_err(err)?;
    smallsignal::frequency_response(&y, omega).map_err(err)
}

fn pairs(values: &[num_complex::Complex64]) -> Vec<(f64, f64)> {
    values.iter().map(|z| (z.re, z.im)).collect()
}

/// Poles, zeros, and Jacobian eigenvalues at the I = 0 equilibrium.
#[pyfunction]
#[pyo3(signature = (vm, params=None))]
fn spectral_set<'py>(
    py: Python<'py>,
    vm: f64,
    params: Option<&Params>,
) -> PyResult<Bound<'py, PyDict>> {
    let set = spectra::spectral_set_on_locus(vm, &resolve(params, None)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("Vm", set.v_m)?;
    d.set_item("gKCa", set.g_kca)?;
    d.set_item("poles", pairs(&set.poles))?;
    d.set_item("zeros", pairs(&set.zeros))?;
    d.set_item("eigenvalues", pairs(&set.eigenvalues))?;
    d.set_item("k", set.k)?;
    Ok(d)
}

/// Max relative deviation between admittance zeros and Jacobian eigenvalues.
#[pyfunction]
#[pyo3(signature = (vm, params=None))]
fn zero_eigen_deviation(vm: f64, params: Option<&Params>) -> PyResult<f64> {
    spectra::zero_eigen_deviation(vm, &resolve(params, None)).map_err(err)
}

/// (omega*, min Re Y) over the activity band at the locus point `vm`.
#[pyfunction]
#[pyo3(signature = (vm, params=None))]
fn min_re_y(vm: f64, params: Option<&Params>) -> PyResult<(f64, f64)> {
    regimes::min_re_y(vm, &resolve(params, None)).map_err(err)
}

/// Regime classification of the locus point `vm`.
#[pyfunction]
#[pyo3(signature = (vm, params=None))]
fn classify_regime<'py>(
    py: Python<'py>,
    vm: f64,
    params: Option<&Params>,
) -> PyResult<Bound<'py, PyDict>> {
    let label = regimes::classify(vm, &resolve(params, None)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("kind", format!("{:?}", label.kind))?;
    d.set_item("min_re_y", label.min_re_y)?;
    d.set_item("argmin_omega", label.argmin_omega)?;
    d.set_item("max_re_zero", label.max_re_zero)?;
    Ok(d)
}

/// The four regime boundaries: two activity edges and two Hopf points.
#[pyfunction]
#[pyo3(signature = (params=None))]
fn find_boundaries<'py>(
    py: Python<'py>,
    params: Option<&Params>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let boundaries = regimes::find_boundaries(&resolve(params, None)).map_err(err)?;
    boundaries
        .iter()
        .map(|b| {
            let d = PyDict::new(py);
            d.set_item("kind", format!("{:?}", b.kind))?;
            d.set_item("Vm", b.v_m)?;
            d.set_item("gKCa", b.g_kca)?;
            d.set_item("crossing_value", b.crossing_value)?;
            d.set_item("hopf_frequency", b.hopf_frequency)?;
            Ok(d)
        })
        .collect()
}

/// Integrate the model; returns {"t", "v", "n", "ca"} sample lists.
#[pyfunction]
#[pyo3(signature = (gkca, v0=-50.0, n0=0.1, ca0=0.48, dt=1e-4, t=60.0, params=None))]
#[allow(clippy::too_many_arguments)]
fn simulate<'py>(
    py: Python<'py>,
    gkca: f64,
    v0: f64,
    n0: f64,
    ca0: f64,
    dt: f64,
    t: f64,
    params: Option<&Params>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = resolve(params, Some(gkca));
    let traj = dynamics::integrate(&ChayState::new(v0, n0, ca0), &p, dt, t).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("t", traj.t)?;
    d.set_item("v", traj.v)?;
    d.set_item("n", traj.n)?;
    d.set_item("ca", traj.ca)?;
    Ok(d)
}

/// Integrate and classify the attractor; returns {"kind", "period", ...}.
#[pyfunction]
#[pyo3(signature = (gkca, v0=-50.0, n0=0.1, ca0=0.48, dt=1e-4, t=120.0,
                    transient_fraction=0.5, params=None))]
#[allow(clippy::too_many_arguments)]
fn classify<'py>(
    py: Python<'py>,
    gkca: f64,
    v0: f64,
    n0: f64,
    ca0: f64,
    dt: f64,
    t: f64,
    transient_fraction: f64,
    params: Option<&Params>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = resolve(params, Some(gkca));
    let traj = dynamics::integrate(&ChayState::new(v0, n0, ca0), &p, dt, t).map_err(err)?;
    let label = dynamics::classify_attractor(&traj, transient_fraction).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("kind", format!("{:?}", label.kind))?;
    d.set_item(
        "period",
        match label.kind {
            AttractorKind::PeriodK(k) => Some(k),
            _ => None,
        },
    )?;
    d.set_item("peak_count", label.evidence.peak_count)?;
    d.set_item("cluster_count", label.evidence.cluster_count)?;
    d.set_item("distinct_peak_levels", label.evidence.distinct_peak_levels)?;
    d.set_item("final_drift", label.evidence.final_drift)?;
    Ok(d)
}

/// Bifurcation probe: "ConvergesToEquilibrium", "StableLimitCycle", or
/// "Spikes". The initial state defaults to the equilibrium displaced by
/// +0.5 mV.
#[pyfunction]
#[pyo3(signature = (gkca, v0=None, n0=None, ca0=None, t=3000.0, dt=1e-3, params=None))]
#[allow(clippy::too_many_arguments)]
fn hopf_probe(
    gkca: f64,
    v0: Option<f64>,
    n0: Option<f64>,
    ca0: Option<f64>,
    t: f64,
    dt: f64,
    params: Option<&Params>,
) -> PyResult<String> {
    let p = resolve(params, None);
    let initial = match (v0, n0, ca0) {
        (Some(v), Some(n), Some(ca)) => ChayState::new(v, n, ca),
        (None, None, None) => dynamics::equilibrium_initial(gkca, 0.5, &p).map_err(err)?,
        _ => {
            return Err(PyValueError::new_err(
                "pass all of v0, n0, ca0 or none of them",
            ))
        }
    };
    let out = dynamics::hopf_probe(gkca, &initial, t, dt, &p).map_err(err)?;
    Ok(match out {
        ProbeOutcome::ConvergesToEquilibrium => "ConvergesToEquilibrium",
        ProbeOutcome::StableLimitCycle => "StableLimitCycle",
        ProbeOutcome::Spikes => "Spikes",
    }
    .to_string())
}

/// Drive one channel element ("kv", "kca", "mixed") with a sinusoid and
/// return the loop fingerprint metrics.
#[pyfunction]
#[pyo3(signature = (element, amplitude, frequency, cycles=6, gkca=None,
                    samples_per_cycle=1000, initial=None, params=None))]
#[allow(clippy::too_many_arguments)]
fn hysteresis<'py>(
    py: Python<'py>,
    element: &str,
    amplitude: f64,
    frequency: f64,
    cycles: usize,
    gkca: Option<f64>,
    samples_per_cycle: usize,
    initial: Option<f64>,
    params: Option<&Params>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = resolve(params, gkca);
    let elem = match element {
        "kv" => ChannelElement::kv(p),
        "kca" => ChannelElement::kca(p),
        "mixed" => ChannelElement::mixed(p),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown element \"{other}\" (want kv, kca, or mixed)"
            )))
        }
    };
    let cfg = DriveConfig {
        amplitude,
        frequency,
        cycles,
        samples_per_cycle,
    };
    let lp = drive_sinusoid(&elem, cfg, initial).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("frequency_hz", lp.frequency)?;
    d.set_item("amplitude_mv", lp.amplitude)?;
    d.set_item("origin_residual", lp.metrics.origin_residual)?;
    d.set_item("lobe_area", lp.metrics.lobe_area)?;
    d.set_item("multivalue_spread", lp.metrics.multivalue_spread)?;
    d.set_item("max_abs_i", lp.metrics.max_abs_i)?;
    d.set_item("samples", lp.samples.len())?;
    Ok(d)
}

#[pymodule]
fn chay_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Params>()?;
    m.add_function(wrap_pyfunction!(gate_kinetics, m)?)?;
    m.add_function(wrap_pyfunction!(rhs, m)?)?;
    m.add_function(wrap_pyfunction!(jacobian, m)?)?;
    m.add_function(wrap_pyfunction!(equilibrium_gates, m)?)?;
    m.add_function(wrap_pyfunction!(dc_current, m)?)?;
    m.add_function(wrap_pyfunction!(gkca_at_equilibrium, m)?)?;
    m.add_function(wrap_pyfunction!(solve_v, m)?)?;
    m.add_function(wrap_pyfunction!(admittance, m)?)?;
    m.add_function(wrap_pyfunction!(frequency_response, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_set, m)?)?;
    m.add_function(wrap_pyfunction!(zero_eigen_deviation, m)?)?;
    m.add_function(wrap_pyfunction!(min_re_y, m)?)?;
    m.add_function(wrap_pyfunction!(classify_regime, m)?)?;
    m.add_function(wrap_pyfunction!(find_boundaries, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(hopf_probe, m)?)?;
    m.add_function(wrap_pyfunction!(hysteresis, m)?)?;
    Ok(())
}
