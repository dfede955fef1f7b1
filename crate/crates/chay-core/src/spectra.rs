//! Poles and zeros of the composite admittance, Jacobian eigenvalues, and
//! the zero/eigenvalue identity check.
//!
//! The admittance denominator factors structurally into the two memristor
//! branch poles, so both poles are real for every operating voltage. On the
//! I = 0 equilibrium locus the numerator zeros are the natural frequencies
//! of the unforced membrane and coincide with the Jacobian eigenvalues;
//! the two quantities are computed through fully independent code paths
//! (circuit algebra vs. state-matrix characteristic polynomial) and act as
//! mutual oracles.

use num_complex::Complex64;
use serde::Serialize;

use crate::equilibrium::EquilibriumPoint;
use crate::model::jacobian;
use crate::smallsignal::{composite_admittance, RationalAdmittance};
use crate::{ChayError, ChayParams, Result};

/// Poles, zeros, and Jacobian eigenvalues at one equilibrium.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralSet {
    pub poles: [Complex64; 2],
    pub zeros: [Complex64; 3],
    pub eigenvalues: [Complex64; 3],
    pub v_m: f64,
    pub g_kca: f64,
    /// Leading factor b3/a2 of the factored admittance.
    pub k: f64,
}

/// Roots of the quadratic a2 s^2 + a1 s + a0, sorted by real part.
pub fn solve_quadratic(a2: f64, a1: f64, a0: f64) -> Result<[Complex64; 2]> {
    if a2 == 0.0 {
        return Err(ChayError::Degenerate(
            "quadratic leading coefficient is zero".into(),
        ));
    }
    let disc = a1 * a1 - 4.0 * a2 * a0;
    let mut roots = if disc >= 0.0 {
        let sq = disc.sqrt();
        // Avoid cancellation: compute the large-magnitude root first.
        let q = -0.5 * (a1 + a1.signum_or_one() * sq);
        let r1 = q / a2;
        let r2 = if q != 0.0 { a0 / q } else { 0.0 };
        [Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let re = -a1 / (2.0 * a2);
        let im = (-disc).sqrt() / (2.0 * a2);
        [Complex64::new(re, -im.abs()), Complex64::new(re, im.abs())]
    };
    roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    Ok(roots)
}

trait SignumOrOne {
    fn signum_or_one(self) -> f64;
}

impl SignumOrOne for f64 {
    fn signum_or_one(self) -> f64 {
        if self >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

fn eval_poly(c: &[f64; 4], z: Complex64) -> Complex64 {
    ((z * c[0] + c[1]) * z + c[2]) * z + c[3]
}

fn eval_poly_deriv(c: &[f64; 4], z: Complex64) -> Complex64 {
    (z * 3.0 * c[0] + 2.0 * c[1]) * z + c[2]
}

/// One Newton step on the original cubic, skipped where the derivative is
/// too small to be trustworthy (near a multiple root the unpolished value
/// is already the best available).
fn newton_polish(c: &[f64; 4], z: Complex64) -> Complex64 {
    let f = eval_poly(c, z);
    let df = eval_poly_deriv(c, z);
    let scale = c.iter().fold(0.0_f64, |m, v| m.max(v.abs())) * (1.0 + z.norm()).powi(2);
    if df.norm() > 1e-9 * scale {
        let step = f / df;
        if step.norm() < 0.1 * (1.0 + z.norm()) {
            return z - step;
        }
    }
    z
}

/// Roots of the cubic c3 s^3 + c2 s^2 + c1 s + c0 via the trigonometric /
/// Cardano closed forms on the depressed cubic, each root polished by one
/// Newton step, sorted lexicographically by (re, im).
pub fn solve_cubic(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<[Complex64; 3]> {
    if c3 == 0.0 {
        return Err(ChayError::Degenerate(
            "cubic leading coefficient is zero".into(),
        ));
    }
    let coeffs = [c3, c2, c1, c0];
    let p = c2 / c3;
    let q = c1 / c3;
    let r = c0 / c3;
    // Depressed form t^3 + a t + b with s = t - p/3.
    let a = q - p * p / 3.0;
    let b = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
    let shift = -p / 3.0;
    let disc = -4.0 * a * a * a - 27.0 * b * b;

    let mut roots: [Complex64; 3];
    if a == 0.0 && b == 0.0 {
        roots = [Complex64::new(shift, 0.0); 3];
    } else if disc >= 0.0 {
        // Three real roots.
        let m = 2.0 * (-a / 3.0).max(0.0).sqrt();
        let cos_arg = if m == 0.0 {
            0.0
        } else {
            (3.0 * b / (a * m)).clamp(-1.0, 1.0)
        };
        let theta = cos_arg.acos() / 3.0;
        let two_pi_3 = 2.0 * std::f64::consts::PI / 3.0;
        roots = [
            Complex64::new(m * theta.cos() + shift, 0.0),
            Complex64::new(m * (theta - two_pi_3).cos() + shift, 0.0),
            Complex64::new(m * (theta + two_pi_3).cos() + shift, 0.0),
        ];
    } else {
        // One real root (Cardano, cancellation-free) plus a conjugate pair
        // from the deflated quadratic.
        let half_b = b / 2.0;
        let delta = (half_b * half_b + a * a * a / 27.0).sqrt();
        let u = if b >= 0.0 {
            -(half_b + delta).cbrt()
        } else {
            (-half_b + delta).cbrt()
        };
        let v = if u != 0.0 { -a / (3.0 * u) } else { 0.0 };
        let t1 = u + v;
        let im = (3.0 * t1 * t1 + 4.0 * a).max(0.0).sqrt() / 2.0;
        roots = [
            Complex64::new(t1 + shift, 0.0),
            Complex64::new(-t1 / 2.0 + shift, -im),
            Complex64::new(-t1 / 2.0 + shift, im),
        ];
    }

    for root in roots.iter_mut() {
        *root = newton_polish(&coeffs, *root);
    }
    // Re-impose exact conjugacy on the complex pair after polishing.
    enforce_conjugate_pairs(&mut roots);
    sort_lex(&mut roots);
    Ok(roots)
}

fn enforce_conjugate_pairs(roots: &mut [Complex64; 3]) {
    let mut idx: Vec<usize> = (0..3).filter(|&i| roots[i].im != 0.0).collect();
    if idx.len() == 2 {
        let (i, j) = (idx[0], idx[1]);
        let avg = (roots[i] + roots[j].conj()) / 2.0;
        roots[i] = Complex64::new(avg.re, -avg.im.abs());
        roots[j] = Complex64::new(avg.re, avg.im.abs());
    } else if idx.len() == 1 || idx.len() == 3 {
        // A nominally real root picked up rounding imaginary part during
        // polishing; flatten the smallest offender(s).
        idx.sort_by(|&a, &b| roots[a].im.abs().partial_cmp(&roots[b].im.abs()).unwrap());
        while idx.len() % 2 == 1 {
            let i = idx.remove(0);
            roots[i] = Complex64::new(roots[i].re, 0.0);
        }
        if idx.len() == 2 {
            let (i, j) = (idx[0], idx[1]);
            let avg = (roots[i] + roots[j].conj()) / 2.0;
            roots[i] = Complex64::new(avg.re, -avg.im.abs());
            roots[j] = Complex64::new(avg.re, avg.im.abs());
        }
    }
}

/// Lexicographic (re, im) ordering used everywhere roots are compared.
pub fn sort_lex(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}

/// Poles of the admittance: roots of its quadratic denominator.
pub fn poles(y: &RationalAdmittance) -> Result<[Complex64; 2]> {
    solve_quadratic(y.a[0], y.a[1], y.a[2])
}

/// Zeros of the admittance: roots of its cubic numerator.
pub fn zeros(y: &RationalAdmittance) -> Result<[Complex64; 3]> {
    solve_cubic(y.b[0], y.b[1], y.b[2], y.b[3])
}

/// Eigenvalues of the model Jacobian at an equilibrium, through the 3x3
/// characteristic cubic (trace / principal-minor sum / determinant).
pub fn jacobian_eigenvalues(
    point: &EquilibriumPoint,
    params: &ChayParams,
) -> Result<[Complex64; 3]> {
    let p = ChayParams {
        g_kca: point.g_kca,
        ..*params
    };
    let j = jacobian(&point.state(), &p)?;
    let tr = j[0][0] + j[1][1] + j[2][2];
    let minor_sum = j[0][0] * j[1][1] - j[0][1] * j[1][0] + j[0][0] * j[2][2] - j[0][2] * j[2][0]
        + j[1][1] * j[2][2]
        - j[1][2] * j[2][1];
    let det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1])
        - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
        + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
    solve_cubic(1.0, -tr, minor_sum, -det)
}

/// Full spectral picture at the I = 0 equilibrium with voltage `v_m`.
pub fn spectral_set_on_locus(v_m: f64, params: &ChayParams) -> Result<SpectralSet> {
    let point = EquilibriumPoint::at(v_m, params)?;
    let y = composite_admittance(v_m, point.g_kca, params)?;
    Ok(SpectralSet {
        poles: poles(&y)?,
        zeros: zeros(&y)?,
        eigenvalues: jacobian_eigenvalues(&point, params)?,
        v_m,
        g_kca: point.g_kca,
        k: y.b[0] / y.a[0],
    })
}

/// Maximum relative deviation between the sorted admittance zeros and the
/// sorted Jacobian eigenvalues at the I = 0 equilibrium with voltage `v_m`.
/// Only defined on the equilibrium locus; the conductance is derived
/// internally, so an unreachable voltage is a contract error.
pub fn zero_eigen_deviation(v_m: f64, params: &ChayParams) -> Result<f64> {
    let set = spectral_set_on_locus(v_m, params).map_err(|e| match e {
        ChayError::SingularInversion(msg) => {
            ChayError::Contract(format!("not on the equilibrium locus: {msg}"))
        }
        other => other,
    })?;
    let dev = set
        .zeros
        .iter()
        .zip(set.eigenvalues.iter())
        .map(|(z, l)| (z - l).norm() / l.norm().max(1.0))
        .fold(0.0, f64::max);
    Ok(dev)
}
