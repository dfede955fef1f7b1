//! Command-line front end: every analysis as a subcommand with CSV/JSON
//! output. Each output file opens with a `# {...}` JSON header carrying the
//! resolved configuration, so rerunning with that configuration reproduces
//! the file byte for byte.
//!
//! Exit codes: 0 success, 1 numeric/domain failure, 2 usage error.

mod reproduce;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use chay_core::channels::{drive_sinusoid, ChannelElement, DriveConfig};
use chay_core::dynamics::{classify_attractor, integrate, AttractorKind, Trajectory};
use chay_core::equilibrium::{dc_curve, gkca_at_equilibrium, gkca_curve};
use chay_core::io::{write_csv_with_comments, write_json};
use chay_core::regimes::{find_boundaries, regime_scan};
use chay_core::smallsignal::{composite_admittance, default_omega_grid, frequency_sweep};
use chay_core::spectra::spectral_set_on_locus;
use chay_core::{ChayError, ChayParams, ChayState};

const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "chay",
    version,
    about = "Numerical laboratory for the memristive Chay excitable-cell model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// JSON config file ({"params": {...}}); explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Calcium-sensitive potassium conductance (1/s); may be negative.
    #[arg(long, allow_negative_numbers = true, global = true)]
    gkca: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the model and write a t,V,n,Ca trajectory CSV.
    Simulate {
        #[command(flatten)]
        common: CommonOpts,
        /// Initial membrane potential (mV).
        #[arg(long, default_value_t = -50.0, allow_negative_numbers = true)]
        v0: f64,
        /// Initial gate activation.
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        n0: f64,
        /// Initial calcium concentration.
        #[arg(long, default_value_t = 0.48, allow_negative_numbers = true)]
        ca0: f64,
        /// Integration step (s).
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        /// Horizon (s).
        #[arg(long, default_value_t = 60.0)]
        t: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify the attractor of a recorded trajectory CSV.
    Classify {
        #[command(flatten)]
        common: CommonOpts,
        /// Trajectory CSV produced by `simulate`.
        input: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        transient_fraction: f64,
        /// Output JSON path; prints to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Drive one channel element with a sinusoid and record the v-i loop.
    Hysteresis {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, value_enum)]
        element: ElementArg,
        /// Peak drive voltage (mV).
        #[arg(long, default_value_t = 100.0)]
        amplitude: f64,
        /// Drive frequency (Hz).
        #[arg(long)]
        frequency: f64,
        #[arg(long, default_value_t = 6)]
        cycles: usize,
        #[arg(long, default_value_t = 1000)]
        samples_per_cycle: usize,
        /// Initial internal state; element rest state when omitted.
        #[arg(long, allow_negative_numbers = true)]
        initial: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export a DC curve: the V-I characteristic or the equilibrium g_kca(V) locus.
    DcCurve {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, value_enum, default_value_t = CurveKind::Vi)]
        kind: CurveKind,
        #[arg(long, allow_negative_numbers = true)]
        v_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        v_max: f64,
        #[arg(long, default_value_t = 1201)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Small-signal admittance coefficients at one operating point.
    SmallSignal {
        #[command(flatten)]
        common: CommonOpts,
        /// Operating membrane voltage (mV); g_kca derives from the I = 0
        /// locus unless --gkca overrides it.
        #[arg(long, allow_negative_numbers = true)]
        vm: f64,
        /// Coefficient JSON output.
        #[arg(long)]
        out: PathBuf,
        /// Optional omega,ReY,ImY frequency-sweep CSV.
        #[arg(long)]
        sweep: Option<PathBuf>,
    },
    /// Poles, zeros, and Jacobian eigenvalues on the equilibrium locus.
    Spectra {
        #[command(flatten)]
        common: CommonOpts,
        /// Single operating voltage (mV) -> JSON output.
        #[arg(long, allow_negative_numbers = true)]
        vm: Option<f64>,
        /// Sweep range start (mV) -> CSV output.
        #[arg(long, allow_negative_numbers = true)]
        v_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        v_max: Option<f64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify regimes over a locus voltage range.
    Scan {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, allow_negative_numbers = true)]
        v_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        v_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Locate the two local-activity edges and the two Hopf points.
    FindBoundaries {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        out: PathBuf,
    },
    /// Regenerate the data behind a published figure or table and check it.
    Reproduce {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(value_enum)]
        figure: reproduce::FigureId,
        /// Output directory (default `reproduce-<id>`).
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ElementArg {
    Kv,
    Kca,
    Mixed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveKind {
    /// DC V-I characteristic at fixed g_kca.
    Vi,
    /// Equilibrium conductance g_kca(V) on the I = 0 locus.
    Gkca,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                ChayError::Config(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

/// Resolve parameters: defaults, then config file, then explicit flags.
fn resolve_params(common: &CommonOpts) -> Result<ChayParams, ChayError> {
    let mut value = serde_json::to_value(ChayParams::default()).unwrap();
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)?;
        let file: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| ChayError::Config(format!("bad config file {}: {e}", path.display())))?;
        if let Some(overrides) = file.get("params") {
            let obj = overrides.as_object().ok_or_else(|| {
                ChayError::Config("config \"params\" must be a JSON object".into())
            })?;
            for (key, v) in obj {
                if value.get(key).is_none() {
                    return Err(ChayError::Config(format!("unknown parameter \"{key}\"")));
                }
                value[key.as_str()] = v.clone();
            }
        }
    }
    let mut params: ChayParams = serde_json::from_value(value)
        .map_err(|e| ChayError::Config(format!("bad parameter value: {e}")))?;
    if let Some(g) = common.gkca {
        params.g_kca = g;
    }
    params.validate()?;
    Ok(params)
}

fn header(command: &str, params: &ChayParams, options: serde_json::Value) -> serde_json::Value {
    json!({
        "artifact": "chay",
        "version": ARTIFACT_VERSION,
        "command": command,
        "params": params,
        "options": options,
    })
}

fn run(command: Command) -> Result<(), ChayError> {
    match command {
        Command::Simulate {
            common,
            v0,
            n0,
            ca0,
            dt,
            t,
            out,
        } => {
            let params = resolve_params(&common)?;
            let traj = integrate(&ChayState::new(v0, n0, ca0), &params, dt, t)?;
            let hdr = header(
                "simulate",
                &params,
                json!({"v0": v0, "n0": n0, "ca0": ca0, "dt": dt, "t": t}),
            );
            traj.write_csv(&out, &hdr)?;
            eprintln!("wrote {} samples to {}", traj.len(), out.display());
            Ok(())
        }
        Command::Classify {
            common,
            input,
            transient_fraction,
            out,
        } => {
            let traj = read_trajectory(&input, &common)?;
            let label = classify_attractor(&traj, transient_fraction)?;
            let period = match label.kind {
                AttractorKind::PeriodK(k) => Some(k),
                _ => None,
            };
            let report = json!({
                "kind": format!("{:?}", label.kind),
                "period": period,
                "evidence": label.evidence,
                "input": input.display().to_string(),
                "transient_fraction": transient_fraction,
            });
            match out {
                Some(path) => write_json(path, &report)?,
                None => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
            }
            Ok(())
        }
        Command::Hysteresis {
            common,
            element,
            amplitude,
            frequency,
            cycles,
            samples_per_cycle,
            initial,
            out,
        } => {
            let params = resolve_params(&common)?;
            let elem = match element {
                ElementArg::Kv => ChannelElement::kv(params),
                ElementArg::Kca => ChannelElement::kca(params),
                ElementArg::Mixed => ChannelElement::mixed(params),
            };
            let cfg = DriveConfig {
                amplitude,
                frequency,
                cycles,
                samples_per_cycle,
            };
            let lp = drive_sinusoid(&elem, cfg, initial)?;
            let hdr = header(
                "hysteresis",
                &params,
                json!({
                    "element": format!("{:?}", elem.kind),
                    "amplitude": amplitude,
                    "frequency": frequency,
                    "cycles": cycles,
                    "samples_per_cycle": samples_per_cycle,
                    "initial": initial,
                }),
            );
            lp.write_csv(&out, &hdr)?;
            let sidecar = out.with_extension("metrics.json");
            write_json(&sidecar, &lp.metrics_json())?;
            eprintln!("wrote {} and {}", out.display(), sidecar.display());
            Ok(())
        }
        Command::DcCurve {
            common,
            kind,
            v_min,
            v_max,
            samples,
            out,
        } => {
            let params = resolve_params(&common)?;
            let (rows, columns, opts) = match kind {
                CurveKind::Vi => (
                    dc_curve(params.g_kca, [v_min, v_max], samples, &params)?,
                    ["V_mV", "I"],
                    json!({"kind": "vi", "v_min": v_min, "v_max": v_max, "samples": samples}),
                ),
                CurveKind::Gkca => (
                    gkca_curve([v_min, v_max], samples, &params)?,
                    ["V_mV", "gKCa_per_s"],
                    json!({"kind": "gkca", "v_min": v_min, "v_max": v_max, "samples": samples}),
                ),
            };
            let mut comments = vec![header("dc-curve", &params, opts).to_string()];
            // Stationary calcium is negative above the calcium reversal;
            // the DC algebra extends there but the memductance does not.
            let mut params_note = format!("params: {}", serde_json::to_value(params).unwrap());
            if v_max > params.e_ca {
                params_note.push_str(&format!(
                    " (stationary calcium negative above V = {} mV)",
                    params.e_ca
                ));
            }
            comments.push(params_note);
            write_csv_with_comments(
                &out,
                &comments,
                &columns,
                rows.iter().map(|r| vec![r.0, r.1]),
            )?;
            Ok(())
        }
        Command::SmallSignal {
            common,
            vm,
            out,
            sweep,
        } => {
            let params = resolve_params(&common)?;
            let g_kca = match common.gkca {
                Some(g) => g,
                None => gkca_at_equilibrium(vm, &params)?,
            };
            let y = composite_admittance(vm, g_kca, &params)?;
            write_json(
                &out,
                &json!({
                    "b3": y.b[0], "b2": y.b[1], "b1": y.b[2], "b0": y.b[3],
                    "a2": y.a[0], "a1": y.a[1], "a0": y.a[2],
                    "Vm": y.v_m, "gKCa": y.g_kca,
                }),
            )?;
            if let Some(path) = sweep {
                let grid = default_omega_grid();
                let rows = frequency_sweep(&y, &grid)?;
                let hdr = header(
                    "small-signal",
                    &params,
                    json!({"vm": vm, "gkca": g_kca, "sweep_points": grid.len()}),
                );
                write_csv_with_comments(
                    &path,
                    &[hdr.to_string()],
                    &["omega", "ReY", "ImY"],
                    rows.iter().map(|r| vec![r.0, r.1, r.2]),
                )?;
            }
            Ok(())
        }
        Command::Spectra {
            common,
            vm,
            v_min,
            v_max,
            samples,
            out,
        } => {
            let params = resolve_params(&common)?;
            match (vm, v_min, v_max) {
                (Some(vm), None, None) => {
                    let set = spectral_set_on_locus(vm, &params)?;
                    write_json(&out, &set)?;
                    Ok(())
                }
                (None, Some(lo), Some(hi)) => {
                    if samples < 2 {
                        return Err(ChayError::Config("need at least 2 samples".into()));
                    }
                    let hdr = header(
                        "spectra",
                        &params,
                        json!({"v_min": lo, "v_max": hi, "samples": samples}),
                    );
                    let mut rows = Vec::new();
                    for k in 0..samples {
                        let v = lo + (hi - lo) * k as f64 / (samples - 1) as f64;
                        if let Ok(set) = spectral_set_on_locus(v, &params) {
                            let mut row = vec![set.v_m, set.g_kca];
                            for z in set.zeros {
                                row.push(z.re);
                                row.push(z.im);
                            }
                            for p in set.poles {
                                row.push(p.re);
                                row.push(p.im);
                            }
                            for l in set.eigenvalues {
                                row.push(l.re);
                                row.push(l.im);
                            }
                            rows.push(row);
                        }
                    }
                    write_csv_with_comments(
                        &out,
                        &[hdr.to_string()],
                        &[
                            "Vm", "gKCa", "Re_z1", "Im_z1", "Re_z2", "Im_z2", "Re_z3", "Im_z3",
                            "Re_p1", "Im_p1", "Re_p2", "Im_p2", "Re_l1", "Im_l1", "Re_l2", "Im_l2",
                            "Re_l3", "Im_l3",
                        ],
                        rows.into_iter(),
                    )?;
                    Ok(())
                }
                _ => Err(ChayError::Config(
                    "pass either --vm or both --v-min and --v-max".into(),
                )),
            }
        }
        Command::Scan {
            common,
            v_min,
            v_max,
            samples,
            out,
        } => {
            let params = resolve_params(&common)?;
            let rows = regime_scan([v_min, v_max], samples, &params)?;
            let hdr = header(
                "scan",
                &params,
                json!({"v_min": v_min, "v_max": v_max, "samples": samples}),
            );
            // Hand-rolled writer: the label column is text.
            let mut text = format!("# {hdr}\nVm,gKCa,label,minReY,omegaStar,maxReZero\n");
            for row in &rows {
                text.push_str(&format!(
                    "{},{},{:?},{},{},{}\n",
                    row.v_m, row.g_kca, row.label, row.min_re_y, row.argmin_omega, row.max_re_zero
                ));
            }
            std::fs::write(&out, text)?;
            Ok(())
        }
        Command::FindBoundaries { common, out } => {
            let params = resolve_params(&common)?;
            let boundaries = find_boundaries(&params)?;
            write_json(
                &out,
                &json!({
                    "artifact": "chay",
                    "version": ARTIFACT_VERSION,
                    "params": params,
                    "boundaries": boundaries,
                }),
            )?;
            for b in &boundaries {
                println!(
                    "{:?}: V_m = {} mV, g_kca = {} 1/s{}",
                    b.kind,
                    b.v_m,
                    b.g_kca,
                    b.hopf_frequency
                        .map(|w| format!(", |Im z| = {w} rad/s"))
                        .unwrap_or_default()
                );
            }
            Ok(())
        }
        Command::Reproduce {
            common,
            figure,
            out_dir,
        } => {
            let params = resolve_params(&common)?;
            let dir = out_dir.unwrap_or_else(|| PathBuf::from(format!("reproduce-{figure}")));
            reproduce::run(figure, &params, &dir)
        }
    }
}

/// Read a trajectory CSV written by `simulate`, recovering the parameter
/// set from its JSON header (flags still override g_kca).
fn read_trajectory(path: &Path, common: &CommonOpts) -> Result<Trajectory, ChayError> {
    let text = std::fs::read_to_string(path)?;
    let mut params = resolve_params(common)?;
    let mut cols: Option<Vec<String>> = None;
    let mut t = Vec::new();
    let mut v = Vec::new();
    let mut n = Vec::new();
    let mut ca = Vec::new();
    for line in text.lines() {
        if let Some(comment) = line.strip_prefix('#') {
            if common.gkca.is_none() && common.config.is_none() {
                if let Ok(hdr) = serde_json::from_str::<serde_json::Value>(comment.trim()) {
                    if let Some(p) = hdr.get("params") {
                        if let Ok(parsed) = serde_json::from_value::<ChayParams>(p.clone()) {
                            params = parsed;
                        }
                    }
                }
            }
            continue;
        }
        if cols.is_none() {
            cols = Some(line.split(',').map(str::to_owned).collect());
            let expect = ["t", "V", "n", "Ca"];
            if cols.as_deref().unwrap() != expect {
                return Err(ChayError::Config(format!(
                    "unexpected columns {:?} in {} (want t,V,n,Ca)",
                    cols.unwrap(),
                    path.display()
                )));
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(ChayError::Config(format!("malformed row: {line}")));
        }
        let parse = |s: &str| -> Result<f64, ChayError> {
            s.parse()
                .map_err(|_| ChayError::Config(format!("bad number \"{s}\" in {}", path.display())))
        };
        t.push(parse(fields[0])?);
        v.push(parse(fields[1])?);
        n.push(parse(fields[2])?);
        ca.push(parse(fields[3])?);
    }
    if t.len() < 2 {
        return Err(ChayError::Config(format!(
            "trajectory {} holds fewer than 2 samples",
            path.display()
        )));
    }
    let dt = t[1] - t[0];
    Ok(Trajectory {
        t,
        v,
        n,
        ca,
        params,
        dt,
    })
}
