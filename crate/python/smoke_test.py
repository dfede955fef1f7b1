#!/usr/bin/env python3
"""Smoke test for the chay_py extension module.

Locates the compiled cdylib under target/, stages it as an importable
module, and exercises the main operations against known values.

Build the extension first:

    cargo build -p chay-py --release
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def stage_module() -> None:
    candidates = [
        REPO / "target" / "release" / "libchay_py.so",
        REPO / "target" / "debug" / "libchay_py.so",
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        sys.exit("libchay_py.so not found; run `cargo build -p chay-py --release` first")
    stage = Path(tempfile.mkdtemp(prefix="chay-py-"))
    shutil.copy2(lib, stage / "chay_py.so")
    sys.path.insert(0, str(stage))


def approx(a: float, b: float, tol: float) -> None:
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main() -> None:
    stage_module()
    import chay_py as chay

    print(f"chay_py {chay.__version__}")

    # Gate kinetics at the closed-form points.
    k = chay.gate_kinetics(-30.0)
    approx(k["beta_n"], 0.125, 1e-12)
    approx(chay.gate_kinetics(-20.0)["alpha_n"], 0.1, 1e-9)
    approx(chay.gate_kinetics(-25.0)["alpha_m"], 1.0, 1e-9)
    print("gate kinetics ok")

    # Reference equilibrium: V = -50 pairs with g ~ 54.068, n ~ 0.089,
    # Ca ~ 0.072, and the stationary point balances the currents.
    n_hat, ca_hat = chay.equilibrium_gates(-50.0)
    approx(n_hat, 0.089, 1e-3)
    approx(ca_hat, 0.072, 1e-3)
    g = chay.gkca_at_equilibrium(-50.0)
    approx(g, 54.068, 1e-2)
    approx(chay.dc_current(-50.0, g), 0.0, 1e-9)
    dv, dn, dca = chay.rhs(-50.0, n_hat, ca_hat, gkca=g)
    assert abs(dv) < 1e-9 and abs(dn) < 1e-12 and abs(dca) < 1e-12
    print("dc equilibrium ok")

    # Jacobian structure: the calcium row is linear with slope -rho*k_ca.
    j = chay.jacobian(-50.0, n_hat, ca_hat, gkca=g)
    approx(j[2][2], -0.0495, 1e-12)
    print("jacobian ok")

    # Admittance: capacitive high-frequency limit and DC value.
    y = chay.admittance(-50.0)
    approx(y["b3"] / y["a2"], 1.0, 1e-12)
    re0, im0 = chay.frequency_response(-50.0, 0.0)
    approx(re0, y["b0"] / y["a0"], 1e-9 * abs(re0))
    assert im0 == 0.0
    print("admittance ok")

    # Spectra: zeros equal eigenvalues on the locus; the slow pole is fixed.
    s = chay.spectral_set(-50.0)
    assert any(abs(p[0] + 0.0495) < 1e-9 for p in s["poles"])
    assert chay.zero_eigen_deviation(-50.0) < 1e-6
    eig = sorted(z[0] for z in s["eigenvalues"])
    approx(eig[0], -39.593, 0.5)
    print("spectra ok")

    # Regime machinery: passive at -50, the four boundaries at their
    # published locations.
    label = chay.classify_regime(-50.0)
    assert label["kind"] == "LocallyPassive", label
    bounds = chay.find_boundaries()
    kinds = [b["kind"] for b in bounds]
    assert kinds == [
        "LocalActivityEdge",
        "HopfSupercritical",
        "HopfSubcritical",
        "LocalActivityEdge",
    ], kinds
    approx(bounds[1]["Vm"], -26.75527972, 1e-4)
    approx(bounds[1]["gKCa"], -7.79022731, 1e-3)
    approx(bounds[1]["hopf_frequency"], 97.171320482, 0.01)
    approx(bounds[2]["Vm"], -47.5332788572, 1e-4)
    print("boundaries ok")

    # Hysteresis fingerprints: pinched memristor loop, flat mixed curve.
    kv = chay.hysteresis("kv", 100.0, 1e5)
    assert kv["origin_residual"] <= 1e-6 * kv["max_abs_i"]
    mixed = chay.hysteresis("mixed", 100.0, 200.0)
    assert mixed["multivalue_spread"] <= 1e-9 * mixed["max_abs_i"]
    print("hysteresis ok")

    # Dynamics: period-1 spiking at g = 10, bursting at 11.5; a probe far
    # from the bifurcations settles quickly.
    label = chay.classify(10.0)
    assert label["kind"] == "PeriodK(1)", label
    label = chay.classify(11.5, t=60.0)
    assert label["kind"] == "Bursting", label
    out = chay.hopf_probe(-8.0, t=300.0)
    assert out == "ConvergesToEquilibrium", out
    print("dynamics ok")

    # Trajectory shape sanity.
    traj = chay.simulate(10.0, t=1.0)
    assert len(traj["t"]) == len(traj["v"]) == 10001
    assert all(0.0 <= n <= 1.0 for n in traj["n"])
    print("simulate ok")

    print("smoke test passed")


if __name__ == "__main__":
    main()
