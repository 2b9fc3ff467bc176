"""Smoke tests for the hydrospec python bindings."""

import json
import math
import sys
import tempfile
from pathlib import Path

import numpy as np

import hydrospec as hs


def check(name, ok):
    print(("PASS" if ok else "FAIL") + "  " + name)
    if not ok:
        sys.exit(1)


def main():
    seg = hs.Domain.segment(-1.0, 1.0)
    circ = hs.Domain.circle(2.0 * math.pi)

    omega = 0.7 * math.pi
    alpha = math.sqrt(omega**2 - 0.25 * math.pi**2)
    profile = hs.ShearProfile.trig(omega, math.pi / 2, seg)
    check("profile evaluates like cos(0.7 pi x)",
          abs(profile.eval(0.3) - math.cos(0.7 * math.pi * 0.3)) < 1e-14)

    escape = hs.EscapeFunction.trig_cutoff(omega, math.pi / 2, seg)
    contour = hs.DeformedContour(escape, 0.1)
    report = hs.validate_contour(profile, contour, 0.0, 0.1)
    check("contour certifies", report.ok and report.ellipticity_margin > 0.01)

    window = hs.Window(-0.3, 0.3, -0.3, 0.3)
    records = hs.resonances_in_window(profile, contour, alpha, 64, window, 0.02)
    check("resonance found at the origin",
          len(records) == 1 and abs(records[0].c) < 1e-6 and records[0].multiplicity == 1)

    w = hs.wronskian(profile, contour, alpha, 0.3 + 0.0j)
    check("Wronskian is nonzero away from the resonance", abs(w) > 1e-3)
    refined = hs.refine_resonance(profile, contour, alpha, records[0].c)
    check("Newton refinement lands on the origin", abs(refined) < 1e-9)
    check("winding number is one",
          hs.multiplicity_winding(profile, contour, alpha, 0j, 0.05) == 1)

    cdot = hs.first_order_segment(profile, contour, alpha, 0j, 64)
    closed = hs.cos_flow_first_order(omega)
    check("first-order coefficient matches the closed formula",
          abs(cdot - closed) / abs(closed) < 1e-5 and cdot.imag > 0)

    # Matrices cross the boundary as numpy arrays.
    Q = hs.assemble_rayleigh_q(profile, contour, alpha, 48)
    check("Q is a dense complex matrix", isinstance(Q, np.ndarray) and Q.shape == (47, 47))
    spec = hs.eig(Q, True)
    check("eig returns aligned values and vectors",
          spec.values.shape == (47,) and spec.vectors.shape == (47, 47)
          and float(np.max(spec.residuals)) < 1e-8 * np.linalg.norm(Q))

    # Circle route.
    kol = hs.ShearProfile.kolmogorov(3, circ)
    kol_ct = hs.DeformedContour(hs.EscapeFunction.neg_cos(3, circ), 0.15)
    probe = hs.fourier_convention_probe(64)
    check("Fourier probes pass", probe.ok)
    Qc = hs.assemble_q_circle(kol, kol_ct, 3.0, 0.0, 64)
    sc = hs.eig(Qc)
    check("circle resonance at the origin", float(np.min(np.abs(sc.values))) < 1e-8)

    # Branch tracking and the experiment runner.  N = 96 keeps the smallest
    # eps in the grid above the wall resolution of the boundary layer.
    branch = hs.track_branch(profile, contour, alpha, records[0].c,
                             hs.default_eps_grid(5e-3, 3), 96)
    fit = hs.fit_taylor(branch, 2, hs.FitParity.All)
    check("branch fit reproduces the first-order coefficient",
          abs(fit.coefficients[1] - cdot) / abs(cdot) < 0.05)

    with tempfile.TemporaryDirectory() as tmp:
        config = Path(tmp) / "config.json"
        config.write_text(json.dumps({
            "command": "resonances",
            "profile": {"kind": "trig",
                        "params": {"omega": omega, "theta": math.pi / 2}},
            "tau": 0.1,
            "alpha": alpha,
            "N": 64,
            "window": {"re": [-0.3, 0.3], "im": [-0.3, 0.3]},
        }))
        csv = hs.run_experiment_file(config, Path(tmp) / "out")
        lines = Path(csv).read_text().strip().splitlines()
        check("runner wrote the resonance CSV",
              lines[0] == "re_c,im_c,multiplicity,dist_to_curve,wronskian_abs"
              and len(lines) == 2)

    # Domain rescaling helper.
    wide = hs.ShearProfile.trig(0.35 * math.pi, math.pi / 2, hs.Domain.segment(-2.0, 2.0))
    std = hs.rescale_to_standard(wide)
    check("rescaling doubles alpha and maps values",
          abs(std.alpha_factor - 2.0) < 1e-15
          and abs(std.profile.eval(0.25) - wide.eval(0.5)) < 1e-15)

    # Error mapping.
    try:
        hs.make_profile("warp_drive", {}, seg)
        check("unknown profile kind raises", False)
    except ValueError:
        check("unknown profile kind raises", True)

    print("smoke_test: all checks passed")


if __name__ == "__main__":
    main()
