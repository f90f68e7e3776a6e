"""Fitting simulated measurement campaigns
==========================================

The measurement protocol raises competition in 5% steps, dwells several
minutes per level, and repeats the staircase for several cycles.  Here we
simulate that protocol from known ground truths with realistic noise, then
run the full analysis: bin, fit both families, test the slopes, select the
model, and compare the recovered parameters with the truth.

Run from the repository root:  python demos/02_fit_simulated_trace.py
"""

from procwatt import (
    LinearProfile,
    NRootProfile,
    ProtocolConfig,
    aggregate,
    fit_linear,
    fit_nroot,
    generate_trace,
    select_model,
    t_test_slope,
)

config = ProtocolConfig(
    baseline_load_q=5.0,   # the observed process itself uses 5% CPU
    noise_sigma=0.3,       # per-sample wattage noise
    seed=2024,
    cycles=8,
)

for label, truth in (
    ("4-core-style truth", LinearProfile(9.75, 0.055)),
    ("8-core-style truth", NRootProfile(7.0, 1.5, 3)),
):
    trace = generate_trace(config, truth)
    points = aggregate(trace.samples, bin_width=5.0)
    linear = fit_linear(points)
    nroot = fit_nroot(points, n_grid=range(2, 9))
    selection = select_model(linear, nroot, tie_tolerance=0.02)

    print(f"\n=== {label}: {truth}")
    print(f"samples: {len(trace.samples)}, binned points: {len(points)}")
    print(
        f"linear fit : a={linear.profile.a:.4f}  b={linear.profile.b:.5f}  "
        f"adj R^2={linear.adj_r_squared:.5f}"
    )
    print(
        f"n-root fit : c={nroot.profile.c:.4f}  d={nroot.profile.d:.5f}  "
        f"n={nroot.profile.n}  adj R^2={nroot.adj_r_squared:.5f}"
    )
    t, p = t_test_slope(selection.linear_report if selection.chosen == "linear" else nroot)
    print(f"slope t-test on the chosen fit: t={t:.2f}, two-sided p={p:.3g}")
    print(f"chosen model: {selection.chosen}  (margin {selection.margin:+.4f})")

# A deliberately coarse campaign (one cycle, short dwell) shows why the
# protocol repeats: the same truth recovers with visibly more error.
coarse = ProtocolConfig(baseline_load_q=5.0, noise_sigma=0.3, seed=2024, cycles=1, dwell_seconds=30.0)
trace = generate_trace(coarse, LinearProfile(9.75, 0.055))
report = fit_linear(aggregate(trace.samples))
print(
    f"\nsingle short cycle instead of 8 full ones: "
    f"b={report.profile.b:.5f} (truth 0.05500), "
    f"{len(trace.samples)} samples instead of 11520"
)
