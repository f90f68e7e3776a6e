"""Power profiles and the reference machine model
=================================================

A process's power draw as a function of the CPU share taken by competing
processes comes in two shapes: affine on machines with few cores, n-th-root
on machines with many.  This walk-through evaluates both, looks at their
derivatives, and finishes with machine-level power and energy integration.

Run from the repository root:  python demos/01_power_profiles.py
"""

import numpy as np

from procwatt import (
    LinearProfile,
    NRootProfile,
    ReferenceMachineModel,
    derivative,
    evaluate,
    integrate_energy,
    machine_power,
)

# A 4-core-style machine: the observed process alone draws 9.75 W, and each
# percent of competition costs a constant 0.055 W on top.
four_core = LinearProfile(a=9.75, b=0.055)

# An 8-core-style machine: steep growth at low competition that flattens out.
eight_core = NRootProfile(c=7.0, d=1.5, n=3)

print("competition   linear W   n-root W")
for p in (0, 10, 25, 50, 75, 95):
    print(f"{p:10d} {evaluate(four_core, p):10.3f} {evaluate(eight_core, p):10.3f}")

# The derivative tells the placement story: the linear profile grows at the
# same rate everywhere, while the n-root one is expensive to load when idle
# and nearly free to load when already busy.
print("\ncompetition   linear dW/dp   n-root dW/dp")
for p in (1, 5, 20, 50, 90):
    print(f"{p:10d} {derivative(four_core, p):13.4f} {derivative(eight_core, p):13.4f}")

# Whole-machine power is classically affine in utilization between the idle
# and full-load wattages.
server = ReferenceMachineModel(p_idle=50.0, p_max=150.0)
for u in (0.0, 0.25, 0.5, 1.0):
    print(f"utilization {u:.2f} -> {machine_power(server, u):6.1f} W")

# Energy is the integral of power over time; the trapezoidal rule is exact
# for piecewise-linear power, so a 6-minute constant 10 W draw is 3600 J.
steady = [(t, 10.0) for t in range(0, 361, 60)]
ramp = [(t, 0.1 * t) for t in range(0, 101, 10)]
print(f"\nsteady 10 W for 360 s: {integrate_energy(steady):8.1f} J")
print(f"ramp 0 -> 10 W in 100 s: {integrate_energy(ramp):6.1f} J (triangle area)")

# Sampling density does not matter for piecewise-linear signals.
dense_ramp = np.column_stack([np.linspace(0, 100, 2001), 0.1 * np.linspace(0, 100, 2001)])
print(f"same ramp at 2001 samples: {integrate_energy(dense_ramp):6.1f} J")
