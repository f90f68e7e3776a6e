"""Energy-aware VNF placement across profiled machines
======================================================

Each VNF placed on a machine feels the competition of its base load plus its
co-tenants and draws power according to that machine's profile.  Slices sum
their members, the group sums the slices, and the placement problem is to
pick hosts minimizing the group total.  Greedy picks the momentarily
cheapest machine per VNF; exhaustive enumeration finds the true optimum on
small instances and doubles as the oracle for the heuristic.

Run from the repository root:  python demos/04_vnf_placement.py
"""

from procwatt import (
    LinearProfile,
    Machine,
    NRootProfile,
    PlacementProblem,
    Vnf,
    place_exhaustive,
    place_greedy,
)


def show(label, result):
    print(f"\n{label}: total {result.total_power:.3f} W, feasible={result.feasible}")
    for vnf_id, machine_id in result.assignment.items():
        print(f"  {vnf_id} -> {machine_id}  ({result.per_vnf_power[vnf_id]:.3f} W)")
    for slice_id, watts in result.per_slice_power.items():
        print(f"  slice {slice_id}: {watts:.3f} W")


# The textbook 2x2 instance: one machine of each shape, two 20% VNFs.
# Splitting them wins (17 W) over stacking either machine (20 W / 20.47 W).
small = PlacementProblem(
    machines=(
        Machine("m1", LinearProfile(9.0, 0.05)),
        Machine("m2", NRootProfile(8.0, 0.5, 2)),
    ),
    vnfs=(Vnf("f1", 20.0, "s1"), Vnf("f2", 20.0, "s1")),
    slices=("s1",),
)
show("2x2 greedy", place_greedy(small))
show("2x2 exhaustive", place_exhaustive(small))

# A larger mixed instance where greedy's myopia costs real watts: the n-root
# machines are cheap to start but the heuristic keeps stacking the linear one.
larger = PlacementProblem(
    machines=(
        Machine("lin-a", LinearProfile(9.0, 0.02), base_competition=10.0),
        Machine("rt-b", NRootProfile(7.5, 1.1, 2)),
        Machine("rt-c", NRootProfile(8.0, 0.9, 3)),
    ),
    vnfs=(
        Vnf("fw", 25.0, "edge"),
        Vnf("nat", 20.0, "edge"),
        Vnf("dpi", 30.0, "core"),
        Vnf("lb", 15.0, "core"),
        Vnf("cache", 10.0, "core"),
    ),
    slices=("edge", "core"),
)
greedy = place_greedy(larger)
optimal = place_exhaustive(larger)
show("5-VNF greedy", greedy)
show("5-VNF exhaustive", optimal)
gap = greedy.total_power - optimal.total_power
print(f"\ngreedy pays {gap:.3f} W ({100 * gap / optimal.total_power:.2f}%) over the optimum")

# The same problems run from the command line via JSON documents:
#   procwatt place problem.json --strategy exhaustive
