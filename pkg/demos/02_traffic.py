"""Generate seeded traffic between the edge nodes and grow it slot by slot.

Per-source flow counts follow a truncated geometric distribution; rates are
uniform below twice the configured fraction of the mean link bandwidth."""

import numpy as np

import hybridte as ht

topo = ht.reference_topology()
cfg = ht.TrafficConfig(
    demand_fraction=0.08,      # mean rate scale, as a share of link bandwidth
    flow_intensity=0.8,        # busier sources -> more flows per source
    max_flows_per_source=10,
    growth_max=0.10,           # each slot a flow grows by U(0, 10%)
    intensity_scale=3.0,
    seed=1,
)

flows = ht.generate_flows(topo, cfg)
print(f"generated {len(flows)} flows from {len(topo.edge_nodes)} edge nodes")

by_src = {}
for f in flows:
    by_src.setdefault(f.src, []).append(f)
for src in sorted(by_src):
    rates = ", ".join(f"{f.rate:.1f}" for f in by_src[src])
    print(f"  source {src}: {len(by_src[src])} flows, rates [{rates}]")

# Rates stay below twice the configured mean; delay bounds are double the
# shortest possible propagation delay, so every flow is routable.
bound = 2.0 * cfg.demand_fraction * topo.mean_bandwidth
for f in flows:
    assert 0.0 < f.rate < bound
    assert f.max_delay == 2.0 * topo.shortest_delay(f.src, f.dst)

# The same seed reproduces the same population, a different seed does not.
assert ht.generate_flows(topo, cfg) == flows

# Grow the population over ten slots and watch total demand climb.
print("\nslot  total offered rate")
cur = flows
for t in range(11):
    if t:
        cur = ht.grow_flows(cur, cfg.growth_max, (cfg.seed, t))
    print(f"{t:4d}  {sum(f.rate for f in cur):10.2f}")

# Across many growth draws the mean per-slot factor approaches growth_max/2.
factors = [c.rate / f.rate - 1.0 for c, f in zip(cur, flows)]
per_slot = np.power(1.0 + np.array(factors), 1.0 / 10) - 1.0
print(f"\nmean per-slot growth over 10 slots: {per_slot.mean():.3f} "
      f"(nominal {cfg.growth_max / 2:.3f})")
