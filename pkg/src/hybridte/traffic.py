"""Synthetic traffic model: flow arrivals at edge nodes and per-slot growth.

Flow counts per source follow a truncated geometric distribution whose
success probability shrinks with network size, rates are uniform around a
configurable fraction of the mean link bandwidth, and each flow carries a
delay bound proportional to the shortest possible delay to its destination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, UnreachableError
from .topology import NetworkTopology


@dataclass(frozen=True)
class Flow:
    id: int
    src: int
    dst: int
    rate: float
    max_delay: float


@dataclass(frozen=True)
class TrafficConfig:
    """Knobs of the generator.

    demand_fraction scales mean flow rate against mean link bandwidth,
    flow_intensity and intensity_scale set the geometric parameter
    p = 1 / (flow_intensity * intensity_scale * node_count), and
    delay_stretch multiplies the shortest achievable delay into each
    flow's delay bound.
    """

    demand_fraction: float
    flow_intensity: float
    max_flows_per_source: int
    growth_max: float
    intensity_scale: float = 1.0
    delay_stretch: float = 2.0
    min_flows_per_source: int = 1
    target_flow_count: int | None = None
    seed: int = 0

    def validate(self, topo: NetworkTopology) -> None:
        if self.demand_fraction <= 0:
            raise ConfigError("demand_fraction must be positive")
        if self.max_flows_per_source < 1:
            raise ConfigError("max_flows_per_source must be at least 1")
        if self.growth_max < 0:
            raise ConfigError("growth_max must be nonnegative")
        if self.delay_stretch < 1:
            raise ConfigError("delay_stretch must be at least 1")
        if self.min_flows_per_source not in (0, 1):
            raise ConfigError("min_flows_per_source must be 0 or 1")
        if self.target_flow_count is not None and self.target_flow_count < 0:
            raise ConfigError("target_flow_count must be nonnegative")
        p = self.geometric_p(topo)
        if not 0 < p <= 1:
            raise ConfigError(
                f"flow count parameter p={p:.4g} outside (0, 1]; "
                "check flow_intensity and intensity_scale"
            )

    def geometric_p(self, topo: NetworkTopology) -> float:
        if self.flow_intensity <= 0 or self.intensity_scale <= 0:
            raise ConfigError("flow_intensity and intensity_scale must be positive")
        return 1.0 / (self.flow_intensity * self.intensity_scale * topo.node_count)


def truncated_geometric(rng: np.random.Generator, p: float, lo: int, hi: int) -> int:
    """Draw from P(k) proportional to p*(1-p)^(k-lo) on {lo..hi} by inverse CDF."""
    if not (0 < p <= 1 and lo <= hi):
        raise ConfigError("bad truncated geometric parameters")
    weights = p * (1.0 - p) ** np.arange(0, hi - lo + 1, dtype=float)
    cdf = np.cumsum(weights)
    cdf /= cdf[-1]
    return lo + int(np.searchsorted(cdf, rng.uniform(), side="right"))


def _generate(topo: NetworkTopology, cfg: TrafficConfig, rng: np.random.Generator) -> tuple[Flow, ...]:
    p = cfg.geometric_p(topo)
    mean_rate = cfg.demand_fraction * topo.mean_bandwidth
    flows: list[Flow] = []
    for src in sorted(topo.edge_nodes):
        dists = topo.delay_distances(src)
        dests = [v for v in sorted(topo.edge_nodes) if v != src and v in dists]
        if not dests:
            raise UnreachableError(f"edge node {src} cannot reach any other edge node")
        count = truncated_geometric(rng, p, cfg.min_flows_per_source, cfg.max_flows_per_source)
        for _ in range(count):
            dst = dests[int(rng.integers(len(dests)))]
            rate = float(rng.uniform(0.0, 2.0 * mean_rate))
            while rate == 0.0:
                rate = float(rng.uniform(0.0, 2.0 * mean_rate))
            flows.append(
                Flow(
                    id=len(flows),
                    src=src,
                    dst=dst,
                    rate=rate,
                    max_delay=cfg.delay_stretch * dists[dst],
                )
            )
    return tuple(flows)


_TARGET_ATTEMPTS = 10_000


def generate_flows(topo: NetworkTopology, cfg: TrafficConfig) -> tuple[Flow, ...]:
    """Generate one slot-zero flow population; deterministic in cfg.seed."""
    cfg.validate(topo)
    if cfg.target_flow_count is None:
        return _generate(topo, cfg, np.random.default_rng(cfg.seed))
    for attempt in range(_TARGET_ATTEMPTS):
        flows = _generate(topo, cfg, np.random.default_rng((cfg.seed, attempt)))
        if len(flows) == cfg.target_flow_count:
            return flows
    raise ConfigError(
        f"could not hit target_flow_count={cfg.target_flow_count} "
        f"in {_TARGET_ATTEMPTS} attempts"
    )


def grow_flows(flows, growth_max: float, seed) -> tuple[Flow, ...]:
    """Scale each rate by (1 + u), u uniform on [0, growth_max), one draw per flow."""
    if growth_max < 0:
        raise ConfigError("growth_max must be nonnegative")
    rng = np.random.default_rng(seed)
    grown = []
    for f in flows:
        u = float(rng.uniform(0.0, growth_max)) if growth_max > 0 else 0.0
        grown.append(Flow(f.id, f.src, f.dst, f.rate * (1.0 + u), f.max_delay))
    return tuple(grown)
