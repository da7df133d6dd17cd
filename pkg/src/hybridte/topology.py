"""Directed network graph of edge switches and core routers.

Nodes are integers 0..node_count-1. Links are directed; a physical cable is
modelled as two opposite links. Edge nodes originate and absorb traffic,
the remaining nodes only forward.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field

from .errors import ParseError, UnreachableError, ValidationError


@dataclass(frozen=True, order=True)
class Link:
    src: int
    dst: int
    bandwidth: float
    delay: float


@dataclass(frozen=True)
class NetworkTopology:
    """Immutable directed graph with per-link bandwidth and propagation delay.

    Links are kept sorted by (src, dst) so equal topologies compare and
    serialize identically.
    """

    node_count: int
    links: tuple[Link, ...]
    edge_nodes: frozenset[int]
    _by_pair: dict = field(init=False, repr=False, compare=False)
    _out: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.node_count < 2:
            raise ValidationError("topology needs at least 2 nodes")
        object.__setattr__(self, "links", tuple(sorted(self.links)))
        object.__setattr__(self, "edge_nodes", frozenset(self.edge_nodes))
        by_pair: dict[tuple[int, int], Link] = {}
        out: dict[int, list[Link]] = {v: [] for v in range(self.node_count)}
        for ln in self.links:
            if not (0 <= ln.src < self.node_count and 0 <= ln.dst < self.node_count):
                raise ValidationError(f"link ({ln.src},{ln.dst}) references unknown node")
            if ln.src == ln.dst:
                raise ValidationError(f"self-loop at node {ln.src}")
            if (ln.src, ln.dst) in by_pair:
                raise ValidationError(f"duplicate link ({ln.src},{ln.dst})")
            if ln.bandwidth <= 0:
                raise ValidationError(f"link ({ln.src},{ln.dst}) bandwidth must be positive")
            if ln.delay < 0:
                raise ValidationError(f"link ({ln.src},{ln.dst}) delay must be nonnegative")
            by_pair[(ln.src, ln.dst)] = ln
            out[ln.src].append(ln)
        for v in self.edge_nodes:
            if not (0 <= v < self.node_count):
                raise ValidationError(f"edge node {v} out of range")
        if not self.edge_nodes:
            raise ValidationError("topology needs at least one edge node")
        object.__setattr__(self, "_by_pair", by_pair)
        object.__setattr__(self, "_out", {v: tuple(sorted(ls, key=lambda l: l.dst)) for v, ls in out.items()})

    @property
    def core_nodes(self) -> frozenset[int]:
        return frozenset(range(self.node_count)) - self.edge_nodes

    @property
    def mean_bandwidth(self) -> float:
        return sum(l.bandwidth for l in self.links) / len(self.links)

    def link_lookup(self, src: int, dst: int) -> Link | None:
        """Return the link src->dst, or None when absent."""
        return self._by_pair.get((src, dst))

    def out_links(self, node: int) -> tuple[Link, ...]:
        """Links leaving `node`, sorted by destination."""
        return self._out[node]

    def delay_distances(self, src: int) -> dict[int, float]:
        """Dijkstra distances by propagation delay from `src` to every reachable node."""
        dist = {src: 0.0}
        heap = [(0.0, src)]
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist.get(v, math.inf):
                continue
            for ln in self.out_links(v):
                nd = d + ln.delay
                if nd < dist.get(ln.dst, math.inf):
                    dist[ln.dst] = nd
                    heapq.heappush(heap, (nd, ln.dst))
        return dist

    def shortest_delay(self, src: int, dst: int) -> float:
        d = self.delay_distances(src).get(dst)
        if d is None:
            raise UnreachableError(f"no route from {src} to {dst}")
        return d


def links_of_path(path: tuple[int, ...] | list[int]) -> tuple[tuple[int, int], ...]:
    """Consecutive (src, dst) pairs along a node sequence."""
    return tuple((path[k], path[k + 1]) for k in range(len(path) - 1))


def serialize_topology(topo: NetworkTopology) -> str:
    """Canonical JSON text; load_topology(serialize_topology(t)) == t."""
    doc = {
        "nodes": topo.node_count,
        "edge_nodes": sorted(topo.edge_nodes),
        "links": [
            {"src": l.src, "dst": l.dst, "bandwidth": l.bandwidth, "delay": l.delay}
            for l in topo.links
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_topology(text: str) -> NetworkTopology:
    """Parse topology JSON. ParseError on malformed input, ValidationError on bad structure."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"topology is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("topology document must be a JSON object")
    try:
        nodes = doc["nodes"]
        edge_nodes = doc["edge_nodes"]
        raw_links = doc["links"]
    except KeyError as exc:
        raise ParseError(f"topology document missing key {exc}") from exc
    if not isinstance(nodes, int) or isinstance(nodes, bool):
        raise ParseError("'nodes' must be an integer")
    if not isinstance(raw_links, list) or not isinstance(edge_nodes, list):
        raise ParseError("'links' and 'edge_nodes' must be lists")
    links = []
    for k, entry in enumerate(raw_links):
        if not isinstance(entry, dict):
            raise ParseError(f"link #{k} must be an object")
        try:
            links.append(
                Link(
                    src=int(entry["src"]),
                    dst=int(entry["dst"]),
                    bandwidth=float(entry["bandwidth"]),
                    delay=float(entry["delay"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"link #{k} is malformed: {exc}") from exc
    try:
        edge_set = frozenset(int(v) for v in edge_nodes)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"edge_nodes entries must be integers: {exc}") from exc
    return NetworkTopology(node_count=nodes, links=tuple(links), edge_nodes=edge_set)


def load_topology_file(path: str) -> NetworkTopology:
    try:
        with open(path, "r", encoding="utf-8") as fp:
            text = fp.read()
    except OSError as exc:
        raise ParseError(f"cannot read topology file {path!r}: {exc}") from exc
    return load_topology(text)


# Reference network: 4 edge switches (0-3) and 4 core routers (4-7) arranged
# as two parallel forwarding planes, so every edge pair has two node-disjoint
# routes. Uniform bandwidth and unit delay keep hop count and delay aligned.
_REFERENCE_PAIRS = (
    (0, 4), (0, 5),
    (1, 4), (1, 5),
    (2, 6), (2, 7),
    (3, 6), (3, 7),
    (4, 6), (5, 7),
)


def reference_topology(bandwidth: float = 100.0, delay: float = 1.0) -> NetworkTopology:
    links = []
    for a, b in _REFERENCE_PAIRS:
        links.append(Link(a, b, bandwidth, delay))
        links.append(Link(b, a, bandwidth, delay))
    return NetworkTopology(node_count=8, links=tuple(links), edge_nodes=frozenset({0, 1, 2, 3}))
