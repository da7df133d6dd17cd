"""Label-switched paths and the flow-to-path assignment state."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidPathError, ValidationError
from .topology import NetworkTopology, links_of_path


@dataclass(frozen=True)
class Lsp:
    """A reserved unidirectional tunnel along a simple path.

    `links` holds the (src, dst) pairs in path order; `prop_delay` is the sum
    of the link delays and is kept consistent by the constructors below.
    """

    id: int
    src: int
    dst: int
    links: tuple[tuple[int, int], ...]
    capacity: float
    prop_delay: float

    @property
    def nodes(self) -> tuple[int, ...]:
        return (self.links[0][0],) + tuple(l[1] for l in self.links)

    @property
    def hop_count(self) -> int:
        return len(self.links)


def build_lsp(topo: NetworkTopology, path: list[int] | tuple[int, ...], capacity: float,
              lsp_id: int = 0) -> Lsp:
    """Construct an Lsp along `path`, validating it against the topology."""
    if len(path) < 2:
        raise InvalidPathError("path needs at least two nodes")
    if len(set(path)) != len(path):
        raise InvalidPathError(f"path {list(path)} repeats a node")
    if capacity <= 0:
        raise ValidationError("capacity must be positive")
    delay = 0.0
    for a, b in links_of_path(tuple(path)):
        ln = topo.link_lookup(a, b)
        if ln is None:
            raise InvalidPathError(f"no link from {a} to {b}")
        delay += ln.delay
    return Lsp(
        id=lsp_id,
        src=path[0],
        dst=path[-1],
        links=links_of_path(tuple(path)),
        capacity=capacity,
        prop_delay=delay,
    )


def validate_lsp(lsp: Lsp, topo: NetworkTopology) -> None:
    """Raise unless the LSP traces a simple path with consistent delay."""
    rebuilt = build_lsp(topo, lsp.nodes, lsp.capacity, lsp.id)
    if rebuilt.links != lsp.links or abs(rebuilt.prop_delay - lsp.prop_delay) > 1e-12:
        raise InvalidPathError(f"LSP {lsp.id} is inconsistent with the topology")
    if lsp.src != lsp.nodes[0] or lsp.dst != lsp.nodes[-1]:
        raise InvalidPathError(f"LSP {lsp.id} endpoints disagree with its links")


@dataclass(frozen=True)
class LspRouting:
    """Immutable snapshot of every LSP's links, indexed by LSP id."""

    routes: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def from_lsps(cls, lsps: list[Lsp] | tuple[Lsp, ...]) -> "LspRouting":
        ordered = sorted(lsps, key=lambda l: l.id)
        if [l.id for l in ordered] != list(range(len(ordered))):
            raise ValidationError("LSP ids must be 0..n-1 without gaps")
        return cls(routes=tuple(l.links for l in ordered))

    def links_of(self, lsp_id: int) -> tuple[tuple[int, int], ...]:
        return self.routes[lsp_id]

    def __len__(self) -> int:
        return len(self.routes)

    def tensor(self, node_count: int) -> np.ndarray:
        """0/1 array t[j, v, i] = 1 when LSP i crosses link j->v."""
        t = np.zeros((node_count, node_count, len(self.routes)), dtype=np.int8)
        for i, links in enumerate(self.routes):
            for a, b in links:
                t[a, b, i] = 1
        return t


class FlowAssignment:
    """Mutable map from flow id to LSP id; every flow rides exactly one LSP."""

    def __init__(self, mapping: dict[int, int] | None = None):
        self._map: dict[int, int] = dict(mapping) if mapping else {}

    def lsp_of(self, flow_id: int) -> int:
        return self._map[flow_id]

    def assign(self, flow_id: int, lsp_id: int) -> None:
        self._map[flow_id] = lsp_id

    def copy(self) -> "FlowAssignment":
        return FlowAssignment(self._map)

    def items(self):
        return sorted(self._map.items())

    def flow_ids(self) -> list[int]:
        return sorted(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __contains__(self, flow_id: int) -> bool:
        return flow_id in self._map

    def __eq__(self, other) -> bool:
        return isinstance(other, FlowAssignment) and self._map == other._map

    def __repr__(self) -> str:
        return f"FlowAssignment({self._map!r})"

    def changes_from(self, other: "FlowAssignment") -> int:
        """Number of flows mapped differently than in `other`."""
        return sum(1 for f, i in self._map.items() if other._map.get(f) != i)

    def matrix(self, flow_ids: list[int], lsp_count: int) -> np.ndarray:
        """0/1 matrix m[f, i] = 1 when flow_ids[f] rides LSP i."""
        m = np.zeros((len(flow_ids), lsp_count), dtype=np.int8)
        for row, fid in enumerate(flow_ids):
            m[row, self._map[fid]] = 1
        return m


def free_capacity(lsp: Lsp, flows, assignment: FlowAssignment) -> float:
    """Reserved capacity minus the rates of the flows currently assigned."""
    used = sum(f.rate for f in flows if f.id in assignment and assignment.lsp_of(f.id) == lsp.id)
    return lsp.capacity - used
