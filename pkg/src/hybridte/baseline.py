"""Static shortest-path routing used as the comparison baseline.

Every flow follows the minimum-hop route from its source to its destination,
with ties broken toward the lexicographically smallest node sequence, and
never moves afterwards.
"""

from __future__ import annotations

import heapq

from .errors import UnreachableError
from .topology import NetworkTopology
from .traffic import Flow


def _min_hop_lex(topo: NetworkTopology, src: int, dst: int) -> tuple[int, ...]:
    # Dijkstra on the key (hop count, node sequence); tuple comparison makes
    # the lexicographic tie-break fall out of the heap order.
    best: dict[int, tuple[int, tuple[int, ...]]] = {src: (0, (src,))}
    heap: list[tuple[int, tuple[int, ...]]] = [(0, (src,))]
    while heap:
        hops, path = heapq.heappop(heap)
        node = path[-1]
        if (hops, path) != best.get(node, (None, None)):
            continue
        if node == dst:
            return path
        for ln in topo.out_links(node):
            cand = (hops + 1, path + (ln.dst,))
            if ln.dst not in best or cand < best[ln.dst]:
                best[ln.dst] = cand
                heapq.heappush(heap, cand)
    raise UnreachableError(f"no route from {src} to {dst}")


def shortest_path_route(flow: Flow, topo: NetworkTopology) -> tuple[int, ...]:
    """Minimum-hop node sequence for the flow, lexicographically smallest on ties."""
    return _min_hop_lex(topo, flow.src, flow.dst)
