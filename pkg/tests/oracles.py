"""Brute-force reference implementations and random instance generators.

Everything here is deliberately naive: exhaustive enumeration and plain
Python sums, so solver results can be checked against an implementation
with no shared logic.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from hybridte.lsp import FlowAssignment, LspRouting, build_lsp
from hybridte.recreation import LspRequest
from hybridte.topology import Link, NetworkTopology, links_of_path
from hybridte.traffic import Flow


def within(value: float, bound: float) -> bool:
    return value <= bound + 1e-9 * max(1.0, abs(bound))


def all_simple_paths(topo, src, dst, delay_budget=math.inf):
    """Every simple src->dst path within the budget, via plain recursion,
    sorted by (total delay, hop count, node sequence)."""
    found = []

    def walk(node, nodes, delay):
        if node == dst:
            found.append((delay, len(nodes) - 1, nodes))
            return
        for ln in topo.out_links(node):
            if ln.dst in nodes:
                continue
            if delay + ln.delay <= delay_budget:
                walk(ln.dst, nodes + (ln.dst,), delay + ln.delay)

    walk(src, (src,), 0.0)
    found.sort()
    return [nodes for _, _, nodes in found]


def min_hop_count(topo, src, dst):
    """BFS hop distance, or None when unreachable."""
    seen = {src}
    frontier = [src]
    hops = 0
    while frontier:
        if dst in frontier:
            return hops
        nxt = []
        for v in frontier:
            for ln in topo.out_links(v):
                if ln.dst not in seen:
                    seen.add(ln.dst)
                    nxt.append(ln.dst)
        frontier = nxt
        hops += 1
    return None


def rerouting_feasible(flows, lsps, assign, mode="reserved", mu=0.9,
                       routing=None, topo=None):
    by_id = {l.id: l for l in lsps}
    loads = {l.id: 0.0 for l in lsps}
    for f in flows:
        lid = assign[f.id]
        l = by_id[lid]
        if l.src != f.src or l.dst != f.dst:
            return False
        if l.prop_delay > f.max_delay + 1e-9 * max(1.0, f.max_delay):
            return False
        loads[lid] += f.rate
    for lid, load in loads.items():
        if not within(load, by_id[lid].capacity):
            return False
    if mode == "unreserved":
        link_load = {}
        for f in flows:
            for pair in routing.links_of(assign[f.id]):
                link_load[pair] = link_load.get(pair, 0.0) + f.rate
        for pair, load in link_load.items():
            if not within(load, mu * topo.link_lookup(*pair).bandwidth):
                return False
    return True


def best_rerouting(flows, lsps, fr_old, mode="reserved", mu=0.9,
                   routing=None, topo=None):
    """Exhaustive minimum-change assignment; returns (changes, mapping) where
    the mapping is the lexicographically smallest optimum in flow-id order,
    or None when nothing is feasible."""
    flows = sorted(flows, key=lambda f: f.id)
    lsp_ids = sorted(l.id for l in lsps)
    best = None
    for combo in itertools.product(lsp_ids, repeat=len(flows)):
        assign = {f.id: lid for f, lid in zip(flows, combo)}
        if not rerouting_feasible(flows, lsps, assign, mode, mu, routing, topo):
            continue
        changes = sum(1 for f in flows if assign[f.id] != fr_old.lsp_of(f.id))
        key = (changes, combo)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    changes, combo = best
    return changes, {f.id: lid for f, lid in zip(flows, combo)}


def best_recreation(requests, topo, lr_old, mu=0.9):
    """Exhaustive minimum-change routing over every simple-path combination;
    returns the least total changed link entries, or None when infeasible."""
    old = lr_old.routes if lr_old is not None else ()
    options = []
    for i, req in enumerate(requests):
        paths = all_simple_paths(topo, req.src, req.dst, req.delay_budget)
        if not paths:
            return None
        old_links = set(old[i]) if i < len(old) else set()
        options.append([(len(set(links_of_path(p)) ^ old_links), links_of_path(p))
                        for p in paths])
    best = None
    for combo in itertools.product(*options):
        reserved = {}
        ok = True
        for (_, links), req in zip(combo, requests):
            for pair in links:
                reserved[pair] = reserved.get(pair, 0.0) + req.capacity
        for pair, total in reserved.items():
            if not within(total, mu * topo.link_lookup(*pair).bandwidth):
                ok = False
                break
        if not ok:
            continue
        cost = sum(c for c, _ in combo)
        if best is None or cost < best:
            best = cost
    return best


def trunc_geom_mean(p: float, lo: int, hi: int) -> float:
    ks = np.arange(lo, hi + 1, dtype=float)
    w = p * (1.0 - p) ** (ks - lo)
    return float((ks * w).sum() / w.sum())


def random_topology(rng: np.random.Generator, max_nodes: int = 6) -> NetworkTopology:
    """Small connected directed graph: a random spanning cycle plus extras."""
    n = int(rng.integers(3, max_nodes + 1))
    order = [int(v) for v in rng.permutation(n)]
    pairs = set()
    for k in range(n):
        pairs.add((order[k], order[(k + 1) % n]))
    extras = int(rng.integers(0, n + 1))
    for _ in range(extras):
        a, b = rng.integers(0, n, size=2)
        if a != b:
            pairs.add((int(a), int(b)))
    links = tuple(
        Link(a, b, float(rng.uniform(5.0, 20.0)), float(rng.integers(1, 4)))
        for a, b in sorted(pairs)
    )
    n_edge = int(rng.integers(2, n + 1))
    edge_nodes = frozenset(int(v) for v in rng.choice(n, size=n_edge, replace=False))
    return NetworkTopology(node_count=n, links=links, edge_nodes=edge_nodes)


def random_rerouting_instance(rng: np.random.Generator, max_flows: int = 5,
                              max_lsps: int = 4):
    """Instance over a small random topology; endpoints are shared by all
    LSPs and flows so every flow has candidates. Returns the solver inputs."""
    topo = random_topology(rng)
    nodes = sorted(topo.edge_nodes)
    src = nodes[0]
    dst = nodes[-1] if nodes[-1] != src else nodes[0]
    paths = all_simple_paths(topo, src, dst)
    while not paths or src == dst:
        topo = random_topology(rng)
        nodes = sorted(topo.edge_nodes)
        src, dst = nodes[0], nodes[-1]
        paths = all_simple_paths(topo, src, dst) if src != dst else []
    n_l = int(rng.integers(1, max_lsps + 1))
    lsps = tuple(
        build_lsp(topo, paths[int(rng.integers(len(paths)))],
                  float(rng.uniform(2.0, 12.0)), i)
        for i in range(n_l)
    )
    n_f = int(rng.integers(1, max_flows + 1))
    max_pd = max(l.prop_delay for l in lsps)
    flows = tuple(
        Flow(i, src, dst, float(rng.uniform(0.5, 6.0)),
             float(rng.uniform(0.8, 1.5)) * max_pd)
        for i in range(n_f)
    )
    fr_old = FlowAssignment({f.id: int(rng.integers(n_l)) for f in flows})
    mode = "unreserved" if rng.uniform() < 0.4 else "reserved"
    routing = LspRouting.from_lsps(lsps)
    return topo, flows, lsps, fr_old, mode, routing


def random_recreation_instance(rng: np.random.Generator, max_requests: int = 3):
    topo = random_topology(rng)
    nodes = list(range(topo.node_count))
    n_r = int(rng.integers(1, max_requests + 1))
    requests = []
    old_routes = []
    tries = 0
    while len(requests) < n_r and tries < 200:
        tries += 1
        a, b = rng.choice(nodes, size=2, replace=False)
        paths = all_simple_paths(topo, int(a), int(b))
        if not paths:
            continue
        budget = float(rng.uniform(1.0, 12.0)) if rng.uniform() < 0.7 else math.inf
        requests.append(LspRequest(int(a), int(b), float(rng.uniform(1.0, 8.0)), budget))
        old_routes.append(links_of_path(paths[int(rng.integers(len(paths)))]))
    if not requests:
        return random_recreation_instance(rng, max_requests)
    lr_old = LspRouting(routes=tuple(old_routes))
    mu = float(rng.uniform(0.5, 1.0))
    return topo, tuple(requests), lr_old, mu
