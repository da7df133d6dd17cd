"""Discrete time-slot driver: traffic growth, triggers, re-routing, metrics.

Slot 0 places the initial flows and records a sample. From slot 1 on, rates
grow, and a re-routing round runs whenever the most loaded link crosses the
trigger threshold or the periodic interval comes up. A failed flow-level
round escalates once per slot to LSP re-creation followed by a retry; if
that fails too, the previous assignment stays and congestion shows up in the
metrics.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from dataclasses import dataclass, field

from .baseline import shortest_path_route
from .errors import ConfigError, Infeasible, ParseError
from .ffr import ffr, find_proper_lsps
from .lsp import FlowAssignment, Lsp, LspRouting, build_lsp
from .metrics import MetricsSample, compute_sample, write_metrics_csv
from .recreation import (LspRequest, RecreationProblem, enumerate_simple_paths,
                         recreation_to_json, solve_lsp_recreation)
from .rerouting import (ReroutingProblem, RoutingMode, rerouting_to_json,
                        solve_flow_rerouting)
from .topology import NetworkTopology, links_of_path, load_topology_file
from .traffic import TrafficConfig, generate_flows, grow_flows

SCHEMES = ("shortest_path", "ffr", "exact")


@dataclass(frozen=True)
class LspPlanSpec:
    kind: str = "auto"
    paths_per_pair: int = 2
    path: str | None = None


@dataclass(frozen=True, eq=False)
class ScenarioConfig:
    topology_path: str
    traffic: TrafficConfig
    slots: int = 20
    scheme: str = "ffr"
    rerouting_mode: RoutingMode = RoutingMode.RESERVED
    mu_trigger: float = 0.9
    mu_headroom: float = 0.9
    rerouting_interval: int = 5
    lsp_plan: LspPlanSpec = field(default_factory=LspPlanSpec)
    seed: int = 0
    dump_dir: str | None = None

    def validate(self) -> None:
        if self.slots < 1:
            raise ConfigError("slots must be at least 1")
        if self.rerouting_interval < 1:
            raise ConfigError("rerouting_interval must be at least 1")
        if not (0 < self.mu_trigger <= 1 and 0 < self.mu_headroom <= 1):
            raise ConfigError("mu_trigger and mu_headroom must lie in (0, 1]")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; pick one of {SCHEMES}")
        if self.lsp_plan.kind not in ("auto", "file"):
            raise ConfigError("lsp_plan.kind must be 'auto' or 'file'")
        if self.lsp_plan.kind == "auto" and self.lsp_plan.paths_per_pair < 1:
            raise ConfigError("paths_per_pair must be at least 1")
        if self.lsp_plan.kind == "file" and not self.lsp_plan.path:
            raise ConfigError("file LSP plan needs a path")


@dataclass(eq=False)
class RunResult:
    scheme: str
    seed: int
    samples: list[MetricsSample]
    events: list[str]
    config_echo: dict


def load_scenario(path: str) -> ScenarioConfig:
    """Read a scenario JSON file; relative paths resolve against its directory."""
    try:
        with open(path, "r", encoding="utf-8") as fp:
            doc = json.load(fp)
    except OSError as exc:
        raise ParseError(f"cannot read scenario file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"scenario {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("scenario document must be a JSON object")
    base = os.path.dirname(os.path.abspath(path))

    def resolve(p: str) -> str:
        return p if os.path.isabs(p) else os.path.join(base, p)

    try:
        traffic = TrafficConfig(**doc["traffic"])
        plan_doc = doc.get("lsp_plan", {})
        plan = LspPlanSpec(
            kind=plan_doc.get("kind", "auto"),
            paths_per_pair=plan_doc.get("paths_per_pair", 2),
            path=resolve(plan_doc["path"]) if plan_doc.get("path") else None,
        )
        cfg = ScenarioConfig(
            topology_path=resolve(doc["topology"]),
            traffic=traffic,
            slots=doc.get("slots", 20),
            scheme=doc.get("scheme", "ffr"),
            rerouting_mode=RoutingMode(doc.get("rerouting_mode", "reserved")),
            mu_trigger=doc.get("mu_trigger", 0.9),
            mu_headroom=doc.get("mu_headroom", 0.9),
            rerouting_interval=doc.get("rerouting_interval", 5),
            lsp_plan=plan,
            seed=doc.get("seed", 0),
        )
    except KeyError as exc:
        raise ParseError(f"scenario missing key {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"scenario field malformed: {exc}") from exc
    cfg.validate()
    return cfg


def build_auto_lsp_plan(topo: NetworkTopology, paths_per_pair: int = 2,
                        mu_headroom: float = 0.9) -> list[Lsp]:
    """Plan LSPs between every ordered edge pair: the best few simple paths,
    each granted an equal share of its bottleneck bandwidth, then scaled down
    once so that reservations summed per link never exceed the headroom."""
    planned: list[tuple[tuple[int, ...], float]] = []
    for src in sorted(topo.edge_nodes):
        for dst in sorted(topo.edge_nodes):
            if src == dst:
                continue
            paths = enumerate_simple_paths(topo, src, dst, limit=paths_per_pair)
            if not paths:
                raise ConfigError(f"edge pair ({src},{dst}) has no route")
            for nodes in paths:
                bottleneck = min(topo.link_lookup(a, b).bandwidth
                                 for a, b in links_of_path(nodes))
                planned.append((nodes, bottleneck / len(paths)))

    link_sum: dict[tuple[int, int], float] = {}
    for nodes, raw in planned:
        for pair in links_of_path(nodes):
            link_sum[pair] = link_sum.get(pair, 0.0) + raw
    lsps = []
    for lsp_id, (nodes, raw) in enumerate(planned):
        factor = 1.0
        for pair in links_of_path(nodes):
            budget = mu_headroom * topo.link_lookup(*pair).bandwidth
            if link_sum[pair] > budget:
                factor = min(factor, budget / link_sum[pair])
        lsps.append(build_lsp(topo, nodes, raw * factor, lsp_id))
    return lsps


def load_lsp_plan_file(path: str, topo: NetworkTopology) -> list[Lsp]:
    """Read an explicit LSP plan: {"lsps": [{"path": [...], "capacity": x}, ...]}."""
    try:
        with open(path, "r", encoding="utf-8") as fp:
            doc = json.load(fp)
    except OSError as exc:
        raise ParseError(f"cannot read LSP plan {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"LSP plan {path!r} is not valid JSON: {exc}") from exc
    try:
        entries = doc["lsps"]
        return [build_lsp(topo, e["path"], e["capacity"], i) for i, e in enumerate(entries)]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"LSP plan {path!r} is malformed: {exc}") from exc


def initial_assignment(flows, lsps) -> FlowAssignment:
    """Worst-fit initial placement: largest flows first onto the roomiest
    admissible LSP. Raises when some flow has no admissible LSP at all."""
    free = {l.id: l.capacity for l in lsps}
    assignment = FlowAssignment()
    for f in sorted(flows, key=lambda f: (-f.rate, f.id)):
        proper = find_proper_lsps(f, lsps, free)
        if not proper:
            raise ConfigError(
                f"flow {f.id} ({f.src}->{f.dst}, delay bound {f.max_delay:.3g}) "
                "matches no planned LSP"
            )
        assignment.assign(f.id, proper[0].id)
        free[proper[0].id] -= f.rate
    return assignment


class _Dumper:
    def __init__(self, dump_dir: str | None):
        self.dir = dump_dir
        if dump_dir:
            os.makedirs(dump_dir, exist_ok=True)

    def write(self, name: str, text: str):
        if self.dir:
            with open(os.path.join(self.dir, name), "w", encoding="utf-8") as fp:
                fp.write(text)


def _max_utilization(flows, paths, topo) -> float:
    loads: dict[tuple[int, int], float] = {}
    for f in flows:
        for pair in paths[f.id]:
            loads[pair] = loads.get(pair, 0.0) + f.rate
    out = 0.0
    for pair, load in loads.items():
        out = max(out, load / topo.link_lookup(*pair).bandwidth)
    return out


def _delay_budgets(flows, lsps, assignment) -> dict[int, float]:
    budgets = {l.id: math.inf for l in lsps}
    for f in flows:
        lid = assignment.lsp_of(f.id)
        budgets[lid] = min(budgets[lid], f.max_delay)
    return budgets


def _config_echo(cfg: ScenarioConfig) -> dict:
    doc = dataclasses.asdict(cfg)
    doc["rerouting_mode"] = cfg.rerouting_mode.value
    return doc


def run_scenario(cfg: ScenarioConfig) -> RunResult:
    """Run one scheme over the configured slots and collect per-slot samples."""
    cfg.validate()
    topo = load_topology_file(cfg.topology_path)
    traffic_cfg = dataclasses.replace(cfg.traffic, seed=cfg.seed)
    flows = generate_flows(topo, traffic_cfg)
    events = [f"slot=0 event=init scheme={cfg.scheme} seed={cfg.seed} flows={len(flows)}"]
    samples: list[MetricsSample] = []
    dumper = _Dumper(cfg.dump_dir)

    if cfg.scheme == "shortest_path":
        paths = {f.id: links_of_path(shortest_path_route(f, topo)) for f in flows}
        for t in range(cfg.slots):
            if t >= 1:
                flows = grow_flows(flows, traffic_cfg.growth_max, (cfg.seed, t))
            samples.append(compute_sample(t, flows, paths, topo))
        return RunResult(cfg.scheme, cfg.seed, samples, events, _config_echo(cfg))

    if cfg.lsp_plan.kind == "auto":
        lsps = build_auto_lsp_plan(topo, cfg.lsp_plan.paths_per_pair, cfg.mu_headroom)
    else:
        lsps = load_lsp_plan_file(cfg.lsp_plan.path, topo)
    routing = LspRouting.from_lsps(lsps)
    assignment = initial_assignment(flows, lsps)
    events.append(f"slot=0 event=plan scheme={cfg.scheme} lsps={len(lsps)}")

    def flow_paths():
        return {f.id: routing.links_of(assignment.lsp_of(f.id)) for f in flows}

    def run_flow_level(t: int, retry: bool) -> bool:
        """One flow-level round; returns True when escalation is needed."""
        nonlocal assignment
        tag = "reroute_retry" if retry else "reroute"
        if cfg.scheme == "exact":
            problem = ReroutingProblem(
                flows=tuple(flows), lsps=tuple(lsps), fr_old=assignment,
                mode=cfg.rerouting_mode, mu=cfg.mu_headroom,
                routing=routing, topology=topo,
            )
            try:
                sol = solve_flow_rerouting(problem)
            except Infeasible as exc:
                events.append(f"slot={t} event={tag}_infeasible scheme=exact "
                              f"proven={exc.proven}")
                dumper.write(f"slot{t:03d}_{tag}.json", rerouting_to_json(problem))
                return True
            events.append(f"slot={t} event={tag} scheme=exact changes={sol.changes} "
                          f"optimal={sol.optimal}")
            dumper.write(f"slot{t:03d}_{tag}.json", rerouting_to_json(problem, sol))
            assignment = sol.assignment
            return False
        res = ffr(flows, lsps, assignment, topo, mu=cfg.mu_headroom)
        changed = res.assignment.changes_from(assignment)
        events.append(f"slot={t} event={tag} scheme=ffr changes={changed} "
                      f"parked={len(res.recreation_requests)} "
                      f"examinations={res.examinations}")
        assignment = res.assignment
        return bool(res.recreation_requests)

    def run_recreation(t: int):
        nonlocal lsps, routing
        budgets = _delay_budgets(flows, lsps, assignment)
        requests = tuple(
            LspRequest(l.src, l.dst, l.capacity, budgets[l.id])
            for l in sorted(lsps, key=lambda l: l.id)
        )
        problem = RecreationProblem(requests=requests, topology=topo,
                                    lr_old=routing, mu=cfg.mu_headroom)
        try:
            rsol = solve_lsp_recreation(problem)
        except Infeasible as exc:
            events.append(f"slot={t} event=recreate_infeasible scheme={cfg.scheme} "
                          f"proven={exc.proven}")
            dumper.write(f"slot{t:03d}_recreation.json", recreation_to_json(problem))
            return
        events.append(f"slot={t} event=recreate scheme={cfg.scheme} "
                      f"changed_entries={rsol.changed_entries} optimal={rsol.optimal}")
        dumper.write(f"slot{t:03d}_recreation.json", recreation_to_json(problem, rsol))
        if rsol.changed_entries:
            rebuilt = []
            for l in lsps:
                links = rsol.routing.links_of(l.id)
                if links == l.links:
                    rebuilt.append(l)
                    continue
                delay = sum(topo.link_lookup(*pair).delay for pair in links)
                rebuilt.append(dataclasses.replace(l, links=links, prop_delay=delay))
            lsps = rebuilt
        routing = rsol.routing

    for t in range(cfg.slots):
        if t >= 1:
            flows = grow_flows(flows, traffic_cfg.growth_max, (cfg.seed, t))
            max_util = _max_utilization(flows, flow_paths(), topo)
            periodic = t % cfg.rerouting_interval == 0
            trigger = max_util > cfg.mu_trigger or periodic
            events.append(f"slot={t} event=check scheme={cfg.scheme} "
                          f"max_util={max_util:.6f} periodic={periodic} "
                          f"trigger={trigger}")
            if trigger:
                if run_flow_level(t, retry=False):
                    run_recreation(t)
                    run_flow_level(t, retry=True)
        samples.append(compute_sample(t, flows, flow_paths(), topo))
    return RunResult(cfg.scheme, cfg.seed, samples, events, _config_echo(cfg))


def run_comparison(cfg: ScenarioConfig) -> list[RunResult]:
    """Run every scheme over the same seeded traffic."""
    return [run_scenario(dataclasses.replace(cfg, scheme=s, dump_dir=None))
            for s in SCHEMES]


def write_run_result(result: RunResult, out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    write_metrics_csv(os.path.join(out_dir, "metrics.csv"),
                      [(result.scheme, s) for s in result.samples])
    with open(os.path.join(out_dir, "events.log"), "w", encoding="utf-8") as fp:
        fp.write("\n".join(result.events) + "\n")
    with open(os.path.join(out_dir, "config.echo"), "w", encoding="utf-8") as fp:
        fp.write(json.dumps(result.config_echo, indent=2, sort_keys=True) + "\n")


def write_comparison(results: list[RunResult], out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    entries = [(r.scheme, s) for r in results for s in r.samples]
    write_metrics_csv(os.path.join(out_dir, "metrics.csv"), entries)
    lines = [line for r in results for line in r.events]
    with open(os.path.join(out_dir, "events.log"), "w", encoding="utf-8") as fp:
        fp.write("\n".join(lines) + "\n")
    echo = dict(results[0].config_echo)
    echo["scheme"] = [r.scheme for r in results]
    with open(os.path.join(out_dir, "config.echo"), "w", encoding="utf-8") as fp:
        fp.write(json.dumps(echo, indent=2, sort_keys=True) + "\n")
