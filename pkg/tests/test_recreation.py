import json
import math

import numpy as np
import pytest

import hybridte as ht
from hybridte.errors import Infeasible, ValidationError
from hybridte.recreation import recreation_to_json
from hybridte.topology import links_of_path

import oracles


@pytest.fixture
def topo():
    return ht.reference_topology()


@pytest.fixture
def square():
    # 0 -> {1,2} -> 3 plus reverse, two disjoint two-hop routes
    doc = {"nodes": 4, "edge_nodes": [0, 3], "links": []}
    for a, b in ((0, 1), (1, 3), (0, 2), (2, 3)):
        doc["links"].append({"src": a, "dst": b, "bandwidth": 10.0, "delay": 1.0})
        doc["links"].append({"src": b, "dst": a, "bandwidth": 10.0, "delay": 1.0})
    return ht.load_topology(json.dumps(doc))


def test_enumeration_matches_recursive_oracle(topo):
    for src, dst in ((0, 1), (0, 2), (1, 3), (4, 7)):
        got = ht.enumerate_simple_paths(topo, src, dst)
        assert got == oracles.all_simple_paths(topo, src, dst)


def test_enumeration_order_is_delay_hops_lex(topo):
    paths = ht.enumerate_simple_paths(topo, 0, 2)
    keyed = [(sum(topo.link_lookup(a, b).delay for a, b in links_of_path(p)), len(p) - 1, p)
             for p in paths]
    assert keyed == sorted(keyed)
    assert paths[0] == (0, 4, 6, 2)
    assert paths[1] == (0, 5, 7, 2)


def test_enumeration_respects_delay_budget(topo):
    short = ht.enumerate_simple_paths(topo, 0, 2, delay_budget=3.0)
    assert short == [(0, 4, 6, 2), (0, 5, 7, 2)]
    assert ht.enumerate_simple_paths(topo, 0, 2, delay_budget=0.5) == []


def test_enumeration_limit_truncates_in_order(topo):
    full = ht.enumerate_simple_paths(topo, 0, 2)
    assert ht.enumerate_simple_paths(topo, 0, 2, limit=3) == full[:3]


def test_enumeration_random_graphs():
    rng = np.random.default_rng(7)
    for _ in range(40):
        t = oracles.random_topology(rng)
        src, dst = 0, t.node_count - 1
        budget = float(rng.uniform(1.0, 8.0))
        assert (ht.enumerate_simple_paths(t, src, dst, delay_budget=budget)
                == oracles.all_simple_paths(t, src, dst, budget))


def test_enumeration_argument_validation(topo):
    with pytest.raises(ValidationError):
        ht.enumerate_simple_paths(topo, 0, 0)
    with pytest.raises(ValidationError):
        ht.enumerate_simple_paths(topo, 0, 99)
    with pytest.raises(ValidationError):
        ht.enumerate_simple_paths(topo, 0, 2, limit=0)


def test_overloaded_link_forces_one_lsp_aside(square):
    old = ht.LspRouting(routes=(((0, 1), (1, 3)), ((0, 1), (1, 3))))
    reqs = (ht.LspRequest(0, 3, 6.0, 10.0), ht.LspRequest(0, 3, 6.0, 10.0))
    sol = ht.solve_lsp_recreation(ht.RecreationProblem(
        requests=reqs, topology=square, lr_old=old, mu=1.0))
    assert sol.optimal
    assert sol.changed_entries == 4
    assert sol.routing.routes[0] == ((0, 1), (1, 3))
    assert sol.routing.routes[1] == ((0, 2), (2, 3))
    assert ht.audit_lsp_routing(reqs, sol.routing, square, mu=1.0) == []


def test_feasible_old_routing_is_kept(square):
    old = ht.LspRouting(routes=(((0, 1), (1, 3)), ((0, 2), (2, 3))))
    reqs = (ht.LspRequest(0, 3, 6.0, 10.0), ht.LspRequest(0, 3, 6.0, 10.0))
    sol = ht.solve_lsp_recreation(ht.RecreationProblem(
        requests=reqs, topology=square, lr_old=old, mu=1.0))
    assert sol.changed_entries == 0
    assert sol.routing.routes == old.routes


def test_delay_budget_forces_detour_infeasible(square):
    reqs = (ht.LspRequest(0, 3, 6.0, 1.0),)
    with pytest.raises(Infeasible) as exc:
        ht.solve_lsp_recreation(ht.RecreationProblem(
            requests=reqs, topology=square, lr_old=None, mu=1.0))
    assert exc.value.proven


def test_reservations_beyond_headroom_infeasible(square):
    reqs = (ht.LspRequest(0, 3, 8.0, 4.0), ht.LspRequest(0, 3, 8.0, 4.0),
            ht.LspRequest(0, 3, 8.0, 4.0))
    with pytest.raises(Infeasible) as exc:
        ht.solve_lsp_recreation(ht.RecreationProblem(
            requests=reqs, topology=square, lr_old=None, mu=1.0))
    assert exc.value.proven


def test_matches_exhaustive_enumeration():
    rng = np.random.default_rng(41)
    solved = infeasible = 0
    for _ in range(60):
        t, reqs, lr_old, mu = oracles.random_recreation_instance(rng)
        expect = oracles.best_recreation(reqs, t, lr_old, mu)
        problem = ht.RecreationProblem(requests=reqs, topology=t, lr_old=lr_old, mu=mu)
        if expect is None:
            with pytest.raises(Infeasible):
                ht.solve_lsp_recreation(problem)
            infeasible += 1
            continue
        sol = ht.solve_lsp_recreation(problem)
        assert sol.optimal
        assert sol.changed_entries == expect
        assert ht.audit_lsp_routing(reqs, sol.routing, t, mu=mu) == []
        solved += 1
    assert solved > 20


def test_missing_old_routing_counts_full_path(square):
    reqs = (ht.LspRequest(0, 3, 1.0, 10.0),)
    sol = ht.solve_lsp_recreation(ht.RecreationProblem(
        requests=reqs, topology=square, lr_old=None))
    assert sol.changed_entries == 2


def test_capacity_validation(square):
    with pytest.raises(ValidationError):
        ht.solve_lsp_recreation(ht.RecreationProblem(
            requests=(ht.LspRequest(0, 3, 0.0, 4.0),), topology=square))


def test_determinism(square):
    reqs = (ht.LspRequest(0, 3, 6.0, 10.0), ht.LspRequest(0, 3, 6.0, 10.0))
    old = ht.LspRouting(routes=(((0, 1), (1, 3)), ((0, 1), (1, 3))))
    a = ht.solve_lsp_recreation(ht.RecreationProblem(requests=reqs, topology=square,
                                                     lr_old=old, mu=1.0))
    b = ht.solve_lsp_recreation(ht.RecreationProblem(requests=reqs, topology=square,
                                                     lr_old=old, mu=1.0))
    assert a.routing.routes == b.routing.routes
    assert a.changed_entries == b.changed_entries


def test_dump_round_trip(square):
    reqs = (ht.LspRequest(0, 3, 6.0, 10.0), ht.LspRequest(0, 3, 6.0, math.inf))
    old = ht.LspRouting(routes=(((0, 1), (1, 3)), ((0, 1), (1, 3))))
    problem = ht.RecreationProblem(requests=reqs, topology=square, lr_old=old, mu=1.0)
    sol = ht.solve_lsp_recreation(problem)
    text = recreation_to_json(problem, sol)
    assert text == recreation_to_json(problem, sol)
    doc = json.loads(text)
    assert doc["type"] == "lsp_recreation"
    assert doc["requests"][1]["delay_budget"] is None
    assert doc["solution"]["changed_entries"] == sol.changed_entries
