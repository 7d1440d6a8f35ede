from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from holant_lab.cyclo import ONE, ZERO, cyc
from holant_lab.grid import (
    SLOT,
    ArityMismatch,
    Dangling,
    DanglingPort,
    MalformedDocument,
    NonBipartiteWiring,
    NotSymmetric,
    NotThreeRegular,
    SignatureGrid,
    SymSignature,
    brute_force_tensor,
    compose,
    contract,
    fgate_signature,
    graph_to_grid,
    load_instance,
    parse_instance,
    symmetric_project,
    transfer_matrix,
)
from holant_lab.holant import holant_eval_graph
from holant_lab.instances import k4, theta

from conftest import random_grid, random_signature

DATA = Path(__file__).resolve().parent.parent / "data"
EQ3 = SymSignature([1, 0, 0, 1])


def test_parse_graph_documents():
    g = parse_instance({"type": "graph", "vertices": 2, "edges": [[0, 1], [0, 1], [0, 1]]})
    assert g.is_three_regular()
    g = load_instance(str(DATA / "k4.json"))
    assert (g.vertex_count, g.edge_count) == (4, 6)


def test_parse_rejects_bad_documents():
    with pytest.raises(MalformedDocument):
        parse_instance("{not json")
    with pytest.raises(MalformedDocument):
        parse_instance({"type": "hypergraph"})
    with pytest.raises(MalformedDocument):
        parse_instance({"type": "graph", "vertices": 2, "edges": [[0, 5]]})
    doc = {
        "type": "grid",
        "generators": [{"sig": "[1,2,3]"}],
        "recognizers": [{"sig": "[1,0,0,1]"}],
        "edges": [{"gen": [0, 2], "rec": [0, 0]}],
    }
    with pytest.raises(ArityMismatch):
        parse_instance(doc)
    doc["edges"] = [{"gen": [0, 0], "gen2": [0, 1]}]
    with pytest.raises(NonBipartiteWiring):
        parse_instance(doc)


def test_unwired_port_is_reported():
    with pytest.raises(DanglingPort):
        SignatureGrid((SymSignature([1, 2, 3]),), (EQ3,), (((0, 0), (0, 0)),), ())


def test_grid_json_round_trip(rng):
    for _ in range(10):
        g = random_grid(rng)
        assert parse_instance(json.dumps(g.to_json())) == g


def test_graph_to_grid_counts():
    gt = graph_to_grid(theta(), [2, 1, 3], EQ3)
    assert (len(gt.generators), len(gt.recognizers), len(gt.edges)) == (3, 2, 6)
    gk = graph_to_grid(k4(), [2, 1, 3], EQ3)
    assert (len(gk.generators), len(gk.recognizers)) == (6, 4)
    from holant_lab.grid import EdgeLabeledGraph

    with pytest.raises(NotThreeRegular):
        graph_to_grid(EdgeLabeledGraph(3, ((0, 1), (1, 2), (2, 0))), [1, 1, 1], EQ3)


def test_fgate_examples():
    a, b = cyc("2/3"), cyc("1+i")
    single = SignatureGrid((SymSignature([a, 1, b]),), (), (), (Dangling("gen", 0, 0), Dangling("gen", 0, 1)))
    t = fgate_signature(single)
    assert [t["00"], t["01"], t["10"], t["11"]] == [a, ONE, ONE, b]
    assert symmetric_project(t) == SymSignature([a, 1, b])
    assert transfer_matrix(single) == [[a], [ONE], [b]]

    eq = SignatureGrid((), (EQ3,), (), tuple(Dangling("rec", 0, p) for p in range(3)))
    assert symmetric_project(fgate_signature(eq)).values == EQ3.values

    gate = load_instance(str(DATA / "finisher_gate.json"))
    t = fgate_signature(gate)
    expected = {"000": 2, "001": 1, "110": 1, "111": 3}
    for idx in range(8):
        bits = format(idx, "03b")
        assert t[bits] == cyc(expected.get(bits, 0))
    with pytest.raises(NotSymmetric) as err:
        symmetric_project(t)
    assert err.value.pair == ("001", "010")


def test_finisher_gate_transfer_matrix():
    gate = load_instance(str(DATA / "finisher_gate.json"))
    assert transfer_matrix(gate) == [[cyc(2), ZERO, ONE], [ONE, ZERO, cyc(3)]]


def _two_by_two_gate(edge_sig, mid_sig) -> SignatureGrid:
    # recognizers 0,1 take one input each; generators 0,1 emit the outputs; generator 2 joins them
    gens = (edge_sig, edge_sig, mid_sig)
    edges = (((0, 0), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (0, 2)), ((2, 1), (1, 2)))
    dangling = (Dangling("rec", 0, 0), Dangling("rec", 1, 0), Dangling("gen", 0, 1), Dangling("gen", 1, 1))
    return SignatureGrid(gens, (EQ3, EQ3), edges, dangling)


def test_transfer_matrix_composition_law():
    from holant_lab.linalg import matmul

    rng = random.Random(7)
    for _ in range(5):
        g1 = _two_by_two_gate(random_signature(rng, 2), random_signature(rng, 2))
        g2 = _two_by_two_gate(random_signature(rng, 2), random_signature(rng, 2))
        T1, T2 = transfer_matrix(g1), transfer_matrix(g2)
        assert transfer_matrix(compose(g1, g2)) == matmul(T2, T1)


def test_transfer_matrix_rejects_asymmetric_gate():
    gens = (SymSignature([1, 2, 3]), SymSignature([1, 5, 7]))
    edges = (((0, 0), (0, 1)), ((1, 0), (0, 2)))
    dangling = (Dangling("rec", 0, 0), Dangling("gen", 0, 1), Dangling("gen", 1, 1))
    gate = SignatureGrid(gens, (EQ3,), edges, dangling)
    with pytest.raises(NotSymmetric):
        transfer_matrix(gate)


def test_signature_reversal_swaps_tensor(rng):
    for _ in range(10):
        sig = random_signature(rng, 2)
        rev = SymSignature(reversed(sig.values))
        single = lambda s: SignatureGrid((s,), (), (), (Dangling("gen", 0, 0), Dangling("gen", 0, 1)))
        t, r = fgate_signature(single(sig)), fgate_signature(single(rev))
        for idx in range(4):
            assert t[idx] == r[3 - idx]


def test_contraction_matches_brute_force_and_order(rng):
    for _ in range(25):
        grid = random_grid(rng, max_slots=0, max_edges=10)
        base = contract(grid).values[0]
        assert base == brute_force_tensor(grid).values[0]
        n = len(grid.generators) + len(grid.recognizers)
        order = list(range(n))
        rng.shuffle(order)
        assert contract(grid, order).values[0] == base


def test_graph_to_grid_preserves_holant(rng):
    from holant_lab.instances import random_cubic_multigraph

    for _ in range(10):
        g = random_cubic_multigraph(rng.choice((2, 4, 6)), rng)
        sig = random_signature(rng, 2)
        assert contract(graph_to_grid(g, sig, EQ3)).values[0] == holant_eval_graph(g, sig)


def test_fill_slots_variants():
    grid = load_instance(str(DATA / "theta_slots.json"))
    assert len(grid.slots()) == 2
    a = grid.fill_slots([7, 11])
    b = grid.fill_slots(SymSignature([7, 11]))
    c = grid.fill_slots([SymSignature([7, 11]), SymSignature([7, 11])])
    assert a == b == c
    assert contract(a).values[0] == cyc(1439)
    with pytest.raises(ArityMismatch):
        grid.fill_slots([1, 2, 3])
    assert SLOT.arity == 1
