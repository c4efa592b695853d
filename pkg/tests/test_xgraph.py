import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gencluster.coeffs import SemifieldSpec
from gencluster.dmat import DMatrixPattern, MatrixSeed
from gencluster.pattern import (ClusterPattern, MutationKit, Seed, with_principal_coefficients,
                                with_trivial_coefficients)
from gencluster.xgraph import (IncompleteGraphError, adjacency_iff_common_variables, canonical_key, digest,
                               edges_change_one_variable, enumerate_exchange_graph,
                               finite_type_equivalence, graphs_agree, seed_determined_by_cluster)

from helpers import principal, random_config, trivial

RANK2 = [[0, -1], [1, 0]]
A3 = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]


@pytest.mark.parametrize("B0, R, count", [
    (RANK2, (1, 1), 5),
    (RANK2, (2, 1), 6),
    (RANK2, (1, 2), 6),
    (RANK2, (3, 1), 8),
    (RANK2, (1, 3), 8),
    (A3, (1, 1, 1), 14),
    (A3, (2, 1, 1), 20),
])
def test_finite_graph_counts(B0, R, count):
    p = trivial(B0, R)
    g = enumerate_exchange_graph(p, 100)
    assert g.complete and len(g) == count
    assert len(g.edges) == count * len(R) // 2
    assert not g.self_loops
    assert len(enumerate_exchange_graph(DMatrixPattern(B0, R), 100)) == count
    assert len(enumerate_exchange_graph(principal(B0, R), 100)) == count
    rep = graphs_agree(p, 100)
    assert rep, rep.witness
    assert seed_determined_by_cluster(g)
    assert adjacency_iff_common_variables(g)
    assert edges_change_one_variable(g, p)


def test_graph_does_not_depend_on_z():
    spec = SemifieldSpec([["u", "w"]])
    u, w = spec.gen("u"), spec.gen("w")
    sizes = []
    for z in (spec.one(), u, u * w**-2, w**3):
        kit = MutationKit((3, 1), {(0, 1): z, (0, 2): z}, spec)
        p = ClusterPattern(RANK2, kit, spec, [u, w**-1])
        g = enumerate_exchange_graph(p, 50)
        assert g.complete
        rep = graphs_agree(p, 50)
        assert rep, rep.witness
        sizes.append(len(g))
    assert sizes == [8] * 4


def test_rank_one():
    g = enumerate_exchange_graph(principal([[0]], (3,)), 10)
    assert g.complete and len(g) == 2 and len(g.edges) == 1


def test_infinite_type_is_truncated():
    p = trivial([[0, -2], [2, 0]], (1, 1))
    g = enumerate_exchange_graph(p, 12)
    assert not g.complete and len(g) == 12
    with pytest.raises(IncompleteGraphError):
        adjacency_iff_common_variables(g)
    with pytest.raises(IncompleteGraphError):
        graphs_agree(p, 12)
    gd = enumerate_exchange_graph(DMatrixPattern([[0, -1], [1, 0]], (2, 2)), 12)
    assert not gd.complete


def test_finite_type_equivalence():
    assert finite_type_equivalence(RANK2, (2, 1), 50)
    rep = finite_type_equivalence(RANK2, (2, 2), 15)
    assert rep and not rep.details["generalized"]["complete"]


def _relabel(s: Seed, perm) -> Seed:
    B = np.asarray(s.B)[np.ix_(perm, perm)]
    return Seed(tuple(s.X[i] for i in perm), tuple(s.Y[i] for i in perm), B, s.walk)


@given(st.integers(0, 10**6), st.permutations([0, 1, 2]))
def test_canonical_key_is_relabeling_invariant(seed, perm):
    B0, R, walk = random_config(seed, ns=(3,))
    p = principal(B0, R)
    s = p.seed(walk)
    assert canonical_key(_relabel(s, list(perm))) == canonical_key(s)
    ms = DMatrixPattern(B0, R).seed(walk)
    permuted = MatrixSeed(ms.D[:, list(perm)], ms.Q[np.ix_(perm, perm)])
    assert canonical_key(permuted) == canonical_key(ms)


def test_canonical_key_separates_seeds(example):
    keys = {canonical_key(example.seed(w)) for w in [(), (0,), (1,), (0, 1)]}
    assert len(keys) == 4
    assert len(digest(next(iter(keys)))) == 12


def test_parallel_enumeration_matches():
    p = trivial(A3, (2, 1, 1))
    a, b = enumerate_exchange_graph(p, 100), enumerate_exchange_graph(p, 100, workers=4)
    assert a.vertices == b.vertices and a.edges == b.edges


def test_exports(example):
    g = enumerate_exchange_graph(example, 100)
    data = g.to_json()
    json.dumps(data)
    assert data["complete"] and len(data["vertices"]) == 6 and len(data["edges"]) == 6
    assert data["root"] == digest(canonical_key(example.initial_seed()))
    assert all(e[2] in (1, 2) for e in data["edges"])
    dot = g.to_dot()
    assert dot.startswith("graph exchange {") and dot.count(" -- ") == 6
    assert "doublecircle" in dot
