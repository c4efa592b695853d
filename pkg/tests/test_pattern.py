from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gencluster import linalg
from gencluster.coeffs import SemifieldSpec
from gencluster.pattern import (ClusterPattern, MutationKit, PatternError, extend_weak_geometric,
                                find_symmetrizer, is_skew_balance, mutate_c_matrix, mutate_matrix,
                                mutate_matrix_generalized, restrict, restrict_seed, skew_balance, times_R,
                                with_geometric_coefficients, with_principal_coefficients,
                                with_trivial_coefficients)

from helpers import principal, random_config, trivial

seeds = st.integers(0, 10**6)


def test_find_symmetrizer():
    assert find_symmetrizer([[0, -1], [1, 0]]) == (1, 1)
    assert find_symmetrizer([[0, -1], [2, 0]]) == (2, 1)
    with pytest.raises(PatternError):
        find_symmetrizer([[0, 1], [1, 0]])
    with pytest.raises(PatternError):
        find_symmetrizer([[0, 1], [0, 0]])
    # cycle inconsistency: products around the triangle disagree
    with pytest.raises(PatternError):
        find_symmetrizer([[0, 1, -1], [-2, 0, 1], [1, -1, 0]])


def test_skew_balance():
    assert skew_balance((2, 1), (2, 1)) == (2, 2)
    assert skew_balance((3, 1, 2), (1, 1, 1)) == (3, 1, 2)
    assert is_skew_balance((1, 2), (2, 1), [[0, -1], [1, 0]])
    assert is_skew_balance((2, 2), (2, 1), [[0, -1], [2, 0]])


def test_matrix_mutation_examples():
    out = mutate_matrix_generalized([[0, -1], [1, 0]], (2, 1), 0)
    assert out.tolist() == [[0, 1], [-1, 0]]
    B = np.array([[0, 1, -1], [-1, 0, 2], [1, -2, 0]])
    out = mutate_matrix_generalized(B, (2, 1, 3), 1)
    assert out[1].tolist() == (-B[1]).tolist() and out[:, 1].tolist() == (-B[:, 1]).tolist()


@given(seeds)
def test_generalized_mutation_commutes_with_R(seed):
    B0, R, _ = random_config(seed, ns=(2, 3, 4), max_entry=3)
    for k in range(len(R)):
        lhs = mutate_matrix(times_R(B0, R), k)
        rhs = times_R(mutate_matrix_generalized(B0, R, k), R)
        assert np.array_equal(lhs, rhs)


def test_standard_rank2_step():
    p = trivial([[0, -1], [1, 0]], (1, 1))
    assert p.seed([0]).X[0] == p.ring.parse("(1 + x2)/x1")


def test_worked_example_cluster(example):
    ring = example.ring
    x1, x2 = ring.parse("x1"), ring.parse("x2")
    yh1, yh2 = ring.parse("y1*x2"), ring.parse("y2/x1")
    z = ring.parse("z")
    s = example.seed([0, 1])
    # 1 ⊕ z y1 ⊕ y1^2 = 1 and 1 ⊕ y2 ⊕ ... = 1 in Trop(y1, y2) ⨿ Trop(z)
    assert s.X[0] == (1 + z * yh1 + yh1**2) / x1
    assert s.X[1] == (1 + yh2 + z * yh1 * yh2 + yh1**2 * yh2) / x2
    assert s.X[0] != (1 + z * yh1 + yh2**2) / x1
    assert s.B.tolist() == [[0, -1], [1, 0]]


def test_worked_example_with_nontrivial_normalizer():
    spec = SemifieldSpec([["u"], ["z"]])
    kit = MutationKit((2, 1), {(0, 1): spec.gen("z")}, spec)
    u = spec.gen("u")
    p = ClusterPattern([[0, -1], [1, 0]], kit, spec, [u**-1, u], S=[1, 2])
    ring = p.ring
    s = p.seed([0])
    # y1 = u^-1: normalizer 1 ⊕ z u^-1 ⊕ u^-2 = u^-2
    expected = (1 + ring.parse("z*u^-1*x2") + ring.parse("u^-2*x2^2")) / ring.parse("x1*u^-2")
    assert s.X[0] == expected


@given(seeds)
def test_mutation_is_an_involution(seed):
    B0, R, walk = random_config(seed)
    for p in (principal(B0, R), trivial(B0, R)):
        s = p.seed(walk)
        for k in range(p.n):
            t = p.mutate(s, k)
            if max(len(x) for x in t.laurent()) < 400:
                assert p.mutate(t, k) == s


@given(seeds)
def test_seed_invariants(seed):
    B0, R, walk = random_config(seed)
    p = principal(B0, R)
    s = p.seed(walk)
    assert is_skew_balance(p.S, p.R, s.B)
    assert linalg.rank(s.B) == linalg.rank(B0)
    assert linalg.int_det(s.B) == linalg.int_det(B0)
    xs = s.laurent()
    ring = p.ring
    for x in xs:
        for e in x.terms():
            assert all(a >= 0 for a in e[ring.nx:])
        assert all(-x != y for y in xs)


def test_c_matrix_mutation_examples():
    C = np.eye(3, dtype=np.int64)
    B = np.array([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    for k in range(3):
        out = mutate_c_matrix(C, B, (1, 2, 1), k)
        assert out[:, k].tolist() == (-np.eye(3, dtype=int)[:, k]).tolist()


@given(seeds)
def test_c_matrix_tracks_tropical_coefficients(seed):
    B0, R, walk = random_config(seed)
    rng = np.random.default_rng(seed)
    C0 = rng.integers(-2, 3, size=(2, len(R)))
    p = with_geometric_coefficients(B0, MutationKit.formal(R), C0)
    C = p.C0
    for i, k in enumerate(walk):
        C_next = mutate_c_matrix(C, p.seed(walk[:i]).B, R, k)
        assert np.array_equal(C_next, p.c_matrix(p.seed(walk[: i + 1])))
        assert np.array_equal(mutate_c_matrix(C_next, p.seed(walk[: i + 1]).B, R, k), C)
        C = C_next


def test_principal_construction():
    kit = MutationKit.formal([2, 1], {(0, 1): "z"})
    p = with_principal_coefficients([[0, -1], [1, 0]], kit)
    assert p.C0.tolist() == [[1, 0], [0, 1]]
    assert [str(y) for y in p.Y0] == ["y1", "y2"]
    assert set(p.semifield.generators) == {"y1", "y2", "z"}


def test_kit_validation():
    spec = SemifieldSpec([["a", "b"]])
    with pytest.raises(PatternError):
        MutationKit((3,), {(0, 1): spec.gen("a"), (0, 2): spec.gen("b")}, spec)
    with pytest.raises(PatternError):
        MutationKit((1,), {(0, 1): spec.gen("a")}, spec)
    with pytest.raises(PatternError):
        MutationKit((0,), {}, spec)


def test_rank_one():
    p = principal([[0]], (2,))
    s = p.seed([0])
    assert s.X[0] == p.ring.parse("(1 + z1_1*y1 + y1^2)/x1")
    assert p.seed([0, 0]) == p.initial_seed()


def test_restriction_examples(example):
    full = restrict(example, [0, 1])
    assert full.B0.tolist() == example.B0.tolist()
    assert full.seed([0, 1]).X == example.seed([0, 1]).X
    sub = restrict(example, [0])
    assert str(sub.Y0[0]) == "y1*x2"
    with pytest.raises(PatternError):
        restrict(example, [])


@given(seeds)
def test_restricted_seeds_agree(seed):
    B0, R, walk = random_config(seed, ns=(3,))
    p = principal(B0, R)
    J = [0, 2]
    sub = restrict(p, J)
    jwalk = tuple(k for k in walk if k in J)
    local = tuple(J.index(k) for k in jwalk)
    assert sub.seed(local) == restrict_seed(p, p.seed(jwalk), J, sub)


@given(seeds)
def test_extension_restricts_and_has_block_form(seed):
    B0, R, walk = random_config(seed)
    p = principal(B0, R)
    ext = extend_weak_geometric(p)
    n, h = p.n, len(p.frozen)
    assert ext.B0[n:, :n].tolist() == np.eye(n, dtype=int).tolist()
    s, t = p.seed(walk), ext.seed(walk)
    for a, b in zip(s.X, t.X[:n]):
        assert a.convert(ext.ring) == b
    C = p.c_matrix(s)
    top_right = [[Fraction(-int(C[j, i]), p.S[i] * p.R[i]) for j in range(h)] for i in range(n)]
    assert [[Fraction(v) for v in row] for row in np.asarray(t.B)[:n, n:].tolist()] == top_right
    assert np.asarray(t.B)[n:, :n].astype(int).tolist() == C.tolist()
    assert np.asarray(t.B)[:n, :n].astype(int).tolist() == s.B.tolist()
