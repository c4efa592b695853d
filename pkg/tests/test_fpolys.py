import numpy as np
import pytest
from hypothesis import given, strategies as st

from gencluster.coeffs import SemifieldSpec
from gencluster.fpolys import (FPolynomial, GradingError, XFunction, check_x_function, coefficient_ring,
                               f_polynomial, f_polynomials, g_matrix_from_grading, monomial_degree,
                               principal_companion, separation_reconstruct, separation_seed,
                               tropical_evaluate, x_function)
from gencluster.jacobian import g_matrix_from_h, h_matrix_direct
from gencluster.pattern import ClusterPattern, MutationKit, with_geometric_coefficients
from gencluster.symalg import LaurentRing
from gencluster.verify import check_c_g_duality, check_separation

from helpers import principal, random_config, trivial

seeds = st.integers(0, 10**6)


def test_x_function_one_step(example):
    xf = x_function(example, [0], 0)
    assert xf.poly == example.ring.parse("(1 + z*y1*x2 + y1^2*x2^2)/x1").to_laurent()
    F = f_polynomial(example, xf)
    assert F.poly == coefficient_ring(example).parse("1 + z*y1 + y1^2").to_laurent()
    assert F.constant_term() == 1
    assert check_x_function(example, xf) == (-1, 0)


def test_grading_of_generators(example):
    ring = example.ring
    deg = lambda name: monomial_degree(example, [1 if v == name else 0 for v in ring.names])
    assert deg("x1") == (1, 0) and deg("x2") == (0, 1)
    assert deg("y1") == (0, -1) and deg("y2") == (1, 0)
    assert deg("z") == (0, 0)


def test_inhomogeneous_rejected(example):
    ring = example.ring
    with pytest.raises(GradingError):
        check_x_function(example, XFunction(ring.parse("x1 + x2").to_laurent(), (), 0))
    with pytest.raises(GradingError):
        check_x_function(example, XFunction(ring.parse("x2/y1").to_laurent(), (), 0))


def test_x_function_needs_principal(example_trivial):
    with pytest.raises(ValueError):
        x_function(example_trivial, [0], 0)


@given(seeds)
def test_f_polynomials_and_g_vectors(seed):
    B0, R, walk = random_config(seed)
    p = principal(B0, R)
    for F in f_polynomials(p, walk):
        assert F.constant_term() == 1
        assert all(c > 0 for c in F.poly.terms().values())
    G = g_matrix_from_grading(p, walk)
    assert G.tolist() == g_matrix_from_h(h_matrix_direct(p.seed(walk)), p.frozen).tolist()
    rep = check_c_g_duality(p, walk)
    assert rep, rep.witness


def test_tropical_evaluate():
    spec = SemifieldSpec([["u"], ["z"]])
    F = FPolynomial(LaurentRing((), SemifieldSpec([["y1", "z"]])).parse("1 + z*y1 + y1^2").to_laurent())
    u, z = spec.gen("u"), spec.gen("z")
    assert tropical_evaluate(F, {"y1": u**-1, "z": z}, spec) == u**-2
    assert tropical_evaluate(F, {"y1": u, "z": z}, spec) == spec.one()
    bad = FPolynomial(F.poly - F.poly.ring.parse("2*y1").to_laurent())
    with pytest.raises(ValueError):
        tropical_evaluate(bad, {"y1": u, "z": z}, spec)


def test_companion_avoids_name_clashes():
    kit = MutationKit.formal([2, 1], {(0, 1): "w"})
    spec = kit.spec
    p = ClusterPattern([[0, -1], [1, 0]], kit, spec, xnames=["y1", "z1_1"])
    pr, zmap = principal_companion(p)
    assert pr.frozen == ("_y1", "y2")
    assert set(zmap) == {"_z1_1"}
    assert check_separation(p, (0, 1, 0))


def test_separation_worked_example(example):
    ring = example.ring
    x, y = separation_reconstruct(example, (0, 1), 0)
    assert x == ring.parse("(1 + z*y1*x2 + y1^2*x2^2)/x1")
    assert x == example.seed((0, 1)).X[0]


def test_separation_with_nontrivial_normalizer():
    spec = SemifieldSpec([["u"], ["w"]])
    kit = MutationKit((2, 1), {(0, 1): spec.gen("w")}, spec)
    u = spec.gen("u")
    p = ClusterPattern([[0, -1], [1, 0]], kit, spec, [u**-1, u**2])
    for walk in [(0,), (0, 1), (1, 0, 1), (0, 1, 0, 1, 0)]:
        rep = check_separation(p, walk)
        assert rep, rep.witness


@given(seeds)
def test_separation_random_targets(seed):
    B0, R, walk = random_config(seed, max_len=4, max_d=5)
    rng = np.random.default_rng(seed)
    C0 = rng.integers(-2, 3, size=(2, len(R)))
    targets = [trivial(B0, R), with_geometric_coefficients(B0, MutationKit.formal(R), C0)]
    for p in targets:
        rep = check_separation(p, walk)
        assert rep, rep.witness


def test_separation_seed_matches_b(example):
    s = separation_seed(example, (1, 0))
    assert s.B.tolist() == example.seed((1, 0)).B.tolist()
