"""X-functions, F-polynomials, g-vectors and the separation formulas.

Everything here is driven by a pattern with principal coefficients
(:func:`~gencluster.pattern.with_principal_coefficients`), whose ``Z`` entries
are free tropical generators.  :func:`principal_companion` builds that pattern
for an arbitrary target pattern sharing ``B0``, ``R`` and the initial cluster.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .coeffs import SemifieldSpec, TropicalElement, oplus_fold
from .pattern import ClusterPattern, MutationKit, Seed, with_principal_coefficients
from .symalg import LaurentPoly, LaurentRing, RationalFn


class GradingError(ValueError):
    """An X-function is not homogeneous or has coefficients outside ``Z[Y, Z]``."""


@dataclass(frozen=True)
class XFunction:
    poly: LaurentPoly
    walk: tuple[int, ...]
    index: int


@dataclass(frozen=True)
class FPolynomial:
    """Polynomial in the ``y`` and ``z`` generators (a :class:`LaurentPoly` with no cluster variables)."""

    poly: LaurentPoly

    def constant_term(self) -> int:
        zero = (0,) * self.poly.ring._width
        return self.poly.terms().get(zero, 0)

    def __str__(self):
        return str(self.poly)


def _require_principal(p: ClusterPattern):
    if not p.frozen or len(p.frozen) != p.n or p.C0.tolist() != np.eye(p.n, dtype=int).tolist():
        raise ValueError("an X-function needs a pattern with principal coefficients")


def x_function(p: ClusterPattern, walk: Sequence[int], i: int) -> XFunction:
    """Laurent expansion of ``x_{i;t}`` in a principal-coefficient pattern."""
    _require_principal(p)
    s = p.seed(walk)
    xf = XFunction(s.laurent()[i], tuple(walk), i)
    check_x_function(p, xf)
    return xf


def monomial_degree(p: ClusterPattern, exps: Sequence[int]) -> tuple[int, ...]:
    """``Z^n``-degree with ``deg x_i = e_i``, ``deg y_j = -b_j`` (column ``j`` of ``B0``), ``deg z = 0``."""
    ring = p.ring
    n = p.n
    deg = [int(a) for a in exps[:n]]
    for j, y in enumerate(p.frozen):
        a = exps[ring.index[y]]
        if a:
            for i in range(n):
                deg[i] -= a * int(p.B0[i, j])
    return tuple(deg)


def check_x_function(p: ClusterPattern, xf: XFunction) -> tuple[int, ...]:
    """Verify membership in ``Z[X^±1, Y, Z]`` and homogeneity; returns the degree."""
    ring = p.ring
    coeff_idx = range(ring.nx, ring.nvars)
    degrees = set()
    for e in xf.poly.terms():
        if any(e[j] < 0 for j in coeff_idx):
            raise GradingError(f"negative coefficient exponent in X-function {xf.poly}")
        degrees.add(monomial_degree(p, e))
    if len(degrees) != 1:
        raise GradingError(f"X-function {xf.poly} is not homogeneous: degrees {sorted(degrees)}")
    return degrees.pop()


def coefficient_ring(p: ClusterPattern) -> LaurentRing:
    return LaurentRing((), p.semifield)


def f_polynomial(p: ClusterPattern, xf: XFunction) -> FPolynomial:
    """``F = X|_{x_1 = ... = x_n = 1}``."""
    ring = p.ring
    ones = {x: 1 for x in ring.xnames}
    poly = xf.poly.substitute(ones).to_laurent().convert(coefficient_ring(p))
    return FPolynomial(poly)


def g_vector(p: ClusterPattern, xf: XFunction) -> tuple[int, ...]:
    return check_x_function(p, xf)


def g_matrix_from_grading(p: ClusterPattern, walk: Sequence[int]) -> np.ndarray:
    """``G_t`` with the g-vectors as columns."""
    cols = [g_vector(p, x_function(p, walk, i)) for i in range(p.n)]
    return np.array(cols, dtype=np.int64).T.reshape(p.n, p.n)


def f_polynomials(p: ClusterPattern, walk: Sequence[int]) -> list[FPolynomial]:
    return [f_polynomial(p, x_function(p, walk, i)) for i in range(p.n)]


# -- separation formulas --------------------------------------------------------


def principal_companion(target: ClusterPattern) -> tuple[ClusterPattern, dict[str, TropicalElement]]:
    """Principal-coefficient pattern with the same ``B0``, ``R``, ``S`` and cluster names.

    Returns the pattern and the map sending each of its formal ``z``
    generators to the corresponding ``z`` value of ``target``.
    """
    n = target.n
    R = target.R
    taken = set(target.xnames)
    names, zmap_keys = {}, {}
    for i, r in enumerate(R):
        for m in range(1, r // 2 + 1):
            base = f"z{i + 1}_{m}"
            while base in taken:
                base = "_" + base
            taken.add(base)
            names[(i, m)] = base
            zmap_keys[base] = (i, m)
    ynames = []
    for j in range(n):
        y = f"y{j + 1}"
        while y in taken:
            y = "_" + y
        taken.add(y)
        ynames.append(y)
    kit = MutationKit.formal(R, names)
    pr = with_principal_coefficients(target.B0, kit, ynames, target.xnames, target.S)
    zmap = {g: target.kit.z(i, m) for g, (i, m) in zmap_keys.items()}
    return pr, zmap


def tropical_evaluate(F: FPolynomial, values: Mapping[str, TropicalElement], spec: SemifieldSpec) -> TropicalElement:
    """``F|_P``: the ``⊕``-fold over the monomials of ``F`` evaluated in ``P``.

    ``F`` must have positive coefficients (it is subtraction-free).
    """
    ring = F.poly.ring
    terms = F.poly.terms()
    if any(c <= 0 for c in terms.values()):
        raise ValueError(f"tropical evaluation of a polynomial with non-positive coefficients: {F}")
    out = []
    for e in terms:
        v = spec.one()
        for name, a in zip(ring.names, e):
            if a:
                v = v * values[name] ** a
        out.append(v)
    return oplus_fold(out)


def _yhat(target: ClusterPattern, j: int) -> RationalFn:
    ring = target.ring
    v = ring.from_tropical(target.Y0[j])
    for i in range(target.n):
        b = int(target.B0[i, j])
        if b:
            v = v * ring.x(i) ** b
    return RationalFn.from_laurent(v)


def separation_reconstruct(target: ClusterPattern, walk: Sequence[int], i: int,
                           companion=None) -> tuple[RationalFn, TropicalElement]:
    """``(x_{i;t}, y_{i;t})`` of ``target`` from principal-coefficient data alone.

    ``x = X^{g_i} F_i|_F(Yhat, Z) / F_i|_P(Y, Z)`` and
    ``y = Y^{c_i} prod_j (F_j|_P(Y, Z))^{b_ji}``.
    """
    pr, zmap = companion or principal_companion(target)
    walk = tuple(walk)
    n = pr.n
    ring = target.ring
    spec = target.semifield
    ynames = pr.frozen
    trop_vals = {ynames[j]: target.Y0[j] for j in range(n)}
    trop_vals.update(zmap)
    field_vals = {ynames[j]: _yhat(target, j) for j in range(n)}
    field_vals.update(zmap)

    Fs = f_polynomials(pr, walk)
    G = g_matrix_from_grading(pr, walk)
    s_pr = pr.seed(walk)
    C = pr.c_matrix(s_pr)

    mono = ring.one()
    for j in range(n):
        if G[j, i]:
            mono = mono * ring.x(j) ** int(G[j, i])
    F_field = Fs[i].poly.substitute(field_vals, ring)
    F_trop = tropical_evaluate(Fs[i], trop_vals, spec)
    x = RationalFn.from_laurent(mono) * F_field / RationalFn.from_laurent(ring.from_tropical(F_trop))

    y = spec.one()
    for j in range(n):
        if C[j, i]:
            y = y * target.Y0[j] ** int(C[j, i])
        b = int(s_pr.B[j, i])
        if b:
            y = y * tropical_evaluate(Fs[j], trop_vals, spec) ** b
    return x, y


def separation_seed(target: ClusterPattern, walk: Sequence[int], companion=None) -> Seed:
    companion = companion or principal_companion(target)
    pairs = [separation_reconstruct(target, walk, i, companion) for i in range(target.n)]
    s_pr = companion[0].seed(walk)
    return Seed(tuple(x for x, _ in pairs), tuple(y for _, y in pairs), s_pr.B, tuple(walk))
