"""Logarithmic Jacobians (H-matrices) and everything built on the cluster formula.

``H[i][l] = x_{i;t0} / x_{l;t} * d x_{l;t} / d x_{i;t0}``.  Two independent
constructions are provided: :func:`h_matrix_direct` differentiates the cluster
variables, :func:`h_matrix_chain` multiplies the closed-form one-step matrices
along a walk.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import linalg
from .pattern import ClusterPattern, Seed, extend_weak_geometric, reroot
from .report import Report
from .symalg import LaurentRing, RationalFn, SpecializationError


class HMatrix:
    """Square matrix of rational functions in the initial cluster variables."""

    def __init__(self, entries: Sequence[Sequence[RationalFn]], ring: LaurentRing, walk=None, factored=None):
        self.entries = [list(row) for row in entries]
        self.ring = ring
        self.walk = tuple(walk) if walk is not None else None
        # optional (P, L) with H[i][l] = P[i][l] / L[l], all Laurent polynomials
        self.factored = factored

    @classmethod
    def identity(cls, ring: LaurentRing, n: int) -> "HMatrix":
        one = RationalFn.from_laurent(ring.one())
        zero = RationalFn.from_laurent(ring.zero())
        return cls(linalg.identity(n, one, zero), ring, ())

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "HMatrix") -> "HMatrix":
        walk = None
        if self.walk is not None and other.walk is not None:
            walk = self.walk + other.walk
        return HMatrix(linalg.matmul(self.entries, other.entries), self.ring, walk)

    def __eq__(self, other):
        return isinstance(other, HMatrix) and self.entries == other.entries

    def T(self) -> list[list[RationalFn]]:
        return linalg.transpose(self.entries)

    def det(self) -> RationalFn:
        if self.factored is None:
            return linalg.det(self.entries)
        P, L = self.factored
        num = linalg.det(P, divide=lambda u, v: u.exact_div(v))
        den = self.ring.one()
        for x in L:
            den = den * x
        return RationalFn(num, den)

    def inverse(self) -> "HMatrix":
        return HMatrix(linalg.inverse(self.entries), self.ring)

    def substitute(self, mapping, target=None) -> "HMatrix":
        target = target or self.ring
        return HMatrix([[e.substitute(mapping, target) for e in row] for row in self.entries], target)

    def convert(self, target: LaurentRing) -> "HMatrix":
        return HMatrix([[e.convert(target) for e in row] for row in self.entries], target, self.walk)

    def block(self, rows: slice, cols: slice) -> list[list[RationalFn]]:
        return [row[cols] for row in self.entries[rows]]

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries) + "]"


def h_matrix_direct(cluster: Seed | Sequence[RationalFn]) -> HMatrix:
    """H-matrix from the initial seed to ``cluster`` by differentiation.

    ``cluster`` is a seed (or tuple of rational functions) expressed in the
    initial cluster variables of its ring.
    """
    X = cluster.X if isinstance(cluster, Seed) else tuple(cluster)
    walk = cluster.walk if isinstance(cluster, Seed) else None
    ring = X[0].ring
    n = len(X)
    if ring.nx != n:
        raise ValueError("cluster size does not match the number of initial variables")
    if all(x.is_laurent() for x in X):
        L = [x.to_laurent() for x in X]
        P = [[ring.x(i) * L[l].derivative(i) for l in range(n)] for i in range(n)]
        entries = [[RationalFn(P[i][l], L[l]) for l in range(n)] for i in range(n)]
        return HMatrix(entries, ring, walk, factored=(P, L))
    entries = [[X[l].log_derivative(i) for l in range(n)] for i in range(n)]
    return HMatrix(entries, ring, walk)


def _exchange_parts(pattern: ClusterPattern, s: Seed, k: int):
    """``(N, N')`` with ``sum z_m yhat^m = N / Q^r`` and ``sum m z_m yhat^m = N' / Q^r``."""
    ring = pattern.ring
    xs = s.laurent()
    b = s.B
    rk = pattern.R[k]
    P, Q = ring.one(), ring.one()
    for j in range(pattern.n):
        if b[j, k] > 0:
            P = P * xs[j] ** int(b[j, k])
        elif b[j, k] < 0:
            Q = Q * xs[j] ** int(-b[j, k])
    N, Nd = ring.zero(), ring.zero()
    for m in range(rk + 1):
        t = ring.from_tropical(pattern.kit.z(k, m) * s.Y[k] ** m) * P**m * Q ** (rk - m)
        N = N + t
        if m:
            Nd = Nd + t * m
    return N, Nd


def one_step_h(pattern: ClusterPattern, s: Seed, k: int) -> HMatrix:
    """Closed-form ``H_u^v`` for ``v = mu_k(u)``, in the initial variables.

    Column ``k`` holds ``[-b_ik]_+ r_k + b_ik (sum m z_m yhat^m) / (sum z_m yhat^m)``
    for ``i != k`` and ``-1`` on the diagonal; other columns are those of ``I``.
    """
    ring = pattern.ring
    n = pattern.n
    rk = pattern.R[k]
    b = s.B
    N, Nd = _exchange_parts(pattern, s, k)
    ratio = RationalFn(Nd, N)
    one = RationalFn.from_laurent(ring.one())
    zero = RationalFn.from_laurent(ring.zero())
    entries = linalg.identity(n, one, zero)
    for i in range(n):
        if i == k:
            entries[i][k] = -one
        else:
            bik = int(b[i, k])
            entries[i][k] = ratio * bik + max(-bik, 0) * rk
    return HMatrix(entries, ring, (k,))


def h_matrix_chain(pattern: ClusterPattern, walk: Iterable[int]) -> HMatrix:
    """``H_{t0}^{t1} H_{t1}^{t2} ... H_{t_{m-1}}^{t_m}`` from one-step matrices."""
    walk = tuple(walk)
    H = HMatrix.identity(pattern.ring, pattern.n)
    for s_idx, k in enumerate(walk):
        H = H @ one_step_h(pattern, pattern.seed(walk[:s_idx]), k)
    H.walk = walk
    return H


def _diag_inv(R, S) -> list[Fraction]:
    return [Fraction(1) / (Fraction(r) * Fraction(s)) for r, s in zip(R, S)]


def _frac_matrix(m) -> list[list[Fraction]]:
    return linalg.to_fractions(m)


def _entry_str(v) -> str:
    return str(v)


def verify_cluster_formula(H: HMatrix, B_t, B_t0, R, S, m: int | None) -> Report:
    """Check ``H (B_t R^-1 S^-1) H^T = B_t0 R^-1 S^-1`` and ``det H = (-1)^m``.

    ``m=None`` skips the determinant.
    """
    rep = Report("cluster-formula", details={"walk": list(H.walk or ())})
    d = _diag_inv(R, S)
    lhs = linalg.matmul(linalg.matmul(H.entries, linalg.scale_columns(_frac_matrix(B_t), d)), H.T())
    rhs = linalg.scale_columns(_frac_matrix(B_t0), d)
    n = H.n
    for i in range(n):
        for j in range(n):
            rep.checked += 1
            if lhs[i][j] != rhs[i][j]:
                return rep.fail(entry=[i, j], expected=str(rhs[i][j]), got=_entry_str(lhs[i][j]))
    if m is None:
        return rep
    det = H.det()
    rep.checked += 1
    if det != (-1) ** m:
        rep.fail(entry="det", expected=str((-1) ** m), got=str(det))
    return rep


def e_matrix(B, R, k: int, eps: int) -> np.ndarray:
    """``E_k^eps``: identity off column ``k``, ``-1`` at ``(k, k)``, ``[eps b_ik]_+ r_k`` elsewhere."""
    B = np.asarray(B)
    n = B.shape[0]
    E = np.eye(n, dtype=np.int64)
    for i in range(n):
        E[i, k] = -1 if i == k else max(eps * int(B[i, k]), 0) * R[k]
    return E


def degree_limit(f: RationalFn, var: str, at: str) -> RationalFn:
    """Formal limit of ``f`` as ``var`` tends to ``"inf"`` or ``"zero"``.

    Compares the extreme ``var``-degrees of numerator and denominator; raises
    ``ValueError`` when the limit diverges.
    """
    ring = f.ring
    idx = ring.index[var]
    if f.is_zero():
        return f

    def extreme(p, pick):
        terms = p.terms()
        d = pick(e[idx] for e in terms)
        part = {e[:idx] + (0,) + e[idx + 1:]: c for e, c in terms.items() if e[idx] == d}
        return d, ring.from_dict(part)

    pick = max if at == "inf" else min
    dn, ln = extreme(f.num, pick)
    dd, ld = extreme(f.den, pick)
    if dn == dd:
        return RationalFn(ln, ld)
    if (dn < dd) == (at == "inf"):
        return RationalFn.from_laurent(ring.zero())
    raise ValueError(f"{f} diverges as {var} -> {at}")


def e_matrix_by_limit(pattern: ClusterPattern, s: Seed, k: int, eps: int) -> np.ndarray | None:
    """``lim H_0`` with ``x_i = T`` for ``b_ik >= 0``: ``T -> inf`` (eps=+1) or ``T -> 0`` (eps=-1).

    ``H_0`` is the one-step matrix written in the cluster variables of ``s``.

    Returns ``None`` when column ``k`` has no positive entry, where the
    limit does not reduce to ``E_k^eps``.
    """
    b = s.B
    n = pattern.n
    if not any(b[i, k] > 0 for i in range(n)):
        return None
    local = reroot(pattern, s)
    H = one_step_h(local, local.initial_seed(), k)
    ring = local.ring
    tname = "_T"
    big = LaurentRing(ring.xnames + (tname,), ring.semifield)
    T = RationalFn.from_laurent(big.var(tname))
    mapping = {ring.xnames[i]: T for i in range(n) if b[i, k] >= 0}
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            e = H[i, j].convert(big).substitute(mapping)
            lim = degree_limit(e, tname, "inf" if eps > 0 else "zero")
            if not lim.is_constant():
                raise ValueError(f"non-constant limit {lim}")
            out[i, j] = lim.constant_value()
    return out.astype(np.int64)


def g_matrix_from_h(H: HMatrix, y_generators: Sequence[str]) -> np.ndarray:
    """``G_t = H|_{Y=0}`` (formal: drop positive ``y`` powers, reject negative)."""
    n = H.n
    G = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            v = H[i, j].specialize("zero", y_generators)
            if not v.is_constant() or v.constant_value().denominator != 1:
                raise SpecializationError(f"H[{i}][{j}]|_(Y=0) = {v} is not an integer")
            G[i, j] = int(v.constant_value())
    return G


def _const_int_matrix(m) -> np.ndarray:
    rows = []
    for row in m:
        out = []
        for v in row:
            if isinstance(v, RationalFn):
                if not v.is_constant():
                    raise ValueError(f"entry {v} is not constant")
                v = v.constant_value()
            v = Fraction(v)
            if v.denominator != 1:
                raise ValueError(f"entry {v} is not an integer")
            out.append(int(v))
        rows.append(out)
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(rows[0]) if rows else 0)


class RecoveryError(ValueError):
    """The input is not a cluster of the pattern (the recovered matrix is not a valid witness)."""


def _b_from_h(Hinv, pattern: ClusterPattern):
    d = _diag_inv(pattern.R, pattern.S)
    sr = [Fraction(r) * Fraction(s) for r, s in zip(pattern.R, pattern.S)]
    core = linalg.scale_columns(_frac_matrix(pattern.B0), d)
    HinvT = linalg.transpose(Hinv)
    return linalg.scale_columns(linalg.matmul(linalg.matmul(Hinv, core), HinvT), sr)


def _c_from_h(Hinv, H_t, B_t, pattern: ClusterPattern):
    d = _diag_inv(pattern.R, pattern.S)
    sr = [Fraction(r) * Fraction(s) for r, s in zip(pattern.R, pattern.S)]
    first = linalg.scale_columns(
        linalg.matmul(linalg.scale_columns(_frac_matrix(pattern.C0), d), linalg.transpose(Hinv)), sr
    )
    second = linalg.matmul(H_t, B_t)
    return [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(first, second)]


def _sample_points(ring: LaurentRing, tries: int = 20):
    rng = np.random.default_rng(len(ring.names))
    for _ in range(tries):
        yield [int(v) * int(rng.choice([-1, 1])) for v in rng.integers(2, 50, size=ring.nvars)]


def _evaluate_inverse(H: HMatrix):
    """``(H(p), H(p)^{-1})`` at the first sample point where both exist."""
    for pt in _sample_points(H.ring):
        try:
            Hp = [[e.evaluate(pt) for e in row] for row in H.entries]
            return pt, linalg.inverse(Hp)
        except ZeroDivisionError:
            continue
    raise RecoveryError("no sample point where the H-matrix is defined and invertible")


def _certify_b(H: HMatrix, B_t: np.ndarray, pattern: ClusterPattern):
    rep = verify_cluster_formula(H, B_t, pattern.B0, pattern.R, pattern.S, None)
    if not rep:
        raise RecoveryError(f"recovered B_t fails the cluster formula: {rep.witness}")


def recover_B_from_cluster(X_t: Seed | Sequence[RationalFn], pattern: ClusterPattern,
                           method: str = "point") -> np.ndarray:
    """``B_t = H^{-1} B0 R^-1 S^-1 (H^T)^{-1} S R``, computed from the cluster alone.

    ``method="symbolic"`` inverts ``H`` over the field of rational functions.
    ``method="point"`` (default, much faster) uses that the right-hand side is
    constant: it is evaluated exactly at an integer point, and the candidate
    is then certified symbolically through ``H (B_t R^-1 S^-1) H^T = B0 R^-1 S^-1``.
    Since ``H`` is invertible that identity has a unique solution.
    """
    if isinstance(X_t, Seed):
        X_t = X_t.X
    H = h_matrix_direct(X_t)
    if method == "symbolic":
        return _const_int_matrix(_b_from_h(H.inverse().entries, pattern))
    if method != "point":
        raise ValueError(f"unknown method {method!r}")
    _, Hinv = _evaluate_inverse(H)
    try:
        B_t = _const_int_matrix(_b_from_h(Hinv, pattern))
    except ValueError as exc:
        raise RecoveryError(str(exc)) from None
    _certify_b(H, B_t, pattern)
    return B_t


def frozen_block_h(X_t: Seed | Sequence[RationalFn], pattern: ClusterPattern) -> list[list[RationalFn]]:
    """Lower-left ``h x n`` block ``H_t`` of the extended pattern's H-matrix.

    The extended cluster is ``(x_{1;t}, ..., x_{n;t}, u_1, ..., u_h)`` with the
    frozen generators promoted to variables.
    """
    if isinstance(X_t, Seed):
        X_t = X_t.X
    ext = extend_weak_geometric(pattern)
    n = pattern.n
    cluster = [x.convert(ext.ring) for x in X_t]
    cluster += [RationalFn.from_laurent(ext.ring.x(n + j)) for j in range(len(pattern.frozen))]
    H = h_matrix_direct(cluster)
    return [[e.convert(pattern.ring) for e in row] for row in H.block(slice(n, None), slice(0, n))]


def recover_C_from_cluster(X_t: Seed | Sequence[RationalFn], pattern: ClusterPattern,
                           H_t: list[list[RationalFn]] | None = None, method: str = "point") -> np.ndarray:
    """C-matrix of a weakly geometric pattern recovered from the cluster.

    Uses ``(H_t B_t + C_t) R^-1 S^-1 H^T = C0 R^-1 S^-1`` (the lower-left block of
    the cluster formula for the extended pattern), i.e.
    ``C_t = C0 R^-1 S^-1 (H^T)^{-1} S R - H_t B_t``.  ``method`` is as in
    :func:`recover_B_from_cluster`; the point method certifies its answer
    with the identity above.
    """
    if isinstance(X_t, Seed):
        X_t = X_t.X
    h = len(pattern.frozen or ())
    if h == 0:
        return np.zeros((0, pattern.n), dtype=np.int64)
    if H_t is None:
        H_t = frozen_block_h(X_t, pattern)
    H = h_matrix_direct(X_t)
    if method == "symbolic":
        Hinv = H.inverse().entries
        return _const_int_matrix(_c_from_h(Hinv, H_t, _b_from_h(Hinv, pattern), pattern))
    if method != "point":
        raise ValueError(f"unknown method {method!r}")
    pt, Hinv = _evaluate_inverse(H)
    try:
        B_t = _const_int_matrix(_b_from_h(Hinv, pattern))
        H_tp = [[e.evaluate(pt) for e in row] for row in H_t]
        C_t = _const_int_matrix(_c_from_h(Hinv, H_tp, _frac_matrix(B_t), pattern))
    except (ValueError, ZeroDivisionError) as exc:
        raise RecoveryError(str(exc)) from None
    _certify_b(H, B_t, pattern)
    # certify (H_t B_t + C_t) R^-1 S^-1 H^T = C0 R^-1 S^-1
    d = _diag_inv(pattern.R, pattern.S)
    inner = linalg.matmul(H_t, _frac_matrix(B_t))
    inner = [[a + int(c) for a, c in zip(row, crow)] for row, crow in zip(inner, C_t.tolist())]
    lhs = linalg.matmul(linalg.scale_columns(inner, d), H.T())
    rhs = linalg.scale_columns(_frac_matrix(pattern.C0), d)
    if lhs != rhs:
        raise RecoveryError("recovered C_t fails the frozen-block identity")
    return C_t


def two_form_witness(pattern: ClusterPattern) -> Callable[[Seed], list[list[Fraction]]]:
    """``Omega_t = B_t R^-1 S^-1``, which always satisfies the transformation law."""
    d = _diag_inv(pattern.R, pattern.S)
    return lambda s: linalg.scale_columns(_frac_matrix(s.B), d)


def check_compatible_two_form(omega: Callable[[Seed], Sequence[Sequence]], pattern: ClusterPattern,
                              walks: Iterable[Sequence[int]]) -> Report:
    """Check ``H_{t0}^t Omega_t H_{t0}^t^T = Omega_{t0}`` on each walk."""
    rep = Report("two-form")
    om0 = _frac_matrix(omega(pattern.initial_seed()))
    for walk in walks:
        walk = tuple(walk)
        s = pattern.seed(walk)
        om = _frac_matrix(omega(s))
        if om != [[-v for v in col] for col in linalg.transpose(om)]:
            return rep.fail(walk=list(walk), entry="skew", got=str(om))
        H = h_matrix_direct(s)
        lhs = linalg.matmul(linalg.matmul(H.entries, om), H.T())
        rep.checked += 1
        for i in range(pattern.n):
            for j in range(pattern.n):
                if lhs[i][j] != om0[i][j]:
                    return rep.fail(walk=list(walk), entry=[i, j],
                                    expected=str(om0[i][j]), got=str(lhs[i][j]))
    return rep
