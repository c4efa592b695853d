"""Per-walk identity checks and reproducible random configurations.

Each ``check_*`` function returns a :class:`~gencluster.report.Report` for one
walk; :data:`IDENTITIES` maps the names used on the command line to them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .dmat import DMatrixPattern, d_matrix
from .fpolys import (GradingError, f_polynomials, g_matrix_from_grading, principal_companion,
                     separation_seed, x_function)
from .jacobian import (check_compatible_two_form, g_matrix_from_h, h_matrix_chain, h_matrix_direct,
                       recover_B_from_cluster, recover_C_from_cluster, two_form_witness,
                       verify_cluster_formula)
from .pattern import (ClusterPattern, MutationKit, find_symmetrizer, is_skew_balance, PatternError,
                      times_R, with_principal_coefficients, with_trivial_coefficients)
from .report import Report


def check_cluster_formula(p: ClusterPattern, walk: Sequence[int]) -> Report:
    """Cluster formula and determinant, plus agreement of the two H constructions."""
    walk = tuple(walk)
    s = p.seed(walk)
    H = h_matrix_direct(s)
    rep = verify_cluster_formula(H, s.B, p.B0, p.R, p.S, len(walk))
    rep.details["walk"] = list(walk)
    if not rep:
        return rep
    Hc = h_matrix_chain(p, walk)
    rep.checked += 1
    if Hc != H:
        for i in range(p.n):
            for j in range(p.n):
                if Hc[i, j] != H[i, j]:
                    return rep.fail(walk=list(walk), entry=[i, j], expected=str(H[i, j]),
                                    got=str(Hc[i, j]), reason="chain product differs from direct H")
    return rep


def check_structure(p: ClusterPattern, walk: Sequence[int]) -> Report:
    """Involution at every step of the walk, rank/det of ``B_t`` and skew-symmetry of ``S R B_t``."""
    walk = tuple(walk)
    rep = Report("structure", details={"walk": list(walk)})
    s = p.seed(walk)
    r0, d0 = linalg.rank(p.B0), linalg.int_det(p.B0)
    rep.checked += 3
    if linalg.rank(s.B) != r0:
        return rep.fail(walk=list(walk), entry="rank")
    if linalg.int_det(s.B) != d0:
        return rep.fail(walk=list(walk), entry="det")
    if not is_skew_balance(p.S, p.R, s.B):
        return rep.fail(walk=list(walk), entry="SRB")
    for i, k in enumerate(walk):
        rep.checked += 1
        if p.mutate(p.seed(walk[: i + 1]), k) != p.seed(walk[:i]):
            return rep.fail(walk=list(walk[: i + 1]), entry="involution", direction=k)
    for x in s.laurent():
        rep.checked += 1
        if any(-y == x for y in s.laurent()):
            return rep.fail(walk=list(walk), entry="negative cluster variable")
    return rep


def check_c_g_duality(p: ClusterPattern, walk: Sequence[int]) -> Report:
    """F-polynomials, grading and ``S R C R^-1 S^-1 G^T = I`` on the principal companion of ``p``."""
    walk = tuple(walk)
    rep = Report("c-g-duality", details={"walk": list(walk)})
    pr = p if _is_principal(p) else principal_companion(p)[0]
    try:
        for i in range(pr.n):
            x_function(pr, walk, i)
            rep.checked += 1
    except GradingError as exc:
        return rep.fail(walk=list(walk), reason=str(exc))
    for i, F in enumerate(f_polynomials(pr, walk)):
        rep.checked += 1
        if F.constant_term() != 1:
            return rep.fail(walk=list(walk), entry=f"F{i + 1}", got=str(F))
    G = g_matrix_from_grading(pr, walk)
    s = pr.seed(walk)
    GH = g_matrix_from_h(h_matrix_direct(s), pr.frozen)
    rep.checked += 1
    if not np.array_equal(G, GH):
        return rep.fail(walk=list(walk), entry="G", expected=G.tolist(), got=GH.tolist())
    C = pr.c_matrix(s)
    sr = [Fraction(r) * Fraction(x) for r, x in zip(pr.R, pr.S)]
    lhs = linalg.matmul(linalg.scale_columns(linalg.scale_rows(sr, linalg.to_fractions(C)),
                                             [1 / v for v in sr]), linalg.to_fractions(G.T))
    rep.checked += 1
    if lhs != linalg.identity(pr.n, Fraction(1), Fraction(0)):
        return rep.fail(walk=list(walk), entry="duality", got=[[str(v) for v in row] for row in lhs])
    rep.checked += 1
    if abs(linalg.int_det(G)) != 1:
        return rep.fail(walk=list(walk), entry="det G")
    return rep


def _is_principal(p: ClusterPattern) -> bool:
    return bool(p.frozen) and len(p.frozen) == p.n and np.array_equal(p.C0, np.eye(p.n, dtype=np.int64))


def check_separation(p: ClusterPattern, walk: Sequence[int], companion=None) -> Report:
    walk = tuple(walk)
    rep = Report("separation", details={"walk": list(walk)})
    direct = p.seed(walk)
    rebuilt = separation_seed(p, walk, companion)
    for i in range(p.n):
        rep.checked += 1
        if direct.X[i] != rebuilt.X[i]:
            return rep.fail(walk=list(walk), entry=f"x{i + 1}", expected=str(direct.X[i]), got=str(rebuilt.X[i]))
        if direct.Y[i] != rebuilt.Y[i]:
            return rep.fail(walk=list(walk), entry=f"y{i + 1}", expected=str(direct.Y[i]), got=str(rebuilt.Y[i]))
    return rep


def check_d_recurrence(p: ClusterPattern, walk: Sequence[int]) -> Report:
    """Recurrence D against denominators, for ``p`` and for the standard pattern ``B0 R``."""
    walk = tuple(walk)
    rep = Report("d-recurrence", details={"walk": list(walk)})
    ms = DMatrixPattern(p.B0, p.R).seed(walk)
    D = d_matrix(p.seed(walk))
    rep.checked += 1
    if not np.array_equal(D, ms.D):
        return rep.fail(walk=list(walk), expected=ms.D.tolist(), got=D.tolist())
    if not np.array_equal(times_R(p.seed(walk).B, p.R), ms.Q):
        return rep.fail(walk=list(walk), entry="Q")
    std = with_trivial_coefficients(times_R(p.B0, p.R), MutationKit.formal([1] * p.n), xnames=p.xnames)
    Dstd = d_matrix(std.seed(walk))
    rep.checked += 1
    if not np.array_equal(D, Dstd):
        return rep.fail(walk=list(walk), entry="standard", expected=Dstd.tolist(), got=D.tolist())
    return rep


def check_two_form(p: ClusterPattern, walk: Sequence[int]) -> Report:
    rep = check_compatible_two_form(two_form_witness(p), p, [tuple(walk)])
    rep.details["walk"] = list(walk)
    return rep


def check_recovery(p: ClusterPattern, walk: Sequence[int]) -> Report:
    """``B_t`` (and ``C_t`` when weakly geometric) recovered from the cluster alone."""
    walk = tuple(walk)
    rep = Report("recovery", details={"walk": list(walk)})
    s = p.seed(walk)
    B = recover_B_from_cluster(s.X, p)
    rep.checked += 1
    if not np.array_equal(B, s.B):
        return rep.fail(walk=list(walk), entry="B", expected=s.B.tolist(), got=B.tolist())
    if p.frozen:
        C = recover_C_from_cluster(s.X, p)
        rep.checked += 1
        if not np.array_equal(C, p.c_matrix(s)):
            return rep.fail(walk=list(walk), entry="C", expected=p.c_matrix(s).tolist(), got=C.tolist())
    return rep


IDENTITIES: dict[str, Callable[[ClusterPattern, Sequence[int]], Report]] = {
    "cluster-formula": check_cluster_formula,
    "c-g-duality": check_c_g_duality,
    "separation": check_separation,
    "d-recurrence": check_d_recurrence,
    "two-form": check_two_form,
    "structure": check_structure,
    "recovery": check_recovery,
}


# -- reproducible randomness ---------------------------------------------------


def random_walk(rng: np.random.Generator, n: int, length: int) -> tuple[int, ...]:
    """Reduced walk (no immediate repetition) of exactly ``length`` steps."""
    walk = []
    for _ in range(length):
        choices = [k for k in range(n) if not walk or k != walk[-1]] or [0]
        walk.append(int(rng.choice(choices)))
    return tuple(walk)


def random_walks(rng: np.random.Generator, n: int, count: int, max_len: int) -> list[tuple[int, ...]]:
    return [random_walk(rng, n, int(rng.integers(0, max_len + 1))) for _ in range(count)]


def random_exchange_matrix(rng: np.random.Generator, n: int, max_entry: int = 3) -> np.ndarray:
    """Skew-symmetrizable ``n x n`` matrix with ``|b_ij| <= max_entry`` (rejection sampling)."""
    while True:
        b = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                v = int(rng.integers(-max_entry, max_entry + 1))
                if v:
                    w = -int(np.sign(v)) * int(rng.integers(1, max_entry + 1))
                    b[i, j], b[j, i] = v, w
        try:
            find_symmetrizer(b)
        except PatternError:
            continue
        return b


def d_growth(B0, R, walk) -> int:
    """Largest ``|d|`` entry along ``walk``: a cheap proxy for the size of the cluster variables."""
    dp = DMatrixPattern(B0, R)
    return max(max(abs(v) for v in dp.seed(walk[:i]).D.flat) for i in range(len(walk) + 1))


def admissible_prefix(B0, R, walk, max_d: int) -> tuple[int, ...]:
    """Longest prefix of ``walk`` along which every d-vector entry stays within ``max_d``."""
    dp = DMatrixPattern(B0, R)
    for i in range(len(walk) + 1):
        if max(abs(v) for v in dp.seed(walk[:i]).D.flat) > max_d:
            return tuple(walk[: i - 1])
    return tuple(walk)


@dataclass
class SweepCase:
    B0: np.ndarray
    R: tuple[int, ...]
    walk: tuple[int, ...]
    mode: str

    def pattern(self) -> ClusterPattern:
        kit = MutationKit.formal(self.R)
        if self.mode == "principal":
            return with_principal_coefficients(self.B0, kit)
        return with_trivial_coefficients(self.B0, kit)

    def describe(self) -> dict:
        return {"B0": self.B0.tolist(), "R": list(self.R), "walk": [k + 1 for k in self.walk], "mode": self.mode}


def sweep_cases(seed: int, count: int, ns=(2, 3, 4), max_entry: int = 3, max_r: int = 3,
                max_len: int = 6, max_d: int = 10, modes=("principal", "trivial")) -> list[SweepCase]:
    """``count`` pseudorandom configurations with walks whose d-vectors stay bounded by ``max_d``.

    Walks that leave the bound are cut back to their longest admissible prefix,
    so very fast-growing (wild) configurations still contribute short walks.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.choice(ns))
        B0 = random_exchange_matrix(rng, n, max_entry)
        R = tuple(int(v) for v in rng.integers(1, max_r + 1, size=n))
        walk = random_walk(rng, n, int(rng.integers(1, max_len + 1)))
        walk = admissible_prefix(B0, R, walk, max_d)
        mode = modes[len(out) % len(modes)]
        out.append(SweepCase(B0, R, walk, mode))
    return out
