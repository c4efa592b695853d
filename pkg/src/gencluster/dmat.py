"""d-vectors and D-matrix patterns."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .pattern import (ClusterPattern, MutationKit, Seed, as_matrix, exact_array, mutate_matrix, times_R,
                      with_trivial_coefficients)
from .report import Report
from .symalg import RationalFn


def d_vector_extract(x: RationalFn) -> tuple[int, ...]:
    """``d_j = -(minimal exponent of x_j)`` in the Laurent expansion of ``x``."""
    lp = x.to_laurent()
    if lp.is_zero():
        raise ValueError("zero has no d-vector")
    return tuple(-int(a) for a in lp.min_exponents()[: lp.ring.nx])


def d_matrix(s: Seed) -> np.ndarray:
    """D-matrix with the d-vectors of ``s`` as columns."""
    cols = [d_vector_extract(x) for x in s.X]
    n = len(cols)
    return exact_array([[cols[j][i] for j in range(n)] for i in range(n)], (n, n))


@dataclass(frozen=True, eq=False)
class MatrixSeed:
    D: np.ndarray
    Q: np.ndarray
    walk: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return self.D.shape[0]

    def __eq__(self, other):
        return (isinstance(other, MatrixSeed) and np.array_equal(self.D, other.D)
                and np.array_equal(self.Q, other.Q))

    def __hash__(self):
        return hash((str(self.D.tolist()), str(self.Q.tolist())))

    def to_json(self) -> dict:
        return {"D": self.D.tolist(), "Q": self.Q.tolist()}


def initial_matrix_seed(B0, R: Sequence[int]) -> MatrixSeed:
    """``(-I_n, B0 R)``."""
    Q = times_R(B0, R)
    return MatrixSeed(-np.eye(Q.shape[0], dtype=np.int64), Q)


def mutate_matrix_seed(ms: MatrixSeed, k: int) -> MatrixSeed:
    """Column ``k`` of ``D`` by the d-vector recurrence; ``Q`` by ordinary matrix mutation."""
    D, Q = ms.D.tolist(), ms.Q.tolist()
    n = ms.n
    newD = [row[:] for row in D]
    for i in range(n):
        pos = sum(D[i][l] * Q[l][k] for l in range(n) if Q[l][k] > 0)
        neg = -sum(D[i][l] * Q[l][k] for l in range(n) if Q[l][k] < 0)
        newD[i][k] = -D[i][k] + max(pos, neg)
    return MatrixSeed(exact_array(newD, (n, n)), mutate_matrix(ms.Q, k), ms.walk + (k,))


class DMatrixPattern:
    """D-matrix pattern rooted at ``(-I_n, B0 R)``."""

    def __init__(self, B0, R: Sequence[int]):
        self.root = initial_matrix_seed(B0, R)
        self.n = self.root.n
        self._seeds = {(): self.root}

    @classmethod
    def from_matrix_seed(cls, ms: MatrixSeed) -> "DMatrixPattern":
        out = cls.__new__(cls)
        out.root = ms
        out.n = ms.n
        out._seeds = {(): ms}
        return out

    def seed(self, walk: Iterable[int] = ()) -> MatrixSeed:
        walk = tuple(walk)
        if walk not in self._seeds:
            self._seeds[walk] = mutate_matrix_seed(self.seed(walk[:-1]), walk[-1])
        return self._seeds[walk]

    def mutate(self, ms: MatrixSeed, k: int) -> MatrixSeed:
        return mutate_matrix_seed(ms, k)


def check_d_recurrence(p: ClusterPattern, walks: Iterable[Sequence[int]]) -> Report:
    """Recurrence D-matrices against denominators of the actual cluster variables."""
    rep = Report("d-recurrence")
    dp = DMatrixPattern(p.B0, p.R)
    for walk in walks:
        walk = tuple(walk)
        s = p.seed(walk)
        ms = dp.seed(walk)
        rep.checked += 1
        got = d_matrix(s)
        if not np.array_equal(got, ms.D):
            return rep.fail(walk=list(walk), expected=ms.D.tolist(), got=got.tolist())
        QR = times_R(s.B, p.R)
        if not np.array_equal(QR, ms.Q):
            return rep.fail(walk=list(walk), entry="Q", expected=QR.tolist(), got=ms.Q.tolist())
    return rep


def d_vectors_match_standard(B0, R: Sequence[int], walks: Iterable[Sequence[int]]) -> Report:
    """d-vectors of the generalized pattern ``(B0, R)`` against the standard pattern ``B0 R``."""
    rep = Report("d-standard")
    B0 = as_matrix(B0)
    gen = with_trivial_coefficients(B0, MutationKit.formal(R))
    std = with_trivial_coefficients(times_R(B0, R), MutationKit.formal([1] * len(R)))
    for walk in walks:
        walk = tuple(walk)
        rep.checked += 1
        a, b = d_matrix(gen.seed(walk)), d_matrix(std.seed(walk))
        if not np.array_equal(a, b):
            return rep.fail(walk=list(walk), generalized=a.tolist(), standard=b.tolist())
    return rep
