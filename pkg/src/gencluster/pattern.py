"""Seeds and (R, Z)-mutation of generalized cluster patterns.

Directions are 0-based throughout the Python API (the CLI and JSON files use
1-based directions).  Exchange matrices are numpy arrays; they are integer
except for the frozen block of an extended pattern, which may carry
``Fraction`` entries (dtype ``object``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from .coeffs import SemifieldSpec, TropicalElement, oplus_fold
from .symalg import LaurentPoly, LaurentRing, NotLaurentError, RationalFn


class PatternError(ValueError):
    """Invalid pattern data (matrix, mutation kit, coefficients)."""


def _pos(a):
    return a if a > 0 else 0


def _exact(a):
    """Collapse integral Fractions to int."""
    if isinstance(a, Fraction) and a.denominator == 1:
        return a.numerator
    return a


_INT64 = 2**63


def exact_array(rows: Sequence[Sequence], shape=None) -> np.ndarray:
    """``int64`` array when every entry is an int in range, else an ``object`` array.

    Mutation can square entries at each step, so large values fall back to
    Python integers instead of wrapping around.
    """
    rows = [[_exact(v) for v in r] for r in rows]
    shape = shape or (len(rows), len(rows[0]) if rows else 0)
    if all(isinstance(v, (int, np.integer)) and -_INT64 <= v < _INT64 for r in rows for v in r):
        return np.array(rows, dtype=np.int64).reshape(shape)
    out = np.empty(shape, dtype=object)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = int(v) if isinstance(v, np.integer) else v
    return out


def as_matrix(b) -> np.ndarray:
    """Square exact matrix; ``int64`` when integral and in range, ``object`` otherwise."""
    rows = [[_exact(Fraction(v)) for v in row] for row in np.asarray(b, dtype=object).tolist()]
    if rows and any(len(r) != len(rows) for r in rows):
        raise PatternError("exchange matrix must be square")
    return _freeze(exact_array(rows, (len(rows), len(rows))))


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


# -- exchange matrices --------------------------------------------------------


def is_skew_symmetric(m) -> bool:
    m = np.asarray(m, dtype=object)
    return bool(np.all(m == -m.T))


def find_symmetrizer(b) -> tuple[int, ...]:
    """Minimal positive integer diagonal ``T`` with ``T b`` skew-symmetric.

    ``T`` is fixed up to scaling on each connected component of the sign
    pattern; each component is scaled to have gcd 1.
    """
    b = np.asarray(b, dtype=object)
    n = b.shape[0]
    if b.shape != (n, n):
        raise PatternError("matrix must be square")
    for i in range(n):
        if b[i, i] != 0:
            raise PatternError(f"nonzero diagonal entry b[{i}][{i}]")
        for j in range(i + 1, n):
            if (b[i, j] == 0) != (b[j, i] == 0) or b[i, j] * b[j, i] > 0:
                raise PatternError(f"sign pattern violated at ({i}, {j}): not skew-symmetrizable")
    t: list[Fraction | None] = [None] * n
    for root in range(n):
        if t[root] is not None:
            continue
        t[root] = Fraction(1)
        component, stack = [root], [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or b[i, j] == 0:
                    continue
                # t_i b_ij = -t_j b_ji
                tj = t[i] * Fraction(b[i, j]) / Fraction(-b[j, i])
                if t[j] is None:
                    t[j] = tj
                    component.append(j)
                    stack.append(j)
                elif t[j] != tj:
                    raise PatternError("cycle condition violated: not skew-symmetrizable")
        den = lcm(*(t[i].denominator for i in component))
        ints = [int(t[i] * den) for i in component]
        g = gcd(*ints)
        for i, v in zip(component, ints):
            t[i] = Fraction(v // g)
    return tuple(int(v) for v in t)


def skew_balance(T: Sequence[int], R: Sequence[int]) -> tuple[int, ...]:
    """``S = (prod r_i) T R^{-1}``, a positive integer diagonal."""
    p = prod(R)
    out = []
    for t, r in zip(T, R):
        s = Fraction(p * t, r)
        if s.denominator != 1:
            raise PatternError("skew balance is not integral")
        out.append(int(s))
    return tuple(out)


def is_skew_balance(S: Sequence, R: Sequence[int], b) -> bool:
    """Whether ``S R b`` is skew-symmetric."""
    m = np.asarray(b, dtype=object)
    d = [Fraction(s) * r for s, r in zip(S, R)]
    srb = np.array([[d[i] * m[i, j] for j in range(len(d))] for i in range(len(d))], dtype=object)
    return is_skew_symmetric(srb) if len(d) else True


def mutate_matrix_generalized(b, R: Sequence[int], k: int) -> np.ndarray:
    """Generalized matrix mutation ``mu_k^g``: sign flip in row/column k, else
    ``b_ij + r_k (b_ik [-b_kj]_+ + [b_ik]_+ b_kj)``."""
    b = np.asarray(b)
    n = b.shape[0]
    if not 0 <= k < n:
        raise IndexError(f"direction {k} out of range for rank {n}")
    rk = int(R[k])
    v = b.tolist()
    out = [[-v[i][j] if i == k or j == k
            else v[i][j] + rk * (v[i][k] * _pos(-v[k][j]) + _pos(v[i][k]) * v[k][j])
            for j in range(n)] for i in range(n)]
    return _freeze(exact_array(out, (n, n)))


def mutate_matrix(b, k: int) -> np.ndarray:
    """Ordinary matrix mutation (all ``r_k = 1``)."""
    return mutate_matrix_generalized(b, [1] * np.asarray(b).shape[0], k)


def times_R(b, R: Sequence[int]) -> np.ndarray:
    """``B R`` (column ``j`` scaled by ``r_j``)."""
    v = np.asarray(b).tolist()
    return _freeze(exact_array([[x * int(r) for x, r in zip(row, R)] for row in v], (len(v), len(R))))


def mutate_c_matrix(C, b, R: Sequence[int], k: int) -> np.ndarray:
    """C-matrix mutation: column k negates, otherwise
    ``c_ij + r_k (c_ik [b_kj]_+ + [-c_ik]_+ b_kj)``."""
    C = np.asarray(C)
    b = np.asarray(b)
    h, n = C.shape
    rk = int(R[k])
    c, v = C.tolist(), b.tolist()
    out = [[-c[i][j] if j == k else c[i][j] + rk * (c[i][k] * _pos(v[k][j]) + _pos(-c[i][k]) * v[k][j])
            for j in range(n)] for i in range(h)]
    return _freeze(exact_array(out, (h, n)))


# -- mutation kits -------------------------------------------------------------


def embed(p: TropicalElement, spec: SemifieldSpec) -> TropicalElement:
    """Re-express a tropical element in a larger semifield (matching generators by name)."""
    if p.spec == spec:
        return p
    return TropicalElement(spec, p.exponents)


class MutationKit:
    """The pair ``(R, Z)``: degrees ``r_i >= 1`` and reciprocal ``z_{i,m}`` for ``1 <= m < r_i``."""

    def __init__(self, R: Sequence[int], Z: Mapping[tuple[int, int], TropicalElement], spec: SemifieldSpec):
        self.R = tuple(int(r) for r in R)
        if any(r < 1 for r in self.R):
            raise PatternError("R must have positive integer entries")
        self.spec = spec
        z = {}
        for (i, m), v in Z.items():
            if not 0 <= i < len(self.R) or not 1 <= m < self.R[i]:
                raise PatternError(f"z[{i},{m}] given but r_{i} = {self.R[i] if 0 <= i < len(self.R) else '?'}")
            z[(i, m)] = embed(v, spec)
        for i, r in enumerate(self.R):
            for m in range(1, r):
                if (i, m) not in z:
                    raise PatternError(f"missing z[{i},{m}]")
                if (i, r - m) in z and z[(i, m)] != z[(i, r - m)]:
                    raise PatternError(f"reciprocity violated: z[{i},{m}] != z[{i},{r - m}]")
        self.Z = z

    @classmethod
    def formal(cls, R: Sequence[int], names: Mapping[tuple[int, int], str] | None = None) -> "MutationKit":
        """Z as free tropical generators ``z{i}_{m}`` (1-based i; ``m <= r_i/2``)."""
        names = dict(names or {})
        gens = {}
        for i, r in enumerate(R):
            for m in range(1, r):
                mm = min(m, r - m)
                gens[(i, m)] = names.get((i, mm), f"z{i + 1}_{mm}")
        spec = SemifieldSpec([list(dict.fromkeys(gens.values()))] if gens else [])
        return cls(R, {key: spec.gen(g) for key, g in gens.items()}, spec)

    @classmethod
    def trivial_z(cls, R: Sequence[int], spec: SemifieldSpec | None = None) -> "MutationKit":
        """All ``z_{i,m} = 1``."""
        spec = spec or SemifieldSpec.trivial()
        return cls(R, {(i, m): spec.one() for i, r in enumerate(R) for m in range(1, r)}, spec)

    def z(self, i: int, m: int) -> TropicalElement:
        if m == 0 or m == self.R[i]:
            return self.spec.one()
        return self.Z[(i, m)]

    def reembed(self, spec: SemifieldSpec) -> "MutationKit":
        return MutationKit(self.R, self.Z, spec)

    def restricted(self, J: Sequence[int]) -> "MutationKit":
        J = list(J)
        z = {(J.index(i), m): v for (i, m), v in self.Z.items() if i in J}
        return MutationKit([self.R[j] for j in J], z, self.spec)

    def __eq__(self, other):
        return isinstance(other, MutationKit) and (self.R, self.Z) == (other.R, other.Z)

    def __repr__(self):
        zs = {f"{i + 1},{m}": str(v) for (i, m), v in sorted(self.Z.items())}
        return f"MutationKit(R={self.R}, Z={zs})"


# -- seeds and patterns ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Seed:
    """Labeled seed ``(X, Y, B)``; ``X`` is expressed in the initial cluster variables."""

    X: tuple[RationalFn, ...]
    Y: tuple[TropicalElement, ...]
    B: np.ndarray
    walk: tuple[int, ...] = ()
    _laurent: list = field(default_factory=list, repr=False)

    @property
    def n(self) -> int:
        return len(self.X)

    def laurent(self) -> tuple[LaurentPoly, ...]:
        """Cluster variables as Laurent polynomials (Laurent phenomenon)."""
        if not self._laurent:
            self._laurent.append(tuple(x.to_laurent() for x in self.X))
        return self._laurent[0]

    def __eq__(self, other):
        if not isinstance(other, Seed):
            return NotImplemented
        return self.X == other.X and self.Y == other.Y and np.array_equal(self.B, other.B)

    def __hash__(self):
        return hash((self.X, self.Y))


class ClusterPattern:
    """An (R, Z)-cluster pattern given by its initial seed.

    Parameters
    ----------
    B0 : matrix
        Initial exchange matrix.
    kit : MutationKit
        ``(R, Z)``; ``Z`` must live in ``semifield``.
    semifield : SemifieldSpec
    Y0 : sequence of TropicalElement, optional
        Initial coefficients (default: all 1).
    xnames : sequence of str, optional
        Names of the initial cluster variables (default ``x1..xn``).
    S : sequence, optional
        R-skew-balance; defaults to ``(prod r_i) T R^{-1}``.  Any positive
        diagonal making ``S R B0`` skew-symmetric is accepted.
    frozen : sequence of str, optional
        Generators ``u_1..u_h`` for weakly geometric type; the C-matrix is read
        from the exponents of these generators in ``Y``.
    """

    def __init__(self, B0, kit: MutationKit, semifield: SemifieldSpec, Y0=None,
                 xnames=None, S=None, frozen=None):
        self.B0 = as_matrix(B0)
        n = self.B0.shape[0]
        self.n = n
        if len(kit.R) != n:
            raise PatternError("R and B0 have different sizes")
        self.kit = kit.reembed(semifield)
        self.R = self.kit.R
        self.semifield = semifield
        self.Y0 = tuple(embed(y, semifield) for y in Y0) if Y0 is not None else (semifield.one(),) * n
        if len(self.Y0) != n:
            raise PatternError("Y0 has the wrong length")
        self.xnames = tuple(xnames) if xnames is not None else tuple(f"x{i + 1}" for i in range(n))
        self.ring = LaurentRing(self.xnames, semifield)
        if S is None:
            self.T = find_symmetrizer(self.B0)
            self.S = skew_balance(self.T, self.R)
        else:
            self.S = tuple(_exact(Fraction(s)) for s in S)
            if any(s <= 0 for s in self.S):
                raise PatternError("S must be positive")
            self.T = None
        if not is_skew_balance(self.S, self.R, self.B0):
            raise PatternError("S R B0 is not skew-symmetric")
        self.frozen = tuple(frozen) if frozen is not None else None
        if self.frozen is not None:
            for u in self.frozen:
                semifield.index(u)
        self._seeds: dict[tuple, Seed] = {}

    def __repr__(self):
        return (f"ClusterPattern(B0={self.B0.tolist()}, {self.kit!r}, "
                f"Y0={[str(y) for y in self.Y0]})")

    # -- seeds --

    def initial_seed(self) -> Seed:
        if () not in self._seeds:
            X = tuple(RationalFn.from_laurent(self.ring.x(i)) for i in range(self.n))
            self._seeds[()] = Seed(X, self.Y0, self.B0, ())
        return self._seeds[()]

    def seed(self, walk: Iterable[int] = ()) -> Seed:
        """Seed at the end of ``walk`` (0-based directions) from the initial seed."""
        walk = tuple(walk)
        if walk in self._seeds:
            return self._seeds[walk]
        if not walk:
            return self.initial_seed()
        s = self.mutate(self.seed(walk[:-1]), walk[-1])
        if len(self._seeds) < 50000:
            self._seeds[walk] = s
        return s

    def mutate(self, s: Seed, k: int) -> Seed:
        """(R, Z)-mutation of ``s`` in direction ``k``."""
        n = self.n
        if not 0 <= k < n:
            raise IndexError(f"direction {k} out of range for rank {n}")
        b = s.B
        rk = self.R[k]
        ring = self.ring
        xs = s.laurent()
        yk = s.Y[k]

        P, Q = ring.one(), ring.one()
        for j in range(n):
            bjk = b[j, k]
            if bjk > 0:
                P = P * xs[j] ** _as_int(bjk)
            elif bjk < 0:
                Q = Q * xs[j] ** _as_int(-bjk)
        z_terms = [self.kit.z(k, m) * yk**m for m in range(rk + 1)]
        normalizer = oplus_fold(z_terms)
        Ppow, Qpow = [ring.one()], [ring.one()]
        for _ in range(rk):
            Ppow.append(Ppow[-1] * P)
            Qpow.append(Qpow[-1] * Q)
        numer = ring.zero()
        for m, zt in enumerate(z_terms):
            numer = numer + ring.from_tropical(zt) * Ppow[m] * Qpow[rk - m]
        try:
            new_xk = numer.exact_div(xs[k] * ring.from_tropical(normalizer))
        except NotLaurentError:
            raise NotLaurentError(
                f"mutation at {k} after walk {s.walk} left the Laurent ring"
            ) from None

        X = list(s.X)
        X[k] = RationalFn.from_laurent(new_xk)
        laurent = list(xs)
        laurent[k] = new_xk

        Y = []
        for i in range(n):
            if i == k:
                Y.append(yk.inverse())
            else:
                bki = b[k, i]
                Y.append(s.Y[i] * _trop_pow(yk, _pos(bki) * rk) * _trop_pow(normalizer, -bki))
        B = mutate_matrix_generalized(b, self.R, k)
        out = Seed(tuple(X), tuple(Y), B, s.walk + (k,))
        out._laurent.append(tuple(laurent))
        return out

    # -- coefficient data --

    @property
    def is_weakly_geometric(self) -> bool:
        return self.frozen is not None

    def c_matrix(self, s: Seed) -> np.ndarray:
        """Exponents of the frozen generators in ``Y`` (``h x n``)."""
        if self.frozen is None:
            raise PatternError("pattern has no designated frozen generators")
        C = exact_array([[y.exponent(u) for y in s.Y] for u in self.frozen], (len(self.frozen), self.n))
        return _freeze(C.reshape(len(self.frozen), self.n))

    @property
    def C0(self) -> np.ndarray:
        return self.c_matrix(self.initial_seed())

    @property
    def z_generators(self) -> tuple[str, ...]:
        gens = set()
        for v in self.kit.Z.values():
            gens |= set(v.exponents)
        return tuple(g for g in self.semifield.generators if g in gens)

    def with_coefficients(self, semifield: SemifieldSpec, Y0, frozen=None) -> "ClusterPattern":
        """Same ``B0``, ``R``, ``Z`` and initial cluster over a different coefficient semifield."""
        return ClusterPattern(self.B0, self.kit.reembed(semifield), semifield, Y0,
                              self.xnames, self.S, frozen)


def _as_int(a) -> int:
    a = _exact(a)
    if not isinstance(a, (int, np.integer)):
        raise PatternError(f"non-integer exchange exponent {a}")
    return int(a)


def _trop_pow(p: TropicalElement, e) -> TropicalElement:
    e = _exact(e)
    if p.is_one():
        return p
    return p ** _as_int(e)


# -- pattern constructors --------------------------------------------------------


def _z_spec(kit: MutationKit) -> SemifieldSpec:
    return kit.spec


def with_principal_coefficients(B0, kit: MutationKit, ynames=None, xnames=None, S=None) -> ClusterPattern:
    """Principal coefficients: ``P = Trop(y_1..y_n) ⨿ (Z's semifield)``, ``Y0 = (y_1..y_n)``, ``C0 = I``."""
    n = np.asarray(B0).shape[0]
    ynames = tuple(ynames) if ynames is not None else tuple(f"y{i + 1}" for i in range(n))
    spec = SemifieldSpec([list(ynames)]).product(_z_spec(kit))
    Y0 = [spec.gen(y) for y in ynames]
    return ClusterPattern(B0, kit.reembed(spec), spec, Y0, xnames, S, frozen=ynames)


def with_trivial_coefficients(B0, kit: MutationKit, xnames=None, S=None) -> ClusterPattern:
    """``Y0 = 1``; the semifield is the one carrying ``Z``.  Weakly geometric with ``h = 0``."""
    spec = _z_spec(kit)
    return ClusterPattern(B0, kit, spec, None, xnames, S, frozen=())


def with_geometric_coefficients(B0, kit: MutationKit, C0, unames=None, xnames=None, S=None) -> ClusterPattern:
    """``Y0_j = prod_i u_i^{C0[i][j]}`` in ``Trop(u_1..u_h) ⨿ (Z's semifield)``."""
    C0 = np.asarray(C0, dtype=np.int64)
    h = C0.shape[0]
    unames = tuple(unames) if unames is not None else tuple(f"u{i + 1}" for i in range(h))
    spec = SemifieldSpec([list(unames)]).product(_z_spec(kit))
    Y0 = [spec.element({u: int(C0[i, j]) for i, u in enumerate(unames)}) for j in range(C0.shape[1])]
    return ClusterPattern(B0, kit.reembed(spec), spec, Y0, xnames, S, frozen=unames)


def standard_pattern(p: ClusterPattern) -> ClusterPattern:
    """The induced standard pattern with initial matrix ``B0 R`` and ``R = I``."""
    kit = MutationKit([1] * p.n, {}, p.semifield)
    return ClusterPattern(times_R(p.B0, p.R), kit, p.semifield, p.Y0, p.xnames, None, p.frozen)


def reroot(p: ClusterPattern, s: Seed, xnames=None) -> ClusterPattern:
    """Pattern with initial seed ``(fresh variables, Y_s, B_s)``."""
    return ClusterPattern(s.B, p.kit, p.semifield, s.Y, xnames or p.xnames, p.S, p.frozen)


def restrict(p: ClusterPattern, J: Sequence[int]) -> ClusterPattern:
    """Restriction to directions ``J`` at the initial seed.

    The variables ``x_i`` (``i`` not in ``J``) become tropical generators of
    an extra block, and ``y_j`` becomes ``y_j prod_{i not in J} x_i^{b_ij}``.
    """
    J = sorted(set(J))
    if not J:
        raise PatternError("restriction to an empty index set")
    if not all(0 <= j < p.n for j in J):
        raise PatternError("restriction index out of range")
    out_idx = [i for i in range(p.n) if i not in J]
    frozen_names = [p.xnames[i] for i in out_idx]
    spec = p.semifield.product(SemifieldSpec([frozen_names] if frozen_names else []))
    Y0 = []
    for j in J:
        y = embed(p.Y0[j], spec)
        extra = {p.xnames[i]: _as_int(p.B0[i, j]) for i in out_idx}
        Y0.append(y * spec.element(extra))
    B = as_matrix([[p.B0[i, j] for j in J] for i in J])
    kit = p.kit.restricted(J).reembed(spec)
    frozen = None
    if p.frozen is not None:
        frozen = p.frozen + tuple(frozen_names)
    return ClusterPattern(B, kit, spec, Y0, [p.xnames[j] for j in J], [p.S[j] for j in J], frozen)


def restrict_seed(p: ClusterPattern, s: Seed, J: Sequence[int], target: ClusterPattern) -> Seed:
    """The seed ``Σ_t^{t0}(J)`` of ``restrict(p, J)`` read off a seed of ``p``."""
    J = sorted(set(J))
    out_idx = [i for i in range(p.n) if i not in J]
    spec = target.semifield
    X = tuple(s.X[j].convert(target.ring) for j in J)
    Y = []
    for j in J:
        extra = {p.xnames[i]: _as_int(s.B[i, j]) for i in out_idx}
        Y.append(embed(s.Y[j], spec) * spec.element(extra))
    B = as_matrix([[s.B[i, j] for j in J] for i in J])
    return Seed(X, tuple(Y), B, s.walk)


def extend_weak_geometric(p: ClusterPattern) -> ClusterPattern:
    """Rank ``n + h`` pattern with frozen variables ``x_{n+j} = u_j`` and no ``Y``.

    ``B~0 = [[B0, -R^{-1} S^{-1} C0^T], [C0, 0]]``, ``R~ = diag(R, I_h)``,
    ``S~ = diag(S, I_h)``.  The original pattern is its restriction to the
    first ``n`` directions.
    """
    if p.frozen is None:
        raise PatternError("extension needs a weakly geometric pattern")
    n, h = p.n, len(p.frozen)
    C0 = p.C0
    top_right = [[Fraction(-int(C0[j, i]), p.R[i]) / Fraction(p.S[i]) for j in range(h)] for i in range(n)]
    B = [[p.B0[i, j] for j in range(n)] + top_right[i] for i in range(n)]
    B += [[int(C0[j, i]) for i in range(n)] + [0] * h for j in range(h)]
    blocks = [[g for g in block if g not in p.frozen] for block in p.semifield.blocks]
    spec = SemifieldSpec([blk for blk in blocks if blk])
    for z in p.kit.Z.values():
        if any(g in p.frozen for g in z.exponents):
            raise PatternError("Z must not involve the frozen generators")
    kit = MutationKit(p.R + (1,) * h, p.kit.Z, spec)
    return ClusterPattern(B, kit, spec, None, p.xnames + p.frozen, tuple(p.S) + (1,) * h, frozen=())
