"""Coefficient semifields: finite products of tropical semifields and their group rings.

A :class:`SemifieldSpec` names the free generators of ``Trop(u_1, ..., u_h)``,
grouped into blocks (one block per tropical factor of a product semifield).
Because the auxiliary addition of a product of tropical semifields is the
componentwise minimum within each factor, it is also the componentwise
minimum on the concatenated exponent vector, so blocks only matter for
bookkeeping and serialization.
"""

from __future__ import annotations

from functools import reduce
from itertools import chain
from typing import Iterable, Mapping


class SemifieldError(ValueError):
    """Raised on malformed semifield data or when mixing different semifields."""


class SemifieldSpec:
    """Ordered, named generators of a product of tropical semifields.

    Parameters
    ----------
    blocks : iterable of iterables of str
        Generator names, one inner sequence per tropical factor. Names must be
        unique across all blocks. No blocks (or only empty ones) gives the
        trivial semifield ``{1}``.
    """

    __slots__ = ("blocks", "generators", "_index")

    def __init__(self, blocks: Iterable[Iterable[str]] = ()):
        self.blocks = tuple(tuple(str(g) for g in block) for block in blocks)
        self.generators = tuple(chain.from_iterable(self.blocks))
        if len(set(self.generators)) != len(self.generators):
            raise SemifieldError(f"duplicate generator names in {self.generators}")
        self._index = {g: i for i, g in enumerate(self.generators)}

    @classmethod
    def trivial(cls) -> "SemifieldSpec":
        return cls(())

    def __len__(self):
        return len(self.generators)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SemifieldError(f"unknown generator {name!r}") from None

    def __eq__(self, other):
        return isinstance(other, SemifieldSpec) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"SemifieldSpec({[list(b) for b in self.blocks]!r})"

    def product(self, other: "SemifieldSpec") -> "SemifieldSpec":
        """The product semifield ``self ⨿ other`` (blocks concatenated)."""
        return SemifieldSpec(self.blocks + other.blocks)

    def one(self) -> "TropicalElement":
        return TropicalElement(self, {})

    def gen(self, name: str) -> "TropicalElement":
        self.index(name)
        return TropicalElement(self, {name: 1})

    def element(self, exponents: Mapping[str, int]) -> "TropicalElement":
        return TropicalElement(self, exponents)

    def to_json(self):
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json(cls, data) -> "SemifieldSpec":
        if data and all(isinstance(g, str) for g in data):
            data = [data]
        return cls(data)


class TropicalElement:
    """A Laurent monomial ``prod u_i^{a_i}`` in a tropical product semifield.

    Multiplication adds exponents and ``⊕`` (the ``|`` operator) takes the
    componentwise minimum. Absent generators have exponent 0.
    """

    __slots__ = ("spec", "_exps", "_hash")

    def __init__(self, spec: SemifieldSpec, exponents: Mapping[str, int] = ()):
        self.spec = spec
        exps = {}
        for name, e in dict(exponents).items():
            spec.index(name)
            if int(e) != e:
                raise SemifieldError(f"non-integer exponent {e!r} for {name}")
            if e:
                exps[name] = int(e)
        self._exps = exps
        self._hash = None

    @classmethod
    def from_vector(cls, spec: SemifieldSpec, vector: Iterable[int]) -> "TropicalElement":
        vector = list(vector)
        if len(vector) != len(spec):
            raise SemifieldError("exponent vector length does not match the semifield")
        return cls(spec, dict(zip(spec.generators, vector)))

    @property
    def exponents(self) -> dict[str, int]:
        return dict(self._exps)

    def vector(self) -> tuple[int, ...]:
        return tuple(self._exps.get(g, 0) for g in self.spec.generators)

    def exponent(self, name: str) -> int:
        return self._exps.get(name, 0)

    def is_one(self) -> bool:
        return not self._exps

    def _check(self, other):
        if not isinstance(other, TropicalElement):
            raise TypeError(f"expected TropicalElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SemifieldError("tropical elements belong to different semifields")

    def __mul__(self, other):
        self._check(other)
        exps = dict(self._exps)
        for g, e in other._exps.items():
            exps[g] = exps.get(g, 0) + e
        return TropicalElement(self.spec, exps)

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self) -> "TropicalElement":
        return TropicalElement(self.spec, {g: -e for g, e in self._exps.items()})

    def __pow__(self, k: int):
        return TropicalElement(self.spec, {g: e * k for g, e in self._exps.items()})

    def __or__(self, other):
        """Auxiliary addition ⊕."""
        self._check(other)
        keys = self._exps.keys() | other._exps.keys()
        return TropicalElement(
            self.spec, {g: min(self._exps.get(g, 0), other._exps.get(g, 0)) for g in keys}
        )

    oplus = __or__

    def __eq__(self, other):
        return (
            isinstance(other, TropicalElement)
            and self.spec == other.spec
            and self._exps == other._exps
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, frozenset(self._exps.items())))
        return self._hash

    def __repr__(self):
        return f"TropicalElement({self})"

    def __str__(self):
        if not self._exps:
            return "1"
        parts = []
        for g in self.spec.generators:
            e = self._exps.get(g, 0)
            if e == 1:
                parts.append(g)
            elif e:
                parts.append(f"{g}^{e}")
        return "*".join(parts)

    def to_json(self) -> dict[str, int]:
        return {g: self._exps[g] for g in self.spec.generators if g in self._exps}


def trop_mul(a: TropicalElement, b: TropicalElement) -> TropicalElement:
    return a * b


def trop_oplus(a: TropicalElement, b: TropicalElement) -> TropicalElement:
    return a | b


def oplus_fold(elems: Iterable[TropicalElement]) -> TropicalElement:
    """⊕ of a nonempty collection of tropical elements."""
    elems = list(elems)
    if not elems:
        raise SemifieldError("oplus_fold of an empty list")
    return reduce(trop_oplus, elems)


class CoeffRingElement:
    """Element of the group ring ``ZP``: a finite integer combination of tropical elements."""

    __slots__ = ("spec", "_terms")

    def __init__(self, spec: SemifieldSpec, terms: Mapping[TropicalElement, int] = ()):
        self.spec = spec
        acc: dict[TropicalElement, int] = {}
        for mono, c in dict(terms).items():
            if mono.spec != spec:
                raise SemifieldError("term from a different semifield")
            acc[mono] = acc.get(mono, 0) + int(c)
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def from_int(cls, spec: SemifieldSpec, c: int) -> "CoeffRingElement":
        return cls(spec, {spec.one(): c})

    @classmethod
    def from_monomial(cls, p: TropicalElement, c: int = 1) -> "CoeffRingElement":
        return cls(p.spec, {p: c})

    @property
    def terms(self) -> dict[TropicalElement, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other):
        if isinstance(other, int):
            return CoeffRingElement.from_int(self.spec, other)
        if isinstance(other, TropicalElement):
            return CoeffRingElement.from_monomial(other)
        if not isinstance(other, CoeffRingElement):
            return NotImplemented
        if other.spec != self.spec:
            raise SemifieldError("ring elements belong to different semifields")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return CoeffRingElement(self.spec, terms)

    __radd__ = __add__

    def __neg__(self):
        return CoeffRingElement(self.spec, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[TropicalElement, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                terms[m] = terms.get(m, 0) + c1 * c2
        return CoeffRingElement(self.spec, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = CoeffRingElement.from_int(self.spec, other)
        return (
            isinstance(other, CoeffRingElement)
            and self.spec == other.spec
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.spec, frozenset(self._terms.items())))

    def __repr__(self):
        return f"CoeffRingElement({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        items = sorted(self._terms.items(), key=lambda mc: mc[0].vector())
        out = []
        for m, c in items:
            if m.is_one():
                out.append(str(c))
            elif c == 1:
                out.append(str(m))
            elif c == -1:
                out.append(f"-{m}")
            else:
                out.append(f"{c}*{m}")
        return " + ".join(out).replace("+ -", "- ")
