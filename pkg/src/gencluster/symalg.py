"""Exact Laurent polynomials and rational functions over ZP.

Every coefficient ring ``ZP`` used here is the group ring of a product of
tropical semifields, i.e. a Laurent polynomial ring over ``Z`` in the
semifield generators.  ``ZP[x_1^±1, ..., x_n^±1]`` is therefore handled as one
Laurent polynomial ring over ``Z`` in ``n + h`` variables: the first ``n`` are
the initial cluster variables, the remaining ``h`` are the tropical
generators.  Polynomial gcd and exact division are delegated to FLINT
(``python-flint``).

Canonical forms
---------------
* :class:`LaurentPoly` stores ``x^shift * poly`` where ``poly`` is a genuine
  polynomial not divisible by any variable.  This representation is unique.
* :class:`RationalFn` stores ``num / den`` where ``den`` is a polynomial not
  divisible by any variable, ``gcd(num, den) = 1`` and the term of ``den``
  with lexicographically least exponent vector has a positive coefficient.
  Monomial units always live in ``num``.
"""

from __future__ import annotations

import ast
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint

from .coeffs import CoeffRingElement, SemifieldSpec, TropicalElement


class NotLaurentError(ArithmeticError):
    """A rational function that was required to be a Laurent polynomial is not one."""


class SpecializationError(ArithmeticError):
    """A coefficient specialization is undefined for the given input."""


def _flint_divexact(a, b):
    try:
        return a / b
    except Exception as exc:  # flint raises DomainError
        raise NotLaurentError(str(exc)) from None


class LaurentRing:
    """``Z[x_1^±1..x_n^±1, u_1^±1..u_h^±1]``; instances are cached by signature."""

    _cache: dict = {}

    def __new__(cls, xnames: Sequence[str], semifield: SemifieldSpec | None = None):
        semifield = semifield if semifield is not None else SemifieldSpec.trivial()
        key = (tuple(xnames), semifield)
        ring = cls._cache.get(key)
        if ring is not None:
            return ring
        ring = super().__new__(cls)
        ring.xnames = tuple(str(x) for x in xnames)
        ring.semifield = semifield
        ring.names = ring.xnames + semifield.generators
        if len(set(ring.names)) != len(ring.names):
            raise ValueError(f"cluster variable names clash with generators: {ring.names}")
        ring.nx = len(ring.xnames)
        ring.nvars = len(ring.names)
        ring.index = {name: i for i, name in enumerate(ring.names)}
        # flint needs at least one generator
        ring.ctx = flint.fmpz_mpoly_ctx.get(ring.names or ("_",), "lex")
        ring._width = max(ring.nvars, 1)
        cls._cache[key] = ring
        return ring

    def __reduce__(self):
        return (LaurentRing, (self.xnames, self.semifield))

    def __repr__(self):
        return f"LaurentRing({list(self.xnames)}, {self.semifield!r})"

    # -- constructors -------------------------------------------------------

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, self.ctx.from_dict({}), (0,) * self._width)

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def const(self, c: int) -> "LaurentPoly":
        return self.from_dict({(0,) * self._width: int(c)} if c else {})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        exps = tuple(exps) + (0,) * (self._width - len(exps))
        return self.from_dict({exps: coeff})

    def var(self, name: str) -> "LaurentPoly":
        exps = [0] * self._width
        exps[self.index[name]] = 1
        return self.monomial(exps)

    def x(self, i: int) -> "LaurentPoly":
        """The ``i``-th (0-based) initial cluster variable."""
        return self.var(self.xnames[i])

    def from_dict(self, terms: Mapping[tuple, int]) -> "LaurentPoly":
        terms = {tuple(e): int(c) for e, c in terms.items() if c}
        if not terms:
            return LaurentPoly(self, self.ctx.from_dict({}), (0,) * self._width)
        shift = tuple(min(col) for col in zip(*terms))
        shifted = {tuple(a - s for a, s in zip(e, shift)): c for e, c in terms.items()}
        return LaurentPoly(self, self.ctx.from_dict(shifted), shift)

    def from_tropical(self, p: TropicalElement, coeff: int = 1) -> "LaurentPoly":
        exps = [0] * self._width
        for g, e in p.exponents.items():
            exps[self.index[g]] += e
        return self.monomial(exps, coeff)

    def from_coeff(self, c: CoeffRingElement) -> "LaurentPoly":
        out = {}
        for mono, k in c.terms.items():
            exps = [0] * self._width
            for g, e in mono.exponents.items():
                exps[self.index[g]] += e
            out[tuple(exps)] = out.get(tuple(exps), 0) + k
        return self.from_dict(out)

    def parse(self, text: str) -> "RationalFn":
        return parse_expression(text, self)


class LaurentPoly:
    """Sparse Laurent polynomial ``x^shift * poly`` with ``poly`` free of monomial factors."""

    __slots__ = ("ring", "poly", "shift", "_hash")

    def __init__(self, ring: LaurentRing, poly, shift: tuple):
        self.ring = ring
        self.poly = poly
        self.shift = shift
        self._hash = None

    @classmethod
    def _normalized(cls, ring, poly, shift):
        if poly.is_zero():
            return ring.zero()
        mono = poly.term_content().monoms()[0]
        if any(mono):
            poly = poly / ring.ctx.term(exp_vec=mono)
            shift = tuple(a + b for a, b in zip(shift, mono))
        return cls(ring, poly, shift)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_one(self) -> bool:
        return self.poly.is_one() and not any(self.shift)

    def is_monomial(self) -> bool:
        return len(self.poly) == 1

    def is_unit(self) -> bool:
        """Units of the Laurent ring are ``±`` monomials."""
        return self.is_monomial() and abs(int(self.poly.coeffs()[0])) == 1

    def __len__(self):
        return len(self.poly)

    def terms(self) -> dict[tuple, int]:
        """Full exponent vector (cluster variables then generators) -> integer coefficient."""
        s = self.shift
        return {
            tuple(a + b for a, b in zip(e, s)): int(c)
            for e, c in zip(self.poly.monoms(), self.poly.coeffs())
        }

    def min_exponents(self) -> tuple:
        """Componentwise minimum exponent over all terms (the shift)."""
        return self.shift[: self.ring.nvars]

    def max_exponents(self) -> tuple:
        degs = self.poly.degrees()
        return tuple(a + b for a, b in zip(self.shift, degs))[: self.ring.nvars]

    def coefficients(self) -> dict[tuple, CoeffRingElement]:
        """View as a map from cluster-variable exponents to elements of ``ZP``."""
        nx, spec = self.ring.nx, self.ring.semifield
        grouped: dict[tuple, dict] = defaultdict(dict)
        for e, c in self.terms().items():
            trop = TropicalElement.from_vector(spec, e[nx : self.ring.nvars])
            grouped[e[:nx]][trop] = c
        return {xe: CoeffRingElement(spec, t) for xe, t in grouped.items()}

    def constant_value(self):
        if self.is_zero():
            return 0
        if len(self.poly) == 1 and not any(self.shift) and self.poly.is_constant():
            return int(self.poly.coeffs()[0])
        raise ValueError(f"{self} is not a constant")

    def is_constant(self) -> bool:
        return self.is_zero() or (self.poly.is_constant() and not any(self.shift))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.ring is not self.ring:
                raise ValueError("Laurent polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def _align(self, other):
        s = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        ctx = self.ring.ctx

        def lift(p):
            d = tuple(a - b for a, b in zip(p.shift, s))
            return p.poly * ctx.term(exp_vec=d) if any(d) else p.poly

        return lift(self), lift(other), s

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b, s = self._align(other)
        return LaurentPoly._normalized(self.ring, a + b, s)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, -self.poly, self.shift)

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
        if self.is_zero() or other.is_zero():
            return self.ring.zero()
        # a product of polynomials without monomial factors has none
        shift = tuple(a + b for a, b in zip(self.shift, other.shift))
        return LaurentPoly(self.ring, self.poly * other.poly, shift)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise NotLaurentError(f"negative power of non-unit {self}")
            c = int(self.poly.coeffs()[0]) ** (-k)
            return LaurentPoly(self.ring, self.poly**0 * c, tuple(k * a for a in self.shift))
        return LaurentPoly(self.ring, self.poly**k, tuple(k * a for a in self.shift))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """``self / other`` when it is a Laurent polynomial, else :class:`NotLaurentError`."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q = _flint_divexact(self.poly, other.poly)
        return LaurentPoly(self.ring, q, tuple(a - b for a, b in zip(self.shift, other.shift)))

    def __truediv__(self, other):
        if isinstance(other, RationalFn):
            return RationalFn.from_laurent(self) / other
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFn(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFn(other, self)

    def evaluate(self, point: Sequence[int]) -> Fraction:
        """Exact value at an integer point (one entry per ring variable, all nonzero)."""
        point = [int(v) for v in point]
        if len(point) != self.ring.nvars:
            raise ValueError("point has the wrong number of coordinates")
        vals = point or [1]
        out = Fraction(int(self.poly(*vals)))
        for v, a in zip(point, self.shift):
            if a:
                out *= Fraction(v) ** int(a)
        return out

    def gcd(self, other: "LaurentPoly") -> "LaurentPoly":
        """Gcd of the polynomial parts (monomials are units)."""
        return LaurentPoly(self.ring, self.poly.gcd(other.poly), (0,) * self.ring._width)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if isinstance(other, RationalFn):
            return other == self
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring is other.ring and self.shift == other.shift and self.poly == other.poly

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shift, frozenset(self.terms().items())))
        return self._hash

    # -- calculus and substitution ------------------------------------------

    def derivative(self, i: int | str) -> "LaurentPoly":
        """Partial derivative with respect to variable ``i`` (index or name)."""
        j = self.ring.index[i] if isinstance(i, str) else i
        if self.is_zero():
            return self
        s = self.shift[j]
        ctx = self.ring.ctx
        xj = ctx.term(exp_vec=tuple(int(k == j) for k in range(self.ring._width)))
        body = self.poly * s + xj * self.poly.derivative(j)
        shift = tuple(a - (k == j) for k, a in enumerate(self.shift))
        return LaurentPoly._normalized(self.ring, body, shift)

    def convert(self, target: LaurentRing) -> "LaurentPoly":
        """Re-express in ``target``, matching variables by name."""
        if target is self.ring:
            return self
        src = self.ring
        idx = []
        for k, name in enumerate(src.names):
            idx.append(target.index.get(name))
        out = {}
        for e, c in self.terms().items():
            te = [0] * target._width
            for k, a in enumerate(e[: src.nvars]):
                if a:
                    if idx[k] is None:
                        raise ValueError(f"variable {src.names[k]} does not exist in {target}")
                    te[idx[k]] += a
            te = tuple(te)
            out[te] = out.get(te, 0) + c
        return target.from_dict(out)

    def substitute(self, mapping: Mapping[str, object], target: LaurentRing | None = None):
        """Substitute variables by name; returns a :class:`RationalFn` in ``target``.

        Values may be ints, :class:`LaurentPoly`, :class:`RationalFn` (all in
        ``target``) or :class:`TropicalElement` (embedded as monomials).
        Unmapped variables are carried over by name.
        """
        target = target or self.ring
        return _substitute(self, mapping, target)

    def specialize(self, mode: str = "identity", generators: Iterable[str] | None = None, values=None):
        """Coefficient specialization.

        ``mode="identity"`` sets the given generators (default: all) to 1,
        ``mode="zero"`` is the formal limit ``Y = 0`` on the given generators,
        ``mode="values"`` substitutes ``values`` (a name -> value mapping).
        The result lives in the same ring.
        """
        gens = tuple(generators) if generators is not None else self.ring.semifield.generators
        if mode == "identity":
            return self.substitute({g: 1 for g in gens}).to_laurent()
        if mode == "zero":
            idx = [self.ring.index[g] for g in gens]
            out = {}
            for e, c in self.terms().items():
                if any(e[i] < 0 for i in idx):
                    raise SpecializationError(
                        f"negative exponent on a specialized generator in {self}"
                    )
                if all(e[i] == 0 for i in idx):
                    out[e] = c
            return self.ring.from_dict(out)
        if mode == "values":
            return self.substitute(values).to_laurent()
        raise ValueError(f"unknown specialization mode {mode!r}")

    # -- printing -----------------------------------------------------------

    def __str__(self):
        return format_terms(self.ring, self.terms())

    def __repr__(self):
        return f"LaurentPoly({self})"


def _sort_key(ring, e):
    xe = e[: ring.nx]
    ue = e[ring.nx : ring.nvars]
    return (-sum(xe), tuple(-a for a in xe), -sum(ue), tuple(-a for a in ue))


def format_terms(ring: LaurentRing, terms: Mapping[tuple, int]) -> str:
    """Deterministic graded-lex printer: ``2*x1^2*x2^-1 - y1 + 3``."""
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, key=lambda e: _sort_key(ring, e)):
        c = terms[e]
        factors = []
        for name, a in zip(ring.names, e):
            if a == 1:
                factors.append(name)
            elif a:
                factors.append(f"{name}^{a}")
        mono = "*".join(factors)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


class RationalFn:
    """Canonical quotient of two Laurent polynomials over ``ZP``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, *, _reduced=False):
        ring = num.ring
        if den is None:
            den = ring.one()
        if den.ring is not ring:
            raise ValueError("numerator and denominator from different rings")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self._hash = None
        if num.is_zero():
            self.num, self.den = ring.zero(), ring.one()
            return
        shift = tuple(a - b for a, b in zip(num.shift, den.shift))
        pn, pd = num.poly, den.poly
        if not _reduced and not pd.is_one():
            g = pn.gcd(pd)
            if not g.is_one():
                pn, pd = pn / g, pd / g
        if not pd.is_one():
            lead = min(zip(pd.monoms(), pd.coeffs()))[1]
            if lead < 0:
                pn, pd = -pn, -pd
        zero = (0,) * ring._width
        self.num = LaurentPoly(ring, pn, shift)
        self.den = LaurentPoly(ring, pd, zero)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalFn":
        return cls(p, p.ring.one(), _reduced=True)

    @property
    def ring(self) -> LaurentRing:
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def to_laurent(self) -> LaurentPoly:
        """Exact Laurent division; :class:`NotLaurentError` if the denominator survives."""
        if not self.den.is_one():
            raise NotLaurentError(f"not a Laurent polynomial: {self}")
        return self.num

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self.num.constant_value(), self.den.constant_value())

    def _coerce(self, other):
        if isinstance(other, RationalFn):
            if other.ring is not self.ring:
                raise ValueError("rational functions from different rings")
            return other
        if isinstance(other, LaurentPoly):
            return RationalFn.from_laurent(other)
        if isinstance(other, int):
            return RationalFn.from_laurent(self.ring.const(other))
        if isinstance(other, Fraction):
            return RationalFn(self.ring.const(other.numerator), self.ring.const(other.denominator))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        d1 = self.den.exact_div(g)
        d2 = other.den.exact_div(g)
        return RationalFn(self.num * d2 + other.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, _reduced=True)

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
        if self.is_zero() or other.is_zero():
            return RationalFn.from_laurent(self.ring.zero())
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not d2.is_one():
            g = n1.gcd(d2)
            n1, d2 = n1.exact_div(g), d2.exact_div(g)
        if not d1.is_one():
            g = n2.gcd(d1)
            n2, d1 = n2.exact_div(g), d1.exact_div(g)
        return RationalFn(n1 * n2, d1 * d2, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        return RationalFn(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFn(self.num**k, self.den**k, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def derivative(self, i: int | str) -> "RationalFn":
        """Quotient-rule partial derivative; coefficients in ``ZP`` are constants."""
        if isinstance(i, int) and not 0 <= i < self.ring.nx:
            raise IndexError(f"cluster variable index {i} out of range")
        dn = self.num.derivative(i)
        if self.den.is_one():
            return RationalFn.from_laurent(dn)
        dd = self.den.derivative(i)
        return RationalFn(dn * self.den - self.num * dd, self.den * self.den)

    def log_derivative(self, i: int) -> "RationalFn":
        """``x_i * (d/dx_i f) / f``."""
        xi = self.ring.x(i)
        return RationalFn.from_laurent(xi) * self.derivative(i) / self

    def substitute(self, mapping: Mapping[str, object], target: LaurentRing | None = None):
        target = target or self.ring
        num = self.num.substitute(mapping, target)
        den = self.den.substitute(mapping, target)
        return num / den

    def specialize(self, mode="identity", generators=None, values=None) -> "RationalFn":
        """Specialize numerator and denominator separately (see :meth:`LaurentPoly.specialize`)."""
        num = self.num.specialize(mode, generators, values)
        den = self.den.specialize(mode, generators, values)
        if den.is_zero():
            raise SpecializationError(f"denominator vanishes under specialization of {self}")
        return RationalFn(num, den)

    def evaluate(self, point: Sequence[int]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at {list(point)}")
        return self.num.evaluate(point) / d

    def convert(self, target: LaurentRing) -> "RationalFn":
        if target is self.ring:
            return self
        return RationalFn(self.num.convert(target), self.den.convert(target))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"RationalFn({self})"


def as_rational(value, ring: LaurentRing) -> RationalFn:
    if isinstance(value, RationalFn):
        return value
    if isinstance(value, LaurentPoly):
        return RationalFn.from_laurent(value)
    if isinstance(value, TropicalElement):
        return RationalFn.from_laurent(ring.from_tropical(value))
    if isinstance(value, int):
        return RationalFn.from_laurent(ring.const(value))
    if isinstance(value, Fraction):
        return RationalFn(ring.const(value.numerator), ring.const(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as a rational function")


def _substitute(p: LaurentPoly, mapping, target: LaurentRing) -> RationalFn:
    if p.is_zero():
        return RationalFn.from_laurent(target.zero())
    src = p.ring
    width = target._width
    carried = []  # (source index, target index)
    mono_vals = []  # (source index, coefficient, exponent vector)
    poly_vals = []  # (source index, RationalFn)
    for k, name in enumerate(src.names):
        if name in mapping:
            val = as_rational(mapping[name], target)
            if val.den.is_one() and val.num.is_unit():
                c = int(val.num.poly.coeffs()[0])
                mono_vals.append((k, c, val.num.shift))
            elif val.is_zero():
                poly_vals.append((k, val))
            else:
                poly_vals.append((k, val))
        else:
            if name not in target.index:
                raise ValueError(f"variable {name} is neither substituted nor present in target")
            carried.append((k, target.index[name]))

    terms = p.terms()
    groups: dict[tuple, dict] = defaultdict(dict)
    for e, c in terms.items():
        te = [0] * width
        for k, t in carried:
            te[t] += e[k]
        for k, vc, vexp in mono_vals:
            a = e[k]
            if a:
                if vc == -1 and a % 2:
                    c = -c
                for t in range(width):
                    te[t] += a * vexp[t]
        key = tuple(e[k] for k, _ in poly_vals)
        bucket = groups[key]
        te = tuple(te)
        bucket[te] = bucket.get(te, 0) + c

    if not poly_vals:
        (bucket,) = groups.values() if groups else ({},)
        return RationalFn.from_laurent(target.from_dict(bucket))

    lo = [min(key[j] for key in groups) for j in range(len(poly_vals))]
    hi = [max(key[j] for key in groups) for j in range(len(poly_vals))]
    for j, (_, val) in enumerate(poly_vals):
        if val.is_zero() and lo[j] < 0:
            raise ZeroDivisionError("substitution of zero into a negative power")
    powers: dict[tuple, LaurentPoly] = {}

    def power(j, which, k):
        key = (j, which, k)
        if key not in powers:
            base = poly_vals[j][1].num if which == "n" else poly_vals[j][1].den
            powers[key] = base**k
        return powers[key]

    total = target.zero()
    for key, bucket in groups.items():
        acc = target.from_dict(bucket)
        for j, a in enumerate(key):
            acc = acc * power(j, "n", a - lo[j]) * power(j, "d", hi[j] - a)
        total = total + acc
    num, den = total, target.one()
    for j, (_, val) in enumerate(poly_vals):
        if lo[j] > 0:
            num = num * power(j, "n", lo[j])
        elif lo[j] < 0:
            den = den * power(j, "n", -lo[j])
        if hi[j] > 0:
            den = den * power(j, "d", hi[j])
        elif hi[j] < 0:
            num = num * power(j, "d", -hi[j])
    return RationalFn(num, den)


# -- parsing ----------------------------------------------------------------


def parse_expression(text: str, ring: LaurentRing) -> RationalFn:
    """Parse the printer's syntax (``+ - * / ^``, integers, variable names)."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression {text!r}: {exc}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return as_rational(node.value, ring)
        if isinstance(node, ast.Name):
            if node.id not in ring.index:
                raise ValueError(f"unknown variable {node.id!r}")
            return RationalFn.from_laurent(ring.var(node.id))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = _int_literal(node.right)
                return ev(node.left) ** k
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)


def _int_literal(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.UAdd):
        return _int_literal(node.operand)
    raise ValueError("exponents must be integer literals")
