"""JSON pattern files and seed records (``"schema": "gencluster/1"``).

A pattern file::

    {
      "schema": "gencluster/1",
      "n": 2,
      "B0": [[0, -1], [1, 0]],
      "R": [2, 1],
      "Z": {"1,1": "z"},
      "coefficients": {"mode": "principal"},
      "S": [1, 2]
    }

``Z`` keys are 1-based ``"i,m"`` (parentheses optional); a value is a
generator name, a sparse exponent map or ``1``.  Missing ``z_{i,m}`` default to
free generators ``z{i}_{m}``.  ``coefficients.mode`` is one of ``trivial``,
``principal`` (optional ``ynames``), ``geometric`` (``C0``, optional
``unames``) or ``explicit`` (``generators`` as blocks, ``Y0`` as exponent
maps, optional ``frozen``).  ``xnames`` and ``S`` are optional.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

import numpy as np

from .coeffs import SemifieldError, SemifieldSpec, TropicalElement
from .pattern import (ClusterPattern, MutationKit, PatternError, Seed, as_matrix, find_symmetrizer,
                      with_geometric_coefficients, with_principal_coefficients, with_trivial_coefficients)

SCHEMA = "gencluster/1"


class InputError(ValueError):
    """Malformed or inconsistent input file."""


def _z_key(key: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*\(?\s*(\d+)\s*,\s*(\d+)\s*\)?\s*", key)
    if not m:
        raise InputError(f"bad Z key {key!r}; expected 'i,m'")
    return int(m.group(1)) - 1, int(m.group(2))


def _z_names(value) -> dict[str, int]:
    if value == 1:
        return {}
    if isinstance(value, str):
        return {value: 1}
    if isinstance(value, dict):
        return {str(g): int(a) for g, a in value.items()}
    raise InputError(f"bad Z value {value!r}")


def _element(spec: SemifieldSpec, exps: dict[str, int]) -> TropicalElement:
    try:
        return spec.element(exps)
    except SemifieldError as exc:
        raise InputError(str(exc)) from None


def _int_matrix(data, name: str) -> np.ndarray:
    try:
        m = np.array(data, dtype=object)
        if m.ndim != 2 or not all(isinstance(v, int) and not isinstance(v, bool) for v in m.flat):
            raise ValueError
    except (ValueError, TypeError):
        raise InputError(f"{name} must be a matrix of integers") from None
    return m.astype(np.int64)


def pattern_from_dict(data: dict[str, Any]) -> ClusterPattern:
    """Build a :class:`ClusterPattern` from a parsed pattern file."""
    if not isinstance(data, dict):
        raise InputError("pattern file must hold a JSON object")
    if data.get("schema", SCHEMA) != SCHEMA:
        raise InputError(f"unsupported schema {data.get('schema')!r}")
    if "B0" not in data:
        raise InputError("pattern file needs B0")
    B0 = _int_matrix(data["B0"], "B0")
    n = B0.shape[0]
    if B0.shape != (n, n) or int(data.get("n", n)) != n:
        raise InputError("B0 must be n x n")
    try:
        find_symmetrizer(B0)
    except PatternError as exc:
        raise InputError(f"B0 is not skew-symmetrizable: {exc}") from None
    R = data.get("R", [1] * n)
    if len(R) != n or not all(isinstance(r, int) and r >= 1 for r in R):
        raise InputError("R must list n positive integers")

    zraw = {}
    for key, value in (data.get("Z") or {}).items():
        i, m = _z_key(key)
        if not 0 <= i < n or not 1 <= m < R[i]:
            raise InputError(f"Z key {key!r} needs 1 <= m < r_i")
        zraw[(i, m)] = _z_names(value)
    for i, r in enumerate(R):
        for m in range(1, r):
            mm = min(m, r - m)
            zraw.setdefault((i, m), zraw.get((i, r - m), zraw.get((i, mm), {f"z{i + 1}_{mm}": 1})))
    zgens = list(dict.fromkeys(g for v in zraw.values() for g in v))

    coeff = data.get("coefficients", data.get("coefficient_mode", "trivial"))
    if isinstance(coeff, str):
        coeff = {"mode": coeff}
    mode = coeff.get("mode", "trivial")
    xnames = data.get("xnames")
    S = data.get("S")
    explicit = mode == "explicit"
    base = SemifieldSpec.from_json(coeff.get("generators", [])) if explicit else SemifieldSpec()
    extra = [g for g in zgens if g not in base]
    zspec = base.product(SemifieldSpec([extra] if extra else []))
    try:
        kit = MutationKit(R, {k: _element(zspec, v) for k, v in zraw.items()}, zspec)
        if mode == "trivial":
            return with_trivial_coefficients(B0, kit, xnames, S)
        if mode == "principal":
            return with_principal_coefficients(B0, kit, coeff.get("ynames"), xnames, S)
        if mode == "geometric":
            if "C0" not in coeff:
                raise InputError("geometric coefficients need C0")
            C0 = _int_matrix(coeff["C0"], "C0")
            if C0.shape[1] != n:
                raise InputError("C0 must have n columns")
            return with_geometric_coefficients(B0, kit, C0, coeff.get("unames"), xnames, S)
        if explicit:
            Y0 = [_element(zspec, _z_names(y)) for y in coeff.get("Y0", [1] * n)]
            return ClusterPattern(B0, kit, zspec, Y0, xnames, S, coeff.get("frozen"))
    except (PatternError, SemifieldError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc)) from None
    raise InputError(f"unknown coefficient mode {mode!r}")


def load_pattern(path: str | Path) -> ClusterPattern:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read pattern file {path}: {exc}") from None
    return pattern_from_dict(data)


def _json_scalar(v):
    v = v if not hasattr(v, "item") else v.item()
    if hasattr(v, "denominator") and v.denominator != 1:
        return str(v)
    return int(v)


def pattern_to_dict(p: ClusterPattern) -> dict[str, Any]:
    """Explicit-mode description of ``p``; :func:`pattern_from_dict` rebuilds it."""
    return {
        "schema": SCHEMA,
        "n": p.n,
        "B0": [[_json_scalar(v) for v in row] for row in p.B0.tolist()],
        "R": list(p.R),
        "Z": {f"{i + 1},{m}": v.to_json() for (i, m), v in sorted(p.kit.Z.items())},
        "coefficients": {
            "mode": "explicit",
            "generators": p.semifield.to_json(),
            "Y0": [y.to_json() for y in p.Y0],
            **({"frozen": list(p.frozen)} if p.frozen is not None else {}),
        },
        "S": [_json_scalar(s) for s in p.S],
        "xnames": list(p.xnames),
    }


def parse_walk(text: str | None, n: int) -> tuple[int, ...]:
    """``"1,2,1"`` (1-based) -> ``(0, 1, 0)``."""
    if text is None or not text.strip():
        return ()
    try:
        walk = tuple(int(t) - 1 for t in text.split(","))
    except ValueError:
        raise InputError(f"bad walk {text!r}; expected comma-separated directions") from None
    if any(not 0 <= k < n for k in walk):
        raise InputError(f"walk {text!r} has a direction outside 1..{n}")
    return walk


def seed_to_dict(s: Seed) -> dict[str, Any]:
    return {
        "schema": SCHEMA,
        "walk": [k + 1 for k in s.walk],
        "X": [str(x) for x in s.X],
        "Y": [y.to_json() for y in s.Y],
        "B": [[_json_scalar(v) for v in row] for row in s.B.tolist()],
    }


def seed_from_dict(p: ClusterPattern, data: dict[str, Any]) -> Seed:
    try:
        X = tuple(p.ring.parse(x) for x in data["X"])
        Y = tuple(_element(p.semifield, _z_names(y)) for y in data.get("Y", [1] * p.n))
        B = as_matrix(data["B"]) if "B" in data else None
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad seed record: {exc}") from None
    if len(X) != p.n:
        raise InputError("cluster has the wrong size")
    walk = tuple(k - 1 for k in data.get("walk", []))
    return Seed(X, Y, B if B is not None else p.B0, walk)
