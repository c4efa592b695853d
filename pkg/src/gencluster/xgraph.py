"""Exchange graphs of cluster patterns and D-matrix patterns.

Vertices are equivalence classes of seeds under simultaneous relabeling of
indices.  A class is represented by :func:`canonical_key`, the least byte
encoding over all admissible relabelings.
"""

from __future__ import annotations

import hashlib
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .dmat import DMatrixPattern, MatrixSeed
from .fpolys import principal_companion
from .pattern import ClusterPattern, MutationKit, Seed, standard_pattern, with_trivial_coefficients
from .report import Report
from .symalg import RationalFn


class IncompleteGraphError(RuntimeError):
    """A check that needs the whole exchange graph was given a truncated one."""


# -- canonical keys -------------------------------------------------------------


def _permutations(sigs: Sequence) -> list[tuple[int, ...]]:
    """Index orders sorting ``sigs``, with every order of tied indices."""
    order = sorted(range(len(sigs)), key=lambda i: sigs[i])
    groups = [list(g) for _, g in itertools.groupby(order, key=lambda i: sigs[i])]
    out = []
    for combo in itertools.product(*(itertools.permutations(g) for g in groups)):
        out.append(tuple(i for g in combo for i in g))
    return out


def _seed_parts(s: Seed):
    return [str(x) for x in s.X], [str(y) for y in s.Y]


def _encode_seed(xs, ys, B, perm) -> bytes:
    parts = [xs[i] + "|" + ys[i] for i in perm]
    rows = [",".join(str(B[i, j]) for j in perm) for i in perm]
    return ("\n".join(parts) + "\n#" + ";".join(rows)).encode()


def canonical_key(obj: Seed | MatrixSeed) -> bytes:
    """Least encoding over relabelings ``sigma`` of the index set.

    For seeds ``(x_i, y_i)`` move together with rows and columns of ``B``; for
    matrix seeds the columns of ``D`` move with rows and columns of ``Q``.
    """
    if isinstance(obj, MatrixSeed):
        D, Q = obj.D, obj.Q
        n = obj.n
        sigs = [(tuple(D[:, i]), tuple(sorted(Q[:, i])), tuple(sorted(Q[i, :]))) for i in range(n)]

        def enc(perm):
            dcols = ";".join(",".join(str(v) for v in D[:, i]) for i in perm)
            rows = ";".join(",".join(str(Q[i, j]) for j in perm) for i in perm)
            return f"D{dcols}#Q{rows}".encode()

        return min(enc(p) for p in _permutations(sigs))
    xs, ys = _seed_parts(obj)
    B = obj.B
    sigs = [(xs[i], ys[i]) for i in range(obj.n)]
    return min(_encode_seed(xs, ys, B, p) for p in _permutations(sigs))


def digest(key: bytes) -> str:
    return hashlib.sha256(key).hexdigest()[:12]


# -- enumeration ----------------------------------------------------------------


@dataclass
class ExchangeGraph:
    n: int
    root: bytes
    vertices: list[bytes] = field(default_factory=list)
    reps: dict[bytes, object] = field(default_factory=dict)
    edges: dict[frozenset, int] = field(default_factory=dict)
    self_loops: set[tuple[bytes, int]] = field(default_factory=set)
    complete: bool = False

    def __len__(self):
        return len(self.vertices)

    def walk(self, key: bytes) -> tuple[int, ...]:
        return self.reps[key].walk

    def adjacent(self, a: bytes, b: bytes) -> bool:
        return frozenset((a, b)) in self.edges

    def degree(self, key: bytes) -> int:
        return sum(1 for e in self.edges if key in e)

    def to_json(self) -> dict:
        ids = {k: digest(k) for k in self.vertices}
        edges = sorted([sorted(ids[v] for v in e) * (1 if len(e) == 2 else 2) + [k + 1]
                        for e, k in self.edges.items()])
        return {
            "vertices": [ids[k] for k in self.vertices],
            "edges": edges,
            "root": ids[self.root],
            "complete": self.complete,
            "self_loops": sorted([ids[k], d + 1] for k, d in self.self_loops),
        }

    def to_dot(self, name: str = "exchange") -> str:
        ids = {k: digest(k) for k in self.vertices}
        lines = [f"graph {name} {{"]
        for k in self.vertices:
            shape = ", shape=doublecircle" if k == self.root else ""
            lines.append(f'  "{ids[k]}" [label="{ids[k]}"{shape}];')
        for e, d in sorted(self.edges.items(), key=lambda kv: sorted(ids[v] for v in kv[0])):
            a, b = sorted(ids[v] for v in e) if len(e) == 2 else (ids[next(iter(e))],) * 2
            lines.append(f'  "{a}" -- "{b}" [label="{d + 1}"];')
        for k, d in sorted(self.self_loops, key=lambda t: (ids[t[0]], t[1])):
            lines.append(f'  "{ids[k]}" -- "{ids[k]}" [label="{d + 1}", style=dashed];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_graph(root, mutate: Callable, n: int, budget: int,
                    key: Callable = canonical_key, workers: int = 1) -> ExchangeGraph:
    """Breadth-first closure under ``mutate(state, k)``, ``k = 0..n-1``.

    Stops (``complete=False``) as soon as a vertex beyond ``budget`` shows up.
    Frontier mutations may run on ``workers`` threads; merging is sequential
    in frontier order, so the result does not depend on scheduling.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    rk = key(root)
    g = ExchangeGraph(n=n, root=rk, vertices=[rk], reps={rk: root})
    frontier = [rk]

    def expand(vkey):
        rep = g.reps[vkey]
        out = []
        for k in range(n):
            t = mutate(rep, k)
            out.append((k, key(t), t))
        return out

    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        while frontier:
            results = list(pool.map(expand, frontier)) if pool else [expand(v) for v in frontier]
            nxt = []
            for vkey, outs in zip(frontier, results):
                for k, tkey, t in outs:
                    if tkey == vkey:
                        g.self_loops.add((vkey, k))
                        continue
                    if tkey not in g.reps:
                        if len(g.vertices) >= budget:
                            return g
                        g.reps[tkey] = t
                        g.vertices.append(tkey)
                        nxt.append(tkey)
                    g.edges.setdefault(frozenset((vkey, tkey)), k)
            frontier = nxt
    finally:
        if pool:
            pool.shutdown()
    g.complete = True
    return g


def enumerate_exchange_graph(p: ClusterPattern | DMatrixPattern, budget: int, workers: int = 1) -> ExchangeGraph:
    root = p.root if isinstance(p, DMatrixPattern) else p.initial_seed()
    return enumerate_graph(root, p.mutate, p.n, budget, workers=workers)


# -- theorem checks --------------------------------------------------------------


def _require_complete(*graphs: ExchangeGraph):
    if not all(g.complete for g in graphs):
        raise IncompleteGraphError("incomplete exchange graph: enumeration was truncated by the budget")


def _walk_states(p, walk):
    return p.seed(walk)


def graphs_agree(p: ClusterPattern, budget: int, others: Sequence | None = None) -> Report:
    """``t -> [Σ_t]`` induces vertex and edge bijections between Γ_M, Γ_{M_pr} and Γ_W.

    ``others`` defaults to the principal companion and the D-matrix pattern of
    ``p``; any patterns with the same rank and a ``seed(walk)`` method work.
    """
    rep = Report("graphs-agree")
    if others is None:
        others = [principal_companion(p)[0], DMatrixPattern(p.B0, p.R)]
    systems = [p] + list(others)
    graphs = [enumerate_exchange_graph(q, budget) for q in systems]
    rep.details["vertices"] = [len(g) for g in graphs]
    rep.details["edges"] = [len(g.edges) for g in graphs]
    _require_complete(*graphs)
    # walks: every representative walk extended by every direction
    walks = {()}
    for key in graphs[0].vertices:
        w = graphs[0].walk(key)
        walks.add(w)
        walks.update(w + (k,) for k in range(p.n))
    classes = {}
    for w in sorted(walks, key=lambda w: (len(w), w)):
        classes[w] = tuple(canonical_key(q.seed(w)) for q in systems)
        rep.checked += 1
    for a in range(len(systems)):
        for b in range(len(systems)):
            if a == b:
                continue
            fn = {}
            for w, ks in classes.items():
                if fn.setdefault(ks[a], ks[b]) != ks[b]:
                    return rep.fail(walk=list(w), reason=f"class map {a}->{b} is not well defined")
            if set(fn) != set(graphs[a].vertices):
                return rep.fail(reason=f"class map {a}->{b} does not cover graph {a}")
            mapped_edges = {frozenset(fn[v] for v in e) for e in graphs[a].edges}
            if mapped_edges != set(graphs[b].edges):
                return rep.fail(reason=f"edges of graph {a} do not map onto edges of graph {b}")
    return rep


def _cluster(s: Seed) -> frozenset[RationalFn]:
    return frozenset(s.X)


def seed_determined_by_cluster(g: ExchangeGraph) -> Report:
    """No two inequivalent enumerated seeds share the same unordered cluster."""
    rep = Report("cluster-determines-seed")
    seen: dict[frozenset, bytes] = {}
    for key in g.vertices:
        c = _cluster(g.reps[key])
        rep.checked += 1
        other = seen.setdefault(c, key)
        if other != key:
            return rep.fail(walks=[list(g.walk(other)), list(g.walk(key))])
    return rep


def adjacency_iff_common_variables(g: ExchangeGraph) -> Report:
    """Adjacent iff the clusters share exactly ``n - 1`` variables (needs a complete graph)."""
    _require_complete(g)
    rep = Report("adjacency")
    clusters = {k: _cluster(g.reps[k]) for k in g.vertices}
    for a, b in itertools.combinations(g.vertices, 2):
        shared = len(clusters[a] & clusters[b])
        rep.checked += 1
        if g.adjacent(a, b) != (shared == g.n - 1):
            return rep.fail(walks=[list(g.walk(a)), list(g.walk(b))], shared=shared,
                            adjacent=g.adjacent(a, b))
    return rep


def edges_change_one_variable(g: ExchangeGraph, p: ClusterPattern) -> Report:
    """Each edge found from a representative changes exactly one cluster variable."""
    rep = Report("edge-one-variable")
    for key in g.vertices:
        s = g.reps[key]
        for k in range(g.n):
            t = p.mutate(s, k)
            rep.checked += 1
            if len(_cluster(s) & _cluster(t)) != g.n - 1:
                return rep.fail(walk=list(s.walk), direction=k)
    return rep


def finite_type_equivalence(B0, R: Sequence[int], budget: int) -> Report:
    """Enumerate ``(B0, R)`` (trivial coefficients) and the standard ``B0 R``; both or neither complete."""
    rep = Report("finite-type")
    gen = with_trivial_coefficients(B0, MutationKit.formal(R))
    std = standard_pattern(with_trivial_coefficients(B0, MutationKit.trivial_z(R)))
    g1 = enumerate_exchange_graph(gen, budget)
    g2 = enumerate_exchange_graph(std, budget)
    rep.checked = 2
    rep.details = {"generalized": {"vertices": len(g1), "complete": g1.complete},
                   "standard": {"vertices": len(g2), "complete": g2.complete}}
    if g1.complete != g2.complete or (g1.complete and len(g1) != len(g2)):
        rep.fail(generalized=[len(g1), g1.complete], standard=[len(g2), g2.complete])
    return rep
