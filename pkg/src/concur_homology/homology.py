"""Simplicial schemes, their integral homology, and the scheme of a
labelled asynchronous system."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from .errors import InputError
from .lts import LabelledAsyncSystem, independent_runs, reachable_states
from .smith import IntegerMatrix, SmithForm, smith_normal_form


def encode_simplex(simplex: Iterable[str]) -> str:
    """Canonical name of a simplex, e.g. ``{a,b}``."""
    return "{" + ",".join(sorted(simplex)) + "}"


def _closure(faces):
    out = set()
    for f in faces:
        f = tuple(f)
        for k in range(1, len(f) + 1):
            out.update(frozenset(c) for c in combinations(f, k))
    return out


@dataclass(frozen=True)
class SimplicialScheme:
    """Vertex set plus a downward closed family of nonempty vertex sets
    containing every singleton."""

    vertices: frozenset
    simplices: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "simplices", frozenset(frozenset(s) for s in self.simplices))
        for v in self.vertices:
            if frozenset((v,)) not in self.simplices:
                raise InputError(f"vertex {v!r} is missing its singleton simplex")
        for s in self.simplices:
            if not s:
                raise InputError("the empty set is not a simplex")
            if not s <= self.vertices:
                raise InputError(f"simplex {sorted(s)} uses unknown vertices")
            if len(s) > 1:
                for v in s:
                    if s - {v} not in self.simplices:
                        raise InputError(f"simplex {sorted(s)} is missing the face {sorted(s - {v})}")

    @classmethod
    def from_facets(cls, vertices=(), facets=()) -> "SimplicialScheme":
        simplices = _closure(facets)
        vertices = set(vertices)
        for s in simplices:
            vertices.update(s)
        simplices.update(frozenset((v,)) for v in vertices)
        return cls(frozenset(vertices), frozenset(simplices))

    @property
    def dimension(self) -> int:
        """Top simplex dimension, ``-1`` for the empty scheme."""
        return max((len(s) for s in self.simplices), default=0) - 1

    def facets(self) -> list:
        maximal = [s for s in self.simplices if not any(s < t for t in self.simplices if len(t) > len(s))]
        return sorted((sorted(s) for s in maximal), key=lambda f: (len(f), f))

    def count(self, n: int) -> int:
        return sum(1 for s in self.simplices if len(s) == n + 1)

    def relabel(self, mapping: Callable[[str], str]) -> "SimplicialScheme":
        return SimplicialScheme(
            frozenset(mapping(v) for v in self.vertices),
            frozenset(frozenset(mapping(v) for v in s) for s in self.simplices),
        )

    def f_vector(self) -> list:
        return [self.count(n) for n in range(self.dimension + 1)]


def ordered_simplices(k: SimplicialScheme, n: int, key=None) -> list:
    """Simplices with ``n + 1`` vertices as increasing tuples, listed in
    lexicographic order. ``key`` overrides the vertex order (default: the
    identifier string)."""
    if n < 0:
        return []
    key = key or str
    out = [tuple(sorted(s, key=key)) for s in k.simplices if len(s) == n + 1]
    rank = {v: key(v) for v in k.vertices}
    out.sort(key=lambda t: [rank[v] for v in t])
    return out


def boundary_matrix(k: SimplicialScheme, n: int, key=None) -> IntegerMatrix:
    """Matrix of ``d_n``: rows are ``(n-1)``-simplices, columns ``n``-simplices.

    Removing the vertex in position ``i`` contributes ``(-1)**i``.
    """
    if n < 1:
        raise ValueError("boundary maps start at degree 1")
    rows = ordered_simplices(k, n - 1, key)
    cols = ordered_simplices(k, n, key)
    index = {r: i for i, r in enumerate(rows)}
    m = IntegerMatrix(len(rows), len(cols))
    for j, simplex in enumerate(cols):
        for i in range(len(simplex)):
            face = simplex[:i] + simplex[i + 1:]
            m.entries[index[face]][j] = -1 if i % 2 else 1
    return m


@dataclass(frozen=True)
class HomologySignature:
    """Per-degree free rank and invariant torsion factors.

    ``groups[n] = (betti, torsion)``; trailing zero degrees are dropped, so
    equality of signatures is isomorphism of the graded groups.
    """

    groups: tuple = ()

    def __post_init__(self):
        groups = [(int(b), tuple(sorted(t))) for b, t in self.groups]
        while groups and groups[-1] == (0, ()):
            groups.pop()
        object.__setattr__(self, "groups", tuple(groups))

    def betti(self, n: int) -> int:
        return self.groups[n][0] if n < len(self.groups) else 0

    def torsion(self, n: int) -> tuple:
        return self.groups[n][1] if n < len(self.groups) else ()

    def is_zero(self) -> bool:
        return not self.groups

    @staticmethod
    def _group(betti, torsion):
        parts = []
        if betti == 1:
            parts.append("Z")
        elif betti > 1:
            parts.append(f"Z^{betti}")
        parts.extend(f"Z/{d}" for d in torsion)
        return " + ".join(parts) or "0"

    def describe(self, n: int) -> str:
        return self._group(self.betti(n), self.torsion(n))

    def __str__(self):
        if not self.groups:
            return "H_n = 0 for all n"
        return ", ".join(f"H{n} = {self._group(b, t)}" for n, (b, t) in enumerate(self.groups))

    def to_json(self):
        return [{"degree": n, "betti": b, "torsion": list(t)} for n, (b, t) in enumerate(self.groups)]

    @classmethod
    def from_json(cls, data):
        return cls(tuple((d["betti"], tuple(d["torsion"])) for d in data))


@dataclass
class ChainComplex:
    """Boundary matrices ``d_1..d_top`` with their Smith forms."""

    bases: list
    matrices: dict
    smith: dict
    signature: HomologySignature


def chain_complex(k: SimplicialScheme, key=None) -> ChainComplex:
    top = k.dimension
    bases = [ordered_simplices(k, n, key) for n in range(top + 1)]
    matrices, smith = {}, {}
    for n in range(1, top + 1):
        matrices[n] = boundary_matrix(k, n, key)
        smith[n] = smith_normal_form(matrices[n])
    empty = SmithForm(())
    groups = []
    for n in range(top + 1):
        rank_in = smith.get(n, empty).rank
        out = smith.get(n + 1, empty)
        groups.append((len(bases[n]) - rank_in - out.rank, out.torsion))
    return ChainComplex(bases, matrices, smith, HomologySignature(tuple(groups)))


def homology(k: SimplicialScheme, key=None) -> HomologySignature:
    return chain_complex(k, key).signature


def barycentric_subdivision(k: SimplicialScheme) -> SimplicialScheme:
    """Vertices are the simplices of ``k`` (named by :func:`encode_simplex`);
    simplices are the chains under strict inclusion."""
    simplices = sorted(k.simplices, key=lambda s: (len(s), sorted(s)))
    above = {s: [t for t in simplices if s < t] for s in simplices}
    chains = set()

    def extend(chain):
        chains.add(frozenset(encode_simplex(s) for s in chain))
        for t in above[chain[-1]]:
            chain.append(t)
            extend(chain)
            chain.pop()

    for s in simplices:
        extend([s])
    return SimplicialScheme(frozenset(encode_simplex(s) for s in simplices), frozenset(chains))


def scheme_of_system(a: LabelledAsyncSystem) -> SimplicialScheme:
    """Labels of reachable enabled events, with a simplex for every label
    set of pairwise independent events jointly executable from a reachable
    state. Assumes ``a`` satisfies the diamond axiom."""
    sys = a.system
    vertices = {
        a.labels[e] for s in reachable_states(sys) for e in sys.successors(s)
    }
    found = {frozenset(a.labels[e] for e in events) for _, events in independent_runs(sys)}
    simplices = _closure(found)
    simplices.update(frozenset((v,)) for v in vertices)
    return SimplicialScheme(frozenset(vertices), frozenset(simplices))


def system_homology(a: LabelledAsyncSystem) -> HomologySignature:
    return homology(scheme_of_system(a))
