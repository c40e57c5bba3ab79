"""Petri nets with prescribed homology, built from simplicial schemes, and a
small library of fixture schemes."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from .errors import FixtureError, InputError
from .homology import (
    HomologySignature,
    SimplicialScheme,
    barycentric_subdivision,
    encode_simplex,
    homology,
)
from .petri import LabelledPetriNet, Limits, PetriNet, homology_of_net

RP2_FACETS = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
    (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4),
)


def place_name(event: str) -> str:
    return "p" + event


def conflict_place(e1: str, e2: str) -> str:
    return "q" + "|".join(sorted((e1, e2)))


def petri_from_scheme(k: SimplicialScheme) -> LabelledPetriNet:
    """One event per simplex of ``k``, labelled by the simplex name.

    Each event consumes a marked private place, so it fires at most once.
    Each pair of events whose simplices are not nested also consumes one
    shared marked place, which makes the pair dependent and mutually
    exclusive, while nested pairs touch disjoint places and stay
    independent. The fireable independent event sets are therefore the
    inclusion chains, i.e. the simplices of the barycentric subdivision.
    """
    if not k.simplices:
        raise InputError("cannot build a net from the empty scheme")
    simplices = sorted(k.simplices, key=lambda s: (len(s), sorted(s)))
    events = [encode_simplex(s) for s in simplices]
    pre = {e: {place_name(e): 1} for e in events}
    places = [place_name(e) for e in events]
    for (si, ei), (sj, ej) in combinations(zip(simplices, events), 2):
        if not (si < sj or sj < si):
            q = conflict_place(ei, ej)
            places.append(q)
            pre[ei][q] = 1
            pre[ej][q] = 1
    net = PetriNet(
        places=places,
        events=events,
        pre=pre,
        post={e: {} for e in events},
        m0={p: 1 for p in places},
    )
    return LabelledPetriNet(net, {e: e for e in events})


@dataclass
class ConstructionReport:
    ok: bool
    scheme: HomologySignature
    subdivision: HomologySignature
    net: HomologySignature
    places: int
    events: int

    def format(self) -> str:
        return "\n".join([
            f"construction {'verified' if self.ok else 'FAILED'}",
            f"  net: {self.places} places, {self.events} events",
            f"  scheme:      {self.scheme}",
            f"  subdivision: {self.subdivision}",
            f"  net:         {self.net}",
        ])

    def to_json(self):
        return {
            "verified": self.ok,
            "places": self.places,
            "events": self.events,
            "scheme": self.scheme.to_json(),
            "subdivision": self.subdivision.to_json(),
            "net": self.net.to_json(),
        }


def verify_construction(k: SimplicialScheme, limits: Limits = None) -> ConstructionReport:
    net = petri_from_scheme(k)
    h_scheme = homology(k)
    h_sub = homology(barycentric_subdivision(k))
    h_net = homology_of_net(net, limits)
    ok = h_scheme == h_sub == h_net
    return ConstructionReport(
        ok, h_scheme, h_sub, h_net, len(net.net.places), len(net.net.events)
    )


# -- fixtures -------------------------------------------------------------

def boundary_simplex(n: int) -> SimplicialScheme:
    """All proper faces of an ``(n+1)``-simplex: an ``n``-sphere."""
    if n < 1:
        raise FixtureError("boundary-simplex needs n >= 1")
    verts = [f"v{i}" for i in range(n + 2)]
    return SimplicialScheme.from_facets(verts, combinations(verts, n + 1))


def rp2() -> SimplicialScheme:
    """Six-vertex triangulation of the projective plane."""
    return SimplicialScheme.from_facets(
        facets=[[f"v{i}" for i in f] for f in RP2_FACETS]
    )


def point() -> SimplicialScheme:
    return SimplicialScheme.from_facets(["v0"])


def disjoint_union(parts) -> SimplicialScheme:
    vertices, simplices = set(), set()
    for i, part in enumerate(parts):
        renamed = part.relabel(lambda v, i=i: f"{i}.{v}")
        vertices |= renamed.vertices
        simplices |= renamed.simplices
    return SimplicialScheme(frozenset(vertices), frozenset(simplices))


def wedge(parts) -> SimplicialScheme:
    """Disjoint union with the least vertex of each part glued to ``*``."""
    base = {f"{i}.{min(p.vertices)}" for i, p in enumerate(parts) if p.vertices}
    union = disjoint_union(parts)
    return union.relabel(lambda v: "*" if v in base else v)


_TOKEN = re.compile(r"\s*([A-Za-z0-9_\-]+(?::\d+)?|[(),])")


def _tokens(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FixtureError(f"unexpected character at {pos} in {text!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def fixture_scheme(expr: str) -> SimplicialScheme:
    """Parse ``sphere:n``, ``rp2``, ``point``, ``wedge(f, ...)`` and
    ``union(f, ...)`` (``boundary-simplex:n`` and ``disjoint-union`` are
    accepted as long forms)."""
    toks = _tokens(expr)
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(toks):
            raise FixtureError(f"unexpected end of fixture expression {expr!r}")
        tok = toks[pos]
        pos += 1
        name, _, arg = tok.partition(":")
        if name in ("sphere", "boundary-simplex"):
            if not arg:
                raise FixtureError(f"{name} needs a dimension, e.g. {name}:2")
            return boundary_simplex(int(arg))
        if arg:
            raise FixtureError(f"{name} takes no ':' argument")
        if name == "rp2":
            return rp2()
        if name == "point":
            return point()
        if name in ("wedge", "union", "disjoint-union"):
            if pos >= len(toks) or toks[pos] != "(":
                raise FixtureError(f"{name} needs a parenthesised argument list")
            pos += 1
            parts = [parse()]
            while pos < len(toks) and toks[pos] == ",":
                pos += 1
                parts.append(parse())
            if pos >= len(toks) or toks[pos] != ")":
                raise FixtureError(f"missing ')' in {expr!r}")
            pos += 1
            return wedge(parts) if name == "wedge" else disjoint_union(parts)
        raise FixtureError(f"unknown fixture {tok!r}")

    scheme = parse()
    if pos != len(toks):
        raise FixtureError(f"trailing input in fixture expression {expr!r}")
    return scheme
