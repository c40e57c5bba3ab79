"""JSON documents for systems, nets, schemes, morphisms and spans."""

from __future__ import annotations

import json
from pathlib import Path

from .bisim import Span, SystemMorphism
from .errors import InputError
from .homology import SimplicialScheme
from .lts import AsyncSystem, LabelledAsyncSystem
from .petri import LabelledPetriNet, PetriNet
from .smith import IntegerMatrix

SYSTEM_FIELDS = {"states", "initial", "events", "independence", "transitions", "labels", "alphabet"}
NET_FIELDS = {"places", "events", "pre", "post", "initial_marking", "labels", "alphabet"}
SCHEME_FIELDS = {"vertices", "facets"}
MORPHISM_FIELDS = {"sigma", "eta"}
SPAN_FIELDS = {"apex", "left", "right"}


def read_json(path) -> dict:
    path = Path(path)
    text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _fields(doc, allowed, required, what):
    if not isinstance(doc, dict):
        raise InputError(f"{what}: expected a JSON object")
    unknown = set(doc) - allowed
    if unknown:
        raise InputError(f"{what}: unknown field(s) {sorted(unknown)}")
    missing = [f for f in required if f not in doc]
    if missing:
        raise InputError(f"{what}: missing field(s) {missing}")


def _strings(value, field, what):
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise InputError(f"{what}: field '{field}' must be an array of strings")
    return value


def kind_of(doc) -> str:
    """Guess whether a document is an ``lts``, ``net`` or ``scheme``."""
    if isinstance(doc, dict):
        if "places" in doc:
            return "net"
        if "facets" in doc or ("vertices" in doc and "states" not in doc):
            return "scheme"
    return "lts"


def system_from_json(doc) -> LabelledAsyncSystem:
    what = "system"
    _fields(doc, SYSTEM_FIELDS, ["states", "initial", "events", "transitions"], what)
    states = _strings(doc["states"], "states", what)
    events = _strings(doc["events"], "events", what)
    indep = doc.get("independence", [])
    for i, p in enumerate(indep):
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)):
            raise InputError(f"{what}: independence[{i}] must be a 2-element array of strings")
    triples = []
    for i, t in enumerate(doc["transitions"]):
        if not isinstance(t, dict) or set(t) != {"from", "event", "to"}:
            raise InputError(f"{what}: transitions[{i}] must be an object with from/event/to")
        triples.append((t["from"], t["event"], t["to"]))
    if doc["initial"] not in states:
        raise InputError(f"{what}: initial state {doc['initial']!r} is not listed in 'states'")
    system = AsyncSystem.build(states, doc["initial"], events, indep, triples)
    labels = doc.get("labels", {e: e for e in events})
    alphabet = doc.get("alphabet")
    return LabelledAsyncSystem(system, labels, None if alphabet is None else frozenset(alphabet))


def system_to_json(a: LabelledAsyncSystem) -> dict:
    s = a.system
    return {
        "states": s.sorted_states(),
        "initial": s.initial,
        "events": s.sorted_events(),
        "independence": sorted(sorted(p) for p in s.indep),
        "transitions": [{"from": x, "event": e, "to": y} for x, e, y in s.transitions()],
        "labels": dict(sorted(a.labels.items())),
        "alphabet": sorted(a.alphabet),
    }


def net_from_json(doc) -> LabelledPetriNet:
    what = "net"
    _fields(doc, NET_FIELDS, ["places", "events", "pre", "post", "initial_marking"], what)
    places = _strings(doc["places"], "places", what)
    events = _strings(doc["events"], "events", what)

    def vectors(field):
        value = doc[field]
        if isinstance(value, list):
            # matrix form: one row per event, one column per place
            if len(value) != len(events) or any(len(r) != len(places) for r in value):
                raise InputError(f"{what}: '{field}' matrix must be {len(events)}x{len(places)}")
            return {e: dict(zip(places, row)) for e, row in zip(events, value)}
        if not isinstance(value, dict):
            raise InputError(f"{what}: '{field}' must be an object or a matrix")
        return {e: dict(value.get(e, {})) for e in events}

    m0 = doc["initial_marking"]
    if isinstance(m0, list):
        if len(m0) != len(places):
            raise InputError(f"{what}: 'initial_marking' must have {len(places)} entries")
        m0 = dict(zip(places, m0))
    net = PetriNet(places, events, vectors("pre"), vectors("post"), m0)
    alphabet = doc.get("alphabet")
    return LabelledPetriNet(net, doc.get("labels"), None if alphabet is None else frozenset(alphabet))


def net_to_json(n: LabelledPetriNet) -> dict:
    net = n.net

    def sparse(vecs):
        return {e: {p: c for p, c in vecs[e].items() if c} for e in sorted(net.events)}

    return {
        "places": sorted(net.places),
        "events": sorted(net.events),
        "pre": sparse(net.pre),
        "post": sparse(net.post),
        "initial_marking": {p: net.m0[p] for p in sorted(net.places)},
        "labels": dict(sorted(n.labels.items())),
        "alphabet": sorted(n.alphabet),
    }


def scheme_from_json(doc) -> SimplicialScheme:
    _fields(doc, SCHEME_FIELDS, ["facets"], "scheme")
    facets = doc["facets"]
    for i, f in enumerate(facets):
        _strings(f, f"facets[{i}]", "scheme")
        if not f:
            raise InputError(f"scheme: facets[{i}] is empty")
    return SimplicialScheme.from_facets(_strings(doc.get("vertices", []), "vertices", "scheme"), facets)


def scheme_to_json(k: SimplicialScheme) -> dict:
    return {"vertices": sorted(k.vertices), "facets": k.facets()}


def morphism_from_json(doc, source, target) -> SystemMorphism:
    _fields(doc, MORPHISM_FIELDS, ["sigma"], "morphism")
    return SystemMorphism(source, target, doc["sigma"], doc.get("eta", {}))


def morphism_to_json(m: SystemMorphism) -> dict:
    return {"sigma": dict(sorted(m.sigma.items())), "eta": dict(sorted(m.eta.items()))}


def span_from_json(doc, left_target, right_target, base_dir=".") -> Span:
    """``apex`` is an inline system document or a path relative to
    ``base_dir``; ``left``/``right`` are morphism documents."""
    _fields(doc, SPAN_FIELDS, sorted(SPAN_FIELDS), "span")
    apex_doc = doc["apex"]
    if isinstance(apex_doc, str):
        apex_doc = read_json(Path(base_dir) / apex_doc)
    apex = system_from_json(apex_doc)
    return Span(
        apex,
        morphism_from_json(doc["left"], apex, left_target),
        morphism_from_json(doc["right"], apex, right_target),
    )


def matrix_from_json(doc):
    if isinstance(doc, dict):
        _fields(doc, {"matrix", "rows", "cols"}, ["matrix"], "matrix")
        rows = doc["matrix"]
        cols = doc.get("cols")
    else:
        rows, cols = doc, None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix: expected an array of integer rows")
    if any(not isinstance(v, int) for r in rows for v in r):
        raise InputError("matrix: entries must be integers")
    try:
        return IntegerMatrix.from_lists(rows, cols)
    except ValueError as exc:
        raise InputError(f"matrix: {exc}") from None


def parse_matrix_text(text: str):
    """Whitespace separated integer rows; an optional ``d<n> <rows> <cols>``
    header line is skipped."""
    rows = []
    cols = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("d"):
            parts = line.split()
            if len(parts) == 3:
                cols = int(parts[2])
            continue
        try:
            rows.append([int(x) for x in line.split()])
        except ValueError:
            raise InputError(f"matrix line {lineno}: not a row of integers") from None
    try:
        return IntegerMatrix.from_lists(rows, cols)
    except ValueError as exc:
        raise InputError(f"matrix: {exc}") from None
