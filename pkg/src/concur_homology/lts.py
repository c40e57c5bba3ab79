"""Asynchronous transition systems as partial actions of trace monoids.

Identifiers (states, events, labels) are plain strings; every iteration
that leaks into output is sorted by identifier so that reports and
matrices are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import InputError, NotReachableError


def pair(a: str, b: str) -> frozenset:
    """Unordered pair used as the key of an independence relation."""
    return frozenset((a, b))


class Violation(NamedTuple):
    kind: str
    where: tuple
    message: str


@dataclass
class ValidationReport:
    subject: str = "system"
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, kind, where, message):
        self.violations.append(Violation(kind, tuple(where), message))

    def kinds(self) -> set:
        return {v.kind for v in self.violations}

    def format(self) -> str:
        if self.ok:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines.extend(f"  [{v.kind}] {v.message}" for v in self.violations)
        return "\n".join(lines)

    def to_json(self):
        return {
            "subject": self.subject,
            "valid": self.ok,
            "violations": [
                {"kind": v.kind, "where": list(v.where), "message": v.message}
                for v in self.violations
            ],
        }


@dataclass(frozen=True, eq=False)
class AsyncSystem:
    """Finite asynchronous system ``(S, s0, E, I, Tran)``.

    ``tran`` maps ``(state, event)`` to the successor state, so the
    determinism axiom holds by construction. Use :meth:`build` to create
    instances from transition triples.
    """

    states: frozenset
    initial: str
    events: frozenset
    indep: frozenset
    tran: Mapping

    def __post_init__(self):
        out = {s: {} for s in self.states}
        for (s, e), t in self.tran.items():
            if s not in out or t not in out:
                raise InputError(f"transition ({s}, {e}, {t}) uses an unknown state")
            if e not in self.events:
                raise InputError(f"transition ({s}, {e}, {t}) uses an unknown event")
            out[s][e] = t
        object.__setattr__(self, "tran", MappingProxyType(dict(self.tran)))
        object.__setattr__(
            self,
            "_out",
            {s: MappingProxyType(dict(sorted(d.items()))) for s, d in out.items()},
        )

    @classmethod
    def build(
        cls,
        states: Iterable[str],
        initial: str,
        events: Iterable[str],
        independence: Iterable[Sequence[str]],
        transitions: Iterable[Sequence[str]],
    ) -> "AsyncSystem":
        tran = {}
        for s, e, t in transitions:
            if tran.get((s, e), t) != t:
                raise InputError(
                    f"nondeterministic transitions from {s} on {e}: "
                    f"{tran[(s, e)]} and {t}"
                )
            tran[(s, e)] = t
        return cls(
            states=frozenset(states),
            initial=initial,
            events=frozenset(events),
            indep=frozenset(frozenset(p) for p in independence),
            tran=tran,
        )

    def __eq__(self, other):
        if not isinstance(other, AsyncSystem):
            return NotImplemented
        return (
            self.states == other.states
            and self.initial == other.initial
            and self.events == other.events
            and self.indep == other.indep
            and dict(self.tran) == dict(other.tran)
        )

    __hash__ = None

    def independent(self, a: str, b: str) -> bool:
        return a != b and pair(a, b) in self.indep

    def successors(self, s: str) -> Mapping:
        """Enabled events at ``s`` mapped to their targets, sorted by event."""
        return self._out[s]

    def step(self, s: str, e: str):
        return self._out[s].get(e)

    def sorted_states(self) -> list:
        return sorted(self.states)

    def sorted_events(self) -> list:
        return sorted(self.events)

    def transitions(self) -> list:
        return sorted((s, e, t) for (s, e), t in self.tran.items())

    def with_initial(self, s: str) -> "AsyncSystem":
        return AsyncSystem(self.states, s, self.events, self.indep, self.tran)


@dataclass(frozen=True, eq=False)
class LabelledAsyncSystem:
    system: AsyncSystem
    labels: Mapping
    alphabet: frozenset = None

    def __post_init__(self):
        labels = dict(self.labels)
        missing = self.system.events - labels.keys()
        if missing:
            raise InputError(f"events without a label: {sorted(missing)}")
        extra = labels.keys() - self.system.events
        if extra:
            raise InputError(f"labels given for unknown events: {sorted(extra)}")
        alphabet = self.alphabet
        if alphabet is None:
            alphabet = frozenset(labels.values())
        alphabet = frozenset(alphabet)
        stray = set(labels.values()) - alphabet
        if stray:
            raise InputError(f"labels outside the alphabet: {sorted(stray)}")
        object.__setattr__(self, "labels", MappingProxyType(labels))
        object.__setattr__(self, "alphabet", alphabet)

    @classmethod
    def unlabelled(cls, system: AsyncSystem) -> "LabelledAsyncSystem":
        """Identity labelling ``L = E``."""
        return cls(system, {e: e for e in system.events})

    def __eq__(self, other):
        if not isinstance(other, LabelledAsyncSystem):
            return NotImplemented
        return (
            self.system == other.system
            and dict(self.labels) == dict(other.labels)
            and self.alphabet == other.alphabet
        )

    __hash__ = None

    @property
    def initial(self):
        return self.system.initial

    def label(self, e: str) -> str:
        return self.labels[e]


def _as_system(a) -> AsyncSystem:
    return a.system if isinstance(a, LabelledAsyncSystem) else a


def validate_system(a) -> ValidationReport:
    """Check the diamond axiom, event occurrence and relation shape."""
    a = _as_system(a)
    report = ValidationReport("system")
    if a.initial not in a.states:
        report.add("initial", (a.initial,), f"initial state {a.initial!r} is not a state")
    for p in sorted(a.indep, key=sorted):
        members = sorted(p)
        if len(members) != 2:
            report.add(
                "reflexive-independence",
                (members[0], members[0]),
                f"event {members[0]!r} is declared independent of itself",
            )
        unknown = [e for e in members if e not in a.events]
        if unknown:
            report.add(
                "independence-unknown-event",
                tuple(members),
                f"independence pair {members} names unknown events {unknown}",
            )
    used = {e for (_, e) in a.tran}
    for e in a.sorted_events():
        if e not in used:
            report.add("event-without-transition", (e,), f"event {e!r} occurs in no transition")
    for s in a.sorted_states():
        for x, u in a.successors(s).items():
            for y, v in a.successors(u).items():
                if not a.independent(x, y):
                    continue
                w = a.step(s, y)
                if w is None or a.step(w, x) != v:
                    report.add(
                        "diamond",
                        (s, x, y),
                        f"{s} -{x}-> {u} -{y}-> {v} has no completing square "
                        f"{s} -{y}-> s1 -{x}-> {v}",
                    )
    return report


def _check_state(a: AsyncSystem, s):
    if s not in a.states:
        raise InputError(f"unknown state {s!r}")


def act(a, s: str, word: Sequence[str]):
    """Apply ``word`` to ``s`` left to right; ``None`` when undefined."""
    a = _as_system(a)
    _check_state(a, s)
    for e in word:
        if e not in a.events:
            raise InputError(f"unknown event {e!r}")
    for e in word:
        s = a.step(s, e)
        if s is None:
            return None
    return s


class Layers:
    """States reachable by words of each exact length, with witnesses.

    ``witness(k, s)`` is the lexicographically least word of length ``k``
    leading from the origin to ``s``.
    """

    def __init__(self, origin, layers, words):
        self.origin = origin
        self.layers = layers
        self._words = words

    def __getitem__(self, k):
        return self.layers[k]

    def __len__(self):
        return len(self.layers)

    @property
    def reachable(self) -> frozenset:
        return frozenset().union(*self.layers)

    def witness(self, k: int, s: str) -> tuple:
        return self._words[k][s]


def reachable_layers(a, origin: str = None, max_len: int = None) -> Layers:
    a = _as_system(a)
    if origin is None:
        origin = a.initial
    _check_state(a, origin)
    if max_len is None:
        max_len = len(a.states)
    words = [{origin: ()}]
    for _ in range(max_len):
        nxt = {}
        for s, w in sorted(words[-1].items()):
            for e, t in a.successors(s).items():
                cand = w + (e,)
                if t not in nxt or cand < nxt[t]:
                    nxt[t] = cand
        words.append(nxt)
    layers = [frozenset(d) for d in words]
    return Layers(origin, layers, words)


def reachable_states(a, origin: str = None) -> frozenset:
    a = _as_system(a)
    if origin is None:
        origin = a.initial
    _check_state(a, origin)
    seen = {origin}
    stack = [origin]
    while stack:
        s = stack.pop()
        for t in a.successors(s).values():
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def residual(a: LabelledAsyncSystem, s: str) -> LabelledAsyncSystem:
    """The same labelled system re-based at the reachable state ``s``."""
    _check_state(a.system, s)
    if s not in reachable_states(a.system):
        raise NotReachableError(f"state {s!r} is not reachable from {a.initial!r}")
    return LabelledAsyncSystem(a.system.with_initial(s), a.labels, a.alphabet)


class QTuple(NamedTuple):
    state: str
    events: tuple


def enumerate_Q(a, n: int) -> list:
    """Tuples ``(s, e1..en)``: ``s`` reachable, events pairwise independent
    and the word executable from ``s``. Sorted."""
    a = _as_system(a)
    if n < 0:
        raise InputError("degree must be non-negative")
    out = []

    def extend(start, cur, chosen):
        if len(chosen) == n:
            out.append(QTuple(start, tuple(chosen)))
            return
        for e, t in a.successors(cur).items():
            if all(a.independent(e, c) for c in chosen):
                chosen.append(e)
                extend(start, t, chosen)
                chosen.pop()

    for s in sorted(reachable_states(a)):
        extend(s, s, [])
    return out


def independent_runs(a):
    """Yield ``(s, events)`` for each reachable ``s`` and each set of
    pairwise independent events executable from ``s``, events in sorted
    order, sets of size >= 1.

    On a system satisfying the diamond axiom every ordering of such a set
    is executable too, so this covers the same event sets as the ordered
    tuples of :func:`enumerate_Q` at a fraction of the cost.
    """
    a = _as_system(a)

    def extend(start, cur, chosen):
        for e, t in a.successors(cur).items():
            if chosen and e <= chosen[-1]:
                continue
            if all(a.independent(e, c) for c in chosen):
                chosen.append(e)
                yield start, tuple(chosen)
                yield from extend(start, t, chosen)
                chosen.pop()

    for s in sorted(reachable_states(a)):
        yield from extend(s, s, [])
