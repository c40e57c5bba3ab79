"""Place/transition nets, the token game, and the asynchronous system of a
net."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import FiringError, InputError, StateLimitExceeded, TokenLimitExceeded
from .homology import HomologySignature, homology, scheme_of_system
from .lts import AsyncSystem, LabelledAsyncSystem, pair

DEFAULT_MAX_STATES = 100_000
DEFAULT_MAX_TOKENS = 64


class Marking(Mapping):
    """Immutable token count per place."""

    __slots__ = ("_counts", "_key")

    def __init__(self, counts):
        counts = {p: int(c) for p, c in dict(counts).items()}
        for p, c in counts.items():
            if c < 0:
                raise InputError(f"negative token count {c} at place {p!r}")
        self._counts = counts
        self._key = tuple(sorted(counts.items()))

    def __getitem__(self, p):
        return self._counts[p]

    def __iter__(self):
        return iter(sorted(self._counts))

    def __len__(self):
        return len(self._counts)

    def __hash__(self):
        return hash(self._key)

    def __eq__(self, other):
        if isinstance(other, Marking):
            return self._key == other._key
        return NotImplemented

    def __ge__(self, other):
        return all(self._counts[p] >= other[p] for p in other)

    def __add__(self, other):
        return Marking({p: self._counts[p] + other[p] for p in self._counts})

    def __sub__(self, other):
        return Marking({p: self._counts[p] - other[p] for p in self._counts})

    def dot(self, other) -> int:
        return sum(self._counts[p] * other[p] for p in self._counts)

    def encode(self) -> str:
        """Counts in place order, comma separated."""
        return ",".join(str(c) for _, c in self._key)

    def __repr__(self):
        return f"Marking({dict(self._key)!r})"


@dataclass(frozen=True, eq=False)
class PetriNet:
    places: frozenset
    events: frozenset
    pre: Mapping
    post: Mapping
    m0: Marking

    def __post_init__(self):
        places = frozenset(self.places)
        object.__setattr__(self, "places", places)
        object.__setattr__(self, "events", frozenset(self.events))

        def full(vec, what):
            vec = dict(vec)
            unknown = vec.keys() - places
            if unknown:
                raise InputError(f"{what} names unknown places {sorted(unknown)}")
            return Marking({p: vec.get(p, 0) for p in places})

        for name in ("pre", "post"):
            vectors = dict(getattr(self, name))
            if vectors.keys() != self.events:
                raise InputError(f"{name} must be given for exactly the net's events")
            fixed = {e: full(v, f"{name}({e})") for e, v in vectors.items()}
            object.__setattr__(self, name, MappingProxyType(fixed))
        object.__setattr__(self, "m0", full(self.m0, "initial marking"))

    def marking(self, counts) -> Marking:
        counts = dict(counts)
        if counts.keys() != self.places:
            raise InputError(
                f"marking must cover exactly the places {sorted(self.places)}, got {sorted(counts)}"
            )
        return Marking(counts)


@dataclass(frozen=True, eq=False)
class LabelledPetriNet:
    net: PetriNet
    labels: Mapping = None
    alphabet: frozenset = None

    def __post_init__(self):
        labels = self.labels
        if labels is None:
            labels = {e: e for e in self.net.events}
        labels = dict(labels)
        if labels.keys() != self.net.events:
            raise InputError("labels must be given for exactly the net's events")
        alphabet = frozenset(self.alphabet if self.alphabet is not None else labels.values())
        if not set(labels.values()) <= alphabet:
            raise InputError("labels outside the alphabet")
        object.__setattr__(self, "labels", MappingProxyType(labels))
        object.__setattr__(self, "alphabet", alphabet)


def _check_marking(n: PetriNet, m) -> Marking:
    if not isinstance(m, Marking) or set(m) != n.places:
        return n.marking(m)
    return m


def enabled(n: PetriNet, m) -> list:
    m = _check_marking(n, m)
    return sorted(e for e in n.events if m >= n.pre[e])


def fire(n: PetriNet, m, e: str) -> Marking:
    m = _check_marking(n, m)
    if e not in n.events:
        raise InputError(f"unknown event {e!r}")
    if not m >= n.pre[e]:
        raise FiringError(f"event {e!r} is not enabled at marking {m.encode()}")
    return m - n.pre[e] + n.post[e]


def net_independence(n: PetriNet) -> frozenset:
    """Pairs of distinct events sharing no input or output place."""
    touch = {e: n.pre[e] + n.post[e] for e in n.events}
    events = sorted(n.events)
    return frozenset(
        pair(a, b)
        for i, a in enumerate(events)
        for b in events[i + 1:]
        if touch[a].dot(touch[b]) == 0
    )


@dataclass(frozen=True)
class Limits:
    max_states: int = DEFAULT_MAX_STATES
    max_tokens: int = DEFAULT_MAX_TOKENS

    def __post_init__(self):
        if self.max_states < 1 or self.max_tokens < 1:
            raise InputError("exploration limits must be positive")

    @classmethod
    def parse(cls, text: str) -> "Limits":
        """Parse ``maxStates=N,maxTokens=M`` (either part optional)."""
        kwargs = {}
        names = {"maxstates": "max_states", "max_states": "max_states",
                 "maxtokens": "max_tokens", "max_tokens": "max_tokens"}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, sep, value = part.partition("=")
            if not sep or key.strip().lower() not in names:
                raise InputError(f"cannot parse limit {part!r}")
            kwargs[names[key.strip().lower()]] = int(value)
        return cls(**kwargs)


@dataclass
class Exploration:
    system: LabelledAsyncSystem
    markings: dict = field(default_factory=dict)
    dropped_events: list = field(default_factory=list)


def explore(n: LabelledPetriNet, limits: Limits = None) -> Exploration:
    """Breadth-first token game from the initial marking.

    Raises rather than truncating when a marking exceeds ``max_tokens`` in
    some place or the number of markings would pass ``max_states``.
    """
    limits = limits or Limits()
    net = n.net

    def admit(m):
        worst = max(m.values(), default=0)
        if worst > limits.max_tokens:
            raise TokenLimitExceeded(
                f"marking {m.encode()} holds {worst} tokens in one place "
                f"(limit {limits.max_tokens})",
                m.encode(),
            )
        if len(seen) >= limits.max_states:
            raise StateLimitExceeded(
                f"marking {m.encode()} would be state number {len(seen) + 1} "
                f"(limit {limits.max_states})",
                m.encode(),
            )
        seen[m.encode()] = m
        queue.append(m)

    seen = {}
    queue = deque()
    admit(net.m0)
    transitions = []
    while queue:
        m = queue.popleft()
        for e in enabled(net, m):
            t = fire(net, m, e)
            if t.encode() not in seen:
                admit(t)
            transitions.append((m.encode(), e, t.encode()))
    used = {e for _, e, _ in transitions}
    dropped = sorted(net.events - used)
    indep = [p for p in net_independence(net) if p <= used]
    system = AsyncSystem.build(seen, net.m0.encode(), used, indep, transitions)
    labelled = LabelledAsyncSystem(system, {e: n.labels[e] for e in used}, n.alphabet)
    return Exploration(labelled, seen, dropped)


def async_of_net(n: LabelledPetriNet, limits: Limits = None) -> LabelledAsyncSystem:
    return explore(n, limits).system


def homology_of_net(n: LabelledPetriNet, limits: Limits = None) -> HomologySignature:
    return homology(scheme_of_system(async_of_net(n, limits)))
