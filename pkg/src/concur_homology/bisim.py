"""Morphisms of labelled asynchronous systems, open-morphism checks, span
certification and the residual-homology refuter."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import AlphabetMismatch, InputError
from .homology import HomologySignature, homology, scheme_of_system
from .lts import (
    LabelledAsyncSystem,
    ValidationReport,
    enumerate_Q,
    reachable_layers,
    reachable_states,
    residual,
)


@dataclass(frozen=True, eq=False)
class SystemMorphism:
    """``(sigma, eta)``: total state map, partial event map."""

    source: LabelledAsyncSystem
    target: LabelledAsyncSystem
    sigma: Mapping
    eta: Mapping

    def __post_init__(self):
        object.__setattr__(self, "sigma", MappingProxyType(dict(self.sigma)))
        object.__setattr__(self, "eta", MappingProxyType(dict(self.eta)))

    def rebased(self, s: str) -> "SystemMorphism":
        """The same maps viewed as ``A(s) -> A'(sigma(s))``."""
        return SystemMorphism(
            residual(self.source, s), residual(self.target, self.sigma[s]), self.sigma, self.eta
        )


@dataclass(frozen=True, eq=False)
class Span:
    apex: LabelledAsyncSystem
    left: SystemMorphism
    right: SystemMorphism

    def __post_init__(self):
        if self.left.source is not self.apex and self.left.source != self.apex:
            raise InputError("left leg does not start at the apex")
        if self.right.source is not self.apex and self.right.source != self.apex:
            raise InputError("right leg does not start at the apex")


def identity_morphism(a: LabelledAsyncSystem) -> SystemMorphism:
    return SystemMorphism(a, a, {s: s for s in a.system.states}, {e: e for e in a.system.events})


def validate_morphism(m: SystemMorphism) -> ValidationReport:
    src, tgt = m.source.system, m.target.system
    report = ValidationReport("morphism")
    missing = sorted(src.states - m.sigma.keys())
    for s in missing:
        report.add("sigma-undefined", (s,), f"sigma is not defined on state {s!r}")
    for s in sorted(m.sigma):
        if s not in src.states:
            report.add("sigma-unknown-source", (s,), f"sigma maps unknown state {s!r}")
        elif m.sigma[s] not in tgt.states:
            report.add("sigma-unknown-target", (s,), f"sigma({s}) = {m.sigma[s]!r} is not a target state")
    for e in sorted(m.eta):
        if e not in src.events:
            report.add("eta-unknown-source", (e,), f"eta maps unknown event {e!r}")
        elif m.eta[e] not in tgt.events:
            report.add("eta-unknown-target", (e,), f"eta({e}) = {m.eta[e]!r} is not a target event")
    if missing or report.kinds() & {"eta-unknown-target", "sigma-unknown-target"}:
        return report
    if m.sigma.get(src.initial) != tgt.initial:
        report.add(
            "initial",
            (src.initial,),
            f"sigma({src.initial}) = {m.sigma.get(src.initial)!r}, expected {tgt.initial!r}",
        )
    for s, e, t in src.transitions():
        if e in m.eta:
            img = tgt.step(m.sigma[s], m.eta[e])
            if img != m.sigma[t]:
                report.add(
                    "transition",
                    (s, e, t),
                    f"({s}, {e}, {t}) maps to ({m.sigma[s]}, {m.eta[e]}, {m.sigma[t]}) "
                    f"which is not a target transition",
                )
        elif m.sigma[s] != m.sigma[t]:
            report.add(
                "collapse",
                (s, e, t),
                f"eta({e}) is undefined but sigma({s}) = {m.sigma[s]} differs from sigma({t}) = {m.sigma[t]}",
            )
    for p in sorted(src.indep, key=sorted):
        if len(p) != 2:
            continue
        a, b = sorted(p)
        if a in m.eta and b in m.eta and not tgt.independent(m.eta[a], m.eta[b]):
            report.add(
                "independence",
                (a, b),
                f"independent ({a}, {b}) maps to dependent ({m.eta[a]}, {m.eta[b]})",
            )
    if m.source.alphabet == m.target.alphabet:
        for e in sorted(m.eta):
            if m.source.labels[e] != m.target.labels[m.eta[e]]:
                report.add(
                    "label",
                    (e,),
                    f"label of {e!r} is {m.source.labels[e]!r} but label of "
                    f"{m.eta[e]!r} is {m.target.labels[m.eta[e]]!r}",
                )
    return report


def is_open(m: SystemMorphism) -> ValidationReport:
    """Totality of eta, lifting of target transitions from every source
    state, and reflection of independence at reachable states."""
    src, tgt = m.source.system, m.target.system
    report = ValidationReport("open")
    for e in src.sorted_events():
        if e not in m.eta:
            report.add("eta-partial", (e,), f"eta is undefined on event {e!r}")
    for s in src.sorted_states():
        image = m.sigma[s]
        lifts = {(m.eta.get(e), m.sigma[u]) for e, u in src.successors(s).items()}
        for e2, u2 in tgt.successors(image).items():
            if (e2, u2) not in lifts:
                report.add(
                    "lifting",
                    (s, e2, u2),
                    f"target transition ({image}, {e2}, {u2}) has no lift from {s}",
                )
    flagged = set()
    for s in sorted(reachable_states(src)):
        for e1, u in src.successors(s).items():
            for e2 in src.successors(u):
                if e1 not in m.eta or e2 not in m.eta:
                    continue
                if tgt.independent(m.eta[e1], m.eta[e2]) and not src.independent(e1, e2):
                    key = tuple(sorted((e1, e2)))
                    if key in flagged:
                        continue
                    flagged.add(key)
                    report.add(
                        "independence-reflection",
                        key,
                        f"at {s}: ({m.eta[e1]}, {m.eta[e2]}) independent in the target "
                        f"but ({e1}, {e2}) dependent",
                    )
    return report


@dataclass
class SurjectivityResult:
    degree: int
    surjective: bool
    missing: list = field(default_factory=list)

    def __bool__(self):
        return self.surjective


def check_Q_surjectivity(m: SystemMorphism, n: int) -> SurjectivityResult:
    """Is every tuple of ``Q_n(target)`` the image of one in ``Q_n(source)``?"""
    if set(m.eta) != m.source.system.events:
        raise InputError("Q_n maps need a total event map")
    image = {
        (m.sigma[q.state], tuple(m.eta[e] for e in q.events))
        for q in enumerate_Q(m.source.system, n)
    }
    missing = [q for q in enumerate_Q(m.target.system, n) if (q.state, q.events) not in image]
    return SurjectivityResult(n, not missing, missing)


NOT_BISIMILAR = "NotBisimilar"
CERTIFIED = "Certified"
INCONCLUSIVE = "Inconclusive"


@dataclass
class Verdict:
    """Outcome of certification or refutation.

    A span that fails its checks yields ``Inconclusive``: it says nothing
    about bisimilarity either way.
    """

    kind: str
    report: str = ""
    witness: tuple = None
    length: int = None
    side: str = None
    max_len_tried: int = None
    details: dict = field(default_factory=dict)

    def to_json(self):
        out = {"verdict": self.kind}
        if self.kind == NOT_BISIMILAR:
            out.update(witness=list(self.witness), length=self.length, side=self.side)
        if self.kind == INCONCLUSIVE:
            out["max_len_tried"] = self.max_len_tried
        out.update(self.details)
        out["report"] = self.report
        return out


def _check_alphabets(a, b):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(
            f"alphabets differ: {sorted(a.alphabet)} vs {sorted(b.alphabet)}"
        )


def certify_bisimilar(span: Span) -> Verdict:
    _check_alphabets(span.apex, span.left.target)
    _check_alphabets(span.apex, span.right.target)
    lines, failed = [], False
    for name, leg in (("left", span.left), ("right", span.right)):
        for rep in (validate_morphism(leg), is_open(leg)):
            rep.subject = f"{name} leg {rep.subject}"
            lines.append(rep.format())
            failed |= not rep.ok
    if failed:
        return Verdict(INCONCLUSIVE, "\n".join(lines + ["span rejected"]))
    return Verdict(CERTIFIED, "\n".join(lines + ["both legs are open and label preserving"]))


class _SignatureCache:
    def __init__(self, a):
        self.a = a
        self.memo = {}

    def __call__(self, s) -> HomologySignature:
        if s not in self.memo:
            self.memo[s] = homology(scheme_of_system(residual(self.a, s)))
        return self.memo[s]


def refute_bisimilar(a: LabelledAsyncSystem, b: LabelledAsyncSystem, max_len: int = None) -> Verdict:
    """Compare residual homology signatures layer by layer.

    For each word length ``k`` the sets of signatures of states reachable
    by words of length ``k`` must coincide in bisimilar systems. The first
    mismatch yields a replayable witness word; agreement up to ``max_len``
    proves nothing.
    """
    _check_alphabets(a, b)
    if max_len is None:
        max_len = len(a.system.states) + len(b.system.states)
    layers = {"left": reachable_layers(a.system, max_len=max_len),
              "right": reachable_layers(b.system, max_len=max_len)}
    sig = {"left": _SignatureCache(a), "right": _SignatureCache(b)}
    for k in range(max_len + 1):
        sets = {side: {s: sig[side](s) for s in layers[side][k]} for side in layers}
        found = []
        for side, other in (("left", "right"), ("right", "left")):
            others = set(sets[other].values())
            for s, h in sets[side].items():
                if h not in others:
                    found.append((layers[side].witness(k, s), side, s, h))
        if found:
            found.sort(key=lambda f: (f[1] != "left", f[0]))
            word, side, state, h = found[0]
            other = "right" if side == "left" else "left"
            available = sorted({str(x) for x in sets[other].values()})
            report = (
                f"after {' '.join(word) or 'the empty word'} ({side} system, state {state}) "
                f"the residual homology is [{h}]; words of length {k} on the {other} side "
                f"only reach {available or ['no states']}"
            )
            return Verdict(
                NOT_BISIMILAR,
                report,
                witness=word,
                length=k,
                side=side,
                details={"state": state, "signature": h.to_json(),
                         "other_signatures": available},
            )
    return Verdict(
        INCONCLUSIVE,
        f"residual homology signatures agree on every layer up to length {max_len}",
        max_len_tried=max_len,
    )
