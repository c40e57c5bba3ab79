import pytest

from concur_homology import AsyncSystem, LabelledAsyncSystem, SystemMorphism
from concur_homology import formats
from concur_homology.cli import fixtures_dir

FIXTURES = fixtures_dir()


def load_system(name):
    return formats.system_from_json(formats.read_json(FIXTURES / name))


def load_net(name):
    return formats.net_from_json(formats.read_json(FIXTURES / name))


def loops(states_events, initial, indep):
    """One-state-per-entry system where every event is a self loop."""
    (state, events), = states_events.items()
    return LabelledAsyncSystem.unlabelled(
        AsyncSystem.build([state], initial, events, indep, [(state, e, state) for e in events])
    )


def non_reflecting_morphism():
    src = loops({"s0": ["a", "b", "c"]}, "s0", [("a", "b")])
    tgt = loops({"t0": ["a'", "b'"]}, "t0", [("a'", "b'")])
    return SystemMorphism(src, tgt, {"s0": "t0"}, {"a": "a'", "b": "b'", "c": "a'"})


def tree_apex():
    """Left tree of the two-trees example with its c-branch doubled."""
    left = load_system("trees_left.json")
    s = left.system
    system = AsyncSystem.build(
        list(s.states) + ["s5"], "s0", list(s.events) + ["c2"], [],
        s.transitions() + [("s2", "c2", "s5")],
    )
    labels = dict(left.labels, c2="c")
    return LabelledAsyncSystem(system, labels, left.alphabet)


@pytest.fixture
def cube():
    return load_system("cube.json")


@pytest.fixture
def trees():
    return load_system("trees_left.json"), load_system("trees_right.json")
