"""Randomised invariants over small schemes, matrices and net systems."""

from itertools import combinations

from hypothesis import HealthCheck, given, settings, strategies as st

from concur_homology import (
    IntegerMatrix,
    LabelledAsyncSystem,
    SimplicialScheme,
    act,
    boundary_matrix,
    enumerate_Q,
    homology,
    ordered_simplices,
    reachable_layers,
    scheme_of_system,
    smith_normal_form,
    validate_system,
)
from concur_homology.homology import _closure
from concur_homology.lts import reachable_states
from concur_homology.petri import enabled, fire, net_independence

from oracles import brute_force_Q, invariant_factors_by_minors, rational_rank
from strategies import int_matrices, net_systems, schemes

PROPS = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])


@PROPS
@given(schemes())
def test_boundary_of_boundary_is_zero(k):
    for n in range(1, k.dimension):
        assert (boundary_matrix(k, n) @ boundary_matrix(k, n + 1)).is_zero()


@PROPS
@given(schemes(), st.randoms(use_true_random=False))
def test_homology_ignores_vertex_order(k, rnd):
    order = sorted(k.vertices)
    rnd.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    assert homology(k, key=rank.__getitem__) == homology(k)


@PROPS
@given(schemes())
def test_euler_characteristic(k):
    h = homology(k)
    counts = sum((-1) ** n * len(ordered_simplices(k, n)) for n in range(k.dimension + 1))
    bettis = sum((-1) ** n * h.betti(n) for n in range(k.dimension + 1))
    assert counts == bettis


@PROPS
@given(int_matrices())
def test_smith_rank_and_divisibility(rows):
    ncols = len(rows[0]) if rows else 0
    form = smith_normal_form(IntegerMatrix(len(rows), ncols, rows))
    assert form.rank == rational_rank(rows)
    factors = form.invariant_factors
    assert all(d > 0 for d in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    assert list(form.diagonal[form.rank:]) == [0] * (len(form.diagonal) - form.rank)


@settings(max_examples=200, deadline=None)
@given(int_matrices(max_dim=4, bound=9))
def test_smith_matches_minor_oracle(rows):
    ncols = len(rows[0]) if rows else 0
    form = smith_normal_form(IntegerMatrix(len(rows), ncols, rows))
    assert list(form.invariant_factors) == invariant_factors_by_minors(rows)


@PROPS
@given(schemes())
def test_boundary_matrix_ranks(k):
    for n in range(1, k.dimension + 1):
        m = boundary_matrix(k, n)
        assert smith_normal_form(m).rank == rational_rank(m.to_lists())


@PROPS
@given(net_systems(concurrent=True), st.data())
def test_trace_transposition_invariance(net_and_system, data):
    _, a = net_and_system
    s = a.system
    assert validate_system(a).ok
    events = s.sorted_events()
    pairs = sorted(tuple(sorted(p)) for p in s.indep)
    if not pairs:
        return
    x, y = data.draw(st.sampled_from(pairs))
    start = data.draw(st.sampled_from(s.sorted_states()))
    word = st.lists(st.sampled_from(events), max_size=4)
    u, v = data.draw(word), data.draw(word)
    lhs = act(s, start, u + [x, y] + v)
    rhs = act(s, start, u + [y, x] + v)
    if lhs is not None or rhs is not None:
        assert lhs == rhs


@PROPS
@given(net_systems())
def test_net_systems_satisfy_diamond(net_and_system):
    net, a = net_and_system
    assert validate_system(a).ok
    # independent events commute arithmetically wherever both orders fire
    n = net.net
    indep = net_independence(n)
    for m in a.system.states:
        marking = n.marking(dict(zip(sorted(n.places), map(int, m.split(",")))))
        for e1 in enabled(n, marking):
            after = fire(n, marking, e1)
            for e2 in enabled(n, after):
                if frozenset((e1, e2)) in indep:
                    assert fire(n, fire(n, marking, e2), e1) == fire(n, after, e2)


@PROPS
@given(net_systems())
def test_Q_enumeration(net_and_system):
    _, a = net_and_system
    s = a.system
    reach = reachable_states(s)
    previous = None
    for n in range(len(s.events) + 1):
        q = enumerate_Q(s, n)
        got = {(t.state, t.events) for t in q}
        assert got == brute_force_Q(s, n, reach)
        if previous is not None:
            assert all((st_, ev[:-1]) in previous for st_, ev in got)
        previous = got


@PROPS
@given(net_systems())
def test_scheme_matches_ordered_tuples(net_and_system):
    _, a = net_and_system
    s = a.system
    found = set()
    for n in range(1, len(s.events) + 1):
        found |= {frozenset(a.labels[e] for e in q.events) for q in enumerate_Q(s, n)}
    simplices = _closure(found)
    k = scheme_of_system(a)
    assert k.simplices == simplices | {frozenset((v,)) for v in k.vertices}


@PROPS
@given(net_systems())
def test_layer_witnesses_replay(net_and_system):
    _, a = net_and_system
    layers = reachable_layers(a)
    assert layers.reachable == reachable_states(a.system)
    for k in range(len(layers)):
        for s in layers[k]:
            w = layers.witness(k, s)
            assert len(w) == k and act(a, a.initial, w) == s


@PROPS
@given(schemes(max_vertices=6, max_facet=4))
def test_constructed_schemes_are_closed(k):
    for s in k.simplices:
        for r in range(1, len(s)):
            for face in combinations(sorted(s), r):
                assert frozenset(face) in k.simplices
    assert all(frozenset((v,)) in k.simplices for v in k.vertices)
