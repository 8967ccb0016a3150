import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from rcgs import (
    GenParams,
    apply_transition,
    check_by_strategy_enumeration,
    coalition_profiles,
    complete_profiles,
    enforce,
    gen_h1,
    gen_random,
    mcheck,
    parse_formula,
    pre,
    profile_leq,
)
from rcgs.checker import (
    CheckStats,
    iter_strategies,
    outcome_graph,
    strategy_count,
    strategy_winning_states,
)
from rcgs.errors import ResourceLimit, ValidationError
from rcgs.formula import (
    And,
    CoalitionGlobally,
    CoalitionNext,
    CoalitionUntil,
    Or,
    random_formula,
)
from rcgs.sizing import coalition_profile_count


def brute_enforce(model, coalition, q, target):
    """Some A-profile all of whose pointwise-larger complete profiles land in target."""
    full = complete_profiles(model, q)
    return any(
        all(apply_transition(model, q, f) in target for f in full if profile_leq(fa, f))
        for fa in coalition_profiles(model, q, coalition)
    )


def test_enforce_h1(h1):
    assert enforce(h1, {1, 2, 3}, "q0", {"q1"})[0]
    assert not enforce(h1, {1, 2}, "q0", {"q1"})[0]


def test_enforce_whole_state_space_always_true():
    for seed in range(20):
        m = gen_random(GenParams(seed))
        for q in m.states:
            assert enforce(m, set(), q, m.states)[0]
            assert enforce(m, m.agents, q, m.states)[0]


def test_enforce_against_brute_force():
    for seed in range(40):
        m = gen_random(GenParams(seed))
        rng = random.Random(seed)
        for _ in range(6):
            a = {x for x in m.agents if rng.random() < 0.5}
            target = {s for s in m.states if rng.random() < 0.5}
            for q in m.states:
                assert enforce(m, a, q, target)[0] == brute_enforce(m, a, q, target)


def test_enforce_counts_without_short_circuit():
    m = gen_h1(5, 3)
    found, stats = enforce(m, {1, 2}, "q0", {"q1"}, short_circuit=False)
    assert not found
    assert stats.transitions_inspected == 3 * 4
    found, stats = enforce(m, {1, 2, 3}, "q0", {"q1"}, short_circuit=False)
    assert found and stats.transitions_inspected == 4 * 3


def test_enforce_short_circuit_stops_early():
    m = gen_h1(5, 3)
    # A-profile order (0,3), (1,2), (2,1), (3,0): the first three each fail on
    # their first extension, the fourth needs all 3 extensions
    found, stats = enforce(m, {1, 2, 3}, "q0", {"q1"})
    assert found and stats.transitions_inspected == 1 + 1 + 1 + 3


def test_pre(h1):
    assert pre(h1, {1, 2}, h1.states) == set(h1.states)
    assert pre(h1, {1, 2}, set()) == set()
    # q0 can be pushed to q1 by three sensors; q1 always returns to q0
    expected = {q for q in h1.states if brute_enforce(h1, {1, 2, 3}, q, {"q1"})}
    assert expected == {"q0"}
    assert pre(h1, {1, 2, 3}, {"q1"}) == expected


def test_mcheck_examples(h1):
    assert "q0" in mcheck(h1, parse_formula("<<1,2,3>>X p"))[0]
    assert "q0" not in mcheck(h1, parse_formula("<<1,2>>X p"))[0]
    assert mcheck(h1, parse_formula("true"))[0] == set(h1.states)
    assert mcheck(h1, parse_formula("false"))[0] == set()
    assert mcheck(h1, parse_formula("p -> false"))[0] == {"q0"}


def test_mcheck_validation(h1):
    with pytest.raises(ValidationError, match="6"):
        mcheck(h1, parse_formula("<<6>>X p"))
    with pytest.raises(ValidationError, match="zz"):
        mcheck(h1, parse_formula("<<1>>X zz"))


def test_mcheck_finally_and_until_on_h1(h1):
    # three sensors can always steer to p: from q1 the model returns to q0 first
    assert mcheck(h1, parse_formula("<<1,2,3>>F p"))[0] == set(h1.states)
    assert mcheck(h1, parse_formula("<<1,2>>F p"))[0] == {"q1"}
    # nobody can keep p forever: q1 always leaves
    assert mcheck(h1, parse_formula("<<1,2,3,4,5>>G p"))[0] == set()
    # but the opponents can keep !p forever
    assert mcheck(h1, parse_formula("<<3,4,5>>G !p"))[0] == {"q0"}


def test_fixpoint_iterations_bounded_by_state_count():
    for seed in range(50):
        m = gen_random(GenParams(seed))
        for phi in ("<<1>>G p", "<<1>> p U q", "<<>>F q"):
            _, stats = mcheck(m, parse_formula(phi))
            assert stats.fixpoint_iterations <= len(m.states) + 1


def test_counter_bound_per_enforce():
    for seed in range(40):
        m = gen_random(GenParams(seed))
        for a in range(m.agent_count + 1):
            coalition = set(range(1, a + 1))
            rest = m.agents - coalition
            for q in m.states:
                for sc in (True, False):
                    _, stats = enforce(m, coalition, q, {m.states[0]}, short_circuit=sc)
                    bound = (coalition_profile_count(m, q, coalition)
                             * coalition_profile_count(m, q, rest))
                    assert stats.transitions_inspected <= bound
                    assert bound <= len(complete_profiles(m, q)) ** 2


def _corpus(n):
    for seed in range(n):
        m = gen_random(GenParams(seed))
        yield seed, m, random.Random(seed)


def test_fixpoint_identities():
    for seed, m, rng in _corpus(80):
        for _ in range(4):
            a = frozenset(x for x in m.agents if rng.random() < 0.5)
            phi = random_formula(rng, m.props, m.agent_count, 1)
            psi = random_formula(rng, m.props, m.agent_count, 1)
            g = CoalitionGlobally(a, phi)
            assert mcheck(m, g)[0] == mcheck(m, And(phi, CoalitionNext(a, g)))[0]
            u = CoalitionUntil(a, phi, psi)
            assert mcheck(m, u)[0] == mcheck(m, Or(psi, And(phi, CoalitionNext(a, u))))[0]


def test_coalition_monotonicity():
    for seed, m, rng in _corpus(80):
        a = frozenset(x for x in m.agents if rng.random() < 0.4)
        b = a | {x for x in m.agents if rng.random() < 0.5}
        phi = random_formula(rng, m.props, m.agent_count, 1)
        psi = random_formula(rng, m.props, m.agent_count, 1)
        for make in (lambda c: CoalitionNext(c, phi), lambda c: CoalitionGlobally(c, phi),
                     lambda c: CoalitionUntil(c, phi, psi)):
            assert mcheck(m, make(a))[0] <= mcheck(m, make(b))[0]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_pre_is_monotone(seed, data):
    m = gen_random(GenParams(seed))
    small = data.draw(st.sets(st.sampled_from(m.states)))
    big = small | data.draw(st.sets(st.sampled_from(m.states)))
    a = data.draw(st.sets(st.sampled_from(sorted(m.agents))))
    assert pre(m, a, small) <= pre(m, a, big)


def test_determinism():
    m = gen_random(GenParams(123))
    phi = parse_formula("<<1>>(p | q) U <<>>G !q")
    first = mcheck(m, phi, short_circuit=False)
    assert all(mcheck(m, phi, short_circuit=False) == first for _ in range(3))


def test_short_circuit_does_not_change_results():
    for seed, m, rng in _corpus(60):
        phi = random_formula(rng, m.props, m.agent_count, 2)
        fast, s1 = mcheck(m, phi)
        slow, s2 = mcheck(m, phi, short_circuit=False)
        assert fast == slow
        assert s1.transitions_inspected <= s2.transitions_inspected


# -- strategy enumeration oracle ---------------------------------------------

def test_oracle_agrees_on_h1_three_sensors():
    m = gen_h1(3, 2)
    in_mcheck = "q0" in mcheck(m, parse_formula("<<1,2>>X p"))[0]
    assert check_by_strategy_enumeration(m, {1, 2}, "X", {"q1"}, "q0") == in_mcheck
    assert in_mcheck


def test_oracle_until_holds_immediately_in_goal():
    for seed in range(20):
        m = gen_random(GenParams(seed))
        goal = {m.states[0]}
        for a in (set(), m.agents):
            assert check_by_strategy_enumeration(m, a, "U", set(), m.states[0], goal)


def test_oracle_next_into_everything():
    m = gen_random(GenParams(3))
    assert check_by_strategy_enumeration(m, set(), "X", m.states, m.states[-1])


def test_oracle_limit():
    m = gen_h1(5, 3)
    assert strategy_count(m, m.agents) == 6
    with pytest.raises(ResourceLimit):
        check_by_strategy_enumeration(m, m.agents, "X", {"q1"}, "q0", limit=5)


def test_literal_strategy_enumeration_matches_fast_path():
    # recompute the oracle with explicit RcgsStrategy objects and outcome graphs
    for seed in range(25):
        m = gen_random(GenParams(seed, max_agents=3))
        a = frozenset({1})
        phi = {q for q in m.states if "p" in m.labeling[q]}
        won = set()
        for s in iter_strategies(m, a):
            graph = outcome_graph(m, s)
            w = set(phi)
            while True:
                nxt = {q for q in w if graph[q] <= w}
                if nxt == w:
                    break
                w = nxt
            won |= w
        assert won == strategy_winning_states(m, a, "G", phi)
        assert len(list(iter_strategies(m, a))) == strategy_count(m, a)


LITERALS = ["p", "!p", "q", "!q", "true", "false"]


def test_oracle_agrees_with_mcheck():
    for seed, m, rng in _corpus(60):
        for a in range(m.agent_count + 1):
            coalition = frozenset(range(1, a + 1))
            phi, psi = rng.choice(LITERALS), rng.choice(LITERALS)
            phi_set = mcheck(m, parse_formula(phi))[0]
            psi_set = mcheck(m, parse_formula(psi))[0]
            cs = ",".join(map(str, sorted(coalition)))
            for op, text in (("X", f"<<{cs}>>X {phi}"), ("G", f"<<{cs}>>G {phi}"),
                             ("U", f"<<{cs}>>({phi}) U ({psi})")):
                expected = mcheck(m, parse_formula(text))[0]
                assert strategy_winning_states(m, coalition, op, phi_set, psi_set) == expected
                q = rng.choice(m.states)
                assert check_by_strategy_enumeration(m, coalition, op, phi_set, q, psi_set) == (
                    q in expected)


def test_check_stats_add():
    s = CheckStats(1, 2)
    s.add(CheckStats(3, 4))
    assert s == CheckStats(4, 6)
