import itertools
import random

import pytest

from rcgs import (
    GenParams,
    cgs_mcheck,
    check_lemma1,
    check_lemma2,
    coalition_profiles,
    force,
    gen_h1,
    gen_random,
    mcheck,
    parse_formula,
    translate,
)
from rcgs.cgs import (
    CgsStrategy,
    cgs_enforce,
    cgs_force,
    iter_cgs_strategies,
    map_action_tuple,
    map_strategy,
)
from rcgs.checker import iter_strategies
from rcgs.errors import InvalidArgument, ResourceLimit
from rcgs.formula import random_formula
from rcgs.model import DEFAULT, Rule, make_model
from rcgs.sizing import coalition_profile_count


def all_coalitions(m):
    agents = sorted(m.agents)
    return [frozenset(c) for k in range(len(agents) + 1) for c in itertools.combinations(agents, k)]


def test_translate_moves(h1):
    cgs = translate(h1)
    assert cgs.moves["q0"] == (2,) * 5
    assert cgs.moves["q1"] == (1,) * 5


def test_translate_transition(h1):
    cgs = translate(h1)
    assert cgs.delta("q0", (1, 1, 1, 2, 2)) == "q1"
    assert cgs.delta("q0", (1, 2, 1, 2, 2)) == "q0"


def test_translate_single_agent_single_role():
    m = make_model(1, 1, ["a", "b"], "a", [], {}, {"a": [1], "b": [1]}, {"a": [3], "b": [1]},
                   {"a": [Rule(DEFAULT, "b")], "b": [Rule(DEFAULT, "a")]})
    cgs = translate(m)
    assert [cgs.delta("a", (x,)) for x in (1, 2, 3)] == ["b"] * 3
    assert cgs.delta("b", (1,)) == "a"


def test_map_action_tuple():
    m = gen_h1(3, 2)
    assert map_action_tuple(m, "q0", {1, 2, 3}, (1, 1, 2)) == ((2, 1),)
    assert map_action_tuple(m, "q0", set(), ()) == ((0, 0),)
    assert map_action_tuple(m, "q0", {1, 2}, (1, 2)) == map_action_tuple(m, "q0", {1, 2}, (2, 1))
    with pytest.raises(InvalidArgument):
        map_action_tuple(m, "q0", {1}, (3,))


def test_map_strategy():
    m = gen_h1(3, 2)
    everyone = CgsStrategy(frozenset({1, 2, 3}), (("q0", (1, 1, 1)), ("q1", (1, 1, 1))))
    assert map_strategy(m, everyone).as_dict() == {"q0": ((3, 0),), "q1": ((3,),)}
    a = CgsStrategy(frozenset({1, 2}), (("q0", (1, 2)), ("q1", (1, 1))))
    b = CgsStrategy(frozenset({1, 2}), (("q0", (2, 1)), ("q1", (1, 1))))
    assert map_strategy(m, a) == map_strategy(m, b)


def test_map_strategy_image_is_all_strategies_h1():
    m = gen_h1(3, 2)
    everyone = frozenset({1, 2, 3})
    cgs = translate(m)
    image = {map_strategy(m, s) for s in iter_cgs_strategies(cgs, everyone)}
    assert len(list(iter_cgs_strategies(cgs, everyone))) == 2**3
    assert image == set(iter_strategies(m, everyone))
    assert len(image) == 4


def test_cgs_mcheck_examples(h1):
    cgs = translate(h1)
    assert cgs_mcheck(cgs, parse_formula("true"))[0] == set(h1.states)
    assert "q0" in cgs_mcheck(cgs, parse_formula("<<1,2,3>>X p"))[0]


def test_cgs_enforce_brute_force(h1):
    # 2**5 tuples: {1,2,3} signalling makes every completion hit the threshold
    cgs = translate(h1)
    found, inspected = cgs_enforce(cgs, {1, 2, 3}, "q0", {"q1"}, short_circuit=False)
    assert found and inspected == 32


def test_force_sets_agree_h1_all_coalitions():
    m = gen_h1(3, 2)
    for a in all_coalitions(m):
        for q in m.states:
            assert check_lemma2(m, a, q)


def test_force_sets_agree_grand_coalition_singletons():
    for seed in range(10):
        m = gen_random(GenParams(seed))
        for q in m.states:
            sets = force(m, q, m.agents)
            assert all(len(s) == 1 for s in sets)
            assert check_lemma2(m, m.agents, q)


def test_force_sets_agree_random_seeds():
    for seed in range(1, 101):
        m = gen_random(GenParams(seed, max_states=4, max_agents=5))
        rng = random.Random(seed)
        a = frozenset(x for x in m.agents if rng.random() < 0.5)
        q = rng.choice(m.states)
        assert check_lemma2(m, a, q)


def test_strategy_image_both_paths():
    for seed in range(30):
        m = gen_random(GenParams(seed))
        for a in all_coalitions(m)[:8]:
            assert check_lemma1(m, a, limit=10**4)
            assert check_lemma1(m, a, limit=0)


def test_translation_preserves_truth_small():
    for seed in range(40):
        m = gen_random(GenParams(seed))
        cgs = translate(m)
        rng = random.Random(seed)
        for _ in range(10):
            phi = random_formula(rng, m.props, m.agent_count, 2)
            assert mcheck(m, phi)[0] == cgs_mcheck(cgs, phi)[0]


def test_transition_count_inequality():
    for seed in range(60):
        m = gen_random(GenParams(seed))
        cgs = translate(m)
        for a in all_coalitions(m):
            for q in m.states:
                rcgs_pairs = (coalition_profile_count(m, q, a)
                              * coalition_profile_count(m, q, m.agents - a))
                assert rcgs_pairs <= cgs.tuple_count(q)


def test_cgs_bounds():
    cgs = translate(gen_h1(25, 3))
    with pytest.raises(ResourceLimit):
        cgs_mcheck(cgs, parse_formula("<<1>>X p"))
    with pytest.raises(ResourceLimit):
        cgs_force(cgs, "q0", {1})


def test_cgs_force_matches_rcgs_force_by_coalition_profile():
    m = gen_h1(4, 2)
    cgs = translate(m)
    for a in all_coalitions(m):
        assert len(cgs_force(cgs, "q0", a)) <= len(coalition_profiles(m, "q0", a))
