"""Sensor-network models and a seeded random RCGS generator.

Conventions for the sensor networks:

* sensors play role 1; action 1 is *signal*, action 2 is *idle*;
* the H2 supervisor is the last agent and plays role 2 in every state,
  with actions 1 = wait, 2 = reject, 3 = accept;
* alarm states fall back to ``q0`` (H1, H3: ``q1 -> q0``; H2: ``q2 -> q0``).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from rcgs.errors import InvalidArgument
from rcgs.model import COMPARATORS, DEFAULT, Guard, GuardAtom, RcgsModel, Rule, make_model


def _at_least(role: int, action: int, bound: int) -> GuardAtom:
    return GuardAtom(role, action, ">=", bound)


def gen_h1(n: int, k: int) -> RcgsModel:
    """One tier of ``n`` sensors; ``p`` holds once at least ``k`` signal."""
    if n < 1:
        raise InvalidArgument("need at least one sensor")
    if not 0 <= k <= n:
        raise InvalidArgument(f"threshold {k} outside 0..{n}")
    return make_model(
        agent_count=n,
        role_count=1,
        states=("q0", "q1"),
        initial="q0",
        props=("p",),
        labeling={"q1": {"p"}},
        assignment={"q0": [1] * n, "q1": [1] * n},
        action_counts={"q0": [2], "q1": [1]},
        transitions={
            "q0": [Rule(Guard((_at_least(1, 1, k),)), "q1"), Rule(DEFAULT, "q0")],
            "q1": [Rule(DEFAULT, "q0")],
        },
    )


def gen_h2(n: int, k: int) -> RcgsModel:
    """H1 plus a supervisor (agent ``n + 1``) who may turn ``p`` into ``q``."""
    if n < 1:
        raise InvalidArgument("need at least one sensor")
    if not 0 <= k <= n:
        raise InvalidArgument(f"threshold {k} outside 0..{n}")
    roles = [1] * n + [2]
    return make_model(
        agent_count=n + 1,
        role_count=2,
        states=("q0", "q1", "q2"),
        initial="q0",
        props=("p", "q"),
        labeling={"q1": {"p"}, "q2": {"q"}},
        assignment={q: roles for q in ("q0", "q1", "q2")},
        action_counts={"q0": [2, 1], "q1": [1, 3], "q2": [1, 1]},
        transitions={
            "q0": [Rule(Guard((_at_least(1, 1, k),)), "q1"), Rule(DEFAULT, "q0")],
            "q1": [
                Rule(Guard((_at_least(2, 3, 1),)), "q2"),
                Rule(Guard((_at_least(2, 2, 1),)), "q0"),
                Rule(DEFAULT, "q1"),
            ],
            "q2": [Rule(DEFAULT, "q0")],
        },
    )


def gen_h3(n1: int, n2: int, t1: int, t2: int) -> RcgsModel:
    """Two sensor tiers with separate thresholds; ``p`` needs both met."""
    if n1 < 1 or n2 < 1:
        raise InvalidArgument("each tier needs at least one sensor")
    if not 0 <= t1 <= n1 or not 0 <= t2 <= n2:
        raise InvalidArgument(f"thresholds ({t1}, {t2}) outside 0..({n1}, {n2})")
    roles = [1] * n1 + [2] * n2
    both = Guard((_at_least(1, 1, t1), _at_least(2, 1, t2)))
    return make_model(
        agent_count=n1 + n2,
        role_count=2,
        states=("q0", "q1"),
        initial="q0",
        props=("p",),
        labeling={"q1": {"p"}},
        assignment={"q0": roles, "q1": roles},
        action_counts={"q0": [2, 2], "q1": [1, 1]},
        transitions={"q0": [Rule(both, "q1"), Rule(DEFAULT, "q0")], "q1": [Rule(DEFAULT, "q0")]},
    )


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    max_states: int = 4
    max_agents: int = 5
    max_roles: int = 2
    max_actions: int = 3
    guard_density: float = 0.6

    def __post_init__(self):
        for name in ("max_states", "max_agents", "max_roles", "max_actions"):
            if getattr(self, name) < 1:
                raise InvalidArgument(f"{name} must be at least 1")
        if not 0 <= self.guard_density <= 1:
            raise InvalidArgument("guard_density must lie in [0, 1]")


RANDOM_PROPS = ("p", "q")
MAX_RULES = 3


def gen_random(params: GenParams) -> RcgsModel:
    """A small well-formed RCGS, fully determined by ``params``."""
    rng = random.Random(params.seed)
    states = [f"s{i}" for i in range(rng.randint(1, params.max_states))]
    n = rng.randint(1, params.max_agents)
    k = rng.randint(1, params.max_roles)
    ops = sorted(COMPARATORS)
    labeling, assignment, action_counts, transitions = {}, {}, {}, {}
    for q in states:
        labeling[q] = {p for p in RANDOM_PROPS if rng.random() < 0.5}
        roles = [rng.randint(1, k) for _ in range(n)]
        assignment[q] = roles
        counts = [rng.randint(1, params.max_actions) for _ in range(k)]
        action_counts[q] = counts
        rules = []
        while len(rules) < MAX_RULES and rng.random() < params.guard_density:
            atoms = []
            for _ in range(rng.randint(1, 2)):
                r = rng.randint(1, k)
                pop = roles.count(r)
                atoms.append(GuardAtom(r, rng.randint(1, counts[r - 1]), rng.choice(ops),
                                       rng.randint(0, pop)))
            rules.append(Rule(Guard(tuple(atoms)), rng.choice(states)))
        rules.append(Rule(DEFAULT, rng.choice(states)))
        transitions[q] = rules
    return make_model(
        agent_count=n,
        role_count=k,
        states=states,
        initial=states[0],
        props=RANDOM_PROPS,
        labeling=labeling,
        assignment=assignment,
        action_counts=action_counts,
        transitions=transitions,
    )
