"""Concurrent game structures with roles.

An RCGS fixes, per state, which role each agent plays and how many actions
each role has.  Transitions see only *profiles*: one vote per role, where a
vote counts how many agents of that role picked each action.  Votes and
profiles are plain tuples::

    vote    = (3, 2)             # 3 agents chose action 1, 2 chose action 2
    profile = ((3, 2), (1, 0))   # one vote per role, ordered by role id

Transitions are ordered guarded rules per state, first match wins, with a
mandatory trailing ``default`` rule.
"""
from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from rcgs.errors import InvalidArgument, UnknownState

Vote = tuple[int, ...]
Profile = tuple[Vote, ...]
Coalition = frozenset

COMPARATORS = {
    ">=": operator.ge,
    "<=": operator.le,
    "==": operator.eq,
    "!=": operator.ne,
    ">": operator.gt,
    "<": operator.lt,
}


@dataclass(frozen=True)
class GuardAtom:
    """``r<role>.a<action> <op> <bound>``, 1-based role and action."""

    role: int
    action: int
    op: str
    bound: int

    def holds(self, profile: Profile) -> bool:
        return COMPARATORS[self.op](profile[self.role - 1][self.action - 1], self.bound)

    def __str__(self):
        return f"r{self.role}.a{self.action} {self.op} {self.bound}"


@dataclass(frozen=True)
class Guard:
    """Conjunction of atoms; the empty conjunction is the default guard."""

    atoms: tuple[GuardAtom, ...] = ()

    @property
    def is_default(self) -> bool:
        return not self.atoms

    def holds(self, profile: Profile) -> bool:
        return all(atom.holds(profile) for atom in self.atoms)

    def __str__(self):
        return " & ".join(map(str, self.atoms)) if self.atoms else "default"


DEFAULT = Guard()


@dataclass(frozen=True)
class Rule:
    guard: Guard
    target: str


@dataclass(frozen=True)
class RcgsModel:
    """An RCGS ``<Agents, R, role map, Q, Pi, pi, action counts, delta>``.

    ``assignment[q][i]`` is the role of agent ``i + 1`` at ``q`` and
    ``action_counts[q][r]`` the number of actions of role ``r + 1``.
    Construction does not check invariants; call :func:`validate`.
    """

    agent_count: int
    role_count: int
    states: tuple[str, ...]
    initial: str
    props: tuple[str, ...]
    labeling: Mapping[str, frozenset]
    assignment: Mapping[str, tuple[int, ...]]
    action_counts: Mapping[str, tuple[int, ...]]
    transitions: Mapping[str, tuple[Rule, ...]]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def agents(self) -> frozenset:
        return frozenset(range(1, self.agent_count + 1))

    def state_index(self, q: str) -> int:
        index = self._cache.get("state_index")
        if index is None:
            index = {s: i for i, s in enumerate(self.states)}
            self._cache["state_index"] = index
        try:
            return index[q]
        except KeyError:
            raise UnknownState(q) from None

    def role_of(self, q: str, agent: int) -> int:
        self.state_index(q)
        return self.assignment[q][agent - 1]

    def members(self, q: str, role: int, coalition: Iterable[int] | None = None) -> frozenset:
        """Agents of ``coalition`` (default: everyone) in ``role`` at ``q``."""
        roles = self.assignment[q]
        pool = self.agents if coalition is None else coalition
        return frozenset(a for a in pool if roles[a - 1] == role)

    def populations(self, q: str, coalition: Iterable[int] | None = None) -> tuple[int, ...]:
        """Per-role head count of ``coalition`` at ``q``."""
        self.state_index(q)
        counts = [0] * self.role_count
        roles = self.assignment[q]
        pool = self.agents if coalition is None else coalition
        for a in pool:
            counts[roles[a - 1] - 1] += 1
        return tuple(counts)


def check_coalition(model: RcgsModel, coalition: Iterable[int]) -> frozenset:
    coalition = frozenset(coalition)
    bad = sorted(a for a in coalition if not 1 <= a <= model.agent_count)
    if bad:
        raise InvalidArgument(f"agents {bad} outside 1..{model.agent_count}")
    return coalition


def enumerate_votes(population: int, actions: int) -> list[Vote]:
    """All ``actions``-tuples of non-negative ints summing to ``population``.

    Lexicographic order, so ``(2, 2)`` gives ``[(0, 2), (1, 1), (2, 0)]``.
    """
    if actions < 1:
        raise InvalidArgument("a role needs at least one action")
    if population < 0:
        raise InvalidArgument("population must be non-negative")
    if actions == 1:
        return [(population,)]
    out = []
    for first in range(population + 1):
        for rest in enumerate_votes(population - first, actions - 1):
            out.append((first,) + rest)
    return out


def _product_profiles(populations: Sequence[int], actions: Sequence[int]) -> list[Profile]:
    return list(itertools.product(*(enumerate_votes(p, a) for p, a in zip(populations, actions))))


def complete_profiles(model: RcgsModel, q: str) -> list[Profile]:
    """P(q): the product over roles of complete votes, row-major over roles."""
    key = ("complete", q)
    cached = model._cache.get(key)
    if cached is None:
        cached = _product_profiles(model.populations(q), model.action_counts[q])
        model._cache[key] = cached
    return list(cached)


def coalition_profiles(model: RcgsModel, q: str, coalition: Iterable[int]) -> list[Profile]:
    """P(q, A): the ways the members of ``coalition`` can vote at ``q``."""
    coalition = check_coalition(model, coalition)
    return _product_profiles(model.populations(q, coalition), model.action_counts[q])


def _shape(profile: Profile) -> tuple[int, ...]:
    return tuple(len(v) for v in profile)


def profile_leq(lower: Profile, upper: Profile) -> bool:
    """Pointwise ``lower <= upper``; ``upper`` then extends ``lower``."""
    if _shape(lower) != _shape(upper):
        raise InvalidArgument(f"profile shapes differ: {_shape(lower)} vs {_shape(upper)}")
    return all(x <= y for v, w in zip(lower, upper) for x, y in zip(v, w))


def _check_shape(model: RcgsModel, q: str, profile: Profile) -> None:
    expected = model.action_counts[q]
    if _shape(profile) != tuple(expected):
        raise InvalidArgument(f"profile {profile} does not fit state {q!r} (actions {expected})")


def ext(model: RcgsModel, q: str, partial: Profile) -> list[Profile]:
    """Complete profiles at ``q`` extending ``partial``.

    Each extension is ``partial`` plus a vote of the remaining agents, so the
    result is in bijection with the opponents' profiles.
    """
    model.state_index(q)
    _check_shape(model, q, partial)
    remaining = []
    for vote, pop in zip(partial, model.populations(q)):
        left = pop - sum(vote)
        if left < 0 or min(vote, default=0) < 0:
            raise InvalidArgument(f"vote {vote} exceeds the role population {pop} at {q!r}")
        remaining.append(left)
    rest = _product_profiles(remaining, model.action_counts[q])
    return [
        tuple(tuple(x + y for x, y in zip(v, w)) for v, w in zip(partial, g))
        for g in rest
    ]


def is_complete(model: RcgsModel, q: str, profile: Profile) -> bool:
    if _shape(profile) != tuple(model.action_counts[q]):
        return False
    return all(
        min(v, default=0) >= 0 and sum(v) == pop
        for v, pop in zip(profile, model.populations(q))
    )


def _first_match(rules: Sequence[Rule], profile: Profile) -> str:
    for rule in rules:
        if rule.guard.holds(profile):
            return rule.target
    raise InvalidArgument("no rule matched; the state lacks a default rule")


def apply_transition(model: RcgsModel, q: str, profile: Profile) -> str:
    """delta(q, F) for a complete profile ``F``."""
    model.state_index(q)
    if not is_complete(model, q, profile):
        raise InvalidArgument(f"{profile} is not a complete profile at {q!r}")
    return _first_match(model.transitions[q], profile)


def transition_targets(model: RcgsModel, q: str) -> tuple[int, ...]:
    """State indices ``delta(q, F)`` for ``F`` in :func:`complete_profiles` order."""
    key = ("targets", q)
    cached = model._cache.get(key)
    if cached is None:
        rules = model.transitions[q]
        cached = tuple(
            model.state_index(_first_match(rules, f)) for f in complete_profiles(model, q)
        )
        model._cache[key] = cached
    return cached


def succ(model: RcgsModel, q: str, partial: Profile) -> frozenset:
    """States reachable in one step when some agents commit to ``partial``."""
    rules = model.transitions[q]
    return frozenset(_first_match(rules, f) for f in ext(model, q, partial))


def force(model: RcgsModel, q: str, coalition: Iterable[int]) -> frozenset:
    """The successor sets ``coalition`` can enforce at ``q``, as a set of frozensets."""
    return frozenset(succ(model, q, f) for f in coalition_profiles(model, q, coalition))


def validate(model: RcgsModel) -> list[str]:
    """Describe every broken invariant; an empty list means the model is well formed."""
    problems = []
    n, k = model.agent_count, model.role_count
    if n < 1:
        problems.append(f"agent count {n} must be positive")
    if k < 1:
        problems.append(f"role count {k} must be positive")
    if not model.states:
        problems.append("no states declared")
    if len(set(model.states)) != len(model.states):
        problems.append("duplicate state names")
    for s in model.states:
        if not s:
            problems.append("empty state name")
    known = set(model.states)
    if model.initial not in known:
        problems.append(f"initial state {model.initial!r} is not declared")
    props = set(model.props)
    for q in model.states:
        extra = set(model.labeling.get(q, ())) - props
        if extra:
            problems.append(f"state {q}: labels {sorted(extra)} not in the proposition set")
        roles = model.assignment.get(q)
        if roles is None:
            problems.append(f"state {q}: no role assignment")
        elif len(roles) != n:
            problems.append(f"state {q}: assignment covers {len(roles)} of {n} agents")
        elif any(not 1 <= r <= k for r in roles):
            problems.append(f"state {q}: assignment uses a role outside 1..{k}")
        counts = model.action_counts.get(q)
        if counts is None or len(counts) != k:
            problems.append(f"state {q}: action counts must list {k} roles")
            counts = None
        elif any(c < 1 for c in counts):
            problems.append(f"state {q}: every role needs at least one action")
            counts = None
        rules = model.transitions.get(q, ())
        if not rules or not rules[-1].guard.is_default:
            problems.append(f"state {q}: missing default rule in last position")
        for i, rule in enumerate(rules):
            if rule.guard.is_default and i != len(rules) - 1:
                problems.append(f"state {q}: rule {i + 1} is a default before the last rule")
            if rule.target not in known:
                problems.append(f"state {q}: rule {i + 1} targets unknown state {rule.target!r}")
            for atom in rule.guard.atoms:
                if atom.op not in COMPARATORS:
                    problems.append(f"state {q}: rule {i + 1} has unknown comparator {atom.op!r}")
                if not 1 <= atom.role <= k:
                    problems.append(f"state {q}: rule {i + 1} ({atom}) names role {atom.role} outside 1..{k}")
                elif counts is not None and not 1 <= atom.action <= counts[atom.role - 1]:
                    problems.append(
                        f"state {q}: rule {i + 1} ({atom}) names action {atom.action} "
                        f"but role {atom.role} has {counts[atom.role - 1]}"
                    )
                if atom.bound < 0:
                    problems.append(f"state {q}: rule {i + 1} ({atom}) has a negative bound")
    return problems


def make_model(
    agent_count: int,
    role_count: int,
    states: Sequence[str],
    initial: str,
    props: Iterable[str],
    labeling: Mapping[str, Iterable[str]],
    assignment: Mapping[str, Sequence[int]],
    action_counts: Mapping[str, Sequence[int]],
    transitions: Mapping[str, Sequence[Rule]],
) -> RcgsModel:
    """Build a model from loose containers, normalising to immutable ones."""
    states = tuple(states)
    return RcgsModel(
        agent_count=agent_count,
        role_count=role_count,
        states=states,
        initial=initial,
        props=tuple(props),
        labeling={q: frozenset(labeling.get(q, ())) for q in states},
        assignment={q: tuple(v) for q, v in assignment.items()},
        action_counts={q: tuple(v) for q, v in action_counts.items()},
        transitions={q: tuple(v) for q, v in transitions.items()},
    )
