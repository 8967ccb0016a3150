"""Classical concurrent game structures and the role-forgetting translation.

``translate`` turns an RCGS into a CGS in which every agent picks an action
individually; the CGS transition counts the votes of each role and defers to
the RCGS rules.  ``cgs_mcheck`` is a separate labelling checker that ranges
over individual action tuples.  It shares no enforce code with
:mod:`rcgs.checker` so the two can be compared as independent routes.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from rcgs.checker import DEFAULT_LIMIT, CheckStats, RcgsStrategy, iter_strategies
from rcgs.errors import InvalidArgument, ResourceLimit, ValidationError
from rcgs.formula import (
    And,
    Atom,
    CoalitionFinally,
    CoalitionGlobally,
    CoalitionNext,
    CoalitionUntil,
    FalseConst,
    Formula,
    Implies,
    Not,
    Or,
    TrueConst,
    walk,
)
from rcgs.model import Profile, RcgsModel, apply_transition, check_coalition, coalition_profiles, force

ActionTuple = tuple[int, ...]


@dataclass(frozen=True)
class CgsModel:
    """A CGS ``<Agents, Q, Pi, pi, d, delta'>``.

    ``moves[q][i]`` is ``d_a(q)`` for agent ``a = i + 1``; ``transition`` maps
    a state and a full action tuple (1-based actions) to the next state.
    """

    agent_count: int
    states: tuple[str, ...]
    initial: str
    props: tuple[str, ...]
    labeling: Mapping[str, frozenset]
    moves: Mapping[str, tuple[int, ...]]
    transition: Callable[[str, ActionTuple], str] = field(compare=False)
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def agents(self) -> frozenset:
        return frozenset(range(1, self.agent_count + 1))

    def delta(self, q: str, alpha: ActionTuple) -> str:
        key = (q, alpha)
        out = self._memo.get(key)
        if out is None:
            out = self._memo[key] = self.transition(q, alpha)
        return out

    def tuple_count(self, q: str, coalition: Iterable[int] | None = None) -> int:
        pool = self.agents if coalition is None else coalition
        return math.prod(self.moves[q][a - 1] for a in pool)

    def action_tuples(self, q: str) -> Iterator[ActionTuple]:
        return itertools.product(*(range(1, d + 1) for d in self.moves[q]))


def map_action_tuple(model: RcgsModel, q: str, coalition: Iterable[int], t: ActionTuple) -> Profile:
    """Count, per role, how many coalition members chose each action.

    ``t`` lists one action per member of ``coalition`` in increasing agent order.
    """
    members = sorted(check_coalition(model, coalition))
    if len(t) != len(members):
        raise InvalidArgument(f"action tuple {t} does not match coalition {members}")
    counts = [[0] * a for a in model.action_counts[q]]
    for agent, action in zip(members, t):
        row = counts[model.role_of(q, agent) - 1]
        if not 1 <= action <= len(row):
            raise InvalidArgument(f"agent {agent} has no action {action} at {q!r}")
        row[action - 1] += 1
    return tuple(tuple(v) for v in counts)


def translate(model: RcgsModel) -> CgsModel:
    """Forget roles: each agent gets its role's actions, transitions go through vote counts."""
    everyone = tuple(range(1, model.agent_count + 1))
    moves = {
        q: tuple(model.action_counts[q][r - 1] for r in model.assignment[q]) for q in model.states
    }

    def transition(q: str, alpha: ActionTuple) -> str:
        return apply_transition(model, q, map_action_tuple(model, q, everyone, alpha))

    return CgsModel(
        agent_count=model.agent_count,
        states=model.states,
        initial=model.initial,
        props=model.props,
        labeling=dict(model.labeling),
        moves=moves,
        transition=transition,
    )


@dataclass(frozen=True)
class CgsStrategy:
    """Positional strategy: per state, one action per coalition member (increasing agent order)."""

    coalition: frozenset
    choice: tuple[tuple[str, ActionTuple], ...]


def map_strategy(model: RcgsModel, strategy: CgsStrategy) -> RcgsStrategy:
    return RcgsStrategy(
        strategy.coalition,
        tuple((q, map_action_tuple(model, q, strategy.coalition, t)) for q, t in strategy.choice),
    )


def _coalition_tuples(moves: tuple[int, ...], members) -> list[ActionTuple]:
    return list(itertools.product(*(range(1, moves[a - 1] + 1) for a in members)))


def iter_cgs_strategies(m: CgsModel, coalition: Iterable[int]) -> Iterator[CgsStrategy]:
    coalition = frozenset(coalition)
    members = sorted(coalition)
    per_state = [_coalition_tuples(m.moves[q], members) for q in m.states]
    for combo in itertools.product(*per_state):
        yield CgsStrategy(coalition, tuple(zip(m.states, combo)))


def cgs_strategy_count(m: CgsModel, coalition: Iterable[int]) -> int:
    return math.prod(m.tuple_count(q, coalition) for q in m.states)


def check_lemma1(model: RcgsModel, coalition: Iterable[int], *, limit: int = DEFAULT_LIMIT) -> bool:
    """The vote-counting map hits every RCGS strategy of ``coalition``.

    When the CGS strategy space fits under ``limit`` every strategy is mapped;
    otherwise the check runs state by state, which is equivalent because
    positional strategies are products of per-state choices.
    """
    coalition = check_coalition(model, coalition)
    m = translate(model)
    if cgs_strategy_count(m, coalition) <= limit:
        image = {map_strategy(model, s) for s in iter_cgs_strategies(m, coalition)}
        return image == set(iter_strategies(model, coalition))
    members = sorted(coalition)
    for q in model.states:
        image = {map_action_tuple(model, q, coalition, t)
                 for t in _coalition_tuples(m.moves[q], members)}
        if image != set(coalition_profiles(model, q, coalition)):
            return False
    return True


class _Split:
    """Interleaves a coalition's actions with the opponents' into full tuples."""

    def __init__(self, m: CgsModel, q: str, coalition: frozenset):
        self.n = m.agent_count
        self.mine = sorted(coalition)
        self.theirs = sorted(m.agents - coalition)
        self.mine_choices = _coalition_tuples(m.moves[q], self.mine)
        self.their_choices = _coalition_tuples(m.moves[q], self.theirs)

    def join(self, mine: ActionTuple, theirs: ActionTuple) -> ActionTuple:
        alpha = [0] * self.n
        for a, x in zip(self.mine, mine):
            alpha[a - 1] = x
        for a, x in zip(self.theirs, theirs):
            alpha[a - 1] = x
        return tuple(alpha)


def _check_tuple_bound(m: CgsModel, q: str, limit: int) -> None:
    count = m.tuple_count(q)
    if count > limit:
        raise ResourceLimit(f"state {q} has {count} action tuples, limit {limit}", count, limit)


def cgs_force(m: CgsModel, q: str, coalition: Iterable[int], *, limit: int = DEFAULT_LIMIT) -> frozenset:
    """Successor sets the coalition can enforce at ``q``, by action-tuple enumeration."""
    _check_tuple_bound(m, q, limit)
    split = _Split(m, q, frozenset(coalition))
    return frozenset(
        frozenset(m.delta(q, split.join(mine, theirs)) for theirs in split.their_choices)
        for mine in split.mine_choices
    )


def check_lemma2(model: RcgsModel, coalition: Iterable[int], q: str, *, limit: int = DEFAULT_LIMIT) -> bool:
    """force(S, A, q) equals force(f(S), A, q)."""
    coalition = check_coalition(model, coalition)
    return force(model, q, coalition) == cgs_force(translate(model), q, coalition, limit=limit)


def cgs_enforce(
    m: CgsModel,
    coalition: Iterable[int],
    q: str,
    target: Iterable[str],
    *,
    short_circuit: bool = True,
    limit: int = DEFAULT_LIMIT,
) -> tuple[bool, int]:
    """Enforce over action tuples: ``(found, tuples_inspected)``."""
    _check_tuple_bound(m, q, limit)
    target = frozenset(target)
    split = _Split(m, q, frozenset(coalition))
    inspected = 0
    found = False
    for mine in split.mine_choices:
        ok = True
        for theirs in split.their_choices:
            inspected += 1
            if m.delta(q, split.join(mine, theirs)) not in target:
                ok = False
                if short_circuit:
                    break
        if ok:
            found = True
            if short_circuit:
                break
    return found, inspected


def cgs_mcheck(
    m: CgsModel,
    phi: Formula,
    *,
    short_circuit: bool = True,
    limit: int = DEFAULT_LIMIT,
) -> tuple[frozenset, CheckStats]:
    """States of the CGS satisfying ``phi``, with inspection counters."""
    for node in walk(phi):
        if isinstance(node, Atom) and node.name not in m.props:
            raise ValidationError(f"unknown proposition {node.name!r}")
        if any(not 1 <= a <= m.agent_count for a in getattr(node, "coalition", ())):
            raise ValidationError(f"coalition {sorted(node.coalition)} outside 1..{m.agent_count}")
    for q in m.states:
        _check_tuple_bound(m, q, limit)
    stats = CheckStats()
    everything = frozenset(m.states)

    def pre(coalition, target):
        out = set()
        for q in m.states:
            found, inspected = cgs_enforce(m, coalition, q, target,
                                           short_circuit=short_circuit, limit=limit)
            stats.transitions_inspected += inspected
            if found:
                out.add(q)
        return frozenset(out)

    def until(coalition, hold, goal):
        z = goal
        while True:
            stats.fixpoint_iterations += 1
            nxt = goal | (hold & pre(coalition, z))
            if nxt == z:
                return z
            z = nxt

    memo = {}

    def label(phi):
        if phi not in memo:
            memo[phi] = _label(phi)
        return memo[phi]

    def _label(phi):
        if isinstance(phi, Atom):
            return frozenset(q for q in m.states if phi.name in m.labeling[q])
        if isinstance(phi, TrueConst):
            return everything
        if isinstance(phi, FalseConst):
            return frozenset()
        if isinstance(phi, Not):
            return everything - label(phi.arg)
        if isinstance(phi, And):
            return label(phi.left) & label(phi.right)
        if isinstance(phi, Or):
            return label(phi.left) | label(phi.right)
        if isinstance(phi, Implies):
            return (everything - label(phi.left)) | label(phi.right)
        if isinstance(phi, CoalitionNext):
            return pre(phi.coalition, label(phi.arg))
        if isinstance(phi, CoalitionGlobally):
            safe = label(phi.arg)
            z = safe
            while True:
                stats.fixpoint_iterations += 1
                nxt = safe & pre(phi.coalition, z)
                if nxt == z:
                    return z
                z = nxt
        if isinstance(phi, CoalitionUntil):
            return until(phi.coalition, label(phi.left), label(phi.right))
        if isinstance(phi, CoalitionFinally):
            return until(phi.coalition, everything, label(phi.arg))
        raise TypeError(f"not a formula: {phi!r}")

    return label(phi), stats
