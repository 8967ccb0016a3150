"""ATL model checking over RCGS.

``mcheck`` is the standard labelling algorithm: booleans pointwise, next via
the controllable predecessor ``pre``, ``G`` and ``U`` as greatest and least
fixed points over ``pre``.  The only role-specific piece is ``enforce``: a
coalition profile wins if every opponent completion lands in the target set.

``check_by_strategy_enumeration`` decides the same modalities by brute
force over positional strategies and serves as an independent oracle.
"""
from __future__ import annotations

import itertools
import math
from array import array
from dataclasses import dataclass
from typing import Iterable, Iterator

from rcgs import kernels
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
from rcgs.model import (
    Profile,
    RcgsModel,
    check_coalition,
    coalition_profiles,
    enumerate_votes,
    succ,
    transition_targets,
)
from rcgs.sizing import coalition_profile_count, multichoose, profile_count

DEFAULT_LIMIT = 10**6
# profiles per state kept in a delta table
TABLE_LIMIT = 10**7


@dataclass
class CheckStats:
    transitions_inspected: int = 0
    fixpoint_iterations: int = 0

    def add(self, other: "CheckStats") -> None:
        self.transitions_inspected += other.transitions_inspected
        self.fixpoint_iterations += other.fixpoint_iterations


# -- enforce ----------------------------------------------------------------

def _flat(profiles: Iterable[Profile]) -> array:
    return array("q", (x for f in profiles for v in f for x in v))


def _state_tables(model: RcgsModel, q: str):
    key = ("kernel", q)
    tables = model._cache.get(key)
    if tables is not None:
        return tables
    count = profile_count(model, q)
    if count > TABLE_LIMIT:
        raise ResourceLimit(f"state {q} has {count} complete profiles", count, TABLE_LIMIT)
    pops = model.populations(q)
    acts = model.action_counts[q]
    starts = [0]
    for a in acts:
        starts.append(starts[-1] + a)
    stride = max(acts) + 1
    top = max(pops)
    mc = array("q", [0] * ((top + 1) * stride))
    for m in range(top + 1):
        mc[m * stride] = 1 if m == 0 else 0
        for p in range(1, stride):
            mc[m * stride + p] = multichoose(m, p)
    tables = (
        array("q", starts),
        array("q", pops),
        array("q", (multichoose(p, a) for p, a in zip(pops, acts))),
        mc,
        stride,
        array("q", transition_targets(model, q)),
    )
    model._cache[key] = tables
    return tables


def _profile_block(model: RcgsModel, q: str, pops: tuple[int, ...]):
    key = ("block", q, pops)
    block = model._cache.get(key)
    if block is None:
        votes = [enumerate_votes(p, a) for p, a in zip(pops, model.action_counts[q])]
        profiles = list(itertools.product(*votes))
        block = (_flat(profiles), len(profiles))
        model._cache[key] = block
    return block


def _allowed(model: RcgsModel, target: Iterable[str]) -> array:
    mask = array("B", [0] * len(model.states))
    for s in target:
        mask[model.state_index(s)] = 1
    return mask


def _enforce(model, coalition, q, mask, short_circuit, kernel):
    pops = model.populations(q)
    mine = model.populations(q, coalition)
    rest = tuple(p - m for p, m in zip(pops, mine))
    starts, role_pop, radix, mc, stride, targets = _state_tables(model, q)
    coal, n_coal = _profile_block(model, q, mine)
    comp, n_comp = _profile_block(model, q, rest)
    return kernel(coal, n_coal, comp, n_comp, starts, role_pop, radix, mc, stride,
                  targets, mask, short_circuit)


def enforce(
    model: RcgsModel,
    coalition: Iterable[int],
    q: str,
    target: Iterable[str],
    *,
    short_circuit: bool = True,
    backend: str | None = None,
) -> tuple[bool, CheckStats]:
    """Can ``coalition`` force the next state into ``target`` from ``q``?

    Loops over coalition profiles ``F`` and their extensions ``F'``.  With
    ``short_circuit`` the inner loop stops at the first escaping ``F'`` and
    the outer loop at the first winning ``F``; without it every pair is
    visited, so the count is exactly ``|P(q,A)| * |P(q, Agents - A)|``.
    """
    coalition = check_coalition(model, coalition)
    model.state_index(q)
    found, inspected = _enforce(model, coalition, q, _allowed(model, target), short_circuit,
                                kernels.get_kernel(backend))
    return found, CheckStats(transitions_inspected=inspected)


def _pre(model, coalition, target, short_circuit, kernel, stats) -> frozenset:
    mask = _allowed(model, target)
    out = []
    for q in model.states:
        found, inspected = _enforce(model, coalition, q, mask, short_circuit, kernel)
        stats.transitions_inspected += inspected
        if found:
            out.append(q)
    return frozenset(out)


def pre(
    model: RcgsModel,
    coalition: Iterable[int],
    target: Iterable[str],
    *,
    short_circuit: bool = True,
    backend: str | None = None,
    stats: CheckStats | None = None,
) -> frozenset:
    """States from which ``coalition`` can enforce ``target`` in one step."""
    coalition = check_coalition(model, coalition)
    return _pre(model, coalition, target, short_circuit, kernels.get_kernel(backend),
                CheckStats() if stats is None else stats)


# -- labelling ----------------------------------------------------------------

def check_formula_against(model: RcgsModel, phi: Formula) -> None:
    """Raise :class:`ValidationError` if ``phi`` names unknown agents or atoms."""
    props = set(model.props)
    for node in walk(phi):
        if isinstance(node, Atom) and node.name not in props:
            raise ValidationError(f"unknown proposition {node.name!r}")
        coalition = getattr(node, "coalition", None)
        if coalition is not None:
            bad = sorted(a for a in coalition if not 1 <= a <= model.agent_count)
            if bad:
                raise ValidationError(
                    f"agent {bad[0]} in <<{','.join(map(str, sorted(coalition)))}>> "
                    f"outside 1..{model.agent_count}"
                )


class _Labeller:
    def __init__(self, model, short_circuit, backend):
        self.model = model
        self.short_circuit = short_circuit
        self.kernel = kernels.get_kernel(backend)
        self.stats = CheckStats()
        self.everything = frozenset(model.states)
        self.memo: dict[Formula, frozenset] = {}

    def pre(self, coalition, target) -> frozenset:
        return _pre(self.model, coalition, target, self.short_circuit, self.kernel, self.stats)

    def greatest(self, coalition, safe: frozenset) -> frozenset:
        z = safe
        while True:
            self.stats.fixpoint_iterations += 1
            nxt = safe & self.pre(coalition, z)
            if nxt == z:
                return z
            z = nxt

    def least(self, coalition, hold: frozenset, goal: frozenset) -> frozenset:
        z = goal
        while True:
            self.stats.fixpoint_iterations += 1
            nxt = goal | (hold & self.pre(coalition, z))
            if nxt == z:
                return z
            z = nxt

    def sat(self, phi: Formula) -> frozenset:
        cached = self.memo.get(phi)
        if cached is None:
            cached = self.memo[phi] = self._sat(phi)
        return cached

    def _sat(self, phi: Formula) -> frozenset:
        model = self.model
        if isinstance(phi, Atom):
            return frozenset(q for q in model.states if phi.name in model.labeling[q])
        if isinstance(phi, TrueConst):
            return self.everything
        if isinstance(phi, FalseConst):
            return frozenset()
        if isinstance(phi, Not):
            return self.everything - self.sat(phi.arg)
        if isinstance(phi, And):
            return self.sat(phi.left) & self.sat(phi.right)
        if isinstance(phi, Or):
            return self.sat(phi.left) | self.sat(phi.right)
        if isinstance(phi, Implies):
            return (self.everything - self.sat(phi.left)) | self.sat(phi.right)
        if isinstance(phi, CoalitionNext):
            return self.pre(phi.coalition, self.sat(phi.arg))
        if isinstance(phi, CoalitionGlobally):
            return self.greatest(phi.coalition, self.sat(phi.arg))
        if isinstance(phi, CoalitionUntil):
            return self.least(phi.coalition, self.sat(phi.left), self.sat(phi.right))
        if isinstance(phi, CoalitionFinally):
            return self.least(phi.coalition, self.everything, self.sat(phi.arg))
        raise TypeError(f"not a formula: {phi!r}")


def mcheck(
    model: RcgsModel,
    phi: Formula,
    *,
    short_circuit: bool = True,
    backend: str | None = None,
) -> tuple[frozenset, CheckStats]:
    """States of ``model`` satisfying ``phi``, with inspection counters."""
    check_formula_against(model, phi)
    labeller = _Labeller(model, short_circuit, backend)
    return labeller.sat(phi), labeller.stats


# -- strategy enumeration oracle -------------------------------------------------

@dataclass(frozen=True)
class RcgsStrategy:
    """Positional strategy: one coalition profile per state."""

    coalition: frozenset
    choice: tuple[tuple[str, Profile], ...]

    def __getitem__(self, q: str) -> Profile:
        for state, profile in self.choice:
            if state == q:
                return profile
        raise KeyError(q)

    def as_dict(self) -> dict[str, Profile]:
        return dict(self.choice)


def strategy_count(model: RcgsModel, coalition: Iterable[int]) -> int:
    coalition = check_coalition(model, coalition)
    return math.prod(coalition_profile_count(model, q, coalition) for q in model.states)


def iter_strategies(model: RcgsModel, coalition: Iterable[int]) -> Iterator[RcgsStrategy]:
    """Every positional strategy of ``coalition``, in product order over states."""
    coalition = check_coalition(model, coalition)
    per_state = [coalition_profiles(model, q, coalition) for q in model.states]
    for combo in itertools.product(*per_state):
        yield RcgsStrategy(coalition, tuple(zip(model.states, combo)))


def outcome_graph(model: RcgsModel, strategy: RcgsStrategy) -> dict[str, frozenset]:
    """Edges ``q -> succ(q, s(q))``; its paths from ``q`` are ``out(s, q)``."""
    return {q: succ(model, q, strategy[q]) for q in model.states}


def _bits(model: RcgsModel, states: Iterable[str]) -> int:
    mask = 0
    for s in states:
        mask |= 1 << model.state_index(s)
    return mask


def _winning_bits(op: str, edges: tuple[int, ...], phi: int, psi: int) -> int:
    """States all of whose outcome paths satisfy the path property."""
    n = len(edges)
    if op == "X":
        return sum(1 << i for i in range(n) if edges[i] & ~phi == 0)
    if op == "G":
        w = phi
        while True:
            nxt = sum(1 << i for i in range(n) if w >> i & 1 and edges[i] & ~w == 0)
            if nxt == w:
                return w
            w = nxt
    if op == "U":
        w = psi
        while True:
            nxt = w | sum(1 << i for i in range(n) if phi >> i & 1 and edges[i] & ~w == 0)
            if nxt == w:
                return w
            w = nxt
    raise InvalidArgument(f"unknown temporal operator {op!r}")


def strategy_winning_states(
    model: RcgsModel,
    coalition: Iterable[int],
    op: str,
    phi: Iterable[str],
    psi: Iterable[str] = (),
    *,
    limit: int = DEFAULT_LIMIT,
    goal: str | None = None,
) -> frozenset:
    """States where some positional strategy makes every outcome satisfy the property.

    ``op`` is ``"X"`` (next in ``phi``), ``"G"`` (always ``phi``) or ``"U"``
    (``phi`` until ``psi``).  Enumeration stops once ``goal`` (or, without a
    goal, every state) is known to be won.
    """
    coalition = check_coalition(model, coalition)
    if op not in ("X", "G", "U"):
        raise InvalidArgument(f"unknown temporal operator {op!r}")
    count = strategy_count(model, coalition)
    if count > limit:
        raise ResourceLimit(
            f"{count} strategies for coalition {sorted(coalition)} exceed limit {limit}",
            count, limit,
        )
    phi_bits = _bits(model, phi)
    psi_bits = _bits(model, psi)
    want = (1 << len(model.states)) - 1 if goal is None else 1 << model.state_index(goal)
    # succ sets per coalition profile, in coalition_profiles order; one entry per
    # profile, so the product below visits every strategy exactly once
    choices = [
        [_bits(model, succ(model, q, f)) for f in coalition_profiles(model, q, coalition)]
        for q in model.states
    ]
    won = 0
    for edges in itertools.product(*choices):
        won |= _winning_bits(op, edges, phi_bits, psi_bits)
        if won & want == want:
            break
    return frozenset(q for i, q in enumerate(model.states) if won >> i & 1)


def check_by_strategy_enumeration(
    model: RcgsModel,
    coalition: Iterable[int],
    op: str,
    phi: Iterable[str],
    q: str,
    psi: Iterable[str] = (),
    *,
    limit: int = DEFAULT_LIMIT,
) -> bool:
    """Decide ``<<A>>X phi``, ``<<A>>G phi`` or ``<<A>> phi U psi`` at ``q`` by brute force."""
    model.state_index(q)
    return q in strategy_winning_states(model, coalition, op, phi, psi, limit=limit, goal=q)

