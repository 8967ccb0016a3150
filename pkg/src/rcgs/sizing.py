"""Size accounting for RCGS models and their CGS translations.

Counts are exact Python integers, so a 1000-agent model reports its CGS
tuple count ``2**1000`` without overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from rcgs.errors import InvalidArgument
from rcgs.model import RcgsModel


def multichoose(pop: int, a: int) -> int:
    """Number of ways to pick ``pop`` items from ``a`` kinds with repetition."""
    if a < 1:
        raise InvalidArgument("multichoose needs at least one kind")
    if pop < 0:
        raise InvalidArgument("population must be non-negative")
    return math.comb(pop + a - 1, a - 1)


def profile_count(model: RcgsModel, q: str) -> int:
    """|P(q)| computed arithmetically."""
    pops = model.populations(q)
    return math.prod(multichoose(p, a) for p, a in zip(pops, model.action_counts[q]))


def coalition_profile_count(model: RcgsModel, q: str, coalition) -> int:
    pops = model.populations(q, coalition)
    return math.prod(multichoose(p, a) for p, a in zip(pops, model.action_counts[q]))


def tuple_count(model: RcgsModel, q: str, coalition=None) -> int:
    """Number of action tuples for ``coalition`` (default all agents) in the translation."""
    pops = model.populations(q, coalition)
    return math.prod(a ** p for p, a in zip(pops, model.action_counts[q]))


@dataclass
class SizeReport:
    agents: int
    roles: int
    a_max: int
    p_max: int
    rcgs_counts: dict[str, int] = field(default_factory=dict)
    cgs_counts: dict[str, int] = field(default_factory=dict)
    # whole-model bounds: sum_q prod_r pop**a and sum_q prod_r a**pop
    bound_pop_pow_actions: int = 0
    bound_actions_pow_pop: int = 0

    @property
    def rcgs_total(self) -> int:
        return sum(self.rcgs_counts.values())

    @property
    def cgs_total(self) -> int:
        return sum(self.cgs_counts.values())

    def to_text(self) -> str:
        lines = [
            f"agents={self.agents}",
            f"roles={self.roles}",
            f"states={len(self.rcgs_counts)}",
            f"a_max={self.a_max}",
            f"p_max={self.p_max}",
            f"rcgs_total={self.rcgs_total}",
            f"cgs_total={self.cgs_total}",
            f"bound_pop_pow_actions={self.bound_pop_pow_actions}",
            f"bound_actions_pow_pop={self.bound_actions_pow_pop}",
        ]
        for q, count in self.rcgs_counts.items():
            lines.append(f"rcgs_count[{q}]={count}")
        for q, count in self.cgs_counts.items():
            lines.append(f"cgs_count[{q}]={count}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        rows = ["state,rcgs_count,cgs_count"]
        rows += [f"{q},{self.rcgs_counts[q]},{self.cgs_counts[q]}" for q in self.rcgs_counts]
        return "\n".join(rows) + "\n"


def model_size(model: RcgsModel) -> SizeReport:
    a_max = max(max(model.action_counts[q]) for q in model.states)
    p_max = max(max(model.populations(q)) for q in model.states)
    report = SizeReport(model.agent_count, model.role_count, a_max, p_max)
    for q in model.states:
        pops = model.populations(q)
        acts = model.action_counts[q]
        report.rcgs_counts[q] = profile_count(model, q)
        report.cgs_counts[q] = tuple_count(model, q)
        report.bound_pop_pow_actions += math.prod(p ** a for p, a in zip(pops, acts))
        report.bound_actions_pow_pop += math.prod(a ** p for p, a in zip(pops, acts))
    return report


def vote_bounds_hold(pop: int, a: int) -> bool:
    """multichoose(pop, a) <= a**pop, and <= pop**a when pop >= 2.

    The second bound fails for degenerate populations (pop = 1, a = 2 gives
    2 > 1), so it is only asserted from pop = 2 on.
    """
    m = multichoose(pop, a)
    if pop >= 1 and m > a ** pop:
        return False
    if pop >= 2 and m > pop ** a:
        return False
    return True


def check_bounds(model: RcgsModel) -> bool:
    """All per-vote and whole-model size bounds hold.

    The ``pop ** a`` model bound is compared state by state over states whose
    roles all have at least two agents, for the reason given in
    :func:`vote_bounds_hold`.
    """
    total = 0
    bound_actions_pow_pop = 0
    for q in model.states:
        pops = model.populations(q)
        acts = model.action_counts[q]
        if not all(vote_bounds_hold(p, a) for p, a in zip(pops, acts)):
            return False
        count = profile_count(model, q)
        total += count
        bound_actions_pow_pop += math.prod(a ** p for p, a in zip(pops, acts))
        if all(p >= 2 for p in pops) and count > math.prod(p ** a for p, a in zip(pops, acts)):
            return False
    return total <= bound_actions_pow_pop
