"""Line-oriented text formats for RCGS models and exported CGS models.

RCGS::

    rcgs
    agents 5
    roles 1
    states q0 q1
    init q0
    props p
    label q1 : p
    assign q0 : 1 1 1 1 1        # role of each agent
    actions q0 : 2               # actions per role
    trans q0 : r1.a1 >= 3 -> q1  # first matching rule wins
    trans q0 : default -> q0

CGS export replaces ``roles``/``assign``/``actions`` with ``moves STATE :
d_1 ... d_n`` and lists every transition as ``trans STATE : (a1,...,an) ->
STATE``.  ``#`` starts a comment anywhere on a line.
"""
from __future__ import annotations

import itertools
import re

from rcgs.cgs import CgsModel
from rcgs.errors import ModelSyntaxError, ResourceLimit
from rcgs.model import DEFAULT, Guard, GuardAtom, RcgsModel, Rule, make_model, validate

_ATOM = re.compile(r"^r(\d+)\.a(\d+)\s*(>=|<=|==|!=|>|<)\s*(\d+)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _split_state(rest: str, number: int) -> tuple[str, str]:
    if ":" not in rest:
        raise ModelSyntaxError("expected 'STATE : ...'", number)
    state, body = rest.split(":", 1)
    state = state.strip()
    if not state:
        raise ModelSyntaxError("missing state name", number)
    return state, body.strip()


def _ints(body: str, number: int) -> list[int]:
    try:
        return [int(x) for x in body.split()]
    except ValueError:
        raise ModelSyntaxError(f"expected integers, got {body!r}", number) from None


def _parse_guard(text: str, number: int) -> Guard:
    text = text.strip()
    if text == "default":
        return DEFAULT
    atoms = []
    for part in text.split("&"):
        m = _ATOM.match(part.strip())
        if m is None:
            raise ModelSyntaxError(f"bad guard atom {part.strip()!r}", number)
        role, action, op, bound = m.groups()
        atoms.append(GuardAtom(int(role), int(action), op, int(bound)))
    return Guard(tuple(atoms))


class _Header:
    """Shared handling of the directives both formats have in common."""

    def __init__(self, kind: str):
        self.kind = kind
        self.scalars: dict[str, tuple[int, str]] = {}
        self.per_state: dict[str, dict[str, tuple[int, str]]] = {}
        self.rules: dict[str, list[tuple[int, str]]] = {}
        self.states_line = 0

    def feed(self, text: str, scalar_keys, state_keys):
        seen_header = False
        for number, line in _lines(text):
            word, *tail = line.split(None, 1)
            rest = tail[0].strip() if tail else ""
            if not seen_header:
                if line != self.kind:
                    raise ModelSyntaxError(f"expected header {self.kind!r}", number)
                seen_header = True
                continue
            if word in scalar_keys:
                if word in self.scalars:
                    raise ModelSyntaxError(f"duplicate {word!r} directive", number)
                self.scalars[word] = (number, rest)
            elif word in state_keys:
                state, body = _split_state(rest, number)
                slot = self.per_state.setdefault(word, {})
                if state in slot:
                    raise ModelSyntaxError(f"duplicate {word!r} for state {state}", number)
                slot[state] = (number, body)
            elif word == "trans":
                state, body = _split_state(rest, number)
                self.rules.setdefault(state, []).append((number, body))
            else:
                raise ModelSyntaxError(f"unknown directive {word!r}", number)
        if not seen_header:
            raise ModelSyntaxError(f"empty file, expected header {self.kind!r}", 1)

    def scalar(self, key: str, last_line: int) -> tuple[int, str]:
        if key not in self.scalars:
            raise ModelSyntaxError(f"missing {key!r} directive", last_line)
        return self.scalars[key]

    def positive(self, key: str, last_line: int) -> int:
        number, body = self.scalar(key, last_line)
        values = _ints(body, number)
        if len(values) != 1 or values[0] < 1:
            raise ModelSyntaxError(f"{key} expects one positive integer", number)
        return values[0]

    def common(self, text: str):
        last = max((n for n, _ in _lines(text)), default=1)
        number, body = self.scalar("states", last)
        states = body.split()
        if not states:
            raise ModelSyntaxError("no states declared", number)
        if len(set(states)) != len(states):
            raise ModelSyntaxError("duplicate state names", number)
        for s in states:
            if not _NAME.match(s):
                raise ModelSyntaxError(f"bad state name {s!r}", number)
        self.states_line = number
        number, body = self.scalar("init", last)
        initial = body.strip()
        if initial not in states:
            raise ModelSyntaxError(f"undeclared initial state {initial!r}", number)
        number, body = self.scalar("props", last)
        props = body.split()
        for p in props:
            if not _NAME.match(p):
                raise ModelSyntaxError(f"bad proposition name {p!r}", number)
        known = set(states)
        for slot in self.per_state.values():
            for state, (number, _) in slot.items():
                if state not in known:
                    raise ModelSyntaxError(f"undeclared state {state!r}", number)
        for state, entries in self.rules.items():
            if state not in known:
                raise ModelSyntaxError(f"undeclared state {state!r}", entries[0][0])
        labeling = {}
        for state, (number, body) in self.per_state.get("label", {}).items():
            names = body.split()
            for p in names:
                if p not in props:
                    raise ModelSyntaxError(f"undeclared proposition {p!r}", number)
            labeling[state] = set(names)
        return states, initial, props, labeling

    def required(self, key: str, state: str) -> tuple[int, str]:
        try:
            return self.per_state[key][state]
        except KeyError:
            raise ModelSyntaxError(f"state {state} has no {key!r} line", self.states_line) from None

    def targets(self, state: str, known) -> list[tuple[int, str, str]]:
        out = []
        for number, body in self.rules.get(state, []):
            if "->" not in body:
                raise ModelSyntaxError("expected 'GUARD -> STATE'", number)
            lhs, target = body.rsplit("->", 1)
            target = target.strip()
            if target not in known:
                raise ModelSyntaxError(f"undeclared target state {target!r}", number)
            out.append((number, lhs.strip(), target))
        return out


def read_model(text: str) -> RcgsModel:
    """Parse the RCGS text format; errors carry the offending line number."""
    h = _Header("rcgs")
    h.feed(text, ("agents", "roles", "states", "init", "props"), ("label", "assign", "actions"))
    states, initial, props, labeling = h.common(text)
    last = max((n for n, _ in _lines(text)), default=1)
    n = h.positive("agents", last)
    k = h.positive("roles", last)
    assignment, action_counts, transitions = {}, {}, {}
    known = set(states)
    for q in states:
        number, body = h.required("assign", q)
        roles = _ints(body, number)
        if len(roles) != n:
            raise ModelSyntaxError(f"assign lists {len(roles)} roles for {n} agents", number)
        if any(not 1 <= r <= k for r in roles):
            raise ModelSyntaxError(f"role outside 1..{k}", number)
        assignment[q] = roles
        number, body = h.required("actions", q)
        counts = _ints(body, number)
        if len(counts) != k:
            raise ModelSyntaxError(f"actions lists {len(counts)} counts for {k} roles", number)
        if any(c < 1 for c in counts):
            raise ModelSyntaxError("action counts must be positive", number)
        action_counts[q] = counts
        entries = h.targets(q, known)
        if not entries:
            raise ModelSyntaxError(f"state {q} has no 'trans' rules", h.states_line)
        rules = []
        for i, (number, lhs, target) in enumerate(entries):
            guard = _parse_guard(lhs, number)
            if guard.is_default and i != len(entries) - 1:
                raise ModelSyntaxError("default rule must come last", number)
            for atom in guard.atoms:
                if not 1 <= atom.role <= k:
                    raise ModelSyntaxError(f"{atom}: no role {atom.role}", number)
                if not 1 <= atom.action <= counts[atom.role - 1]:
                    raise ModelSyntaxError(
                        f"{atom}: role {atom.role} has {counts[atom.role - 1]} actions", number
                    )
            rules.append(Rule(guard, target))
        if not rules[-1].guard.is_default:
            raise ModelSyntaxError(f"state {q} is missing its default rule", entries[-1][0])
        transitions[q] = rules
    model = make_model(n, k, states, initial, props, labeling, assignment, action_counts, transitions)
    problems = validate(model)
    if problems:
        raise ModelSyntaxError(problems[0], h.states_line)
    return model


def write_model(model: RcgsModel) -> str:
    out = [
        "rcgs",
        f"agents {model.agent_count}",
        f"roles {model.role_count}",
        "states " + " ".join(model.states),
        f"init {model.initial}",
        "props " + " ".join(model.props),
    ]
    out = [line.rstrip() for line in out]
    for q in model.states:
        labels = [p for p in model.props if p in model.labeling[q]]
        out.append(f"label {q} : " + " ".join(labels) if labels else f"label {q} :")
    for q in model.states:
        out.append(f"assign {q} : " + " ".join(map(str, model.assignment[q])))
        out.append(f"actions {q} : " + " ".join(map(str, model.action_counts[q])))
        for rule in model.transitions[q]:
            out.append(f"trans {q} : {rule.guard} -> {rule.target}")
    return "\n".join(out) + "\n"


def export_size(m: CgsModel) -> int:
    """Number of ``trans`` lines :func:`write_cgs` would emit."""
    return sum(m.tuple_count(q) for q in m.states)


def write_cgs(m: CgsModel, *, limit: int) -> str:
    """Export with one line per action tuple; refuses above ``limit`` lines."""
    total = export_size(m)
    if total > limit:
        worst = max(m.states, key=m.tuple_count)
        raise ResourceLimit(
            f"refusing to export {total} transition lines (limit {limit}); "
            f"state {worst} alone has {m.tuple_count(worst)} action tuples",
            total, limit,
        )
    out = [
        "cgs",
        f"agents {m.agent_count}",
        "states " + " ".join(m.states),
        f"init {m.initial}",
        ("props " + " ".join(m.props)).rstrip(),
    ]
    for q in m.states:
        labels = [p for p in m.props if p in m.labeling[q]]
        out.append(f"label {q} : " + " ".join(labels) if labels else f"label {q} :")
    for q in m.states:
        out.append(f"moves {q} : " + " ".join(map(str, m.moves[q])))
        for alpha in m.action_tuples(q):
            out.append(f"trans {q} : ({','.join(map(str, alpha))}) -> {m.delta(q, alpha)}")
    return "\n".join(out) + "\n"


_TUPLE = re.compile(r"^\((\s*\d+\s*(?:,\s*\d+\s*)*)\)$")


def read_cgs(text: str) -> CgsModel:
    """Parse an exported CGS; the transition table must be total."""
    h = _Header("cgs")
    h.feed(text, ("agents", "states", "init", "props"), ("label", "moves"))
    states, initial, props, labeling = h.common(text)
    last = max((n for n, _ in _lines(text)), default=1)
    n = h.positive("agents", last)
    known = set(states)
    moves, table = {}, {}
    for q in states:
        number, body = h.required("moves", q)
        d = _ints(body, number)
        if len(d) != n or any(x < 1 for x in d):
            raise ModelSyntaxError(f"moves needs {n} positive counts", number)
        moves[q] = tuple(d)
        for number, lhs, target in h.targets(q, known):
            m = _TUPLE.match(lhs)
            if m is None:
                raise ModelSyntaxError(f"bad action tuple {lhs!r}", number)
            alpha = tuple(int(x) for x in m.group(1).split(","))
            if len(alpha) != n or any(not 1 <= x <= dx for x, dx in zip(alpha, d)):
                raise ModelSyntaxError(f"action tuple {alpha} does not fit moves {tuple(d)}", number)
            if (q, alpha) in table:
                raise ModelSyntaxError(f"duplicate transition for {alpha}", number)
            table[q, alpha] = target
        for alpha in itertools.product(*(range(1, x + 1) for x in d)):
            if (q, alpha) not in table:
                raise ModelSyntaxError(f"state {q}: no transition for {alpha}", h.states_line)
    return CgsModel(
        agent_count=n,
        states=tuple(states),
        initial=initial,
        props=tuple(props),
        labeling={q: frozenset(labeling.get(q, ())) for q in states},
        moves=moves,
        transition=lambda q, alpha: table[q, alpha],
    )
