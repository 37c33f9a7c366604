"""Answer-set semantics for ground extended logic programs.

Integrity constraints follow their standard encoding ``p <- body, not p``:
a consistent candidate violating a constraint is rejected, and in the
reduct relative to the inconsistent closure every constraint is dropped
(its encoding has a weakly negated literal).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import ResourceLimitError
from .model import (
    INCONSISTENT,
    Literal,
    LiteralSet,
    Program,
    Rule,
    as_rules,
    defeated,
    is_consistent,
    set_key,
)

DEFAULT_BRUTEFORCE_BOUND = 20


def reduct(p: Program | Sequence[Rule], x: LiteralSet) -> Program:
    """The basic program obtained by dropping rules defeated by ``x`` and
    deleting the weakly negated literals of the rest."""
    rules = as_rules(p)
    if x is INCONSISTENT:
        kept = [r for r in rules if not r.neg and not r.is_constraint]
    else:
        kept = [r.basic() for r in rules if not defeated(r, x)]
    return Program(tuple(kept))


def _fixpoint(rules: Sequence[Rule]) -> tuple[set[Literal], bool]:
    """Least set closed under the basic ``rules``; flag set if a constraint fires.

    Counter-based propagation, linear in the size of the program.
    """
    watch: dict[Literal, list[int]] = {}
    missing = []
    derived: set[Literal] = set()
    queue: list[Literal] = []
    fired = False
    for i, r in enumerate(rules):
        missing.append(len(r.pos))
        for l in r.pos:
            watch.setdefault(l, []).append(i)
        if not r.pos:
            if r.head is None:
                fired = True
            elif r.head not in derived:
                derived.add(r.head)
                queue.append(r.head)
    while queue:
        l = queue.pop()
        for i in watch.get(l, ()):
            missing[i] -= 1
            if missing[i] == 0:
                h = rules[i].head
                if h is None:
                    fired = True
                elif h not in derived:
                    derived.add(h)
                    queue.append(h)
    return derived, fired


def th_closure(b: Program | Sequence[Rule]) -> LiteralSet:
    """Smallest logically closed set closed under the basic program ``b``.

    Returns :data:`INCONSISTENT` when a complementary pair is derived or a
    constraint body becomes true.
    """
    rules = as_rules(b)
    if any(r.neg for r in rules):
        raise ValueError("th_closure expects a basic program")
    derived, fired = _fixpoint(rules)
    if fired or not is_consistent(derived):
        return INCONSISTENT
    return frozenset(derived)


@dataclass(frozen=True)
class DerivationTrace:
    """Stages ``T^1, T^2, ...`` of the immediate consequence operator.

    The list ends with the first stage equal to its successor; the empty
    program yields the single stage ``{}``.
    """

    stages: tuple

    def __len__(self):
        return len(self.stages)

    @property
    def final(self) -> LiteralSet:
        return self.stages[-1]


def tp_trace(b: Program | Sequence[Rule]) -> DerivationTrace:
    rules = as_rules(b)
    if any(r.neg for r in rules):
        raise ValueError("tp_trace expects a basic program")
    stages: list = []
    current: frozenset = frozenset()
    while True:
        nxt = set()
        fired = False
        for r in rules:
            if all(l in current for l in r.pos):
                if r.head is None:
                    fired = True
                else:
                    nxt.add(r.head)
        nxt = frozenset(nxt)
        if nxt == current and stages:
            break
        stages.append(nxt)
        if fired or not is_consistent(nxt):
            stages.append(INCONSISTENT)
            break
        if nxt == current:
            break
        current = nxt
    return DerivationTrace(tuple(stages))


def stage_of(trace: DerivationTrace, l: Literal) -> int | None:
    """Least 1-based index of a stage containing ``l``, or None."""
    for i, s in enumerate(trace.stages, start=1):
        if s is INCONSISTENT or l in s:
            return i
    return None


def is_answer_set(p: Program | Sequence[Rule], x: LiteralSet) -> bool:
    if x is not INCONSISTENT:
        x = frozenset(x)
        if not is_consistent(x):
            return False
    return th_closure(reduct(p, x)) == x


def has_inconsistent_answer_set(p: Program | Sequence[Rule]) -> bool:
    return is_answer_set(p, INCONSISTENT)


def answer_sets_bruteforce(p: Program | Sequence[Rule], bound: int = DEFAULT_BRUTEFORCE_BOUND) -> list:
    """All answer sets by testing every consistent subset of the head literals."""
    rules = as_rules(p)
    heads = sorted({r.head for r in rules if r.head is not None}, key=Literal.sort_key)
    if len(heads) > bound:
        raise ResourceLimitError(f"{len(heads)} head literals exceed the brute-force bound {bound}")
    found = []
    for k in range(len(heads) + 1):
        for combo in itertools.combinations(heads, k):
            x = frozenset(combo)
            if is_consistent(x) and is_answer_set(rules, x):
                found.append(x)
    if has_inconsistent_answer_set(rules):
        found.append(INCONSISTENT)
    return sorted(found, key=set_key)


def generating_indices(p: Program | Sequence[Rule], x: LiteralSet) -> list[int]:
    rules = as_rules(p)
    if x is INCONSISTENT:
        raise ValueError("generating rules are defined for consistent sets only")
    return [
        i
        for i, r in enumerate(rules)
        if r.head is not None and all(l in x for l in r.pos) and not defeated(r, x)
    ]


def generating_rules(p: Program | Sequence[Rule], x: LiteralSet) -> list[Rule]:
    """GR(p, x): rules whose prerequisites hold in ``x`` and that ``x`` does not defeat."""
    rules = as_rules(p)
    return [rules[i] for i in generating_indices(rules, x)]


def grounded_enumeration(p: Program | Sequence[Rule], x: LiteralSet) -> list[int] | None:
    """Indices of GR(p, x) ordered so each prerequisite is an earlier head."""
    rules = as_rules(p)
    todo = generating_indices(rules, x)
    heads: set[Literal] = set()
    order: list[int] = []
    progress = True
    while todo and progress:
        progress = False
        rest = []
        for i in todo:
            if all(l in heads for l in rules[i].pos):
                order.append(i)
                heads.add(rules[i].head)
                progress = True
            else:
                rest.append(i)
        todo = rest
    return None if todo else order


def is_grounded(rules: Sequence[Rule], ordering: Sequence[int]) -> bool:
    heads: set[Literal] = set()
    for i in ordering:
        if not all(l in heads for l in rules[i].pos):
            return False
        heads.add(rules[i].head)
    return True

