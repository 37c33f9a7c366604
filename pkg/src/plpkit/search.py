"""Backtracking answer-set search.

The engine branches on the literals that occur weakly negated somewhere
in the program.  Between branch points it propagates with two closures:

* the lower bound, built from rules none of whose weakly negated literals
  can still hold (all assigned false), must be contained in the answer set;
* the upper bound, built from rules not yet defeated, contains every
  literal the answer set can possibly hold.

Every candidate reaching a leaf is re-checked with the definitional test
:func:`plpkit.semantics.is_answer_set` before it is reported.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence

from .model import INCONSISTENT, Literal, Program, Rule, as_rules, complement, set_key
from .semantics import has_inconsistent_answer_set, is_answer_set

_UNKNOWN, _FALSE, _TRUE = -1, 0, 1


class _Conflict(Exception):
    pass


class _Engine:
    def __init__(self, rules: Sequence[Rule]):
        self.rules = rules
        ids: dict[Literal, int] = {}
        lits: list[Literal] = []

        def intern(l: Literal) -> int:
            i = ids.get(l)
            if i is None:
                i = ids[l] = len(lits)
                lits.append(l)
            return i

        for r in rules:
            for l in r.literals():
                intern(l)
                intern(complement(l))
        self.lits = lits
        self.comp = [ids[complement(l)] for l in lits]
        self.head = [-1 if r.head is None else ids[r.head] for r in rules]
        self.pos = [[ids[l] for l in r.pos] for r in rules]
        self.neg = [[ids[l] for l in r.neg] for r in rules]
        self.watch: list[list[int]] = [[] for _ in lits]
        for i, body in enumerate(self.pos):
            for l in body:
                self.watch[l].append(i)
        counts = Counter(l for r in rules for l in r.neg)
        order = sorted(counts, key=lambda l: (-counts[l], l.format()))
        self.branch = [ids[l] for l in order]
        self.neg_rules: list[list[int]] = [[] for _ in lits]
        for i, body in enumerate(self.neg):
            for l in body:
                self.neg_rules[l].append(i)

    def closure(self, active: list[bool], with_constraints: bool):
        """Return (derived flags, inconsistent or constraint fired)."""
        n = len(self.lits)
        derived = [False] * n
        missing = [len(b) for b in self.pos]
        queue: list[int] = []
        bad = False
        head, comp = self.head, self.comp
        for i, m in enumerate(missing):
            if m == 0 and active[i]:
                h = head[i]
                if h < 0:
                    bad = bad or with_constraints
                elif not derived[h]:
                    derived[h] = True
                    queue.append(h)
        while queue:
            l = queue.pop()
            if derived[comp[l]]:
                bad = True
            for i in self.watch[l]:
                missing[i] -= 1
                if missing[i] == 0 and active[i]:
                    h = head[i]
                    if h < 0:
                        bad = bad or with_constraints
                    elif not derived[h]:
                        derived[h] = True
                        queue.append(h)
        return derived, bad

    def propagate(self, val: list[int]) -> list[bool]:
        neg = self.neg
        while True:
            changed = False
            lower_active = [all(val[l] == _FALSE for l in b) for b in neg]
            lower, bad = self.closure(lower_active, with_constraints=True)
            if bad:
                raise _Conflict
            for l in self.branch:
                v = val[l]
                if lower[l]:
                    if v == _FALSE:
                        raise _Conflict
                    if v == _UNKNOWN:
                        val[l] = _TRUE
                        changed = True
                if val[l] == _TRUE and (lower[self.comp[l]] or val[self.comp[l]] == _TRUE):
                    raise _Conflict
            upper_active = [all(val[l] != _TRUE for l in b) for b in neg]
            upper, _ = self.closure(upper_active, with_constraints=False)
            for l in self.branch:
                if not upper[l]:
                    if val[l] == _TRUE:
                        raise _Conflict
                    if val[l] == _UNKNOWN:
                        val[l] = _FALSE
                        changed = True
            if not changed:
                return lower

    def run(self, max_models: int | None):
        found: list[frozenset] = []
        val = [_UNKNOWN] * len(self.lits)

        def visit(val: list[int]) -> bool:
            try:
                lower = self.propagate(val)
            except _Conflict:
                return False
            for l in self.branch:
                if val[l] == _UNKNOWN:
                    for choice in (_TRUE, _FALSE):
                        child = list(val)
                        child[l] = choice
                        if visit(child):
                            return True
                    return False
            x = frozenset(self.lits[i] for i, d in enumerate(lower) if d)
            if is_answer_set(self.rules, x):
                found.append(x)
            return max_models is not None and len(found) >= max_models

        visit(val)
        return found


def answer_sets_search(p: Program | Sequence[Rule], max_models: int | None = None) -> list:
    """All answer sets of a ground program, in canonical order.

    ``max_models`` stops the search early; the inconsistent closure, when
    it is an answer set, is the only one (no consistent set can be).
    """
    rules = as_rules(p)
    if has_inconsistent_answer_set(rules):
        return [INCONSISTENT]
    found = _Engine(rules).run(max_models)
    return sorted(found, key=set_key)


def solve(p: Program | Sequence[Rule], max_models: int | None = None) -> list:
    return answer_sets_search(p, max_models)
