"""Definition-level checkers for the preference semantics.

Each order-preservation criterion asks for an enumeration of rules such
that every rule, at its position, satisfies conditions of the form "some
set of rules (or heads) has already been placed".  These conditions only
get easier as the placed prefix grows, so a greedy construction that
repeatedly places any admissible rule finds a witness whenever one exists.
The ``priority`` argument only decides ties and never changes a verdict.
Every witness is re-checked against the definition by an independent
validator before it is returned.

Brewka-Eiter preference is checked from its original construction: all
total extensions of the order are tried with the operator ``C``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import NotAnswerSetError, OrderError, ResourceLimitError
from .model import (
    INCONSISTENT,
    PREC,
    Atom,
    Literal,
    LiteralSet,
    PreferenceOrder,
    Program,
    Rule,
    Term,
    as_rules,
    close,
    defeated,
    order_of,
)
from .semantics import generating_indices, is_answer_set
from .transforms import ta_closure

DEFAULT_MAX_EXTENSIONS = 40_320
DEFAULT_MAX_UNIVERSE = 20_000


@dataclass(frozen=True)
class EnumerationWitness:
    """Rule indices in enumeration order, and the criterion they satisfy."""

    ordering: tuple[int, ...]
    criterion: str

    def rules(self, p: Program | Sequence[Rule]) -> list[Rule]:
        rules = as_rules(p)
        return [rules[i] for i in self.ordering]


# shared plumbing


def _require_answer_set(rules: Sequence[Rule], x: LiteralSet) -> frozenset:
    if x is INCONSISTENT:
        raise NotAnswerSetError("order preservation is defined for consistent answer sets")
    x = frozenset(x)
    if not is_answer_set(rules, x):
        raise NotAnswerSetError("candidate is not an answer set of the program")
    return x


def _rule_order(rules: Sequence[Rule], order: PreferenceOrder) -> list[set[int]]:
    """above[i] = indices of rules preferred to rule i."""
    order = order.strictify()
    index: dict[Term, int] = {}
    for i, r in enumerate(rules):
        if r.name is not None:
            index[r.name] = i
    above: list[set[int]] = [set() for _ in rules]
    for a, b in order.pairs:
        if a not in index or b not in index:
            raise OrderError(f"order mentions an unknown rule name in ({a}, {b})")
        above[index[a]].add(index[b])
    return above


def _greedy(candidates: Sequence[int], admissible: Callable[[int], bool], place: Callable[[int], None],
            priority: Callable[[int], object] | None) -> list[int] | None:
    todo = sorted(candidates, key=priority) if priority else list(candidates)
    placed: list[int] = []
    while todo:
        for k, i in enumerate(todo):
            if admissible(i):
                placed.append(i)
                place(i)
                del todo[k]
                break
        else:
            return None
    return placed


def _static_search(p, order, x, criterion, priority):
    rules = as_rules(p)
    x = _require_answer_set(rules, x)
    above = _rule_order(rules, order)
    gr = generating_indices(rules, x)
    gr_set = set(gr)
    placed: set[int] = set()
    heads: set[Literal] = set()
    wzl = criterion == "wzl"
    be = criterion == "be-enum"

    def settled(j: int) -> bool:
        r = rules[j]
        if r.head is None:
            return True
        if not all(l in x for l in r.pos):
            return True
        if any(l in heads for l in r.neg):
            return True
        if wzl and r.head in heads:
            return True
        if be and r.head in x:
            return True
        return False

    def admissible(i: int) -> bool:
        r = rules[i]
        if not be and not all(l in heads for l in r.pos):
            if not (wzl and r.head in heads):
                return False
        for j in above[i]:
            if j in gr_set:
                if j not in placed:
                    return False
            elif not settled(j):
                return False
        return True

    def place(i: int):
        placed.add(i)
        heads.add(rules[i].head)

    ordering = _greedy(gr, admissible, place, priority)
    if ordering is None:
        return None
    w = EnumerationWitness(tuple(ordering), criterion)
    if not validate_static_witness(rules, order, x, w):
        raise AssertionError(f"internal error: invalid {criterion} witness")
    return w


def check_static_preserving(p: Program | Sequence[Rule], order: PreferenceOrder, x: LiteralSet,
                            priority: Callable[[int], object] | None = None) -> EnumerationWitness | None:
    """Enumeration of GR(p, x) that is grounded and respects ``order``.

    Each rule preferred to a generating rule but not generating itself
    must lack a prerequisite in ``x`` or be defeated by an earlier head.
    """
    return _static_search(p, order, x, "dst-static", priority)


def check_wzl_preserving(p, order, x, priority=None) -> EnumerationWitness | None:
    """As :func:`check_static_preserving`, but a rule whose head was already
    produced needs no grounding and counts as settled when preferred."""
    return _static_search(p, order, x, "wzl", priority)


def check_be_preserving(p, order, x, priority=None) -> EnumerationWitness | None:
    """Enumeration without groundedness; a preferred non-generating rule may
    also be excused by its head belonging to ``x``."""
    return _static_search(p, order, x, "be-enum", priority)


def validate_static_witness(p, order: PreferenceOrder, x: LiteralSet, w: EnumerationWitness) -> bool:
    """Re-check a witness against the conditions of its criterion, position by position."""
    rules = as_rules(p)
    x = frozenset(x)
    gr = generating_indices(rules, x)
    if sorted(w.ordering) != sorted(gr):
        return False
    pos = {i: k for k, i in enumerate(w.ordering)}
    above = _rule_order(rules, order)
    for k, i in enumerate(w.ordering):
        earlier = {rules[j].head for j in w.ordering[:k]}
        r = rules[i]
        if w.criterion == "dst-static" and not set(r.pos) <= earlier:
            return False
        if w.criterion == "wzl" and not (set(r.pos) <= earlier or r.head in earlier):
            return False
        for j in above[i]:
            if j in pos:
                if pos[j] >= k:
                    return False
                continue
            other = rules[j]
            if other.head is None:
                continue
            ok = (
                not set(other.pos) <= x
                or bool(set(other.neg) & earlier)
                or (w.criterion == "wzl" and other.head in earlier)
                or (w.criterion == "be-enum" and other.head in x)
            )
            if not ok:
                return False
    return True


# dynamic order preservation


def check_dynamic_preserving(
    p: Program,
    x: LiteralSet,
    priority: Callable[[int], object] | None = None,
    preference_condition: bool = True,
    max_universe: int = DEFAULT_MAX_UNIVERSE,
) -> EnumerationWitness | None:
    """Enumeration of all of TA(p) preserving the order read off ``x``.

    Indices in the witness refer to ``ta_closure(p)``, whose first rules
    are those of ``p``.  With ``preference_condition=False`` the demand
    that each preference be derived before the lower rule is dropped.
    """
    ta = ta_closure(p)
    rules = ta.rules
    if len(rules) > max_universe:
        raise ResourceLimitError(f"TA closure has {len(rules)} rules, above {max_universe}")
    x = _require_answer_set(rules, x)
    above = _dynamic_above(rules, x)
    gr_set = set(generating_indices(rules, x))
    placed: set[int] = set()
    heads: set[Literal] = set()

    def admissible(i: int) -> bool:
        r = rules[i]
        for j, pref in above[i]:
            if j not in placed:
                return False
            if preference_condition and pref not in heads:
                return False
        if i in gr_set:
            return all(l in heads for l in r.pos)
        return not all(l in x for l in r.pos) or any(l in heads for l in r.neg)

    def place(i: int):
        placed.add(i)
        if i in gr_set:
            heads.add(rules[i].head)

    if priority is None:
        # rules outside p (transitivity, antisymmetry) go as early as they can
        base = len(p.rules)
        priority = lambda i: (0 if i >= base else 1, i)  # noqa: E731
    ordering = _greedy(range(len(rules)), admissible, place, priority)
    if ordering is None:
        return None
    w = EnumerationWitness(tuple(ordering), "dst-dynamic" if preference_condition else "dst-dynamic-weak")
    if not validate_dynamic_witness(p, x, w, preference_condition):
        raise AssertionError("internal error: invalid dynamic witness")
    return w


def _dynamic_above(rules: Sequence[Rule], x: frozenset) -> list[list[tuple[int, Literal]]]:
    index = {r.name: i for i, r in enumerate(rules) if r.name is not None}
    above: list[list[tuple[int, Literal]]] = [[] for _ in rules]
    for (a, b) in order_of(x):
        if a in index and b in index:
            above[index[a]].append((index[b], Literal(_prec_atom(a, b))))
    return above


def _prec_atom(a: Term, b: Term) -> Atom:
    return Atom(PREC, (a, b))


def validate_dynamic_witness(p: Program, x: LiteralSet, w: EnumerationWitness,
                             preference_condition: bool = True) -> bool:
    rules = ta_closure(p).rules
    x = frozenset(x)
    if sorted(w.ordering) != list(range(len(rules))):
        return False
    gr = set(generating_indices(rules, x))
    pos = {i: k for k, i in enumerate(w.ordering)}
    above = _dynamic_above(rules, x)
    for k, i in enumerate(w.ordering):
        earlier = {rules[j].head for j in w.ordering[:k] if j in gr}
        for j, pref in above[i]:
            if pos[j] >= k:
                return False
            if preference_condition and pref not in earlier:
                return False
        r = rules[i]
        if i in gr:
            if not set(r.pos) <= earlier:
                return False
        elif set(r.pos) <= x and not set(r.neg) & earlier:
            return False
    return True


# Brewka-Eiter


def be_C_operator(rules: Sequence[Rule], x: LiteralSet, second_case: bool = True) -> LiteralSet:
    """The operator C of a fully ordered prerequisite-free program.

    ``rules`` are listed from the most to the least preferred.  With
    ``second_case=False`` the exemption of rules whose head is in ``x``
    while ``x`` defeats them is switched off.
    """
    acc: set[Literal] = set()
    for r in rules:
        if r.pos:
            raise ValueError(f"rule {r} has prerequisites")
        if r.head is None:
            continue
        if any(l in acc for l in r.neg):
            continue
        if second_case and (x is INCONSISTENT or r.head in x) and defeated(r, x):
            continue
        acc.add(r.head)
    return close(acc)


def total_extensions(order: PreferenceOrder, universe: Sequence[Rule] | int,
                     max_extensions: int | None = None) -> Iterator[tuple[int, ...]]:
    """Linear extensions as tuples of rule indices, least preferred first.

    Rules are identified by position in ``universe`` (or ``range(universe)``);
    the order relates them through their names.  Generation order is
    deterministic (lexicographic on indices).
    """
    if isinstance(universe, int):
        n = universe
        names = [Term(str(i)) for i in range(n)]
        above = [set() for _ in range(n)]
        idx = {t: i for i, t in enumerate(names)}
        for a, b in order.strictify().pairs:
            above[idx[a]].add(idx[b])
    else:
        n = len(universe)
        above = _rule_order(universe, order)
    below = [set() for _ in range(n)]
    for i in range(n):
        for j in above[i]:
            below[j].add(i)
    count = 0
    prefix: list[int] = []
    used = [False] * n

    def rec() -> Iterator[tuple[int, ...]]:
        nonlocal count
        if len(prefix) == n:
            count += 1
            if max_extensions is not None and count > max_extensions:
                raise ResourceLimitError(f"more than {max_extensions} linear extensions")
            yield tuple(prefix)
            return
        for i in range(n):
            if not used[i] and all(used[j] for j in below[i]):
                used[i] = True
                prefix.append(i)
                yield from rec()
                prefix.pop()
                used[i] = False

    yield from rec()


def reduce_fully_ordered(rules: Sequence[Rule], total: Sequence[int], x: LiteralSet) -> list[Rule]:
    """(Pi_X, <<_X) as a list from most to least preferred.

    Rules with prerequisites outside ``x`` go; the rest lose their
    prerequisites, and duplicates take the rank of their best preimage.
    """
    seen: set = set()
    out: list[Rule] = []
    for i in reversed(total):
        r = rules[i]
        if r.head is None or not all(l in x for l in r.pos):
            continue
        key = (r.head, frozenset(r.neg))
        if key in seen:
            continue
        seen.add(key)
        out.append(Rule(r.head, (), r.neg))
    return out


def be_preferred(p: Program | Sequence[Rule], order: PreferenceOrder, x: LiteralSet,
                 max_extensions: int = DEFAULT_MAX_EXTENSIONS, second_case: bool = True) -> bool:
    """Whether ``x`` is a Brewka-Eiter preferred answer set of ``(p, order)``."""
    rules = as_rules(p)
    if x is INCONSISTENT or not is_answer_set(rules, x):
        return False
    x = frozenset(x)
    return be_preferred_extension(rules, order, x, max_extensions, second_case) is not None


def be_preferred_extension(rules, order, x, max_extensions=DEFAULT_MAX_EXTENSIONS, second_case=True):
    """A total extension under which ``x`` is a C-fixpoint, or None."""
    tried: set = set()
    for total in total_extensions(order, rules, max_extensions):
        reduced = reduce_fully_ordered(rules, total, x)
        key = tuple(reduced)
        if key in tried:
            continue
        tried.add(key)
        if be_C_operator(reduced, x, second_case) == x:
            return total
    return None


def be_characterisation(p: Program | Sequence[Rule], total: Sequence[int], x: LiteralSet) -> bool:
    """Every applicable rule whose head is missing is defeated by the head
    of a more preferred generating rule.  ``total`` lists indices from the
    least to the most preferred."""
    rules = as_rules(p)
    rank = {i: k for k, i in enumerate(total)}
    gr = generating_indices(rules, x)
    for i, r in enumerate(rules):
        if r.head is None or r.head in x or not all(l in x for l in r.pos):
            continue
        if not any(rank[j] > rank[i] and rules[j].head in r.neg for j in gr):
            return False
    return True


def preserving_sets(p: Program | Sequence[Rule], order: PreferenceOrder, candidates, criterion: str) -> list:
    """Filter answer sets by a static criterion name."""
    rules = as_rules(p)
    out = []
    for x in candidates:
        if x is INCONSISTENT:
            continue
        if criterion == "dst-static":
            good = check_static_preserving(rules, order, x) is not None
        elif criterion == "wzl":
            good = check_wzl_preserving(rules, order, x) is not None
        elif criterion == "be-enum":
            good = check_be_preserving(rules, order, x) is not None
        elif criterion == "be-original":
            good = be_preferred(rules, order, x)
        else:
            raise ValueError(f"unknown criterion {criterion!r}")
        if good:
            out.append(x)
    return out
