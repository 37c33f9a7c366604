"""Compilation of ordered programs into standard extended logic programs.

Every strategy tags the named rules with the reserved atoms ``ap(n)``
(applied), ``bl(n)`` (blocked), ``ok(n)`` (released for consideration)
and ``rdy(n, m)`` (``n`` is ready with respect to ``m``).  Unnamed rules
are not subject to preference handling; ``tag_all=True`` names every rule
first.

Strategies:

``T``       prescriptive, preferences may be derived dynamically
``Tstatic`` the same for a fixed order given as preference facts
``W``       ``T`` plus head-elimination (a rule whose head holds is ignored)
``WTA``     winner takes all: applying a rule stops lower ones
``U``       descriptive: guess an answer set, then rebuild it in a primed copy
``V``       ``U`` with preferences formed inside the primed copy
``S``       ``U`` with grounded reconstruction and no head-elimination
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import OrderError, ValidationError
from .model import (
    PREC,
    PRIME_SUFFIX,
    PRIMED_PREC,
    TAG_PREDICATES,
    Atom,
    FreshAtoms,
    Literal,
    LiteralSet,
    INCONSISTENT,
    PreferenceOrder,
    Program,
    Rule,
    Term,
    desugar_constraint,
    static_order,
)


class Strategy(str, enum.Enum):
    T = "T"
    TSTATIC = "Tstatic"
    W = "W"
    WTA = "WTA"
    U = "U"
    V = "V"
    S = "S"

    @classmethod
    def parse(cls, text: str | Strategy) -> Strategy:
        if isinstance(text, Strategy):
            return text
        for s in cls:
            if s.value.lower() == text.lower():
                return s
        raise ValueError(f"unknown strategy {text!r}")

    @property
    def uses_mirror(self) -> bool:
        return self in (Strategy.U, Strategy.V, Strategy.S)


# tag atoms


def _lit(pred: str, *args: Term, negated: bool = False) -> Literal:
    return Literal(Atom(pred, tuple(args)), negated)


def ap(n: Term) -> Literal:
    return _lit("ap", n)


def bl(n: Term) -> Literal:
    return _lit("bl", n)


def ok(n: Term) -> Literal:
    return _lit("ok", n)


def rdy(n: Term, m: Term) -> Literal:
    return _lit("rdy", n, m)


def prec(n: Term, m: Term, negated: bool = False) -> Literal:
    return _lit(PREC, n, m, negated=negated)


def precp(n: Term, m: Term, negated: bool = False) -> Literal:
    return _lit(PRIMED_PREC, n, m, negated=negated)


def name_atom(n: Term) -> Literal:
    return _lit("name", n)


# primed mirror


def is_primed(l: Literal) -> bool:
    return l.predicate.endswith(PRIME_SUFFIX) or l.predicate == PRIMED_PREC


def prime(l: Literal) -> Literal:
    """``L -> L'``: a fresh predicate for every user predicate, ``prec -> precp``."""
    if is_primed(l):
        raise ValidationError(f"literal {l} is already primed")
    if l.predicate in TAG_PREDICATES and l.atom.arity == TAG_PREDICATES[l.predicate]:
        raise ValidationError(f"tag atom {l} has no primed counterpart")
    pred = PRIMED_PREC if l.atom.is_preference else l.predicate + PRIME_SUFFIX
    return Literal(Atom(pred, l.atom.args), l.negated)


def unprime(l: Literal) -> Literal:
    if l.predicate == PRIMED_PREC:
        return Literal(Atom(PREC, l.atom.args), l.negated)
    if not l.predicate.endswith(PRIME_SUFFIX):
        raise ValidationError(f"literal {l} is not primed")
    return Literal(Atom(l.predicate[: -len(PRIME_SUFFIX)], l.atom.args), l.negated)


def prime_mirror(item: Literal | Rule) -> Literal | Rule:
    """Prime a literal, or every literal of a rule (the name is dropped)."""
    if isinstance(item, Literal):
        return prime(item)
    return Rule(
        None if item.head is None else prime(item.head),
        tuple(prime(l) for l in item.pos),
        tuple(prime(l) for l in item.neg),
    )


# helpers


def _names(rules: Sequence[Rule]) -> list[Term]:
    return [r.name for r in rules if r.name is not None]


def _order_universe(rules: Sequence[Rule]) -> list[Term]:
    """Name-terms of namings and preference atoms, in order of first occurrence."""
    seen: dict[Term, None] = {}
    for r in rules:
        if r.name is not None:
            seen.setdefault(r.name)
    for r in rules:
        for a in r.atoms():
            if a.is_preference:
                for t in a.args:
                    seen.setdefault(t)
    return list(seen)


def ta_rules(universe: Sequence[Term], primed: bool = False) -> list[Rule]:
    """Transitivity and antisymmetry rules over a name universe (n^3 + n^2 rules)."""
    make = precp if primed else prec
    out = []
    for x in universe:
        for y in universe:
            for z in universe:
                out.append(Rule(make(x, z), (make(x, y), make(y, z))))
    for x in universe:
        for y in universe:
            out.append(Rule(make(y, x, negated=True), (make(x, y),)))
    return out


def ta_closure(p: Program) -> Program:
    """``p`` plus transitivity and antisymmetry rules for its preference atoms."""
    return Program(p.rules + tuple(ta_rules(_order_universe(p.rules))))


def _tau_T(
    r: Rule,
    names: Sequence[Term],
    by_name: dict[Term, Rule],
    variant: Strategy = Strategy.T,
) -> list[Rule]:
    n = r.name
    out = [
        Rule(r.head, (ap(n),)),
        Rule(ap(n), (ok(n),) + r.pos, r.neg),
    ]
    out += [Rule(bl(n), (ok(n),), (l,)) for l in r.pos]
    out += [Rule(bl(n), (ok(n), l)) for l in r.neg]
    out.append(Rule(ok(n), tuple(rdy(n, m) for m in names)))
    out += [Rule(rdy(n, m), (), (prec(n, m),)) for m in names]
    if variant != Strategy.WTA:
        out += [Rule(rdy(n, m), (prec(n, m), ap(m))) for m in names]
        out += [Rule(rdy(n, m), (prec(n, m), bl(m))) for m in names]
    else:
        # a lower rule is released only when a higher one lacks a prerequisite
        out += [
            Rule(rdy(n, m), (prec(n, m), ok(m)), (l,))
            for m in names
            for l in by_name[m].pos
        ]
    if variant == Strategy.W:
        out += [Rule(rdy(n, m), (prec(n, m), by_name[m].head)) for m in names]
    return out


def tau_T(r: Rule, universe: Sequence[Rule]) -> list[Rule]:
    """The rules a1, a2, b1*, b2*, c1, c2*, c3*, c4* for the named rule ``r``.

    ``universe`` is the list of named rules the c-rules range over; it
    normally contains ``r`` itself.
    """
    if r.name is None:
        raise ValidationError(f"cannot tag unnamed rule {r}")
    names = _names(universe)
    return _tau_T(r, names, {u.name: u for u in universe if u.name is not None})


@dataclass
class Compiled:
    """A compiled program together with what is needed to read its answer sets."""

    program: Program
    strategy: Strategy
    names: list[Term]
    source: Program
    user_predicates: frozenset = frozenset()
    order: PreferenceOrder | None = None
    fresh: list[str] = field(default_factory=list)

    def project(self, x: LiteralSet, include_order: bool = True) -> LiteralSet:
        """Restrict an answer set to the source language.

        Negative preference literals (introduced by antisymmetry rules) are
        dropped; with ``include_order=False`` positive ones are dropped too.
        """
        if x is INCONSISTENT:
            return x
        keep = set()
        for l in x:
            if l.predicate not in self.user_predicates:
                continue
            if l.atom.is_preference and (l.negated or not include_order):
                continue
            keep.add(l)
        return frozenset(keep)


def _check_source(p: Program) -> None:
    if not p.is_ground:
        raise ValidationError("translations require a ground program")
    names = set(p.naming())
    for r in p.rules:
        for a in r.atoms():
            if a.is_preference:
                for t in a.args:
                    if t not in names:
                        raise ValidationError(f"{a} refers to unknown rule name {t}")


def auto_name(p: Program) -> Program:
    """Give every unnamed rule a fresh name ``r<i>`` (1-based position)."""
    taken = {str(t) for t in p.names()}
    rules = []
    for i, r in enumerate(p.rules, start=1):
        if r.name is None:
            label = f"r{i}"
            while label in taken:
                label += "_"
            taken.add(label)
            r = Rule(r.head, r.pos, r.neg, Term(label))
        rules.append(r)
    return Program(tuple(rules))


def _prepare(p: Program, tag_all: bool) -> tuple[Program, FreshAtoms]:
    """Validate, optionally auto-name, and desugar named constraints."""
    if tag_all:
        p = auto_name(p)
    _check_source(p)
    fresh = FreshAtoms({a.predicate for a in p.atoms()})
    rules = []
    for r in p.rules:
        if r.is_constraint and r.name is not None:
            r = desugar_constraint(r, fresh())
        rules.append(r)
    return Program(tuple(rules)), fresh


def _user_predicates(p: Program) -> frozenset:
    return frozenset(a.predicate for a in p.atoms())


def _tagged(p: Program, variant: Strategy, tag_all: bool) -> Compiled:
    src, _ = _prepare(p, tag_all)
    names = _names(src.rules)
    by_name = {r.name: r for r in src.rules if r.name is not None}
    out: list[Rule] = []
    for r in src.rules:
        if r.name is None:
            out.append(r)
        else:
            out += _tau_T(r, names, by_name, variant)
    out += ta_rules(_order_universe(src.rules))
    return Compiled(Program(tuple(out)), variant, names, src, _user_predicates(src))


def transform_T(p: Program, tag_all: bool = False) -> Compiled:
    return _tagged(p, Strategy.T, tag_all)


def transform_W(p: Program, tag_all: bool = False) -> Compiled:
    """``T`` plus ``rdy(n, m) <- prec(n, m), head(m)`` for every pair of named rules."""
    return _tagged(p, Strategy.W, tag_all)


def transform_WTA(p: Program, tag_all: bool = False) -> Compiled:
    """Winner-takes-all variant of ``T``.

    ``rdy(n, m)`` for a preferred ``m`` is only obtained when ``m`` lacks a
    prerequisite; applying ``m`` or defeating it keeps lower rules out.
    """
    return _tagged(p, Strategy.WTA, tag_all)


def transform_T_static(p: Program, order: PreferenceOrder | None = None, tag_all: bool = False) -> Compiled:
    """Static simplification of ``T``; the output has no preference atoms.

    With ``order`` omitted, ``p`` must be statically ordered and the order
    is read off its preference facts.
    """
    if order is None:
        p, order = static_order(p)
    else:
        if not order.is_strict_partial:
            order = order.strictify()
        if any(a.is_preference for a in p.atoms()):
            raise OrderError("preference atoms must be passed as the order argument")
    src, _ = _prepare(p, tag_all)
    names = _names(src.rules)
    known = set(names)
    for t in order.names():
        if t not in known:
            raise ValidationError(f"order refers to unknown rule name {t}")
    out: list[Rule] = []
    for r in src.rules:
        if r.name is None:
            out.append(r)
            continue
        n = r.name
        above = [m for m in names if order.precedes(n, m)]
        out.append(Rule(r.head, (ap(n),)))
        out.append(Rule(ap(n), (ok(n),) + r.pos, r.neg))
        out += [Rule(bl(n), (ok(n),), (l,)) for l in r.pos]
        out += [Rule(bl(n), (ok(n), l)) for l in r.neg]
        out.append(Rule(ok(n), tuple(rdy(n, m) for m in above)))
        out += [Rule(rdy(n, m), (ap(m),)) for m in above]
        out += [Rule(rdy(n, m), (bl(m),)) for m in above]
    return Compiled(Program(tuple(out)), Strategy.TSTATIC, names, src, _user_predicates(src), order)


def _mirror(p: Program, variant: Strategy, tag_all: bool) -> Compiled:
    src, fresh = _prepare(p, tag_all)
    names = _names(src.rules)
    named = [r for r in src.rules if r.name is not None]
    order_pred = precp if variant == Strategy.V else prec
    out: list[Rule] = [r.without_name() for r in src.rules]
    fresh_used: list[str] = []
    for r in src.rules:
        if r.is_constraint:
            continue
        pos_p = tuple(prime(l) for l in r.pos)
        neg_p = tuple(prime(l) for l in r.neg)
        if r.name is None:
            if variant == Strategy.S:
                out.append(Rule(prime(r.head), r.pos + pos_p, r.neg + neg_p))
            else:
                out.append(Rule(prime(r.head), r.pos, r.neg + neg_p))
            continue
        n = r.name
        out.append(Rule(prime(r.head), (ap(n),)))
        if variant == Strategy.S:
            out.append(Rule(ap(n), (ok(n),) + r.pos + pos_p, r.neg + neg_p))
        else:
            out.append(Rule(ap(n), (ok(n),) + r.pos, r.neg + neg_p))
        out += [Rule(bl(n), (ok(n),), (l, prime(l))) for l in r.pos]
        out += [Rule(bl(n), (ok(n), l, prime(l))) for l in r.neg]
        out.append(Rule(ok(n), tuple(rdy(n, m) for m in names)))
        out += [Rule(rdy(n, m), (), (order_pred(n, m),)) for m in names]
        out += [Rule(rdy(n, m), (order_pred(n, m), ap(m))) for m in names]
        out += [Rule(rdy(n, m), (order_pred(n, m), bl(m))) for m in names]
        if variant != Strategy.S:
            out += [Rule(rdy(n, s.name), (s.head, j)) for s in named for j in s.neg]
        marker = Literal(fresh())
        fresh_used.append(marker.predicate)
        out.append(Rule(marker, (), (ok(n), marker)))
    universe = _order_universe(src.rules)
    out += ta_rules(universe)
    if variant == Strategy.V:
        out += ta_rules(universe, primed=True)
    return Compiled(Program(tuple(out)), variant, names, src, _user_predicates(src), fresh=fresh_used)


def transform_U(p: Program, tag_all: bool = False) -> Compiled:
    return _mirror(p, Strategy.U, tag_all)


def transform_V(p: Program, tag_all: bool = False) -> Compiled:
    return _mirror(p, Strategy.V, tag_all)


def transform_S(p: Program, tag_all: bool = False) -> Compiled:
    return _mirror(p, Strategy.S, tag_all)


_DISPATCH = {
    Strategy.T: transform_T,
    Strategy.TSTATIC: transform_T_static,
    Strategy.W: transform_W,
    Strategy.WTA: transform_WTA,
    Strategy.U: transform_U,
    Strategy.V: transform_V,
    Strategy.S: transform_S,
}


def compile_program(p: Program, strategy: Strategy | str, tag_all: bool = False) -> Compiled:
    """Translate ``p`` with the named strategy."""
    s = Strategy.parse(strategy)
    if s == Strategy.TSTATIC:
        return transform_T_static(p, tag_all=tag_all)
    return _DISPATCH[s](p, tag_all=tag_all)


def strategies() -> list[Strategy]:
    return list(Strategy)

