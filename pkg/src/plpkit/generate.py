"""Seeded random ordered programs for property tests and experiments."""

from __future__ import annotations

import random

from .model import Atom, Literal, PreferenceOrder, Program, Rule, Term, with_order


def random_program(
    rng: random.Random,
    max_rules: int = 5,
    max_atoms: int = 4,
    max_body: int = 2,
    named: bool = True,
) -> Program:
    """Propositional program over atoms ``a, b, ...``; rule ``i`` is named ``n<i>``."""
    atoms = [Atom(chr(ord("a") + i)) for i in range(rng.randint(1, max_atoms))]

    def literal() -> Literal:
        return Literal(rng.choice(atoms), rng.random() < 0.4)

    rules = []
    for i in range(rng.randint(1, max_rules)):
        pos = tuple(literal() for _ in range(rng.randint(0, max_body)))
        neg = tuple(literal() for _ in range(rng.randint(0, max_body)))
        name = Term(f"n{i + 1}") if named else None
        rules.append(Rule(literal(), pos, neg, name))
    return Program(tuple(rules))


def random_order(rng: random.Random, p: Program, density: float = 0.35) -> PreferenceOrder:
    """A random strict partial order over the rule names of ``p``."""
    names = p.names()
    rng.shuffle(names)
    pairs = {
        (names[i], names[j])
        for i in range(len(names))
        for j in range(i + 1, len(names))
        if rng.random() < density
    }
    return PreferenceOrder(frozenset(pairs)).strictify()


def random_static_program(rng: random.Random, **kw) -> tuple[Program, PreferenceOrder, Program]:
    """(base program, order, base program plus preference facts)."""
    base = random_program(rng, **kw)
    order = random_order(rng, base)
    return base, order, with_order(base, order)


def random_dynamic_program(rng: random.Random, max_preferences: int = 2, **kw) -> Program:
    """A random program plus preference rules ``(n_i < n_j) :- body`` named ``m<k>``."""
    base = random_program(rng, **kw)
    names = base.names()
    atoms = sorted({a for a in base.atoms()}, key=lambda a: a.predicate)
    rules = list(base.rules)
    if len(names) < 2:
        return base
    for k in range(rng.randint(1, max_preferences)):
        lo, hi = rng.sample(names, 2)
        pos = tuple(Literal(rng.choice(atoms), rng.random() < 0.4) for _ in range(rng.randint(0, 1)))
        neg = tuple(Literal(rng.choice(atoms), rng.random() < 0.4) for _ in range(rng.randint(0, 1)))
        head = Literal(Atom("prec", (lo, hi)))
        rules.append(Rule(head, pos, neg, Term(f"m{k + 1}")))
    return Program(tuple(rules))
