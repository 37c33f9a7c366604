"""Naive instantiation over the Herbrand constants, and term flattening.

Grounding replaces every variable of a rule by every constant of the
program (full cross product, no safety analysis); flattening then turns
compound ground terms such as ``lex_posterior(ucc,sma)`` into constants
such as ``lex_posterior_ucc_sma``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import GroundingError, ResourceLimitError, ValidationError
from .model import Atom, Literal, Program, Rule, Term

DEFAULT_MAX_INSTANTIATIONS = 100_000


@dataclass(frozen=True)
class GroundingConfig:
    max_instantiations: int = DEFAULT_MAX_INSTANTIATIONS
    flatten: bool = True

    def __post_init__(self):
        if self.max_instantiations <= 0:
            raise ValueError("max_instantiations must be positive")


def herbrand_constants(p: Program) -> list[Term]:
    """Constants occurring in atoms and rule names, sorted by spelling."""
    seen: set[Term] = set()
    for r in p.rules:
        for t in r.terms():
            seen.update(t.constants())
    return sorted(seen, key=lambda t: t.name)


def _substitute_rule(r: Rule, sub: dict[Term, Term]) -> Rule:
    def lit(l: Literal) -> Literal:
        return Literal(l.atom.substitute(sub), l.negated)

    return Rule(
        None if r.head is None else lit(r.head),
        tuple(lit(l) for l in r.pos),
        tuple(lit(l) for l in r.neg),
        None if r.name is None else r.name.substitute(sub),
    )


def instantiate(p: Program, cfg: GroundingConfig | int | None = None) -> Program:
    """Replace each rule by all its ground instances.

    Instances appear in rule order, then in lexicographic order of the
    substitution (variables in order of first occurrence).  Ground
    programs are returned unchanged.
    """
    if isinstance(cfg, int):
        cfg = GroundingConfig(max_instantiations=cfg)
    cfg = cfg or GroundingConfig()
    if p.is_ground:
        return p
    constants = herbrand_constants(p)
    out: list[Rule] = []
    for r in p.rules:
        variables = r.variables()
        if not variables:
            out.append(r)
            continue
        if not constants:
            raise GroundingError(f"no constants to instantiate variables of {r}")
        count = len(constants) ** len(variables)
        if len(out) + count > cfg.max_instantiations:
            raise ResourceLimitError(
                f"grounding exceeds {cfg.max_instantiations} rules"
            )
        for values in itertools.product(constants, repeat=len(variables)):
            out.append(_substitute_rule(r, dict(zip(variables, values))))
    ground = Program(tuple(out))
    try:
        ground.naming()
    except ValidationError as exc:
        raise GroundingError(f"name collision after grounding: {exc}") from exc
    return ground


def flat_name(t: Term) -> str:
    """``f(a, g(b))`` -> ``f_a_g_b``."""
    if not t.args:
        return t.name
    return "_".join([t.name] + [flat_name(a) for a in t.args])


def flatten_terms(p: Program, mapping: dict[Term, Term] | None = None) -> Program:
    """Replace compound ground terms by underscore-joined constants.

    If ``mapping`` is given it receives compound term -> new constant.
    A generated constant that collides with an existing constant or with
    the image of another term raises :class:`GroundingError`.
    """
    if not p.is_ground:
        raise GroundingError("flattening requires a ground program")
    table: dict[Term, Term] = {} if mapping is None else mapping
    existing: set[str] = set()
    compounds: set[Term] = set()

    def scan(t: Term):
        if t.args:
            compounds.add(t)
            for a in t.args:
                scan(a)
        else:
            existing.add(t.name)

    for r in p.rules:
        for t in r.terms():
            scan(t)
    if not compounds:
        return p
    images: dict[str, Term] = {}
    for t in sorted(compounds, key=str):
        flat = flat_name(t)
        if flat in existing or flat in images:
            raise GroundingError(f"flattening {t} to {flat} collides with an existing symbol")
        images[flat] = t
        table[t] = Term(flat)

    def term(t: Term) -> Term:
        return table.get(t, t)

    def lit(l: Literal) -> Literal:
        if not any(a.args for a in l.atom.args):
            return l
        return Literal(Atom(l.atom.predicate, tuple(term(a) for a in l.atom.args)), l.negated)

    rules = [
        Rule(
            None if r.head is None else lit(r.head),
            tuple(lit(l) for l in r.pos),
            tuple(lit(l) for l in r.neg),
            None if r.name is None else term(r.name),
        )
        for r in p.rules
    ]
    return Program(tuple(rules))


def ground(p: Program, cfg: GroundingConfig | None = None) -> Program:
    """Instantiate, then flatten if the config asks for it."""
    cfg = cfg or GroundingConfig()
    g = instantiate(p, cfg)
    return flatten_terms(g) if cfg.flatten else g
