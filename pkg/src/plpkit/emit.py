"""Text emitters for compiled programs and the ``nice`` answer-set filter.

Strong negation is spelled with a ``neg_`` prefix and made sound by one
consistency constraint ``false :- a, neg_a.`` per atom; every rule is
ground, so the name guards of a variable-compacted listing do not appear.
"""

from __future__ import annotations

import enum
from typing import Iterable

from .errors import ValidationError
from .model import (
    FRESH_PREFIX,
    INCONSISTENT,
    PREC,
    PRIME_SUFFIX,
    PRIMED_PREC,
    TAG_PREDICATES,
    Atom,
    Literal,
    LiteralSet,
    Program,
    Rule,
    Term,
    format_set,
)
from .transforms import Compiled


class Dialect(str, enum.Enum):
    INTERMEDIATE = "intermediate"
    DLV = "dlv"
    SMODELS = "smodels"


_HEADERS = {
    Dialect.INTERMEDIATE: "",
    Dialect.DLV: "% dlv input: strong negation encoded by neg_ atoms\n",
    Dialect.SMODELS: "% lparse/smodels input: strong negation encoded by neg_ atoms\n",
}

_PREFERENCE_FAMILY = (PREC, PRIMED_PREC)


def _fmt_term(t: Term, sep: str) -> str:
    return t.format(sep)


def _fmt_atom(a: Atom, sep: str, rename: dict[str, str]) -> str:
    pred = rename.get(a.predicate, a.predicate)
    if not a.args:
        return pred
    return f"{pred}({sep.join(_fmt_term(t, sep) for t in a.args)})"


def _fmt_lit(l: Literal, sep: str, rename: dict[str, str]) -> str:
    text = _fmt_atom(l.atom, sep, rename)
    return "neg_" + text if l.negated else text


def _fmt_rule(r: Rule, sep: str, false_kw: str, rename: dict[str, str]) -> str:
    body = [_fmt_lit(l, sep, rename) for l in r.pos]
    body += ["not " + _fmt_lit(l, sep, rename) for l in r.neg]
    if r.head is None:
        return f"{false_kw}:- {', '.join(body)}."
    head = _fmt_lit(r.head, sep, rename)
    if not body:
        return head + "."
    return f"{head} :- {', '.join(body)}."


def _is_tag(a: Atom) -> bool:
    return TAG_PREDICATES.get(a.predicate) == a.arity or a.predicate.startswith(FRESH_PREFIX)


def consistency_atoms(p: Program) -> list[Atom]:
    """Atoms needing a consistency constraint: ordinary atoms first, then
    preference atoms, each group in order of first occurrence."""
    seen: dict[Atom, None] = {}
    for r in p.rules:
        for a in r.atoms():
            if not _is_tag(a):
                seen.setdefault(a)
    plain = [a for a in seen if a.predicate not in _PREFERENCE_FAMILY]
    prefs = [a for a in seen if a.predicate in _PREFERENCE_FAMILY]
    return plain + prefs


def _fresh_renaming(p: Program) -> dict[str, str]:
    """Map the internal ``__cN`` atoms to identifiers legal in solver input."""
    taken = {a.predicate for a in p.atoms()}
    rename: dict[str, str] = {}
    counter = 0
    for pred in sorted(x for x in taken if x.startswith(FRESH_PREFIX)):
        while f"plp_aux{counter}" in taken:
            counter += 1
        rename[pred] = f"plp_aux{counter}"
        counter += 1
    return rename


def emit(p: Compiled | Program, dialect: Dialect | str = Dialect.INTERMEDIATE) -> str:
    """Render a ground program as solver text; deterministic for equal input."""
    d = Dialect(dialect)
    if isinstance(p, Compiled):
        program, names = p.program, p.names
    else:
        program, names = p, p.names()
    if not program.is_ground:
        raise ValidationError("only ground programs can be emitted")
    if d == Dialect.INTERMEDIATE:
        sep, false_kw, rename = ", ", "false ", {}
    else:
        sep, false_kw, rename = ",", "", _fresh_renaming(program)
    lines = [_fmt_rule(r, sep, false_kw, rename) for r in program.rules]
    lines += [_fmt_rule(Rule(Literal(Atom("name", (n,)))), sep, false_kw, rename) for n in names]
    for a in consistency_atoms(program):
        lines.append(_fmt_rule(Rule(None, (Literal(a), Literal(a, True))), sep, false_kw, rename))
    if not lines:
        return ""
    return _HEADERS[d] + "\n".join(lines) + "\n"


def hidden_predicate(pred: str, arity: int) -> bool:
    """Predicates the ``nice`` filter strips: tags, preferences, primed copies, fresh atoms."""
    if TAG_PREDICATES.get(pred) == arity:
        return True
    if pred in _PREFERENCE_FAMILY:
        return True
    return pred.endswith(PRIME_SUFFIX) or pred.startswith("__")


def nice_filter(x: LiteralSet, user_language: Iterable[str] | None = None) -> LiteralSet:
    """Keep only literals of the user's language (preference atoms excluded)."""
    if x is INCONSISTENT:
        return x
    allowed = None if user_language is None else set(user_language)
    return frozenset(
        l
        for l in x
        if not hidden_predicate(l.predicate, l.atom.arity)
        and (allowed is None or l.predicate in allowed)
    )


def format_answer_set(x: LiteralSet) -> str:
    """``{neg_a, b, newer(ucc,sma)}`` in canonical literal order."""
    return format_set(x, ",")
