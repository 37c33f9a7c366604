"""Data model for ordered extended logic programs.

Terms, atoms and literals are immutable and hashable; rules keep their
positive and weakly negated bodies as separate tuples.  A program is a
tuple of rules whose optional names induce the (injective) naming
function.  Preference atoms use the reserved predicate ``prec/2``:
``prec(n, m)`` reads "the rule named ``m`` has priority over ``n``".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .errors import OrderError, ValidationError

PREC = "prec"
PRIMED_PREC = "precp"
PRIME_SUFFIX = "__p"
FRESH_PREFIX = "__c"

# predicates the compiler introduces; user programs may not define them
TAG_PREDICATES = {"ap": 1, "bl": 1, "ok": 1, "rdy": 2, "name": 1}
RESERVED_PREDICATES = {**TAG_PREDICATES, "neg_prec": 2, PRIMED_PREC: 2}


@dataclass(frozen=True)
class Term:
    """A constant, variable or compound term.

    Variables are spelled with a leading uppercase letter or underscore.
    """

    name: str
    args: tuple[Term, ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.name, self.args)))

    def __hash__(self):
        return self._hash

    @property
    def is_variable(self) -> bool:
        return not self.args and (self.name[0].isupper() or self.name[0] == "_")

    @property
    def is_compound(self) -> bool:
        return bool(self.args)

    @property
    def is_ground(self) -> bool:
        if self.is_variable:
            return False
        return all(a.is_ground for a in self.args)

    def variables(self) -> Iterator[Term]:
        if self.is_variable:
            yield self
        for a in self.args:
            yield from a.variables()

    def constants(self) -> Iterator[Term]:
        if not self.args:
            if not self.is_variable:
                yield self
            return
        for a in self.args:
            yield from a.constants()

    def substitute(self, sub: dict[Term, Term]) -> Term:
        if self.is_variable:
            return sub.get(self, self)
        if not self.args:
            return self
        return Term(self.name, tuple(a.substitute(sub) for a in self.args))

    def format(self, sep: str = ",") -> str:
        if not self.args:
            return self.name
        return f"{self.name}({sep.join(a.format(sep) for a in self.args)})"

    def __str__(self):
        return self.format()


def const(name: str) -> Term:
    return Term(name)


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.predicate, self.args)))

    def __hash__(self):
        return self._hash

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_preference(self) -> bool:
        return self.predicate == PREC and len(self.args) == 2

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.args)

    def substitute(self, sub: dict[Term, Term]) -> Atom:
        if not self.args:
            return self
        return Atom(self.predicate, tuple(a.substitute(sub) for a in self.args))

    def format(self, sep: str = ",") -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({sep.join(a.format(sep) for a in self.args)})"

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class Literal:
    """An atom or its strong negation."""

    atom: Atom
    negated: bool = False
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.atom, self.negated)))

    def __hash__(self):
        return self._hash

    @property
    def predicate(self) -> str:
        return self.atom.predicate

    def format(self, sep: str = ",") -> str:
        """Internal spelling: strong negation as a ``neg_`` prefix."""
        text = self.atom.format(sep)
        return "neg_" + text if self.negated else text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Literal({self.format()})"

    def sort_key(self):
        return (self.atom.format(), self.negated)


def lit(predicate: str, *args: str | Term, negated: bool = False) -> Literal:
    """Shorthand used by tests and the transforms: ``lit("prec", "n1", "n2")``."""
    terms = tuple(a if isinstance(a, Term) else Term(a) for a in args)
    return Literal(Atom(predicate, terms), negated)


def complement(l: Literal) -> Literal:
    return Literal(l.atom, not l.negated)


@dataclass(frozen=True)
class Rule:
    """``head <- pos, not neg``; a missing head makes an integrity constraint."""

    head: Literal | None
    pos: tuple[Literal, ...] = ()
    neg: tuple[Literal, ...] = ()
    name: Term | None = None

    def __post_init__(self):
        object.__setattr__(self, "pos", tuple(dict.fromkeys(self.pos)))
        object.__setattr__(self, "neg", tuple(dict.fromkeys(self.neg)))
        if self.head is None and not self.pos and not self.neg:
            raise ValidationError("integrity constraint with an empty body")

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    @property
    def is_fact(self) -> bool:
        return not self.pos and not self.neg

    @property
    def is_basic(self) -> bool:
        return not self.neg

    @property
    def prerequisite_free(self) -> bool:
        return not self.pos

    @property
    def body_size(self) -> int:
        return len(self.pos) + len(self.neg)

    def literals(self) -> Iterator[Literal]:
        if self.head is not None:
            yield self.head
        yield from self.pos
        yield from self.neg

    def atoms(self) -> Iterator[Atom]:
        for l in self.literals():
            yield l.atom

    def terms(self) -> Iterator[Term]:
        for a in self.atoms():
            yield from a.args
        if self.name is not None:
            yield self.name

    def variables(self) -> list[Term]:
        seen: dict[Term, None] = {}
        for t in self.terms():
            for v in t.variables():
                seen.setdefault(v)
        return list(seen)

    @property
    def is_ground(self) -> bool:
        return not self.variables()

    def basic(self) -> Rule:
        """The rule with its weakly negated literals deleted."""
        return Rule(self.head, self.pos)

    def without_name(self) -> Rule:
        return Rule(self.head, self.pos, self.neg) if self.name is not None else self

    def __str__(self):
        from .parser import format_rule

        return format_rule(self)


class _Inconsistent:
    """The inconsistent closure: the set of all literals of the language."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Lit"

    def __reduce__(self):
        return (_Inconsistent, ())


INCONSISTENT = _Inconsistent()

# either a consistent frozenset of literals or INCONSISTENT
LiteralSet = Union[frozenset, _Inconsistent]


def is_consistent(lits: Iterable[Literal]) -> bool:
    s = set(lits)
    return not any(l.negated and Literal(l.atom) in s for l in s)


def close(lits: Iterable[Literal]) -> LiteralSet:
    """Logical closure of a finite set: itself if consistent, else Lit."""
    s = frozenset(lits)
    return s if is_consistent(s) else INCONSISTENT


def canonical(x: LiteralSet) -> list[Literal] | _Inconsistent:
    if x is INCONSISTENT:
        return x
    return sorted(x, key=Literal.sort_key)


def format_set(x: LiteralSet, sep: str = ",") -> str:
    if x is INCONSISTENT:
        return "Lit"
    return "{" + ", ".join(l.format(sep) for l in canonical(x)) + "}"


def set_key(x: LiteralSet):
    """Sort key giving answer sets a canonical order."""
    if x is INCONSISTENT:
        return (1, ())
    return (0, tuple(l.sort_key() for l in canonical(x)))


def defeated(r: Rule, x: LiteralSet) -> bool:
    if x is INCONSISTENT:
        return bool(r.neg)
    return any(l in x for l in r.neg)


@dataclass(frozen=True)
class Program:
    """A finite list of (optionally named) rules.

    Statically ordered programs are the special case where ``prec`` atoms
    occur only as facts; :func:`static_order` splits such a program into
    its preference-free part and a :class:`PreferenceOrder`.
    """

    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __getitem__(self, i):
        return self.rules[i]

    def __add__(self, other: Program | Sequence[Rule]) -> Program:
        return Program(self.rules + tuple(other))

    @property
    def is_ground(self) -> bool:
        return all(r.is_ground for r in self.rules)

    def named(self) -> list[tuple[int, Rule]]:
        return [(i, r) for i, r in enumerate(self.rules) if r.name is not None]

    def names(self) -> list[Term]:
        return [r.name for r in self.rules if r.name is not None]

    def naming(self) -> dict[Term, int]:
        """Name -> rule index; raises on a non-injective naming."""
        out: dict[Term, int] = {}
        for i, r in enumerate(self.rules):
            if r.name is None:
                continue
            if r.name in out:
                raise ValidationError(f"duplicate rule name {r.name}")
            out[r.name] = i
        return out

    def atoms(self) -> list[Atom]:
        seen: dict[Atom, None] = {}
        for r in self.rules:
            for a in r.atoms():
                seen.setdefault(a)
        return list(seen)

    def predicates(self) -> set[str]:
        return {a.predicate for a in self.atoms()}

    def head_literals(self) -> list[Literal]:
        seen: dict[Literal, None] = {}
        for r in self.rules:
            if r.head is not None:
                seen.setdefault(r.head)
        return list(seen)


# alias kept for readability where the naming matters
OrderedProgram = Program


def as_rules(p: Program | Sequence[Rule]) -> tuple[Rule, ...]:
    return p.rules if isinstance(p, Program) else tuple(p)


@dataclass(frozen=True)
class PreferenceOrder:
    """Pairs ``(n, m)`` meaning ``n < m``: the rule named ``m`` is preferred."""

    pairs: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return pair in self.pairs

    def precedes(self, n: Term, m: Term) -> bool:
        return (n, m) in self.pairs

    def above(self, n: Term) -> list[Term]:
        """Names strictly preferred to ``n``."""
        return [m for (a, m) in self.pairs if a == n]

    def names(self) -> set[Term]:
        return {t for pair in self.pairs for t in pair}

    def strictify(self) -> PreferenceOrder:
        """Transitive closure; raises :class:`OrderError` unless it is irreflexive."""
        succ: dict[Term, set[Term]] = {}
        for a, b in self.pairs:
            succ.setdefault(a, set()).add(b)
        closed = set()
        for a in succ:
            stack, seen = list(succ[a]), set()
            while stack:
                b = stack.pop()
                if b in seen:
                    continue
                seen.add(b)
                stack.extend(succ.get(b, ()))
            if a in seen:
                raise OrderError(f"preference order is cyclic through {a}")
            closed.update((a, b) for b in seen)
        return PreferenceOrder(frozenset(closed))

    @property
    def is_strict_partial(self) -> bool:
        try:
            return self.strictify().pairs == self.pairs
        except OrderError:
            return False

    def restrict(self, names: Iterable[Term]) -> PreferenceOrder:
        keep = set(names)
        return PreferenceOrder(frozenset((a, b) for a, b in self.pairs if a in keep and b in keep))


def order_of(x: LiteralSet) -> PreferenceOrder:
    """The relation ``<_X`` read off the positive ``prec`` atoms of ``x``."""
    if x is INCONSISTENT:
        raise OrderError("no preference relation for the inconsistent closure")
    return PreferenceOrder(
        frozenset(
            (l.atom.args[0], l.atom.args[1])
            for l in x
            if not l.negated and l.atom.is_preference
        )
    )


def static_order(p: Program) -> tuple[Program, PreferenceOrder]:
    """Split a statically ordered program into its rules and its order.

    Preference facts are removed; any other occurrence of a ``prec`` atom
    makes the program dynamically ordered and raises :class:`OrderError`.
    The returned order is transitively closed.
    """
    base, pairs = [], set()
    for r in p.rules:
        if r.head is not None and r.head.atom.is_preference and r.is_fact and not r.head.negated:
            pairs.add(tuple(r.head.atom.args))
            continue
        if any(a.is_preference for a in r.atoms()):
            raise OrderError(f"not statically ordered: preference atom in rule {r}")
        base.append(r)
    base_program = Program(tuple(base))
    names = set(base_program.naming())
    for a, b in pairs:
        for t in (a, b):
            if t not in names:
                raise OrderError(f"preference refers to unknown rule name {t}")
    return base_program, PreferenceOrder(frozenset(pairs)).strictify()


def with_order(p: Program, order: PreferenceOrder) -> Program:
    """``p`` plus one unnamed preference fact per pair of ``order``."""
    facts = [
        Rule(Literal(Atom(PREC, (a, b))))
        for a, b in sorted(order.pairs, key=lambda ab: (str(ab[0]), str(ab[1])))
    ]
    return Program(p.rules + tuple(facts))


def is_statically_ordered(p: Program) -> bool:
    try:
        static_order(p)
    except OrderError:
        return False
    return True


class FreshAtoms:
    """Deterministic ``__c0, __c1, ...`` atoms avoiding a set of taken predicates."""

    def __init__(self, taken: Iterable[str] = (), prefix: str = FRESH_PREFIX):
        self.taken = set(taken)
        self.prefix = prefix
        self.counter = 0

    def __call__(self) -> Atom:
        while True:
            name = f"{self.prefix}{self.counter}"
            self.counter += 1
            if name not in self.taken:
                self.taken.add(name)
                return Atom(name)


def desugar_constraint(r: Rule, fresh: Atom | str, program: Program | None = None) -> Rule:
    """Rewrite ``<- body`` as ``p <- body, not p`` for an atom ``p`` new to the program."""
    if not r.is_constraint:
        raise ValidationError(f"not an integrity constraint: {r}")
    atom = fresh if isinstance(fresh, Atom) else Atom(fresh)
    used = set(r.atoms())
    if program is not None:
        used.update(program.atoms())
    if any(a.predicate == atom.predicate for a in used):
        raise ValidationError(f"fresh atom {atom} already occurs in the program")
    p = Literal(atom)
    return Rule(p, r.pos, r.neg + (p,), r.name)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str


def reserved_predicate(pred: str, arity: int) -> bool:
    if RESERVED_PREDICATES.get(pred) == arity:
        return True
    return pred.startswith("neg_") or pred.endswith(PRIME_SUFFIX) or pred.startswith("__")


def validate_ordered(p: Program) -> list[Violation]:
    """Report duplicate names, dangling preference names and reserved predicates."""
    out: list[Violation] = []
    names: set[Term] = set()
    for r in p.rules:
        if r.name is None:
            continue
        if r.name in names:
            out.append(Violation("duplicate-name", f"rule name {r.name} used twice"))
        names.add(r.name)
    ground = p.is_ground
    for r in p.rules:
        for a in r.atoms():
            if reserved_predicate(a.predicate, a.arity):
                out.append(Violation("reserved-predicate", f"{a.predicate}/{a.arity} is reserved (in {r})"))
            if a.is_preference and ground:
                for t in a.args:
                    if t not in names:
                        out.append(Violation("unknown-name", f"{a} refers to unknown rule name {t}"))
    return out


def check_ordered(p: Program) -> None:
    problems = validate_ordered(p)
    if problems:
        raise ValidationError("; ".join(v.message for v in problems))
