"""Reader and printer for the plp surface syntax.

Accepted input::

    % comment
    neg a.                                  % strong negation: neg a, -a
    b :- name(n2), neg a, not c.            % weak negation: not c, ~c
    c :- [n3], not b.                       % [n3] is short for name(n3)
    (n3 < n2) :- not d.                     % prec(n3, n2): n2 is preferred
    false :- a, b.                          % constraint, also ':- a, b.'

With ``internal=True`` the reader also accepts the spelling produced by
:mod:`plpkit.emit`: ``neg_x`` stands for strong negation and reserved
predicates are allowed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .model import (
    PREC,
    Atom,
    Literal,
    Program,
    Rule,
    Term,
    reserved_predicate,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<arrow>:-)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*|\d+)
  | (?P<punct>[()\[\],.<\-~;|])
    """,
    re.VERBOSE,
)


class DisjunctionError(ParseError):
    """Disjunctive heads are outside the supported language."""


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, origin: str = "<string>") -> list[Token]:
    out: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, origin)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            out.append(Token(kind, chunk, line, pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str, origin: str, internal: bool):
        self.tokens = tokenize(text, origin)
        self.i = 0
        self.origin = origin
        self.internal = internal

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, msg: str, tok: Token | None = None, cls=ParseError) -> ParseError:
        t = tok or self.tok
        return cls(msg, t.line, t.col, self.origin)

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    # grammar

    def program(self) -> Program:
        rules: list[Rule] = []
        names: dict[Term, int] = {}
        while self.tok.kind != "eof":
            start = self.tok
            rule = self.rule()
            if rule.name is not None:
                if rule.name in names:
                    raise self.error(f"duplicate rule name {rule.name}", start)
                names[rule.name] = len(rules)
            rules.append(rule)
        return Program(tuple(rules))

    def rule(self) -> Rule:
        start = self.tok
        head: Literal | None = None
        if not self.at(":-"):
            if self.tok.kind == "ident" and self.tok.text == "false" and self.peek().text != "(":
                self.i += 1
            else:
                head = self.literal()
            if self.at(";") or self.at("|") or (self.tok.kind == "ident" and self.tok.text == "v"):
                raise self.error("disjunctive heads are not supported", cls=DisjunctionError)
        pos: list[Literal] = []
        neg: list[Literal] = []
        name: Term | None = None
        if self.at(":-"):
            self.i += 1
            while True:
                elem = self.tok
                kind, value = self.body_element()
                if kind == "name":
                    if name is not None:
                        raise self.error("rule named twice", elem)
                    name = value
                elif kind == "pos":
                    pos.append(value)
                else:
                    neg.append(value)
                if self.at(","):
                    self.i += 1
                    continue
                break
        self.expect(".")
        if head is None and not pos and not neg:
            raise self.error("constraint with an empty body", start)
        return Rule(head, tuple(pos), tuple(neg), name)

    def body_element(self):
        t = self.tok
        if t.kind == "ident" and t.text == "not" or t.text == "~":
            self.i += 1
            return "neg", self.literal()
        if t.text == "[":
            self.i += 1
            term = self.term()
            self.expect("]")
            return "name", term
        if t.kind == "ident" and t.text == "name" and self.peek().text == "(":
            self.i += 2
            term = self.term()
            self.expect(")")
            return "name", term
        return "pos", self.literal()

    def literal(self) -> Literal:
        negated = False
        if (self.tok.kind == "ident" and self.tok.text == "neg") or self.tok.text == "-":
            negated = True
            self.i += 1
        start = self.tok
        atom = self.atom()
        if self.internal and atom.predicate.startswith("neg_") and not negated:
            atom = Atom(atom.predicate[4:], atom.args)
            negated = True
        if not self.internal and reserved_predicate(atom.predicate, atom.arity):
            raise self.error(f"reserved predicate {atom.predicate}/{atom.arity}", start)
        return Literal(atom, negated)

    def atom(self) -> Atom:
        if self.at("("):
            self.i += 1
            left = self.term()
            self.expect("<")
            right = self.term()
            self.expect(")")
            return Atom(PREC, (left, right))
        t = self.tok
        if t.kind != "ident" or t.text in ("not", "neg") or t.text[0].isupper() or t.text[0].isdigit():
            raise self.error(f"expected an atom, found {t.text or 'end of input'!r}")
        if t.text[0] == "_" and not (self.internal and t.text.startswith("__")):
            raise self.error(f"expected an atom, found variable {t.text!r}")
        self.i += 1
        args: tuple[Term, ...] = ()
        if self.at("("):
            args = self.arguments()
        return Atom(t.text, args)

    def arguments(self) -> tuple[Term, ...]:
        self.expect("(")
        args = [self.term()]
        while self.at(","):
            self.i += 1
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def term(self) -> Term:
        t = self.tok
        if t.kind != "ident":
            raise self.error(f"expected a term, found {t.text or 'end of input'!r}")
        self.i += 1
        if self.at("(") and not (t.text[0].isupper() or t.text[0] == "_"):
            return Term(t.text, self.arguments())
        return Term(t.text)


def parse_program(text: str, origin: str = "<string>", internal: bool = False) -> Program:
    """Parse plp source text into a :class:`Program`.

    Raises :class:`ParseError` (with line and column) on malformed input,
    use of reserved predicates, duplicate rule names or rules named twice,
    and :class:`DisjunctionError` on disjunctive heads.
    """
    return _Parser(text, origin, internal).program()


def parse_file(path, internal: bool = False) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse_program(fh.read(), str(path), internal)


def parse_literals(text: str, origin: str = "<string>") -> list[Literal]:
    """Whitespace- or comma-separated literals in internal ``neg_`` spelling.

    Braces are ignored, so the output of ``solve`` can be fed back in.
    """
    cleaned = text.replace("{", " ").replace("}", " ")
    p = _Parser(cleaned, origin, internal=True)
    out: list[Literal] = []
    while p.tok.kind != "eof":
        out.append(p.literal())
        if p.at(",") or p.at("."):
            p.i += 1
    return out


# printing


def format_literal(l: Literal) -> str:
    a = l.atom
    if a.is_preference:
        text = f"({a.args[0]} < {a.args[1]})"
    else:
        text = a.format()
    return "neg " + text if l.negated else text


def format_rule(r: Rule) -> str:
    head = "false" if r.head is None else format_literal(r.head)
    body = []
    if r.name is not None:
        body.append(f"name({r.name})")
    body.extend(format_literal(l) for l in r.pos)
    body.extend("not " + format_literal(l) for l in r.neg)
    if not body:
        return head + "."
    return f"{head} :- {', '.join(body)}."


def format_program(p: Program) -> str:
    """Canonical surface text, one rule per line; parses back to ``p``."""
    return "".join(format_rule(r) + "\n" for r in p.rules)
