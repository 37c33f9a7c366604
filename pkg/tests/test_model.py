import pytest

from conftest import lits, load
from plpkit.errors import OrderError, ValidationError
from plpkit.model import (
    INCONSISTENT,
    Atom,
    FreshAtoms,
    Literal,
    PreferenceOrder,
    Program,
    Rule,
    Term,
    complement,
    defeated,
    desugar_constraint,
    lit,
    order_of,
    static_order,
    validate_ordered,
    with_order,
)
from plpkit.parser import parse_program

a, b, c, p, q = (lit(x) for x in "abcpq")
neg_a = lit("a", negated=True)


def test_complement_flips_sign():
    assert complement(a) == neg_a
    assert complement(neg_a) == a
    pr = lit("prec", "n1", "n2")
    assert complement(pr) == lit("prec", "n1", "n2", negated=True)
    assert complement(pr).atom == pr.atom


def test_term_variables_and_ground():
    t = Term("f", (Term("X"), Term("a")))
    assert not t.is_ground
    assert [v.name for v in t.variables()] == ["X"]
    assert Term("_y").is_variable
    assert Term("f", (Term("a"),)).is_ground


def test_defeated():
    r2 = Rule(b, (neg_a,), (c,))
    assert defeated(r2, frozenset({neg_a, c}))
    assert not defeated(r2, frozenset({neg_a, b}))
    fact = Rule(p)
    assert not defeated(fact, frozenset({p, q}))
    assert not defeated(fact, INCONSISTENT)
    assert defeated(r2, INCONSISTENT)


def test_defeated_monotone():
    r = Rule(a, (), (b, c))
    small, big = frozenset({b}), frozenset({b, c, p})
    assert defeated(r, small) and defeated(r, big)
    assert not defeated(r, frozenset()) and defeated(r, frozenset({c}))


def test_desugar_constraint_shapes():
    c0 = desugar_constraint(Rule(None, (a,), (b,)), "__c0")
    assert c0 == Rule(lit("__c0"), (a,), (b, lit("__c0")))
    c1 = desugar_constraint(Rule(None, (p,)), "__c1")
    assert c1 == Rule(lit("__c1"), (p,), (lit("__c1"),))
    c2 = desugar_constraint(Rule(None, (), (q,)), "__c2")
    assert c2 == Rule(lit("__c2"), (), (q, lit("__c2")))


def test_desugar_constraint_rejects_collision_and_rules():
    prog = Program((Rule(Literal(Atom("__c0"))),))
    with pytest.raises(ValidationError):
        desugar_constraint(Rule(None, (a,)), "__c0", prog)
    with pytest.raises(ValidationError):
        desugar_constraint(Rule(a), "__c9")


def test_fresh_atoms_are_distinct_and_avoid_taken():
    fresh = FreshAtoms({"__c1"})
    made = [fresh().predicate for _ in range(3)]
    assert made == ["__c0", "__c2", "__c3"]


def test_empty_constraint_rejected():
    with pytest.raises(ValidationError):
        Rule(None)


def test_rule_body_deduplicated_in_order():
    r = Rule(a, (b, c, b), (p, p))
    assert r.pos == (b, c) and r.neg == (p,)


def test_validate_ordered_clean_program():
    assert validate_ordered(load("dynamic.lp")) == []


def test_validate_ordered_reports_problems():
    dup = Program((Rule(a, name=Term("n1")), Rule(b, name=Term("n1"))))
    kinds = [v.kind for v in validate_ordered(dup)]
    assert kinds == ["duplicate-name"]
    reserved = Program((Rule(lit("ok", "n1")),))
    assert [v.kind for v in validate_ordered(reserved)] == ["reserved-predicate"]
    dangling = Program((Rule(lit("prec", "n1", "n9"), name=Term("n1")),))
    assert [v.kind for v in validate_ordered(dangling)] == ["unknown-name"]


def test_strictify_closes_and_detects_cycles():
    n1, n2, n3 = Term("n1"), Term("n2"), Term("n3")
    order = PreferenceOrder({(n1, n2), (n2, n3)}).strictify()
    assert (n1, n3) in order
    assert order.is_strict_partial
    with pytest.raises(OrderError):
        PreferenceOrder({(n1, n2), (n2, n1)}).strictify()
    with pytest.raises(OrderError):
        PreferenceOrder({(n1, n1)}).strictify()


def test_static_order_split():
    base, order = static_order(load("birds.lp"))
    assert len(base) == 5
    assert order.pairs == {(Term("n2"), Term("n1"))}
    assert with_order(base, order).rules[-1].head == lit("prec", "n2", "n1")


def test_static_order_rejects_dynamic_programs():
    with pytest.raises(OrderError):
        static_order(load("dynamic.lp"))
    with pytest.raises(OrderError):
        static_order(parse_program("a :- [n1]. (n1 < n7)."))


def test_order_of_reads_positive_preferences():
    x = lits("a prec(n1,n2) neg_prec(n2,n1)")
    assert order_of(x).pairs == {(Term("n1"), Term("n2"))}
