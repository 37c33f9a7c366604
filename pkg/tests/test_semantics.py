import pytest

from conftest import lits, load, sets
from plpkit.errors import ResourceLimitError
from plpkit.model import INCONSISTENT, Program, lit
from plpkit.parser import parse_program
from plpkit.semantics import (
    answer_sets_bruteforce,
    generating_indices,
    generating_rules,
    grounded_enumeration,
    is_answer_set,
    is_grounded,
    reduct,
    stage_of,
    th_closure,
    tp_trace,
)

EMPTY = Program(())


def birds_base():
    return Program(load("birds.lp").rules[:5])


def test_reduct_motivating():
    p = load("intro.lp")
    r = reduct(Program(p.rules[:3]), lits("neg_a b"))
    assert [str(x.without_name()) for x in r.rules] == ["neg a.", "b :- neg a."]


def test_reduct_birds_first_set():
    r = reduct(birds_base(), lits("p b w neg_f"))
    assert {str(x.without_name()) for x in r.rules} == {"neg f :- p.", "w :- b.", "b :- p.", "p."}


def test_reduct_basic_program_unchanged():
    p = parse_program("a. b :- a.")
    assert reduct(p, lits("a")).rules == p.rules


def test_reduct_against_inconsistent_keeps_basic_rules_only():
    p = parse_program("a. b :- not c. :- a.")
    assert [str(r) for r in reduct(p, INCONSISTENT).rules] == ["a."]


def test_th_closure():
    assert th_closure(reduct(birds_base(), lits("p b w neg_f"))) == lits("p b neg_f w")
    assert th_closure(parse_program("p. neg p.")) is INCONSISTENT
    assert th_closure(EMPTY) == frozenset()


def test_th_closure_constraint_fires():
    assert th_closure(parse_program("a. :- a.")) is INCONSISTENT
    assert th_closure(parse_program("a. :- b.")) == lits("a")


def test_trace_birds_second_set():
    t = tp_trace(reduct(birds_base(), lits("p b w f")))
    assert list(t.stages) == [lits("p"), lits("p b"), lits("p b w"), lits("p b w f")]
    assert stage_of(t, lit("f")) == 4
    assert stage_of(t, lit("p")) == 1
    assert stage_of(t, lit("q")) is None


def test_trace_trivial():
    assert list(tp_trace(EMPTY).stages) == [frozenset()]
    assert list(tp_trace(parse_program("p. q :- p.")).stages) == [lits("p"), lits("p q")]


def test_trace_switches_to_inconsistent():
    t = tp_trace(parse_program("p. neg p :- p."))
    assert t.stages[-1] is INCONSISTENT
    assert list(t.stages[:2]) == [lits("p"), lits("p neg_p")]


def test_trace_final_is_closure():
    b = reduct(birds_base(), lits("p b w f"))
    assert tp_trace(b).final == th_closure(b)


def test_is_answer_set():
    p = Program(load("intro.lp").rules[:3])
    assert is_answer_set(p, lits("neg_a b"))
    assert not is_answer_set(p, lits("neg_a"))
    assert is_answer_set(EMPTY, frozenset())


def test_bruteforce_examples():
    assert set(answer_sets_bruteforce(Program(load("intro.lp").rules[:3]))) == sets("neg_a b", "neg_a c")
    three = Program(load("three.lp").rules[:4])
    assert set(answer_sets_bruteforce(three)) == sets("a b", "neg_a b")
    assert answer_sets_bruteforce(load("contradiction.lp")) == [INCONSISTENT]


def test_bruteforce_bound():
    p = parse_program(" ".join(f"a{i} :- not b{i}. b{i} :- not a{i}." for i in range(3)))
    with pytest.raises(ResourceLimitError):
        answer_sets_bruteforce(p, bound=5)
    assert len(answer_sets_bruteforce(p, bound=6)) == 8


def test_generating_rules_birds():
    p = birds_base()
    assert generating_indices(p, lits("p b w neg_f")) == [0, 1, 3, 4]
    assert generating_indices(p, lits("p b w f")) == [1, 2, 3, 4]
    assert [str(r.name) for r in generating_rules(p, lits("p b w f"))] == ["n2", "n3", "n4", "n5"]


def test_generating_rules_at_empty_set():
    p = parse_program("a. b :- c. d :- not e. f :- not a.")
    assert generating_indices(p, frozenset()) == [0, 2, 3]


def test_grounded_enumeration_exists_for_answer_sets():
    p = birds_base()
    for x in answer_sets_bruteforce(p):
        order = grounded_enumeration(p, x)
        assert order is not None and is_grounded(p.rules, order)
        assert sorted(order) == generating_indices(p, x)


def test_generating_heads_belong_to_answer_set():
    p = Program(load("three.lp").rules[:4])
    for x in answer_sets_bruteforce(p):
        assert all(r.head in x for r in generating_rules(p, x))
