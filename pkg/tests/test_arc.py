import pytest

from fixprop.arc import (ac3, arc_comm_set, comm_policy, hyper_arc, is_hyper_arc_consistent,
                         make_pi_functions)
from fixprop.exceptions import ArityError, ConfigurationError
from fixprop.iterate import ScriptedSelect, UpdatePolicy
from fixprop.model import Csp
from fixprop.oracle import chaotic_fixpoint, check_closure, check_commute, enumerate_solutions
from fixprop.textio import parse_csp

FIXED_CROSSING_ORDER = [(1, 2), (2, 1), (1, 3), (3, 1), (4, 2), (2, 4), (4, 5), (5, 4), (4, 2),
                        (2, 4), (7, 2), (2, 7), (7, 5), (5, 7), (8, 2), (2, 8), (8, 6), (6, 8),
                        (8, 2), (2, 8)]


def crossing(arc):
    return (arc.source + 1, arc.target + 1)


def test_make_pi_functions_counts(crossword):
    one = Csp.build({"x": "ab", "y": "c"}, [(("x", "y"), [("a", "c")])])
    assert len(make_pi_functions(one)) == 2
    mixed = Csp.build({"x": "a", "y": "b", "z": "c"},
                      [(("x", "y", "z"), [("a", "b", "c")]), (("x", "z"), [("a", "c")])])
    assert len(make_pi_functions(mixed)) == 5
    assert len(make_pi_functions(crossword)) == 24


def test_pi_functions_are_closures(example1, shared_variable):
    for p in (example1, shared_variable):
        for f in make_pi_functions(p):
            assert check_closure(f, p.domains)


def test_hyper_arc_fixpoint_inputs():
    p = Csp.build({"x": "ab", "y": "cd"}, [(("x", "y"), [("a", "c"), ("b", "d")])])
    q, _ = hyper_arc(p, verify=True)
    assert q == p and is_hyper_arc_consistent(q)


def test_hyper_arc_example1(example1):
    q, _ = hyper_arc(example1, verify=True)
    fs = make_pi_functions(example1)
    assert q.domains == chaotic_fixpoint(fs, example1.domains).components
    assert q.domains == (frozenset(), frozenset())


def test_hyper_arc_empty_constraint():
    p = parse_csp("var x in {a, b}\nvar y in {c}\nvar z in {e}\ncon on (x, y) {}\n")
    q, _ = hyper_arc(p)
    assert q.domains[:2] == (frozenset(), frozenset()) and q.domains[2] == {"e"}


def test_hyper_arc_ternary():
    p = Csp.build({"x": "ab", "y": "ab", "z": "ab"},
                  [(("x", "y", "z"), [("a", "a", "b"), ("b", "a", "a")]), (("x", "z"), [("a", "b")])])
    q, _ = hyper_arc(p, verify=True)
    assert q.domains == ({"a"}, {"a"}, {"b"})
    assert q.domains == chaotic_fixpoint(make_pi_functions(p), p.domains).components


def test_arc_comm_sets(example1, shared_variable):
    f1, f2, g1, g2 = make_pi_functions(example1)  # pi1/pi2 of C1, then of C2
    fs = (f1, f2, g1, g2)
    assert f2 in arc_comm_set(f1, fs) and f1 in arc_comm_set(f2, fs)
    assert g2 not in arc_comm_set(f1, fs)
    assert g1 in arc_comm_set(f1, fs)  # same output variable x
    hs = make_pi_functions(shared_variable)
    c1_pi1, _, c2_pi1, c2_pi2 = hs
    assert c2_pi1 in arc_comm_set(c1_pi1, hs) and c2_pi2 not in arc_comm_set(c1_pi1, hs)


def test_comm_sets_really_commute(example1, shared_variable, crossword):
    for p in (example1, shared_variable):
        fs = make_pi_functions(p)
        for f in fs:
            for g in arc_comm_set(f, fs):
                assert check_commute(f, g, p.domains)


def test_policies_agree(random_suite):
    for p in random_suite[:150]:
        results = {hyper_arc(p, policy=mode, verify=True)[0]
                   for mode in ("plain", "idempotent", "commutativity", "both")}
        assert len(results) == 1


def test_explicit_policy_object(example1):
    fs = make_pi_functions(example1)
    assert hyper_arc(example1, policy=UpdatePolicy("plain"))[0].domains == (frozenset(),) * 2
    with pytest.raises(ConfigurationError):
        hyper_arc(example1, policy=comm_policy(fs))  # built for other function objects


def test_ac3_crossword(crossword):
    q, _ = ac3(crossword, verify=True)
    assert all(len(d) == 1 for d in q.domains)
    (sol,) = enumerate_solutions(crossword)
    assert tuple(next(iter(d)) for d in q.domains) == sol


def test_ac3_crossword_fixed_crossing_order(crossword):
    select = ScriptedSelect(FIXED_CROSSING_ORDER, key=crossing)
    q, _ = ac3(crossword, select=select)
    assert q == ac3(crossword)[0]
    # the crossings (3,4), (3,7), ... are missing from the listed order
    assert select.skipped == []


def test_ac3_already_consistent():
    p = Csp.build({"x": "ab", "y": "cd"}, [(("x", "y"), [("a", "c"), ("b", "d")])])
    q, stats = ac3(p)
    assert q == p and stats.additions == stats.seeded == 2


def test_ac3_matches_hyper_arc(random_suite):
    for p in random_suite:
        assert ac3(p)[0] == hyper_arc(p)[0]


def test_ac3_rejects_ternary():
    p = Csp.build({"x": "a", "y": "b", "z": "c"}, [(("x", "y", "z"), [("a", "b", "c")])])
    with pytest.raises(ArityError):
        ac3(p)
