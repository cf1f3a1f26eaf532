import itertools
import random

import pytest

from fixprop.exceptions import StandardizationError
from fixprop.model import Csp, compose, standardize, transpose
from fixprop.oracle import (chaotic_fixpoint, check_closure, check_commute,
                            random_standardized_csp)
from fixprop.path import (apply_path_function, is_path_consistent,
                          is_path_consistent_subsequence, make_path_functions, path,
                          path_comm_set, pc2, relations_of)
from fixprop.textio import parse_csp


def universal(n, atoms="ab"):
    return standardize(Csp.build({f"x{i + 1}": atoms for i in range(n)}))


def test_function_counts():
    assert [len(make_path_functions(universal(n))) for n in (2, 3, 4, 5)] == [0, 3, 12, 30]


def test_requires_standardized(example1):
    with pytest.raises(StandardizationError):
        make_path_functions(example1)


def test_apply_path_function():
    P, Q, R = {("a", "b")}, {("a", "c")}, {("b", "c")}
    assert apply_path_function("reduce_xy_via_z", P, Q, R)[0] == {("a", "b")}
    assert apply_path_function("reduce_xy_via_z", P, set(), R)[0] == frozenset()
    big = {("a", "b"), ("a", "c")}
    assert apply_path_function("reduce_xz_via_y", P, big, R)[1] == {("a", "c")}
    assert apply_path_function("reduce_yz_via_x", P, Q, {("b", "c"), ("c", "c")})[2] == R


def test_labels():
    labels = [f.label for f in make_path_functions(universal(3))]
    assert labels == ["f^x3_{x1,x2}", "f^x2_{x1,x3}", "f^x1_{x2,x3}"]


def test_closures_on_two_atoms():
    p = universal(3)
    for f in make_path_functions(p):
        assert check_closure(f, relations_of(p).universes)


def test_comm_set_sizes():
    for m in (3, 4, 5):
        fs = make_path_functions(universal(m, "a"))
        assert {len(path_comm_set(f, fs)) for f in fs} == {m - 3}
    fs = make_path_functions(universal(4, "a"))
    for f, g in itertools.combinations(fs, 2):
        if f.triple == g.triple:
            assert g not in path_comm_set(f, fs)


def test_comm_pairs_commute_exhaustively():
    # uneven domains keep the joint state space small enough to enumerate
    p = standardize(Csp.build({"x": "ab", "y": "a", "z": "a", "u": "ab"}))
    universes = relations_of(p).universes
    fs = make_path_functions(p)
    for f in fs:
        for g in path_comm_set(f, fs):
            report = check_commute(f, g, universes)
            assert report and report.exhaustive


def test_universal_is_fixpoint():
    p = universal(3)
    q, _ = path(p, verify=True)
    assert q == p and is_path_consistent(q)


def test_triangle():
    p = parse_csp("var x in {a}\nvar y in {b}\nvar z in {c}\n"
                  "con on (x, y) {(a, b)}\ncon on (x, z) {(a, c)}\ncon on (y, z) {}\n")
    q, _ = path(p, verify=True)
    assert [c.tuples for c in q.constraints] == [frozenset()] * 3
    oracle = chaotic_fixpoint(make_path_functions(p), relations_of(p).universes)
    assert relations_of(q).components == oracle.components


def test_consistency_checks_agree():
    rng = random.Random(8)
    for _ in range(200):
        p = random_standardized_csp(rng)
        assert is_path_consistent(p) == is_path_consistent_subsequence(p)
        assert is_path_consistent(path(p)[0])


def test_pc2_matches_path_and_oracle():
    rng = random.Random(9)
    fewer = 0
    for _ in range(200):
        p = random_standardized_csp(rng)
        a, sa = path(p, verify=True)
        b, sb = pc2(p, verify=True)
        fs = make_path_functions(p)
        assert a == b
        assert relations_of(a).components == chaotic_fixpoint(fs, relations_of(p).universes).components
        fewer += sb.additions < sa.additions
    assert fewer > 0


def test_pc2_uses_transposes_for_earlier_u():
    # reducing E_{x2,x3} through x1 needs E_{x1,x2}^T . E_{x1,x3}
    p = standardize(Csp.build(
        {"u": "ab", "x": "ab", "y": "ab"},
        [(("u", "x"), [("a", "a")]), (("u", "y"), [("a", "b")])]))
    q, _ = pc2(p)
    rel = {c.vars: c.tuples for c in q.constraints}
    assert rel["x", "y"] == {("a", "b")}
    assert rel["x", "y"] <= compose(transpose(rel["u", "x"]), rel["u", "y"])
