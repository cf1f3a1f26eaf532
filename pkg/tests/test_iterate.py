import itertools

import pytest

from fixprop.arc import make_pi_functions
from fixprop.exceptions import ConfigurationError, ContractViolation, SemiCommutativityError
from fixprop.iterate import (FifoSelect, LifoSelect, RandomSelect, ScriptedSelect, UpdatePolicy,
                             comm_from_keys, default_update, make_select, prune_update, run_cd,
                             run_gi, run_si)
from fixprop.model import Csp
from fixprop.oracle import chaotic_fixpoint, reference_update
from fixprop.order import CompoundValue, SchemedFunction


def ident(scheme, **kw):
    return SchemedFunction(scheme, lambda v: v, **kw)


def shrink(scheme, k, keep):
    """Keep only ``keep`` in slot ``k``."""
    def t(v):
        out = list(v)
        out[k] = v[k] & frozenset(keep)
        return out
    return SchemedFunction(scheme, t, idempotent=True)


def test_run_gi_empty_function_set():
    b = CompoundValue.bottom([{"a"}])
    d, stats = run_gi([], b, lambda *a: [])
    assert d == b and stats.applications == 0


def test_example1_fixpoint_any_selection(example1):
    # C1 and C2 share no tuple, so the least common fixpoint empties both domains
    fs = make_pi_functions(example1)
    for perm in itertools.permutations(fs):
        d, _ = run_gi(list(perm), CompoundValue.bottom(example1.domains), reference_update(fs))
        assert d.components == (frozenset(), frozenset())
    for select in ["fifo", "lifo", "random:1", "random:2"]:
        d, _ = run_cd(fs, example1.domains, select=select, verify=True)
        assert d.components == (frozenset(), frozenset())


def test_single_idempotent_function_applied_once():
    f = shrink((0,), 0, {"a"})
    d, stats = run_cd([f], [{"a", "b"}], UpdatePolicy("idempotent"))
    assert d.components == ({"a"},) and stats.applications == 1
    d, stats = run_cd([f], [{"a", "b"}], UpdatePolicy("plain"))
    assert stats.applications == 2


def test_default_update():
    d = CompoundValue.bottom([{"a", "b"}, {"c", "d"}, {"e"}])
    g = ident((0, 1))
    f1, f2 = ident((0, 2)), ident((1, 2))
    assert default_update({}, g, d, d, [g, f1, f2]) == []
    d_new = d.replace((0,), [{"a"}])
    assert default_update({}, g, d, d_new, [f1, f2]) == [f1]
    both = d.replace((0, 1), [{"a"}, {"c"}])
    assert default_update({}, g, d, both, [g, f1, f2]) == [g, f1, f2]


def test_prune_update():
    g, f, h = ident((0,), idempotent=True), ident((0,)), ident((0,))
    assert prune_update([g, f], g, UpdatePolicy("idempotent")) == [f]
    assert prune_update([g, f, h], g, UpdatePolicy("both", {g: {f}})) == [h]
    assert prune_update([g, f, h], g, UpdatePolicy("plain")) == [g, f, h]


def test_policy_validation():
    g, f = ident((0,)), ident((0,))
    with pytest.raises(ConfigurationError):
        UpdatePolicy("both", {g: {g}})
    with pytest.raises(ConfigurationError):
        UpdatePolicy("commutativity")
    with pytest.raises(ConfigurationError):
        UpdatePolicy("sometimes")
    with pytest.raises(ConfigurationError):
        run_cd([g], [{"a"}], UpdatePolicy("both", {g: {f}}))


def test_fixpoint_input_adds_nothing_beyond_seeding(example1):
    p = example1.restrict([{"b"}, {"d"}])
    fs = make_pi_functions(Csp(p.variables, p.domains, p.constraints[:1]))
    d, stats = run_cd(fs, p.domains, verify=True)
    assert stats.additions == stats.seeded == len(fs)


def test_run_si_basics():
    b = CompoundValue.bottom([{"a", "b"}])
    assert run_si([], b)[0] == b
    f = shrink((0,), 0, {"a"})
    d, stats = run_si([f], b)
    assert d.components == ({"a"},) and stats.applications == 1


def test_run_si_verify_detects_bad_order():
    # f needs g to have fired first; the wrong order leaves f unstable
    g = shrink((1,), 0, {"c"})
    f = SchemedFunction((0, 1), lambda v: (v[0] & ({"a"} if v[1] == {"c"} else v[0]), v[1]),
                        idempotent=True)
    b = [{"a", "b"}, {"c", "d"}]
    d, _ = run_si([f, g], b, verify=True)  # g first
    assert d.components == ({"a"}, {"c"})
    with pytest.raises(SemiCommutativityError):
        run_si([g, f], b, verify=True)


def test_verify_catches_bad_update_rule(example1):
    fs = make_pi_functions(example1)
    with pytest.raises(ContractViolation) as err:
        run_gi(fs, CompoundValue.bottom(example1.domains), lambda *a: [], verify=True)
    assert err.value.assumption in {"A", "C", "I"}


def test_verify_catches_assumption_b():
    f = ident((0,))
    g = ident((0,))
    with pytest.raises(ContractViolation) as err:
        run_gi([f, g], CompoundValue.bottom([{"a"}]), lambda G, g, d, e: [f], verify=True)
    assert err.value.assumption == "B"


def test_selection_policies():
    pending = dict.fromkeys("xyz")
    assert FifoSelect().choose(pending) == "x"
    assert LifoSelect().choose(pending) == "z"
    r1, r2 = RandomSelect(5), RandomSelect(5)
    assert [r1.choose(pending) for _ in range(5)] == [r2.choose(pending) for _ in range(5)]
    s = ScriptedSelect(["q", "y"])
    assert s.choose(pending) == "y" and s.skipped == ["q"]
    assert s.choose(pending) == "x"
    assert isinstance(make_select("random:3"), RandomSelect)
    with pytest.raises(ConfigurationError):
        make_select("sideways")


def test_comm_from_keys():
    f = ident((0,), comm_keys={"k"})
    g = ident((0,), comm_keys={"k", "j"})
    h = ident((0,), comm_keys={"j"})
    comm = comm_from_keys([f, g, h])
    assert comm[f] == {g} and comm[g] == {f, h} and comm[h] == {g}


def test_cd_matches_chaotic_on_random(random_suite):
    for p in random_suite[:100]:
        fs = make_pi_functions(p)
        assert run_cd(fs, p.domains, verify=True)[0] == chaotic_fixpoint(fs, p.domains)
