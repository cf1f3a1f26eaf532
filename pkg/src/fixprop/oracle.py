"""Brute-force references used to validate the engines.

Nothing in here shares code paths with the worklist engines beyond the
canonic extension itself: solutions are enumerated by backtracking over the
raw domains, fixpoints are computed by plain round-robin, and the closure
and (semi-)commutativity checkers walk whole state spaces.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Sequence

from .exceptions import CapacityError, ContractViolation
from .model import Constraint, Csp, standardize
from .order import CompoundValue, SchemedFunction, apply_extended

DEFAULT_STATE_CAP = 10_000
DEFAULT_SOLUTION_CAP = 1_000_000


@dataclass(frozen=True)
class Counterexample:
    first: SchemedFunction
    second: SchemedFunction
    value: CompoundValue
    first_after_second: CompoundValue  # first(second(value))
    second_after_first: CompoundValue  # second(first(value))
    property: str = ""


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    counterexample: Counterexample | None = None
    checked: int = 0
    exhaustive: bool = True

    def __post_init__(self):
        if self.passed == (self.counterexample is not None):
            raise ValueError("counterexample must be present exactly when the check failed")

    def __bool__(self):
        return self.passed


# -- solutions ----------------------------------------------------------------

def enumerate_solutions(p: Csp, cap: int = DEFAULT_SOLUTION_CAP) -> set[tuple]:
    """All assignments satisfying every constraint of ``p``."""
    size = math.prod(len(d) for d in p.domains)
    if size > cap:
        raise CapacityError(f"search space of {size} assignments exceeds cap {cap}")
    # each constraint is checked as soon as its last variable is assigned
    due: list[list[tuple[Constraint, tuple[int, ...]]]] = [[] for _ in range(p.n)]
    for c in p.constraints:
        sch = p.scheme_of(c)
        if not sch:
            continue
        due[max(sch)].append((c, sch))
    if any(not c.tuples and not p.scheme_of(c) for c in p.constraints):
        return set()
    domains = [sorted(d, key=repr) for d in p.domains]
    out: set[tuple] = set()
    assignment: list = [None] * p.n

    def extend(k: int):
        if k == p.n:
            out.add(tuple(assignment))
            return
        for a in domains[k]:
            assignment[k] = a
            if all(tuple(assignment[i] for i in sch) in c.tuples for c, sch in due[k]):
                extend(k + 1)

    extend(0)
    return out


# -- fixpoints ----------------------------------------------------------------

def chaotic_fixpoint(functions: Sequence[SchemedFunction], bottoms) -> CompoundValue:
    """Round-robin over ``functions`` until a full pass changes nothing."""
    d = bottoms if isinstance(bottoms, CompoundValue) else CompoundValue.bottom(bottoms)
    changed = True
    while changed:
        changed = False
        for f in functions:
            e = apply_extended(f, d)
            if e != d:
                d, changed = e, True
    return d


def reference_update(functions: Sequence[SchemedFunction]):
    """The expensive update rule that evaluates every function before and after.

    Usable as the ``update`` argument of :func:`fixprop.iterate.run_gi`.
    """

    def update(G, g, d, d_new):
        out = [f for f in functions
               if f not in G and apply_extended(f, d) == d
               and apply_extended(f, d_new) != d_new]
        if apply_extended(g, d_new) != d_new and g not in out:
            out.append(g)
        return out

    return update


# -- state spaces -------------------------------------------------------------

def _subsets_desc(universe: frozenset) -> list[frozenset]:
    items = sorted(universe, key=repr)
    return [frozenset(c) for r in range(len(items), -1, -1)
            for c in itertools.combinations(items, r)]


def state_count(universes: Sequence[frozenset], scheme: Iterable[int]) -> int:
    return math.prod(2 ** len(universes[i]) for i in scheme)


def _bottom(universes) -> CompoundValue:
    if isinstance(universes, CompoundValue):
        return CompoundValue.bottom(universes.universes)
    return CompoundValue.bottom(universes)


def iter_states(universes, scheme: Sequence[int]) -> Iterator[CompoundValue]:
    """Every value that differs from the bottom only on ``scheme``; bottom first."""
    bot = _bottom(universes)
    scheme = sorted(set(scheme))
    for combo in itertools.product(*(_subsets_desc(bot.universes[i]) for i in scheme)):
        yield bot.replace(scheme, combo) if scheme else bot


def random_state(universes, scheme: Sequence[int], rng: random.Random) -> CompoundValue:
    bot = _bottom(universes)
    scheme = sorted(set(scheme))
    vals = [frozenset(a for a in sorted(bot.universes[i], key=repr) if rng.random() < 0.6)
            for i in scheme]
    return bot.replace(scheme, vals) if scheme else bot


def sample_states(universes, scheme: Sequence[int] | None = None, *,
                  cap: int = DEFAULT_STATE_CAP, samples: int = 1000,
                  seed: int = 0) -> list[CompoundValue]:
    """States to test properties on: exhaustive when small, else a fixed-seed sample.

    The sample always contains the bottom and the values obtained by
    shrinking one component of the bottom to a singleton.
    """
    bot = _bottom(universes)
    scheme = list(range(len(bot))) if scheme is None else sorted(set(scheme))
    if state_count(bot.universes, scheme) <= cap:
        return list(iter_states(bot, scheme))
    out = [bot]
    for i in scheme:
        for a in sorted(bot.universes[i], key=repr):
            out.append(bot.replace((i,), [{a}]))
    rng = random.Random(seed)
    out.extend(random_state(bot, scheme, rng) for _ in range(samples))
    return out


def _states(universes, scheme, cap, samples, seed):
    bot = _bottom(universes)
    count = state_count(bot.universes, scheme)
    if count <= cap:
        return iter_states(bot, scheme), True
    if samples is None:
        raise CapacityError(f"{count} states exceed the cap of {cap}; pass samples= to sample")
    return sample_states(bot, scheme, cap=cap, samples=samples, seed=seed), False


# -- property checkers --------------------------------------------------------

def _apply_checked(f: SchemedFunction, x: CompoundValue) -> CompoundValue | None:
    """``f+(x)``, or None when ``f`` tried to grow a set."""
    try:
        return apply_extended(f, x)
    except ContractViolation as exc:
        if exc.assumption != "inflationary":
            raise
        return None


def check_closure(f: SchemedFunction, universes, *, cap: int = DEFAULT_STATE_CAP,
                  samples: int | None = None, seed: int = 0) -> CheckReport:
    """Inflationary, monotonic and idempotent, w.r.t. reversed inclusion.

    A transform that grows a set fails as non-inflationary; its output cannot
    be represented, so the counterexample repeats the input.  Monotonicity
    is checked on covering pairs (drop one element from one component),
    which is enough on a finite product of power sets.
    """
    states, exhaustive = _states(universes, f.scheme, cap, samples, seed)
    checked = 0

    def fail(value, a, b, prop):
        return CheckReport(False, Counterexample(f, f, value, a, b, prop), checked, exhaustive)

    for x in states:
        checked += 1
        fx = _apply_checked(f, x)
        if fx is None:
            return fail(x, x, x, "inflationary")
        if not fx.issubset(x):
            return fail(x, fx, fx, "inflationary")
        ffx = _apply_checked(f, fx)
        if ffx != fx:
            return fail(x, fx if ffx is None else ffx, fx, "idempotent")
        for i in f.scheme:
            for a in x[i]:
                y = x.replace((i,), [x[i] - {a}])
                fy = _apply_checked(f, y)
                if fy is None:
                    return fail(y, y, y, "inflationary")
                if not fy.issubset(fx):
                    return fail(y, fy, fx, "monotonic")
    return CheckReport(True, None, checked, exhaustive)


def _pairwise(f, g, universes, cap, samples, seed, accept, prop) -> CheckReport:
    joint = sorted(set(f.scheme) | set(g.scheme))
    states, exhaustive = _states(universes, joint, cap, samples, seed)
    checked = 0
    for x in states:
        checked += 1
        fg = apply_extended(f, apply_extended(g, x))
        gf = apply_extended(g, apply_extended(f, x))
        if not accept(fg, gf):
            return CheckReport(False, Counterexample(f, g, x, fg, gf, prop), checked, exhaustive)
    return CheckReport(True, None, checked, exhaustive)


def check_commute(f: SchemedFunction, g: SchemedFunction, universes, *,
                  cap: int = DEFAULT_STATE_CAP, samples: int | None = None,
                  seed: int = 0) -> CheckReport:
    """``f(g(x)) == g(f(x))`` on every value of the joint scheme, bottom first."""
    return _pairwise(f, g, universes, cap, samples, seed, lambda fg, gf: fg == gf, "commute")


def check_semi_commute(f: SchemedFunction, g: SchemedFunction, universes, *,
                       cap: int = DEFAULT_STATE_CAP, samples: int | None = None,
                       seed: int = 0) -> CheckReport:
    """``f(g(x))`` below ``g(f(x))``: componentwise ``g(f(x)) <= f(g(x))`` as sets."""
    return _pairwise(f, g, universes, cap, samples, seed,
                     lambda fg, gf: gf.issubset(fg), "semi-commute")


# -- random instances ---------------------------------------------------------

ATOMS = "abcdefgh"


def random_csp(rng: random.Random, *, max_vars: int = 4, max_atoms: int = 3,
               density: float = 0.6, keep: float = 0.6, ternary: float = 0.0,
               duplicates: float = 0.0, min_vars: int = 2) -> Csp:
    """A small random CSP over atoms ``a``, ``b``, ...

    ``density`` is the chance that a variable pair gets a constraint,
    ``keep`` the chance each tuple of the product survives, ``ternary`` the
    chance of an extra ternary constraint per variable triple and
    ``duplicates`` the chance of a second constraint on a constrained pair.
    """
    n = rng.randint(min_vars, max_vars)
    atoms = ATOMS[:max_atoms]
    variables = tuple(f"x{i + 1}" for i in range(n))
    domains = []
    for _ in range(n):
        dom = frozenset(a for a in atoms if rng.random() < 0.8) or frozenset(rng.choice(atoms))
        domains.append(dom)

    def rand_rel(idxs):
        prod = itertools.product(*(sorted(domains[i]) for i in idxs))
        return frozenset(t for t in prod if rng.random() < keep)

    cons = []
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < density:
            cons.append(Constraint((variables[i], variables[j]), rand_rel((i, j))))
            if rng.random() < duplicates:
                cons.append(Constraint((variables[i], variables[j]), rand_rel((i, j)),
                                       f"C_{variables[i]}_{variables[j]}_dup"))
    for tri in itertools.combinations(range(n), 3):
        if rng.random() < ternary:
            cons.append(Constraint(tuple(variables[i] for i in tri), rand_rel(tri)))
    return Csp(variables, tuple(domains), tuple(cons))


def random_standardized_csp(rng: random.Random, **kwargs: Any) -> Csp:
    kwargs.setdefault("min_vars", 3)
    return standardize(random_csp(rng, ternary=0.0, duplicates=0.0, **kwargs))
