"""Directional arc and path consistency along a variable ordering.

Every algorithm here first reorders the CSP so that the ordering is the
declaration order, runs a single pass of closures, and maps the result back
to the caller's variable order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .arc import PiFunction
from .exceptions import OrderingError
from .iterate import RunStats, run_si
from .model import Constraint, Csp, compose, require_standardized, transpose
from .oracle import CheckReport, Counterexample
from .order import CompoundValue, SchemedFunction, apply_extended
from .path import PathFunction, relations_of


@dataclass(frozen=True)
class VariableOrder:
    sequence: tuple[str, ...]

    def __post_init__(self):
        seq = tuple(self.sequence)
        if len(set(seq)) != len(seq):
            raise OrderingError(f"ordering repeats a variable: {seq}")
        object.__setattr__(self, "sequence", seq)

    @classmethod
    def of(cls, order) -> VariableOrder:
        return order if isinstance(order, VariableOrder) else cls(tuple(order))

    def check(self, p: Csp) -> None:
        if sorted(self.sequence) != sorted(p.variables):
            raise OrderingError(
                f"ordering {self.sequence} is not a permutation of {p.variables}")


def reorder(p: Csp, order) -> Csp:
    """The same CSP with variables listed along ``order``.

    Each constraint keeps its position in the constraint list; its
    variables and tuple coordinates are permuted to follow the new order.
    """
    order = VariableOrder.of(order)
    order.check(p)
    rank = {v: k for k, v in enumerate(order.sequence)}
    domains = [p.domain(v) for v in order.sequence]
    cons = []
    for c in p.constraints:
        perm = sorted(range(c.arity), key=lambda k: rank[c.vars[k]])
        cons.append(Constraint(tuple(c.vars[k] for k in perm),
                               frozenset(tuple(t[k] for k in perm) for t in c.tuples),
                               c.name))
    return Csp(order.sequence, tuple(domains), tuple(cons))


def _resolve(p: Csp, order) -> VariableOrder:
    return VariableOrder(p.variables) if order is None else VariableOrder.of(order)


# -- arc ----------------------------------------------------------------------

def darc_sequence(q: Csp) -> list[PiFunction]:
    """First-position projections of ``q``'s binary constraints, as an SI sequence.

    The application order (last element first) takes constraints on a later
    second variable first; ties go by first variable, then declaration order.
    """
    keyed = []
    for k, c in enumerate(q.constraints):
        if c.arity != 2:
            continue
        i, j = q.scheme_of(c)
        keyed.append(((-j, i, k), PiFunction(c, 0, (i, j))))
    keyed.sort(key=lambda item: item[0])
    return [f for _, f in reversed(keyed)]


def darc(p: Csp, order=None, *, verify: bool = False) -> tuple[Csp, RunStats]:
    """Directional arc consistency by applying each projection exactly once."""
    order = _resolve(p, order)
    q = reorder(p, order)
    d, stats = run_si(darc_sequence(q), CompoundValue.bottom(q.domains), verify=verify)
    return reorder(q.restrict(d.components), p.variables), stats


def dac(p: Csp, order=None) -> tuple[Csp, RunStats]:
    """The double loop form of :func:`darc` for standardized CSPs."""
    require_standardized(p)
    order = _resolve(p, order)
    q = reorder(p, order)
    rels = {q.scheme_of(c): c.tuples for c in q.constraints}
    doms = list(q.domains)
    stats = RunStats()
    for j in range(q.n - 1, 0, -1):
        for i in range(j):
            doms[i] = frozenset(a for a, b in rels[i, j] if a in doms[i] and b in doms[j])
            stats.applications += 1
    return reorder(q.restrict(doms), p.variables), stats


def is_directionally_arc_consistent(p: Csp, order=None) -> bool:
    order = _resolve(p, order)
    order.check(p)
    rank = {v: k for k, v in enumerate(order.sequence)}
    for c in p.constraints:
        if c.arity != 2:
            continue
        x, y = c.vars
        dx, dy = p.domain(x), p.domain(y)
        if rank[x] < rank[y]:
            if any(not any((a, b) in c.tuples for b in dy) for a in dx):
                return False
        elif any(not any((a, b) in c.tuples for a in dx) for b in dy):
            return False
    return True


# -- path ---------------------------------------------------------------------

def dpath_sequence(q: Csp) -> list[PathFunction]:
    """Functions reducing ``C_ij`` through ``x_m`` for ``i < j < m``, as an SI sequence.

    Application order: ``m`` descending, then ``(j, i)`` lexicographically.
    """
    require_standardized(q)
    idx = {q.scheme_of(c): k for k, c in enumerate(q.constraints)}
    applied = []
    for m in range(q.n - 1, 1, -1):
        for j in range(1, m):
            for i in range(j):
                names = tuple(q.variables[v] for v in (i, j, m))
                applied.append(PathFunction("reduce_xy_via_z", (i, j, m),
                                            (idx[i, j], idx[i, m], idx[j, m]), names))
    return applied[::-1]


def dpath(p: Csp, order=None, *, verify: bool = False) -> tuple[Csp, RunStats]:
    require_standardized(p)
    order = _resolve(p, order)
    q = reorder(p, order)
    d, stats = run_si(dpath_sequence(q), relations_of(q), verify=verify)
    return reorder(q.with_relations(d.components), p.variables), stats


def dpc(p: Csp, order=None) -> tuple[Csp, RunStats]:
    """The triple loop form of :func:`dpath`."""
    require_standardized(p)
    order = _resolve(p, order)
    q = reorder(p, order)
    rels = {q.scheme_of(c): c.tuples for c in q.constraints}
    stats = RunStats()
    for m in range(q.n - 1, 1, -1):
        for j in range(1, m):
            for i in range(j):
                rels[i, j] = rels[i, j] & compose(rels[i, m], transpose(rels[j, m]))
                stats.applications += 1
    out = q.with_relations([rels[q.scheme_of(c)] for c in q.constraints])
    return reorder(out, p.variables), stats


def is_directionally_path_consistent(p: Csp, order=None) -> bool:
    require_standardized(p)
    order = _resolve(p, order)
    order.check(p)
    rank = {v: k for k, v in enumerate(order.sequence)}
    rels = {}
    for c in p.constraints:
        x, y = c.vars
        rels[x, y] = c.tuples
        rels[y, x] = transpose(c.tuples)
    for x, y, z in itertools.permutations(p.variables, 3):
        if rank[y] > rank[x] and rank[y] > rank[z]:
            if not rels[x, z] <= compose(rels[x, y], rels[y, z]):
                return False
    return True


# -- verification -------------------------------------------------------------

def si_precondition_check(sequence: Sequence[SchemedFunction],
                          samples: Iterable[CompoundValue]) -> CheckReport:
    """Check ``f_i f_j (x)`` is above ``f_j f_i (x)`` for all ``i > j`` on the samples.

    Above in the reversed-inclusion order, i.e. every component of
    ``f_j(f_i(x))`` must be a subset of the matching component of
    ``f_i(f_j(x))``.
    """
    samples = list(samples)
    for i, j in itertools.combinations(range(len(sequence)), 2):
        i, j = j, i  # i > j
        fi, fj = sequence[i], sequence[j]
        for x in samples:
            ij = apply_extended(fi, apply_extended(fj, x))
            ji = apply_extended(fj, apply_extended(fi, x))
            if not ji.issubset(ij):
                return CheckReport(False, Counterexample(fi, fj, x, ij, ji))
    return CheckReport(True)
