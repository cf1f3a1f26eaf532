"""Hyper-arc and arc consistency.

The compound value here is the tuple of variable domains.  Each constraint
contributes one projection function per position; a projection keeps the
values of its position that still occur in some tuple fitting inside the
current domains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exceptions import ArityError, ContractViolation
from .iterate import RunStats, UpdatePolicy, make_select, run_cd
from .model import Constraint, Csp, project_constraint, transpose
from .order import CompoundValue, SchemedFunction


class PiFunction(SchemedFunction):
    """Projection of ``constraint`` onto its ``position``-th variable (0-based)."""

    def __init__(self, constraint: Constraint, position: int, scheme: Sequence[int]):
        if not 0 <= position < constraint.arity:
            raise ArityError(f"position {position} out of range for {constraint.name}")
        self.constraint = constraint
        self.position = position
        self.output = scheme[position]
        super().__init__(
            scheme,
            idempotent=True,
            comm_keys=(("constraint", id(constraint)), ("output", self.output)),
            label=f"pi{position + 1}[{constraint.name}]",
        )

    def transform(self, values):
        out = list(values)
        out[self.position] = project_constraint(self.constraint, self.position, values)
        return out


def make_pi_functions(p: Csp) -> tuple[PiFunction, ...]:
    fs = []
    for c in p.constraints:
        sch = p.scheme_of(c)
        fs.extend(PiFunction(c, i, sch) for i in range(c.arity))
    return tuple(fs)


def arc_comm_set(f: PiFunction, functions: Sequence[PiFunction]) -> frozenset:
    """Other positions of the same constraint, plus projections of other
    constraints whose output variable is ``f``'s output variable."""
    return frozenset(
        g for g in functions
        if g is not f and (g.constraint is f.constraint or g.output == f.output))


def _policy(policy, functions) -> UpdatePolicy:
    if policy is None:
        return UpdatePolicy("idempotent")
    if isinstance(policy, str):
        return comm_policy(functions, policy) if policy in ("commutativity", "both") \
            else UpdatePolicy(policy)
    return policy


def comm_policy(functions: Sequence[PiFunction], mode: str = "both") -> UpdatePolicy:
    return UpdatePolicy(mode, {f: arc_comm_set(f, functions) for f in functions})


def is_hyper_arc_consistent(p: Csp) -> bool:
    for c in p.constraints:
        boxes = [p.domains[i] for i in p.scheme_of(c)]
        for j, box in enumerate(boxes):
            if project_constraint(c, j, boxes) != box:
                return False
    return True


def hyper_arc(p: Csp, *, policy: UpdatePolicy | str | None = None, select=None,
              verify: bool = False) -> tuple[Csp, RunStats]:
    """Largest hyper-arc consistent domains below ``p``'s.

    Runs the compound-domain engine over all projection functions, dropping
    the applied function from the re-queue set (it is idempotent) unless a
    different ``policy`` is given.  ``policy`` may be a mode name, in which
    case the Comm sets come from :func:`arc_comm_set`.
    """
    functions = make_pi_functions(p)
    d, stats = run_cd(functions, CompoundValue.bottom(p.domains),
                      _policy(policy, functions), select=select, verify=verify)
    return p.restrict(d.components), stats


# -- AC-3 ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Arc:
    """A binary constraint or its transpose, read as "revise ``source`` against ``target``"."""

    source: int
    target: int
    relation: frozenset
    name: str

    @property
    def pair(self) -> tuple[int, int]:
        return (self.source, self.target)

    def __repr__(self):
        return f"Arc({self.name}: {self.source}->{self.target})"


def _arcs(p: Csp) -> list[Arc]:
    arcs = []
    for c in p.constraints:
        if c.arity != 2:
            raise ArityError(f"{c.name} has arity {c.arity}; AC-3 handles binary constraints only")
        i, j = p.scheme_of(c)
        arcs.append(Arc(i, j, c.tuples, c.name))
        arcs.append(Arc(j, i, transpose(c.tuples), c.name + "^T"))
    return arcs


def _revise(arc: Arc, domains: list) -> frozenset:
    src, tgt = domains[arc.source], domains[arc.target]
    return frozenset(a for a, b in arc.relation if a in src and b in tgt)


def ac3(p: Csp, *, select=None, verify: bool = False) -> tuple[Csp, RunStats]:
    """Arc consistency with the classic queue of constraints and transposes.

    After revising ``D_i`` against ``D_j`` only arcs ``(y, x_i)`` are
    re-queued, leaving out ``y == x_j`` when every variable pair carries at
    most one constraint.  Otherwise the ``(x_j, x_i)`` arcs are re-queued too.
    """
    arcs = _arcs(p)
    pairs = [(a.source, a.target) for a in arcs if a.source < a.target]
    at_most_one = len(pairs) == len(set(pairs))
    into: dict[int, list[Arc]] = {}
    for a in arcs:
        into.setdefault(a.target, []).append(a)

    select = make_select(select)
    domains = list(p.domains)
    stats = RunStats()
    pending = dict.fromkeys(arcs)
    stats.additions = stats.seeded = stats.peak = len(pending)

    while pending:
        if verify:
            for a in arcs:
                if a not in pending and _revise(a, domains) != domains[a.source]:
                    raise ContractViolation(
                        f"invariant I broken: {a.name} is not queued but not stable",
                        assumption="I")
        arc = select.choose(pending)
        new = _revise(arc, domains)
        stats.applications += 1
        if new != domains[arc.source]:
            domains[arc.source] = new
            for other in into.get(arc.source, ()):
                if at_most_one and other.source == arc.target:
                    continue
                stats.additions += 1
                pending[other] = None
        del pending[arc]
        stats.peak = max(stats.peak, len(pending))
    return p.restrict(domains), stats
