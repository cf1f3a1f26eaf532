"""CSP representation and binary-relation algebra."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .exceptions import ArityError, DomainError, FixpropError, StandardizationError

Atom = Hashable
Relation = frozenset  # frozenset[tuple[Atom, Atom]]


def transpose(r: Iterable[tuple]) -> Relation:
    return frozenset((b, a) for a, b in r)


def compose(r: Iterable[tuple], s: Iterable[tuple]) -> Relation:
    """Relational composition: ``(a, b)`` with some ``c`` such that ``(a, c) in r`` and ``(c, b) in s``."""
    succ: dict = {}
    for c, b in s:
        succ.setdefault(c, []).append(b)
    return frozenset((a, b) for a, c in r for b in succ.get(c, ()))


@dataclass(frozen=True)
class Constraint:
    vars: tuple[str, ...]
    tuples: frozenset
    name: str | None = None

    def __post_init__(self):
        vs = tuple(self.vars)
        ts = frozenset(tuple(t) for t in self.tuples)
        if len(set(vs)) != len(vs):
            raise ArityError(f"constraint repeats a variable: {vs}")
        for t in ts:
            if len(t) != len(vs):
                raise ArityError(
                    f"tuple {t} has arity {len(t)}, constraint on {vs} needs {len(vs)}")
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "tuples", ts)
        if self.name is None:
            object.__setattr__(self, "name", "C_" + "_".join(vs))

    @property
    def arity(self) -> int:
        return len(self.vars)

    def with_tuples(self, tuples) -> Constraint:
        return Constraint(self.vars, frozenset(tuples), self.name)


@dataclass(frozen=True)
class Csp:
    """Variables with finite domains plus extensional constraints.

    Each constraint's variables must form a subsequence of ``variables`` and
    its tuples must lie in the product of their domains.
    """

    variables: tuple[str, ...]
    domains: tuple[frozenset, ...]
    constraints: tuple[Constraint, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vs = tuple(self.variables)
        ds = tuple(frozenset(d) for d in self.domains)
        cs = tuple(self.constraints)
        if len(vs) != len(ds):
            raise ArityError(f"{len(vs)} variables but {len(ds)} domains")
        if len(set(vs)) != len(vs):
            raise FixpropError(f"duplicate variable names in {vs}")
        index = {v: i for i, v in enumerate(vs)}
        for c in cs:
            pos = []
            for v in c.vars:
                if v not in index:
                    raise FixpropError(f"{c.name}: unknown variable {v!r}")
                pos.append(index[v])
            if pos != sorted(pos):
                raise FixpropError(
                    f"{c.name}: variables {c.vars} are not a subsequence of {vs}")
            for t in c.tuples:
                for v, a in zip(c.vars, t):
                    if a not in ds[index[v]]:
                        raise DomainError(
                            f"{c.name}: value {a!r} is outside the domain of {v}")
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "domains", ds)
        object.__setattr__(self, "constraints", cs)
        object.__setattr__(self, "_index", index)

    @classmethod
    def build(cls, domains: dict[str, Iterable[Atom]],
              constraints: Iterable[tuple[Sequence[str], Iterable[tuple]]] = ()) -> Csp:
        """Convenience constructor from a ``{var: values}`` dict (insertion order)."""
        cons = []
        for item in constraints:
            if isinstance(item, Constraint):
                cons.append(item)
            else:
                vars_, tuples, *rest = item
                cons.append(Constraint(tuple(vars_), frozenset(map(tuple, tuples)),
                                       rest[0] if rest else None))
        return cls(tuple(domains), tuple(frozenset(v) for v in domains.values()),
                   tuple(cons))

    @property
    def n(self) -> int:
        return len(self.variables)

    def index(self, var: str) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise FixpropError(f"unknown variable {var!r}") from None

    def domain(self, var: str) -> frozenset:
        return self.domains[self.index(var)]

    def scheme_of(self, c: Constraint) -> tuple[int, ...]:
        return tuple(self.index(v) for v in c.vars)

    def restrict(self, domains: Sequence[Iterable[Atom]]) -> Csp:
        """Same CSP with new (smaller) domains; constraints restricted to them."""
        ds = tuple(frozenset(d) for d in domains)
        for v, old, new in zip(self.variables, self.domains, ds):
            if not new <= old:
                raise DomainError(f"restricting {v} would add values")
        cons = []
        for c in self.constraints:
            sch = self.scheme_of(c)
            keep = {t for t in c.tuples if all(a in ds[i] for a, i in zip(t, sch))}
            cons.append(c.with_tuples(keep))
        return Csp(self.variables, ds, tuple(cons))

    def with_relations(self, relations: Sequence[Iterable[tuple]]) -> Csp:
        if len(relations) != len(self.constraints):
            raise ArityError("one relation per constraint expected")
        cons = tuple(c.with_tuples(r) for c, r in zip(self.constraints, relations))
        return Csp(self.variables, self.domains, cons)

    def has_empty(self) -> bool:
        """True when some domain or constraint is empty (an inconsistency witness)."""
        return any(not d for d in self.domains) or any(not c.tuples for c in self.constraints)


def project_constraint(c: Constraint, j: int, boxes: Sequence[Iterable[Atom]]) -> frozenset:
    """Values at position ``j`` (0-based) of the tuples of ``c`` that fit in ``boxes``."""
    if not 0 <= j < c.arity:
        raise ArityError(f"position {j} out of range for arity {c.arity}")
    if len(boxes) != c.arity:
        raise ArityError(f"{len(boxes)} boxes for a constraint of arity {c.arity}")
    boxes = [b if isinstance(b, (set, frozenset)) else frozenset(b) for b in boxes]
    return frozenset(
        t[j] for t in c.tuples if all(a in b for a, b in zip(t, boxes)))


def binary_key(p: Csp, c: Constraint) -> tuple[int, int]:
    i, j = p.scheme_of(c)
    return i, j


def is_standardized(p: Csp) -> bool:
    if any(c.arity != 2 for c in p.constraints):
        return False
    pairs = [binary_key(p, c) for c in p.constraints]
    return len(pairs) == len(set(pairs)) == p.n * (p.n - 1) // 2


def require_standardized(p: Csp) -> None:
    if not is_standardized(p):
        raise StandardizationError(
            "expected a standardized CSP (exactly one binary constraint per "
            "variable pair); call standardize() first")


def standardize(p: Csp) -> Csp:
    """One binary constraint per ordered variable pair, in lexicographic pair order.

    Missing pairs get the full product of the two domains; several
    constraints on a pair are intersected.
    """
    for c in p.constraints:
        if c.arity != 2:
            raise ArityError(f"{c.name} has arity {c.arity}; only binary constraints "
                             f"can be standardized")
    grouped: dict[tuple[int, int], list[Constraint]] = {}
    for c in p.constraints:
        grouped.setdefault(binary_key(p, c), []).append(c)
    cons = []
    for i, j in itertools.combinations(range(p.n), 2):
        x, y = p.variables[i], p.variables[j]
        rel = frozenset(itertools.product(p.domains[i], p.domains[j]))
        group = grouped.get((i, j), [])
        for c in group:
            rel &= c.tuples
        name = group[0].name if len(group) == 1 else None
        cons.append(Constraint((x, y), rel, name))
    return Csp(p.variables, p.domains, tuple(cons))


def is_solution(p: Csp, assignment: Sequence[Atom]) -> bool:
    if len(assignment) != p.n:
        raise ArityError(f"assignment has {len(assignment)} values for {p.n} variables")
    for v, a, dom in zip(p.variables, assignment, p.domains):
        if a not in dom:
            raise DomainError(f"value {a!r} is outside the domain of {v}")
    for c in p.constraints:
        if tuple(assignment[i] for i in p.scheme_of(c)) not in c.tuples:
            return False
    return True
