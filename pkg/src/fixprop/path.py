"""Path consistency on standardized CSPs.

The compound value has one component per constraint (not per variable):
component ``k`` is the current tuple set of ``p.constraints[k]``.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .exceptions import ContractViolation
from .iterate import RunStats, UpdatePolicy, make_select, run_cd
from .model import Csp, compose, require_standardized, transpose
from .order import CompoundValue, SchemedFunction

KINDS = ("reduce_xy_via_z", "reduce_xz_via_y", "reduce_yz_via_x")


def apply_path_function(kind: str, P, Q, R):
    """Apply one of the three triangle reductions to ``(C_xy, C_xz, C_yz)``."""
    P, Q, R = frozenset(P), frozenset(Q), frozenset(R)
    if kind == "reduce_xy_via_z":
        return P & compose(Q, transpose(R)), Q, R
    if kind == "reduce_xz_via_y":
        return P, Q & compose(P, R), R
    if kind == "reduce_yz_via_x":
        return P, Q, R & compose(transpose(P), Q)
    raise ValueError(f"unknown path function kind {kind!r}")


def _pair_index(p: Csp) -> dict[tuple[int, int], int]:
    return {p.scheme_of(c): k for k, c in enumerate(p.constraints)}


class PathFunction(SchemedFunction):
    """Triangle reduction for the variable triple ``x < y < z`` (CSP order)."""

    def __init__(self, kind: str, triple: tuple[int, int, int], components: tuple[int, int, int],
                 names: Sequence[str] = ()):
        if kind not in KINDS:
            raise ValueError(f"unknown path function kind {kind!r}")
        self.kind = kind
        self.triple = triple
        self.components = components  # (C_xy, C_xz, C_yz)
        scheme = tuple(sorted(components))
        self._slots = tuple(scheme.index(k) for k in components)
        x, y, z = triple
        self.modified = {"reduce_xy_via_z": (x, y), "reduce_xz_via_y": (x, z),
                         "reduce_yz_via_x": (y, z)}[kind]
        self.via = ({x, y, z} - set(self.modified)).pop()
        vx, vy, vz = names or triple
        sub = {"reduce_xy_via_z": (vz, vx, vy), "reduce_xz_via_y": (vy, vx, vz),
               "reduce_yz_via_x": (vx, vy, vz)}[kind]
        super().__init__(scheme, idempotent=True, comm_keys=(("pair", self.modified),),
                         label="f^{}_{{{},{}}}".format(*sub))

    def transform(self, values):
        P, Q, R = (values[s] for s in self._slots)
        out = list(values)
        for s, v in zip(self._slots, apply_path_function(self.kind, P, Q, R)):
            out[s] = v
        return out


def make_path_functions(p: Csp) -> tuple[PathFunction, ...]:
    require_standardized(p)
    idx = _pair_index(p)
    fs = []
    for x, y, z in itertools.combinations(range(p.n), 3):
        comps = (idx[x, y], idx[x, z], idx[y, z])
        names = tuple(p.variables[v] for v in (x, y, z))
        fs.extend(PathFunction(kind, (x, y, z), comps, names) for kind in KINDS)
    return tuple(fs)


def path_comm_set(f: PathFunction, functions: Sequence[PathFunction]) -> frozenset:
    """Functions reducing the same constraint through a different third variable."""
    return frozenset(g for g in functions if g is not f and g.modified == f.modified)


def _policy(policy, functions) -> UpdatePolicy:
    if policy is None:
        return UpdatePolicy("idempotent")
    if isinstance(policy, str):
        return comm_policy(functions, policy) if policy in ("commutativity", "both") \
            else UpdatePolicy(policy)
    return policy


def comm_policy(functions: Sequence[PathFunction], mode: str = "both") -> UpdatePolicy:
    return UpdatePolicy(mode, {f: path_comm_set(f, functions) for f in functions})


def relations_of(p: Csp) -> CompoundValue:
    return CompoundValue.bottom([c.tuples for c in p.constraints])


def _rel(rels: dict, a: int, b: int):
    """``C_{a,b}``, using the transpose of ``C_{b,a}`` when ``b`` precedes ``a``."""
    return rels[a, b] if a < b else transpose(rels[b, a])


def is_path_consistent(p: Csp) -> bool:
    """Every 3-subset {x, y, z}: ``C_xz`` is contained in ``C_xy . C_yz``."""
    require_standardized(p)
    rels = {p.scheme_of(c): c.tuples for c in p.constraints}
    for x, y, z in itertools.permutations(range(p.n), 3):
        if not _rel(rels, x, z) <= compose(_rel(rels, x, y), _rel(rels, y, z)):
            return False
    return True


def is_path_consistent_subsequence(p: Csp) -> bool:
    """The same property stated with original constraints and transposes only."""
    require_standardized(p)
    rels = {p.scheme_of(c): c.tuples for c in p.constraints}
    for x, y, z in itertools.combinations(range(p.n), 3):
        cxy, cxz, cyz = rels[x, y], rels[x, z], rels[y, z]
        if not (cxy <= compose(cxz, transpose(cyz))
                and cxz <= compose(cxy, cyz)
                and cyz <= compose(transpose(cxy), cxz)):
            return False
    return True


def path(p: Csp, *, policy: UpdatePolicy | str | None = None, select=None,
         verify: bool = False) -> tuple[Csp, RunStats]:
    """Largest path consistent constraints below ``p``'s."""
    functions = make_path_functions(p)
    d, stats = run_cd(functions, relations_of(p), _policy(policy, functions),
                      select=select, verify=verify)
    return p.with_relations(d.components), stats


# -- PC-2 ---------------------------------------------------------------------

def _v0(n: int) -> list[tuple[int, int, int]]:
    return [(x, u, y) for x, y in itertools.combinations(range(n), 2)
            for u in range(n) if u not in (x, y)]


def _v_xy(n: int, x: int, y: int) -> list[tuple[int, int, int]]:
    others = [u for u in range(n) if u not in (x, y)]
    return ([(x, y, u) for u in others if x < u]
            + [(y, x, u) for u in others if y < u]
            + [(u, x, y) for u in others if u < y]
            + [(u, y, x) for u in others if u < x])


def _reduce(rels: dict, triple) -> frozenset:
    x, u, y = triple
    return rels[x, y] & compose(_rel(rels, x, u), _rel(rels, u, y))


def pc2(p: Csp, *, select=None, verify: bool = False) -> tuple[Csp, RunStats]:
    """Path consistency with a worklist of variable triples ``(x, u, y)``.

    A triple stands for reducing ``E_xy`` through ``u``.  When ``E_xy``
    shrinks, only triples that begin or end with ``x, y`` or ``y, x`` are
    queued again.
    """
    require_standardized(p)
    idx = _pair_index(p)
    rels = {pair: p.constraints[k].tuples for pair, k in idx.items()}
    select = make_select(select)
    stats = RunStats()
    v0 = _v0(p.n)
    pending = dict.fromkeys(v0)
    stats.additions = stats.seeded = stats.peak = len(pending)

    while pending:
        if verify:
            for t in v0:
                if t not in pending and _reduce(rels, t) != rels[t[0], t[2]]:
                    raise ContractViolation(
                        f"invariant I broken: triple {t} is not queued but not stable",
                        assumption="I")
        triple = select.choose(pending)
        x, _, y = triple
        new = _reduce(rels, triple)
        stats.applications += 1
        if new != rels[x, y]:
            rels[x, y] = new
            for t in _v_xy(p.n, x, y):
                stats.additions += 1
                pending[t] = None
        del pending[triple]
        stats.peak = max(stats.peak, len(pending))
    return p.with_relations([rels[pair] for pair in (p.scheme_of(c) for c in p.constraints)]), stats
