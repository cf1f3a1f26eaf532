"""Generic fixpoint iteration engines.

``run_gi`` is the worklist loop with a caller-supplied update rule.
``run_cd`` specialises it to schemed functions, where the update rule only
has to look at which components changed; with an :class:`UpdatePolicy` it
also drops idempotent and commuting functions from the re-queue set.
``run_si`` is the loop-free variant: apply each function of a suitably
ordered sequence exactly once.

The pending set ``G`` is kept as an insertion-ordered dict so that runs
are reproducible for a given selection policy.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .exceptions import ConfigurationError, ContractViolation, SemiCommutativityError
from .order import CompoundValue, SchemedFunction, apply_extended

log = logging.getLogger(__name__)

MODES = ("plain", "idempotent", "commutativity", "both")


@dataclass
class RunStats:
    """Scheduling counters of one engine run.

    ``additions`` counts every insertion into the pending set, including the
    initial seeding (``seeded``) and re-insertions of already pending items.
    """

    applications: int = 0
    additions: int = 0
    seeded: int = 0
    peak: int = 0

    def as_row(self) -> tuple[int, int, int]:
        return (self.applications, self.additions, self.peak)


# -- selection policies -------------------------------------------------------

class FifoSelect:
    name = "fifo"

    def choose(self, pending: Mapping):
        return next(iter(pending))

    def fresh(self):
        return type(self)()


class LifoSelect(FifoSelect):
    name = "lifo"

    def choose(self, pending: Mapping):
        return next(reversed(pending))


class RandomSelect:
    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = random.Random(seed)
        self.name = f"random:{seed}"

    def choose(self, pending: Mapping):
        k = self._rng.randrange(len(pending))
        for i, item in enumerate(pending):
            if i == k:
                return item
        raise AssertionError("unreachable")

    def fresh(self):
        return RandomSelect(self.seed)


class ScriptedSelect:
    """Follow a fixed script of choices, then fall back to another policy.

    Script entries are matched against ``key(item)``.  An entry whose item is
    not pending when its turn comes is skipped and recorded in ``skipped``.
    """

    name = "scripted"

    def __init__(self, script: Sequence[Hashable], key: Callable = lambda item: item,
                 then=None):
        self.script = list(script)
        self.key = key
        self.then = make_select(then)
        self._pos = 0
        self.skipped: list = []

    def choose(self, pending: Mapping):
        while self._pos < len(self.script):
            want = self.script[self._pos]
            self._pos += 1
            for item in pending:
                if self.key(item) == want:
                    return item
            self.skipped.append(want)
        return self.then.choose(pending)

    def fresh(self):
        return ScriptedSelect(self.script, self.key, self.then.fresh())


def make_select(select=None):
    """Build a fresh selection policy from a name, ``"random:<seed>"`` or an object."""
    if select is None or select == "fifo":
        return FifoSelect()
    if select == "lifo":
        return LifoSelect()
    if isinstance(select, str):
        if select.startswith("random"):
            _, _, seed = select.partition(":")
            return RandomSelect(int(seed) if seed else 0)
        raise ConfigurationError(f"unknown selection policy {select!r}")
    if hasattr(select, "choose"):
        return select.fresh() if hasattr(select, "fresh") else select
    raise ConfigurationError(f"not a selection policy: {select!r}")


# -- update rules -------------------------------------------------------------

@dataclass(frozen=True)
class UpdatePolicy:
    """Which functions may be left out when re-queueing after ``g`` fires.

    ``idempotent`` and ``both`` drop ``g`` itself when it claims idempotence;
    ``commutativity`` and ``both`` drop every member of ``comm[g]``.
    """

    mode: str = "plain"
    comm: Mapping[SchemedFunction, frozenset] | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigurationError(f"unknown update mode {self.mode!r}")
        if self.uses_comm and self.comm is None:
            raise ConfigurationError(f"mode {self.mode!r} needs a comm mapping")
        if self.comm is not None:
            frozen = {g: frozenset(fs) for g, fs in self.comm.items()}
            for g, fs in frozen.items():
                if g in fs:
                    raise ConfigurationError(f"{g.label} is listed in its own Comm set")
            object.__setattr__(self, "comm", frozen)

    @property
    def uses_idempotence(self) -> bool:
        return self.mode in ("idempotent", "both")

    @property
    def uses_comm(self) -> bool:
        return self.mode in ("commutativity", "both")

    def validate(self, functions: Iterable[SchemedFunction]) -> None:
        if self.comm is None:
            return
        known = set(functions)
        for g, fs in self.comm.items():
            unknown = ([g] if g not in known else []) + [f for f in fs if f not in known]
            if unknown:
                raise ConfigurationError(
                    "Comm mapping mentions functions outside the run: "
                    + ", ".join(f.label for f in unknown))


def comm_from_keys(functions: Sequence[SchemedFunction]) -> dict[SchemedFunction, frozenset]:
    """Comm sets induced by shared ``comm_keys`` tags."""
    by_key: dict = {}
    for f in functions:
        for k in f.comm_keys:
            by_key.setdefault(k, []).append(f)
    comm = {}
    for f in functions:
        mates = set()
        for k in f.comm_keys:
            mates.update(by_key[k])
        mates.discard(f)
        comm[f] = frozenset(mates)
    return comm


def _dependents(functions: Sequence[SchemedFunction], n: int) -> list[list[int]]:
    deps: list[list[int]] = [[] for _ in range(n)]
    for pos, f in enumerate(functions):
        for i in f.scheme:
            deps[i].append(pos)
    return deps


def default_update(G, g: SchemedFunction, d: CompoundValue, d_new: CompoundValue,
                   functions: Sequence[SchemedFunction], *, dependents=None) -> list:
    """Functions depending on a component of ``g``'s scheme that ``g`` changed.

    Returned in the order of ``functions``.  ``G`` is accepted for signature
    compatibility with general update rules and is not consulted.
    """
    changed = [i for i in g.scheme if d[i] != d_new[i]]
    if not changed:
        return []
    if dependents is None:
        return [f for f in functions if any(f.depends_on(i) for i in changed)]
    positions = sorted({p for i in changed for p in dependents[i]})
    return [functions[p] for p in positions]


def prune_update(base: Iterable[SchemedFunction], g: SchemedFunction,
                 policy: UpdatePolicy) -> list:
    drop = set()
    if policy.uses_idempotence and g.idempotent:
        drop.add(g)
    if policy.uses_comm:
        drop |= policy.comm.get(g, frozenset())
    return [f for f in base if f not in drop]


# -- engines ------------------------------------------------------------------

def _as_value(bottoms) -> CompoundValue:
    if isinstance(bottoms, CompoundValue):
        return bottoms
    return CompoundValue.bottom(bottoms)


def _check_invariant(functions, pending, d):
    for f in functions:
        if f not in pending and apply_extended(f, d) != d:
            raise ContractViolation(
                f"invariant I broken: {f.label} is not pending but its "
                f"value is not a fixpoint", assumption="I")


def _check_update(functions, pending, g, d, d_new, upd):
    upd = set(upd)
    if d_new == d and upd:
        raise ContractViolation(
            f"assumption B broken: {g.label} changed nothing but "
            f"{len(upd)} functions were re-queued", assumption="B")
    if apply_extended(g, d_new) != d_new and g not in upd:
        raise ContractViolation(
            f"assumption C broken: {g.label} is not idempotent here but was "
            f"not re-queued", assumption="C")
    for f in functions:
        if f in pending or f in upd:
            continue
        if apply_extended(f, d) == d and apply_extended(f, d_new) != d_new:
            raise ContractViolation(
                f"assumption A broken: {f.label} was stable before {g.label} "
                f"fired, is unstable after, and was not re-queued",
                assumption="A")


def run_gi(functions: Sequence[SchemedFunction], bottom, update: Callable,
           select=None, verify: bool = False) -> tuple[CompoundValue, RunStats]:
    """Worklist iteration with an arbitrary update rule.

    ``update(G, g, d, d_new)`` receives the pending set after ``g`` was
    removed, the chosen function, the current value and ``g``'s result on
    it, and returns the functions to add back.  With ``verify`` the loop
    invariant, assumptions A/B/C and the termination measure are checked
    every iteration.
    """
    functions = list(dict.fromkeys(functions))
    select = make_select(select)
    d = _as_value(bottom)
    stats = RunStats()
    pending: dict = {}
    for f in functions:
        pending[f] = None
    stats.additions = stats.seeded = len(pending)
    stats.peak = len(pending)

    while pending:
        if verify:
            _check_invariant(functions, pending, d)
        size_before = len(pending)
        g = select.choose(pending)
        del pending[g]
        d_new = apply_extended(g, d)
        stats.applications += 1
        upd = update(pending, g, d, d_new)
        if verify:
            _check_update(functions, pending, g, d, d_new, upd)
        for f in upd:
            stats.additions += 1
            pending[f] = None
        if verify and not (d_new != d and d_new.issubset(d)) and not (
                d_new == d and len(pending) < size_before):
            raise ContractViolation(
                "termination measure did not decrease", assumption="termination")
        d = d_new
        stats.peak = max(stats.peak, len(pending))
    return d, stats


def run_cd(functions: Sequence[SchemedFunction], bottoms, policy: UpdatePolicy | None = None,
           select=None, verify: bool = False) -> tuple[CompoundValue, RunStats]:
    """Compound-domain iteration: re-queue by changed components, then prune."""
    functions = list(dict.fromkeys(functions))
    policy = policy or UpdatePolicy()
    policy.validate(functions)
    d0 = _as_value(bottoms)
    for f in functions:
        f.scheme.check(len(d0))
    deps = _dependents(functions, len(d0))

    def update(G, g, d, d_new):
        base = default_update(G, g, d, d_new, functions, dependents=deps)
        return prune_update(base, g, policy)

    return run_gi(functions, d0, update, select=select, verify=verify)


def run_si(sequence: Sequence[SchemedFunction], bottoms,
           verify: bool = False) -> tuple[CompoundValue, RunStats]:
    """Apply ``sequence[-1]`` first and ``sequence[0]`` last, once each.

    The result is the least common fixpoint provided every function is a
    closure and ``sequence[i]`` semi-commutes with ``sequence[j]`` for
    ``i > j``.  ``verify`` re-checks that the result is a common fixpoint.
    """
    d = _as_value(bottoms)
    stats = RunStats()
    for f in reversed(sequence):
        d = apply_extended(f, d)
        stats.applications += 1
    if verify:
        for f in sequence:
            if apply_extended(f, d) != d:
                raise SemiCommutativityError(
                    f"{f.label} does not fix the single-pass result; the "
                    f"sequence is not semi-commutative in the required order",
                    assumption="semi-commutativity")
    return d, stats
