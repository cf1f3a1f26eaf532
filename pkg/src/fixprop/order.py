"""Compound values over products of finite power-set orderings.

A :class:`CompoundValue` is an n-tuple of finite sets, each a subset of a
fixed per-component universe.  The orderings used everywhere in this package
are componentwise *reversed* inclusion: the universes form the least element
and a value moves "up" as its sets shrink.

Component indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .exceptions import ArityError, ContractViolation, DomainError

Atom = Hashable
Sets = tuple  # tuple[frozenset, ...]


@dataclass(frozen=True)
class Scheme:
    """Strictly increasing, nonempty sequence of component indices."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(self.indices)
        object.__setattr__(self, "indices", idx)
        if not idx:
            raise ArityError("a scheme must contain at least one index")
        if any(not isinstance(i, int) or i < 0 for i in idx):
            raise ArityError(f"scheme indices must be nonnegative ints: {idx}")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ArityError(f"scheme indices must be strictly increasing: {idx}")

    @classmethod
    def of(cls, indices: Scheme | Iterable[int]) -> Scheme:
        if isinstance(indices, Scheme):
            return indices
        if isinstance(indices, int):
            return cls((indices,))
        return cls(tuple(indices))

    def check(self, n: int) -> None:
        if self.indices[-1] >= n:
            raise ArityError(f"scheme {self.indices} out of range for arity {n}")

    def complement(self, n: int) -> tuple[int, ...]:
        own = set(self.indices)
        return tuple(i for i in range(n) if i not in own)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __contains__(self, i):
        return i in self.indices


def _freeze(sets: Iterable[Iterable[Atom]]) -> tuple[frozenset, ...]:
    return tuple(frozenset(s) for s in sets)


@dataclass(frozen=True)
class CompoundValue:
    """An n-tuple of finite sets, each inside its component universe."""

    components: tuple[frozenset, ...]
    universes: tuple[frozenset, ...]

    def __post_init__(self):
        comps = _freeze(self.components)
        unis = _freeze(self.universes)
        if len(comps) != len(unis):
            raise ArityError(
                f"{len(comps)} components but {len(unis)} universes")
        for i, (c, u) in enumerate(zip(comps, unis)):
            if not c <= u:
                extra = sorted(map(repr, c - u))
                raise DomainError(
                    f"component {i} has elements outside its universe: {extra}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "universes", unis)

    @classmethod
    def bottom(cls, universes: Sequence[Iterable[Atom]]) -> CompoundValue:
        unis = _freeze(universes)
        return cls(unis, unis)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def replace(self, scheme, values: Sequence[Iterable[Atom]]) -> CompoundValue:
        """Inject ``values`` at the positions of ``scheme``."""
        s = Scheme.of(scheme)
        s.check(len(self))
        if len(values) != len(s):
            raise ArityError(
                f"{len(values)} values for a scheme of length {len(s)}")
        comps = list(self.components)
        for i, v in zip(s, values):
            comps[i] = frozenset(v)
        return CompoundValue(tuple(comps), self.universes)

    def issubset(self, other: CompoundValue) -> bool:
        """Componentwise inclusion, i.e. ``other`` is below ``self`` in the ordering."""
        _same_shape(self, other)
        return all(a <= b for a, b in zip(self.components, other.components))

    def is_empty_somewhere(self) -> bool:
        return any(not c for c in self.components)


def _same_shape(d: CompoundValue, e: CompoundValue) -> None:
    if len(d) != len(e):
        raise ArityError(f"arity mismatch: {len(d)} vs {len(e)}")


def project(d: CompoundValue, s) -> tuple[frozenset, ...]:
    """Return the components of ``d`` selected by scheme ``s``, in scheme order."""
    s = Scheme.of(s)
    s.check(len(d))
    return tuple(d.components[i] for i in s)


def differing_components(d: CompoundValue, e: CompoundValue) -> set[int]:
    _same_shape(d, e)
    return {i for i, (a, b) in enumerate(zip(d.components, e.components)) if a != b}


class SchemedFunction:
    """A transformer on the sub-tuple of components picked out by a scheme.

    ``transform`` maps a tuple of frozensets (scheme order) to a tuple of the
    same length.  Subclasses may override :meth:`transform` instead of
    passing a callable.  Instances hash by identity, so two functions with
    the same behaviour are still distinct members of a function set.

    ``idempotent`` is a claim, not a proof; :mod:`fixprop.oracle` checks it.
    ``comm_keys`` are opaque tags: functions sharing a tag are taken to
    commute by :func:`fixprop.iterate.comm_from_keys`.
    """

    def __init__(
        self,
        scheme,
        transform: Callable[[tuple], Sequence[Iterable[Atom]]] | None = None,
        *,
        idempotent: bool = False,
        comm_keys: Iterable[Hashable] = (),
        label: str | None = None,
    ):
        self.scheme = Scheme.of(scheme)
        if transform is not None:
            self._transform = transform
        elif type(self).transform is SchemedFunction.transform:
            raise TypeError("no transform given and transform() not overridden")
        self.idempotent = bool(idempotent)
        self.comm_keys = frozenset(comm_keys)
        self.label = label if label is not None else f"f{self.scheme.indices}"

    def transform(self, values: tuple) -> Sequence[Iterable[Atom]]:
        return self._transform(values)

    def __call__(self, values: Sequence[Iterable[Atom]]) -> tuple[frozenset, ...]:
        values = _freeze(values)
        if len(values) != len(self.scheme):
            raise ArityError(
                f"{self.label}: got {len(values)} inputs for scheme "
                f"{self.scheme.indices}")
        out = _freeze(self.transform(values))
        if len(out) != len(values):
            raise ContractViolation(
                f"{self.label}: transform returned {len(out)} sets, "
                f"expected {len(values)}", assumption="arity")
        for k, (before, after) in enumerate(zip(values, out)):
            if not after <= before:
                raise ContractViolation(
                    f"{self.label}: output set {k} grew (not inflationary "
                    f"w.r.t. reversed inclusion)", assumption="inflationary")
        return out

    def depends_on(self, i: int) -> bool:
        return i in self.scheme

    def __repr__(self):
        return f"<{type(self).__name__} {self.label} on {self.scheme.indices}>"


def apply_extended(f: SchemedFunction, d: CompoundValue) -> CompoundValue:
    """The canonic extension: apply ``f`` on its scheme, keep everything else."""
    f.scheme.check(len(d))
    out = f(project(d, f.scheme))
    return d.replace(f.scheme, out)


def compose_extended(*functions: SchemedFunction) -> Callable[[CompoundValue], CompoundValue]:
    """``compose_extended(f, g)(d) == apply_extended(f, apply_extended(g, d))``."""

    def run(d: CompoundValue) -> CompoundValue:
        for f in reversed(functions):
            d = apply_extended(f, d)
        return d

    return run
