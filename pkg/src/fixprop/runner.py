"""Dispatch of the propagation algorithms by name."""

from __future__ import annotations

from .arc import ac3, hyper_arc
from .directional import dac, darc, dpath, dpc
from .exceptions import ContractViolation, FixpropError
from .iterate import RunStats
from .model import Csp, standardize
from .path import path, pc2

DOMAIN_ALGOS = ("hyperarc", "ac3", "dac")
RELATION_ALGOS = ("path", "pc2", "dpc")
DIRECTIONAL = ("dac", "dpc")
NEEDS_STANDARD = ("path", "pc2", "dac", "dpc", "darc", "dpath")
# single-pass engine forms, reachable from the API but not the command line
SI_FORMS = ("darc", "dpath")


def run_algorithm(p: Csp, algo: str, *, order=None, select=None,
                  verify: bool = False) -> tuple[Csp, RunStats]:
    """Dispatch one propagation algorithm by name."""
    if algo in NEEDS_STANDARD:
        p = standardize(p)
    if algo == "hyperarc":
        return hyper_arc(p, select=select, verify=verify)
    if algo == "ac3":
        return ac3(p, select=select, verify=verify)
    if algo == "path":
        return path(p, select=select, verify=verify)
    if algo == "pc2":
        return pc2(p, select=select, verify=verify)
    if algo == "dac":
        out, stats = dac(p, order)
        if verify:
            _cross_check(out, darc(p, order, verify=True)[0], algo)
        return out, stats
    if algo == "dpc":
        out, stats = dpc(p, order)
        if verify:
            _cross_check(out, dpath(p, order, verify=True)[0], algo)
        return out, stats
    if algo == "darc":
        return darc(p, order, verify=verify)
    if algo == "dpath":
        return dpath(p, order, verify=verify)
    raise FixpropError(f"unknown algorithm {algo!r}")


def _cross_check(out: Csp, reference: Csp, algo: str) -> None:
    if out != reference:
        raise ContractViolation(f"{algo} disagrees with its single-pass reference run")
