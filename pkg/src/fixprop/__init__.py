"""Constraint propagation as generic fixpoint iteration.

Engines (:mod:`fixprop.iterate`) compute least common fixpoints of
inflationary, monotonic functions on products of finite power sets.  The
consistency modules instantiate them: :mod:`fixprop.arc` (hyper-arc
consistency, AC-3), :mod:`fixprop.path` (path consistency, PC-2) and
:mod:`fixprop.directional` (DAC, DPC).  The generic path consistency
engine is ``fixprop.path.path``; it is not re-exported here so that the
name keeps referring to the module.  :mod:`fixprop.oracle` holds the
brute-force references used by the test suite.
"""

from importlib import resources

from .arc import ac3, arc_comm_set, hyper_arc, make_pi_functions
from .directional import dac, darc, dpath, dpc, reorder
from .iterate import RunStats, UpdatePolicy, run_cd, run_gi, run_si
from .model import Constraint, Csp, compose, is_solution, standardize, transpose
from .order import CompoundValue, Scheme, SchemedFunction, apply_extended, project
from .path import make_path_functions, path_comm_set, pc2
from .textio import format_csp, load_csp, parse_csp

__version__ = "0.1.0"

__all__ = [
    "Constraint", "CompoundValue", "Csp", "RunStats", "Scheme", "SchemedFunction",
    "UpdatePolicy", "ac3", "apply_extended", "arc_comm_set", "compose", "dac", "darc",
    "dpath", "dpc", "example_path", "format_csp", "hyper_arc", "is_solution", "load_csp",
    "make_path_functions", "make_pi_functions", "parse_csp", "path_comm_set", "pc2",
    "project", "reorder", "run_cd", "run_gi", "run_si", "standardize", "transpose",
]


def example_path(name: str) -> str:
    """Filesystem path of a bundled example, e.g. ``example_path("crossword.csp")``."""
    return str(resources.files(__name__).joinpath("data", name))
