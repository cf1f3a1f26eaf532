"""Input checking shared by the estimator wrappers."""

from __future__ import annotations

import os
from pathlib import Path

from .directional import VariableOrder
from .exceptions import ConfigurationError
from .iterate import make_select
from .model import Csp, standardize
from .textio import load_csp, parse_csp


def check_csp(X, *, standardized: bool = False) -> Csp:
    """Accept a :class:`Csp`, CSP text, or a path to a CSP file.

    With ``standardized=True`` the result is passed through
    :func:`fixprop.model.standardize`.
    """
    if isinstance(X, Csp):
        p = X
    elif isinstance(X, Path) or (isinstance(X, str) and "\n" not in X and os.path.exists(X)):
        p = load_csp(X)
    elif isinstance(X, str):
        p = parse_csp(X)
    else:
        raise TypeError(f"expected a Csp, CSP text or a file path, got {type(X).__name__}")
    return standardize(p) if standardized else p


def check_order(p: Csp, order) -> VariableOrder:
    if order is None:
        return VariableOrder(p.variables)
    if isinstance(order, str):
        order = [v.strip() for v in order.split(",")]
    vo = VariableOrder.of(order)
    vo.check(p)
    return vo


def check_selection(select):
    try:
        return make_select(select)
    except ConfigurationError:
        raise
    except Exception as exc:  # noqa: BLE001
        raise ConfigurationError(f"bad selection policy {select!r}: {exc}") from exc


def check_same_variables(p: Csp, variables) -> None:
    if tuple(p.variables) != tuple(variables):
        raise ValueError(
            f"CSP has variables {p.variables}, the estimator was fitted on {tuple(variables)}")
