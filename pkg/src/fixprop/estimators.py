"""scikit-learn style wrappers around the propagation algorithms.

``fit`` runs propagation on a CSP and stores the reduced domains (or
relations) plus run counters; ``transform`` intersects another CSP over the
same variables with what was learned.  ``fit_transform(p)`` therefore
returns the propagated CSP.

>>> from fixprop.estimators import ArcConsistency
>>> est = ArcConsistency(algorithm="ac3").fit(csp)      # doctest: +SKIP
>>> est.stats_.applications                              # doctest: +SKIP
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .model import Csp
from .runner import run_algorithm
from .validation import check_csp, check_order, check_same_variables, check_selection


class _Propagator(TransformerMixin, BaseEstimator):
    _algorithms: tuple[str, ...] = ()
    _standardize = False
    _acts_on = "domains"

    def _run(self, p: Csp):
        raise NotImplementedError

    def fit(self, X, y=None):
        if self.algorithm not in self._algorithms:
            raise ValueError(f"algorithm must be one of {self._algorithms}, "
                             f"got {self.algorithm!r}")
        p = check_csp(X, standardized=self._standardize)
        result, stats = self._run(p)
        self.result_ = result
        self.stats_ = stats
        self.variables_ = p.variables
        self.consistent_ = not result.has_empty()
        if self._acts_on == "domains":
            self.domains_ = result.domains
        else:
            self.relations_ = {p.scheme_of(c): c.tuples for c in result.constraints}
        return self

    def transform(self, X) -> Csp:
        check_is_fitted(self, "result_")
        p = check_csp(X, standardized=self._standardize)
        check_same_variables(p, self.variables_)
        if self._acts_on == "domains":
            return p.restrict([a & b for a, b in zip(p.domains, self.domains_)])
        rels = [c.tuples & self.relations_[p.scheme_of(c)] for c in p.constraints]
        return p.with_relations(rels)


class ArcConsistency(_Propagator):
    """Hyper-arc (``"hyperarc"``) or binary arc consistency (``"ac3"``)."""

    _algorithms = ("ac3", "hyperarc")

    def __init__(self, algorithm: str = "ac3", selection="fifo", verify: bool = False):
        self.algorithm = algorithm
        self.selection = selection
        self.verify = verify

    def _run(self, p):
        return run_algorithm(p, self.algorithm, select=check_selection(self.selection),
                             verify=self.verify)


class PathConsistency(_Propagator):
    _algorithms = ("pc2", "path")
    _standardize = True
    _acts_on = "relations"

    def __init__(self, algorithm: str = "pc2", selection="fifo", verify: bool = False):
        self.algorithm = algorithm
        self.selection = selection
        self.verify = verify

    def _run(self, p):
        return run_algorithm(p, self.algorithm, select=check_selection(self.selection),
                             verify=self.verify)


class DirectionalArcConsistency(_Propagator):
    """Directional arc consistency along ``order`` (declaration order when None)."""

    _algorithms = ("dac", "darc")
    _standardize = True

    def __init__(self, order=None, algorithm: str = "dac", verify: bool = False):
        self.order = order
        self.algorithm = algorithm
        self.verify = verify

    def _run(self, p):
        return run_algorithm(p, self.algorithm, order=check_order(p, self.order),
                             verify=self.verify)


class DirectionalPathConsistency(_Propagator):
    _algorithms = ("dpc", "dpath")
    _standardize = True
    _acts_on = "relations"

    def __init__(self, order=None, algorithm: str = "dpc", verify: bool = False):
        self.order = order
        self.algorithm = algorithm
        self.verify = verify

    def _run(self, p):
        return run_algorithm(p, self.algorithm, order=check_order(p, self.order),
                             verify=self.verify)
