"""Line-oriented text format for CSPs.

::

    # comment
    var x in {a, b}
    var y in {c, d}
    con C1 on (x, y) {(a, c), (b, d)}

Declaration order of ``var`` lines fixes the variable sequence.  A ``con``
statement may span several lines; it ends at the brace closing its tuple
set.  The constraint name is optional.
"""

from __future__ import annotations

import re
from pathlib import Path

from .exceptions import (AtomOutsideDomainError, ParseError, TupleArityError,
                         UnknownVariableError, VariableOrderError)
from .model import Constraint, Csp

_TOKEN = r"[A-Za-z0-9_.+\-']+"
_VAR = re.compile(rf"var\s+({_TOKEN})\s+in\s*\{{([^{{}}]*)\}}\s*$", re.S)
_CON = re.compile(rf"con\s+(?:({_TOKEN})\s+)?on\s*\(([^()]*)\)\s*\{{([^{{}}]*)\}}\s*$", re.S)
_TUPLE = re.compile(r"\(([^()]*)\)")
_ATOM = re.compile(rf"{_TOKEN}$")


def _statements(text: str):
    """Yield ``(first_line_number, statement_text)``, joining ``con`` continuations."""
    buf: list[str] = []
    start = 0
    depth = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not buf:
            start = lineno
        buf.append(line)
        depth += line.count("{") - line.count("}")
        if depth < 0:
            raise ParseError("unbalanced '}'", start)
        if depth == 0:
            yield start, "\n".join(buf)
            buf = []
    if buf:
        raise ParseError("unterminated statement (missing '}')", start)


def _atoms(body: str, lineno: int, what: str) -> list[str]:
    body = body.strip()
    if not body:
        return []
    out = []
    for part in body.split(","):
        part = part.strip()
        if not _ATOM.match(part):
            raise ParseError(f"bad atom {part!r} in {what}", lineno)
        out.append(part)
    return out


def parse_csp(text: str) -> Csp:
    variables: list[str] = []
    domains: dict[str, frozenset] = {}
    constraints: list[Constraint] = []
    for lineno, stmt in _statements(text):
        if stmt.startswith("var") and (m := _VAR.match(stmt)):
            name, body = m.groups()
            if name in domains:
                raise ParseError(f"variable {name!r} declared twice", lineno)
            variables.append(name)
            domains[name] = frozenset(_atoms(body, lineno, f"domain of {name}"))
        elif stmt.startswith("con") and (m := _CON.match(stmt)):
            constraints.append(_parse_con(m, stmt, lineno, variables, domains))
        else:
            raise ParseError(f"cannot parse statement: {stmt.splitlines()[0]!r}", lineno)
    return Csp(tuple(variables), tuple(domains[v] for v in variables), tuple(constraints))


def _parse_con(m, stmt, lineno, variables, domains) -> Constraint:
    name, vars_body, tuples_body = m.groups()
    label = name or "constraint"
    cvars = _atoms(vars_body, lineno, f"variable list of {label}")
    if not cvars:
        raise ParseError(f"{label} has no variables", lineno)
    for v in cvars:
        if v not in domains:
            raise UnknownVariableError(f"{label} mentions undeclared variable {v!r}", lineno)
    pos = [variables.index(v) for v in cvars]
    if any(a >= b for a, b in zip(pos, pos[1:])):
        raise VariableOrderError(
            f"{label}: variables {tuple(cvars)} must follow declaration order", lineno)
    leftover = _TUPLE.sub("", tuples_body).replace(",", "").strip()
    if leftover:
        raise ParseError(f"{label}: unexpected text {leftover.split()[0]!r} in tuple set", lineno)
    body_offset = m.start(3)
    tuples = set()
    for tm in _TUPLE.finditer(tuples_body):
        at = lineno + stmt.count("\n", 0, body_offset + tm.start())
        vals = _atoms(tm.group(1), at, f"tuple of {label}")
        if len(vals) != len(cvars):
            raise TupleArityError(
                f"{label}: tuple ({tm.group(1).strip()}) has {len(vals)} values, "
                f"expected {len(cvars)}", at)
        for v, a in zip(cvars, vals):
            if a not in domains[v]:
                raise AtomOutsideDomainError(
                    f"{label}: {a!r} is not in the domain of {v}", at)
        tuples.add(tuple(vals))
    return Constraint(tuple(cvars), frozenset(tuples), name)


def load_csp(path) -> Csp:
    return parse_csp(Path(path).read_text(encoding="utf-8"))


def _sorted(items):
    return sorted(items, key=lambda a: tuple(map(str, a)) if isinstance(a, tuple) else str(a))


def format_var(name: str, domain) -> str:
    return f"var {name} in {{{', '.join(map(str, _sorted(domain)))}}}"


def format_con(c: Constraint) -> str:
    tuples = ", ".join("(" + ", ".join(map(str, t)) + ")" for t in _sorted(c.tuples))
    return f"con {c.name} on ({', '.join(c.vars)}) {{{tuples}}}"


def format_csp(p: Csp, *, constraints: bool = True) -> str:
    """Canonical text: atoms and tuples sorted, one statement per line."""
    lines = [format_var(v, d) for v, d in zip(p.variables, p.domains)]
    if constraints:
        lines.extend(format_con(c) for c in p.constraints)
    return "\n".join(lines) + "\n" if lines else ""
