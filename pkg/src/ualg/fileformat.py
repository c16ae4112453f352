"""The two text formats: algebra files and equation files.

Algebra file, one or more blocks:

    algebra B
    elements b1 b2
    op zero/0 = b1
    op and/2 = b1 b1 b1 b2
    end

Tables are row-major in lexicographic argument order with the leftmost
argument most significant.  `#` starts a comment; tokens match
[A-Za-z][A-Za-z0-9_]*.

Equation file:

    vars x y
    eq and(x, y) = and(y, x)
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import IDENT_RE, FiniteAlgebra, InvalidAlgebra, UalgError
from .terms import Equation, EquationSet, TermError, parse_term, term_to_str
from . import core


class ParseError(UalgError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


_OP_RE = re.compile(r"(?P<name>[A-Za-z][A-Za-z0-9_]*)/(?P<arity>\d+)\Z")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_algebra_file(text: str) -> list[FiniteAlgebra]:
    """Parse and validate every block; the first lexical, structural, or
    validation problem is raised as a positioned ParseError."""
    algebras: list[FiniteAlgebra] = []
    name = None
    elements: list[str] = []
    ops: list[tuple[str, int, list[str]]] = []
    block_line = 0

    def fail(lineno: int, col: int, msg: str):
        raise ParseError(lineno, col, msg)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        tokens = line.split()
        if not tokens:
            continue
        head = tokens[0]
        col = line.index(head) + 1
        if head == "algebra":
            if name is not None:
                fail(lineno, col, "previous algebra block not closed with `end`")
            if len(tokens) != 2:
                fail(lineno, col, "expected: algebra <Name>")
            if not IDENT_RE.match(tokens[1]):
                fail(lineno, col, f"bad algebra name: {tokens[1]!r}")
            name = tokens[1]
            elements, ops = [], []
            block_line = lineno
        elif head == "elements":
            if name is None:
                fail(lineno, col, "`elements` outside an algebra block")
            elements = tokens[1:]
            for e in elements:
                if not IDENT_RE.match(e):
                    fail(lineno, line.index(e) + 1, f"bad element token: {e!r}")
        elif head == "op":
            if name is None:
                fail(lineno, col, "`op` outside an algebra block")
            if len(tokens) < 4 or tokens[2] != "=":
                fail(lineno, col, "expected: op <name>/<arity> = <values...>")
            m = _OP_RE.match(tokens[1])
            if not m:
                fail(lineno, col, f"bad operation header: {tokens[1]!r}")
            arity = int(m.group("arity"))
            values = tokens[3:]
            expected = len(elements) ** arity
            if len(values) != expected:
                fail(
                    lineno,
                    col,
                    f"expected {expected} values, found {len(values)} for {tokens[1]}",
                )
            ops.append((m.group("name"), arity, values))
        elif head == "end":
            if name is None:
                fail(lineno, col, "`end` outside an algebra block")
            try:
                algebras.append(core.validate_algebra(name, elements, ops))
            except InvalidAlgebra as exc:
                fail(block_line, 1, f"invalid algebra {name}: {'; '.join(exc.problems)}")
            name = None
        else:
            fail(lineno, col, f"unknown directive: {head!r}")
    if name is not None:
        fail(block_line, 1, f"algebra block {name} not closed with `end`")
    return algebras


def serialize_algebra(alg: FiniteAlgebra) -> str:
    lines = [f"algebra {alg.name}", f"elements {' '.join(alg.carrier)}"]
    for (sym, arity), table in zip(alg.signature.symbols, alg.tables):
        values = " ".join(alg.carrier[v] for v in table)
        lines.append(f"op {sym}/{arity} = {values}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize_algebras(algs: list[FiniteAlgebra]) -> str:
    return "\n".join(serialize_algebra(a) for a in algs)


def parse_equation_file(text: str, name: str = "equations") -> EquationSet:
    variables: tuple[str, ...] = ()
    seen_vars = False
    equations: list[Equation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        tokens = line.split()
        if not tokens:
            continue
        if tokens[0] == "vars":
            variables = tuple(tokens[1:])
            for v in variables:
                if not IDENT_RE.match(v):
                    raise ParseError(lineno, 1, f"bad variable token: {v!r}")
            seen_vars = True
        elif tokens[0] == "eq":
            if not seen_vars:
                raise ParseError(lineno, 1, "`eq` before `vars`")
            body = line.split(None, 1)[1]
            if "=" not in body:
                raise ParseError(lineno, 1, "expected: eq <term> = <term>")
            lhs_text, rhs_text = body.split("=", 1)
            try:
                lhs = parse_term(lhs_text, variables)
                rhs = parse_term(rhs_text, variables)
            except TermError as exc:
                raise ParseError(lineno, 1, str(exc)) from None
            equations.append(Equation(lhs=lhs, rhs=rhs, variables=variables))
        else:
            raise ParseError(lineno, 1, f"unknown directive: {tokens[0]!r}")
    return EquationSet(name=name, equations=tuple(equations))


def serialize_equation_set(eqs: EquationSet) -> str:
    lines = []
    current_vars = None
    for eq in eqs.equations:
        if eq.variables != current_vars:
            current_vars = eq.variables
            lines.append(f"vars {' '.join(current_vars)}")
        lines.append(
            f"eq {term_to_str(eq.lhs, eq.variables)} = {term_to_str(eq.rhs, eq.variables)}"
        )
    return "\n".join(lines) + "\n"
