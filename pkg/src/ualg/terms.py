"""Terms, equations, term evaluation, and the satisfaction check.

Term syntax in files and on the CLI: prefix applications with parentheses
and commas, variables bare, nullary symbols written name().
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

from .core import FiniteAlgebra, UalgError


class TermError(UalgError):
    """Unbound variable, unknown symbol, or arity mismatch."""


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple["Term", ...]


Term = Union[Var, App]


def term_variables(term: Term) -> set[int]:
    if isinstance(term, Var):
        return {term.index}
    out: set[int] = set()
    for a in term.args:
        out |= term_variables(a)
    return out


def term_to_str(term: Term, variables: Sequence[str]) -> str:
    if isinstance(term, Var):
        return variables[term.index]
    return f"{term.symbol}({', '.join(term_to_str(a, variables) for a in term.args)})"


_TOKEN_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*|[(),])")


def parse_term(text: str, variables: Sequence[str]) -> Term:
    """Parse prefix term syntax: `and(x, or(y, one()))`."""
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise TermError(f"bad character in term at offset {pos}: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    var_index = {v: i for i, v in enumerate(variables)}

    def parse(at: int) -> tuple[Term, int]:
        if at >= len(tokens):
            raise TermError("unexpected end of term")
        tok = tokens[at]
        if tok in "(),":
            raise TermError(f"unexpected {tok!r} in term")
        if at + 1 < len(tokens) and tokens[at + 1] == "(":
            args: list[Term] = []
            at += 2
            if at < len(tokens) and tokens[at] == ")":
                return App(tok, ()), at + 1
            while True:
                arg, at = parse(at)
                args.append(arg)
                if at >= len(tokens):
                    raise TermError("unclosed application")
                if tokens[at] == ")":
                    return App(tok, tuple(args)), at + 1
                if tokens[at] != ",":
                    raise TermError(f"expected ',' or ')', got {tokens[at]!r}")
                at += 1
        if tok not in var_index:
            raise TermError(f"undeclared variable: {tok}")
        return Var(var_index[tok]), at + 1

    term, end = parse(0)
    if end != len(tokens):
        raise TermError(f"trailing tokens in term: {tokens[end:]}")
    return term


@dataclass(frozen=True)
class Equation:
    """lhs ≈ rhs, quantified over exactly the declared variable list."""

    lhs: Term
    rhs: Term
    variables: tuple[str, ...]
    label: str = ""

    def __post_init__(self):
        used = term_variables(self.lhs) | term_variables(self.rhs)
        if used and max(used) >= len(self.variables):
            raise TermError("equation uses an undeclared variable index")

    def render(self) -> str:
        return f"{term_to_str(self.lhs, self.variables)} = {term_to_str(self.rhs, self.variables)}"


@dataclass(frozen=True)
class EquationSet:
    name: str
    equations: tuple[Equation, ...]

    def __post_init__(self):
        if not self.name:
            raise ValueError("equation set needs a non-empty name")

    def labels(self) -> tuple[str, ...]:
        out = []
        for eq in self.equations:
            if eq.label and eq.label not in out:
                out.append(eq.label)
        return tuple(out)


class EvalStats:
    """Counts table lookups (one per application node, by construction)."""

    def __init__(self):
        self.lookups = 0


def eval_term(
    alg: FiniteAlgebra,
    term: Term,
    binding: dict[int, str],
    stats: Optional[EvalStats] = None,
) -> str:
    """Structural evaluation: variables project, applications evaluate
    their subterms and then do a single table lookup."""
    if isinstance(term, Var):
        try:
            return binding[term.index]
        except KeyError:
            raise TermError(f"unbound variable index {term.index}") from None
    if term.symbol not in alg.signature.by_name:
        raise TermError(f"unknown symbol: {term.symbol}")
    if alg.signature.arity(term.symbol) != len(term.args):
        raise TermError(
            f"arity mismatch for {term.symbol}: signature says "
            f"{alg.signature.arity(term.symbol)}, term has {len(term.args)}"
        )
    args = [eval_term(alg, a, binding, stats) for a in term.args]
    if stats is not None:
        stats.lookups += 1
    return alg.apply(term.symbol, *args)


@dataclass(frozen=True)
class SatisfactionResult:
    holds: bool
    counterexample: Optional[dict[str, str]] = None


def bindings(alg: FiniteAlgebra, variables: Sequence[str]) -> Iterator[dict[int, str]]:
    """All bindings in lexicographic order (carrier order per variable)."""
    for combo in itertools.product(alg.carrier, repeat=len(variables)):
        yield dict(enumerate(combo))


def satisfies(alg: FiniteAlgebra, eq: Equation) -> SatisfactionResult:
    """Brute force over every binding of the declared variables.  The
    first violating binding in lexicographic order is reported."""
    for binding in bindings(alg, eq.variables):
        lhs = eval_term(alg, eq.lhs, binding)
        rhs = eval_term(alg, eq.rhs, binding)
        if lhs != rhs:
            named = {eq.variables[i]: v for i, v in binding.items()}
            return SatisfactionResult(False, named)
    return SatisfactionResult(True)


@dataclass(frozen=True)
class SatisfactionReport:
    algebra: str
    equation_set: str
    results: tuple[tuple[Equation, SatisfactionResult], ...]

    @property
    def variety_member(self) -> bool:
        return all(r.holds for _, r in self.results)

    def failures(self) -> list[tuple[Equation, SatisfactionResult]]:
        return [(eq, r) for eq, r in self.results if not r.holds]


def satisfies_all(alg: FiniteAlgebra, eqs: EquationSet, workers: int = 1) -> SatisfactionReport:
    """Per-equation verdicts; "variety member" iff all pass.

    workers > 1 partitions the equations across threads; the merge is in
    equation order, so output is schedule-independent.
    """
    equations = list(eqs.equations)
    if workers > 1 and len(equations) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(lambda e: satisfies(alg, e), equations))
    else:
        verdicts = [satisfies(alg, eq) for eq in equations]
    return SatisfactionReport(
        algebra=alg.name,
        equation_set=eqs.name,
        results=tuple(zip(equations, verdicts)),
    )
