"""Finite algebras as operation tables over ordered carriers of urelements.

Carriers are ordered tuples of opaque identifier strings.  Every operation
is stored as a flat row-major value table of carrier *indices*, with the
leftmost argument most significant, so two algebras are bit-comparable and
iteration order is deterministic everywhere.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class UalgError(Exception):
    """Base class for errors raised by this package."""


class InvalidAlgebra(UalgError):
    """Raised by validate_algebra; carries the full list of violations."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class BudgetExceeded(UalgError):
    """A search or enumeration exceeded its configured budget."""


@dataclass(frozen=True)
class Signature:
    """Ordered operation symbols with finite arities.

    Order is significant for display and file layout; cross-algebra
    comparisons match symbols by (name, arity) instead.
    """

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbol name in signature: {names}")
        for name, arity in self.symbols:
            if not IDENT_RE.match(name):
                raise ValueError(f"bad symbol name: {name!r}")
            if arity < 0:
                raise ValueError(f"negative arity for {name}")

    @cached_property
    def by_name(self) -> dict[str, int]:
        return {name: arity for name, arity in self.symbols}

    def arity(self, symbol: str) -> int:
        try:
            return self.by_name[symbol]
        except KeyError:
            raise KeyError(f"unknown symbol: {symbol}") from None

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def nullary_names(self) -> tuple[str, ...]:
        return tuple(name for name, arity in self.symbols if arity == 0)

    def matches(self, other: "Signature") -> bool:
        """Name/arity compatibility, ignoring positional order."""
        return set(self.symbols) == set(other.symbols)


def _row_major_index(args: Sequence[int], size: int) -> int:
    idx = 0
    for a in args:
        idx = idx * size + a
    return idx


@dataclass(frozen=True)
class FiniteAlgebra:
    """An algebra: ordered carrier of urelements plus total operation tables.

    tables[i] is the row-major value table (carrier indices) of symbol
    signature.symbols[i]; a nullary table has exactly one entry.
    """

    name: str
    carrier: tuple[str, ...]
    signature: Signature
    tables: tuple[tuple[int, ...], ...]

    @cached_property
    def index_of(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.carrier)}

    @cached_property
    def _table_by_name(self) -> dict[str, tuple[int, ...]]:
        return {sym: tab for (sym, _), tab in zip(self.signature.symbols, self.tables)}

    def table(self, symbol: str) -> tuple[int, ...]:
        try:
            return self._table_by_name[symbol]
        except KeyError:
            raise KeyError(f"unknown symbol: {symbol}") from None

    def size(self) -> int:
        return len(self.carrier)

    def apply_index(self, symbol: str, args: Sequence[int]) -> int:
        arity = self.signature.arity(symbol)
        if len(args) != arity:
            raise ValueError(f"{symbol} expects {arity} arguments, got {len(args)}")
        return self.table(symbol)[_row_major_index(args, len(self.carrier))]

    def apply(self, symbol: str, *args: str) -> str:
        idx = [self.index_of[a] for a in args]
        return self.carrier[self.apply_index(symbol, idx)]

    def nullary_value(self, symbol: str) -> str:
        return self.carrier[self.table(symbol)[0]]

    def arg_tuples(self, arity: int) -> Iterable[tuple[int, ...]]:
        """All argument index tuples in row-major (lexicographic) order."""
        return itertools.product(range(len(self.carrier)), repeat=arity)


def validate_algebra(
    name: str,
    elements: Sequence[str],
    operations: Sequence[tuple[str, int, Sequence[str]]],
) -> FiniteAlgebra:
    """Validate a raw description and build a FiniteAlgebra.

    operations is a sequence of (symbol, arity, row-major value list of
    element names).  Raises InvalidAlgebra listing every violated
    invariant; never returns a partially valid algebra.
    """
    problems: list[str] = []
    if not elements:
        problems.append("empty carrier")
    seen = set()
    for e in elements:
        if not IDENT_RE.match(e):
            problems.append(f"bad element token: {e!r}")
        if e in seen:
            problems.append(f"duplicate urelement: {e}")
        seen.add(e)

    sym_seen = set()
    for sym, arity, _ in operations:
        if sym in sym_seen:
            problems.append(f"duplicate symbol: {sym}")
        sym_seen.add(sym)
        if arity < 0:
            problems.append(f"negative arity for {sym}")

    k = len(elements)
    index = {e: i for i, e in enumerate(elements)}
    tables = []
    for sym, arity, values in operations:
        expected = k**arity
        if len(values) != expected:
            problems.append(
                f"table size mismatch: expected {expected}, found {len(values)} for {sym}/{arity}"
            )
            tables.append(None)
            continue
        row = []
        ok = True
        for v in values:
            if v not in index:
                problems.append(f"unknown element in table for {sym}/{arity}: {v}")
                ok = False
                break
            row.append(index[v])
        tables.append(tuple(row) if ok else None)

    if problems:
        raise InvalidAlgebra(problems)
    sig = Signature(tuple((sym, arity) for sym, arity, _ in operations))
    return FiniteAlgebra(name=name, carrier=tuple(elements), signature=sig, tables=tuple(tables))


@dataclass(frozen=True)
class ClosureWitness:
    """An operation application that escapes a candidate subuniverse."""

    symbol: str
    args: tuple[str, ...]
    result: str


def is_subuniverse(
    alg: FiniteAlgebra, subset: Iterable[str]
) -> tuple[bool, Optional[ClosureWitness]]:
    """Closure check: True iff subset is closed under every operation and
    contains every nullary value.  On failure returns the first escaping
    application (symbol order, then row-major argument order).
    """
    members = set()
    for e in subset:
        if e not in alg.index_of:
            raise KeyError(f"unknown element: {e}")
        members.add(alg.index_of[e])
    for sym, arity in alg.signature.symbols:
        table = alg.table(sym)
        if arity == 0:
            if table[0] not in members:
                return False, ClosureWitness(sym, (), alg.carrier[table[0]])
            continue
        k = len(alg.carrier)
        for args in itertools.product(sorted(members), repeat=arity):
            out = table[_row_major_index(args, k)]
            if out not in members:
                return False, ClosureWitness(
                    sym, tuple(alg.carrier[a] for a in args), alg.carrier[out]
                )
    return True, None


@dataclass(frozen=True)
class Subuniverse:
    """A verified closed subset of a parent algebra, in carrier order."""

    parent: FiniteAlgebra
    members: tuple[str, ...]

    @classmethod
    def of(cls, parent: FiniteAlgebra, members: Iterable[str]) -> "Subuniverse":
        ordered = tuple(e for e in parent.carrier if e in set(members))
        closed, witness = is_subuniverse(parent, ordered)
        if not closed:
            raise ValueError(f"not a subuniverse, escaping application: {witness}")
        return cls(parent=parent, members=ordered)

    def as_algebra(self, name: Optional[str] = None) -> FiniteAlgebra:
        """The induced algebra on the members (empty members is an error)."""
        if not self.members:
            raise ValueError("empty subuniverse is not an algebra")
        sub_index = {e: i for i, e in enumerate(self.members)}
        k = len(self.members)
        tables = []
        for sym, arity in self.parent.signature.symbols:
            values = []
            for args in itertools.product(self.members, repeat=arity):
                values.append(sub_index[self.parent.apply(sym, *args)])
            assert len(values) == k**arity
            tables.append(tuple(values))
        return FiniteAlgebra(
            name=name or f"{self.parent.name}_sub",
            carrier=self.members,
            signature=self.parent.signature,
            tables=tuple(tables),
        )
