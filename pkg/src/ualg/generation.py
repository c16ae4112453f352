"""Subalgebra generation by stage iteration, clone fragments, and
finite-case generation reports."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import BudgetExceeded, FiniteAlgebra, Subuniverse, _row_major_index
from .terms import App, Term, Var


@dataclass(frozen=True)
class GenerationTrace:
    """The stage sets A_0 ⊆ A_1 ⊆ ... up to the fixpoint.  Stages grow
    strictly; the recorded final stage is the fixpoint itself."""

    generators: tuple[str, ...]
    stages: tuple[tuple[str, ...], ...]
    fixpoint: bool


@dataclass(frozen=True)
class GenerationResult:
    subuniverse: Subuniverse
    trace: GenerationTrace

    @property
    def members(self) -> tuple[str, ...]:
        return self.subuniverse.members

    @property
    def is_empty(self) -> bool:
        # possible only for a signature with no nullary symbols and an
        # empty seed; the carrier of an algebra proper is non-empty
        return not self.subuniverse.members


def generate(alg: FiniteAlgebra, seed: Iterable[str]) -> GenerationResult:
    """Least subuniverse containing the seed and all nullary values,
    with the full stage trace.  Terminates in at most |carrier| stages."""
    current: set[int] = set()
    for e in seed:
        if e not in alg.index_of:
            raise KeyError(f"unknown seed element: {e}")
        current.add(alg.index_of[e])
    for sym in alg.signature.nullary_names():
        current.add(alg.table(sym)[0])

    def as_elements(idx: set[int]) -> tuple[str, ...]:
        return tuple(e for i, e in enumerate(alg.carrier) if i in idx)

    stages = [as_elements(current)]
    k = len(alg.carrier)
    while True:
        nxt = set(current)
        for sym, arity in alg.signature.symbols:
            if arity == 0:
                continue
            table = alg.table(sym)
            for args in itertools.product(sorted(current), repeat=arity):
                nxt.add(table[_row_major_index(args, k)])
        if nxt == current:
            break
        current = nxt
        stages.append(as_elements(current))
    sub = Subuniverse(parent=alg, members=as_elements(current))
    trace = GenerationTrace(
        generators=tuple(sorted(set(seed), key=alg.index_of.get)),
        stages=tuple(stages),
        fixpoint=True,
    )
    return GenerationResult(subuniverse=sub, trace=trace)


def directed_union_check(alg: FiniteAlgebra, seed: Iterable[str], max_exhaustive: int = 12) -> bool:
    """generate(seed) must equal the union of generate(F) over finite
    F ⊆ seed.  All subsets are enumerated when |seed| <= max_exhaustive,
    otherwise singletons, pairs, and the full set are sampled."""
    seed = list(dict.fromkeys(seed))
    whole = set(generate(alg, seed).members)
    union: set[str] = set()
    if len(seed) <= max_exhaustive:
        subsets: Iterable[tuple[str, ...]] = itertools.chain.from_iterable(
            itertools.combinations(seed, r) for r in range(len(seed) + 1)
        )
    else:
        subsets = itertools.chain(
            [()],
            itertools.combinations(seed, 1),
            itertools.combinations(seed, 2),
            [tuple(seed)],
        )
    for sub in subsets:
        union |= set(generate(alg, sub).members)
    return union == whole


def all_subuniverses(alg: FiniteAlgebra, max_size: int = 5) -> tuple[tuple[str, ...], ...]:
    """Every subuniverse, by exhaustive subset enumeration.  Guarded by a
    carrier-size budget since the enumeration is exponential."""
    from .core import is_subuniverse

    if len(alg.carrier) > max_size:
        raise BudgetExceeded(
            f"subuniverse lattice enumeration refused for carrier size {len(alg.carrier)}"
        )
    out = []
    for r in range(len(alg.carrier) + 1):
        for subset in itertools.combinations(alg.carrier, r):
            ok, _ = is_subuniverse(alg, subset)
            if ok:
                out.append(subset)
    return tuple(out)


@dataclass(frozen=True)
class CloneMember:
    table: tuple[int, ...]
    witness: Term


@dataclass(frozen=True)
class CloneFragment:
    """All n-ary term operations found before the budget ran out; members
    are sorted by value table, each with one witnessing term."""

    algebra: str
    arity: int
    members: tuple[CloneMember, ...]
    complete: bool

    def tables(self) -> set[tuple[int, ...]]:
        return {m.table for m in self.members}


def clone_n(alg: FiniteAlgebra, n: int, budget: int = 1_000_000) -> CloneFragment:
    """The n-ary clone fragment: closure of the n projections under
    composition with the basic operations, tracked as value tables.

    budget caps the number of composition attempts; on overrun the
    partial fragment is returned with complete=False."""
    if n < 1:
        raise ValueError("clone arity must be >= 1")
    k = len(alg.carrier)
    points = list(itertools.product(range(k), repeat=n))

    found: dict[tuple[int, ...], Term] = {}
    for i in range(n):
        found[tuple(p[i] for p in points)] = Var(i)

    attempts = 0
    complete = True
    changed = True
    while changed and complete:
        changed = False
        members = list(found.items())
        for sym, arity in alg.signature.symbols:
            table = alg.table(sym)
            if arity == 0:
                const = (table[0],) * len(points)
                if const not in found:
                    found[const] = App(sym, ())
                    changed = True
                continue
            for combo in itertools.product(members, repeat=arity):
                attempts += 1
                if attempts > budget:
                    complete = False
                    break
                composed = tuple(
                    table[_row_major_index([c[0][p] for c in combo], k)]
                    for p in range(len(points))
                )
                if composed not in found:
                    found[composed] = App(sym, tuple(c[1] for c in combo))
                    changed = True
            if not complete:
                break
    members_sorted = tuple(
        CloneMember(table=t, witness=w) for t, w in sorted(found.items())
    )
    return CloneFragment(algebra=alg.name, arity=n, members=members_sorted, complete=complete)


@dataclass(frozen=True)
class FinitenessReport:
    """Finite-case generation facts: a minimum generating set, the (here
    trivial) local-finiteness confirmation, and the subuniverse lattice
    when the carrier is small enough to enumerate it."""

    algebra: str
    minimum_generating_set: tuple[str, ...]
    every_subset_generates_finite: bool
    subuniverse_lattice: Optional[tuple[tuple[str, ...], ...]]


def finiteness_report(alg: FiniteAlgebra, lattice_max_size: int = 5) -> FinitenessReport:
    """Exhaustive minimum-generating-set search by increasing cardinality,
    plus the subuniverse lattice for carriers of size <= lattice_max_size."""
    minimum: Optional[tuple[str, ...]] = None
    full = set(alg.carrier)
    for r in range(len(alg.carrier) + 1):
        for subset in itertools.combinations(alg.carrier, r):
            if set(generate(alg, subset).members) == full:
                minimum = subset
                break
        if minimum is not None:
            break
    assert minimum is not None  # the full carrier always generates
    lattice = None
    if len(alg.carrier) <= lattice_max_size:
        lattice = all_subuniverses(alg, max_size=lattice_max_size)
    return FinitenessReport(
        algebra=alg.name,
        minimum_generating_set=minimum,
        every_subset_generates_finite=True,
        subuniverse_lattice=lattice,
    )
