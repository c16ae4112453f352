"""A computable proper extension of a finite algebra: eventually periodic
sequences over the carrier, identified when they agree on a cofinite set
of indices.  This is a reduced power over the cofinite (Frechet) filter,
restricted to the eventually periodic fragment -- not an ultrapower and
not an enlargement.  Equality is decidable, operations are pointwise and
computable, and finitely generated closures are finite; the construction
preserves exactly the equational fragment (equations are Horn sentences,
which survive reduced powers)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .core import BudgetExceeded, FiniteAlgebra, UalgError
from .morphisms import Morphism, check_homomorphism


@dataclass(frozen=True)
class EpSequence:
    """Canonical form of an eventually periodic sequence: primitive
    period, minimal preperiod (a preperiod tail matching the period is
    rotated into it).  Two sequences over the same base are equal iff
    their canonical forms coincide, i.e. iff they agree at every index;
    a genuinely different preperiod entry stays visible."""

    base: FiniteAlgebra
    preperiod: tuple[str, ...]
    period: tuple[str, ...]

    def at(self, index: int) -> str:
        if index < len(self.preperiod):
            return self.preperiod[index]
        return self.period[(index - len(self.preperiod)) % len(self.period)]

    def prefix(self, length: int) -> tuple[str, ...]:
        return tuple(self.at(i) for i in range(length))

    @property
    def is_constant(self) -> bool:
        return not self.preperiod and len(self.period) == 1

    def render(self) -> str:
        pre = f"pre {' '.join(self.preperiod)} | " if self.preperiod else ""
        return f"{pre}per {' '.join(self.period)}"


def canonicalize(
    base: FiniteAlgebra, preperiod: Sequence[str], period: Sequence[str]
) -> EpSequence:
    """Minimal primitive period, then minimal preperiod (the preperiod
    tail is absorbed into the period by rotation while it matches)."""
    if not period:
        raise UalgError("period must be non-empty")
    for e in itertools.chain(preperiod, period):
        if e not in base.index_of:
            raise UalgError(f"unknown element: {e}")
    per = list(period)
    for d in range(1, len(per) + 1):
        if len(per) % d == 0 and per == per[:d] * (len(per) // d):
            per = per[:d]
            break
    pre = list(preperiod)
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = [per[-1]] + per[:-1]
    return EpSequence(base=base, preperiod=tuple(pre), period=tuple(per))


def parse_ep_sequence(base: FiniteAlgebra, text: str) -> EpSequence:
    """Text syntax: `pre b1 b2 | per b2 b1`; the pre part is optional."""
    text = text.strip()
    pre: list[str] = []
    if "|" in text:
        pre_part, per_part = text.split("|", 1)
        pre_tokens = pre_part.split()
        if not pre_tokens or pre_tokens[0] != "pre":
            raise UalgError("expected `pre ...` before `|`")
        pre = pre_tokens[1:]
    else:
        per_part = text
    per_tokens = per_part.split()
    if not per_tokens or per_tokens[0] != "per":
        raise UalgError("expected `per ...`")
    return canonicalize(base, pre, per_tokens[1:])


def std_embed(alg: FiniteAlgebra, element: str) -> EpSequence:
    """The standard embedding: a carrier element becomes the constant
    sequence at that element."""
    if element not in alg.index_of:
        raise UalgError(f"unknown element: {element}")
    return EpSequence(base=alg, preperiod=(), period=(element,))


def _window(seqs: Sequence[EpSequence]) -> tuple[int, int]:
    """(max preperiod length, lcm of period lengths): sufficient because a
    pointwise image of eventually periodic sequences is eventually
    periodic with period dividing the lcm."""
    pre = max((len(s.preperiod) for s in seqs), default=0)
    per = 1
    for s in seqs:
        per = math.lcm(per, len(s.period))
    return pre, per


def pointwise_apply(symbol: str, args: Sequence[EpSequence]) -> EpSequence:
    """Apply a base operation index by index, then canonicalize.  The
    result is independent of the chosen representatives because canonical
    forms agree on a cofinite set."""
    if not args:
        raise UalgError("pointwise application needs at least one argument; "
                        "use std_embed for nullary values")
    base = args[0].base
    for s in args[1:]:
        if s.base != base:
            raise UalgError("mixed base algebras")
    if base.signature.arity(symbol) != len(args):
        raise UalgError(f"arity mismatch for {symbol}")
    pre_len, per_len = _window(args)
    pre = tuple(
        base.apply(symbol, *(s.at(i) for s in args)) for i in range(pre_len)
    )
    per = tuple(
        base.apply(symbol, *(s.at(pre_len + i) for s in args)) for i in range(per_len)
    )
    return canonicalize(base, pre, per)


def apply_in_extension(base: FiniteAlgebra, symbol: str, args: Sequence[EpSequence]) -> EpSequence:
    """pointwise_apply that also covers nullary symbols."""
    if base.signature.arity(symbol) == 0:
        return std_embed(base, base.nullary_value(symbol))
    return pointwise_apply(symbol, args)


@dataclass(frozen=True)
class GeneratedExtension:
    """The closure of the constant sequences and the adjoined generators
    under pointwise operations, materialized as an ordinary FiniteAlgebra
    over fresh urelements so the rest of the toolkit applies."""

    base: FiniteAlgebra
    generators: tuple[EpSequence, ...]
    members: tuple[EpSequence, ...]
    algebra: FiniteAlgebra
    labels: tuple[tuple[str, EpSequence], ...]  # fresh urelement -> member

    @cached_property
    def member_to_label(self) -> dict[EpSequence, str]:
        return {m: e for e, m in self.labels}

    def label_of(self, seq: EpSequence) -> str:
        return self.member_to_label[seq]

    def constants(self) -> tuple[str, ...]:
        """Labels of the standard copy, in base carrier order."""
        return tuple(self.label_of(std_embed(self.base, e)) for e in self.base.carrier)


def adjoin_generate(
    alg: FiniteAlgebra,
    gens: Iterable[EpSequence],
    prefix: str = "q",
    budget: int = 200_000,
) -> GeneratedExtension:
    """Closure of constants plus generators under pointwise application.

    The closure is finite: every member has preperiod length at most the
    generators' maximum and period length dividing the lcm of the
    generators' period lengths (asserted during expansion)."""
    gens = tuple(gens)
    for g in gens:
        if g.base != alg:
            raise UalgError("generator over a different base algebra")
        assert canonicalize(alg, g.preperiod, g.period) == g, "generator not canonical"
    pre_bound, per_bound = _window(gens)
    if len(alg.carrier) ** (pre_bound + per_bound) > budget:
        raise BudgetExceeded("generated extension candidate bound exceeds budget")

    members: set[EpSequence] = {std_embed(alg, e) for e in alg.carrier}
    members |= set(gens)
    changed = True
    while changed:
        changed = False
        snapshot = sorted(members, key=_sort_key)
        for sym, arity in alg.signature.symbols:
            if arity == 0:
                continue
            for combo in itertools.product(snapshot, repeat=arity):
                out = pointwise_apply(sym, combo)
                assert len(out.preperiod) <= pre_bound
                assert per_bound % len(out.period) == 0
                if out not in members:
                    members.add(out)
                    changed = True

    ordered = sorted(members, key=_sort_key)
    fresh = tuple(f"{prefix}{i}" for i in range(len(ordered)))
    index = {m: i for i, m in enumerate(ordered)}
    tables = []
    for sym, arity in alg.signature.symbols:
        values = []
        if arity == 0:
            values.append(index[std_embed(alg, alg.nullary_value(sym))])
        else:
            for combo in itertools.product(ordered, repeat=arity):
                values.append(index[pointwise_apply(sym, combo)])
        tables.append(tuple(values))
    view = FiniteAlgebra(
        name=f"{alg.name}_ext",
        carrier=fresh,
        signature=alg.signature,
        tables=tuple(tables),
    )
    return GeneratedExtension(
        base=alg,
        generators=gens,
        members=tuple(ordered),
        algebra=view,
        labels=tuple(zip(fresh, ordered)),
    )


def _sort_key(s: EpSequence):
    # constants first (in carrier order), then by shape, then pointwise
    idx = s.base.index_of
    return (
        0 if s.is_constant else 1,
        len(s.preperiod),
        len(s.period),
        tuple(idx[e] for e in s.preperiod),
        tuple(idx[e] for e in s.period),
    )


def coordinate_retraction(ext: GeneratedExtension, index: int) -> Morphism:
    """Evaluate every member at one index: a homomorphism of the algebra
    view onto the standard copy, fixing every constant.  A genuine
    retraction in this computable model."""
    if index < 0:
        raise UalgError("index must be >= 0")
    images = tuple(
        ext.label_of(std_embed(ext.base, m.at(index))) for m in ext.members
    )
    r = Morphism(ext.algebra, ext.algebra, images)
    ok, witness = check_homomorphism(r)
    assert ok, f"coordinate evaluation failed to be a homomorphism: {witness}"
    for c in ext.constants():
        assert r(c) == c
    return r


def preservation_suite(alg: FiniteAlgebra, eqs, gens: Iterable[EpSequence]):
    """Check every equation of the set on the generated extension's
    algebra view.  Expected all-pass: equations are preserved by reduced
    powers and by subalgebras."""
    from .terms import satisfies_all

    base_report = satisfies_all(alg, eqs)
    if not base_report.variety_member:
        raise UalgError(f"{alg.name} does not satisfy {eqs.name} to begin with")
    ext = adjoin_generate(alg, gens)
    return satisfies_all(ext.algebra, eqs)
