"""Truncated free semigroups: all nonempty words up to a length bound,
with concatenation left undefined past the bound.  Used to exercise the
retraction-impossibility phenomenon at finite scale."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import BudgetExceeded, UalgError

Word = tuple[str, ...]


@dataclass(frozen=True)
class TruncatedFreeSemigroup:
    generators: tuple[str, ...]
    bound: int
    elements: tuple[Word, ...]  # length-then-lexicographic order

    def concat(self, u: Word, v: Word) -> Optional[Word]:
        """Partial concatenation: None past the bound."""
        if len(u) + len(v) > self.bound:
            return None
        return u + v


def build_truncated(
    generators: list[str], bound: int, budget: int = 100_000
) -> TruncatedFreeSemigroup:
    if not generators:
        raise UalgError("need at least one generator")
    if len(set(generators)) != len(generators):
        raise UalgError("duplicate generator")
    if bound < 1:
        raise UalgError("bound must be >= 1")
    g = len(generators)
    count = sum(g**i for i in range(1, bound + 1))
    if count > budget:
        raise BudgetExceeded(f"{count} words exceeds the {budget} element budget")
    elements = []
    for length in range(1, bound + 1):
        elements.extend(itertools.product(generators, repeat=length))
    return TruncatedFreeSemigroup(
        generators=tuple(generators), bound=bound, elements=tuple(elements)
    )


def word_str(w: Word) -> str:
    return "".join(w)


@dataclass(frozen=True)
class ForcedStep:
    """One propagation step: the split that forces a value for a word,
    or (forced=None) the contradiction that ends the chain."""

    word: Word
    left: Word
    right: Word
    forced: Optional[Word]
    note: str


@dataclass(frozen=True)
class RetractionSearchResult:
    found: Optional[dict[Word, Word]]
    transcript: tuple[ForcedStep, ...]

    @property
    def absent(self) -> bool:
        return self.found is None


def search_bounded_retraction(
    T: TruncatedFreeSemigroup, k: int
) -> RetractionSearchResult:
    """Search for a map r from all words of length <= bound onto words of
    length <= k, fixing every word of length <= k, with r(uv) = r(u)r(v)
    whenever both uv and r(u)r(v) stay within the bound.

    Propagation in length-then-lexicographic order: each longer word's
    value is forced through its (prefix, last letter) split, so the
    search either completes or yields a forced chain ending where the
    forced image can no longer fit inside the retract."""
    if k < 1:
        raise UalgError("image bound must be >= 1")
    if k > T.bound:
        raise UalgError("image bound exceeds the semigroup bound")
    L = T.bound
    assignment: dict[Word, Word] = {w: w for w in T.elements if len(w) <= k}
    transcript: list[ForcedStep] = []
    if k == L:
        return RetractionSearchResult(found=dict(assignment), transcript=())

    short_words = [w for w in T.elements if len(w) <= k]

    def consistent(w: Word, value: Word) -> Optional[tuple[Word, Word]]:
        """Check every split of w and every product involving w against
        the currently assigned values; returns an offending split."""
        trial = dict(assignment)
        trial[w] = value
        for u, v in _splits(w):
            ru, rv = trial.get(u), trial.get(v)
            if ru is None or rv is None:
                continue
            if len(ru) + len(rv) <= L and ru + rv != value:
                return (u, v)
        # products w*x and x*w that are themselves assigned
        for x in short_words + [w]:
            for u, v in ((w, x), (x, w)):
                if len(u) + len(v) > L:
                    continue
                target = trial.get(u + v)
                ru, rv = trial.get(u), trial.get(v)
                if target is None or ru is None or rv is None:
                    continue
                if len(ru) + len(rv) <= L and ru + rv != target:
                    return (u, v)
        return None

    todo = [w for w in T.elements if len(w) > k]
    candidates = short_words  # the codomain: words of length <= k

    def propagate_and_search(pos: int) -> bool:
        if pos == len(todo):
            return True
        w = todo[pos]
        # try the forced value first: prefix/last-letter split
        u, v = w[:-1], w[-1:]
        ru, rv = assignment.get(u), assignment.get(v)
        if ru is not None and rv is not None and len(ru) + len(rv) <= L:
            forced = ru + rv
            if len(forced) > k:
                transcript.append(
                    ForcedStep(
                        word=w,
                        left=u,
                        right=v,
                        forced=None,
                        note=(
                            f"r({word_str(w)}) = r({word_str(u)})r({word_str(v)}) = "
                            f"{word_str(forced)} has length {len(forced)} > {k}"
                        ),
                    )
                )
                return False
            if consistent(w, forced) is not None:
                transcript.append(
                    ForcedStep(w, u, v, None, "forced value conflicts with another split")
                )
                return False
            transcript.append(
                ForcedStep(w, u, v, forced, f"forced r({word_str(w)}) = {word_str(forced)}")
            )
            assignment[w] = forced
            if propagate_and_search(pos + 1):
                return True
            del assignment[w]
            transcript.pop()
            return False
        # unforced: branch over the codomain
        for value in candidates:
            if consistent(w, value) is None:
                assignment[w] = value
                if propagate_and_search(pos + 1):
                    return True
                del assignment[w]
        return False

    if propagate_and_search(0):
        return RetractionSearchResult(found=dict(assignment), transcript=tuple(transcript))
    return RetractionSearchResult(found=None, transcript=tuple(transcript))


def _splits(w: Word):
    for i in range(1, len(w)):
        yield w[:i], w[i:]


def check_associativity(T: TruncatedFreeSemigroup) -> bool:
    """(uv)w = u(vw) whenever both sides are defined (they are then equal
    by construction; this is the exhaustive confirmation)."""
    for u, v, w in itertools.product(T.elements, repeat=3):
        uv = T.concat(u, v)
        vw = T.concat(v, w)
        if uv is not None and vw is not None:
            left = T.concat(uv, w)
            right = T.concat(u, vw)
            if left is not None and right is not None and left != right:
                return False
    return True


def check_cancellation(T: TruncatedFreeSemigroup) -> bool:
    """uw = vw implies u = v, and wu = wv implies u = v, where defined."""
    for u, v, w in itertools.product(T.elements, repeat=3):
        uw, vw = T.concat(u, w), T.concat(v, w)
        if uw is not None and vw is not None and uw == vw and u != v:
            return False
        wu, wv = T.concat(w, u), T.concat(w, v)
        if wu is not None and wv is not None and wu == wv and u != v:
            return False
    return True
