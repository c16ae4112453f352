"""Homomorphism checking, exhaustive enumeration by backtracking with
forward checking, retraction search, and isomorphism testing."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Optional, Sequence

from .core import BudgetExceeded, FiniteAlgebra, Subuniverse, UalgError, _row_major_index


class SignatureMismatch(UalgError):
    pass


def _require_shared_signature(a: FiniteAlgebra, b: FiniteAlgebra) -> None:
    if not a.signature.matches(b.signature):
        raise SignatureMismatch(
            f"signatures of {a.name} and {b.name} do not match by (name, arity)"
        )


@dataclass(frozen=True)
class Morphism:
    """A total map between carriers, stored as the image tuple aligned
    with the source carrier order.  Status flags are recomputed from the
    map, never trusted."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    images: tuple[str, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source.carrier):
            raise ValueError("morphism map must be total on the source carrier")
        for e in self.images:
            if e not in self.target.index_of:
                raise ValueError(f"image not in target carrier: {e}")

    @classmethod
    def from_dict(
        cls, source: FiniteAlgebra, target: FiniteAlgebra, mapping: dict[str, str]
    ) -> "Morphism":
        return cls(source, target, tuple(mapping[e] for e in source.carrier))

    def __call__(self, element: str) -> str:
        return self.images[self.source.index_of[element]]

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.source.carrier, self.images))

    @cached_property
    def is_homomorphism(self) -> bool:
        return check_homomorphism(self)[0]

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return set(self.images) == set(self.target.carrier)

    @property
    def is_idempotent(self) -> bool:
        """r(r(x)) = r(x); only meaningful for endomorphisms."""
        if self.source is not self.target and self.source != self.target:
            raise ValueError("idempotence is defined for endomorphisms only")
        return all(self(self(e)) == self(e) for e in self.source.carrier)

    def range_set(self) -> frozenset[str]:
        return frozenset(self.images)

    def compose(self, other: "Morphism") -> "Morphism":
        """self after other (other's target must be self's source)."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        return Morphism(other.source, self.target, tuple(self(e) for e in other.images))


@dataclass(frozen=True)
class HomWitness:
    symbol: str
    args: tuple[str, ...]
    mapped_result: str
    result_of_mapped: str


def check_homomorphism(m: Morphism) -> tuple[bool, Optional[HomWitness]]:
    """f(o(z...)) = o(f(z)...) for every symbol and argument tuple; on
    failure the first offending application is returned."""
    _require_shared_signature(m.source, m.target)
    for sym, arity in m.source.signature.symbols:
        for args in itertools.product(m.source.carrier, repeat=arity):
            lhs = m(m.source.apply(sym, *args))
            rhs = m.target.apply(sym, *(m(a) for a in args))
            if lhs != rhs:
                return False, HomWitness(sym, args, lhs, rhs)
    return True, None


@dataclass(frozen=True)
class PartialMorphism:
    """A map defined on a subset of the source carrier."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[tuple[str, str], ...]

    @classmethod
    def from_dict(
        cls, source: FiniteAlgebra, target: FiniteAlgebra, mapping: dict[str, str]
    ) -> "PartialMorphism":
        items = tuple(sorted(mapping.items(), key=lambda kv: source.index_of[kv[0]]))
        return cls(source, target, items)

    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)


def check_partial_homomorphism(m: PartialMorphism) -> tuple[bool, Optional[HomWitness]]:
    """Guarded condition: whenever every argument and the result of an
    application lie in the domain, the map must commute with it."""
    _require_shared_signature(m.source, m.target)
    mapping = m.as_dict()
    for e in mapping:
        if e not in m.source.index_of:
            raise KeyError(f"domain element not in source carrier: {e}")
    domain = set(mapping)
    for sym, arity in m.source.signature.symbols:
        for args in itertools.product(sorted(domain, key=m.source.index_of.get), repeat=arity):
            result = m.source.apply(sym, *args)
            if result not in domain:
                continue
            lhs = mapping[result]
            rhs = m.target.apply(sym, *(mapping[a] for a in args))
            if lhs != rhs:
                return False, HomWitness(sym, args, lhs, rhs)
    return True, None


def _constraint_degree_order(alg: FiniteAlgebra) -> list[int]:
    """Source indices sorted by descending table-cell mentions
    (fail-first); final results are order-normalized so this heuristic
    never changes observable output."""
    degree = [0] * len(alg.carrier)
    for sym, arity in alg.signature.symbols:
        table = alg.table(sym)
        for args in alg.arg_tuples(arity):
            for a in args:
                degree[a] += 1
            degree[table[_row_major_index(args, len(alg.carrier))]] += 1
    return sorted(range(len(alg.carrier)), key=lambda i: (-degree[i], i))


def _search_homomorphisms(
    src: FiniteAlgebra,
    dst: FiniteAlgebra,
    fixed: Optional[dict[int, int]] = None,
    allowed: Optional[Sequence[int]] = None,
    stop_after: Optional[int] = None,
    node_budget: int = 10_000_000,
) -> list[tuple[int, ...]]:
    """Backtracking over source elements with forward checking: every
    operation cell whose arguments and output are all assigned must
    commute.  Returns image index tuples, unsorted."""
    _require_shared_signature(src, dst)
    n = len(src.carrier)
    order = _constraint_degree_order(src)
    candidates = list(allowed) if allowed is not None else list(range(len(dst.carrier)))
    assignment: list[Optional[int]] = [None] * n
    if fixed:
        for i, v in fixed.items():
            assignment[i] = v
        order = [i for i in order if i not in fixed]

    cells = []  # (symbol args indices, output index) per operation cell
    for sym, arity in src.signature.symbols:
        s_table = src.table(sym)
        d_table = dst.table(sym)
        for args in src.arg_tuples(arity):
            out = s_table[_row_major_index(args, n)]
            cells.append((args, out, d_table))
    by_elem: dict[int, list[int]] = {i: [] for i in range(n)}
    for ci, (args, out, _) in enumerate(cells):
        for a in set(args) | {out}:
            by_elem[a].append(ci)

    k_dst = len(dst.carrier)

    def cell_ok(ci: int) -> bool:
        args, out, d_table = cells[ci]
        imgs = []
        for a in args:
            v = assignment[a]
            if v is None:
                return True
            imgs.append(v)
        vout = assignment[out]
        if vout is None:
            return True
        return d_table[_row_major_index(imgs, k_dst)] == vout

    results: list[tuple[int, ...]] = []
    nodes = 0

    def consistent_after(i: int) -> bool:
        return all(cell_ok(ci) for ci in by_elem[i])

    # check cells already decided by fixed assignments
    if fixed:
        for i in fixed:
            if not consistent_after(i):
                return []

    def backtrack(pos: int) -> bool:
        nonlocal nodes
        if pos == len(order):
            results.append(tuple(assignment))  # type: ignore[arg-type]
            return stop_after is not None and len(results) >= stop_after
        i = order[pos]
        for v in candidates:
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded("homomorphism search node budget exceeded")
            assignment[i] = v
            if consistent_after(i) and backtrack(pos + 1):
                return True
            assignment[i] = None
        return False

    backtrack(0)
    return results


def enumerate_homomorphisms(
    src: FiniteAlgebra,
    dst: FiniteAlgebra,
    mode: Literal["list", "count", "first"] = "list",
    node_budget: int = 10_000_000,
):
    """All homomorphisms src -> dst in lexicographic order of the image
    tuple (source carrier order).  mode: "list", "count", or "first"."""
    stop = 1 if mode == "first" else None
    raw = _search_homomorphisms(src, dst, stop_after=stop, node_budget=node_budget)
    if mode == "first" and not raw:
        return None
    morphisms = sorted(raw)
    if mode == "count":
        return len(morphisms)
    result = [
        Morphism(src, dst, tuple(dst.carrier[v] for v in images)) for images in morphisms
    ]
    if mode == "first":
        return result[0]
    return result


def find_retractions(alg: FiniteAlgebra, image: Subuniverse) -> list[Morphism]:
    """All endomorphisms fixing the image pointwise with range exactly the
    image set.  Since candidates are restricted to the image and it is
    fixed pointwise, the range condition holds automatically."""
    if image.parent != alg:
        raise ValueError("image subuniverse must belong to the algebra")
    fixed = {alg.index_of[e]: alg.index_of[e] for e in image.members}
    allowed = [alg.index_of[e] for e in image.members]
    raw = _search_homomorphisms(alg, alg, fixed=fixed, allowed=allowed)
    return [
        Morphism(alg, alg, tuple(alg.carrier[v] for v in images)) for images in sorted(raw)
    ]


def _element_profile(alg: FiniteAlgebra) -> list[tuple]:
    """Per-element invariants computable from the tables: nullary hits,
    per-symbol output multiplicity, and unary orbit sizes."""
    n = len(alg.carrier)
    profiles: list[list] = [[] for _ in range(n)]
    for sym, arity in sorted(alg.signature.symbols):
        table = alg.table(sym)
        counts = [0] * n
        for v in table:
            counts[v] += 1
        for i in range(n):
            profiles[i].append(counts[i])
        if arity == 0:
            for i in range(n):
                profiles[i].append(1 if table[0] == i else 0)
        if arity == 1:
            for i in range(n):
                seen = []
                cur = i
                while cur not in seen:
                    seen.append(cur)
                    cur = table[cur]
                profiles[i].append(len(seen))
    return [tuple(p) for p in profiles]


def check_isomorphism(
    a: FiniteAlgebra, b: FiniteAlgebra, node_budget: int = 10_000_000
) -> Optional[Morphism]:
    """One bijective homomorphism with homomorphic inverse, or None.
    Candidate images are pruned by table-derived element invariants; the
    backtracking itself is exhaustive, so pruning never loses witnesses."""
    _require_shared_signature(a, b)
    if len(a.carrier) != len(b.carrier):
        return None
    pa, pb = _element_profile(a), _element_profile(b)
    if sorted(pa) != sorted(pb):
        return None
    n = len(a.carrier)
    allowed_per_elem = [[j for j in range(n) if pb[j] == pa[i]] for i in range(n)]

    # reuse the hom search but with per-element domains and a bijectivity
    # check layered on via candidate filtering inside the loop
    order = _constraint_degree_order(a)
    assignment: list[Optional[int]] = [None] * n
    used = [False] * n
    cells = []
    for sym, arity in a.signature.symbols:
        s_table = a.table(sym)
        d_table = b.table(sym)
        for args in a.arg_tuples(arity):
            out = s_table[_row_major_index(args, n)]
            cells.append((args, out, d_table))
    by_elem: dict[int, list[int]] = {i: [] for i in range(n)}
    for ci, (args, out, _) in enumerate(cells):
        for x in set(args) | {out}:
            by_elem[x].append(ci)

    def cell_ok(ci: int) -> bool:
        args, out, d_table = cells[ci]
        imgs = []
        for x in args:
            v = assignment[x]
            if v is None:
                return True
            imgs.append(v)
        vout = assignment[out]
        if vout is None:
            return True
        return d_table[_row_major_index(imgs, n)] == vout

    nodes = 0

    def backtrack(pos: int) -> bool:
        nonlocal nodes
        if pos == n:
            return True
        i = order[pos]
        for v in allowed_per_elem[i]:
            if used[v]:
                continue
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded("isomorphism search node budget exceeded")
            assignment[i] = v
            used[v] = True
            if all(cell_ok(ci) for ci in by_elem[i]) and backtrack(pos + 1):
                return True
            assignment[i] = None
            used[v] = False
        return False

    if not backtrack(0):
        return None
    iso = Morphism(a, b, tuple(b.carrier[v] for v in assignment))  # type: ignore[arg-type]
    assert check_homomorphism(iso)[0]
    inverse = Morphism(b, a, tuple(
        a.carrier[assignment.index(j)] for j in range(n)
    ))
    assert check_homomorphism(inverse)[0]
    return iso


def reduct(alg: FiniteAlgebra, keep: Iterable[str], name: Optional[str] = None) -> FiniteAlgebra:
    """Forget all symbols not listed; signature order is preserved."""
    keep_set = set(keep)
    unknown = keep_set - set(alg.signature.names())
    if unknown:
        raise KeyError(f"unknown symbols in reduct: {sorted(unknown)}")
    symbols = tuple(s for s in alg.signature.symbols if s[0] in keep_set)
    tables = tuple(
        tab for (sym, _), tab in zip(alg.signature.symbols, alg.tables) if sym in keep_set
    )
    from .core import Signature

    return FiniteAlgebra(
        name=name or f"{alg.name}_reduct",
        carrier=alg.carrier,
        signature=Signature(symbols),
        tables=tables,
    )


def homomorphic_image(m: Morphism, name: Optional[str] = None) -> Subuniverse:
    """The range of a homomorphism as a subuniverse of the target."""
    ok, witness = check_homomorphism(m)
    if not ok:
        raise ValueError(f"not a homomorphism: {witness}")
    return Subuniverse.of(m.target, set(m.images))
