"""Ready-made algebras used throughout the tests, docs, and shipped data:
the two- and four-element boolean algebras, small groups, lattices, and
vector-space tables."""

from __future__ import annotations

from .core import FiniteAlgebra, validate_algebra
from .presets import finite_field


def boolean_2() -> FiniteAlgebra:
    """Two-element boolean algebra B on {b1, b2} with b1 = bottom."""
    return validate_algebra(
        "B",
        ["b1", "b2"],
        [
            ("zero", 0, ["b1"]),
            ("one", 0, ["b2"]),
            ("not", 1, ["b2", "b1"]),
            ("and", 2, ["b1", "b1", "b1", "b2"]),
            ("or", 2, ["b1", "b2", "b2", "b2"]),
        ],
    )


def boolean_4() -> FiniteAlgebra:
    """Four-element boolean algebra O on {o1..o4}: o1 = bottom, o4 = top,
    o2 and o3 complementary atoms."""
    return validate_algebra(
        "O",
        ["o1", "o2", "o3", "o4"],
        [
            ("zero", 0, ["o1"]),
            ("one", 0, ["o4"]),
            ("not", 1, ["o4", "o3", "o2", "o1"]),
            (
                "and",
                2,
                [
                    "o1", "o1", "o1", "o1",
                    "o1", "o2", "o1", "o2",
                    "o1", "o1", "o3", "o3",
                    "o1", "o2", "o3", "o4",
                ],
            ),
            (
                "or",
                2,
                [
                    "o1", "o2", "o3", "o4",
                    "o2", "o2", "o4", "o4",
                    "o3", "o4", "o3", "o4",
                    "o4", "o4", "o4", "o4",
                ],
            ),
        ],
    )


def lattice_2() -> FiniteAlgebra:
    """Two-element lattice ({d0, d1}; and, or)."""
    return validate_algebra(
        "L2",
        ["d0", "d1"],
        [
            ("and", 2, ["d0", "d0", "d0", "d1"]),
            ("or", 2, ["d0", "d1", "d1", "d1"]),
        ],
    )


def cyclic_group(n: int, name: str | None = None) -> FiniteAlgebra:
    """Cyclic group of order n in group signature (one, inv, mul)."""
    elems = [f"g{i}" for i in range(n)]
    mul = [elems[(i + j) % n] for i in range(n) for j in range(n)]
    inv = [elems[(-i) % n] for i in range(n)]
    return validate_algebra(
        name or f"Z{n}",
        elems,
        [("one", 0, [elems[0]]), ("inv", 1, inv), ("mul", 2, mul)],
    )


def semilattice_2() -> FiniteAlgebra:
    """Two-element meet semilattice ({m0, m1}; and)."""
    return validate_algebra("S2", ["m0", "m1"], [("and", 2, ["m0", "m0", "m0", "m1"])])


def vector_space_gf(q: int, dim: int, name: str | None = None) -> FiniteAlgebra:
    """GF(q)^dim as a vector space over GF(q): zero, neg, add, and one
    unary scalar operation s0..s{q-1} per field element."""
    add_f, mul_f = finite_field(q)
    size = q**dim

    def coords(n: int) -> tuple[int, ...]:
        out = []
        for _ in range(dim):
            out.append(n % q)
            n //= q
        return tuple(out)

    def pack(cs) -> int:
        n = 0
        for c in reversed(list(cs)):
            n = n * q + c
        return n

    elems = [f"v{i}" for i in range(size)]
    add = [
        elems[pack(add_f[a][b] for a, b in zip(coords(i), coords(j)))]
        for i in range(size)
        for j in range(size)
    ]
    # additive inverse: the scalar (q-1)... only correct in characteristic p
    # when computed per coordinate from the addition table
    neg_of = [0] * q
    for a in range(q):
        for b in range(q):
            if add_f[a][b] == 0:
                neg_of[a] = b
    neg = [elems[pack(neg_of[c] for c in coords(i))] for i in range(size)]
    ops: list[tuple[str, int, list[str]]] = [
        ("zero", 0, [elems[0]]),
        ("neg", 1, neg),
        ("add", 2, add),
    ]
    for r in range(q):
        ops.append(
            (f"s{r}", 1, [elems[pack(mul_f[r][c] for c in coords(i))] for i in range(size)])
        )
    return validate_algebra(name or f"V{q}_{dim}", elems, ops)


def one_element(signature: list[tuple[str, int]], name: str = "One") -> FiniteAlgebra:
    """The one-element algebra of a given signature."""
    return validate_algebra(name, ["e"], [(sym, arity, ["e"]) for sym, arity in signature])
