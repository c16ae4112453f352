import pytest

from ualg import (
    FiniteAlgebra,
    InvalidAlgebra,
    Signature,
    Subuniverse,
    is_subuniverse,
    validate_algebra,
)
from ualg.catalog import boolean_2, boolean_4, lattice_2


def test_row_major_layout():
    # or(b2, b1) sits at index 1*2+0 = 2: leftmost argument most significant
    B = boolean_2()
    assert B.table("or")[2] == B.index_of["b2"]
    assert B.apply("or", "b2", "b1") == "b2"
    assert B.apply("and", "b2", "b1") == "b1"


def test_nullary_table_has_one_entry():
    B = boolean_2()
    assert len(B.table("zero")) == 1
    assert B.nullary_value("zero") == "b1"
    assert B.nullary_value("one") == "b2"


def test_validation_collects_all_problems():
    with pytest.raises(InvalidAlgebra) as exc:
        validate_algebra(
            "Bad",
            ["a", "a"],
            [("f", 2, ["a", "a", "a"]), ("g", 1, ["a", "b"])],
        )
    problems = exc.value.problems
    assert any("duplicate urelement: a" in p for p in problems)
    assert any("table size mismatch: expected 4, found 3 for f/2" in p for p in problems)
    assert any("unknown element" in p for p in problems)


def test_validation_empty_carrier():
    with pytest.raises(InvalidAlgebra) as exc:
        validate_algebra("E", [], [])
    assert "empty carrier" in str(exc.value)


def test_signature_matching_ignores_order():
    s1 = Signature((("and", 2), ("or", 2)))
    s2 = Signature((("or", 2), ("and", 2)))
    assert s1.matches(s2)
    assert not s1.matches(Signature((("and", 2),)))
    assert not s1.matches(Signature((("and", 1), ("or", 2))))


def test_signature_rejects_duplicates():
    with pytest.raises(ValueError):
        Signature((("f", 1), ("f", 2)))


def test_is_subuniverse_witness():
    O = boolean_4()
    ok, witness = is_subuniverse(O, ["o1", "o4"])
    assert ok and witness is None
    # {o1, o2, o4} escapes through not(o2) = o3
    ok, witness = is_subuniverse(O, ["o1", "o2", "o4"])
    assert not ok
    assert (witness.symbol, witness.args, witness.result) == ("not", ("o2",), "o3")
    ok, witness = is_subuniverse(O, ["o2", "o3"])
    assert not ok
    # nullary escape is found first in signature order
    assert witness.symbol == "zero"
    assert witness.result == "o1"


def test_is_subuniverse_binary_witness():
    L = lattice_2()
    ok, witness = is_subuniverse(L, ["d0"])
    assert ok
    # {d1} closed under and/or too
    assert is_subuniverse(L, ["d1"])[0]


def test_subuniverse_as_algebra():
    O = boolean_4()
    sub = Subuniverse.of(O, ["o4", "o1"])  # order normalized to carrier order
    assert sub.members == ("o1", "o4")
    alg = sub.as_algebra("O2")
    assert alg.carrier == ("o1", "o4")
    assert alg.apply("or", "o1", "o4") == "o4"
    assert alg.nullary_value("one") == "o4"


def test_subuniverse_rejects_open_subset():
    O = boolean_4()
    with pytest.raises(ValueError):
        Subuniverse.of(O, ["o2", "o3"])
