"""Hypothesis fuzz over random small algebras: totality, closure
invariants, and search consistency."""

import itertools
import random

from hypothesis import given, settings, strategies as st

from ualg import (
    Morphism,
    Subuniverse,
    check_homomorphism,
    enumerate_homomorphisms,
    generate,
    is_subuniverse,
)
from conftest import random_algebra

seeds = st.integers(min_value=0, max_value=2**62 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_random_algebras_are_total(seed):
    rng = random.Random(seed)
    alg = random_algebra(rng)
    for sym, arity in alg.signature.symbols:
        for args in itertools.product(alg.carrier, repeat=arity):
            assert alg.apply(sym, *args) in alg.index_of


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_generated_sets_are_closed(seed):
    rng = random.Random(seed)
    alg = random_algebra(rng, max_size=4)
    seed_elems = rng.sample(alg.carrier, rng.randint(0, len(alg.carrier)))
    result = generate(alg, seed_elems)
    if result.members:
        ok, _ = is_subuniverse(alg, result.members)
        assert ok


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_subuniverse_intersection_closed(seed):
    rng = random.Random(seed)
    alg = random_algebra(rng, max_size=4)
    a = set(generate(alg, rng.sample(alg.carrier, 1)).members)
    b = set(generate(alg, rng.sample(alg.carrier, 1)).members)
    both = a & b
    if both:
        ok, _ = is_subuniverse(alg, both)
        assert ok


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_enumerated_homs_verify(seed):
    rng = random.Random(seed)
    src = random_algebra(rng, max_size=3, max_ops=2, name="S")
    # target over the same signature with fresh random tables
    dst_elems = [f"d{i}" for i in range(rng.randint(1, 3))]
    ops = [
        (sym, arity, [rng.choice(dst_elems) for _ in range(len(dst_elems) ** arity)])
        for sym, arity in src.signature.symbols
    ]
    from ualg import validate_algebra

    dst = validate_algebra("D", dst_elems, ops)
    homs = enumerate_homomorphisms(src, dst)
    assert homs == sorted(homs, key=lambda m: m.images)
    for m in homs:
        assert check_homomorphism(m)[0]
    # oracle: brute-force count over all maps
    brute = sum(
        1
        for images in itertools.product(dst.carrier, repeat=len(src.carrier))
        if check_homomorphism(Morphism(src, dst, images))[0]
    )
    assert len(homs) == brute


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_identity_is_always_a_retraction(seed):
    rng = random.Random(seed)
    alg = random_algebra(rng, max_size=3)
    ident = Morphism(alg, alg, alg.carrier)
    assert check_homomorphism(ident)[0]
    whole = Subuniverse.of(alg, alg.carrier)
    from ualg import find_retractions

    assert alg.carrier in [m.images for m in find_retractions(alg, whole)]
