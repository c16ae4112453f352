import random
from pathlib import Path

import pytest

from ualg import Signature, validate_algebra

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


def random_algebra(rng: random.Random, max_size: int = 5, max_arity: int = 2,
                   max_ops: int = 3, name: str = "R"):
    """A random valid algebra: random carrier size and random total tables."""
    size = rng.randint(1, max_size)
    elems = [f"e{i}" for i in range(size)]
    n_ops = rng.randint(1, max_ops)
    ops = []
    for oi in range(n_ops):
        arity = rng.randint(0, max_arity)
        values = [rng.choice(elems) for _ in range(size**arity)]
        ops.append((f"f{oi}", arity, values))
    return validate_algebra(name, elems, ops)
