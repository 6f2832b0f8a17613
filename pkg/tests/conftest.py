import random
from fractions import Fraction

import pytest

from covpkit import CostTensor, Decomposition
from covpkit.exact import all_index_tuples
from covpkit.savs import axis_subsets


def random_scalar(rng: random.Random, span: int = 6):
    num = rng.randint(-span, span)
    den = rng.choice([1, 1, 2, 3])
    value = Fraction(num, den)
    return value.numerator if value.denominator == 1 else value


def random_tensor(rng: random.Random, dims) -> CostTensor:
    dims = tuple(dims)
    size = 1
    for extent in dims:
        size *= extent
    return CostTensor(dims, tuple(random_scalar(rng) for _ in range(size)))


def random_decomposition(rng: random.Random, d: int, s: int, n: int) -> Decomposition:
    components = []
    for Q in axis_subsets(d, s):
        shape = (n,) * s
        comp = random_tensor(rng, shape)
        components.append((Q, comp))
    return Decomposition((n,) * d, s, tuple(components))


@pytest.fixture
def rng():
    return random.Random(20240711)
