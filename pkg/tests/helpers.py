import random
from fractions import Fraction
from typing import List, Optional

import pytest

from zpgabor.cyclotomic.cyclotomic import CycNum
from zpgabor.fourier.fourier import Window
from zpgabor.gabor.system import GaborSystem
from zpgabor.group.group import GroupParams, PointSet


def random_window(params: GroupParams, rng: random.Random, values=(-2, -1, 0, 1, 2, Fraction(1, 2))) -> Window:
    while True:
        window = Window(params, tuple(rng.choice(values) for _ in range(params.size)))
        if not window.is_zero():
            return window


def random_subset(params: GroupParams, rng: random.Random, size: Optional[int] = None) -> PointSet:
    if size is None:
        size = rng.randint(1, params.size)
    return PointSet.from_indices(params, rng.sample(range(params.size), size))


def row(params: GroupParams) -> PointSet:
    """Z_p x {0}."""
    return PointSet.from_points(params, [(t, 0) for t in range(params.p)])


def column(params: GroupParams) -> PointSet:
    """{0} x Z_p."""
    return PointSet.from_points(params, [(0, t) for t in range(params.p)])


def subsets(params: GroupParams) -> List[PointSet]:
    return [PointSet(params, mask) for mask in range(1, 1 << params.size)]


PROPERTY_CASES = 100

# every (p, d) in {2, 3, 5, 7} x {1, 2}; Z_7^2 is slow
PROPERTY_GROUPS = [
    pytest.param(p, d, marks=pytest.mark.slow) if (p, d) == (7, 2) else (p, d)
    for p in (2, 3, 5, 7)
    for d in (1, 2)
]


def random_basis(params: GroupParams, rng: random.Random) -> GaborSystem:
    """A random orthonormal basis (up to scale) with constant-modulus window.

    The support is a point, the whole group, or (d = 2) a translated graph over
    either axis; the index sets are a tiling complement and a spectrum of it.
    """
    p, d = params.p, params.d
    kind = rng.choice(["point", "full", "graph", "graph"] if d == 2 else ["point", "full"])
    if kind == "point":
        E = PointSet.from_indices(params, [rng.randrange(params.size)])
        A, B = PointSet.full(params), PointSet.from_indices(params, [rng.randrange(params.size)])
    elif kind == "full":
        E = PointSet.full(params)
        A, B = PointSet.from_indices(params, [rng.randrange(params.size)]), PointSet.full(params)
    else:
        u = [rng.randrange(p) for _ in range(p)]
        shift = params.point(rng.randrange(params.size))
        if rng.random() < 0.5:
            E = PointSet.from_points(params, [(t, u[t]) for t in range(p)])
            A, B = column(params), row(params)
        else:
            E = PointSet.from_points(params, [(u[t], t) for t in range(p)])
            A, B = row(params), column(params)
        E = E.translate(shift)
    modulus = rng.choice([1, 2, Fraction(1, 2)])
    values = [0] * params.size
    for i in E.indices():
        values[i] = modulus * rng.choice([1, -1]) * CycNum.root(p, rng.randrange(p))
    return GaborSystem(Window(params, tuple(values)), A, B)
