from fractions import Fraction as F

import pytest

from hyperkstab.arrangement import Arrangement, serialize, total_degree, validate
from hyperkstab.generators import (
    GenerationError,
    GenSpec,
    alpha_lower_bound,
    gen_alpha_example,
    gen_pencil,
    generate,
)
from hyperkstab.lattice import all_flats, is_snc
from hyperkstab.stability import Verdict, classify, is_log_fano
from helpers import triangle


def test_snc_example():
    a = generate(GenSpec("snc", {"n": 2, "m": 5, "weights": [F(1, 5)], "seed": 7}))
    validate(a)
    assert a.m == 5 and is_snc(a)


@pytest.mark.parametrize(
    "spec",
    [
        GenSpec("snc", {"n": 3, "m": 6, "weights": [F(1, 3)], "seed": 11}),
        GenSpec("pencil", {"n": 3, "m": 3, "extras": 2, "weights": [F(1, 4)], "seed": 5}),
        GenSpec("alpha_example", {"n": 2, "m": 3, "t": F(3, 4), "seed": 2}),
    ],
    ids=["snc", "pencil", "alpha"],
)
def test_same_seed_same_bytes(spec):
    assert serialize(generate(spec)) == serialize(generate(spec))


def test_seed_matters():
    make = lambda s: generate(GenSpec("snc", {"n": 2, "m": 4, "weights": [F(1, 4)], "seed": s}))
    assert len({serialize(make(s)) for s in range(5)}) > 1


def test_pencil_structure():
    a = gen_pencil(2, 3, [F(1, 4)], extras=2, seed=1)
    validate(a)
    axis = all_flats(a).get([0, 1, 2])
    assert axis is not None and axis.codim == 2
    assert not is_snc(a)


def test_pencil_preconditions():
    with pytest.raises(GenerationError):
        gen_pencil(1, 3, [F(1, 4)])
    with pytest.raises(GenerationError):
        gen_pencil(2, 3, [F(1, 4), F(1, 4)])


def test_sjoin_example():
    points = [Arrangement(0)] * 3
    assert generate(GenSpec("sjoin", {"factors": points})) == triangle(F(1))


def test_dim1():
    a = generate(GenSpec("dim1", {"weights": [F(1, 2), F(1, 3), F(1, 4), F(1, 5)]}))
    assert a.dim == 1 and a.m == 4


@pytest.mark.parametrize("n, m, t", [(2, 3, F(3, 4)), (3, 4, F(8, 9)), (2, 4, F(4, 5))])
def test_alpha_example(n, m, t):
    a = gen_alpha_example(n, m, t, seed=0)
    validate(a)
    assert a.m == m * n + m
    assert total_degree(a) == t * (n + 1) < n + 1
    assert is_log_fano(a)[0]
    assert classify(a).verdict is Verdict.SEMISTABLE_NOT_POLYSTABLE


def test_alpha_example_in_dimension_one():
    a = gen_alpha_example(1, 3, F(1, 2), seed=0)
    assert a.m == 4 and total_degree(a) == 1
    assert F(1, 2) in a.weights


def test_alpha_bounds():
    assert alpha_lower_bound(2, 3) == F(3, 4)
    assert alpha_lower_bound(1, 5) == 0
    with pytest.raises(GenerationError, match="outside"):
        gen_alpha_example(2, 3, F(1, 2))
    with pytest.raises(GenerationError, match="m >= n\\+1"):
        gen_alpha_example(3, 3, F(9, 10))


def test_unknown_kind():
    with pytest.raises(GenerationError):
        generate(GenSpec("spiral"))
