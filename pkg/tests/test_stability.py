import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperkstab.arrangement import Arrangement, make_arrangement, total_degree
from hyperkstab.generators import gen_alpha_example, gen_snc
from hyperkstab.lattice import all_flats, closure_of, flat_weight, is_snc
from hyperkstab.stability import (
    Verdict,
    beta_hat_blowup,
    classify,
    is_log_fano,
    lct,
    oracle_dim1,
    oracle_snc,
    scale_to_cy,
)
from helpers import (
    concurrent3,
    concurrent4,
    coordinate,
    generic4,
    points_p1,
    random_arrangement,
    random_dim1_weights,
    random_rat,
    snc_all_subsets,
    triangle,
)

seeds = st.integers(0, 2**32 - 1)


def test_lct_examples():
    assert lct(triangle(F(1))) == 1
    assert lct(concurrent3()) == F(2, 3)
    ws = [F(1, 3), F(3, 4), F(1, 2)]
    assert lct(points_p1(ws)) == 1 / max(ws)


def test_lct_empty():
    with pytest.raises(ValueError):
        lct(Arrangement(2))


def test_is_log_fano_examples():
    assert is_log_fano(triangle())[0]
    ok, reason = is_log_fano(concurrent3(F(2, 3)))
    assert not ok and "[0, 1, 2]" in reason
    assert not is_log_fano(make_arrangement(3, [[0, 1, 1, 0]], [1]))[0]


def test_scale_to_cy_examples():
    assert scale_to_cy(triangle()).weights == (1, 1, 1)
    assert scale_to_cy(generic4()).weights == (F(3, 4),) * 4
    assert scale_to_cy(points_p1([F(1, 2), F(1, 3)])).weights == (F(6, 5), F(4, 5))


def test_classify_examples():
    r = classify(triangle(F(2, 3)))
    assert r.verdict is Verdict.POLYSTABLE_NOT_K_STABLE
    assert r.witness.closure == (0, 1)
    r = classify(concurrent4())
    assert r.verdict is Verdict.UNSTABLE and r.witness.closure == (0, 1, 2, 3)
    assert classify(generic4()).verdict is Verdict.UNIFORMLY_K_STABLE
    assert classify(points_p1([F(1, 2)] * 3)).verdict is Verdict.UNIFORMLY_K_STABLE
    assert classify(concurrent3()).verdict is Verdict.NOT_LOG_FANO


def test_classify_trivial_pair():
    r = classify(Arrangement(2))
    assert r.verdict is Verdict.POLYSTABLE_NOT_K_STABLE
    assert r.note == "(P^2, 0)" and r.witness is None


def test_classify_cone_example():
    a = gen_alpha_example(2, 3, F(3, 4), seed=1)
    r = classify(a)
    assert r.verdict is Verdict.SEMISTABLE_NOT_POLYSTABLE
    assert r.witness.codim == 2


def test_beta_examples():
    g = generic4()
    assert beta_hat_blowup(g, closure_of(g, [0, 1])).value == F(1, 9)
    t = triangle(F(2, 3))
    assert beta_hat_blowup(t, closure_of(t, [0, 1])).value == 0
    c = concurrent4()
    b = beta_hat_blowup(c, closure_of(c, [0, 1]))
    assert (b.value, b.c, b.dW, b.d) == (F(-2, 3), 2, F(4, 3), F(4, 3))


def test_beta_requires_log_fano():
    c = concurrent3()
    with pytest.raises(ValueError, match="log Fano"):
        beta_hat_blowup(c, closure_of(c, [0, 1]))


def test_oracle_dim1_examples():
    assert oracle_dim1([F(1, 2)] * 3) == (True, True)
    assert oracle_dim1([F(1, 2)] * 2) == (True, False)
    assert oracle_dim1([F(3, 4), F(1, 4), F(1, 4)]) == (False, False)
    with pytest.raises(ValueError):
        oracle_dim1([F(1)])


def test_oracle_snc_examples():
    assert oracle_snc(generic4()) == (True, True)
    for n in range(1, 5):
        assert oracle_snc(coordinate(n, F(1, 2))) == (True, False)
    a = make_arrangement(2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [F(1, 2), F(1, 4), F(1, 4)])
    assert oracle_snc(a) == (False, False)
    with pytest.raises(ValueError, match="simple normal crossing"):
        oracle_snc(concurrent4())


@settings(max_examples=200)
@given(seeds)
def test_dim1_agreement(seed):
    ws = random_dim1_weights(random.Random(seed))
    r = classify(points_p1(ws))
    assert (r.semistable, r.uniformly_stable) == tuple(oracle_dim1(ws))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 3), st.integers(2, 6))
def test_snc_agreement_and_subset_oracle(seed, n, m):
    rng = random.Random(seed)
    a = gen_snc(n, m, [random_rat(rng) * F(n + 1, m) for _ in range(m)], seed)
    if not is_log_fano(a)[0]:
        return
    flags = oracle_snc(a)
    assert tuple(flags) == snc_all_subsets(a)
    r = classify(a)
    assert (r.semistable, r.uniformly_stable) == tuple(flags)


def sign(x):
    return (x > 0) - (x < 0)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(1, 7))
def test_beta_sign_law(seed, n, m):
    rng = random.Random(seed)
    a = random_arrangement(rng, n, m, bound=2, weights=[random_rat(rng) / 2 for _ in range(m)])
    if not is_log_fano(a)[0]:
        return
    tau = F(n + 1) / total_degree(a)
    betas = []
    for w in all_flats(a):
        b = beta_hat_blowup(a, w).value
        assert sign(b) == sign(F(w.codim) / flat_weight(a, w) - tau)
        betas.append(b)
    assert (min(betas) >= 0) == (classify(a).verdict is not Verdict.UNSTABLE)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(1, 7))
def test_scaling_law_and_lct_bound(seed, n, m):
    rng = random.Random(seed)
    a = random_arrangement(rng, n, m, bound=2, weights=[F(rng.randint(1, 5)) for _ in range(m)])
    top = F(n + 1) / total_degree(a)
    results = []
    for _ in range(3):
        t = random_rat(rng, 0, 1) * top
        b = a.with_weights(w * t for w in a.weights)
        if is_log_fano(b)[0]:
            results.append(classify(b))
    assert len(set(results)) <= 1
    if results:
        r = results[0]
        g = scale_to_cy(a)
        if r.verdict is not Verdict.UNSTABLE:
            assert lct(g) >= 1
        if r.verdict is Verdict.UNIFORMLY_K_STABLE:
            assert lct(g) > 1
        if r.verdict is Verdict.UNSTABLE:
            assert F(r.witness.codim) / flat_weight(a, r.witness) * total_degree(a) < n + 1
