import math

import numpy as np
import pytest
from scipy import stats

from approxhe.sampling import (
    RngState,
    center,
    parse_overrides,
    sample_dg,
    sample_hwt,
    sample_uniform,
    sample_zo,
)


def test_hwt_zero_weight():
    assert sample_hwt(4, 0, RngState(1)) == [0, 0, 0, 0]


def test_hwt_override_reproduces_example_secret():
    rng = RngState(0, {"hwt": [[0, 1, -1, 0]]})
    assert sample_hwt(4, 2, rng) == [0, 1, -1, 0]


def test_hwt_exact_weight():
    rng = RngState(7)
    for _ in range(50):
        v = sample_hwt(100, 37, rng)
        assert sum(1 for x in v if x) == 37
        assert set(v) <= {-1, 0, 1}


def test_hwt_rejects_overweight():
    with pytest.raises(ValueError):
        sample_hwt(4, 5, RngState(0))


def test_dg_override():
    rng = RngState(0, {"dg": [[1, 1, 0, 0]]})
    assert sample_dg(4, 10.24, rng) == [1, 1, 0, 0]


def test_dg_statistics():
    draws = np.array(sample_dg(100_000, 10.24, RngState(3)))
    assert draws.dtype.kind == "i"
    # continuous variance 10.24 plus 1/12 from rounding stays inside 5%
    assert abs(draws.var() - 10.24) < 0.05 * 10.24
    assert np.mean(np.abs(draws) <= 6 * math.sqrt(10.24)) >= 0.9999


def test_zo_override_and_support():
    rng = RngState(0, {"zo": [[1, 0, 0, 1]]})
    assert sample_zo(4, 0.5, rng) == [1, 0, 0, 1]
    assert set(sample_zo(1000, 0.5, rng)) <= {-1, 0, 1}


def test_zo_empty():
    assert sample_zo(0, 0.5, RngState(0)) == []


@pytest.mark.parametrize("rho", [0.1, 0.5, 0.9])
def test_zo_density(rho):
    n = 100_000
    v = np.array(sample_zo(n, rho, RngState(11)))
    frac = np.mean(v != 0)
    sd = math.sqrt(rho * (1 - rho) / n)
    assert abs(frac - rho) < 3 * sd
    # the signs are balanced too
    assert abs(np.mean(v == 1) - np.mean(v == -1)) < 4 * math.sqrt(rho / n)


def test_zo_rejects_bad_rho():
    with pytest.raises(ValueError):
        sample_zo(4, 1.0, RngState(0))


def test_uniform_q1_is_zero():
    assert sample_uniform(5, 1, RngState(0)) == [0] * 5


def test_uniform_override_example_a():
    rng = RngState(0, {"uniform": [[-221, 67, -15, 103]]})
    assert sample_uniform(4, 1280, rng) == [-221, 67, -15, 103]


def test_uniform_chi_square():
    q = 97
    v = sample_uniform(100_000, q, RngState(5))
    assert all(-q / 2 < x <= q / 2 for x in v)
    counts = np.bincount(np.array(v) % q, minlength=q)
    assert stats.chisquare(counts).pvalue > 0.001


def test_uniform_big_modulus():
    q = 2**200 + 3
    v = sample_uniform(64, q, RngState(2))
    assert all(-q / 2 < x <= q / 2 for x in v)
    assert max(abs(x) for x in v) > 2**190


def test_center_range():
    assert center(1279, 1280) == -1
    assert center(640, 1280) == 640
    assert center(641, 1280) == -639
    assert center(3, 5) == -2


@pytest.mark.parametrize("sampler, args", [
    (sample_hwt, (64, 20)), (sample_dg, (64, 10.24)), (sample_zo, (64, 0.5)), (sample_uniform, (64, 2**80)),
])
def test_determinism(sampler, args):
    assert sampler(*args, RngState(99)) == sampler(*args, RngState(99))
    assert sampler(*args, RngState(99)) != sampler(*args, RngState(100))


def test_override_file_parsing_and_fallback():
    text = "# keygen samples\nhwt 0 1 -1 0\ndg 1 1 0 0\n\nuniform -221 67 -15 103\n"
    ov = parse_overrides(text)
    rng = RngState(4, ov)
    assert sample_dg(4, 10.24, rng) == [1, 1, 0, 0]
    # queue exhausted: falls back to the seeded stream, untouched so far
    assert sample_dg(4, 10.24, rng) == sample_dg(4, 10.24, RngState(4))
    assert rng.pending_overrides() == {"hwt": 1, "uniform": 1}


def test_override_length_checked():
    rng = RngState(0, {"zo": [[1, 0]]})
    with pytest.raises(ValueError):
        sample_zo(4, 0.5, rng)
