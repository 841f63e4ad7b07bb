import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cftbraid.errors import PoleError, UsageError
from cftbraid.special_functions import continue_hyp2f1, digamma, gamma, hyp2f1, power_branch, rgamma

rng = np.random.default_rng(20240611)


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


# --- gamma -------------------------------------------------------------------------


def test_gamma_small_values():
    assert abs(gamma(1) - 1) < 1e-15
    assert rel(gamma(0.5), math.sqrt(math.pi)) < 1e-15
    assert rel(gamma(5), 24) < 1e-14


@pytest.mark.parametrize("n", [0, -1, -2, -7])
def test_gamma_poles(n):
    with pytest.raises(PoleError):
        gamma(n)
    assert rgamma(n) == 0


def test_gamma_against_mpmath_disc():
    worst = 0.0
    for _ in range(400):
        r = 50 * math.sqrt(rng.random())
        z = r * cmath.exp(2j * math.pi * rng.random())
        if abs(z - round(z.real)) < 1e-3 and z.real < 0.5:
            continue
        worst = max(worst, rel(gamma(z), mp.gamma(z)))
    assert worst <= 1e-13


def test_gamma_recurrence_strip():
    for _ in range(100):
        z = complex(rng.uniform(-10, 10), rng.uniform(-5, 5))
        assert abs(gamma(z + 1) / (z * gamma(z)) - 1) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(-20, 20), st.floats(-3, 3))
def test_gamma_reflection(re, im):
    z = complex(re, im)
    if abs(z - round(re)) < 1e-6:
        return
    # cmath.sin(pi*z) loses digits near the integers, so take sin(pi z) from mpmath
    val = gamma(z) * gamma(1 - z) * complex(mp.sinpi(z)) / math.pi
    assert abs(val - 1) < 1e-12


def test_digamma_against_mpmath():
    for _ in range(100):
        z = complex(rng.uniform(-8, 8), rng.uniform(-8, 8))
        assert rel(digamma(z), mp.digamma(z)) < 1e-12


# --- power_branch ---------------------------------------------------------------------


def test_power_branch_examples():
    assert power_branch(1.0, 0.37) == 1
    assert abs(power_branch(0.25, 0.5) - 0.5) < 1e-16
    assert abs(power_branch(0.25, 0.5, 1) + 0.5) < 1e-15
    with pytest.raises(PoleError):
        power_branch(0, -0.5)


@settings(max_examples=200, deadline=None)
@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3), st.floats(-3, 3), st.integers(-3, 3))
def test_power_branch_winding_ratio(base, alpha, w):
    r = power_branch(base, alpha, w + 1) / power_branch(base, alpha, w)
    assert abs(r - cmath.exp(2j * math.pi * alpha)) < 1e-12


# --- hyp2f1 -----------------------------------------------------------------------------


def test_hyp2f1_at_zero():
    assert hyp2f1(0.3, 1.2, 2.5, 0) == 1


def test_hyp2f1_log_closed_form():
    x = 0.3 + 0.2j
    assert rel(hyp2f1(1, 1, 2, x), -cmath.log(1 - x) / x) < 1e-14


def _long_series(a, b, c, x, n_terms, chunk=10**6):
    """Plain Maclaurin sum in float64 chunks (terms carried in log form)."""
    total, logt, start = 0.0, 0.0, 0
    while start < n_terms:
        j = np.arange(start, min(start + chunk, n_terms), dtype=float)
        steps = np.log((a + j) * (b + j) / ((c + j) * (1 + j)) * x)
        logs = logt + np.concatenate([[0.0], np.cumsum(steps[:-1])])
        total += math.fsum(np.exp(logs))
        logt = logs[-1] + steps[-1]
        start += chunk
    return total


def test_hyp2f1_gauss_sum():
    a, b, c = 0.2, 0.3, 1.7
    want = gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b))
    assert rel(hyp2f1(a, b, c, 1), want) < 1e-13
    x = 1 - 1e-6
    series = _long_series(a, b, c, x, 4 * 10**7)
    assert rel(hyp2f1(a, b, c, x), series) < 1e-10
    # the gap to the value at 1 is the O((1-x)) correction
    assert rel(series, want) < 1e-5


def test_hyp2f1_gauss_sum_divergent():
    with pytest.raises(PoleError):
        hyp2f1(1, 1, 1.5, 1)


def test_hyp2f1_parameter_pole():
    with pytest.raises(PoleError):
        hyp2f1(0.5, 0.5, -2, 0.3)


def test_hyp2f1_cut_needs_side():
    with pytest.raises(UsageError):
        hyp2f1(0.3, 0.4, 1.1, 2.5)
    for side in (1, -1):
        got = hyp2f1(0.3, 0.4, 1.1, 2.5, side=side)
        want = mp.hyp2f1(0.3, 0.4, 1.1, mp.mpc(2.5, side * 1e-25))
        assert rel(got, want) < 1e-12


def test_hyp2f1_random_complex():
    worst = 0.0
    for _ in range(300):
        a, b = (complex(rng.uniform(-3, 3), rng.uniform(-1, 1)) for _ in range(2))
        c = complex(rng.uniform(0.2, 4), rng.uniform(-1, 1))
        x = 3 * rng.random() * cmath.exp(2j * math.pi * rng.random())
        if abs(x.imag) < 1e-3 and x.real > 1:
            continue
        worst = max(worst, rel(hyp2f1(a, b, c, x), mp.hyp2f1(a, b, c, x)))
    assert worst <= 1e-10


@pytest.mark.parametrize("x", [0.9, 0.99, 0.999, 0.5 + 0.866j, 0.5 - 0.866j, -0.999, 0.97j])
def test_hyp2f1_hard_points(x):
    for a, b, c in [(0.25, 0.75, 0.5), (1 / 3, 2 / 3, 0.4), (0.6, 1.4, 2.0), (1.5, 0.5, 2.0)]:
        assert rel(hyp2f1(a, b, c, x), mp.hyp2f1(a, b, c, x)) < 1e-10


@pytest.mark.parametrize("abc", [(0.5, 0.5, 1.0), (1.0, 1.0, 2.0), (0.25, 0.75, 3.0), (0.4, 0.6, 3.0)])
def test_hyp2f1_integer_c_minus_a_minus_b(abc):
    a, b, c = abc
    for x in (0.7, 0.95, 0.6 + 0.3j, -3.0):
        assert rel(hyp2f1(a, b, c, x), mp.hyp2f1(a, b, c, x)) < 1e-10


def test_hyp2f1_terminating():
    assert rel(hyp2f1(-3, 2.5, 1.5, 7.0), mp.hyp2f1(-3, 2.5, 1.5, 7.0)) < 1e-13


def test_series_vs_connection_formula():
    worst = 0.0
    for _ in range(500):
        a, b = rng.uniform(-2, 2, size=2)
        c = rng.uniform(0.3, 3)
        if abs((c - a - b) - round(c - a - b)) < 1e-3:
            continue
        x = rng.uniform(0.4, 0.6) * cmath.exp(1j * rng.uniform(-0.5, 0.5))
        s = hyp2f1(a, b, c, x, method="series")
        t = hyp2f1(a, b, c, x, method="one_minus")
        worst = max(worst, rel(t, s))
    assert worst <= 1e-9


def test_continuation_around_one_picks_up_monodromy():
    a, b, c = 0.3, 0.45, 1.2
    x0 = 0.4
    loop = [1 + (x0 - 1) * cmath.exp(2j * math.pi * t / 64) for t in range(65)]
    got = continue_hyp2f1(a, b, c, loop).value
    # the second local solution at x=1 has exponent c-a-b
    s = c - a - b
    g1 = gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b))
    g2 = gamma(c) * gamma(-s) / (gamma(a) * gamma(b))
    u1 = hyp2f1(a, b, a + b - c + 1, 1 - x0)
    u2 = (1 - x0) ** s * hyp2f1(c - a, c - b, s + 1, 1 - x0)
    want = g1 * u1 + g2 * u2 * cmath.exp(2j * math.pi * s)
    assert rel(got, want) < 1e-11
