import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cftbraid.conformal_blocks import (
    PATTERNS,
    coset_constant,
    eval_coset_F4,
    eval_F4,
    eval_F4_eps,
    eval_K,
    eval_X,
    eval_Y,
    norms_4pt,
    norms_5pt,
)
from cftbraid.errors import PoleError, UsageError
from cftbraid.exchange_matrices import d_matrix
from cftbraid.fusion_algebra import EPSILON, IDENTITY, SIGMA, conformal_dimension
from cftbraid.special_functions import gamma

rng = np.random.default_rng(7)


def rel(a, b):
    return abs(complex(a) - complex(b)) / abs(complex(b))


# --- normalizations ---------------------------------------------------------------


def test_norms_4pt():
    a, b = norms_4pt(2)
    assert abs(a - math.sqrt(2) / 2) < 1e-15 and abs(b - math.sqrt(2) / 2) < 1e-15
    a, b = norms_4pt(3)
    assert abs(a - math.sin(math.radians(36))) < 1e-15
    assert abs(b - math.sin(math.radians(108))) < 1e-15
    for k in range(2, 40):
        n1, n2 = norms_4pt(k)
        assert abs(n2 / n1 - (2 * math.cos(2 * math.pi / (k + 2)) + 1)) < 1e-12


def test_norms_5pt():
    assert norms_5pt(2)[2] == 0
    assert all(v > 0 for v in norms_5pt(3))
    for k in range(2, 30):
        assert all(v >= 0 for v in norms_5pt(k))
    n1, n2, _ = norms_5pt(10**5)
    assert abs(n1 / n2 - 4 / 9) < 1e-8


# --- four-point blocks --------------------------------------------------------------


def test_block_matches_quadrature_k2():
    want = oracles.block_integral(2, 1, 0.37)
    got = eval_F4(2, 1, 0.37, normalized=False).value
    assert rel(got, complex(want)) < 1e-6


@pytest.mark.parametrize("k", [2, 3, 5])
@pytest.mark.parametrize("mu", [1, 2])
def test_block_quadrature_interior_points(k, mu):
    for x in (0.15, 0.3, 0.5, 0.7, 0.85):
        want = complex(oracles.block_integral(k, mu, x))
        assert rel(eval_F4(k, mu, x, normalized=False).value, want) < 1e-6


def test_block_series_vs_transformed():
    x = 0.5 + 0.1j
    s = eval_F4(4, 2, x, method="series").value
    t = eval_F4(4, 2, x, method="one_minus").value
    assert rel(t, s) < 1e-9


def test_block_weight_sqrt_norm():
    for k in (2, 3, 7):
        for mu in (1, 2):
            ratio = eval_F4(k, mu, 0.4).value / eval_F4(k, mu, 0.4, normalized=False).value
            assert abs(ratio - math.sqrt(norms_4pt(k)[mu - 1])) < 1e-14


@pytest.mark.parametrize("x", [0, 1])
def test_block_singular_points(x):
    with pytest.raises(PoleError):
        eval_F4(3, 1, x)


def test_block_bad_index():
    with pytest.raises(UsageError):
        eval_F4(3, 3, 0.5)


def _slope(f, x1=1e-3, x2=1e-4):
    return (math.log(abs(f(x1))) - math.log(abs(f(x2)))) / (math.log(x1) - math.log(x2))


def _snap(v, den):
    return Fraction(round(v * den), den)


def test_small_x_exponents_match_channels():
    for k in range(2, 9):
        h_sig = conformal_dimension(k, SIGMA)
        for mu, chan in ((1, IDENTITY), (2, EPSILON)):
            s = _slope(lambda x: eval_F4(k, mu, x).value)
            want = conformal_dimension(k, chan) - 2 * h_sig
            assert abs(s - float(want)) < 1e-3
            assert _snap(s, 4 * (k + 2)) == want


def test_monodromy_windings():
    for k in range(2, 9):
        for x in (0.3, 0.6 + 0.2j):
            f0 = [eval_F4(k, mu, x).value for mu in (1, 2)]
            f1 = [eval_F4(k, mu, x, winding=(1, 0)).value for mu in (1, 2)]
            assert abs(f1[0] / f0[0] - cmath.exp(-1j * math.pi * (k - 1) / (k + 2))) < 1e-9
            assert abs(f1[1] / f0[1] - cmath.exp(1j * math.pi * (k + 1) / (k + 2))) < 1e-9


# --- SU(2)_q functions -------------------------------------------------------------------


def _constraint(f, x):
    terms = [f(m, x) for m in PATTERNS]
    return abs(sum(terms)) / max(abs(t) for t in terms)


@pytest.mark.parametrize("q", range(1, 7))
def test_x_constraints(q):
    for mu in (1, 2):
        for x in rng.uniform(0.02, 0.98, size=10):
            assert _constraint(lambda m, y: eval_X(q, mu, m, y), x) <= 1e-9


@pytest.mark.parametrize("k", range(2, 7))
def test_x_constraint_at_negative_level(k):
    for mu in (1, 2):
        for x in rng.uniform(0.02, 0.98, size=5):
            assert _constraint(lambda m, y: eval_X(-k - 4, mu, m, y), x) <= 1e-9


def test_x_level_one_ratio():
    for x in (0.1, 0.37, 0.8, 0.4 + 0.3j):
        r = eval_X(1, 1, "+--+", x) / eval_X(1, 1, "--++", x)
        assert rel(r, (1 - x) / x) < 1e-12


def test_x_quadrature_q3():
    want = complex(oracles.x_integral(3, 2, "+--+", 0.42))
    assert rel(eval_X(3, 2, "+--+", 0.42), want) < 1e-6


@pytest.mark.parametrize("q", [1, 2, 4])
def test_x_quadrature_all_patterns(q):
    for mu in (1, 2):
        for m in PATTERNS:
            for x in (0.25, 0.6):
                want = complex(oracles.x_integral(q, mu, m, x))
                assert rel(eval_X(q, mu, m, x), want) < 1e-6


def test_y_constraint_row():
    for k in range(2, 9):
        for mu in (1, 2):
            for x in (0.2, 0.55, 0.3 + 0.4j):
                assert _constraint(lambda m, y: eval_Y(k, mu, m, y), x) < 1e-12


def test_y_is_x_at_negative_level():
    for k in (2, 3, 6):
        for mu in (1, 2):
            for m in PATTERNS:
                assert rel(eval_X(-k - 4, mu, m, 0.3), eval_Y(k, mu, m, 0.3)) < 1e-12
    v = eval_Y(2, 1, "+--+", 0.3)
    assert math.isfinite(abs(v)) and abs(v) > 0


def test_y_small_x_slope():
    for k in range(2, 8):
        s = _slope(lambda x: eval_Y(k, 1, "+--+", x))
        assert abs(s - 3 / (2 * k + 4)) < 1e-3


# --- coset blocks ----------------------------------------------------------------------


@pytest.mark.parametrize("k", range(2, 7))
def test_coset_ratio_constant(k):
    xs = np.linspace(0.04, 0.96, 20)
    for mu in (1, 2):
        r = np.array([eval_coset_F4(k, mu, x) / eval_F4(k, mu, x).value for x in xs])
        assert np.max(np.abs(r / r[0] - 1)) <= 1e-8


def test_coset_closed_form():
    for k in range(2, 7):
        for mu in (1, 2):
            for x in (0.2, 0.5, 0.8):
                assert rel(eval_coset_F4(k, mu, x, "closed"), eval_coset_F4(k, mu, x)) <= 1e-9


def test_coset_first_block_constant():
    # the ratio is fixed by the level-one factor alone
    for k in (2, 4):
        r = eval_coset_F4(k, 1, 0.3) / eval_F4(k, 1, 0.3).value
        assert rel(r, -2 * coset_constant()) < 1e-12
    assert abs(coset_constant() - 4 * math.pi**2 / gamma(1 / 3).real ** 3) < 1e-15


def test_coset_k2_midpoint():
    for mu in (1, 2):
        v = eval_coset_F4(2, mu, 0.5)
        assert abs(v) > 1e-6 and math.isfinite(abs(v))


def test_coset_bad_form():
    with pytest.raises(UsageError):
        eval_coset_F4(3, 1, 0.5, "other")


# --- <sigma sigma sigma eps'> ------------------------------------------------------------

ETA = (0.1 + 0.2j, 1.3 - 0.4j, 2.2 + 0.9j, -0.7 + 1.6j)


@pytest.mark.parametrize("k", range(3, 8))
def test_eps_scaling(k):
    h = 3 * conformal_dimension(k, SIGMA) + conformal_dimension(k, (1, 4))
    v1 = eval_F4_eps(k, ETA)
    v2 = eval_F4_eps(k, [2 * e for e in ETA])
    assert rel(v2 / v1, 2 ** (-float(h))) < 1e-12


def test_eps_translation():
    v1 = eval_F4_eps(4, ETA)
    v2 = eval_F4_eps(4, [e + 0.01 for e in ETA])
    assert rel(v2, v1) < 1e-12


@pytest.mark.parametrize("as_printed", [False, True])
def test_eps_exchange_phase(as_printed):
    for k in range(2, 8):
        a12 = (k if as_printed else k + 1) / (2 * (k + 2))
        e1, e2, e3, e4 = ETA
        r = eval_F4_eps(k, (e2, e1, e3, e4), as_printed=as_printed) / eval_F4_eps(k, ETA, as_printed=as_printed)
        assert min(abs(r - cmath.exp(s * 1j * math.pi * a12)) for s in (1, -1)) < 1e-12


def test_eps_real_points_positive():
    v = eval_F4_eps(3, (3.0, 2.0, 1.0, 0.0))
    assert abs(v.imag) < 1e-15 and v.real > 0
    with pytest.raises(PoleError):
        eval_F4_eps(3, (1, 1, 2, 3))


# --- K functions ---------------------------------------------------------------------------


@pytest.mark.parametrize("which", ["K2", "K3"])
def test_k_quadrature_k3(which):
    want = complex(oracles.k_integral(3, which, 0.3))
    assert rel(eval_K(3, which, 0.3), want) < 1e-6


@pytest.mark.parametrize("which", ["K2", "K3", "K2'", "K3'"])
def test_k_quadrature_interior(which):
    for x in (0.2, 0.45, 0.7):
        want = complex(oracles.k_integral(5, which, x))
        assert rel(eval_K(5, which, x), want) < 1e-6


@pytest.mark.parametrize("k", range(3, 9))
def test_k_basis_change(k):
    D = d_matrix(k)
    for x in rng.uniform(0.02, 0.98, size=10):
        k2, k3, k2p, k3p = (eval_K(k, w, x) for w in ("K2", "K3", "K2'", "K3'"))
        assert rel(D[0, 0] * k2p + D[0, 1] * k3p, k2) <= 1e-8
        assert rel(D[1, 0] * k2p + D[1, 1] * k3p, k3) <= 1e-8


def test_k_basis_change_printed_sign_fails():
    D = d_matrix(4, as_printed=True)
    x = 0.4
    k3 = eval_K(4, "K3", x)
    assert rel(D[1, 0] * eval_K(4, "K2'", x) + D[1, 1] * eval_K(4, "K3'", x), k3) > 1e-3


def test_k_unknown():
    with pytest.raises(UsageError):
        eval_K(3, "K7", 0.3)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.floats(0.01, 0.99))
def test_block_vector_real_on_interval(k, x):
    for mu in (1, 2):
        v = eval_F4(k, mu, x).value
        assert abs(v.imag) <= 1e-12 * abs(v)
