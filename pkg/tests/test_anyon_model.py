import cmath
import math

import numpy as np
import pytest

from cftbraid.anyon_model import (
    basis_change,
    basis_trees,
    braid_generator_rep,
    cft_channel_map,
    compare_to_cft,
    deligne_product,
    fibonacci_theory,
    hexagon_residual,
    ising_theory,
    pentagon_residual,
    ribbon_residual,
    tricritical_ising_theory,
)
from cftbraid.errors import UsageError
from cftbraid.fusion_algebra import count_blocks

GAMMA = (1 + math.sqrt(5)) / 2

THEORIES = {
    "fib": fibonacci_theory,
    "fib-bar": lambda: fibonacci_theory(conjugate=True),
    "ising": ising_theory,
    "tric": tricritical_ising_theory,
}


def e(t):
    return cmath.exp(1j * math.pi * t)


@pytest.fixture(params=sorted(THEORIES))
def theory(request):
    return THEORIES[request.param]()


def test_pentagon(theory):
    assert pentagon_residual(theory) <= 1e-12


def test_hexagon(theory):
    assert hexagon_residual(theory) <= 1e-12


def test_ribbon(theory):
    assert ribbon_residual(theory) <= 1e-12


def test_dims_are_perron_roots(theory):
    L = theory.labels
    for a in L:
        N = np.array([[1.0 if c in theory.fuse(a, b) else 0.0 for c in L] for b in L])
        root = max(abs(np.linalg.eigvals(N)))
        assert abs(root - theory.dims[a]) < 1e-12


def test_f_matrices_unitary(theory):
    L = theory.labels
    for a in L:
        for b in L:
            for c in L:
                for d in L:
                    _, _, m = theory.f_matrix(a, b, c, d)
                    if m.size:
                        assert np.allclose(m @ m.conj().T, np.eye(len(m)), atol=1e-13)


def test_fibonacci_symbols():
    th = fibonacci_theory()
    assert abs(th.r_symbol("tau", "tau", "1") - e(-4 / 5)) < 1e-15
    assert abs(th.r_symbol("tau", "tau", "tau") - e(3 / 5)) < 1e-15
    assert abs(th.twists["tau"] - e(4 / 5)) < 1e-15
    assert abs(th.dims["tau"] - GAMMA) < 1e-15
    bar = fibonacci_theory(conjugate=True)
    assert abs(bar.r_symbol("tau", "tau", "1") - e(4 / 5)) < 1e-15
    es, fs, F = th.f_matrix("tau", "tau", "tau", "tau")
    assert es == ["1", "tau"] and fs == ["1", "tau"]
    want = np.array([[1 / GAMMA, 1 / math.sqrt(GAMMA)], [1 / math.sqrt(GAMMA), -1 / GAMMA]])
    assert np.max(np.abs(F - want)) < 1e-15


def test_ising_symbols():
    th = ising_theory()
    _, _, F = th.f_matrix("sigma", "sigma", "sigma", "sigma")
    assert np.max(np.abs(F - np.array([[1, 1], [1, -1]]) / math.sqrt(2))) < 1e-15
    assert abs(th.twists["sigma"] - e(1 / 8)) < 1e-15
    assert abs(th.twists["psi"] + 1) < 1e-15


def test_deligne_product_labels():
    th = deligne_product(ising_theory(), fibonacci_theory())
    assert len(th.labels) == 6
    assert th.fuse(("sigma", "tau"), ("sigma", "tau")) == tuple(
        sorted(
            [(a, b) for a in ("1", "psi") for b in ("1", "tau")],
            key=th.labels.index,
        )
    )
    assert pentagon_residual(th) <= 1e-12 and hexagon_residual(th) <= 1e-12


# --- the printed Fibonacci generator --------------------------------------------------


def printed_sigma2():
    g = GAMMA
    a, b = e(4 / 5), e(-3 / 5)
    return np.array(
        [
            [a / g, b / g, -b * g**-1.5],
            [b / g, a / g, -b * g**-1.5],
            [-b * g**-1.5, -b * g**-1.5, e(3 / 5) / g - g**-3],
        ]
    )


def test_fibonacci_sigma2_matches_printed():
    m = braid_generator_rep(fibonacci_theory(), 4, "tau", "tau", 2)
    assert np.max(np.abs(m - printed_sigma2())) <= 1e-12


def test_fibonacci_sigma2_other_orientation_is_inverse():
    m = braid_generator_rep(fibonacci_theory(conjugate=True), 4, "tau", "tau", 2)
    assert np.max(np.abs(m @ printed_sigma2() - np.eye(3))) <= 1e-12


# leaf label and (even n, odd n) totals for each theory
SLOTS = {
    "fibonacci": ("tau", ("1", "tau")),
    "fibonacci-bar": ("tau", ("1", "tau")),
    "ising": ("sigma", ("1", "sigma")),
    "tricritical-ising": (("psi", "tau"), (("1", "1"), ("psi", "tau"))),
}


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_braid_group_relations(theory, n):
    leaf, totals = SLOTS[theory.name]
    total = totals[n % 2]
    gens = [braid_generator_rep(theory, n, leaf, total, i) for i in range(1, n)]
    dim = len(gens[0])
    assert dim > 0
    for i, g in enumerate(gens):
        assert np.allclose(g @ g.conj().T, np.eye(dim), atol=1e-12)
        if i + 1 < len(gens):
            h = gens[i + 1]
            assert np.max(np.abs(g @ h @ g - h @ g @ h)) < 1e-12
        for j in range(i + 2, len(gens)):
            assert np.max(np.abs(g @ gens[j] - gens[j] @ g)) < 1e-12


def test_basis_change_unitary():
    for th, leaf, total in ((fibonacci_theory(), "tau", "1"), (ising_theory(), "sigma", "1")):
        for n in (4, 6, 8):
            C = basis_change(th, n, leaf, total)
            assert np.allclose(C.conj().T @ C, np.eye(len(C)), atol=1e-12)


def test_tree_bases():
    th = fibonacci_theory()
    trees = basis_trees(th, 4, "tau", "tau")
    assert [t.internal for t in trees] == [("1", "tau"), ("tau", "1"), ("tau", "tau")]
    assert trees[0].comb_path() == ("tau", "1", "tau", "tau")
    paired = basis_trees(th, 4, "tau", "tau", "paired")
    assert len(paired) == 3
    with pytest.raises(UsageError):
        paired[0].comb_path()
    with pytest.raises(UsageError):
        basis_trees(th, 5, "tau", "tau", "paired")
    with pytest.raises(UsageError):
        basis_trees(th, 4, "tau", "tau", "spiral")


def test_tree_counts_match_block_counts():
    fib, ising, tric = fibonacci_theory(conjugate=True), ising_theory(), tricritical_ising_theory()
    for n in range(2, 21, 2):
        assert len(basis_trees(ising, n, "sigma", "1")) == count_blocks(2, n)
        assert len(basis_trees(fib, n, "tau", "1")) == count_blocks(3, n)
        if n <= 10:
            assert len(basis_trees(tric, n, ("psi", "tau"), ("1", "1"))) == count_blocks(3, n)


# --- dictionary to the block exchange matrices ---------------------------------------------


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("arity", [4, 5, 6])
@pytest.mark.parametrize("which", ["R12", "R23"])
def test_compare_to_cft(k, arity, which):
    assert compare_to_cft(k, arity, which) <= 1e-10


@pytest.mark.parametrize("k", [2, 3])
def test_compare_fusion_move(k):
    assert compare_to_cft(k, 4, "R13") <= 1e-10
    assert compare_to_cft(k, 4, "identity") == 0


def test_compare_full_tricritical_product():
    th = tricritical_ising_theory()
    for arity in (4, 5, 6):
        for w in ("R12", "R23"):
            assert compare_to_cft(3, arity, w, theory=th) <= 1e-10


def test_compare_mirror_fibonacci_disagrees():
    assert compare_to_cft(3, 4, "R23", theory=fibonacci_theory()) > 0.1


def test_channel_map_errors():
    with pytest.raises(UsageError):
        cft_channel_map(4, 4)
    with pytest.raises(UsageError):
        cft_channel_map(3, 7)
    with pytest.raises(UsageError):
        compare_to_cft(3, 5, "R13")
