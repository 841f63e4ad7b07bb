"""Multiplicity-free anyon theories and braid representations on fusion trees.

F-symbol convention: a left-associated tree ((a b)_e c)_d expands as
sum_f F^{abc}_d[e, f] (a (b c)_f)_d.  R^{ab}_c is the phase picked up when
strands a, b fusing to c are exchanged counter-clockwise.

Trees come in two shapes.  ``comb`` trees fuse the leaves one at a time:
the internal labels are x_2, ..., x_{n-1}, with x_i the charge of the first i
leaves.  ``paired`` trees (even n) first fuse the leaves in consecutive pairs
(12), (34), ... into p_1, ..., p_m and then comb the pairs: internal labels
are (p_1, ..., p_m, y_2, ..., y_{m-1}).  Braid matrices are computed in the
comb basis and transported to the paired one.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .errors import UsageError

__all__ = [
    "AnyonTheory",
    "FusionTree",
    "fibonacci_theory",
    "ising_theory",
    "deligne_product",
    "tricritical_ising_theory",
    "pentagon_residual",
    "hexagon_residual",
    "ribbon_residual",
    "basis_trees",
    "basis_change",
    "braid_generator_rep",
    "compare_to_cft",
    "cft_channel_map",
]

Label = Hashable


@dataclass(frozen=True)
class AnyonTheory:
    name: str
    labels: tuple
    fusion: dict  # (a, b) -> tuple of outcomes in label order
    F: dict  # (a, b, c, d, e, f) -> complex, admissible tuples only
    R: dict  # (a, b, c) -> complex
    twists: dict
    dims: dict
    vacuum: Label = field(default=None)

    def fuse(self, a, b) -> tuple:
        return self.fusion[(a, b)]

    def admissible(self, a, b, c) -> bool:
        return c in self.fusion[(a, b)]

    def order(self, a) -> int:
        return self.labels.index(a)

    def f_symbol(self, a, b, c, d, e, f) -> complex:
        return self.F.get((a, b, c, d, e, f), 0j)

    def r_symbol(self, a, b, c) -> complex:
        return self.R.get((a, b, c), 0j)

    def f_matrix(self, a, b, c, d):
        """(rows e, cols f, matrix) of F^{abc}_d."""
        es = [e for e in self.fuse(a, b) if self.admissible(e, c, d)]
        fs = [f for f in self.fuse(b, c) if self.admissible(a, f, d)]
        m = np.array([[self.f_symbol(a, b, c, d, e, f) for f in fs] for e in es], dtype=complex)
        return es, fs, m

    def f_inverse(self, a, b, c, d, f, e) -> complex:
        """Entry [f, e] of the inverse of F^{abc}_d."""
        es, fs, m = self.f_matrix(a, b, c, d)
        if f not in fs or e not in es:
            return 0j
        return np.linalg.inv(m)[fs.index(f), es.index(e)]


def _sorted_outcomes(labels, outs):
    return tuple(sorted(set(outs), key=labels.index))


def _make_theory(name, labels, fusion_rule, special_f, R, twists, dims, vacuum):
    fusion = {(a, b): _sorted_outcomes(labels, fusion_rule(a, b)) for a in labels for b in labels}
    F = {}
    for a, b, c, d in itertools.product(labels, repeat=4):
        for e in fusion[(a, b)]:
            if d not in fusion[(e, c)]:
                continue
            for f in fusion[(b, c)]:
                if d not in fusion[(a, f)]:
                    continue
                F[(a, b, c, d, e, f)] = complex(special_f.get((a, b, c, d, e, f), 1.0))
    return AnyonTheory(name, tuple(labels), fusion, F, dict(R), dict(twists), dict(dims), vacuum)


def _conjugated(th: AnyonTheory, name: str) -> AnyonTheory:
    return AnyonTheory(
        name,
        th.labels,
        th.fusion,
        {k: v.conjugate() for k, v in th.F.items()},
        {k: v.conjugate() for k, v in th.R.items()},
        {k: v.conjugate() for k, v in th.twists.items()},
        th.dims,
        th.vacuum,
    )


def fibonacci_theory(conjugate: bool = False) -> AnyonTheory:
    """Fibonacci anyons {1, tau} with R^{tt}_1 = e^{-4 pi i/5}, R^{tt}_t = e^{3 pi i/5}.

    ``conjugate=True`` gives the mirror theory with all phases conjugated.
    """
    g = (1 + math.sqrt(5)) / 2
    one, t = "1", "tau"

    def rule(a, b):
        if a == one:
            return [b]
        if b == one:
            return [a]
        return [one, t]

    fm = {(t, t, t, t, one, one): 1 / g, (t, t, t, t, one, t): g**-0.5, (t, t, t, t, t, one): g**-0.5, (t, t, t, t, t, t): -1 / g}
    R = {
        (one, one, one): 1,
        (one, t, t): 1,
        (t, one, t): 1,
        (t, t, one): cmath.exp(-4j * math.pi / 5),
        (t, t, t): cmath.exp(3j * math.pi / 5),
    }
    tw = {one: 1 + 0j, t: cmath.exp(4j * math.pi / 5)}
    th = _make_theory("fibonacci", (one, t), rule, fm, R, tw, {one: 1.0, t: g}, one)
    return _conjugated(th, "fibonacci-bar") if conjugate else th


def ising_theory() -> AnyonTheory:
    one, s, p = "1", "sigma", "psi"

    def rule(a, b):
        if a == one:
            return [b]
        if b == one:
            return [a]
        if a == s and b == s:
            return [one, p]
        if a == p and b == p:
            return [one]
        return [s]

    h = 1 / math.sqrt(2)
    fm = {
        (s, s, s, s, one, one): h,
        (s, s, s, s, one, p): h,
        (s, s, s, s, p, one): h,
        (s, s, s, s, p, p): -h,
        (s, p, s, p, s, s): -1,
        (p, s, p, s, s, s): -1,
    }
    R = {
        (one, one, one): 1,
        (one, s, s): 1,
        (s, one, s): 1,
        (one, p, p): 1,
        (p, one, p): 1,
        (s, s, one): cmath.exp(-1j * math.pi / 8),
        (s, s, p): cmath.exp(3j * math.pi / 8),
        (s, p, s): -1j,
        (p, s, s): -1j,
        (p, p, one): -1,
    }
    tw = {one: 1 + 0j, s: cmath.exp(1j * math.pi / 8), p: -1 + 0j}
    return _make_theory("ising", (one, s, p), rule, fm, R, tw, {one: 1.0, s: math.sqrt(2), p: 1.0}, one)


def deligne_product(A: AnyonTheory, B: AnyonTheory, name: str | None = None) -> AnyonTheory:
    """Product theory with labels (a, b); all data multiply factorwise."""
    labels = tuple(itertools.product(A.labels, B.labels))
    fusion = {}
    for (a1, b1), (a2, b2) in itertools.product(labels, repeat=2):
        outs = [(x, y) for x in A.fuse(a1, a2) for y in B.fuse(b1, b2)]
        fusion[((a1, b1), (a2, b2))] = _sorted_outcomes(labels, outs)
    F = {}
    for ka, va in A.F.items():
        for kb, vb in B.F.items():
            F[tuple(zip(ka, kb))] = va * vb
    R = {tuple(zip(ka, kb)): va * vb for ka, va in A.R.items() for kb, vb in B.R.items()}
    tw = {(a, b): A.twists[a] * B.twists[b] for a, b in labels}
    dims = {(a, b): A.dims[a] * B.dims[b] for a, b in labels}
    return AnyonTheory(name or f"{A.name}x{B.name}", labels, fusion, F, R, tw, dims, (A.vacuum, B.vacuum))


def tricritical_ising_theory() -> AnyonTheory:
    """Ising times conjugate Fibonacci; sigma of the k=3 model is (psi, tau)."""
    return deligne_product(ising_theory(), fibonacci_theory(conjugate=True), "tricritical-ising")


# --- consistency -----------------------------------------------------------


def pentagon_residual(th: AnyonTheory) -> float:
    worst = 0.0
    L = th.labels
    for a, b, c, d in itertools.product(L, repeat=4):
        for f in th.fuse(a, b):
            for g in th.fuse(f, c):
                for e in th.fuse(g, d):
                    for l in th.fuse(c, d):
                        if not th.admissible(f, l, e):
                            continue
                        for k in th.fuse(b, l):
                            if not th.admissible(a, k, e):
                                continue
                            lhs = th.f_symbol(f, c, d, e, g, l) * th.f_symbol(a, b, l, e, f, k)
                            rhs = 0j
                            for h in th.fuse(b, c):
                                rhs += (
                                    th.f_symbol(a, b, c, g, f, h)
                                    * th.f_symbol(a, h, d, e, g, k)
                                    * th.f_symbol(b, c, d, k, h, l)
                                )
                            worst = max(worst, abs(lhs - rhs))
    return worst


def hexagon_residual(th: AnyonTheory) -> float:
    """Both hexagons, R and R^{-1}, over all admissible tuples."""
    worst = 0.0
    L = th.labels
    for inverse in (False, True):

        def r(x, y, z):
            v = th.r_symbol(x, y, z)
            return (1 / v if v else 0j) if inverse else v

        for a, b, c, d in itertools.product(L, repeat=4):
            for e in th.fuse(c, a):
                if not th.admissible(e, b, d):
                    continue
                for g in th.fuse(c, b):
                    if not th.admissible(a, g, d):
                        continue
                    lhs = r(c, a, e) * th.f_symbol(a, c, b, d, e, g) * r(c, b, g)
                    rhs = 0j
                    for f in th.fuse(a, b):
                        rhs += th.f_symbol(c, a, b, d, e, f) * r(c, f, d) * th.f_symbol(a, b, c, d, f, g)
                    worst = max(worst, abs(lhs - rhs))
    return worst


def ribbon_residual(th: AnyonTheory) -> float:
    """max |R^{ab}_c R^{ba}_c - theta_c / (theta_a theta_b)|."""
    worst = 0.0
    for a, b in itertools.product(th.labels, repeat=2):
        for c in th.fuse(a, b):
            lhs = th.r_symbol(a, b, c) * th.r_symbol(b, a, c)
            worst = max(worst, abs(lhs - th.twists[c] / (th.twists[a] * th.twists[b])))
    return worst


# --- fusion trees ---------------------------------------------------------------


@dataclass(frozen=True)
class FusionTree:
    leaves: tuple
    internal: tuple
    total: Label
    shape: str = "comb"

    def comb_path(self) -> tuple:
        """(x_1, ..., x_n) for comb trees: running charges including leaf 1 and total."""
        if self.shape != "comb":
            raise UsageError("comb_path is defined for comb trees only")
        return (self.leaves[0],) + tuple(self.internal) + (self.total,)


def _comb_trees(th, leaves, total):
    n = len(leaves)
    paths = [(leaves[0],)]
    for i in range(1, n):
        paths = [p + (x,) for p in paths for x in th.fuse(p[-1], leaves[i])]
    out = [p for p in paths if p[-1] == total]
    return [FusionTree(tuple(leaves), p[1:-1], total, "comb") for p in out]


def _paired_trees(th, leaves, total):
    n = len(leaves)
    if n % 2:
        raise UsageError("paired trees need an even number of leaves")
    m = n // 2
    pair_opts = [th.fuse(leaves[2 * j], leaves[2 * j + 1]) for j in range(m)]
    out = []
    for ps in itertools.product(*pair_opts):
        combs = [(ps[0],)]
        for j in range(1, m):
            combs = [c + (y,) for c in combs for y in th.fuse(c[-1], ps[j])]
        for c in combs:
            if c[-1] == total:
                out.append(FusionTree(tuple(leaves), tuple(ps) + c[1:-1], total, "paired"))
    return out


def basis_trees(th: AnyonTheory, n_leaves: int, leaf, total, shape: str = "comb") -> list[FusionTree]:
    """All admissible trees, ordered lexicographically by internal labels."""
    if n_leaves < 2:
        raise UsageError("need at least two leaves")
    leaves = (leaf,) * n_leaves
    if shape == "comb":
        trees = _comb_trees(th, leaves, total)
    elif shape == "paired":
        trees = _paired_trees(th, leaves, total)
    else:
        raise UsageError(f"unknown tree shape {shape!r}")
    return sorted(trees, key=lambda t: tuple(th.order(x) for x in t.internal))


def basis_change(th: AnyonTheory, n_leaves: int, leaf, total) -> np.ndarray:
    """Matrix C with paired_j = sum_i C[i, j] comb_i (unitary)."""
    comb = basis_trees(th, n_leaves, leaf, total, "comb")
    paired = basis_trees(th, n_leaves, leaf, total, "paired")
    index = {t.internal: i for i, t in enumerate(comb)}
    m = n_leaves // 2
    C = np.zeros((len(comb), len(paired)), dtype=complex)
    for j, t in enumerate(paired):
        ps = t.internal[:m]
        ys = (ps[0],) + t.internal[m:] + (total,)
        # flatten pair p_j = (leaf leaf) hanging off y_{j-1}, left to right
        choices = [
            [(e, th.f_inverse(ys[i - 1], leaf, leaf, ys[i], ps[i], e)) for e in th.fuse(ys[i - 1], leaf)]
            for i in range(1, m)
        ]
        for combo in itertools.product(*choices):
            amp = 1 + 0j
            xs = [ps[0]]
            for i, (e, c) in enumerate(combo, start=1):
                amp *= c
                xs += [e, ys[i]]
            if amp == 0:
                continue
            key = tuple(xs[:-1])  # drop the total
            if key in index:
                C[index[key], j] += amp
    return C


def _comb_generator(th, trees, i):
    """sigma_i in the comb basis; strands i, i+1 (1-based)."""
    index = {t.internal: r for r, t in enumerate(trees)}
    dim = len(trees)
    M = np.zeros((dim, dim), dtype=complex)
    for col, t in enumerate(trees):
        x = t.comb_path()
        lv = t.leaves
        if i == 1:
            M[col, col] = th.r_symbol(lv[0], lv[1], x[1])
            continue
        left, mid, right = x[i - 2], x[i - 1], x[i]
        a, b = lv[i - 1], lv[i]
        for f in th.fuse(a, b):
            c1 = th.f_symbol(left, a, b, right, mid, f)
            if c1 == 0:
                continue
            c2 = th.r_symbol(a, b, f)
            for new in th.fuse(left, b):
                c3 = th.f_inverse(left, b, a, right, f, new)
                if c3 == 0:
                    continue
                key = list(x)
                key[i - 1] = new
                row = index.get(tuple(key[1:-1]))
                if row is not None:
                    M[row, col] += c1 * c2 * c3
    return M


def braid_generator_rep(th: AnyonTheory, n_leaves: int, leaf, total, i: int, shape: str | None = None) -> np.ndarray:
    """Matrix of the braid generator sigma_i on the fusion space.

    Columns are images of basis trees.  ``shape`` defaults to ``paired`` for
    an even number of leaves (the basis in which pairs of sigma fields carry
    a definite channel) and ``comb`` otherwise.
    """
    if not 1 <= i <= n_leaves - 1:
        raise UsageError(f"generator index must be in 1..{n_leaves - 1}")
    if shape is None:
        shape = "paired" if n_leaves % 2 == 0 else "comb"
    comb = basis_trees(th, n_leaves, leaf, total, "comb")
    if not comb:
        return np.zeros((0, 0), dtype=complex)
    M = _comb_generator(th, comb, i)
    if shape == "comb":
        return M
    C = basis_change(th, n_leaves, leaf, total)
    return C.conj().T @ M @ C


# --- dictionary to the sigma blocks ------------------------------------------------


def cft_channel_map(k: int, arity: int, theory: AnyonTheory | None = None):
    """(theory, leaf, total, channels) matching the sigma block basis.

    ``channels[mu]`` is the paired-tree pair-label tuple of block mu.
    """
    if theory is None:
        if k == 2:
            theory = ising_theory()
        elif k == 3:
            theory = fibonacci_theory(conjugate=True)
        else:
            raise UsageError("anyon dictionaries exist for k = 2 and k = 3")
    if theory.name.startswith("ising"):
        leaf, one, eps = "sigma", "1", "psi"
    elif theory.name.startswith("fibonacci"):
        leaf, one, eps = "tau", "1", "tau"
    elif theory.name == "tricritical-ising":
        leaf, one, eps = ("psi", "tau"), ("1", "1"), ("1", "tau")
    else:
        raise UsageError(f"no block dictionary for theory {theory.name!r}")
    if arity == 4:
        return theory, leaf, one, [(one, one), (eps, eps)], 4
    if arity == 5:
        chans = [(one, eps), (eps, one), (eps, eps)]
        if k == 2:
            chans = chans[:2]
        return theory, leaf, eps, chans, 4
    if arity == 6:
        chans = [(one, one, one), (eps, eps, one), (one, eps, eps), (eps, one, eps), (eps, eps, eps)]
        if k == 2:
            chans = chans[:4]
        return theory, leaf, one, chans, 6
    raise UsageError("arity must be 4, 5 or 6")


def _reorder(th, n, leaf, total, chans):
    trees = basis_trees(th, n, leaf, total, "paired")
    m = n // 2
    pos = {t.internal[:m]: j for j, t in enumerate(trees)}
    idx = [pos[c] for c in chans]
    if len(idx) != len(trees):
        raise AssertionError("channel dictionary does not cover the tree basis")
    return idx


def compare_to_cft(k: int, arity: int, which: str, theory: AnyonTheory | None = None) -> float:
    """Phase-quotient Frobenius distance between a block exchange matrix and its anyon image.

    R12 and R23 map to sigma_1 and sigma_2; R13 at four points maps to the
    F-move F^{xxx}_x on the leaf label.  ``identity`` compares identities.
    """
    from .exchange_matrices import exchange_matrix, frobenius_phase_distance

    th, leaf, total, chans, n = cft_channel_map(k, arity, theory)
    w = str(which).upper()
    if w in ("", "IDENTITY", "I"):
        d = len(chans)
        return frobenius_phase_distance(np.eye(d), np.eye(d))
    cft = exchange_matrix(k, arity, w)[: len(chans), : len(chans)]
    idx = _reorder(th, n, leaf, total, chans)
    if w == "R12":
        anyon = braid_generator_rep(th, n, leaf, total, 1, "paired")
    elif w == "R23":
        anyon = braid_generator_rep(th, n, leaf, total, 2, "paired")
    elif w == "R13":
        if arity != 4:
            raise UsageError("R13 has an anyon counterpart only at four points")
        es, fs, F = th.f_matrix(leaf, leaf, leaf, leaf)
        one, eps = chans[0][0], chans[1][0]
        anyon = F[np.ix_([es.index(one), es.index(eps)], [fs.index(one), fs.index(eps)])]
        idx = [0, 1]
    else:
        raise UsageError(f"unknown exchange {which!r}")
    anyon = anyon[np.ix_(idx, idx)]
    return frobenius_phase_distance(cft, anyon)
