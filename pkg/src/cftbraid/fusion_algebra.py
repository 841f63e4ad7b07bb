"""Labels, conformal dimensions and fusion rules.

Minimal-model primaries of M(k+2, k+1) are Kac labels (r, s) with
1 <= r <= k and 1 <= s <= k+1.  Labels are kept unidentified: (r, s) and its
conjugate (k+1-r, k+2-s) are distinct tuples with equal dimension.  SU(2)_q
anyons are integers j = 0..q (twice the spin).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import DomainError

__all__ = [
    "IDENTITY",
    "SIGMA",
    "EPSILON",
    "check_minimal",
    "conjugate",
    "conformal_dimension",
    "charge",
    "background_charge",
    "fuse_minimal",
    "fuse_su2",
    "twist_su2",
    "twist_minimal",
    "count_blocks",
    "fusion_paths",
    "coset_label",
    "coset_fuse",
    "coset_twist_check",
]

Label = tuple[int, int]

IDENTITY: Label = (1, 1)
SIGMA: Label = (1, 2)
EPSILON: Label = (1, 3)


def check_minimal(k: int, label: Label) -> Label:
    if not isinstance(k, int) or k < 2:
        raise DomainError(f"model index k must be an integer >= 2, got {k!r}")
    try:
        r, s = (int(v) for v in label)
    except (TypeError, ValueError):
        raise DomainError(f"bad label {label!r}") from None
    if not (1 <= r <= k and 1 <= s <= k + 1):
        raise DomainError(f"label {(r, s)} outside 1<=r<={k}, 1<=s<={k + 1}")
    return (r, s)


def _check_su2(q: int, j: int) -> int:
    if not isinstance(q, int) or q < 1:
        raise DomainError(f"level must be an integer >= 1, got {q!r}")
    if not isinstance(j, int) or not 0 <= j <= q:
        raise DomainError(f"SU(2)_{q} label must lie in 0..{q}, got {j!r}")
    return j


def conjugate(k: int, label: Label) -> Label:
    r, s = check_minimal(k, label)
    return (k + 1 - r, k + 2 - s)


def conformal_dimension(k: int, label: Label) -> Fraction:
    """h(r,s) = ([r(k+2) - s(k+1)]^2 - 1) / (4(k+1)(k+2)), exact."""
    r, s = check_minimal(k, label)
    return Fraction((r * (k + 2) - s * (k + 1)) ** 2 - 1, 4 * (k + 1) * (k + 2))


def background_charge(k: int) -> float:
    return 1.0 / (2.0 * math.sqrt((k + 1) * (k + 2)))


def charge(k: int, label: Label) -> float:
    r, s = check_minimal(k, label)
    return ((1 - r) * (k + 2) - (1 - s) * (k + 1)) / (2.0 * math.sqrt((k + 1) * (k + 2)))


def _as_set(terms: Iterable) -> frozenset:
    terms = list(terms)
    out = frozenset(terms)
    if len(out) != len(terms):
        # these models are multiplicity free; anything else is a bug here
        raise AssertionError(f"fusion multiplicity exceeded 1: {terms}")
    return out


def fuse_minimal(k: int, a: Label, b: Label) -> frozenset:
    try:
        a, b = tuple(a), tuple(b)
    except TypeError:
        raise DomainError(f"Kac labels are (r, s) pairs, got {a!r} and {b!r}") from None
    return _fuse_minimal(k, a, b)


@lru_cache(maxsize=4096)
def _fuse_minimal(k: int, a: Label, b: Label) -> frozenset:
    r1, s1 = check_minimal(k, a)
    r2, s2 = check_minimal(k, b)
    rs = range(abs(r1 - r2) + 1, min(r1 + r2 - 1, 2 * k + 1 - r1 - r2) + 1, 2)
    ss = range(abs(s1 - s2) + 1, min(s1 + s2 - 1, 2 * k + 3 - s1 - s2) + 1, 2)
    return _as_set((r, s) for r in rs for s in ss)


def fuse_su2(q: int, j1: int, j2: int) -> frozenset:
    _check_su2(q, j1)
    _check_su2(q, j2)
    return _as_set(range(abs(j1 - j2), min(j1 + j2, 2 * q - j1 - j2) + 1, 2))


def twist_su2(q: int, j: int) -> complex:
    _check_su2(q, j)
    return cmath.exp(1j * math.pi * j * (j + 2) / (2 * (q + 2)))


def twist_minimal(k: int, label: Label) -> complex:
    h = conformal_dimension(k, label)
    return cmath.exp(2j * math.pi * float(h))


def fusion_paths(k: int, n_sigma: int, leaf: Label = SIGMA, total: Label = IDENTITY) -> dict:
    """Distribution of left-combed partial fusions after each leaf.

    Returns {label: number of paths} after fusing all ``n_sigma`` leaves,
    starting from the first leaf.
    """
    leaf = check_minimal(k, leaf)
    counts = {leaf: 1}
    for _ in range(n_sigma - 1):
        nxt: dict = {}
        for lab, c in counts.items():
            for out in fuse_minimal(k, lab, leaf):
                nxt[out] = nxt.get(out, 0) + c
        counts = nxt
    return counts


def count_blocks(k: int, n_sigma: int) -> int:
    """Number of conformal blocks of n_sigma copies of sigma=(1,2) fusing to (1,1)."""
    if n_sigma < 2 or n_sigma % 2:
        raise DomainError("n_sigma must be an even integer >= 2")
    return fusion_paths(k, n_sigma).get(IDENTITY, 0)


# --- coset identification ------------------------------------------------


def coset_label(r: int, t: int) -> tuple[int, int, int]:
    """Triple (r, s, t) of SU(2)_{k-1} x SU(2)_1 x SU(2)_k labels with r+s+t even."""
    return (r, (r + t) % 2, t)


def coset_fuse(k: int, a: tuple[int, int], b: tuple[int, int]) -> frozenset:
    """Fuse identified coset labels (r, t), (m, p) factorwise.

    Returns Kac labels (j+1, l+1) of the resulting triples; the level-1
    factor is fixed by parity and checked for consistency.
    """
    r, t = a
    m, p = b
    _, s, _ = coset_label(r, t)
    _, n, _ = coset_label(m, p)
    out = []
    (s2,) = fuse_su2(1, s, n)
    for j in fuse_su2(k - 1, r, m):
        for l in fuse_su2(k, t, p):
            if (j + s2 + l) % 2:
                raise AssertionError("parity of coset label broken by fusion")
            out.append((j + 1, l + 1))
    return _as_set(out)


def coset_twist_check(k: int, r: int, t: int, tol: float = 1e-12) -> bool:
    """Compare the coset twist of the identified triple with exp(2 pi i h)."""
    if not 0 <= r <= k - 1 or not 0 <= t <= k:
        raise DomainError(f"need 0<=r<={k - 1} and 0<=t<={k}")
    _, s, _ = coset_label(r, t)
    lhs = twist_su2(k - 1, r) * twist_su2(1, s) * twist_su2(k, t).conjugate()
    rhs = twist_minimal(k, (r + 1, t + 1))
    return abs(lhs - rhs) <= tol


@lru_cache(maxsize=None)
def _labels(k: int) -> tuple[Label, ...]:
    return tuple((r, s) for r in range(1, k + 1) for s in range(1, k + 2))


def labels(k: int) -> tuple[Label, ...]:
    """All Kac labels of M(k+2, k+1), unidentified, in lexicographic order."""
    check_minimal(k, IDENTITY)
    return _labels(k)


__all__.append("labels")
