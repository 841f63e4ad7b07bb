"""Exchange matrices of sigma blocks, braid words and gate search.

Block bases
-----------
4 points: (I, eps), the channel of the pair (12).
5 points: (I, eps), (eps, I), (eps, eps), the channels of (12) and (34).
6 points: the two 4-point blocks followed by the three 5-point blocks; for
k = 2 the last 5-point block vanishes and is dropped.

Matrices act on block vectors, F' = R F.  A braid word is a sequence of
``(name, power)`` pairs and evaluates to the ordered product, first letter
leftmost.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

import numpy as np

from .conformal_blocks import continue_F4, f4_vector
from .errors import DomainError, UsageError

__all__ = [
    "r4",
    "r5",
    "r6",
    "exchange_matrix",
    "d_matrix",
    "phase_distance",
    "frobenius_phase_distance",
    "is_unitary",
    "parse_word",
    "format_word",
    "braid_evaluate",
    "braid_closure",
    "gate_search",
    "gate_search_profile",
    "monodromy_check",
    "MOVES",
]

Word = tuple[tuple[str, int], ...]
MOVES = ("identity", "swap", "loop0", "loop1")
_MOVE_ALIASES = {"swap01": "swap", "x->1-x": "swap", "around0": "loop0", "around1": "loop1"}


def _check_k(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k!r}")


def _phase(t: float) -> complex:
    """exp(i pi t)"""
    return complex(math.cos(math.pi * t), math.sin(math.pi * t))


def _which(which: str) -> str:
    w = str(which).upper()
    if w not in ("R12", "R13", "R23"):
        raise UsageError(f"unknown exchange {which!r}; expected R12, R13 or R23")
    return w


def r4(k: int, which: str) -> np.ndarray:
    _check_k(k)
    w = _which(which)
    if w == "R12":
        return np.diag([_phase(-(k - 1) / (2 * (k + 2))), _phase((k + 1) / (2 * (k + 2)))])
    c = 0.5 / math.cos(math.pi / (k + 2))
    s = math.sqrt(1 - c * c)
    r13 = np.array([[c, s], [s, -c]], dtype=complex)
    if w == "R13":
        return r13
    return r13 @ r4(k, "R12") @ np.linalg.inv(r13)


def _r5_r13(k: int) -> np.ndarray:
    c = 0.5 / math.cos(math.pi / (k + 2))
    s = math.sqrt(1 - c * c)
    t = s / c
    d = 0.0 if k == 2 else max(0.0, 1 - 2 * c * c)  # -cos(2 theta)
    sd = math.sqrt(d)
    om = _phase(3 * (k + 1) / (2 * (k + 2)))
    return np.array(
        [
            [c, c, -sd],
            [c, (d * om - c**3) / s**2, (om + c) * sd / (s * t)],
            [-sd, (om + c) * sd / (s * t), (om * c - d) / (s * t)],
        ],
        dtype=complex,
    )


def r5(k: int, which: str) -> np.ndarray:
    _check_k(k)
    w = _which(which)
    if w == "R12":
        e = _phase(k / (k + 2))
        return _phase(-(k - 1) / (2 * (k + 2))) * np.diag([1, e, e])
    r13 = _r5_r13(k)
    if w == "R13":
        return r13
    # r13 is unitary but not an involution: use the actual inverse
    return r13 @ r5(k, "R12") @ np.linalg.inv(r13)


def r6(k: int, which: str) -> np.ndarray:
    _check_k(k)
    a = r4(k, which)
    b = r5(k, which)
    if k == 2:
        b = b[:2, :2]
    n = 2 + b.shape[0]
    out = np.zeros((n, n), dtype=complex)
    out[:2, :2] = a
    out[2:, 2:] = b
    return out


def exchange_matrix(k: int, arity: int, which: str) -> np.ndarray:
    try:
        fn = {4: r4, 5: r5, 6: r6}[int(arity)]
    except (KeyError, ValueError):
        raise UsageError(f"arity must be 4, 5 or 6, got {arity!r}") from None
    return fn(k, which)


def d_matrix(k: int, *, as_printed: bool = False) -> np.ndarray:
    """Basis change (K2, K3) = D (K2', K3') for the mixed four-point functions.

    The lower-right entry is +sin(pi/(k+2))/sin(3pi/(k+2)); ``as_printed``
    returns the variant with a minus sign there.
    """
    _check_k(k)
    s = [math.sin(n * math.pi / (k + 2)) for n in range(5)]
    d22 = -s[1] / s[3] if as_printed else s[1] / s[3]
    return np.array([[s[2] / s[3], s[4] / s[3]], [-s[1] / s[3], d22]], dtype=complex)


# --- comparisons ----------------------------------------------------------


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    return np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0])) <= tol


def frobenius_phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """min over phi of ||u - exp(i phi) v||_F."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    ov = np.vdot(v, u)
    ph = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.linalg.norm(u - ph * v))


def phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """min over phi of the operator-norm distance ||u - exp(i phi) v|| for unitaries.

    The eigenphases of v^dagger u fit in an arc of length A; the optimum
    phase sits at its midpoint and the distance is 2 sin(A / 4).
    """
    w = np.asarray(v, dtype=complex).conj().T @ np.asarray(u, dtype=complex)
    ph = np.sort(np.angle(np.linalg.eigvals(w)))
    gaps = np.diff(np.concatenate([ph, [ph[0] + 2 * np.pi]]))
    arc = 2 * np.pi - gaps.max()
    return 2 * math.sin(arc / 4)


def _dist2(mats: np.ndarray, target: np.ndarray) -> np.ndarray:
    # 2x2 unitaries: the operator-norm phase distance is the Frobenius one
    # over sqrt(2), with the optimal phase that of tr(T^dagger M)
    tr = np.einsum("ji,nji->n", target.conj(), mats)
    ph = np.where(np.abs(tr) > 0, tr / np.where(tr == 0, 1, np.abs(tr)), 1)
    diff = mats - ph[:, None, None] * target[None]
    return np.sqrt(np.einsum("nij,nij->n", diff.conj(), diff).real / 2)


# --- braid words ------------------------------------------------------------

_TOKEN = re.compile(r"^(R12|R13|R23)(?:\^?(\(?[+-]?\d+\)?))?$", re.IGNORECASE)


def parse_word(text: str | Iterable) -> Word:
    """Parse "R12 R23^-1 R12" (or an iterable of pairs) into a word."""
    if not isinstance(text, str):
        out = []
        for name, power in text:
            out.append((_which(name), int(power)))
        return tuple(out)
    out = []
    for tok in re.split(r"[\s,]+", text.strip()):
        if not tok:
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise UsageError(f"cannot parse braid letter {tok!r}")
        power = int(m.group(2).strip("()")) if m.group(2) else 1
        out.append((m.group(1).upper(), power))
    return tuple(out)


def format_word(word: Word) -> str:
    return " ".join(name if p == 1 else f"{name}^{p}" for name, p in word)


def _generator(k: int, arity: int, name: str, power: int) -> np.ndarray:
    m = exchange_matrix(k, arity, name)
    if power < 0:
        m = np.linalg.inv(m)
    return np.linalg.matrix_power(m, abs(power))


def braid_evaluate(k: int, arity: int, word) -> np.ndarray:
    word = parse_word(word)
    n = exchange_matrix(k, arity, "R12").shape[0]
    out = np.eye(n, dtype=complex)
    for name, power in word:
        out = out @ _generator(k, arity, name, power)
    return out


def _keys(mats: np.ndarray, grid: float) -> list[bytes]:
    if len(mats) == 0:
        return []
    flat = mats.reshape(len(mats), -1)
    idx = np.argmax(np.abs(flat) > 1e-3, axis=1)
    ph = flat[np.arange(len(flat)), idx]
    ph = ph / np.abs(ph)
    norm = flat / ph[:, None]
    q = np.round(np.concatenate([norm.real, norm.imag], axis=1) / grid).astype(np.int64)
    q[q == 0] = 0
    return [row.tobytes() for row in q]


def _letters(k: int, arity: int, allow_r13: bool):
    names = [("R12", 1), ("R12", -1), ("R23", 1), ("R23", -1)]
    if allow_r13:
        names.append(("R13", 1))
    return names, np.array([_generator(k, arity, n, p) for n, p in names])


def braid_closure(k: int, arity: int = 4, max_size: int = 10**4, grid: float = 1e-6, allow_r13: bool = False):
    """Breadth-first closure of the braid image modulo global phase.

    Returns (elements, saturated): phase-normalized representatives and
    whether the enumeration closed before reaching ``max_size``.
    """
    names, gens = _letters(k, arity, allow_r13)
    n = gens.shape[1]
    start = np.eye(n, dtype=complex)[None]
    seen = {_keys(start, grid)[0]}
    elements = [start[0]]
    frontier = start
    while len(frontier):
        cand = np.einsum("nij,gjk->ngik", frontier, gens).reshape(-1, n, n)
        new = []
        for key, m in zip(_keys(cand, grid), cand):
            if key not in seen:
                seen.add(key)
                new.append(m)
                if len(seen) > max_size:
                    return elements + new, False
        elements.extend(new)
        frontier = np.array(new) if new else np.empty((0, n, n))
    return elements, True


def gate_search_profile(
    k: int, target, max_length: int, *, allow_r13: bool = False, grid: float = 1e-6
) -> list[tuple[Word, float]]:
    """Best (word, distance) using words of length <= L, for L = 0..max_length.

    Plain breadth-first enumeration of the 2x2 braid image, deduplicated
    modulo global phase.  Ties go to the shorter, then lexicographically
    smaller word, in the letter order R12, R12^-1, R23, R23^-1 (, R13).
    """
    target = np.asarray(target, dtype=complex)
    if target.shape != (2, 2):
        raise UsageError("gate search targets are 2x2 unitaries")
    names, gens = _letters(k, 4, allow_r13)
    start = np.eye(2, dtype=complex)[None]
    seen = set(_keys(start, grid))
    frontier, words = start, [()]
    best_word: Word = ()
    best = float(_dist2(start, target)[0])
    profile = [(best_word, best)]
    for _ in range(max_length):
        cand = np.einsum("nij,gjk->ngik", frontier, gens).reshape(-1, 2, 2)
        cwords = [w + (names[g],) for w in words for g in range(len(names))]
        keep, kwords = [], []
        for key, m, w in zip(_keys(cand, grid), cand, cwords):
            if key not in seen:
                seen.add(key)
                keep.append(m)
                kwords.append(w)
        if keep:
            frontier = np.array(keep)
            words = kwords
            d = _dist2(frontier, target)
            i = int(np.flatnonzero(d <= d.min() + 1e-12)[0])
            if d[i] < best - 1e-12:
                best, best_word = float(d[i]), words[i]
        else:
            frontier, words = np.empty((0, 2, 2)), []
        profile.append((best_word, best))
    return profile


def gate_search(k: int, target, max_length: int, *, allow_r13: bool = False) -> tuple[Word, float]:
    return gate_search_profile(k, target, max_length, allow_r13=allow_r13)[-1]


# --- numerical monodromy ----------------------------------------------------


def _loop(center: complex, x: complex, n: int) -> list[complex]:
    r = x - center
    return [center + r * np.exp(2j * np.pi * j / n) for j in range(n + 1)]


def monodromy_check(k: int, move: str, samples: Sequence[float] | None = None, n_points: int = 64) -> float:
    """Largest relative mismatch between continued blocks and the predicted matrix.

    ``swap`` continues along the real segment from x to 1-x and compares with
    R13; ``loop0`` / ``loop1`` run counter-clockwise circles around 0 / 1
    through x and compare with R12^2 / R23^2.
    """
    _check_k(k)
    move = _MOVE_ALIASES.get(move, move)
    if move not in MOVES:
        raise UsageError(f"unknown move {move!r}; expected one of {MOVES}")
    if samples is None:
        samples = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]
    worst = 0.0
    for x in samples:
        x = float(x)
        if not 1e-3 <= x <= 1 - 1e-3:
            raise DomainError("samples must lie in (0,1), at least 1e-3 from the endpoints")
        before = f4_vector(k, x)
        if move == "identity":
            after, mat = continue_F4(k, [x]), np.eye(2)
        elif move == "swap":
            after, mat = continue_F4(k, [x, 1 - x]), r4(k, "R13")
        elif move == "loop0":
            after, mat = continue_F4(k, _loop(0, x, n_points)), np.linalg.matrix_power(r4(k, "R12"), 2)
        else:
            after, mat = continue_F4(k, _loop(1, x, n_points)), np.linalg.matrix_power(r4(k, "R23"), 2)
        dev = np.linalg.norm(after - mat @ before) / np.linalg.norm(before)
        worst = max(worst, float(dev))
    return worst
