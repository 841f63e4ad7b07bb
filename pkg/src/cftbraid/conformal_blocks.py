"""Closed-form conformal blocks and correlator functions.

All four-point objects live in the fixed frame eta -> (0, x, 1, inf).  Power
factors x^a (1-x)^b use the principal branch, shifted by the integer
windings carried in ``winding = (n0, n1)``.  The hypergeometric factor itself
is always the principal-sheet value; genuine analytic continuation along a
path is available through :func:`continue_F4`.

Normalizations follow the convention that the undetermined overall constant
is 1, so only ratios between blocks carry meaning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, PoleError, UsageError
from .special_functions import continue_hyp2f1, gamma, hyp2f1, power_branch

__all__ = [
    "BlockEvaluation",
    "norms_4pt",
    "norms_5pt",
    "F4_PARAMETERS",
    "eval_F4",
    "f4_vector",
    "continue_F4",
    "PATTERNS",
    "eval_X",
    "eval_Y",
    "eval_coset_F4",
    "coset_constant",
    "eval_F4_eps",
    "eval_K",
]

PATTERNS = ("+--+", "--++", "-+-+")


@dataclass(frozen=True)
class BlockEvaluation:
    mu: int
    x: complex
    value: complex
    winding: tuple[int, int] = (0, 0)

    def __complex__(self) -> complex:
        return complex(self.value)


def _check_k(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k!r}")


def _check_x(x) -> complex:
    x = complex(x)
    if x == 0 or x == 1:
        raise PoleError(f"block evaluated at the singular point x={x}")
    return x


def _mu(mu: int) -> int:
    if mu not in (1, 2):
        raise UsageError(f"block index must be 1 or 2, got {mu!r}")
    return mu


def _pattern(pattern: str) -> str:
    p = str(pattern).replace("−", "-")
    if p not in PATTERNS:
        raise UsageError(f"pattern must be one of {PATTERNS}, got {pattern!r}")
    return p


def norms_4pt(k: int) -> tuple[float, float]:
    _check_k(k)
    p = math.pi / (k + 2)
    return (math.sin(p), math.sin(3 * p))


def norms_5pt(k: int) -> tuple[float, float, float]:
    _check_k(k)
    p = math.pi / (k + 2)
    n3 = 8 * math.cos(p) ** 2 * math.cos(2 * p) * math.sin(3 * p) ** 2
    if k == 2:
        n3 = 0.0  # cos(pi/2) vanishes exactly
    return (math.sin(2 * p) ** 2, math.sin(3 * p) ** 2, n3)


def F4_PARAMETERS(k: int, mu: int) -> dict:
    """Prefactor, exponents and 2F1 parameters of the four-point block mu."""
    _check_k(k)
    p = 1.0 / (k + 2)
    if _mu(mu) == 1:
        return dict(
            const=(gamma(p) ** 2 / gamma(2 * p)).real,
            alpha=(1 - k) * p / 2,
            beta=(k + 1) * p / 2,
            abc=((k + 1) * p, p, 2 * p),
        )
    return dict(
        const=(gamma(p) * gamma((2 * k + 1) * p) / gamma((2 * k + 2) * p)).real,
        alpha=(k + 1) * p / 2,
        beta=(k + 1) * p / 2,
        abc=((k + 1) * p, (2 * k + 1) * p, (2 * k + 2) * p),
    )


def eval_F4(k: int, mu: int, x, winding=(0, 0), *, normalized: bool = True, method: str = "auto") -> BlockEvaluation:
    """Four-point sigma block F_mu(x) including the sqrt(N_mu) weight."""
    x = _check_x(x)
    par = F4_PARAMETERS(k, mu)
    n0, n1 = winding
    val = par["const"] * power_branch(x, par["alpha"], n0) * power_branch(1 - x, par["beta"], n1)
    val *= hyp2f1(*par["abc"], x, method=method)
    if normalized:
        val *= math.sqrt(norms_4pt(k)[mu - 1])
    return BlockEvaluation(mu, x, val, (int(n0), int(n1)))


def f4_vector(k: int, x, winding=(0, 0), **kw) -> np.ndarray:
    return np.array([eval_F4(k, mu, x, winding, **kw).value for mu in (1, 2)])


def continue_F4(k: int, path: Sequence[complex], *, normalized: bool = True) -> np.ndarray:
    """Continue (F_1, F_2) from the principal value at path[0] along a polyline."""
    x0 = _check_x(path[0])
    out = []
    for mu in (1, 2):
        par = F4_PARAMETERS(k, mu)
        cont = continue_hyp2f1(*par["abc"], path)
        pre = par["const"] * power_branch(x0, par["alpha"]) * power_branch(1 - x0, par["beta"])
        pre *= np.exp(par["alpha"] * cont.dlog_x + par["beta"] * cont.dlog_1mx)
        val = pre * cont.value
        if normalized:
            val *= math.sqrt(norms_4pt(k)[mu - 1])
        out.append(val)
    return np.array(out)


# --- SU(2)_q four-point functions of spin-1/2 fields ---------------------


def _x_terms(q: float, mu: int, pattern: str):
    """(constant, alpha, beta, (a, b, c)) for X_{mu, pattern} at level q."""
    if q + 2 == 0:
        raise PoleError("level q = -2 is singular")
    p = 1.0 / (q + 2)
    if mu == 1:
        g = gamma(-p) * gamma((q + 1) * p) / gamma(q * p)
        if pattern == "+--+":
            return -g, -3 * p / 2, p / 2, (-p, p, q * p)
        if pattern == "--++":
            return -g / q, (2 * q + 1) * p / 2, p / 2, ((q + 1) * p, (q + 3) * p, (2 * q + 2) * p)
        return g, -3 * p / 2, p / 2, (p, (q + 1) * p, q * p)
    g = gamma(-p) * gamma(3 * p) / gamma(2 * p)
    if pattern == "+--+":
        return g / 2, p / 2, p / 2, (p, 3 * p, (q + 4) * p)
    if pattern == "--++":
        return -g, p / 2, p / 2, (p, 3 * p, 2 * p)
    return g / 2, p / 2, -3 * p / 2, (p, (q + 1) * p, (q + 4) * p)


def _closed(const, alpha, beta, abc, x, winding):
    n0, n1 = winding
    return const * power_branch(x, alpha, n0) * power_branch(1 - x, beta, n1) * hyp2f1(*abc, x)


def eval_X(q: int, mu: int, pattern: str, x, winding=(0, 0)) -> complex:
    """Four-point SU(2)_q correlator X_{mu, pattern}(x) of spin-1/2 fields.

    ``q`` may also be the negative value -k-4 that produces the conjugate
    level-k factor.
    """
    x = _check_x(x)
    return _closed(*_x_terms(q, _mu(mu), _pattern(pattern)), x, winding)


def eval_Y(k: int, mu: int, pattern: str, x, winding=(0, 0)) -> complex:
    """Conjugate SU(2)_k correlators entering the coset blocks."""
    _check_k(k)
    x = _check_x(x)
    mu = _mu(mu)
    pattern = _pattern(pattern)
    if pattern == "-+-+":
        return -eval_Y(k, mu, "+--+", x, winding) - eval_Y(k, mu, "--++", x, winding)
    p = 1.0 / (k + 2)
    if mu == 1:
        g = gamma(p) * gamma((k + 3) * p) / gamma((k + 4) * p)
        if pattern == "+--+":
            terms = (-g, 3 * p / 2, -p / 2, (-p, p, (k + 4) * p))
        else:
            terms = (g / (k + 4), (2 * k + 7) * p / 2, -p / 2, ((k + 1) * p, (k + 3) * p, 2 * (k + 3) * p))
    else:
        g = gamma(p) * gamma(-3 * p) / gamma(-2 * p)
        if pattern == "+--+":
            terms = (g / 2, -p / 2, -p / 2, (-3 * p, -p, k * p))
        else:
            terms = (-g, -p / 2, -p / 2, (-3 * p, -p, -2 * p))
    return _closed(*terms, x, winding)


def coset_constant() -> float:
    """The level-1 normalization 4 pi^2 / Gamma(1/3)^3."""
    return 4 * math.pi**2 / gamma(1 / 3).real ** 3


def eval_coset_F4(k: int, mu: int, x, form: str = "sum", *, normalized: bool = True) -> complex:
    """Coset four-point block, either as the sum over magnetic patterns or closed form."""
    _check_k(k)
    x = _check_x(x)
    mu = _mu(mu)
    w = math.sqrt(norms_4pt(k)[mu - 1]) if normalized else 1.0
    if form == "sum":
        s = sum(eval_X(1, 1, m, x) * eval_Y(k, mu, m, x) for m in PATTERNS)
        return 2 * w * s
    if form != "closed":
        raise UsageError("form must be 'sum' or 'closed'")
    p = 1.0 / (k + 2)
    g13 = gamma(1 / 3).real ** 3
    if mu == 1:
        const = -8 * math.pi**2 * (gamma(p) ** 2 / (g13 * gamma(2 * p))).real
        return w * const * power_branch(x, (1 - k) * p / 2) * power_branch(1 - x, (k + 1) * p / 2) * hyp2f1(
            p, (k + 1) * p, 2 * p, x
        )
    const = 12 * math.pi**2 * (1 - k) * (gamma(-3 * p) * gamma(p) / (k * g13 * gamma(-2 * p))).real
    return w * const * power_branch(x, (k + 1) * p / 2) * power_branch(1 - x, (k + 1) * p / 2) * hyp2f1(
        (k + 1) * p, (2 * k + 1) * p, (2 * k + 2) * p, x
    )


def eval_F4_eps(k: int, eta: Sequence[complex], *, as_printed: bool = False) -> complex:
    """<sigma sigma sigma eps'> at four points, no screening charge needed.

    By default the eta_12 exponent is the conformally covariant value
    (k+1)/(2(k+2)); ``as_printed=True`` uses k/(2(k+2)) instead.
    """
    _check_k(k)
    e1, e2, e3, e4 = (complex(v) for v in eta)
    d = [e1 - e2, e1 - e3, e2 - e3, e1 - e4, e2 - e4, e3 - e4]
    if any(v == 0 for v in d):
        raise PoleError("coincident insertion points")
    p = 1.0 / (k + 2)
    a12 = (k if as_printed else k + 1) * p / 2
    a = (k + 1) * p / 2
    b = -(3 * k + 1) * p / 2
    exps = [a12, a, a, b, b, b]
    out = 1 + 0j
    for base, ex in zip(d, exps):
        out *= power_branch(base, ex)
    return out


def eval_K(k: int, which: str, x) -> complex:
    """Mixed four-point functions used to change basis in the five-point problem."""
    _check_k(k)
    x = _check_x(x)
    p = 1.0 / (k + 2)
    w = str(which).replace("′", "'").replace("p", "'")
    if w == "K2":
        c, al, be, abc, arg = gamma(p) ** 2 / gamma(2 * p), -2 * k * p, -k * p, (p, -2 * k * p, 2 * p), x
    elif w == "K3":
        c = gamma(-k * p) * gamma((3 * k + 2) * p) / gamma(2 * (k + 1) * p)
        al, be, abc, arg = -k * p, (k + 1) * p, ((k + 1) * p, (3 * k + 2) * p, 2 * (k + 1) * p), x
    elif w == "K2'":
        c = gamma(p) * gamma(-k * p) / gamma((1 - k) * p)
        al, be, abc, arg = -k * p, -k * p, (-k * p, (k + 1) * p, (1 - k) * p), 1 - x
    elif w == "K3'":
        c = gamma(p) * gamma((3 * k + 2) * p) / gamma(3 * (k + 1) * p)
        al, be, abc, arg = -2 * k * p, (k + 1) * p, (p, 2 * (k + 1) * p, 3 * (k + 1) * p), 1 - x
    else:
        raise UsageError(f"unknown K function {which!r}")
    return c * power_branch(x, al) * power_branch(1 - x, be) * hyp2f1(*abc, arg)
