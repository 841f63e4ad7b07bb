"""Pfaffian psi-correlators, Jastrow factors and quasihole wavefunctions.

Every fractional power is taken factor by factor on the principal branch, so
a wavefunction is fixed only up to the sheet chosen by the input positions.
Overall proportionality constants are 1.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .conformal_blocks import PATTERNS, eval_X, eval_Y, norms_4pt
from .errors import DomainError, PoleError, UsageError
from .exchange_matrices import r4
from .special_functions import power_branch

__all__ = [
    "ParticleConfig",
    "pfaffian",
    "psi_correlator",
    "psi_magnetic_sum",
    "jastrow",
    "block_22",
    "wavefunction_22",
    "factorization_residual",
    "xi_pair",
    "xi_vector",
    "block_42",
    "wavefunction_42",
    "mixed_block_braiding_check",
    "random_config",
]


@dataclass(frozen=True)
class ParticleConfig:
    """2N quasihole positions ``eta``, 2M electron positions ``z``, inverse filling ``lam``."""

    eta: tuple
    z: tuple
    lam: int = 1
    k: int = 3

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(complex(v) for v in self.eta))
        object.__setattr__(self, "z", tuple(complex(v) for v in self.z))
        if len(self.eta) % 2 or len(self.z) % 2:
            raise UsageError("need an even number of eta and of z positions")
        if not isinstance(self.lam, (int, np.integer)) or self.lam < 1:
            raise DomainError(f"lam must be a positive integer, got {self.lam!r}")
        if not isinstance(self.k, (int, np.integer)) or self.k < 2:
            raise DomainError(f"k must be an integer >= 2, got {self.k!r}")

    @property
    def N(self) -> int:
        return len(self.eta) // 2

    @property
    def M(self) -> int:
        return len(self.z) // 2

    def swapped_eta(self, a: int, b: int) -> "ParticleConfig":
        eta = list(self.eta)
        eta[a], eta[b] = eta[b], eta[a]
        return ParticleConfig(tuple(eta), self.z, self.lam, self.k)

    def swapped_z(self, i: int, j: int) -> "ParticleConfig":
        z = list(self.z)
        z[i], z[j] = z[j], z[i]
        return ParticleConfig(self.eta, tuple(z), self.lam, self.k)


def random_config(k: int, N: int, M: int, lam: int = 1, seed: int | None = 0, scale: float = 1.0) -> ParticleConfig:
    rng = np.random.default_rng(seed)
    pts = scale * (rng.normal(size=2 * N + 2 * M) + 1j * rng.normal(size=2 * N + 2 * M))
    return ParticleConfig(tuple(pts[: 2 * N]), tuple(pts[2 * N :]), lam, k)


# --- Pfaffians --------------------------------------------------------------


def _check_skew(A, tol: float) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise UsageError("Pfaffian needs a square matrix")
    if A.shape[0] % 2:
        raise UsageError("Pfaffian of an odd-dimensional matrix")
    scale = np.abs(A).max() if A.size else 0.0
    if np.abs(A + A.T).max(initial=0.0) > tol * max(scale, 1.0):
        raise UsageError("matrix is not antisymmetric")
    return A


def _pf_expand(A: np.ndarray) -> complex:
    n = A.shape[0]
    if n == 0:
        return 1 + 0j
    if n == 2:
        return complex(A[0, 1])
    total = 0j
    rest = list(range(1, n))
    for j in range(1, n):
        if A[0, j] == 0:
            continue
        keep = [r for r in rest if r != j]
        sign = -1 if (j - 1) % 2 else 1
        total += sign * A[0, j] * _pf_expand(A[np.ix_(keep, keep)])
    return total


def _pf_parlett_reid(A: np.ndarray) -> complex:
    A = A.copy()
    n = A.shape[0]
    pf = 1 + 0j
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1 :, k])))
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            pf = -pf
        piv = A[k + 1, k]
        if piv == 0:
            return 0j
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2 :] / A[k, k + 1]
            A[k + 2 :, k + 2 :] += np.outer(tau, A[k + 2 :, k + 1]) - np.outer(A[k + 2 :, k + 1], tau)
    return pf


def pfaffian(A, *, tol: float = 0.0) -> complex:
    """Pfaffian of an even antisymmetric matrix; Pf(A)^2 = det(A).

    Small matrices are expanded along the first row, larger ones are
    reduced to tridiagonal form with pivoting.
    """
    A = _check_skew(A, tol)
    if A.shape[0] <= 8:
        return _pf_expand(A)
    return _pf_parlett_reid(A)


def _diffs(pts) -> None:
    for a, b in itertools.combinations(range(len(pts)), 2):
        if pts[a] == pts[b]:
            raise PoleError(f"coincident positions at indices {a} and {b}")


def psi_correlator(z) -> complex:
    """2^M Pf(1/(z_i - z_j))."""
    z = [complex(v) for v in z]
    if len(z) % 2:
        raise UsageError("need an even number of psi insertions")
    _diffs(z)
    n = len(z)
    A = np.zeros((n, n), dtype=complex)
    for i, j in itertools.combinations(range(n), 2):
        A[i, j] = 1 / (z[i] - z[j])
        A[j, i] = -A[i, j]
    return 2 ** (n // 2) * pfaffian(A)


def psi_magnetic_sum(z) -> complex:
    """Sum over neutral spin patterns of the two free-boson factors.

    Each pattern m in {+1/2, -1/2}^{2M} with zero total contributes
    prod z_ij^{2 m_i m_j} for level one and the same with -m for the
    conjugate factor.
    """
    z = [complex(v) for v in z]
    n = len(z)
    if n % 2:
        raise UsageError("need an even number of psi insertions")
    _diffs(z)
    total = 0j
    for plus in itertools.combinations(range(n), n // 2):
        m = [0.5 if i in plus else -0.5 for i in range(n)]
        term = 1 + 0j
        for i, j in itertools.combinations(range(n), 2):
            e = 2 * m[i] * m[j]
            term *= power_branch(z[i] - z[j], e) * power_branch(z[i] - z[j], 2 * (-m[i]) * (-m[j]))
        total += term
    return total


# --- Jastrow factor and wavefunctions ---------------------------------------------


def _gauss(cfg: ParticleConfig) -> float:
    return math.exp(-sum(abs(v) ** 2 for v in cfg.z) / 4 - sum(abs(v) ** 2 for v in cfg.eta) / (8 * cfg.lam))


def jastrow(cfg: ParticleConfig, *, gaussian: bool = True) -> complex:
    """Free-boson factor prod z_ij^lam prod eta_ab^{1/(4 lam)} prod (eta_a - z_i)^{1/2}."""
    _diffs(cfg.z)
    _diffs(cfg.eta)
    lam = cfg.lam
    out = 1 + 0j
    for i, j in itertools.combinations(range(len(cfg.z)), 2):
        out *= (cfg.z[i] - cfg.z[j]) ** lam
    for a, b in itertools.combinations(range(len(cfg.eta)), 2):
        out *= power_branch(cfg.eta[a] - cfg.eta[b], 1 / (4 * lam))
    for e in cfg.eta:
        for z in cfg.z:
            out *= power_branch(e - z, 0.5)
    if gaussian:
        out *= _gauss(cfg)
    return out


def jastrow_exponent(N: int, M: int, lam: int) -> float:
    """Homogeneity degree of the Jastrow factor without Gaussians."""
    return lam * M * (2 * M - 1) + N * (2 * N - 1) / (4 * lam) + 2 * N * M


__all__.append("jastrow_exponent")


def _need(cfg: ParticleConfig, N: int, M: int) -> None:
    if (cfg.N, cfg.M) != (N, M):
        raise UsageError(f"expected N={N}, M={M}; got N={cfg.N}, M={cfg.M}")


def _inv_sqrt_links(cfg: ParticleConfig) -> complex:
    out = 1 + 0j
    for e in cfg.eta:
        for z in cfg.z:
            out *= power_branch(e - z, -0.5)
    return out


def block_22(cfg: ParticleConfig) -> complex:
    """Two sigma and two psi insertions: the single block."""
    _need(cfg, 1, 1)
    (e1, e2), (z1, z2) = cfg.eta, cfg.z
    if z1 == z2 or e1 == e2:
        raise PoleError("coincident positions")
    k = cfg.k
    xi = (e1 - z1) * (e2 - z2) + (e1 - z2) * (e2 - z1)
    return 2 * power_branch(e1 - e2, (1 - k) / (2 * k + 4)) / (z1 - z2) * xi * _inv_sqrt_links(cfg)


def wavefunction_22(cfg: ParticleConfig, *, gaussian: bool = True) -> complex:
    _need(cfg, 1, 1)
    (e1, e2), (z1, z2) = cfg.eta, cfg.z
    k, lam = cfg.k, cfg.lam
    xi = (e1 - z1) * (e2 - z2) + (e1 - z2) * (e2 - z1)
    out = power_branch(e1 - e2, 1 / (4 * lam) - (k - 1) / (2 * (k + 2))) * (z1 - z2) ** (lam - 1) * xi
    return out * _gauss(cfg) if gaussian else out


def factorization_residual(cfg: ParticleConfig) -> float:
    """|J F - 2 Psi| / |2 Psi|; the 2 is the explicit constant carried by the block."""
    lhs = jastrow(cfg) * block_22(cfg)
    rhs = 2 * wavefunction_22(cfg)
    return abs(lhs - rhs) / abs(rhs)


def xi_pair(cfg: ParticleConfig, a: int, b: int, c: int, d: int) -> complex:
    """xi_{(ab)(cd)} with 1-based quasihole indices."""
    e = cfg.eta
    z1, z2 = cfg.z[0], cfg.z[1]
    # grouped by pair so that (ab)<->(cd) with z1<->z2 is exact in floating point
    t = ((e[a - 1] - z1) * (e[b - 1] - z1)) * ((e[c - 1] - z2) * (e[d - 1] - z2))
    u = ((e[a - 1] - z2) * (e[b - 1] - z2)) * ((e[c - 1] - z1) * (e[d - 1] - z1))
    return t + u


_PAIRINGS = {"+--+": (1, 4, 2, 3), "--++": (1, 2, 3, 4), "-+-+": (1, 3, 2, 4)}


def cross_ratio(eta) -> complex:
    e1, e2, e3, e4 = eta
    return (e1 - e2) * (e3 - e4) / ((e1 - e3) * (e2 - e4))


__all__.append("cross_ratio")


def xi_vector(cfg: ParticleConfig, *, normalized: bool = True) -> np.ndarray:
    """(Xi_1, Xi_2): the polynomial parts of the two mixed blocks, in the cross-ratio frame."""
    _need(cfg, 2, 1)
    _diffs(cfg.eta)
    x = cross_ratio(cfg.eta)
    out = []
    for mu in (1, 2):
        s = 0j
        for m in PATTERNS:
            s += xi_pair(cfg, *_PAIRINGS[m]) * eval_X(1, 1, m, x) * eval_Y(cfg.k, mu, m, x)
        if normalized:
            s *= math.sqrt(norms_4pt(cfg.k)[mu - 1])
        out.append(s)
    return np.array(out)


def block_42(cfg: ParticleConfig, mu: int) -> complex:
    if mu not in (1, 2):
        raise UsageError("mu must be 1 or 2")
    z1, z2 = cfg.z
    if z1 == z2:
        raise PoleError("coincident electrons")
    return 2 / (z1 - z2) * _inv_sqrt_links(cfg) * xi_vector(cfg)[mu - 1]


def wavefunction_42(cfg: ParticleConfig, mu: int, *, gaussian: bool = True) -> complex:
    _need(cfg, 2, 1)
    if mu not in (1, 2):
        raise UsageError("mu must be 1 or 2")
    lam = cfg.lam
    out = (cfg.z[0] - cfg.z[1]) ** (lam - 1) * xi_vector(cfg)[mu - 1]
    for a, b in itertools.combinations(range(4), 2):
        out *= power_branch(cfg.eta[a] - cfg.eta[b], 1 / (4 * lam))
    return out * _gauss(cfg) if gaussian else out


def mixed_block_braiding_check(k: int, samples: int = 10, seed: int = 0) -> float:
    """Worst deviation of Xi(eta_1 <-> eta_3) from R13 Xi, up to a common phase.

    Quasiholes are drawn with cross ratio on the real interval (0, 1) so that
    the swap x -> 1 - x stays on the principal sheet; electrons are generic.
    """
    rng = np.random.default_rng(seed)
    R = r4(k, "R13")
    worst = 0.0
    for _ in range(samples):
        # eta = (0, x, 1, L) with a large but finite fourth point, then a random Moebius-free move
        x = rng.uniform(0.1, 0.9)
        L = 10.0 + 5 * rng.random()
        shift = complex(rng.normal(), rng.normal())
        rot = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        eta = tuple(shift + rot * v for v in (0.0, x * L / (L - 1 + x), 1.0, L))
        z = tuple(complex(rng.normal(), rng.normal()) for _ in range(2))
        cfg = ParticleConfig(eta, z, 1, k)
        v = xi_vector(cfg)
        w = xi_vector(cfg.swapped_eta(0, 2))
        target = R @ v
        ov = np.vdot(target, w)
        ph = ov / abs(ov)
        worst = max(worst, float(np.linalg.norm(w - ph * target) / np.linalg.norm(w)))
    return worst
