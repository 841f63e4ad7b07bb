"""Complex Gamma, digamma and Gauss hypergeometric functions.

Everything here works on Python complex scalars.  ``hyp2f1`` picks, among the
standard linear transformations, the one whose argument has the smallest
modulus; points that no transformation brings inside the disc of radius 0.75
(the neighbourhood of exp(+-i pi/3), or degenerate parameter sets) are
reached by Taylor-stepping the hypergeometric differential equation.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple, Sequence

from .errors import ContinuationError, PoleError, UsageError

__all__ = [
    "gamma",
    "rgamma",
    "digamma",
    "hyp2f1",
    "power_branch",
    "continue_hyp2f1",
    "ContinuedValue",
]

# Godfrey's g = 607/128 set; the shorter g = 7 set stalls near 2e-13 for large |Im z|
_LANCZOS_G = 607 / 128
_LANCZOS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_EULER = 0.57721566490153286061

# radius beyond which a transformed series is not trusted
_SERIES_RADIUS = 0.75
# parameters closer than this to an integer (but not equal) are treated as
# numerically degenerate for the connection formulas
_NEAR_INT = 1e-8


def _near_int(z: complex, tol: float = 0.0) -> int | None:
    """Return the nearest integer if ``z`` is within ``tol`` of one."""
    if abs(z.imag) > tol:
        return None
    n = round(z.real)
    if abs(z.real - n) <= tol:
        return int(n)
    return None


def _is_pole(z: complex) -> bool:
    n = _near_int(z, 1e-14 * max(1.0, abs(z)))
    return n is not None and n <= 0


def _sinpi(z: complex) -> complex:
    # exact argument reduction keeps sin(pi z) accurate far from the origin
    n = round(z.real)
    r = complex(z.real - n, z.imag)
    s = cmath.sin(math.pi * r)
    return -s if n % 2 else s


def _cospi(z: complex) -> complex:
    n = round(z.real)
    r = complex(z.real - n, z.imag)
    c = cmath.cos(math.pi * r)
    return -c if n % 2 else c


def gamma(z) -> complex:
    """Gamma function via the Lanczos approximation with reflection.

    Raises PoleError at the non-positive integers.
    """
    z = complex(z)
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        return math.pi / (_sinpi(z) * gamma(1.0 - z))
    z -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * acc


def rgamma(z) -> complex:
    """1/Gamma(z), entire; returns 0 at the poles of Gamma."""
    z = complex(z)
    if _is_pole(z):
        return 0j
    return 1.0 / gamma(z)


def digamma(z) -> complex:
    z = complex(z)
    if _is_pole(z):
        raise PoleError(f"digamma has a pole at {z}")
    if z.real < 0.5:
        return digamma(1.0 - z) - math.pi * _cospi(z) / _sinpi(z)
    acc = 0j
    while z.real < 10.0:
        acc -= 1.0 / z
        z += 1.0
    w = 1.0 / (z * z)
    tail = w * (1 / 12 - w * (1 / 120 - w * (1 / 252 - w * (1 / 240 - w * (1 / 132 - w * (691 / 32760 - w / 12))))))
    return acc + cmath.log(z) - 0.5 / z - tail


def power_branch(base, exponent, winding: int = 0) -> complex:
    """exp(exponent * (Log(base) + 2 pi i winding)) with the principal Log."""
    base = complex(base)
    exponent = complex(exponent)
    if base == 0:
        if exponent.real > 0:
            return 0j
        if exponent == 0:
            return 1 + 0j
        raise PoleError("zero base raised to a non-positive power")
    return cmath.exp(exponent * (cmath.log(base) + 2j * math.pi * winding))


# ---------------------------------------------------------------------------
# hypergeometric series and transformations


def _series(a: complex, b: complex, c: complex, w: complex, maxterms: int = 20000) -> complex:
    s = t = 1 + 0j
    small = 0
    for n in range(maxterms):
        t *= (a + n) * (b + n) / ((c + n) * (n + 1)) * w
        s += t
        if t == 0:
            return s
        if abs(t) <= 1e-17 * abs(s):
            small += 1
            if small >= 2:
                return s
        else:
            small = 0
    raise ContinuationError(f"hypergeometric series did not converge at w={w}")


def _polynomial(a: complex, b: complex, c: complex, x: complex) -> complex:
    """Terminating series when a or b is a non-positive integer."""
    m = min(-n for n in (_near_int(a), _near_int(b)) if n is not None and n <= 0)
    s = t = 1 + 0j
    for n in range(m):
        if c + n == 0:
            raise PoleError(f"2F1 parameter c={c} is a non-positive integer")
        t *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        s += t
    return s


def _terminates(a: complex, b: complex) -> bool:
    for p in (a, b):
        n = _near_int(p)
        if n is not None and n <= 0:
            return True
    return False


def _one_minus(a: complex, b: complex, c: complex, x: complex) -> complex:
    w = 1.0 - x
    d = c - a - b
    m = _near_int(d)
    if m is not None:
        return _one_minus_log(a, b, c, w, m)
    g_c = gamma(c)
    t1 = g_c * gamma(d) * rgamma(c - a) * rgamma(c - b)
    t2 = g_c * gamma(-d) * rgamma(a) * rgamma(b)
    out = 0j
    if t1 != 0:
        out += t1 * _series(a, b, 1.0 - d, w)
    if t2 != 0:
        out += t2 * power_branch(w, d) * _series(c - a, c - b, 1.0 + d, w)
    return out


def _one_minus_log(a: complex, b: complex, c: complex, w: complex, m: int) -> complex:
    """Connection to 1-x when c-a-b = m is an integer (logarithmic case)."""
    L = cmath.log(w)
    if m >= 0:
        # c = a + b + m
        first = 0j
        if m > 0:
            coef = gamma(m) * gamma(a + b + m) * rgamma(a + m) * rgamma(b + m)
            t = 1 + 0j
            acc = t
            for n in range(m - 1):
                t *= (a + n) * (b + n) / ((n + 1) * (1 - m + n)) * w
                acc += t
            first = coef * acc
        pref = -((-1) ** m) * w**m * gamma(a + b + m) * rgamma(a) * rgamma(b)
        if pref == 0:
            return first
        psi_n1 = -_EULER  # psi(n+1)
        psi_nm1 = digamma(m + 1)  # psi(n+m+1)
        psi_a = digamma(a + m)  # psi(a+n+m)
        psi_b = digamma(b + m)
        t = 1.0 / math.factorial(m) + 0j  # (a+m)_n (b+m)_n / (n! (n+m)!) w^n
        acc = 0j
        small = 0
        for n in range(20000):
            term = t * (L - psi_n1 - psi_nm1 + psi_a + psi_b)
            acc += term
            if abs(term) <= 1e-17 * abs(acc) and n > 2:
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
            t *= (a + m + n) * (b + m + n) / ((n + 1) * (n + m + 1)) * w
            psi_n1 += 1.0 / (n + 1)
            psi_nm1 += 1.0 / (n + m + 1)
            psi_a += 1.0 / (a + m + n)
            psi_b += 1.0 / (b + m + n)
        else:
            raise ContinuationError("logarithmic connection series did not converge")
        return first + pref * acc
    # c = a + b - mm
    mm = -m
    coef = gamma(mm) * gamma(c) * rgamma(a) * rgamma(b) * w ** (-mm)
    t = 1 + 0j
    acc = t
    for n in range(mm - 1):
        t *= (a - mm + n) * (b - mm + n) / ((n + 1) * (1 - mm + n)) * w
        acc += t
    first = coef * acc
    pref = -((-1) ** mm) * gamma(c) * rgamma(a - mm) * rgamma(b - mm)
    if pref == 0:
        return first
    psi_n1 = -_EULER
    psi_nm1 = digamma(mm + 1)
    psi_a = digamma(a)
    psi_b = digamma(b)
    t = 1.0 / math.factorial(mm) + 0j
    acc = 0j
    small = 0
    for n in range(20000):
        term = t * (L - psi_n1 - psi_nm1 + psi_a + psi_b)
        acc += term
        if abs(term) <= 1e-17 * abs(acc) and n > 2:
            small += 1
            if small >= 2:
                break
        else:
            small = 0
        t *= (a + n) * (b + n) / ((n + 1) * (n + mm + 1)) * w
        psi_n1 += 1.0 / (n + 1)
        psi_nm1 += 1.0 / (n + mm + 1)
        psi_a += 1.0 / (a + n)
        psi_b += 1.0 / (b + n)
    else:
        raise ContinuationError("logarithmic connection series did not converge")
    return first + pref * acc


def _inverse(a: complex, b: complex, c: complex, x: complex) -> complex:
    w = 1.0 / x
    g_c = gamma(c)
    out = 0j
    t1 = g_c * gamma(b - a) * rgamma(b) * rgamma(c - a)
    if t1 != 0:
        out += t1 * power_branch(-x, -a) * _series(a, 1.0 - c + a, 1.0 - b + a, w)
    t2 = g_c * gamma(a - b) * rgamma(a) * rgamma(c - b)
    if t2 != 0:
        out += t2 * power_branch(-x, -b) * _series(b, 1.0 - c + b, 1.0 - a + b, w)
    return out


def _inverse_ok(a: complex, b: complex) -> bool:
    d = a - b
    return _near_int(d, _NEAR_INT) is None


def _one_minus_ok(a: complex, b: complex, c: complex) -> bool:
    d = c - a - b
    return _near_int(d) is not None or _near_int(d, _NEAR_INT) is None


def _routes(a, b, c, x):
    """Candidate evaluation routes as (modulus, name)."""
    out = [(abs(x), "series")]
    if x != 1:
        out.append((abs(x / (x - 1.0)), "pfaff"))
        if _one_minus_ok(a, c - b, c):
            out.append((abs(1.0 / (1.0 - x)), "pfaff_one_minus"))
        if _inverse_ok(a, c - b):
            out.append((abs((x - 1.0) / x), "pfaff_inverse"))
    if _one_minus_ok(a, b, c):
        out.append((abs(1.0 - x), "one_minus"))
    if _inverse_ok(a, b):
        out.append((abs(1.0 / x), "inverse"))
    return sorted(out, key=lambda r: r[0])


def _route(a, b, c, x, name) -> complex:
    if name == "series":
        return _series(a, b, c, x)
    if name == "one_minus":
        return _one_minus(a, b, c, x)
    if name == "inverse":
        return _inverse(a, b, c, x)
    # Pfaff: F(a,b;c;x) = (1-x)^(-a) F(a, c-b; c; x/(x-1))
    pre = power_branch(1.0 - x, -a)
    w = x / (x - 1.0)
    inner = {"pfaff": "series", "pfaff_one_minus": "one_minus", "pfaff_inverse": "inverse"}[name]
    return pre * _route(a, c - b, c, w, inner)


def _on_cut(x: complex) -> bool:
    return x.imag == 0 and x.real > 1


def hyp2f1(a, b, c, x, *, side: int | None = None, method: str = "auto") -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; x).

    ``side`` (+1 or -1) selects the limit x +- i0 for x on the cut (1, inf).
    ``method`` forces a route: "series", "one_minus", "inverse", "pfaff",
    "pfaff_one_minus", "pfaff_inverse" or "continuation"; the default picks
    the route with the smallest transformed argument.
    """
    a, b, c, x = complex(a), complex(b), complex(c), complex(x)
    if _is_pole(c) and not _terminates(a, b):
        raise PoleError(f"2F1 parameter c={c} is a non-positive integer")
    if x == 0:
        return 1 + 0j
    if _terminates(a, b):
        return _polynomial(a, b, c, x)
    if x == 1:
        if (c - a - b).real > 0:
            return gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b)
        raise PoleError("2F1 diverges at x=1 when Re(c-a-b) <= 0")
    if _on_cut(x):
        if side not in (1, -1):
            raise UsageError("x lies on the branch cut (1, inf); pass side=+1 or side=-1")
        h = 0.5 * min(1.0, x.real - 1.0)
        start = x + 1j * side * h
        return continue_hyp2f1(a, b, c, [start, x]).value
    if method == "continuation":
        return _by_continuation(a, b, c, x)
    if method != "auto":
        if method == "series" and abs(x) >= 1:
            raise UsageError("direct series requested outside the unit disc")
        return _route(a, b, c, x, method)
    r, name = _routes(a, b, c, x)[0]
    if r <= _SERIES_RADIUS:
        return _route(a, b, c, x, name)
    return _by_continuation(a, b, c, x)


def _by_continuation(a, b, c, x) -> complex:
    if x.real > 0.5 and _one_minus_ok(a, b, c) and abs(x - 1) > 0.5:
        start = 1.0 + 0.5 * (x - 1.0) / abs(x - 1.0)
    elif abs(x) > 0.5:
        start = 0.5 * x / abs(x)
    else:
        return _series(a, b, c, x)
    return continue_hyp2f1(a, b, c, [start, x]).value


# ---------------------------------------------------------------------------
# analytic continuation of the hypergeometric equation


class ContinuedValue(NamedTuple):
    value: complex
    derivative: complex
    dlog_x: complex  # change of log(x) along the path
    dlog_1mx: complex  # change of log(1-x) along the path


def _taylor_step(a, b, c, x0, f, df, h, maxterms=400):
    P0 = x0 * (1.0 - x0)
    P1 = 1.0 - 2.0 * x0
    Q0 = c - (a + b + 1.0) * x0
    Q1 = -(a + b + 1.0)
    R0 = -a * b
    u_prev, u_cur = f, df  # u_n, u_{n+1}
    hp = h  # h^(n+1)
    val = f + df * h
    der = df
    scale = abs(f) + abs(df * h) + 1e-300
    small = 0
    for n in range(maxterms):
        u_next = -((P1 * n + Q0) * (n + 1) * u_cur + (-n * (n - 1) + Q1 * n + R0) * u_prev) / (
            P0 * (n + 2) * (n + 1)
        )
        der += (n + 2) * u_next * hp
        hp *= h
        term = u_next * hp
        val += term
        scale = max(scale, abs(val))
        if abs(term) <= 1e-18 * scale:
            small += 1
            if small >= 3:
                return val, der
        else:
            small = 0
        u_prev, u_cur = u_cur, u_next
    raise ContinuationError("Taylor step did not converge")


def continue_hyp2f1(a, b, c, path: Sequence[complex], value=None, derivative=None) -> ContinuedValue:
    """Continue a solution of the hypergeometric equation along a polyline.

    With ``value``/``derivative`` omitted, the initial data are those of
    2F1(a,b;c;.) at ``path[0]`` on the principal sheet.  The returned log
    increments let callers continue x^alpha (1-x)^beta prefactors along the
    same path.
    """
    a, b, c = complex(a), complex(b), complex(c)
    pts = [complex(p) for p in path]
    if not pts:
        raise UsageError("empty path")
    cur = pts[0]
    if value is None:
        value = hyp2f1(a, b, c, cur)
        derivative = (a * b / c) * hyp2f1(a + 1, b + 1, c + 1, cur) if cur != 0 else a * b / c
    f, df = complex(value), complex(derivative)
    dlx = 0j
    dl1 = 0j
    for target in pts[1:]:
        while cur != target:
            rad = min(abs(cur), abs(1.0 - cur))
            if rad < 1e-10:
                raise ContinuationError("continuation path runs into a singular point")
            step = target - cur
            if abs(step) > 0.5 * rad:
                step = step / abs(step) * (0.5 * rad)
                nxt = cur + step
            else:
                nxt = target
                step = target - cur
            f, df = _taylor_step(a, b, c, cur, f, df, step)
            dlx += cmath.log(nxt / cur)
            dl1 += cmath.log((1.0 - nxt) / (1.0 - cur))
            cur = nxt
    return ContinuedValue(f, df, dlx, dl1)
