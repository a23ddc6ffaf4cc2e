"""Limiting constants for the metric dimension of random trees/forests and sparse G(n,p).

The tree-model constants come from the singularity x = rho(y) of the mobile
series, where rho satisfies

    1 + rho = (1 + (e^{y rho} - 1)/y) * rho * e^{1 - rho},

giving rho(1) = 1/(e-1).  Subdividing edges moves the singularity to
R(y) = rho(y)/(1+rho(y)), with R(1) = 1/e, and the quasi-powers formulas read
off the mean and variance slopes mu = -R'(1)/R(1) and
sigma^2 = -R''(1)/R(1) - R'(1)/R(1) + (R'(1)/R(1))^2.

For G(n, c/n) with c < 1 the linear-term constant of the expected metric
dimension is C(c); the series form sums contributions of isolated vertices,
leaves, branch vertices with a pendant path, and path components, and the
closed form evaluates those sums exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath


class ConvergenceError(RuntimeError):
    pass


_BRACKET = (0.1, 2.0)


def _relation(r: float, y: float) -> float:
    return (1.0 + (math.exp(y * r) - 1.0) / y) * r * math.exp(1.0 - r) - 1.0 - r


def _relation_dr(r: float, y: float) -> float:
    E = math.exp(y * r)
    A = 1.0 + (E - 1.0) / y
    B = r * math.exp(1.0 - r)
    return E * B + A * math.exp(1.0 - r) * (1.0 - r) - 1.0


def solve_rho(y: float, tol: float = 1e-14, max_iter: int = 200) -> float:
    """Positive root near 0.58 of the singularity relation, for y in [0.5, 1.5].

    Safeguarded Newton: steps leaving the bracket [0.1, 2.0] fall back to
    bisection, so only the intended branch is found.
    """
    if not 0.5 <= y <= 1.5:
        raise ValueError(f"y={y} outside [0.5, 1.5]")
    lo, hi = _BRACKET
    flo = _relation(lo, y)
    fhi = _relation(hi, y)
    if flo > 0 or fhi < 0:
        raise ConvergenceError(f"bracket {_BRACKET} does not straddle the root at y={y}")
    x = 0.58
    for _ in range(max_iter):
        fx = _relation(x, y)
        if abs(fx) < tol:
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        dfx = _relation_dr(x, y)
        nxt = x - fx / dfx if dfx != 0.0 else lo
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        x = nxt
    raise ConvergenceError(f"no convergence after {max_iter} iterations at y={y}")


def _partials(r: float, y: float) -> tuple[float, float, float, float, float]:
    """First and second partials of the relation at (r, y)."""
    E = math.exp(y * r)
    A = 1.0 + (E - 1.0) / y
    A_r = E
    A_y = r * E / y - (E - 1.0) / y**2
    A_rr = y * E
    A_ry = r * E
    A_yy = r * r * E / y - 2.0 * r * E / y**2 + 2.0 * (E - 1.0) / y**3
    ex = math.exp(1.0 - r)
    B = r * ex
    B_r = (1.0 - r) * ex
    B_rr = (r - 2.0) * ex
    phi_r = A_r * B + A * B_r - 1.0
    phi_y = A_y * B
    phi_rr = A_rr * B + 2.0 * A_r * B_r + A * B_rr
    phi_ry = A_ry * B + A_y * B_r
    phi_yy = A_yy * B
    return phi_r, phi_y, phi_rr, phi_ry, phi_yy


def rho_derivatives(cross_check_tol: float = 1e-6) -> tuple[float, float]:
    """rho'(1) and rho''(1) by implicit differentiation of the relation.

    Differentiating phi(rho(y), y) = 0 once and twice in y gives linear
    equations for the derivatives at y = 1.  A 5-point finite-difference
    stencil (step 1e-3) over solve_rho cross-checks both values.
    """
    rho1 = solve_rho(1.0)
    phi_r, phi_y, phi_rr, phi_ry, phi_yy = _partials(rho1, 1.0)
    d1 = -phi_y / phi_r
    d2 = -(phi_yy + 2.0 * phi_ry * d1 + phi_rr * d1 * d1) / phi_r

    h = 1e-3
    r = {k: solve_rho(1.0 + k * h) for k in (-2, -1, 0, 1, 2)}
    fd1 = (r[-2] - 8.0 * r[-1] + 8.0 * r[1] - r[2]) / (12.0 * h)
    fd2 = (-r[-2] + 16.0 * r[-1] - 30.0 * r[0] + 16.0 * r[1] - r[2]) / (12.0 * h * h)
    if abs(d1 - fd1) > cross_check_tol or abs(d2 - fd2) > cross_check_tol:
        raise ConvergenceError(
            f"implicit/finite-difference disagreement: {d1} vs {fd1}, {d2} vs {fd2}"
        )
    return d1, d2


@dataclass(frozen=True)
class AsymptoticConstants:
    rho1: float
    rho_d1: float
    rho_d2: float
    R1: float
    R_d1: float
    R_d2: float
    mu: float
    sigma2: float


def tree_constants() -> AsymptoticConstants:
    """All uniform-model constants: rho and R values, mu, sigma^2."""
    rho1 = solve_rho(1.0)
    d1, d2 = rho_derivatives()
    w = 1.0 + rho1
    R1 = rho1 / w
    R_d1 = d1 / w**2
    R_d2 = d2 / w**2 - 2.0 * d1 * d1 / w**3
    ratio = R_d1 / R1
    mu = -ratio
    sigma2 = -R_d2 / R1 - ratio + ratio * ratio
    return AsymptoticConstants(rho1, d1, d2, R1, R_d1, R_d2, mu, sigma2)


def tau_partial_sums(order: int = 30) -> list[float]:
    """Partial sums of the mobile series at its singularity, u = v = 1.

    The limit is 1 = rho(1) + (e-2)/(e-1); the partial sums increase to it
    from below (all counts are non-negative).
    """
    from .series import cached_system

    P = cached_system(order).P
    rho1 = solve_rho(1.0)
    sums = []
    acc = 0.0
    for n in range(order + 1):
        cnt = P.count_poly(n).evaluate(1, 1)
        acc += float(cnt) / math.factorial(n) * rho1**n
        sums.append(acc)
    return sums


def check_tau(order: int = 30) -> float:
    """Evaluate the truncated mobile series at x = rho(1); approaches 1 from below."""
    return tau_partial_sums(order)[-1]


# ---------------------------------------------------------------------------
# G(n, c/n) expectation constant.
# ---------------------------------------------------------------------------


def _c_closed(c, m):
    """Closed form of the expectation constant, generic over the math backend.

    With q = (1-(c+1)e^{-c})/(1-ce^{-c}) the degree-k branch-vertex sum is the
    exponential tail e^c - e^{cq} minus its first three terms, and the path
    sum is geometric: the bracket collapses to

        1 + c + c^2/2 - e^c + e^{cq} - (c^2/2) q^2 + (c/2) e^{-c}/(1-ce^{-c}).
    """
    emc = m.exp(-c)
    w = 1 - c * emc
    q = (1 - (c + 1) * emc) / w
    bracket = 1 + c + c * c / 2 - m.exp(c) + m.exp(c * q) - (c * c / 2) * q * q + (c / 2) * emc / w
    return emc * bracket


def C_closed(c: float, dps: int | None = None):
    """Expectation constant C(c) for sparse G(n, c/n), 0 <= c < 1.

    `dps` switches to mpmath with that many significant digits.
    """
    if not 0.0 <= c < 1.0:
        raise ValueError(f"c={c} outside [0, 1)")
    if dps is None:
        return _c_closed(c, math)
    with mpmath.workdps(dps):
        return _c_closed(mpmath.mpf(c), mpmath)


def _c_series(c, m, tol):
    emc = m.exp(-c)
    q = (1 - (c + 1) * emc) / (1 - c * emc)
    s_branch = c * 0
    term = c**3 / 6
    k = 3
    kmax = 3
    while term >= tol:
        s_branch += term * (1 - q**k)
        k += 1
        term = term * c / k
        kmax = k
    s_path = c * 0
    ratio = c * emc
    term = ratio / 2
    k = 2
    while term >= tol:
        s_path += term
        term *= ratio
        k += 1
        kmax = max(kmax, k)
    return emc * (1 + c - s_branch - s_path), kmax


def C_series(c: float, tol: float = 1e-15, dps: int | None = None):
    """Same constant as `C_closed`, by direct term-by-term summation.

    Both sums stop when the next term drops below `tol`.
    """
    if not 0.0 < c < 1.0:
        raise ValueError(f"c={c} outside (0, 1)")
    if dps is None:
        return _c_series(c, math, tol)[0]
    with mpmath.workdps(dps):
        return _c_series(mpmath.mpf(c), mpmath, mpmath.mpf(tol))[0]


@dataclass(frozen=True)
class GnpConstant:
    c: float
    C_closed: float
    C_series: float
    truncation_k: int


def gnp_constant(c: float, tol: float = 1e-15) -> GnpConstant:
    closed = C_closed(c)
    series, kmax = _c_series(c, math, tol)
    return GnpConstant(c, closed, series, kmax)


def c_curve(c_min: float, c_max: float, step: float) -> list[tuple[float, float]]:
    """Table of (c, C_closed(c)) on the grid c_min, c_min+step, ..., <= c_max."""
    if not (0.0 <= c_min < c_max < 1.0):
        raise ValueError("need 0 <= c_min < c_max < 1")
    if step <= 0:
        raise ValueError("step must be positive")
    out = []
    i = 0
    while True:
        c = c_min + i * step
        if c > c_max + 1e-12:
            break
        c = min(c, c_max)
        out.append((c, C_closed(c)))
        i += 1
    return out
