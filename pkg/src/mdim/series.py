"""Exact truncated power series over bivariate (u, v) polynomials.

The series are exponential in x: the stored coefficient of x^n is the
labelled-count polynomial n! * [x^n], which keeps the whole pipeline in
integer arithmetic; `coefficient(n)` divides back out to exact Fractions.
Powers of u mark leaves, powers of v mark non-leaf vertices adjacent to a
leaf, and substituting (u, v) = (y, 1/y) turns the exponent difference
deg_u - deg_v into the metric dimension mark.

The chain of builders goes: mobiles P (implicitly defined), the split
P = ux + U + V by whether the root touches a leaf, edge/vertex-rooted series
for degree-2-free trees, their unrooting S = S_dot - S_arrow/2, the
edge-subdivision substitution T = (1-x) S(x/(1-x)), and finally forests
G = exp(T - ux) (1 + v (exp(ux) - 1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

Key = tuple[int, int]  # (power of u, power of v)


class UVPoly:
    """Polynomial in (u, v) with exact coefficients; zero terms are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Key, object] | None = None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "UVPoly":
        poly = object.__new__(cls)
        poly.terms = terms
        return poly

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UVPoly) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "UVPoly(0)"
        bits = []
        for (a, b), c in sorted(self.terms.items()):
            mono = "".join(
                (f"u^{a}" if a > 1 else "u" if a == 1 else "",
                 f"v^{b}" if b > 1 else "v" if b == 1 else "")
            )
            bits.append(f"{c}{mono}" if mono else f"{c}")
        return "UVPoly(" + " + ".join(bits) + ")"

    def __add__(self, other: "UVPoly") -> "UVPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return UVPoly._raw(out)

    def __sub__(self, other: "UVPoly") -> "UVPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) - c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return UVPoly._raw(out)

    def __neg__(self) -> "UVPoly":
        return UVPoly._raw({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "UVPoly") -> "UVPoly":
        if not self.terms or not other.terms:
            return _P_ZERO
        out: dict[Key, object] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return UVPoly._raw(out)

    def scale(self, s) -> "UVPoly":
        if not s:
            return _P_ZERO
        return UVPoly._raw({k: c * s for k, c in self.terms.items()})

    def exact_div(self, d: int) -> "UVPoly":
        out: dict[Key, object] = {}
        for k, c in self.terms.items():
            if isinstance(c, int):
                q, r = divmod(c, d)
                if r:
                    out[k] = Fraction(c, d)
                else:
                    out[k] = q
            else:
                out[k] = c / d
        return UVPoly._raw(out)

    def to_fractions(self, den: int) -> dict[Key, Fraction]:
        return {k: Fraction(c) / den for k, c in self.terms.items()}

    def evaluate(self, u, v):
        """Substitute numbers for u and v."""
        return sum(c * u**a * v**b for (a, b), c in self.terms.items())

    def y_powers(self) -> dict[int, object]:
        """Coefficients after (u, v) -> (y, 1/y): key is deg_u - deg_v."""
        out: dict[int, object] = {}
        for (a, b), c in self.terms.items():
            k = a - b
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return out


_P_ZERO = UVPoly()
_P_ONE = UVPoly({(0, 0): 1})
_P_U = UVPoly({(1, 0): 1})
_P_V = UVPoly({(0, 1): 1})


class TruncatedSeries:
    """Series sum_{n<=order} c_n x^n / n! with UVPoly counts c_n."""

    __slots__ = ("order", "counts")

    def __init__(self, order: int, counts: list[UVPoly] | None = None):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.order = order
        if counts is None:
            counts = [_P_ZERO] * (order + 1)
        if len(counts) != order + 1:
            raise ValueError("counts length must be order + 1")
        self.counts = counts

    # -- access ---------------------------------------------------------
    def count_poly(self, n: int) -> UVPoly:
        """n! * [x^n]: the labelled count polynomial."""
        if not 0 <= n <= self.order:
            raise ValueError(f"n={n} outside truncation order {self.order}")
        return self.counts[n]

    def coefficient(self, n: int) -> dict[Key, Fraction]:
        """[x^n] as exact rationals keyed by (deg_u, deg_v)."""
        return self.count_poly(n).to_fractions(factorial(n))

    def y_coefficient(self, n: int) -> dict[int, Fraction]:
        """[x^n] after u=y, v=1/y, keyed by the power of y."""
        den = factorial(n)
        return {k: Fraction(c) / den for k, c in self.count_poly(n).y_powers().items()}

    def valuation(self) -> int:
        for n, c in enumerate(self.counts):
            if c:
                return n
        return self.order + 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.counts == other.counts
        )

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(order, self.counts[: order + 1])

    # -- ring operations --------------------------------------------------
    def _common_order(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        N = self._common_order(other)
        return TruncatedSeries(N, [self.counts[n] + other.counts[n] for n in range(N + 1)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        N = self._common_order(other)
        return TruncatedSeries(N, [self.counts[n] - other.counts[n] for n in range(N + 1)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [-c for c in self.counts])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        N = self._common_order(other)
        out = []
        for n in range(N + 1):
            acc = _P_ZERO
            for k in range(n + 1):
                a, b = self.counts[k], other.counts[n - k]
                if a and b:
                    acc = acc + (a * b).scale(comb(n, k))
            out.append(acc)
        return TruncatedSeries(N, out)

    def poly_mul(self, p: UVPoly) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [c * p for c in self.counts])

    def scale(self, s) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [c.scale(s) for c in self.counts])

    def shift_x(self) -> "TruncatedSeries":
        """Multiply by x (counts pick up the factor n from relabelling)."""
        out = [_P_ZERO]
        for n in range(1, self.order + 1):
            out.append(self.counts[n - 1].scale(n))
        return TruncatedSeries(self.order, out)

    def unshift_x(self) -> "TruncatedSeries":
        """Divide by x; requires zero constant term.  Last coefficient is lost."""
        if self.counts[0]:
            raise ValueError("series not divisible by x")
        out = [self.counts[n + 1].exact_div(n + 1) for n in range(self.order)]
        return TruncatedSeries(self.order - 1, out)

    def half(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [c.exact_div(2) for c in self.counts])

    def exp(self) -> "TruncatedSeries":
        """Series exponential via B_n = sum C(n-1,k-1) A_k B_{n-k}; needs A_0 = 0."""
        if self.counts[0]:
            raise ValueError("exp requires zero constant term")
        b = [_P_ONE]
        for n in range(1, self.order + 1):
            acc = _P_ZERO
            for k in range(1, n + 1):
                a = self.counts[k]
                e = b[n - k]
                if a and e:
                    acc = acc + (a * e).scale(comb(n - 1, k - 1))
            b.append(acc)
        return TruncatedSeries(self.order, b)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Composition self(inner(x)); `inner` must have zero constant term.

        Runs through ordinary coefficients with Fraction arithmetic (Horner),
        so it is exact but not tuned for large orders.
        """
        if inner.counts[0]:
            raise ValueError("composition requires inner constant term 0")
        N = self._common_order(inner)
        a = [self.counts[n].exact_div(factorial(n)) for n in range(N + 1)]
        b = [inner.counts[n].exact_div(factorial(n)) for n in range(N + 1)]
        res = [a[N]] + [_P_ZERO] * N
        for m in range(N - 1, -1, -1):
            nxt = [_P_ZERO] * (N + 1)
            for i in range(N + 1):
                if not res[i]:
                    continue
                for j in range(1, N + 1 - i):
                    if b[j]:
                        nxt[i + j] = nxt[i + j] + res[i] * b[j]
            nxt[0] = nxt[0] + a[m]
            res = nxt
        return TruncatedSeries(N, [res[n].scale(factorial(n)) for n in range(N + 1)])


def x_times(order: int, poly: UVPoly, power: int = 1) -> TruncatedSeries:
    """The series poly * x^power at the given truncation order."""
    counts = [_P_ZERO] * (order + 1)
    if power <= order:
        counts[power] = poly.scale(factorial(power))
    return TruncatedSeries(order, counts)


def one_series(order: int) -> TruncatedSeries:
    counts = [_P_ONE] + [_P_ZERO] * order
    return TruncatedSeries(order, counts)


# ---------------------------------------------------------------------------
# The generating-function chain.
# ---------------------------------------------------------------------------


def _solve_P_with_exp(order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Solve P = (u-1)x + u(1-v)x^2 + (v + (1-v)exp(-ux)) x exp(P) - xP.

    Every appearance of P on the right carries a factor x, so the x^n count
    only needs counts of order < n: the fixed point is reached coefficient by
    coefficient, updating exp(P) incrementally along the way.
    """
    N = order
    a: list[UVPoly] = [_P_ZERO] * (N + 1)  # counts of P
    e: list[UVPoly] = [_P_ONE] + [_P_ZERO] * N  # counts of exp(P)
    # q_j = j! [x^j] (v + (1-v) exp(-ux))
    q: list[UVPoly] = [_P_ONE]
    for j in range(1, N + 1):
        sign = 1 if j % 2 == 0 else -1
        q.append(UVPoly({(j, 0): sign, (j, 1): -sign}))
    base1 = UVPoly({(1, 0): 1, (0, 0): -1})  # (u - 1)
    base2 = UVPoly({(1, 0): 2, (1, 1): -2})  # 2! u(1 - v)
    for n in range(1, N + 1):
        conv = _P_ZERO
        for i in range(n):
            qe = q[i] * e[n - 1 - i]
            if qe:
                conv = conv + qe.scale(comb(n - 1, i))
        rhs = conv.scale(n) - a[n - 1].scale(n)
        if n == 1:
            rhs = rhs + base1
        elif n == 2:
            rhs = rhs + base2
        a[n] = rhs
        acc = _P_ZERO
        for k in range(1, n + 1):
            ae = a[k] * e[n - k]
            if ae:
                acc = acc + ae.scale(comb(n - 1, k - 1))
        e[n] = acc
    return TruncatedSeries(N, a), TruncatedSeries(N, e)


def solve_P(order: int) -> TruncatedSeries:
    """Mobile series P(x, u, v): rooted trees with a root half-edge and no
    degree-2 vertices; unique zero-constant-term solution of its fixed-point
    equation through the given order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    P, _ = _solve_P_with_exp(order)
    return P


def derive_U_V(P: TruncatedSeries) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Split off the single-vertex mobile: P = ux + U + V.

    U roots touch a leaf: U = vx(exp(P) - exp(P-ux) - ux).
    V roots do not:      V = x(exp(P-ux) - 1 - (P-ux)).
    """
    N = P.order
    ux = x_times(N, _P_U)
    E = P.exp()
    A = P - ux
    E2 = A.exp()
    U = (E - E2 - ux).shift_x().poly_mul(_P_V)
    V = (E2 - one_series(N) - A).shift_x()
    return U, V


def _rooted_special(
    P: TruncatedSeries,
    U: TruncatedSeries,
    V: TruncatedSeries,
    E: TruncatedSeries,
    E2: TruncatedSeries,
) -> tuple[TruncatedSeries, TruncatedSeries]:
    N = P.order
    ux = x_times(N, _P_U)
    ux2 = x_times(N, _P_U, power=2)
    one = one_series(N)
    A = P - ux
    uv = _P_U * _P_V
    s_arrow = (
        ux2
        + U.shift_x().poly_mul(_P_U).scale(2)
        + V.shift_x().poly_mul(uv).scale(2)
        + U * U
        + V * V
        + (U * V).scale(2)
    )
    one_minus_v = _P_ONE - _P_V
    tail_nonleaf = (E2 - one - A - (A * A).half()).shift_x().poly_mul(one_minus_v)
    tail_leafy = (E - one - P - (P * P).half()).shift_x().poly_mul(_P_V)
    s_dot = (
        ux
        + ux2
        + U.shift_x().poly_mul(_P_U)
        + V.shift_x().poly_mul(uv)
        + tail_nonleaf
        + tail_leafy
    )
    return s_arrow, s_dot


def rooted_special_series(
    P: TruncatedSeries, U: TruncatedSeries, V: TruncatedSeries
) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Edge-oriented-rooted and vertex-rooted series over degree-2-free trees.

    S_arrow = ux^2 + 2uxU + 2uvxV + U^2 + V^2 + 2UV (cut the marked edge into
    an ordered pair of mobiles).  S_dot splits on the degree of the marked
    vertex: 0 (isolated), 1 (cut its edge), or >= 3 with/without a leaf child.
    """
    ux = x_times(P.order, _P_U)
    E = P.exp()
    E2 = (P - ux).exp()
    return _rooted_special(P, U, V, E, E2)


def special_series(S_dot: TruncatedSeries, S_arrow: TruncatedSeries) -> TruncatedSeries:
    """Unroot: S = S_dot - S_arrow / 2 (vertices outnumber edges by one)."""
    return S_dot - S_arrow.half()


def tree_series(S: TruncatedSeries) -> TruncatedSeries:
    """All labelled trees: re-insert degree-2 vertices on every edge.

    A tree on n vertices has n-1 edges, so x^m -> x^m (1-x)^(-m+1), i.e.
    T = (1-x) S(x/(1-x)).  With counts: [x^n] S(x/(1-x)) picks up binomial
    weights C(n-1, m-1) from (1-x)^(-m).
    """
    N = S.order
    comp = [_P_ZERO] * (N + 1)
    for n in range(1, N + 1):
        acc = _P_ZERO
        nf = factorial(n)
        for m in range(1, n + 1):
            s = S.counts[m]
            if s:
                acc = acc + s.scale(nf // factorial(m) * comb(n - 1, m - 1))
        comp[n] = acc
    out = [_P_ZERO] * (N + 1)
    for n in range(1, N + 1):
        out[n] = comp[n] - comp[n - 1].scale(n)
    return TruncatedSeries(N, out)


def forest_series(T: TruncatedSeries) -> TruncatedSeries:
    """Forests: G = exp(T - ux) (1 + v (exp(ux) - 1)).

    Sets of non-trivial trees, times an optional non-empty set of isolated
    vertices carrying one balancing v (one isolated vertex is already
    resolved by its all-unreachable distance vector).
    """
    N = T.order
    ux = x_times(N, _P_U)
    core = (T - ux).exp()
    iso_counts = [_P_ZERO] + [UVPoly({(n, 1): 1}) for n in range(1, N + 1)]
    iso = TruncatedSeries(N, iso_counts)  # v (exp(ux) - 1)
    return core + core * iso


@dataclass(frozen=True)
class BetaDistribution:
    """Exact distribution of the metric dimension at size n."""

    n: int
    pmf: dict[int, Fraction]

    def mean(self) -> Fraction:
        return sum((Fraction(b) * p for b, p in self.pmf.items()), Fraction(0))

    def variance(self) -> Fraction:
        m = self.mean()
        return sum((p * (Fraction(b) - m) ** 2 for b, p in self.pmf.items()), Fraction(0))


def beta_distribution(series: TruncatedSeries, n: int) -> BetaDistribution:
    """Distribution of the mark y = u/v read off the x^n coefficient."""
    if not 1 <= n <= series.order:
        raise ValueError(f"n={n} outside series order {series.order}")
    weights = series.count_poly(n).y_powers()
    total = sum(weights.values())
    if total <= 0:
        raise ValueError(f"empty class at size {n}")
    pmf = {b: Fraction(w, total) for b, w in sorted(weights.items())}
    return BetaDistribution(n, pmf)


@dataclass(frozen=True)
class SeriesSystem:
    """All series of the chain solved at one truncation order."""

    order: int
    P: TruncatedSeries
    U: TruncatedSeries
    V: TruncatedSeries
    S_arrow: TruncatedSeries
    S_dot: TruncatedSeries
    S: TruncatedSeries
    T: TruncatedSeries
    G: TruncatedSeries


DEFAULT_ORDER = 30


def series_system(order: int = DEFAULT_ORDER) -> SeriesSystem:
    """Solve the whole chain, sharing the expensive exponentials."""
    P, E = _solve_P_with_exp(order)
    ux = x_times(order, _P_U)
    A = P - ux
    E2 = A.exp()
    U = (E - E2 - ux).shift_x().poly_mul(_P_V)
    V = (E2 - one_series(order) - A).shift_x()
    S_arrow, S_dot = _rooted_special(P, U, V, E, E2)
    S = special_series(S_dot, S_arrow)
    T = tree_series(S)
    G = forest_series(T)
    return SeriesSystem(order, P, U, V, S_arrow, S_dot, S, T, G)


_SYSTEM_CACHE: dict[int, SeriesSystem] = {}


def cached_system(order: int = DEFAULT_ORDER) -> SeriesSystem:
    sys = _SYSTEM_CACHE.get(order)
    if sys is None:
        sys = _SYSTEM_CACHE[order] = series_system(order)
    return sys
