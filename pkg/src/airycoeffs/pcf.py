"""Expansion coefficients for the Weber parabolic cylinder function U(a,x).

The saddle-point mapping is parametrized root-free by u, so the local series
of the mapped integrand stay rational in (b, u). The coefficient pairs from
the staged recursion are then rewritten as rational functions of eta = b**2
and xi = (u**4 + 4 b**2)/(4 u**2), and expanded in Maclaurin series in eta
for the small-eta regime.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, log, exp

from . import bleistein
from .ring import MultiPoly, PoleError, RatFunc
from .series import TruncSeries

_B = RatFunc.var("b")
_U = RatFunc.var("u")
_T_OF_U = (4 * _B**2 + _U**4) / (4 * _B**2 - _U**4)


def flip_bu(f):
    """The (b, u) -> (-b, -u) involution."""
    return f.substitute("b", -_B).substitute("u", -_U)


class PcfSeriesCache:
    """Append-only memo of the local series coefficients s_k and S_k."""

    def __init__(self):
        self._s = [
            (2 * _B + _U**2) / (2 * _B - _U**2),
            (2 * _B + _U**2) / (2 * _U),
        ]
        self._sqrt = [4 * _U / (2 * _B - _U**2)]

    @property
    def depth(self):
        return len(self._s) - 1

    def s(self, k):
        """Series coefficient s_k^+ of the saddle branch in powers of w - b.

        For k >= 2 the coefficient is fixed linearly by the x**k residual of
        (s**2 - 2 t s + 1) s' - x (x + 2 b) s with x = w - b.
        """
        while len(self._s) <= k:
            self._s.append(self._next_s(len(self._s)))
        return self._s[k]

    def _next_s(self, k):
        zero = RatFunc.const(0)
        one = RatFunc.const(1)
        known = self._s[:k]

        def residual_coeff(ak):
            coeffs = known + [ak]
            s = TruncSeries("x", coeffs)
            ds = TruncSeries("x", [i * c for i, c in enumerate(coeffs)][1:] + [zero])
            quad = s * s - s.scale(2 * _T_OF_U) + TruncSeries("x", [one], k)
            lhs = quad * ds
            xpoly = TruncSeries("x", [zero, 2 * _B, one], k)
            rhs = xpoly * s
            return (lhs - rhs).coeffs[k]

        r0 = residual_coeff(zero)
        r1 = residual_coeff(one)
        slope = r1 - r0
        if slope.is_zero():
            raise ArithmeticError(f"degenerate linear solve for s_{k}")
        return -r0 / slope

    def sqrt_s(self, k):
        """Series coefficient S_k of the normalized square-root branch."""
        while len(self._sqrt) <= k:
            n = len(self._sqrt)
            acc = RatFunc.const(0)
            for j in range(1, n + 1):
                acc = acc + (Fraction(3 * j, 2) - n) * self.s(j) * self._sqrt[n - j]
            self._sqrt.append(acc / self.s(0) / n)
        return self._sqrt[k]


_CACHE = PcfSeriesCache()


def s_plus_series(K):
    """s_0^+..s_K^+ as rational functions of (b, u)."""
    if K < 1:
        raise ValueError("K must be at least 1")
    return [_CACHE.s(k) for k in range(K + 1)]


def s_minus_series(K):
    """s_k^- by flipping the sign of both u and b in s_k^+."""
    return [flip_bu(c) for c in s_plus_series(K)]


def sqrt_s_series(K):
    """S_0..S_K for the square-root branch."""
    _CACHE.s(max(K, 1))
    return [_CACHE.sqrt_s(k) for k in range(K + 1)]


def p_tilde(k):
    """(pw, pm): Taylor coefficients of the normalized integrand about +-b."""
    pw = (k + 1) * _CACHE.sqrt_s(k + 1)
    pm = flip_bu(pw)
    if k % 2 == 1:
        pm = -pm
    return pw, pm


class PcfProvider:
    """Coefficient provider backed by the shared series cache."""

    bsym = "b"
    source = "pcf U(a,x)"

    def pw(self, k):
        return p_tilde(k)[0]

    def pm(self, k):
        return p_tilde(k)[1]


@dataclass(frozen=True)
class XiEtaForm:
    """A coefficient as a rational function of (eta, xi), with its (b, u)
    original retained so the defining pullback identity stays checkable."""

    value: RatFunc
    origin: RatFunc

    def verify(self):
        return pullback(self.value) == self.origin


def pullback(v):
    """Substitute eta -> b**2, xi -> (u**4 + 4 b**2)/(4 u**2)."""
    out = v.substitute("eta", _B**2)
    return out.substitute("xi", (_U**4 + 4 * _B**2) / (4 * _U**2))


# deterministic rational sample ladder for the interpolation solve
_SAMPLE_FRACTIONS = [
    Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(5, 2),
    Fraction(1, 3), Fraction(4), Fraction(7, 2), Fraction(5, 3), Fraction(5),
    Fraction(2, 3), Fraction(7, 3), Fraction(6), Fraction(9, 2), Fraction(7),
    Fraction(4, 3), Fraction(11, 2), Fraction(8), Fraction(8, 3), Fraction(9),
    Fraction(10), Fraction(13, 2), Fraction(11), Fraction(10, 3), Fraction(12),
    Fraction(13), Fraction(15, 2), Fraction(11, 3), Fraction(14), Fraction(15),
]


def _sample_points():
    # diagonal traversal so both coordinates vary early; a single-b run of
    # points cannot resolve high eta-degrees
    n = len(_SAMPLE_FRACTIONS)
    for total in range(2 * n - 1):
        for i in range(min(total, n - 1), max(0, total - n + 1) - 1, -1):
            bv = _SAMPLE_FRACTIONS[i]
            uv = _SAMPLE_FRACTIONS[total - i]
            if bv == 0 or uv == 0 or uv * uv == 2 * bv:
                continue
            yield bv, uv


def _solve_exact(rows, rhs):
    """Gaussian elimination over Fraction; returns solution or None."""
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            return None  # rank deficient: sample set too degenerate
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if len(pivots) < ncols:
        return None
    # consistency of the extra rows
    for i in range(ncols, nrows):
        if m[i][-1] != 0:
            return None
    return [m[i][-1] for i in range(ncols)]


def to_xi_eta(v, max_growth=4):
    """Rewrite a (b, u) coefficient as a rational function of (eta, xi).

    The candidate numerator over eta**m is found by exact interpolation at
    deterministic rational sample points; the result is accepted only after
    the exact pullback identity is checked, so heuristics in the candidate
    search cannot leak into the output.
    """
    v = v if isinstance(v, RatFunc) else RatFunc.const(v)
    if v.is_constant():
        return XiEtaForm(v, v)
    if flip_bu(v) != v:
        raise ValueError("coefficient is not invariant under (b,u) -> (-b,-u)")
    if len(v.den.terms) != 1:
        raise ValueError("denominator is not a monomial; no eta-power form")
    deg_b = v.den.degree("b")
    deg_u = v.den.degree("u")
    m = (deg_b + 1) // 2
    J = (deg_u + 1) // 2
    I = max(m, (v.num.degree("b") + 1) // 2)

    for _ in range(max_growth):
        candidate = _interpolate(v, m, I, J)
        if candidate is not None and pullback(candidate) == v:
            return XiEtaForm(candidate, v)
        m += 1
        I += 2
        J += 1
    raise ValueError("candidate search failed at the configured degree bound")


def _interpolate(v, m, I, J):
    monomials = [(i, j) for i in range(I + 1) for j in range(J + 1)]
    needed = len(monomials) + 6
    rows, rhs = [], []
    seen = set()
    for bv, uv in _sample_points():
        ev = bv * bv
        xv = (uv**4 + 4 * bv * bv) / (4 * uv * uv)
        if (ev, xv) in seen:
            # u and 2b/u parametrize the same (eta, xi) point
            continue
        try:
            val = v.evaluate({"b": bv, "u": uv})
        except PoleError:
            continue
        seen.add((ev, xv))
        rows.append([ev**i * xv**j for i, j in monomials])
        rhs.append(val * ev**m)
        if len(rows) >= needed:
            break
    if len(rows) < needed:
        return None
    sol = _solve_exact(rows, rhs)
    if sol is None:
        return None
    num = MultiPoly(("eta", "xi"), {(i, j): c for (i, j), c in zip(monomials, sol)})
    den = MultiPoly(("eta",), {(m,): Fraction(1)})
    return RatFunc(num, den)


@lru_cache(maxsize=None)
def pcf_coeff_table(N):
    """CoeffTable of alpha_0..alpha_N, beta_0..beta_N in (eta, xi)."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    raw = bleistein.alpha_beta(PcfProvider(), N)
    alphas = tuple(to_xi_eta(a).value for a in raw.alphas)
    betas = tuple(to_xi_eta(bt).value for bt in raw.betas)
    return bleistein.CoeffTable(
        alphas=alphas, betas=betas, variables=("eta", "xi"), source="pcf U(a,x)"
    )


def pcf_coeff_table_bu(N):
    """The same table before conversion, in (b, u)."""
    return bleistein.alpha_beta(PcfProvider(), N)


# -- Maclaurin pipeline in eta -------------------------------------------------


@lru_cache(maxsize=None)
def eta_of_w_series(M):
    """eta(w) = w * E(w)**(2/3) with w = theta**2, exact rationals."""
    E = TruncSeries(
        "w",
        [Fraction(3 * 2 ** (2 * mm - 1), factorial(2 * mm + 1)) for mm in range(1, M + 2)],
    )
    return E.pow_rational(2, 3).shift(1).truncate(M)


@lru_cache(maxsize=None)
def xi_eta_series(M):
    """xi as a Maclaurin series in eta, through order M."""
    if M < 1:
        raise ValueError("M must be at least 1")
    W = M + 1
    E = TruncSeries(
        "w",
        [Fraction(3 * 2 ** (2 * mm - 1), factorial(2 * mm + 1)) for mm in range(1, W + 2)],
    )
    eta_w = E.pow_rational(2, 3).shift(1).truncate(W)
    w_eta = TruncSeries("eta", eta_w.coeffs).revert()
    cosh_w = TruncSeries("w", [Fraction(1, factorial(2 * mm)) for mm in range(W + 1)])
    sinh_over = TruncSeries("w", [Fraction(1, factorial(2 * mm + 1)) for mm in range(W + 1)])
    H = cosh_w.divide(sinh_over)  # theta*coth(theta) in w
    G = E.pow_rational(1, 3).truncate(W) * H
    xi = TruncSeries("eta", G.coeffs).compose(w_eta)
    return xi.truncate(M)


@dataclass(frozen=True)
class EtaMaclaurin:
    """Maclaurin series in eta of one expansion coefficient."""

    coeffs: TruncSeries
    target: str


def _poly_at_xi_series(poly, xi_series, order):
    """Evaluate a polynomial in (eta, xi) at xi = xi(eta), exactly."""
    by_j = {}
    for expo, c in poly.terms.items():
        i = expo[poly.vars.index("eta")] if "eta" in poly.vars else 0
        j = expo[poly.vars.index("xi")] if "xi" in poly.vars else 0
        by_j.setdefault(j, {})[i] = c
    zero = Fraction(0)
    out = TruncSeries("eta", [zero], order)
    for j in sorted(by_j, reverse=True):
        out = out * xi_series
        row = by_j[j]
        coeffs = [row.get(i, zero) for i in range(order + 1)]
        out = out + TruncSeries("eta", coeffs)
    return out


def maclaurin_of_coeff(c, M=16, target=""):
    """Expand a coefficient (eta, xi rational form) in powers of eta.

    The division by the denominator series cancels its eta-valuation exactly;
    a valuation violation signals a wrong coefficient upstream.
    """
    value = c.value if isinstance(c, XiEtaForm) else c
    value = value if isinstance(value, RatFunc) else RatFunc.const(value)
    stray = [v for v in value.variables if v not in ("eta", "xi")]
    if stray:
        raise ValueError(f"coefficient has unexpected variables {stray}")
    pad = value.den.degree("eta") + value.den.degree("xi")
    W = M + pad
    xs = xi_eta_series(W)
    num = _poly_at_xi_series(value.num, xs, W)
    den = _poly_at_xi_series(value.den, xs, W)
    series = num.divide(den).truncate(M)
    return EtaMaclaurin(coeffs=series, target=target or value.render())


@dataclass(frozen=True)
class RadiusEstimate:
    """Ratio-test estimate of the radius of convergence, with a least-squares
    fit of log|c_k| over the tail as a cross-diagnostic."""

    ratio: float
    fit: float
    terms: int


def radius_estimate(m):
    """Ratio-test radius |c_{M-1}/c_M| plus a tail fit."""
    coeffs = m.coeffs.coeffs
    M = len(coeffs) - 1
    if M < 2 or coeffs[M] == 0 or coeffs[M - 1] == 0:
        raise ValueError("zero trailing coefficients: no ratio estimate")
    ratio = abs(float(coeffs[M - 1] / coeffs[M]))
    tail = [(k, log(abs(float(c)))) for k, c in enumerate(coeffs) if c != 0]
    tail = tail[len(tail) // 2 :]
    n = len(tail)
    sx = sum(k for k, _ in tail)
    sy = sum(y for _, y in tail)
    sxx = sum(k * k for k, _ in tail)
    sxy = sum(k * y for k, y in tail)
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    return RadiusEstimate(ratio=ratio, fit=exp(-slope), terms=M + 1)
