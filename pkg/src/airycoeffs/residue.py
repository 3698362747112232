"""Residue-calculus oracle for the expansion coefficients.

For a rational input with simple poles and enough decay, alpha_n and beta_n
equal minus the sum of residues of the order-n rational kernels times the
input, taken at the input's own poles. The sum over the poles of a squarefree
denominator factor is computed without locating the roots, through an
extended-gcd partial fraction split, so conjugate irrational pole pairs are
handled exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .bleistein import CoeffTable
from .ring import MultiPoly, RatFunc, poly_gcd


@dataclass(frozen=True)
class KernelPair:
    """Order-n rational kernels A_n, B_n in (s, eta)."""

    n: int
    A: RatFunc
    B: RatFunc


def initial_kernel():
    s = RatFunc.var("s")
    eta = RatFunc.var("eta")
    return KernelPair(0, s / (s**2 - eta), 1 / (s**2 - eta))


def next_kernel(k):
    """Advance both kernels by -1/(s**2 - eta) * d/ds."""
    s = RatFunc.var("s")
    eta = RatFunc.var("eta")
    factor = -1 / (s**2 - eta)
    return KernelPair(k.n + 1, factor * k.A.diff("s"), factor * k.B.diff("s"))


def kernels(N):
    """KernelPair list for n = 0..N."""
    out = [initial_kernel()]
    for _ in range(N):
        out.append(next_kernel(out[-1]))
    return out


def residue_at_simple_pole(f, p):
    """Residue num(p)/den'(p) of f (rational in s) at a simple pole p.

    p must be expressible in the stored variables; irrational poles are out of
    range for this entry point and must go through oracle_alpha_beta.
    """
    p = p if isinstance(p, RatFunc) else RatFunc.const(p)
    den = RatFunc(f.den)
    if den.substitute("s", p) != 0:
        raise ValueError("point is not a root of the denominator")
    dprime = RatFunc(f.den.diff("s")).substitute("s", p)
    if dprime == 0:
        raise ValueError("multiple root: residue formula needs a simple pole")
    return RatFunc(f.num).substitute("s", p) / dprime


# -- univariate polynomials in s over the RatFunc field -----------------------


def _upoly(poly, var="s"):
    """Coefficient list in ``var``; entries are RatFuncs in the other vars."""
    if var not in poly.vars:
        return [RatFunc(poly)]
    i = poly.vars.index(var)
    rest = poly.vars[:i] + poly.vars[i + 1 :]
    buckets = {}
    for expo, c in poly.terms.items():
        key = expo[:i] + expo[i + 1 :]
        buckets.setdefault(expo[i], {})[key] = c
    top = max(buckets)
    return [
        RatFunc(MultiPoly(rest, buckets.get(e, {}))) for e in range(top + 1)
    ]


def _utrim(a):
    while a and a[-1].is_zero():
        a.pop()
    return a


def _umul(a, b):
    if not a or not b:
        return []
    out = [RatFunc.const(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return _utrim(out)


def _usub(a, b):
    n = max(len(a), len(b))
    zero = RatFunc.const(0)
    out = [
        (a[i] if i < len(a) else zero) - (b[i] if i < len(b) else zero)
        for i in range(n)
    ]
    return _utrim(out)


def _udivmod(a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    q = [RatFunc.const(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coeff = a[-1] / lead
        q[shift] = coeff
        for j, bj in enumerate(b):
            a[shift + j] = a[shift + j] - coeff * bj
        a.pop()
        _utrim(a)
        if not a:
            break
    return q, a


def _uxgcd(a, b):
    """Extended gcd over the coefficient field: (g, x, y) with x*a + y*b = g."""
    zero = [RatFunc.const(0)]
    r0, r1 = list(a), list(b)
    x0, x1 = [RatFunc.const(1)], []
    y0, y1 = [], [RatFunc.const(1)]
    while _utrim(r1):
        q, r = _udivmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, _usub(x0, _umul(q, x1))
        y0, y1 = y1, _usub(y0, _umul(q, y1))
    return r0, x0, y0


def _residue_sum(kernel_part, f0_num, q_upoly):
    """Sum of residues of kernel*f0 at the roots of the squarefree q.

    kernel_part = (numerator upoly, denominator upoly); the result is the
    coefficient of s^(deg q - 1) in (num * f0_num * P^{-1} mod q) over lc(q).
    """
    knum, kden = kernel_part
    g, _, y = _uxgcd(q_upoly, kden)
    if len(g) != 1:
        raise ValueError("kernel denominator shares a root with the input poles")
    ginv = g[0]
    inv = [c / ginv for c in y]
    u = _umul(_umul(knum, f0_num), inv)
    _, w = _udivmod(u, q_upoly)
    d = len(q_upoly) - 1
    if d == 0:
        return RatFunc.const(0)
    top = w[d - 1] if len(w) >= d else RatFunc.const(0)
    return top / q_upoly[-1]


def oracle_alpha_beta(f0, N, var="t"):
    """CoeffTable for n = 0..N from residues at the poles of rational f0.

    Requires simple poles (squarefree denominator) and decay
    deg num <= deg den - 1 so the closing contour at infinity contributes
    nothing.
    """
    f0 = f0 if isinstance(f0, RatFunc) else RatFunc.const(f0)
    if var != "s":
        f0 = f0.substitute(var, RatFunc.var("s"))
    extraneous = [v for v in f0.variables if v != "s"]
    if extraneous:
        raise ValueError(f"input must be rational in {var!r} alone, got {extraneous}")
    den = f0.den
    num = f0.num
    if num.degree("s") > den.degree("s") - 1:
        raise ValueError("decay precondition violated: deg num must be < deg den")
    sqf = poly_gcd(den, den.diff("s"))
    if not sqf.is_constant():
        raise ValueError("non-simple pole: denominator is not squarefree")
    q_upoly = _upoly(den)
    num_upoly = _upoly(num)
    alphas = []
    betas = []
    for pair in kernels(N):
        a_val = -_residue_sum((_upoly(pair.A.num), _upoly(pair.A.den)), num_upoly, q_upoly)
        b_val = -_residue_sum((_upoly(pair.B.num), _upoly(pair.B.den)), num_upoly, q_upoly)
        alphas.append(a_val)
        betas.append(b_val)
    return CoeffTable(
        alphas=tuple(alphas),
        betas=tuple(betas),
        variables=("eta",),
        source=f"residue oracle of {f0.render()}",
    )


class RationalTaylorProvider:
    """Taylor coefficients of a rational f0 about t = +-b by repeated exact
    differentiation with memoization."""

    def __init__(self, f0, bsym="b", var="t"):
        f0 = f0 if isinstance(f0, RatFunc) else RatFunc.const(f0)
        self._derivs = [f0]
        self._var = var
        self.bsym = bsym
        self.source = f0.render()
        self._pw = {}
        self._pm = {}

    def _deriv(self, k):
        while len(self._derivs) <= k:
            self._derivs.append(self._derivs[-1].diff(self._var))
        return self._derivs[k]

    def pw(self, k):
        if k not in self._pw:
            point = RatFunc.var(self.bsym)
            self._pw[k] = self._deriv(k).substitute(self._var, point) / factorial(k)
        return self._pw[k]

    def pm(self, k):
        if k not in self._pm:
            point = -RatFunc.var(self.bsym)
            value = self._deriv(k).substitute(self._var, point) / factorial(k)
            self._pm[k] = value if k % 2 == 0 else -value
        return self._pm[k]
