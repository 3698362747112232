"""Coefficient algorithm for compound Airy expansions.

From the Taylor coefficients of f(t) and f(-t) about the positive saddle
t = b, produce the expansion coefficient pairs (alpha_n, beta_n) through the
even/odd split, the gamma/delta starting weights, and the two-term stage
advance. All arithmetic is exact over RatFunc, so small-b instability never
arises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import RatFunc


def _lift(x):
    return x if isinstance(x, RatFunc) else RatFunc.const(x)


@dataclass(frozen=True)
class CoeffTable:
    """Expansion coefficients alpha_0..alpha_N, beta_0..beta_N."""

    alphas: tuple
    betas: tuple
    variables: tuple
    source: str

    def __post_init__(self):
        if len(self.alphas) != len(self.betas):
            raise ValueError("alpha and beta lists must have equal length")

    @property
    def order(self):
        return len(self.alphas) - 1


@dataclass(frozen=True)
class GammaDeltaState:
    """Stage-n weights gamma_k^{(n)}, delta_k^{(n)} for k = 0..K_n."""

    n: int
    gamma: tuple
    delta: tuple

    def __post_init__(self):
        if len(self.gamma) != len(self.delta):
            raise ValueError("gamma and delta lists must have equal length")

    @property
    def depth(self):
        return len(self.gamma) - 1


class ListProvider:
    """Taylor coefficients given as explicit lists."""

    def __init__(self, pw_list, pm_list, bsym="b", source="lists"):
        self._pw = [_lift(c) for c in pw_list]
        self._pm = [_lift(c) for c in pm_list]
        self.bsym = bsym
        self.source = source

    def pw(self, k):
        return self._pw[k] if k < len(self._pw) else RatFunc.const(0)

    def pm(self, k):
        return self._pm[k] if k < len(self._pm) else RatFunc.const(0)


def split_even_odd(provider, K):
    """Even/odd halves f_k^e, f_k^o of the two Taylor coefficient streams."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    half = Fraction(1, 2)
    fe, fo = [], []
    for k in range(K + 1):
        pw = _lift(provider.pw(k))
        pm = _lift(provider.pm(k))
        fe.append(half * (pw + pm))
        fo.append(half * (pw - pm))
    return fe, fo


def oe_transform(fo, bsym="b"):
    """Coefficients of f_o(t)/t about t=b: b*f_k^{o,e} = f_k^o - f_{k-1}^{o,e}."""
    bvar = RatFunc.var(bsym)
    out = []
    prev = RatFunc.const(0)
    for fk in fo:
        cur = (_lift(fk) - prev) / bvar
        out.append(cur)
        prev = cur
    return out


def init_gamma_delta(fe, foe, bsym="b", K=None):
    """Starting weights: the even/odd coefficients regrouped in powers of
    t**2 - b**2.

    gamma_k sums (-1)^{k-j} j (2k-j-1)! / ((2b)^{2k-j} k! (k-j)!) f_j^e over
    j = 1..k, with gamma_0 = f_0^e; delta likewise from f^{o,e}. The rational
    factor is updated incrementally per (k, j) step.
    """
    if K is None:
        K = len(fe) - 1
    if len(fe) < K + 1 or len(foe) < K + 1:
        raise ValueError("coefficient lists shorter than requested depth")
    bvar = RatFunc.var(bsym)
    two_b = 2 * bvar
    gamma = [_lift(fe[0])]
    delta = [_lift(foe[0])]
    for k in range(1, K + 1):
        acc_g = RatFunc.const(0)
        acc_d = RatFunc.const(0)
        c = Fraction(1)            # c(k, k) = 1
        power = two_b**k           # (2b)^{2k-j} at j = k
        j = k
        while j >= 1:
            term = c / power
            acc_g = acc_g + term * _lift(fe[j])
            acc_d = acc_d + term * _lift(foe[j])
            # step j -> j-1: c(k,j-1)/c(k,j) = -(j-1)(2k-j)/(j(k-j+1))
            if j > 1:
                c = c * Fraction(-(j - 1) * (2 * k - j), j * (k - j + 1))
                power = power * two_b
            j -= 1
        gamma.append(acc_g)
        delta.append(acc_d)
    return GammaDeltaState(0, tuple(gamma), tuple(delta))


def advance(state, bsym="b"):
    """One stage of the two-term recursion; the depth shrinks by two."""
    K = state.depth
    if K < 2:
        raise ValueError("insufficient truncation depth for a stage advance")
    b2 = RatFunc.var(bsym) ** 2
    gamma = tuple(
        (2 * k + 1) * state.delta[k + 1] + 2 * (k + 1) * b2 * state.delta[k + 2]
        for k in range(K - 1)
    )
    delta = tuple(2 * (k + 1) * state.gamma[k + 2] for k in range(K - 1))
    return GammaDeltaState(state.n + 1, gamma, delta)


def alpha_beta(provider, N):
    """Coefficient table alpha_0..alpha_N, beta_0..beta_N.

    Requests exactly the provider entries k = 0..2N that the stage recursion
    consumes.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    K = 2 * N
    fe, fo = split_even_odd(provider, K)
    foe = oe_transform(fo, provider.bsym)
    state = init_gamma_delta(fe, foe, provider.bsym, K)
    alphas = [state.gamma[0]]
    betas = [state.delta[0]]
    for _ in range(N):
        state = advance(state, provider.bsym)
        alphas.append(state.gamma[0])
        betas.append(state.delta[0])
    variables = set()
    for entry in alphas + betas:
        variables.update(entry.variables)
    return CoeffTable(
        alphas=tuple(alphas),
        betas=tuple(betas),
        variables=tuple(sorted(variables)),
        source=getattr(provider, "source", provider.__class__.__name__),
    )
