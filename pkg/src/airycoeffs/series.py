"""Truncated power series over an exact coefficient ring.

Coefficients may be Fractions, RatFuncs, or anything with ring arithmetic;
the stored length is the truncation contract, so trailing zeros are kept.
Orders shrink under the documented contracts and are never silently
extended.
"""

from __future__ import annotations

from fractions import Fraction


class ValuationError(ValueError):
    """Division demanded more cancellation than the numerator provides."""


class TruncSeries:
    """Coefficients c_0..c_K of a series in ``var`` truncated at order K."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs, order=None):
        coeffs = list(coeffs)
        if not coeffs and order is None:
            raise ValueError("empty series needs an explicit order")
        if order is not None:
            zero = coeffs[0] * 0 if coeffs else Fraction(0)
            if len(coeffs) < order + 1:
                coeffs = coeffs + [zero] * (order + 1 - len(coeffs))
            else:
                coeffs = coeffs[: order + 1]
        self.var = var
        self.coeffs = tuple(coeffs)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def _zero(self):
        return self.coeffs[0] * 0

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def valuation(self):
        """Index of the first nonzero coefficient; order+1 for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.order + 1

    def is_zero(self):
        return self.valuation() > self.order

    def _check_var(self, other):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check_var(other)
        n = min(self.order, other.order)
        return TruncSeries(self.var, [a + b for a, b in zip(self.coeffs, other.coeffs)], n)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check_var(other)
        n = min(self.order, other.order)
        return TruncSeries(self.var, [a - b for a, b in zip(self.coeffs, other.coeffs)], n)

    def __neg__(self):
        return TruncSeries(self.var, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check_var(other)
        n = min(self.order, other.order)
        zero = self._zero()
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.var, out)

    def scale(self, c):
        return TruncSeries(self.var, [c * a for a in self.coeffs])

    def shift(self, k=1):
        """Multiply by var**k; an exact operation, so the order grows by k."""
        zero = self._zero()
        return TruncSeries(self.var, [zero] * k + list(self.coeffs))

    def divide(self, other):
        """Quotient with exact cancellation of the divisor's valuation.

        Result order is self.order - valuation(other); divisor coefficients
        beyond its truncation are taken as zero, so the divisor is treated as
        exact through the needed order.
        """
        if not isinstance(other, TruncSeries):
            raise TypeError("series division needs a series divisor")
        self._check_var(other)
        vb = other.valuation()
        if vb > other.order:
            raise ZeroDivisionError("division by the zero series")
        va = self.valuation()
        if va < vb and not self.is_zero():
            raise ValuationError(
                f"numerator valuation {va} below divisor valuation {vb}"
            )
        target = self.order - vb
        if target < 0:
            raise ValuationError("truncation too short to cancel the valuation")
        a = list(self.coeffs[vb:])
        b = list(other.coeffs[vb:])
        zero = self._zero()
        b += [zero] * (target + 1 - len(b))
        lead = b[0]
        out = []
        for k in range(target + 1):
            acc = a[k]
            for i in range(k):
                if out[i] != 0 and b[k - i] != 0:
                    acc = acc - out[i] * b[k - i]
            out.append(acc / lead)
        return TruncSeries(self.var, out)

    def compose(self, inner):
        """self(inner); inner must have zero constant term.

        The result lives in inner's variable at inner's order; self is used
        through its stored coefficients.
        """
        if not isinstance(inner, TruncSeries):
            raise TypeError("composition needs a series inner argument")
        if inner.coeffs[0] != 0:
            raise ValueError("inner series has a nonzero constant term")
        zero = inner._zero()
        out = TruncSeries(inner.var, [zero], inner.order)
        for c in reversed(self.coeffs):
            out = out * inner
            out = TruncSeries(inner.var, (out.coeffs[0] + c,) + out.coeffs[1:])
        return out

    def revert(self):
        """Compositional inverse g with self(g) = identity up to truncation."""
        if self.coeffs[0] != 0:
            raise ValueError("reversion needs zero constant term")
        f1 = self.coeffs[1] if self.order >= 1 else self._zero()
        if f1 == 0:
            raise ValueError("reversion needs an invertible linear coefficient")
        zero = self._zero()
        one = f1 / f1
        g = [zero, one / f1] + [zero] * (self.order - 1)
        for n in range(2, self.order + 1):
            partial = TruncSeries(self.var, g[: n + 1])
            comp = TruncSeries(self.var, self.coeffs[: n + 1]).compose(partial)
            g[n] = -comp.coeffs[n] / f1
        return TruncSeries(self.var, g)

    def pow_rational(self, p, q):
        """The unique series g with g(0)=1 and g**q = self**p.

        Requires unit constant term; computed by the coefficient recurrence of
        q*f*g' = p*f'*g.
        """
        if not isinstance(p, int) or not isinstance(q, int) or q <= 0:
            raise ValueError("exponent must be integer p over positive integer q")
        if self.coeffs[0] != 1:
            raise ValueError("rational power needs constant term 1")
        zero = self._zero()
        one = self.coeffs[0]
        g = [one] + [zero] * self.order
        for n in range(1, self.order + 1):
            acc = zero
            for i in range(1, n + 1):
                fi = self.coeffs[i]
                if fi != 0 and g[n - i] != 0:
                    acc = acc + (Fraction(p * i - q * (n - i), q * n)) * fi * g[n - i]
            g[n] = acc
        return TruncSeries(self.var, g)

    # -- misc -----------------------------------------------------------------

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.var, self.coeffs[: order + 1])

    def eval_at(self, x):
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.var == other.var
            and self.order == other.order
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        if self.order > 5:
            shown += ", ..."
        return f"TruncSeries({self.var!r}, [{shown}], order={self.order})"


def identity_series(var, order, one=Fraction(1)):
    """The series for the variable itself."""
    zero = one * 0
    return TruncSeries(var, [zero, one], order)
