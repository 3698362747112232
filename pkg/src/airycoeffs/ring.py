"""Exact arithmetic kernel: rationals, sparse multivariate polynomials and
canonical rational functions.

Every value is immutable and canonical, so ``==`` is mathematical equality.
A rational function is stored as a coprime numerator/denominator pair with
integer coefficients of joint content 1 and a positive leading denominator
coefficient under graded-lex order; this makes the representation unique.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

Rational = Fraction

# Fixed global variable order; unknown names sort after these, alphabetically.
VAR_ORDER = ("s", "t", "w", "b", "u", "eta", "xi")
_VAR_RANK = {name: i for i, name in enumerate(VAR_ORDER)}


class PoleError(ZeroDivisionError):
    """Evaluation or substitution hit a zero denominator."""


def _var_key(name):
    rank = _VAR_RANK.get(name)
    return (0, rank, "") if rank is not None else (1, 0, name)


def _frac_gcd(a, b):
    """Nonnegative gcd of two Fractions: gcd of numerators over lcm of
    denominators."""
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    num = _igcd(a.numerator, b.numerator)
    den = (a.denominator * b.denominator) // _igcd(a.denominator, b.denominator)
    return Fraction(num, den)


class MultiPoly:
    """Sparse multivariate polynomial over Fraction.

    ``vars`` is the sorted tuple of variables actually occurring; ``terms``
    maps exponent tuples (same length as ``vars``) to nonzero coefficients.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms):
        cleaned = {}
        nvars = len(variables)
        used = [False] * nvars
        for expo, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if len(expo) != nvars:
                raise ValueError("exponent length does not match variables")
            cleaned[tuple(expo)] = coeff
            for i, e in enumerate(expo):
                if e:
                    used[i] = True
        keep = [i for i in range(nvars) if used[i]]
        order = sorted(keep, key=lambda i: _var_key(variables[i]))
        self.vars = tuple(variables[i] for i in order)
        self.terms = {tuple(expo[i] for i in order): c for expo, c in cleaned.items()}
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, value):
        return cls((), {(): Fraction(value)})

    @classmethod
    def var(cls, name):
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def from_terms(cls, variables, terms):
        """Sum duplicate exponent entries instead of requiring uniqueness."""
        acc = {}
        for expo, coeff in terms:
            expo = tuple(expo)
            acc[expo] = acc.get(expo, Fraction(0)) + Fraction(coeff)
        return cls(variables, acc)

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.vars

    def constant_value(self):
        if self.vars:
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree(self, name):
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def min_degree(self, name):
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return min(e[i] for e in self.terms)

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        expo = max(self.terms, key=lambda e: (sum(e), e))
        return expo, self.terms[expo]

    def leading_coeff(self):
        if self.is_zero():
            return Fraction(0)
        return self.leading()[1]

    def content(self):
        """Nonnegative Fraction content (0 for the zero polynomial)."""
        c = Fraction(0)
        for coeff in self.terms.values():
            c = _frac_gcd(c, coeff)
            if c == 1:
                break
        return c

    # -- alignment ---------------------------------------------------------

    def _aligned(self, other):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        union = sorted(set(self.vars) | set(other.vars), key=_var_key)
        pos = {v: i for i, v in enumerate(union)}
        n = len(union)

        def remap(poly):
            idx = [pos[v] for v in poly.vars]
            out = {}
            for expo, c in poly.terms.items():
                full = [0] * n
                for i, e in zip(idx, expo):
                    full[i] = e
                out[tuple(full)] = c
            return out

        return tuple(union), remap(self), remap(other)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vs, a, b = self._aligned(other)
        out = dict(a)
        for expo, c in b.items():
            out[expo] = out.get(expo, Fraction(0)) + c
        return MultiPoly(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return MultiPoly.const(0)
        vs, a, b = self._aligned(other)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                acc = out.get(key)
                out[key] = c1 * c2 if acc is None else acc + c1 * c2
        return MultiPoly(vs, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power requires a nonnegative integer")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, factor):
        factor = Fraction(factor)
        if factor == 0:
            return MultiPoly.const(0)
        return MultiPoly(self.vars, {e: c * factor for e, c in self.terms.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and evaluation --------------------------------------------

    def diff(self, name):
        if name not in self.vars:
            return MultiPoly.const(0)
        i = self.vars.index(name)
        out = {}
        for expo, c in self.terms.items():
            e = expo[i]
            if e == 0:
                continue
            new = list(expo)
            new[i] = e - 1
            key = tuple(new)
            out[key] = out.get(key, Fraction(0)) + c * e
        return MultiPoly(self.vars, out)

    def eval_frac(self, assignment):
        """Evaluate with a full Fraction assignment."""
        total = Fraction(0)
        for expo, c in self.terms.items():
            term = c
            for v, e in zip(self.vars, expo):
                if e:
                    term *= Fraction(assignment[v]) ** e
            total += term
        return total

    def subst(self, mapping):
        """Substitute variables by RatFunc values; unmapped ones stay."""
        result = RatFunc.const(0)
        for expo, c in self.terms.items():
            term = RatFunc.const(c)
            for v, e in zip(self.vars, expo):
                if e:
                    val = mapping.get(v)
                    if val is None:
                        val = RatFunc.var(v)
                    term = term * val**e
            result = result + term
        return result

    def __repr__(self):
        return f"MultiPoly({render_poly(self)!r})"


# -- polynomial division and gcd --------------------------------------------


def try_div(f, g):
    """Exact quotient f/g, or None when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return MultiPoly.const(0)
    if g.is_constant():
        return f.scale(1 / g.constant_value())
    vs, fa, ga = f._aligned(g)
    g_lead = max(ga, key=lambda e: (sum(e), e))
    g_lc = ga[g_lead]
    rem = dict(fa)
    quot = {}
    while rem:
        r_lead = max(rem, key=lambda e: (sum(e), e))
        diff = tuple(a - b for a, b in zip(r_lead, g_lead))
        if any(d < 0 for d in diff):
            return None
        coeff = rem[r_lead] / g_lc
        quot[diff] = coeff
        for expo, c in ga.items():
            key = tuple(a + b for a, b in zip(diff, expo))
            val = rem.get(key, Fraction(0)) - coeff * c
            if val == 0:
                rem.pop(key, None)
            else:
                rem[key] = val
    return MultiPoly(vs, quot)


def div_exact(f, g):
    q = try_div(f, g)
    if q is None:
        raise ArithmeticError("inexact polynomial division")
    return q


def _normalize_sign(p):
    if p.is_zero():
        return p
    if p.leading_coeff() < 0:
        return -p
    return p


def _primitive(p):
    """(content, primitive part with positive leading coefficient)."""
    if p.is_zero():
        return Fraction(0), p
    c = p.content()
    pp = p.scale(1 / c)
    if pp.leading_coeff() < 0:
        return -c, -pp
    return c, pp


def _to_univar(p, name):
    """Coefficient list in ``name`` (index = exponent), entries MultiPoly."""
    if name not in p.vars:
        return [p]
    i = p.vars.index(name)
    rest = p.vars[:i] + p.vars[i + 1 :]
    buckets = {}
    for expo, c in p.terms.items():
        e = expo[i]
        key = expo[:i] + expo[i + 1 :]
        buckets.setdefault(e, {})[key] = c
    top = max(buckets)
    return [
        MultiPoly(rest, buckets.get(e, {})) for e in range(top + 1)
    ]


def _from_univar(coeffs, name):
    x = MultiPoly.var(name)
    total = MultiPoly.const(0)
    power = MultiPoly.const(1)
    for c in coeffs:
        if not c.is_zero():
            total = total + c * power
        power = power * x
    return total


def _trim(coeffs):
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _list_content(coeffs):
    """gcd of a list of polynomials (content of a univariate view)."""
    acc = MultiPoly.const(0)
    for c in coeffs:
        acc = poly_gcd(acc, c)
        if acc.is_constant() and not acc.is_zero() and acc.constant_value() == 1:
            break
    return acc


def _pseudo_rem(A, B):
    """Pseudo-remainder of coefficient lists A mod B (prem)."""
    A = list(A)
    dB = len(B) - 1
    lB = B[-1]
    while len(A) - 1 >= dB and _trim(A):
        if not A:
            break
        dA = len(A) - 1
        if dA < dB:
            break
        lead = A[-1]
        shift = dA - dB
        A = [lB * c for c in A[:-1]]
        for j in range(dB):
            A[shift + j] = A[shift + j] - lead * B[j]
        _trim(A)
    return A


def poly_gcd(f, g):
    """gcd with the integer-content convention: result is the rational-content
    gcd times the primitive gcd, sign-normalized positive."""
    if f.is_zero():
        return _normalize_sign(g)
    if g.is_zero():
        return _normalize_sign(f)
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(_frac_gcd(f.content(), g.content()))
    if f == g or f == -g:
        return _normalize_sign(f)

    common = sorted(set(f.vars) & set(g.vars), key=_var_key)
    if not common:
        return MultiPoly.const(_frac_gcd(f.content(), g.content()))

    # monomial fast path
    for mono, other in ((f, g), (g, f)):
        if len(mono.terms) == 1:
            expo = next(iter(mono.terms))
            out_vars = []
            out_expo = []
            for v, e in zip(mono.vars, expo):
                m = min(e, other.min_degree(v))
                if m:
                    out_vars.append(v)
                    out_expo.append(m)
            c = _frac_gcd(mono.content(), other.content())
            return MultiPoly(tuple(out_vars), {tuple(out_expo): c})

    # main variable: the common one with the smallest minimum degree
    main = min(common, key=lambda v: (min(f.degree(v), g.degree(v)), _var_key(v)))
    F = _to_univar(f, main)
    G = _to_univar(g, main)
    cF = _list_content(F)
    cG = _list_content(G)
    F = [div_exact(c, cF) for c in F]
    G = [div_exact(c, cG) for c in G]
    cont = poly_gcd(cF, cG)

    if len(F) < len(G):
        F, G = G, F
    while True:
        G = _trim(G)
        if not G:
            last = F
            break
        R = _pseudo_rem(F, G)
        F, G = G, R
        if G:
            cR = _list_content(G)
            G = [div_exact(c, cR) for c in G]
    if len(last) == 1:
        # PRS collapsed to a coefficient: no nonconstant common factor in main
        pp = MultiPoly.const(1)
    else:
        c_last = _list_content(last)
        pp = _from_univar([div_exact(c, c_last) for c in last], main)
    result = _normalize_sign(cont * pp)
    return result


def squarefree_decomposition(p):
    """[(factor, multiplicity)] with product equal to p up to content.

    Used only for display; factors are squarefree and pairwise coprime.
    """
    if p.is_zero() or p.is_constant():
        return []
    out = []
    # strip the monomial part first
    for v in p.vars:
        m = p.min_degree(v)
        if m:
            out.append((MultiPoly.var(v), m))
            p = div_exact(p, MultiPoly((v,), {(m,): Fraction(1)}))
    _, p = _primitive(p)
    i = 1
    while not p.is_constant():
        g = p
        for v in p.vars:
            g = poly_gcd(g, p.diff(v))
        _, g = _primitive(g)
        w = div_exact(p, g)
        _, w = _primitive(w)
        y = poly_gcd(w, g)
        _, y = _primitive(y)
        a = div_exact(w, y)
        if not a.is_constant():
            out.append((_primitive(a)[1], i))
        p = g
        i += 1
    return out


# -- rendering ---------------------------------------------------------------


def _render_coeff(c, first):
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    body = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
    return sign, body


def render_poly(p, latex=False):
    if p.is_zero():
        return "0"
    times = "" if latex else "*"
    pieces = []
    first = True
    for expo in sorted(p.terms, key=lambda e: (sum(e), e), reverse=True):
        c = p.terms[expo]
        sign, mag = _render_coeff(c, first)
        factors = []
        for v, e in zip(p.vars, expo):
            if e == 0:
                continue
            name = f"\\{v}" if latex and v in ("eta", "xi", "theta") else v
            if e == 1:
                factors.append(name)
            elif latex:
                factors.append(f"{name}^{{{e}}}")
            else:
                factors.append(f"{name}^{e}")
        sep = " " if latex else "*"
        if not factors:
            body = mag
        elif mag == "1":
            body = sep.join(factors)
        else:
            body = mag + sep + sep.join(factors)
        pieces.append(sign + body)
        first = False
    return "".join(pieces)


def _render_factored(p, latex=False, bare_single=False):
    """Render with content extracted and repeated factors as powers."""
    if p.is_zero():
        return "0"
    if p.is_constant():
        sign, mag = _render_coeff(p.constant_value(), True)
        return sign + mag
    cont, pp = _primitive(p)
    factors = squarefree_decomposition(pp)
    if bare_single and cont == 1 and factors == [(pp, 1)]:
        return render_poly(p, latex=latex)
    times = " " if latex else "*"
    parts = []
    if cont != 1 or (cont == 1 and not factors):
        if cont == -1 and factors:
            parts.append("-")
        else:
            sign, mag = _render_coeff(cont, True)
            parts.append(sign + mag + (times if factors else ""))
    rendered = []
    for fac, mult in factors:
        core = render_poly(fac, latex=latex)
        atomic = len(fac.terms) == 1 and fac.leading_coeff() == 1
        if mult == 1:
            rendered.append(core if atomic else f"({core})")
        else:
            base = core if atomic and fac.total_degree() == 1 else f"({core})"
            if latex:
                rendered.append(f"{base}^{{{mult}}}")
            else:
                rendered.append(f"{base}^{mult}")
    parts.append(times.join(rendered))
    return "".join(parts)


class RatFunc:
    """Canonical rational function: coprime integer num/den of joint content 1,
    denominator leading coefficient positive."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = MultiPoly.const(num)
        if den is None:
            den = MultiPoly.const(1)
        elif isinstance(den, (int, Fraction)):
            den = MultiPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num = MultiPoly.const(0)
            den = MultiPoly.const(1)
        else:
            g = poly_gcd(num, den)
            if not (g.is_constant() and g.constant_value() == 1):
                num = div_exact(num, g)
                den = div_exact(den, g)
            # joint integer scaling with content 1
            lcm = 1
            for c in list(num.terms.values()) + list(den.terms.values()):
                lcm = lcm * c.denominator // _igcd(lcm, c.denominator)
            ig = 0
            for c in list(num.terms.values()) + list(den.terms.values()):
                ig = _igcd(ig, abs((c * lcm).numerator))
            factor = Fraction(lcm, ig)
            if factor != 1:
                num = num.scale(factor)
                den = den.scale(factor)
            if den.leading_coeff() < 0:
                num = -num
                den = -den
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def const(cls, value):
        return cls(MultiPoly.const(value))

    @classmethod
    def var(cls, name):
        return cls(MultiPoly.var(name))

    # -- queries --------------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.constant_value() / self.den.constant_value()

    @property
    def variables(self):
        return tuple(sorted(set(self.num.vars) | set(self.den.vars), key=_var_key))

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other)
        if isinstance(other, MultiPoly):
            return RatFunc(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        out._hash = None
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.const(0)
        # cross-cancel before multiplying to keep intermediates small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if _is_unit(g1) else div_exact(self.num, g1)
        d2 = other.den if _is_unit(g1) else div_exact(other.den, g1)
        n2 = other.num if _is_unit(g2) else div_exact(other.num, g2)
        d1 = self.den if _is_unit(g2) else div_exact(self.den, g2)
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFunc(other.den, other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("rational function power requires an integer")
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("zero to a negative power")
            return RatFunc(self.den**(-n), self.num**(-n))
        return RatFunc(self.num**n, self.den**n)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- calculus ---------------------------------------------------------------

    def diff(self, name):
        """Partial derivative by the quotient rule."""
        n, d = self.num, self.den
        return RatFunc(n.diff(name) * d - n * d.diff(name), d * d)

    def substitute(self, name, value):
        """Replace ``name`` by a rational function, exactly."""
        value = self._coerce(value)
        mapping = {name: value}
        num = self.num.subst(mapping)
        den = self.den.subst(mapping)
        if den.is_zero():
            raise PoleError("denominator vanishes identically after substitution")
        return num / den

    def evaluate(self, assignment):
        """Exact value at a full Fraction assignment."""
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise ValueError(f"unassigned variables: {missing}")
        den = self.den.eval_frac(assignment)
        if den == 0:
            raise PoleError("pole hit: denominator vanishes at the point")
        return self.num.eval_frac(assignment) / den

    # -- rendering ---------------------------------------------------------------

    def render(self, latex=False):
        if self.den.is_constant() and self.den.constant_value() == 1:
            if self.num.is_constant() or len(self.num.terms) == 1:
                return render_poly(self.num, latex=latex)
            cont, pp = _primitive(self.num)
            if cont == 1 and squarefree_decomposition(pp) == [(pp, 1)]:
                return render_poly(self.num, latex=latex)
            return _render_factored(self.num, latex=latex)
        top = _render_factored(self.num, latex=latex, bare_single=latex)
        bottom = _render_factored(self.den, latex=latex, bare_single=latex)
        if latex:
            return f"\\frac{{{top}}}{{{bottom}}}"
        return f"{top}/{bottom}" if _is_atomic(bottom) else f"{top}/({bottom})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RatFunc({self.render()!r})"


def _is_unit(g):
    return g.is_constant() and g.constant_value() == 1


def _is_atomic(rendered):
    """True when a rendered denominator binds tighter than '/'."""
    depth = 0
    for i, ch in enumerate(rendered):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and (ch in "*/" or (ch in "+-" and i > 0)):
            return False
    return True


# -- structured operations used across modules -------------------------------


def arith(a, b, op):
    """Field operation dispatch: op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def even_power_rewrite(f, name, new_name):
    """Rewrite a rational function even in ``name`` via name**2 -> new_name.

    Numerator and denominator must each be even in ``name``, or both odd;
    otherwise the function is not a function of name**2 and a ValueError is
    raised.
    """
    f = f if isinstance(f, RatFunc) else RatFunc(f)

    def parity(poly):
        if name not in poly.vars:
            return 0
        i = poly.vars.index(name)
        pars = {e[i] % 2 for e in poly.terms}
        if len(pars) > 1:
            return None
        return pars.pop()

    pn, pd = parity(f.num), parity(f.den)
    if pn is None or pd is None or pn != pd:
        raise ValueError(f"not a rational function of {name}^2")
    if new_name in f.num.vars or new_name in f.den.vars:
        raise ValueError(f"target variable {new_name!r} already occurs")
    num, den = f.num, f.den
    if pn == 1:
        x = MultiPoly.var(name)
        num = num * x
        den = den * x

    def halve(poly):
        if name not in poly.vars:
            return poly
        i = poly.vars.index(name)
        out_vars = poly.vars[:i] + (new_name,) + poly.vars[i + 1 :]
        out = {}
        for expo, c in poly.terms.items():
            e = list(expo)
            e[i] //= 2
            out[tuple(e)] = c
        return MultiPoly(out_vars, out)

    return RatFunc(halve(num), halve(den))


# -- parsing -------------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ValueError(f"parse error at position {self.pos}: {msg}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def expr(self):
        node = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                node = node + self.term()
            elif ch == "-":
                self.pos += 1
                node = node - self.term()
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            ch = self.peek()
            if ch == "*" and not self.text.startswith("**", self.pos):
                self.pos += 1
                node = node * self.unary()
            elif ch == "/":
                self.pos += 1
                node = node / self.unary()
            else:
                return node

    def unary(self):
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        if self.peek() == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        ch = self.peek()
        if ch == "^" or self.text.startswith("**", self.pos):
            self.pos += 2 if self.text.startswith("**", self.pos) else 1
            neg = False
            if self.peek() == "-":
                neg = True
                self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                if self.peek() == "-":
                    neg = not neg
                    self.pos += 1
                n = self.take_int()
                if self.peek() != ")":
                    self.error("expected ')' after exponent")
                self.pos += 1
            else:
                n = self.take_int()
            return base ** (-n if neg else n)
        return base

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return node
        if ch.isdigit():
            return RatFunc.const(self.take_int())
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            return RatFunc.var(self.text[start : self.pos])
        self.error(f"unexpected character {ch!r}")


def parse_ratfunc(text):
    """Parse the plain infix format back into a canonical RatFunc."""
    parser = _Parser(text)
    node = parser.expr()
    if parser.peek():
        parser.error("trailing input")
    return node
