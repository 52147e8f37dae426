"""Exact polynomial and rational-function algebra over Q.

UniPoly is dense (coefficient list, lowest degree first); MultiPoly is sparse
(exponent-vector -> coefficient).  RatFunc wraps a numerator/denominator pair
of either kind.  Everything is immutable and exact.

Text form: a sum of terms ``c*x^i*y^j`` with rational c written "p/q"; the
parser accepts the same grammar and ignores whitespace.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .exactmath import format_rational, is_rational_square


class NonExactDivision(ArithmeticError):
    """exact_div got a divisor that does not divide evenly."""


class EvaluationAtPole(ZeroDivisionError):
    """A rational function was evaluated where its denominator vanishes."""


def _frac(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over Q; coefficients lowest degree first."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.var = var
        self.coeffs = tuple(cs)

    # -- construction helpers --
    @classmethod
    def zero(cls, var: str) -> "UniPoly":
        return cls(var, ())

    @classmethod
    def const(cls, var: str, c) -> "UniPoly":
        return cls(var, (c,))

    @classmethod
    def x(cls, var: str) -> "UniPoly":
        return cls(var, (0, 1))

    @classmethod
    def from_coeff_map(cls, var: str, mapping) -> "UniPoly":
        if not mapping:
            return cls.zero(var)
        n = max(mapping)
        cs = [Fraction(0)] * (n + 1)
        for k, v in mapping.items():
            cs[k] = _frac(v)
        return cls(var, cs)

    # -- basic queries --
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def _check_var(self, other: "UniPoly"):
        if self.var != other.var and self.coeffs and other.coeffs:
            if self.degree() > 0 and other.degree() > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            self._check_var(other)
            return other
        return UniPoly.const(self.var, other)

    # -- ring operations --
    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self.var, [self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = _frac(other)
            return UniPoly(self.var, [a * c for a in self.coeffs])
        self._check_var(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return UniPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = UniPoly.const(self.var, 1)
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def divmod(self, other: "UniPoly"):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return UniPoly.zero(self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lead = o.leading()
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= c * b
            rem.pop()
        return UniPoly(self.var, quot), UniPoly(self.var, rem)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise NonExactDivision(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs and (
                self.var == other.var or self.degree() < 1 or other.degree() < 1)
        if isinstance(other, (int, Fraction)):
            return self.degree() < 1 and (self.leading() if self.coeffs else Fraction(0)) == _frac(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.var if self.degree() > 0 else "", self.coeffs))

    # -- calculus / evaluation --
    def derivative(self) -> "UniPoly":
        return UniPoly(self.var, [i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x) -> Fraction:
        x = _frac(x)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def compose(self, inner: "UniPoly") -> "UniPoly":
        out = UniPoly.zero(inner.var)
        for c in reversed(self.coeffs):
            out = out * inner + UniPoly.const(inner.var, c)
        return out

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        return UniPoly(self.var, [c / lead for c in self.coeffs])

    def primitive_int(self) -> tuple["UniPoly", Fraction]:
        """Scale to integer coefficients with content 1 and positive leading term.

        Returns (primitive, factor) with self == factor * primitive.
        """
        if self.is_zero():
            return self, Fraction(1)
        den = math.lcm(*[c.denominator for c in self.coeffs])
        nums = [c.numerator * (den // c.denominator) for c in self.coeffs]
        g = 0
        for n in nums:
            g = math.gcd(g, abs(n))
        sign = -1 if nums[-1] < 0 else 1
        g *= sign
        return UniPoly(self.var, [Fraction(n // g) for n in nums]), Fraction(g, den)

    def shift_mul_x(self, k: int) -> "UniPoly":
        """Multiply by var**k."""
        if self.is_zero():
            return self
        return UniPoly(self.var, (Fraction(0),) * k + self.coeffs)

    def __repr__(self):
        return f"UniPoly({self.var!r}, {poly_to_string(self)!r})"

    def __str__(self):
        return poly_to_string(self)


def _int_coeffs(p: UniPoly) -> list[int]:
    q, _ = p.primitive_int()
    return [c.numerator for c in q.coeffs]


def _primitive(ints: list[int]) -> list[int]:
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    if g == 0:
        return ints
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q via a primitive pseudo-remainder sequence over Z."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    var = a.var if a.degree() > 0 else b.var
    f, g = _int_coeffs(a), _int_coeffs(b)
    if len(f) < len(g):
        f, g = g, f
    while True:
        if len(g) == 1:
            return UniPoly.const(var, 1)
        # pseudo-remainder of f by g
        f = list(f)
        lead = g[-1]
        dq = len(f) - len(g)
        f = [c * lead ** (dq + 1) for c in f]
        for k in range(dq, -1, -1):
            c, r = divmod(f[k + len(g) - 1], lead)
            assert r == 0
            if c:
                for j, bb in enumerate(g):
                    f[k + j] -= c * bb
            f.pop()
        while f and f[-1] == 0:
            f.pop()
        if not f:
            return UniPoly(var, g).monic()
        f = _primitive(f)
        f, g = g, f


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() or b.is_zero():
        return UniPoly.zero(a.var)
    return a.exact_div(poly_gcd(a, b)) * b


# ---------------------------------------------------------------------------
# multivariate (sparse)
# ---------------------------------------------------------------------------

def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Sparse multivariate polynomial over Q with a fixed ordered variable list."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        clean = {}
        for exp, c in terms.items():
            c = _frac(c)
            if c == 0:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.vars):
                raise ValueError("exponent arity mismatch")
            clean[exp] = clean.get(exp, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def zero(cls, vars) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars, c) -> "MultiPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars, name) -> "MultiPoly":
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def const_value(self) -> Fraction:
        z = (0,) * len(self.vars)
        return self.terms.get(z, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable set mismatch: {self.vars} vs {other.vars}")
            return other
        return MultiPoly.const(self.vars, other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = _frac(other)
            if c == 0:
                return MultiPoly.zero(self.vars)
            return MultiPoly(self.vars, {e: v * c for e, v in self.terms.items()})
        o = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(self.vars, 1)
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        o = self._coerce(other)
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def leading_term(self):
        """(exponent, coefficient) maximal in graded lexicographic order."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact multivariate division (grlex long division; error on remainder)."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if o.is_const():
            return self * (1 / o.const_value())
        rem = MultiPoly(self.vars, dict(self.terms))
        quot = {}
        le, lc = o.leading_term()
        while not rem.is_zero():
            re, rc = rem.leading_term()
            qe = tuple(a - b for a, b in zip(re, le))
            if any(q < 0 for q in qe):
                raise NonExactDivision("leading term not divisible")
            qc = rc / lc
            quot[qe] = quot.get(qe, Fraction(0)) + qc
            rem = rem - MultiPoly(self.vars, {qe: qc}) * o
        return MultiPoly(self.vars, quot)

    def derivative(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * e[i]
        return MultiPoly(self.vars, out)

    def eval(self, values: dict) -> Fraction:
        """Full evaluation; every variable must be given a rational value."""
        vals = [_frac(values[v]) for v in self.vars]
        out = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x ** k
            out += t
        return out

    def subst(self, bindings: dict) -> "MultiPoly":
        """Substitute polynomials/rationals for some variables (poly results only)."""
        out = MultiPoly.zero(self.vars)
        cache = {}
        for e, c in self.terms.items():
            t = MultiPoly.const(self.vars, c)
            for v, k in zip(self.vars, e):
                if k == 0:
                    continue
                if v in bindings:
                    key = (v, k)
                    if key not in cache:
                        b = bindings[v]
                        b = b if isinstance(b, MultiPoly) else MultiPoly.const(self.vars, b)
                        cache[key] = b ** k
                    t = t * cache[key]
                else:
                    t = t * MultiPoly.var(self.vars, v) ** k
            out = out + t
        return out

    def as_unipoly_in(self, name: str) -> list["MultiPoly"]:
        """Coefficient list (lowest first) of self viewed in Q[other vars][name]."""
        i = self.vars.index(name)
        n = self.degree_in(name)
        buckets = [dict() for _ in range(n + 1)]
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            buckets[k][tuple(e2)] = c
        return [MultiPoly(self.vars, b) for b in buckets]

    def drop_var(self, name: str) -> "MultiPoly":
        """Remove an unused variable from the declared list."""
        i = self.vars.index(name)
        if any(e[i] for e in self.terms):
            raise ValueError(f"{name} still occurs")
        nv = self.vars[:i] + self.vars[i + 1:]
        return MultiPoly(nv, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def content(self) -> Fraction:
        """Positive rational content (gcd of coefficients), 0 for the zero poly."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = math.lcm(den, c.denominator)
        return Fraction(num, den)

    def __repr__(self):
        return f"MultiPoly({self.vars!r}, {poly_to_string(self)!r})"

    def __str__(self):
        return poly_to_string(self)


# ---------------------------------------------------------------------------
# polynomial square roots
# ---------------------------------------------------------------------------

def poly_sqrt(p):
    """Exact square root of a polynomial over Q, or None.

    The root is normalized to a positive leading coefficient (grlex leading
    term for multivariate input).  Works by coefficient recovery from the top
    degree downward, recursing on the leading variable in the multivariate
    case; the result is verified by squaring.
    """
    if isinstance(p, UniPoly):
        return _uni_sqrt(p)
    if isinstance(p, MultiPoly):
        return _multi_sqrt(p)
    r = is_rational_square(_frac(p))
    return r


def _uni_sqrt(p: UniPoly):
    if p.is_zero():
        return p
    n = p.degree()
    if n % 2:
        return None
    m = n // 2
    lc = is_rational_square(p.leading())
    if lc is None:
        return None
    q = [Fraction(0)] * (m + 1)
    q[m] = lc
    for i in range(m - 1, -1, -1):
        # coefficient of x^(i+m) in q^2 must match p
        acc = Fraction(0)
        for j in range(i + 1, m):
            k = i + m - j
            if i + 1 <= k <= m:
                acc += q[j] * q[k]
        q[i] = (p[i + m] - acc) / (2 * q[m])
    cand = UniPoly(p.var, q)
    if cand * cand == p:
        return cand
    return None


def _multi_sqrt(p: MultiPoly):
    if p.is_zero():
        return p
    if p.is_const():
        r = is_rational_square(p.const_value())
        return None if r is None else MultiPoly.const(p.vars, r)
    # recurse on the first variable that actually occurs
    name = None
    for v in p.vars:
        if p.degree_in(v) > 0:
            name = v
            break
    cs = p.as_unipoly_in(name)
    n = len(cs) - 1
    if n % 2:
        return None
    m = n // 2
    top = _multi_sqrt(cs[-1])
    if top is None:
        return None
    q = [MultiPoly.zero(p.vars) for _ in range(m + 1)]
    q[m] = top
    two_top = 2 * top
    for i in range(m - 1, -1, -1):
        acc = MultiPoly.zero(p.vars)
        for j in range(i + 1, m):
            k = i + m - j
            if i + 1 <= k <= m:
                acc = acc + q[j] * q[k]
        try:
            q[i] = (cs[i + m] - acc).exact_div(two_top)
        except NonExactDivision:
            return None
    xv = MultiPoly.var(p.vars, name)
    cand = MultiPoly.zero(p.vars)
    for i, c in enumerate(q):
        cand = cand + c * xv ** i
    if cand * cand == p:
        # normalize sign of the grlex leading coefficient
        _, lc = cand.leading_term()
        return cand if lc > 0 else -cand
    return None


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Quotient of polynomials (both UniPoly or both MultiPoly, same variables).

    Univariate: fully reduced with monic denominator.  Multivariate: the
    denominator is scaled to integer coefficients with content 1 and positive
    grlex leading coefficient; reduction is opportunistic (exact trial
    division), not guaranteed minimal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den, reduce: bool = True):
        if isinstance(num, UniPoly) != isinstance(den, UniPoly):
            raise TypeError("numerator/denominator kind mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _reduce(num, den):
        if isinstance(num, UniPoly):
            if num.is_zero():
                return num, UniPoly.const(den.var, 1)
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.leading()
            if lead != 1:
                num = num * (1 / lead)
                den = den * (1 / lead)
            return num, den
        # multivariate
        if num.is_zero():
            return num, MultiPoly.const(den.vars, 1)
        if not den.is_const():
            try:
                q = num.exact_div(den)
                num, den = q, MultiPoly.const(den.vars, 1)
            except NonExactDivision:
                pass
        cd = den.content()
        _, dl = den.leading_term()
        scale = (1 / cd) * (1 if dl > 0 else -1)
        return num * scale, den * scale

    @classmethod
    def from_poly(cls, p) -> "RatFunc":
        one = UniPoly.const(p.var, 1) if isinstance(p, UniPoly) else MultiPoly.const(p.vars, 1)
        return cls(p, one, reduce=False)

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (UniPoly, MultiPoly)):
            return RatFunc.from_poly(other)
        one_like = self.num
        if isinstance(one_like, UniPoly):
            return RatFunc.from_poly(UniPoly.const(one_like.var, other))
        return RatFunc.from_poly(MultiPoly.const(one_like.vars, other))

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other):
        o = self._coerce(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        if isinstance(self.den, UniPoly):
            return self.den.degree() == 0
        return self.den.is_const()

    def eval(self, *args, **kwargs) -> Fraction:
        """Evaluate at rational argument(s); raises EvaluationAtPole at poles.

        Univariate: pass one positional value.  Multivariate: pass a dict or
        keyword arguments naming every variable.
        """
        if isinstance(self.num, UniPoly):
            (x,) = args
            d = self.den.eval(x)
            if d == 0:
                raise EvaluationAtPole(f"denominator vanishes at {x}")
            return self.num.eval(x) / d
        values = dict(args[0]) if args else dict(kwargs)
        d = self.den.eval(values)
        if d == 0:
            raise EvaluationAtPole(f"denominator vanishes at {values}")
        return self.num.eval(values) / d

    def subst_uni(self, inner: "RatFunc") -> "RatFunc":
        """Compose a univariate rational function with another: self(inner)."""
        if not isinstance(self.num, UniPoly):
            raise TypeError("subst_uni requires univariate input")
        n = max(self.num.degree(), self.den.degree())
        num = RatFunc.from_poly(UniPoly.zero(inner.num.var))
        den = RatFunc.from_poly(UniPoly.zero(inner.num.var))
        pw = [RatFunc.from_poly(UniPoly.const(inner.num.var, 1))]
        for _ in range(n):
            pw.append(pw[-1] * inner)
        for i in range(n + 1):
            if self.num[i]:
                num = num + pw[i] * self.num[i]
            if self.den[i]:
                den = den + pw[i] * self.den[i]
        return num / den

    def sqrt(self) -> "RatFunc | None":
        """Square root when numerator and denominator are polynomial squares."""
        rn = poly_sqrt(self.num)
        rd = poly_sqrt(self.den) if rn is not None else None
        if rn is not None and rd is not None:
            return RatFunc(rn, rd)
        return None

    def normalized_pair(self):
        """(numerator, denominator) scaled to primitive integer polynomials.

        The denominator leading coefficient is positive; used for
        coefficient-exact comparison of printed families.
        """
        if isinstance(self.num, UniPoly):
            pn, fn = self.num.primitive_int()
            pd, fd = self.den.primitive_int()
            f = fn / fd
            return pn * f.numerator, pd * f.denominator
        raise TypeError("normalized_pair is univariate-only")

    def to_unipoly(self, var: str | None = None) -> "RatFunc":
        """Rebuild a multivariate RatFunc in <= 1 effective variable as univariate."""
        if isinstance(self.num, UniPoly):
            return self
        used = [v for v in self.num.vars
                if self.num.degree_in(v) > 0 or self.den.degree_in(v) > 0]
        if len(used) > 1:
            raise ValueError(f"not univariate: {used}")
        var = var or (used[0] if used else self.num.vars[0])

        def conv(mp: MultiPoly) -> UniPoly:
            if var in mp.vars:
                i = mp.vars.index(var)
            else:
                i = None
            coeffs = {}
            for e, c in mp.terms.items():
                k = e[i] if i is not None else 0
                coeffs[k] = coeffs.get(k, Fraction(0)) + c
            return UniPoly.from_coeff_map(var, coeffs)

        return RatFunc(conv(self.num), conv(self.den))

    def __repr__(self):
        return f"RatFunc({poly_to_string(self.num)!r}, {poly_to_string(self.den)!r})"

    def __str__(self):
        if self.is_poly():
            scale = self.den.leading() if isinstance(self.den, UniPoly) else self.den.const_value()
            return poly_to_string(self.num * (1 / scale))
        return f"({poly_to_string(self.num)})/({poly_to_string(self.den)})"


def ratfunc_square_root(f: RatFunc) -> RatFunc | None:
    return f.sqrt()


def mp_ratfunc(p: MultiPoly) -> RatFunc:
    return RatFunc.from_poly(p)


def subst(p, bindings: dict, out_vars) -> RatFunc:
    """Substitute rational functions/rationals for variables of a polynomial
    or rational function; unbound variables are carried into ``out_vars``.

    All values and the result live over the MultiPoly ring on ``out_vars``.
    """
    out_vars = tuple(out_vars)
    one = MultiPoly.const(out_vars, 1)

    def lift(val) -> RatFunc:
        if isinstance(val, RatFunc):
            if isinstance(val.num, UniPoly):
                num = _uni_to_multi(val.num, out_vars)
                den = _uni_to_multi(val.den, out_vars)
                return RatFunc(num, den, reduce=False)
            if val.num.vars != out_vars:
                raise ValueError("binding variable set mismatch")
            return val
        if isinstance(val, MultiPoly):
            return RatFunc(val if val.vars == out_vars else
                           _remap_vars(val, out_vars), one, reduce=False)
        if isinstance(val, UniPoly):
            return RatFunc(_uni_to_multi(val, out_vars), one, reduce=False)
        return RatFunc(MultiPoly.const(out_vars, val), one, reduce=False)

    if isinstance(p, RatFunc):
        return subst(p.num, bindings, out_vars) / subst(p.den, bindings, out_vars)
    if isinstance(p, UniPoly):
        p = _uni_to_multi(p, (p.var,))
    table = {}
    for v in p.vars:
        if v in bindings:
            table[v] = lift(bindings[v])
        else:
            if v not in out_vars:
                raise ValueError(f"unbound variable {v!r} not in output set")
            table[v] = RatFunc(MultiPoly.var(out_vars, v), one, reduce=False)
    acc = RatFunc(MultiPoly.zero(out_vars), one, reduce=False)
    pow_cache = {}
    for exp, c in p.terms.items():
        term = RatFunc(MultiPoly.const(out_vars, c), one, reduce=False)
        for v, k in zip(p.vars, exp):
            if k == 0:
                continue
            key = (v, k)
            if key not in pow_cache:
                pow_cache[key] = table[v] ** k
            term = term * pow_cache[key]
        acc = acc + term
    return acc


def _uni_to_multi(p: UniPoly, out_vars) -> MultiPoly:
    out_vars = tuple(out_vars)
    if p.degree() < 1:
        return MultiPoly.const(out_vars, p[0] if p.coeffs else 0)
    i = out_vars.index(p.var)
    terms = {}
    for k, c in enumerate(p.coeffs):
        if c:
            e = [0] * len(out_vars)
            e[i] = k
            terms[tuple(e)] = c
    return MultiPoly(out_vars, terms)


def _remap_vars(p: MultiPoly, out_vars) -> MultiPoly:
    out_vars = tuple(out_vars)
    idx = []
    for v in p.vars:
        if p.degree_in(v) > 0 and v not in out_vars:
            raise ValueError(f"variable {v!r} missing from output set")
        idx.append(out_vars.index(v) if v in out_vars else None)
    terms = {}
    for e, c in p.terms.items():
        ne = [0] * len(out_vars)
        for pos, k in zip(idx, e):
            if k:
                ne[pos] += k
        key = tuple(ne)
        terms[key] = terms.get(key, Fraction(0)) + c
    return MultiPoly(out_vars, terms)


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def poly_to_string(p) -> str:
    """Render as a sum of c*x^i*y^j terms ("0" for the zero polynomial)."""
    if isinstance(p, UniPoly):
        items = [((i,), c) for i, c in enumerate(p.coeffs) if c != 0]
        names = (p.var,)
    else:
        items = sorted(p.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)
        names = p.vars
    if not items:
        return "0"
    parts = []
    for exp, c in items:
        factors = []
        for name, k in zip(names, exp):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        body = "*".join(factors)
        if not body:
            term = format_rational(c)
        elif c == 1:
            term = body
        elif c == -1:
            term = f"-{body}"
        else:
            term = f"{format_rational(c)}*{body}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def parse_poly(text: str, vars) -> MultiPoly:
    """Parse the textual polynomial grammar back into a MultiPoly."""
    vars = tuple(vars)
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise ValueError("empty polynomial text")
    # split into signed terms at top level
    terms = []
    cur = ""
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "+-*^/(":
            terms.append(cur)
            cur = ch
            continue
        cur += ch
    terms.append(cur)
    out = MultiPoly.zero(vars)
    for term in terms:
        if not term or term in "+-":
            raise ValueError(f"bad term in {text!r}")
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        coeff = Fraction(sign)
        exp = [0] * len(vars)
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"bad factor in {text!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
            else:
                if "^" in factor:
                    name, _, k = factor.partition("^")
                    k = int(k)
                else:
                    name, k = factor, 1
                if name not in vars:
                    raise ValueError(f"unknown variable {name!r}")
                exp[vars.index(name)] += k
        out = out + MultiPoly(vars, {tuple(exp): coeff})
    return out


def parse_unipoly(text: str, var: str) -> UniPoly:
    mp = parse_poly(text, (var,))
    return UniPoly.from_coeff_map(var, {e[0]: c for e, c in mp.terms.items()})
