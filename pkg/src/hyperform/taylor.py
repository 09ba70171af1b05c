"""Truncated multivariate Taylor arithmetic.

A ``TSeries`` stores the Taylor coefficients of a smooth scalar function
around a point, truncated at a fixed total degree (at most 3).  Arithmetic
on these objects propagates derivatives exactly (to machine precision),
which is what makes third derivatives of chart maps available without
finite-difference truncation error.

Coefficients are stored in graded order: all monomials of total degree 0,
then degree 1, and so on.  Truncating a series to a lower degree is
therefore a prefix slice.  The coefficient of the monomial ``x^a`` is
``(d^|a| f / dx^a) / a!``.

Supported algebras: any number of variables from 1 to 3, degree 0 to 3.
Division and square root use the standard coefficient recurrence; the
remaining elementary functions are evaluated by composing their degree-3
Taylor polynomial with the nilpotent part of the argument.
"""

from __future__ import annotations

import math
from itertools import product as _iproduct
from typing import Callable

from .errors import DomainError

MAX_DEGREE = 3

# Division guard: order-0 parts smaller than this are treated as zero.
_DIV_FLOOR = 1e-300


def _gen_monomials(nvars: int, deg: int) -> tuple[tuple[int, ...], ...]:
    monos = []
    for total in range(deg + 1):
        block = [m for m in _iproduct(range(total, -1, -1), repeat=nvars) if sum(m) == total]
        # order within a degree block: descending powers of the first variable
        block.sort(key=lambda m: tuple(-e for e in m))
        monos.extend(block)
    return tuple(monos)


class _Table:
    """Precomputed index tables for one (nvars, degree) algebra."""

    def __init__(self, nvars: int, deg: int):
        self.nvars = nvars
        self.deg = deg
        self.monos = _gen_monomials(nvars, deg)
        self.n = len(self.monos)
        self.index = {m: i for i, m in enumerate(self.monos)}
        # products: all (ia, ib, iout) with deg(a) + deg(b) <= deg
        mul = []
        for ia, ma in enumerate(self.monos):
            for ib, mb in enumerate(self.monos):
                if sum(ma) + sum(mb) <= deg:
                    mc = tuple(x + y for x, y in zip(ma, mb))
                    mul.append((ia, ib, self.index[mc]))
        self.mul = tuple(mul)
        # division recurrence: for each k, ordered pairs (ib, ic) with
        # mono[ib] + mono[ic] == mono[k] and mono[ib] != 0
        div = [[] for _ in range(self.n)]
        sqrt_terms = [[] for _ in range(self.n)]
        for ia, ib, io in self.mul:
            if self.monos[ia] != (0,) * nvars:
                div[io].append((ia, ib))
                if self.monos[ib] != (0,) * nvars:
                    sqrt_terms[io].append((ia, ib))
        self.div = tuple(tuple(t) for t in div)
        self.sqrt_terms = tuple(tuple(t) for t in sqrt_terms)
        # differentiation: per variable d, list of (src, dst, exponent)
        diff = []
        for d in range(nvars):
            rules = []
            for i, m in enumerate(self.monos):
                if m[d] > 0:
                    tgt = list(m)
                    tgt[d] -= 1
                    rules.append((i, tuple(tgt), m[d]))
            diff.append(tuple(rules))
        self.diff = tuple(diff)


_TABLES: dict[tuple[int, int], _Table] = {}


def _table(nvars: int, deg: int) -> _Table:
    key = (nvars, deg)
    tab = _TABLES.get(key)
    if tab is None:
        tab = _TABLES[key] = _Table(nvars, deg)
    return tab


class TSeries:
    """A scalar Taylor series truncated at total degree ``deg``."""

    __slots__ = ("nvars", "deg", "c")

    def __init__(self, nvars: int, deg: int, coeffs):
        if not 1 <= nvars <= 3:
            raise ValueError(f"nvars must be 1..3, got {nvars}")
        if not 0 <= deg <= MAX_DEGREE:
            raise ValueError(f"degree must be 0..{MAX_DEGREE}, got {deg}")
        tab = _table(nvars, deg)
        c = list(coeffs)
        if len(c) != tab.n:
            raise ValueError(f"expected {tab.n} coefficients, got {len(c)}")
        self.nvars = nvars
        self.deg = deg
        self.c = c

    # -- construction ------------------------------------------------------

    @staticmethod
    def constant(value: float, nvars: int, deg: int) -> "TSeries":
        c = [0.0] * _table(nvars, deg).n
        c[0] = float(value)
        return TSeries(nvars, deg, c)

    @staticmethod
    def variable(index: int, value: float, nvars: int, deg: int) -> "TSeries":
        """The seed series value + (x_index - value): derivative 1 in one slot."""
        tab = _table(nvars, deg)
        c = [0.0] * tab.n
        c[0] = float(value)
        if deg >= 1:
            mono = tuple(1 if i == index else 0 for i in range(nvars))
            c[tab.index[mono]] = 1.0
        return TSeries(nvars, deg, c)

    # -- inspection --------------------------------------------------------

    @property
    def value(self) -> float:
        return self.c[0]

    def coeff(self, mono: tuple[int, ...]) -> float:
        tab = _table(self.nvars, self.deg)
        try:
            return self.c[tab.index[mono]]
        except KeyError:
            raise ValueError(f"monomial {mono} not stored at degree {self.deg}") from None

    def partial(self, mono: tuple[int, ...]) -> float:
        """The partial derivative for the multi-index (coefficient times a!)."""
        fact = 1.0
        for e in mono:
            fact *= math.factorial(e)
        return self.coeff(mono) * fact

    def truncate(self, deg: int) -> "TSeries":
        if deg > self.deg:
            raise ValueError("cannot extend a truncated series")
        if deg == self.deg:
            return self
        return TSeries(self.nvars, deg, self.c[: _table(self.nvars, deg).n])

    def deriv(self, var: int) -> "TSeries":
        """Partial derivative; the result is exact only to degree deg - 1."""
        if self.deg == 0:
            raise ValueError("cannot differentiate a degree-0 series")
        tab = _table(self.nvars, self.deg)
        out_tab = _table(self.nvars, self.deg - 1)
        out = [0.0] * out_tab.n
        for src, tgt_mono, expo in tab.diff[var]:
            out[out_tab.index[tgt_mono]] = self.c[src] * expo
        return TSeries(self.nvars, self.deg - 1, out)

    def __repr__(self):
        return f"TSeries(nvars={self.nvars}, deg={self.deg}, c={self.c!r})"

    # -- arithmetic --------------------------------------------------------

    def _align(self, other):
        """Coerce the pair to a common (nvars, deg); floats become constants."""
        if isinstance(other, TSeries):
            if other.nvars != self.nvars:
                raise ValueError("mixed-variable-count series arithmetic")
            d = min(self.deg, other.deg)
            return self.truncate(d), other.truncate(d)
        if isinstance(other, (int, float)):
            return self, TSeries.constant(float(other), self.nvars, self.deg)
        return self, NotImplemented

    def __add__(self, other):
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        return TSeries(a.nvars, a.deg, [x + y for x, y in zip(a.c, b.c)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        return TSeries(a.nvars, a.deg, [x - y for x, y in zip(a.c, b.c)])

    def __rsub__(self, other):
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        return TSeries(a.nvars, a.deg, [y - x for x, y in zip(a.c, b.c)])

    def __neg__(self):
        return TSeries(self.nvars, self.deg, [-x for x in self.c])

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            k = float(other)
            return TSeries(self.nvars, self.deg, [x * k for x in self.c])
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        tab = _table(a.nvars, a.deg)
        out = [0.0] * tab.n
        ca, cb = a.c, b.c
        for ia, ib, io in tab.mul:
            out[io] += ca[ia] * cb[ib]
        return TSeries(a.nvars, a.deg, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        return a._div(b)

    def __rtruediv__(self, other):
        a, b = self._align(other)
        if b is NotImplemented:
            return NotImplemented
        return b._div(a)

    def _div(self, other: "TSeries") -> "TSeries":
        b0 = other.c[0]
        if abs(b0) < _DIV_FLOOR:
            raise DomainError("division by a series with (near-)zero order-0 part")
        tab = _table(self.nvars, self.deg)
        out = [0.0] * tab.n
        ca, cb = self.c, other.c
        for k in range(tab.n):
            acc = ca[k]
            for ib, ic in tab.div[k]:
                acc -= cb[ib] * out[ic]
            out[k] = acc / b0
        return TSeries(self.nvars, self.deg, out)

    def __pow__(self, p):
        if isinstance(p, int) or (isinstance(p, float) and p.is_integer()):
            n = int(p)
            if n == 0:
                return TSeries.constant(1.0, self.nvars, self.deg)
            base = self if n > 0 else TSeries.constant(1.0, self.nvars, self.deg) / self
            n = abs(n)
            acc = None
            while n:
                if n & 1:
                    acc = base if acc is None else acc * base
                base = base * base
                n >>= 1
            return acc
        return self.powr(float(p))

    def powr(self, p: float) -> "TSeries":
        """Real power; requires a strictly positive order-0 part."""
        t0 = self.c[0]
        if t0 <= 0.0:
            raise DomainError(f"real power of non-positive base {t0!r}")
        d0 = t0**p
        return self._compose(
            (d0, p * d0 / t0, p * (p - 1) * d0 / (t0 * t0), p * (p - 1) * (p - 2) * d0 / (t0**3))
        )

    # -- elementary functions ----------------------------------------------

    def _compose(self, derivs) -> "TSeries":
        """Evaluate F(self) given F and its derivatives at the order-0 part.

        Exact in the truncated algebra: the nilpotent part h satisfies
        h^(deg+1) = 0, so F(t0 + h) = sum d_k h^k / k! terminates.
        """
        n = len(self.c)
        h = TSeries(self.nvars, self.deg, [0.0] + self.c[1:]) if n > 1 else None
        out = TSeries.constant(derivs[0], self.nvars, self.deg)
        if h is None:
            return out
        hk = h
        fact = 1.0
        for k in range(1, self.deg + 1):
            fact *= k
            out = out + hk * (derivs[k] / fact)
            if k < self.deg:
                hk = hk * h
        return out

    def sqrt(self) -> "TSeries":
        a0 = self.c[0]
        if a0 <= 0.0:
            raise DomainError(f"sqrt of non-positive series value {a0!r}")
        tab = _table(self.nvars, self.deg)
        out = [0.0] * tab.n
        out[0] = math.sqrt(a0)
        inv2c0 = 1.0 / (2.0 * out[0])
        for k in range(1, tab.n):
            acc = self.c[k]
            for ib, ic in tab.sqrt_terms[k]:
                acc -= out[ib] * out[ic]
            out[k] = acc * inv2c0
        return TSeries(self.nvars, self.deg, out)

    def exp(self) -> "TSeries":
        e = math.exp(self.c[0])
        return self._compose((e, e, e, e))

    def log(self) -> "TSeries":
        t0 = self.c[0]
        if t0 <= 0.0:
            raise DomainError(f"log of non-positive series value {t0!r}")
        return self._compose((math.log(t0), 1.0 / t0, -1.0 / (t0 * t0), 2.0 / (t0**3)))

    def sin(self) -> "TSeries":
        s, c = math.sin(self.c[0]), math.cos(self.c[0])
        return self._compose((s, c, -s, -c))

    def cos(self) -> "TSeries":
        s, c = math.sin(self.c[0]), math.cos(self.c[0])
        return self._compose((c, -s, -c, s))

    def sinh(self) -> "TSeries":
        s, c = math.sinh(self.c[0]), math.cosh(self.c[0])
        return self._compose((s, c, s, c))

    def cosh(self) -> "TSeries":
        s, c = math.sinh(self.c[0]), math.cosh(self.c[0])
        return self._compose((c, s, c, s))


def variables(point, nvars: int, deg: int) -> tuple[TSeries, ...]:
    """Seed series for each coordinate of ``point``."""
    if len(point) != nvars:
        raise ValueError("point length must equal nvars")
    return tuple(TSeries.variable(i, point[i], nvars, deg) for i in range(nvars))


def as_series(x, nvars: int, deg: int) -> TSeries:
    """Coerce a float (e.g. a constant chart component) into the algebra."""
    if isinstance(x, TSeries):
        if x.nvars != nvars:
            raise ValueError("series from a different algebra")
        return x.truncate(min(x.deg, deg))
    return TSeries.constant(float(x), nvars, deg)


# -- generic scalar functions ----------------------------------------------
# These dispatch between plain floats and series so that the same chart or
# expression code runs over either algebra.

def _float_guard(fn: Callable[[float], float], name: str, x: float) -> float:
    try:
        return fn(x)
    except ValueError as exc:
        raise DomainError(f"{name} of {x!r}") from exc


def sin(x):
    return x.sin() if isinstance(x, TSeries) else math.sin(x)


def cos(x):
    return x.cos() if isinstance(x, TSeries) else math.cos(x)


def sinh(x):
    return x.sinh() if isinstance(x, TSeries) else math.sinh(x)


def cosh(x):
    return x.cosh() if isinstance(x, TSeries) else math.cosh(x)


def exp(x):
    return x.exp() if isinstance(x, TSeries) else math.exp(x)


def log(x):
    if isinstance(x, TSeries):
        return x.log()
    if x <= 0.0:
        raise DomainError(f"log of non-positive value {x!r}")
    return math.log(x)


def sqrt(x):
    if isinstance(x, TSeries):
        return x.sqrt()
    if x < 0.0:
        raise DomainError(f"sqrt of negative value {x!r}")
    return math.sqrt(x)


def powc(x, p: float):
    """x**p with a constant exponent, over either algebra."""
    if isinstance(x, TSeries):
        return x**p
    if isinstance(p, float) and not p.is_integer() and x < 0.0:
        raise DomainError(f"real power of negative base {x!r}")
    if x == 0.0 and p < 0:
        raise DomainError("zero base with negative exponent")
    return _float_guard(lambda v: math.pow(v, p), "pow", x)


def divide(a, b):
    """a / b with the library's division-by-zero contract on floats."""
    if isinstance(a, TSeries) or isinstance(b, TSeries):
        if not isinstance(a, TSeries):
            return b.__rtruediv__(a)
        return a / b
    if abs(b) < _DIV_FLOOR:
        raise DomainError("division by zero")
    return a / b
