"""Shared random-expression and random-profile generators for the tests.

The generated expressions exercise every node type of the profile DSL
while staying smooth and moderately scaled on the sampled intervals, so
finite-difference comparisons stay well conditioned.  Profiles built here
are regular by construction: f is bounded away from zero and phi' away
from vanishing, which keeps the whole forms pipeline defined.
"""

from __future__ import annotations

import random

from hyperform.dsl import Binary, Const, Expr, Param, Power, Unary, Var
from hyperform.rotational import ProfileCurve

_PARAM_NAMES = ("a", "b", "c1", "c2", "k")


def _const(rng: random.Random, lo=-1.5, hi=1.5) -> Expr:
    return Const(round(rng.uniform(lo, hi), 4))


def _scaled_u(rng: random.Random) -> Expr:
    """k*u with |k| <= 1.2 so derivative magnitudes stay tame."""
    return Binary("*", Const(round(rng.uniform(0.3, 1.2), 4)), Var())


def _leaf(rng: random.Random, params: set[str]) -> Expr:
    roll = rng.random()
    if roll < 0.35:
        return _scaled_u(rng)
    if roll < 0.55:
        return _const(rng)
    if roll < 0.7:
        name = rng.choice(_PARAM_NAMES)
        params.add(name)
        return Param(name)
    return Var()


def _bounded(rng: random.Random, depth: int, params: set[str]) -> Expr:
    """An expression with values in roughly [-3, 3] on |u| <= 2."""
    if depth <= 0:
        return rng.choice([_leaf(rng, params), _const(rng)])
    roll = rng.random()
    inner = _bounded(rng, depth - 1, params)
    if roll < 0.28:
        return Unary(rng.choice(("sin", "cos")), _bounded(rng, depth - 1, params))
    if roll < 0.38:
        # hyperbolic/exponential of a bounded argument stays bounded
        damped = Binary("*", Const(0.4), Unary("sin", inner))
        return Unary(rng.choice(("sinh", "cosh", "exp")), damped)
    if roll < 0.46:
        return Unary("log", Binary("+", Const(round(rng.uniform(2.0, 3.0), 4)), Unary("sin", inner)))
    if roll < 0.54:
        return Unary("sqrt", Binary("+", Const(round(rng.uniform(1.5, 2.5), 4)), Unary("cos", inner)))
    if roll < 0.62:
        return Unary("neg", inner)
    if roll < 0.7:
        base = Binary("+", Const(round(rng.uniform(1.8, 2.6), 4)), Unary("sin", inner))
        return Power(base, rng.choice((-2.0, -1.0, 0.5, 2.0, 3.0)))
    if roll < 0.78:
        denom = Binary("+", Const(round(rng.uniform(2.2, 3.2), 4)), Unary("cos", inner))
        return Binary("/", _bounded(rng, depth - 1, params), denom)
    op = rng.choice(("+", "-", "*"))
    return Binary(op, inner, _bounded(rng, depth - 1, params))


def random_expr(rng: random.Random, depth: int = 3) -> tuple[Expr, dict[str, float]]:
    """A random expression plus bindings for every parameter it mentions."""
    params: set[str] = set()
    e = _bounded(rng, depth, params)
    bindings = {name: round(rng.uniform(0.4, 1.8), 4) for name in params}
    return e, bindings


def random_profile(rng: random.Random) -> tuple[ProfileCurve, tuple[float, float]]:
    """A regular random profile and a u-interval where it is safe.

    f = a0 + a1 * trig(b u)  with a0 >= 2 |a1| + 0.5, so f > 0;
    phi = c u + a2 * trig(b u) with c >= 2 |a2| b + 0.2, so phi' > 0.
    """
    a0 = rng.uniform(1.4, 3.0)
    a1 = rng.uniform(-0.45, 0.45)
    b = rng.uniform(0.5, 1.2)
    c = rng.uniform(0.8, 1.6)
    a2 = rng.uniform(-0.3, 0.3) * c / (2.0 * b)
    ftrig = rng.choice(("sin", "cos"))
    ptrig = rng.choice(("sin", "cos"))
    f = Binary("+", Const(round(a0, 4)), Binary("*", Const(round(a1, 4)),
                                                Unary(ftrig, Binary("*", Const(round(b, 4)), Var()))))
    phi = Binary("+", Binary("*", Const(round(c, 4)), Var()),
                 Binary("*", Const(round(a2, 4)), Unary(ptrig, Binary("*", Const(round(b, 4)), Var()))))
    return ProfileCurve(f, phi, {}, (-5.0, 5.0), name="random"), (-1.5, 1.5)


def fd_derivative(fn, u: float, k: int, h: float = 1e-3) -> float:
    """Richardson-extrapolated central difference of order k at u (k <= 3)."""

    def central(step: float) -> float:
        if k == 0:
            return fn(u)
        if k == 1:
            return (fn(u + step) - fn(u - step)) / (2.0 * step)
        if k == 2:
            return (fn(u + step) - 2.0 * fn(u) + fn(u - step)) / step**2
        return (
            fn(u + 2.0 * step) - 2.0 * fn(u + step) + 2.0 * fn(u - step) - fn(u - 2.0 * step)
        ) / (2.0 * step**3)

    return (4.0 * central(h) - central(2.0 * h)) / 3.0
