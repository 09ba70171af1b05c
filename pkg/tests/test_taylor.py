"""Tests for the truncated Taylor algebra."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperform.errors import DomainError
from hyperform.taylor import TSeries, as_series, cos, divide, exp, log, powc, sin, sqrt, variables


def _mono_oracle_mul(a: dict, b: dict, deg: int) -> dict:
    """Independent polynomial product over multi-index dicts, truncated."""
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mc = tuple(x + y for x, y in zip(ma, mb))
            if sum(mc) <= deg:
                out[mc] = out.get(mc, 0.0) + ca * cb
    return out


def _to_dict(s: TSeries) -> dict:
    from hyperform.taylor import _table

    tab = _table(s.nvars, s.deg)
    return {m: c for m, c in zip(tab.monos, s.c)}


def _random_series(rng, nvars=3, deg=3) -> TSeries:
    from hyperform.taylor import _table

    n = _table(nvars, deg).n
    return TSeries(nvars, deg, [rng.uniform(-2, 2) for _ in range(n)])


def test_multiplication_matches_polynomial_oracle():
    rng = random.Random(7)
    for _ in range(50):
        a = _random_series(rng)
        b = _random_series(rng)
        got = _to_dict(a * b)
        want = _mono_oracle_mul(_to_dict(a), _to_dict(b), 3)
        for mono, cw in want.items():
            assert got[mono] == pytest.approx(cw, rel=1e-13, abs=1e-13)


def test_division_inverts_multiplication():
    rng = random.Random(11)
    for _ in range(50):
        a = _random_series(rng)
        b = _random_series(rng)
        b.c[0] = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
        q = a / b
        back = q * b
        for x, y in zip(back.c, a.c):
            assert x == pytest.approx(y, rel=1e-12, abs=1e-12)


def test_sqrt_squares_back():
    rng = random.Random(13)
    for _ in range(50):
        a = _random_series(rng)
        a.c[0] = rng.uniform(0.5, 3.0)
        s = a.sqrt()
        back = s * s
        for x, y in zip(back.c, a.c):
            assert x == pytest.approx(y, rel=1e-12, abs=1e-12)


def test_polynomial_jet_is_exact():
    # F(u,v,w) = 2u^3 + 3uvw - v^2 + 5:  all partials by hand
    u, v, w = variables((1.0, 2.0, -1.0), 3, 3)
    f = 2.0 * u * u * u + 3.0 * u * v * w - v * v + 5.0
    assert f.value == 2.0 + 3.0 * 1 * 2 * (-1) - 4.0 + 5.0
    assert f.partial((1, 0, 0)) == 6.0 * 1.0**2 + 3.0 * 2.0 * (-1.0)
    assert f.partial((0, 1, 0)) == 3.0 * 1.0 * (-1.0) - 2.0 * 2.0
    assert f.partial((0, 0, 1)) == 3.0 * 1.0 * 2.0
    assert f.partial((2, 0, 0)) == 12.0
    assert f.partial((1, 1, 1)) == 3.0
    assert f.partial((3, 0, 0)) == 12.0
    assert f.partial((0, 2, 0)) == -2.0
    assert f.partial((0, 0, 3)) == 0.0


def test_transcendental_partials_against_closed_forms():
    # F(u,v,w) = sin(u) * exp(0.5 v) + cosh(w): mixed partials separable
    u0, v0, w0 = 0.4, -0.3, 0.8
    u, v, w = variables((u0, v0, w0), 3, 3)
    f = sin(u) * exp(0.5 * v) + w.cosh()
    e = math.exp(0.5 * v0)
    assert f.partial((1, 0, 0)) == pytest.approx(math.cos(u0) * e, rel=1e-14)
    assert f.partial((1, 1, 0)) == pytest.approx(math.cos(u0) * 0.5 * e, rel=1e-14)
    assert f.partial((2, 1, 0)) == pytest.approx(-math.sin(u0) * 0.5 * e, rel=1e-14)
    assert f.partial((0, 3, 0)) == pytest.approx(math.sin(u0) * 0.125 * e, rel=1e-14)
    assert f.partial((0, 0, 2)) == pytest.approx(math.cosh(w0), rel=1e-14)
    assert f.partial((0, 0, 3)) == pytest.approx(math.sinh(w0), rel=1e-14)


def test_log_sqrt_div_partials_univariate():
    # g(u) = log(2 + u) / sqrt(1 + u^2): compare with hand derivative at 0
    (u,) = variables((0.0,), 1, 3)
    g = log(2.0 + u) / sqrt(1.0 + u * u)
    # g(0) = log 2; g'(0) = 1/2 (quotient rule: d/du log(2+u) = 1/2, sqrt term flat)
    assert g.value == pytest.approx(math.log(2.0), rel=1e-15)
    assert g.partial((1,)) == pytest.approx(0.5, rel=1e-13)


def test_truncation_consistency():
    rng = random.Random(17)
    for _ in range(20):
        point = (rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1))

        def build(deg):
            u, v, w = variables(point, 3, deg)
            return sin(u * v) + cos(w) * exp(0.3 * u) - (1.5 + u * u).sqrt()

        full = build(3)
        low = build(2)
        assert full.truncate(2).c == pytest.approx(low.c, rel=1e-14, abs=1e-15)


def test_mixed_degree_arithmetic_truncates():
    u, v, w = variables((0.5, 0.2, 0.1), 3, 3)
    a = sin(u)
    b = cos(v).truncate(1)
    prod = a * b
    assert prod.deg == 1


def test_deriv_shifts_coefficients():
    u, v, w = variables((0.7, 0.2, -0.4), 3, 3)
    f = u * u * v + w * u
    fu = f.deriv(0)
    assert fu.value == pytest.approx(2 * 0.7 * 0.2 + (-0.4), rel=1e-15)
    assert fu.partial((1, 0, 0)) == pytest.approx(2 * 0.2, rel=1e-15)
    assert fu.partial((0, 1, 0)) == pytest.approx(2 * 0.7, rel=1e-15)


def test_domain_errors():
    (u,) = variables((0.0,), 1, 2)
    with pytest.raises(DomainError):
        1.0 / (u * u)  # order-0 part is zero
    with pytest.raises(DomainError):
        (u - 1.0).sqrt()
    with pytest.raises(DomainError):
        log(u - 2.0)
    with pytest.raises(DomainError):
        (u - 3.0).powr(0.5)
    with pytest.raises(DomainError):
        log(-1.0)
    with pytest.raises(DomainError):
        sqrt(-1.0)
    with pytest.raises(DomainError):
        divide(1.0, 0.0)


def test_integer_powers_allow_negative_base():
    (u,) = variables((-2.0,), 1, 2)
    p = u**3
    assert p.value == -8.0
    assert p.partial((1,)) == pytest.approx(12.0)
    q = u**-2
    assert q.value == pytest.approx(0.25)
    assert powc(-2.0, 3) == -8.0


@given(
    st.floats(-1.2, 1.2),
    st.floats(-1.2, 1.2),
    st.floats(0.1, 2.0),
)
@settings(max_examples=150, deadline=None)
def test_series_value_matches_float_evaluation(x, y, k):
    u, v, w = variables((x, y, 0.3), 3, 2)
    series = sin(u) * cos(v) + k * exp(0.2 * w)
    plain = math.sin(x) * math.cos(y) + k * math.exp(0.2 * 0.3)
    assert series.value == pytest.approx(plain, rel=1e-12, abs=1e-12)


def test_linearity_of_series():
    rng = random.Random(23)
    a, b = 2.5, -1.25
    for _ in range(10):
        s1 = _random_series(rng)
        s2 = _random_series(rng)
        combo = a * s1 + b * s2
        for i, c in enumerate(combo.c):
            assert c == pytest.approx(a * s1.c[i] + b * s2.c[i], rel=1e-14, abs=1e-14)


def test_as_series_and_constant():
    c = as_series(4.5, 3, 2)
    assert c.value == 4.5
    assert all(v == 0.0 for v in c.c[1:])
    s = TSeries.constant(1.0, 1, 3)
    assert (s + 1.0).value == 2.0
    assert (2.0 - s).value == 1.0
