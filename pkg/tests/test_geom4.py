"""Tests for the 4-vector and symmetric-3x3 layer."""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperform.errors import SingularMatrix
from hyperform.geom4 import (
    SymMat3,
    Vec4,
    mat3_product,
    sym3_det,
    sym3_eigenvalues,
    sym3_inverse,
    triple_cross,
)

E1 = Vec4(1, 0, 0, 0)
E2 = Vec4(0, 1, 0, 0)
E3 = Vec4(0, 0, 1, 0)
E4 = Vec4(0, 0, 0, 1)


def _rand_vec(rng, lo=-3, hi=3):
    return Vec4(*(rng.randint(lo, hi) for _ in range(4)))


def test_triple_cross_basis():
    # direct substitution into the componentwise formula
    assert triple_cross(E1, E2, E3) == Vec4(0, 0, 0, -1)
    assert triple_cross(E2, E3, E4) == Vec4(1, 0, 0, 0)


def test_triple_cross_repeated_argument_vanishes():
    rng = random.Random(3)
    for _ in range(20):
        x, z = _rand_vec(rng), _rand_vec(rng)
        assert triple_cross(x, x, z) == Vec4(0, 0, 0, 0)
        assert triple_cross(x, z, z) == Vec4(0, 0, 0, 0)


def test_triple_cross_orthogonality_bruteforce():
    rng = random.Random(5)
    for _ in range(100):
        x, y, z = _rand_vec(rng), _rand_vec(rng), _rand_vec(rng)
        r = triple_cross(x, y, z)
        # integer inputs: the dot products are exact integers
        assert r.dot(x) == 0
        assert r.dot(y) == 0
        assert r.dot(z) == 0


@given(st.lists(st.floats(-10, 10), min_size=12, max_size=12))
@settings(max_examples=200, deadline=None)
def test_triple_cross_alternating(vals):
    x = Vec4(*vals[0:4])
    y = Vec4(*vals[4:8])
    z = Vec4(*vals[8:12])
    a = triple_cross(x, y, z)
    b = triple_cross(y, x, z)
    c = triple_cross(x, z, y)
    scale = max(x.norm() * y.norm() * z.norm(), 1.0)
    for p, q in ((a.as_tuple(), b.as_tuple()), (a.as_tuple(), c.as_tuple())):
        for s, t in zip(p, q):
            assert abs(s + t) <= 1e-12 * scale


@given(st.lists(st.floats(-5, 5), min_size=12, max_size=12))
@settings(max_examples=200, deadline=None)
def test_triple_cross_orthogonality_floats(vals):
    x = Vec4(*vals[0:4])
    y = Vec4(*vals[4:8])
    z = Vec4(*vals[8:12])
    r = triple_cross(x, y, z)
    scale = max(x.norm() * y.norm() * z.norm(), 1e-30)
    assert abs(r.dot(x)) <= 1e-12 * scale * max(x.norm(), 1.0)
    assert abs(r.dot(y)) <= 1e-12 * scale * max(y.norm(), 1.0)
    assert abs(r.dot(z)) <= 1e-12 * scale * max(z.norm(), 1.0)


def _cofactor_det_oracle(m: SymMat3) -> float:
    rows = [list(r) for r in m.rows()]
    return float(np.linalg.det(np.array(rows)))


def test_sym3_det_examples():
    assert sym3_det(SymMat3.identity()) == 1.0
    assert sym3_det(SymMat3.diag(2.0, 3.0, 4.0)) == 24.0
    m = SymMat3(2.0, 1.0, 0.0, 3.0, 1.0, 2.0)  # E=2 F=1 A=0 G=3 B=1 C=2
    assert sym3_det(m) == 8.0
    assert _cofactor_det_oracle(m) == pytest.approx(8.0, rel=1e-12)


def test_sym3_det_matches_oracle_random():
    rng = random.Random(7)
    for _ in range(100):
        m = SymMat3(*(rng.uniform(-4, 4) for _ in range(6)))
        assert sym3_det(m) == pytest.approx(_cofactor_det_oracle(m), rel=1e-10, abs=1e-10)


def _random_spd(rng, jitter=1.0) -> SymMat3:
    a = np.array([[rng.uniform(-2, 2) for _ in range(3)] for _ in range(3)])
    m = a @ a.T + jitter * np.eye(3)
    return SymMat3(m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2])


def test_sym3_inverse_examples():
    assert sym3_inverse(SymMat3.identity()) == SymMat3.identity()
    inv = sym3_inverse(SymMat3.diag(2.0, 4.0, 8.0))
    assert inv == SymMat3.diag(0.5, 0.25, 0.125)


def test_sym3_inverse_residual_and_symmetry():
    rng = random.Random(11)
    for _ in range(100):
        m = _random_spd(rng)
        inv = sym3_inverse(m)
        prod = mat3_product(m.rows(), inv.rows())
        for i in range(3):
            for j in range(3):
                want = 1.0 if i == j else 0.0
                assert prod[i][j] == pytest.approx(want, abs=1e-12)
        assert inv.m12 == inv.rows()[1][0]  # structural symmetry


def test_sym3_inverse_det_reciprocal():
    rng = random.Random(13)
    for _ in range(50):
        m = _random_spd(rng)
        inv = sym3_inverse(m)
        assert sym3_det(inv) == pytest.approx(1.0 / sym3_det(m), rel=1e-10)


def test_sym3_inverse_singular():
    # rank-1 matrix: v v^T
    m = SymMat3(1.0, 2.0, 3.0, 4.0, 6.0, 9.0)
    with pytest.raises(SingularMatrix) as err:
        sym3_inverse(m)
    assert hasattr(err.value, "det")


def test_mat3_product_examples():
    ident = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    b = ((1.0, 2.0, 3.0), (4.0, 5.0, 6.0), (7.0, 8.0, 9.0))
    assert mat3_product(ident, b) == b
    d1 = ((1.0, 0.0, 0.0), (0.0, 2.0, 0.0), (0.0, 0.0, 3.0))
    d2 = ((4.0, 0.0, 0.0), (0.0, 5.0, 0.0), (0.0, 0.0, 6.0))
    assert mat3_product(d1, d2) == ((4.0, 0.0, 0.0), (0.0, 10.0, 0.0), (0.0, 0.0, 18.0))


def test_mat3_product_triple_loop_oracle():
    rng = random.Random(17)
    for _ in range(50):
        a = tuple(tuple(rng.uniform(-3, 3) for _ in range(3)) for _ in range(3))
        b = tuple(tuple(rng.uniform(-3, 3) for _ in range(3)) for _ in range(3))
        got = mat3_product(a, b)
        want = [[0.0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    want[i][j] += a[i][k] * b[k][j]
        for i in range(3):
            for j in range(3):
                assert got[i][j] == pytest.approx(want[i][j], rel=1e-13, abs=1e-13)


def test_eigenvalues_examples():
    assert sym3_eigenvalues(SymMat3.diag(3.0, 1.0, 2.0)) == (1.0, 2.0, 3.0)
    assert sym3_eigenvalues(SymMat3.identity()) == (1.0, 1.0, 1.0)


def test_eigenvalues_trace_det_and_charpoly():
    rng = random.Random(19)
    for _ in range(100):
        m = SymMat3(*(rng.uniform(-3, 3) for _ in range(6)))
        evs = sym3_eigenvalues(m)
        tr = m.trace()
        det = sym3_det(m)
        scale = max(1.0, abs(tr), abs(det))
        assert sum(evs) == pytest.approx(tr, rel=1e-9, abs=1e-9 * scale)
        assert evs[0] * evs[1] * evs[2] == pytest.approx(det, rel=1e-9, abs=1e-9 * scale)
        # characteristic polynomial residual bound
        fro = math.sqrt(sum(e * e for e in (m.m11, m.m22, m.m33)) + 2 * (m.m12**2 + m.m13**2 + m.m23**2))
        for lam in evs:
            shifted = SymMat3(m.m11 - lam, m.m12, m.m13, m.m22 - lam, m.m23, m.m33 - lam)
            assert abs(sym3_det(shifted)) <= 1e-9 * (1.0 + fro**3)


def test_eigenvalues_match_numpy():
    rng = random.Random(23)
    for _ in range(100):
        m = SymMat3(*(rng.uniform(-5, 5) for _ in range(6)))
        got = sym3_eigenvalues(m)
        want = np.linalg.eigvalsh(np.array(m.rows()))
        for g, w in zip(got, want):
            assert g == pytest.approx(w, rel=1e-9, abs=1e-9)


def test_vec4_norm_invariants():
    assert Vec4(0, 0, 0, 0).norm() == 0.0
    v = Vec4(1.0, -2.0, 2.0, 4.0)
    assert v.norm() == pytest.approx(5.0)
    assert (v - v).norm() == 0.0
