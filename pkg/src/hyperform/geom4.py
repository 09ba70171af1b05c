"""Small fixed-dimension linear algebra for hypersurface work in 4-space.

Vectors live in Euclidean 4-space; the bilinear forms of a 3-dimensional
hypersurface are symmetric 3x3 matrices.  Everything here is closed-form:
no iterative solvers, no external linear-algebra dependency.

The generic helpers (`det3_rows`, `adjugate3_rows`, `mat3_product`, the
triple cross product) only use ring arithmetic, so they accept entries that
are either floats or truncated Taylor series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SingularMatrix

# Relative singularity threshold for 3x3 inversion: |det| <= eps * scale^3
# where scale is the largest absolute entry.
INVERSION_EPS = 1e-12

Mat3 = tuple[tuple[float, float, float], tuple[float, float, float], tuple[float, float, float]]


@dataclass(frozen=True, slots=True)
class Vec4:
    """A point or vector of Euclidean 4-space."""

    x1: float
    x2: float
    x3: float
    x4: float

    def as_tuple(self):
        return (self.x1, self.x2, self.x3, self.x4)

    def dot(self, other: "Vec4") -> float:
        return (
            self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3 + self.x4 * other.x4
        )

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def __add__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3, self.x4 + other.x4)

    def __sub__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3, self.x4 - other.x4)

    def __mul__(self, k: float) -> "Vec4":
        return Vec4(self.x1 * k, self.x2 * k, self.x3 * k, self.x4 * k)

    __rmul__ = __mul__

    def __neg__(self) -> "Vec4":
        return Vec4(-self.x1, -self.x2, -self.x3, -self.x4)


def dot4(a, b):
    """Inner product over 4-component sequences of any scalar ring."""
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]


def triple_cross_components(x, y, z):
    """Componentwise triple cross product over 4-component sequences.

    The result is the formal determinant expansion along the basis row, so
    it is alternating in (x, y, z) and orthogonal to each argument.
    """
    x1, x2, x3, x4 = x[0], x[1], x[2], x[3]
    y1, y2, y3, y4 = y[0], y[1], y[2], y[3]
    z1, z2, z3, z4 = z[0], z[1], z[2], z[3]
    c1 = x2 * y3 * z4 - x2 * y4 * z3 - x3 * y2 * z4 + x3 * y4 * z2 + x4 * y2 * z3 - x4 * y3 * z2
    c2 = -x1 * y3 * z4 + x1 * y4 * z3 + x3 * y1 * z4 - x3 * z1 * y4 - y1 * x4 * z3 + x4 * y3 * z1
    c3 = x1 * y2 * z4 - x1 * y4 * z2 - x2 * y1 * z4 + x2 * z1 * y4 + y1 * x4 * z2 - x4 * y2 * z1
    c4 = -x1 * y2 * z3 + x1 * y3 * z2 + x2 * y1 * z3 - x2 * y3 * z1 - x3 * y1 * z2 + x3 * y2 * z1
    return (c1, c2, c3, c4)


def triple_cross(x: Vec4, y: Vec4, z: Vec4) -> Vec4:
    """Triple vector product of E^4; degenerate inputs yield the zero vector."""
    return Vec4(*triple_cross_components(x.as_tuple(), y.as_tuple(), z.as_tuple()))


@dataclass(frozen=True, slots=True)
class SymMat3:
    """Symmetric 3x3 matrix; only the upper triangle is stored.

    Entry names follow row-major upper-triangle order, so a first
    fundamental form (E, F, A; F, G, B; A, B, C) is stored as
    m11=E, m12=F, m13=A, m22=G, m23=B, m33=C.
    """

    m11: float
    m12: float
    m13: float
    m22: float
    m23: float
    m33: float

    @staticmethod
    def diag(a: float, b: float, c: float) -> "SymMat3":
        return SymMat3(a, 0.0, 0.0, b, 0.0, c)

    @staticmethod
    def identity() -> "SymMat3":
        return SymMat3.diag(1.0, 1.0, 1.0)

    def rows(self) -> Mat3:
        return (
            (self.m11, self.m12, self.m13),
            (self.m12, self.m22, self.m23),
            (self.m13, self.m23, self.m33),
        )

    def entry(self, i: int, j: int) -> float:
        return self.rows()[i][j]

    def entries(self):
        return (self.m11, self.m12, self.m13, self.m22, self.m23, self.m33)

    def max_abs(self) -> float:
        return max(abs(e) for e in self.entries())

    def trace(self) -> float:
        return self.m11 + self.m22 + self.m33

    def __add__(self, other: "SymMat3") -> "SymMat3":
        return SymMat3(*(a + b for a, b in zip(self.entries(), other.entries())))

    def __sub__(self, other: "SymMat3") -> "SymMat3":
        return SymMat3(*(a - b for a, b in zip(self.entries(), other.entries())))

    def __mul__(self, k: float) -> "SymMat3":
        return SymMat3(*(a * k for a in self.entries()))

    __rmul__ = __mul__

    def __neg__(self) -> "SymMat3":
        return SymMat3(*(-a for a in self.entries()))


def sym3_det(m: SymMat3) -> float:
    """det of a symmetric 3x3: (EG - F^2)C - EB^2 + 2FAB - GA^2."""
    e, f, a, g, b, c = m.m11, m.m12, m.m13, m.m22, m.m23, m.m33
    return (e * g - f * f) * c - e * b * b + 2.0 * f * a * b - g * a * a


def sym3_inverse(m: SymMat3, eps: float = INVERSION_EPS) -> SymMat3:
    """Inverse via the adjugate; raises SingularMatrix below the tolerance.

    The threshold is scale-relative: |det| <= eps * max_entry^3.
    """
    det = sym3_det(m)
    scale = m.max_abs()
    if abs(det) <= eps * max(scale, 1e-300) ** 3:
        raise SingularMatrix(det)
    e, f, a, g, b, c = m.m11, m.m12, m.m13, m.m22, m.m23, m.m33
    inv = 1.0 / det
    return SymMat3(
        (g * c - b * b) * inv,
        (a * b - f * c) * inv,
        (f * b - a * g) * inv,
        (e * c - a * a) * inv,
        (a * f - e * b) * inv,
        (e * g - f * f) * inv,
    )


def mat3_identity() -> Mat3:
    return ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))


def mat3_product(a, b):
    """Standard 3x3 matrix product over row-tuples (any scalar ring)."""
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


def mat3_scale(a, k):
    return tuple(tuple(a[i][j] * k for j in range(3)) for i in range(3))


def mat3_sub(a, b):
    return tuple(tuple(a[i][j] - b[i][j] for j in range(3)) for i in range(3))


def mat3_add(a, b):
    return tuple(tuple(a[i][j] + b[i][j] for j in range(3)) for i in range(3))


def mat3_max_abs(a) -> float:
    return max(abs(a[i][j]) for i in range(3) for j in range(3))


def det3_rows(a):
    """Cofactor-expansion determinant over row-tuples (any scalar ring)."""
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def adjugate3_rows(a):
    """Adjugate (transposed cofactor matrix) over row-tuples (any scalar ring)."""
    return (
        (
            a[1][1] * a[2][2] - a[1][2] * a[2][1],
            a[0][2] * a[2][1] - a[0][1] * a[2][2],
            a[0][1] * a[1][2] - a[0][2] * a[1][1],
        ),
        (
            a[1][2] * a[2][0] - a[1][0] * a[2][2],
            a[0][0] * a[2][2] - a[0][2] * a[2][0],
            a[0][2] * a[1][0] - a[0][0] * a[1][2],
        ),
        (
            a[1][0] * a[2][1] - a[1][1] * a[2][0],
            a[0][1] * a[2][0] - a[0][0] * a[2][1],
            a[0][0] * a[1][1] - a[0][1] * a[1][0],
        ),
    )


def sym_from_rows(a, symmetrize: bool = False) -> SymMat3:
    """Build a SymMat3 from row-tuples, optionally averaging the off-diagonals."""
    if symmetrize:
        return SymMat3(
            a[0][0],
            0.5 * (a[0][1] + a[1][0]),
            0.5 * (a[0][2] + a[2][0]),
            a[1][1],
            0.5 * (a[1][2] + a[2][1]),
            a[2][2],
        )
    return SymMat3(a[0][0], a[0][1], a[0][2], a[1][1], a[1][2], a[2][2])


def sym3_eigenvalues(m: SymMat3) -> tuple[float, float, float]:
    """Eigenvalues of a symmetric 3x3, ascending, by the trigonometric method.

    Real symmetric matrices have real spectra, so the Cardano discriminant
    argument lies in [-1, 1] up to roundoff; it is clamped before acos.
    """
    p1 = m.m12 * m.m12 + m.m13 * m.m13 + m.m23 * m.m23
    if p1 == 0.0:
        return tuple(sorted((m.m11, m.m22, m.m33)))
    q = m.trace() / 3.0
    p2 = (m.m11 - q) ** 2 + (m.m22 - q) ** 2 + (m.m33 - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    binv = 1.0 / p
    b = SymMat3(
        (m.m11 - q) * binv,
        m.m12 * binv,
        m.m13 * binv,
        (m.m22 - q) * binv,
        m.m23 * binv,
        (m.m33 - q) * binv,
    )
    r = sym3_det(b) / 2.0
    r = max(-1.0, min(1.0, r))
    phi = math.acos(r) / 3.0
    e_hi = q + 2.0 * p * math.cos(phi)
    e_lo = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    e_mid = 3.0 * q - e_hi - e_lo
    return tuple(sorted((e_lo, e_mid, e_hi)))
