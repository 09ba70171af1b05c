"""Curvatures of a hypersurface in 4-space, by two independent routes.

The i-th curvatures are the normalized elementary symmetric functions of
the principal curvatures: binom(3, i) * C_i = s_i.  C1 is the mean
curvature, C3 the Gauss-Kronecker curvature.  One route evaluates the
closed rational expressions in the coefficients of the first and second
fundamental forms; the other reads the characteristic-polynomial
coefficients of the shape operator.  They must agree, and the tests hold
them to that.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SingularMatrix
from .geom4 import INVERSION_EPS, Mat3, SymMat3, sym3_det, sym3_eigenvalues


@dataclass(frozen=True, slots=True)
class CurvatureSet:
    """The curvatures C0..C3 (C0 is 1 by definition) plus optional

    principal curvatures, sorted ascending, for charts where the shape
    operator is symmetric in the given frame.
    """

    c1: float
    c2: float
    c3: float
    c0: float = 1.0
    principal: tuple[float, float, float] | None = None


def curvature_scale(cs: CurvatureSet) -> float:
    """A common length^-1 scale: the curvatures have different physical

    dimensions (length^-1, length^-2, length^-3), so tolerances are taken
    against powers of this scale.
    """
    return max(1.0, abs(cs.c1), abs(cs.c2) ** 0.5, abs(cs.c3) ** (1.0 / 3.0))


def curvatures_closed_form(first: SymMat3, second: SymMat3) -> CurvatureSet:
    """C1, C2, C3 as rational expressions in the form coefficients.

    With first = (E,F,A;F,G,B;A,B,C) and second = (L,M,P;M,N,T;P,T,V):

        3 det(I) C1 = (EN+GL-2FM)C + (EG-F^2)V - LB^2 - NA^2
                      - 2(APG - BPF - ATF + BTE - ABM)
        3 det(I) C2 = (EN+GL-2FM)V + (LN-M^2)C - ET^2 - GP^2
                      - 2(APN - BPM - ATM + BTL - PTF)
          det(I) C3 = (LN-M^2)V - LT^2 + 2MPT - NP^2
    """
    e, f, a, g, b, c = first.entries()
    ll, m, p, n, t, v = second.entries()
    det1 = sym3_det(first)
    scale = first.max_abs()
    if abs(det1) <= INVERSION_EPS * max(scale, 1e-300) ** 3:
        raise SingularMatrix(det1, "first fundamental form is singular")
    num1 = (
        (e * n + g * ll - 2 * f * m) * c
        + (e * g - f * f) * v
        - ll * b * b
        - n * a * a
        - 2 * (a * p * g - b * p * f - a * t * f + b * t * e - a * b * m)
    )
    num2 = (
        (e * n + g * ll - 2 * f * m) * v
        + (ll * n - m * m) * c
        - e * t * t
        - g * p * p
        - 2 * (a * p * n - b * p * m - a * t * m + b * t * ll - p * t * f)
    )
    num3 = (ll * n - m * m) * v - ll * t * t + 2 * m * p * t - n * p * p
    return CurvatureSet(c1=num1 / (3 * det1), c2=num2 / (3 * det1), c3=num3 / det1)


def curvatures_charpoly(shape: Mat3) -> CurvatureSet:
    """Curvatures from the characteristic polynomial of the shape operator:

    for the monic cubic, C1 = tr(S)/3, C2 = (sum of principal 2x2
    minors)/3, C3 = det(S).
    """
    s = shape
    tr = s[0][0] + s[1][1] + s[2][2]
    minors = (
        s[0][0] * s[1][1]
        - s[0][1] * s[1][0]
        + s[0][0] * s[2][2]
        - s[0][2] * s[2][0]
        + s[1][1] * s[2][2]
        - s[1][2] * s[2][1]
    )
    det = (
        s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1])
        - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0])
        + s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0])
    )
    return CurvatureSet(c1=tr / 3.0, c2=minors / 3.0, c3=det)


def principal_curvatures(shape_sym: SymMat3) -> tuple[float, float, float]:
    """Eigenvalues of a symmetric shape operator, ascending.

    Only valid in frames where the shape operator is genuinely symmetric
    (rotational charts); the general non-symmetric eigenproblem is not
    needed and deliberately not provided.
    """
    return sym3_eigenvalues(shape_sym)


def is_j_minimal(cs: CurvatureSet, j: int, tol: float | None = None) -> bool:
    """True iff |C_j| <= tol; the default tolerance scales like the j-th

    power of the curvature scale so the test is dimensionally sane.
    """
    if j not in (1, 2, 3):
        raise ValueError(f"j must be 1, 2 or 3, got {j}")
    if tol is None:
        tol = 1e-9 * curvature_scale(cs) ** j
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    cj = (cs.c1, cs.c2, cs.c3)[j - 1]
    return abs(cj) <= tol
