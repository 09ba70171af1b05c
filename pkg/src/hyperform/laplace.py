"""The Laplace-Beltrami operator taken with the fourth fundamental form.

For a metric-like symmetric form (f_ij) with inverse (f^ij) and
determinant frak_f, the operator applied to a scalar is

    (1/|frak_f|^(1/2)) sum_ij d_i ( |frak_f|^(1/2) f^ij d_j phi ).

The determinant of the fourth form is negative on large parameter ranges,
so the absolute value under the square roots is essential; the inverse
f^ij itself is the honest matrix inverse, signs included.

Applied to the four coordinate functions of a rotational chart this
produces the eigen-relation Delta x = diag(Omega, Omega, Omega, Phi) x,
with Omega shared by the three spatial coordinates.  Two independent
routes are provided: `laplace_iv` differentiates the full inner expression
through degree-3 jets of the chart, and `eigenvalue_functions` evaluates
the closed forms for Omega and Phi built from the profile scalars.  The
two must agree; the tests hold them to that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateChart, DegenerateFourthForm
from .forms import bundle
from .geom4 import (
    SymMat3,
    adjugate3_rows,
    det3_rows,
    dot4,
    mat3_product,
    sym3_inverse,
    sym_from_rows,
    triple_cross_components,
)
from .jets import ChartFn, Point3
from .taylor import TSeries, as_series, variables

# |det IV| <= eps * scale^3 marks the fourth form as degenerate.
DEGENERATE_DET_EPS = 1e-14
# |phi(u)| below this makes the Phi quotient undefined at the point.
_PHI_FLOOR = 1e-12

# Default (v, w) probes: all with cos w well away from zero and the same
# sign, so one normal orientation is used throughout, and with every
# spatial coordinate bounded away from zero.
DEFAULT_V_SAMPLES = (0.7, 1.3, 2.9, 4.1)
DEFAULT_W_SAMPLES = (0.35, 5.9)


@dataclass(frozen=True, slots=True)
class LaplaceContext:
    """Fourth form, its inverse and determinant at one chart point."""

    f_ij: SymMat3
    f_upper: SymMat3
    frak_f: float
    chart: ChartFn
    point: Point3


def _check_fourth_det(det: float, scale: float) -> None:
    if abs(det) <= DEGENERATE_DET_EPS * max(scale, 1e-300) ** 3:
        raise DegenerateFourthForm(
            f"fourth form is numerically degenerate (det={det!r}, scale={scale!r})"
        )


def laplace_context(chart: ChartFn, point: Point3) -> LaplaceContext:
    """Evaluate the fourth form at the point and gate on its determinant."""
    forms = bundle(chart, point)
    four = forms.fourth
    det = det3_rows(four.rows())
    _check_fourth_det(det, four.max_abs())
    upper = sym3_inverse(four, eps=0.0)
    return LaplaceContext(four, upper, det, chart, tuple(point))


def laplace_iv_all(chart: ChartFn, point: Point3) -> tuple[float, float, float, float]:
    """The operator applied to all four coordinate functions at once.

    Every quantity (forms, inverse, determinant and the square roots) is
    carried as a truncated Taylor series of the chart parameters, so the
    outer derivatives are exact; no finite differences anywhere.
    """
    seeds = variables(point, 3, 3)
    comps = tuple(as_series(c, 3, 3) for c in chart(*seeds))
    if len(comps) != 4:
        raise ValueError("chart must return 4 components")

    grads = tuple(tuple(c.deriv(i) for c in comps) for i in range(3))  # degree 2
    cross = triple_cross_components(grads[0], grads[1], grads[2])
    norm2 = dot4(cross, cross)
    tangent_scale = max(
        max(abs(g.value) for g in grads[i]) for i in range(3)
    )
    if norm2.value <= (1e-12 * max(tangent_scale, 1e-300) ** 3) ** 2:
        raise DegenerateChart("tangents are linearly dependent")
    inv_norm = 1.0 / norm2.sqrt()
    gauss = tuple(c * inv_norm for c in cross)  # degree 2

    second = {}
    for i in range(3):
        for j in range(i, 3):
            second[(i, j)] = tuple(c.deriv(j) for c in grads[i])  # degree 1

    def sdot(a, b):
        return dot4(a, b)

    one = tuple(
        tuple(sdot(grads[i], grads[j]) for j in range(3)) for i in range(3)
    )
    two = tuple(
        tuple(sdot(second[(min(i, j), max(i, j))], gauss) for j in range(3))
        for i in range(3)
    )
    dgauss = tuple(tuple(g.deriv(i) for g in gauss) for i in range(3))  # degree 1
    three = tuple(
        tuple(sdot(dgauss[i], dgauss[j]) for j in range(3)) for i in range(3)
    )

    det1 = det3_rows(one)
    shape = mat3_product(adjugate3_rows(one), two)
    shape = tuple(tuple(e / det1 for e in row) for row in shape)  # degree 1
    four = mat3_product(three, shape)  # degree 1

    det4 = det3_rows(four)
    scale = max(abs(four[i][j].value) for i in range(3) for j in range(3))
    _check_fourth_det(det4.value, scale)
    root = det4.sqrt() if det4.value > 0 else (-det4).sqrt()
    upper = adjugate3_rows(four)
    upper = tuple(tuple(e / det4 for e in row) for row in upper)

    out = []
    for c in range(4):
        grad_c = tuple(comps[c].deriv(i) for i in range(3))
        divergence = 0.0
        for i in range(3):
            inner = root * (
                upper[i][0] * grad_c[0] + upper[i][1] * grad_c[1] + upper[i][2] * grad_c[2]
            )
            divergence += inner.deriv(i).value
        out.append(divergence / root.value)
    return tuple(out)


def laplace_iv(ctx: LaplaceContext, component: int) -> float:
    """The operator applied to one coordinate function of the immersion."""
    if component not in (1, 2, 3, 4):
        raise ValueError(f"component must be 1..4, got {component}")
    return laplace_iv_all(ctx.chart, ctx.point)[component - 1]


# -- closed forms for rotational charts -----------------------------------------


@dataclass(frozen=True, slots=True)
class ClosedFormEigen:
    """Closed-form Omega and Phi at one u.

    ``phi_eig`` is None where phi(u) is numerically zero — the quotient by
    phi is a pointwise operation and is not extrapolated; the un-divided
    left side is always available as ``phi_lhs``.
    """

    omega: float
    phi_eig: float | None
    phi_lhs: float


def eigenvalue_functions(p, u: float) -> ClosedFormEigen:
    """Omega and Phi from the profile scalars, sign-exactly.

    With the diagonal fourth form diag(d1, d2 cos^2 w, d2), where
    d1 = -psi^3/W^(7/2) and d2 = -phi'^3/(f W^(3/2)), and s1, s2 the signs
    of d1, d2:

        Omega = ( R' - 2 s2 f |d1|^(1/2) ) / ( f |d1|^(1/2) |d2| ),
                R = s1 |d2| f' / |d1|^(1/2)
        Phi   = s1 Q' / ( phi |d1|^(1/2) |d2| ),
                Q = |d2| phi' / |d1|^(1/2)

    The u-derivatives R' and Q' are taken by order-1 jet differentiation
    of the inner expressions, which need third profile derivatives.
    """
    from .rotational import ProfileCurve  # local import to avoid a cycle

    assert isinstance(p, ProfileCurve)
    sample = p.sample(u, order=3)
    fs = p.f_series(u, 3)
    ps = p.phi_series(u, 3)
    f1 = fs.deriv(0)
    f2 = f1.deriv(0)
    p1 = ps.deriv(0)
    p2 = p1.deriv(0)
    psi = f1 * p2 - f2 * p1  # degree 1
    w = f1 * f1 + p1 * p1  # degree 2
    d1 = -(psi * psi * psi) / w.powr(3.5)
    d2 = -(p1 * p1 * p1) / (fs * w.powr(1.5))
    scale = max(abs(d1.value), abs(d2.value))
    _check_fourth_det(d1.value * d2.value * d2.value, scale)
    s1 = 1.0 if d1.value > 0 else -1.0
    s2 = 1.0 if d2.value > 0 else -1.0
    a1 = d1 * s1
    a2 = d2 * s2
    sq1 = a1.sqrt()
    denom = sq1.value * a2.value
    r_inner = (a2 * f1) * s1 / sq1
    q_inner = (a2 * p1) / sq1
    omega = (r_inner.deriv(0).value - 2.0 * s2 * sample.f * sq1.value) / (sample.f * denom)
    phi_lhs = s1 * q_inner.deriv(0).value / denom
    phi_eig = None if abs(sample.phi) < _PHI_FLOOR else phi_lhs / sample.phi
    return ClosedFormEigen(omega, phi_eig, phi_lhs)


# -- grid verification -----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class EigenResult:
    """Direct-route eigen data at one u, probed over a (v, w) grid.

    ``omega_components`` are the per-spatial-coordinate ratios (their
    mutual agreement is part of the claim being checked); ``spreads`` are
    the relative (v, w)-variations of each ratio; ``residuals`` the worst
    relative eigen-equation defects per coordinate.  ``error`` is set (and
    the numeric fields zeroed/None) when the sample is degenerate.
    """

    u: float
    ok: bool
    omega: float = 0.0
    phi_eig: float | None = None
    omega_components: tuple[float, float, float] = (0.0, 0.0, 0.0)
    spreads: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    residuals: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    error: str | None = None


def eigen_check(
    p,
    u_samples: Sequence[float],
    v_samples: Sequence[float] = DEFAULT_V_SAMPLES,
    w_samples: Sequence[float] = DEFAULT_W_SAMPLES,
) -> list[EigenResult]:
    """Probe the eigen-relation at each u over a (v, w) grid.

    Degenerate samples are reported individually and do not affect the
    others.  The default grid keeps cos w positive so a single normal
    orientation is in force.
    """
    from .rotational import rot_chart

    chart = rot_chart(p)
    results = []
    for u in u_samples:
        try:
            ratios = ([], [], [], [])
            values = ([], [], [], [])
            deltas = ([], [], [], [])
            for v in v_samples:
                for w in w_samples:
                    delta = laplace_iv_all(chart, (u, v, w))
                    xs = tuple(float(c) for c in chart(u, v, w))
                    for i in range(4):
                        values[i].append(xs[i])
                        deltas[i].append(delta[i])
                        if abs(xs[i]) > _PHI_FLOOR:
                            ratios[i].append(delta[i] / xs[i])
        except DegenerateFourthForm as exc:
            results.append(EigenResult(u=u, ok=False, error=str(exc)))
            continue

        def stats(vals):
            mean = sum(vals) / len(vals)
            spread = (max(vals) - min(vals)) / max(abs(mean), 1e-30)
            return mean, spread

        comp_means = []
        spreads = []
        for i in range(3):
            mean, spread = stats(ratios[i])
            comp_means.append(mean)
            spreads.append(spread)
        omega = sum(comp_means) / 3.0
        if ratios[3]:
            phi_eig, phi_spread = stats(ratios[3])
        else:
            phi_eig, phi_spread = None, 0.0
        spreads.append(phi_spread)

        residuals = []
        for i in range(4):
            lam = omega if i < 3 else phi_eig
            if lam is None:
                residuals.append(0.0)
                continue
            worst = 0.0
            for x, d in zip(values[i], deltas[i]):
                scale = max(abs(d), abs(lam * x), 1e-30)
                worst = max(worst, abs(d - lam * x) / scale)
            residuals.append(worst)

        results.append(
            EigenResult(
                u=u,
                ok=True,
                omega=omega,
                phi_eig=phi_eig,
                omega_components=tuple(comp_means),
                spreads=tuple(spreads),
                residuals=tuple(residuals),
            )
        )
    return results
