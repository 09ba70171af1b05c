"""Fundamental forms, Gauss map and shape operator from a chart jet.

This is the generic pipeline: it knows nothing about rotational symmetry.
The Gauss map is the normalized triple cross product of the coordinate
tangents, taken in the order (x_u, x_v, x_w); no orientation correction is
applied, so the normal follows the chart's frame orientation.

The fourth fundamental form is computed by two independent routes — the
linear combination 3*C1*III - 3*C2*II + C3*I and the product III*S — and a
ConsistencyError is raised if they disagree.  That check is the strongest
internal correctness tripwire the pipeline has.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curvature import CurvatureSet, curvatures_closed_form
from .errors import ConsistencyError, DegenerateChart
from .geom4 import (
    Mat3,
    SymMat3,
    Vec4,
    dot4,
    mat3_product,
    sym3_inverse,
    sym_from_rows,
    triple_cross,
    triple_cross_components,
)
from .jets import ChartFn, Jet, Point3, evaluate_jet
from .taylor import TSeries

FOURTH_FORM_ROUTE_TOL = 1e-8


@dataclass(frozen=True, slots=True)
class FormsBundle:
    """All four forms, the Gauss map and the shape operator at one point."""

    first: SymMat3
    second: SymMat3
    third: SymMat3
    fourth: SymMat3
    gauss: Vec4
    shape: Mat3
    curvatures: CurvatureSet


def first_form(jet: Jet) -> SymMat3:
    """Pairwise inner products of the tangents, laid out (E,F,A;F,G,B;A,B,C)."""
    xu, xv, xw = jet.first
    return SymMat3(
        xu.dot(xu), xu.dot(xv), xu.dot(xw), xv.dot(xv), xv.dot(xw), xw.dot(xw)
    )


def gauss_map(jet: Jet) -> Vec4:
    """Unit normal along triple_cross(x_u, x_v, x_w).

    Raises DegenerateChart when the cross product is numerically zero
    relative to the cube of the tangent scale.
    """
    xu, xv, xw = jet.first
    cross = triple_cross(xu, xv, xw)
    norm = cross.norm()
    scale = max(xu.norm(), xv.norm(), xw.norm())
    if norm <= 1e-12 * max(scale, 1e-300) ** 3:
        raise DegenerateChart(f"tangents are linearly dependent (|cross|={norm!r})")
    return cross * (1.0 / norm)


def second_form(jet: Jet, gauss: Vec4) -> SymMat3:
    """Inner products of the second partials with the Gauss map,

    laid out (L,M,P;M,N,T;P,T,V).
    """
    return SymMat3(
        jet.xuu.dot(gauss),
        jet.xuv.dot(gauss),
        jet.xuw.dot(gauss),
        jet.xvv.dot(gauss),
        jet.xvw.dot(gauss),
        jet.xww.dot(gauss),
    )


def _gauss_derivatives(jet: Jet) -> tuple[Vec4, Vec4, Vec4, Vec4]:
    """(G, G_u, G_v, G_w) by differentiating the normalized cross product.

    The tangents, as functions of (u, v, w), are carried as degree-1 series
    seeded from the jet's first and second partials; the normalization then
    happens inside the algebra, so the derivatives are exact.
    """
    mixed = {
        0: ((2, 0, 0), (1, 1, 0), (1, 0, 1)),
        1: ((1, 1, 0), (0, 2, 0), (0, 1, 1)),
        2: ((1, 0, 1), (0, 1, 1), (0, 0, 2)),
    }

    def tangent_series(i: int):
        val = jet.first[i].as_tuple()
        grads = [jet.partial(a).as_tuple() for a in mixed[i]]
        comps = []
        for c in range(4):
            comps.append(
                TSeries(3, 1, [val[c], grads[0][c], grads[1][c], grads[2][c]])
            )
        return tuple(comps)

    tu, tv, tw = tangent_series(0), tangent_series(1), tangent_series(2)
    cross = triple_cross_components(tu, tv, tw)
    norm2 = dot4(cross, cross)
    scale = max(jet.first[i].norm() for i in range(3))
    if norm2.value <= (1e-12 * max(scale, 1e-300) ** 3) ** 2:
        raise DegenerateChart("tangents are linearly dependent")
    inv_norm = 1.0 / norm2.sqrt()
    g = tuple(c * inv_norm for c in cross)
    value = Vec4(*(c.value for c in g))
    gu = Vec4(*(c.partial((1, 0, 0)) for c in g))
    gv = Vec4(*(c.partial((0, 1, 0)) for c in g))
    gw = Vec4(*(c.partial((0, 0, 1)) for c in g))
    return value, gu, gv, gw


def third_form(jet: Jet) -> SymMat3:
    """Pairwise inner products of the Gauss map derivatives,

    laid out (X,Y,O;Y,Z,S;O,S,U).  Needs a jet of order >= 2.
    """
    _, gu, gv, gw = _gauss_derivatives(jet)
    return SymMat3(
        gu.dot(gu), gu.dot(gv), gu.dot(gw), gv.dot(gv), gv.dot(gw), gw.dot(gw)
    )


def shape_operator(first: SymMat3, second: SymMat3) -> Mat3:
    """S = I^-1 * II.  Generally not symmetric, hence a full 3x3."""
    inv = sym3_inverse(first)
    return mat3_product(inv.rows(), second.rows())


def fourth_form(
    first: SymMat3,
    second: SymMat3,
    third: SymMat3,
    shape: Mat3,
    curvatures: CurvatureSet,
) -> SymMat3:
    """IV = 3*C1*III - 3*C2*II + C3*I, cross-checked against III*S.

    The two routes must agree entrywise to FOURTH_FORM_ROUTE_TOL relative;
    disagreement means an implementation or conditioning fault, never an
    expected condition at regular points, so it raises ConsistencyError
    carrying both matrices.
    """
    combo = 3.0 * curvatures.c1 * third - 3.0 * curvatures.c2 * second + curvatures.c3 * first
    product = sym_from_rows(mat3_product(third.rows(), shape), symmetrize=True)
    scale = max(combo.max_abs(), product.max_abs(), 1.0)
    worst = max(abs(a - b) for a, b in zip(combo.entries(), product.entries()))
    if worst > FOURTH_FORM_ROUTE_TOL * scale:
        raise ConsistencyError(
            f"fourth-form routes disagree (max deviation {worst!r}, scale {scale!r})",
            combo,
            product,
        )
    return combo


def bundle(chart: ChartFn, point: Point3) -> FormsBundle:
    """One-call pipeline: jet -> forms -> shape -> curvatures -> IV."""
    jet = evaluate_jet(chart, point, 2)
    one = first_form(jet)
    gauss, gu, gv, gw = _gauss_derivatives(jet)
    two = second_form(jet, gauss)
    three = SymMat3(
        gu.dot(gu), gu.dot(gv), gu.dot(gw), gv.dot(gv), gv.dot(gw), gw.dot(gw)
    )
    shape = shape_operator(one, two)
    cs = curvatures_closed_form(one, two)
    four = fourth_form(one, two, three, shape, cs)
    return FormsBundle(one, two, three, four, gauss, shape, cs)


def identity_residuals(b: FormsBundle) -> dict[str, float]:
    """Scaled residuals of the structural identities tying the forms together.

    chain:      IV - 3 C1 III + 3 C2 II - C3 I = 0
    cayley:     I (S^3 - 3 C1 S^2 + 3 C2 S - C3 id) = 0
    det_ratio:  det II/det I = det III/det II = det IV/det III = C3
                (each ratio only where the denominator determinant is
                above the singularity tolerance)
    form_chain: II = I S, III = II S, IV = III S

    Each residual is the worst absolute entry deviation divided by the
    scale of the matrices involved (floored at 1), except det_ratio which
    is relative to the values compared.
    """
    from .geom4 import det3_rows, mat3_add, mat3_max_abs, mat3_scale, mat3_sub

    cs = b.curvatures
    out: dict[str, float] = {}

    summands = (b.fourth, 3.0 * cs.c1 * b.third, 3.0 * cs.c2 * b.second, cs.c3 * b.first)
    scale = max(max(m.max_abs() for m in summands), 1.0)
    chain = summands[0] - summands[1] + summands[2] - summands[3]
    out["chain"] = chain.max_abs() / scale

    s = b.shape
    one = b.first.rows()
    s2 = mat3_product(s, s)
    s3 = mat3_product(s2, s)
    t0 = mat3_product(one, s3)
    t1 = mat3_scale(mat3_product(one, s2), 3.0 * cs.c1)
    t2 = mat3_scale(mat3_product(one, s), 3.0 * cs.c2)
    t3 = mat3_scale(one, cs.c3)
    scale = max(mat3_max_abs(t0), mat3_max_abs(t1), mat3_max_abs(t2), mat3_max_abs(t3), 1.0)
    cayley = mat3_sub(mat3_add(mat3_sub(t0, t1), t2), t3)
    out["cayley"] = mat3_max_abs(cayley) / scale

    det1 = det3_rows(b.first.rows())
    det2 = det3_rows(b.second.rows())
    det3_ = det3_rows(b.third.rows())
    det4 = det3_rows(b.fourth.rows())
    det_res = 0.0
    for num, den, den_mat in (
        (det2, det1, b.first),
        (det3_, det2, b.second),
        (det4, det3_, b.third),
    ):
        if abs(den) > 1e-12 * max(den_mat.max_abs(), 1e-300) ** 3:
            ratio = num / den
            det_res = max(det_res, abs(ratio - cs.c3) / max(abs(cs.c3), abs(ratio), 1.0))
    out["det_ratio"] = det_res

    chain_res = 0.0
    prev = b.first.rows()
    for target in (b.second, b.third, b.fourth):
        prod = mat3_product(prev, s)
        scale = max(target.max_abs(), mat3_max_abs(prod), 1.0)
        worst = max(
            abs(target.entry(i, j) - prod[i][j]) for i in range(3) for j in range(3)
        )
        chain_res = max(chain_res, worst / scale)
        prev = target.rows()
    out["form_chain"] = chain_res
    return out
