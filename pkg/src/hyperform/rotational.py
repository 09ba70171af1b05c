"""Rotational hypersurfaces of 4-space generated by a profile curve.

A profile curve (f(u), phi(u)) in the x1-x4 plane, rotated about the
x4-axis, sweeps out the chart

    x(u, v, w) = (f cos v cos w, f sin v cos w, f sin w, phi).

Everything about such a hypersurface reduces to the two profile scalars

    W   = f'^2 + phi'^2        (squared speed of the profile)
    psi = f' phi'' - f'' phi'  (signed curvature numerator)

and this module evaluates the diagonal closed forms for I, II, III, IV,
the shape operator, the curvatures, the j-minimality residuals, the
arc-length relations and the hypersurface classification built on them.

Orientation note: the generic pipeline normalizes triple_cross(x_u, x_v,
x_w), whose direction flips with the sign of cos w because the coordinate
frame changes orientation across the parallels w = +-pi/2.  The closed
forms here use the smooth global normal (the orientation the generic
pipeline produces where cos w > 0).  `pipeline_orientation` returns the
factor (+1 or -1) relating the two at a given w; quantities odd in the
normal (II, S, C1, C3, IV) pick up that factor, even ones (I, III, C2)
do not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import dsl, taylor
from .curvature import CurvatureSet, curvature_scale, is_j_minimal
from .errors import DegenerateChart, DomainError, NotArcLength
from .geom4 import SymMat3, Vec4
from .jets import ChartFn
from .taylor import TSeries

# |cos w| below this is treated as a coordinate singularity of the chart.
DEGENERATE_BAND = 1e-6
# Axis-avoidance and regularity thresholds, applied pointwise.
_AXIS_EPS = 1e-12
_SPEED_EPS = 1e-24
# Arc-length check tolerance |W - 1|.
ARC_LENGTH_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class ProfileSample:
    """Profile values and derivatives at one u, plus W and psi."""

    u: float
    f: float
    f1: float
    f2: float
    f3: float
    phi: float
    p1: float
    p2: float
    p3: float

    @property
    def W(self) -> float:
        return self.f1 * self.f1 + self.p1 * self.p1

    @property
    def psi(self) -> float:
        return self.f1 * self.p2 - self.f2 * self.p1


@dataclass(frozen=True, slots=True)
class ProfileCurve:
    """The generating curve (f(u), phi(u)) with derivative access to order 3.

    ``domain`` is an open interval; +-inf ends are fine.  Axis avoidance
    (f != 0) and regularity (W > 0) are checked pointwise at evaluation,
    since they cannot be decided globally for arbitrary expressions.
    """

    f: dsl.Expr
    phi: dsl.Expr
    params: Mapping[str, float]
    domain: tuple[float, float] = (-math.inf, math.inf)
    name: str | None = None

    @staticmethod
    def from_source(
        f_src: str,
        phi_src: str,
        params: Mapping[str, float] | None = None,
        domain: tuple[float, float] = (-math.inf, math.inf),
        name: str | None = None,
    ) -> "ProfileCurve":
        return ProfileCurve(dsl.parse(f_src), dsl.parse(phi_src), dict(params or {}), domain, name)

    def contains(self, u: float) -> bool:
        lo, hi = self.domain
        return lo < u < hi

    def require(self, u: float) -> None:
        if not self.contains(u):
            raise DomainError(f"u={u!r} outside profile domain {self.domain}")

    def f_series(self, u, deg: int = 3) -> TSeries:
        """f over a univariate series seeded at u (u may itself be a series)."""
        seed = u if isinstance(u, TSeries) else TSeries.variable(0, u, 1, deg)
        out = dsl.evaluate(self.f, self.params, seed)
        return taylor.as_series(out, seed.nvars, seed.deg)

    def phi_series(self, u, deg: int = 3) -> TSeries:
        seed = u if isinstance(u, TSeries) else TSeries.variable(0, u, 1, deg)
        out = dsl.evaluate(self.phi, self.params, seed)
        return taylor.as_series(out, seed.nvars, seed.deg)

    def sample(self, u: float, order: int = 3) -> ProfileSample:
        """Profile jet at u; checks the domain and pointwise regularity."""
        self.require(u)
        fs = self.f_series(u, order)
        ps = self.phi_series(u, order)

        def derivs(s: TSeries):
            out = [s.value, 0.0, 0.0, 0.0]
            for k in range(1, order + 1):
                out[k] = s.partial((k,))
            return out

        f0, f1, f2, f3 = derivs(fs)
        p0, p1, p2, p3 = derivs(ps)
        if abs(f0) <= _AXIS_EPS:
            raise DegenerateChart(f"profile meets the rotation axis at u={u!r} (f={f0!r})")
        if f1 * f1 + p1 * p1 <= _SPEED_EPS:
            raise DegenerateChart(f"profile is not regular at u={u!r} (W~0)")
        return ProfileSample(u, f0, f1, f2, f3, p0, p1, p2, p3)


# -- presets -----------------------------------------------------------------

_PRESET_SPECS = {
    # name: (f_src, phi_src, defaults, domain builder, doc)
    "catenoid": (
        "a*cosh(u)",
        "a*u",
        {"a": 1.0},
        lambda p: (-math.inf, math.inf),
        "catenoidal hypersurface, f = a cosh u, phi = a u",
    ),
    "hypersphere": (
        "r*cos(u)",
        "r*sin(u)",
        {"r": 1.0},
        lambda p: (0.0, math.pi),
        "round hypersphere of radius r; u = pi/2 touches the axis and is "
        "rejected pointwise",
    ),
    "cylinder": (
        "r",
        "u",
        {"r": 1.0},
        lambda p: (-math.inf, math.inf),
        "right spherical hypercylinder of radius r",
    ),
    "linear": (
        "u",
        "c1*u + c2",
        {"c1": 1.0, "c2": 0.0},
        lambda p: (0.0, math.inf),
        "cone-like profile phi = c1 f + c2 over f = u; psi vanishes "
        "identically, so the third curvature is zero everywhere",
    ),
    "two_minimal": (
        "u",
        "2*c1*sqrt(u - c1^2) + c2",
        {"c1": 1.0, "c2": 0.0},
        lambda p: (p["c1"] ** 2, math.inf),
        "profile with identically vanishing second curvature over f = u "
        "(real solution branch of the 2-minimality equation)",
    ),
}

PRESET_NAMES = tuple(sorted(_PRESET_SPECS))


def preset(name: str, **params: float) -> ProfileCurve:
    """Build a named preset profile; unknown parameters are rejected."""
    try:
        f_src, phi_src, defaults, domain_fn, _doc = _PRESET_SPECS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}") from None
    unknown = set(params) - set(defaults)
    if unknown:
        raise ValueError(f"preset {name!r} does not take parameters {sorted(unknown)}")
    merged = {**defaults, **params}
    return ProfileCurve.from_source(f_src, phi_src, merged, domain_fn(merged), name)


def preset_doc(name: str) -> str:
    return _PRESET_SPECS[name][4]


# -- chart and closed forms ----------------------------------------------------


def rot_chart(p: ProfileCurve) -> ChartFn:
    """The chart (u,v,w) -> (f cos v cos w, f sin v cos w, f sin w, phi).

    Evaluatable over floats and over the jet algebra.  The u-domain is
    checked on the order-0 part; v and w are unrestricted (the degenerate
    band |cos w| < 1e-6 is a grid concern, not a chart error).
    """

    def chart(u, v, w):
        u0 = u.value if isinstance(u, TSeries) else float(u)
        if not p.contains(u0):
            raise DomainError(f"u={u0!r} outside profile domain {p.domain}")
        f = dsl.evaluate(p.f, p.params, u)
        phi = dsl.evaluate(p.phi, p.params, u)
        cv, sv = taylor.cos(v), taylor.sin(v)
        cw, sw = taylor.cos(w), taylor.sin(w)
        return (f * cv * cw, f * sv * cw, f * sw, phi)

    return chart


def pipeline_orientation(w: float) -> float:
    """Sign relating the generic pipeline's normal to the smooth one here.

    +1 where cos w > 0, -1 where cos w < 0; raises on the degenerate band.
    """
    c = math.cos(w)
    if abs(c) < DEGENERATE_BAND:
        raise DegenerateChart(f"w={w!r} lies on the degenerate band |cos w| < {DEGENERATE_BAND}")
    return 1.0 if c > 0 else -1.0


@dataclass(frozen=True, slots=True)
class RotClosedForms:
    """Closed-form forms bundle of a rotational hypersurface at (u, w).

    All four form matrices and the shape operator are diagonal; the shape
    operator's last two entries coincide.  ``gauss`` additionally depends
    on v, supplied at evaluation.
    """

    u: float
    w: float
    W: float
    psi: float
    first: SymMat3
    second: SymMat3
    third: SymMat3
    fourth: SymMat3
    shape: SymMat3
    gauss: Vec4
    curvatures: CurvatureSet


def closed_forms(p: ProfileCurve, u: float, w: float, v: float = 0.0) -> RotClosedForms:
    """Evaluate the diagonal closed forms:

        I   = diag(W, f^2 cos^2 w, f^2)
        II  = diag(-psi/W^(1/2), -f phi' cos^2 w/W^(1/2), -f phi'/W^(1/2))
        III = diag(psi^2/W^2, phi'^2 cos^2 w/W, phi'^2/W)
        S   = diag(-psi/W^(3/2), -phi'/(f W^(1/2)), -phi'/(f W^(1/2)))
        IV  = diag(-psi^3/W^(7/2), -phi'^3 cos^2 w/(f W^(3/2)),
                   -phi'^3/(f W^(3/2)))

    Raises DegenerateChart on |cos w| < 1e-6 and DomainError outside the
    u-domain.
    """
    cw = math.cos(w)
    if abs(cw) < DEGENERATE_BAND:
        raise DegenerateChart(f"w={w!r} lies on the degenerate band |cos w| < {DEGENERATE_BAND}")
    s = p.sample(u, order=2)
    f, f1, p1 = s.f, s.f1, s.p1
    W, psi = s.W, s.psi
    rw = math.sqrt(W)
    cw2 = cw * cw
    one = SymMat3.diag(W, f * f * cw2, f * f)
    two = SymMat3.diag(-psi / rw, -f * p1 * cw2 / rw, -f * p1 / rw)
    three = SymMat3.diag(psi * psi / (W * W), p1 * p1 * cw2 / W, p1 * p1 / W)
    shape = SymMat3.diag(-psi / (W * rw), -p1 / (f * rw), -p1 / (f * rw))
    four = SymMat3.diag(
        -(psi**3) / (W**3 * rw),
        -(p1**3) * cw2 / (f * W * rw),
        -(p1**3) / (f * W * rw),
    )
    gauss = Vec4(
        p1 / rw * math.cos(v) * cw,
        p1 / rw * math.sin(v) * cw,
        p1 / rw * math.sin(w),
        -f1 / rw,
    )
    return RotClosedForms(
        u, w, W, psi, one, two, three, four, shape, gauss, rot_curvatures(p, u)
    )


def rot_curvatures(p: ProfileCurve, u: float) -> CurvatureSet:
    """Curvatures of the rotational hypersurface; independent of v and w.

        C1 = -(2 phi' W + f psi) / (3 f W^(3/2))
        C2 = phi' (2 f psi + phi' W) / (3 f^2 W^2)
        C3 = -phi'^2 psi / (f^2 W^(5/2))

    These agree with the shape operator's characteristic polynomial and
    with the general coefficient formulas; the principal curvatures are the
    diagonal shape entries, sorted.
    """
    s = p.sample(u, order=2)
    f, p1 = s.f, s.p1
    W, psi = s.W, s.psi
    rw = math.sqrt(W)
    c1 = -(2.0 * p1 * W + f * psi) / (3.0 * f * W * rw)
    c2 = p1 * (2.0 * f * psi + p1 * W) / (3.0 * f * f * W * W)
    c3 = -(p1 * p1) * psi / (f * f * W * W * rw)
    k1 = -psi / (W * rw)
    k23 = -p1 / (f * rw)
    principal = tuple(sorted((k1, k23, k23)))
    return CurvatureSet(c1=c1, c2=c2, c3=c3, principal=principal)


# -- minimality ----------------------------------------------------------------

# ODE left-hand sides whose vanishing characterizes j-minimality, paired
# with the signed denominator that scales each back to the curvature C_j.


def minimality_residual(p: ProfileCurve, u: float, j: int) -> float:
    """Left side of the j-minimality equation, scaled by the signed

    denominator of C_j so the residual equals C_j numerically:

        j=1:  2 phi' W + f psi            over  -3 f W^(3/2)
        j=2:  phi' (2 f psi + phi' W)     over   3 f^2 W^2
        j=3:  phi'^2 psi                  over  -f^2 W^(5/2)

    In particular the residual vanishes exactly where C_j does, with the
    same sign.
    """
    if j not in (1, 2, 3):
        raise ValueError(f"j must be 1, 2 or 3, got {j}")
    s = p.sample(u, order=2)
    f, p1 = s.f, s.p1
    W, psi = s.W, s.psi
    rw = math.sqrt(W)
    if j == 1:
        lhs = 2.0 * p1 * W + f * psi
        denom = -3.0 * f * W * rw
    elif j == 2:
        lhs = p1 * (2.0 * f * psi + p1 * W)
        denom = 3.0 * f * f * W * W
    else:
        lhs = p1 * p1 * psi
        denom = -(f * f) * W * W * rw
    return lhs / denom


def verify_corollary10(p: ProfileCurve, u: float) -> tuple[float, float, float]:
    """Residuals of the three arc-length relations among the curvatures.

    Requires |W - 1| <= 1e-9 (NotArcLength otherwise).  With C1, C3 the
    true curvatures and C2* the arc-length elimination form
    -(2 f^2 f'' + phi')/(3 f^3), the relations are

        C1 (9 f^4 C2* + 6 f^3 f'')  =  2 - f f'' - 2 f'^2
        3 f^3 C1 C3                 = -2 f'' + 2 f'^2 f'' + f f''^2
        -3 f f'' C2* - C3           =  2 f''^2

    and each residual (left minus right) vanishes for a genuinely
    arc-length profile.
    """
    s = p.sample(u, order=2)
    W = s.W
    if abs(W - 1.0) > ARC_LENGTH_TOL:
        raise NotArcLength(W)
    cs = rot_curvatures(p, u)
    f, f1, f2, p1 = s.f, s.f1, s.f2, s.p1
    c2_arc = -(2.0 * f * f * f2 + p1) / (3.0 * f**3)
    r1 = cs.c1 * (9.0 * f**4 * c2_arc + 6.0 * f**3 * f2) - (2.0 - f * f2 - 2.0 * f1 * f1)
    r2 = 3.0 * f**3 * cs.c1 * cs.c3 - (-2.0 * f2 + 2.0 * f1 * f1 * f2 + f * f2 * f2)
    r3 = (-3.0 * f * f2 * c2_arc - cs.c3) - 2.0 * f2 * f2
    return (r1, r2, r3)


def classify_corollary11(
    p: ProfileCurve, u: float, tol: float = 1e-8
) -> tuple[str, ...]:
    """Minimality labels for profiles with f = u at an arc-length point.

    Each arc-length relation that holds (residual within tol) licenses a
    disjunction of minimality classes; a class label is emitted when the
    corresponding curvature actually vanishes:

        relation 1 -> 1-minimal or 2-minimal
        relation 2 -> 1-minimal or 3-minimal
        relation 3 -> 3-minimal
    """
    s = p.sample(u, order=2)
    if abs(s.f - u) > 1e-9 * max(1.0, abs(u)) or abs(s.f1 - 1.0) > 1e-9:
        raise DomainError("classification requires the profile f = u")
    residuals = verify_corollary10(p, u)
    cs = rot_curvatures(p, u)
    candidates = ((1, 2), (1, 3), (3,))
    labels = set()
    for res, cand in zip(residuals, candidates):
        if abs(res) <= tol:
            for j in cand:
                if is_j_minimal(cs, j, tol):
                    labels.add(f"{j}-minimal")
    return tuple(sorted(labels))


# -- numerically built 1-minimal profiles ---------------------------------------


@dataclass(frozen=True, slots=True)
class OneMinimalTrajectory:
    """RK4 solution of the 1-minimality equation for a prescribed f.

    Stores (u, phi, phi') at every step; phi'' for verification is taken
    from central differences of the stored phi' samples, independently of
    the integrated right-hand side.
    """

    us: tuple[float, ...]
    phis: tuple[float, ...]
    dphis: tuple[float, ...]
    f: dsl.Expr
    params: Mapping[str, float]

    def curvature_samples(self, stride: int = 50) -> list[tuple[float, float]]:
        """(u, C1) pairs along the trajectory, with phi'' from finite

        differences of the stored trajectory (not from the integrated ODE,
        which would be circular).
        """
        out = []
        n = len(self.us)
        h = self.us[1] - self.us[0]
        for i in range(1, n - 1, stride):
            u = self.us[i]
            p1 = self.dphis[i]
            p2 = (self.dphis[i + 1] - self.dphis[i - 1]) / (2.0 * h)
            fs = dsl.evaluate(self.f, self.params, TSeries.variable(0, u, 1, 2))
            fs = taylor.as_series(fs, 1, 2)
            f, f1, f2 = fs.value, fs.partial((1,)), fs.partial((2,))
            W = f1 * f1 + p1 * p1
            psi = f1 * p2 - f2 * p1
            c1 = -(2.0 * p1 * W + f * psi) / (3.0 * f * W * math.sqrt(W))
            out.append((u, c1))
        return out

    def first_integral_drift(self) -> float:
        """Max relative drift of f^2 phi'/sqrt(W), conserved along exact

        solutions of the 1-minimality equation.
        """
        vals = []
        for u, p1 in zip(self.us, self.dphis):
            fs = dsl.evaluate(self.f, self.params, TSeries.variable(0, u, 1, 1))
            fs = taylor.as_series(fs, 1, 1)
            f, f1 = fs.value, fs.partial((1,))
            vals.append(f * f * p1 / math.sqrt(f1 * f1 + p1 * p1))
        ref = vals[0]
        return max(abs(x - ref) for x in vals) / max(abs(ref), 1e-300)


def integrate_one_minimal(
    f_src: str,
    params: Mapping[str, float],
    u0: float,
    u1: float,
    dphi0: float,
    phi0: float = 0.0,
    step: float = 1e-4,
) -> OneMinimalTrajectory:
    """Integrate 2 phi' W + f psi = 0 as a first-order system in phi'.

    Solving for phi'' gives phi'' = (f f'' phi' - 2 phi' W) / (f f');
    classic fixed-step RK4 marches (phi, phi') from u0 to u1.  Requires
    f f' != 0 along the way.
    """
    f_expr = dsl.parse(f_src)
    bindings = dict(params)

    def rhs(u: float, p1: float) -> float:
        fs = taylor.as_series(
            dsl.evaluate(f_expr, bindings, TSeries.variable(0, u, 1, 2)), 1, 2
        )
        f, f1, f2 = fs.value, fs.partial((1,)), fs.partial((2,))
        ff1 = f * f1
        if abs(ff1) < 1e-14:
            raise DomainError(f"1-minimal integration needs f f' != 0 (u={u!r})")
        W = f1 * f1 + p1 * p1
        return (f * f2 * p1 - 2.0 * p1 * W) / ff1

    if not u1 > u0:
        raise ValueError("u1 must exceed u0")
    n = max(2, int(round((u1 - u0) / step)))
    h = (u1 - u0) / n
    us = [u0]
    phis = [phi0]
    dphis = [dphi0]
    u, phi, p1 = u0, phi0, dphi0
    for _ in range(n):
        # RK4 on the coupled system (phi, phi')' = (phi', rhs)
        k1p, k1q = p1, rhs(u, p1)
        k2p, k2q = p1 + 0.5 * h * k1q, rhs(u + 0.5 * h, p1 + 0.5 * h * k1q)
        k3p, k3q = p1 + 0.5 * h * k2q, rhs(u + 0.5 * h, p1 + 0.5 * h * k2q)
        k4p, k4q = p1 + h * k3q, rhs(u + h, p1 + h * k3q)
        phi += h * (k1p + 2 * k2p + 2 * k3p + k4p) / 6.0
        p1 += h * (k1q + 2 * k2q + 2 * k3q + k4q) / 6.0
        u += h
        us.append(u)
        phis.append(phi)
        dphis.append(p1)
    return OneMinimalTrajectory(tuple(us), tuple(phis), tuple(dphis), f_expr, bindings)


def profile_grid(
    p: ProfileCurve, lo: float, hi: float, count: int
) -> list[float]:
    """Inclusive evenly spaced u samples; endpoints must lie in the domain."""
    if count < 1:
        raise ValueError("count must be >= 1")
    for end in (lo, hi):
        p.require(end)
    if count == 1:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]
