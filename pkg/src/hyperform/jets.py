"""Forward-mode jets of chart maps (u, v, w) -> E^4.

``evaluate_jet`` runs the chart over the truncated Taylor algebra and reads
off every partial derivative up to the requested order exactly.
``finite_difference_oracle`` recomputes the same partials with central
differences on plain floats; it exists purely as an independent check and
is never used in the production path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

from .geom4 import Vec4
from .taylor import TSeries, as_series, variables

Point3 = tuple[float, float, float]
# A chart map: callable over floats or TSeries scalars, returning 4 components.
ChartFn = Callable[[Any, Any, Any], tuple]

FIRST_KEYS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
SECOND_KEYS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
THIRD_KEYS = (
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
)


@dataclass(frozen=True, slots=True)
class Jet:
    """Value and partial derivatives of a chart at one parameter point.

    Mixed partials are stored once, under the canonical multi-index.
    Asking for a derivative beyond ``order`` is a contract violation and
    raises ValueError rather than returning zero.
    """

    order: int
    point: Point3
    value: Vec4
    first: tuple[Vec4, Vec4, Vec4]
    second: tuple[Vec4, ...] | None = None
    third: tuple[Vec4, ...] | None = None

    def partial(self, alpha: tuple[int, int, int]) -> Vec4:
        total = sum(alpha)
        if total > self.order:
            raise ValueError(f"jet has order {self.order}; partial {alpha} not stored")
        if total == 0:
            return self.value
        if total == 1:
            return self.first[FIRST_KEYS.index(alpha)]
        if total == 2:
            return self.second[SECOND_KEYS.index(alpha)]
        return self.third[THIRD_KEYS.index(alpha)]

    # Named accessors for the partials the form computations use.
    @property
    def xu(self) -> Vec4:
        return self.first[0]

    @property
    def xv(self) -> Vec4:
        return self.first[1]

    @property
    def xw(self) -> Vec4:
        return self.first[2]

    @property
    def xuu(self) -> Vec4:
        return self.partial((2, 0, 0))

    @property
    def xuv(self) -> Vec4:
        return self.partial((1, 1, 0))

    @property
    def xuw(self) -> Vec4:
        return self.partial((1, 0, 1))

    @property
    def xvv(self) -> Vec4:
        return self.partial((0, 2, 0))

    @property
    def xvw(self) -> Vec4:
        return self.partial((0, 1, 1))

    @property
    def xww(self) -> Vec4:
        return self.partial((0, 0, 2))


def _vec_partial(comps: tuple[TSeries, ...], alpha) -> Vec4:
    return Vec4(*(c.partial(alpha) for c in comps))


def evaluate_jet(chart: ChartFn, point: Point3, order: int) -> Jet:
    """Jet of the chart at ``point`` via truncated Taylor arithmetic.

    Every stored partial is the analytic derivative to machine precision.
    Domain violations inside the chart's scalar functions raise DomainError.
    """
    if order not in (1, 2, 3):
        raise ValueError(f"jet order must be 1, 2 or 3, got {order}")
    seeds = variables(point, 3, order)
    comps = tuple(as_series(c, 3, order) for c in chart(*seeds))
    if len(comps) != 4:
        raise ValueError("chart must return 4 components")
    value = _vec_partial(comps, (0, 0, 0))
    first = tuple(_vec_partial(comps, a) for a in FIRST_KEYS)
    second = tuple(_vec_partial(comps, a) for a in SECOND_KEYS) if order >= 2 else None
    third = tuple(_vec_partial(comps, a) for a in THIRD_KEYS) if order >= 3 else None
    return Jet(order, tuple(point), value, first, second, third)


def _default_step(order: int) -> float:
    # Larger steps for third differences: roundoff grows like eps/h^3.
    return 1e-3 if order == 3 else 1e-4


def finite_difference_oracle(chart: ChartFn, point: Point3, order: int, h: float | None = None) -> Jet:
    """Central-difference estimate of the same jet; test oracle only.

    Steps must lie in [1e-6, 1e-3].  Accuracy is roughly 1e-7 relative for
    orders <= 2 and 1e-5 for order 3 on well-scaled charts.
    """
    if order not in (1, 2, 3):
        raise ValueError(f"jet order must be 1, 2 or 3, got {order}")
    if h is None:
        h = _default_step(order)
    if not 1e-6 <= h <= 1e-3:
        raise ValueError(f"step {h!r} outside [1e-6, 1e-3]")
    u0, v0, w0 = point

    def ev(du=0.0, dv=0.0, dw=0.0):
        out = chart(u0 + du, v0 + dv, w0 + dw)
        return tuple(float(c) for c in out)

    def vec(t):
        return Vec4(*t)

    def lin(*terms):
        # terms: (coefficient, sample) pairs
        acc = [0.0, 0.0, 0.0, 0.0]
        for k, s in terms:
            for i in range(4):
                acc[i] += k * s[i]
        return Vec4(*acc)

    value = vec(ev())

    shifts = {0: (h, 0.0, 0.0), 1: (0.0, h, 0.0), 2: (0.0, 0.0, h)}

    def sh(i, sign):
        dx = shifts[i]
        return (sign * dx[0], sign * dx[1], sign * dx[2])

    def at(*deltas):
        du = sum(d[0] for d in deltas)
        dv = sum(d[1] for d in deltas)
        dw = sum(d[2] for d in deltas)
        return ev(du, dv, dw)

    first = []
    for i in range(3):
        first.append(lin((0.5 / h, at(sh(i, +1))), (-0.5 / h, at(sh(i, -1)))))
    first = tuple(first)

    second = None
    if order >= 2:
        sec = []
        for alpha in SECOND_KEYS:
            vars_ = [i for i in range(3) for _ in range(alpha[i])]
            i, j = vars_
            if i == j:
                sec.append(
                    lin(
                        (1.0 / h**2, at(sh(i, +1))),
                        (-2.0 / h**2, at()),
                        (1.0 / h**2, at(sh(i, -1))),
                    )
                )
            else:
                sec.append(
                    lin(
                        (0.25 / h**2, at(sh(i, +1), sh(j, +1))),
                        (-0.25 / h**2, at(sh(i, +1), sh(j, -1))),
                        (-0.25 / h**2, at(sh(i, -1), sh(j, +1))),
                        (0.25 / h**2, at(sh(i, -1), sh(j, -1))),
                    )
                )
        second = tuple(sec)

    third = None
    if order >= 3:
        thr = []
        for alpha in THIRD_KEYS:
            vars_ = [i for i in range(3) for _ in range(alpha[i])]
            if alpha in ((3, 0, 0), (0, 3, 0), (0, 0, 3)):
                i = vars_[0]
                thr.append(
                    lin(
                        (0.5 / h**3, at(sh(i, +1), sh(i, +1))),
                        (-1.0 / h**3, at(sh(i, +1))),
                        (1.0 / h**3, at(sh(i, -1))),
                        (-0.5 / h**3, at(sh(i, -1), sh(i, -1))),
                    )
                )
            elif len(set(vars_)) == 3:
                terms = []
                for si in (+1, -1):
                    for sj in (+1, -1):
                        for sk in (+1, -1):
                            coeff = si * sj * sk / (8.0 * h**3)
                            terms.append((coeff, at(sh(0, si), sh(1, sj), sh(2, sk))))
                thr.append(lin(*terms))
            else:
                # pattern (2,1): second difference in i, first in j
                i = max(set(vars_), key=vars_.count)
                j = next(x for x in vars_ if x != i)
                terms = []
                for sj in (+1, -1):
                    half = sj / (2.0 * h**3)
                    terms.extend(
                        [
                            (half, at(sh(i, +1), sh(j, sj))),
                            (-2.0 * half, at(sh(j, sj))),
                            (half, at(sh(i, -1), sh(j, sj))),
                        ]
                    )
                thr.append(lin(*terms))
        third = tuple(thr)

    return Jet(order, tuple(point), value, first, second, third)
