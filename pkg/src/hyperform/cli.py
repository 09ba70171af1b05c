"""Command-line frontend.

Subcommands:

    curvatures   per-sample curvatures by both routes, with principal
                 curvatures and the route-agreement residual
    verify       the identity suite (chain identity, Cayley-Hamilton,
                 determinant ratios, form chain, closed-vs-generic) over a
                 parameter grid
    minimal      j-minimality residuals, classification labels and the
                 arc-length relations where applicable
    laplace      closed-form vs direct fourth-form Laplace eigenvalues

Exit codes: 0 success, 1 usage or expression errors, 2 degeneracy
encountered, 3 identity/tolerance failure.  Numbers are serialized as
shortest round-trip decimals; JSON and CSV carry identical values.
Parallelism over grid points is capped by HYPERFORM_THREADS (0 = auto);
output ordering does not depend on it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from . import rotational
from .curvature import curvature_scale, curvatures_closed_form, is_j_minimal
from .errors import (
    ConsistencyError,
    DegenerateChart,
    DegenerateFourthForm,
    DomainError,
    HyperformError,
    NotArcLength,
    ParseError,
    SingularMatrix,
)
from .forms import bundle, identity_residuals
from .laplace import eigen_check, eigenvalue_functions
from .rotational import (
    DEGENERATE_BAND,
    ProfileCurve,
    closed_forms,
    minimality_residual,
    pipeline_orientation,
    preset,
    rot_chart,
    rot_curvatures,
    verify_corollary10,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGENERATE = 2
EXIT_TOLERANCE = 3

DEFAULT_TOLERANCES = {
    "chain": 1e-8,
    "cayley": 1e-8,
    "det_ratio": 1e-7,
    "form_chain": 1e-9,
    "closed_generic": 1e-9,
    "route_agreement": 1e-8,
    "laplace_agreement": 1e-5,
    "minimal": 1e-9,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract is exit 1
        raise UsageError(message)


def _parse_param(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise UsageError(f"--param expects name=value, got {text!r}")
    try:
        return name, float(value)
    except ValueError:
        raise UsageError(f"--param {name}: {value!r} is not a number") from None


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--u expects start:end:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"bad --u range {text!r}") from None
    if count < 1:
        raise UsageError("--u count must be >= 1")
    return lo, hi, count


def _parse_tol(values, defaults: dict) -> dict:
    out = dict(defaults)
    for text in values or ():
        if "=" in text:
            name, _, val = text.partition("=")
            if name not in out:
                raise UsageError(f"unknown tolerance {name!r}; names: {sorted(out)}")
            try:
                out[name] = float(val)
            except ValueError:
                raise UsageError(f"bad tolerance value {val!r}") from None
        else:
            try:
                v = float(text)
            except ValueError:
                raise UsageError(f"bad tolerance {text!r}") from None
            out = {k: v for k in out}
    for name, v in out.items():
        if v <= 0:
            raise UsageError(f"tolerance {name} must be positive")
    return out


def _build_parser() -> _Parser:
    parser = _Parser(prog="hyperform", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("curvatures", "evaluate curvatures over a u-grid"),
        ("verify", "run the identity suite over a parameter grid"),
        ("minimal", "minimality residuals and classification"),
        ("laplace", "fourth-form Laplace eigen-relation, two routes"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--preset", choices=rotational.PRESET_NAMES)
        p.add_argument("--f", dest="f_src", help="profile f(u) expression")
        p.add_argument("--phi", dest="phi_src", help="profile phi(u) expression")
        p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
        p.add_argument("--domain", metavar="LO:HI", help="u-domain for DSL profiles")
        p.add_argument("--u", required=True, metavar="START:END:COUNT")
        p.add_argument("--v", type=int, default=4, help="number of v samples")
        p.add_argument("--w", type=int, default=4, help="number of w samples")
        p.add_argument("--tol", action="append", default=[], metavar="[NAME=]VALUE")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", help="output path (default stdout)")
    return parser


def _resolve_profile(args) -> ProfileCurve:
    params = dict(_parse_param(t) for t in args.param)
    if args.preset:
        if args.f_src or args.phi_src:
            raise UsageError("give either --preset or --f/--phi, not both")
        try:
            return preset(args.preset, **params)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.f_src is None or args.phi_src is None:
        raise UsageError("a profile is required: --preset NAME or --f EXPR --phi EXPR")
    domain = (-math.inf, math.inf)
    if args.domain:
        parts = args.domain.split(":")
        if len(parts) != 2:
            raise UsageError(f"--domain expects LO:HI, got {args.domain!r}")
        domain = (float(parts[0]), float(parts[1]))
    profile = ProfileCurve.from_source(args.f_src, args.phi_src, params, domain, name="dsl")
    from .dsl import parameters

    unbound = (parameters(profile.f) | parameters(profile.phi)) - set(params)
    if unbound:
        raise UsageError(f"unbound parameters: {sorted(unbound)} (use --param NAME=VALUE)")
    return profile


def _angular_samples(n: int, avoid_band: bool) -> list[float]:
    if n < 1:
        raise UsageError("angular sample counts must be >= 1")
    out = []
    for k in range(n):
        w = 2.0 * math.pi * (k + 0.5) / n
        if avoid_band and abs(math.cos(w)) < DEGENERATE_BAND:
            w += 0.1 * 2.0 * math.pi / n
        out.append(w)
    return out


def _u_samples(args, profile: ProfileCurve) -> list[float]:
    lo, hi, count = _parse_range(args.u)
    for end in (lo, hi):
        if not profile.contains(end):
            raise UsageError(
                f"u={end!r} lies outside the profile domain {profile.domain}"
            )
    if count == 1:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _thread_count() -> int:
    raw = os.environ.get("HYPERFORM_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n == 0:
        n = min(4, os.cpu_count() or 1)
    return max(1, n)


def _map_ordered(fn: Callable, items: Sequence):
    threads = _thread_count()
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# -- output -------------------------------------------------------------------


def _emit(args, payload: dict, fields: list[str]) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for rec in payload["records"]:
            row = []
            for f in fields:
                val = rec.get(f)
                if val is None:
                    row.append("")
                elif isinstance(val, float):
                    row.append(repr(val))
                elif isinstance(val, (list, tuple)):
                    row.append(";".join(str(x) for x in val))
                else:
                    row.append(str(val))
            writer.writerow(row)
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _profile_info(args) -> dict:
    info = {"preset": args.preset, "f": args.f_src, "phi": args.phi_src,
            "params": dict(_parse_param(t) for t in args.param)}
    return info


def _null_record(fields: list[str], **known) -> dict:
    rec = {f: None for f in fields}
    rec.update(known)
    return rec


# -- curvatures -----------------------------------------------------------------

_CURV_FIELDS = [
    "u", "C1", "C2", "C3", "k1", "k2", "k3", "route_agreement_residual", "reason",
]


def cmd_curvatures(args, profile: ProfileCurve) -> int:
    tol = _parse_tol(args.tol, DEFAULT_TOLERANCES)
    us = _u_samples(args, profile)
    vs = _angular_samples(args.v, avoid_band=False)
    ws = _angular_samples(args.w, avoid_band=True)
    chart = rot_chart(profile)

    def one(u: float) -> dict:
        try:
            cs = rot_curvatures(profile, u)
            scale = curvature_scale(cs)
            worst = 0.0
            for v in vs:
                for w in ws:
                    s = pipeline_orientation(w)
                    b = bundle(chart, (u, v, w))
                    g = b.curvatures
                    worst = max(
                        worst,
                        abs(cs.c1 - s * g.c1) / scale,
                        abs(cs.c2 - g.c2) / scale**2,
                        abs(cs.c3 - s * g.c3) / scale**3,
                    )
            k1, k2, k3 = cs.principal
            return {
                "u": u, "C1": cs.c1, "C2": cs.c2, "C3": cs.c3,
                "k1": k1, "k2": k2, "k3": k3,
                "route_agreement_residual": worst, "reason": None,
            }
        except (DegenerateChart, DomainError, SingularMatrix) as exc:
            return _null_record(_CURV_FIELDS, u=u, reason=f"{type(exc).__name__}: {exc}")

    records = _map_ordered(one, us)
    degenerate = [r for r in records if r["reason"] is not None]
    payload = {
        "command": "curvatures",
        "profile": _profile_info(args),
        "tolerances": tol,
        "records": records,
    }
    _emit(args, payload, _CURV_FIELDS)
    return EXIT_DEGENERATE if degenerate else EXIT_OK


# -- verify ---------------------------------------------------------------------

_VERIFY_IDENTITIES = ("chain", "cayley", "det_ratio", "form_chain", "closed_generic")
_VERIFY_FIELDS = ["u", "v", "w", *_VERIFY_IDENTITIES, "reason"]


def _closed_generic_residual(profile: ProfileCurve, u: float, v: float, w: float, b) -> float:
    """Worst scaled deviation between the closed forms and the pipeline."""
    s = pipeline_orientation(w)
    cf = closed_forms(profile, u, w, v)
    worst = 0.0

    def mat(diffa, diffb, odd):
        nonlocal worst
        sign = s if odd else 1.0
        scale = max(diffa.max_abs(), diffb.max_abs(), 1.0)
        worst = max(
            worst,
            max(abs(x - sign * y) for x, y in zip(diffa.entries(), diffb.entries())) / scale,
        )

    mat(cf.first, b.first, odd=False)
    mat(cf.second, b.second, odd=True)
    mat(cf.third, b.third, odd=False)
    mat(cf.fourth, b.fourth, odd=True)
    shape_rows = b.shape
    shape_scale = max(max(abs(e) for row in shape_rows for e in row), 1.0)
    closed_shape = cf.shape.rows()
    worst = max(
        worst,
        max(
            abs(closed_shape[i][j] - s * shape_rows[i][j])
            for i in range(3)
            for j in range(3)
        )
        / shape_scale,
    )
    cscale = curvature_scale(cf.curvatures)
    worst = max(
        worst,
        abs(cf.curvatures.c1 - s * b.curvatures.c1) / cscale,
        abs(cf.curvatures.c2 - b.curvatures.c2) / cscale**2,
        abs(cf.curvatures.c3 - s * b.curvatures.c3) / cscale**3,
    )
    gauss_closed = closed_forms(profile, u, w, v).gauss
    worst = max(
        worst,
        max(
            abs(a - s * g)
            for a, g in zip(gauss_closed.as_tuple(), b.gauss.as_tuple())
        ),
    )
    return worst


def cmd_verify(args, profile: ProfileCurve) -> int:
    tol = _parse_tol(args.tol, DEFAULT_TOLERANCES)
    us = _u_samples(args, profile)
    vs = _angular_samples(args.v, avoid_band=False)
    ws = _angular_samples(args.w, avoid_band=True)
    chart = rot_chart(profile)
    points = [(u, v, w) for u in us for v in vs for w in ws]

    def one(point) -> dict:
        u, v, w = point
        try:
            b = bundle(chart, point)
            res = identity_residuals(b)
            res["closed_generic"] = _closed_generic_residual(profile, u, v, w, b)
            return {"u": u, "v": v, "w": w, **res, "reason": None}
        except ConsistencyError as exc:
            print(
                f"warning: fourth-form route disagreement at {point}:\n"
                f"  combination route: {exc.first}\n  product route:     {exc.second}",
                file=sys.stderr,
            )
            return _null_record(_VERIFY_FIELDS, u=u, v=v, w=w,
                                reason=f"ConsistencyError: {exc}")
        except (DegenerateChart, DomainError, SingularMatrix) as exc:
            return _null_record(_VERIFY_FIELDS, u=u, v=v, w=w,
                                reason=f"{type(exc).__name__}: {exc}")

    records = _map_ordered(one, points)
    summary = {}
    failed = False
    for name in _VERIFY_IDENTITIES:
        vals = [(r[name], (r["u"], r["v"], r["w"])) for r in records if r[name] is not None]
        if not vals:
            summary[name] = {"max_residual": None, "worst_point": None, "pass": False}
            failed = True
            continue
        worst, point = max(vals, key=lambda t: t[0])
        ok = worst <= tol[name]
        summary[name] = {
            "max_residual": worst,
            "worst_point": list(point),
            "tolerance": tol[name],
            "pass": ok,
        }
        failed = failed or not ok
    if any(r["reason"] is not None for r in records):
        failed = True
    payload = {
        "command": "verify",
        "profile": _profile_info(args),
        "tolerances": tol,
        "records": records,
        "summary": summary,
    }
    _emit(args, payload, _VERIFY_FIELDS)
    if failed:
        worst_names = [n for n in _VERIFY_IDENTITIES if not summary[n]["pass"]]
        print(f"identity failures: {worst_names}", file=sys.stderr)
        for n in worst_names:
            print(f"  {n}: max residual {summary[n]['max_residual']} "
                  f"at point {summary[n]['worst_point']}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


# -- minimal --------------------------------------------------------------------

_MIN_FIELDS = [
    "u", "W", "residual1", "residual2", "residual3", "labels",
    "arc_residual1", "arc_residual2", "arc_residual3", "arc_reason", "reason",
]


def cmd_minimal(args, profile: ProfileCurve) -> int:
    tol = _parse_tol(args.tol, DEFAULT_TOLERANCES)
    us = _u_samples(args, profile)

    def one(u: float) -> dict:
        try:
            s = profile.sample(u, order=2)
            cs = rot_curvatures(profile, u)
            residuals = [minimality_residual(profile, u, j) for j in (1, 2, 3)]
            labels = [
                f"{j}-minimal"
                for j in (1, 2, 3)
                if is_j_minimal(cs, j, tol["minimal"] * curvature_scale(cs) ** j)
            ]
            rec = {
                "u": u, "W": s.W,
                "residual1": residuals[0],
                "residual2": residuals[1],
                "residual3": residuals[2],
                "labels": labels,
                "arc_residual1": None, "arc_residual2": None, "arc_residual3": None,
                "arc_reason": None, "reason": None,
            }
            try:
                arc = verify_corollary10(profile, u)
                rec.update(arc_residual1=arc[0], arc_residual2=arc[1], arc_residual3=arc[2])
            except NotArcLength as exc:
                rec["arc_reason"] = f"NotArcLength: W={exc.w_value!r}"
            return rec
        except (DegenerateChart, DomainError, SingularMatrix) as exc:
            return _null_record(_MIN_FIELDS, u=u, reason=f"{type(exc).__name__}: {exc}")

    records = _map_ordered(one, us)
    payload = {
        "command": "minimal",
        "profile": _profile_info(args),
        "tolerances": tol,
        "records": records,
    }
    _emit(args, payload, _MIN_FIELDS)
    if any(r["reason"] is not None for r in records):
        return EXIT_DEGENERATE
    return EXIT_OK


# -- laplace --------------------------------------------------------------------

_LAP_FIELDS = [
    "u", "omega_closed", "omega_direct", "phi_closed", "phi_direct",
    "omega_agreement", "phi_agreement", "omega_component_spread",
    "vw_spread", "residuals", "reason",
]


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1.0)


def cmd_laplace(args, profile: ProfileCurve) -> int:
    tol = _parse_tol(args.tol, DEFAULT_TOLERANCES)
    us = _u_samples(args, profile)

    def one(u: float) -> dict:
        try:
            closed = eigenvalue_functions(profile, u)
        except (DegenerateFourthForm, DegenerateChart, DomainError) as exc:
            return _null_record(_LAP_FIELDS, u=u, reason=f"{type(exc).__name__}: {exc}")
        direct = eigen_check(profile, [u])[0]
        if not direct.ok:
            return _null_record(_LAP_FIELDS, u=u, reason=direct.error)
        comp_spread = max(
            _rel(direct.omega_components[i], direct.omega_components[j])
            for i in range(3)
            for j in range(i + 1, 3)
        )
        phi_agreement = None
        if closed.phi_eig is not None and direct.phi_eig is not None:
            phi_agreement = _rel(closed.phi_eig, direct.phi_eig)
        return {
            "u": u,
            "omega_closed": closed.omega,
            "omega_direct": direct.omega,
            "phi_closed": closed.phi_eig,
            "phi_direct": direct.phi_eig,
            "omega_agreement": _rel(closed.omega, direct.omega),
            "phi_agreement": phi_agreement,
            "omega_component_spread": comp_spread,
            "vw_spread": max(direct.spreads),
            "residuals": list(direct.residuals),
            "reason": None,
        }

    records = _map_ordered(one, us)
    good = [r for r in records if r["reason"] is None]
    omega_constant = None
    phi_constant = None
    if len(good) >= 2:
        omegas = [r["omega_closed"] for r in good]
        omega_constant = max(_rel(x, omegas[0]) for x in omegas) <= 1e-6
        phis = [r["phi_closed"] for r in good if r["phi_closed"] is not None]
        if len(phis) >= 2:
            phi_constant = max(_rel(x, phis[0]) for x in phis) <= 1e-6
    payload = {
        "command": "laplace",
        "profile": _profile_info(args),
        "tolerances": tol,
        "records": records,
        "summary": {
            "degenerate_samples": len(records) - len(good),
            "omega_constant_in_u": omega_constant,
            "phi_constant_in_u": phi_constant,
        },
    }
    _emit(args, payload, _LAP_FIELDS)
    if not good:
        return EXIT_DEGENERATE
    worst = max(
        max(r["omega_agreement"], r["phi_agreement"] or 0.0) for r in good
    )
    if worst > tol["laplace_agreement"]:
        print(f"laplace route agreement {worst} exceeds {tol['laplace_agreement']}",
              file=sys.stderr)
        return EXIT_TOLERANCE
    if len(good) < len(records):
        return EXIT_DEGENERATE
    return EXIT_OK


_COMMANDS = {
    "curvatures": cmd_curvatures,
    "verify": cmd_verify,
    "minimal": cmd_minimal,
    "laplace": cmd_laplace,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        profile = _resolve_profile(args)
        us = _u_samples(args, profile)  # validate early
        del us
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, HyperformError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, profile)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
