"""Command-line front end.

One job per invocation; a single JSON document (schema
``abelheight-report/1``) is written to standard output.  Exit codes:
0 success, 2 validation error, 3 precision failure, 4 hypothesis not
satisfied (certificates are still printed as inconclusive).

Inputs may be given as flags or as a JSON job file (``--json job.json``)
with the same field names; curves are coefficient lists ``[a0, ..., a5]``,
period matrices are six reals (Re/Im of tau11, tau12, tau22), and rational
numbers may be strings like ``"3/7"``.  Balls are serialized as
``{"mid": ..., "rad": ...}`` decimal strings with the working precision.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .balls import BallComplex, BallReal
from .errors import (
    AbelHeightError,
    HypothesisError,
    PrecisionError,
    ValidationError,
)
from . import certificates as certs
from . import faltings as falt
from . import jacobian as jac
from . import kummer as kum
from . import theta as th
from . import torsion3

SCHEMA = "abelheight-report/1"


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    raise ValidationError(f"cannot parse rational from {x!r}")


def _fmt_mpfr(x, digits: int) -> str:
    if x == 0:
        return "0"
    s, e, _ = x.digits(10, digits)
    sign = "-" if s.startswith("-") else ""
    s = s.lstrip("-")
    return f"{sign}{s[0]}.{s[1:]}e{e - 1}"


def _ball_json(b: BallReal) -> dict:
    digits = max(20, int(b.prec * 0.302) + 2)
    return {
        "mid": _fmt_mpfr(b.mid, digits),
        "rad": _fmt_mpfr(b.rad, 3),
        "precision": b.prec,
    }


def _cball_json(z: BallComplex) -> dict:
    return {"re": _ball_json(z.re), "im": _ball_json(z.im)}


def _parse_curve(spec) -> jac.CurveModel:
    coeffs = spec.get("curve")
    if not coeffs or len(coeffs) != 6:
        raise ValidationError("curve must be a list of six integers [a0..a5]")
    return jac.CurveModel.from_coeffs([int(c) for c in coeffs])


def _parse_divisor(curve, spec) -> jac.MumfordDivisor:
    pts = spec.get("points")
    mumford = spec.get("mumford")
    if mumford:
        u = [_frac(c) for c in mumford["u"]]
        v = [_frac(c) for c in mumford.get("v", [])]
        return jac.MumfordDivisor.make(curve, u, v)
    if not pts:
        raise ValidationError("supply 'points' (affine pairs) or 'mumford'")
    D = jac.identity()
    for p in pts:
        D = jac.cantor_add(curve, D, jac.embed_point(curve, _frac(p[0]), _frac(p[1])))
    return D


def _parse_tau(spec, precision) -> th.PeriodMatrix:
    t = spec.get("tau")
    if not t or len(t) != 6:
        raise ValidationError("tau must be six reals: Re/Im of tau11, tau12, tau22")
    vals = [_frac(x) for x in t]
    return th.PeriodMatrix.from_entries(
        (vals[0], vals[1]), (vals[2], vals[3]), (vals[4], vals[5]), precision
    )


# ---------------------------------------------------------------------------
# command implementations


def _cmd_height(spec):
    curve = _parse_curve(spec)
    D = _parse_divisor(curve, spec)
    target = _frac(spec.get("target_radius", "1/1000000000"))
    depth = int(spec.get("depth", 10))
    h = kum.canonical_height(curve, D, float(target))
    doc = {
        "curve": list(curve.coeffs),
        "disc": str(curve.disc),
        "canonical_height": _ball_json(h),
        "local": [],
        "stoll_checks": [],
    }
    if not jac.is_on_theta(D):
        K = kum.kummer_map(curve, D)
        ints = K.coprime_integers()
        for p, e in sorted(curve.bad_primes().items()):
            rep = kum.local_lambda_finite(curve, D, p, depth)
            v = kum.duplication_content_valuation(curve, ints, p)
            doc["local"].append(
                {
                    "p": p,
                    "lambda_naive": _ball_json(rep.lambda_naive),
                    "mu": _ball_json(rep.mu),
                    "lambda_canonical": _ball_json(rep.lambda_canonical),
                    "depth": rep.truncation_depth,
                    "tail_bound": _ball_json(rep.tail_bound),
                }
            )
            doc["stoll_checks"].append(
                {"p": p, "content_valuation": v, "max_allowed": e, "sandwich_ok": 0 <= v <= e}
            )
    else:
        doc["local"] = "point lies on the theta divisor: local heights have a pole"
    return doc


def _cmd_kummer(spec):
    curve = _parse_curve(spec)
    D = _parse_divisor(curve, spec)
    K = kum.kummer_map(curve, D)
    return {
        "curve": list(curve.coeffs),
        "coords": [str(c) for c in K.coords],
        "coprime_integers": [str(c) for c in K.coprime_integers()],
        "on_theta": jac.is_on_theta(D),
    }


def _cmd_theta_const(spec):
    precision = int(spec.get("precision", 128))
    tau = _parse_tau(spec, precision)
    out = []
    for e in th.even_theta_constants(tau, precision):
        out.append(
            {
                "characteristic": [str(v) for v in e.char.a + e.char.b],
                "theta": _cball_json(e.theta),
                "normalized_modulus": _ball_json(e.value),
                "lower_bound": _ball_json(e.lower_bound) if e.lower_bound is not None else None,
            }
        )
    return {"entries": out}


def _cmd_lambda(spec):
    precision = int(spec.get("precision", 128))
    tau = _parse_tau(spec, precision)
    xy = spec.get("xy")
    if not xy or len(xy) != 4:
        raise ValidationError("xy must be four rationals: x1, x2, y1, y2")
    P = th.TorusPoint.make(*[_frac(v) for v in xy])
    lam = th.big_lambda(P, tau, precision)
    doc = {"lambda": _ball_json(lam)}
    red = P.reduced()
    if red.norm_inf() <= Fraction(1, 2) and red.norm_inf() > 0:
        doc["lower_bound"] = _ball_json(th.lambda_lower_bound(red.X, red.Y, tau, precision))
        doc["lower_bound_holds"] = bool(th.lambda_lower_bound(red.X, red.Y, tau, precision) <= lam)
    else:
        doc["lower_bound"] = None
    return doc


def _cmd_torsion3(spec):
    curve = _parse_curve(spec)
    precision = int(spec.get("precision", 256))
    res = torsion3.three_torsion_kummer(curve, precision)
    target = torsion3.product_target(curve)
    contains = res.product.re.contains(target) and res.product.im.contains_zero()
    return {
        "curve": list(curve.coeffs),
        "count": len(res.points),
        "product": _cball_json(res.product),
        "target": f"{target.numerator}/{target.denominator}",
        "product_contains_target": bool(contains),
        "points": [[_cball_json(c) for c in p.coords[1:]] for p in res.points],
    }


def _cmd_faltings(spec):
    precision = int(spec.get("precision", 128))
    tau = _parse_tau(spec, precision)
    arch = falt.faltings_arch_term(tau, precision)
    doc = {"arch_term": _ball_json(arch)}
    if spec.get("logD") is not None:
        d = int(spec.get("d", 1))
        tr = tau.trace_im()
        rep = falt.faltings_upper_bound(tr, BallReal.exact(_frac(spec["logD"]), precision), d, precision)
        doc["h_prime_upper"] = _ball_json(rep.h_prime_upper)
        doc["c3"] = _ball_json(rep.c3)
        doc["c4"] = str(rep.c4)
    return doc


def _cmd_certify(spec):
    kind = spec.get("kind")
    d = int(spec.get("d", 1))
    if kind == "torsion":
        cert = certs.torsion_bound(d, spec.get("Tr"), spec.get("logD"))
    elif kind == "rational-points":
        cert = certs.rational_points_bound(d, int(spec.get("rank", 0)))
    elif kind == "product":
        cert = certs.product_case_bound(
            _frac(spec["Tr1"]), _frac(spec["logDisc1"]),
            _frac(spec["Tr2"]), _frac(spec["logDisc2"]),
            d, int(spec.get("m", 1)),
        )
    elif kind == "jacobian":
        precision = int(spec.get("precision", 128))
        eps = _frac(spec.get("epsilon", "1/31"))
        reports = []
        taus = spec.get("taus") or ([spec["tau"]] if spec.get("tau") else [])
        for t in taus:
            tau = _parse_tau({"tau": t}, precision)
            reports.append(th.siegel_checks(tau, eps, precision))
        cert = certs.jacobian_lower_bound(d, _frac(spec["Tr"]), _frac(spec["logD"]), reports)
    else:
        raise ValidationError(f"unknown certificate kind {kind!r}")
    doc = {
        "kind": cert.bound_kind,
        "hypotheses": [list(h) for h in cert.hypotheses],
        "conclusive": cert.conclusive,
        "value_log10": cert.value_log10,
        "value_exact": cert.value_exact,
        "constants": {k: (v if isinstance(v, (int, float, str)) else str(v))
                      for k, v in cert.constants.items()},
        "details": {k: (v if isinstance(v, (int, float, str, list, tuple, bool)) else str(v))
                    for k, v in cert.details.items()},
    }
    return doc, cert.conclusive and cert.all_hypotheses_hold()


def _cmd_check_siegel(spec):
    precision = int(spec.get("precision", 128))
    tau = _parse_tau(spec, precision)
    eps = _frac(spec.get("epsilon", "1/31"))
    rep = th.siegel_checks(tau, eps, precision)
    return {
        "S2": rep.s2,
        "S3_partial": rep.s3_partial,
        "in_F2_eps": rep.in_f2_eps,
        "in_F2_inf": rep.in_f2_inf,
        "S1": rep.s1,
        "epsilon": str(rep.epsilon),
        "product_locus": rep.product_locus(),
    }


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="abelheight",
        description="Canonical heights on genus-2 Jacobians and the explicit bound suite",
    )
    ap.add_argument("--json", help="JSON job file; its fields override flags")
    sub = ap.add_subparsers(dest="command")

    def common(p, tau=False, curve=False):
        p.add_argument("--precision", type=int, default=128, help="working precision in bits")
        p.add_argument("--depth", type=int, default=10)
        p.add_argument("--epsilon", default="1/31")
        p.add_argument("--M", type=int, default=240)
        if tau:
            p.add_argument("--tau", help="six comma-separated reals: Re/Im of tau11,tau12,tau22")
        if curve:
            p.add_argument("--curve", help="six comma-separated integers a0,...,a5")
            p.add_argument("--point", action="append", default=[],
                           help="affine point 'x,y' (repeatable; points are summed)")

    p = sub.add_parser("height"); common(p, curve=True)
    p.add_argument("--target-radius", default="1e-9")
    p = sub.add_parser("kummer"); common(p, curve=True)
    p = sub.add_parser("theta-const"); common(p, tau=True)
    p = sub.add_parser("lambda"); common(p, tau=True)
    p.add_argument("--xy", help="four comma-separated rationals x1,x2,y1,y2")
    p = sub.add_parser("torsion3"); common(p, curve=True)
    p = sub.add_parser("faltings"); common(p, tau=True)
    p.add_argument("--logD"); p.add_argument("--d", type=int, default=1)
    p = sub.add_parser("certify"); common(p, tau=True)
    p.add_argument("--kind", required=False)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--rank", type=int, default=0)
    p.add_argument("--Tr"); p.add_argument("--logD")
    p.add_argument("--Tr1"); p.add_argument("--logDisc1")
    p.add_argument("--Tr2"); p.add_argument("--logDisc2")
    p = sub.add_parser("check-siegel"); common(p, tau=True)
    return ap


def _spec_from_args(args) -> dict:
    spec = {}
    if args.json:
        with open(args.json) as fh:
            spec.update(json.load(fh))
    if getattr(args, "command", None) and "command" not in spec:
        spec["command"] = args.command
    for name in (
        "precision", "depth", "epsilon", "M", "kind", "d", "m", "rank",
        "Tr", "logD", "Tr1", "logDisc1", "Tr2", "logDisc2",
    ):
        v = getattr(args, name, None)
        if v is not None and name not in spec:
            spec[name] = v
    if getattr(args, "target_radius", None) and "target_radius" not in spec:
        spec["target_radius"] = args.target_radius
    if getattr(args, "curve", None) and "curve" not in spec:
        spec["curve"] = [int(c) for c in args.curve.split(",")]
    if getattr(args, "point", None) and "points" not in spec:
        spec["points"] = [p.split(",") for p in args.point]
    if getattr(args, "tau", None) and "tau" not in spec:
        spec["tau"] = args.tau.split(",")
    if getattr(args, "xy", None) and "xy" not in spec:
        spec["xy"] = args.xy.split(",")
    if "command" not in spec:
        raise ValidationError("no command given")
    prec = int(spec.get("precision", 128))
    if prec < 53:
        raise ValidationError("precision must be at least 53 bits")
    return spec


_DISPATCH = {
    "height": _cmd_height,
    "kummer": _cmd_kummer,
    "theta-const": _cmd_theta_const,
    "lambda": _cmd_lambda,
    "torsion3": _cmd_torsion3,
    "faltings": _cmd_faltings,
    "check-siegel": _cmd_check_siegel,
}


def run(spec: dict):
    """Execute a validated job; returns (document, exit_code)."""
    command = spec["command"]
    if command == "certify":
        doc, ok = _cmd_certify(spec)
        code = 0 if ok else 4
    else:
        fn = _DISPATCH.get(command)
        if fn is None:
            raise ValidationError(f"unknown command {command!r}")
        doc = fn(spec)
        code = 0
    return {"schema": SCHEMA, "command": command, "result": doc}, code


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = _spec_from_args(args)
        doc, code = run(spec)
    except ValidationError as e:
        print(json.dumps({"schema": SCHEMA, "error": {"type": "validation", "message": str(e)}}))
        return 2
    except PrecisionError as e:
        print(json.dumps({"schema": SCHEMA, "error": {"type": "precision", "message": str(e)}}))
        return 3
    except HypothesisError as e:
        print(json.dumps({"schema": SCHEMA, "error": {"type": "hypothesis", "message": str(e)}}))
        return 4
    except AbelHeightError as e:
        print(json.dumps({"schema": SCHEMA, "error": {"type": type(e).__name__, "message": str(e)}}))
        return 1
    print(json.dumps(doc, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
