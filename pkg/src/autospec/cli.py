"""``autospec`` command-line front end.

Subcommands: classify, normal-form, predict, verify, truncate, little-bloch.
Every command writes one JSON report (or CSV, where offered) to stdout.
Failures write a single-line JSON error object to stderr and exit with

    2  bad input, flags, space or eigenfunction pairing
    3  the automorphism is the identity
    4  a verification residual failed
    5  the eigensolver failed
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from . import mobius, normalform, numerics, spectra
from .config import DEFAULT_TOL, Tolerances
from .errors import (
    AutospecError,
    ConjugacyFailure,
    ConvergenceError,
    IdentityError,
    NotTranslation,
)
from .mobius import INFINITY, DiskAutomorphism, Elliptic, Parabolic

SCHEMA_VERSION = "1"
FLOAT_FORMAT = "%.12e"


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(2, "UsageError", message)


# -- JSON with fixed float formatting ---------------------------------------

def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return json.dumps(str(x))
    return FLOAT_FORMAT % (x + 0.0)


def dumps(obj) -> str:
    """Compact deterministic JSON; floats as ``%.12e``, complex as ``{"re", "im"}``."""
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return '{"re":%s,"im":%s}' % (_fmt_float(z.real), _fmt_float(z.imag))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if obj is INFINITY:
        return json.dumps("infinity")
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_rows(rows, header: str) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else FLOAT_FORMAT % (v + 0.0) for v in row))
    return "\n".join(lines) + "\n"


# -- automorphism input -----------------------------------------------------

def _complex_field(obj, name: str) -> complex:
    try:
        v = obj[name]
        return complex(float(v["re"]), float(v.get("im", 0.0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(2, "ParseError", f"field {name!r} must be an object with re/im") from exc


def _fraction(num, den) -> Fraction:
    if int(den) <= 0:
        raise CliError(2, "ParseError", "angle denominator must be positive")
    return Fraction(int(num), int(den))


def parse_input(text: str, tol: Tolerances = DEFAULT_TOL):
    """Returns ``(phi, exact_multiplier_angle_or_None)``.

    Presets: ``psi1``, ``psi2``, ``psi_r:<r>`` and ``rotation:<num>/<den>``
    (the map ``z -> exp(2 pi i num/den) z``).  JSON objects give either
    ``lambda`` or ``lambda_angle`` (``{num, den}``, meaning
    ``exp(2 pi i num/den)``) together with ``a``.
    """
    text = text.strip()
    try:
        if text.startswith("{"):
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise CliError(2, "ParseError", f"invalid JSON input: {exc}") from exc
            if not isinstance(obj, dict):
                raise CliError(2, "ParseError", "input JSON must be an object")
            a = _complex_field(obj, "a")
            if "lambda_angle" in obj:
                ang = obj["lambda_angle"]
                try:
                    frac = _fraction(ang["num"], ang["den"])
                except (KeyError, TypeError, ValueError) as exc:
                    raise CliError(2, "ParseError", "lambda_angle needs integer num and den") from exc
                lam = cmath.exp(2j * math.pi * frac)
                phi = mobius.make_automorphism(lam, a, tol)
                # with a == 0 the map is z -> -lam z, so the multiplier angle is num/den + 1/2
                angle = (frac + Fraction(1, 2)) % 1 if a == 0 else None
                return phi, angle
            return mobius.make_automorphism(_complex_field(obj, "lambda"), a, tol), None
        if text == "psi1":
            return normalform.PSI1, None
        if text == "psi2":
            return normalform.PSI2, None
        if text.startswith("psi_r:"):
            r = float(text.split(":", 1)[1])
            if not 0 < r < 1:
                raise CliError(2, "ParseError", "psi_r needs 0 < r < 1")
            return normalform.psi_r(r), None
        if text.startswith("rotation:"):
            num, den = text.split(":", 1)[1].split("/")
            frac = _fraction(num, den) % 1
            return mobius.rotation(cmath.exp(2j * math.pi * frac)), frac
    except CliError:
        raise
    except (ValueError, AutospecError) as exc:
        raise CliError(2, "ParseError", f"bad automorphism input {text!r}: {exc}") from exc
    raise CliError(2, "ParseError", f"unknown automorphism input {text!r}")


# -- report fragments -------------------------------------------------------

def _automorphism_json(phi: DiskAutomorphism) -> dict:
    return {"lambda": phi.lam, "a": phi.a}


def _check(value: float, tolerance: float) -> dict:
    return {"value": value, "tolerance": tolerance, "pass": bool(value < tolerance)}


def classification_json(phi, cls, angle: Fraction | None, tol: Tolerances) -> dict:
    fp = mobius.fixed_points(phi, tol)
    out = {"kind": cls.kind.value, "fixed_points": list(fp.points), "multiplicity_two": fp.multiplicity_two}
    if isinstance(cls, Elliptic):
        order = spectra.rotation_order(
            angle if angle is not None else cls.multiplier / abs(cls.multiplier), tol.order
        )
        out.update(
            interior_fixed_point=cls.interior_fixed_point,
            multiplier=cls.multiplier,
            order=order.order if order.order is not None else "infinite",
            order_exactness=order.exactness,
        )
    elif isinstance(cls, Parabolic):
        out.update(fixed_point=cls.boundary_fixed_point, translation_sign=cls.translation_sign)
    else:
        out.update(
            attracting=cls.attracting_point,
            repelling=cls.repelling_point,
            multiplier=cls.multiplier,
            repelling_multiplier=cls.repelling_multiplier,
        )
    return out


def normal_form_json(nf: normalform.NormalForm, tol: Tolerances) -> dict:
    return {
        "kind": nf.kind.value,
        "parameter": nf.parameter,
        "conjugator": _automorphism_json(nf.conjugator),
        "conjugacy_residual": _check(nf.residual, tol.conjugacy),
    }


def prediction_json(pred: spectra.SpectrumPrediction) -> dict:
    out = {"kind": pred.kind.value}
    if pred.kind is spectra.PredictionKind.FINITE_CYCLIC_GROUP:
        out.update(generator=pred.lam, order=pred.order, elements=pred.elements())
    elif pred.kind is not spectra.PredictionKind.UNIT_CIRCLE:
        out.update(r_in=pred.r_in, r_out=pred.r_out)
    return out


def _base_report(command: str, source: str, phi, angle, tol: Tolerances) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "autospec", "version": __version__},
        "command": command,
        "input": {
            "source": source,
            "automorphism": _automorphism_json(phi),
            "exact_multiplier_angle": None if angle is None else f"{angle.numerator}/{angle.denominator}",
        },
    }


# -- commands ---------------------------------------------------------------

def cmd_classify(args, tol: Tolerances) -> tuple[dict, int]:
    phi, angle = parse_input(args.input, tol)
    cls = mobius.classify(phi, tol)
    report = _base_report("classify", args.input, phi, angle, tol)
    report["classification"] = classification_json(phi, cls, angle, tol)
    return report, 0


def cmd_normal_form(args, tol: Tolerances) -> tuple[dict, int]:
    phi, angle = parse_input(args.input, tol)
    cls = mobius.classify(phi, tol)
    report = _base_report("normal-form", args.input, phi, angle, tol)
    report["classification"] = classification_json(phi, cls, angle, tol)
    report["normal_form"] = normal_form_json(normalform.normal_form(phi, cls, tol), tol)
    return report, 0


def _parse_spaces(specs) -> list[spectra.SpaceDescriptor]:
    try:
        return [spectra.SpaceDescriptor.parse(s) for s in (specs or ["X"])]
    except AutospecError as exc:
        raise CliError(2, "UnknownSpace", str(exc)) from exc


def cmd_predict(args, tol: Tolerances):
    phi, angle = parse_input(args.input, tol)
    spaces = _parse_spaces(args.space)
    cls = mobius.classify(phi, tol)
    preds = [(s, spectra.predict_spectrum(cls, s, angle=angle, tol=tol.order)) for s in spaces]
    if args.format == "csv":
        rows = []
        for s, pred in preds:
            rows.extend((s.label(), z.real, z.imag) for z in pred.sample(360))
        return _csv_rows(rows, "space,re,im"), 0
    report = _base_report("predict", args.input, phi, angle, tol)
    report["classification"] = classification_json(phi, cls, angle, tol)
    report["predictions"] = {s.label(): prediction_json(pred) for s, pred in preds}
    return report, 0


def _parse_params(raw) -> list[float]:
    vals = []
    for chunk in raw or []:
        for piece in str(chunk).split(","):
            if piece.strip():
                try:
                    vals.append(float(piece))
                except ValueError as exc:
                    raise CliError(2, "ParseError", f"bad parameter {piece!r}") from exc
    if not vals:
        raise CliError(2, "ParseError", "--params needs at least one value")
    return vals


_FAMILIES = {
    "monomial": numerics.Monomial,
    "expcusp": numerics.ExpCusp,
    "logpower": numerics.LogPower,
}


def cmd_verify(args, tol: Tolerances) -> tuple[dict, int]:
    phi, angle = parse_input(args.input, tol)
    if args.family not in _FAMILIES:
        raise CliError(2, "ParseError", f"unknown family {args.family!r}")
    params = _parse_params(args.params)
    cls = mobius.classify(phi, tol)
    nf = normalform.normal_form(phi, cls, tol)
    psi, tau = nf.automorphism, nf.conjugator
    grid = numerics.GridSchedule(depth=args.grid_depth)
    z = grid.points()
    tz = tau(z)
    rows = []
    for value in params:
        try:
            f = _FAMILIES[args.family](value)
        except (AutospecError, ValueError) as exc:
            raise CliError(2, "ParseError", f"bad {args.family} parameter {value!r}: {exc}") from exc
        mu = numerics.predicted_eigenvalue(nf, f)
        normal_res = numerics.eigen_residual(psi, f, mu, grid)
        # f o tau is an eigenfunction of C_phi with the same eigenvalue
        transported = float(np.max(np.abs(f(tau(phi(z))) - mu * f(tz))))
        rows.append(
            {
                "param": value,
                "eigenvalue": mu,
                "normal_form_residual": _check(normal_res, tol.verify),
                "transported_residual": _check(transported, tol.verify),
            }
        )
    ok = all(r["normal_form_residual"]["pass"] and r["transported_residual"]["pass"] for r in rows)
    report = _base_report("verify", args.input, phi, angle, tol)
    report["classification"] = classification_json(phi, cls, angle, tol)
    report["normal_form"] = normal_form_json(nf, tol)
    report["verification"] = {
        "family": args.family,
        "grid_depth": args.grid_depth,
        "grid_points": int(z.size),
        "results": rows,
        "pass": ok,
    }
    return report, 0 if ok else 4


def _weights(spec: str, N: int):
    if spec == "h2":
        return numerics.h2_weights(N)
    if spec.startswith("bergman:"):
        try:
            alpha = float(spec.split(":", 1)[1])
            return numerics.bergman_weights(N, alpha)
        except (ValueError, AutospecError) as exc:
            raise CliError(2, "ParseError", f"bad weights {spec!r}: {exc}") from exc
    raise CliError(2, "ParseError", f"unknown weights {spec!r}")


def cmd_truncate(args, tol: Tolerances) -> tuple[dict, int]:
    phi, angle = parse_input(args.input, tol)
    if not 1 <= args.N <= 511:
        raise CliError(2, "ParseError", "--N must be between 1 and 511")
    if args.n_powers < 1:
        raise CliError(2, "ParseError", "--n-powers must be positive")
    T = numerics.truncated_matrix(phi, args.N, _weights(args.weights, args.N))
    eig = numerics.truncation_eigenvalues(T)
    eig = eig[np.lexsort((np.round(eig.imag, 12), np.round(eig.real, 12)))]
    radius = numerics.spectral_radius_estimate(T, args.n_powers)
    if args.out:
        Path(args.out).write_text(_csv_rows(((z.real, z.imag) for z in eig), "re,im"))
    report = _base_report("truncate", args.input, phi, angle, tol)
    report["numerics"] = {
        "N": args.N,
        "weights": args.weights,
        "n_powers": args.n_powers,
        "eigenvalues": list(eig),
        "max_abs_eigenvalue": float(np.max(np.abs(eig))),
        "radius_sequence": list(radius.sequence),
        "radius_estimate": radius.estimate,
        "radius_tail": list(radius.sequence[-5:]),
        "eigenvalue_csv": args.out,
    }
    return report, 0


def cmd_little_bloch(args, tol: Tolerances) -> tuple[dict, int]:
    limit_tol = 1e-6
    if (args.s is None) == (args.t is None):
        raise CliError(2, "ParseError", "give exactly one of --s or --t")
    if args.s is not None:
        if not args.s > 0 or not args.x0 < 0 or args.n_max < 10:
            raise CliError(2, "ParseError", "need s > 0, x0 < 0 and n_max >= 10")
        value = numerics.little_bloch_sequence_limit(args.s, args.x0, args.n_max)
        closed = -2 * args.s * args.x0 * math.exp(args.s * args.x0)
        block = {"family": "expcusp", "s": args.s, "x0": args.x0, "n_max": args.n_max}
    else:
        if args.t == 0:
            raise CliError(2, "ParseError", "t must be nonzero")
        f = numerics.LogPower(args.t)
        value = numerics.little_bloch_radial_limit(f)
        r_last = 1.0 - 2.0**-40
        modulus = abs(f(r_last))
        closed = 2 * abs(args.t) * modulus
        block = {"family": "logpower", "t": args.t, "r_last": r_last, "modulus_limit": modulus}
    rel = abs(value - closed) / abs(closed)
    block.update(value=value, closed_form=closed, relative_error=_check(rel, limit_tol))
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "autospec", "version": __version__},
        "command": "little-bloch",
        "little_bloch": block,
    }
    return report, 0 if block["relative_error"]["pass"] else 4


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="autospec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"autospec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="JSON automorphism or preset name")
        p.add_argument("--tol-override", action="append", default=[], metavar="KEY=VALUE")
        p.add_argument("--out", default=None)
        return p

    common(sub.add_parser("classify"))
    common(sub.add_parser("normal-form"))
    p = common(sub.add_parser("predict"))
    p.add_argument("--space", action="append", help="X, hardy:<p>, bergman:<p>:<alpha>, wbanach:<p>, dirichlet")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p = common(sub.add_parser("verify"))
    p.add_argument("--family", required=True)
    p.add_argument("--params", nargs="+", required=True)
    p.add_argument("--grid-depth", type=int, default=12)
    p = common(sub.add_parser("truncate"))
    p.add_argument("--N", type=int, default=100)
    p.add_argument("--weights", default="h2")
    p.add_argument("--n-powers", type=int, default=32)
    p = common(sub.add_parser("little-bloch"), needs_input=False)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--x0", type=float, default=-1.0)
    p.add_argument("--n-max", type=int, default=10**6)
    return parser


COMMANDS = {
    "classify": cmd_classify,
    "normal-form": cmd_normal_form,
    "predict": cmd_predict,
    "verify": cmd_verify,
    "truncate": cmd_truncate,
    "little-bloch": cmd_little_bloch,
}


def _tolerances(overrides) -> Tolerances:
    changes = {}
    for item in overrides:
        key, sep, value = item.partition("=")
        if not sep:
            raise CliError(2, "UsageError", f"--tol-override expects key=value, got {item!r}")
        try:
            changes[key.strip()] = float(value)
        except ValueError as exc:
            raise CliError(2, "UsageError", f"bad tolerance value {value!r}") from exc
    try:
        return DEFAULT_TOL.override(**changes)
    except KeyError as exc:
        raise CliError(2, "UsageError", str(exc.args[0])) from exc


def run(argv=None) -> tuple[str, int, str | None]:
    """Execute a command; returns ``(text, exit_code, destination)``, raising :class:`CliError`.

    ``destination`` is the ``--out`` path for every command except truncate,
    which uses ``--out`` for its eigenvalue CSV and always reports to stdout.
    """
    args = build_parser().parse_args(argv)
    tol = _tolerances(args.tol_override)
    try:
        result, code = COMMANDS[args.command](args, tol)
    except CliError:
        raise
    except IdentityError as exc:
        raise CliError(3, "IdentityError", str(exc)) from exc
    except ConvergenceError as exc:
        raise CliError(5, "ConvergenceError", str(exc)) from exc
    except (ConjugacyFailure, NotTranslation) as exc:
        raise CliError(4, type(exc).__name__, str(exc)) from exc
    except AutospecError as exc:
        raise CliError(2, type(exc).__name__, str(exc)) from exc
    if isinstance(result, dict):
        result["tolerances"] = tol.as_dict()
        text = dumps(result) + "\n"
    else:
        text = result
    dest = None if args.command == "truncate" else args.out
    return text, code, dest


def main(argv=None) -> int:
    try:
        text, code, dest = run(argv)
    except CliError as exc:
        sys.stderr.write(dumps({"error": exc.kind, "code": exc.code, "message": str(exc)}) + "\n")
        return exc.code
    if dest:
        Path(dest).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
