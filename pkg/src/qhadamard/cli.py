"""Command-line front end.

Exit codes: 0 success, 1 domain error (a module rejected a value; its
message is printed), 2 usage error (bad flags, unknown names, malformed
specs).  Output is byte-identical across runs with identical arguments;
floats are emitted in their shortest exact round-trip form.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import bloch, ensembles, gates, verify
from .qcore import (
    ComplementConvention,
    GateMatrix,
    ValidationError,
    format_float,
    unitarity_residual,
)

GATE_FORMS = (
    "hadamard",
    "polar:PHI",
    "equatorial",
    "symmetric-u",
    "unequal:P_RE,P_IM,Q_RE,Q_IM",
    "unequal-polar:P,Q,PHI",
    "unequal-equatorial:P_RE,P_IM,Q_RE,Q_IM",
)

TEMPLATE_FORMS = (
    "hadamard",
    "polar",
    "equatorial",
    "unequal:P_RE,P_IM,Q_RE,Q_IM",
    "unequal-polar:P,Q",
    "unequal-equatorial:P_RE,P_IM,Q_RE,Q_IM",
)

FAMILY_POINT_FORMS = (
    "theorem1:ALPHA,BRANCH,CONV",
    "polar:THETA,PHI",
    "equatorial:PHI",
    "theorem3:ALPHA,BRANCH,CONV",
    "unequal-general:P_RE,P_IM,Q_RE,Q_IM,B_RE,B_IM,SIGN",
    "unequal-equatorial:P_RE,P_IM,Q_RE,Q_IM,B_RE,B_IM,SIGN",
)

FAMILY_SWEEP_FORMS = (
    "theorem1:BRANCH,CONV",
    "polar:PHI",
    "equatorial",
    "theorem3:BRANCH,CONV",
    "unequal-general:P_RE,P_IM,Q_RE,Q_IM,SIGN",
    "unequal-equatorial:P_RE,P_IM,Q_RE,Q_IM,SIGN",
)


class UsageError(Exception):
    """Malformed invocation; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one-line diagnostic instead of SystemExit
        raise UsageError(message)


def _split_spec(spec: str) -> tuple[str, list[str]]:
    name, _, arg_str = spec.partition(":")
    return name, arg_str.split(",") if arg_str else []


def _floats(args: list[str], count: int, what: str) -> list[float]:
    if len(args) != count:
        raise UsageError(f"{what} expects {count} parameter(s), got {len(args)}")
    out = []
    for token in args:
        try:
            out.append(float(token))
        except ValueError:
            raise UsageError(f"{what}: {token!r} is not a decimal literal") from None
    return out


def _sign(token: str, what: str) -> int:
    if token == "+":
        return 1
    if token == "-":
        return -1
    raise UsageError(f"{what} must be '+' or '-', got {token!r}")


def _convention(token: str) -> ComplementConvention:
    if token in ("A", "B"):
        return ComplementConvention[token]
    raise UsageError(f"convention must be 'A' or 'B', got {token!r}")


def gate_from_spec(spec: str) -> GateMatrix:
    name, args = _split_spec(spec)
    if name == "hadamard":
        _floats(args, 0, name)
        return gates.hadamard()
    if name == "polar":
        (phi,) = _floats(args, 1, name)
        return gates.polar_gate(phi)
    if name == "equatorial":
        _floats(args, 0, name)
        return gates.equatorial_gate()
    if name == "symmetric-u":
        _floats(args, 0, name)
        return gates.symmetric_u()
    if name == "unequal":
        pr, pi, qr, qi = _floats(args, 4, name)
        return gates.unequal_general(
            gates.SuperpositionWeights(complex(pr, pi), complex(qr, qi))
        )
    if name == "unequal-polar":
        p, q, phi = _floats(args, 3, name)
        return gates.unequal_polar_gate(gates.SuperpositionWeights(p, q), phi)
    if name == "unequal-equatorial":
        pr, pi, qr, qi = _floats(args, 4, name)
        return gates.unequal_equatorial(
            gates.SuperpositionWeights(complex(pr, pi), complex(qr, qi))
        )
    raise UsageError(f"unknown gate {name!r}; valid gates: {', '.join(GATE_FORMS)}")


def template_from_spec(spec: str) -> verify.TransformTemplate:
    name, args = _split_spec(spec)
    if name == "hadamard":
        _floats(args, 0, name)
        return verify.HADAMARD_TEMPLATE
    if name == "polar":
        _floats(args, 0, name)
        return verify.POLAR_TEMPLATE
    if name == "equatorial":
        _floats(args, 0, name)
        return verify.EQUATORIAL_TEMPLATE
    if name == "unequal":
        pr, pi, qr, qi = _floats(args, 4, name)
        return verify.unequal_template(
            gates.SuperpositionWeights(complex(pr, pi), complex(qr, qi))
        )
    if name == "unequal-polar":
        p, q = _floats(args, 2, name)
        return verify.unequal_polar_template(gates.SuperpositionWeights(p, q))
    if name == "unequal-equatorial":
        pr, pi, qr, qi = _floats(args, 4, name)
        return verify.unequal_equatorial_template(
            gates.SuperpositionWeights(complex(pr, pi), complex(qr, qi))
        )
    raise UsageError(
        f"unknown template {name!r}; valid templates: {', '.join(TEMPLATE_FORMS)}"
    )


def family_pair_from_spec(spec: str):
    name, args = _split_spec(spec)
    if name == "theorem1" or name == "theorem3":
        if len(args) != 3:
            raise UsageError(f"{name} expects ALPHA,BRANCH,CONV, got {args!r}")
        (alpha,) = _floats(args[:1], 1, name)
        branch = _sign(args[1], f"{name} branch")
        conv = _convention(args[2])
        ctor = ensembles.theorem1_state if name == "theorem1" else ensembles.theorem3_state
        return ctor(alpha, branch, conv)
    if name == "polar":
        theta, phi = _floats(args, 2, name)
        return ensembles.polar_circle_state(theta, phi)
    if name == "equatorial":
        (phi,) = _floats(args, 1, name)
        return ensembles.equatorial_state(phi)
    if name in ("unequal-general", "unequal-equatorial"):
        if len(args) != 7:
            raise UsageError(
                f"{name} expects P_RE,P_IM,Q_RE,Q_IM,B_RE,B_IM,SIGN, got {args!r}"
            )
        pr, pi, qr, qi, br, bi = _floats(args[:6], 6, name)
        sign = _sign(args[6], f"{name} sign")
        kind = (
            ensembles.UnequalKind.GENERAL
            if name == "unequal-general"
            else ensembles.UnequalKind.EQUATORIAL
        )
        params = ensembles.UnequalParams(
            gates.SuperpositionWeights(complex(pr, pi), complex(qr, qi)),
            complex(br, bi),
            sign,
            kind,
        )
        return ensembles.unequal_family_state(params)
    raise UsageError(
        f"unknown family {name!r}; valid families: {', '.join(FAMILY_POINT_FORMS)}"
    )


def family_sweep_from_spec(spec: str) -> ensembles.FamilySweep:
    name, args = _split_spec(spec)
    if name == "theorem1" or name == "theorem3":
        if len(args) != 2:
            raise UsageError(f"{name} sweep expects BRANCH,CONV, got {args!r}")
        branch = _sign(args[0], f"{name} branch")
        conv = _convention(args[1])
        ctor = ensembles.theorem1_sweep if name == "theorem1" else ensembles.theorem3_sweep
        return ctor(branch, conv)
    if name == "polar":
        (phi,) = _floats(args, 1, name)
        return ensembles.polar_sweep(phi)
    if name == "equatorial":
        _floats(args, 0, name)
        return ensembles.equatorial_sweep()
    if name in ("unequal-general", "unequal-equatorial"):
        if len(args) != 5:
            raise UsageError(
                f"{name} sweep expects P_RE,P_IM,Q_RE,Q_IM,SIGN, got {args!r}"
            )
        pr, pi, qr, qi = _floats(args[:4], 4, name)
        sign = _sign(args[4], f"{name} sign")
        kind = (
            ensembles.UnequalKind.GENERAL
            if name == "unequal-general"
            else ensembles.UnequalKind.EQUATORIAL
        )
        return ensembles.unequal_sweep(
            kind, gates.SuperpositionWeights(complex(pr, pi), complex(qr, qi)), sign
        )
    raise UsageError(
        f"unknown family {name!r}; valid families: {', '.join(FAMILY_SWEEP_FORMS)}"
    )


@dataclass(frozen=True)
class CommandSpec:
    """One parsed invocation; round-trips through ``canonical_argv``."""

    subcommand: str
    params: tuple[tuple[str, object], ...]
    output: str | None
    fmt: str

    def param(self, name: str):
        return dict(self.params)[name]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qhadamard", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gates-show", help="print a gate matrix")
    p.add_argument("name")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)

    p = sub.add_parser("check-unitarity", help="unitarity residual of a gate")
    p.add_argument("name")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="check a (gate, template, family point) triple")
    p.add_argument("--gate", required=True)
    p.add_argument("--template", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--tol", type=float, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)

    p = sub.add_parser("derive", help="brute-force the admissible ensemble of a gate")
    p.add_argument("--gate", required=True)
    p.add_argument("--template", required=True)
    p.add_argument("--convention", choices=("A", "B"), required=True)
    p.add_argument("--grid", default="64,128,128")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)

    p = sub.add_parser("trajectory", help="sample a family's Bloch trajectory")
    p.add_argument("--family", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)

    p = sub.add_parser("intersect", help="great-circle crossings of a family")
    p.add_argument("--family", required=True)
    p.add_argument("--circle", choices=("polar", "equatorial"), required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)

    return parser


def parse_args(argv: list[str]) -> CommandSpec:
    ns = build_parser().parse_args(argv)
    sub = ns.subcommand
    if sub in ("gates-show", "check-unitarity"):
        params = (("name", ns.name),)
    elif sub == "verify":
        params = (
            ("gate", ns.gate),
            ("template", ns.template),
            ("family", ns.family),
            ("tol", float(ns.tol)),
        )
    elif sub == "derive":
        params = (
            ("gate", ns.gate),
            ("template", ns.template),
            ("convention", ns.convention),
            ("grid", _parse_grid(ns.grid)),
            ("tol", float(ns.tol)),
        )
    elif sub == "trajectory":
        if ns.samples < 2:
            raise UsageError(f"--samples must be at least 2, got {ns.samples}")
        params = (("family", ns.family), ("samples", int(ns.samples)))
    else:  # intersect
        params = (
            ("family", ns.family),
            ("circle", ns.circle),
            ("tol", float(ns.tol)),
        )
    return CommandSpec(sub, params, ns.out, ns.format)


def _parse_grid(token: str) -> tuple[int, int, int]:
    parts = token.split(",")
    if len(parts) != 3:
        raise UsageError(f"--grid expects NT,NP,NG, got {token!r}")
    try:
        nt, np_, ng = (int(p) for p in parts)
    except ValueError:
        raise UsageError(f"--grid entries must be integers, got {token!r}") from None
    return nt, np_, ng


def canonical_argv(spec: CommandSpec) -> list[str]:
    argv = [spec.subcommand]
    for name, value in spec.params:
        if name == "name":
            argv.append(str(value))
            continue
        if isinstance(value, tuple):
            rendered = ",".join(str(v) for v in value)
        elif isinstance(value, float):
            rendered = format_float(value)
        else:
            rendered = str(value)
        argv.extend((f"--{name}", rendered))
    argv.extend(("--format", spec.fmt))
    if spec.output is not None:
        argv.extend(("--out", spec.output))
    return argv


def _cjson(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _csv(header: str, rows: list[list[str]]) -> str:
    return "\n".join([header] + [",".join(row) for row in rows]) + "\n"


def _json_doc(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def run(spec: CommandSpec) -> str:
    """Execute a parsed command and return the output document."""
    sub = spec.subcommand
    if sub == "gates-show":
        gate = gate_from_spec(spec.param("name"))
        if spec.fmt == "json":
            rows = [
                [_cjson(gate.m00), _cjson(gate.m01)],
                [_cjson(gate.m10), _cjson(gate.m11)],
            ]
            return _json_doc(rows)
        rows = [
            [str(i), str(j), format_float(entry.real), format_float(entry.imag)]
            for (i, j, entry) in (
                (0, 0, gate.m00),
                (0, 1, gate.m01),
                (1, 0, gate.m10),
                (1, 1, gate.m11),
            )
        ]
        return _csv("row,col,re,im", rows)

    if sub == "check-unitarity":
        name = spec.param("name")
        gate = gate_from_spec(name)
        residual = unitarity_residual(gate)
        ok = residual < 1e-12
        if spec.fmt == "json":
            return _json_doc({"gate": name, "residual": residual, "pass": ok})
        return _csv("gate,residual,pass", [[name, format_float(residual), _bool(ok)]])

    if sub == "verify":
        gate = gate_from_spec(spec.param("gate"))
        template = template_from_spec(spec.param("template"))
        psi, perp = family_pair_from_spec(spec.param("family"))
        report = verify.check_pair(gate, psi, perp, template, spec.param("tol"))
        if spec.fmt == "json":
            return _json_doc(
                {"row1": report.row1, "row2": report.row2, "pass": report.passed}
            )
        return _csv(
            "row1,row2,pass",
            [[format_float(report.row1), format_float(report.row2), _bool(report.passed)]],
        )

    if sub == "derive":
        gate = gate_from_spec(spec.param("gate"))
        template = template_from_spec(spec.param("template"))
        convention = ComplementConvention[spec.param("convention")]
        derived = verify.derive_family(
            gate, template, convention, spec.param("grid"), spec.param("tol")
        )
        if spec.fmt == "json":
            return _json_doc(verify.derived_family_records(derived))
        return verify.derived_family_csv(derived)

    if sub == "trajectory":
        sweep = family_sweep_from_spec(spec.param("family"))
        n = spec.param("samples")
        params = sweep.grid(n)
        points = bloch.trajectory(sweep, n)
        if spec.fmt == "json":
            records = [
                {
                    "param": t,
                    "x": pt.x,
                    "y": pt.y,
                    "z": pt.z,
                    "theta": pt.theta,
                    "phi": pt.phi,
                    "gamma": pt.gamma,
                }
                for t, pt in zip(params, points)
            ]
            return _json_doc(records)
        rows = [
            [
                format_float(v)
                for v in (t, pt.x, pt.y, pt.z, pt.theta, pt.phi, pt.gamma)
            ]
            for t, pt in zip(params, points)
        ]
        return _csv(bloch.TRAJECTORY_CSV_HEADER, rows)

    if sub == "intersect":
        sweep = family_sweep_from_spec(spec.param("family"))
        hits = bloch.circle_intersections(sweep, spec.param("circle"), spec.param("tol"))
        if spec.fmt == "json":
            records = [
                {
                    "param": hit.param,
                    "x": hit.point.x,
                    "y": hit.point.y,
                    "z": hit.point.z,
                    "theta": hit.point.theta,
                    "phi": hit.point.phi,
                    "gamma": hit.point.gamma,
                    "a": _cjson(hit.state.a),
                    "b": _cjson(hit.state.b),
                }
                for hit in hits
            ]
            return _json_doc(records)
        rows = [
            [
                format_float(v)
                for v in (
                    hit.param,
                    hit.point.x,
                    hit.point.y,
                    hit.point.z,
                    hit.point.theta,
                    hit.point.phi,
                    hit.point.gamma,
                    hit.state.a.real,
                    hit.state.a.imag,
                    hit.state.b.real,
                    hit.state.b.imag,
                )
            ]
            for hit in hits
        ]
        return _csv("param,x,y,z,theta,phi,gamma,a_re,a_im,b_re,b_im", rows)

    raise UsageError(f"unknown subcommand {sub!r}")


def main(argv: list[str] | None = None) -> int:
    try:
        spec = parse_args(sys.argv[1:] if argv is None else list(argv))
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        document = run(spec)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if spec.output is None:
            sys.stdout.write(document)
        else:
            with open(spec.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(document)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
