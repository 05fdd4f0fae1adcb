"""Command-line front end.

One subcommand per library operation.  Results are printed as flat JSON
documents (see schemas/cli_output.schema.json); --text switches to plain
key = value lines.  Exit codes: 0 success, 1 domain errors, 2 parse or
usage errors.  Expression arguments may be given inline or as @path to
read the expression from a file.  The environment variable
JACDER_MAX_DEGREE (default 32) caps every solver degree bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from jacder.centralizer import (
    basis_decompose,
    centralizer_solve,
    commute_check,
    commuting_pair_construct,
    criterion_check,
    eigen_search,
    ode_export,
)
from jacder.derivation import Derivation, jacobian_derivation, potential
from jacder.errors import JacderError
from jacder.kernel import decompose, kernel_generator, membership
from jacder.parser import parse_poly
from jacder.poly import BivarPoly
from jacder.serialize import jsonable, poly_text

DEFAULT_MAX_DEGREE = 32

# exhaustive map from error strings to exit codes; every JacderError code
# appears here exactly once (checked by the test suite)
EXIT_CODES = {
    "parse_error": 2,
    "usage": 2,
    "bound_exceeds_cap": 2,
    "constant_input": 1,
    "both_zero": 1,
    "inconsistent_system": 1,
    "division_by_zero": 1,
    "not_divisible": 1,
    "not_divergence_free": 1,
    "not_member": 1,
    "not_closed": 1,
    "not_in_centralizer": 1,
    "not_rank_two": 1,
    "divisibility_violation": 1,
    "not_unit_eigenpair": 1,
    "bound_too_small": 1,
    "internal_inconsistency": 1,
}


@dataclass
class JobSpec:
    """One CLI invocation: command, raw expression inputs, options."""

    command: str
    inputs: dict = field(default_factory=dict)
    degree_bound: Optional[int] = None
    output_format: str = "json"


class _CliError(Exception):
    def __init__(self, code: str, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.position = position


def _resolve(job: JobSpec, key: str) -> str:
    value = job.inputs.get(key)
    if value is None:
        raise _CliError("usage", f"missing required input {key!r}")
    if value.startswith("@"):
        try:
            return Path(value[1:]).read_text().strip()
        except OSError as exc:
            raise _CliError("usage", f"cannot read {value[1:]!r}: {exc}") from exc
    return value


def _poly_input(job: JobSpec, key: str) -> BivarPoly:
    return parse_poly(_resolve(job, key))


def _derivation_input(job: JobSpec, allow_f: bool) -> Derivation:
    has_p = "T.P" in job.inputs
    has_q = "T.Q" in job.inputs
    if has_p != has_q:
        raise _CliError("usage", "--T.P and --T.Q must be given together")
    if has_p:
        return Derivation(_poly_input(job, "T.P"), _poly_input(job, "T.Q"))
    if allow_f and "f" in job.inputs:
        return jacobian_derivation(_poly_input(job, "f"))
    wanted = "--T.P/--T.Q or -f" if allow_f else "--T.P/--T.Q"
    raise _CliError("usage", f"a derivation is required ({wanted})")


def _max_degree() -> int:
    raw = os.environ.get("JACDER_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        cap = int(raw)
    except ValueError:
        raise _CliError("usage", f"JACDER_MAX_DEGREE must be an integer, got {raw!r}")
    if cap < 1:
        raise _CliError("usage", "JACDER_MAX_DEGREE must be positive")
    return cap


def _bound_input(job: JobSpec, f: BivarPoly) -> int:
    bound = job.degree_bound
    if bound is None:
        bound = 2 * int(f.total_degree)
    cap = _max_degree()
    if bound > cap:
        raise _CliError(
            "bound_exceeds_cap", f"degree bound {bound} exceeds the cap {cap}"
        )
    return bound


def _cmd_jac(job: JobSpec) -> dict:
    return jsonable(jacobian_derivation(_poly_input(job, "f")))


def _cmd_apply(job: JobSpec) -> dict:
    t = _derivation_input(job, allow_f=True)
    return {"result": poly_text(t.apply(_poly_input(job, "h")))}


def _cmd_bracket(job: JobSpec) -> dict:
    left = _derivation_input(job, allow_f=True)
    right = jacobian_derivation(_poly_input(job, "g"))
    return jsonable(left.bracket(right))


def _cmd_div(job: JobSpec) -> dict:
    t = _derivation_input(job, allow_f=True)
    return {"result": poly_text(t.divergence())}


def _cmd_potential(job: JobSpec) -> dict:
    t = _derivation_input(job, allow_f=True)
    return {"potential": poly_text(potential(t))}


def _cmd_kernel(job: JobSpec) -> dict:
    return jsonable(kernel_generator(_poly_input(job, "f")))


def _cmd_decompose(job: JobSpec) -> dict:
    return jsonable(decompose(_poly_input(job, "f")))


def _cmd_member(job: JobSpec) -> dict:
    psi = membership(_poly_input(job, "h"), _poly_input(job, "f"))
    if psi is None:
        raise _CliError("not_member", "h is not a polynomial in p")
    return {"psi": jsonable(psi)}


def _cmd_commute(job: JobSpec) -> dict:
    t = _derivation_input(job, allow_f=False)
    d = jacobian_derivation(_poly_input(job, "f"))
    return {"commutes": commute_check(t, d)}


def _cmd_criterion(job: JobSpec) -> dict:
    t = _derivation_input(job, allow_f=False)
    return jsonable(criterion_check(t, _poly_input(job, "f")))


def _cmd_centralizer(job: JobSpec) -> dict:
    f = _poly_input(job, "f")
    return jsonable(centralizer_solve(f, _bound_input(job, f)))


def _cmd_basis_decompose(job: JobSpec) -> dict:
    t = _derivation_input(job, allow_f=False)
    f = _poly_input(job, "f")
    result = centralizer_solve(f, _bound_input(job, f))
    q, delta = basis_decompose(t, result, f)
    return {"q": jsonable(q), "delta": jsonable(delta)}


def _cmd_eigen(job: JobSpec) -> dict:
    f = _poly_input(job, "f")
    pairs = eigen_search(f, _bound_input(job, f))
    return {"pairs": [jsonable(pair) for pair in pairs]}


def _cmd_pair(job: JobSpec) -> dict:
    return jsonable(
        commuting_pair_construct(_poly_input(job, "f"), _poly_input(job, "g"))
    )


def _cmd_ode(job: JobSpec) -> dict:
    t = _derivation_input(job, allow_f=True)
    bound = job.degree_bound
    if bound is not None and bound > _max_degree():
        raise _CliError(
            "bound_exceeds_cap", f"degree bound {bound} exceeds the cap {_max_degree()}"
        )
    return jsonable(ode_export(t, bound))


_HANDLERS = {
    "jac": _cmd_jac,
    "apply": _cmd_apply,
    "bracket": _cmd_bracket,
    "div": _cmd_div,
    "potential": _cmd_potential,
    "kernel": _cmd_kernel,
    "decompose": _cmd_decompose,
    "member": _cmd_member,
    "commute": _cmd_commute,
    "criterion": _cmd_criterion,
    "centralizer": _cmd_centralizer,
    "basis-decompose": _cmd_basis_decompose,
    "eigen": _cmd_eigen,
    "pair": _cmd_pair,
    "ode": _cmd_ode,
}


def run(job: JobSpec) -> tuple[int, dict]:
    """Execute a job; returns (exit code, output document)."""
    handler = _HANDLERS.get(job.command)
    if handler is None:
        return EXIT_CODES["usage"], {
            "error": "usage",
            "message": f"unknown command {job.command!r}",
        }
    try:
        return 0, handler(job)
    except _CliError as exc:
        doc = {"error": exc.code, "message": exc.message}
        if exc.position is not None:
            doc["position"] = exc.position
        return EXIT_CODES[exc.code], doc
    except ZeroDivisionError as exc:
        return EXIT_CODES["division_by_zero"], {
            "error": "division_by_zero",
            "message": str(exc) or "division by zero",
        }
    except JacderError as exc:
        doc = {"error": exc.code, "message": str(exc)}
        position = getattr(exc, "position", None)
        if position is not None:
            doc["position"] = position
        return EXIT_CODES[exc.code], doc


def _add_flags(sub: argparse.ArgumentParser, *names: str, bound: bool = False) -> None:
    for name in names:
        if name == "h":
            sub.add_argument("-h", dest="h", metavar="POLY")
        elif name in ("f", "g"):
            sub.add_argument(f"-{name}", dest=name, metavar="POLY")
        else:  # T components
            flag = f"--{name}"
            sub.add_argument(flag, f"-{name}", dest=name, metavar="POLY")
    if bound:
        sub.add_argument("--bound", dest="bound", type=int, metavar="N")
    sub.add_argument("--json", dest="format", action="store_const", const="json")
    sub.add_argument("--text", dest="format", action="store_const", const="text")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacder",
        description="exact computations with Jacobian derivations of Q[x,y]",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def sub(name: str, help_text: str) -> argparse.ArgumentParser:
        # -h is an expression flag on some commands, so help is --help only
        s = commands.add_parser(name, help=help_text, add_help=False)
        s.add_argument("--help", action="help")
        return s

    _add_flags(sub("jac", "Jacobian derivation of f"), "f")
    _add_flags(sub("apply", "apply a derivation to h"), "T.P", "T.Q", "f", "h")
    _add_flags(sub("bracket", "Lie bracket [T, D_g]"), "T.P", "T.Q", "f", "g")
    _add_flags(sub("div", "divergence of a derivation"), "T.P", "T.Q", "f")
    _add_flags(sub("potential", "potential of a divergence-free derivation"), "T.P", "T.Q", "f")
    _add_flags(sub("kernel", "minimal kernel generator of D_f"), "f")
    _add_flags(sub("decompose", "write f as theta(p)"), "f")
    _add_flags(sub("member", "express h as psi(p) for p given by -f"), "f", "h")
    _add_flags(sub("commute", "does T commute with D_f"), "T.P", "T.Q", "f")
    _add_flags(sub("criterion", "composite commutation criterion"), "T.P", "T.Q", "f")
    _add_flags(sub("centralizer", "generators of the centralizer of D_f"), "f", bound=True)
    _add_flags(
        sub("basis-decompose", "coordinates of T over (T0, D_p)"),
        "T.P",
        "T.Q",
        "f",
        bound=True,
    )
    _add_flags(sub("eigen", "rational eigenpairs of D_f"), "f", bound=True)
    _add_flags(sub("pair", "commuting field f*D_g - g*D_f"), "f", "g")
    _add_flags(sub("ode", "autonomous system with first integrals"), "T.P", "T.Q", "f", bound=True)
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    inputs = {}
    for key in ("f", "g", "h", "T.P", "T.Q"):
        value = getattr(args, key, None)
        if value is not None:
            inputs[key] = value
    return JobSpec(
        command=args.command,
        inputs=inputs,
        degree_bound=getattr(args, "bound", None),
        output_format=getattr(args, "format", None) or "json",
    )


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    job = job_from_args(args)
    code, doc = run(job)
    if job.output_format == "json":
        print(json.dumps(doc))
    elif "error" in doc and code != 0:
        print(f"error: {doc['error']}: {doc['message']}", file=sys.stderr)
    else:
        for key, value in doc.items():
            rendered = value if isinstance(value, str) else json.dumps(value)
            print(f"{key} = {rendered}")
    return code


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
