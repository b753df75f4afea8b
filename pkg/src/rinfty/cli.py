"""Command-line front end.

Exit status: 0 when every check passes, 1 when some check produced failure
witnesses, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .fileformat import AlgebraSpec, SpecError, fixture_names, fixture_path, parse_text
from .graded import InvalidInputError
from .linfty import check_schouten_linfty, schouten_extend
from .policy import DEFAULT_POLICY, TruncationPolicy
from .report import ReportFile, digest
from .transfer import TransferError, check_generalized_mc, check_linfty_morphism, transfer

COMMANDS = ("check-linfty", "check-rmatrix", "check-morphism", "transfer", "report")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rinfty",
        description="Verify L-infinity structures, r-infinity matrices and their transfer.",
        epilog="bundled fixtures: " + ", ".join(fixture_names()),
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("path", nargs="?", help="algebra spec file")
    p.add_argument("--fixture", help="use a bundled fixture instead of a file")
    p.add_argument("--max-weight", type=int, help="weight cap W")
    p.add_argument("--max-lambda", type=int, help="lambda-order cap L")
    p.add_argument("--max-arity", type=int, help="arity cap A")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    return p


def _policy(args: argparse.Namespace, spec: AlgebraSpec) -> TruncationPolicy:
    base = spec.policy or DEFAULT_POLICY
    try:
        return TruncationPolicy(
            base.max_weight if args.max_weight is None else args.max_weight,
            base.max_lambda if args.max_lambda is None else args.max_lambda,
            base.max_arity if args.max_arity is None else args.max_arity,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(args: argparse.Namespace) -> tuple[AlgebraSpec, str, bytes]:
    if (args.path is None) == (args.fixture is None):
        raise UsageError("give exactly one of a spec file path or --fixture")
    if args.fixture is not None:
        path = fixture_path(args.fixture)
        label = f"fixture:{args.fixture}"
    else:
        path = Path(args.path)
        label = args.path
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise SpecError(f"cannot read file ({exc.strerror})", None, label) from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise SpecError("file is not valid UTF-8", None, label) from None
    return parse_text(text, label), label, data


def run(args: argparse.Namespace) -> ReportFile:
    spec, label, data = _load(args)
    policy = _policy(args, spec)
    if args.command in ("check-rmatrix", "transfer") and spec.rmatrix is None:
        raise UsageError(f"{args.command} needs an rmatrix in the spec file")
    if spec.rmatrix is not None:
        spec.rmatrix.cap = policy.max_lambda
    rep = ReportFile(args.command, label, digest(data), policy)
    jacobi = spec.alg.certify(policy)
    rep.sections.append(jacobi)
    if not jacobi.passed:
        rep.notes.append("higher Jacobi failed; later checks were not run")
        return rep
    s = schouten_extend(spec.alg, policy)
    cmd = args.command
    if cmd in ("check-linfty", "report"):
        rep.sections.append(check_schouten_linfty(s))
    if cmd in ("check-morphism", "report"):
        rep.sections.append(check_linfty_morphism(s, policy))
    if cmd == "check-rmatrix" or (cmd == "report" and spec.rmatrix is not None):
        rep.sections.append(check_generalized_mc(spec.rmatrix, s))
    if cmd == "transfer" or (cmd == "report" and spec.rmatrix is not None):
        try:
            result = transfer(spec.rmatrix, s, policy)
        except TransferError as exc:
            if cmd == "transfer":
                rep.sections.append(exc.report)
            rep.notes.append("transfer skipped: r fails the generalized Maurer-Cartan equation")
            return rep
        rep.sections.append(result.report)
        rep.mu = result.mu.coefficients
    return rep


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        rep = run(args)
    except UsageError as exc:
        print(f"rinfty: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidInputError as exc:
        print(f"rinfty: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = rep.render(args.format)
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    if not rep.passed:
        print(f"rinfty: {rep.failures} failure witnesses", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
