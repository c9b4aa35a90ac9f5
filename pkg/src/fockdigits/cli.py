"""Command line interface: ``fockdigits {floor,digits,matrix,verify,coefficients}``.

Exit codes: 0 success, 1 verification or numerical failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import base_change, multiboson, translation
from .errors import DimTooLarge, FockError, NumericalDrift, SlotOutOfRange
from .fock_core import RegisterSpec
from .operator_engine import to_triplets, triplets_to_csv
from .tolerances import DEFAULT, Tolerances
from .verification import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _tolerance(text: str) -> tuple[str, float]:
    key, _, value = text.partition("=")
    names = {f.name for f in dataclasses.fields(Tolerances)}
    if key not in names or not value:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE with NAME in {sorted(names)}")
    return key, float(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    common.add_argument("--seed", type=int, help="reserved; currently unused")
    common.add_argument("--tolerance", type=_tolerance, action="append", default=[],
                        metavar="NAME=VALUE", help="override a tolerance, e.g. integer_distance=1e-8")

    p = argparse.ArgumentParser(prog="fockdigits", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("floor", parents=[common], help="floor(n/k) as a multiboson eigenvalue")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--method", choices=["residues", "division", "series-composition"], default="residues")

    d = sub.add_parser("digits", parents=[common], help="base-b digits of n, little-endian")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--base", type=int, required=True)
    d.add_argument("--method", choices=["classical", "spectral", "quantum", "all"], default="all")
    d.add_argument("--route", choices=["borrow", "sum"], default="borrow",
                   help="T_0 realization for the quantum route")

    m = sub.add_parser("matrix", parents=[common], help="export an operator as sparse triplets")
    m.add_argument("--op", choices=["t", "tdag", "T", "Tdag", "Nk", "Dk", "digit"], required=True)
    m.add_argument("--base", type=int, required=True)
    m.add_argument("--slots", type=int, required=True)
    m.add_argument("--m", type=int, default=0)
    m.add_argument("--ell", type=int, default=0)
    m.add_argument("--k", type=int, default=1)
    m.add_argument("--route", default=None,
                   help="borrow|sum for T/Tdag, residues|division for Nk/Dk/digit")
    m.add_argument("--format", choices=["json", "csv"], default="json")

    v = sub.add_parser("verify", parents=[common], help="run invariant sweeps")
    v.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    v.add_argument("--max-n", type=int)
    v.add_argument("--max-k", type=int)
    v.add_argument("--bases", type=_int_list)
    v.add_argument("--slots", type=_int_list)

    c = sub.add_parser("coefficients", parents=[common], help="dump the residue coefficients C_j^(k)")
    c.add_argument("--k", type=int, required=True)
    return p


def _dump(obj) -> str:
    # repr-based float output round-trips every double exactly
    return json.dumps(obj)


def cmd_floor(args, tol: Tolerances) -> tuple[str, int]:
    n, k = args.n, args.k
    if n < 0 or k < 1:
        raise UsageError("need n >= 0 and k >= 1")
    residual = imag = 0.0
    if args.method == "division":
        value = n // k
    elif args.method == "residues":
        raw, im = multiboson.floor_residue_value([n], k)
        raw, imag = float(raw[0]), float(im[0])
        value = multiboson.floor_eigenvalue(n, k, tol)
        residual = abs(raw - value)
    else:
        state = multiboson.number_action_via_series(k, n)
        amp = state[n]
        value = round(amp.real)
        residual, imag = abs(amp.real - value), abs(amp.imag)
        if residual >= tol.integer_distance:
            raise NumericalDrift(f"series composition gave {amp!r}")
    if args.json:
        return _dump({"n": n, "k": k, "method": args.method, "value": value,
                      "residual": residual, "imag_residual": imag}), EXIT_OK
    return str(value), EXIT_OK


def cmd_digits(args, tol: Tolerances) -> tuple[str, int]:
    n, b = args.n, args.base
    if n < 0 or b < 2:
        raise UsageError("need n >= 0 and base >= 2")
    if args.method == "all":
        result = base_change.three_way(n, b, tol, route=args.route)
        code = EXIT_OK if result["agree"] else EXIT_FAIL
        if args.json:
            return _dump(result), code
        return f"{result['digits']} agree={str(result['agree']).lower()}", code
    if args.method == "classical":
        digits = base_change.digits_classical(n, b)
    elif args.method == "spectral":
        digits = base_change.digits_spectral(n, b, tol=tol)
    else:
        digits = base_change.digits_quantum(n, b, route=args.route)
    if args.json:
        return _dump({"n": n, "base": b, "digits": list(digits.digits),
                      "routes": {args.method: list(digits.digits)}, "agree": True}), EXIT_OK
    return str(list(digits.digits)), EXIT_OK


def _operator(args, tol: Tolerances):
    spec = RegisterSpec(args.base, args.slots)
    if spec.dim > tol.matrix_cap:
        raise DimTooLarge(f"dimension {spec.dim} exceeds cap {tol.matrix_cap}")
    op = args.op
    if op in ("t", "tdag"):
        t = translation.t_operator(args.ell, spec)
        return t if op == "t" else t.adjoint()
    if op in ("T", "Tdag"):
        route = args.route or "borrow"
        if route not in ("borrow", "sum"):
            raise UsageError(f"route {route!r} does not apply to {op}")
        T = translation.T_operator(args.m, spec, route)
        return T if op == "T" else T.adjoint()
    route = args.route or "residues"
    if route not in ("residues", "division"):
        raise UsageError(f"route {route!r} does not apply to {op}")
    if op == "Nk":
        return multiboson.number_operator(args.k, spec, route, tol)
    if op == "Dk":
        return multiboson.remainder_operator(args.k, spec, route, tol)
    return multiboson.digit_operator(args.base, args.ell, spec, route, tol)


def cmd_matrix(args, tol: Tolerances) -> tuple[str, int]:
    obj = to_triplets(_operator(args, tol), tol.drop, tol.matrix_cap)
    if args.format == "csv":
        return triplets_to_csv(obj).rstrip("\n"), EXIT_OK
    return _dump(obj), EXIT_OK


def cmd_verify(args, tol: Tolerances) -> tuple[str, int]:
    reports = run_suite(args.suite, args.max_n, args.max_k, args.bases, args.slots, tol)
    ok = all(r.ok for r in reports)
    code = EXIT_OK if ok else EXIT_FAIL
    # the report is always JSON, with or without --json
    return _dump({"ok": ok, "reports": [r.to_json() for r in reports]}), code


def cmd_coefficients(args, tol: Tolerances) -> tuple[str, int]:
    if args.k < 2:
        raise UsageError("coefficients exist only for k >= 2 (the k = 1 sum is empty)")
    return _dump(multiboson.residue_coefficients(args.k).to_json()), EXIT_OK


COMMANDS = {
    "floor": cmd_floor,
    "digits": cmd_digits,
    "matrix": cmd_matrix,
    "verify": cmd_verify,
    "coefficients": cmd_coefficients,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    tol = dataclasses.replace(DEFAULT, **{k: (int(v) if k.endswith("cap") else v) for k, v in args.tolerance})
    try:
        text, code = COMMANDS[args.command](args, tol)
    except (UsageError, DimTooLarge, SlotOutOfRange) as exc:
        print(f"fockdigits {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalDrift as exc:
        print(f"fockdigits {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except FockError as exc:
        # out-of-range parameters and capacity limits are usage problems
        print(f"fockdigits {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, (ValueError, OverflowError)) else EXIT_FAIL
    except ValueError as exc:
        print(f"fockdigits {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
