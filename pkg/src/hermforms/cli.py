"""Command-line front end: load algebras and forms from JSON, run signature
and Witt computations, and drive the seeded verification suites.

Exit codes: 0 success or all checks passed, 1 property failure, 2 usage
error, 3 result undecided.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebras import algebra_to_json, build_algebra
from .baserings import Ordering
from .errors import HermformsError
from .forms import form_from_json, form_to_json
from .pairing import star, sylvester_decompose
from .serialize import dumps, scalar_to_json
from .signatures import max_sig_element, signature, signature_table, table_to_json
from .suites import SUITES, run_suite
from .witt import UNDECIDED, is_hyperbolic, plg_minimal_n, witt_equal

OK, PROPERTY_FAILURE, USAGE, UNDECIDED_EXIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}")


def _algebra(args):
    if not args.algebra:
        raise UsageError("--algebra is required for this command")
    return build_algebra(_load_json(args.algebra))


def _form(args, algebra, attr="form"):
    path = getattr(args, attr)
    if not path:
        raise UsageError(f"--{attr} is required for this command")
    return form_from_json(algebra, _load_json(path))


def _ordering(args):
    try:
        return Ordering.from_key(args.ordering)
    except HermformsError:
        raise UsageError(f"bad ordering {args.ordering!r}; use e.g. 0/+ or 1/-")


def _emit(payload) -> None:
    sys.stdout.write(dumps(payload) + "\n")


def _cmd_sig(args) -> int:
    A = _algebra(args)
    h = _form(args, A)
    if args.ordering != "all":
        P = _ordering(args)
        _emit({"signatures": {P.key(): signature(h, P)}})
        return OK
    _emit({"signatures": table_to_json(signature_table(h))})
    return OK


def _cmd_pair(args) -> int:
    A = _algebra(args)
    h1 = _form(args, A)
    h2 = _form(args, A, "form2")
    paired = star(h1, h2).form
    _emit({
        "algebra": algebra_to_json(paired.algebra),
        "epsilon": paired.epsilon,
        "form": form_to_json(paired),
        "signatures": table_to_json(signature_table(paired)),
    })
    return OK


def _cmd_sylvester(args) -> int:
    A = _algebra(args)
    h = _form(args, A)
    P = _ordering(args) if args.ordering != "all" else Ordering(0, 1)
    if args.form2:
        cform = _form(args, A, "form2")
        if cform.rank != 1:
            raise UsageError("--form2 must be a rank-1 form holding the scaler")
        c = cform.gram[0, 0]
    else:
        c = max_sig_element(A, P, seed=args.seed, budget=args.budget).element
    dec = sylvester_decompose(h, c, P)
    _emit(dec.to_json(A))
    return OK


def _cmd_plg(args) -> int:
    A = _algebra(args)
    h = _form(args, A)
    outcome = plg_minimal_n(h, n_max=args.nmax)
    if isinstance(outcome, int):
        _emit({"n": outcome})
        return OK
    _emit({"verdict": outcome})
    return UNDECIDED_EXIT if outcome == UNDECIDED else OK


def _cmd_goldman(args) -> int:
    A = _algebra(args)
    g = A.goldman_element()
    from .algebras import TensorElement

    squared = g * g == TensorElement.from_pair(A, A.one(), A.one())
    fixed = g.sigma_sigma() == g
    terms = sorted(
        [p, q, scalar_to_json(v)] for (p, q), v in g.coeffs.items()
    )
    _emit({
        "terms": terms,
        "g_squared_is_one": squared,
        "sigma_fixed": fixed,
    })
    return OK if squared and fixed else PROPERTY_FAILURE


def _cmd_decide(args) -> int:
    A = _algebra(args)
    h = _form(args, A)
    if args.form2:
        decision = witt_equal(h, _form(args, A, "form2"))
    else:
        decision = is_hyperbolic(h)
    _emit(decision.to_json())
    return UNDECIDED_EXIT if decision.verdict == UNDECIDED else OK


def _cmd_verify(args) -> int:
    if not args.suite:
        raise UsageError(
            f"--suite is required; available: {', '.join(sorted(SUITES))}"
        )
    report = run_suite(args.suite, seed=args.seed, iters=args.iters,
                       budget=args.budget)
    _emit(report.to_json())
    sys.stderr.write(f"{report.name}: {report.elapsed_ms} ms\n")
    return OK if report.passed else PROPERTY_FAILURE


COMMANDS = {
    "sig": _cmd_sig,
    "pair": _cmd_pair,
    "sylvester": _cmd_sylvester,
    "plg": _cmd_plg,
    "goldman": _cmd_goldman,
    "decide": _cmd_decide,
    "verify": _cmd_verify,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermforms",
        description="signatures, pairings, and Witt-class decisions for "
        "hermitian forms over algebras with involution",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--algebra", help="path to an algebra descriptor JSON")
    parser.add_argument("--form", help="path to a form JSON")
    parser.add_argument("--form2", help="path to a second form JSON")
    parser.add_argument("--ordering", default="all",
                        help="ordering key like 0/+ (default: all orderings)")
    parser.add_argument("--suite", help="verification suite name")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--iters", type=int, default=50)
    parser.add_argument("--budget", type=int, default=200)
    parser.add_argument("--nmax", type=int, default=8)
    parser.add_argument("--json", action="store_true", default=True,
                        help="emit JSON (always on)")
    return parser


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE
    except HermformsError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
