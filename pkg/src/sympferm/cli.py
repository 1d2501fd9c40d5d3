"""Command-line front end: ``sympferm <subcommand> [flags]``.

Every subcommand prints one JSON document (sorted keys) or CSV rows.
Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from itertools import combinations_with_replacement

from . import characters, ffva, invariants, qseries, rootsys
from .qseries import DEN, QSeries, fraction_str


class UsageError(Exception):
    pass


def _ints(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _system(args) -> rootsys.SuperRootSystem:
    try:
        kind, m, n = rootsys.kind_from_r(args.kind, args.m, args.r)
        return rootsys.build_root_system(kind, m, n)
    except ValueError as exc:
        raise UsageError(f"--kind/--m/--r: {exc}") from None


def _weight(sys_: rootsys.SuperRootSystem, text: str):
    vals = _ints(text, "--weight")
    if vals == [0]:
        return sys_.zero()
    total = sys_.m + sys_.n
    if len(vals) > total:
        raise UsageError(f"--weight: {sys_.name} has {total} coordinates")
    vals += [0] * (total - len(vals))
    return sys_.weight(vals[:sys_.m], vals[sys_.m:])


def _convention(args) -> str:
    return "proof_corrected" if args.convention == "corrected" else "literal"


def _trunc(args) -> int:
    if args.order < 0:
        raise UsageError("--order: must be nonnegative")
    return DEN * args.order


# -- output -----------------------------------------------------------------


def _emit(args, payload: dict, rows: list | None = None) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows is None:
        rows = [(k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
                for k, v in sorted(payload.items())]
    w.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _series_out(args, s: QSeries) -> int:
    _emit(args, s.to_dict(), s.to_csv_rows())
    return 0


def _verification(args, payload: dict) -> int:
    payload.setdefault("firstMismatch", None)
    _emit(args, payload)
    return 0 if payload["equal"] else 1


# -- subcommands ------------------------------------------------------------


def cmd_character(args) -> int:
    t = _trunc(args)
    name = args.series
    if name == "full_character":
        s = qseries.full_character(args.m, args.r, t)
    elif name == "sp_orbifold":
        s = qseries.sp_orbifold(args.n, t)
    elif name == "free_wtype":
        if not args.weights:
            raise UsageError("--weights: required for free_wtype")
        s = qseries.free_wtype(_ints(args.weights, "--weights"), t)
    elif name == "eta":
        s = qseries.eta(t)
    elif name == "eta2":
        s = qseries.eta2(t)
    else:
        s = qseries.partial_theta(args.n, t)
    return _series_out(args, s)


def cmd_branching(args) -> int:
    sys_ = _system(args)
    lam = _weight(sys_, args.weight)
    try:
        s = characters.branching(sys_, lam, _trunc(args), _convention(args))
    except ValueError as exc:
        raise UsageError(f"--weight: {exc}") from None
    return _series_out(args, s)


def cmd_branching_closed(args) -> int:
    vals = _ints(args.weight, "--weight")
    try:
        if args.family == "sp":
            s = characters.branching_sp_closed(args.n, vals + [0] * (args.n - len(vals)), _trunc(args))
        else:
            s = characters.branching_gl_closed(args.n, vals, _trunc(args))
    except ValueError as exc:
        raise UsageError(f"--weight: {exc}") from None
    return _series_out(args, s)


def cmd_decompose_check(args) -> int:
    sys_ = _system(args)
    rep = characters.decompose_check(sys_, _trunc(args), _convention(args))
    payload = rep.to_dict()
    payload["nonnegativeIntegral"] = rep.nonnegative_integral
    return _verification(args, payload)


def cmd_denominator_check(args) -> int:
    sys_ = _system(args)
    pts = rootsys.sample_points(sys_, args.points, args.seed)
    lhs, rhs, first = [], [], None
    for i, p in enumerate(pts):
        left, right = rootsys.denominator_identity_eval(sys_, p)
        lhs.append(fraction_str(left))
        rhs.append(fraction_str(right))
        if left != right and first is None:
            first = i
    points = [[[fraction_str(Fraction(x)) for x in p[0]], [fraction_str(Fraction(x)) for x in p[1]]] for p in pts]
    return _verification(args, {"system": sys_.name, "seed": args.seed, "points": points,
                                "lhs": lhs, "rhs": rhs, "equal": first is None, "firstMismatch": first})


def cmd_remainder(args) -> int:
    I = _ints(args.list, "--list")
    J = _ints(args.jlist, "--jlist") if args.jlist else None
    try:
        val = invariants.remainder(args.family, args.n, I, J)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"value": fraction_str(val)})
    return 0


def cmd_decouple(args) -> int:
    w = args.weight if args.weight is not None else 2 * args.n + 2
    try:
        tgt = invariants.target_label(args.family, w)
    except ValueError as exc:
        raise UsageError(f"--weight: {exc}") from None
    sol = invariants.find_decoupling(args.family, args.n, w)
    found = sol is not None
    payload = {"family": args.family, "n": args.n, "weight": w,
               "target": invariants.format_word(args.family, ((tgt, 0),)), "found": found}
    verified = False
    if found:
        payload["solution"] = [[invariants.format_word(args.family, wd), fraction_str(c)] for wd, c in sol.items()]
        verified = invariants.evaluate_decoupling(args.family, args.n, sol) == \
            invariants.generator_state(args.family, tgt, args.n)
        payload["verified"] = verified
    ok = (found and verified) if args.expect == "found" else not found
    _emit(args, payload)
    return 0 if ok else 1


STRONG_EXPECTED = {
    "sp_j": lambda k: -(2 * k + 4),
    "gl_h": lambda k: -(k + 3),
    "flavored_sp": lambda k: -(k + 1),
}


def cmd_strong_gen(args) -> int:
    expected = Fraction(STRONG_EXPECTED[args.kind](args.k))
    try:
        coeff = invariants.strong_generation_coefficient(args.kind, args.n, args.k, args.m)
    except (ValueError, invariants.NotInSpan) as exc:
        raise UsageError(str(exc)) from None
    payload = {"kind": args.kind, "n": args.n, "m": args.m, "k": args.k,
               "lhs": fraction_str(coeff), "rhs": fraction_str(expected)}
    equal = coeff == expected
    if args.kind == "gl_h":
        lhs, rhs = invariants.gl_generation_identity(args.n, args.k)
        payload["identity"] = lhs == rhs
        equal = equal and lhs == rhs
    payload["equal"] = equal
    payload["firstMismatch"] = None if equal else "coefficient"
    return _verification(args, payload)


def cmd_invariant_dims(args) -> int:
    try:
        dims = ffva.invariant_dimensions(args.group, args.n, args.m, args.order)
    except ValueError as exc:
        raise UsageError(f"--group: {exc}") from None
    _emit(args, {"group": args.group, "n": args.n, "m": args.m, "dims": dims},
          [(w, d) for w, d in enumerate(dims)])
    return 0


def cmd_classical_check(args) -> int:
    length = 2 * args.n + 2 if args.family == "sp" else args.n + 1
    entries = range(args.max_entry + 1)
    checked, failures = 0, []
    lists = list(combinations_with_replacement(entries, length))
    for I in lists:
        if args.family == "sp":
            _, ok = invariants.classical_relation("sp", I, n=args.n)
            checked += 1
            if not ok:
                failures.append([list(I)])
        else:
            for J in lists:
                _, ok = invariants.classical_relation("gl", I, J, n=args.n)
                checked += 1
                if not ok:
                    failures.append([list(I), list(J)])
    return _verification(args, {"family": args.family, "n": args.n, "checked": checked,
                                "lhs": len(failures), "rhs": 0, "failures": failures[:20],
                                "equal": not failures,
                                "firstMismatch": failures[0] if failures else None})


def cmd_freeness(args) -> int:
    rep = characters.freeness_check(args.family, args.n, _trunc(args))
    return _verification(args, rep.to_dict())


def cmd_lambda(args) -> int:
    try:
        val = invariants.lambda_coefficient(args.a, args.b, args.w, args.c, termwise=args.termwise)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"value": fraction_str(val)})
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=8, help="truncation as an integer weight (default 8)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--convention", choices=("corrected", "literal"), default="corrected")

    p = argparse.ArgumentParser(prog="sympferm", description="Exact symplectic fermion orbifold computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    def system_flags(sp):
        sp.add_argument("--kind", choices=("gl", "spo"), required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--r", type=int, required=True)

    sp = add("character", cmd_character, "named q-series")
    sp.add_argument("--series", default="full_character",
                    choices=("full_character", "sp_orbifold", "free_wtype", "eta", "eta2", "partial_theta"))
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--weights", default="")

    sp = add("branching", cmd_branching, "branching function B_Lambda")
    system_flags(sp)
    sp.add_argument("--weight", default="0", help="comma-separated delta then epsilon coordinates")

    sp = add("branching-closed", cmd_branching_closed, "closed-form branching functions")
    sp.add_argument("--family", choices=("sp", "gl"), required=True)
    sp.add_argument("--n", type=int, required=True, help="rank (n for Sp(2n), m for GL(m))")
    sp.add_argument("--weight", default="0")

    sp = add("decompose-check", cmd_decompose_check, "character decomposition check")
    system_flags(sp)

    sp = add("denominator-check", cmd_denominator_check, "denominator identity at seeded points")
    system_flags(sp)
    sp.add_argument("--points", type=int, default=5)

    sp = add("remainder", cmd_remainder, "remainder of a classical relation")
    sp.add_argument("--family", choices=("sp", "gl"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--list", required=True)
    sp.add_argument("--jlist", default=None)

    sp = add("decouple", cmd_decouple, "search for a decoupling relation")
    sp.add_argument("--family", choices=("sp", "gl"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--weight", type=int, default=None, help="weight of the target generator (default 2n+2)")
    sp.add_argument("--expect", choices=("found", "none"), default="found")

    sp = add("strong-gen", cmd_strong_gen, "strong generation identities")
    sp.add_argument("--kind", choices=tuple(STRONG_EXPECTED), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--k", type=int, required=True)

    sp = add("invariant-dims", cmd_invariant_dims, "invariant dimensions by brute force")
    sp.add_argument("--group", required=True, help="sp, gl, sp_so or gl_gl")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=1)

    sp = add("classical-check", cmd_classical_check, "verify classical relations")
    sp.add_argument("--family", choices=("sp", "gl"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-entry", type=int, default=3)

    sp = add("freeness", cmd_freeness, "compare with a freely generated character")
    sp.add_argument("--family", choices=("sp", "gl"), required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("lambda", cmd_lambda, "lambda coefficient")
    for flag in ("--a", "--b", "--w", "--c"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--termwise", action="store_true", help="drop only the summand with a negative factorial")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
