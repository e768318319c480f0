"""Command-line entry point: verify, report, charts, solve-adhm."""
from __future__ import annotations

import argparse
import json
import random
import re
import sys

from . import groups, involutions, quiver, resolution
from .groups import Check, GammaType
from .poly import PolynomialError, parse_polynomial

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ROMAN = ("I", "II", "III")


class UsageError(ValueError):
    pass


def _version() -> str:
    try:
        from importlib.metadata import version
        return version("artifact")
    except Exception:
        return "0.1.0"


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- argument parsing ---------------------------------------------------------------

def parse_target(tokens: list[str], n: int | None) -> tuple[GammaType, str | None]:
    """'E7', 'E7 I', 'D 6 II', 'D6 II', 'A --n 7'."""
    if not tokens:
        raise UsageError("missing type")
    toks = list(tokens)
    head = toks.pop(0)
    if toks and re.fullmatch(r"\d+", toks[0]) and re.fullmatch(r"[ADad]", head):
        head += toks.pop(0)
    case = None
    if toks:
        case = toks.pop(0).upper()
        if case not in ROMAN:
            raise UsageError(f"unknown case {case!r}")
    if toks:
        raise UsageError(f"unexpected arguments {toks}")
    try:
        gamma = GammaType.parse(head, n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if gamma.family == "A" and gamma.n < 1 or gamma.family == "D" and gamma.n < 4:
        raise UsageError(f"rank {gamma.n} out of range for type {gamma.family}")
    if case is not None and case not in quiver.lift_cases(gamma):
        raise UsageError(f"{gamma.label} has cases {', '.join(quiver.lift_cases(gamma))}; no case {case}")
    return gamma, case


ALL_TYPES = (
    [GammaType("A", n) for n in range(1, 13)]
    + [GammaType("D", n) for n in range(4, 11)]
    + [GammaType("E6", 6), GammaType("E7", 7), GammaType("E8", 8)]
)


# -- verify ----------------------------------------------------------------------------

def _guard(section: str, fn) -> list[dict]:
    try:
        checks = fn()
    except AssertionError as e:
        checks = [Check(section, False, str(e))]
    return [dict(c.as_dict(), section=section) for c in checks]


def _case_checks(gamma: GammaType, case: str) -> list[dict]:
    inv = involutions.get_involution(gamma, case)
    out = []

    def involution():
        checks = involutions.verify_involution(inv)
        g = involutions.realize_by_matrix(inv)
        return checks + [Check("realized by matrix", True, str(g.entries()))]

    def fixed():
        d = involutions.fixed_locus(inv)
        return [Check(f"{len(d.components)} components, reduced={d.reduced}", True, d.reduced_reason)]

    def lift():
        setting = quiver.build_setting(gamma)
        spec = quiver.lift_catalog(gamma, case)
        pts = quiver.exact_sample_points(gamma)
        return quiver.verify_lift(spec, setting, pts, random.Random(0))

    def divisor():
        d = resolution.divisor_description(gamma, case)
        want = resolution.closed_form(gamma, case)
        a = "(" + ",".join(map(str, d.multiplicities)) + ")"
        checks = [Check(f"a = {a}", d.multiplicities == want, "" if d.multiplicities == want else f"closed form {want}")]
        if d.principal:
            data = resolution.cartan(gamma)
            bad = [i for i in resolution.meets_three(d, data) if d.multiplicities[i - 1] < 2]
            checks.append(Check("triple points carry multiplicity > 1", not bad, f"violations {bad}" if bad else ""))
        return checks

    for name, fn in (("involution", involution), ("fixed_locus", fixed), ("lift", lift), ("divisor", divisor)):
        out += [dict(r, case=case) for r in _guard(name, fn)]
    return out


def _chart_checks(gamma: GammaType) -> list[dict]:
    n = gamma.n

    def run():
        xy = resolution.typeA_chart_pullback(n, parse_polynomial("x - y"))
        z = resolution.typeA_chart_pullback(n, parse_polynomial("z"))
        want = resolution.divisor_description(gamma, "I").multiplicities
        data = resolution.cartan(gamma)
        wz = resolution.solve_multiplicities(data, resolution.z_divisor_b(n))
        return [Check(f"div(x-y) orders {xy}", xy == want, f"cartan {want}"),
                Check(f"div(z) orders {z}", z == wz, f"cartan {wz}")]
    return _guard("charts", run)


def verify_type(gamma: GammaType, case: str | None, source: str) -> list[dict]:
    out = []
    if case is None:
        pres = groups.presentation(gamma, source)
        out += _guard("presentation", lambda: groups.check_presentation(pres))
        out += _guard("brackets", lambda: groups.check_bracket_table(pres))
        if gamma.family == "A":
            out += _chart_checks(gamma)
    for c in ([case] if case else quiver.lift_cases(gamma)):
        out += _case_checks(gamma, c)
    return [dict(r, type=gamma.label) for r in out]


def cmd_verify(args) -> int:
    if args.target == ["all"]:
        targets = [(g, None) for g in ALL_TYPES]
    else:
        targets = [parse_target(args.target, args.n)]
    rows = []
    for g, c in targets:
        rows += verify_type(g, c, args.presentation)
    ok = all(r["passed"] for r in rows)
    first = next((r for r in rows if not r["passed"]), None)
    if args.format == "json":
        env = {"schema": SCHEMA, "tool": "kleinian", "version": _version(), "presentation": args.presentation,
               "checks": rows, "status": "pass" if ok else "fail",
               "first_failure": None if first is None else first["section"]}
        sys.stdout.write(_dump(env))
    elif args.format == "text":
        for r in rows:
            tag = "PASS" if r["passed"] else "FAIL"
            where = r["type"] + (f" {r['case']}" if "case" in r else "")
            line = f"{tag} {where} {r['section']}: {r['name']}"
            if not r["passed"] and r["detail"]:
                line += f" ({r['detail']})"
            sys.stdout.write(line + "\n")
        sys.stdout.write(("all checks passed" if ok else f"failed in section {first['section']}") + "\n")
    else:
        raise UsageError("verify supports --format text or json")
    return EXIT_OK if ok else EXIT_FAIL


# -- report ------------------------------------------------------------------------------

def involution_report(gamma: GammaType) -> dict:
    cases = []
    for inv in involutions.involution_catalog(gamma):
        g = inv.realizing_matrix
        cases.append({
            "case": inv.case,
            "images": dict(zip("xyz", (str(p) for p in inv.images))),
            "matrix": None if g is None else [str(e) for e in g.entries()],
            "diagram_permutation": {str(k): v for k, v in sorted(involutions.diagram_involution(inv).items()) if k != v},
            "fixed_locus": involutions.fixed_locus(inv).as_dict(),
        })
    return {"schema": SCHEMA, "tool": "kleinian", "version": _version(), "type": gamma.label, "involutions": cases}


def _involution_text(rep: dict) -> str:
    out = []
    for c in rep["involutions"]:
        im = c["images"]
        out.append(f"{rep['type']} case {c['case']}: x -> {im['x']}, y -> {im['y']}, z -> {im['z']}")
        fl = c["fixed_locus"]
        kinds = ", ".join(k["kind"] for k in fl["components"])
        out.append(f"  fixed locus: ({', '.join(fl['ideal'])}); components: {kinds}; reduced: {fl['reduced']}")
    return "\n".join(out) + "\n"


def divisor_report(gamma: GammaType, case: str) -> dict:
    d = resolution.divisor_description(gamma, case)
    env = {"schema": SCHEMA, "tool": "kleinian", "version": _version()}
    env.update(d.as_dict())
    return env


def cmd_report(args) -> int:
    if args.target and args.target[0].lower() == "involutions":
        gamma, case = parse_target(args.target[1:], args.n)
        if case is not None:
            raise UsageError("report involutions takes a type only")
        rep = involution_report(gamma)
        if args.format == "json":
            sys.stdout.write(_dump(rep))
        elif args.format == "text":
            sys.stdout.write(_involution_text(rep))
        else:
            raise UsageError("involution reports support --format text or json")
        return EXIT_OK
    gamma, case = parse_target(args.target, args.n)
    if case is None:
        raise UsageError("report needs a case, e.g. 'report E7 I'")
    d = resolution.divisor_description(gamma, case)
    if args.format == "json":
        sys.stdout.write(_dump(divisor_report(gamma, case)))
    elif args.format == "dot":
        sys.stdout.write(resolution.to_dot(d))
    else:
        sys.stdout.write(resolution.to_text(d))
    return EXIT_OK


# -- charts ---------------------------------------------------------------------------------

def cmd_charts(args) -> int:
    n = args.rank if args.rank is not None else args.n
    if n is None or n < 1:
        raise UsageError("charts needs a positive rank")
    try:
        f = parse_polynomial(args.expr)
    except (PolynomialError, SyntaxError, ValueError) as e:
        raise UsageError(f"cannot parse {args.expr!r}: {e}") from None
    gamma = GammaType("A", n)
    try:
        orders = resolution.typeA_chart_pullback(n, f)
    except resolution.ChartDisagreement as e:
        sys.stderr.write(f"chart disagreement: {e}\n")
        return EXIT_FAIL
    except ValueError as e:
        sys.stderr.write(f"rejected: {e}\n")
        return EXIT_USAGE
    agreement = None
    for inv in involutions.involution_catalog(gamma):
        gens = involutions.fixed_locus(inv).ideal_generators
        if len(gens) == 1 and involutions.proportional(gens[0], f):
            d = resolution.divisor_description(gamma, inv.case)
            if d.principal:
                agreement = {"case": inv.case, "cartan": d.multiplicities, "agrees": d.multiplicities == orders}
    if agreement is None and involutions.proportional(f, parse_polynomial("z")):
        data = resolution.cartan(gamma)
        wz = resolution.solve_multiplicities(data, resolution.z_divisor_b(n))
        agreement = {"case": "z", "cartan": wz, "agrees": wz == orders}
    ok = agreement is None or agreement["agrees"]
    if args.format == "json":
        sys.stdout.write(_dump({"schema": SCHEMA, "tool": "kleinian", "version": _version(), "n": n,
                                "f": str(f), "orders": orders, "cartan_check": agreement}))
    else:
        sys.stdout.write("(" + ",".join(map(str, orders)) + ")\n")
        if agreement is not None:
            sys.stdout.write(f"cartan solve {tuple(agreement['cartan'])}: {'agrees' if agreement['agrees'] else 'DISAGREES'}\n")
    return EXIT_OK if ok else EXIT_FAIL


# -- solve-adhm --------------------------------------------------------------------------------

def cmd_solve(args) -> int:
    from . import numeric
    gamma, case = parse_target(args.target, args.n)
    if case is not None:
        raise UsageError("solve-adhm takes a type only")
    if args.seeds < 1 or args.tol <= 0:
        raise UsageError("--seeds must be positive and --tol positive")
    setting = quiver.build_setting(gamma)
    runs = []
    for k in range(args.seeds):
        opts = numeric.SolveOptions(seed=args.seed + k, residual_tolerance=args.tol)
        r = numeric.solve_adhm(setting, opts)
        runs.append({
            "seed": r.seed,
            "success": r.success,
            "residual": r.residual,
            "semistable": r.semistable,
            "identities": [c.as_dict() for c in r.identities],
            "point": quiver.point_to_json(r.point) if r.success else None,
        })
    converged = [r for r in runs if r["success"]]
    ok = 2 * len(converged) >= len(runs) and all(c["passed"] for r in converged for c in r["identities"])
    if args.format == "json":
        sys.stdout.write(_dump({"schema": SCHEMA, "tool": "kleinian", "version": _version(), "type": gamma.label,
                                "runs": runs, "converged": len(converged), "status": "pass" if ok else "fail"}))
    else:
        for r in runs:
            ids = "ok" if all(c["passed"] for c in r["identities"]) else "FAILED"
            state = f"residual {r['residual']:.2e}, identities {ids}" if r["success"] else \
                f"not converged (residual {r['residual']:.2e}, semistable {r['semistable']})"
            sys.stdout.write(f"seed {r['seed']}: {state}\n")
        sys.stdout.write(f"{len(converged)}/{len(runs)} converged\n")
    return EXIT_OK if ok else EXIT_FAIL


# -- main ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kleinian", description="Kleinian singularity toolkit")
    p.add_argument("--version", action="version", version=_version())
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run exact checks for a type, a case, or all")
    v.add_argument("target", nargs="+")
    v.add_argument("--n", type=int)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--presentation", choices=("stated", "working"), default="stated")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="divisor configuration or involution catalog")
    r.add_argument("target", nargs="+")
    r.add_argument("--n", type=int)
    r.add_argument("--format", choices=("text", "json", "dot"), default="text")
    r.set_defaults(func=cmd_report)

    c = sub.add_parser("charts", help="vanishing orders along type-A exceptional curves")
    c.add_argument("rank", type=int, nargs="?")
    c.add_argument("expr")
    c.add_argument("--n", type=int)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_charts)

    s = sub.add_parser("solve-adhm", help="numerically solve the moment map equations")
    s.add_argument("target", nargs="+")
    s.add_argument("--n", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--seeds", type=int, default=1)
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_solve)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # positionals after an option, as in "verify A --n 7 III"
        if extra and (not hasattr(args, "target") or any(e.startswith("-") for e in extra)):
            parser.error("unrecognized arguments: " + " ".join(extra))
        if extra:
            args.target += extra
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, KeyError) as e:
        sys.stderr.write(f"kleinian: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
