"""Command-line front end.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 a negative mathematical answer (not regular, no dual, failed verdict),
2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .algebra import BiLaurent, as_fraction, format_rational
from .cyclotomic import poset_with_exponents
from .duality import atomic_form, dual_record, is_M_dual, is_P_dual, m_dual_candidate, necessary_conditions
from .orbifold import chi_orbifold, make_group, principal_group, trivial_group
from .search import verify_theorem
from .weights import InvalidWeightSystem, WeightSystem, exponents, is_regular, validate


class UsageError(Exception):
    pass


def polynomial_to_json(p: BiLaurent) -> dict:
    return {
        "terms": [
            {"coeff": format_rational(c), "y_exp": format_rational(a), "ybar_exp": format_rational(b)}
            for a, b, c in p.terms()
        ]
    }


def polynomial_from_json(obj: dict, bound: int) -> BiLaurent:
    terms = {}
    for t in obj["terms"]:
        key = (as_fraction(t["y_exp"]), as_fraction(t["ybar_exp"]))
        terms[key] = terms.get(key, 0) + as_fraction(t["coeff"])
    return BiLaurent(terms, bound)


def _weight_system(values: Sequence[str]) -> WeightSystem:
    try:
        nums = [int(v) for v in values]
    except ValueError:
        raise UsageError(f"weights and coxeter number must be integers, got {' '.join(values)}") from None
    if len(nums) != 4:
        raise UsageError(f"expected three weights and a coxeter number, got {len(nums)} integers")
    return validate(nums[:3], nums[3])


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _fmt_poly(p: BiLaurent) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for a, b, c in p.terms():
        mono = []
        if a:
            mono.append("y" if a == 1 else f"y^({a})")
        if b:
            mono.append("yb" if b == 1 else f"yb^({b})")
        parts.append(f"{c}*{'*'.join(mono)}" if mono else str(c))
    return " + ".join(parts)


def cmd_check(args) -> int:
    w = _weight_system(args.system)
    regular = is_regular(w)
    report = {"weights": w.to_json(), "valid": True, "reduced": True, "regular": regular,
              "epsilon": w.epsilon, "c_hat": format_rational(w.c_hat)}
    if regular:
        ex = exponents(w)
        report["mu"] = ex.mu
        report["exponents"] = list(ex.exponents)
    if args.json:
        _dump(report)
    else:
        print(f"{w}: valid, reduced, {'regular' if regular else 'not regular'}")
        print(f"eps = {w.epsilon}, c_hat = {w.c_hat}")
        if regular:
            print(f"mu = {report['mu']}")
            print("exponents:", " ".join(map(str, report["exponents"])))
    if not regular:
        print(f"{w} is not regular", file=sys.stderr)
        return 1
    return 0


def _require_regular(w: WeightSystem) -> bool:
    if not is_regular(w):
        print(f"{w} is not regular", file=sys.stderr)
        return False
    return True


def cmd_classify(args) -> int:
    w = _weight_system(args.system)
    if not _require_regular(w):
        return 1
    poset = poset_with_exponents(w)
    if args.json:
        out = poset.to_json()
        out["weights"] = w.to_json()
        _dump(out)
    else:
        print(f"{w}: type {poset.type_tag}, mult {poset.mult}")
        for x in poset.elements:
            print(f"  xi={x:<6} level={poset.level[x]}  e={poset.e[x]}")
    return 0


def _group(w: WeightSystem, spec: Optional[List[str]]):
    if not spec or spec == ["principal"]:
        return principal_group(w)
    if spec == ["trivial"]:
        return trivial_group(w)
    if spec[0] == "gens":
        gens = []
        for tok in spec[1:]:
            try:
                vec = [int(x) for x in tok.split(",")]
            except ValueError:
                raise UsageError(f"bad generator {tok!r}") from None
            if len(vec) != w.n:
                raise UsageError(f"generator {tok!r} needs {w.n} entries")
            gens.append(vec)
        return make_group(w, gens)
    raise UsageError(f"unknown group spec {' '.join(spec)!r}")


def cmd_poincare(args) -> int:
    w = _weight_system(args.system)
    g = _group(w, args.group)
    if not _require_regular(w):
        return 1
    p = chi_orbifold(w, g, method=args.method)
    if args.text:
        print(_fmt_poly(p))
    else:
        _dump(polynomial_to_json(p))
    return 0


def cmd_dual(args) -> int:
    w = _weight_system(args.system)
    if not _require_regular(w):
        return 1
    nc = necessary_conditions(w)
    out = {"W": w.to_json(), "necessary_conditions": nc.to_json()}
    if not nc.passed:
        out["W_star"] = None
        _dump(out)
        print(f"{w} has no dual: " + "; ".join(nc.failing()), file=sys.stderr)
        return 1
    rec = dual_record(w)
    if rec is None:
        out["W_star"] = None
        _dump(out)
        print(f"{w} has no dual: no family matches", file=sys.stderr)
        return 1
    out.update(rec.to_json())
    form = atomic_form(w)
    out["atomic_form"] = None if form is None else {"shape": form.shape, "polynomial": str(form),
                                                    "transpose": str(form.transpose())}
    _dump(out)
    return 0


def cmd_verify(args) -> int:
    if args.hmax < 2:
        raise UsageError("--hmax must be at least 2")
    report = verify_theorem(args.hmax, audit_unpruned=args.audit_unpruned, workers=args.workers)
    sys.stdout.write(report.dumps())
    print(f"verify --hmax {args.hmax}: {report.verdict}, {len(report.pairs)} pairs, "
          f"{report.pairs_checked} ordered pairs checked, {report.elapsed:.2f}s", file=sys.stderr)
    for d in report.disagreements:
        print(f"  disagreement: {d}", file=sys.stderr)
    return 0 if report.verdict == "pass" else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rwsdual", description="Regular weight systems and their duals.")
    sub = parser.add_subparsers(dest="command", required=True)

    def system_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("system", nargs="+", metavar="N", help="a1 a2 a3 h")
        return p

    p = system_cmd("check", "validity, regularity and exponents")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = system_cmd("classify", "leveled poset M(W), cyclotomic exponents and type")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = system_cmd("poincare", "orbifoldized Poincare polynomial as JSON")
    p.add_argument("--group", nargs="+", metavar="SPEC",
                   help="principal (default), trivial, or: gens v1 v2 ... with comma-separated vectors")
    p.add_argument("--method", choices=("character", "cyclotomic"), default="character")
    p.add_argument("--text", action="store_true", help="print a readable formula instead of JSON")
    p.set_defaults(func=cmd_poincare)

    p = system_cmd("dual", "necessary conditions, family dual and both duality predicates")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("verify", help="compare P- and M-duality on all pairs up to --hmax")
    p.add_argument("--hmax", type=int, required=True)
    p.add_argument("--audit-unpruned", action="store_true",
                   help="at h <= 20 also pair systems failing the necessary conditions")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except InvalidWeightSystem as e:
        print(f"invalid weight system: {e}", file=sys.stderr)
        return 2
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
